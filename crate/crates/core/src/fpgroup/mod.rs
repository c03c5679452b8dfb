//! Finitely presented groups made concrete: words and presentations, coset
//! enumeration, permutation groups, and homomorphism testing.

mod coset;
mod group;
mod morphism;
mod perm;
mod word;

pub use coset::{regular_representation, todd_coxeter, CosetTable, DEFAULT_MAX_COSETS};
pub use group::{PermGroup, ELEMENT_CAP};
pub use morphism::{
    automorphism_count, classify_extension, evaluate_word, extend_along_cayley_graph,
    extends_to_morphism, extends_to_morphism_with_order, find_isomorphism, generates,
    generating_pairs, is_isomorphism, quotient_is_presented_by, relators_hold, MorphismKind,
    PAIR_ENUMERATION_CAP,
};
pub use perm::Permutation;
pub use word::{Presentation, Word};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("word {word} uses a generator beyond the {num_gens} declared")]
    GeneratorOutOfRange { word: String, num_gens: usize },
    #[error("images do not form a permutation")]
    InvalidPermutation,
    #[error("permutations of degree {found} mixed with degree {expected}")]
    DegreeMismatch { found: usize, expected: usize },
    #[error("coset enumeration exceeded {limit} cosets")]
    CosetLimit { limit: usize },
    #[error("group closure exceeded {cap} elements")]
    ElementCap { cap: usize },
    #[error("group of order {order} is beyond the enumeration limit {limit}")]
    SizeCap { order: usize, limit: usize },
}
