//! Regular hypermaps as triples `(G, x, y)` with `G = <x, y>` acting
//! regularly on itself.

mod walsh;

pub use walsh::{
    bipartite_isomorphic, reference_graph, walsh_fingerprint, FingerprintMatch, ReferenceGraph,
    WalshFingerprint, BRUTE_FORCE_SIDE_LIMIT,
};

use std::fmt;

use thiserror::Error;

use crate::fpgroup::{
    evaluate_word, extend_along_cayley_graph, generating_pairs, generates, regular_representation,
    relators_hold, GroupError, PermGroup, Permutation, Presentation, Word,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HypermapError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("generators do not act regularly: degree {degree}, group order {order}")]
    NotRegular { degree: usize, order: usize },
    #[error("Euler characteristic gives 2g = {twice_genus} for order {order} and type {ty}")]
    BadGenus {
        order: usize,
        ty: HypermapType,
        twice_genus: i64,
    },
}

/// `(o(x), o(y), o(xy))`
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
pub struct HypermapType {
    pub ox: u64,
    pub oy: u64,
    pub oxy: u64,
}

impl fmt::Display for HypermapType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.ox, self.oy, self.oxy)
    }
}

#[derive(Debug, Clone)]
pub struct AlgebraicHypermap {
    group: PermGroup,
    x: Permutation,
    y: Permutation,
    source: Option<Presentation>,
}

impl AlgebraicHypermap {
    /// The regular hypermap of the group presented by `p`, with `x`, `y` the
    /// images of its two generators.
    pub fn from_presentation(p: &Presentation, max_cosets: usize) -> Result<Self, HypermapError> {
        assert_eq!(p.num_gens(), 2, "hypermaps are two-generator");
        let (group, gens) = regular_representation(p, max_cosets)?;
        let [x, y]: [Permutation; 2] = gens.try_into().expect("two generators");
        Ok(Self {
            group,
            x,
            y,
            source: Some(p.clone()),
        })
    }

    /// Wraps a pair of permutations that must generate a regular group.
    pub fn from_generators(x: Permutation, y: Permutation) -> Result<Self, HypermapError> {
        let degree = x.degree();
        let group = PermGroup::generate(degree, &[x.clone(), y.clone()])?;
        if !group.is_regular() {
            return Err(HypermapError::NotRegular {
                degree,
                order: group.order(),
            });
        }
        Ok(Self {
            group,
            x,
            y,
            source: None,
        })
    }

    /// One brin, `x = y = 1`: the trivial hypermap on the sphere.
    pub fn trivial() -> Self {
        Self::from_generators(Permutation::identity(1), Permutation::identity(1))
            .expect("trivial group is regular on one point")
    }

    /// Attaches a presentation known to define this hypermap's group on
    /// `(x, y)`. Checked only in that the relators must vanish.
    pub fn with_source(mut self, p: Presentation) -> Self {
        debug_assert!(relators_hold(&p, &[self.x.clone(), self.y.clone()]));
        self.source = Some(p);
        self
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn x(&self) -> &Permutation {
        &self.x
    }

    pub fn y(&self) -> &Permutation {
        &self.y
    }

    pub fn generators(&self) -> [Permutation; 2] {
        [self.x.clone(), self.y.clone()]
    }

    pub fn source(&self) -> Option<&Presentation> {
        self.source.as_ref()
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    /// Evaluates a word in `x`, `y`.
    pub fn eval(&self, w: &Word) -> Permutation {
        evaluate_word(w, &self.generators())
    }

    pub fn hypermap_type(&self) -> HypermapType {
        type_of(self)
    }

    pub fn genus(&self) -> Result<u64, HypermapError> {
        genus_of(self)
    }
}

pub fn type_of(h: &AlgebraicHypermap) -> HypermapType {
    HypermapType {
        ox: h.x.order(),
        oy: h.y.order(),
        oxy: h.x.then(&h.y).order(),
    }
}

/// Genus from `2 - 2g = |G| (1/o(x) + 1/o(y) + 1/o(xy) - 1)`.
pub fn genus_of(h: &AlgebraicHypermap) -> Result<u64, HypermapError> {
    genus_from_type(h.order(), type_of(h))
}

pub fn genus_from_type(order: usize, ty: HypermapType) -> Result<u64, HypermapError> {
    let n = order as i64;
    let bad = |twice_genus| HypermapError::BadGenus { order, ty, twice_genus };
    let (a, b, c) = (ty.ox as i64, ty.oy as i64, ty.oxy as i64);
    if n % a != 0 || n % b != 0 || n % c != 0 {
        return Err(bad(i64::MIN));
    }
    let twice = 2 + n - n / a - n / b - n / c;
    if twice < 0 || twice % 2 != 0 {
        return Err(bad(twice));
    }
    Ok((twice / 2) as u64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoveringReport {
    NotCovering,
    Covering {
        smooth_v: bool,
        smooth_e: bool,
        smooth_f: bool,
    },
}

/// Whether `x1 -> x2, y1 -> y2` extends to an epimorphism `Aut(h1) -> Aut(h2)`,
/// and if so at which of vertices, edges, faces it is unbranched.
pub fn covering_report(h1: &AlgebraicHypermap, h2: &AlgebraicHypermap) -> CoveringReport {
    let images = h2.generators();
    let hom = match h1.source() {
        Some(p) => relators_hold(p, &images),
        None => extend_along_cayley_graph(&h1.group, &images).is_some(),
    };
    // images always generate h2's group, so a homomorphism is onto
    if !hom {
        return CoveringReport::NotCovering;
    }
    let (t1, t2) = (type_of(h1), type_of(h2));
    CoveringReport::Covering {
        smooth_v: t1.ox == t2.ox,
        smooth_e: t1.oy == t2.oy,
        smooth_f: t1.oxy == t2.oxy,
    }
}

/// Whether `x1 -> x2, y1 -> y2` extends to a group isomorphism.
pub fn hypermaps_isomorphic(h1: &AlgebraicHypermap, h2: &AlgebraicHypermap) -> bool {
    if h1.order() != h2.order() || type_of(h1) != type_of(h2) {
        return false;
    }
    let images = h2.generators();
    match h1.source() {
        // the presented group has order |G1| = |G2| and maps onto G2
        Some(p) => relators_hold(p, &images),
        None => extend_along_cayley_graph(&h1.group, &images).is_some(),
    }
}

/// A hypermap class: a representative with the generating pairs (as element
/// positions) that realize it.
pub type HypermapClass = (AlgebraicHypermap, Vec<(usize, usize)>);

/// All regular hypermaps with automorphism group `g`, one per isomorphism
/// class, each listed with the generating pairs (as element positions) that
/// realize it.
pub fn hypermap_classes(g: &PermGroup) -> Result<Vec<HypermapClass>, HypermapError> {
    if !g.is_regular() {
        return Err(HypermapError::NotRegular {
            degree: g.degree(),
            order: g.order(),
        });
    }
    let mut classes: Vec<(AlgebraicHypermap, Vec<(usize, usize)>)> = Vec::new();
    for (i, j) in generating_pairs(g)? {
        let h = AlgebraicHypermap::from_generators(g.element(i).clone(), g.element(j).clone())?;
        match classes.iter_mut().find(|(r, _)| hypermaps_isomorphic(r, &h)) {
            Some((_, members)) => members.push((i, j)),
            None => classes.push((h, vec![(i, j)])),
        }
    }
    Ok(classes)
}

/// Whether `x, y` generate the whole group of `h`.
pub fn is_generating_pair(h: &AlgebraicHypermap, x: &Permutation, y: &Permutation) -> Result<bool, HypermapError> {
    Ok(generates(&[x.clone(), y.clone()], &h.group)?)
}
