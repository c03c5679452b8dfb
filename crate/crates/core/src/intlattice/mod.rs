//! Exact integer linear algebra: Smith normal form and finite abelian groups
//! presented by integer relation matrices.
//!
//! All arithmetic is checked 64-bit; any overflow surfaces as
//! [`LatticeError::Overflow`] instead of wrapping.

mod abelian;
mod matrix;
mod snf;

pub use abelian::{AbElement, FinAbGroup};
pub use matrix::IntMatrix;
pub use snf::{smith_normal_form, SnfResult};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("integer overflow during {0}")]
    Overflow(&'static str),
    #[error("relation lattice is rank deficient: quotient has free rank {free_rank}")]
    InfiniteQuotient { free_rank: usize },
    #[error("ragged matrix: row {row} has {found} entries, expected {expected}")]
    Ragged {
        row: usize,
        found: usize,
        expected: usize,
    },
    #[error("element has {found} coordinates, group expects {expected}")]
    Arity { found: usize, expected: usize },
}

pub(crate) fn checked_mul(a: i64, b: i64, ctx: &'static str) -> Result<i64, LatticeError> {
    a.checked_mul(b).ok_or(LatticeError::Overflow(ctx))
}

pub(crate) fn checked_add(a: i64, b: i64, ctx: &'static str) -> Result<i64, LatticeError> {
    a.checked_add(b).ok_or(LatticeError::Overflow(ctx))
}

pub(crate) fn checked_sub(a: i64, b: i64, ctx: &'static str) -> Result<i64, LatticeError> {
    a.checked_sub(b).ok_or(LatticeError::Overflow(ctx))
}

/// Greatest common divisor, always nonnegative. `gcd(0, 0) == 0`.
pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a as i64
}

/// Least common multiple of nonnegative arguments; `lcm(0, x) == 0`.
pub fn lcm(a: i64, b: i64) -> i64 {
    if a == 0 || b == 0 {
        0
    } else {
        (a / gcd(a, b) * b).abs()
    }
}

/// Whether `a` is invertible modulo `n`. Every residue is a unit of the zero
/// ring `Z/1`.
pub fn is_unit(a: i64, n: i64) -> bool {
    assert!(n >= 1, "modulus must be positive");
    n == 1 || gcd(a.rem_euclid(n), n) == 1
}

/// Least nonnegative residue of `a` modulo `n`.
pub fn residue(a: i64, n: i64) -> i64 {
    a.rem_euclid(n)
}
