use std::fmt;

use crate::intlattice::{is_unit, residue};

/// Parameters `(m, n, d; alpha, beta, gamma, delta, epsilon)` of a covering.
///
/// Residues are stored in `[0, modulus)`, so for modulus 1 the only residue
/// is 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CoveringOctuple {
    pub m: i64,
    pub n: i64,
    pub d: i64,
    pub alpha: i64,
    pub beta: i64,
    pub gamma: i64,
    pub delta: i64,
    pub epsilon: i64,
}

impl CoveringOctuple {
    /// Normalizes the residues; accepts any integers, e.g. `-1`.
    #[allow(clippy::too_many_arguments)]
    pub fn new(m: i64, n: i64, d: i64, alpha: i64, beta: i64, gamma: i64, delta: i64, epsilon: i64) -> Self {
        assert!(m >= 1 && n >= 1 && d >= 1, "m, n, d must be positive");
        Self {
            m,
            n,
            d,
            alpha: residue(alpha, m * d),
            beta: residue(beta, m * d),
            gamma: residue(gamma, n * d),
            delta: residue(delta, n * d),
            epsilon: residue(epsilon, d),
        }
    }

    pub fn md(&self) -> i64 {
        self.m * self.d
    }

    pub fn nd(&self) -> i64 {
        self.n * self.d
    }

    pub fn mnd(&self) -> i64 {
        self.m * self.n * self.d
    }

    pub fn trivial() -> Self {
        Self::new(1, 1, 1, 0, 0, 0, 0, 0)
    }
}

impl fmt::Display for CoveringOctuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({},{},{};{},{},{},{},{})",
            self.m, self.n, self.d, self.alpha, self.beta, self.gamma, self.delta, self.epsilon
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Condition {
    /// alpha, beta units mod md; gamma, delta units mod nd; epsilon unit mod d
    Units,
    /// `alpha^2 = 1 (md)`, `delta^2 = 1 (nd)`
    Cond1,
    /// `beta^2 = 1 (md)`, `gamma^2 = 1 (nd)`
    Cond2,
    /// `beta = 1 (m)`, `gamma = 1 (n)`
    Cond3,
    /// `alpha = gamma (d)`, `beta = delta (d)`
    Cond4,
    /// `((beta - 1)/m) epsilon + (gamma - 1)/n = 0 (d)`
    Cond5,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Condition::Units => "UNITS",
            Condition::Cond1 => "COND1",
            Condition::Cond2 => "COND2",
            Condition::Cond3 => "COND3",
            Condition::Cond4 => "COND4",
            Condition::Cond5 => "COND5",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionFailure {
    pub condition: Condition,
    pub detail: String,
}

impl fmt::Display for ConditionFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.condition, self.detail)
    }
}

/// Outcome of checking the numerical conditions; empty `failures` means valid.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Validity {
    pub failures: Vec<ConditionFailure>,
}

impl Validity {
    pub fn is_valid(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn failed(&self, c: Condition) -> bool {
        self.failures.iter().any(|f| f.condition == c)
    }
}

fn congruent(a: i64, b: i64, modulus: i64) -> bool {
    (a - b).rem_euclid(modulus) == 0
}

pub fn validate_octuple(o: &CoveringOctuple) -> Validity {
    let (md, nd, d) = (o.md(), o.nd(), o.d);
    let mut failures = Vec::new();
    let mut fail = |condition, detail: String| failures.push(ConditionFailure { condition, detail });

    for (name, value, modulus) in [
        ("alpha", o.alpha, md),
        ("beta", o.beta, md),
        ("gamma", o.gamma, nd),
        ("delta", o.delta, nd),
        ("epsilon", o.epsilon, d),
    ] {
        if !is_unit(value, modulus) {
            fail(Condition::Units, format!("{name} = {value} is not a unit mod {modulus}"));
        }
    }
    for (condition, name, value, modulus) in [
        (Condition::Cond1, "alpha", o.alpha, md),
        (Condition::Cond1, "delta", o.delta, nd),
        (Condition::Cond2, "beta", o.beta, md),
        (Condition::Cond2, "gamma", o.gamma, nd),
    ] {
        if !congruent(value * value, 1, modulus) {
            fail(condition, format!("{name}^2 = {} mod {modulus}, not 1", residue(value * value, modulus)));
        }
    }
    let cond3_beta = congruent(o.beta, 1, o.m);
    let cond3_gamma = congruent(o.gamma, 1, o.n);
    if !cond3_beta {
        fail(Condition::Cond3, format!("beta = {} is not 1 mod m = {}", o.beta, o.m));
    }
    if !cond3_gamma {
        fail(Condition::Cond3, format!("gamma = {} is not 1 mod n = {}", o.gamma, o.n));
    }
    if !congruent(o.alpha, o.gamma, d) {
        fail(Condition::Cond4, format!("alpha = {} and gamma = {} differ mod d = {d}", o.alpha, o.gamma));
    }
    if !congruent(o.beta, o.delta, d) {
        fail(Condition::Cond4, format!("beta = {} and delta = {} differ mod d = {d}", o.beta, o.delta));
    }
    // the quotients are exact only once COND3 holds
    if cond3_beta && cond3_gamma {
        let lhs = (o.beta - 1) / o.m * o.epsilon + (o.gamma - 1) / o.n;
        if !congruent(lhs, 0, d) {
            fail(
                Condition::Cond5,
                format!(
                    "(beta-1)/m * epsilon + (gamma-1)/n = {}*{} + {} = {lhs}, not 0 mod d = {d}",
                    (o.beta - 1) / o.m,
                    o.epsilon,
                    (o.gamma - 1) / o.n
                ),
            );
        }
    } else {
        fail(Condition::Cond5, "not evaluable without COND3".into());
    }
    Validity { failures }
}

/// `(alpha+1)(beta-1) = 0 (md)` and `(delta+1)(gamma-1) = 0 (nd)`, consequences
/// of the defining conditions.
pub fn lemma_num_check(o: &CoveringOctuple) -> bool {
    congruent((o.alpha + 1) * (o.beta - 1), 0, o.md()) && congruent((o.delta + 1) * (o.gamma - 1), 0, o.nd())
}

/// Square roots of 1 modulo `k`, ascending.
fn square_roots_of_one(k: i64) -> Vec<i64> {
    (0..k).filter(|&a| congruent(a * a, 1, k)).collect()
}

/// All valid octuples with the given `m, n, d`, in lexicographic order of
/// `(alpha, beta, gamma, delta, epsilon)`.
pub fn valid_octuples_for(m: i64, n: i64, d: i64) -> Vec<CoveringOctuple> {
    let (md, nd) = (m * d, n * d);
    let roots_md = square_roots_of_one(md);
    let roots_nd = square_roots_of_one(nd);
    let units_d: Vec<i64> = (0..d).filter(|&e| is_unit(e, d)).collect();
    let mut out = Vec::new();
    for &alpha in &roots_md {
        for &beta in roots_md.iter().filter(|&&b| congruent(b, 1, m)) {
            for &gamma in roots_nd.iter().filter(|&&g| congruent(g, 1, n) && congruent(g, alpha, d)) {
                for &delta in roots_nd.iter().filter(|&&x| congruent(x, beta, d)) {
                    for &epsilon in &units_d {
                        if congruent((beta - 1) / m * epsilon + (gamma - 1) / n, 0, d) {
                            out.push(CoveringOctuple::new(m, n, d, alpha, beta, gamma, delta, epsilon));
                        }
                    }
                }
            }
        }
    }
    out
}

/// All valid octuples with `mnd <= max_mnd`, ordered lexicographically by
/// `(m, n, d, alpha, beta, gamma, delta, epsilon)`.
pub fn valid_octuples(max_mnd: i64) -> Vec<CoveringOctuple> {
    let mut out = Vec::new();
    for m in 1..=max_mnd {
        for n in 1..=max_mnd / m {
            for d in 1..=max_mnd / (m * n) {
                out.extend(valid_octuples_for(m, n, d));
            }
        }
    }
    out
}
