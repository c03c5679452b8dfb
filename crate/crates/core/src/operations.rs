//! Hypermap operations as substitutions `x -> w1(x, y), y -> w2(x, y)` and
//! their shadows in `GL(2, Z)`.
//!
//! A substitution's matrix has as its rows the exponent-sum vectors of the
//! two image words, so composing substitutions multiplies matrices in the
//! same order: `compose(a, b)` (substitute `b` into the images of `a`) has
//! matrix `M(a) * M(b)`.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::fpgroup::{generates, Word};
use crate::hypermap::{hypermaps_isomorphic, AlgebraicHypermap, HypermapError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OpError {
    #[error("substitution {name} has determinant {det}, not a unit")]
    NotUnimodular { name: String, det: i64 },
    #[error("images under {name} do not generate the group")]
    NotGenerating { name: String },
    #[error("matrix group closure exceeded {cap} elements; the group is likely infinite")]
    ClosureCap { cap: usize },
    #[error(transparent)]
    Hypermap(#[from] HypermapError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenSubstitution {
    pub name: String,
    pub image_x: Word,
    pub image_y: Word,
}

impl GenSubstitution {
    /// Builds a substitution from two words in the text syntax.
    pub fn new(name: &str, image_x: &str, image_y: &str) -> Self {
        Self {
            name: name.to_string(),
            image_x: Word::parse(image_x).expect("well-formed image word"),
            image_y: Word::parse(image_y).expect("well-formed image word"),
        }
    }

    pub fn identity() -> Self {
        Self::new("id", "x", "y")
    }

    /// `self` with `other` substituted into its image words.
    pub fn compose(&self, other: &GenSubstitution) -> GenSubstitution {
        let sub = [other.image_x.clone(), other.image_y.clone()];
        GenSubstitution {
            name: format!("{}.{}", self.name, other.name),
            image_x: self.image_x.substitute(&sub).free_reduce(),
            image_y: self.image_y.substitute(&sub).free_reduce(),
        }
    }

    pub fn power(&self, k: u32) -> GenSubstitution {
        let mut acc = GenSubstitution::identity();
        for _ in 0..k {
            acc = acc.compose(self);
        }
        acc.name = format!("{}^{k}", self.name);
        acc
    }
}

pub fn tau() -> GenSubstitution {
    GenSubstitution::new("tau", "y", "x")
}

pub fn pi() -> GenSubstitution {
    GenSubstitution::new("pi", "x", "Y")
}

pub fn pi1() -> GenSubstitution {
    GenSubstitution::new("pi1", "X", "y")
}

pub fn iota() -> GenSubstitution {
    GenSubstitution::new("iota", "X", "Y")
}

pub fn varsigma() -> GenSubstitution {
    GenSubstitution::new("varsigma", "Y", "yx")
}

pub fn theta() -> GenSubstitution {
    GenSubstitution::new("theta", "YX", "x")
}

pub fn zeta() -> GenSubstitution {
    GenSubstitution::new("zeta", "xy", "y")
}

pub fn eta() -> GenSubstitution {
    GenSubstitution::new("eta", "x", "yx")
}

/// The six operations used by the symmetry criteria: tau, pi, pi1, iota,
/// varsigma, theta.
pub fn builtin_operations() -> Vec<GenSubstitution> {
    vec![tau(), pi(), pi1(), iota(), varsigma(), theta()]
}

/// The builtin operations together with the Nielsen moves zeta and eta.
pub fn catalog() -> Vec<GenSubstitution> {
    let mut v = builtin_operations();
    v.push(zeta());
    v.push(eta());
    v
}

/// Row-major `[[a, b], [c, d]]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mat2Z {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl Mat2Z {
    pub const IDENTITY: Mat2Z = Mat2Z::new(1, 0, 0, 1);
    pub const T: Mat2Z = Mat2Z::new(0, 1, 1, 0);
    pub const P: Mat2Z = Mat2Z::new(1, 0, 0, -1);
    pub const D: Mat2Z = Mat2Z::new(-1, -1, 1, 0);
    pub const S: Mat2Z = Mat2Z::new(0, -1, 1, 1);
    pub const MINUS_IDENTITY: Mat2Z = Mat2Z::new(-1, 0, 0, -1);

    pub const fn new(a: i64, b: i64, c: i64, d: i64) -> Self {
        Self { a, b, c, d }
    }

    pub fn mul(&self, o: &Mat2Z) -> Mat2Z {
        Mat2Z::new(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )
    }

    pub fn det(&self) -> i64 {
        self.a * self.d - self.b * self.c
    }

    /// Inverse of a unimodular matrix.
    pub fn inverse(&self) -> Option<Mat2Z> {
        let det = self.det();
        (det == 1 || det == -1)
            .then(|| Mat2Z::new(self.d * det, -self.b * det, -self.c * det, self.a * det))
    }

    pub fn pow(&self, k: u32) -> Mat2Z {
        (0..k).fold(Mat2Z::IDENTITY, |acc, _| acc.mul(self))
    }

    /// Multiplicative order, if at most `limit`.
    pub fn order(&self, limit: u32) -> Option<u32> {
        let mut m = *self;
        for k in 1..=limit {
            if m == Mat2Z::IDENTITY {
                return Some(k);
            }
            m = m.mul(self);
        }
        None
    }
}

impl fmt::Display for Mat2Z {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}],[{},{}]]", self.a, self.b, self.c, self.d)
    }
}

pub fn abelianize(s: &GenSubstitution) -> Result<Mat2Z, OpError> {
    let ex = s.image_x.exponent_sums(2);
    let ey = s.image_y.exponent_sums(2);
    let m = Mat2Z::new(ex[0], ex[1], ey[0], ey[1]);
    match m.det() {
        1 | -1 => Ok(m),
        det => Err(OpError::NotUnimodular {
            name: s.name.clone(),
            det,
        }),
    }
}

/// `(G, x, y) -> (G, w1(x, y), w2(x, y))`.
pub fn apply_operation(h: &AlgebraicHypermap, s: &GenSubstitution) -> Result<AlgebraicHypermap, OpError> {
    let nx = h.eval(&s.image_x);
    let ny = h.eval(&s.image_y);
    if !generates(&[nx.clone(), ny.clone()], h.group()).map_err(HypermapError::from)? {
        return Err(OpError::NotGenerating {
            name: s.name.clone(),
        });
    }
    Ok(AlgebraicHypermap::from_generators(nx, ny)?)
}

/// Whether `x -> w1(x, y), y -> w2(x, y)` extends to an automorphism of the
/// hypermap's group, i.e. the operation maps `h` to an isomorphic hypermap.
pub fn is_invariant(h: &AlgebraicHypermap, s: &GenSubstitution) -> Result<bool, OpError> {
    let image = apply_operation(h, s)?;
    Ok(hypermaps_isomorphic(h, &image))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StructureLabel {
    Cyclic(usize),
    Klein4,
    Sym3,
    Dihedral(usize),
    Unidentified(usize),
}

impl fmt::Display for StructureLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StructureLabel::Cyclic(n) => write!(f, "C{n}"),
            StructureLabel::Klein4 => write!(f, "V4"),
            StructureLabel::Sym3 => write!(f, "Sym(3)"),
            StructureLabel::Dihedral(n) => write!(f, "D{n}"),
            StructureLabel::Unidentified(n) => write!(f, "group of order {n}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OpGroupReport {
    pub elements: BTreeSet<Mat2Z>,
    pub order: usize,
    pub structure_label: StructureLabel,
}

impl OpGroupReport {
    pub fn contains_group(&self, other: &OpGroupReport) -> bool {
        other.elements.is_subset(&self.elements)
    }
}

/// Closes `gens` under multiplication; a finite set of invertible matrices
/// closed under products is a group.
pub fn matrix_group_closure(gens: &[Mat2Z], cap: usize) -> Result<OpGroupReport, OpError> {
    let mut elements = BTreeSet::from([Mat2Z::IDENTITY]);
    let mut frontier = vec![Mat2Z::IDENTITY];
    while let Some(m) = frontier.pop() {
        for g in gens {
            let p = m.mul(g);
            if elements.insert(p) {
                if elements.len() > cap {
                    return Err(OpError::ClosureCap { cap });
                }
                frontier.push(p);
            }
        }
    }
    let structure_label = identify(&elements);
    Ok(OpGroupReport {
        order: elements.len(),
        elements,
        structure_label,
    })
}

/// Names the group from its order, commutativity and element orders; enough
/// to separate the cyclic groups, V4, Sym(3) and the dihedral groups.
fn identify(elements: &BTreeSet<Mat2Z>) -> StructureLabel {
    let n = elements.len();
    let orders: Vec<u32> = elements
        .iter()
        .map(|m| m.order(n as u32).expect("element of a finite group"))
        .collect();
    let abelian = elements
        .iter()
        .all(|a| elements.iter().all(|b| a.mul(b) == b.mul(a)));
    let involutions = orders.iter().filter(|&&o| o == 2).count();
    let max_order = orders.iter().copied().max().unwrap_or(1) as usize;
    if max_order == n {
        return StructureLabel::Cyclic(n);
    }
    if abelian && n == 4 && involutions == 3 {
        return StructureLabel::Klein4;
    }
    if !abelian && n.is_multiple_of(2) && max_order == n / 2 && involutions == n / 2 + usize::from(n.is_multiple_of(4)) {
        return if n == 6 {
            StructureLabel::Sym3
        } else {
            StructureLabel::Dihedral(n)
        };
    }
    StructureLabel::Unidentified(n)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HasseItem {
    pub id: String,
    pub pass: bool,
    pub detail: String,
}

/// Checks the finite subgroups generated by the basic operations, their
/// containments, and the matrix identities relating `S` to `T`, `P`, `D`.
pub fn verify_hasse() -> Vec<HasseItem> {
    let mut items = Vec::new();
    let mut item = |id: &str, pass: bool, detail: String| {
        items.push(HasseItem {
            id: id.to_string(),
            pass,
            detail,
        })
    };

    let shadows = [
        ("tau", tau(), Mat2Z::T),
        ("pi", pi(), Mat2Z::P),
        ("theta", theta(), Mat2Z::D),
        ("varsigma", varsigma(), Mat2Z::S),
        ("iota", iota(), Mat2Z::MINUS_IDENTITY),
    ];
    for (name, s, want) in shadows {
        let got = abelianize(&s);
        item(
            &format!("shadow of {name}"),
            got == Ok(want),
            match &got {
                Ok(g) => format!("{g}, expected {want}"),
                Err(e) => format!("{e}, expected {want}"),
            },
        );
    }

    let (t, p, d, s, mi) = (Mat2Z::T, Mat2Z::P, Mat2Z::D, Mat2Z::S, Mat2Z::MINUS_IDENTITY);
    let close = |g: &[Mat2Z]| matrix_group_closure(g, 64).expect("finite operation subgroup");
    let trivial = close(&[]);
    let g_pi = close(&[p]);
    let g_iota = close(&[mi]);
    let g_tau = close(&[t]);
    let g_theta = close(&[d]);
    let lambda1 = close(&[p, mi]);
    let lambda2 = close(&[mi, t]);
    let lambda3 = close(&[t, d]);
    let omega1 = close(&[p, t]);
    let omega2 = close(&[t, s]);

    for (name, g, label) in [
        ("Lambda1", &lambda1, StructureLabel::Klein4),
        ("Lambda2", &lambda2, StructureLabel::Klein4),
        ("Lambda3", &lambda3, StructureLabel::Sym3),
        ("Omega1", &omega1, StructureLabel::Dihedral(8)),
        ("Omega2", &omega2, StructureLabel::Dihedral(12)),
    ] {
        item(
            &format!("{name} structure"),
            g.structure_label == label,
            format!("order {}, {}", g.order, g.structure_label),
        );
    }

    let edges: [(&str, &OpGroupReport, &str, &OpGroupReport); 14] = [
        ("1", &trivial, "<pi>", &g_pi),
        ("1", &trivial, "<iota>", &g_iota),
        ("1", &trivial, "<tau>", &g_tau),
        ("1", &trivial, "<theta>", &g_theta),
        ("<pi>", &g_pi, "Lambda1", &lambda1),
        ("<iota>", &g_iota, "Lambda1", &lambda1),
        ("<iota>", &g_iota, "Lambda2", &lambda2),
        ("<tau>", &g_tau, "Lambda2", &lambda2),
        ("<tau>", &g_tau, "Lambda3", &lambda3),
        ("<theta>", &g_theta, "Lambda3", &lambda3),
        ("Lambda1", &lambda1, "Omega1", &omega1),
        ("Lambda2", &lambda2, "Omega1", &omega1),
        ("Lambda2", &lambda2, "Omega2", &omega2),
        ("Lambda3", &lambda3, "Omega2", &omega2),
    ];
    for (lo, sub, hi, sup) in edges {
        item(
            &format!("{lo} <= {hi}"),
            sup.contains_group(sub) && sub.order < sup.order,
            format!("orders {} < {}", sub.order, sup.order),
        );
    }
    for (name, g) in [("Omega1", &omega1), ("Omega2", &omega2)] {
        let unimodular = g.elements.iter().all(|m| m.det().abs() == 1);
        item(&format!("{name} <= GL(2,Z)"), unimodular, "all determinants are units".into());
    }

    let s_inv = s.inverse().expect("S is unimodular");
    let tdt = t.mul(&d).mul(&t);
    let tdt_inv = tdt.inverse().expect("unimodular");
    let checks = [
        ("D = S^2", d, s.mul(&s)),
        ("S^-1 T S = T D", s_inv.mul(&t).mul(&s), t.mul(&d)),
        (
            "S^-1 P S = (TDT)^-1 P (TDT)",
            s_inv.mul(&p).mul(&s),
            tdt_inv.mul(&p).mul(&tdt),
        ),
    ];
    for (name, lhs, rhs) in checks {
        item(name, lhs == rhs, format!("{lhs} vs {rhs}"));
    }
    items
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fpgroup::DEFAULT_MAX_COSETS;
    use crate::library;

    #[test]
    fn shadows() {
        assert_eq!(abelianize(&tau()).unwrap(), Mat2Z::T);
        assert_eq!(abelianize(&pi()).unwrap(), Mat2Z::P);
        assert_eq!(abelianize(&theta()).unwrap(), Mat2Z::D);
        assert_eq!(abelianize(&varsigma()).unwrap(), Mat2Z::S);
        assert_eq!(abelianize(&iota()).unwrap(), Mat2Z::MINUS_IDENTITY);
        assert_eq!(abelianize(&GenSubstitution::identity()).unwrap(), Mat2Z::IDENTITY);
        let bad = GenSubstitution::new("bad", "x2", "y");
        assert_eq!(
            abelianize(&bad),
            Err(OpError::NotUnimodular { name: "bad".into(), det: 2 })
        );
    }

    #[test]
    fn shadow_is_multiplicative() {
        let ops = catalog();
        for a in &ops {
            for b in &ops {
                let c = a.compose(b);
                assert_eq!(
                    abelianize(&c).unwrap(),
                    abelianize(a).unwrap().mul(&abelianize(b).unwrap()),
                    "{} then {}",
                    a.name,
                    b.name
                );
            }
        }
        // varsigma = zeta^-1 eta, theta agrees with varsigma^2 in the shadow
        let zeta_inv = GenSubstitution::new("zeta^-1", "xY", "y");
        assert_eq!(abelianize(&zeta_inv.compose(&eta())).unwrap(), Mat2Z::S);
        assert_eq!(abelianize(&varsigma().power(2)).unwrap(), Mat2Z::D);
    }

    #[test]
    fn closures() {
        let c = |g: &[Mat2Z]| matrix_group_closure(g, 100).unwrap();
        assert_eq!(c(&[Mat2Z::T, Mat2Z::P]).structure_label, StructureLabel::Dihedral(8));
        assert_eq!(c(&[Mat2Z::T, Mat2Z::S]).structure_label, StructureLabel::Dihedral(12));
        assert_eq!(c(&[Mat2Z::T, Mat2Z::D]).structure_label, StructureLabel::Sym3);
        assert_eq!(c(&[Mat2Z::S]).structure_label, StructureLabel::Cyclic(6));
        assert_eq!(c(&[]).order, 1);
        // T and a shear generate an infinite group
        let shear = Mat2Z::new(1, 1, 0, 1);
        assert_eq!(
            matrix_group_closure(&[shear], 50),
            Err(OpError::ClosureCap { cap: 50 })
        );
    }

    #[test]
    fn hasse_report_passes() {
        let report = verify_hasse();
        for i in &report {
            assert!(i.pass, "{} failed: {}", i.id, i.detail);
        }
        assert!(report.iter().any(|i| i.id == "D = S^2"));
    }

    #[test]
    fn quaternion_is_totally_symmetric() {
        let q = AlgebraicHypermap::from_presentation(&library::quaternion(), DEFAULT_MAX_COSETS).unwrap();
        for s in catalog() {
            assert!(is_invariant(&q, &s).unwrap(), "{}", s.name);
        }
    }

    #[test]
    fn operations_on_the_metacyclic_group() {
        let h1 = AlgebraicHypermap::from_presentation(&library::metacyclic_16(), DEFAULT_MAX_COSETS).unwrap();
        let h2 = apply_operation(&h1, &tau()).unwrap();
        assert!(!hypermaps_isomorphic(&h1, &h2));
        assert!(!is_invariant(&h1, &tau()).unwrap());
        assert!(is_invariant(&h1, &pi()).unwrap());
        assert!(is_invariant(&h1, &iota()).unwrap());
        let twice = apply_operation(&apply_operation(&h1, &iota()).unwrap(), &iota()).unwrap();
        assert_eq!(twice.generators(), h1.generators());
    }

    #[test]
    fn operations_preserve_order_and_permute_type() {
        let h = AlgebraicHypermap::from_presentation(&library::r_17_35(), DEFAULT_MAX_COSETS).unwrap();
        let t = h.hypermap_type();
        let ht = apply_operation(&h, &tau()).unwrap();
        assert_eq!(ht.order(), h.order());
        assert_eq!((ht.hypermap_type().ox, ht.hypermap_type().oy), (t.oy, t.ox));
        let hth = apply_operation(&h, &theta()).unwrap();
        // theta: x -> (xy)^-1, y -> x, so the roles cycle
        assert_eq!(hth.hypermap_type().ox, t.oxy);
        assert_eq!(hth.hypermap_type().oy, t.ox);
        assert_eq!(hth.genus().unwrap(), h.genus().unwrap());
    }

    #[test]
    fn inverse_operation_restores_the_class() {
        let h = AlgebraicHypermap::from_presentation(&library::metacyclic_16(), DEFAULT_MAX_COSETS).unwrap();
        for s in builtin_operations() {
            let order = abelianize(&s).unwrap().order(12).unwrap();
            let back = s.power(order - 1);
            let round = apply_operation(&apply_operation(&h, &s).unwrap(), &back).unwrap();
            assert!(hypermaps_isomorphic(&h, &round), "{}", s.name);
        }
    }
}
