use std::collections::{BTreeMap, HashSet};

use super::{CensusError, CoveringOctuple};
use crate::fpgroup::{quotient_is_presented_by, PermGroup, Permutation, Presentation, Word};
use crate::hypermap::{covering_report, genus_from_type, AlgebraicHypermap, CoveringReport, HypermapType};
use crate::intlattice::{gcd, FinAbGroup};
use crate::library;
use crate::operations::{self, is_invariant};

/// `u = x y^-1 x y`
pub fn u_word() -> Word {
    Word::parse("xYxy").expect("fixed word")
}

/// `v = y x^-1 y x`
pub fn v_word() -> Word {
    Word::parse("yXyx").expect("fixed word")
}

/// Representative of `e mod k` in `(-k/2, k/2]`, keeping relator words short.
fn symmetric(e: i64, k: i64) -> i64 {
    let r = e.rem_euclid(k);
    if 2 * r > k {
        r - k
    } else {
        r
    }
}

/// The defining presentation of the covering group on `x, y`.
pub fn covering_presentation(o: &CoveringOctuple) -> Presentation {
    let (md, nd) = (o.md(), o.nd());
    let (x, y) = (Word::gen(0), Word::gen(1));
    let (u, v) = (u_word(), v_word());
    let uv = |i: i64, j: i64| u.pow(symmetric(i, md)).concat(&v.pow(symmetric(j, nd)));
    let equal = |lhs: Word, rhs: Word| lhs.concat(&rhs.inverse()).free_reduce();
    let xy = x.concat(&y);
    let relators = vec![
        equal(x.pow(4), uv(o.alpha + 1, o.gamma - o.delta)),
        equal(y.pow(4), uv(o.beta - o.alpha, o.delta + 1)),
        equal(xy.pow(4), uv(o.alpha + 1, o.gamma + o.delta)),
        u.pow(md),
        v.pow(nd),
        equal(u.conjugate(&x), u.pow(symmetric(o.alpha, md))),
        equal(u.conjugate(&y), u.pow(symmetric(o.beta, md))),
        equal(v.conjugate(&x), v.pow(symmetric(o.gamma, nd))),
        equal(v.conjugate(&y), v.pow(symmetric(o.delta, nd))),
        equal(u.pow(o.m), v.pow(symmetric(o.n * o.epsilon, nd))),
    ];
    Presentation::new(2, relators).expect("two-generator words")
}

/// `K = <u, v>` as the abelian group `Z^2 / <(md, 0), (0, nd), (m, -n epsilon)>`.
pub fn k_model(o: &CoveringOctuple) -> FinAbGroup {
    FinAbGroup::from_relations(2, &[[o.md(), 0], [0, o.nd()], [o.m, -o.n * o.epsilon]])
        .expect("relations of full rank")
}

/// Multiset of element orders of `u^i v^j` in the abstract model.
fn model_order_profile(k: &FinAbGroup, o: &CoveringOctuple) -> BTreeMap<i64, usize> {
    let mut seen = HashSet::new();
    let mut profile = BTreeMap::new();
    for i in 0..o.md() {
        for j in 0..o.nd() {
            let e = k.element(&[i, j]).expect("two coordinates");
            if seen.insert(e.clone()) {
                *profile.entry(k.element_order(&e)).or_insert(0) += 1;
            }
        }
    }
    profile
}

fn perm_order_profile(g: &PermGroup) -> BTreeMap<i64, usize> {
    let mut profile = BTreeMap::new();
    for e in g.elements() {
        *profile.entry(e.order() as i64).or_insert(0) += 1;
    }
    profile
}

/// A covering built from its octuple, with `K` held both as permutations
/// and as an abstract abelian group.
#[derive(Debug, Clone)]
pub struct Covering {
    pub octuple: CoveringOctuple,
    pub hypermap: AlgebraicHypermap,
    pub u: Permutation,
    pub v: Permutation,
    pub k: PermGroup,
    pub k_model: FinAbGroup,
}

impl Covering {
    pub fn order(&self) -> usize {
        self.hypermap.order()
    }
}

/// Builds the covering group by coset enumeration and checks every structural
/// property the classification asserts about it.
pub fn build_covering(o: &CoveringOctuple, max_cosets: usize) -> Result<Covering, CensusError> {
    let validity = super::validate_octuple(o);
    if !validity.is_valid() {
        return Err(CensusError::Invalid {
            octuple: *o,
            failures: validity.failures.iter().map(ToString::to_string).collect(),
        });
    }
    let bug = |detail: String| CensusError::ClassificationBug { octuple: *o, detail };
    let p = covering_presentation(o);
    let h = AlgebraicHypermap::from_presentation(&p, max_cosets)?;
    let (mnd, md, nd) = (o.mnd() as usize, o.md() as u64, o.nd() as u64);
    if h.order() != 8 * mnd {
        return Err(bug(format!("|G| = {}, expected {}", h.order(), 8 * mnd)));
    }
    let g = h.group();
    let u = h.eval(&u_word());
    let v = h.eval(&v_word());
    let k = PermGroup::generate(g.degree(), &[u.clone(), v.clone()])?;
    if k.order() != mnd {
        return Err(bug(format!("|K| = {}, expected {mnd}", k.order())));
    }
    if !k.is_abelian() {
        return Err(bug("K is not abelian".into()));
    }
    if u.order() != md || v.order() != nd {
        return Err(bug(format!("o(u) = {}, o(v) = {}, expected {md}, {nd}", u.order(), v.order())));
    }
    let cu = PermGroup::generate(g.degree(), std::slice::from_ref(&u))?;
    let cv = PermGroup::generate(g.degree(), std::slice::from_ref(&v))?;
    if !cu.is_normal_in(g) || !cv.is_normal_in(g) || !k.is_normal_in(g) {
        return Err(bug("<u>, <v> or K is not normal".into()));
    }
    let meet = cu.elements().filter(|e| cv.contains(e)).count();
    if meet as i64 != o.d {
        return Err(bug(format!("|<u> ∩ <v>| = {meet}, expected {}", o.d)));
    }
    if !quotient_is_presented_by(&library::quaternion(), &h.generators(), h.order(), &k, 8) {
        return Err(bug("G/K is not Q8".into()));
    }
    let pw = |i: i64, j: i64| u.pow(i).then(&v.pow(j));
    let identities = [
        ("x^4", "xxxx", pw(o.alpha + 1, o.gamma - o.delta)),
        ("y^4", "yyyy", pw(o.beta - o.alpha, o.delta + 1)),
        ("(xy)^4", "(xy)4", pw(o.alpha + 1, o.gamma + o.delta)),
    ];
    for (name, w, rhs) in identities {
        if h.eval(&Word::parse(w).expect("fixed word")) != rhs {
            return Err(bug(format!("{name} identity fails")));
        }
    }
    let model = k_model(o);
    if model.order() as usize != mnd || model_order_profile(&model, o) != perm_order_profile(&k) {
        return Err(bug(format!(
            "abstract K {:?} disagrees with the permutation group",
            model.invariant_factors()
        )));
    }
    Ok(Covering {
        octuple: *o,
        hypermap: h,
        u,
        v,
        k,
        k_model: model,
    })
}

/// Type and genus read off from `K` alone: type `(4p, 4q, 4r)` with
/// `p = o(u^(alpha+1) v^(gamma-delta))`, `q = o(u^(beta-alpha) v^(delta+1))`,
/// `r = o(u^(alpha+1) v^(gamma+delta))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Prediction {
    pub p: i64,
    pub q: i64,
    pub r: i64,
    pub ty: HypermapType,
    pub genus: u64,
}

pub fn predicted_type_genus(o: &CoveringOctuple) -> Result<Prediction, CensusError> {
    let k = k_model(o);
    let ord = |i: i64, j: i64| k.element_order(&k.element(&[i, j]).expect("two coordinates"));
    let p = ord(o.alpha + 1, o.gamma - o.delta);
    let q = ord(o.beta - o.alpha, o.delta + 1);
    let r = ord(o.alpha + 1, o.gamma + o.delta);
    let mnd = o.mnd();
    if mnd % p != 0 || mnd % q != 0 || mnd % r != 0 {
        return Err(CensusError::ClassificationBug {
            octuple: *o,
            detail: format!("non-integral genus for p, q, r = {p}, {q}, {r}"),
        });
    }
    let genus = 4 * mnd - mnd / p - mnd / q - mnd / r + 1;
    let ty = HypermapType {
        ox: 4 * p as u64,
        oy: 4 * q as u64,
        oxy: 4 * r as u64,
    };
    // the same number through the Euler characteristic
    debug_assert_eq!(genus_from_type(8 * mnd as usize, ty).ok(), Some(genus as u64));
    Ok(Prediction {
        p,
        q,
        r,
        ty,
        genus: genus as u64,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SymmetryProfile {
    pub reflexible: bool,
    pub symmetric: bool,
    pub self_petrie: bool,
    pub triply_self_dual: bool,
    pub omega1_invariant: bool,
    pub completely_self_dual: bool,
    pub mho_invariant: bool,
}

impl SymmetryProfile {
    pub fn from_base(reflexible: bool, symmetric: bool, self_petrie: bool, triply_self_dual: bool) -> Self {
        Self {
            reflexible,
            symmetric,
            self_petrie,
            triply_self_dual,
            omega1_invariant: symmetric && self_petrie,
            completely_self_dual: symmetric && triply_self_dual,
            mho_invariant: symmetric && self_petrie && triply_self_dual,
        }
    }

    /// The four flags decided directly: reflexible, symmetric, self-Petrie,
    /// triply self-dual.
    pub fn base(&self) -> [bool; 4] {
        [self.reflexible, self.symmetric, self.self_petrie, self.triply_self_dual]
    }
}

fn cong(a: i64, b: i64, k: i64) -> bool {
    (a - b).rem_euclid(k) == 0
}

/// External symmetries decided by congruences on the parameters.
pub fn symmetry_profile_congruence(o: &CoveringOctuple) -> SymmetryProfile {
    let (md, d) = (o.md(), o.d);
    let (a, b, g, x, e) = (o.alpha, o.beta, o.gamma, o.delta, o.epsilon);
    let reflexible = cong(b, g, d);
    let symmetric = o.m == o.n && cong(a, x, md) && cong(b, g, md) && cong(e * e, 1, d);
    let self_petrie = cong(a, -1, d);
    let triply = o.m == o.n
        && cong(g, a + b - 1, md)
        && cong(x, a, md)
        && cong(a, b, o.m)
        && cong((a - b) * e, a - 1, md)
        && cong(e * e + (2 - a) * e + a, 0, d);
    SymmetryProfile::from_base(reflexible, symmetric, self_petrie, triply)
}

/// External symmetries decided by applying each operation to the built
/// hypermap and testing for isomorphism.
pub fn symmetry_profile_group(c: &Covering) -> Result<SymmetryProfile, CensusError> {
    let h = &c.hypermap;
    Ok(SymmetryProfile::from_base(
        is_invariant(h, &operations::iota())?,
        is_invariant(h, &operations::tau())?,
        is_invariant(h, &operations::pi())?,
        is_invariant(h, &operations::theta())?,
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BranchProfile {
    pub p: i64,
    pub q: i64,
    pub r: i64,
    pub smooth_v: bool,
    pub smooth_e: bool,
    pub smooth_f: bool,
}

/// Branching from the predicted orders, asserting the congruences that
/// smoothness at each location forces.
pub fn branch_profile(o: &CoveringOctuple) -> Result<BranchProfile, CensusError> {
    let pr = predicted_type_genus(o)?;
    let bp = BranchProfile {
        p: pr.p,
        q: pr.q,
        r: pr.r,
        smooth_v: pr.p == 1,
        smooth_e: pr.q == 1,
        smooth_f: pr.r == 1,
    };
    let (m, n, d) = (o.m, o.n, o.d);
    let (a, b, g, x, e) = (o.alpha, o.beta, o.gamma, o.delta, o.epsilon);
    let bug = |which: &str| {
        Err(CensusError::ClassificationBug {
            octuple: *o,
            detail: format!("smooth at {which} but the forced congruences fail"),
        })
    };
    if bp.smooth_v
        && !(cong(a, -1, m) && cong(x, 1, n) && cong((a + 1) / m * e + (g - x) / n, 0, d))
    {
        return bug("hypervertices");
    }
    if bp.smooth_e
        && !(cong(a, 1, m) && cong(x, -1, n) && cong((b - a) / m * e + (x + 1) / n, 0, d))
    {
        return bug("hyperedges");
    }
    if bp.smooth_f
        && !(cong(a, -1, m) && cong(x, -1, n) && cong((a + 1) / m * e + (g + x) / n, 0, d))
    {
        return bug("hyperfaces");
    }
    Ok(bp)
}

/// Smoothness read off the built group: whether the natural covering onto
/// the quaternion hypermap preserves each generator order.
pub fn computed_smoothness(c: &Covering, quaternion: &AlgebraicHypermap) -> Result<[bool; 3], CensusError> {
    match covering_report(&c.hypermap, quaternion) {
        CoveringReport::Covering {
            smooth_v,
            smooth_e,
            smooth_f,
        } => Ok([smooth_v, smooth_e, smooth_f]),
        CoveringReport::NotCovering => Err(CensusError::ClassificationBug {
            octuple: c.octuple,
            detail: "no covering onto the quaternion hypermap".into(),
        }),
    }
}

/// Whether `K` is cyclic, which the classification ties to `gcd(m, n) = 1`.
pub fn k_is_cyclic(c: &Covering) -> bool {
    let n = c.k.order() as u64;
    c.k.elements().any(|e| e.order() == n)
}

pub fn gcd_criterion(o: &CoveringOctuple) -> bool {
    gcd(o.m, o.n) == 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::census::valid_octuples;
    use crate::fpgroup::DEFAULT_MAX_COSETS;

    fn build(o: CoveringOctuple) -> Covering {
        build_covering(&o, DEFAULT_MAX_COSETS).unwrap()
    }

    #[test]
    fn trivial_covering_is_the_quaternion_hypermap() {
        let c = build(CoveringOctuple::trivial());
        assert_eq!(c.order(), 8);
        assert_eq!(c.hypermap.genus().unwrap(), 2);
        assert_eq!(c.k.order(), 1);
        let pr = predicted_type_genus(&c.octuple).unwrap();
        assert_eq!((pr.ty, pr.genus), (c.hypermap.hypermap_type(), 2));
    }

    #[test]
    fn small_examples() {
        let c = build(CoveringOctuple::new(1, 2, 1, 1, 1, 1, 1, 1));
        assert_eq!(c.order(), 16);
        assert_eq!(c.hypermap.hypermap_type().to_string(), "(4,4,4)");
        assert_eq!(c.hypermap.genus().unwrap(), 3);
        let c = build(CoveringOctuple::new(2, 2, 1, 1, 1, 1, 1, 1));
        assert_eq!(c.order(), 32);
        assert_eq!(c.k_model.invariant_factors(), &[2, 2]);
        let pr = predicted_type_genus(&c.octuple).unwrap();
        assert_eq!((pr.ty, pr.genus), (c.hypermap.hypermap_type(), c.hypermap.genus().unwrap()));
        assert_eq!(pr.genus, 5);
    }

    #[test]
    fn predictions() {
        let pr = predicted_type_genus(&CoveringOctuple::new(1, 3, 1, 1, 1, 1, 1, 1)).unwrap();
        assert_eq!((pr.ty.to_string(), pr.genus), ("(4,12,12)".to_string(), 8));
        let pr = predicted_type_genus(&CoveringOctuple::new(3, 1, 1, -1, 1, 1, 1, 1)).unwrap();
        assert_eq!((pr.ty.to_string(), pr.genus), ("(4,12,4)".to_string(), 6));
    }

    #[test]
    fn invalid_octuple_is_rejected() {
        let err = build_covering(&CoveringOctuple::new(2, 1, 2, 1, 3, 1, 1, 1), DEFAULT_MAX_COSETS).unwrap_err();
        assert!(matches!(err, CensusError::Invalid { .. }));
    }

    #[test]
    fn congruence_profiles() {
        let all = |p: SymmetryProfile| {
            p.base().iter().all(|&b| b) && p.omega1_invariant && p.completely_self_dual && p.mho_invariant
        };
        for m in 1..5 {
            assert!(all(symmetry_profile_congruence(&CoveringOctuple::new(m, m, 1, 1, 1, 1, 1, 1))));
        }
        assert!(all(symmetry_profile_congruence(&CoveringOctuple::trivial())));
        let p = symmetry_profile_congruence(&CoveringOctuple::new(2, 1, 1, 1, 1, 1, 1, 1));
        assert_eq!(p.base(), [true, false, true, false]);
    }

    #[test]
    fn group_profiles_agree_on_small_octuples() {
        for o in valid_octuples(8) {
            let c = build(o);
            assert_eq!(
                symmetry_profile_group(&c).unwrap(),
                symmetry_profile_congruence(&o),
                "{o}"
            );
        }
    }

    #[test]
    fn branch_profiles() {
        let b = branch_profile(&CoveringOctuple::new(3, 1, 1, -1, 1, 1, 1, 1)).unwrap();
        assert_eq!((b.smooth_v, b.smooth_e, b.smooth_f), (true, false, true));
        let b = branch_profile(&CoveringOctuple::new(1, 3, 1, 1, 1, 1, -1, 1)).unwrap();
        assert_eq!((b.smooth_v, b.smooth_e, b.smooth_f), (false, true, true));
        let b = branch_profile(&CoveringOctuple::trivial()).unwrap();
        assert_eq!((b.p, b.q, b.r), (1, 1, 1));
    }

    #[test]
    fn computed_smoothness_matches_prediction() {
        let q = AlgebraicHypermap::from_presentation(&library::quaternion(), DEFAULT_MAX_COSETS).unwrap();
        for o in valid_octuples(6) {
            let c = build(o);
            let b = branch_profile(&o).unwrap();
            assert_eq!(computed_smoothness(&c, &q).unwrap(), [b.smooth_v, b.smooth_e, b.smooth_f], "{o}");
            assert_eq!(k_is_cyclic(&c), gcd_criterion(&o), "{o}");
        }
    }
}
