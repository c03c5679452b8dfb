use std::collections::BTreeMap;

use super::CensusError;
use crate::fpgroup::{find_isomorphism, regular_representation, PermGroup, Permutation, Presentation, Word};
use crate::intlattice::FinAbGroup;

/// `(p, a, b, c, d)` for the metacyclic `p`-group
/// `<u, v | u^(p^(a+c)), v^(p^(b+c)), u^(p^a) = v^(p^b), u^v = u^(1+p^(a+d)), v^u = v^(1-p^(b+d))>`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MetacyclicParams {
    pub p: i64,
    pub a: u32,
    pub b: u32,
    pub c: u32,
    pub d: u32,
}

impl MetacyclicParams {
    pub fn new(p: i64, a: u32, b: u32, c: u32, d: u32) -> Self {
        Self { p, a, b, c, d }
    }

    /// `0 <= d <= c <= a + d <= b + d`
    pub fn satisfies_chain(&self) -> bool {
        self.d <= self.c && self.c <= self.a + self.d && self.a <= self.b
    }

    pub fn expected_order(&self) -> i64 {
        self.p.pow(self.a + self.b + self.c)
    }

    /// Every admissible tuple with the given primes and `a, b, c, d <= max`.
    pub fn sweep(primes: &[i64], max: u32) -> Vec<MetacyclicParams> {
        let mut out = Vec::new();
        for &p in primes {
            for a in 0..=max {
                for b in 0..=max {
                    for c in 0..=max {
                        for d in 0..=max {
                            let mp = MetacyclicParams::new(p, a, b, c, d);
                            if mp.satisfies_chain() {
                                out.push(mp);
                            }
                        }
                    }
                }
            }
        }
        out
    }
}

pub fn metacyclic_presentation(mp: &MetacyclicParams) -> Presentation {
    let pp = |k: u32| mp.p.pow(k);
    let (u, v) = (Word::gen(0), Word::gen(1));
    let relators = vec![
        u.pow(pp(mp.a + mp.c)),
        v.pow(pp(mp.b + mp.c)),
        u.pow(pp(mp.a)).concat(&v.pow(-pp(mp.b))),
        u.conjugate(&v).concat(&u.pow(-(1 + pp(mp.a + mp.d)))),
        v.conjugate(&u).concat(&v.pow(-(1 - pp(mp.b + mp.d)))),
    ];
    Presentation::new(2, relators).expect("two-generator words")
}

/// `(|G|, |G'|, invariant factors of G/G')`
pub type InvariantVector = (usize, usize, Vec<i64>);

#[derive(Debug, Clone)]
pub struct MetacyclicReport {
    pub params: MetacyclicParams,
    pub group: PermGroup,
    pub u: Permutation,
    pub v: Permutation,
    pub order: usize,
    pub derived_order: usize,
    pub derived_is_cyclic: bool,
    /// whether `G' = <u^(p^(a+d))>`
    pub derived_generated_by_u_power: bool,
    /// invariant factors of the abelianization, from the relator matrix
    pub abelianization: Vec<i64>,
    /// `|G / G'|` counted in the permutation group
    pub abelianization_order: usize,
}

impl MetacyclicReport {
    pub fn invariant_vector(&self) -> InvariantVector {
        (self.order, self.derived_order, self.abelianization.clone())
    }

    /// Whether order, derived subgroup and abelianization are as claimed for
    /// these parameters.
    pub fn matches_claims(&self) -> bool {
        let mp = &self.params;
        let pp = |k: u32| mp.p.pow(k);
        let mut claimed: Vec<i64> = [pp(mp.a), pp(mp.b + mp.d)].into_iter().filter(|&f| f > 1).collect();
        claimed.sort_unstable();
        self.order as i64 == mp.expected_order()
            && self.derived_order as i64 == pp(mp.c - mp.d)
            && self.derived_is_cyclic
            && self.derived_generated_by_u_power
            && self.abelianization == claimed
            && self.abelianization_order * self.derived_order == self.order
    }
}

pub fn metacyclic_group(mp: &MetacyclicParams, max_cosets: usize) -> Result<MetacyclicReport, CensusError> {
    if !mp.satisfies_chain() {
        return Err(CensusError::BadParameters(format!(
            "{mp:?} violates 0 <= d <= c <= a+d <= b+d"
        )));
    }
    let pres = metacyclic_presentation(mp);
    let (group, gens) = regular_representation(&pres, max_cosets)?;
    let (u, v) = (gens[0].clone(), gens[1].clone());
    let derived = group.derived_subgroup()?;
    let n = derived.order() as u64;
    let derived_is_cyclic = derived.elements().any(|e| e.order() == n);
    let w = u.pow(mp.p.pow(mp.a + mp.d));
    let from_u = PermGroup::generate(group.degree(), &[w])?;
    let sums: Vec<Vec<i64>> = pres.relators().iter().map(|r| r.exponent_sums(2)).collect();
    let ab = FinAbGroup::from_relations(2, &sums)?;
    Ok(MetacyclicReport {
        params: *mp,
        order: group.order(),
        derived_order: derived.order(),
        derived_is_cyclic,
        derived_generated_by_u_power: from_u.order() == derived.order() && from_u.is_subgroup_of(&derived),
        abelianization: ab.invariant_factors().to_vec(),
        abelianization_order: group.order() / derived.order(),
        group,
        u,
        v,
    })
}

/// Tuples in a sweep whose invariant vectors coincide, with whether the
/// groups were found to be isomorphic.
#[derive(Debug, Clone)]
pub struct InvariantCollision {
    pub first: MetacyclicParams,
    pub second: MetacyclicParams,
    pub vector: InvariantVector,
    pub isomorphic: bool,
}

/// Groups the reports by invariant vector and reports every pair that
/// shares one, checking each pair for an explicit isomorphism.
pub fn invariant_collisions(reports: &[MetacyclicReport]) -> Vec<InvariantCollision> {
    let mut by_vector: BTreeMap<(i64, InvariantVector), Vec<&MetacyclicReport>> = BTreeMap::new();
    for r in reports {
        by_vector.entry((r.params.p, r.invariant_vector())).or_default().push(r);
    }
    let mut out = Vec::new();
    for ((_, vector), rs) in by_vector {
        for (i, a) in rs.iter().enumerate() {
            for b in &rs[i + 1..] {
                out.push(InvariantCollision {
                    first: a.params,
                    second: b.params,
                    vector: vector.clone(),
                    isomorphic: find_isomorphism(&a.group, &b.group).is_some(),
                });
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NilpotencyReport {
    pub part_orders: Vec<u64>,
    pub k_order: usize,
    pub class: Option<usize>,
    /// the number of cyclic parts
    pub bound: usize,
}

impl NilpotencyReport {
    pub fn within_bound(&self) -> bool {
        self.class.is_some_and(|c| c <= self.bound)
    }
}

/// Checks that each part generates a normal cyclic subgroup of `g`, then
/// computes the nilpotency class of the subgroup they generate together.
pub fn nilpotency_audit(g: &PermGroup, parts: &[Permutation]) -> Result<NilpotencyReport, CensusError> {
    for (index, part) in parts.iter().enumerate() {
        let c = PermGroup::generate(g.degree(), std::slice::from_ref(part))?;
        if !c.is_subgroup_of(g) || !c.is_normal_in(g) {
            return Err(CensusError::NotNormal { index });
        }
    }
    let k = PermGroup::generate(g.degree(), parts)?;
    Ok(NilpotencyReport {
        part_orders: parts.iter().map(Permutation::order).collect(),
        k_order: k.order(),
        class: k.nilpotency_class()?,
        bound: parts.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fpgroup::DEFAULT_MAX_COSETS;
    use crate::library;

    fn report(p: i64, a: u32, b: u32, c: u32, d: u32) -> MetacyclicReport {
        metacyclic_group(&MetacyclicParams::new(p, a, b, c, d), DEFAULT_MAX_COSETS).unwrap()
    }

    #[test]
    fn quaternion_parameters() {
        let r = report(2, 1, 1, 1, 0);
        assert!(r.matches_claims());
        assert_eq!(r.order, 8);
        let (q8, _) = regular_representation(&library::quaternion_classical(), DEFAULT_MAX_COSETS).unwrap();
        assert!(find_isomorphism(&r.group, &q8).is_some());
    }

    #[test]
    fn abelian_when_c_equals_d() {
        for (a, b, c) in [(0, 1, 1), (1, 1, 1), (1, 2, 2), (2, 2, 2)] {
            let r = report(2, a, b, c, c);
            assert!(r.group.is_abelian());
            assert_eq!(r.derived_order, 1);
            assert!(r.matches_claims());
        }
    }

    #[test]
    fn order_sixteen_example() {
        let r = report(2, 1, 2, 1, 0);
        assert_eq!(r.order, 16);
        assert_eq!(r.derived_order, 2);
        assert_eq!(r.abelianization, vec![2, 4]);
    }

    #[test]
    fn rejects_broken_chain() {
        let err = metacyclic_group(&MetacyclicParams::new(2, 0, 0, 1, 0), DEFAULT_MAX_COSETS).unwrap_err();
        assert!(matches!(err, CensusError::BadParameters(_)));
    }

    #[test]
    fn collisions_are_isomorphic() {
        let rs = vec![report(2, 0, 0, 1, 1), report(2, 0, 1, 0, 0), report(2, 1, 1, 1, 0)];
        let c = invariant_collisions(&rs);
        assert_eq!(c.len(), 1);
        assert!(c[0].isomorphic);
    }

    #[test]
    fn audits() {
        let (g, gens) = regular_representation(&library::rph_5_8(), DEFAULT_MAX_COSETS).unwrap();
        let u = crate::fpgroup::evaluate_word(&Word::parse("xYxy").unwrap(), &gens);
        let v = crate::fpgroup::evaluate_word(&Word::parse("yXyx").unwrap(), &gens);
        let rep = nilpotency_audit(&g, &[u, v]).unwrap();
        assert_eq!((rep.k_order, rep.class), (4, Some(1)));
        assert!(rep.within_bound());
        // x alone does not generate a normal subgroup
        assert_eq!(nilpotency_audit(&g, &[gens[0].clone()]), Err(CensusError::NotNormal { index: 0 }));
    }
}
