use indexmap::IndexSet;

use super::{GroupError, Permutation};

/// Largest group held as an explicit element list.
pub const ELEMENT_CAP: usize = 20_000;

/// A finite permutation group stored with its full element list.
///
/// Elements are kept in breadth-first order over the generators, starting
/// from the identity, and each non-identity element remembers the element
/// and generator it was reached from. That spanning tree is what lets a
/// generator assignment be extended element by element.
#[derive(Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    elements: IndexSet<Permutation>,
    parent: Vec<(u32, u32)>,
}

impl PermGroup {
    /// The subgroup of `Sym(degree)` generated by `gens`.
    pub fn generate(degree: usize, gens: &[Permutation]) -> Result<Self, GroupError> {
        Self::generate_with_cap(degree, gens, ELEMENT_CAP)
    }

    pub fn generate_with_cap(
        degree: usize,
        gens: &[Permutation],
        cap: usize,
    ) -> Result<Self, GroupError> {
        if let Some(g) = gens.iter().find(|g| g.degree() != degree) {
            return Err(GroupError::DegreeMismatch {
                found: g.degree(),
                expected: degree,
            });
        }
        let mut elements = IndexSet::new();
        elements.insert(Permutation::identity(degree));
        let mut parent = vec![(0, 0)];
        let mut k = 0;
        while k < elements.len() {
            for (gi, g) in gens.iter().enumerate() {
                let next = elements[k].then(g);
                if elements.insert(next) {
                    if elements.len() > cap {
                        return Err(GroupError::ElementCap { cap });
                    }
                    parent.push((k as u32, gi as u32));
                }
            }
            k += 1;
        }
        Ok(Self {
            degree,
            generators: gens.to_vec(),
            elements,
            parent,
        })
    }

    pub fn trivial(degree: usize) -> Self {
        Self::generate(degree, &[]).expect("trivial group fits any cap")
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> impl ExactSizeIterator<Item = &Permutation> {
        self.elements.iter()
    }

    /// The element at position `i` of the breadth-first listing; position 0
    /// is the identity.
    pub fn element(&self, i: usize) -> &Permutation {
        &self.elements[i]
    }

    pub fn index_of(&self, g: &Permutation) -> Option<usize> {
        self.elements.get_index_of(g)
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.elements.contains(g)
    }

    /// For `i > 0`, the pair `(j, s)` with `element(i) = element(j) * gen(s)`
    /// and `j < i`.
    pub fn parent(&self, i: usize) -> (usize, usize) {
        let (j, s) = self.parent[i];
        (j as usize, s as usize)
    }

    pub fn identity(&self) -> Permutation {
        Permutation::identity(self.degree)
    }

    pub fn is_abelian(&self) -> bool {
        let g = &self.generators;
        (0..g.len()).all(|i| (i + 1..g.len()).all(|j| g[i].then(&g[j]) == g[j].then(&g[i])))
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.degree == other.degree && self.generators.iter().all(|g| other.contains(g))
    }

    /// Whether `self` is normalized by every generator of `g`.
    pub fn is_normal_in(&self, g: &PermGroup) -> bool {
        self.is_subgroup_of(g)
            && g.generators
                .iter()
                .all(|s| self.generators.iter().all(|h| self.contains(&h.conjugate_by(s))))
    }

    pub fn orbit(&self, point: u32) -> Vec<u32> {
        let mut seen = vec![false; self.degree];
        seen[point as usize] = true;
        let mut out = vec![point];
        let mut k = 0;
        while k < out.len() {
            let p = out[k];
            k += 1;
            for g in &self.generators {
                let q = g.apply(p);
                if !seen[q as usize] {
                    seen[q as usize] = true;
                    out.push(q);
                }
            }
        }
        out
    }

    /// Transitive with point stabilizers trivial.
    pub fn is_regular(&self) -> bool {
        self.order() == self.degree && self.orbit(0).len() == self.degree
    }

    /// Sorted multiset of element orders.
    pub fn element_order_profile(&self) -> Vec<u64> {
        let mut v: Vec<u64> = self.elements.iter().map(Permutation::order).collect();
        v.sort_unstable();
        v
    }

    /// Smallest normal subgroup of `self` containing `seeds`.
    pub fn normal_closure(&self, seeds: &[Permutation]) -> Result<PermGroup, GroupError> {
        let mut gens: Vec<Permutation> = seeds.iter().filter(|s| !s.is_identity()).cloned().collect();
        let mut h = PermGroup::generate(self.degree, &gens)?;
        let mut k = 0;
        // every generator of h is conjugated by every generator of self once
        while k < gens.len() {
            for s in &self.generators {
                let c = gens[k].conjugate_by(s);
                if !h.contains(&c) {
                    gens.push(c);
                    h = PermGroup::generate(self.degree, &gens)?;
                }
            }
            k += 1;
        }
        Ok(h)
    }

    /// `[a, b]` over the generators, closed to a normal subgroup.
    pub fn commutator_subgroup(&self, other: &PermGroup) -> Result<PermGroup, GroupError> {
        let mut seeds = Vec::new();
        for a in &other.generators {
            for g in &self.generators {
                let c = a.commutator(g);
                if !c.is_identity() {
                    seeds.push(c);
                }
            }
        }
        self.normal_closure(&seeds)
    }

    pub fn derived_subgroup(&self) -> Result<PermGroup, GroupError> {
        self.commutator_subgroup(self)
    }

    /// `G = G_1 >= G_2 >= ...` with `G_{i+1} = [G_i, G]`, stopping at the
    /// first term equal to its predecessor.
    pub fn lower_central_series(&self) -> Result<Vec<PermGroup>, GroupError> {
        let mut series = vec![self.clone()];
        loop {
            let last = series.last().expect("series starts nonempty");
            if last.order() == 1 {
                return Ok(series);
            }
            let next = self.commutator_subgroup(last)?;
            if next.order() == last.order() {
                return Ok(series);
            }
            series.push(next);
        }
    }

    /// Nilpotency class, or `None` when the series stalls above the
    /// identity. The trivial group has class 0.
    pub fn nilpotency_class(&self) -> Result<Option<usize>, GroupError> {
        let s = self.lower_central_series()?;
        Ok((s.last().expect("nonempty").order() == 1).then(|| s.len() - 1))
    }
}

impl std::fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("PermGroup")
            .field("degree", &self.degree)
            .field("order", &self.order())
            .field("generators", &self.generators)
            .finish()
    }
}
