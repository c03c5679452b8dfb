use super::{checked_add, checked_mul, gcd, lcm, smith_normal_form, IntMatrix, LatticeError};

/// A finite abelian group `Z^n / L` in invariant-factor form.
///
/// `coordinate_map` is the `n x k` matrix sending an exponent vector over the
/// original generators to canonical coordinates, one per invariant factor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinAbGroup {
    invariant_factors: Vec<i64>,
    coordinate_map: IntMatrix,
}

/// Element of a [`FinAbGroup`]: one residue per invariant factor.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AbElement {
    coords: Vec<i64>,
}

impl AbElement {
    pub fn coords(&self) -> &[i64] {
        &self.coords
    }
}

impl FinAbGroup {
    /// Abelian group on `num_gens` generators subject to the given exponent
    /// rows. Fails when the relations do not have full rank.
    pub fn from_relations<R: AsRef<[i64]>>(
        num_gens: usize,
        relations: &[R],
    ) -> Result<Self, LatticeError> {
        let a = IntMatrix::from_rows_with_cols(relations, num_gens)?;
        let snf = smith_normal_form(&a)?;
        let diag = snf.diagonal();
        let rank = snf.rank();
        if rank < num_gens {
            return Err(LatticeError::InfiniteQuotient {
                free_rank: num_gens - rank,
            });
        }
        let kept: Vec<usize> = (0..num_gens).filter(|&i| diag[i] > 1).collect();
        let mut map = IntMatrix::zeros(num_gens, kept.len());
        for g in 0..num_gens {
            for (c, &i) in kept.iter().enumerate() {
                map[(g, c)] = snf.v[(g, i)].rem_euclid(diag[i]);
            }
        }
        Ok(Self {
            invariant_factors: kept.iter().map(|&i| diag[i]).collect(),
            coordinate_map: map,
        })
    }

    pub fn invariant_factors(&self) -> &[i64] {
        &self.invariant_factors
    }

    pub fn coordinate_map(&self) -> &IntMatrix {
        &self.coordinate_map
    }

    pub fn num_gens(&self) -> usize {
        self.coordinate_map.rows()
    }

    pub fn order(&self) -> i64 {
        self.invariant_factors.iter().product()
    }

    pub fn is_cyclic(&self) -> bool {
        self.invariant_factors.len() <= 1
    }

    pub fn identity(&self) -> AbElement {
        AbElement {
            coords: vec![0; self.invariant_factors.len()],
        }
    }

    /// The image of the word with the given exponent sums over the original
    /// generators.
    pub fn element(&self, exponents: &[i64]) -> Result<AbElement, LatticeError> {
        if exponents.len() != self.num_gens() {
            return Err(LatticeError::Arity {
                found: exponents.len(),
                expected: self.num_gens(),
            });
        }
        let mut coords = Vec::with_capacity(self.invariant_factors.len());
        for (c, &f) in self.invariant_factors.iter().enumerate() {
            let mut acc = 0i64;
            for (g, &e) in exponents.iter().enumerate() {
                // reduce first so the product stays small
                let term = checked_mul(e.rem_euclid(f), self.coordinate_map[(g, c)], "coordinates")?;
                acc = checked_add(acc, term, "coordinates")?.rem_euclid(f);
            }
            coords.push(acc);
        }
        Ok(AbElement { coords })
    }

    pub fn generator(&self, i: usize) -> AbElement {
        let mut e = vec![0; self.num_gens()];
        e[i] = 1;
        self.element(&e).expect("unit exponent vector")
    }

    pub fn add(&self, a: &AbElement, b: &AbElement) -> AbElement {
        AbElement {
            coords: a
                .coords
                .iter()
                .zip(&b.coords)
                .zip(&self.invariant_factors)
                .map(|((x, y), f)| (x + y).rem_euclid(*f))
                .collect(),
        }
    }

    pub fn scale(&self, a: &AbElement, k: i64) -> AbElement {
        AbElement {
            coords: a
                .coords
                .iter()
                .zip(&self.invariant_factors)
                .map(|(x, f)| ((*x as i128 * k.rem_euclid(*f) as i128).rem_euclid(*f as i128)) as i64)
                .collect(),
        }
    }

    /// Least `k >= 1` with `k * g = 0`.
    pub fn element_order(&self, g: &AbElement) -> i64 {
        g.coords
            .iter()
            .zip(&self.invariant_factors)
            .map(|(c, f)| f / gcd(*f, *c))
            .fold(1, lcm)
    }

    /// Order of the cyclic subgroup `<a> ∩ <b>`, from
    /// `|<a>||<b>| = |<a> ∩ <b>| |<a, b>|`.
    pub fn cyclic_intersection_order(&self, a: &AbElement, b: &AbElement) -> i64 {
        let span = self.subgroup_order(&[a.clone(), b.clone()]);
        self.element_order(a) * self.element_order(b) / span
    }

    /// Order of the subgroup generated by `elems`, by closing under addition.
    pub fn subgroup_order(&self, elems: &[AbElement]) -> i64 {
        let mut seen = std::collections::HashSet::new();
        let mut stack = vec![self.identity()];
        seen.insert(self.identity());
        while let Some(e) = stack.pop() {
            for g in elems {
                let n = self.add(&e, g);
                if seen.insert(n.clone()) {
                    stack.push(n);
                }
            }
        }
        seen.len() as i64
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quaternion_cover_k(m: i64, n: i64, d: i64, eps: i64) -> FinAbGroup {
        FinAbGroup::from_relations(2, &[[m * d, 0], [0, n * d], [m, -n * eps]]).unwrap()
    }

    #[test]
    fn order_two_example() {
        let k = quaternion_cover_k(1, 2, 1, 1);
        assert_eq!(k.order(), 2);
        assert_eq!(k.invariant_factors(), &[2]);
        assert_eq!(k.element_order(&k.generator(0)), 1);
        assert_eq!(k.element_order(&k.generator(1)), 2);
        assert_eq!(k.element_order(&k.identity()), 1);
    }

    #[test]
    fn z2_times_z6() {
        let m = 2;
        let k = FinAbGroup::from_relations(2, &[[3 * m, 0], [0, 3 * m], [m, -m]]).unwrap();
        assert_eq!(k.invariant_factors(), &[2, 6]);
        assert_eq!(k.order(), 12);
    }

    #[test]
    fn trivial_group() {
        let k = FinAbGroup::from_relations(1, &[[1]]).unwrap();
        assert_eq!(k.order(), 1);
        assert!(k.invariant_factors().is_empty());
        assert_eq!(k.element_order(&k.generator(0)), 1);
    }

    #[test]
    fn free_rank_is_reported() {
        let err = FinAbGroup::from_relations(2, &[[2, 4]]).unwrap_err();
        assert_eq!(err, LatticeError::InfiniteQuotient { free_rank: 1 });
        let err = FinAbGroup::from_relations(2, &[[2, 0], [4, 0]]).unwrap_err();
        assert_eq!(err, LatticeError::InfiniteQuotient { free_rank: 1 });
    }

    #[test]
    fn intersection_of_cyclic_factors() {
        let k = quaternion_cover_k(2, 3, 4, 1);
        let (u, v) = (k.generator(0), k.generator(1));
        assert_eq!(k.order(), 24);
        assert_eq!(k.element_order(&u), 8);
        assert_eq!(k.element_order(&v), 12);
        assert_eq!(k.cyclic_intersection_order(&u, &v), 4);
    }

    #[test]
    fn arity_checked() {
        let k = quaternion_cover_k(1, 1, 1, 0);
        assert!(matches!(k.element(&[1]), Err(LatticeError::Arity { .. })));
    }
}
