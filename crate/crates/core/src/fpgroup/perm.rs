use std::fmt;

use super::GroupError;

/// A permutation of `{0, ..., n-1}` acting on the right: `(a * b)(i) =
/// b(a(i))`, so words evaluate left to right.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<u32>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation((0..n as u32).collect())
    }

    pub fn from_images(images: Vec<u32>) -> Result<Self, GroupError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            let i = i as usize;
            if i >= n || seen[i] {
                return Err(GroupError::InvalidPermutation);
            }
            seen[i] = true;
        }
        Ok(Permutation(images))
    }

    /// Builds a permutation from disjoint cycles on `n` points.
    pub fn from_cycles(n: usize, cycles: &[&[u32]]) -> Result<Self, GroupError> {
        let mut img: Vec<u32> = (0..n as u32).collect();
        for c in cycles {
            for (k, &p) in c.iter().enumerate() {
                let q = c[(k + 1) % c.len()];
                if p as usize >= n || q as usize >= n {
                    return Err(GroupError::InvalidPermutation);
                }
                img[p as usize] = q;
            }
        }
        Self::from_images(img)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.0
    }

    #[inline]
    pub fn apply(&self, i: u32) -> u32 {
        self.0[i as usize]
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i as u32 == j)
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation(self.0.iter().map(|&i| other.0[i as usize]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j as usize] = i as u32;
        }
        Permutation(inv)
    }

    pub fn pow(&self, k: i64) -> Permutation {
        let mut base = if k < 0 { self.inverse() } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = Permutation::identity(self.degree());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.then(&base);
            }
            base = base.then(&base);
            e >>= 1;
        }
        acc
    }

    /// `g^-1 * self * g`
    pub fn conjugate_by(&self, g: &Permutation) -> Permutation {
        g.inverse().then(self).then(g)
    }

    /// `[self, other] = self^-1 * other^-1 * self * other`
    pub fn commutator(&self, other: &Permutation) -> Permutation {
        self.inverse()
            .then(&other.inverse())
            .then(self)
            .then(other)
    }

    /// Order as the lcm of cycle lengths.
    pub fn order(&self) -> u64 {
        let n = self.0.len();
        let mut seen = vec![false; n];
        let mut ord = 1u64;
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut len = 0u64;
            let mut p = s;
            while !seen[p] {
                seen[p] = true;
                p = self.0[p] as usize;
                len += 1;
            }
            ord = crate::intlattice::lcm(ord as i64, len as i64) as u64;
        }
        ord
    }

    /// Orbits of `<self>`, each sorted, listed by least point.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let mut out = self.raw_cycles();
        for c in &mut out {
            c.sort_unstable();
        }
        out
    }

    fn raw_cycles(&self) -> Vec<Vec<u32>> {
        let n = self.0.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut c = Vec::new();
            let mut p = s;
            while !seen[p] {
                seen[p] = true;
                c.push(p as u32);
                p = self.0[p] as usize;
            }
            out.push(c);
        }
        out
    }
}

impl std::ops::Mul for &Permutation {
    type Output = Permutation;
    fn mul(self, rhs: &Permutation) -> Permutation {
        self.then(rhs)
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let nontrivial: Vec<Vec<u32>> =
            self.raw_cycles().into_iter().filter(|c| c.len() > 1).collect();
        if nontrivial.is_empty() {
            return write!(f, "()");
        }
        for c in nontrivial {
            let s: Vec<String> = c.iter().map(|p| p.to_string()).collect();
            write!(f, "({})", s.join(","))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn right_action_composition() {
        let a = Permutation::from_cycles(3, &[&[0, 1]]).unwrap();
        let b = Permutation::from_cycles(3, &[&[1, 2]]).unwrap();
        // 0 -a-> 1 -b-> 2
        assert_eq!((&a * &b).apply(0), 2);
        assert_eq!(a.then(&b).order(), 3);
        assert!(a.then(&a).is_identity());
    }

    #[test]
    fn powers_and_inverse() {
        let c = Permutation::from_cycles(5, &[&[0, 1, 2, 3, 4]]).unwrap();
        assert_eq!(c.order(), 5);
        assert_eq!(c.pow(-1), c.inverse());
        assert!(c.pow(5).is_identity());
        assert_eq!(c.pow(7), c.pow(2));
        assert!(c.pow(0).is_identity());
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::from_images(vec![0, 0, 1]).is_err());
        assert!(Permutation::from_images(vec![0, 3]).is_err());
    }

    #[test]
    fn commutator_and_conjugate() {
        let a = Permutation::from_cycles(3, &[&[0, 1]]).unwrap();
        let b = Permutation::from_cycles(3, &[&[0, 1, 2]]).unwrap();
        assert_eq!(a.commutator(&b).order(), 3);
        assert_eq!(b.conjugate_by(&a), b.inverse());
        assert_eq!(format!("{:?}", b), "(0,1,2)");
    }
}
