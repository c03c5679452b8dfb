//! Todd–Coxeter coset enumeration, HLT strategy with lookahead.
//!
//! Column `2g` holds the action of generator `g`, column `2g + 1` that of its
//! inverse, so the inverse of column `c` is `c ^ 1`.

use super::{GroupError, PermGroup, Permutation, Presentation, Word};

pub const DEFAULT_MAX_COSETS: usize = 100_000;

const UNDEF: u32 = u32::MAX;

/// A complete, standardized coset table.
#[derive(Clone, PartialEq, Eq)]
pub struct CosetTable {
    num_gens: usize,
    num_cosets: usize,
    // row-major, 2 * num_gens columns
    table: Vec<u32>,
}

impl CosetTable {
    pub fn num_cosets(&self) -> usize {
        self.num_cosets
    }

    pub fn num_gens(&self) -> usize {
        self.num_gens
    }

    /// Image of `coset` under a signed 1-based letter.
    pub fn act(&self, coset: usize, letter: i32) -> usize {
        self.table[coset * 2 * self.num_gens + column(letter)] as usize
    }

    pub fn trace(&self, coset: usize, w: &Word) -> usize {
        w.letters().iter().fold(coset, |c, &l| self.act(c, l))
    }

    /// The action of generator `g` (0-based) as a permutation of cosets.
    pub fn generator_permutation(&self, g: usize) -> Permutation {
        let stride = 2 * self.num_gens;
        let images = (0..self.num_cosets)
            .map(|c| self.table[c * stride + 2 * g])
            .collect();
        Permutation::from_images(images).expect("complete coset table columns are bijections")
    }

    /// Whether every relator fixes every coset.
    pub fn relators_hold(&self, p: &Presentation) -> bool {
        (0..self.num_cosets).all(|c| p.relators().iter().all(|r| self.trace(c, r) == c))
    }
}

impl std::fmt::Debug for CosetTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let stride = 2 * self.num_gens;
        let rows: Vec<&[u32]> = self.table.chunks(stride.max(1)).collect();
        f.debug_struct("CosetTable")
            .field("num_cosets", &self.num_cosets)
            .field("rows", &rows)
            .finish()
    }
}

fn column(letter: i32) -> usize {
    let g = letter.unsigned_abs() as usize - 1;
    2 * g + usize::from(letter < 0)
}

/// Signals that a definition was refused because the coset budget is spent.
struct Full;

struct Enumerator {
    ncols: usize,
    table: Vec<u32>,
    // union-find forest over coset numbers; live cosets are roots
    parent: Vec<u32>,
    live: usize,
    max_cosets: usize,
    hard_cap: usize,
    relators: Vec<Vec<usize>>,
    subgroup: Vec<Vec<usize>>,
    queue: Vec<u32>,
}

impl Enumerator {
    fn new(num_gens: usize, relators: Vec<Vec<usize>>, subgroup: Vec<Vec<usize>>, max_cosets: usize) -> Self {
        let ncols = 2 * num_gens;
        Self {
            ncols,
            table: vec![UNDEF; ncols],
            parent: vec![0],
            live: 1,
            max_cosets,
            hard_cap: max_cosets.saturating_mul(8).max(64),
            relators,
            subgroup,
            queue: Vec::new(),
        }
    }

    fn rows(&self) -> usize {
        self.parent.len()
    }

    #[inline]
    fn get(&self, c: usize, x: usize) -> u32 {
        self.table[c * self.ncols + x]
    }

    #[inline]
    fn set(&mut self, c: usize, x: usize, v: u32) {
        self.table[c * self.ncols + x] = v;
    }

    fn is_live(&self, c: usize) -> bool {
        self.parent[c] as usize == c
    }

    fn define(&mut self, c: usize, x: usize) -> Result<(), Full> {
        if self.live >= self.max_cosets || self.rows() >= self.hard_cap {
            return Err(Full);
        }
        let n = self.rows() as u32;
        self.parent.push(n);
        self.table.extend(std::iter::repeat_n(UNDEF, self.ncols));
        self.live += 1;
        self.set(c, x, n);
        self.set(n as usize, x ^ 1, c as u32);
        Ok(())
    }

    fn rep(&mut self, c: u32) -> u32 {
        let mut r = c;
        while self.parent[r as usize] != r {
            r = self.parent[r as usize];
        }
        let mut c = c;
        while self.parent[c as usize] != r {
            let next = self.parent[c as usize];
            self.parent[c as usize] = r;
            c = next;
        }
        r
    }

    fn merge(&mut self, a: u32, b: u32) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a == b {
            return;
        }
        let (keep, drop) = (a.min(b), a.max(b));
        self.parent[drop as usize] = keep;
        self.live -= 1;
        self.queue.push(drop);
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        self.queue.clear();
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let g = self.queue[i] as usize;
            i += 1;
            for x in 0..self.ncols {
                let d = self.get(g, x);
                if d == UNDEF {
                    continue;
                }
                self.set(d as usize, x ^ 1, UNDEF);
                let mu = self.rep(g as u32) as usize;
                let nu = self.rep(d) as usize;
                let mx = self.get(mu, x);
                if mx != UNDEF {
                    self.merge(nu as u32, mx);
                } else {
                    let nx = self.get(nu, x ^ 1);
                    if nx != UNDEF {
                        self.merge(mu as u32, nx);
                    } else {
                        self.set(mu, x, nu as u32);
                        self.set(nu, x ^ 1, mu as u32);
                    }
                }
            }
        }
    }

    /// Scans `w` from coset `start`, filling gaps by definition when `fill`
    /// is set and recording deductions and coincidences either way.
    fn scan(&mut self, start: usize, w: &[usize], fill: bool) -> Result<(), Full> {
        let mut f = start;
        let mut b = start;
        let mut i = 0isize;
        let mut j = w.len() as isize - 1;
        loop {
            while i <= j && self.get(f, w[i as usize]) != UNDEF {
                f = self.get(f, w[i as usize]) as usize;
                i += 1;
            }
            if i > j {
                if f != b {
                    self.coincidence(f as u32, b as u32);
                }
                return Ok(());
            }
            while j >= i && self.get(b, w[j as usize] ^ 1) != UNDEF {
                b = self.get(b, w[j as usize] ^ 1) as usize;
                j -= 1;
            }
            if j < i {
                self.coincidence(f as u32, b as u32);
                return Ok(());
            }
            if i == j {
                let x = w[i as usize];
                self.set(f, x, b as u32);
                self.set(b, x ^ 1, f as u32);
                return Ok(());
            }
            if !fill {
                return Ok(());
            }
            self.define(f, w[i as usize])?;
        }
    }

    fn scan_subgroup(&mut self) -> Result<(), Full> {
        for k in 0..self.subgroup.len() {
            let w = std::mem::take(&mut self.subgroup[k]);
            let r = self.scan(0, &w, true);
            self.subgroup[k] = w;
            r?;
        }
        Ok(())
    }

    fn process(&mut self, c: usize) -> Result<(), Full> {
        for k in 0..self.relators.len() {
            if !self.is_live(c) {
                return Ok(());
            }
            let w = std::mem::take(&mut self.relators[k]);
            let r = self.scan(c, &w, true);
            self.relators[k] = w;
            r?;
        }
        for x in 0..self.ncols {
            if !self.is_live(c) {
                return Ok(());
            }
            if self.get(c, x) == UNDEF {
                self.define(c, x)?;
            }
        }
        Ok(())
    }

    fn lookahead(&mut self) {
        let relators = std::mem::take(&mut self.relators);
        for c in 0..self.rows() {
            for w in &relators {
                if !self.is_live(c) {
                    break;
                }
                // scanning without filling never asks for a definition
                let _ = self.scan(c, w, false);
            }
        }
        self.relators = relators;
    }

    fn retry(&mut self, step: impl Fn(&mut Self) -> Result<(), Full>) -> Result<(), GroupError> {
        loop {
            match step(self) {
                Ok(()) => return Ok(()),
                Err(Full) => {
                    if self.rows() >= self.hard_cap {
                        return Err(GroupError::CosetLimit { limit: self.max_cosets });
                    }
                    self.lookahead();
                    if self.live >= self.max_cosets {
                        return Err(GroupError::CosetLimit { limit: self.max_cosets });
                    }
                }
            }
        }
    }

    fn run(mut self, num_gens: usize) -> Result<CosetTable, GroupError> {
        self.retry(|s| s.scan_subgroup())?;
        let mut c = 0;
        while c < self.rows() {
            if self.is_live(c) {
                self.retry(|s| s.process(c))?;
            }
            c += 1;
        }
        Ok(self.standardize(num_gens))
    }

    /// Renumbers live cosets in breadth-first order from coset 0, scanning
    /// columns in order.
    fn standardize(&self, num_gens: usize) -> CosetTable {
        let mut renum = vec![UNDEF; self.rows()];
        let mut order = vec![0usize];
        renum[0] = 0;
        let mut k = 0;
        while k < order.len() {
            let c = order[k];
            k += 1;
            for x in 0..self.ncols {
                let d = self.get(c, x) as usize;
                if renum[d] == UNDEF {
                    renum[d] = order.len() as u32;
                    order.push(d);
                }
            }
        }
        let mut table = Vec::with_capacity(order.len() * self.ncols);
        for &c in &order {
            for x in 0..self.ncols {
                table.push(renum[self.get(c, x) as usize]);
            }
        }
        CosetTable {
            num_gens,
            num_cosets: order.len(),
            table,
        }
    }
}

fn to_columns(w: &Word) -> Vec<usize> {
    // cyclic reduction cannot change whether a relator holds at every coset
    let mut l: Vec<i32> = w.free_reduce().letters().to_vec();
    while l.len() >= 2 && l[0] == -l[l.len() - 1] {
        l.pop();
        l.remove(0);
    }
    l.into_iter().map(column).collect()
}

/// Enumerates the cosets of `<subgroup_gens>` in the group presented by `p`.
pub fn todd_coxeter(
    p: &Presentation,
    subgroup_gens: &[Word],
    max_cosets: usize,
) -> Result<CosetTable, GroupError> {
    assert!(max_cosets >= 1, "max_cosets must be positive");
    for w in subgroup_gens {
        if w.max_generator() > p.num_gens() {
            return Err(GroupError::GeneratorOutOfRange {
                word: w.to_string(),
                num_gens: p.num_gens(),
            });
        }
    }
    let relators = p
        .relators()
        .iter()
        .map(to_columns)
        .filter(|w| !w.is_empty())
        .collect();
    let subgroup = subgroup_gens
        .iter()
        .map(|w| w.free_reduce().letters().iter().map(|&l| column(l)).collect())
        .collect();
    Enumerator::new(p.num_gens(), relators, subgroup, max_cosets).run(p.num_gens())
}

/// The right regular representation of the group presented by `p`, with the
/// permutations of its generators in presentation order.
pub fn regular_representation(
    p: &Presentation,
    max_cosets: usize,
) -> Result<(PermGroup, Vec<Permutation>), GroupError> {
    let t = todd_coxeter(p, &[], max_cosets)?;
    let gens: Vec<Permutation> = (0..p.num_gens()).map(|g| t.generator_permutation(g)).collect();
    let group = PermGroup::generate(t.num_cosets(), &gens)?;
    Ok((group, gens))
}
