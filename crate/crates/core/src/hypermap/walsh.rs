//! Underlying bipartite graphs of hypermaps and a small exact isomorphism test.

use super::AlgebraicHypermap;

/// Largest side for which bipartite isomorphism is decided exactly.
pub const BRUTE_FORCE_SIDE_LIMIT: usize = 16;

/// The Walsh bipartite graph: black vertices are cosets `g<x>`, white
/// vertices cosets `g<y>`, and the multiplicity of an edge is the size of
/// the intersection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WalshFingerprint {
    pub black_count: usize,
    pub white_count: usize,
    /// Degree of each black vertex counted with multiplicity, i.e. `o(x)`.
    pub degree_black: u64,
    pub degree_white: u64,
    /// Sorted multiplicities of the incident black-white pairs.
    pub multiplicity_multiset: Vec<u32>,
    /// `adjacency[b][w]` is the multiplicity between black `b` and white `w`.
    pub adjacency: Vec<Vec<u32>>,
}

impl WalshFingerprint {
    pub fn total_multiplicity(&self) -> u64 {
        self.multiplicity_multiset.iter().map(|&m| m as u64).sum()
    }

    /// Number of incident black-white pairs (edges of the simple graph).
    pub fn simple_edge_count(&self) -> usize {
        self.multiplicity_multiset.len()
    }

    /// `[black, white, simple edges, least multiplicity, greatest
    /// multiplicity]`, the compact form written to census files.
    pub fn summary(&self) -> [u64; 5] {
        let lo = self.multiplicity_multiset.first().copied().unwrap_or(0);
        let hi = self.multiplicity_multiset.last().copied().unwrap_or(0);
        [
            self.black_count as u64,
            self.white_count as u64,
            self.simple_edge_count() as u64,
            lo as u64,
            hi as u64,
        ]
    }
}

pub fn walsh_fingerprint(h: &AlgebraicHypermap) -> WalshFingerprint {
    // the group acts on itself by right multiplication, so the cycles of x
    // are exactly the cosets g<x>
    let n = h.order();
    let black = cycle_labels(h.x().images());
    let white = cycle_labels(h.y().images());
    let nb = black.iter().max().map_or(0, |&m| m + 1);
    let nw = white.iter().max().map_or(0, |&m| m + 1);
    let mut adjacency = vec![vec![0u32; nw]; nb];
    for p in 0..n {
        adjacency[black[p]][white[p]] += 1;
    }
    let mut multiplicity_multiset: Vec<u32> = adjacency.iter().flatten().copied().filter(|&m| m > 0).collect();
    multiplicity_multiset.sort_unstable();
    WalshFingerprint {
        black_count: nb,
        white_count: nw,
        degree_black: h.x().order(),
        degree_white: h.y().order(),
        multiplicity_multiset,
        adjacency,
    }
}

fn cycle_labels(images: &[u32]) -> Vec<usize> {
    let mut label = vec![usize::MAX; images.len()];
    let mut next = 0;
    for s in 0..images.len() {
        if label[s] != usize::MAX {
            continue;
        }
        let mut p = s;
        while label[p] == usize::MAX {
            label[p] = next;
            p = images[p] as usize;
        }
        next += 1;
    }
    label
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FingerprintMatch {
    Isomorphic,
    NotIsomorphic,
    /// Too large for the exact test; only counts, degrees and multiplicity
    /// multisets were compared, and they agree.
    FingerprintMatchUnverified,
}

/// Whether two bipartite multigraphs, given by multiplicity matrices, are
/// isomorphic, allowing the colour classes to be swapped.
pub fn bipartite_isomorphic(a: &[Vec<u32>], b: &[Vec<u32>]) -> FingerprintMatch {
    let bt = transpose(b);
    if invariants(a) != invariants(b) && invariants(a) != invariants(&bt) {
        return FingerprintMatch::NotIsomorphic;
    }
    let (ra, ca) = dims(a);
    if ra.max(ca) > BRUTE_FORCE_SIDE_LIMIT {
        return FingerprintMatch::FingerprintMatchUnverified;
    }
    if coloured_isomorphic(a, b) || (ra == ca && coloured_isomorphic(a, &bt)) {
        FingerprintMatch::Isomorphic
    } else {
        FingerprintMatch::NotIsomorphic
    }
}

fn dims(a: &[Vec<u32>]) -> (usize, usize) {
    (a.len(), a.first().map_or(0, Vec::len))
}

fn transpose(a: &[Vec<u32>]) -> Vec<Vec<u32>> {
    let (r, c) = dims(a);
    (0..c).map(|j| (0..r).map(|i| a[i][j]).collect()).collect()
}

fn sorted(v: impl Iterator<Item = u32>) -> Vec<u32> {
    let mut v: Vec<u32> = v.collect();
    v.sort_unstable();
    v
}

/// Sorted row profiles and sorted column profiles.
fn invariants(a: &[Vec<u32>]) -> (Vec<Vec<u32>>, Vec<Vec<u32>>) {
    let mut rows: Vec<Vec<u32>> = a.iter().map(|r| sorted(r.iter().copied())).collect();
    let mut cols: Vec<Vec<u32>> = transpose(a).iter().map(|r| sorted(r.iter().copied())).collect();
    rows.sort();
    cols.sort();
    (rows, cols)
}

/// Colour-preserving isomorphism: rows of `a` are matched to rows of `b` one
/// at a time, keeping the multiset of partial columns equal on both sides.
fn coloured_isomorphic(a: &[Vec<u32>], b: &[Vec<u32>]) -> bool {
    if dims(a) != dims(b) {
        return false;
    }
    let mut used = vec![false; b.len()];
    let mut chosen = Vec::with_capacity(a.len());
    extend(a, b, &mut used, &mut chosen)
}

fn extend(a: &[Vec<u32>], b: &[Vec<u32>], used: &mut [bool], chosen: &mut Vec<usize>) -> bool {
    let k = chosen.len();
    if k == a.len() {
        return true;
    }
    let want = sorted(a[k].iter().copied());
    for r in 0..b.len() {
        if used[r] || sorted(b[r].iter().copied()) != want {
            continue;
        }
        chosen.push(r);
        if partial_columns_agree(a, b, chosen) {
            used[r] = true;
            if extend(a, b, used, chosen) {
                return true;
            }
            used[r] = false;
        }
        chosen.pop();
    }
    false
}

fn partial_columns_agree(a: &[Vec<u32>], b: &[Vec<u32>], chosen: &[usize]) -> bool {
    let cols = dims(a).1;
    let mut ca: Vec<Vec<u32>> = (0..cols).map(|j| (0..chosen.len()).map(|i| a[i][j]).collect()).collect();
    let mut cb: Vec<Vec<u32>> = (0..cols).map(|j| chosen.iter().map(|&r| b[r][j]).collect()).collect();
    ca.sort_unstable();
    cb.sort_unstable();
    ca == cb
}

/// Graphs named in the smooth-cover classification.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReferenceGraph {
    /// `K_{2,2}` with every edge doubled.
    K22Doubled,
    /// An 8-cycle with every edge doubled.
    C8Doubled,
    K44,
    /// The 4-cube, bipartitioned by parity of weight.
    Hypercube4,
}

pub fn reference_graph(g: ReferenceGraph) -> Vec<Vec<u32>> {
    match g {
        ReferenceGraph::K22Doubled => vec![vec![2; 2]; 2],
        ReferenceGraph::C8Doubled => (0..4)
            .map(|i| (0..4).map(|j| if j == i || j == (i + 1) % 4 { 2 } else { 0 }).collect())
            .collect(),
        ReferenceGraph::K44 => vec![vec![1; 4]; 4],
        ReferenceGraph::Hypercube4 => {
            let even: Vec<u32> = (0..16u32).filter(|v| v.count_ones() % 2 == 0).collect();
            let odd: Vec<u32> = (0..16u32).filter(|v| v.count_ones() % 2 == 1).collect();
            even.iter()
                .map(|e| odd.iter().map(|o| u32::from((e ^ o).count_ones() == 1)).collect())
                .collect()
        }
    }
}
