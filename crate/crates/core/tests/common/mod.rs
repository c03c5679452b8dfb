//! Independent integer-lattice oracles shared by the property and acceptance suites.
#![allow(dead_code)]

use std::collections::HashSet;

use quatcover::intlattice::{smith_normal_form, IntMatrix};

pub fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Laplace expansion; only used on matrices of side at most 4.
pub fn det(m: &[Vec<i64>]) -> i64 {
    match m.len() {
        0 => 1,
        1 => m[0][0],
        n => (0..n)
            .map(|j| {
                let minor: Vec<Vec<i64>> = m[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &v)| v).collect())
                    .collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * m[0][j] * det(&minor)
            })
            .sum(),
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// gcd of all k x k minors, the k-th determinantal divisor.
pub fn determinantal_divisor(a: &[Vec<i64>], k: usize) -> i64 {
    let (r, c) = (a.len(), a.first().map_or(0, Vec::len));
    let mut g = 0;
    for rows in subsets(r, k) {
        for cols in subsets(c, k) {
            let minor: Vec<Vec<i64>> = rows.iter().map(|&i| cols.iter().map(|&j| a[i][j]).collect()).collect();
            g = gcd(g, det(&minor));
        }
    }
    g
}

pub fn matmul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| (0..cols).map(|j| (0..inner).map(|k| row[k] * b[k][j]).sum()).collect())
        .collect()
}

/// Checks every defining property of the Smith form of `rows`.
pub fn check_snf(rows: &[Vec<i64>], cols: usize) -> Result<(), String> {
    let a = IntMatrix::from_rows_with_cols(rows, cols).map_err(|e| e.to_string())?;
    let r = smith_normal_form(&a).map_err(|e| e.to_string())?;
    let (u, s, v) = (r.u.to_rows(), r.s.to_rows(), r.v.to_rows());
    if matmul(&matmul(&u, rows), &v) != s {
        return Err(format!("U A V != S for {rows:?}"));
    }
    if det(&u).abs() != 1 || det(&v).abs() != 1 {
        return Err(format!("U or V not unimodular for {rows:?}"));
    }
    for (i, row) in s.iter().enumerate() {
        if row.iter().enumerate().any(|(j, &x)| i != j && x != 0) {
            return Err(format!("S not diagonal for {rows:?}"));
        }
    }
    let diag = r.diagonal();
    if diag.iter().any(|&d| d < 0) {
        return Err(format!("negative diagonal {diag:?}"));
    }
    for w in diag.windows(2) {
        let divides = if w[0] == 0 { w[1] == 0 } else { w[1] % w[0] == 0 };
        if !divides {
            return Err(format!("divisibility chain broken in {diag:?}"));
        }
    }
    let mut product = 1;
    for (k, &d) in diag.iter().enumerate() {
        product *= d;
        if product != determinantal_divisor(rows, k + 1) {
            return Err(format!("diagonal {diag:?} disagrees with the minors of {rows:?}"));
        }
    }
    Ok(())
}

/// `|Z^n / L|` for a full-rank lattice `L`, counted as `D^n / |L mod D|`
/// where `D = |det|`, since `D Z^n` lies inside `L`.
pub fn brute_index(rows: &[Vec<i64>]) -> i64 {
    let n = rows.len();
    let d = det(rows).abs();
    let mut seen = HashSet::new();
    let mut stack = vec![vec![0i64; n]];
    seen.insert(vec![0i64; n]);
    while let Some(p) = stack.pop() {
        for r in rows {
            let q: Vec<i64> = p.iter().zip(r).map(|(a, b)| (a + b).rem_euclid(d)).collect();
            if seen.insert(q.clone()) {
                stack.push(q);
            }
        }
    }
    d.pow(n as u32) / seen.len() as i64
}
