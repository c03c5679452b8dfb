use super::{checked_sub, IntMatrix, LatticeError};

/// `U * A * V = S` with `U`, `V` unimodular and `S` diagonal, nonnegative,
/// and each nonzero diagonal entry dividing the next.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SnfResult {
    pub u: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
}

impl SnfResult {
    pub fn diagonal(&self) -> Vec<i64> {
        self.s.diagonal()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().take_while(|&&d| d != 0).count()
    }
}

/// Computes the Smith normal form of `a`.
///
/// The pivot is always the nonzero entry of least absolute value in the
/// remaining block, ties broken by lowest `(row, col)`, so the transforms are
/// a deterministic function of the input.
pub fn smith_normal_form(a: &IntMatrix) -> Result<SnfResult, LatticeError> {
    let (rows, cols) = (a.rows(), a.cols());
    let mut s = a.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);

    for t in 0..rows.min(cols) {
        loop {
            let Some((pi, pj)) = select_pivot(&s, t) else {
                return finish(u, s, v);
            };
            s.swap_rows(t, pi);
            u.swap_rows(t, pi);
            s.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let p = s[(t, t)];
            let mut clean = true;
            for i in t + 1..rows {
                let q = s[(i, t)] / p;
                if q != 0 {
                    s.add_row_multiple(i, t, neg(q)?)?;
                    u.add_row_multiple(i, t, neg(q)?)?;
                }
                clean &= s[(i, t)] == 0;
            }
            for j in t + 1..cols {
                let q = s[(t, j)] / p;
                if q != 0 {
                    s.add_col_multiple(j, t, neg(q)?)?;
                    v.add_col_multiple(j, t, neg(q)?)?;
                }
                clean &= s[(t, j)] == 0;
            }
            if !clean {
                continue;
            }

            // The pivot must divide the whole remaining block; otherwise fold
            // an offending row into row t and go again with a smaller pivot.
            let offending = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| s[(i, j)] % p != 0));
            match offending {
                Some(i) => {
                    s.add_row_multiple(t, i, 1)?;
                    u.add_row_multiple(t, i, 1)?;
                }
                None => break,
            }
        }
        if s[(t, t)] < 0 {
            s.negate_row(t)?;
            u.negate_row(t)?;
        }
    }
    finish(u, s, v)
}

fn neg(q: i64) -> Result<i64, LatticeError> {
    checked_sub(0, q, "quotient negation")
}

fn select_pivot(s: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(u64, usize, usize)> = None;
    for i in t..s.rows() {
        for j in t..s.cols() {
            let x = s[(i, j)];
            if x == 0 {
                continue;
            }
            let a = x.unsigned_abs();
            if best.is_none_or(|(b, _, _)| a < b) {
                best = Some((a, i, j));
            }
        }
    }
    best.map(|(_, i, j)| (i, j))
}

fn finish(u: IntMatrix, s: IntMatrix, v: IntMatrix) -> Result<SnfResult, LatticeError> {
    Ok(SnfResult { u, s, v })
}
