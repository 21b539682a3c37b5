use super::{IntMatrix, Int};
use num::{Integer, Signed, Zero};

/// Smith normal form `U * M * V = D` with `U`, `V` unimodular and `D`
/// diagonal with a nonnegative divisibility chain `d1 | d2 | ...`.
#[derive(Clone, Debug)]
pub struct SnfResult {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SnfResult {
    pub fn rank(&self) -> usize {
        self.d.diagonal().iter().filter(|e| !e.is_zero()).count()
    }

    /// Nonzero diagonal entries.
    pub fn invariant_factors(&self) -> Vec<Int> {
        self.d.diagonal().into_iter().filter(|e| !e.is_zero()).collect()
    }
}

/// Quotient `q` with `|a - q*b|` minimal (nearest-integer division).
fn div_nearest(a: &Int, b: &Int) -> Int {
    let (mut q, r) = a.div_rem(b);
    if r.abs() * 2 > b.abs() {
        if r.sign() == b.sign() {
            q += 1;
        } else {
            q -= 1;
        }
    }
    q
}

/// Pivot rule: smallest absolute value among nonzero entries of the
/// trailing submatrix, ties broken by row-major position. The fixed rule
/// keeps golden outputs stable across runs.
fn pick_pivot(d: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..d.rows {
        for j in t..d.cols {
            if d[(i, j)].is_zero() {
                continue;
            }
            match best {
                None => best = Some((i, j)),
                Some(b) => {
                    if d[(i, j)].abs() < d[b].abs() {
                        best = Some((i, j));
                    }
                }
            }
        }
    }
    best
}

/// Smith normal form by Euclidean row/column reduction.
pub fn snf(m: &IntMatrix) -> SnfResult {
    let mut d = m.clone();
    let mut u = IntMatrix::identity(m.rows);
    let mut v = IntMatrix::identity(m.cols);
    let steps = m.rows.min(m.cols);
    let mut t = 0;
    'outer: while t < steps {
        loop {
            let Some((pi, pj)) = pick_pivot(&d, t) else { break 'outer };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let pivot = d[(t, t)].clone();
            let mut leftover = false;
            for i in t + 1..d.rows {
                if d[(i, t)].is_zero() {
                    continue;
                }
                let q = div_nearest(&d[(i, t)], &pivot);
                d.row_sub(i, t, &q);
                u.row_sub(i, t, &q);
                if !d[(i, t)].is_zero() {
                    leftover = true;
                }
            }
            if leftover {
                continue; // a strictly smaller remainder exists; re-pivot
            }
            for j in t + 1..d.cols {
                if d[(t, j)].is_zero() {
                    continue;
                }
                let q = div_nearest(&d[(t, j)], &pivot);
                d.col_sub(j, t, &q);
                v.col_sub(j, t, &q);
                if !d[(t, j)].is_zero() {
                    leftover = true;
                }
            }
            if leftover {
                continue;
            }
            // pivot must divide the rest of the submatrix
            let mut bad_row = None;
            'scan: for i in t + 1..d.rows {
                for j in t + 1..d.cols {
                    if !(&d[(i, j)] % &pivot).is_zero() {
                        bad_row = Some(i);
                        break 'scan;
                    }
                }
            }
            match bad_row {
                Some(i) => {
                    d.row_add(t, i);
                    u.row_add(t, i);
                }
                None => break,
            }
        }
        t += 1;
    }
    for i in 0..steps {
        if d[(i, i)].is_negative() {
            d.negate_row(i);
            u.negate_row(i);
        }
    }
    SnfResult { u, d, v }
}
