use super::{IntMatrix, Int, Rat};
use num::{One, Signed, Zero};

/// Row-reduce `rows` in place (Gauss-Jordan), returning pivot column per
/// pivot row. `rows` may have an augmented part; only columns `< cols` are
/// eligible as pivots.
fn reduce(rows: &mut Vec<Vec<Rat>>, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = rows[r][c].clone();
        for v in rows[r].iter_mut() {
            *v = &*v / &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for j in 0..rows[i].len() {
                    let sub = &f * &rows[r][j];
                    rows[i][j] = &rows[i][j] - &sub;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    pivots
}

/// Rank of a rational matrix given as rows.
pub fn rank_rat(rows: &[Vec<Rat>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let cols = rows[0].len();
    let mut work = rows.to_vec();
    reduce(&mut work, cols).len()
}

/// Solve the affine system `A x = b` exactly. Returns a particular solution
/// together with a basis of the solution space of `A x = 0`, or `None` when
/// the system is inconsistent.
pub fn solve_affine(a: &[Vec<Rat>], b: &[Rat]) -> Option<(Vec<Rat>, Vec<Vec<Rat>>)> {
    assert_eq!(a.len(), b.len());
    if a.is_empty() {
        return Some((Vec::new(), Vec::new()));
    }
    let n = a[0].len();
    let mut work: Vec<Vec<Rat>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = reduce(&mut work, n);
    for (i, row) in work.iter().enumerate() {
        if i >= pivots.len() && !row[n].is_zero() {
            return None;
        }
    }
    let mut particular = vec![Rat::zero(); n];
    for (r, &c) in pivots.iter().enumerate() {
        particular[c] = work[r][n].clone();
    }
    let mut basis = Vec::new();
    let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
    for free in 0..n {
        if pivot_set.contains(&free) {
            continue;
        }
        let mut vec = vec![Rat::zero(); n];
        vec[free] = Rat::one();
        for (r, &c) in pivots.iter().enumerate() {
            vec[c] = -work[r][free].clone();
        }
        basis.push(vec);
    }
    Some((particular, basis))
}

/// Determinant of a square integer matrix (exact, via rational elimination).
pub fn det_int(m: &IntMatrix) -> Int {
    assert_eq!(m.rows, m.cols);
    let n = m.rows;
    if n == 0 {
        return Int::one();
    }
    let mut work: Vec<Vec<Rat>> = (0..n)
        .map(|i| m.row(i).iter().map(|v| Rat::from(v.clone())).collect())
        .collect();
    let mut det = Rat::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !work[i][c].is_zero()) else { return Int::zero() };
        if p != c {
            work.swap(p, c);
            det = -det;
        }
        det *= work[c][c].clone();
        let inv = work[c][c].clone();
        for j in c..n {
            work[c][j] = &work[c][j] / &inv;
        }
        for i in c + 1..n {
            if !work[i][c].is_zero() {
                let f = work[i][c].clone();
                for j in c..n {
                    let sub = &f * &work[c][j];
                    work[i][j] = &work[i][j] - &sub;
                }
            }
        }
    }
    assert!(det.is_integer());
    det.to_integer()
}

/// Inverse of a unimodular integer matrix. Panics if the matrix is not
/// square with determinant ±1.
pub fn invert_unimodular(m: &IntMatrix) -> IntMatrix {
    assert_eq!(m.rows, m.cols);
    let n = m.rows;
    assert_eq!(det_int(m).abs(), Int::one(), "matrix is not unimodular");
    let mut work: Vec<Vec<Rat>> = (0..n)
        .map(|i| {
            let mut row: Vec<Rat> = m.row(i).iter().map(|v| Rat::from(v.clone())).collect();
            for j in 0..n {
                row.push(if i == j { Rat::one() } else { Rat::zero() });
            }
            row
        })
        .collect();
    let pivots = reduce(&mut work, n);
    assert_eq!(pivots.len(), n);
    let mut out = IntMatrix::zero(n, n);
    for i in 0..n {
        for j in 0..n {
            let v = &work[i][n + j];
            assert!(v.is_integer());
            out[(i, j)] = v.to_integer();
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat_int};

    #[test]
    fn solve_simple() {
        // x + y = 3, x - y = 1 -> (2, 1)
        let a = vec![vec![rat_int(1), rat_int(1)], vec![rat_int(1), rat_int(-1)]];
        let b = vec![rat_int(3), rat_int(1)];
        let (p, basis) = solve_affine(&a, &b).unwrap();
        assert_eq!(p, vec![rat_int(2), rat_int(1)]);
        assert!(basis.is_empty());
    }

    #[test]
    fn solve_underdetermined() {
        let a = vec![vec![rat_int(1), rat_int(1)]];
        let b = vec![rat_int(0)];
        let (p, basis) = solve_affine(&a, &b).unwrap();
        assert_eq!(basis.len(), 1);
        assert!(p.iter().all(|v| v.is_zero()));
    }

    #[test]
    fn solve_inconsistent() {
        let a = vec![vec![rat_int(1), rat_int(0)], vec![rat_int(1), rat_int(0)]];
        let b = vec![rat_int(0), rat_int(1)];
        assert!(solve_affine(&a, &b).is_none());
    }

    #[test]
    fn det_and_inverse() {
        let m = IntMatrix::from_rows(&[vec![2, 1], vec![1, 1]]);
        assert_eq!(det_int(&m), int(1));
        let inv = invert_unimodular(&m);
        assert_eq!(m.mul(&inv), IntMatrix::identity(2));
    }
}
