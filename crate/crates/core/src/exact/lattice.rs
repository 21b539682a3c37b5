use super::{invert_unimodular, snf, IntMatrix, Int, Rat};
use crate::{Error, Result};
use num::{Integer, Signed, Zero};

/// Basis of `Z^d` adapted to a chain of nested sublattices: for each lattice
/// in the chain, the first `prefix_ranks[i]` basis vectors span its
/// saturation.
#[derive(Clone, Debug)]
pub struct AdaptedBasis {
    pub basis: Vec<Vec<Int>>,
    pub prefix_ranks: Vec<usize>,
}

/// Primitive part of a nonzero integer vector: divide by the gcd of the
/// entries and make the first nonzero entry positive.
pub fn primitive_part(v: &[Int]) -> Result<Vec<Int>> {
    let mut g = Int::zero();
    for e in v {
        g = g.gcd(e);
    }
    if g.is_zero() {
        return Err(Error::Input("zero character".into()));
    }
    let mut out: Vec<Int> = v.iter().map(|e| e / &g).collect();
    if let Some(first) = out.iter().find(|e| !e.is_zero()) {
        if first.is_negative() {
            for e in out.iter_mut() {
                *e = -e.clone();
            }
        }
    }
    Ok(out)
}

/// Rank over the rationals of the row lattice of `m`.
pub fn lattice_rank(m: &IntMatrix) -> usize {
    if m.rows == 0 || m.cols == 0 {
        return 0;
    }
    snf(m).rank()
}

/// Does `v` belong to the lattice generated by the rows of `g`?
pub fn lattice_contains(g: &IntMatrix, v: &[Int]) -> bool {
    assert_eq!(g.cols, v.len());
    if v.iter().all(|e| e.is_zero()) {
        return true;
    }
    if g.rows == 0 {
        return false;
    }
    let r = snf(g);
    let rank = r.rank();
    // x*G = v  <=>  z*D = v*V with z = x*U^{-1} integral
    let vm = IntMatrix::new(1, v.len(), v.to_vec()).mul(&r.v);
    for j in 0..g.cols {
        let target = &vm[(0, j)];
        if j < rank {
            if !(target % &r.d[(j, j)]).is_zero() {
                return false;
            }
        } else if !target.is_zero() {
            return false;
        }
    }
    true
}

/// Basis (rows) of the saturation of the row lattice of `g` in `Z^d`:
/// the largest sublattice with the same rational span.
pub fn saturation_basis(g: &IntMatrix) -> IntMatrix {
    if g.rows == 0 || g.cols == 0 {
        return IntMatrix::zero(0, g.cols);
    }
    let r = snf(g);
    let rank = r.rank();
    // G = U^{-1} D V^{-1}; the rational row span equals the span of the
    // first `rank` rows of V^{-1}, which are primitive and saturated.
    let vinv = invert_unimodular(&r.v);
    let mut rows = Vec::with_capacity(rank);
    for i in 0..rank {
        rows.push(vinv.row(i).to_vec());
    }
    IntMatrix::from_int_rows(&rows)
}

/// Basis (rows) of the integer kernel `{x : g * x = 0}` of `g` acting on
/// column vectors.
pub fn integer_kernel(g: &IntMatrix) -> IntMatrix {
    if g.cols == 0 {
        return IntMatrix::zero(0, 0);
    }
    if g.rows == 0 {
        return IntMatrix::identity(g.cols);
    }
    let r = snf(g);
    let rank = r.rank();
    // U G V = D, so G * (V e_j) = U^{-1} D e_j = 0 for j >= rank.
    let mut rows = Vec::new();
    for j in rank..g.cols {
        let col: Vec<Int> = (0..g.cols).map(|i| r.v[(i, j)].clone()).collect();
        rows.push(col);
    }
    IntMatrix::from_int_rows_with_cols(rows, g.cols)
}

impl IntMatrix {
    fn from_int_rows_with_cols(rows: Vec<Vec<Int>>, cols: usize) -> IntMatrix {
        if rows.is_empty() {
            return IntMatrix::zero(0, cols);
        }
        IntMatrix::from_int_rows(&rows)
    }
}

/// Integer coordinates of `v` in the basis given by the rows of `basis`,
/// or `None` when `v` is not an integer combination.
fn coords_in_basis(basis: &IntMatrix, v: &[Int]) -> Option<Vec<Int>> {
    use super::solve_affine;
    if basis.rows == 0 {
        return if v.iter().all(|e| e.is_zero()) { Some(Vec::new()) } else { None };
    }
    // solve x * basis = v, i.e. basis^T x^T = v^T
    let bt = basis.transpose();
    let a: Vec<Vec<Rat>> = (0..bt.rows)
        .map(|i| bt.row(i).iter().map(|e| Rat::from(e.clone())).collect())
        .collect();
    let b: Vec<Rat> = v.iter().map(|e| Rat::from(e.clone())).collect();
    let (p, _) = solve_affine(&a, &b)?;
    let mut out = Vec::with_capacity(p.len());
    for c in p {
        if !c.is_integer() {
            return None;
        }
        out.push(c.to_integer());
    }
    Some(out)
}

/// Extend `prefix` (rows forming part of a basis of the saturated lattice
/// spanned by `target`) to a full basis of that lattice.
fn extend_to_basis(prefix: &[Vec<Int>], target: &IntMatrix) -> Result<Vec<Vec<Int>>> {
    let r = target.rows;
    let k = prefix.len();
    if k == r {
        return Ok(Vec::new());
    }
    // coordinates of the prefix in the target basis
    let mut coord_rows = Vec::with_capacity(k);
    for u in prefix {
        let c = coords_in_basis(target, u).ok_or_else(|| {
            Error::Verification("prefix does not lie in the lattice it should span".into())
        })?;
        coord_rows.push(c);
    }
    let new_coords: Vec<Vec<Int>> = if k == 0 {
        (0..r)
            .map(|i| {
                (0..r).map(|j| if i == j { Int::from(1) } else { Int::zero() }).collect()
            })
            .collect()
    } else {
        let x = IntMatrix::from_int_rows(&coord_rows);
        let s = snf(&x);
        // X has all invariant factors 1; completing rows come from V^{-1}.
        for f in s.invariant_factors() {
            if f != Int::from(1) {
                return Err(Error::Verification(
                    "basis prefix is not saturated in the target lattice".into(),
                ));
            }
        }
        let vinv = invert_unimodular(&s.v);
        (k..r).map(|i| vinv.row(i).to_vec()).collect()
    };
    let d = target.cols;
    let mut out = Vec::new();
    for c in new_coords {
        let mut vec = vec![Int::zero(); d];
        for (ci, row_i) in c.iter().zip(0..target.rows) {
            for j in 0..d {
                let add = ci * &target[(row_i, j)];
                vec[j] += add;
            }
        }
        out.push(vec);
    }
    Ok(out)
}

/// Basis of `Z^d` adapted to a chain of nested sublattices, each given by a
/// generating matrix. Non-saturated inputs are saturated silently. The
/// ambient `Z^d` is appended as the final lattice of the chain.
pub fn adapted_basis(chain: &[IntMatrix], dim: usize) -> Result<AdaptedBasis> {
    for g in chain {
        if g.rows > 0 && g.cols != dim {
            return Err(Error::Input("lattice generators have wrong dimension".into()));
        }
    }
    // nestedness: each generator of chain[i] lies in chain[i+1]
    for w in chain.windows(2) {
        for i in 0..w[0].rows {
            if !lattice_contains(&w[1], w[0].row(i)) {
                return Err(Error::Input("lattice chain is not nested".into()));
            }
        }
    }
    let mut basis: Vec<Vec<Int>> = Vec::new();
    let mut prefix_ranks = Vec::new();
    let ambient = IntMatrix::identity(dim);
    let mut sats: Vec<IntMatrix> = chain.iter().map(saturation_basis).collect();
    sats.push(ambient);
    for (idx, sat) in sats.iter().enumerate() {
        let r = sat.rows;
        if r < basis.len() {
            return Err(Error::Input("lattice chain has decreasing rank".into()));
        }
        if r > basis.len() {
            let ext = extend_to_basis(&basis, sat)?;
            basis.extend(ext);
        }
        if idx < chain.len() {
            prefix_ranks.push(r);
        }
    }
    // final verification: unimodular, and each prefix spans the saturation
    let bm = IntMatrix::from_int_rows_with_cols(basis.clone(), dim);
    if super::det_int(&bm).abs() != Int::from(1) {
        return Err(Error::Verification("adapted basis is not unimodular".into()));
    }
    for (g, &r) in chain.iter().zip(&prefix_ranks) {
        let sat = saturation_basis(g);
        let prefix = IntMatrix::from_int_rows_with_cols(basis[..r].to_vec(), dim);
        for i in 0..sat.rows {
            if !lattice_contains(&prefix, sat.row(i)) {
                return Err(Error::Verification("adapted basis prefix misses its lattice".into()));
            }
        }
        for i in 0..r {
            if !lattice_contains(&sat, &basis[i]) {
                return Err(Error::Verification("adapted basis prefix overshoots its lattice".into()));
            }
        }
    }
    Ok(AdaptedBasis { basis, prefix_ranks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;

    #[test]
    fn primitive_part_examples() {
        assert_eq!(primitive_part(&[int(2), int(4)]).unwrap(), vec![int(1), int(2)]);
        assert_eq!(primitive_part(&[int(1), int(-1)]).unwrap(), vec![int(1), int(-1)]);
        assert_eq!(
            primitive_part(&[int(-3), int(0), int(6)]).unwrap(),
            vec![int(1), int(0), int(-2)]
        );
        assert!(primitive_part(&[int(0), int(0)]).is_err());
    }

    #[test]
    fn primitive_part_idempotent() {
        let candidates = vec![
            vec![int(2), int(4)],
            vec![int(-3), int(0), int(6)],
            vec![int(5)],
            vec![int(0), int(-7), int(21)],
        ];
        for v in candidates {
            let once = primitive_part(&v).unwrap();
            let twice = primitive_part(&once).unwrap();
            assert_eq!(once, twice);
        }
    }

    #[test]
    fn rank_examples() {
        let m = IntMatrix::from_rows(&[vec![1, 0], vec![1, -1], vec![1, 1]]);
        assert_eq!(lattice_rank(&m), 2);
        assert_eq!(lattice_rank(&IntMatrix::zero(0, 0)), 0);
        let p = IntMatrix::from_rows(&[vec![1, 2], vec![2, 4]]);
        assert_eq!(lattice_rank(&p), 1);
    }

    #[test]
    fn membership() {
        let g = IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]);
        assert!(lattice_contains(&g, &[int(2), int(3)]));
        assert!(!lattice_contains(&g, &[int(1), int(0)]));
        assert!(lattice_contains(&g, &[int(0), int(0)]));
    }

    #[test]
    fn saturation() {
        let g = IntMatrix::from_rows(&[vec![2, 0]]);
        let s = saturation_basis(&g);
        assert_eq!(s.rows, 1);
        assert_eq!(primitive_part(s.row(0)).unwrap(), vec![int(1), int(0)]);
    }

    #[test]
    fn adapted_basis_trivial_chain() {
        // (0) in Z^1
        let chain = vec![IntMatrix::zero(0, 1)];
        let ab = adapted_basis(&chain, 1).unwrap();
        assert_eq!(ab.basis, vec![vec![int(1)]]);
        assert_eq!(ab.prefix_ranks, vec![0]);
    }

    #[test]
    fn adapted_basis_diagonal_line() {
        let chain = vec![IntMatrix::from_rows(&[vec![1, 1]])];
        let ab = adapted_basis(&chain, 2).unwrap();
        assert_eq!(ab.basis[0], vec![int(1), int(1)]);
        assert_eq!(ab.prefix_ranks, vec![1]);
        let bm = IntMatrix::from_int_rows(&ab.basis);
        assert_eq!(super::super::det_int(&bm).abs(), int(1));
    }

    #[test]
    fn adapted_basis_saturates() {
        let chain = vec![IntMatrix::from_rows(&[vec![2, 0]])];
        let ab = adapted_basis(&chain, 2).unwrap();
        assert_eq!(ab.basis[0], vec![int(1), int(0)]);
    }

    #[test]
    fn adapted_basis_rejects_non_nested() {
        let chain = vec![
            IntMatrix::from_rows(&[vec![1, 0]]),
            IntMatrix::from_rows(&[vec![0, 2]]),
        ];
        assert!(adapted_basis(&chain, 2).is_err());
    }

    #[test]
    fn kernel_basis() {
        let g = IntMatrix::from_rows(&[vec![1, 1, 0]]);
        let k = integer_kernel(&g);
        assert_eq!(k.rows, 2);
        for i in 0..k.rows {
            let row = k.row(i);
            assert!((&row[0] + &row[1]).is_zero());
        }
    }
}
