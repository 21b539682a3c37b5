//! Integral homology of nerves of acyclic categories via normalized chains
//! and Smith normal form; Poincaré polynomials from no-broken-circuit data.

use crate::category::AcyclicCategory;
use crate::exact::{snf, IntMatrix, Int};
use crate::hyperplane::{nbc, Arrangement};
use crate::{Error, Result};
use num::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Chain complex of a nerve: degree-k basis elements are chains of k
/// composable nonidentity morphisms, degree 0 is the object set.
/// `boundary[k]` is the matrix of `∂_k : C_k -> C_{k-1}` (so `boundary[0]`
/// is a `0 x n_0` matrix).
#[derive(Clone, Debug)]
pub struct ChainComplex {
    pub basis_sizes: Vec<usize>,
    pub boundary: Vec<IntMatrix>,
    pub truncated: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyGroup {
    pub degree: usize,
    pub betti: usize,
    pub torsion: Vec<Int>,
}

/// Integer polynomial with coefficients by degree, trailing zeros trimmed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    pub coeffs: Vec<i64>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![0i64; n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            out[i] += c;
        }
        Polynomial::new(out)
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Polynomial::zero();
        }
        let mut out = vec![0i64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }

    pub fn scale(&self, k: i64) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// (t+1)^n
    pub fn binomial_power(n: usize) -> Polynomial {
        let mut p = Polynomial::new(vec![1]);
        let t1 = Polynomial::new(vec![1, 1]);
        for _ in 0..n {
            p = p.mul(&t1);
        }
        p
    }

    pub fn eval_at_one(&self) -> i64 {
        self.coeffs.iter().sum()
    }

    pub fn coeff(&self, k: usize) -> i64 {
        self.coeffs.get(k).copied().unwrap_or(0)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if *c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => {
                    if *c == 1 {
                        write!(f, "t")?;
                    } else {
                        write!(f, "{c}t")?;
                    }
                }
                _ => {
                    if *c == 1 {
                        write!(f, "t^{k}")?;
                    } else {
                        write!(f, "{c}t^{k}")?;
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Normalized chain complex of the nerve of `cat` up to degree `max_deg`
/// (defaults to the category height when `None`).
pub fn nerve_chain_complex(cat: &AcyclicCategory, max_deg: Option<usize>) -> ChainComplex {
    let height = cat.height();
    let truncated = max_deg.map_or(false, |d| d < height);
    let top = max_deg.unwrap_or(height).min(height);

    // degree 0: objects; degree k: composable chains of nonidentity morphisms
    let mut chains: Vec<Vec<Vec<usize>>> = Vec::new();
    let deg1: Vec<Vec<usize>> = (0..cat.morphisms.len()).map(|m| vec![m]).collect();
    if top >= 1 {
        chains.push(deg1);
    }
    for k in 2..=top {
        let prev = &chains[k - 2];
        let mut next = Vec::new();
        for c in prev {
            let last = &cat.morphisms[*c.last().unwrap()];
            for m in 0..cat.morphisms.len() {
                if cat.morphisms[m].src == last.tgt {
                    let mut ext = c.clone();
                    ext.push(m);
                    next.push(ext);
                }
            }
        }
        next.sort();
        chains.push(next);
    }

    let mut basis_sizes = vec![cat.objects.len()];
    for c in &chains {
        basis_sizes.push(c.len());
    }

    let mut boundary = Vec::new();
    boundary.push(IntMatrix::zero(0, cat.objects.len()));
    for k in 1..=top {
        let basis = &chains[k - 1];
        let rows = basis_sizes[k - 1];
        let mut mat = IntMatrix::zero(rows, basis.len());
        if k == 1 {
            for (col, c) in basis.iter().enumerate() {
                let m = &cat.morphisms[c[0]];
                // ∂(m) = tgt - src
                mat[(m.tgt, col)] += Int::one();
                mat[(m.src, col)] -= Int::one();
            }
        } else {
            let index: BTreeMap<&Vec<usize>, usize> =
                chains[k - 2].iter().enumerate().map(|(i, c)| (c, i)).collect();
            for (col, c) in basis.iter().enumerate() {
                for i in 0..=k {
                    let face: Vec<usize> = if i == 0 {
                        c[1..].to_vec()
                    } else if i == k {
                        c[..k - 1].to_vec()
                    } else {
                        let mut f = Vec::with_capacity(k - 1);
                        f.extend_from_slice(&c[..i - 1]);
                        let composite = cat
                            .compose_get(c[i - 1], c[i])
                            .expect("composable chain must compose");
                        f.push(composite);
                        f.extend_from_slice(&c[i + 1..]);
                        f
                    };
                    let row = index[&face];
                    if i % 2 == 0 {
                        mat[(row, col)] += Int::one();
                    } else {
                        mat[(row, col)] -= Int::one();
                    }
                }
            }
        }
        boundary.push(mat);
    }
    ChainComplex { basis_sizes, boundary, truncated }
}

impl ChainComplex {
    /// Returns `∂_k ∘ ∂_{k+1} = 0` for all degrees.
    pub fn boundary_squares_to_zero(&self) -> bool {
        for k in 1..self.boundary.len() {
            if self.boundary[k - 1].rows == 0 {
                continue;
            }
            let prod = self.boundary[k - 1].mul(&self.boundary[k]);
            if prod.entries.iter().any(|e| !e.is_zero()) {
                return false;
            }
        }
        true
    }
}

/// Integral homology from Smith normal forms of the boundary matrices.
pub fn homology(x: &ChainComplex) -> Result<Vec<HomologyGroup>> {
    if !x.boundary_squares_to_zero() {
        return Err(Error::Verification("boundary does not square to zero".into()));
    }
    let top = x.basis_sizes.len() - 1;
    let mut ranks = vec![0usize; top + 2];
    let mut factors: Vec<Vec<Int>> = vec![Vec::new(); top + 2];
    for k in 1..=top {
        let s = snf(&x.boundary[k]);
        ranks[k] = s.rank();
        factors[k] = s.invariant_factors();
    }
    let mut out = Vec::new();
    let usable = if x.truncated { top.saturating_sub(1) } else { top };
    for k in 0..=usable {
        let n_k = x.basis_sizes[k];
        let betti = n_k - ranks[k] - ranks[k + 1];
        let torsion: Vec<Int> =
            factors[k + 1].iter().filter(|f| **f > Int::one()).cloned().collect();
        out.push(HomologyGroup { degree: k, betti, torsion });
    }
    Ok(out)
}

pub fn betti_numbers(groups: &[HomologyGroup]) -> Vec<usize> {
    let mut b: Vec<usize> = groups.iter().map(|g| g.betti).collect();
    while b.last() == Some(&0) {
        b.pop();
    }
    b
}

/// Poincaré polynomial of a complexified hyperplane arrangement complement:
/// graded no-broken-circuit counts in the central case, the flat-sum formula
/// in the affine case.
pub fn poincare_hyperplane(arr: &Arrangement) -> Result<Polynomial> {
    if arr.is_central() {
        let fam = nbc(arr)?;
        let coeffs: Vec<i64> = fam.by_card.iter().map(|&c| c as i64).collect();
        return Ok(Polynomial::new(coeffs));
    }
    let flats = crate::hyperplane::intersection_poset(arr)?;
    let mut coeffs = Vec::new();
    for flat in &flats.flats {
        let codim = arr.dim - flat.dim;
        let sub = arr.subarrangement(&flat.closure.iter().copied().collect::<Vec<_>>())?;
        let fam = nbc(&sub)?;
        let count = fam.by_card.get(codim).copied().unwrap_or(0);
        if coeffs.len() <= codim {
            coeffs.resize(codim + 1, 0);
        }
        coeffs[codim] += count as i64;
    }
    Ok(Polynomial::new(coeffs))
}

/// Toric Poincaré polynomial from local no-broken-circuit counts:
/// `sum_j |N_j| (t+1)^(d-j) t^j`.
pub fn poincare_toric(d: usize, local_nbc_counts: &[usize]) -> Polynomial {
    let mut p = Polynomial::zero();
    for (j, &count) in local_nbc_counts.iter().enumerate() {
        if count == 0 {
            continue;
        }
        let mut term = Polynomial::binomial_power(d - j);
        let mut tj = vec![0i64; j];
        tj.push(1);
        term = term.mul(&Polynomial::new(tj)).scale(count as i64);
        p = p.add(&term);
    }
    p
}

/// True iff every torsion list is empty; otherwise reports the offending
/// degrees.
pub fn torsion_free_check(groups: &[HomologyGroup]) -> (bool, Vec<usize>) {
    let offending: Vec<usize> =
        groups.iter().filter(|g| !g.torsion.is_empty()).map(|g| g.degree).collect();
    (offending.is_empty(), offending)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::{AcyclicCategory, MorphismData, ObjectData};
    use crate::exact::int;

    #[test]
    fn contractible_interval() {
        let keys = vec!["a".to_string(), "b".to_string()];
        let cat = AcyclicCategory::from_poset(&[0, 1], &keys, |a, b| a < b).unwrap();
        let x = nerve_chain_complex(&cat, None);
        assert_eq!(x.basis_sizes, vec![2, 1]);
        let h = homology(&x).unwrap();
        assert_eq!(betti_numbers(&h), vec![1]);
        assert!(torsion_free_check(&h).0);
    }

    #[test]
    fn circle_as_poset() {
        // 2 vertices, 2 edges, each vertex under each edge
        let keys: Vec<String> = ["v0", "v1", "e0", "e1"].iter().map(|s| s.to_string()).collect();
        let leq = |a: usize, b: usize| a < 2 && b >= 2;
        let cat = AcyclicCategory::from_poset(&[0, 0, 1, 1], &keys, leq).unwrap();
        let h = homology(&nerve_chain_complex(&cat, None)).unwrap();
        assert_eq!(betti_numbers(&h), vec![1, 1]);
    }

    #[test]
    fn torus_circle_with_parallel_morphisms() {
        // one vertex, one edge, two parallel morphisms: nerve is S^1
        let objects = vec![
            ObjectData { rank: 0, key: "v".into() },
            ObjectData { rank: 1, key: "e".into() },
        ];
        let morphisms = vec![
            MorphismData { src: 0, tgt: 1, tag: "m0".into() },
            MorphismData { src: 0, tgt: 1, tag: "m1".into() },
        ];
        let cat = AcyclicCategory::new(objects, morphisms, Default::default()).unwrap();
        let h = homology(&nerve_chain_complex(&cat, None)).unwrap();
        assert_eq!(betti_numbers(&h), vec![1, 1]);
    }

    #[test]
    fn projective_plane_torsion() {
        // minimal 6-vertex triangulation of RP^2: H_0 = Z, H_1 = Z/2, H_2 = 0
        let faces: Vec<[usize; 3]> = vec![
            [1, 2, 5],
            [1, 2, 6],
            [1, 3, 4],
            [1, 3, 6],
            [1, 4, 5],
            [2, 3, 4],
            [2, 3, 5],
            [2, 4, 6],
            [3, 5, 6],
            [4, 5, 6],
        ];
        let mut edges = std::collections::BTreeSet::new();
        for f in &faces {
            edges.insert([f[0], f[1]]);
            edges.insert([f[0], f[2]]);
            edges.insert([f[1], f[2]]);
        }
        let edges: Vec<[usize; 2]> = edges.into_iter().collect();
        let edge_index: BTreeMap<[usize; 2], usize> =
            edges.iter().enumerate().map(|(i, e)| (*e, i)).collect();
        assert_eq!(edges.len(), 15);

        let mut d1 = IntMatrix::zero(6, 15);
        for (j, e) in edges.iter().enumerate() {
            d1[(e[1] - 1, j)] += int(1);
            d1[(e[0] - 1, j)] -= int(1);
        }
        let mut d2 = IntMatrix::zero(15, 10);
        for (j, f) in faces.iter().enumerate() {
            d2[(edge_index[&[f[1], f[2]]], j)] += int(1);
            d2[(edge_index[&[f[0], f[2]]], j)] -= int(1);
            d2[(edge_index[&[f[0], f[1]]], j)] += int(1);
        }
        let x = ChainComplex {
            basis_sizes: vec![6, 15, 10],
            boundary: vec![IntMatrix::zero(0, 6), d1, d2],
            truncated: false,
        };
        assert!(x.boundary_squares_to_zero());
        let h = homology(&x).unwrap();
        assert_eq!(h[0].betti, 1);
        assert_eq!(h[1].betti, 0);
        assert_eq!(h[1].torsion, vec![int(2)]);
        assert_eq!(h[2].betti, 0);
        let (ok, deg) = torsion_free_check(&h);
        assert!(!ok);
        assert_eq!(deg, vec![1]);
    }

    #[test]
    fn polynomial_display() {
        let p = Polynomial::new(vec![1, 5, 7]);
        assert_eq!(p.to_string(), "1 + 5t + 7t^2");
        assert_eq!(p.eval_at_one(), 13);
        let q = poincare_toric(2, &[1, 3, 3]);
        assert_eq!(q, p);
    }

    #[test]
    fn toric_polynomial_d1() {
        // d=1, n points: (t+1) + n t
        for n in 1..4usize {
            let p = poincare_toric(1, &[1, n]);
            assert_eq!(p.coeffs, vec![1, 1 + n as i64]);
        }
    }

    #[test]
    fn empty_complex_torsion_free() {
        let groups: Vec<HomologyGroup> = Vec::new();
        assert!(torsion_free_check(&groups).0);
    }
}
