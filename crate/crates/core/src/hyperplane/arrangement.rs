use crate::exact::{primitive_part, Int, Rat};
use crate::{Error, Result};
use num::{Signed, Zero};
use std::fmt;

/// Sign of a face relative to a hyperplane; ordered `- < 0 < +` which fixes
/// all lexicographic tie-breaks in the crate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Neg,
    Zero,
    Pos,
}

impl Sign {
    pub fn of(v: &Rat) -> Sign {
        if v.is_zero() {
            Sign::Zero
        } else if v.is_positive() {
            Sign::Pos
        } else {
            Sign::Neg
        }
    }

    pub fn of_int(v: &Int) -> Sign {
        if v.is_zero() {
            Sign::Zero
        } else if v.is_positive() {
            Sign::Pos
        } else {
            Sign::Neg
        }
    }

    pub fn symbol(&self) -> char {
        match self {
            Sign::Neg => '-',
            Sign::Zero => '0',
            Sign::Pos => '+',
        }
    }
}

pub type SignVec = Vec<Sign>;

pub fn signs_to_string(signs: &[Sign]) -> String {
    signs.iter().map(|s| s.symbol()).collect()
}

/// An affine form `⟨alpha, x⟩ = b` with a chosen orientation: the positive
/// side is where the form exceeds `b`. Stored in canonical form: `alpha` is
/// a primitive integer vector whose first nonzero entry is positive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HalfspaceForm {
    pub alpha: Vec<Rat>,
    pub b: Rat,
}

impl HalfspaceForm {
    pub fn new(alpha: Vec<Rat>, b: Rat) -> Result<HalfspaceForm> {
        if alpha.iter().all(|a| a.is_zero()) {
            return Err(Error::Input("hyperplane with zero normal".into()));
        }
        // scale so alpha becomes a primitive integer vector with positive
        // leading entry; scaling by a negative factor swaps the sides,
        // which is the point: orientations are canonical.
        let mut denom_lcm = Int::from(1);
        for a in &alpha {
            denom_lcm = num::integer::lcm(denom_lcm.clone(), a.denom().clone());
        }
        let ints: Vec<Int> =
            alpha.iter().map(|a| (a * Rat::from(denom_lcm.clone())).to_integer()).collect();
        let prim = primitive_part(&ints)?;
        let lead = alpha.iter().position(|a| !a.is_zero()).expect("nonzero normal");
        let scale = Rat::from(prim[lead].clone()) / alpha[lead].clone();
        let b2 = &b * &scale;
        Ok(HalfspaceForm {
            alpha: prim.into_iter().map(Rat::from).collect(),
            b: b2,
        })
    }

    pub fn from_ints(alpha: Vec<i64>, b: Rat) -> Result<HalfspaceForm> {
        HalfspaceForm::new(alpha.into_iter().map(crate::exact::rat_int).collect(), b)
    }

    /// `⟨alpha, x⟩ - b`; the sign of this value is the side of `x`.
    pub fn eval(&self, x: &[Rat]) -> Rat {
        let mut acc = -self.b.clone();
        for (a, v) in self.alpha.iter().zip(x) {
            acc += a * v;
        }
        acc
    }

    pub fn alpha_ints(&self) -> Vec<Int> {
        self.alpha.iter().map(|a| a.to_integer()).collect()
    }
}

/// A finite ordered list of oriented hyperplanes in `R^dim`. The order is
/// the total order used by every no-broken-circuit and region-order
/// construction.
#[derive(Clone, Debug)]
pub struct Arrangement {
    pub dim: usize,
    pub hyperplanes: Vec<HalfspaceForm>,
}

impl Arrangement {
    pub fn new(dim: usize, hyperplanes: Vec<HalfspaceForm>) -> Result<Arrangement> {
        for h in &hyperplanes {
            if h.alpha.len() != dim {
                return Err(Error::Input("hyperplane dimension mismatch".into()));
            }
        }
        Ok(Arrangement { dim, hyperplanes })
    }

    pub fn n(&self) -> usize {
        self.hyperplanes.len()
    }

    pub fn is_central(&self) -> bool {
        self.hyperplanes.iter().all(|h| h.b.is_zero())
    }

    pub fn sign_vector(&self, x: &[Rat]) -> SignVec {
        self.hyperplanes.iter().map(|h| Sign::of(&h.eval(x))).collect()
    }

    /// Subarrangement on the given (sorted, original) indices, keeping the
    /// inherited order.
    pub fn subarrangement(&self, indices: &[usize]) -> Result<Arrangement> {
        let mut idx = indices.to_vec();
        idx.sort_unstable();
        idx.dedup();
        let hyperplanes = idx.iter().map(|&i| self.hyperplanes[i].clone()).collect();
        Arrangement::new(self.dim, hyperplanes)
    }

    /// The rational rank of the set of normals.
    pub fn rank(&self) -> usize {
        let rows: Vec<Vec<Rat>> = self.hyperplanes.iter().map(|h| h.alpha.clone()).collect();
        crate::exact::rank_rat(&rows)
    }
}

impl fmt::Display for Arrangement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "arrangement in R^{} with {} hyperplanes", self.dim, self.n())?;
        for (i, h) in self.hyperplanes.iter().enumerate() {
            let terms: Vec<String> = h
                .alpha
                .iter()
                .enumerate()
                .filter(|(_, a)| !a.is_zero())
                .map(|(j, a)| format!("{}*x{}", a, j + 1))
                .collect();
            writeln!(f, "  H{}: {} = {}", i + 1, terms.join(" + "), h.b)?;
        }
        Ok(())
    }
}
