use crate::exact::Rat;
use num::Zero;

/// A linear constraint `⟨coeffs, t⟩ > rhs` (strict) or `>= rhs`.
#[derive(Clone, Debug)]
pub struct Constraint {
    pub coeffs: Vec<Rat>,
    pub rhs: Rat,
    pub strict: bool,
}

impl Constraint {
    pub fn gt(coeffs: Vec<Rat>, rhs: Rat) -> Constraint {
        Constraint { coeffs, rhs, strict: true }
    }

    pub fn ge(coeffs: Vec<Rat>, rhs: Rat) -> Constraint {
        Constraint { coeffs, rhs, strict: false }
    }

    /// `⟨coeffs, t⟩ < rhs` as a `>` constraint.
    pub fn lt(coeffs: Vec<Rat>, rhs: Rat) -> Constraint {
        Constraint {
            coeffs: coeffs.into_iter().map(|c| -c).collect(),
            rhs: -rhs,
            strict: true,
        }
    }
}

/// Exact feasibility of a system of linear inequalities by Fourier–Motzkin
/// elimination; returns a rational witness point when the system is
/// feasible. Small systems only — fine at desk scale.
pub fn feasible(constraints: &[Constraint], nvars: usize) -> Option<Vec<Rat>> {
    if nvars == 0 {
        for c in constraints {
            let ok = if c.strict {
                Rat::zero() > c.rhs
            } else {
                Rat::zero() >= c.rhs
            };
            if !ok {
                return None;
            }
        }
        return Some(Vec::new());
    }
    let v = nvars - 1;
    // lower: t_v > (rhs - rest)/c with c > 0; upper: t_v < ... with c < 0
    let mut lowers: Vec<&Constraint> = Vec::new();
    let mut uppers: Vec<&Constraint> = Vec::new();
    let mut reduced: Vec<Constraint> = Vec::new();
    for c in constraints {
        let cv = &c.coeffs[v];
        if cv.is_zero() {
            reduced.push(Constraint {
                coeffs: c.coeffs[..v].to_vec(),
                rhs: c.rhs.clone(),
                strict: c.strict,
            });
        } else if *cv > Rat::zero() {
            lowers.push(c);
        } else {
            uppers.push(c);
        }
    }
    for lo in &lowers {
        for up in &uppers {
            // lo gives t_v > (b_l - c_l'·t')/c_lv, up gives t_v < (b_u - c_u'·t')/c_uv.
            // Multiplying L < U through by c_lv*c_uv < 0 yields
            //   (c_lv·c_u' - c_uv·c_l')·t' > c_lv·b_u - c_uv·b_l.
            let cl = &lo.coeffs[v];
            let cu = &up.coeffs[v];
            let mut coeffs = Vec::with_capacity(v);
            for j in 0..v {
                coeffs.push(&(cl * &up.coeffs[j]) - &(cu * &lo.coeffs[j]));
            }
            let rhs = &(cl * &up.rhs) - &(cu * &lo.rhs);
            reduced.push(Constraint { coeffs, rhs, strict: lo.strict || up.strict });
        }
    }
    let tail = feasible(&reduced, v)?;
    // back-substitute t_v between the tightest bounds
    let eval_rest = |c: &Constraint| -> Rat {
        let mut acc = Rat::zero();
        for j in 0..v {
            acc += &c.coeffs[j] * &tail[j];
        }
        acc
    };
    let mut lo_val: Option<(Rat, bool)> = None;
    for c in &lowers {
        let bound = (&c.rhs - &eval_rest(c)) / c.coeffs[v].clone();
        if lo_val.as_ref().map_or(true, |(b, s)| bound > *b || (bound == *b && c.strict && !s)) {
            lo_val = Some((bound, c.strict));
        }
    }
    let mut hi_val: Option<(Rat, bool)> = None;
    for c in &uppers {
        let bound = (&c.rhs - &eval_rest(c)) / c.coeffs[v].clone();
        if hi_val.as_ref().map_or(true, |(b, s)| bound < *b || (bound == *b && c.strict && !s)) {
            hi_val = Some((bound, c.strict));
        }
    }
    let t_v = match (&lo_val, &hi_val) {
        (Some((lo, _)), Some((hi, _))) => {
            if lo == hi {
                lo.clone()
            } else {
                (lo + hi) / crate::exact::rat_int(2)
            }
        }
        (Some((lo, _)), None) => lo + crate::exact::rat_int(1),
        (None, Some((hi, _))) => hi - crate::exact::rat_int(1),
        (None, None) => Rat::zero(),
    };
    let mut out = tail;
    out.push(t_v);
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, rat_int};

    fn check(constraints: &[Constraint], nvars: usize) -> Option<Vec<Rat>> {
        let w = feasible(constraints, nvars)?;
        for c in constraints {
            let mut acc = Rat::zero();
            for (a, v) in c.coeffs.iter().zip(&w) {
                acc += a * v;
            }
            if c.strict {
                assert!(acc > c.rhs, "witness violates strict constraint");
            } else {
                assert!(acc >= c.rhs, "witness violates constraint");
            }
        }
        Some(w)
    }

    #[test]
    fn box_feasible() {
        // 0 < x < 1, 0 < y < 1
        let cs = vec![
            Constraint::gt(vec![rat_int(1), rat_int(0)], rat_int(0)),
            Constraint::lt(vec![rat_int(1), rat_int(0)], rat_int(1)),
            Constraint::gt(vec![rat_int(0), rat_int(1)], rat_int(0)),
            Constraint::lt(vec![rat_int(0), rat_int(1)], rat_int(1)),
        ];
        assert!(check(&cs, 2).is_some());
    }

    #[test]
    fn infeasible_strict() {
        // x > 0 and x < 0
        let cs = vec![
            Constraint::gt(vec![rat_int(1)], rat_int(0)),
            Constraint::lt(vec![rat_int(1)], rat_int(0)),
        ];
        assert!(feasible(&cs, 1).is_none());
    }

    #[test]
    fn boundary_non_strict() {
        // x >= 1/2 and x <= 1/2 -> witness 1/2
        let cs = vec![
            Constraint::ge(vec![rat_int(1)], rat(1, 2)),
            Constraint {
                coeffs: vec![rat_int(-1)],
                rhs: rat(-1, 2),
                strict: false,
            },
        ];
        let w = check(&cs, 1).unwrap();
        assert_eq!(w[0], rat(1, 2));
    }

    #[test]
    fn needs_combination() {
        // x + y > 1, x < 0, y < 0 infeasible
        let cs = vec![
            Constraint::gt(vec![rat_int(1), rat_int(1)], rat_int(1)),
            Constraint::lt(vec![rat_int(1), rat_int(0)], rat_int(0)),
            Constraint::lt(vec![rat_int(0), rat_int(1)], rat_int(0)),
        ];
        assert!(feasible(&cs, 2).is_none());
    }
}
