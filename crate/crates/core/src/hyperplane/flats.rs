use super::Arrangement;
use crate::exact::{solve_affine, Rat};
use crate::Result;
use num::Zero;
use std::collections::{BTreeMap, BTreeSet, VecDeque};

/// A nonempty intersection of hyperplanes, identified by its closure: the
/// set of all hyperplane indices containing it. `point` and `basis` give an
/// exact parametrization `point + span(basis)`.
#[derive(Clone, Debug)]
pub struct Flat {
    pub closure: BTreeSet<usize>,
    pub point: Vec<Rat>,
    pub basis: Vec<Vec<Rat>>,
    pub dim: usize,
}

/// All nonempty intersections ordered by reverse inclusion; the whole space
/// is flat 0. `X <= Y` in the poset iff `closure(X) ⊆ closure(Y)`.
#[derive(Clone, Debug)]
pub struct IntersectionPoset {
    pub flats: Vec<Flat>,
}

impl IntersectionPoset {
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.flats[a].closure.is_subset(&self.flats[b].closure)
    }

    pub fn by_closure(&self, closure: &BTreeSet<usize>) -> Option<usize> {
        self.flats.iter().position(|f| &f.closure == closure)
    }
}

fn contains(arr: &Arrangement, h: usize, point: &[Rat], basis: &[Vec<Rat>]) -> bool {
    let form = &arr.hyperplanes[h];
    if !form.eval(point).is_zero() {
        return false;
    }
    basis.iter().all(|v| {
        form.alpha.iter().zip(v).fold(Rat::zero(), |acc, (a, x)| acc + a * x).is_zero()
    })
}

fn full_closure(arr: &Arrangement, point: &[Rat], basis: &[Vec<Rat>]) -> BTreeSet<usize> {
    (0..arr.n()).filter(|&h| contains(arr, h, point, basis)).collect()
}

/// All nonempty intersections of subsets of `arr`, closed under intersection
/// and including the whole space, each with an exact parametrization.
pub fn intersection_poset(arr: &Arrangement) -> Result<IntersectionPoset> {
    let ambient = Flat {
        closure: BTreeSet::new(),
        point: vec![Rat::zero(); arr.dim],
        basis: (0..arr.dim)
            .map(|i| {
                let mut v = vec![Rat::zero(); arr.dim];
                v[i] = crate::exact::rat_int(1);
                v
            })
            .collect(),
        dim: arr.dim,
    };
    let ambient_closure = full_closure(arr, &ambient.point, &ambient.basis);
    debug_assert!(ambient_closure.is_empty());
    let mut seen: BTreeMap<BTreeSet<usize>, Flat> = BTreeMap::new();
    let mut queue = VecDeque::new();
    seen.insert(ambient.closure.clone(), ambient.clone());
    queue.push_back(ambient);
    while let Some(flat) = queue.pop_front() {
        for h in 0..arr.n() {
            if flat.closure.contains(&h) {
                continue;
            }
            let mut eqs: Vec<usize> = flat.closure.iter().copied().collect();
            eqs.push(h);
            let a: Vec<Vec<Rat>> = eqs.iter().map(|&i| arr.hyperplanes[i].alpha.clone()).collect();
            let b: Vec<Rat> = eqs.iter().map(|&i| arr.hyperplanes[i].b.clone()).collect();
            let Some((point, basis)) = solve_affine(&a, &b) else { continue };
            let closure = full_closure(arr, &point, &basis);
            if seen.contains_key(&closure) {
                continue;
            }
            let dim = basis.len();
            let new_flat = Flat { closure: closure.clone(), point, basis, dim };
            seen.insert(closure, new_flat.clone());
            queue.push_back(new_flat);
        }
    }
    let mut flats: Vec<Flat> = seen.into_values().collect();
    flats.sort_by(|x, y| {
        y.dim.cmp(&x.dim).then_with(|| x.closure.cmp(&y.closure))
    });
    Ok(IntersectionPoset { flats })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat_int;
    use crate::hyperplane::HalfspaceForm;

    fn central(dim: usize, alphas: &[Vec<i64>]) -> Arrangement {
        let forms = alphas
            .iter()
            .map(|a| HalfspaceForm::from_ints(a.clone(), rat_int(0)).unwrap())
            .collect();
        Arrangement::new(dim, forms).unwrap()
    }

    #[test]
    fn boolean_arrangement() {
        let arr = central(2, &[vec![1, 0], vec![0, 1]]);
        let poset = intersection_poset(&arr).unwrap();
        // R^2, H1, H2, origin
        assert_eq!(poset.flats.len(), 4);
        assert_eq!(poset.flats[0].dim, 2);
        assert_eq!(poset.flats.last().unwrap().dim, 0);
    }

    #[test]
    fn figure_arrangement_five_flats() {
        // three concurrent lines: R^2, H1, H2, H3, P
        let arr = central(2, &[vec![1, 0], vec![3, -4], vec![3, 4]]);
        let poset = intersection_poset(&arr).unwrap();
        assert_eq!(poset.flats.len(), 5);
        let point = poset.flats.last().unwrap();
        assert_eq!(point.dim, 0);
        assert_eq!(point.closure.len(), 3);
    }

    #[test]
    fn generic_affine_lines() {
        // two generic affine lines plus their intersection point: 4 flats
        let forms = vec![
            HalfspaceForm::from_ints(vec![1, 0], rat_int(0)).unwrap(),
            HalfspaceForm::from_ints(vec![0, 1], rat_int(1)).unwrap(),
        ];
        let arr = Arrangement::new(2, forms).unwrap();
        let poset = intersection_poset(&arr).unwrap();
        assert_eq!(poset.flats.len(), 4);
    }

    #[test]
    fn parallel_lines_no_join() {
        let forms = vec![
            HalfspaceForm::from_ints(vec![1, 0], rat_int(0)).unwrap(),
            HalfspaceForm::from_ints(vec![1, 0], rat_int(1)).unwrap(),
        ];
        let arr = Arrangement::new(2, forms).unwrap();
        let poset = intersection_poset(&arr).unwrap();
        assert_eq!(poset.flats.len(), 3);
    }
}
