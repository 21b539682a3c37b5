//! Discrete Morse theory on acyclic categories: matchings, validation via
//! two independent acyclicity checks, the Patchwork composition, and
//! one-critical matching search on fibers.

use crate::category::AcyclicCategory;
use crate::{Error, Result};
use std::collections::{BTreeMap, BTreeSet};

mod toric_matchings;
pub use toric_matchings::{salvetti_matching, torus_matching, TorusMatchingReport};

/// A matching: a set of indecomposable morphisms with pairwise distinct
/// endpoints, identified by morphism id.
#[derive(Clone, Debug, Default)]
pub struct Matching {
    pub matched: Vec<usize>,
}

/// A validated matching: the linear-extension witness lists all objects with
/// every matched (source, target) pair consecutive.
#[derive(Clone, Debug)]
pub struct MatchingCertificate {
    pub matching: Matching,
    pub linear_extension: Vec<usize>,
    pub critical: Vec<usize>,
    pub critical_by_rank: Vec<usize>,
}

/// Directed graph used by the cycle check: unmatched morphisms point
/// forward, matched morphisms are reversed.
fn matching_digraph(cat: &AcyclicCategory, matched: &BTreeSet<usize>) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); cat.objects.len()];
    for (i, m) in cat.morphisms.iter().enumerate() {
        if matched.contains(&i) {
            adj[m.tgt].push(m.src);
        } else {
            adj[m.src].push(m.tgt);
        }
    }
    adj
}

fn has_directed_cycle(adj: &[Vec<usize>]) -> Option<Vec<usize>> {
    #[derive(Clone, Copy, PartialEq)]
    enum State {
        White,
        Grey,
        Black,
    }
    let n = adj.len();
    let mut state = vec![State::White; n];
    let mut parent = vec![usize::MAX; n];
    for start in 0..n {
        if state[start] != State::White {
            continue;
        }
        let mut stack = vec![(start, 0usize)];
        state[start] = State::Grey;
        while let Some(&mut (v, ref mut idx)) = stack.last_mut() {
            if *idx < adj[v].len() {
                let w = adj[v][*idx];
                *idx += 1;
                match state[w] {
                    State::White => {
                        state[w] = State::Grey;
                        parent[w] = v;
                        stack.push((w, 0));
                    }
                    State::Grey => {
                        // reconstruct the cycle
                        let mut cycle = vec![w, v];
                        let mut cur = v;
                        while cur != w {
                            cur = parent[cur];
                            if cur == usize::MAX {
                                break;
                            }
                            cycle.push(cur);
                        }
                        cycle.reverse();
                        return Some(cycle);
                    }
                    State::Black => {}
                }
            } else {
                state[v] = State::Black;
                stack.pop();
            }
        }
    }
    None
}

/// Linear extension with matched pairs consecutive, built by contracting
/// each matched pair and topologically sorting. Deterministic: Kahn's
/// algorithm taking the least available node each step.
fn linear_extension_with_pairs(
    cat: &AcyclicCategory,
    matched: &BTreeSet<usize>,
) -> Option<Vec<usize>> {
    let n = cat.objects.len();
    // node id = representative object (min of pair / the object itself)
    let mut rep = (0..n).collect::<Vec<usize>>();
    let mut pair_of: BTreeMap<usize, (usize, usize)> = BTreeMap::new();
    for &mid in matched {
        let m = &cat.morphisms[mid];
        let r = m.src.min(m.tgt);
        rep[m.src] = r;
        rep[m.tgt] = r;
        pair_of.insert(r, (m.src, m.tgt));
    }
    let nodes: BTreeSet<usize> = (0..n).map(|o| rep[o]).collect();
    let mut succ: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
    let mut indeg: BTreeMap<usize, usize> = nodes.iter().map(|&v| (v, 0)).collect();
    for (i, m) in cat.morphisms.iter().enumerate() {
        if matched.contains(&i) {
            continue;
        }
        let (a, b) = (rep[m.src], rep[m.tgt]);
        if a == b {
            // a parallel morphism inside a contracted pair: no valid extension
            return None;
        }
        if succ.entry(a).or_default().insert(b) {
            *indeg.get_mut(&b).unwrap() += 1;
        }
    }
    let mut ready: BTreeSet<usize> = indeg.iter().filter(|(_, &d)| d == 0).map(|(&v, _)| v).collect();
    let mut out = Vec::with_capacity(n);
    let mut processed = 0usize;
    while let Some(&v) = ready.iter().next() {
        ready.remove(&v);
        processed += 1;
        match pair_of.get(&v) {
            Some(&(s, t)) => {
                out.push(s);
                out.push(t);
            }
            None => out.push(v),
        }
        if let Some(ss) = succ.get(&v) {
            for &w in ss {
                let d = indeg.get_mut(&w).unwrap();
                *d -= 1;
                if *d == 0 {
                    ready.insert(w);
                }
            }
        }
    }
    if processed != nodes.len() {
        return None;
    }
    Some(out)
}

/// Validate a matching: endpoint distinctness, the unique-morphism condition,
/// an explicit cycle search, and an independent linear-extension
/// construction. The two acyclicity checks must agree.
pub fn validate_matching(cat: &AcyclicCategory, matching: &Matching) -> Result<MatchingCertificate> {
    let indec: BTreeSet<usize> = cat.indecomposables().into_iter().collect();
    let matched: BTreeSet<usize> = matching.matched.iter().copied().collect();
    let mut endpoints = BTreeSet::new();
    for &mid in &matched {
        if mid >= cat.morphisms.len() {
            return Err(Error::Input(format!("matched morphism {mid} out of range")));
        }
        if !indec.contains(&mid) {
            return Err(Error::Input(format!(
                "matched morphism {} is decomposable",
                cat.morphisms[mid].tag
            )));
        }
        let m = &cat.morphisms[mid];
        if !endpoints.insert(m.src) || !endpoints.insert(m.tgt) {
            return Err(Error::Input(format!(
                "matched morphism {} shares an endpoint with another",
                m.tag
            )));
        }
        if cat.objects[m.tgt].rank != cat.objects[m.src].rank + 1 {
            return Err(Error::Input(format!(
                "matched morphism {} does not connect consecutive ranks",
                m.tag
            )));
        }
        // condition (a): the matched morphism is the only morphism src -> tgt
        if cat.mor_count(m.src, m.tgt) != 1 {
            return Err(Error::Input(format!(
                "parallel morphisms alongside matched {}",
                m.tag
            )));
        }
    }
    let cycle = has_directed_cycle(&matching_digraph(cat, &matched));
    let ext = linear_extension_with_pairs(cat, &matched);
    match (&cycle, &ext) {
        (None, Some(_)) | (Some(_), None) => {}
        (Some(_), Some(_)) => {
            return Err(Error::Verification(
                "cycle search and linear-extension check disagree (cycle found, extension exists)"
                    .into(),
            ));
        }
        (None, None) => {
            return Err(Error::Verification(
                "cycle search and linear-extension check disagree (no cycle, no extension)".into(),
            ));
        }
    }
    if let Some(cycle) = cycle {
        let names: Vec<&str> = cycle.iter().map(|&o| cat.objects[o].key.as_str()).collect();
        return Err(Error::Input(format!("matching has a cycle through {}", names.join(" -> "))));
    }
    let linear_extension = ext.expect("checked above");
    let critical: Vec<usize> =
        (0..cat.objects.len()).filter(|o| !endpoints.contains(o)).collect();
    let max_rank = cat.objects.iter().map(|o| o.rank).max().unwrap_or(0);
    let mut critical_by_rank = vec![0usize; max_rank + 1];
    for &c in &critical {
        critical_by_rank[cat.objects[c].rank] += 1;
    }
    Ok(MatchingCertificate {
        matching: Matching { matched: matched.into_iter().collect() },
        linear_extension,
        critical,
        critical_by_rank,
    })
}

/// Patchwork Lemma made executable: fiber matchings over a functor to a
/// poset of labels union to a matching of the whole category. The lemma
/// guarantees acyclicity; validation is still executed and a failure is an
/// internal error.
pub fn patchwork<L: Ord + Clone + std::fmt::Debug, F: Fn(&L, &L) -> bool>(
    cat: &AcyclicCategory,
    labels: &[L],
    label_leq: F,
    fiber_matchings: &BTreeMap<L, Matching>,
) -> Result<MatchingCertificate> {
    assert_eq!(labels.len(), cat.objects.len());
    // the labelling must be a functor: morphisms may not decrease labels
    for m in &cat.morphisms {
        if !label_leq(&labels[m.src], &labels[m.tgt]) {
            return Err(Error::Verification(format!(
                "fiber labelling is not functorial on morphism {}",
                m.tag
            )));
        }
    }
    let mut union = Vec::new();
    for (label, matching) in fiber_matchings {
        for &mid in &matching.matched {
            let m = &cat.morphisms[mid];
            if labels[m.src] != *label || labels[m.tgt] != *label {
                return Err(Error::Verification(format!(
                    "fiber matching for {:?} leaves its fiber on morphism {}",
                    label, m.tag
                )));
            }
            union.push(mid);
        }
    }
    validate_matching(cat, &Matching { matched: union })
        .map_err(|e| Error::Verification(format!("patchwork union failed validation: {e}")))
}

/// Search for an acyclic matching on a finite poset with exactly one
/// critical element forced into the top rank. Strategy: fix a candidate
/// critical element, then collapse free pairs greedily descending by rank,
/// with depth-first backtracking over the choice of free pair; exhaustive
/// for small posets.
pub fn fiber_matching_one_critical(cat: &AcyclicCategory) -> Result<MatchingCertificate> {
    if cat.objects.is_empty() {
        return Err(Error::Input("empty poset has no one-critical matching".into()));
    }
    if !cat.is_poset() {
        return Err(Error::Verification(
            "one-critical search expects a poset (parallel morphisms found)".into(),
        ));
    }
    let n = cat.objects.len();
    let top_rank = cat.objects.iter().map(|o| o.rank).max().unwrap_or(0);
    // strict order relation from the full morphism set
    let mut above = vec![BTreeSet::new(); n]; // objects strictly greater
    let mut indec_by_pair: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for &mid in &cat.indecomposables() {
        let m = &cat.morphisms[mid];
        indec_by_pair.insert((m.src, m.tgt), mid);
    }
    for m in &cat.morphisms {
        above[m.src].insert(m.tgt);
    }

    let mut candidates: Vec<usize> =
        (0..n).filter(|&o| cat.objects[o].rank == top_rank).collect();
    candidates.sort_by(|&a, &b| cat.objects[a].key.cmp(&cat.objects[b].key));

    let budget: usize = if n <= 20 { usize::MAX } else { 200_000 };
    for &critical in &candidates {
        let mut remaining: BTreeSet<usize> = (0..n).collect();
        remaining.remove(&critical);
        let mut pairs: Vec<(usize, usize)> = Vec::new();
        let mut steps = 0usize;
        if collapse(cat, &above, &mut remaining, &mut pairs, &mut steps, budget) {
            let matched: Vec<usize> = pairs
                .iter()
                .map(|&(a, b)| {
                    indec_by_pair.get(&(a, b)).copied().ok_or_else(|| {
                        Error::Verification("collapse pair is not an indecomposable".into())
                    })
                })
                .collect::<Result<_>>()?;
            let cert = validate_matching(cat, &Matching { matched })?;
            if cert.critical.len() != 1 {
                return Err(Error::Verification("collapse left more than one critical".into()));
            }
            return Ok(cert);
        }
    }
    Err(Error::SearchExhausted(format!(
        "no one-critical matching found on {n}-element poset (validation never reached)"
    )))
}

/// Depth-first search over free-pair collapses. A free pair is an element
/// `a` whose set of strictly-greater remaining elements is a single `b`
/// (necessarily covering `a`). Removing pairs in any successful order is an
/// acyclic matching; the search backtracks over the choice.
fn collapse(
    cat: &AcyclicCategory,
    above: &[BTreeSet<usize>],
    remaining: &mut BTreeSet<usize>,
    pairs: &mut Vec<(usize, usize)>,
    steps: &mut usize,
    budget: usize,
) -> bool {
    if remaining.is_empty() {
        return true;
    }
    *steps += 1;
    if *steps > budget {
        return false;
    }
    // free pairs, preferring high-rank sources then canonical key
    let mut free: Vec<(usize, usize)> = Vec::new();
    for &a in remaining.iter() {
        let mut up = above[a].iter().filter(|x| remaining.contains(x));
        if let Some(&b) = up.next() {
            if up.next().is_none() {
                free.push((a, b));
            }
        }
    }
    if free.is_empty() {
        return false;
    }
    free.sort_by(|&(a1, _), &(a2, _)| {
        cat.objects[a2]
            .rank
            .cmp(&cat.objects[a1].rank)
            .then_with(|| cat.objects[a1].key.cmp(&cat.objects[a2].key))
    });
    for (a, b) in free {
        if !remaining.contains(&a) || !remaining.contains(&b) {
            continue;
        }
        remaining.remove(&a);
        remaining.remove(&b);
        pairs.push((a, b));
        if collapse(cat, above, remaining, pairs, steps, budget) {
            return true;
        }
        pairs.pop();
        remaining.insert(a);
        remaining.insert(b);
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::{AcyclicCategory, MorphismData, ObjectData};

    fn chain_keys(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn empty_matching_all_critical() {
        let cat =
            AcyclicCategory::from_poset(&[0, 1], &chain_keys(&["a", "b"]), |a, b| a < b).unwrap();
        let cert = validate_matching(&cat, &Matching::default()).unwrap();
        assert_eq!(cert.critical.len(), 2);
    }

    #[test]
    fn interval_matched_no_critical() {
        let cat =
            AcyclicCategory::from_poset(&[0, 1], &chain_keys(&["a", "b"]), |a, b| a < b).unwrap();
        let cert = validate_matching(&cat, &Matching { matched: vec![0] }).unwrap();
        assert!(cert.critical.is_empty());
        assert_eq!(cert.linear_extension, vec![0, 1]);
    }

    #[test]
    fn square_boundary_cycle_detected() {
        // 4 vertices, 4 edges; edge e_i covers v_i and v_{i+1}
        let mut objects = Vec::new();
        for i in 0..4 {
            objects.push(ObjectData { rank: 0, key: format!("v{i}") });
        }
        for i in 0..4 {
            objects.push(ObjectData { rank: 1, key: format!("e{i}") });
        }
        let mut morphisms = Vec::new();
        let mut matched = Vec::new();
        for i in 0..4 {
            // v_i -> e_i is the matched ("clockwise") morphism
            matched.push(morphisms.len());
            morphisms.push(MorphismData { src: i, tgt: 4 + i, tag: format!("v{i}<e{i}") });
            morphisms.push(MorphismData {
                src: (i + 1) % 4,
                tgt: 4 + i,
                tag: format!("v{}<e{i}", (i + 1) % 4),
            });
        }
        let cat = AcyclicCategory::new(objects, morphisms, Default::default()).unwrap();
        let err = validate_matching(&cat, &Matching { matched }).unwrap_err();
        assert!(matches!(err, Error::Input(_)), "expected cycle rejection, got {err:?}");
        assert!(err.to_string().contains("cycle"));
    }

    #[test]
    fn parallel_morphism_condition_a() {
        let objects = vec![
            ObjectData { rank: 0, key: "v".into() },
            ObjectData { rank: 1, key: "e".into() },
        ];
        let morphisms = vec![
            MorphismData { src: 0, tgt: 1, tag: "m0".into() },
            MorphismData { src: 0, tgt: 1, tag: "m1".into() },
        ];
        let cat = AcyclicCategory::new(objects, morphisms, Default::default()).unwrap();
        let err = validate_matching(&cat, &Matching { matched: vec![0] }).unwrap_err();
        assert!(err.to_string().contains("parallel"));
    }

    #[test]
    fn one_critical_singleton() {
        let cat = AcyclicCategory::from_poset(&[0], &chain_keys(&["x"]), |_, _| false).unwrap();
        let cert = fiber_matching_one_critical(&cat).unwrap();
        assert_eq!(cert.critical.len(), 1);
    }

    #[test]
    fn one_critical_diamond() {
        // bottom < l, r < top: 4 elements, one critical in top rank
        let keys = chain_keys(&["bot", "l", "r", "top"]);
        let leq = |a: usize, b: usize| matches!((a, b), (0, 1) | (0, 2) | (0, 3) | (1, 3) | (2, 3));
        let cat = AcyclicCategory::from_poset(&[0, 1, 1, 2], &keys, leq).unwrap();
        let cert = fiber_matching_one_critical(&cat).unwrap();
        assert_eq!(cert.critical.len(), 1);
        assert_eq!(cat.objects[cert.critical[0]].rank, 2);
    }

    #[test]
    fn one_critical_stratum_shape() {
        // two rank-1 elements under one rank-2 element (the N_{C_1} shape,
        // read in the face-poset orientation: pt < ray1, ray2)
        let keys = chain_keys(&["pt", "ray1", "ray2"]);
        let leq = |a: usize, b: usize| a == 0 && b > 0;
        let cat = AcyclicCategory::from_poset(&[0, 1, 1], &keys, leq).unwrap();
        let cert = fiber_matching_one_critical(&cat).unwrap();
        assert_eq!(cert.critical.len(), 1);
        assert_eq!(cat.objects[cert.critical[0]].rank, 1);
        assert_eq!(cert.matching.matched.len(), 1);
    }

    #[test]
    fn patchwork_two_singleton_fibers() {
        let cat =
            AcyclicCategory::from_poset(&[0, 1], &chain_keys(&["a", "b"]), |a, b| a < b).unwrap();
        let mut fibers = BTreeMap::new();
        fibers.insert(0usize, Matching::default());
        fibers.insert(1usize, Matching::default());
        let cert = patchwork(&cat, &[0, 1], |a, b| a <= b, &fibers).unwrap();
        assert_eq!(cert.critical.len(), 2);
    }
}
