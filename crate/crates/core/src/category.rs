//! Finite acyclic categories with explicit composition.
//!
//! Objects carry a rank and a canonical key; morphisms are stored
//! explicitly (identities are implicit) together with a composition table.
//! Posets are the thin special case. Everything downstream — nerves,
//! matchings, stratifications — works against this one structure.

use crate::{Error, Result};
use std::collections::BTreeMap;

#[derive(Clone, Debug)]
pub struct ObjectData {
    pub rank: usize,
    pub key: String,
}

#[derive(Clone, Debug)]
pub struct MorphismData {
    pub src: usize,
    pub tgt: usize,
    pub tag: String,
}

/// A finite acyclic category: the only endomorphisms are identities, which
/// are kept implicit. Every nonidentity morphism strictly raises `rank`.
#[derive(Clone, Debug)]
pub struct AcyclicCategory {
    pub objects: Vec<ObjectData>,
    pub morphisms: Vec<MorphismData>,
    /// (f: a->b, g: b->c) -> g∘f : a->c
    compose: BTreeMap<(usize, usize), usize>,
}

impl AcyclicCategory {
    pub fn new(
        objects: Vec<ObjectData>,
        morphisms: Vec<MorphismData>,
        compose: BTreeMap<(usize, usize), usize>,
    ) -> Result<Self> {
        let cat = AcyclicCategory { objects, morphisms, compose };
        cat.check()?;
        Ok(cat)
    }

    fn check(&self) -> Result<()> {
        for (i, m) in self.morphisms.iter().enumerate() {
            if m.src >= self.objects.len() || m.tgt >= self.objects.len() {
                return Err(Error::Verification(format!("morphism {i} out of range")));
            }
            if self.objects[m.src].rank >= self.objects[m.tgt].rank {
                return Err(Error::Verification(format!(
                    "morphism {} does not raise rank ({} -> {})",
                    m.tag, self.objects[m.src].rank, self.objects[m.tgt].rank
                )));
            }
        }
        // composition closure and endpoint coherence
        for (f, fd) in self.morphisms.iter().enumerate() {
            for (g, gd) in self.morphisms.iter().enumerate() {
                if fd.tgt == gd.src {
                    let Some(&h) = self.compose.get(&(f, g)) else {
                        return Err(Error::Verification(format!(
                            "missing composite {} ; {}",
                            fd.tag, gd.tag
                        )));
                    };
                    let hd = &self.morphisms[h];
                    if hd.src != fd.src || hd.tgt != gd.tgt {
                        return Err(Error::Verification("composite has wrong endpoints".into()));
                    }
                }
            }
        }
        // associativity on all composable triples (desk scale)
        for (f, fd) in self.morphisms.iter().enumerate() {
            for (g, gd) in self.morphisms.iter().enumerate() {
                if fd.tgt != gd.src {
                    continue;
                }
                let fg = self.compose[&(f, g)];
                for (h, hd) in self.morphisms.iter().enumerate() {
                    if gd.tgt != hd.src {
                        continue;
                    }
                    let gh = self.compose[&(g, h)];
                    if self.compose[&(fg, h)] != self.compose[&(f, gh)] {
                        return Err(Error::Verification("composition is not associative".into()));
                    }
                }
            }
        }
        Ok(())
    }

    /// Build from a poset given by ranks and a `leq` predicate on indices;
    /// morphisms are all strict relations.
    pub fn from_poset<F>(ranks: &[usize], keys: &[String], leq: F) -> Result<Self>
    where
        F: Fn(usize, usize) -> bool,
    {
        let n = ranks.len();
        let objects: Vec<ObjectData> = (0..n)
            .map(|i| ObjectData { rank: ranks[i], key: keys[i].clone() })
            .collect();
        let mut morphisms = Vec::new();
        let mut index = BTreeMap::new();
        for a in 0..n {
            for b in 0..n {
                if a != b && leq(a, b) {
                    index.insert((a, b), morphisms.len());
                    morphisms.push(MorphismData {
                        src: a,
                        tgt: b,
                        tag: format!("{}<{}", keys[a], keys[b]),
                    });
                }
            }
        }
        let mut compose = BTreeMap::new();
        for (f, fd) in morphisms.iter().enumerate() {
            for (g, gd) in morphisms.iter().enumerate() {
                if fd.tgt == gd.src {
                    let h = index[&(fd.src, gd.tgt)];
                    compose.insert((f, g), h);
                }
            }
        }
        Self::new(objects, morphisms, compose)
    }

    pub fn mor_count(&self, a: usize, b: usize) -> usize {
        self.morphisms.iter().filter(|m| m.src == a && m.tgt == b).count()
    }

    pub fn is_poset(&self) -> bool {
        let mut seen = BTreeMap::new();
        for m in &self.morphisms {
            let c = seen.entry((m.src, m.tgt)).or_insert(0usize);
            *c += 1;
            if *c > 1 {
                return false;
            }
        }
        true
    }

    /// Morphism ids that cannot be written as a composite of two
    /// nonidentity morphisms.
    pub fn indecomposables(&self) -> Vec<usize> {
        let mut dec = vec![false; self.morphisms.len()];
        for &h in self.compose.values() {
            dec[h] = true;
        }
        (0..self.morphisms.len()).filter(|&i| !dec[i]).collect()
    }

    pub fn compose_get(&self, f: usize, g: usize) -> Option<usize> {
        self.compose.get(&(f, g)).copied()
    }

    /// Maximum length of a decomposition chain, i.e. the longest path in the
    /// indecomposable digraph.
    pub fn height(&self) -> usize {
        let n = self.objects.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| self.objects[i].rank);
        let mut best = vec![0usize; n];
        let indec = self.indecomposables();
        let mut incoming: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for &m in &indec {
            incoming.entry(self.morphisms[m].tgt).or_default().push(self.morphisms[m].src);
        }
        let mut h = 0;
        for &i in &order {
            if let Some(srcs) = incoming.get(&i) {
                for &s in srcs {
                    best[i] = best[i].max(best[s] + 1);
                }
            }
            h = h.max(best[i]);
        }
        h
    }

    /// Full subcategory on a subset of objects. Returns the category and the
    /// map from new object ids to old ones, plus new->old morphism ids.
    pub fn full_subcategory(&self, objs: &[usize]) -> Result<(AcyclicCategory, Vec<usize>, Vec<usize>)> {
        let mut old_to_new = BTreeMap::new();
        for (new, &old) in objs.iter().enumerate() {
            old_to_new.insert(old, new);
        }
        let objects: Vec<ObjectData> = objs.iter().map(|&o| self.objects[o].clone()).collect();
        let mut morphisms = Vec::new();
        let mut mor_map = BTreeMap::new();
        for (i, m) in self.morphisms.iter().enumerate() {
            if let (Some(&s), Some(&t)) = (old_to_new.get(&m.src), old_to_new.get(&m.tgt)) {
                mor_map.insert(i, morphisms.len());
                morphisms.push(MorphismData { src: s, tgt: t, tag: m.tag.clone() });
            }
        }
        let mut compose = BTreeMap::new();
        for (&(f, g), &h) in &self.compose {
            if let (Some(&nf), Some(&ng), Some(&nh)) =
                (mor_map.get(&f), mor_map.get(&g), mor_map.get(&h))
            {
                compose.insert((nf, ng), nh);
            }
        }
        let mor_old: Vec<usize> = {
            let mut v: Vec<(usize, usize)> = mor_map.iter().map(|(&o, &n)| (n, o)).collect();
            v.sort();
            v.into_iter().map(|(_, o)| o).collect()
        };
        let cat = Self::new(objects, morphisms, compose)?;
        Ok((cat, objs.to_vec(), mor_old))
    }

    /// Number of objects per rank, indexed by rank.
    pub fn rank_census(&self) -> Vec<usize> {
        let max = self.objects.iter().map(|o| o.rank).max().unwrap_or(0);
        let mut census = vec![0usize; max + 1];
        for o in &self.objects {
            census[o.rank] += 1;
        }
        census
    }

    /// Alternating sum over objects of (-1)^rank.
    pub fn euler_characteristic(&self) -> i64 {
        self.objects.iter().map(|o| if o.rank % 2 == 0 { 1 } else { -1 }).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn poset_category() {
        // chain a < b < c
        let ranks = vec![0, 1, 2];
        let keys: Vec<String> = ["a", "b", "c"].iter().map(|s| s.to_string()).collect();
        let cat = AcyclicCategory::from_poset(&ranks, &keys, |a, b| a < b).unwrap();
        assert_eq!(cat.morphisms.len(), 3);
        assert_eq!(cat.indecomposables().len(), 2);
        assert_eq!(cat.height(), 2);
        assert!(cat.is_poset());
    }

    #[test]
    fn parallel_morphisms() {
        // two objects with two parallel morphisms (circle-like)
        let objects = vec![
            ObjectData { rank: 0, key: "v".into() },
            ObjectData { rank: 1, key: "e".into() },
        ];
        let morphisms = vec![
            MorphismData { src: 0, tgt: 1, tag: "m0".into() },
            MorphismData { src: 0, tgt: 1, tag: "m1".into() },
        ];
        let cat = AcyclicCategory::new(objects, morphisms, BTreeMap::new()).unwrap();
        assert!(!cat.is_poset());
        assert_eq!(cat.indecomposables().len(), 2);
    }

    #[test]
    fn rejects_rank_violation() {
        let objects = vec![
            ObjectData { rank: 1, key: "x".into() },
            ObjectData { rank: 0, key: "y".into() },
        ];
        let morphisms = vec![MorphismData { src: 0, tgt: 1, tag: "bad".into() }];
        assert!(AcyclicCategory::new(objects, morphisms, BTreeMap::new()).is_err());
    }
}
