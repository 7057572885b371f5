//! Embeddings of rooted graphs into hosts: plain and relativized counts,
//! ample embeddings, rooted-subgraph containment and extension sets.
//!
//! C-ampleness is decided from the root restriction alone: an embedding is
//! C-ample when its restriction to the roots admits C extensions whose
//! non-root images are pairwise disjoint. [`AmpleRule::Strict`] instead
//! requires the embedding itself to be one of the C.

use std::collections::{BTreeMap, HashMap, HashSet};

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, RootedGraph};
use crate::matcher::{Plan, Search};
use crate::packing::max_disjoint;

/// An injective edge-preserving map, indexed by pattern vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Embedding(pub Vec<usize>);

impl Embedding {
    pub fn image(&self, v: usize) -> usize {
        self.0[v]
    }

    pub fn restrict(&self, domain: &[usize]) -> PartialAssignment {
        PartialAssignment {
            pairs: domain.iter().map(|&v| (v, self.0[v])).collect(),
        }
    }
}

/// An injection from a subset of pattern vertices into the host.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PartialAssignment {
    pairs: BTreeMap<usize, usize>,
}

impl PartialAssignment {
    /// Rejects a repeated source vertex or a repeated image.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        let mut images = HashSet::new();
        for (v, w) in pairs {
            if map.insert(v, w).is_some() {
                return Err(Error::InvalidAssignment(format!(
                    "vertex {v} assigned twice"
                )));
            }
            if !images.insert(w) {
                return Err(Error::InvalidAssignment(format!("image {w} used twice")));
            }
        }
        Ok(PartialAssignment { pairs: map })
    }

    pub fn domain(&self) -> impl Iterator<Item = usize> + '_ {
        self.pairs.keys().copied()
    }

    pub fn get(&self, v: usize) -> Option<usize> {
        self.pairs.get(&v).copied()
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    fn check_range(&self, pattern_n: usize, host_n: usize) -> Result<()> {
        for (&v, &w) in &self.pairs {
            if v >= pattern_n {
                return Err(Error::InvalidAssignment(format!(
                    "vertex {v} not in a pattern on {pattern_n} vertices"
                )));
            }
            if w >= host_n {
                return Err(Error::InvalidAssignment(format!(
                    "image {w} not in a host on {host_n} vertices"
                )));
            }
        }
        Ok(())
    }
}

/// Owns the search state for `Inj(F, G; sigma)`; iterate with [`iter`].
///
/// Pattern vertices are visited breadth-first from the lowest-id non-root.
pub struct Embeddings {
    plan: Plan,
    rows: Vec<FixedBitSet>,
    pins: Vec<(usize, usize)>,
}

impl Embeddings {
    pub fn new(f: &RootedGraph, g: &Graph, sigma: Option<&PartialAssignment>) -> Result<Self> {
        if let Some(sigma) = sigma {
            sigma.check_range(f.vertex_count(), g.vertex_count())?;
        }
        if !f.graph().is_connected() {
            log::debug!("embedding a disconnected pattern; expect a slow search");
        }
        Ok(Embeddings {
            plan: Plan::bfs(f.graph(), |v| !f.is_root(v)),
            rows: g.adjacency_rows(),
            pins: sigma
                .map(|s| s.pairs.iter().map(|(&v, &w)| (v, w)).collect())
                .unwrap_or_default(),
        })
    }

    fn search(&self) -> Search<'_> {
        let mut s = Search::new(&self.plan, &self.rows);
        for &(v, w) in &self.pins {
            s.pin(v, w);
        }
        s
    }

    pub fn iter(&self) -> impl Iterator<Item = Embedding> + '_ {
        self.search().into_matches().map(Embedding)
    }

    pub fn count(&self) -> u64 {
        self.search().count()
    }
}

/// `inj(F, G; sigma)`.
pub fn inj(f: &RootedGraph, g: &Graph, sigma: Option<&PartialAssignment>) -> Result<u64> {
    Ok(Embeddings::new(f, g, sigma)?.count())
}

/// Whether `f2` contains `f1` as a rooted subgraph: an embedding sending
/// roots to roots and non-roots to non-roots.
pub fn contains_rooted_subgraph(f1: &RootedGraph, f2: &RootedGraph) -> bool {
    crate::rooted::root_respecting_embedding_exists(f1, f2)
}

/// Maximum number of embeddings extending `sigma` (defined on exactly the
/// roots) whose non-root images are pairwise disjoint.
pub fn packing_number(f: &RootedGraph, g: &Graph, sigma: &PartialAssignment) -> Result<usize> {
    check_root_domain(f, sigma)?;
    let sets = non_root_images(f, g, sigma)?;
    Ok(max_disjoint(&sets, None).len())
}

/// `packing_number(..) >= c`, stopping as soon as `c` disjoint extensions
/// are found.
pub fn packing_at_least(
    f: &RootedGraph,
    g: &Graph,
    sigma: &PartialAssignment,
    c: usize,
) -> Result<bool> {
    check_root_domain(f, sigma)?;
    if c == 0 {
        return Ok(true);
    }
    let sets = non_root_images(f, g, sigma)?;
    Ok(max_disjoint(&sets, Some(c)).len() >= c)
}

fn check_root_domain(f: &RootedGraph, sigma: &PartialAssignment) -> Result<()> {
    let roots = f.roots();
    if !sigma.domain().eq(roots.iter().copied()) {
        return Err(Error::InvalidAssignment(
            "assignment must be defined on exactly the roots".into(),
        ));
    }
    Ok(())
}

fn non_root_images(
    f: &RootedGraph,
    g: &Graph,
    sigma: &PartialAssignment,
) -> Result<Vec<FixedBitSet>> {
    let free = f.non_roots();
    let emb = Embeddings::new(f, g, Some(sigma))?;
    let mut seen = HashSet::new();
    Ok(emb
        .iter()
        .map(|e| image_set(&e, &free, g.vertex_count()))
        .filter(|s| seen.insert(s.clone()))
        .collect())
}

fn image_set(e: &Embedding, vertices: &[usize], host_n: usize) -> FixedBitSet {
    let mut s = FixedBitSet::with_capacity(host_n);
    for &v in vertices {
        s.insert(e.image(v));
    }
    s
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AmpleRule {
    /// Decided by the root restriction alone.
    #[default]
    RootRestriction,
    /// The embedding must itself belong to the disjoint family.
    Strict,
}

/// Every embedding of `F` into `G`, each flagged C-ample or not.
pub struct AmpleSet {
    roots: Vec<usize>,
    ample_keys: HashSet<Vec<usize>>,
    ample_maps: HashSet<Vec<usize>>,
    total: u64,
    rule: AmpleRule,
}

impl AmpleSet {
    pub fn build(f: &RootedGraph, g: &Graph, c: usize, rule: AmpleRule) -> Result<Self> {
        let roots = f.roots();
        let free = f.non_roots();
        let host_n = g.vertex_count();
        let emb = Embeddings::new(f, g, None)?;
        let mut groups: HashMap<Vec<usize>, Vec<Vec<usize>>> = HashMap::new();
        let mut total = 0u64;
        for e in emb.iter() {
            total += 1;
            let key: Vec<usize> = roots.iter().map(|&r| e.image(r)).collect();
            groups.entry(key).or_default().push(e.0);
        }
        let mut ample_keys = HashSet::new();
        let mut ample_maps = HashSet::new();
        for (key, maps) in groups {
            let sets: Vec<FixedBitSet> = maps
                .iter()
                .map(|m| image_set(&Embedding(m.clone()), &free, host_n))
                .collect();
            match rule {
                AmpleRule::RootRestriction => {
                    let mut distinct = sets.clone();
                    distinct.sort_by(|a, b| a.as_slice().cmp(b.as_slice()));
                    distinct.dedup();
                    if c == 0 || max_disjoint(&distinct, Some(c)).len() >= c {
                        ample_keys.insert(key);
                    }
                }
                AmpleRule::Strict => {
                    for (m, own) in maps.into_iter().zip(&sets) {
                        let others: Vec<FixedBitSet> = sets
                            .iter()
                            .filter(|s| s.is_disjoint(own))
                            .cloned()
                            .collect();
                        let need = c.saturating_sub(1);
                        if c == 0 || max_disjoint(&others, Some(need)).len() >= need {
                            ample_maps.insert(m);
                        }
                    }
                }
            }
        }
        Ok(AmpleSet {
            roots,
            ample_keys,
            ample_maps,
            total,
            rule,
        })
    }

    pub fn is_ample(&self, mapping: &[usize]) -> bool {
        match self.rule {
            AmpleRule::RootRestriction => {
                let key: Vec<usize> = self.roots.iter().map(|&r| mapping[r]).collect();
                self.ample_keys.contains(&key)
            }
            AmpleRule::Strict => self.ample_maps.contains(mapping),
        }
    }

    /// `inj(F, G)`.
    pub fn total(&self) -> u64 {
        self.total
    }
}

/// `amp_C(F, G)`.
pub fn amp_count(f: &RootedGraph, g: &Graph, c: usize) -> Result<u64> {
    amp_count_with(f, g, c, AmpleRule::RootRestriction)
}

pub fn amp_count_with(f: &RootedGraph, g: &Graph, c: usize, rule: AmpleRule) -> Result<u64> {
    if c == 0 {
        return inj(f, g, None);
    }
    let set = AmpleSet::build(f, g, c, rule)?;
    let emb = Embeddings::new(f, g, None)?;
    Ok(emb.iter().filter(|e| set.is_ample(&e.0)).count() as u64)
}

/// `ext_C(F1, F2, G)`: embeddings of `F2` that extend some C-ample embedding
/// of `F1` through an embedding of `F1` into `F2`.
pub fn ext_count(f1: &RootedGraph, f2: &RootedGraph, g: &Graph, c: usize) -> Result<u64> {
    ext_count_with(f1, f2, g, c, AmpleRule::RootRestriction)
}

pub fn ext_count_with(
    f1: &RootedGraph,
    f2: &RootedGraph,
    g: &Graph,
    c: usize,
    rule: AmpleRule,
) -> Result<u64> {
    let ample = AmpleSet::build(f1, g, c, rule)?;
    if ample.ample_keys.is_empty() && ample.ample_maps.is_empty() {
        return Ok(0);
    }
    let inner: Vec<Embedding> = Embeddings::new(f1, f2.graph(), None)?.iter().collect();
    let outer = Embeddings::new(f2, g, None)?;
    let mut composed = vec![0; f1.vertex_count()];
    let mut count = 0;
    for eta in outer.iter() {
        let extends = inner.iter().any(|e12| {
            for (v, slot) in composed.iter_mut().enumerate() {
                *slot = eta.image(e12.image(v));
            }
            ample.is_ample(&composed)
        });
        if extends {
            count += 1;
        }
    }
    Ok(count)
}
