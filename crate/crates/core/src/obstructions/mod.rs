//! Obstruction families: sets of subtrees that show up as rooted subgraphs
//! whichever non-empty proper set of non-roots is promoted to roots.

mod ledger;

pub use ledger::{master_constants, ConstantsLedger, FivePower, Radical, ScaledFivePower};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::embeddings::{contains_rooted_subgraph, Embeddings};
use crate::error::{Error, Result};
use crate::families::{make_star, two_level_tree, FamilyParams};
use crate::graph::RootedGraph;

/// Promoting subsets is refused beyond this many non-roots.
pub const MAX_VERIFIED_NON_ROOTS: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyMember {
    pub name: String,
    pub tree: RootedGraph,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructionFamily {
    pub members: Vec<FamilyMember>,
}

impl ObstructionFamily {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn without(&self, index: usize) -> ObstructionFamily {
        let mut members = self.members.clone();
        members.remove(index);
        ObstructionFamily { members }
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}

/// `{K_{1,s+1}} ∪ {T(s, t-i, s'+i) : 1 <= i <= s - s'}`, each rooted at
/// its leaves. A member with `t - i = 0` is the star `K_{1,s'+i}`.
pub fn obstruction_family_t(params: FamilyParams) -> Result<ObstructionFamily> {
    params.validate()?;
    let FamilyParams { s, t, s_prime } = params;
    let mut members = vec![FamilyMember {
        name: format!("K_{{1,{}}}", s + 1),
        tree: make_star(s + 1)?,
    }];
    for i in 1..=s.saturating_sub(s_prime) {
        if i > t {
            return Err(Error::InvalidParams(format!(
                "member T({s},{},{}) of {params} is degenerate",
                t as i128 - i as i128,
                s_prime + i
            )));
        }
        members.push(FamilyMember {
            name: format!("T_{{{},{},{}}}", s, t - i, s_prime + i),
            tree: two_level_tree(s, t - i, s_prime + i),
        });
    }
    Ok(ObstructionFamily { members })
}

#[derive(Clone, Copy, Debug, Default)]
pub struct VerifyOptions {
    /// Also report members whose removal keeps the covering property.
    pub check_minimality: bool,
    /// Require members to sit in `F` as rooted subgraphs rather than as
    /// plain subtrees.
    pub rooted_subtrees: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VerdictStatus {
    Ok,
    Counterexample,
    NonSubtreeMember,
    SingleEdgeMember,
    RedundantMember,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub status: VerdictStatus,
    /// Vertices of the first uncovered promoted set, in enumeration order.
    #[serde(default)]
    pub witness_subset: Vec<usize>,
    /// Indices of removable members (only filled when minimality is checked).
    #[serde(default)]
    pub redundant: Vec<usize>,
    /// Indices of members failing the subtree / not-an-edge conditions.
    #[serde(default)]
    pub invalid_members: Vec<usize>,
}

impl Verdict {
    fn with_status(status: VerdictStatus) -> Self {
        Verdict {
            status,
            witness_subset: Vec::new(),
            redundant: Vec::new(),
            invalid_members: Vec::new(),
        }
    }

    pub fn is_ok(&self) -> bool {
        self.status == VerdictStatus::Ok
    }
}

/// Checks that `family` is an obstruction family for the leaf-rooted tree `f`.
///
/// Promoted sets `U` are enumerated as bitmasks over the sorted non-roots;
/// the first uncovered one is reported.
pub fn verify_obstruction_family(
    f: &RootedGraph,
    family: &ObstructionFamily,
    opts: VerifyOptions,
) -> Result<Verdict> {
    if !f.graph().is_tree() {
        return Err(Error::NotLeafRootedTree("graph is not a tree".into()));
    }
    if !f.is_leaf_rooted_tree() {
        return Err(Error::NotLeafRootedTree(
            "roots differ from the leaves".into(),
        ));
    }
    let free = f.non_roots();
    if free.len() > MAX_VERIFIED_NON_ROOTS {
        return Err(Error::TooManyNonRoots(free.len()));
    }

    let single_edges: Vec<usize> = family
        .members
        .iter()
        .enumerate()
        .filter(|(_, m)| m.tree.edge_count() < 2)
        .map(|(i, _)| i)
        .collect();
    if !single_edges.is_empty() {
        let mut v = Verdict::with_status(VerdictStatus::SingleEdgeMember);
        v.invalid_members = single_edges;
        return Ok(v);
    }
    let not_subtrees: Vec<usize> = family
        .members
        .iter()
        .enumerate()
        .filter(|(_, m)| !is_subtree_of(&m.tree, f, opts.rooted_subtrees))
        .map(|(i, _)| i)
        .collect();
    if !not_subtrees.is_empty() {
        let mut v = Verdict::with_status(VerdictStatus::NonSubtreeMember);
        v.invalid_members = not_subtrees;
        return Ok(v);
    }

    let k = free.len();
    let masks: Vec<u64> = if k == 0 {
        Vec::new()
    } else {
        (1..(1u64 << k) - 1).collect()
    };
    // coverage[m][j]: does F with subset m promoted contain member j
    let coverage: Vec<Vec<bool>> = masks
        .par_iter()
        .map(|&mask| {
            let promoted: Vec<usize> = (0..k)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| free[i])
                .collect();
            let plus = f
                .with_extra_roots(&promoted)
                .expect("promoted vertices are in range");
            if opts.check_minimality {
                family
                    .members
                    .iter()
                    .map(|m| contains_rooted_subgraph(&m.tree, &plus))
                    .collect()
            } else {
                // stop at the first covering member
                let mut row = vec![false; family.len()];
                if let Some(j) = family
                    .members
                    .iter()
                    .position(|m| contains_rooted_subgraph(&m.tree, &plus))
                {
                    row[j] = true;
                }
                row
            }
        })
        .collect();

    if let Some(pos) = coverage.iter().position(|row| !row.iter().any(|&c| c)) {
        let mask = masks[pos];
        let mut v = Verdict::with_status(VerdictStatus::Counterexample);
        v.witness_subset = (0..k)
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| free[i])
            .collect();
        return Ok(v);
    }

    if opts.check_minimality {
        let redundant: Vec<usize> = (0..family.len())
            .filter(|&j| {
                coverage
                    .iter()
                    .all(|row| row.iter().enumerate().any(|(i, &c)| c && i != j))
            })
            .collect();
        if !redundant.is_empty() {
            let mut v = Verdict::with_status(VerdictStatus::RedundantMember);
            v.redundant = redundant;
            return Ok(v);
        }
    }
    Ok(Verdict::with_status(VerdictStatus::Ok))
}

fn is_subtree_of(member: &RootedGraph, f: &RootedGraph, rooted: bool) -> bool {
    if rooted {
        contains_rooted_subgraph(member, f)
    } else {
        // an injective homomorphism of a tree into a tree has a subtree image
        let plain = RootedGraph::unrooted(member.graph().clone());
        Embeddings::new(&plain, f.graph(), None)
            .map(|e| e.iter().next().is_some())
            .unwrap_or(false)
    }
}
