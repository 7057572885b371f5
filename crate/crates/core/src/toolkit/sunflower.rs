use std::collections::{BTreeMap, BTreeSet, HashMap};

use fixedbitset::FixedBitSet;
use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::packing::max_disjoint;

/// A set of `k`-tuples with pairwise-distinct entries. Repeated tuples are
/// dropped on construction; the first occurrence fixes the order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SequenceSystem {
    k: usize,
    sequences: Vec<Vec<u64>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SequenceSystemJson {
    k: usize,
    sequences: Vec<Vec<u64>>,
}

impl SequenceSystem {
    pub fn new(k: usize, sequences: impl IntoIterator<Item = Vec<u64>>) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidSequences("k must be positive".into()));
        }
        let mut seen = BTreeSet::new();
        let mut kept = Vec::new();
        for seq in sequences {
            if seq.len() != k {
                return Err(Error::InvalidSequences(format!(
                    "sequence {seq:?} has length {}, expected {k}",
                    seq.len()
                )));
            }
            let distinct: BTreeSet<_> = seq.iter().collect();
            if distinct.len() != k {
                return Err(Error::InvalidSequences(format!(
                    "sequence {seq:?} repeats an element"
                )));
            }
            if seen.insert(seq.clone()) {
                kept.push(seq);
            }
        }
        Ok(SequenceSystem { k, sequences: kept })
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let raw: SequenceSystemJson = serde_json::from_str(s)?;
        Self::new(raw.k, raw.sequences)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn sequences(&self) -> &[Vec<u64>] {
        &self.sequences
    }

    pub fn len(&self) -> usize {
        self.sequences.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sequences.is_empty()
    }

    pub fn contains(&self, seq: &[u64]) -> bool {
        self.sequences.iter().any(|s| s == seq)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SunflowerCertificate {
    /// 1-based positions, ascending.
    pub kernel: Vec<usize>,
    pub members: Vec<Vec<u64>>,
}

/// Proper subsets of `0..k`, by size then lexicographically.
fn kernels(k: usize) -> impl Iterator<Item = Vec<usize>> {
    (0..k).flat_map(move |size| itertools::Itertools::combinations(0..k, size))
}

/// Looks for `c` sequences agreeing on some kernel `I ⊊ [k]` whose
/// off-kernel element sets are pairwise disjoint.
pub fn find_sequential_sunflower(w: &SequenceSystem, c: usize) -> Option<SunflowerCertificate> {
    if c == 0 {
        return Some(SunflowerCertificate {
            kernel: Vec::new(),
            members: Vec::new(),
        });
    }
    let mut index: HashMap<u64, usize> = HashMap::new();
    for seq in w.sequences() {
        for &x in seq {
            let next = index.len();
            index.entry(x).or_insert(next);
        }
    }
    let universe = index.len();
    for kernel in kernels(w.k) {
        let mut groups: BTreeMap<Vec<u64>, Vec<usize>> = BTreeMap::new();
        for (i, seq) in w.sequences().iter().enumerate() {
            groups
                .entry(kernel.iter().map(|&p| seq[p]).collect())
                .or_default()
                .push(i);
        }
        for members in groups.values().filter(|m| m.len() >= c) {
            let sets: Vec<FixedBitSet> = members
                .iter()
                .map(|&i| {
                    let mut s = FixedBitSet::with_capacity(universe);
                    for (p, x) in w.sequences()[i].iter().enumerate() {
                        if !kernel.contains(&p) {
                            s.insert(index[x]);
                        }
                    }
                    s
                })
                .collect();
            let packed = max_disjoint(&sets, Some(c));
            if packed.len() >= c {
                return Some(SunflowerCertificate {
                    kernel: kernel.iter().map(|p| p + 1).collect(),
                    members: packed[..c]
                        .iter()
                        .map(|&j| w.sequences()[members[j]].clone())
                        .collect(),
                });
            }
        }
    }
    None
}

/// Independent re-check of a certificate against the definition.
pub fn validate_sequential_sunflower(
    w: &SequenceSystem,
    cert: &SunflowerCertificate,
    c: usize,
) -> std::result::Result<(), String> {
    let k = w.k();
    if cert.members.len() < c {
        return Err(format!("{} members, need {c}", cert.members.len()));
    }
    if cert.kernel.len() >= k {
        return Err("kernel is not a proper subset".into());
    }
    if cert.kernel.windows(2).any(|p| p[0] >= p[1]) || cert.kernel.iter().any(|&p| p == 0 || p > k)
    {
        return Err(format!("bad kernel {:?}", cert.kernel));
    }
    for (i, a) in cert.members.iter().enumerate() {
        if !w.contains(a) {
            return Err(format!("{a:?} is not in the system"));
        }
        for b in &cert.members[i + 1..] {
            if a == b {
                return Err(format!("{a:?} appears twice"));
            }
            let mut off_a = BTreeSet::new();
            let mut off_b = BTreeSet::new();
            for p in 1..=k {
                if cert.kernel.contains(&p) {
                    if a[p - 1] != b[p - 1] {
                        return Err(format!("{a:?} and {b:?} differ at kernel position {p}"));
                    }
                } else {
                    off_a.insert(a[p - 1]);
                    off_b.insert(b[p - 1]);
                }
            }
            if !off_a.is_disjoint(&off_b) {
                return Err(format!("{a:?} and {b:?} share an off-kernel element"));
            }
        }
    }
    Ok(())
}

/// `(k!)^2 (k! C - 1)^k`.
pub fn sequential_sunflower_bound(k: u32, c: u64) -> BigUint {
    let fact: BigUint = (1..=k).map(BigUint::from).product();
    let inner = &fact * BigUint::from(c) - BigUint::from(1u32);
    &fact * &fact * inner.pow(k)
}

/// `size` of the given sets whose pairwise intersections all coincide,
/// as indices into `sets`.
pub fn find_set_sunflower(sets: &[BTreeSet<u64>], size: usize) -> Option<Vec<usize>> {
    match size {
        0 => return Some(Vec::new()),
        1 => return (!sets.is_empty()).then(|| vec![0]),
        _ => {}
    }
    for i in 0..sets.len() {
        for j in i + 1..sets.len() {
            let kernel: BTreeSet<u64> = sets[i].intersection(&sets[j]).copied().collect();
            let mut chosen = vec![i, j];
            if extend_sunflower(sets, &kernel, &mut chosen, j + 1, size) {
                return Some(chosen);
            }
        }
    }
    None
}

fn extend_sunflower(
    sets: &[BTreeSet<u64>],
    kernel: &BTreeSet<u64>,
    chosen: &mut Vec<usize>,
    from: usize,
    size: usize,
) -> bool {
    if chosen.len() == size {
        return true;
    }
    for x in from..sets.len() {
        if sets.len() - x < size - chosen.len() {
            return false;
        }
        let fits = chosen.iter().all(|&y| {
            sets[x]
                .intersection(&sets[y])
                .copied()
                .collect::<BTreeSet<_>>()
                == *kernel
        });
        if fits {
            chosen.push(x);
            if extend_sunflower(sets, kernel, chosen, x + 1, size) {
                return true;
            }
            chosen.pop();
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(k: usize, seqs: &[&[u64]]) -> SequenceSystem {
        SequenceSystem::new(k, seqs.iter().map(|s| s.to_vec())).unwrap()
    }

    fn set(xs: &[u64]) -> BTreeSet<u64> {
        xs.iter().copied().collect()
    }

    #[test]
    fn sequential_examples() {
        let w = sys(1, &[&[1], &[2]]);
        let cert = find_sequential_sunflower(&w, 2).unwrap();
        assert!(cert.kernel.is_empty());
        assert_eq!(cert.members.len(), 2);

        let w = sys(2, &[&[1, 2], &[1, 3], &[1, 4]]);
        let cert = find_sequential_sunflower(&w, 3).unwrap();
        assert_eq!(cert.kernel, vec![1]);
        validate_sequential_sunflower(&w, &cert, 3).unwrap();

        let w = sys(2, &[&[1, 2], &[2, 1]]);
        assert_eq!(find_sequential_sunflower(&w, 2), None);
    }

    #[test]
    fn kernel_order() {
        let all: Vec<_> = kernels(3).collect();
        assert_eq!(
            all,
            vec![
                vec![],
                vec![0],
                vec![1],
                vec![2],
                vec![0, 1],
                vec![0, 2],
                vec![1, 2]
            ]
        );
    }

    #[test]
    fn validator_rejects_bad_certificates() {
        let w = sys(2, &[&[1, 2], &[1, 3], &[2, 3]]);
        let bad = SunflowerCertificate {
            kernel: vec![1],
            members: vec![vec![1, 2], vec![2, 3]],
        };
        assert!(validate_sequential_sunflower(&w, &bad, 2).is_err());
        let full = SunflowerCertificate {
            kernel: vec![1, 2],
            members: vec![vec![1, 2]],
        };
        assert!(validate_sequential_sunflower(&w, &full, 1).is_err());
    }

    #[test]
    fn system_validation() {
        assert!(SequenceSystem::new(2, [vec![1, 1]]).is_err());
        assert!(SequenceSystem::new(2, [vec![1]]).is_err());
        assert!(SequenceSystem::new(0, []).is_err());
        let w =
            SequenceSystem::from_json_str(r#"{"k": 2, "sequences": [[1,2],[1,3],[1,2]]}"#).unwrap();
        assert_eq!(w.len(), 2);
        assert!(SequenceSystem::from_json_str(r#"{"k": 2}"#).is_err());
    }

    #[test]
    fn bound_examples() {
        assert_eq!(sequential_sunflower_bound(1, 2), BigUint::from(1u32));
        assert_eq!(sequential_sunflower_bound(2, 2), BigUint::from(36u32));
        assert_eq!(sequential_sunflower_bound(1, 1), BigUint::from(0u32));
    }

    #[test]
    fn set_sunflower_examples() {
        let disjoint = [set(&[1]), set(&[2, 3]), set(&[4])];
        assert_eq!(find_set_sunflower(&disjoint, 3), Some(vec![0, 1, 2]));
        let petals = [set(&[1, 2]), set(&[1, 3]), set(&[1, 4])];
        assert_eq!(find_set_sunflower(&petals, 3), Some(vec![0, 1, 2]));
        let triangle = [set(&[1, 2]), set(&[2, 3]), set(&[1, 3])];
        assert_eq!(find_set_sunflower(&triangle, 3), None);
    }
}
