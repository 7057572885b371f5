//! Exact maximum packing of pairwise-disjoint sets by branch and bound.

use fixedbitset::FixedBitSet;

/// Indices of a largest sub-family of pairwise-disjoint sets. With a
/// `target`, the search stops as soon as a packing of that size is found
/// (the result is then at least `target` long but not necessarily maximum).
pub fn max_disjoint(sets: &[FixedBitSet], target: Option<usize>) -> Vec<usize> {
    let mut order: Vec<usize> = (0..sets.len()).collect();
    order.sort_by_key(|&i| (sets[i].count_ones(..), i));
    let mut packer = Packer {
        sets,
        best: Vec::new(),
        target: target.unwrap_or(usize::MAX),
    };
    let mut chosen = Vec::new();
    packer.extend(&mut chosen, &order);
    packer.best.sort_unstable();
    packer.best
}

struct Packer<'a> {
    sets: &'a [FixedBitSet],
    best: Vec<usize>,
    target: usize,
}

impl Packer<'_> {
    fn done(&self) -> bool {
        self.best.len() >= self.target
    }

    fn extend(&mut self, chosen: &mut Vec<usize>, cand: &[usize]) {
        if chosen.len() > self.best.len() {
            self.best = chosen.clone();
        }
        for (i, &c) in cand.iter().enumerate() {
            if self.done() || chosen.len() + (cand.len() - i) <= self.best.len() {
                return;
            }
            let rest: Vec<usize> = cand[i + 1..]
                .iter()
                .copied()
                .filter(|&d| self.sets[c].is_disjoint(&self.sets[d]))
                .collect();
            chosen.push(c);
            self.extend(chosen, &rest);
            chosen.pop();
        }
    }
}
