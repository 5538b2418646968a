use std::collections::HashMap;
use std::hash::Hash;

/// A partition of `0..n` into blocks numbered densely in order of first occurrence.
///
/// The numbering is canonical, so two partitions with the same blocks compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Partition {
    block_of: Vec<usize>,
    count: usize,
}

impl Partition {
    /// Groups indices by equal key.
    pub fn from_keys<K: Hash + Eq>(keys: impl IntoIterator<Item = K>) -> Self {
        let mut ids: HashMap<K, usize> = HashMap::new();
        let block_of: Vec<usize> = keys
            .into_iter()
            .map(|k| {
                let next = ids.len();
                *ids.entry(k).or_insert(next)
            })
            .collect();
        Partition {
            count: ids.len(),
            block_of,
        }
    }

    pub fn discrete(n: usize) -> Self {
        Partition {
            block_of: (0..n).collect(),
            count: n,
        }
    }

    pub fn single(n: usize) -> Self {
        Partition {
            block_of: vec![0; n],
            count: usize::from(n > 0),
        }
    }

    /// Canonicalises an arbitrary block assignment.
    pub fn from_assignment(block_of: &[usize]) -> Self {
        Self::from_keys(block_of.iter().copied())
    }

    pub fn len(&self) -> usize {
        self.block_of.len()
    }

    pub fn is_empty(&self) -> bool {
        self.block_of.is_empty()
    }

    pub fn block_count(&self) -> usize {
        self.count
    }

    pub fn block_of(&self, state: usize) -> usize {
        self.block_of[state]
    }

    pub fn assignment(&self) -> &[usize] {
        &self.block_of
    }

    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.count];
        for (s, &b) in self.block_of.iter().enumerate() {
            out[b].push(s);
        }
        out
    }

    /// First member of every block.
    pub fn representatives(&self) -> Vec<usize> {
        let mut reps = vec![usize::MAX; self.count];
        for (s, &b) in self.block_of.iter().enumerate() {
            if reps[b] == usize::MAX {
                reps[b] = s;
            }
        }
        reps
    }

    /// Coarsest refinement of `self` stable under every successor map in `succ`
    /// (`succ[a][s]` is the `a`-successor of `s`). Moore's algorithm.
    pub fn refine(&self, succ: &[Vec<usize>]) -> Partition {
        let mut current = self.clone();
        loop {
            let next = Partition::from_keys((0..current.len()).map(|s| {
                let mut sig = Vec::with_capacity(succ.len() + 1);
                sig.push(current.block_of[s]);
                sig.extend(succ.iter().map(|t| current.block_of[t[s]]));
                sig
            }));
            if next.count == current.count {
                return next;
            }
            current = next;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_numbering() {
        let p = Partition::from_assignment(&[5, 5, 2, 5, 2]);
        assert_eq!(p.assignment(), &[0, 0, 1, 0, 1]);
        assert_eq!(p.blocks(), vec![vec![0, 1, 3], vec![2, 4]]);
        assert_eq!(p.representatives(), vec![0, 2]);
        assert_eq!(p, Partition::from_keys(["x", "x", "y", "x", "y"]));
    }

    #[test]
    fn refinement_splits_on_successors() {
        // 0 -> 1 -> 2 -> 2, only 2 marked
        let marked = Partition::from_keys([false, false, true]);
        let succ = vec![vec![1, 2, 2]];
        assert_eq!(marked.refine(&succ), Partition::discrete(3));
        // a cycle with uniform marks stays one block
        let succ = vec![vec![1, 2, 0]];
        assert_eq!(Partition::single(3).refine(&succ), Partition::single(3));
    }
}
