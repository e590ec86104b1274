//! Exhaustive enumeration of small systems up to isomorphism.
//!
//! Rooted trees are built as multisets of smaller trees, connected systems
//! as sequences of rooted trees around a cycle kept only in least rotation,
//! and general systems as multisets of connected ones. Each class appears
//! exactly once.

use crate::fdds::Fdds;

/// `(size, index)` into a per-size catalogue; the derived order is the one
/// used to pick canonical multisets and rotations.
type Id = (usize, usize);

/// Catalogue of rooted trees and connected systems up to a number of states.
#[derive(Debug, Clone)]
pub struct Catalog {
    /// `trees[k]`: rooted trees with `k` nodes, each a sorted child list.
    trees: Vec<Vec<Vec<Id>>>,
    /// `comps[k]`: connected systems with `k` states, as the tree hanging
    /// from each cycle node in cycle order.
    comps: Vec<Vec<Vec<Id>>>,
}

impl Catalog {
    pub fn new(max_states: usize) -> Self {
        let mut cat = Catalog {
            trees: vec![Vec::new(); max_states + 1],
            comps: vec![Vec::new(); max_states + 1],
        };
        for k in 1..=max_states {
            let mut out = Vec::new();
            cat.tree_multisets(k - 1, (usize::MAX, usize::MAX), &mut Vec::new(), &mut out);
            cat.trees[k] = out;
        }
        for k in 1..=max_states {
            let mut out = Vec::new();
            cat.cycle_sequences(k, &mut Vec::new(), &mut out);
            cat.comps[k] = out;
        }
        cat
    }

    pub fn max_states(&self) -> usize {
        self.trees.len() - 1
    }

    /// Multisets of trees with `remaining` nodes in total, in non-increasing order.
    fn tree_multisets(&self, remaining: usize, max: Id, cur: &mut Vec<Id>, out: &mut Vec<Vec<Id>>) {
        if remaining == 0 {
            out.push(cur.clone());
            return;
        }
        for size in (1..=remaining.min(max.0)).rev() {
            let count = self.trees[size].len();
            let top = if size == max.0 { max.1 + 1 } else { count };
            for idx in (0..top.min(count)).rev() {
                cur.push((size, idx));
                self.tree_multisets(remaining - size, (size, idx), cur, out);
                cur.pop();
            }
        }
    }

    fn cycle_sequences(&self, remaining: usize, cur: &mut Vec<Id>, out: &mut Vec<Vec<Id>>) {
        if remaining == 0 {
            if is_least_rotation(cur) {
                out.push(cur.clone());
            }
            return;
        }
        for size in 1..=remaining {
            for idx in 0..self.trees[size].len() {
                cur.push((size, idx));
                self.cycle_sequences(remaining - size, cur, out);
                cur.pop();
            }
        }
    }

    pub fn rooted_tree_count(&self, n: usize) -> usize {
        self.trees[n].len()
    }

    pub fn connected_count(&self, n: usize) -> usize {
        self.comps[n].len()
    }

    /// Connected systems with exactly `n` states.
    pub fn connected(&self, n: usize) -> Vec<Fdds> {
        (0..self.comps[n].len())
            .map(|i| {
                let mut succ = Vec::with_capacity(n);
                self.push_component((n, i), &mut succ);
                Fdds::new(succ).expect("valid by construction")
            })
            .collect()
    }

    /// All systems with exactly `n` states, one per isomorphism class.
    pub fn systems(&self, n: usize) -> Vec<Fdds> {
        let mut out = Vec::new();
        self.visit_systems(n, |ids| {
            let mut succ = Vec::with_capacity(n);
            for &id in ids {
                self.push_component(id, &mut succ);
            }
            out.push(Fdds::new(succ).expect("valid by construction"));
        });
        out
    }

    /// Number of systems with exactly `n` states.
    pub fn system_count(&self, n: usize) -> usize {
        let mut count = 0;
        self.visit_systems(n, |_| count += 1);
        count
    }

    /// All systems with at most `n` states, smallest first.
    pub fn systems_up_to(&self, n: usize) -> Vec<Fdds> {
        (0..=n).flat_map(|k| self.systems(k)).collect()
    }

    fn visit_systems(&self, n: usize, mut f: impl FnMut(&[Id])) {
        fn rec(cat: &Catalog, remaining: usize, max: Id, cur: &mut Vec<Id>, f: &mut dyn FnMut(&[Id])) {
            if remaining == 0 {
                f(cur);
                return;
            }
            for size in (1..=remaining.min(max.0)).rev() {
                let count = cat.comps[size].len();
                let top = if size == max.0 { max.1 + 1 } else { count };
                for idx in (0..top.min(count)).rev() {
                    cur.push((size, idx));
                    rec(cat, remaining - size, (size, idx), cur, f);
                    cur.pop();
                }
            }
        }
        rec(self, n, (usize::MAX, usize::MAX), &mut Vec::new(), &mut f);
    }

    fn push_component(&self, (size, idx): Id, succ: &mut Vec<usize>) {
        let seq = &self.comps[size][idx];
        let base = succ.len();
        let len = seq.len();
        succ.extend((0..len).map(|i| base + (i + 1) % len));
        for (i, &t) in seq.iter().enumerate() {
            self.push_children(t, base + i, succ);
        }
    }

    fn push_children(&self, (size, idx): Id, root: usize, succ: &mut Vec<usize>) {
        for &child in &self.trees[size][idx] {
            let v = succ.len();
            succ.push(root);
            self.push_children(child, v, succ);
        }
    }
}

fn is_least_rotation(s: &[Id]) -> bool {
    let n = s.len();
    (1..n).all(|r| {
        let rotated = s[r..].iter().chain(&s[..r]);
        s.iter().cmp(rotated) != std::cmp::Ordering::Greater
    })
}

/// Partitions of `n` into parts of non-increasing size.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn rec(remaining: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if remaining == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=remaining.min(max)).rev() {
            cur.push(part);
            rec(remaining - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::canon;
    use std::collections::HashSet;

    #[test]
    fn counts_match_known_sequences() {
        let cat = Catalog::new(9);
        let rooted = [1, 1, 2, 4, 9, 20, 48, 115, 286];
        let connected = [1, 2, 4, 9, 20, 51, 125, 329, 862];
        let all = [1, 3, 7, 19, 47, 130, 343, 951, 2615];
        for n in 1..=9 {
            assert_eq!(cat.rooted_tree_count(n), rooted[n - 1], "trees {n}");
            assert_eq!(cat.connected_count(n), connected[n - 1], "connected {n}");
            assert_eq!(cat.system_count(n), all[n - 1], "systems {n}");
        }
        assert_eq!(cat.system_count(0), 1);
    }

    #[test]
    fn classes_are_distinct_and_connected() {
        let cat = Catalog::new(6);
        for n in 1..=6 {
            let codes: HashSet<_> = cat.systems(n).iter().map(canon).collect();
            assert_eq!(codes.len(), cat.system_count(n));
            for c in cat.connected(n) {
                assert_eq!(c.components().len(), 1);
                assert_eq!(c.len(), n);
            }
        }
    }

    #[test]
    fn partition_counts() {
        let p: Vec<usize> = (0..=16).map(|n| partitions(n).len()).collect();
        assert_eq!(p, [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77, 101, 135, 176, 231]);
    }
}
