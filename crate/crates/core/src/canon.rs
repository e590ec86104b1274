//! Canonical forms of functional digraphs.
//!
//! Every in-tree gets an AHU-style rank, ranks being consistent with an
//! order intrinsic to the tree shape (height, then label, then the sorted
//! ranks of the children). A component is the least rotation (Booth) of the
//! rank sequence around its cycle, written out as nested brackets; a system
//! is the sorted concatenation of its component codes.

use std::collections::HashMap;
use std::fmt;

use crate::fdds::{Fdds, Structure};

/// Byte code equal for two systems exactly when they are isomorphic.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct CanonForm(Vec<u8>);

impl CanonForm {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    /// Rebuild the canonical representative: states are numbered in the
    /// order their opening bracket appears in the code.
    pub fn to_fdds(&self) -> Fdds {
        let mut succ: Vec<usize> = Vec::new();
        let mut stack: Vec<usize> = Vec::new();
        let mut roots: Vec<usize> = Vec::new();
        for &b in &self.0 {
            match b {
                b'[' => roots.clear(),
                b'(' | b'{' => {
                    let id = succ.len();
                    match stack.last() {
                        Some(&parent) => succ.push(parent),
                        None => {
                            succ.push(usize::MAX);
                            roots.push(id);
                        }
                    }
                    stack.push(id);
                }
                b')' | b'}' => {
                    stack.pop();
                }
                b']' => {
                    for (i, &r) in roots.iter().enumerate() {
                        succ[r] = roots[(i + 1) % roots.len()];
                    }
                }
                _ => unreachable!("canonical codes only hold brackets"),
            }
        }
        Fdds::from_vec_unchecked(succ)
    }
}

impl fmt::Display for CanonForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&String::from_utf8_lossy(&self.0))
    }
}

/// Ranks of the nodes of a rooted forest.
///
/// Two nodes get the same rank iff their subtrees (with labels) are
/// isomorphic, and ranks compare like the intrinsic order
/// `(height, label, sorted child ranks)`.
pub(crate) fn forest_ranks(children: &[Vec<usize>], labels: &[u8], height: &[usize]) -> Vec<u32> {
    let n = children.len();
    let max_h = height.iter().copied().max().unwrap_or(0);
    let mut buckets: Vec<Vec<usize>> = vec![Vec::new(); max_h + 1];
    for v in 0..n {
        buckets[height[v]].push(v);
    }
    let mut rank = vec![0u32; n];
    let mut next = 0u32;
    for bucket in buckets {
        let mut sigs: Vec<(u8, Vec<u32>, usize)> = bucket
            .into_iter()
            .map(|v| {
                let mut cs: Vec<u32> = children[v].iter().map(|&c| rank[c]).collect();
                cs.sort_unstable();
                (labels[v], cs, v)
            })
            .collect();
        sigs.sort_unstable();
        for i in 0..sigs.len() {
            if i > 0 && (sigs[i].0, &sigs[i].1) != (sigs[i - 1].0, &sigs[i - 1].1) {
                next += 1;
            }
            rank[sigs[i].2] = next;
        }
        next += 1;
    }
    rank
}

/// Append the bracket code of the subtree at `root`, children in rank order.
/// Label 0 is written `( )`, label 1 `{ }`.
pub(crate) fn emit_tree(root: usize, children: &[Vec<usize>], ranks: &[u32], labels: &[u8], out: &mut Vec<u8>) {
    let open = |v: usize| if labels[v] == 0 { b'(' } else { b'{' };
    let close = |v: usize| if labels[v] == 0 { b')' } else { b'}' };
    let sorted = |v: usize| {
        let mut cs = children[v].clone();
        cs.sort_by_key(|&c| ranks[c]);
        cs
    };
    let mut stack: Vec<(usize, Vec<usize>, usize)> = vec![(root, sorted(root), 0)];
    out.push(open(root));
    while let Some((v, cs, i)) = stack.last_mut() {
        if *i < cs.len() {
            let c = cs[*i];
            *i += 1;
            out.push(open(c));
            stack.push((c, sorted(c), 0));
        } else {
            out.push(close(*v));
            stack.pop();
        }
    }
}

/// Index of the lexicographically least rotation of `s` (Booth's algorithm).
pub fn least_rotation<T: Ord>(s: &[T]) -> usize {
    let n = s.len();
    if n == 0 {
        return 0;
    }
    let mut fail = vec![-1isize; 2 * n];
    let mut k = 0usize;
    for j in 1..2 * n {
        let sj = &s[j % n];
        let mut i = fail[j - k - 1];
        while i != -1 && *sj != s[(k + i as usize + 1) % n] {
            if *sj < s[(k + i as usize + 1) % n] {
                k = j - i as usize - 1;
            }
            i = fail[i as usize];
        }
        if i == -1 && *sj != s[k % n] {
            if *sj < s[k % n] {
                k = j;
            }
            fail[j - k] = -1;
        } else {
            fail[j - k] = i + 1;
        }
    }
    k % n
}

/// Smallest `p` dividing `s.len()` with `s` invariant under rotation by `p`.
pub(crate) fn rotation_period<T: PartialEq>(s: &[T]) -> usize {
    let n = s.len();
    (1..=n)
        .filter(|p| n.is_multiple_of(*p))
        .find(|&p| (0..n).all(|i| s[i] == s[(i + p) % n]))
        .unwrap_or(n.max(1))
}

/// Per-system analysis: structure, node ranks and one code per component.
pub(crate) struct Analysis {
    pub structure: Structure,
    pub ranks: Vec<u32>,
    /// Indexed like `structure.cycles`.
    pub codes: Vec<Vec<u8>>,
}

pub(crate) fn transient_children(a: &Fdds, st: &Structure) -> Vec<Vec<usize>> {
    let mut children = vec![Vec::new(); a.len()];
    for &v in &st.peel_order {
        children[a.succ()[v]].push(v);
    }
    children
}

pub(crate) fn analyze(a: &Fdds) -> Analysis {
    let st = a.structure();
    let children = transient_children(a, &st);
    let labels = vec![0u8; a.len()];
    let ranks = forest_ranks(&children, &labels, &st.height);
    let codes = st
        .cycles
        .iter()
        .map(|cyc| {
            let seq: Vec<u32> = cyc.iter().map(|&v| ranks[v]).collect();
            let r = least_rotation(&seq);
            let mut code = vec![b'['];
            for i in 0..cyc.len() {
                emit_tree(cyc[(r + i) % cyc.len()], &children, &ranks, &labels, &mut code);
            }
            code.push(b']');
            code
        })
        .collect();
    Analysis {
        structure: st,
        ranks,
        codes,
    }
}

/// Canonical form of a system.
pub fn canon(a: &Fdds) -> CanonForm {
    let mut codes = analyze(a).codes;
    codes.sort_unstable();
    CanonForm(codes.concat())
}

/// Sorted canonical forms of the components of `a`.
pub fn component_forms(a: &Fdds) -> Vec<CanonForm> {
    let mut codes: Vec<CanonForm> = analyze(a).codes.into_iter().map(CanonForm).collect();
    codes.sort_unstable();
    codes
}

pub fn is_isomorphic(a: &Fdds, b: &Fdds) -> bool {
    a.len() == b.len() && canon(a) == canon(b)
}

/// Canonical successor table: isomorphic inputs give identical tables.
pub fn canonical_table(a: &Fdds) -> Fdds {
    canon(a).to_fdds()
}

/// `b` minus the components of `s`, if `s`'s components form a sub-multiset
/// of `b`'s; `None` otherwise.
pub fn sub_components(b: &Fdds, s: &Fdds) -> Option<Fdds> {
    if s.len() > b.len() {
        return None;
    }
    if s.is_empty() {
        return Some(b.clone());
    }
    let ab = analyze(b);
    let as_ = analyze(s);
    let mut pool: HashMap<&[u8], Vec<usize>> = HashMap::new();
    for (id, code) in ab.codes.iter().enumerate().rev() {
        pool.entry(code.as_slice()).or_default().push(id);
    }
    let mut removed = vec![false; ab.codes.len()];
    for code in &as_.codes {
        let id = pool.get_mut(code.as_slice())?.pop()?;
        removed[id] = true;
    }
    let keep: Vec<usize> = (0..b.len())
        .filter(|&v| !removed[ab.structure.comp_of[v]])
        .collect();
    Some(b.induced(&keep))
}
