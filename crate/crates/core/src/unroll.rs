//! Depth-truncated unroll trees.
//!
//! The unroll tree of a system at a cycle state `u` has the states `v` with
//! `f^k(v) = u` on level `k`, each linked to `f(v)` on level `k - 1`. The
//! spine is the unique branch that stays on the cycle. Trees here are
//! truncated at a finite depth and compared up to isomorphism preserving the
//! spine.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap, HashSet};
use std::hash::{Hash, Hasher};

use num_integer::Integer;

use crate::canon::{self, emit_tree, forest_ranks};
use crate::error::{Error, Result};
use crate::fdds::{Component, Fdds};

const NO_PARENT: usize = usize::MAX;

/// A truncated unroll tree with a marked spine.
#[derive(Debug, Clone)]
pub struct UnrollTree {
    /// `parents[k][j]` is the index on level `k - 1` of the parent of node
    /// `j` on level `k`. Level 0 holds only the root.
    parents: Vec<Vec<usize>>,
    /// Index of the spine node on each level.
    spine: Vec<usize>,
    /// Length of the cycle the tree comes from (lcm of the factors for products).
    cycle_len: usize,
    period: usize,
    code: Vec<u8>,
}

impl UnrollTree {
    /// Build a tree from parent links, detecting its period among the
    /// divisors of `cycle_len` at the available depth.
    pub fn from_levels(parents: Vec<Vec<usize>>, spine: Vec<usize>, cycle_len: usize) -> Result<Self> {
        let mut t = Self::unchecked(parents, spine, cycle_len, cycle_len.max(1))?;
        t.period = t.detect_period();
        Ok(t)
    }

    fn unchecked(parents: Vec<Vec<usize>>, spine: Vec<usize>, cycle_len: usize, period: usize) -> Result<Self> {
        if parents.is_empty() || parents[0].len() != 1 || spine.len() != parents.len() || spine[0] != 0 {
            return Err(Error::InvalidArgument("malformed unroll tree".into()));
        }
        for k in 1..parents.len() {
            let above = parents[k - 1].len();
            if parents[k].iter().any(|&p| p >= above) || spine[k] >= parents[k].len() || parents[k][spine[k]] != spine[k - 1]
            {
                return Err(Error::InvalidArgument(format!("malformed unroll tree at level {k}")));
            }
        }
        let mut t = UnrollTree {
            parents,
            spine,
            cycle_len: cycle_len.max(1),
            period,
            code: Vec::new(),
        };
        t.code = t.compute_code();
        Ok(t)
    }

    /// The tree with only a spine, as unrolled from any cycle.
    pub fn bare_spine(depth: usize) -> Self {
        let mut parents = vec![vec![NO_PARENT]];
        parents.extend((0..depth).map(|_| vec![0]));
        Self::unchecked(parents, vec![0; depth + 1], 1, 1).expect("well formed")
    }

    pub fn depth(&self) -> usize {
        self.parents.len() - 1
    }

    pub fn period(&self) -> usize {
        self.period
    }

    pub fn cycle_len(&self) -> usize {
        self.cycle_len
    }

    pub fn level_sizes(&self) -> Vec<usize> {
        self.parents.iter().map(Vec::len).collect()
    }

    pub fn size(&self) -> usize {
        self.parents.iter().map(Vec::len).sum()
    }

    /// Canonical code; equal codes mean isomorphic trees.
    pub fn code(&self) -> &[u8] {
        &self.code
    }

    fn offsets(&self) -> Vec<usize> {
        let mut off = Vec::with_capacity(self.parents.len() + 1);
        let mut acc = 0;
        for lvl in &self.parents {
            off.push(acc);
            acc += lvl.len();
        }
        off.push(acc);
        off
    }

    /// Flattened children lists, node `j` of level `k` being `offsets[k] + j`.
    fn children(&self) -> (Vec<usize>, Vec<Vec<usize>>) {
        let off = self.offsets();
        let mut children = vec![Vec::new(); off[self.parents.len()]];
        for k in 1..self.parents.len() {
            for (j, &p) in self.parents[k].iter().enumerate() {
                children[off[k - 1] + p].push(off[k] + j);
            }
        }
        (off, children)
    }

    fn compute_code(&self) -> Vec<u8> {
        let (off, children) = self.children();
        let n = children.len();
        let mut labels = vec![0u8; n];
        for (k, &s) in self.spine.iter().enumerate() {
            labels[off[k] + s] = 1;
        }
        let mut height = vec![0usize; n];
        for v in (0..n).rev() {
            for &c in &children[v] {
                height[v] = height[v].max(height[c] + 1);
            }
        }
        let ranks = forest_ranks(&children, &labels, &height);
        let mut out = Vec::with_capacity(2 * n);
        emit_tree(0, &children, &ranks, &labels, &mut out);
        out
    }

    /// The first `depth + 1` levels.
    pub fn truncate(&self, depth: usize) -> UnrollTree {
        let d = depth.min(self.depth());
        let mut t = Self::unchecked(
            self.parents[..=d].to_vec(),
            self.spine[..=d].to_vec(),
            self.cycle_len,
            self.period,
        )
        .expect("prefix of a valid tree");
        if d < self.depth() {
            t.period = t.detect_period();
        }
        t
    }

    /// The subtree hanging from the spine node of level `level`.
    fn spine_subtree(&self, level: usize) -> UnrollTree {
        let mut parents = vec![vec![NO_PARENT]];
        let mut spine = vec![0];
        // new index of each kept node on the previous level
        let mut prev: Vec<usize> = vec![NO_PARENT; self.parents[level].len()];
        prev[self.spine[level]] = 0;
        for k in level + 1..self.parents.len() {
            let mut map = vec![NO_PARENT; self.parents[k].len()];
            let mut lvl = Vec::new();
            for (j, &p) in self.parents[k].iter().enumerate() {
                if prev[p] != NO_PARENT {
                    map[j] = lvl.len();
                    lvl.push(prev[p]);
                }
            }
            spine.push(map[self.spine[k]]);
            parents.push(lvl);
            prev = map;
        }
        Self::unchecked(parents, spine, self.cycle_len, self.period).expect("subtree of a valid tree")
    }

    /// Smallest divisor `p` of the cycle length such that the subtree at
    /// spine level `p` equals the tree truncated to the same depth.
    fn detect_period(&self) -> usize {
        let d = self.depth();
        for p in 1..=self.cycle_len.min(d) {
            if !self.cycle_len.is_multiple_of(p) {
                continue;
            }
            let shifted = self.spine_subtree(p);
            if shifted.code == self.truncate_code(d - p) {
                return p;
            }
        }
        self.cycle_len
    }

    fn truncate_code(&self, depth: usize) -> Vec<u8> {
        Self::unchecked(
            self.parents[..=depth].to_vec(),
            self.spine[..=depth].to_vec(),
            self.cycle_len,
            1,
        )
        .expect("prefix of a valid tree")
        .code
    }
}

impl PartialEq for UnrollTree {
    fn eq(&self, other: &Self) -> bool {
        self.code == other.code
    }
}

impl Eq for UnrollTree {}

impl Hash for UnrollTree {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.code.hash(state);
    }
}

impl PartialOrd for UnrollTree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for UnrollTree {
    fn cmp(&self, other: &Self) -> Ordering {
        self.level_sizes()
            .cmp(&other.level_sizes())
            .then_with(|| self.code.cmp(&other.code))
    }
}

/// Total order on trees of equal depth: level sizes lexicographically, then
/// canonical codes. The size part is compatible with [`tree_product`].
pub fn tree_compare(t1: &UnrollTree, t2: &UnrollTree) -> Result<Ordering> {
    if t1.depth() != t2.depth() {
        return Err(Error::DepthMismatch(t1.depth(), t2.depth()));
    }
    Ok(t1.cmp(t2))
}

/// Levelwise product: level-`k` nodes are pairs of level-`k` nodes.
pub fn tree_product(t1: &UnrollTree, t2: &UnrollTree) -> Result<UnrollTree> {
    if t1.depth() != t2.depth() {
        return Err(Error::DepthMismatch(t1.depth(), t2.depth()));
    }
    let mut parents = Vec::with_capacity(t1.parents.len());
    let mut spine = Vec::with_capacity(t1.parents.len());
    for k in 0..t1.parents.len() {
        let (l1, l2) = (&t1.parents[k], &t2.parents[k]);
        let mut lvl = Vec::with_capacity(l1.len() * l2.len());
        if k == 0 {
            lvl.push(NO_PARENT);
        } else {
            let above2 = t2.parents[k - 1].len();
            for &p1 in l1 {
                lvl.extend(l2.iter().map(|&p2| p1 * above2 + p2));
            }
        }
        spine.push(t1.spine[k] * l2.len() + t2.spine[k]);
        parents.push(lvl);
    }
    UnrollTree::from_levels(parents, spine, t1.cycle_len.lcm(&t2.cycle_len))
}

/// `t` multiplied by itself `r` times (`r = 0` gives the bare spine).
pub fn tree_power(t: &UnrollTree, r: usize) -> UnrollTree {
    let mut acc = UnrollTree::bare_spine(t.depth());
    for _ in 0..r {
        acc = tree_product(&acc, t).expect("equal depths");
    }
    acc
}

/// The unroll trees of a component, one per cycle state in cycle order.
///
/// All trees share the component's period: the least rotation leaving the
/// sequence of hanging in-trees unchanged.
pub fn unroll_truncated(c: &Component, depth: usize) -> Vec<UnrollTree> {
    let period = component_period(c);
    (0..c.cycle_len())
        .map(|i| unroll_at(&c.system, &c.cycle, i, depth, period))
        .collect()
}

/// The first `period` trees of a component: all of its distinct trees.
pub fn distinct_trees(c: &Component, depth: usize) -> Vec<UnrollTree> {
    let period = component_period(c);
    (0..period)
        .map(|i| unroll_at(&c.system, &c.cycle, i, depth, period))
        .collect()
}

/// All unroll trees of a system, component by component.
pub fn unroll(a: &Fdds, depth: usize) -> Vec<UnrollTree> {
    a.components()
        .iter()
        .flat_map(|c| unroll_truncated(c, depth))
        .collect()
}

fn component_period(c: &Component) -> usize {
    let an = canon::analyze(&c.system);
    let seq: Vec<u32> = c.cycle.iter().map(|&v| an.ranks[v]).collect();
    canon::rotation_period(&seq)
}

fn unroll_at(sys: &Fdds, cycle: &[usize], pos: usize, depth: usize, period: usize) -> UnrollTree {
    let n = sys.len();
    let mut pre = vec![Vec::new(); n];
    for (v, &s) in sys.succ().iter().enumerate() {
        pre[s].push(v);
    }
    let len = cycle.len();
    let mut parents = vec![vec![NO_PARENT]];
    let mut spine = vec![0];
    let mut states = vec![cycle[pos]];
    for k in 1..=depth {
        let spine_state = cycle[(pos + len * k - k) % len];
        let mut lvl = Vec::new();
        let mut next = Vec::new();
        let mut sp = 0;
        for (j, &u) in states.iter().enumerate() {
            for &w in &pre[u] {
                if w == spine_state && j == spine[k - 1] {
                    sp = lvl.len();
                }
                lvl.push(j);
                next.push(w);
            }
        }
        spine.push(sp);
        parents.push(lvl);
        states = next;
    }
    UnrollTree::unchecked(parents, spine, len, period).expect("unroll of a valid component")
}

/// Rebuild the connected system with cycle length `len` whose unroll trees
/// are the shifts of `t`.
pub fn deroll(t: &UnrollTree, len: usize) -> Result<Fdds> {
    if len == 0 || !len.is_multiple_of(t.period) {
        return Err(Error::PeriodMismatch {
            period: t.period,
            len,
        });
    }
    let p = t.period;
    let d = t.depth();
    if p > d {
        return Err(Error::TreeTooShallow(d));
    }
    let (off, children) = t.children();
    let level_of = |v: usize| off.partition_point(|&o| o <= v) - 1;
    // Hanging forests of the first `p` spine nodes, as (node, parent) lists.
    let mut hanging: Vec<Vec<usize>> = Vec::with_capacity(p);
    for j in 0..p {
        let s = off[j] + t.spine[j];
        let s_next = off[j + 1] + t.spine[j + 1];
        let mut nodes = Vec::new();
        let mut stack: Vec<usize> = children[s].iter().copied().filter(|&c| c != s_next).collect();
        while let Some(v) = stack.pop() {
            if level_of(v) == d {
                return Err(Error::TreeTooShallow(d));
            }
            nodes.push(v);
            stack.extend(&children[v]);
        }
        nodes.sort_unstable();
        hanging.push(nodes);
    }
    let mut succ: Vec<usize> = (0..len).map(|i| (i + 1) % len).collect();
    for i in 0..len {
        // cycle state i sits on spine level (len - i) % len
        let j = ((len - i) % len) % p;
        let s = off[j] + t.spine[j];
        let mut new_id = BTreeMap::new();
        new_id.insert(s, i);
        for &v in &hanging[j] {
            let parent = off[level_of(v) - 1] + t.parents[level_of(v)][v - off[level_of(v)]];
            let id = succ.len();
            new_id.insert(v, id);
            succ.push(new_id[&parent]);
        }
    }
    Ok(Fdds::from_vec_unchecked(succ))
}

fn int_root(x: usize, r: usize) -> Option<usize> {
    if r == 1 {
        return Some(x);
    }
    let mut lo = 0usize;
    let mut hi = x.max(1);
    while lo < hi {
        let mid = lo + (hi - lo).div_ceil(2);
        match mid.checked_pow(r as u32) {
            Some(v) if v <= x => lo = mid,
            _ => hi = mid - 1,
        }
    }
    (lo.checked_pow(r as u32) == Some(x)).then_some(lo)
}

/// Per-level statistics of a tree used to prune the division search.
struct LevelCounts {
    /// Children of every node of level `k`.
    counts: Vec<Vec<usize>>,
    spine_counts: Vec<usize>,
}

impl LevelCounts {
    fn new(t: &UnrollTree) -> Self {
        let d = t.depth();
        let mut counts: Vec<Vec<usize>> = t.parents.iter().map(|l| vec![0; l.len()]).collect();
        for k in 1..=d {
            for &p in &t.parents[k] {
                counts[k - 1][p] += 1;
            }
        }
        let spine_counts = (0..=d).map(|k| counts[k][t.spine[k]]).collect();
        LevelCounts { counts, spine_counts }
    }
}

/// Search limits for [`tree_divide`].
#[derive(Debug, Clone, Copy)]
pub struct DivideLimits {
    /// Quotients kept at most.
    pub max_results: usize,
    /// Child-count assignments tried per level before giving up.
    pub max_assignments: usize,
}

impl Default for DivideLimits {
    fn default() -> Self {
        DivideLimits {
            max_results: 4,
            max_assignments: 200_000,
        }
    }
}

/// All trees `x` (up to isomorphism, at most `limits.max_results`) with
/// `a ⊗ x^r ≅ t`, found level by level: each level's child counts are
/// enumerated under the child-count multiset of `t` and every extension is
/// checked against `t` truncated to the same depth.
pub fn tree_divide(t: &UnrollTree, a: &UnrollTree, r: usize, limits: DivideLimits) -> Result<Vec<UnrollTree>> {
    if t.depth() != a.depth() {
        return Err(Error::DepthMismatch(t.depth(), a.depth()));
    }
    if r == 0 {
        return Err(Error::InvalidArgument("exponent must be positive".into()));
    }
    let d = t.depth();
    let (ts, as_) = (t.level_sizes(), a.level_sizes());
    let mut sizes = Vec::with_capacity(d + 1);
    for k in 0..=d {
        if ts[k] % as_[k] != 0 {
            return Ok(Vec::new());
        }
        match int_root(ts[k] / as_[k], r) {
            Some(m) => sizes.push(m),
            None => return Ok(Vec::new()),
        }
    }
    let search = Division {
        t,
        a,
        r,
        sizes,
        tc: LevelCounts::new(t),
        ac: LevelCounts::new(a),
        limits,
        cycle_len: t.cycle_len,
    };
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    search.extend(vec![vec![NO_PARENT]], vec![0], &mut out, &mut seen)?;
    Ok(out)
}

struct Division<'a> {
    t: &'a UnrollTree,
    a: &'a UnrollTree,
    r: usize,
    sizes: Vec<usize>,
    tc: LevelCounts,
    ac: LevelCounts,
    limits: DivideLimits,
    cycle_len: usize,
}

type Multiset = BTreeMap<usize, usize>;

impl Division<'_> {
    fn extend(
        &self,
        parents: Vec<Vec<usize>>,
        spine: Vec<usize>,
        out: &mut Vec<UnrollTree>,
        seen: &mut HashSet<Vec<u8>>,
    ) -> Result<()> {
        let k = parents.len() - 1;
        if out.len() >= self.limits.max_results {
            return Ok(());
        }
        if k == self.t.depth() {
            let x = UnrollTree::from_levels(parents, spine, self.cycle_len)?;
            if seen.insert(x.code.clone()) {
                out.push(x);
            }
            return Ok(());
        }
        let assignments = self.level_assignments(&parents, &spine)?;
        let target = self.t.truncate_code(k + 1);
        let a_trunc = self.a.truncate(k + 1);
        let mut level_seen = HashSet::new();
        for counts in assignments {
            let mut lvl = Vec::with_capacity(self.sizes[k + 1]);
            let mut sp = NO_PARENT;
            for (v, &c) in counts.iter().enumerate() {
                if v == spine[k] {
                    sp = lvl.len();
                }
                lvl.extend(std::iter::repeat_n(v, c));
            }
            let mut p2 = parents.clone();
            p2.push(lvl);
            let mut s2 = spine.clone();
            s2.push(sp);
            let x = UnrollTree::unchecked(p2, s2, self.cycle_len, 1)?;
            if !level_seen.insert(x.code.clone()) {
                continue;
            }
            let prod = tree_product(&a_trunc, &tree_power(&x, self.r))?;
            if prod.code == target {
                self.extend(x.parents, x.spine, out, seen)?;
                if out.len() >= self.limits.max_results {
                    break;
                }
            }
        }
        Ok(())
    }

    /// Child counts for the nodes of the last level of `x` such that every
    /// node of `a ⊗ x^r` on that level takes its count from target nodes of
    /// the same class.
    fn level_assignments(&self, parents: &[Vec<usize>], spine: &[usize]) -> Result<Vec<Vec<usize>>> {
        let k = parents.len() - 1;
        let (level, n) = (&parents[k], parents[k].len());
        let total = self.sizes[k + 1];
        let spine_c = {
            let (ts, as_) = (self.tc.spine_counts[k], self.ac.spine_counts[k]);
            if as_ == 0 || ts % as_ != 0 {
                return Ok(Vec::new());
            }
            match int_root(ts / as_, self.r) {
                Some(c) if c >= 1 && c <= total => c,
                _ => return Ok(Vec::new()),
            }
        };
        let x = UnrollTree::unchecked(parents.to_vec(), spine.to_vec(), self.cycle_len, 1)?;
        let prod = tree_product(&self.a.truncate(k), &tree_power(&x, self.r))?;
        let mut classes = last_level_classes(&[&prod, &self.t.truncate(k)]);
        let mut pools: HashMap<usize, Multiset> = HashMap::new();
        for (j, &c) in self.tc.counts[k].iter().enumerate() {
            *pools.entry(classes[1][j]).or_default().entry(c).or_default() += 1;
        }
        // Assign the spine first, then the others in level order.
        let mut order = vec![spine[k]];
        order.extend((0..n).filter(|&v| v != spine[k]));
        let mut st = AssignState {
            counts: vec![0; n],
            done: Vec::with_capacity(n),
            classes: classes.swap_remove(0),
            pools,
            out: Vec::new(),
            budget: self.limits.max_assignments,
        };
        self.assign(&order, 0, total, spine_c, level, &self.ac.counts[k], &mut st);
        Ok(st.out)
    }

    #[allow(clippy::too_many_arguments)]
    fn assign(
        &self,
        order: &[usize],
        idx: usize,
        remaining: usize,
        spine_c: usize,
        level: &[usize],
        a_counts: &[usize],
        st: &mut AssignState,
    ) {
        if st.budget == 0 {
            return;
        }
        if idx == order.len() {
            if remaining == 0 && st.pools.values().flat_map(|p| p.values()).all(|&m| m == 0) {
                st.out.push(st.counts.clone());
            }
            return;
        }
        let v = order[idx];
        let (lo, hi) = if idx == 0 {
            (spine_c, spine_c)
        } else {
            // Non-spine leaves sharing a parent are interchangeable.
            let prev = order[idx - 1];
            let cap = if idx > 1 && level[prev] == level[v] { st.counts[prev] } else { remaining };
            (0, cap.min(remaining))
        };
        if lo > hi {
            return;
        }
        let n = level.len();
        let block = n.pow(self.r as u32);
        for c in (lo..=hi).rev() {
            st.budget = st.budget.saturating_sub(1);
            if st.budget == 0 {
                return;
            }
            st.counts[v] = c;
            // r-tuples over the assigned nodes that use `v` at least once
            let tuples = new_tuples(&st.done, v, n, self.r);
            let mut taken: Vec<(usize, usize)> = Vec::new();
            let mut ok = true;
            'tuples: for &t in &tuples {
                let prod: usize = tuple_digits(t, n, self.r).map(|w| st.counts[w]).product();
                for (u, &ac) in a_counts.iter().enumerate() {
                    let class = st.classes[u * block + t];
                    let value = ac * prod;
                    match st.pools.get_mut(&class).and_then(|pool| pool.get_mut(&value)) {
                        Some(have) if *have > 0 => {
                            *have -= 1;
                            taken.push((class, value));
                        }
                        _ => {
                            ok = false;
                            break 'tuples;
                        }
                    }
                }
            }
            if ok {
                st.done.push(v);
                self.assign(order, idx + 1, remaining - c, spine_c, level, a_counts, st);
                st.done.pop();
            }
            for (class, value) in taken {
                *st.pools.get_mut(&class).and_then(|p| p.get_mut(&value)).expect("taken from") += 1;
            }
            st.counts[v] = 0;
        }
    }
}

/// Indices (base `n`, most significant first) of the `r`-tuples over
/// `done ∪ {v}` that use `v` at least once.
fn new_tuples(done: &[usize], v: usize, n: usize, r: usize) -> Vec<usize> {
    fn go(done: &[usize], v: usize, n: usize, left: usize, acc: usize, has_v: bool, out: &mut Vec<usize>) {
        if left == 0 {
            if has_v {
                out.push(acc);
            }
            return;
        }
        for &w in done.iter().chain(std::iter::once(&v)) {
            go(done, v, n, left - 1, acc * n + w, has_v || w == v, out);
        }
    }
    let mut out = Vec::new();
    go(done, v, n, r, 0, false, &mut out);
    out
}

/// The entries of tuple index `t` (base `n`, `r` digits).
fn tuple_digits(mut t: usize, n: usize, r: usize) -> impl Iterator<Item = usize> {
    (0..r).map(move |_| {
        let d = t % n;
        t /= n;
        d
    })
}

/// Isomorphism classes of the deepest-level nodes of trees of equal depth,
/// comparable across the trees: two nodes share a class exactly when their
/// root paths pass through subtrees of the same shapes.
fn last_level_classes(trees: &[&UnrollTree]) -> Vec<Vec<usize>> {
    let mut shapes: HashMap<(bool, Vec<usize>), usize> = HashMap::new();
    let mut paths: HashMap<(usize, usize), usize> = HashMap::new();
    trees
        .iter()
        .map(|t| {
            let (off, children) = t.children();
            let n = children.len();
            let mut on_spine = vec![false; n];
            for (k, &s) in t.spine.iter().enumerate() {
                on_spine[off[k] + s] = true;
            }
            let mut shape = vec![0; n];
            for v in (0..n).rev() {
                let mut kids: Vec<usize> = children[v].iter().map(|&c| shape[c]).collect();
                kids.sort_unstable();
                let next = shapes.len();
                shape[v] = *shapes.entry((on_spine[v], kids)).or_insert(next);
            }
            let mut path = vec![0; n];
            let next = paths.len();
            path[0] = *paths.entry((usize::MAX, shape[0])).or_insert(next);
            for k in 1..t.parents.len() {
                for (j, &p) in t.parents[k].iter().enumerate() {
                    let next = paths.len();
                    path[off[k] + j] = *paths.entry((path[off[k - 1] + p], shape[off[k] + j])).or_insert(next);
                }
            }
            let d = t.parents.len() - 1;
            path[off[d]..off[d + 1]].to_vec()
        })
        .collect()
}

struct AssignState {
    counts: Vec<usize>,
    /// Nodes assigned so far, excluding the current one.
    done: Vec<usize>,
    /// Class of every last-level node of `a ⊗ x^r`.
    classes: Vec<usize>,
    /// Target child counts still unclaimed, per class.
    pools: HashMap<usize, Multiset>,
    out: Vec<Vec<usize>>,
    budget: usize,
}
