//! Explicit finite dynamical systems given by their successor table.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::par::{self, Exec};

/// Largest product computed without an explicit cap.
pub const DEFAULT_PRODUCT_CAP: usize = 10_000_000;

/// A finite dynamical system: state `i` moves to `succ[i]`.
///
/// The empty system is the semiring zero and the single fixed point is the
/// semiring one. Equality is structural; use [`crate::canon`] for
/// isomorphism.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Fdds {
    succ: Vec<usize>,
}

/// One weakly connected component of a parent [`Fdds`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    /// Indices of the component's states in the parent, ascending.
    pub states: Vec<usize>,
    /// The component on its own, with state `k` standing for `states[k]`.
    pub system: Fdds,
    /// Local indices of the cycle, with `cycle[i + 1] = succ(cycle[i])`.
    pub cycle: Vec<usize>,
    /// Height of the in-tree hanging from each cycle state, in cycle order.
    pub tree_heights: Vec<usize>,
}

impl Component {
    pub fn cycle_len(&self) -> usize {
        self.cycle.len()
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }
}

/// Cycle/tree decomposition shared by the structural queries.
#[derive(Debug, Clone)]
pub(crate) struct Structure {
    pub comp_of: Vec<usize>,
    /// Cycles in successor order, one per component, indexed by component id.
    pub cycles: Vec<Vec<usize>>,
    /// Height of the in-tree rooted at each state (cycle edges excluded).
    pub height: Vec<usize>,
    /// Transient states, every state listed after all of its preimages.
    pub peel_order: Vec<usize>,
}

impl Fdds {
    /// Build a system from a successor table, checking every entry.
    pub fn new(succ: Vec<usize>) -> Result<Self> {
        let len = succ.len();
        if let Some(&index) = succ.iter().find(|&&s| s >= len) {
            return Err(Error::IndexOutOfRange { index, len });
        }
        Ok(Fdds { succ })
    }

    pub(crate) fn from_vec_unchecked(succ: Vec<usize>) -> Self {
        debug_assert!(succ.iter().all(|&s| s < succ.len()));
        Fdds { succ }
    }

    pub fn zero() -> Self {
        Fdds { succ: Vec::new() }
    }

    pub fn one() -> Self {
        Fdds { succ: vec![0] }
    }

    /// The cycle `C_len`; `len = 0` gives the empty system.
    pub fn cycle(len: usize) -> Self {
        Fdds {
            succ: (0..len).map(|i| (i + 1) % len).collect(),
        }
    }

    /// `count` disjoint copies of `C_len`.
    pub fn cycles(count: usize, len: usize) -> Self {
        let mut succ = Vec::with_capacity(count * len);
        for c in 0..count {
            let base = c * len;
            succ.extend((0..len).map(|i| base + (i + 1) % len));
        }
        Fdds { succ }
    }

    pub fn len(&self) -> usize {
        self.succ.len()
    }

    pub fn is_empty(&self) -> bool {
        self.succ.is_empty()
    }

    pub fn succ(&self) -> &[usize] {
        &self.succ
    }

    /// Parse a successor table; lines starting with `#` are comments.
    pub fn parse(text: &str) -> Result<Self> {
        let mut succ = Vec::new();
        for line in text.lines() {
            if line.trim_start().starts_with('#') {
                continue;
            }
            for tok in line.split_whitespace() {
                let v = tok
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("not a state index: {tok:?}")))?;
                succ.push(v);
            }
        }
        Fdds::new(succ)
    }

    /// Disjoint union.
    pub fn sum(&self, other: &Fdds) -> Fdds {
        let off = self.len();
        let mut succ = Vec::with_capacity(off + other.len());
        succ.extend_from_slice(&self.succ);
        succ.extend(other.succ.iter().map(|&s| s + off));
        Fdds { succ }
    }

    /// Direct product, capped at [`DEFAULT_PRODUCT_CAP`] states.
    pub fn product(&self, other: &Fdds) -> Result<Fdds> {
        self.product_with(other, DEFAULT_PRODUCT_CAP, Exec::best())
    }

    /// Direct product: state `(u, v)` is numbered `u * |other| + v`.
    pub fn product_with(&self, other: &Fdds, cap: usize, exec: Exec) -> Result<Fdds> {
        let (na, nb) = (self.len(), other.len());
        let size = na
            .checked_mul(nb)
            .filter(|&s| s <= cap)
            .ok_or_else(|| Error::SizeOverflow {
                size: (na as u128 * nb as u128).to_string(),
                cap: cap.to_string(),
            })?;
        let mut succ = vec![0usize; size];
        if nb == 0 {
            return Ok(Fdds { succ });
        }
        // Small products are not worth a thread hop.
        let exec = if size < 1 << 14 { Exec::Sequential } else { exec };
        let (sa, sb) = (&self.succ, &other.succ);
        par::fill_chunks(exec, &mut succ, nb, |u, row| {
            let base = sa[u] * nb;
            for (slot, &v) in row.iter_mut().zip(sb) {
                *slot = base + v;
            }
        });
        Ok(Fdds { succ })
    }

    pub(crate) fn structure(&self) -> Structure {
        let n = self.len();
        let mut indeg = vec![0usize; n];
        for &s in &self.succ {
            indeg[s] += 1;
        }
        let mut peel_order: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut head = 0;
        while head < peel_order.len() {
            let s = self.succ[peel_order[head]];
            indeg[s] -= 1;
            if indeg[s] == 0 {
                peel_order.push(s);
            }
            head += 1;
        }
        let mut on_cycle = vec![true; n];
        for &v in &peel_order {
            on_cycle[v] = false;
        }
        let mut comp_of = vec![usize::MAX; n];
        let mut cycles = Vec::new();
        for start in 0..n {
            if !on_cycle[start] || comp_of[start] != usize::MAX {
                continue;
            }
            let id = cycles.len();
            let mut cyc = vec![start];
            comp_of[start] = id;
            let mut v = self.succ[start];
            while v != start {
                comp_of[v] = id;
                cyc.push(v);
                v = self.succ[v];
            }
            cycles.push(cyc);
        }
        for &v in peel_order.iter().rev() {
            comp_of[v] = comp_of[self.succ[v]];
        }
        let mut height = vec![0usize; n];
        for &v in &peel_order {
            let s = self.succ[v];
            height[s] = height[s].max(height[v] + 1);
        }
        Structure {
            comp_of,
            cycles,
            height,
            peel_order,
        }
    }

    /// Weakly connected components, ordered by their smallest state.
    pub fn components(&self) -> Vec<Component> {
        let st = self.structure();
        self.components_from(&st)
    }

    pub(crate) fn components_from(&self, st: &Structure) -> Vec<Component> {
        let mut groups: Vec<Vec<usize>> = vec![Vec::new(); st.cycles.len()];
        for v in 0..self.len() {
            groups[st.comp_of[v]].push(v);
        }
        let mut comps: Vec<Component> = groups
            .into_iter()
            .zip(&st.cycles)
            .map(|(states, cyc)| {
                let system = self.induced(&states);
                let local = |g: usize| states.binary_search(&g).expect("state in component");
                let cycle: Vec<usize> = cyc.iter().map(|&g| local(g)).collect();
                let tree_heights = cyc.iter().map(|&g| st.height[g]).collect();
                Component {
                    states,
                    system,
                    cycle,
                    tree_heights,
                }
            })
            .collect();
        comps.sort_by_key(|c| c.states[0]);
        comps
    }

    /// Sub-system on a set of states closed under the successor map.
    /// `states` must be sorted; state `states[k]` becomes `k`.
    pub(crate) fn induced(&self, states: &[usize]) -> Fdds {
        let succ = states
            .iter()
            .map(|&g| {
                states
                    .binary_search(&self.succ[g])
                    .expect("state set closed under succ")
            })
            .collect();
        Fdds { succ }
    }

    /// Rename state `i` to `perm[i]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Fdds> {
        let n = self.len();
        if perm.len() != n {
            return Err(Error::InvalidArgument("permutation length".into()));
        }
        let mut succ = vec![usize::MAX; n];
        for (i, &s) in self.succ.iter().enumerate() {
            let slot = &mut succ[*perm.get(i).filter(|&&p| p < n).ok_or_else(|| {
                Error::InvalidArgument("not a permutation".into())
            })?];
            if *slot != usize::MAX {
                return Err(Error::InvalidArgument("not a permutation".into()));
            }
            *slot = perm[s];
        }
        Ok(Fdds { succ })
    }

    /// Set of cycle lengths and its minimum.
    pub fn cycle_lengths(&self) -> Result<(BTreeSet<usize>, usize)> {
        let lens: BTreeSet<usize> = self.structure().cycles.iter().map(Vec::len).collect();
        let min = *lens.iter().next().ok_or(Error::EmptySystem)?;
        Ok((lens, min))
    }

    /// Smallest cycle length.
    pub fn min_cycle_len(&self) -> Result<usize> {
        self.cycle_lengths().map(|(_, m)| m)
    }

    /// True iff the smallest cycle length divides every cycle length.
    pub fn is_pseudo_cancelable(&self) -> Result<bool> {
        let (lens, min) = self.cycle_lengths()?;
        Ok(lens.iter().all(|l| l % min == 0))
    }

    pub fn has_fixed_point(&self) -> bool {
        self.succ.iter().enumerate().any(|(i, &s)| i == s)
    }

    /// True iff the successor map is a permutation (no transient states).
    pub fn is_sum_of_cycles(&self) -> bool {
        let mut seen = vec![false; self.len()];
        for &s in &self.succ {
            if std::mem::replace(&mut seen[s], true) {
                return false;
            }
        }
        true
    }

    /// Largest in-tree height over all cycle states.
    pub fn max_height(&self) -> usize {
        self.structure().height.into_iter().max().unwrap_or(0)
    }

    /// Components whose cycle length divides `p`.
    pub fn restrict_dividing(&self, p: usize) -> Fdds {
        self.restrict_by(|len| p > 0 && p.is_multiple_of(len))
    }

    /// Components whose cycle length is exactly `p`.
    pub fn restrict_exact(&self, p: usize) -> Fdds {
        self.restrict_by(|len| len == p)
    }

    fn restrict_by(&self, keep: impl Fn(usize) -> bool) -> Fdds {
        let st = self.structure();
        let states: Vec<usize> = (0..self.len())
            .filter(|&v| keep(st.cycles[st.comp_of[v]].len()))
            .collect();
        self.induced(&states)
    }
}

impl fmt::Display for Fdds {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.succ.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

impl FromStr for Fdds {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Fdds::parse(s)
    }
}
