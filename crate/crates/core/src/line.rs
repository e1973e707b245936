//! Exact global validity for SFTs on the line via the higher-block
//! transition graph.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{input, Error, Result};
use crate::group::{Element, Group};
use crate::pattern::{FiniteDomain, Pattern, Sym};
use crate::sft::Sft;

/// States are the locally valid words of length `L = max(w - 1, 1)` where
/// `w` is the window width; edges are locally valid words of length `L + 1`.
#[derive(Clone, Debug)]
pub struct LineAutomaton {
    pub n_sym: usize,
    pub len: usize,
    pub states: Vec<Vec<Sym>>,
    pub succ: Vec<Vec<usize>>,
    pub essential: Vec<bool>,
    /// `mask[k][c]`: states with symbol `c` at position `k`.
    mask: Vec<Vec<Vec<u64>>>,
    ess_mask: Vec<u64>,
    words: usize,
}

fn bit(set: &[u64], i: usize) -> bool {
    set[i / 64] >> (i % 64) & 1 == 1
}

fn set_bit(set: &mut [u64], i: usize) {
    set[i / 64] |= 1 << (i % 64);
}

impl LineAutomaton {
    pub fn new(x: &Sft, budget: u64) -> Result<LineAutomaton> {
        if x.group != Group::Line {
            return input("line automaton requires the line group");
        }
        let (lo, hi) = match (x.window.get(0), x.window.get(x.window.len() - 1)) {
            (Element::Line(a), Element::Line(b)) => (*a, *b),
            _ => unreachable!(),
        };
        let width = (hi - lo + 1) as usize;
        let len = core::cmp::max(width.saturating_sub(1), 1);
        let n_sym = x.size();
        let total = (n_sym as u128).checked_pow(len as u32 + 1).unwrap_or(u128::MAX);
        if total > budget as u128 {
            return Err(Error::Budget { what: format!("transition graph with words of length {}", len + 1), bound: budget });
        }
        let mut states: Vec<Vec<Sym>> = Vec::new();
        x.for_each_locally_valid(&FiniteDomain::interval(0, len as i64 - 1), budget, |w| {
            states.push(w.to_vec());
            true
        })?;
        let index = |w: &[Sym]| states.binary_search_by(|s| s.as_slice().cmp(w)).ok();
        let mut succ = vec![Vec::new(); states.len()];
        let mut edges: Vec<Vec<Sym>> = Vec::new();
        x.for_each_locally_valid(&FiniteDomain::interval(0, len as i64), budget, |w| {
            edges.push(w.to_vec());
            true
        })?;
        for w in &edges {
            if let (Some(a), Some(b)) = (index(&w[..len]), index(&w[1..])) {
                succ[a].push(b);
            }
        }
        let n = states.len();
        let mut alive = vec![true; n];
        loop {
            let mut indeg = vec![0usize; n];
            let mut outdeg = vec![0usize; n];
            for a in 0..n {
                if !alive[a] {
                    continue;
                }
                for &b in &succ[a] {
                    if alive[b] {
                        outdeg[a] += 1;
                        indeg[b] += 1;
                    }
                }
            }
            let mut changed = false;
            for a in 0..n {
                if alive[a] && (indeg[a] == 0 || outdeg[a] == 0) {
                    alive[a] = false;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        let words = n.div_ceil(64).max(1);
        let mut mask = vec![vec![vec![0u64; words]; n_sym]; len];
        for (i, s) in states.iter().enumerate() {
            for (k, &c) in s.iter().enumerate() {
                set_bit(&mut mask[k][c as usize], i);
            }
        }
        let mut ess_mask = vec![0u64; words];
        for (i, &a) in alive.iter().enumerate() {
            if a {
                set_bit(&mut ess_mask, i);
            }
        }
        Ok(LineAutomaton { n_sym, len, states, succ, essential: alive, mask, ess_mask, words })
    }

    pub fn is_empty(&self) -> bool {
        !self.essential.iter().any(|&e| e)
    }

    fn constrained(&self, p: &Pattern, i: i64, allowed: &[u64]) -> Vec<u64> {
        let mut cur = allowed.to_vec();
        for k in 0..self.len {
            if let Some(c) = p.get(&Element::Line(i + k as i64)) {
                if c as usize >= self.n_sym {
                    return vec![0; self.words];
                }
                for (x, m) in cur.iter_mut().zip(&self.mask[k][c as usize]) {
                    *x &= m;
                }
            }
        }
        cur
    }

    fn step(&self, cur: &[u64]) -> Vec<u64> {
        let mut next = vec![0u64; self.words];
        for a in 0..self.states.len() {
            if bit(cur, a) {
                for &b in &self.succ[a] {
                    set_bit(&mut next, b);
                }
            }
        }
        next
    }

    fn span(p: &Pattern) -> Option<(i64, i64)> {
        let lo = match p.domain.as_slice().first()? {
            Element::Line(a) => *a,
            _ => return None,
        };
        let hi = match p.domain.as_slice().last()? {
            Element::Line(a) => *a,
            _ => return None,
        };
        Some((lo, hi))
    }

    /// Whether `p` (cells anywhere on the line) extends to a configuration.
    pub fn valid(&self, p: &Pattern) -> bool {
        self.forward(p).map_or(false, |sets| sets.last().map_or(false, |s| s.iter().any(|&w| w != 0)))
    }

    fn forward(&self, p: &Pattern) -> Option<Vec<Vec<u64>>> {
        let (lo, hi) = match Self::span(p) {
            Some(s) => s,
            None => return Some(vec![self.ess_mask.clone()]),
        };
        self.sweep(p, lo - self.len as i64 + 1, hi, &self.ess_mask)
    }

    /// Reachable state sets for states starting at `first..=last`, every
    /// state drawn from `allowed`.
    fn sweep(&self, p: &Pattern, first: i64, last: i64, allowed: &[u64]) -> Option<Vec<Vec<u64>>> {
        let mut sets = Vec::with_capacity((last - first + 1).max(1) as usize);
        let mut cur = self.constrained(p, first, allowed);
        if cur.iter().all(|&w| w == 0) {
            return None;
        }
        sets.push(cur.clone());
        for i in first + 1..=last {
            let mut next = self.step(&cur);
            for (x, m) in next.iter_mut().zip(self.constrained(p, i, allowed)) {
                *x &= m;
            }
            if next.iter().all(|&w| w == 0) {
                return None;
            }
            sets.push(next.clone());
            cur = next;
        }
        Some(sets)
    }

    /// Word spelled by a state path whose first state starts at `first`.
    fn trace(&self, sets: &[Vec<u64>], first: i64) -> Option<Pattern> {
        let last = sets.last()?;
        let mut s = (0..self.states.len()).find(|&a| bit(last, a))?;
        let mut path = vec![s];
        for k in (0..sets.len() - 1).rev() {
            s = (0..self.states.len()).find(|&a| bit(&sets[k], a) && self.succ[a].contains(&s))?;
            path.push(s);
        }
        path.reverse();
        let mut word: Vec<Sym> = self.states[path[0]].clone();
        for &st in &path[1..] {
            word.push(*self.states[st].last().unwrap());
        }
        Some(Pattern::from_cells(word.into_iter().enumerate().map(|(i, c)| (Element::Line(first + i as i64), c))))
    }

    /// A locally valid word on `[lo, hi]` agreeing with `p`, if any. The
    /// interval must hold at least one state.
    pub fn local_extension(&self, p: &Pattern, lo: i64, hi: i64) -> Option<Pattern> {
        let last = hi - self.len as i64 + 1;
        if last < lo {
            return None;
        }
        let mut all = vec![0u64; self.words];
        for i in 0..self.states.len() {
            set_bit(&mut all, i);
        }
        let sets = self.sweep(p, lo, last, &all)?;
        self.trace(&sets, lo)
    }

    /// A globally valid word on `[min D, max D]` extending `p`, if any.
    pub fn complete(&self, p: &Pattern) -> Option<Pattern> {
        let (lo, hi) = Self::span(p)?;
        let sets = self.forward(p)?;
        let word = self.trace(&sets, lo - self.len as i64 + 1)?;
        Some(word.restrict(&FiniteDomain::interval(lo, hi)))
    }

    /// Indices of essential states.
    pub fn essential_states(&self) -> Vec<usize> {
        (0..self.states.len()).filter(|&i| self.essential[i]).collect()
    }
}
