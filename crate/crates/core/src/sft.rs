//! Subshifts of finite type: definitions, local validity, enumeration and
//! global-validity oracles.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::check::{Block, Certificate};
use crate::error::{input, Error, Result};
use crate::group::{Element, Group};
use crate::line::LineAutomaton;
use crate::pattern::{FiniteDomain, Pattern, Sym};

/// Default node budget for enumerations and completions.
pub const DEFAULT_BUDGET: u64 = 50_000_000;

/// A subshift of finite type.
///
/// Forbidden patterns are stored as partial patterns on subsets of the
/// window: a pattern on the full window is forbidden iff it extends one of
/// them. [`Sft::forbidden_on_window`] materializes the full-window list.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Sft {
    pub group: Group,
    pub alphabet: Vec<String>,
    pub window: FiniteDomain,
    pub forbidden: Vec<Pattern>,
}

/// Method selector for [`Sft::globally_valid`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Exact1d,
    Bounded(usize),
    CocycleExact,
}

/// Answer of a global-validity oracle.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Validity {
    Valid,
    Invalid,
    Unknown,
}

impl Sft {
    /// Validates and normalizes an SFT so that its window contains the identity.
    pub fn new(
        group: Group,
        alphabet: Vec<String>,
        window: FiniteDomain,
        forbidden: Vec<Pattern>,
    ) -> Result<Sft> {
        if alphabet.is_empty() {
            return input("alphabet must be nonempty");
        }
        if alphabet.len() > Sym::MAX as usize {
            return input("alphabet too large");
        }
        if window.is_empty() {
            return input("window must be nonempty");
        }
        if let Some(e) = window.iter().find(|e| !group.contains(e)) {
            return input(format!("window element {e} does not belong to {group}"));
        }
        for p in &forbidden {
            if p.is_empty() {
                return input("forbidden patterns must be nonempty");
            }
            if !p.domain.is_subset(&window) {
                return input("forbidden pattern domain must lie inside the window");
            }
            if p.symbols.iter().any(|&s| s as usize >= alphabet.len()) {
                return input("forbidden pattern uses a symbol outside the alphabet");
            }
        }
        let (window, mut forbidden) = if window.contains(&group.identity()) {
            (window, forbidden)
        } else {
            let shift = window.get(0).inv();
            (
                window.translate(&shift),
                forbidden.iter().map(|p| p.translate(&shift)).collect(),
            )
        };
        forbidden.sort_by(|a, b| (&a.domain, &a.symbols).cmp(&(&b.domain, &b.symbols)));
        forbidden.dedup();
        Ok(Sft { group, alphabet, window, forbidden })
    }

    pub fn size(&self) -> usize {
        self.alphabet.len()
    }

    pub fn symbol(&self, name: &str) -> Option<Sym> {
        self.alphabet.iter().position(|a| a == name).map(|i| i as Sym)
    }

    /// Alphabet names `"0", "1", ..., "n-1"`.
    pub fn numeric_alphabet(n: usize) -> Vec<String> {
        (0..n).map(|i| i.to_string()).collect()
    }

    /// The full shift on `n` symbols.
    pub fn full(group: Group, n: usize) -> Sft {
        let w = FiniteDomain::singleton(group.identity());
        Sft::new(group, Sft::numeric_alphabet(n), w, Vec::new()).unwrap()
    }

    /// The golden mean shift: binary sequences without `11`.
    pub fn golden_mean() -> Sft {
        Sft::vertex_shift(2, &[(0, 0), (0, 1), (1, 0)])
    }

    /// A line SFT with window `{0, 1}` allowing exactly the listed adjacent pairs.
    pub fn vertex_shift(n: usize, allowed: &[(Sym, Sym)]) -> Sft {
        let mut forb = Vec::new();
        for a in 0..n as Sym {
            for b in 0..n as Sym {
                if !allowed.contains(&(a, b)) {
                    forb.push(Pattern::word(&[a, b]));
                }
            }
        }
        Sft::new(Group::Line, Sft::numeric_alphabet(n), FiniteDomain::interval(0, 1), forb).unwrap()
    }

    /// A nearest-neighbor SFT with window `{1} ∪ S`, forbidding the pair
    /// `(u, v)` at `(1, s)` whenever `forbid(s, u, v)` holds.
    pub fn nearest_neighbor(
        group: Group,
        alphabet: Vec<String>,
        forbid: impl Fn(&Element, Sym, Sym) -> bool,
    ) -> Sft {
        let n = alphabet.len() as Sym;
        let id = group.identity();
        let mut forb = Vec::new();
        for s in group.generators() {
            for u in 0..n {
                for v in 0..n {
                    if forbid(&s, u, v) {
                        forb.push(Pattern::from_cells([(id.clone(), u), (s.clone(), v)]));
                    }
                }
            }
        }
        let window = group.ball(1);
        Sft::new(group, alphabet, window, forb).unwrap()
    }

    /// Proper colorings with `k` colors: adjacent cells differ.
    pub fn coloring(group: Group, k: usize) -> Sft {
        Sft::nearest_neighbor(group, Sft::numeric_alphabet(k), |_, u, v| u == v)
    }

    /// The Burton–Steif SFT on `{-m..-1, 1..m}`: adjacent product at least -1.
    pub fn burton_steif(group: Group, m: usize) -> Sft {
        let alphabet: Vec<String> = burton_steif_values(m).iter().map(|v| v.to_string()).collect();
        let vals = burton_steif_values(m);
        Sft::nearest_neighbor(group, alphabet, |_, u, v| vals[u as usize] * vals[v as usize] <= -2)
    }

    /// Every full-window pattern extending a stored forbidden pattern.
    pub fn forbidden_on_window(&self) -> Vec<Pattern> {
        let mut out = Vec::new();
        for p in &self.forbidden {
            let free: Vec<&Element> = self.window.iter().filter(|e| !p.domain.contains(e)).collect();
            let n = self.size();
            let mut idx = vec![0usize; free.len()];
            loop {
                let cells = p
                    .cells()
                    .map(|(e, s)| (e.clone(), s))
                    .chain(free.iter().zip(&idx).map(|(e, &i)| ((*e).clone(), i as Sym)));
                out.push(Pattern::from_cells(cells));
                let mut k = 0;
                while k < idx.len() && idx[k] + 1 == n {
                    idx[k] = 0;
                    k += 1;
                }
                if k == idx.len() {
                    break;
                }
                idx[k] += 1;
            }
        }
        out.sort_by(|a, b| a.symbols.cmp(&b.symbols));
        out.dedup();
        out
    }

    fn check_symbols(&self, p: &Pattern) -> Result<()> {
        if let Some(s) = p.symbols.iter().find(|&&s| s as usize >= self.size()) {
            return input(format!("symbol index {s} outside alphabet of size {}", self.size()));
        }
        Ok(())
    }

    /// Positions `a` with `aW ⊆ dom`.
    pub fn placements(&self, dom: &FiniteDomain) -> Vec<Element> {
        dom.iter()
            .filter(|a| self.window.iter().all(|w| dom.contains(&a.mul(w))))
            .cloned()
            .collect()
    }

    /// Whether the stored forbidden pattern `core` appears at position `a` of `p`.
    pub fn core_at(&self, core: &Pattern, a: &Element, p: &Pattern) -> bool {
        core.cells().all(|(c, s)| p.get(&a.mul(c)) == Some(s))
    }

    /// No window translate inside the domain of `p` carries a forbidden pattern.
    pub fn locally_valid(&self, p: &Pattern) -> Result<bool> {
        self.check_symbols(p)?;
        Ok(self.first_violation(p).is_none())
    }

    /// The first placement and forbidden pattern found in `p`, if any.
    pub fn first_violation(&self, p: &Pattern) -> Option<(Element, usize)> {
        for a in self.placements(&p.domain) {
            for (i, core) in self.forbidden.iter().enumerate() {
                if self.core_at(core, &a, p) {
                    return Some((a, i));
                }
            }
        }
        None
    }

    /// Validity counting every placement of a stored forbidden pattern whose
    /// cells fall inside the domain, regardless of the window.
    pub fn core_valid(&self, p: &Pattern) -> bool {
        for core in &self.forbidden {
            let first = core.domain.get(0);
            let off = first.inv();
            for (e, s) in p.cells() {
                if s != core.symbols[0] {
                    continue;
                }
                let a = e.mul(&off);
                if self.core_at(core, &a, p) {
                    return false;
                }
            }
        }
        true
    }

    fn compiled_window_checks(&self, dom: &FiniteDomain) -> Vec<Vec<Vec<(usize, Sym)>>> {
        let mut by_last: Vec<Vec<Vec<(usize, Sym)>>> = vec![Vec::new(); dom.len()];
        for a in self.placements(dom) {
            for core in &self.forbidden {
                let lits: Vec<(usize, Sym)> = core
                    .cells()
                    .map(|(c, s)| (dom.index_of(&a.mul(c)).unwrap(), s))
                    .collect();
                let last = lits.iter().map(|l| l.0).max().unwrap();
                by_last[last].push(lits);
            }
        }
        by_last
    }

    /// Visits every locally valid pattern on `d` in canonical (lexicographic)
    /// order. The visitor returns `false` to stop early. Returns the number
    /// of patterns visited.
    pub fn for_each_locally_valid(
        &self,
        d: &FiniteDomain,
        budget: u64,
        mut visit: impl FnMut(&[Sym]) -> bool,
    ) -> Result<u64> {
        let checks = self.compiled_window_checks(d);
        let n = d.len();
        let k = self.size() as Sym;
        let mut cur: Vec<Sym> = vec![0; n];
        let mut count = 0u64;
        let mut nodes = 0u64;
        if n == 0 {
            visit(&cur);
            return Ok(1);
        }
        let mut i = 0usize;
        cur[0] = 0;
        // Iterative DFS: `cur[i]` holds the candidate symbol at depth `i`.
        loop {
            nodes += 1;
            if nodes > budget {
                return Err(Error::Budget {
                    what: format!("locally valid patterns on a domain of {n} cells"),
                    bound: budget,
                });
            }
            let ok = checks[i]
                .iter()
                .all(|lits| !lits.iter().all(|&(c, s)| cur[c] == s));
            if ok && i + 1 == n {
                count += 1;
                if !visit(&cur) {
                    return Ok(count);
                }
            }
            if ok && i + 1 < n {
                i += 1;
                cur[i] = 0;
                continue;
            }
            // advance
            loop {
                if cur[i] + 1 < k {
                    cur[i] += 1;
                    break;
                }
                if i == 0 {
                    return Ok(count);
                }
                i -= 1;
            }
        }
    }

    /// All locally valid patterns on `d`, in canonical order.
    pub fn enumerate_locally_valid(&self, d: &FiniteDomain, budget: u64) -> Result<Vec<Pattern>> {
        let mut out = Vec::new();
        self.for_each_locally_valid(d, budget, |s| {
            out.push(Pattern::new(d.clone(), s.to_vec()));
            true
        })?;
        Ok(out)
    }

    /// Counts locally valid patterns on `d`.
    pub fn count_locally_valid(&self, d: &FiniteDomain, budget: u64) -> Result<u64> {
        self.for_each_locally_valid(d, budget, |_| true)
    }

    /// The single-track constraint block of this SFT.
    pub fn block(&self) -> Block {
        Block::from_sft(self)
    }

    /// A certificate that local validity on `D·B_k` implies global validity on `D`.
    pub fn fill_certificate(&self) -> Option<Certificate> {
        self.block().certificate()
    }

    /// Decides (or bounds) whether `p` extends to a configuration.
    pub fn globally_valid(&self, p: &Pattern, method: Method) -> Result<Validity> {
        self.check_symbols(p)?;
        if let Some(e) = p.domain.iter().find(|e| !self.group.contains(e)) {
            return input(format!("cell {e} does not belong to {}", self.group));
        }
        match method {
            Method::Exact1d => {
                if self.group != Group::Line {
                    return input("exact_1d requires the line group");
                }
                let aut = LineAutomaton::new(self, DEFAULT_BUDGET)?;
                Ok(if aut.valid(p) { Validity::Valid } else { Validity::Invalid })
            }
            Method::Bounded(margin) => {
                let blk = self.block();
                let tracks = [p.clone()];
                Ok(blk.bounded_valid(&tracks, margin, DEFAULT_BUDGET))
            }
            Method::CocycleExact => {
                if !crate::glue::is_cocycle_sft(self) {
                    return input("cocycle_exact applies only to the cocycle SFT");
                }
                Ok(if crate::glue::cocycle_valid(p) { Validity::Valid } else { Validity::Invalid })
            }
        }
    }

    /// The best available exact oracle: automaton on the line, fill
    /// certificate or cocycle test elsewhere, else a bounded completion.
    pub fn best_validity(&self, p: &Pattern) -> Validity {
        if self.group == Group::Line {
            return self.globally_valid(p, Method::Exact1d).unwrap_or(Validity::Unknown);
        }
        if crate::glue::is_cocycle_sft(self) {
            return self.globally_valid(p, Method::CocycleExact).unwrap_or(Validity::Unknown);
        }
        let blk = self.block();
        blk.decide(&[p.clone()], DEFAULT_BUDGET)
    }

    /// Checks that `safe` is a safe symbol, returning a pattern `q` such that
    /// replacing one cell of `q` by `safe` creates a forbidden pattern.
    pub fn check_safe_symbol(&self, safe: Sym) -> core::result::Result<(), Pattern> {
        for core in &self.forbidden {
            for (c, s) in core.cells() {
                if s != safe {
                    continue;
                }
                for alt in 0..self.size() as Sym {
                    if alt == safe {
                        continue;
                    }
                    let q = Pattern::from_cells(
                        core.cells().map(|(e, t)| (e.clone(), if e == c { alt } else { t })),
                    );
                    if self.best_validity(&q) != Validity::Invalid {
                        return Err(q);
                    }
                }
            }
        }
        Ok(())
    }

    /// Whether the constant configuration `s^G` belongs to the SFT.
    pub fn has_fixed_point(&self, s: Sym) -> bool {
        self.forbidden.iter().all(|p| p.symbols.iter().any(|&t| t != s))
    }
}

/// The symbol values `-m, ..., -1, 1, ..., m` in index order.
pub fn burton_steif_values(m: usize) -> Vec<i64> {
    let m = m as i64;
    (-m..=m).filter(|&v| v != 0).collect()
}

/// The SFT approximation with window `w`: forbids every `w`-pattern the
/// checker rejects.
pub fn sft_approximation(
    checker: impl Fn(&Pattern) -> bool,
    group: Group,
    alphabet: Vec<String>,
    w: &FiniteDomain,
) -> Result<Sft> {
    let n = alphabet.len();
    let mut forb = Vec::new();
    let mut idx = vec![0 as Sym; w.len()];
    loop {
        let p = Pattern::new(w.clone(), idx.clone());
        if !checker(&p) {
            forb.push(p);
        }
        // increment in reverse domain order so output stays lexicographic
        let mut k = idx.len();
        loop {
            if k == 0 {
                return Sft::new(group, alphabet, w.clone(), forb);
            }
            k -= 1;
            if (idx[k] as usize) + 1 < n {
                idx[k] += 1;
                break;
            }
            idx[k] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_mean_local_validity() {
        let gm = Sft::golden_mean();
        assert!(!gm.locally_valid(&Pattern::word(&[0, 1, 1, 0])).unwrap());
        assert!(gm.locally_valid(&Pattern::word(&[0, 1, 0, 1])).unwrap());
        assert!(gm.locally_valid(&Pattern::word(&[0, 2])).is_err());
    }

    #[test]
    fn enumeration_order() {
        let gm = Sft::golden_mean();
        let v = gm.enumerate_locally_valid(&FiniteDomain::interval(0, 2), 1000).unwrap();
        let words: Vec<Vec<Sym>> = v.into_iter().map(|p| p.symbols).collect();
        assert_eq!(words, vec![vec![0, 0, 0], vec![0, 0, 1], vec![0, 1, 0], vec![1, 0, 0], vec![1, 0, 1]]);
    }

    #[test]
    fn burton_steif_pairs() {
        let bs = Sft::burton_steif(Group::Grid(2), 2);
        let p = Pattern::from_cells([
            (Element::Grid(vec![0, 0]), 0),
            (Element::Grid(vec![1, 0]), 3),
        ]);
        assert!(!bs.core_valid(&p));
        let one = Sft::burton_steif(Group::Line, 1);
        assert!(one.forbidden.is_empty());
    }

    #[test]
    fn approximation_of_path_shift() {
        let p2 = |p: &Pattern| p.symbols.iter().all(|&s| s <= 1) || p.symbols.iter().all(|&s| s >= 1);
        let x = sft_approximation(p2, Group::Line, Sft::numeric_alphabet(3), &FiniteDomain::interval(0, 1)).unwrap();
        let f: Vec<Vec<Sym>> = x.forbidden.iter().map(|p| p.symbols.clone()).collect();
        assert_eq!(f, vec![vec![0, 2], vec![2, 0]]);
    }

    #[test]
    fn safe_symbols() {
        let gm = Sft::golden_mean();
        assert!(gm.check_safe_symbol(0).is_ok());
        let bad = gm.check_safe_symbol(1).unwrap_err();
        assert_eq!(bad.symbols, vec![0, 1]);
    }
}
