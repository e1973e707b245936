//! One-dimensional SFTs through their transition graphs: mixing, gaps,
//! transition words, periods and the contraction homotopy of mixing SFTs.

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::blockmap::{BlockMap, Cells, FnRule, MapDesc, Need};
use crate::error::{input, Result};
use crate::group::Group;
use crate::check::TrackSys;
use crate::homotopy::{precompose_time, Homotopy, HomotopyDesc, Stage};
use crate::line::LineAutomaton;
use crate::pattern::{FiniteDomain, Pattern, Sym};
use crate::sft::{Sft, DEFAULT_BUDGET};

/// The essential part of the higher-block presentation of a line SFT.
///
/// Vertices are the essential words of length `len`; there is an edge
/// `u → v` when `u` and `v` overlap in a locally valid word of length `len + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransitionGraph {
    pub len: usize,
    pub words: Vec<Vec<Sym>>,
    pub succ: Vec<Vec<usize>>,
}

impl TransitionGraph {
    pub fn vertices(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// Boolean adjacency matrix.
    pub fn matrix(&self) -> Vec<Vec<bool>> {
        let n = self.vertices();
        let mut m = vec![vec![false; n]; n];
        for (u, s) in self.succ.iter().enumerate() {
            for &v in s {
                m[u][v] = true;
            }
        }
        m
    }

    pub fn index(&self, w: &[Sym]) -> Option<usize> {
        self.words.binary_search_by(|s| s.as_slice().cmp(w)).ok()
    }

    /// Symbol word spelled by a vertex path.
    pub fn spell(&self, path: &[usize]) -> Vec<Sym> {
        let mut out = Vec::new();
        if let Some(&first) = path.first() {
            out.extend(&self.words[first]);
            for &v in &path[1..] {
                out.push(*self.words[v].last().unwrap());
            }
        }
        out
    }
}

fn bool_mul(a: &[Vec<bool>], b: &[Vec<bool>]) -> Vec<Vec<bool>> {
    let n = a.len();
    let mut c = vec![vec![false; n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k] {
                for j in 0..n {
                    c[i][j] |= b[k][j];
                }
            }
        }
    }
    c
}

/// Recodes a line SFT to a vertex shift and prunes to its essential part.
pub fn recode_to_vertex_shift(x: &Sft) -> Result<TransitionGraph> {
    let aut = LineAutomaton::new(x, DEFAULT_BUDGET)?;
    let keep = aut.essential_states();
    let mut map = vec![usize::MAX; aut.states.len()];
    for (i, &s) in keep.iter().enumerate() {
        map[s] = i;
    }
    let words = keep.iter().map(|&s| aut.states[s].clone()).collect();
    let succ = keep
        .iter()
        .map(|&s| {
            let mut v: Vec<usize> = aut.succ[s].iter().filter(|&&t| map[t] != usize::MAX).map(|&t| map[t]).collect();
            v.sort_unstable();
            v
        })
        .collect();
    Ok(TransitionGraph { len: aut.len, words, succ })
}

/// Structural facts about a line SFT.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OneDimReport {
    pub empty: bool,
    pub essential_alphabet: Vec<Sym>,
    pub vertices: usize,
    pub transitive: bool,
    pub mixing: bool,
    /// Least `n` such that every pair of vertices is joined by a path with
    /// `n` intermediate vertices.
    pub gap: Option<usize>,
    /// Period of the transition graph when it is irreducible.
    pub period: Option<usize>,
    pub period_bound: usize,
    /// `n <= period_bound` such that a point of least period dividing `n` exists.
    pub period_set: Vec<usize>,
}

fn strongly_connected(g: &TransitionGraph) -> bool {
    let n = g.vertices();
    if n == 0 {
        return false;
    }
    let reach = |adj: &Vec<Vec<usize>>| {
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(u) = stack.pop() {
            for &v in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        seen.iter().all(|&b| b)
    };
    let mut rev = vec![Vec::new(); n];
    for (u, s) in g.succ.iter().enumerate() {
        for &v in s {
            rev[v].push(u);
        }
    }
    reach(&g.succ) && reach(&rev)
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn graph_period(g: &TransitionGraph) -> usize {
    let n = g.vertices();
    let mut level = vec![usize::MAX; n];
    level[0] = 0;
    let mut queue = alloc::collections::VecDeque::from([0usize]);
    while let Some(u) = queue.pop_front() {
        for &v in &g.succ[u] {
            if level[v] == usize::MAX {
                level[v] = level[u] + 1;
                queue.push_back(v);
            }
        }
    }
    let mut p = 0;
    for (u, s) in g.succ.iter().enumerate() {
        for &v in s {
            p = gcd(p, (level[u] + 1).abs_diff(level[v]));
        }
    }
    p
}

/// Least `n` with `A^(n+1)` positive, searched up to the primitivity
/// exponent bound `(V-1)^2 + 1`.
fn mixing_gap(g: &TransitionGraph) -> Option<usize> {
    let n = g.vertices();
    if n == 0 {
        return None;
    }
    let a = g.matrix();
    let bound = (n - 1) * (n - 1) + 1;
    let mut p = a.clone();
    for k in 1..=bound {
        if p.iter().all(|row| row.iter().all(|&b| b)) {
            return Some(k - 1);
        }
        p = bool_mul(&p, &a);
    }
    None
}

/// `n <= bound` with a closed walk of length `n`.
pub fn period_profile(g: &TransitionGraph, bound: usize) -> Vec<usize> {
    let n = g.vertices();
    let a = g.matrix();
    let mut p = a.clone();
    let mut out = Vec::new();
    for k in 1..=bound {
        if n > 0 && (0..n).any(|i| p[i][i]) {
            out.push(k);
        }
        if k < bound {
            p = bool_mul(&p, &a);
        }
    }
    out
}

pub fn analyze_1d(x: &Sft, period_bound: usize) -> Result<OneDimReport> {
    let g = recode_to_vertex_shift(x)?;
    let mut alphabet: Vec<Sym> = g.words.iter().flatten().copied().collect();
    alphabet.sort_unstable();
    alphabet.dedup();
    let transitive = strongly_connected(&g);
    let gap = if transitive { mixing_gap(&g) } else { None };
    let period = if transitive { Some(graph_period(&g)) } else { None };
    Ok(OneDimReport {
        empty: g.is_empty(),
        essential_alphabet: alphabet,
        vertices: g.vertices(),
        transitive,
        mixing: gap.is_some(),
        gap,
        period,
        period_bound,
        period_set: period_profile(&g, period_bound),
    })
}

/// Lexicographically least vertex words `v` of length `n` with `a v b` a
/// path, for every ordered pair of vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransitionTable {
    pub n: usize,
    pub graph: TransitionGraph,
    /// `words[a][b]`: the vertex path `v`.
    pub words: Vec<Vec<Vec<usize>>>,
}

pub fn transition_words(x: &Sft, n: usize) -> Result<TransitionTable> {
    let g = recode_to_vertex_shift(x)?;
    if g.is_empty() {
        return input("the SFT is empty");
    }
    let v = g.vertices();
    let a = g.matrix();
    // exact[k][u][b]: a walk of exactly k edges from u to b
    let mut exact = vec![vec![vec![false; v]; v]; n + 2];
    for (u, row) in exact[0].iter_mut().enumerate() {
        row[u] = true;
    }
    for k in 1..=n + 1 {
        exact[k] = bool_mul(&a, &exact[k - 1]);
    }
    let aut = LineAutomaton::new(x, DEFAULT_BUDGET)?;
    let mut words = vec![vec![Vec::new(); v]; v];
    for s in 0..v {
        for t in 0..v {
            if !exact[n + 1][s][t] {
                return input(format!(
                    "no transition word of length {n} from {:?} to {:?}",
                    g.words[s], g.words[t]
                ));
            }
            let mut cur = s;
            let mut w = Vec::with_capacity(n);
            for i in 0..n {
                let next = g.succ[cur].iter().copied().find(|&c| exact[n - i][c][t]).unwrap();
                w.push(next);
                cur = next;
            }
            let mut path = vec![s];
            path.extend(&w);
            path.push(t);
            let spelled = Pattern::word(&g.spell(&path));
            debug_assert!(x.locally_valid(&spelled).unwrap_or(false));
            if !aut.valid(&spelled) {
                return input("transition word failed the global validity check");
            }
            words[s][t] = w;
        }
    }
    Ok(TransitionTable { n, graph: g, words })
}

/// The contraction homotopy of a mixing line SFT: copy `x` or `y` on long
/// constant stretches of time and insert transition words at each change,
/// with time first dilated so every run has length at least `n + 1`.
pub fn mixing_contraction_homotopy(x: &Sft) -> Result<Homotopy> {
    if x.group != Group::Line {
        return input("mixing homotopy is defined on the line");
    }
    let rep = analyze_1d(x, 0)?;
    let n = match rep.gap {
        Some(n) => n,
        None => return input("SFT is not mixing (see analyze)"),
    };
    let table = Arc::new(transition_words(x, n)?);
    let len = table.graph.len;
    let size = x.size();
    let ni = n as i64;
    let lo = -ni;
    let hi = ni + len as i64 - 1;
    let nbhd = FiniteDomain::interval(lo, hi);
    let at = move |p: i64| (p - lo) as usize;
    let tab = table.clone();
    let rule = FnRule::new(move |cx| {
        let state = |cx: &mut dyn Cells, track: usize, p: i64| -> core::result::Result<usize, Need> {
            let mut w = Vec::with_capacity(len);
            for k in 0..len as i64 {
                w.push(cx.get(track, at(p + k))?);
            }
            Ok(tab.graph.index(&w).unwrap_or(0))
        };
        let t0 = cx.get(0, at(0))?;
        let mut change = None;
        for j in 1..=ni {
            if cx.get(0, at(j))? != t0 {
                change = Some(j);
                break;
            }
        }
        let j = match change {
            None => return cx.get(1 + t0 as usize, at(0)),
            Some(j) => j,
        };
        let (from, to) = if t0 == 0 { (1, 2) } else { (2, 1) };
        let a = state(cx, from, j - ni - 1)?;
        let b = state(cx, to, j)?;
        let v = tab.words[a][b][(ni - j) as usize];
        Ok(tab.graph.words[v][0])
    });
    let desc = HomotopyDesc::Mixing { sft: Box::new(x.clone()) };
    let map = BlockMap::new(Group::Line, vec![2, size, size], size, nbhd, rule, MapDesc::Named { name: "mixing".into() });
    let raw = Homotopy { map: map.clone(), sft: x.clone(), time: 2, desc: desc.clone(), stages: Vec::new() };
    let dilate = BlockMap::z_min_max(n);
    let mut h = precompose_time(&raw, &dilate, desc)?;
    let sources = vec![2, size, size];
    let runs = runs_sft(n);
    let full = Sft::full(Group::Line, 2);
    let relaxed = TrackSys::from_sfts(&[&runs, x, x]);
    h.stages = vec![
        Stage {
            source: TrackSys::from_sfts(&[&full, x, x]),
            maps: vec![
                dilate.on_tracks(sources.clone(), vec![0])?,
                BlockMap::project(Group::Line, sources.clone(), 1),
                BlockMap::project(Group::Line, sources, 2),
            ],
            target: relaxed.clone(),
        },
        Stage { source: relaxed, maps: vec![map], target: TrackSys::from_sfts(&[x]) },
    ];
    Ok(h)
}

/// Binary sequences whose maximal runs all have length at least `n + 1`.
pub fn runs_sft(n: usize) -> Sft {
    let mut forb = Vec::new();
    for k in 1..=n {
        for b in 0..2 {
            let mut w = vec![1 - b];
            w.extend(core::iter::repeat(b).take(k));
            w.push(1 - b);
            forb.push(Pattern::word(&w));
        }
    }
    Sft::new(Group::Line, Sft::numeric_alphabet(2), FiniteDomain::interval(0, n as i64 + 1), forb).expect("run constraints are well formed")
}

/// Whether two transitive SFTs have the same period sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Equivalence {
    Equivalent { horizon: usize },
    NotEquivalent { horizon: usize, period: usize },
}

/// Decides homotopy equivalence of transitive line SFTs by comparing their
/// period sets on a horizon covering the eventual periodicity of both
/// trace profiles.
pub fn homotopy_equivalent_transitive(x: &Sft, y: &Sft, bound: usize) -> Result<Equivalence> {
    let gx = recode_to_vertex_shift(x)?;
    let gy = recode_to_vertex_shift(y)?;
    if !strongly_connected(&gx) || !strongly_connected(&gy) {
        return input("both SFTs must be transitive");
    }
    let (px, py) = (graph_period(&gx), graph_period(&gy));
    let lcm = px / gcd(px, py) * py;
    let base = bound.max(gx.vertices().pow(2)).max(gy.vertices().pow(2)).max(1);
    let horizon = base * lcm;
    let a = period_profile(&gx, horizon);
    let b = period_profile(&gy, horizon);
    if a == b {
        return Ok(Equivalence::Equivalent { horizon });
    }
    let first = a.iter().zip(&b).find(|(p, q)| p != q).map(|(p, q)| *p.min(q));
    let period = first.unwrap_or_else(|| *a.get(b.len()).or(b.get(a.len())).unwrap());
    Ok(Equivalence::NotEquivalent { horizon, period })
}

/// Lookup helper used by reports: vertex words as strings of symbol indices.
pub fn words_by_pair(t: &TransitionTable) -> BTreeMap<(Vec<Sym>, Vec<Sym>), Vec<Sym>> {
    let mut out = BTreeMap::new();
    for (a, row) in t.words.iter().enumerate() {
        for (b, w) in row.iter().enumerate() {
            let spelled: Vec<Sym> = w.iter().map(|&v| t.graph.words[v][0]).collect();
            out.insert((t.graph.words[a].clone(), t.graph.words[b].clone()), spelled);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_mean_report() {
        let r = analyze_1d(&Sft::golden_mean(), 6).unwrap();
        assert!(r.mixing && r.transitive);
        assert_eq!(r.gap, Some(1));
        assert_eq!(r.period_set, vec![1, 2, 3, 4, 5, 6]);
    }

    #[test]
    fn period_two() {
        let x = Sft::vertex_shift(2, &[(0, 1), (1, 0)]);
        let r = analyze_1d(&x, 6).unwrap();
        assert!(r.transitive && !r.mixing);
        assert_eq!(r.period, Some(2));
        assert_eq!(r.period_set, vec![2, 4, 6]);
        assert!(mixing_contraction_homotopy(&x).is_err());
    }

    #[test]
    fn golden_mean_words() {
        let t = transition_words(&Sft::golden_mean(), 1).unwrap();
        for a in 0..2 {
            for b in 0..2 {
                assert_eq!(t.words[a][b], vec![0]);
            }
        }
        assert!(transition_words(&Sft::golden_mean(), 0).is_err());
    }
}
