//! Constraint blocks, fill certificates and the lazy verification engine.
//!
//! The engine proves statements of the form "for every configuration of the
//! source system, the outputs of some block maps near the origin avoid a bad
//! event". It walks a decision tree over exactly the input cells the local
//! rules read, prunes with the source constraints, and confirms each bad
//! leaf with a global-validity oracle before reporting it.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::blockmap::{BlockMap, Cells, Need};
use crate::group::{Element, Group};
use crate::line::LineAutomaton;
use crate::pattern::{FiniteDomain, Pattern, Sym};
use crate::sft::{Sft, Validity, DEFAULT_BUDGET};

/// One literal of a forbidden pattern: offset, track within the block, symbol.
pub type Lit = (Element, usize, Sym);

/// How a block decides global validity of partial patterns.
#[derive(Clone, Debug)]
pub enum Oracle {
    Line(Arc<LineAutomaton>),
    Cocycle,
    Fill(Certificate),
    None,
}

/// A proof that any pattern which is valid on `U·B_gap` (counting every
/// forbidden-pattern placement inside it) is globally valid on `U`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub gap: usize,
    pub kind: CertKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CertKind {
    /// Every cell can be filled whatever its neighbors hold.
    SingleSite,
    /// Pairwise constraints with a mutually compatible filler set and a map
    /// sending each symbol to a filler compatible with all its partners.
    Dominance { filler: Vec<Sym>, map: Vec<Sym> },
}

/// Forbidden patterns over one or more tracks.
#[derive(Clone, Debug)]
pub struct Block {
    pub group: Group,
    pub sizes: Vec<usize>,
    pub window: FiniteDomain,
    pub cores: Vec<Vec<Lit>>,
    pub oracle: Oracle,
}

/// Outcome of a finite constraint search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CspOutcome {
    Sat(Vec<Sym>),
    Unsat,
    Budget,
}

struct Csp {
    sizes: Vec<usize>,
    nogoods: Vec<Vec<(usize, Sym)>>,
    by_var: Vec<Vec<usize>>,
}

impl Csp {
    fn new(sizes: Vec<usize>, nogoods: Vec<Vec<(usize, Sym)>>) -> Csp {
        let mut by_var = vec![Vec::new(); sizes.len()];
        for (i, ng) in nogoods.iter().enumerate() {
            for &(v, _) in ng {
                if by_var[v].last() != Some(&i) {
                    by_var[v].push(i);
                }
            }
        }
        Csp { sizes, nogoods, by_var }
    }

    fn solve(&self, fixed: &[Option<Sym>], budget: u64) -> CspOutcome {
        let n = self.sizes.len();
        assert!(self.sizes.iter().all(|&s| s <= 64), "constraint search supports at most 64 symbols per variable");
        let mut st = CspState {
            assign: vec![None; n],
            dom: self.sizes.iter().map(|&s| if s == 64 { u64::MAX } else { (1u64 << s) - 1 }).collect(),
            trail: Vec::new(),
            nodes: 0,
        };
        for ng in &self.nogoods {
            if ng.len() == 1 {
                let (v, s) = ng[0];
                st.dom[v] &= !(1 << s);
            }
        }
        if st.dom.iter().any(|&d| d == 0) {
            return CspOutcome::Unsat;
        }
        for (v, f) in fixed.iter().enumerate() {
            if let Some(s) = *f {
                if st.dom[v] >> s & 1 == 0 || !self.assign(&mut st, v, s) {
                    return CspOutcome::Unsat;
                }
            }
        }
        match self.dfs(&mut st, budget) {
            Some(true) => CspOutcome::Sat(st.assign.iter().map(|a| a.unwrap()).collect()),
            Some(false) => CspOutcome::Unsat,
            None => CspOutcome::Budget,
        }
    }

    fn assign(&self, st: &mut CspState, v: usize, s: Sym) -> bool {
        st.assign[v] = Some(s);
        for &ni in &self.by_var[v] {
            let mut dead = false;
            let mut open: Option<(usize, Sym)> = None;
            let mut count = 0;
            for &(u, x) in &self.nogoods[ni] {
                match st.assign[u] {
                    Some(y) if y != x => {
                        dead = true;
                        break;
                    }
                    Some(_) => {}
                    None => {
                        if st.dom[u] >> x & 1 == 0 {
                            dead = true;
                            break;
                        }
                        count += 1;
                        open = Some((u, x));
                    }
                }
            }
            if dead {
                continue;
            }
            if count == 0 {
                return false;
            }
            if count == 1 {
                let (u, x) = open.unwrap();
                st.trail.push((u, st.dom[u]));
                st.dom[u] &= !(1 << x);
                if st.dom[u] == 0 {
                    return false;
                }
            }
        }
        true
    }

    fn dfs(&self, st: &mut CspState, budget: u64) -> Option<bool> {
        let mut best: Option<(u32, usize)> = None;
        for v in 0..self.sizes.len() {
            if st.assign[v].is_none() {
                let c = st.dom[v].count_ones();
                if best.map_or(true, |(bc, _)| c < bc) {
                    best = Some((c, v));
                }
            }
        }
        let v = match best {
            None => return Some(true),
            Some((_, v)) => v,
        };
        let mut d = st.dom[v];
        while d != 0 {
            let s = d.trailing_zeros() as Sym;
            d &= d - 1;
            st.nodes += 1;
            if st.nodes > budget {
                return None;
            }
            let mark = st.trail.len();
            if self.assign(st, v, s) {
                match self.dfs(st, budget) {
                    Some(true) => return Some(true),
                    None => return None,
                    Some(false) => {}
                }
            }
            while st.trail.len() > mark {
                let (u, old) = st.trail.pop().unwrap();
                st.dom[u] = old;
            }
            st.assign[v] = None;
        }
        Some(false)
    }
}

struct CspState {
    assign: Vec<Option<Sym>>,
    dom: Vec<u64>,
    trail: Vec<(usize, u64)>,
    nodes: u64,
}

/// Placements `a` of each core with all its cells inside `dom`.
fn core_placements(cores: &[Vec<Lit>], dom: &FiniteDomain) -> Vec<(usize, Element)> {
    let mut seen = BTreeSet::new();
    for (ci, core) in cores.iter().enumerate() {
        let c0inv = core[0].0.inv();
        for e in dom {
            let a = e.mul(&c0inv);
            if core.iter().all(|(c, _, _)| dom.contains(&a.mul(c))) {
                seen.insert((ci, a));
            }
        }
    }
    seen.into_iter().collect()
}

impl Block {
    pub fn from_sft(x: &Sft) -> Block {
        let cores: Vec<Vec<Lit>> =
            x.forbidden.iter().map(|p| p.cells().map(|(e, s)| (e.clone(), 0, s)).collect()).collect();
        let mut b = Block { group: x.group, sizes: vec![x.size()], window: x.window.clone(), cores, oracle: Oracle::None };
        b.oracle = if x.group == Group::Line {
            match LineAutomaton::new(x, 1 << 24) {
                Ok(a) => Oracle::Line(Arc::new(a)),
                Err(_) => Oracle::None,
            }
        } else if crate::glue::is_cocycle_sft(x) {
            Oracle::Cocycle
        } else {
            b.certificate().map_or(Oracle::None, Oracle::Fill)
        };
        b
    }

    /// A multi-track block; the oracle is a fill certificate when one is found.
    pub fn custom(group: Group, sizes: Vec<usize>, window: FiniteDomain, cores: Vec<Vec<Lit>>) -> Block {
        let mut b = Block { group, sizes, window, cores, oracle: Oracle::None };
        b.oracle = b.certificate().map_or(Oracle::None, Oracle::Fill);
        b
    }

    pub fn tracks(&self) -> usize {
        self.sizes.len()
    }

    /// Searches for a single-site or dominance fill certificate.
    pub fn certificate(&self) -> Option<Certificate> {
        if self.single_site() {
            return Some(Certificate { gap: 0, kind: CertKind::SingleSite });
        }
        self.dominance()
    }

    fn single_site(&self) -> bool {
        let id = self.group.identity();
        let nt = self.tracks();
        let combos: usize = self.sizes.iter().product();
        if combos > 128 {
            return false;
        }
        let mut placements = BTreeSet::new();
        for (ci, core) in self.cores.iter().enumerate() {
            for (c, _, _) in core {
                placements.insert((ci, c.inv()));
            }
        }
        let mut cells = BTreeSet::new();
        for (ci, a) in &placements {
            for (c, _, _) in &self.cores[*ci] {
                let e = a.mul(c);
                if e != id {
                    cells.insert(e);
                }
            }
        }
        let cells: Vec<Element> = cells.into_iter().collect();
        let nvars = cells.len() * nt;
        let mut space: f64 = 1.0;
        for _ in 0..cells.len() {
            for &s in &self.sizes {
                space *= s as f64;
            }
        }
        if space > 2e7 {
            return false;
        }
        // combo code: track 0 most significant
        let combo_of = |vals: &[Sym]| vals.iter().zip(&self.sizes).fold(0usize, |acc, (&v, &s)| acc * s + v as usize);
        let full: u128 = if combos == 128 { u128::MAX } else { (1u128 << combos) - 1 };
        // constraints grouped by the last outer variable they mention
        let mut at_depth: Vec<Vec<(Vec<(usize, Sym)>, u128)>> = vec![Vec::new(); nvars + 1];
        for (ci, a) in &placements {
            let mut outer = Vec::new();
            let mut center: Vec<(usize, Sym)> = Vec::new();
            for (c, t, s) in &self.cores[*ci] {
                let e = a.mul(c);
                if e == id {
                    center.push((*t, *s));
                } else {
                    let k = cells.binary_search(&e).unwrap();
                    outer.push((k * nt + t, *s));
                }
            }
            let mut kill: u128 = 0;
            let mut vals = vec![0 as Sym; nt];
            for code in 0..combos {
                let mut r = code;
                for t in (0..nt).rev() {
                    vals[t] = (r % self.sizes[t]) as Sym;
                    r /= self.sizes[t];
                }
                debug_assert_eq!(combo_of(&vals), code);
                if center.iter().all(|&(t, s)| vals[t] == s) {
                    kill |= 1 << code;
                }
            }
            let depth = outer.iter().map(|o| o.0 + 1).max().unwrap_or(0);
            at_depth[depth].push((outer, kill));
        }
        let var_size: Vec<usize> = (0..nvars).map(|v| self.sizes[v % nt]).collect();
        let mut vals = vec![0 as Sym; nvars];
        fn rec(
            d: usize,
            mask: u128,
            vals: &mut Vec<Sym>,
            var_size: &[usize],
            at_depth: &[Vec<(Vec<(usize, Sym)>, u128)>],
        ) -> bool {
            let mut m = mask;
            for (outer, kill) in &at_depth[d] {
                if outer.iter().all(|&(v, s)| vals[v] == s) {
                    m &= !kill;
                }
            }
            if m == 0 {
                return false;
            }
            if d == var_size.len() {
                return true;
            }
            for s in 0..var_size[d] as Sym {
                vals[d] = s;
                if !rec(d + 1, m, vals, var_size, at_depth) {
                    return false;
                }
            }
            true
        }
        rec(0, full, &mut vals, &var_size, &at_depth)
    }

    fn dominance(&self) -> Option<Certificate> {
        if self.tracks() != 1 || self.cores.iter().any(|c| c.len() != 2) {
            return None;
        }
        let n = self.sizes[0];
        if n > 16 {
            return None;
        }
        let mut forb: BTreeMap<Element, Vec<bool>> = BTreeMap::new();
        for core in &self.cores {
            let (c1, _, u) = &core[0];
            let (c2, _, v) = &core[1];
            let d = c1.inv().mul(c2);
            forb.entry(d.clone()).or_insert_with(|| vec![false; n * n])[*u as usize * n + *v as usize] = true;
            forb.entry(d.inv()).or_insert_with(|| vec![false; n * n])[*v as usize * n + *u as usize] = true;
        }
        let gap = forb.keys().map(Element::norm).max().unwrap_or(0);
        let allowed = |u: usize, v: usize| forb.values().all(|f| !f[u * n + v]);
        let dominates = |d: usize, u: usize| {
            forb.values().all(|f| (0..n).all(|v| f[u * n + v] || !f[d * n + v]))
        };
        let mut best: Option<(u32, u32)> = None;
        for mask in 1u32..(1 << n) {
            let members: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
            if !members.iter().all(|&a| members.iter().all(|&b| allowed(a, b))) {
                continue;
            }
            if !(0..n).all(|u| members.iter().any(|&d| dominates(d, u))) {
                continue;
            }
            if best.map_or(true, |(c, _)| mask.count_ones() < c) {
                best = Some((mask.count_ones(), mask));
            }
        }
        let (_, mask) = best?;
        let filler: Vec<Sym> = (0..n).filter(|&i| mask >> i & 1 == 1).map(|i| i as Sym).collect();
        let map: Vec<Sym> =
            (0..n).map(|u| *filler.iter().find(|&&d| dominates(d as usize, u)).unwrap()).collect();
        Some(Certificate { gap, kind: CertKind::Dominance { filler, map } })
    }

    fn csp_on(&self, dom: &FiniteDomain) -> Csp {
        let nt = self.tracks();
        let sizes: Vec<usize> = (0..dom.len() * nt).map(|v| self.sizes[v % nt]).collect();
        let mut nogoods = Vec::new();
        for (ci, a) in core_placements(&self.cores, dom) {
            let lits: Vec<(usize, Sym)> = self.cores[ci]
                .iter()
                .map(|(c, t, s)| (dom.index_of(&a.mul(c)).unwrap() * nt + t, *s))
                .collect();
            nogoods.push(lits);
        }
        Csp::new(sizes, nogoods)
    }

    /// Finds an assignment on `dom` extending the given per-track patterns
    /// with no forbidden pattern placed inside `dom`.
    pub fn complete(&self, tracks: &[Pattern], dom: &FiniteDomain, budget: u64) -> CspOutcome {
        let nt = self.tracks();
        let csp = self.csp_on(dom);
        let mut fixed = vec![None; dom.len() * nt];
        for (t, p) in tracks.iter().enumerate() {
            for (e, s) in p.cells() {
                match dom.index_of(e) {
                    Some(i) => fixed[i * nt + t] = Some(s),
                    None => return CspOutcome::Unsat,
                }
            }
        }
        csp.solve(&fixed, budget)
    }

    fn support(&self, tracks: &[Pattern]) -> FiniteDomain {
        tracks.iter().fold(FiniteDomain::default(), |acc, p| acc.union(&p.domain))
    }

    /// Locally valid extension to `U·B_margin` where `U` is the support.
    pub fn bounded_valid(&self, tracks: &[Pattern], margin: usize, budget: u64) -> Validity {
        let dom = self.support(tracks).product(&self.group.ball(margin));
        match self.complete(tracks, &dom, budget) {
            CspOutcome::Sat(_) => Validity::Valid,
            CspOutcome::Unsat => Validity::Invalid,
            CspOutcome::Budget => Validity::Unknown,
        }
    }

    /// Global validity of partial patterns (one per track) using the oracle.
    pub fn decide(&self, tracks: &[Pattern], budget: u64) -> Validity {
        match &self.oracle {
            Oracle::Line(a) => {
                if a.valid(&tracks[0]) {
                    Validity::Valid
                } else {
                    Validity::Invalid
                }
            }
            Oracle::Cocycle => {
                if crate::glue::cocycle_valid(&tracks[0]) {
                    Validity::Valid
                } else {
                    Validity::Invalid
                }
            }
            Oracle::Fill(c) => self.bounded_valid(tracks, c.gap, budget),
            Oracle::None => match self.bounded_valid(tracks, self.window.radius(), budget) {
                Validity::Invalid => Validity::Invalid,
                _ => Validity::Unknown,
            },
        }
    }

    pub fn exact(&self) -> bool {
        !matches!(self.oracle, Oracle::None)
    }
}

/// A product of constraint blocks over a list of tracks.
#[derive(Clone, Debug)]
pub struct TrackSys {
    pub group: Group,
    pub sizes: Vec<usize>,
    pub blocks: Vec<(Vec<usize>, Block)>,
}

impl TrackSys {
    pub fn new(group: Group) -> TrackSys {
        TrackSys { group, sizes: Vec::new(), blocks: Vec::new() }
    }

    pub fn from_sfts(sfts: &[&Sft]) -> TrackSys {
        let mut t = TrackSys::new(sfts[0].group);
        for x in sfts {
            t.push(Block::from_sft(x));
        }
        t
    }

    /// Appends a block on fresh tracks.
    pub fn push(&mut self, b: Block) {
        let start = self.sizes.len();
        self.sizes.extend(&b.sizes);
        self.blocks.push(((start..start + b.sizes.len()).collect(), b));
    }

    /// Appends a block reusing existing blocks' oracle-free cache.
    pub fn push_sft(&mut self, x: &Sft) {
        self.push(Block::from_sft(x));
    }
}

/// A cell of a map's output, relative to the origin.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Probe {
    pub map: usize,
    pub at: Element,
}

/// A bad event whose absence the engine proves.
#[derive(Clone, Debug)]
pub enum Goal {
    /// All probes take the listed symbols.
    Match { probes: Vec<Probe>, syms: Vec<Sym> },
    /// The two probes take different symbols.
    Differ { a: Probe, b: Probe },
}

impl Goal {
    fn probes(&self) -> Vec<&Probe> {
        match self {
            Goal::Match { probes, .. } => probes.iter().collect(),
            Goal::Differ { a, b } => vec![a, b],
        }
    }
}

/// How a source track is fed during a search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TrackMode {
    Free,
    /// Constant configuration.
    Pinned(Sym),
    /// Equal to another track.
    Alias(usize),
}

/// Which inputs a search ranges over.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scope {
    /// Globally valid configurations of the source system.
    Valid,
    /// Every neighborhood content.
    All,
}

/// A counterexample: input cells read by the rules and the offending outputs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub inputs: Vec<Pattern>,
    pub outputs: Vec<(usize, Element, Sym)>,
    pub goal: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Proved,
    Counterexample(Witness),
    Unknown(String),
}

impl Verdict {
    pub fn is_proved(&self) -> bool {
        matches!(self, Verdict::Proved)
    }

    /// Combines verdicts in goal order: the first counterexample wins, then unknowns.
    pub fn merge(results: impl IntoIterator<Item = Verdict>) -> Verdict {
        let mut unknown = None;
        for r in results {
            match r {
                Verdict::Counterexample(_) => return r,
                Verdict::Unknown(s) => {
                    if unknown.is_none() {
                        unknown = Some(s)
                    }
                }
                Verdict::Proved => {}
            }
        }
        unknown.map_or(Verdict::Proved, Verdict::Unknown)
    }

    pub fn then(self, next: impl FnOnce() -> Verdict) -> Verdict {
        match self {
            Verdict::Proved => next(),
            other => other,
        }
    }
}

/// A configured search over a source system.
pub struct Search<'a> {
    pub source: &'a TrackSys,
    pub maps: &'a [BlockMap],
    pub modes: Vec<TrackMode>,
    pub scope: Scope,
    pub margin: usize,
    pub budget: u64,
}

struct Compiled {
    dom: FiniteDomain,
    ntracks: usize,
    cellmaps: Vec<Vec<usize>>,
    cons: Vec<Vec<(usize, Sym)>>,
    by_var: Vec<Vec<usize>>,
    infeasible: bool,
}

struct Run<'a, 'b> {
    s: &'b Search<'a>,
    c: Compiled,
    goal: &'b Goal,
    goal_idx: usize,
    probes: Vec<&'b Probe>,
    assign: Vec<Option<Sym>>,
    nodes: u64,
    found: Option<Witness>,
    unconfirmed: Option<String>,
    over_budget: bool,
    cache: BTreeMap<(usize, Vec<(usize, usize, Sym)>), Validity>,
}

struct EngineCells<'r> {
    assign: &'r [Option<Sym>],
    cellmap: &'r [usize],
    modes: &'r [TrackMode],
    ntracks: usize,
}

impl EngineCells<'_> {
    fn var(&self, track: usize, cell: usize) -> Result<usize, Sym> {
        let mut t = track;
        loop {
            match self.modes[t] {
                TrackMode::Free => return Ok(self.cellmap[cell] * self.ntracks + t),
                TrackMode::Pinned(s) => return Err(s),
                TrackMode::Alias(u) => t = u,
            }
        }
    }
}

impl Cells for EngineCells<'_> {
    fn get(&mut self, track: usize, cell: usize) -> Result<Sym, Need> {
        match self.var(track, cell) {
            Err(s) => Ok(s),
            Ok(v) => self.assign[v].ok_or(Need(v)),
        }
    }
}

fn resolve(modes: &[TrackMode], mut t: usize) -> Result<usize, Sym> {
    loop {
        match modes[t] {
            TrackMode::Free => return Ok(t),
            TrackMode::Pinned(s) => return Err(s),
            TrackMode::Alias(u) => t = u,
        }
    }
}

impl<'a> Search<'a> {
    pub fn new(source: &'a TrackSys, maps: &'a [BlockMap]) -> Search<'a> {
        Search {
            source,
            maps,
            modes: vec![TrackMode::Free; source.sizes.len()],
            scope: Scope::Valid,
            margin: 0,
            budget: DEFAULT_BUDGET,
        }
    }

    fn compile(&self, goal: &Goal) -> Compiled {
        let g = self.source.group;
        let probes = goal.probes();
        let mut dom = FiniteDomain::default();
        for p in &probes {
            dom = dom.union(&self.maps[p.map].nbhd.translate(&p.at));
        }
        if self.margin > 0 {
            dom = dom.product(&g.ball(self.margin));
        }
        let ntracks = self.source.sizes.len();
        let cellmaps = probes
            .iter()
            .map(|p| self.maps[p.map].nbhd.iter().map(|n| dom.index_of(&p.at.mul(n)).unwrap()).collect())
            .collect();
        let mut cons = Vec::new();
        let mut infeasible = false;
        if self.scope == Scope::Valid {
            for (tracks, blk) in &self.source.blocks {
                for (ci, a) in core_placements(&blk.cores, &dom) {
                    let mut lits = Vec::new();
                    let mut dead = false;
                    for (c, t, s) in &blk.cores[ci] {
                        let cell = dom.index_of(&a.mul(c)).unwrap();
                        match resolve(&self.modes, tracks[*t]) {
                            Err(p) => {
                                if p != *s {
                                    dead = true;
                                }
                            }
                            Ok(t) => lits.push((cell * ntracks + t, *s)),
                        }
                    }
                    lits.sort();
                    lits.dedup();
                    // an aliased cell asked to hold two symbols at once can never match
                    if lits.windows(2).any(|w| w[0].0 == w[1].0) {
                        dead = true;
                    }
                    if dead {
                        continue;
                    }
                    if lits.is_empty() {
                        infeasible = true;
                    }
                    cons.push(lits);
                }
            }
        }
        let mut by_var = vec![Vec::new(); dom.len() * ntracks];
        for (i, c) in cons.iter().enumerate() {
            for &(v, _) in c {
                by_var[v].push(i);
            }
        }
        Compiled { dom, ntracks, cellmaps, cons, by_var, infeasible }
    }

    /// Runs one goal.
    pub fn run_goal(&self, goal: &Goal, goal_idx: usize) -> Verdict {
        let c = self.compile(goal);
        if c.infeasible {
            return Verdict::Proved;
        }
        let nv = c.dom.len() * c.ntracks;
        let mut run = Run {
            s: self,
            c,
            goal,
            goal_idx,
            probes: goal.probes(),
            assign: vec![None; nv],
            nodes: 0,
            found: None,
            unconfirmed: None,
            over_budget: false,
            cache: BTreeMap::new(),
        };
        let mut vals = Vec::new();
        run.dfs(0, &mut vals);
        if let Some(w) = run.found {
            Verdict::Counterexample(w)
        } else if run.over_budget {
            Verdict::Unknown(format!("search budget of {} nodes exhausted", self.budget))
        } else if let Some(r) = run.unconfirmed {
            Verdict::Unknown(r)
        } else {
            Verdict::Proved
        }
    }

    /// Runs all goals in order and merges the verdicts.
    pub fn run(&self, goals: &[Goal]) -> Verdict {
        let mut unknown = None;
        for (i, g) in goals.iter().enumerate() {
            match self.run_goal(g, i) {
                Verdict::Proved => {}
                Verdict::Unknown(r) => {
                    if unknown.is_none() {
                        unknown = Some(r)
                    }
                }
                cx => return cx,
            }
        }
        unknown.map_or(Verdict::Proved, Verdict::Unknown)
    }
}

impl Run<'_, '_> {
    fn eval(&self, k: usize) -> Result<Sym, Need> {
        let p = self.probes[k];
        let mut cx = EngineCells {
            assign: &self.assign,
            cellmap: &self.c.cellmaps[k],
            modes: &self.s.modes,
            ntracks: self.c.ntracks,
        };
        self.s.maps[p.map].rule.eval(&mut cx)
    }

    fn consistent(&self, v: usize, s: Sym) -> bool {
        'outer: for &ci in &self.c.by_var[v] {
            for &(u, x) in &self.c.cons[ci] {
                if u == v {
                    if x != s {
                        continue 'outer;
                    }
                } else if self.assign[u] != Some(x) {
                    continue 'outer;
                }
            }
            return false;
        }
        true
    }

    /// Returns false to stop the whole search.
    fn dfs(&mut self, k: usize, vals: &mut Vec<Sym>) -> bool {
        match self.eval(k) {
            Ok(v) => {
                let keep = match self.goal {
                    Goal::Match { syms, .. } => v == syms[k],
                    Goal::Differ { .. } => k == 0 || v != vals[0],
                };
                if !keep {
                    return true;
                }
                vals.push(v);
                let r = if k + 1 == self.probes.len() { self.leaf(vals) } else { self.dfs(k + 1, vals) };
                vals.pop();
                r
            }
            Err(Need(var)) => {
                let size = self.s.source.sizes[var % self.c.ntracks];
                for s in 0..size as Sym {
                    self.nodes += 1;
                    if self.nodes > self.s.budget {
                        self.over_budget = true;
                        return false;
                    }
                    if !self.consistent(var, s) {
                        continue;
                    }
                    self.assign[var] = Some(s);
                    let r = self.dfs(k, vals);
                    self.assign[var] = None;
                    if !r {
                        return false;
                    }
                }
                true
            }
        }
    }

    fn track_patterns(&self) -> Vec<Pattern> {
        let nt = self.c.ntracks;
        (0..nt)
            .map(|t| {
                let cells = self.c.dom.iter().enumerate().filter_map(|(i, e)| match resolve(&self.s.modes, t) {
                    Err(s) => Some((e.clone(), s)),
                    Ok(u) => self.assign[i * nt + u].map(|s| (e.clone(), s)),
                });
                Pattern::from_cells(cells)
            })
            .collect()
    }

    fn leaf(&mut self, vals: &[Sym]) -> bool {
        let inputs = self.track_patterns();
        if self.s.scope == Scope::Valid {
            let mut unknown = None;
            for (bi, (tracks, blk)) in self.s.source.blocks.iter().enumerate() {
                let pats: Vec<Pattern> = tracks.iter().map(|&t| inputs[t].clone()).collect();
                let dom = &self.c.dom;
                let key: Vec<(usize, usize, Sym)> = pats
                    .iter()
                    .enumerate()
                    .flat_map(|(t, p)| {
                        p.cells().map(move |(e, s)| (dom.index_of(e).unwrap(), t, s)).collect::<Vec<_>>()
                    })
                    .collect();
                let v = match self.cache.get(&(bi, key.clone())) {
                    Some(v) => *v,
                    None => {
                        let v = blk.decide(&pats, self.s.budget);
                        self.cache.insert((bi, key), v);
                        v
                    }
                };
                match v {
                    Validity::Invalid => return true,
                    Validity::Unknown => unknown = Some(bi),
                    Validity::Valid => {}
                }
            }
            if let Some(bi) = unknown {
                if self.unconfirmed.is_none() {
                    self.unconfirmed = Some(format!(
                        "a bad leaf could not be confirmed or refuted: block {bi} has no exact validity oracle"
                    ));
                }
                return true;
            }
        }
        let outputs = self.probes.iter().zip(vals).map(|(p, &v)| (p.map, p.at.clone(), v)).collect();
        self.found = Some(Witness { inputs, outputs, goal: self.goal_idx });
        false
    }
}

/// Default verification margin: the diameter of the target window.
pub fn window_diameter(w: &FiniteDomain) -> usize {
    let mut d = 0;
    for a in w {
        for b in w {
            d = d.max(a.inv().mul(b).norm());
        }
    }
    d
}

/// One `Match` goal per forbidden pattern of each target block.
pub fn target_goals(target: &TrackSys) -> Vec<Goal> {
    let mut goals = Vec::new();
    for (tracks, blk) in &target.blocks {
        for core in &blk.cores {
            goals.push(Goal::Match {
                probes: core.iter().map(|(e, t, _)| Probe { map: tracks[*t], at: e.clone() }).collect(),
                syms: core.iter().map(|l| l.2).collect(),
            });
        }
    }
    goals
}

/// Proves that the tuple of maps (one per target track) sends the source
/// system into the target system.
pub fn check_into_sys(maps: &[BlockMap], source: &TrackSys, target: &TrackSys, margin: usize, budget: u64) -> Verdict {
    if maps.len() != target.sizes.len() {
        return Verdict::Unknown(String::from("one map per target track is required"));
    }
    for (m, &t) in maps.iter().zip(&target.sizes) {
        if m.sources != source.sizes || m.target > t {
            return Verdict::Unknown(String::from("map alphabets do not match the systems"));
        }
    }
    let mut s = Search::new(source, maps);
    s.margin = margin;
    s.budget = budget;
    s.run(&target_goals(target))
}

/// Proves that `f` maps the single-track SFT `x` into `y`.
pub fn check_into(f: &BlockMap, x: &Sft, y: &Sft, margin: usize) -> Verdict {
    let src = TrackSys::from_sfts(&[x]);
    let tgt = TrackSys::from_sfts(&[y]);
    check_into_sys(core::slice::from_ref(f), &src, &tgt, margin, DEFAULT_BUDGET)
}

/// Proves `a(x)_1 = b(x)_1` for all inputs in scope, under the given track modes.
pub fn check_equal(a: &BlockMap, b: &BlockMap, source: &TrackSys, modes: Vec<TrackMode>, scope: Scope, budget: u64) -> Verdict {
    let maps = [a.clone(), b.clone()];
    let mut s = Search::new(source, &maps);
    s.modes = modes;
    s.scope = scope;
    s.budget = budget;
    let id = source.group.identity();
    s.run(&[Goal::Differ { a: Probe { map: 0, at: id.clone() }, b: Probe { map: 1, at: id } }])
}
