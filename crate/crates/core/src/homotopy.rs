//! Contraction homotopies: explicit constructions, reparametrizations of
//! time, natural extensions and verification.

use alloc::boxed::Box;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::blockmap::{BlockMap, Cells, FnRule, MapDesc, Need, Remap};
use crate::check::{check_equal, check_into_sys, window_diameter, Block, Lit, Scope, TrackMode, TrackSys, Verdict};
use crate::error::{input, Error, Result};
use crate::group::Group;
use crate::pattern::{FiniteDomain, Sym};
use crate::sft::{burton_steif_values, Sft, DEFAULT_BUDGET};

/// Builtin name and parameters of a homotopy.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HomotopyDesc {
    /// Naive homotopy between the two projections.
    Naive { sft: Box<Sft> },
    /// Naive homotopy between two arbitrary maps.
    NaiveMaps { f: MapDesc, g: MapDesc },
    SafeSymbol { sft: Box<Sft>, safe: Sym },
    BurtonSteif { group: Group, m: usize },
    Coloring { group: Group, k: usize },
    Z0 { sft: Box<Sft>, zero: Sym },
    Mixing { sft: Box<Sft> },
    /// Time reparametrized from `I_2` to `I_m` through the top-symbol map.
    Lift { inner: Box<HomotopyDesc>, m: usize },
    /// Time reparametrized from `I_m` to `I_2` through `0 ↦ 0, 1 ↦ m-1`.
    Reduce { inner: Box<HomotopyDesc> },
}

/// One link of a verification chain: `maps` (one per target track) send
/// the source system into the target system.
#[derive(Clone, Debug)]
pub struct Stage {
    pub source: TrackSys,
    pub maps: Vec<BlockMap>,
    pub target: TrackSys,
}

/// A homotopy `h : I_k × X × X → X` (or `I_k × X → Y` for naive maps).
///
/// Track 0 is time over `{0, ..., k-1}`; the endpoints are `0` and `k-1`.
/// When `stages` is nonempty, the map equals the composite of the stage
/// maps and the chain is what verification proves.
#[derive(Clone, Debug)]
pub struct Homotopy {
    pub map: BlockMap,
    pub sft: Sft,
    pub time: usize,
    pub desc: HomotopyDesc,
    pub stages: Vec<Stage>,
}

impl PartialEq for Homotopy {
    fn eq(&self, other: &Self) -> bool {
        self.desc == other.desc && self.map == other.map && self.time == other.time
    }
}

impl Homotopy {
    fn new(map: BlockMap, sft: Sft, time: usize, desc: HomotopyDesc) -> Homotopy {
        let mut map = map;
        map.desc = MapDesc::Homotopy(Box::new(desc.clone()));
        Homotopy { map, sft, time, desc, stages: Vec::new() }
    }

    pub fn left(&self) -> Sym {
        0
    }

    pub fn right(&self) -> Sym {
        (self.time - 1) as Sym
    }

    /// Number of configuration tracks.
    pub fn tracks(&self) -> usize {
        self.map.sources.len() - 1
    }

    /// Rebuilds a builtin homotopy from its description.
    pub fn from_desc(desc: &HomotopyDesc) -> Result<Homotopy> {
        match desc {
            HomotopyDesc::Naive { sft } => Ok(naive_contraction(sft)),
            HomotopyDesc::NaiveMaps { .. } => input("naive homotopies of arbitrary maps have no file form"),
            HomotopyDesc::SafeSymbol { sft, safe } => safe_symbol_homotopy(sft, *safe),
            HomotopyDesc::BurtonSteif { group, m } => burton_steif(*group, *m).map(|p| p.1),
            HomotopyDesc::Coloring { group, k } => coloring_homotopy(*group, *k).map(|p| p.1),
            HomotopyDesc::Z0 { sft, zero } => z0_homotopy(sft, *zero),
            HomotopyDesc::Mixing { sft } => crate::onedim::mixing_contraction_homotopy(sft),
            HomotopyDesc::Lift { inner, m } => ksymbol_lift(&Homotopy::from_desc(inner)?, *m),
            HomotopyDesc::Reduce { inner } => ksymbol_reduce(&Homotopy::from_desc(inner)?),
        }
    }
}

/// `Some(s)` if every listed cell of `track` holds `s`.
pub(crate) fn unary(cx: &mut dyn Cells, track: usize, cells: &[usize]) -> core::result::Result<Option<Sym>, Need> {
    let first = cx.get(track, cells[0])?;
    for &c in &cells[1..] {
        if cx.get(track, c)? != first {
            return Ok(None);
        }
    }
    Ok(Some(first))
}

fn indices(nbhd: &FiniteDomain, d: &FiniteDomain) -> Vec<usize> {
    d.iter().map(|e| nbhd.index_of(e).expect("cell outside the neighborhood")).collect()
}

/// The naive homotopy `h(t, x)_a = f(x)_a` if `t_a = 0`, `g(x)_a` if `t_a = 1`.
pub fn naive_homotopy(x: &Sft, f: &BlockMap, g: &BlockMap) -> Result<Homotopy> {
    if f.sources != g.sources || f.target != g.target || f.group != g.group {
        return input("naive homotopy needs maps with equal sources and targets");
    }
    let group = f.group;
    let id = group.identity();
    let nbhd = FiniteDomain::singleton(id.clone()).union(&f.nbhd).union(&g.nbhd);
    let (fi, gi) = (indices(&nbhd, &f.nbhd), indices(&nbhd, &g.nbhd));
    let t0 = nbhd.index_of(&id).unwrap();
    let (fr, gr) = (f.rule.clone(), g.rule.clone());
    let rule = FnRule::new(move |cx| {
        if cx.get(0, t0)? == 0 {
            fr.eval(&mut Remap { cx, cells: &fi, track_offset: 1 })
        } else {
            gr.eval(&mut Remap { cx, cells: &gi, track_offset: 1 })
        }
    });
    let mut sources = vec![2];
    sources.extend(&f.sources);
    let map = BlockMap::new(group, sources, f.target, nbhd, rule, MapDesc::Constant { symbol: 0 });
    Ok(Homotopy::new(map, x.clone(), 2, HomotopyDesc::NaiveMaps { f: f.desc.clone(), g: g.desc.clone() }))
}

/// The naive homotopy between the two projections `X × X → X`.
pub fn naive_contraction(x: &Sft) -> Homotopy {
    let n = x.size();
    let p1 = BlockMap::project(x.group, vec![n, n], 0);
    let p2 = BlockMap::project(x.group, vec![n, n], 1);
    let mut h = naive_homotopy(x, &p1, &p2).unwrap();
    h.desc = HomotopyDesc::Naive { sft: Box::new(x.clone()) };
    h.map.desc = MapDesc::Homotopy(Box::new(h.desc.clone()));
    h
}

/// Copies `x` where time is constantly 0 on `zone`, `y` where it is
/// constantly 1, and `fill` elsewhere.
fn three_case(x: &Sft, zone: FiniteDomain, fill: Sym, desc: HomotopyDesc) -> Homotopy {
    let g = x.group;
    let n = x.size();
    let id = g.identity();
    let nbhd = zone.union(&FiniteDomain::singleton(id.clone()));
    let zi = indices(&nbhd, &zone);
    let c = nbhd.index_of(&id).unwrap();
    let rule = FnRule::new(move |cx| match unary(cx, 0, &zi)? {
        Some(0) => cx.get(1, c),
        Some(_) => cx.get(2, c),
        None => Ok(fill),
    });
    let map = BlockMap::new(g, vec![2, n, n], n, nbhd, rule, MapDesc::Constant { symbol: 0 });
    Homotopy::new(map, x.clone(), 2, desc)
}

/// The safe-symbol homotopy with `M = F⁻¹ ∪ {1}`.
pub fn safe_symbol_homotopy(x: &Sft, safe: Sym) -> Result<Homotopy> {
    if safe as usize >= x.size() {
        return input("safe symbol outside the alphabet");
    }
    if let Err(p) = x.check_safe_symbol(safe) {
        return Err(Error::Input(format!(
            "symbol {} is not safe: replacing one cell of {:?} creates a valid pattern",
            x.alphabet[safe as usize], p.symbols
        )));
    }
    let m = x.window.inverse().union(&FiniteDomain::singleton(x.group.identity()));
    Ok(three_case(x, m, safe, HomotopyDesc::SafeSymbol { sft: Box::new(x.clone()), safe }))
}

fn s_connected(group: Group, d: &FiniteDomain) -> bool {
    if d.is_empty() {
        return true;
    }
    let gens = group.generators();
    let mut seen = vec![false; d.len()];
    let mut stack = vec![0usize];
    seen[0] = true;
    while let Some(i) = stack.pop() {
        for s in &gens {
            if let Some(j) = d.index_of(&d.get(i).mul(s)) {
                if !seen[j] {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
    }
    seen.iter().all(|&b| b)
}

/// The homotopy for subshifts whose forbidden patterns avoid `zero` and
/// have connected domains. Time is tested on the unit ball `aB_1`.
pub fn z0_homotopy(x: &Sft, zero: Sym) -> Result<Homotopy> {
    if zero as usize >= x.size() {
        return input("zero symbol outside the alphabet");
    }
    for p in &x.forbidden {
        if p.symbols.contains(&zero) {
            return input(format!("forbidden pattern {:?} contains the zero symbol", p.symbols));
        }
        if !s_connected(x.group, &p.domain) {
            return input(format!("forbidden pattern {:?} has a disconnected domain", p.symbols));
        }
    }
    let zone = x.group.ball(1);
    Ok(three_case(x, zone, zero, HomotopyDesc::Z0 { sft: Box::new(x.clone()), zero }))
}

/// The Burton–Steif SFT and its contraction homotopy.
///
/// Time is tested on unit balls. Near a constant-0 ball around a neighbor
/// `ab` the cell takes `sign(x_ab)`, choosing the neighbor with the largest
/// `|x_ab|` (first in canonical order on ties); symmetrically for 1 and `y`.
pub fn burton_steif(group: Group, m: usize) -> Result<(Sft, Homotopy)> {
    if m == 0 {
        return input("Burton–Steif alphabet needs m >= 1");
    }
    let x = Sft::burton_steif(group, m);
    let n = x.size();
    let vals = burton_steif_values(m);
    let nbhd = group.ball(2);
    let id = group.identity();
    let b1 = group.ball(1);
    let center = indices(&nbhd, &b1);
    let gens = group.generators();
    let around: Vec<(usize, Vec<usize>)> = gens
        .iter()
        .map(|s| (nbhd.index_of(s).unwrap(), indices(&nbhd, &b1.translate(s))))
        .collect();
    let c = nbhd.index_of(&id).unwrap();
    let (neg, pos) = ((m - 1) as Sym, m as Sym);
    let rule = FnRule::new(move |cx| {
        match unary(cx, 0, &center)? {
            Some(0) => return cx.get(1, c),
            Some(_) => return cx.get(2, c),
            None => {}
        }
        for side in 0..2u16 {
            let mut best: Option<(i64, Sym)> = None;
            for (cell, ball) in &around {
                if unary(cx, 0, ball)? == Some(side) {
                    let v = vals[cx.get(1 + side as usize, *cell)? as usize];
                    if best.map_or(true, |(bv, _)| v.abs() > bv) {
                        best = Some((v.abs(), if v > 0 { pos } else { neg }));
                    }
                }
            }
            if let Some((_, s)) = best {
                return Ok(s);
            }
        }
        Ok(pos)
    });
    let map = BlockMap::new(group, vec![2, n, n], n, nbhd, rule, MapDesc::Constant { symbol: 0 });
    Ok((x.clone(), Homotopy::new(map, x, 2, HomotopyDesc::BurtonSteif { group, m })))
}

fn pair_cores(group: Group, track: usize, forbid: impl Fn(Sym, Sym) -> bool, size: usize) -> Vec<Vec<Lit>> {
    let id = group.identity();
    let mut cores = Vec::new();
    for s in group.generators() {
        for u in 0..size as Sym {
            for v in 0..size as Sym {
                if forbid(u, v) {
                    cores.push(vec![(id.clone(), track, u), (s.clone(), track, v)]);
                }
            }
        }
    }
    cores
}

/// The constraint system after coloring stage `done` (colors `0..done` settled):
/// `x` proper, adjacent non-blank `c` differ, `c` non-blank where `x < done`.
fn coloring_stage_block(group: Group, k: usize, done: usize) -> Block {
    let blank = k as Sym;
    let mut cores = pair_cores(group, 0, |u, v| u == v, k);
    cores.extend(pair_cores(group, 1, |u, v| u == v && u != blank, k + 1));
    let id = group.identity();
    for j in 0..done as Sym {
        cores.push(vec![(id.clone(), 0, j), (id.clone(), 1, blank)]);
    }
    Block::custom(group, vec![k, k + 1], group.ball(1), cores)
}

/// Proper colorings with `k >= |S| + 1` colors and the staged homotopy.
///
/// Stage 0 copies `x` where `t_a = 0`, `y` where `t|aS ≡ 1` and writes a
/// blank elsewhere; stage `i` fills blanks on cells with `x_a = i` by the
/// least color absent from the neighbors.
pub fn coloring_homotopy(group: Group, k: usize) -> Result<(Sft, Homotopy)> {
    let s = group.generators();
    if k < s.len() + 1 {
        return input(format!("coloring needs at least {} colors, got {k}", s.len() + 1));
    }
    if k > 63 {
        return input("coloring supports at most 63 colors");
    }
    let x = Sft::coloring(group, k);
    let blank = k as Sym;
    let id = group.identity();
    let b1 = group.ball(1);
    let c = b1.index_of(&id).unwrap();
    let si: Vec<usize> = s.iter().map(|e| b1.index_of(e).unwrap()).collect();
    let src = vec![2, k, k];

    let si0 = si.clone();
    let h0_rule = FnRule::new(move |cx| {
        if cx.get(0, c)? == 0 {
            return cx.get(1, c);
        }
        if unary(cx, 0, &si0)? == Some(1) {
            return cx.get(2, c);
        }
        Ok(blank)
    });
    let h0 = BlockMap::new(group, src.clone(), k + 1, b1.clone(), h0_rule, MapDesc::Named { name: "coloring stage 0".into() });
    let xproj = BlockMap::project(group, src.clone(), 1);

    let full_time = Sft::full(group, 2);
    let start = TrackSys::from_sfts(&[&full_time, &x, &x]);
    let mut sys = TrackSys::new(group);
    sys.push(coloring_stage_block(group, k, 0));
    let mut stages = vec![Stage { source: start, maps: vec![xproj.clone(), h0.clone()], target: sys.clone() }];

    let mut composite = h0;
    for i in 0..k {
        let si_i = si.clone();
        let step_rule = FnRule::new(move |cx| {
            let cur = cx.get(1, c)?;
            if cur != blank {
                return Ok(cur);
            }
            if cx.get(0, c)? as usize != i {
                return Ok(blank);
            }
            let mut used = 0u64;
            for &n in &si_i {
                let v = cx.get(1, n)?;
                if v != blank {
                    used |= 1 << v;
                }
            }
            Ok((!used).trailing_zeros() as Sym)
        });
        let step = BlockMap::new(group, vec![k, k + 1], k + 1, b1.clone(), step_rule, MapDesc::Named { name: format!("coloring stage {}", i + 1) });
        let mut next = TrackSys::new(group);
        next.push(coloring_stage_block(group, k, i + 1));
        stages.push(Stage {
            source: sys.clone(),
            maps: vec![BlockMap::project(group, vec![k, k + 1], 0), step.clone()],
            target: next.clone(),
        });
        sys = next;
        composite = BlockMap::compose(&step, &[xproj.clone(), composite])?;
    }
    let mut strip: Vec<Sym> = (0..k as Sym).collect();
    strip.push(0);
    let strip = BlockMap::relabel(group, k + 1, k, strip)?;
    stages.push(Stage {
        source: sys,
        maps: vec![strip.on_tracks(vec![k, k + 1], vec![1])?],
        target: TrackSys::from_sfts(&[&x]),
    });
    let map = composite.then(&strip)?;
    let mut h = Homotopy::new(map, x.clone(), 2, HomotopyDesc::Coloring { group, k });
    h.stages = stages;
    Ok((x, h))
}

/// Replaces time by `tmap(t)` where `tmap : I_j → I_k` respects endpoints.
pub fn precompose_time(h: &Homotopy, tmap: &BlockMap, desc: HomotopyDesc) -> Result<Homotopy> {
    if tmap.sources.len() != 1 || tmap.target != h.time {
        return input("time map must go from one time alphabet to the homotopy's");
    }
    let mut sources = h.map.sources.clone();
    sources[0] = tmap.sources[0];
    let lift = |m: &BlockMap| -> Result<BlockMap> {
        let mut inner = vec![tmap.on_tracks(sources.clone(), vec![0])?];
        for t in 1..sources.len() {
            inner.push(BlockMap::project(h.map.group, sources.clone(), t));
        }
        BlockMap::compose(m, &inner)
    };
    let map = lift(&h.map)?;
    let mut stages = h.stages.clone();
    if let Some(first) = stages.first_mut() {
        let mut src = TrackSys::new(h.map.group);
        src.push_sft(&Sft::full(h.map.group, tmap.sources[0]));
        for (tracks, b) in first.source.blocks.iter().skip(1) {
            debug_assert!(!tracks.contains(&0));
            src.push(b.clone());
        }
        first.source = src;
        first.maps = first.maps.iter().map(&lift).collect::<Result<Vec<_>>>()?;
    }
    let mut out = Homotopy::new(map, h.sft.clone(), tmap.sources[0], desc);
    out.stages = stages;
    Ok(out)
}

/// Reparametrizes an `I_m` homotopy to `I_2` through `0 ↦ 0, 1 ↦ m-1`.
pub fn ksymbol_reduce(h: &Homotopy) -> Result<Homotopy> {
    if h.time < 2 {
        return input("time alphabet needs at least two symbols");
    }
    let pi = BlockMap::relabel(h.map.group, 2, h.time, vec![0, (h.time - 1) as Sym])?;
    precompose_time(h, &pi, HomotopyDesc::Reduce { inner: Box::new(h.desc.clone()) })
}

/// Reparametrizes an `I_2` homotopy to `I_m` through the top-symbol map.
pub fn ksymbol_lift(h: &Homotopy, m: usize) -> Result<Homotopy> {
    if h.time != 2 || m < 2 {
        return input("lifting needs an I_2 homotopy and m >= 2");
    }
    let pi = BlockMap::top_symbol(h.map.group, m);
    precompose_time(h, &pi, HomotopyDesc::Lift { inner: Box::new(h.desc.clone()), m })
}

/// Which time-dilation map to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Dilation {
    BallMin,
    ZMinMax,
}

/// The endpoint-fixing dilation map on the binary time shift.
pub fn dilation(group: Group, n: usize, variant: Dilation) -> Result<BlockMap> {
    match variant {
        Dilation::BallMin => Ok(BlockMap::ball_min(group, n)),
        Dilation::ZMinMax if group == Group::Line => Ok(BlockMap::z_min_max(n)),
        Dilation::ZMinMax => input("the min-max dilation is defined on the line only"),
    }
}

/// Extends a contraction homotopy to all inputs: copy `x` (resp. `y`) when
/// time is constantly 0 (resp. 1) on the neighborhood, use the rule when
/// both configurations are locally valid there, else write symbol 0.
pub fn natural_extension(h: &Homotopy) -> Result<BlockMap> {
    if h.tracks() != 2 || h.time != 2 {
        return input("natural extension needs a binary-time homotopy with two configuration tracks");
    }
    let x = &h.sft;
    let nbhd = h.map.nbhd.clone();
    let id = x.group.identity();
    let c = nbhd.index_of(&id).ok_or_else(|| Error::Input("homotopy neighborhood must contain the identity".into()))?;
    let all: Vec<usize> = (0..nbhd.len()).collect();
    let mut checks: Vec<Vec<(usize, Sym)>> = Vec::new();
    for a in x.placements(&nbhd) {
        for core in &x.forbidden {
            checks.push(core.cells().map(|(e, s)| (nbhd.index_of(&a.mul(e)).unwrap(), s)).collect());
        }
    }
    let inner = h.map.rule.clone();
    let rule = FnRule::new(move |cx| {
        match unary(cx, 0, &all)? {
            Some(0) => return cx.get(1, c),
            Some(_) => return cx.get(2, c),
            None => {}
        }
        for track in 1..3 {
            for lits in &checks {
                let mut hit = true;
                for &(cell, s) in lits {
                    if cx.get(track, cell)? != s {
                        hit = false;
                        break;
                    }
                }
                if hit {
                    return Ok(0);
                }
            }
        }
        inner.eval(cx)
    });
    Ok(BlockMap::new(
        x.group,
        h.map.sources.clone(),
        h.map.target,
        nbhd,
        rule,
        MapDesc::NaturalExtension(Box::new(h.desc.clone())),
    ))
}

/// The source system `I_k × X × X`.
pub fn contraction_source(h: &Homotopy) -> TrackSys {
    let full = Sft::full(h.sft.group, h.time);
    TrackSys::from_sfts(&[&full, &h.sft, &h.sft])
}

/// Checks the endpoint identities over all neighborhood contents.
pub fn verify_endpoints(h: &Homotopy, budget: u64) -> Verdict {
    let src = contraction_source(h);
    let n = h.sft.size();
    let mut v = Verdict::Proved;
    for (end, track) in [(h.left(), 1usize), (h.right(), 2)] {
        let proj = BlockMap::project(h.map.group, vec![h.time, n, n], track);
        let modes = vec![TrackMode::Pinned(end), TrackMode::Free, TrackMode::Free];
        v = v.then(|| check_equal(&h.map, &proj, &src, modes, Scope::All, budget));
    }
    v
}

/// Checks `h(t, x, x) = x` over all neighborhood contents.
pub fn verify_diagonal(h: &Homotopy, budget: u64) -> Verdict {
    let src = contraction_source(h);
    let n = h.sft.size();
    let proj = BlockMap::project(h.map.group, vec![h.time, n, n], 1);
    let modes = vec![TrackMode::Free, TrackMode::Free, TrackMode::Alias(1)];
    check_equal(&h.map, &proj, &src, modes, Scope::All, budget)
}

/// Proves that `h` maps `I_k × X × X` into `X`.
pub fn verify_image(h: &Homotopy, margin: usize, budget: u64) -> Verdict {
    if h.stages.is_empty() {
        let target = TrackSys::from_sfts(&[&h.sft]);
        return check_into_sys(core::slice::from_ref(&h.map), &contraction_source(h), &target, margin, budget);
    }
    let mut v = Verdict::Proved;
    for st in &h.stages {
        v = v.then(|| check_into_sys(&st.maps, &st.source, &st.target, margin, budget));
    }
    v
}

/// Verifies that `h` is a contraction homotopy of its SFT: endpoint
/// identities, image inside the SFT, and optionally the diagonal law.
/// The default margin is the diameter of the SFT's window.
pub fn verify_contraction(h: &Homotopy, margin: Option<usize>, diagonal: bool) -> Verdict {
    verify_contraction_with(h, margin, diagonal, DEFAULT_BUDGET)
}

pub fn verify_contraction_with(h: &Homotopy, margin: Option<usize>, diagonal: bool, budget: u64) -> Verdict {
    if h.tracks() != 2 {
        return Verdict::Unknown("verification needs two configuration tracks".into());
    }
    let margin = margin.unwrap_or_else(|| window_diameter(&h.sft.window));
    let v = verify_endpoints(h, budget).then(|| verify_image(h, margin, budget));
    if diagonal {
        v.then(|| verify_diagonal(h, budget))
    } else {
        v
    }
}

/// Evaluates a homotopy on explicit neighborhood contents.
pub fn eval_at(h: &Homotopy, t: &[Sym], x: &[Sym], y: &[Sym]) -> Sym {
    h.map.eval(&[t.to_vec(), x.to_vec(), y.to_vec()])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn safe_symbol_golden_mean() {
        let gm = Sft::golden_mean();
        let h = safe_symbol_homotopy(&gm, 0).unwrap();
        assert_eq!(h.map.nbhd, FiniteDomain::interval(-1, 0));
        assert!(verify_contraction(&h, Some(1), false).is_proved());
        assert!(safe_symbol_homotopy(&gm, 1).is_err());
    }

    #[test]
    fn naive_fails_on_golden_mean() {
        let gm = Sft::golden_mean();
        let h = naive_contraction(&gm);
        assert!(matches!(verify_contraction(&h, None, false), Verdict::Counterexample(_)));
        let full = Sft::full(Group::Line, 2);
        assert!(verify_contraction(&naive_contraction(&full), None, true).is_proved());
    }

    #[test]
    fn z0_validation() {
        let x = Sft::vertex_shift(2, &[(0, 1), (1, 0), (1, 1)]);
        assert!(z0_homotopy(&x, 0).is_err());
        let gm = Sft::golden_mean();
        assert!(verify_contraction(&z0_homotopy(&gm, 0).unwrap(), None, false).is_proved());
    }
}
