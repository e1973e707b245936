//! Sliding block codes given by local rules.
//!
//! A rule reads the cells of its neighborhood through the [`Cells`] trait.
//! Reads may fail with [`Need`], which lets the lazy checker branch on
//! exactly the cells a rule inspects.

use alloc::boxed::Box;
use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{input, Result};
use crate::group::Group;
use crate::homotopy::HomotopyDesc;
use crate::pattern::{FiniteDomain, Pattern, Sym};
use crate::periodic::PeriodicConfig;
use crate::sft::Sft;

/// A request for an unassigned cell, identified by an opaque variable id.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Need(pub usize);

/// Read access to the neighborhood contents of one cell.
pub trait Cells {
    /// Symbol on `track` at the neighborhood element with index `cell`.
    fn get(&mut self, track: usize, cell: usize) -> core::result::Result<Sym, Need>;
}

/// A local rule evaluated on neighborhood contents.
pub trait LocalRule: Send + Sync {
    fn eval(&self, cx: &mut dyn Cells) -> core::result::Result<Sym, Need>;
}

type RuleFn = dyn Fn(&mut dyn Cells) -> core::result::Result<Sym, Need> + Send + Sync;

/// A rule given by a closure.
pub struct FnRule(Box<RuleFn>);

impl FnRule {
    pub fn new(
        f: impl Fn(&mut dyn Cells) -> core::result::Result<Sym, Need> + Send + Sync + 'static,
    ) -> Arc<dyn LocalRule> {
        Arc::new(FnRule(Box::new(f)))
    }
}

impl LocalRule for FnRule {
    fn eval(&self, cx: &mut dyn Cells) -> core::result::Result<Sym, Need> {
        (self.0)(cx)
    }
}

/// Structural description of a block map, used for equality and file round trips.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MapDesc {
    /// Dense table; rows are indexed by the neighborhood contents read
    /// track by track, cells in canonical order, first digit most significant.
    Table { rows: Vec<Sym> },
    /// Copies the given track at the identity.
    Project { track: usize },
    /// Sum modulo 2 of the cells of the neighborhood.
    Xor,
    /// Writes a constant symbol.
    Constant { symbol: Sym },
    /// Applies a symbol map to the identity cell.
    Relabel { table: Vec<Sym> },
    /// Minimum over the radius-`n` ball.
    BallMin { n: usize },
    /// Minimum over `[a, a + 10n]` followed by maximum over `[a, a + n]`.
    ZMinMax { n: usize },
    /// `I_m -> I_2`: the top symbol maps to 1, everything else to 0.
    TopSymbol { m: usize },
    Compose { outer: Box<MapDesc>, inner: Vec<MapDesc> },
    Product { left: Box<MapDesc>, right: Box<MapDesc> },
    Tuple { parts: Vec<MapDesc> },
    /// A rule reading its tracks from the listed tracks of a wider source.
    OnTracks { inner: Box<MapDesc>, tracks: Vec<usize> },
    Homotopy(Box<HomotopyDesc>),
    NaturalExtension(Box<HomotopyDesc>),
    Retraction { sft: Box<Sft>, homotopy: Box<HomotopyDesc>, fixed: Sym, radius: usize },
    Stitch { parts: Vec<MapDesc>, target: Box<Sft>, homotopy: Box<HomotopyDesc> },
    Factor { f: Box<MapDesc>, g: Box<MapDesc>, target: Box<Sft>, homotopy: Box<HomotopyDesc> },
    /// Built by a fixture without a file form.
    Named { name: alloc::string::String },
}

/// A block map `f(x)_a = f_loc(a^{-1}(x|aN))` on one or more source tracks.
#[derive(Clone)]
pub struct BlockMap {
    pub group: Group,
    /// Alphabet size of each source track.
    pub sources: Vec<usize>,
    /// Alphabet size of the target.
    pub target: usize,
    pub nbhd: FiniteDomain,
    pub rule: Arc<dyn LocalRule>,
    pub desc: MapDesc,
}

impl fmt::Debug for BlockMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BlockMap")
            .field("group", &self.group)
            .field("sources", &self.sources)
            .field("target", &self.target)
            .field("nbhd", &self.nbhd.len())
            .field("desc", &self.desc)
            .finish()
    }
}

impl PartialEq for BlockMap {
    fn eq(&self, other: &Self) -> bool {
        self.group == other.group
            && self.sources == other.sources
            && self.target == other.target
            && self.nbhd == other.nbhd
            && self.desc == other.desc
    }
}

struct SliceCells<'a> {
    vals: &'a [Vec<Sym>],
}

impl Cells for SliceCells<'_> {
    fn get(&mut self, track: usize, cell: usize) -> core::result::Result<Sym, Need> {
        Ok(self.vals[track][cell])
    }
}

impl BlockMap {
    pub fn new(
        group: Group,
        sources: Vec<usize>,
        target: usize,
        nbhd: FiniteDomain,
        rule: Arc<dyn LocalRule>,
        desc: MapDesc,
    ) -> BlockMap {
        BlockMap { group, sources, target, nbhd, rule, desc }
    }

    /// Evaluates the rule on full neighborhood contents, one vector per track.
    pub fn eval(&self, contents: &[Vec<Sym>]) -> Sym {
        self.rule
            .eval(&mut SliceCells { vals: contents })
            .unwrap_or_else(|_| unreachable!("total contents never need more cells"))
    }

    /// A dense table rule over the given neighborhood.
    pub fn table(group: Group, sources: Vec<usize>, target: usize, nbhd: FiniteDomain, rows: Vec<Sym>) -> Result<BlockMap> {
        let n = nbhd.len();
        let mut expected: u128 = 1;
        for &s in &sources {
            for _ in 0..n {
                expected = expected.saturating_mul(s as u128);
            }
        }
        if expected != rows.len() as u128 {
            return input(format!("table has {} rows, expected {expected}", rows.len()));
        }
        if rows.iter().any(|&r| r as usize >= target) {
            return input("table row outside the target alphabet");
        }
        let srcs = sources.clone();
        let table = Arc::new(rows.clone());
        let rule = FnRule::new(move |cx| {
            let mut idx = 0usize;
            for (t, &s) in srcs.iter().enumerate() {
                for c in 0..n {
                    idx = idx * s + cx.get(t, c)? as usize;
                }
            }
            Ok(table[idx])
        });
        Ok(BlockMap::new(group, sources, target, nbhd, rule, MapDesc::Table { rows }))
    }

    /// Tabulates any map with a small neighborhood.
    pub fn tabulate(&self) -> Result<BlockMap> {
        let n = self.nbhd.len();
        let cells: usize = self.sources.len() * n;
        let mut total: u128 = 1;
        for &s in &self.sources {
            for _ in 0..n {
                total = total.saturating_mul(s as u128);
            }
        }
        if total > 1 << 24 {
            return input("neighborhood too large to tabulate");
        }
        let mut rows = Vec::with_capacity(total as usize);
        let mut digits = vec![0usize; cells];
        let radix: Vec<usize> = self.sources.iter().flat_map(|&s| core::iter::repeat(s).take(n)).collect();
        for _ in 0..total {
            let contents: Vec<Vec<Sym>> = (0..self.sources.len())
                .map(|t| digits[t * n..(t + 1) * n].iter().map(|&d| d as Sym).collect())
                .collect();
            rows.push(self.eval(&contents));
            let mut k = cells;
            while k > 0 {
                k -= 1;
                digits[k] += 1;
                if digits[k] < radix[k] {
                    break;
                }
                digits[k] = 0;
            }
        }
        BlockMap::table(self.group, self.sources.clone(), self.target, self.nbhd.clone(), rows)
    }

    /// Projection onto one source track.
    pub fn project(group: Group, sources: Vec<usize>, track: usize) -> BlockMap {
        let target = sources[track];
        let rule = FnRule::new(move |cx| cx.get(track, 0));
        let nbhd = FiniteDomain::singleton(group.identity());
        BlockMap::new(group, sources, target, nbhd, rule, MapDesc::Project { track })
    }

    /// The identity on a single track.
    pub fn identity(group: Group, size: usize) -> BlockMap {
        BlockMap::project(group, vec![size], 0)
    }

    /// Sum modulo 2 over the neighborhood of a binary track.
    pub fn xor(group: Group, nbhd: FiniteDomain) -> BlockMap {
        let n = nbhd.len();
        let rule = FnRule::new(move |cx| {
            let mut s = 0;
            for c in 0..n {
                s ^= cx.get(0, c)?;
            }
            Ok(s)
        });
        BlockMap::new(group, vec![2], 2, nbhd, rule, MapDesc::Xor)
    }

    /// `x ↦ x_a XOR x_{a+1}` on the line.
    pub fn line_xor() -> BlockMap {
        BlockMap::xor(Group::Line, FiniteDomain::interval(0, 1))
    }

    pub fn constant(group: Group, sources: Vec<usize>, target: usize, symbol: Sym) -> BlockMap {
        let rule = FnRule::new(move |_| Ok(symbol));
        let nbhd = FiniteDomain::singleton(group.identity());
        BlockMap::new(group, sources, target, nbhd, rule, MapDesc::Constant { symbol })
    }

    /// Applies a symbol map cellwise.
    pub fn relabel(group: Group, source: usize, target: usize, table: Vec<Sym>) -> Result<BlockMap> {
        if table.len() != source || table.iter().any(|&t| t as usize >= target) {
            return input("relabel table does not match the alphabets");
        }
        let t = table.clone();
        let rule = FnRule::new(move |cx| Ok(t[cx.get(0, 0)? as usize]));
        let nbhd = FiniteDomain::singleton(group.identity());
        Ok(BlockMap::new(group, vec![source], target, nbhd, rule, MapDesc::Relabel { table }))
    }

    /// Minimum over the radius-`n` ball of a binary track.
    pub fn ball_min(group: Group, n: usize) -> BlockMap {
        let nbhd = group.ball(n);
        let k = nbhd.len();
        let rule = FnRule::new(move |cx| {
            for c in 0..k {
                if cx.get(0, c)? == 0 {
                    return Ok(0);
                }
            }
            Ok(1)
        });
        BlockMap::new(group, vec![2], 2, nbhd, rule, MapDesc::BallMin { n })
    }

    /// Minimum over `[a, a + 10n]`, then maximum over `[a, a + n]`.
    pub fn z_min_max(n: usize) -> BlockMap {
        let n = n as i64;
        let nbhd = FiniteDomain::interval(0, 11 * n);
        let rule = FnRule::new(move |cx| {
            for j in 0..=n {
                let mut min = 1;
                for k in 0..=10 * n {
                    if cx.get(0, (j + k) as usize)? == 0 {
                        min = 0;
                        break;
                    }
                }
                if min == 1 {
                    return Ok(1);
                }
            }
            Ok(0)
        });
        BlockMap::new(Group::Line, vec![2], 2, nbhd, rule, MapDesc::ZMinMax { n: n as usize })
    }

    /// The endpoint-respecting map `I_m -> I_2`.
    pub fn top_symbol(group: Group, m: usize) -> BlockMap {
        let top = (m - 1) as Sym;
        let rule = FnRule::new(move |cx| Ok((cx.get(0, 0)? == top) as Sym));
        let nbhd = FiniteDomain::singleton(group.identity());
        BlockMap::new(group, vec![m], 2, nbhd, rule, MapDesc::TopSymbol { m })
    }

    /// `g ∘ (f_1, ..., f_k)`: the `j`-th source track of `g` is fed by `f_j`.
    pub fn compose(g: &BlockMap, fs: &[BlockMap]) -> Result<BlockMap> {
        if fs.is_empty() || g.sources.len() != fs.len() {
            return input("composition needs one inner map per outer source track");
        }
        for (j, f) in fs.iter().enumerate() {
            if f.group != g.group || f.sources != fs[0].sources {
                return input("inner maps must share group and source alphabets");
            }
            if f.target != g.sources[j] {
                return input(format!("alphabet mismatch on track {j}: {} vs {}", f.target, g.sources[j]));
            }
        }
        let inner_union = fs.iter().fold(FiniteDomain::default(), |acc, f| acc.union(&f.nbhd));
        let nbhd = g.nbhd.product(&inner_union);
        let table: Vec<Vec<Vec<usize>>> = fs
            .iter()
            .map(|f| {
                g.nbhd
                    .iter()
                    .map(|b| f.nbhd.iter().map(|n| nbhd.index_of(&b.mul(n)).unwrap()).collect())
                    .collect()
            })
            .collect();
        let rule = Arc::new(CompRule {
            outer: g.rule.clone(),
            inner: fs.iter().map(|f| f.rule.clone()).collect(),
            table,
            width: g.nbhd.len(),
        });
        let desc = MapDesc::Compose {
            outer: Box::new(g.desc.clone()),
            inner: fs.iter().map(|f| f.desc.clone()).collect(),
        };
        Ok(BlockMap::new(g.group, fs[0].sources.clone(), g.target, nbhd, rule, desc))
    }

    /// `g ∘ f` for single-track `g`.
    pub fn then(&self, g: &BlockMap) -> Result<BlockMap> {
        BlockMap::compose(g, core::slice::from_ref(self))
    }

    /// Maps sharing their source tracks, combined into one product-coded target.
    pub fn tuple(parts: &[BlockMap]) -> Result<BlockMap> {
        if parts.is_empty() || parts.iter().any(|p| p.sources != parts[0].sources || p.group != parts[0].group) {
            return input("tuple parts must share group and sources");
        }
        let nbhd = parts.iter().fold(FiniteDomain::default(), |acc, f| acc.union(&f.nbhd));
        let maps: Vec<(Arc<dyn LocalRule>, Vec<usize>, usize)> = parts
            .iter()
            .map(|f| (f.rule.clone(), f.nbhd.iter().map(|n| nbhd.index_of(n).unwrap()).collect(), f.target))
            .collect();
        let target = parts.iter().map(|p| p.target).product();
        let rule = FnRule::new(move |cx| {
            let mut code = 0usize;
            for (r, idx, t) in &maps {
                let v = r.eval(&mut Remap { cx, cells: idx, track_offset: 0 })?;
                code = code * t + v as usize;
            }
            Ok(code as Sym)
        });
        let desc = MapDesc::Tuple { parts: parts.iter().map(|p| p.desc.clone()).collect() };
        Ok(BlockMap::new(parts[0].group, parts[0].sources.clone(), target, nbhd, rule, desc))
    }

    /// `f × g` acting on concatenated source tracks, product-coded target `f·|g| + g`.
    pub fn product(f: &BlockMap, g: &BlockMap) -> Result<BlockMap> {
        if f.group != g.group {
            return input("product of maps over different groups");
        }
        let nbhd = f.nbhd.union(&g.nbhd);
        let fi: Vec<usize> = f.nbhd.iter().map(|n| nbhd.index_of(n).unwrap()).collect();
        let gi: Vec<usize> = g.nbhd.iter().map(|n| nbhd.index_of(n).unwrap()).collect();
        let (fr, gr) = (f.rule.clone(), g.rule.clone());
        let off = f.sources.len();
        let gt = g.target;
        let rule = FnRule::new(move |cx| {
            let a = fr.eval(&mut Remap { cx, cells: &fi, track_offset: 0 })?;
            let b = gr.eval(&mut Remap { cx, cells: &gi, track_offset: off })?;
            Ok((a as usize * gt + b as usize) as Sym)
        });
        let mut sources = f.sources.clone();
        sources.extend(&g.sources);
        let desc = MapDesc::Product { left: Box::new(f.desc.clone()), right: Box::new(g.desc.clone()) };
        Ok(BlockMap::new(f.group, sources, f.target * g.target, nbhd, rule, desc))
    }

    /// The same rule reading its track `j` from track `tracks[j]` of a wider source.
    pub fn on_tracks(&self, sources: Vec<usize>, tracks: Vec<usize>) -> Result<BlockMap> {
        if tracks.len() != self.sources.len() || tracks.iter().zip(&self.sources).any(|(&t, &s)| sources.get(t) != Some(&s)) {
            return input("track map does not match the source alphabets");
        }
        let inner = self.rule.clone();
        let tr = tracks.clone();
        let rule = FnRule::new(move |cx| inner.eval(&mut Rewire { cx, tracks: &tr }));
        let desc = MapDesc::OnTracks { inner: Box::new(self.desc.clone()), tracks };
        Ok(BlockMap::new(self.group, sources, self.target, self.nbhd.clone(), rule, desc))
    }

    /// Output domain `{a : aN ⊆ D}` for an input domain `D`.
    pub fn output_domain(&self, d: &FiniteDomain) -> FiniteDomain {
        let cand = d.product(&self.nbhd.inverse());
        FiniteDomain::new(
            cand.iter()
                .filter(|a| self.nbhd.iter().all(|n| d.contains(&a.mul(n))))
                .cloned()
                .collect(),
        )
    }

    /// Applies the map to one pattern per source track.
    pub fn apply(&self, inputs: &[Pattern]) -> Result<Pattern> {
        if inputs.len() != self.sources.len() {
            return input(format!("expected {} input tracks, got {}", self.sources.len(), inputs.len()));
        }
        for (p, &s) in inputs.iter().zip(&self.sources) {
            if p.symbols.iter().any(|&x| x as usize >= s) {
                return input("input symbol outside the source alphabet");
            }
        }
        let d = inputs.iter().skip(1).fold(inputs[0].domain.clone(), |acc, p| acc.intersection(&p.domain));
        let out_dom = self.output_domain(&d);
        let mut symbols = Vec::with_capacity(out_dom.len());
        let mut contents: Vec<Vec<Sym>> = vec![vec![0; self.nbhd.len()]; self.sources.len()];
        for a in &out_dom {
            for (t, p) in inputs.iter().enumerate() {
                for (i, n) in self.nbhd.iter().enumerate() {
                    contents[t][i] = p.get(&a.mul(n)).unwrap();
                }
            }
            symbols.push(self.eval(&contents));
        }
        Ok(Pattern::new(out_dom, symbols))
    }

    /// Applies the map to periodic configurations sharing their period data.
    pub fn apply_periodic(&self, inputs: &[PeriodicConfig]) -> Result<PeriodicConfig> {
        if inputs.len() != self.sources.len() || inputs.is_empty() {
            return input("wrong number of input tracks");
        }
        if inputs.iter().any(|c| !c.same_period(&inputs[0])) {
            return input("inputs must share their period data");
        }
        let base = &inputs[0];
        let cells = base.cell_count();
        let offs: Vec<Vec<usize>> = (0..cells).map(|v| self.nbhd.iter().map(|n| base.neighbor(v, n)).collect()).collect();
        let mut out = Vec::with_capacity(cells);
        let mut contents: Vec<Vec<Sym>> = vec![vec![0; self.nbhd.len()]; self.sources.len()];
        for v in 0..cells {
            for (t, c) in inputs.iter().enumerate() {
                for (i, &w) in offs[v].iter().enumerate() {
                    contents[t][i] = c.labels()[w];
                }
            }
            out.push(self.eval(&contents));
        }
        Ok(base.with_labels(out))
    }
}

/// Remaps neighborhood indices (and tracks) of an inner rule onto an outer context.
pub(crate) struct Remap<'a, 'b> {
    pub cx: &'a mut (dyn Cells + 'b),
    pub cells: &'a [usize],
    pub track_offset: usize,
}

impl Cells for Remap<'_, '_> {
    fn get(&mut self, track: usize, cell: usize) -> core::result::Result<Sym, Need> {
        self.cx.get(track + self.track_offset, self.cells[cell])
    }
}

struct Rewire<'a, 'b> {
    cx: &'a mut (dyn Cells + 'b),
    tracks: &'a [usize],
}

impl Cells for Rewire<'_, '_> {
    fn get(&mut self, track: usize, cell: usize) -> core::result::Result<Sym, Need> {
        self.cx.get(self.tracks[track], cell)
    }
}

struct CompRule {
    outer: Arc<dyn LocalRule>,
    inner: Vec<Arc<dyn LocalRule>>,
    /// `table[j][b][n]`: composite neighborhood index of `b·n`.
    table: Vec<Vec<Vec<usize>>>,
    width: usize,
}

struct CompCells<'a, 'b> {
    rule: &'a CompRule,
    cx: &'a mut (dyn Cells + 'b),
    memo: Vec<Option<Sym>>,
}

impl Cells for CompCells<'_, '_> {
    fn get(&mut self, track: usize, cell: usize) -> core::result::Result<Sym, Need> {
        let key = track * self.rule.width + cell;
        if let Some(v) = self.memo[key] {
            return Ok(v);
        }
        let v = self.rule.inner[track].eval(&mut Remap {
            cx: &mut *self.cx,
            cells: &self.rule.table[track][cell],
            track_offset: 0,
        })?;
        self.memo[key] = Some(v);
        Ok(v)
    }
}

impl LocalRule for CompRule {
    fn eval(&self, cx: &mut dyn Cells) -> core::result::Result<Sym, Need> {
        let mut c = CompCells { rule: self, cx, memo: vec![None; self.inner.len() * self.width] };
        self.outer.eval(&mut c)
    }
}
