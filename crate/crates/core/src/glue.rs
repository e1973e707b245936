//! Retractions, stitching of partial morphisms, factor maps onto
//! contractible SFTs, and finite extension property checks.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::blockmap::BlockMap;
use crate::check::{check_equal, check_into, window_diameter, Scope, TrackMode, TrackSys, Verdict};
use crate::error::{input, Error, Result};
use crate::group::{Element, Group};
use crate::homotopy::{natural_extension, Homotopy};
use crate::line::LineAutomaton;
use crate::pattern::{FiniteDomain, Pattern, Sym};
use crate::sft::{Sft, Validity, DEFAULT_BUDGET};

/// Largest number of rows built for a detection table.
const TABLE_LIMIT: u128 = 1 << 22;

/// Tabulates a binary predicate on `dom`-contents over `size` symbols.
fn detect_table(group: Group, size: usize, dom: &FiniteDomain, pred: impl Fn(&Pattern) -> Result<bool>) -> Result<BlockMap> {
    let n = dom.len();
    let total = (size as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if total > TABLE_LIMIT {
        return Err(Error::Budget { what: format!("detection table over {n} cells"), bound: TABLE_LIMIT as u64 });
    }
    let mut rows = Vec::with_capacity(total as usize);
    let mut digits = vec![0 as Sym; n];
    for _ in 0..total {
        rows.push(pred(&Pattern::new(dom.clone(), digits.clone()))? as Sym);
        let mut k = n;
        while k > 0 {
            k -= 1;
            digits[k] += 1;
            if (digits[k] as usize) < size {
                break;
            }
            digits[k] = 0;
        }
    }
    BlockMap::table(group, vec![size], 2, dom.clone(), rows)
}

/// Exact global validity, `#` symbols (index `>= |Y|`) counting as invalid.
fn exact_valid(y: &Sft, p: &Pattern) -> Result<bool> {
    if p.symbols.iter().any(|&s| s as usize >= y.size()) {
        return Ok(false);
    }
    match y.best_validity(p) {
        Validity::Valid => Ok(true),
        Validity::Invalid => Ok(false),
        Validity::Unknown => input("global validity is not decidable for this SFT"),
    }
}

/// A retraction of the full shift onto an SFT, with the radius of the
/// validity-detection ball it uses.
#[derive(Clone, Debug)]
pub struct Retraction {
    pub map: BlockMap,
    pub radius: usize,
}

/// Builds `r(x) = h~(t(x), x, c)` where `t(x)_a = 0` iff `x|aB_r` is globally
/// valid, searching `r = 0, 1, ..., cap` for the first candidate that fixes
/// the SFT cellwise and maps the full shift into it.
pub fn build_retraction(x: &Sft, h: &Homotopy, fixed: Sym, cap: usize) -> Result<Retraction> {
    if fixed as usize >= x.size() || !x.has_fixed_point(fixed) {
        return input(format!("the constant configuration of symbol {fixed} is not in the SFT"));
    }
    if h.sft != *x || h.time != 2 {
        return input("the homotopy must be a binary-time contraction of the same SFT");
    }
    let n = x.size();
    let ext = natural_extension(h)?;
    let full = Sft::full(x.group, n);
    let sys = TrackSys::from_sfts(&[x]);
    let id = BlockMap::identity(x.group, n);
    let margin = window_diameter(&x.window);
    let mut last = String::from("no candidate tried");
    for r in 0..=cap {
        let ball = x.group.ball(r);
        let t = match detect_table(x.group, n, &ball, |p| Ok(!exact_valid(x, p)?)) {
            Ok(t) => t,
            Err(e) => {
                last = format!("radius {r}: {e}");
                break;
            }
        };
        let c = BlockMap::constant(x.group, vec![n], n, fixed);
        let map = BlockMap::compose(&ext, &[t, id.clone(), c])?;
        let fix = check_equal(&map, &id, &sys, vec![TrackMode::Free], Scope::Valid, DEFAULT_BUDGET);
        if !fix.is_proved() {
            last = format!("radius {r}: not the identity on the SFT: {fix:?}");
            continue;
        }
        match check_into(&map, &full, x, margin) {
            Verdict::Proved => return Ok(Retraction { map, radius: r }),
            v => last = format!("radius {r}: image leaves the SFT: {v:?}"),
        }
    }
    input(format!("no retraction found up to radius {cap}; last attempt {last}"))
}

/// The SFT `Y` with one extra blank symbol `#` (index `|Y|`) forbidden everywhere.
pub fn with_blank(y: &Sft) -> Sft {
    let mut alphabet = y.alphabet.clone();
    alphabet.push(String::from("#"));
    let mut forbidden = y.forbidden.clone();
    forbidden.push(Pattern::from_cells([(y.group.identity(), y.size() as Sym)]));
    Sft::new(y.group, alphabet, y.window.clone(), forbidden).expect("blank extension is well formed")
}

/// One pairwise stitching step on the two-track source `(Y#, Y#)`: keep the
/// first partial morphism where it is valid, the second where only it is.
fn stitch_pair(y: &Sft, h: &Homotopy) -> Result<BlockMap> {
    let group = y.group;
    let m = y.size();
    let b = m + 1;
    let w = &h.map.nbhd;
    let k = &y.window;
    let kk = k.inverse().product(k);
    let dom_m = w.inverse().product(&kk).product(w);
    let dom_mm = kk.product(w).product(&dom_m);
    let t = detect_table(group, b, &dom_m, |p| Ok(!exact_valid(y, p)?))?;
    let bad = detect_table(group, b, &dom_mm, |p| Ok(!exact_valid(y, p)?))?;
    let mut strip: Vec<Sym> = (0..m as Sym).collect();
    strip.push(0);
    let strip = BlockMap::relabel(group, b, m, strip)?;
    let two = vec![b, b];
    let ext = natural_extension(h)?;
    let blend = BlockMap::compose(
        &ext,
        &[t.on_tracks(two.clone(), vec![0])?, strip.on_tracks(two.clone(), vec![0])?, strip.on_tracks(two.clone(), vec![1])?],
    )?;
    let blank = m as Sym;
    let pick = crate::blockmap::FnRule::new(move |cx| {
        if cx.get(0, 0)? == 1 && cx.get(1, 0)? == 1 {
            return Ok(blank);
        }
        cx.get(2, 0)
    });
    let pick = BlockMap::new(
        group,
        vec![2, 2, m],
        b,
        FiniteDomain::singleton(group.identity()),
        pick,
        crate::blockmap::MapDesc::Named { name: String::from("stitch-select") },
    );
    BlockMap::compose(&pick, &[bad.on_tracks(two.clone(), vec![0])?, bad.on_tracks(two, vec![1])?, blend])
}

/// Stitches partial morphisms `f_1, ..., f_l : X → Y#` into one map:
/// `k_1 = step(f_1, f_2)`, `k_(i+1) = step(k_i, f_(i+2))`.
pub fn stitch(fs: &[BlockMap], y: &Sft, h: &Homotopy) -> Result<BlockMap> {
    if fs.len() < 2 {
        return input("stitching needs at least two partial morphisms");
    }
    if h.sft != *y || h.time != 2 {
        return input("the homotopy must be a binary-time contraction of the target");
    }
    for f in fs {
        if f.target != y.size() + 1 || f.sources != fs[0].sources || f.group != y.group {
            return input("partial morphisms must share a source and map into the target alphabet plus #");
        }
    }
    let step = stitch_pair(y, h)?;
    let mut k = BlockMap::compose(&step, &[fs[0].clone(), fs[1].clone()])?;
    for f in &fs[2..] {
        k = BlockMap::compose(&step, &[k, f.clone()])?;
    }
    Ok(k)
}

/// Verifies a stitched map into `Y#`; an output `#` is a coverage failure.
pub fn verify_stitch(k: &BlockMap, x: &Sft, y: &Sft) -> Result<()> {
    let ysharp = with_blank(y);
    match check_into(k, x, &ysharp, window_diameter(&y.window)) {
        Verdict::Proved => Ok(()),
        Verdict::Counterexample(w) => {
            let blank = y.size() as Sym;
            if w.outputs.iter().any(|o| o.2 == blank) {
                input(format!("coverage fails: every partial morphism is blank near the cell, input {:?}", w.inputs))
            } else {
                input(format!("stitched map leaves the target: {w:?}"))
            }
        }
        Verdict::Unknown(r) => input(format!("stitch verification inconclusive: {r}")),
    }
}

/// Fixture: two partial morphisms on the binary full shift into the golden
/// mean shift. The first marks rising edges `01` and is defined where a 0
/// lies within distance 4; the second marks falling edges `10` and is defined
/// where a 1 does. Radius 4 makes the defined regions overlap by the 8 cells
/// stitching needs.
pub fn stitch_fixture() -> (Sft, Vec<BlockMap>) {
    use crate::blockmap::{FnRule, MapDesc};
    const R: usize = 4;
    let x = Sft::full(Group::Line, 2);
    let nbhd = FiniteDomain::interval(-(R as i64), R as i64);
    let make = |want: Sym, side: usize, name: &str| {
        let rule = FnRule::new(move |cx| {
            let mut seen = false;
            for c in 0..=2 * R {
                if cx.get(0, c)? == want {
                    seen = true;
                }
            }
            if !seen {
                return Ok(2);
            }
            Ok(cx.get(0, R)? & (1 - cx.get(0, side)?))
        });
        BlockMap::new(Group::Line, vec![2], 3, nbhd.clone(), rule, MapDesc::Named { name: String::from(name) })
    };
    (x, vec![make(0, R - 1, "rising-edge"), make(1, R + 1, "falling-edge")])
}

/// `x ↦ h~(t(x), f(x), g(x))` with `t(x)_a = 1` iff `g(x)|aMNM` contains no
/// forbidden pattern of `y`; `M` and `N` are the symmetrized neighborhood of
/// `h` and window of `y`. Errors unless `f` is proved into `y` and the
/// composite is proved into `y`.
pub fn factor_onto_contractible(f: &BlockMap, g: &BlockMap, x: &Sft, y: &Sft, h: &Homotopy) -> Result<BlockMap> {
    if h.sft != *y || h.time != 2 {
        return input("the homotopy must be a binary-time contraction of the target");
    }
    if f.target != y.size() || g.target != y.size() || f.sources != vec![x.size()] || g.sources != f.sources {
        return input("f and g must map the source SFT into the target alphabet");
    }
    let margin = window_diameter(&y.window);
    if !check_into(f, x, y, margin).is_proved() {
        return input("f is not proved to map into the target SFT");
    }
    let m = h.map.nbhd.union(&h.map.nbhd.inverse());
    let n = y.window.union(&y.window.inverse());
    let dom = m.product(&n).product(&m);
    let detect = detect_table(y.group, y.size(), &dom, |p| Ok(y.core_valid(p)))?;
    let t = BlockMap::compose(&detect, core::slice::from_ref(g))?;
    let ext = natural_extension(h)?;
    let out = BlockMap::compose(&ext, &[t, f.clone(), g.clone()])?;
    match check_into(&out, x, y, margin) {
        Verdict::Proved => Ok(out),
        v => input(format!("composite not proved into the target: {v:?}")),
    }
}

/// The cocycle SFT on the plane. A symbol carries one bit per generator in
/// canonical order (bit `i` is generator `i`); edges read the same from both
/// ends and every unit square has even bit sum.
pub fn cocycle_sft() -> Sft {
    let g = Group::Grid(2);
    let gens = g.generators();
    let bit = |s: Sym, e: &[i64]| {
        let i = gens.iter().position(|x| x == &Element::Grid(e.to_vec())).unwrap();
        (s >> i) & 1
    };
    let o = Element::Grid(vec![0, 0]);
    let r = Element::Grid(vec![1, 0]);
    let u = Element::Grid(vec![0, 1]);
    let mut forb = Vec::new();
    for a in 0..16 {
        for b in 0..16 {
            if bit(a, &[1, 0]) != bit(b, &[-1, 0]) {
                forb.push(Pattern::from_cells([(o.clone(), a), (r.clone(), b)]));
            }
            if bit(a, &[0, 1]) != bit(b, &[0, -1]) {
                forb.push(Pattern::from_cells([(o.clone(), a), (u.clone(), b)]));
            }
        }
    }
    for a in 0..16 {
        for b in 0..16 {
            for c in 0..16 {
                let sum = bit(a, &[1, 0]) + bit(a, &[0, 1]) + bit(b, &[0, 1]) + bit(c, &[1, 0]);
                if sum % 2 == 1 {
                    forb.push(Pattern::from_cells([(o.clone(), a), (r.clone(), b), (u.clone(), c)]));
                }
            }
        }
    }
    let window = FiniteDomain::new(vec![o, r, u]);
    Sft::new(g, Sft::numeric_alphabet(16), window, forb).expect("cocycle SFT is well formed")
}

/// The edge-difference map from the binary full shift onto the cocycle SFT:
/// bit `s` of the output at `a` is `x_a XOR x_(as)`.
pub fn edge_difference() -> BlockMap {
    use crate::blockmap::{FnRule, MapDesc};
    let g = Group::Grid(2);
    let nbhd = g.ball(1);
    let id = nbhd.index_of(&g.identity()).unwrap();
    let cells: Vec<usize> = g.generators().iter().map(|s| nbhd.index_of(s).unwrap()).collect();
    let rule = FnRule::new(move |cx| {
        let c = cx.get(0, id)?;
        let mut out = 0;
        for (i, &k) in cells.iter().enumerate() {
            out |= (cx.get(0, k)? ^ c) << i;
        }
        Ok(out)
    });
    BlockMap::new(g, vec![2], 16, nbhd, rule, MapDesc::Named { name: String::from("edge-difference") })
}

/// Whether `x` is (structurally) the cocycle SFT.
pub fn is_cocycle_sft(x: &Sft) -> bool {
    x.group == Group::Grid(2)
        && x.size() == 16
        && x.window.len() == 3
        && x.forbidden.len() == 2304
        && *x == cocycle_sft()
}

/// Exact validity for the cocycle SFT: the known edge bits must be a
/// coboundary, which union-find with parity decides.
pub fn cocycle_valid(p: &Pattern) -> bool {
    let gens = Group::Grid(2).generators();
    let mut verts: Vec<Element> = Vec::new();
    let mut edges: Vec<(Element, Element, u16)> = Vec::new();
    for (e, s) in p.cells() {
        if s >= 16 {
            return false;
        }
        for (i, g) in gens.iter().enumerate() {
            let f = e.mul(g);
            edges.push((e.clone(), f.clone(), (s >> i) & 1));
            verts.push(f);
        }
        verts.push(e.clone());
    }
    verts.sort();
    verts.dedup();
    let id = |v: &Element| verts.binary_search(v).unwrap();
    let mut parent: Vec<usize> = (0..verts.len()).collect();
    let mut parity = vec![0u16; verts.len()];
    fn find(parent: &mut [usize], parity: &mut [u16], v: usize) -> (usize, u16) {
        if parent[v] == v {
            return (v, 0);
        }
        let (root, p) = find(parent, parity, parent[v]);
        parent[v] = root;
        parity[v] ^= p;
        (root, parity[v])
    }
    for (a, b, bit) in &edges {
        let (ra, pa) = find(&mut parent, &mut parity, id(a));
        let (rb, pb) = find(&mut parent, &mut parity, id(b));
        if ra == rb {
            if pa ^ pb != *bit {
                return false;
            }
        } else {
            parent[ra] = rb;
            parity[ra] = pa ^ pb ^ bit;
        }
    }
    true
}

/// How a passing FEP verdict was established.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FepMethod {
    /// Every box up to the radius was enumerated.
    Enumeration,
    /// A fill certificate shows the gap works for every finite domain.
    Certificate,
}

/// A pattern locally valid on `D·N` whose restriction to `D` is globally invalid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FepWitness {
    pub domain: FiniteDomain,
    pub gap: usize,
    pub pattern: Pattern,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FepVerdict {
    PassedUpTo { radius: usize, method: FepMethod },
    Failed(FepWitness),
    /// Enumeration stopped early; boxes up to `radius` (if any) passed.
    Partial { radius: Option<usize>, reason: String },
}

impl FepWitness {
    /// Re-checks local validity on `D·N` and global invalidity on `D`.
    pub fn verify(&self, x: &Sft) -> bool {
        let ext = self.domain.product(&x.group.ball(self.gap));
        self.pattern.domain == ext
            && x.locally_valid(&self.pattern).unwrap_or(false)
            && x.best_validity(&self.pattern.restrict(&self.domain)) == Validity::Invalid
    }
}

/// Boxes anchored at the identity up to `radius`, each with the radius of
/// the smallest centered box containing it, in increasing radius.
fn boxes(group: Group, radius: usize) -> Vec<(usize, FiniteDomain)> {
    let side = 2 * radius as i64 + 1;
    let fit = |l: i64| (l as usize).saturating_sub(1).div_ceil(2);
    match group {
        Group::Line => (1..=side).map(|l| (fit(l), FiniteDomain::interval(0, l - 1))).collect(),
        Group::Grid(d) => {
            let mut out: Vec<Vec<i64>> = vec![Vec::new()];
            for _ in 0..d {
                out = out.into_iter().flat_map(|v| (1..=side).map(move |l| [v.clone(), vec![l]].concat())).collect();
            }
            out.sort_by_key(|v| (v.iter().copied().max(), v.clone()));
            out.into_iter()
                .map(|ls| {
                    let hi: Vec<i64> = ls.iter().map(|l| l - 1).collect();
                    (fit(*ls.iter().max().unwrap()), FiniteDomain::grid_box(&vec![0; d], &hi))
                })
                .collect()
        }
        Group::Free(_) => (0..=radius).map(|r| (r, group.ball(r))).collect(),
    }
}

/// Checks that locally valid patterns on `D·B_gap` restrict to globally valid
/// patterns on `D`, for boxes `D` up to `radius`. A fill certificate whose
/// gap fits inside `B_gap` settles every domain at once. For the cocycle SFT
/// the sup-norm ring of radius `gap + 2` is probed first.
pub fn fep_check(x: &Sft, gap: usize, radius: usize, budget: u64) -> Result<FepVerdict> {
    if x.group != Group::Line {
        if let Some(c) = x.fill_certificate() {
            let reach = x.window.iter().map(|e| e.norm()).max().unwrap_or(0)
                + x.forbidden.iter().flat_map(|p| p.domain.iter()).map(|e| e.norm()).max().unwrap_or(0);
            if c.gap + reach <= gap {
                return Ok(FepVerdict::PassedUpTo { radius, method: FepMethod::Certificate });
            }
        }
    }
    if x.group == Group::Line {
        return fep_check_line(x, gap, radius, budget);
    }
    if is_cocycle_sft(x) && gap + 2 <= radius {
        let w = cocycle_annulus_witness(gap);
        if w.verify(x) {
            return Ok(FepVerdict::Failed(w));
        }
    }
    let ball = x.group.ball(gap);
    let mut spent = 0u64;
    for (r, d) in boxes(x.group, radius) {
        let reached = r.checked_sub(1);
        let ext = d.product(&ball);
        let mut witness = None;
        let mut unknown = false;
        let visited = x.for_each_locally_valid(&ext, budget.saturating_sub(spent), |syms| {
            let p = Pattern::new(ext.clone(), syms.to_vec()).restrict(&d);
            match x.best_validity(&p) {
                Validity::Valid => true,
                Validity::Invalid => {
                    witness = Some(syms.to_vec());
                    false
                }
                Validity::Unknown => {
                    unknown = true;
                    false
                }
            }
        });
        match visited {
            Err(e) => return Ok(FepVerdict::Partial { radius: reached, reason: format!("{e}") }),
            Ok(c) => spent += c,
        }
        if let Some(s) = witness {
            return Ok(FepVerdict::Failed(FepWitness { domain: d, gap, pattern: Pattern::new(ext, s) }));
        }
        if unknown {
            return Ok(FepVerdict::Partial { radius: reached, reason: String::from("global validity undecided") });
        }
    }
    Ok(FepVerdict::PassedUpTo { radius, method: FepMethod::Enumeration })
}

/// Line case: enumerates locally valid words on each interval `D` and asks
/// the transition graph whether they extend locally across `D·B_gap`.
fn fep_check_line(x: &Sft, gap: usize, radius: usize, budget: u64) -> Result<FepVerdict> {
    let aut = LineAutomaton::new(x, DEFAULT_BUDGET)?;
    let g = gap as i64;
    let mut spent = 0u64;
    for (r, d) in boxes(Group::Line, radius) {
        let reached = r.checked_sub(1);
        let hi = d.len() as i64 - 1;
        let ext = FiniteDomain::interval(-g, hi + g);
        let mut witness = None;
        let visited = if ext.len() <= aut.len {
            x.for_each_locally_valid(&ext, budget.saturating_sub(spent), |syms| {
                let p = Pattern::new(ext.clone(), syms.to_vec());
                if aut.valid(&p.restrict(&d)) {
                    return true;
                }
                witness = Some(p);
                false
            })
        } else {
            x.for_each_locally_valid(&d, budget.saturating_sub(spent), |syms| {
                let p = Pattern::new(d.clone(), syms.to_vec());
                if aut.valid(&p) {
                    return true;
                }
                match aut.local_extension(&p, -g, hi + g) {
                    Some(e) => {
                        witness = Some(e);
                        false
                    }
                    None => true,
                }
            })
        };
        match visited {
            Err(e) => return Ok(FepVerdict::Partial { radius: reached, reason: format!("{e}") }),
            Ok(c) => spent += c,
        }
        if let Some(pattern) = witness {
            return Ok(FepVerdict::Failed(FepWitness { domain: d, gap, pattern }));
        }
    }
    Ok(FepVerdict::PassedUpTo { radius, method: FepMethod::Enumeration })
}

/// The winding annulus witness for the cocycle SFT at gap `B_gap`: `D` is the
/// sup-norm ring of radius `gap + 2`, and the extension to `D·B_gap` carries
/// a single crossing edge bit on the positive horizontal axis.
pub fn cocycle_annulus_witness(gap: usize) -> FepWitness {
    let g = Group::Grid(2);
    let gens = g.generators();
    let up = gens.iter().position(|e| e == &Element::Grid(vec![0, 1])).unwrap();
    let down = gens.iter().position(|e| e == &Element::Grid(vec![0, -1])).unwrap();
    let rho = gap as i64 + 2;
    let ring: Vec<Element> = FiniteDomain::grid_box(&[-rho, -rho], &[rho, rho])
        .iter()
        .filter(|e| e.coords().iter().map(|c| c.abs()).max() == Some(rho))
        .cloned()
        .collect();
    let domain = FiniteDomain::new(ring);
    let ext = domain.product(&g.ball(gap));
    let pattern = Pattern::from_cells(ext.iter().map(|e| {
        let c = e.coords();
        let mut s: Sym = 0;
        if c[0] >= 0 && c[1] == 0 {
            s |= 1 << up;
        }
        if c[0] >= 0 && c[1] == 1 {
            s |= 1 << down;
        }
        (e.clone(), s)
    }));
    FepWitness { domain, gap, pattern }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homotopy::safe_symbol_homotopy;

    #[test]
    fn cocycle_basics() {
        let c = cocycle_sft();
        assert!(is_cocycle_sft(&c));
        let f = edge_difference();
        let zero = f.eval(&[vec![0; 5]]);
        assert_eq!(zero, 0);
        let checker = f.eval(&[vec![0, 1, 1, 1, 1]]);
        assert_eq!(checker, 15);
        for gap in 1..=3 {
            assert!(cocycle_annulus_witness(gap).verify(&c));
        }
    }

    #[test]
    fn golden_mean_fep() {
        let gm = Sft::golden_mean();
        let v = fep_check(&gm, 0, 6, DEFAULT_BUDGET).unwrap();
        assert_eq!(v, FepVerdict::PassedUpTo { radius: 6, method: FepMethod::Enumeration });
    }

    #[test]
    fn stitch_fixture_is_covered() {
        let (x, parts) = stitch_fixture();
        let gm = Sft::golden_mean();
        let h = crate::homotopy::safe_symbol_homotopy(&gm, 0).unwrap();
        let k = stitch(&parts, &gm, &h).unwrap();
        verify_stitch(&k, &x, &gm).unwrap();
    }

    #[test]
    fn dead_end_line_fep() {
        // 3 loops into a chain 0 -> 1 -> 2 that stops: short extensions lie
        let x = Sft::vertex_shift(4, &[(3, 3), (3, 0), (0, 1), (1, 2)]);
        for gap in 1..=2 {
            match fep_check(&x, gap, 3, DEFAULT_BUDGET).unwrap() {
                FepVerdict::Failed(w) => assert!(w.verify(&x)),
                other => panic!("gap {gap}: {other:?}"),
            }
        }
        assert!(matches!(fep_check(&x, 3, 3, DEFAULT_BUDGET).unwrap(), FepVerdict::PassedUpTo { .. }));
    }

    #[test]
    fn golden_mean_retraction() {
        let gm = Sft::golden_mean();
        let h = safe_symbol_homotopy(&gm, 0).unwrap();
        let r = build_retraction(&gm, &h, 0, 3).unwrap();
        assert_eq!(r.radius, 1);
    }
}
