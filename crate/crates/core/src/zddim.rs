//! Colorings and nets on `Z^d` tori: membership in the bounded-component
//! color systems, the periodic coloring with `d + 1` colors, corner-point
//! partitions, greedy net completion, corner merging and almost unions.

use alloc::collections::{BTreeSet, VecDeque};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{input, Result};
use crate::group::Group;
use crate::pattern::{FiniteDomain, Sym};
use crate::periodic::PeriodicConfig;

/// A discrete torus `Z^d / (N_1 Z × ... × N_d Z)`; cells are indexed with the
/// first coordinate varying fastest.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Torus {
    pub dims: Vec<usize>,
}

impl Torus {
    pub fn new(dims: Vec<usize>) -> Result<Torus> {
        if dims.is_empty() || dims.iter().any(|&n| n == 0) {
            return input("torus needs positive side lengths");
        }
        Ok(Torus { dims })
    }

    pub fn len(&self) -> usize {
        self.dims.iter().product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn index(&self, c: &[i64]) -> usize {
        let mut idx = 0usize;
        for (i, &n) in self.dims.iter().enumerate().rev() {
            idx = idx * n + c[i].rem_euclid(n as i64) as usize;
        }
        idx
    }

    pub fn coords(&self, mut v: usize) -> Vec<i64> {
        self.dims
            .iter()
            .map(|&n| {
                let c = v % n;
                v /= n;
                c as i64
            })
            .collect()
    }

    /// `ℓ∞` distance on the torus.
    pub fn dist_inf(&self, a: &[i64], b: &[i64]) -> i64 {
        self.dims
            .iter()
            .zip(a.iter().zip(b))
            .map(|(&n, (&x, &y))| {
                let d = (x - y).rem_euclid(n as i64);
                d.min(n as i64 - d)
            })
            .max()
            .unwrap_or(0)
    }

    /// Index of `v` moved by `delta`, wrapping around.
    pub fn offset(&self, v: usize, delta: &[i64]) -> usize {
        let mut c = self.coords(v);
        for (x, d) in c.iter_mut().zip(delta) {
            *x += d;
        }
        self.index(&c)
    }
}

/// All integer vectors in `[lo, hi]^d`, ordered by `ℓ∞` norm then lexicographically.
fn cube(d: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    let mut out: Vec<Vec<i64>> = vec![Vec::new()];
    for _ in 0..d {
        out = out.into_iter().flat_map(|v| (lo..=hi).map(move |x| [v.clone(), vec![x]].concat())).collect();
    }
    out.sort_by_key(|v| (v.iter().map(|x| x.abs()).max().unwrap_or(0), v.clone()));
    out
}

/// Nonzero vectors of `ℓ1` norm at most `r`.
fn l1_ball(d: usize, r: usize) -> Vec<Vec<i64>> {
    let r = r as i64;
    cube(d, -r, r).into_iter().filter(|v| v.iter().map(|x| x.abs()).sum::<i64>() <= r).collect()
}

/// Outcome of a bounded-component membership check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ZdVerdict {
    /// Every monochromatic component is finite; `largest` is the largest size.
    Member { largest: usize },
    /// A component larger than `m`, or one meeting its own translate.
    Violation { color: Sym, cells: Vec<Vec<i64>>, wraps: bool },
}

/// Components of the graph joining equal colors at `ℓ1` distance at most `r`,
/// on the torus of the configuration's periods. A component whose lift
/// reaches a cell at two different positions is infinite.
pub fn x_drm_check(c: &PeriodicConfig, r: usize, m: usize) -> Result<ZdVerdict> {
    let (periods, labels) = match c {
        PeriodicConfig::Grid { periods, labels } => (periods, labels),
        _ => return input("bounded-component check needs a grid configuration"),
    };
    let t = Torus::new(periods.clone())?;
    let d = periods.len();
    let steps: Vec<Vec<i64>> = l1_ball(d, r).into_iter().filter(|v| v.iter().any(|&x| x != 0)).collect();
    let mut comp = vec![usize::MAX; t.len()];
    let mut lift: Vec<Vec<i64>> = vec![Vec::new(); t.len()];
    let mut largest = 0;
    for start in 0..t.len() {
        if comp[start] != usize::MAX {
            continue;
        }
        let color = labels[start];
        comp[start] = start;
        lift[start] = t.coords(start);
        let mut members = vec![start];
        let mut queue = VecDeque::from([start]);
        let mut wraps = false;
        while let Some(u) = queue.pop_front() {
            let base = lift[u].clone();
            for s in &steps {
                let pos: Vec<i64> = base.iter().zip(s).map(|(a, b)| a + b).collect();
                let v = t.index(&pos);
                if labels[v] != color {
                    continue;
                }
                if comp[v] == start {
                    if lift[v] != pos {
                        wraps = true;
                    }
                    continue;
                }
                comp[v] = start;
                lift[v] = pos;
                members.push(v);
                queue.push_back(v);
            }
            if wraps {
                break;
            }
        }
        if wraps || members.len() > m {
            members.sort_unstable();
            let cells = members.iter().map(|&v| t.coords(v)).collect();
            return Ok(ZdVerdict::Violation { color, cells, wraps });
        }
        largest = largest.max(members.len());
    }
    Ok(ZdVerdict::Member { largest })
}

/// The `N`-periodic coloring with colors `0..=d` and its measured component bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZdColoring {
    pub config: PeriodicConfig,
    pub r: usize,
    pub m: usize,
}

/// Distance from `x` to `N Z`.
fn lattice_dist(x: i64, n: i64) -> i64 {
    let m = x.rem_euclid(n);
    m.min(n - m)
}

/// The color of `v`: the largest `k` with at least `k` coordinates within
/// `k r` of `N Z`.
pub fn zd_color(v: &[i64], r: usize, n: usize) -> Sym {
    let dists: Vec<i64> = v.iter().map(|&x| lattice_dist(x, n as i64)).collect();
    (0..=v.len())
        .rev()
        .find(|&k| dists.iter().filter(|&&x| x <= (k * r) as i64).count() >= k)
        .unwrap_or(0) as Sym
}

/// Coordinates witnessing the color of `v`.
pub fn witness_coords(v: &[i64], r: usize, n: usize) -> Vec<usize> {
    let k = zd_color(v, r, n) as usize;
    (0..v.len()).filter(|&i| lattice_dist(v[i], n as i64) <= (k * r) as i64).collect()
}

/// Colors `Z^d` with `d + 1` colors so that every monochromatic `r`-component
/// is finite, checks membership and reports the largest component.
pub fn zd_coloring(d: usize, r: usize, n: usize) -> Result<ZdColoring> {
    if d == 0 || r == 0 {
        return input("dimension and jump radius must be positive");
    }
    if n <= 100 * (d + 1) * r {
        return input(format!("period {n} must exceed 100(d+1)r = {}", 100 * (d + 1) * r));
    }
    let t = Torus::new(vec![n; d])?;
    let labels: Vec<Sym> = (0..t.len()).map(|v| zd_color(&t.coords(v), r, n)).collect();
    let config = PeriodicConfig::grid(vec![n; d], labels)?;
    match x_drm_check(&config, r, usize::MAX)? {
        ZdVerdict::Member { largest } => Ok(ZdColoring { config, r, m: largest }),
        ZdVerdict::Violation { color, wraps, .. } => {
            input(format!("coloring failed its own check: color {color} component, wraps = {wraps}"))
        }
    }
}

/// A sorted set of torus points.
pub type Points = Vec<Vec<i64>>;

fn normalize(t: &Torus, pts: &[Vec<i64>]) -> Result<Points> {
    if pts.iter().any(|p| p.len() != t.dims.len()) {
        return input("point dimension does not match the torus");
    }
    let set: BTreeSet<Vec<i64>> = pts.iter().map(|p| t.coords(t.index(p))).collect();
    Ok(set.into_iter().collect())
}

/// Whether distinct points are at `ℓ∞` distance at least `r`.
pub fn is_packing(t: &Torus, pts: &[Vec<i64>], r: usize) -> bool {
    let mut occ = vec![false; t.len()];
    for p in pts {
        occ[t.index(p)] = true;
    }
    let near = cube(t.dims.len(), -(r as i64) + 1, r as i64 - 1);
    pts.iter().all(|p| {
        let v = t.index(p);
        near.iter().all(|dlt| dlt.iter().all(|&x| x == 0) || !occ[t.offset(v, dlt)] || t.offset(v, dlt) == v)
    })
}

/// `ℓ∞` distance from every cell to the set (multi-source search with king moves).
pub fn distance_map(t: &Torus, pts: &[Vec<i64>]) -> Vec<usize> {
    let mut dist = vec![usize::MAX; t.len()];
    let mut queue = VecDeque::new();
    for p in pts {
        let v = t.index(p);
        if dist[v] != 0 {
            dist[v] = 0;
            queue.push_back(v);
        }
    }
    let moves: Vec<Vec<i64>> = cube(t.dims.len(), -1, 1).into_iter().skip(1).collect();
    while let Some(u) = queue.pop_front() {
        for m in &moves {
            let v = t.offset(u, m);
            if dist[v] == usize::MAX {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
        }
    }
    dist
}

/// Largest distance from a cell to the set.
pub fn covering_radius(t: &Torus, pts: &[Vec<i64>]) -> Option<usize> {
    distance_map(t, pts).into_iter().max().filter(|&d| d != usize::MAX)
}

pub fn is_net(t: &Torus, pts: &[Vec<i64>], r: usize) -> bool {
    is_packing(t, pts, r) && covering_radius(t, pts).is_some_and(|c| c <= r)
}

/// Incremental set with cover counts: `cover[v]` is the number of points
/// within `ℓ∞` distance `r` of `v`.
struct Cover<'a> {
    t: &'a Torus,
    ball: Vec<Vec<i64>>,
    cover: Vec<u32>,
    pts: BTreeSet<Vec<i64>>,
}

impl<'a> Cover<'a> {
    fn new(t: &'a Torus, r: usize) -> Cover<'a> {
        let r = r as i64;
        Cover { t, ball: cube(t.dims.len(), -r, r), cover: vec![0; t.len()], pts: BTreeSet::new() }
    }

    fn add(&mut self, p: Vec<i64>) {
        let v = self.t.index(&p);
        for dlt in &self.ball {
            let u = self.t.offset(v, dlt);
            self.cover[u] += 1;
        }
        self.pts.insert(p);
    }

    fn covered(&self, p: &[i64]) -> bool {
        self.cover[self.t.index(p)] > 0
    }
}

/// Greedy completion: for each offset `w` with `‖w‖∞ <= horizon` in (norm,
/// lexicographic) order and each included point `v` in lexicographic order,
/// adds `v + w` when it lies farther than `r` from every included point.
/// Errors with an uncovered cell if the result does not cover at radius `r`.
pub fn greedy_net_completion(t: &Torus, r: usize, packing: &[Vec<i64>], horizon: usize) -> Result<Points> {
    let start = normalize(t, packing)?;
    if !is_packing(t, &start, r) {
        return input("input is not a packing");
    }
    let mut cov = Cover::new(t, r);
    for p in start {
        cov.add(p);
    }
    let h = horizon as i64;
    for w in cube(t.dims.len(), -h, h).into_iter().skip(1) {
        let snapshot: Vec<Vec<i64>> = cov.pts.iter().cloned().collect();
        for v in snapshot {
            let c: Vec<i64> = v.iter().zip(&w).map(|(a, b)| a + b).collect();
            let c = t.coords(t.index(&c));
            if !cov.covered(&c) {
                cov.add(c);
            }
        }
    }
    if let Some(v) = cov.cover.iter().position(|&n| n == 0) {
        return input(format!("horizon {horizon} too small: cell {:?} is uncovered", t.coords(v)));
    }
    Ok(cov.pts.into_iter().collect())
}

/// Merges two nets under a binary time pattern `t` (labels on the torus):
/// keeps `x`-corners whose `r`-ball sees only 0, `y`-corners whose `r`-ball
/// sees only 1, adds the remaining `y`-corners lying farther than `r` from
/// the set, then completes greedily with horizon `2r`.
pub fn corner_merge(torus: &Torus, time: &[Sym], xs: &[Vec<i64>], ys: &[Vec<i64>], r: usize) -> Result<Points> {
    if time.len() != torus.len() {
        return input("time pattern must label every torus cell");
    }
    let (xs, ys) = (normalize(torus, xs)?, normalize(torus, ys)?);
    let ri = r as i64;
    let ball = cube(torus.dims.len(), -ri, ri);
    let region = |p: &[i64], s: Sym| {
        let v = torus.index(p);
        ball.iter().all(|dlt| time[torus.offset(v, dlt)] == s)
    };
    let mut cov = Cover::new(torus, r);
    for p in xs.iter().filter(|p| region(p, 0)) {
        cov.add(p.clone());
    }
    for p in ys.iter().filter(|p| region(p, 1)) {
        cov.add(p.clone());
    }
    for p in &ys {
        if !cov.covered(p) {
            cov.add(p.clone());
        }
    }
    let merged: Points = cov.pts.into_iter().collect();
    greedy_net_completion(torus, r, &merged, 2 * r)
}

/// The partition of a torus into corner cells.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NetPartition {
    pub torus: Torus,
    pub corners: Points,
    /// Corner index of every torus cell.
    pub cell: Vec<usize>,
    /// Largest number of distinct cells meeting an `ℓ1` ball of radius `ball`.
    pub meeting: usize,
    pub ball: usize,
}

/// Assigns each cell `u` to the corner `v` minimizing `‖u - v‖∞` among
/// corners with `u - v` in the nonnegative cone (offsets taken in
/// `[0, 2r]^d`), ties broken by the lexicographically least offset. Checks
/// that every cell is 1-connected.
pub fn corner_partition(t: &Torus, r: usize, corners: &[Vec<i64>], ball: usize) -> Result<NetPartition> {
    let corners = normalize(t, corners)?;
    if corners.is_empty() {
        return input("no corners");
    }
    let mut id = vec![usize::MAX; t.len()];
    for (i, c) in corners.iter().enumerate() {
        id[t.index(c)] = i;
    }
    let offsets = cube(t.dims.len(), 0, 2 * r as i64);
    let mut cell = vec![usize::MAX; t.len()];
    for u in 0..t.len() {
        let uc = t.coords(u);
        let hit = offsets.iter().find_map(|dlt| {
            let v: Vec<i64> = uc.iter().zip(dlt).map(|(a, b)| a - b).collect();
            let i = id[t.index(&v)];
            (i != usize::MAX).then_some(i)
        });
        match hit {
            Some(i) => cell[u] = i,
            None => return input(format!("cell {uc:?} lies in no corner cone within {}", 2 * r)),
        }
    }
    let unit = l1_ball(t.dims.len(), 1);
    let mut seen = vec![false; t.len()];
    let mut found = vec![false; corners.len()];
    for u in 0..t.len() {
        if seen[u] {
            continue;
        }
        let i = cell[u];
        if found[i] {
            return input(format!("cell of corner {:?} is not 1-connected", corners[i]));
        }
        found[i] = true;
        seen[u] = true;
        let mut queue = VecDeque::from([u]);
        while let Some(a) = queue.pop_front() {
            for s in &unit {
                let b = t.offset(a, s);
                if !seen[b] && cell[b] == i {
                    seen[b] = true;
                    queue.push_back(b);
                }
            }
        }
    }
    let disc = l1_ball(t.dims.len(), ball);
    let mut meeting = 0;
    for u in 0..t.len() {
        let mut ids: Vec<usize> = disc.iter().map(|s| cell[t.offset(u, s)]).collect();
        ids.sort_unstable();
        ids.dedup();
        meeting = meeting.max(ids.len());
    }
    Ok(NetPartition { torus: t.clone(), corners, cell, meeting, ball })
}

/// `A°r ∪ B°r ∪ ((A ∪ B) \ (A·B_r ∩ B·B_r))`, interiors taken in the word metric.
pub fn almost_union(group: Group, a: &FiniteDomain, b: &FiniteDomain, r: usize) -> Result<FiniteDomain> {
    if matches!(group, Group::Free(_)) {
        return input("almost union is defined on the line and grids");
    }
    let ball = group.ball(r);
    let near = a.product(&ball).intersection(&b.product(&ball));
    Ok(a.interior(&group, r).union(&b.interior(&group, r)).union(&a.union(b).difference(&near)))
}
