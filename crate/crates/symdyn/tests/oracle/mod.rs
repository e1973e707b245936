//! Brute-force reference implementations used to cross-check the library.
//! They work from the raw definitions and share no code with the decision
//! procedures they check.

#![allow(dead_code)]

use std::collections::{BTreeMap, VecDeque};

/// A vertex shift as an adjacency relation on `0..n`.
#[derive(Clone, Debug)]
pub struct Edges {
    pub n: usize,
    pub ok: Vec<Vec<bool>>,
}

impl Edges {
    /// Decodes bit `a * n + b` of `mask` as the edge `a -> b`.
    pub fn from_mask(n: usize, mask: u32) -> Edges {
        let ok = (0..n).map(|a| (0..n).map(|b| mask >> (a * n + b) & 1 == 1).collect()).collect();
        Edges { n, ok }
    }

    pub fn pairs(&self) -> Vec<(u16, u16)> {
        let mut out = Vec::new();
        for a in 0..self.n {
            for b in 0..self.n {
                if self.ok[a][b] {
                    out.push((a as u16, b as u16));
                }
            }
        }
        out
    }

    fn valid(&self, w: &[usize]) -> bool {
        w.windows(2).all(|p| self.ok[p[0]][p[1]])
    }

    /// Whether `w` extends by `depth` symbols to the right (left when `left`).
    fn extends(&self, w: &[usize], depth: usize, left: bool) -> bool {
        if depth == 0 {
            return true;
        }
        let end = if left { w[0] } else { w[w.len() - 1] };
        (0..self.n).any(|c| {
            let step = if left { self.ok[c][end] } else { self.ok[end][c] };
            step && self.extends(&[c], depth - 1, left)
        })
    }

    /// Words of the language: locally valid and extendable `n + 1` symbols
    /// both ways, which by pigeonhole gives bi-infinite extensions.
    pub fn language(&self, len: usize) -> Vec<Vec<usize>> {
        let mut words: Vec<Vec<usize>> = vec![Vec::new()];
        for _ in 0..len {
            words = words
                .into_iter()
                .flat_map(|w| (0..self.n).map(move |c| [w.clone(), vec![c]].concat()))
                .filter(|w| self.valid(w))
                .collect();
        }
        words.retain(|w| w.is_empty() || (self.extends(w, self.n + 1, true) && self.extends(w, self.n + 1, false)));
        words
    }

    /// Some `w` of length `gap` with `u w v` locally valid.
    fn bridge(&self, a: usize, b: usize, gap: usize) -> bool {
        if gap == 0 {
            return self.ok[a][b];
        }
        (0..self.n).any(|c| self.ok[a][c] && self.bridge(c, b, gap - 1))
    }
}

/// Mixing by gluing: the language is nonempty and for some `N <= 4`, every
/// pair of language words of length at most 4 is joined by a word of every
/// length in `N..=8`.
pub fn mixing_by_gluing(e: &Edges) -> bool {
    let words: Vec<Vec<usize>> = (1..=4).flat_map(|l| e.language(l)).collect();
    if words.is_empty() {
        return false;
    }
    let mut memo: BTreeMap<(usize, usize, usize), bool> = BTreeMap::new();
    let mut glue = |gap: usize| {
        words.iter().all(|u| {
            words.iter().all(|v| {
                let key = (u[u.len() - 1], v[0], gap);
                *memo.entry(key).or_insert_with(|| e.bridge(key.0, key.1, gap))
            })
        })
    };
    let ok: Vec<bool> = (0..=8).map(&mut glue).collect();
    (0..=4).any(|n0| ok[n0..].iter().all(|&b| b))
}

/// Whether a sliding block code of radius `r` maps the vertex shift `x`
/// into the vertex shift `y`: a backtracking search over rule tables on the
/// language words of length `2r + 1`, constrained by every word of length
/// `2r + 2`.
pub fn cross_morphism(x: &Edges, y: &Edges, r: usize) -> bool {
    let blocks = x.language(2 * r + 1);
    if blocks.is_empty() {
        return true;
    }
    let index: BTreeMap<Vec<usize>, usize> = blocks.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
    let links: Vec<(usize, usize)> = x
        .language(2 * r + 2)
        .iter()
        .map(|w| (index[&w[..2 * r + 1]], index[&w[1..]]))
        .collect();
    let mut rule = vec![usize::MAX; blocks.len()];
    fn assign(i: usize, rule: &mut Vec<usize>, links: &[(usize, usize)], y: &Edges) -> bool {
        if i == rule.len() {
            return true;
        }
        for s in 0..y.n {
            rule[i] = s;
            let consistent = links.iter().all(|&(p, q)| {
                rule[p] == usize::MAX || rule[q] == usize::MAX || y.ok[rule[p]][rule[q]]
            });
            if consistent && assign(i + 1, rule, links, y) {
                return true;
            }
        }
        rule[i] = usize::MAX;
        false
    }
    assign(0, &mut rule, &links, y)
}

/// A nearest-neighbor SFT on the free group `F_k` as explicit relations:
/// `ok[g][u][v]` allows `v` at `x·g` next to `u` at `x`, letters coded `2j`
/// for generator `j` and `2j + 1` for its inverse.
#[derive(Clone, Debug)]
pub struct Tree {
    pub k: usize,
    pub n: usize,
    pub ok: Vec<Vec<Vec<bool>>>,
}

impl Tree {
    fn allows(&self, letter: u8, u: usize, v: usize) -> bool {
        let j = (letter / 2) as usize;
        if letter % 2 == 0 {
            self.ok[j][u][v]
        } else {
            self.ok[j][v][u]
        }
    }
}

/// The ball of radius `r` as reduced words with parent links.
pub struct Ball {
    pub words: Vec<Vec<u8>>,
    pub parent: Vec<Option<(usize, u8)>>,
    pub radius: usize,
}

pub fn ball(k: usize, r: usize) -> Ball {
    let mut words = vec![Vec::new()];
    let mut parent = vec![None];
    let mut i = 0;
    while i < words.len() {
        let w: Vec<u8> = words[i].clone();
        if w.len() < r {
            for c in 0..2 * k as u8 {
                if w.last().is_some_and(|&l| l ^ 1 == c) {
                    continue;
                }
                let mut v = w.clone();
                v.push(c);
                words.push(v);
                parent.push(Some((i, c)));
            }
        }
        i += 1;
    }
    Ball { words, parent, radius: r }
}

/// Arc consistency on a ball, then a top-down assignment: finds values
/// locally valid on every edge of the ball, agreeing with `pins`, with a
/// `boundary` symbol on every cell of the outer sphere. The assignment is
/// rechecked edge by edge before it is returned.
pub fn solve(t: &Tree, b: &Ball, pins: &BTreeMap<Vec<u8>, usize>, boundary: &[bool]) -> Option<Vec<usize>> {
    let m = b.words.len();
    if pins.keys().any(|w| w.len() > b.radius) {
        return None;
    }
    let mut dom: Vec<Vec<bool>> = (0..m)
        .map(|v| {
            (0..t.n)
                .map(|s| {
                    let pinned = pins.get(&b.words[v]).is_none_or(|&p| p == s);
                    pinned && (b.words[v].len() < b.radius || boundary[s])
                })
                .collect()
        })
        .collect();
    let mut edges: Vec<(usize, usize, u8)> = Vec::new();
    let mut inc: Vec<Vec<usize>> = vec![Vec::new(); m];
    for (v, p) in b.parent.iter().enumerate() {
        if let Some((u, c)) = p {
            inc[*u].push(edges.len());
            inc[v].push(edges.len());
            edges.push((*u, v, *c));
        }
    }
    if dom.iter().any(|d| d.iter().all(|&x| !x)) {
        return None;
    }
    let mut queue: VecDeque<usize> = (0..edges.len()).collect();
    let mut queued = vec![true; edges.len()];
    while let Some(i) = queue.pop_front() {
        queued[i] = false;
        let (u, v, c) = edges[i];
        let mut changed = Vec::new();
        for s in 0..t.n {
            if dom[u][s] && !(0..t.n).any(|r| dom[v][r] && t.allows(c, s, r)) {
                dom[u][s] = false;
                changed.push(u);
            }
        }
        for r in 0..t.n {
            if dom[v][r] && !(0..t.n).any(|s| dom[u][s] && t.allows(c, s, r)) {
                dom[v][r] = false;
                changed.push(v);
            }
        }
        if dom[u].iter().all(|&x| !x) || dom[v].iter().all(|&x| !x) {
            return None;
        }
        for x in changed {
            for &j in &inc[x] {
                if !queued[j] {
                    queued[j] = true;
                    queue.push_back(j);
                }
            }
        }
    }
    let mut out = vec![usize::MAX; m];
    out[0] = (0..t.n).find(|&s| dom[0][s])?;
    for v in 1..m {
        let (u, c) = b.parent[v].expect("non-root cells have parents");
        let s = (0..t.n).find(|&s| dom[v][s] && t.allows(c, out[u], s));
        out[v] = s.expect("arc-consistent tree domains always extend");
    }
    for &(u, v, c) in &edges {
        assert!(t.allows(c, out[u], out[v]), "assignment violates an edge");
    }
    for (v, w) in b.words.iter().enumerate() {
        assert!(w.len() < b.radius || boundary[out[v]]);
        assert!(pins.get(w).is_none_or(|&p| p == out[v]));
    }
    Some(out)
}

/// Symbols at the root of a valid assignment of the radius-`depth` ball.
pub fn essential(t: &Tree, depth: usize) -> Vec<bool> {
    let b = ball(t.k, depth);
    let all = vec![true; t.n];
    (0..t.n)
        .map(|s| {
            let pins = BTreeMap::from([(Vec::new(), s)]);
            solve(t, &b, &pins, &all).is_some()
        })
        .collect()
}

/// Whether the pinned cells extend to a configuration: a solution on the
/// smallest ball containing them whose boundary symbols are essential.
pub fn glues(t: &Tree, pins: &BTreeMap<Vec<u8>, usize>, ess: &[bool]) -> bool {
    let r = pins.keys().map(Vec::len).max().unwrap_or(0).max(1);
    solve(t, &ball(t.k, r), pins, ess).is_some()
}

/// Least `R <= rmax` such that single essential symbols at every distance
/// in `R..=rmax + 1` glue.
pub fn si_gap(t: &Tree, ess: &[bool], rmax: usize) -> Option<usize> {
    let syms: Vec<usize> = (0..t.n).filter(|&s| ess[s]).collect();
    let ok: Vec<bool> = (0..=rmax + 1)
        .map(|d| {
            if d == 0 {
                return false;
            }
            let b = ball(t.k, d);
            b.words.iter().filter(|w| w.len() == d).all(|w| {
                syms.iter().all(|&a| {
                    syms.iter().all(|&c| {
                        let pins = BTreeMap::from([(Vec::new(), a), (w.clone(), c)]);
                        solve(t, &b, &pins, ess).is_some()
                    })
                })
            })
        })
        .collect();
    (1..=rmax).find(|&r| ok[r..].iter().all(|&b| b))
}

/// Fibonacci numbers by the recurrence, `fib(1) = fib(2) = 1`.
pub fn fib(n: usize) -> u64 {
    let (mut a, mut b) = (0u64, 1u64);
    for _ in 0..n {
        (a, b) = (b, a + b);
    }
    a
}

/// Binary words of length `n` without two adjacent ones, by enumeration.
pub fn golden_words(n: usize) -> u64 {
    (0..1u64 << n).filter(|w| w & (w >> 1) == 0).count() as u64
}

/// Checks an R-net on a torus directly: occupied cells are pairwise at
/// sup-distance at least `r`, and every cell has a point within `r`.
pub fn torus_net(dims: &[usize], pts: &[Vec<i64>], r: usize) -> bool {
    let (w, h) = (dims[0] as i64, dims[1] as i64);
    let mut occ = vec![false; (w * h) as usize];
    let at = |x: i64, y: i64| (x.rem_euclid(w) + w * y.rem_euclid(h)) as usize;
    for p in pts {
        if occ[at(p[0], p[1])] {
            return false;
        }
        occ[at(p[0], p[1])] = true;
    }
    let r = r as i64;
    for p in pts {
        for dx in -(r - 1)..r {
            for dy in -(r - 1)..r {
                if (dx, dy) != (0, 0) && occ[at(p[0] + dx, p[1] + dy)] {
                    return false;
                }
            }
        }
    }
    (0..w).all(|x| (0..h).all(|y| (-r..=r).any(|dx| (-r..=r).any(|dy| occ[at(x + dx, y + dy)]))))
}
