//! Nearest-neighbor SFTs on free groups: essential symbols, exact gluing by
//! propagation along the tree, strong irreducibility, periodic points on
//! finite quotients, random generation and the counterexample search.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{input, Result};
use crate::group::{Element, Group};
use crate::pattern::{FiniteDomain, Pattern, Sym};
use crate::periodic::PeriodicConfig;
use crate::sft::Sft;

/// Symbol sets are bitmasks; alphabets have at most 64 symbols.
pub type SymSet = u64;

/// A nearest-neighbor SFT on `F_k`: `allowed[j][u]` is the set of symbols `v`
/// allowed at `a_j` when `u` sits at the identity.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NnFreeSft {
    pub k: usize,
    pub n: usize,
    pub allowed: Vec<Vec<SymSet>>,
}

fn full_set(n: usize) -> SymSet {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

impl NnFreeSft {
    pub fn new(k: usize, n: usize, allowed: Vec<Vec<SymSet>>) -> Result<NnFreeSft> {
        if k == 0 || n == 0 || n > 64 {
            return input("rank must be positive and the alphabet size in 1..=64");
        }
        if allowed.len() != k || allowed.iter().any(|r| r.len() != n || r.iter().any(|&m| m & !full_set(n) != 0)) {
            return input("one relation row per symbol and generator is required");
        }
        Ok(NnFreeSft { k, n, allowed })
    }

    /// Builds the SFT from allowed pairs `(generator, u, v)`.
    pub fn from_pairs(k: usize, n: usize, pairs: &[(usize, Sym, Sym)]) -> Result<NnFreeSft> {
        let mut allowed = vec![vec![0; n]; k];
        for &(j, u, v) in pairs {
            if j >= k || u as usize >= n || v as usize >= n {
                return input("pair out of range");
            }
            allowed[j][u as usize] |= 1 << v;
        }
        NnFreeSft::new(k, n, allowed)
    }

    pub fn full(k: usize, n: usize) -> NnFreeSft {
        NnFreeSft { k, n, allowed: vec![vec![full_set(n); n]; k] }
    }

    /// Proper colorings: unequal neighbors in every direction.
    pub fn coloring(k: usize, n: usize) -> NnFreeSft {
        let rows = (0..n).map(|u| full_set(n) & !(1 << u)).collect();
        NnFreeSft { k, n, allowed: vec![rows; k] }
    }

    /// Neighbors in direction `c` (letter code: `2j` is `a_j`, `2j + 1` its inverse).
    pub fn step(&self, c: u8, u: usize) -> SymSet {
        let j = (c / 2) as usize;
        if c & 1 == 0 {
            self.allowed[j][u]
        } else {
            (0..self.n).filter(|&v| self.allowed[j][v] >> u & 1 == 1).fold(0, |m, v| m | 1 << v)
        }
    }

    /// Symbols with a neighbor in `set` in direction `c`.
    pub fn pre(&self, c: u8, set: SymSet) -> SymSet {
        (0..self.n).filter(|&u| self.step(c, u) & set != 0).fold(0, |m, u| m | 1 << u)
    }

    /// Union of the neighbors of `set` in direction `c`.
    pub fn post(&self, c: u8, set: SymSet) -> SymSet {
        (0..self.n).filter(|&u| set >> u & 1 == 1).fold(0, |m, u| m | self.step(c, u))
    }

    pub fn to_sft(&self) -> Sft {
        let group = Group::Free(self.k);
        let id = group.identity();
        let mut forb = Vec::new();
        for j in 0..self.k {
            let s = Element::Free(vec![2 * j as u8]);
            for u in 0..self.n {
                for v in 0..self.n {
                    if self.allowed[j][u] >> v & 1 == 0 {
                        forb.push(Pattern::from_cells([(id.clone(), u as Sym), (s.clone(), v as Sym)]));
                    }
                }
            }
        }
        Sft::new(group, Sft::numeric_alphabet(self.n), group.ball(1), forb).expect("relations are well formed")
    }
}

/// Greatest fixpoint: symbols with a surviving neighbor in every direction.
/// Exactly the symbols that occur in some configuration.
pub fn essential_symbols(x: &NnFreeSft) -> SymSet {
    let mut e = full_set(x.n);
    loop {
        let mut next = e;
        for c in 0..2 * x.k as u8 {
            next &= x.pre(c, e);
        }
        if next == e {
            return e;
        }
        e = next;
    }
}

fn free_word(e: &Element) -> Result<&[u8]> {
    match e {
        Element::Free(w) => Ok(w),
        _ => input("free-group pattern expected"),
    }
}

/// Whether some configuration extends both `p` and `q`.
///
/// The tree spanned by the pinned cells and the identity is solved by
/// leaf-to-root propagation; subtrees off it only require essential symbols.
pub fn glue_check(x: &NnFreeSft, p: &Pattern, q: &Pattern) -> Result<bool> {
    if p.domain.iter().any(|e| q.domain.contains(e)) {
        return input("pattern domains overlap");
    }
    let ess = essential_symbols(x);
    let mut base: BTreeMap<Vec<u8>, SymSet> = BTreeMap::new();
    for (e, s) in p.cells().chain(q.cells()) {
        let w = free_word(e)?;
        if s as usize >= x.n || w.iter().any(|&c| c as usize >= 2 * x.k) {
            return input("pattern outside the SFT's alphabet or group");
        }
        for l in 0..w.len() {
            base.entry(w[..l].to_vec()).or_insert(ess);
        }
        let m = base.entry(w.to_vec()).or_insert(ess);
        *m &= 1 << s;
    }
    if base.is_empty() {
        return Ok(ess != 0);
    }
    let mut words: Vec<Vec<u8>> = base.keys().cloned().collect();
    words.sort_by_key(|w| core::cmp::Reverse(w.len()));
    for w in words {
        if w.is_empty() {
            continue;
        }
        let set = base[&w];
        let (parent, last) = (w[..w.len() - 1].to_vec(), w[w.len() - 1]);
        let allowed = x.pre(last, set);
        *base.get_mut(&parent).unwrap() &= allowed;
    }
    Ok(base[&Vec::new()] != 0)
}

/// Verdict of the strong irreducibility test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SiVerdict {
    /// Least gluing distance, tested on patterns over balls of radius `r0`.
    Gap { r: usize, r0: usize },
    NotWithin { rmax: usize, r0: usize },
}

/// Reduced words of length `len` over `2k` letters, in canonical order.
pub fn reduced_words(k: usize, len: usize) -> Vec<Vec<u8>> {
    let mut out: Vec<Vec<u8>> = vec![Vec::new()];
    for _ in 0..len {
        let mut next = Vec::new();
        for w in &out {
            for c in 0..2 * k as u8 {
                if w.last().is_some_and(|&l| l ^ 1 == c) {
                    continue;
                }
                let mut v = w.clone();
                v.push(c);
                next.push(v);
            }
        }
        out = next;
    }
    out
}

/// Least `R <= rmax` such that valid patterns on balls at distance at least
/// `R` always glue.
///
/// On a tree two balls interact only through the geodesic joining them, and
/// every essential symbol occurs on the boundary cell of some valid ball
/// pattern, so gluing at distance `R` holds iff propagation through
/// essential symbols along every reduced word of length `R` reaches every
/// essential symbol. Propagation never shrinks along longer words, so the
/// first passing `R` is the gap for all larger distances.
pub fn is_strongly_irreducible(x: &NnFreeSft, r0: usize, rmax: usize) -> SiVerdict {
    let ess = essential_symbols(x);
    for r in 1..=rmax {
        let ok = reduced_words(x.k, r).iter().all(|w| {
            (0..x.n).filter(|&s| ess >> s & 1 == 1).all(|s| {
                let mut set: SymSet = 1 << s;
                for &c in w {
                    set = x.post(c, set) & ess;
                }
                set == ess
            })
        });
        if ok {
            return SiVerdict::Gap { r, r0 };
        }
    }
    SiVerdict::NotWithin { rmax, r0 }
}

/// Outcome of the periodic point search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PeriodicSearch {
    Found(PeriodicConfig),
    NotFoundUpTo(usize),
}

fn permutations(p: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..p).collect();
    fn rec(i: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == cur.len() {
            out.push(cur.clone());
            return;
        }
        for j in i..cur.len() {
            cur.swap(i, j);
            rec(i + 1, cur, out);
            cur.swap(i, j);
        }
    }
    rec(0, &mut cur, &mut out);
    out.sort();
    out
}

/// One permutation per cycle type: consecutive cycles of nonincreasing length.
fn cycle_type_representatives(p: usize) -> Vec<Vec<usize>> {
    fn parts(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for l in (1..=rest.min(max)).rev() {
            cur.push(l);
            parts(rest - l, l, cur, out);
            cur.pop();
        }
    }
    let mut ps = Vec::new();
    parts(p, p, &mut Vec::new(), &mut ps);
    ps.into_iter()
        .map(|part| {
            let mut perm = vec![0; p];
            let mut start = 0;
            for l in part {
                for i in 0..l {
                    perm[start + i] = start + (i + 1) % l;
                }
                start += l;
            }
            perm
        })
        .collect()
}

fn label_quotient(x: &NnFreeSft, perms: &[&Vec<usize>], ess: SymSet) -> Option<Vec<Sym>> {
    let p = perms[0].len();
    let mut labels: Vec<Option<usize>> = vec![None; p];
    fn ok(x: &NnFreeSft, perms: &[&Vec<usize>], labels: &[Option<usize>], v: usize) -> bool {
        let u = labels[v].unwrap();
        for (j, s) in perms.iter().enumerate() {
            if let Some(w) = labels[s[v]] {
                if x.allowed[j][u] >> w & 1 == 0 {
                    return false;
                }
            }
            let back = s.iter().position(|&t| t == v).unwrap();
            if let Some(w) = labels[back] {
                if x.allowed[j][w] >> u & 1 == 0 {
                    return false;
                }
            }
        }
        true
    }
    fn rec(x: &NnFreeSft, perms: &[&Vec<usize>], labels: &mut Vec<Option<usize>>, v: usize, ess: SymSet) -> bool {
        if v == labels.len() {
            return true;
        }
        for s in 0..x.n {
            if ess >> s & 1 == 0 {
                continue;
            }
            labels[v] = Some(s);
            if ok(x, perms, labels, v) && rec(x, perms, labels, v + 1, ess) {
                return true;
            }
        }
        labels[v] = None;
        false
    }
    if rec(x, perms, &mut labels, 0, ess) {
        Some(labels.into_iter().map(|l| l.unwrap() as Sym).collect())
    } else {
        None
    }
}

/// Checks every quotient edge against the relations.
pub fn verify_free_periodic(x: &NnFreeSft, c: &PeriodicConfig) -> bool {
    match c {
        PeriodicConfig::Free { perms, labels } => {
            perms.len() == x.k
                && labels.iter().all(|&l| (l as usize) < x.n)
                && perms.iter().enumerate().all(|(j, s)| {
                    (0..labels.len()).all(|v| x.allowed[j][labels[v] as usize] >> labels[s[v]] & 1 == 1)
                })
        }
        _ => false,
    }
}

/// Searches labelings of finite quotients of degree at most `degree_bound`.
/// The first generator ranges over cycle-type representatives, the others
/// over all permutations.
pub fn find_periodic_point(x: &NnFreeSft, degree_bound: usize) -> PeriodicSearch {
    let ess = essential_symbols(x);
    if ess == 0 {
        return PeriodicSearch::NotFoundUpTo(degree_bound);
    }
    for p in 1..=degree_bound {
        let all = permutations(p);
        let firsts = cycle_type_representatives(p);
        let mut idx = vec![0usize; x.k - 1];
        for first in &firsts {
            idx.iter_mut().for_each(|i| *i = 0);
            loop {
                let mut perms: Vec<&Vec<usize>> = vec![first];
                perms.extend(idx.iter().map(|&i| &all[i]));
                if let Some(labels) = label_quotient(x, &perms, ess) {
                    let cfg = PeriodicConfig::free(perms.into_iter().cloned().collect(), labels).expect("permutations");
                    debug_assert!(verify_free_periodic(x, &cfg));
                    return PeriodicSearch::Found(cfg);
                }
                let mut i = 0;
                while i < idx.len() && idx[i] + 1 == all.len() {
                    idx[i] = 0;
                    i += 1;
                }
                if i == idx.len() {
                    break;
                }
                idx[i] += 1;
            }
        }
    }
    PeriodicSearch::NotFoundUpTo(degree_bound)
}

/// A random SFT: each directed pair allowed independently with probability
/// `density`, drawn from ChaCha8 seeded with `seed`.
pub fn random_sft(k: usize, n: usize, density: f64, seed: u64) -> Result<NnFreeSft> {
    if !(density > 0.0 && density < 1.0) {
        return input("density must lie strictly between 0 and 1");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut allowed = vec![vec![0; n]; k];
    for row in allowed.iter_mut() {
        for m in row.iter_mut() {
            for v in 0..n {
                if rng.gen_bool(density) {
                    *m |= 1 << v;
                }
            }
        }
    }
    NnFreeSft::new(k, n, allowed)
}

/// Parameters of the counterexample search.
#[derive(Clone, Debug, PartialEq)]
pub struct SearchParams {
    pub k: usize,
    /// Largest alphabet; each SFT draws its size from `2..=alphabet`.
    pub alphabet: usize,
    pub density: f64,
    pub count: usize,
    pub rmax: usize,
    pub degree_bound: usize,
    pub seed: u64,
}

/// Result for one generated SFT.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SftVerdict {
    pub index: usize,
    pub sft: NnFreeSft,
    pub nonempty: bool,
    pub si: Option<SiVerdict>,
    /// Degree of the quotient carrying a periodic point, when one was found.
    pub periodic: Option<usize>,
    pub candidate: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchReport {
    pub verdicts: Vec<SftVerdict>,
    pub candidates: Vec<usize>,
}

/// Seed of the `i`-th SFT: SplitMix64 of the base seed and the index.
pub fn job_seed(seed: u64, i: usize) -> u64 {
    let mut z = seed ^ (i as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Generates and classifies the `i`-th SFT of a search.
pub fn search_one(params: &SearchParams, i: usize) -> Result<SftVerdict> {
    if params.alphabet < 2 {
        return input("alphabet bound must be at least 2");
    }
    let s = job_seed(params.seed, i);
    let n = 2 + (s % (params.alphabet as u64 - 1)) as usize;
    let sft = random_sft(params.k, n, params.density, s)?;
    let nonempty = essential_symbols(&sft) != 0;
    let mut v = SftVerdict { index: i, sft, nonempty, si: None, periodic: None, candidate: false };
    if !nonempty {
        return Ok(v);
    }
    let si = is_strongly_irreducible(&v.sft, 1, params.rmax);
    v.si = Some(si);
    if let SiVerdict::Gap { .. } = si {
        match find_periodic_point(&v.sft, params.degree_bound) {
            PeriodicSearch::Found(PeriodicConfig::Free { labels, .. }) => v.periodic = Some(labels.len()),
            _ => v.candidate = true,
        }
    }
    Ok(v)
}

/// Assembles a report from per-SFT verdicts in index order.
pub fn assemble(mut verdicts: Vec<SftVerdict>) -> SearchReport {
    verdicts.sort_by_key(|v| v.index);
    let candidates = verdicts.iter().filter(|v| v.candidate).map(|v| v.index).collect();
    SearchReport { verdicts, candidates }
}

/// Sequential search; see the std crate for the parallel harness.
pub fn search_counterexample(params: &SearchParams) -> Result<SearchReport> {
    let v = (0..params.count).map(|i| search_one(params, i)).collect::<Result<Vec<_>>>()?;
    Ok(assemble(v))
}

/// One-line summary of a verdict.
pub fn describe(v: &SftVerdict) -> String {
    let si = match v.si {
        None => String::from("-"),
        Some(SiVerdict::Gap { r, .. }) => format!("gap {r}"),
        Some(SiVerdict::NotWithin { rmax, .. }) => format!("not within {rmax}"),
    };
    let per = v.periodic.map_or(String::from("-"), |d| format!("degree {d}"));
    format!("{} |A|={} nonempty={} si={} periodic={} candidate={}", v.index, v.sft.n, v.nonempty, si, per, v.candidate)
}

/// Cells of the ball of radius `r` as a domain.
pub fn ball(k: usize, r: usize) -> FiniteDomain {
    Group::Free(k).ball(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn at(w: &[u8], s: Sym) -> Pattern {
        Pattern::from_cells([(Element::Free(w.to_vec()), s)])
    }

    #[test]
    fn essential_examples() {
        assert_eq!(essential_symbols(&NnFreeSft::full(2, 3)), 0b111);
        let one_way = NnFreeSft::from_pairs(2, 2, &[(0, 0, 1)]).unwrap();
        assert_eq!(essential_symbols(&one_way), 0);
        assert_eq!(essential_symbols(&NnFreeSft::coloring(2, 3)), 0b111);
    }

    #[test]
    fn gluing_examples() {
        let col = NnFreeSft::coloring(2, 3);
        assert!(glue_check(&col, &at(&[], 1), &at(&[0, 0], 1)).unwrap());
        let eq = NnFreeSft::from_pairs(2, 2, &[(0, 0, 0), (0, 1, 1), (1, 0, 0), (1, 1, 1)]).unwrap();
        assert!(!glue_check(&eq, &at(&[], 0), &at(&[0, 0, 0], 1)).unwrap());
        assert!(glue_check(&eq, &at(&[], 0), &at(&[0, 0, 0], 0)).unwrap());
        assert!(glue_check(&col, &at(&[], 1), &at(&[], 1)).is_err());
    }

    #[test]
    fn si_examples() {
        assert_eq!(is_strongly_irreducible(&NnFreeSft::full(2, 2), 1, 4), SiVerdict::Gap { r: 1, r0: 1 });
        assert_eq!(is_strongly_irreducible(&NnFreeSft::coloring(2, 3), 1, 4), SiVerdict::Gap { r: 2, r0: 1 });
        let eq = NnFreeSft::from_pairs(2, 2, &[(0, 0, 0), (0, 1, 1), (1, 0, 0), (1, 1, 1)]).unwrap();
        assert_eq!(is_strongly_irreducible(&eq, 1, 6), SiVerdict::NotWithin { rmax: 6, r0: 1 });
    }

    #[test]
    fn periodic_examples() {
        match find_periodic_point(&NnFreeSft::full(2, 2), 3) {
            PeriodicSearch::Found(c) => assert_eq!(c.cell_count(), 1),
            other => panic!("{other:?}"),
        }
        let col = NnFreeSft::coloring(2, 3);
        match find_periodic_point(&col, 3) {
            PeriodicSearch::Found(c) => {
                assert_eq!(c.cell_count(), 2);
                assert!(verify_free_periodic(&col, &c));
            }
            other => panic!("{other:?}"),
        }
        let empty = NnFreeSft::from_pairs(2, 2, &[(0, 0, 1)]).unwrap();
        assert_eq!(find_periodic_point(&empty, 3), PeriodicSearch::NotFoundUpTo(3));
    }

    #[test]
    fn random_is_deterministic() {
        let a = random_sft(2, 3, 0.5, 42).unwrap();
        assert_eq!(a, random_sft(2, 3, 0.5, 42).unwrap());
        assert!(random_sft(2, 3, 1.0, 42).is_err());
    }
}
