use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use symdyn_core::check::{check_into, window_diameter};
use symdyn_core::freegroup::{essential_symbols, random_sft, search_counterexample, SearchParams};
use symdyn_core::glue::{
    build_retraction, cocycle_sft, edge_difference, factor_onto_contractible, stitch, verify_stitch,
};
use symdyn_core::homotopy::{
    coloring_homotopy, burton_steif, natural_extension, naive_contraction, safe_symbol_homotopy, verify_contraction,
};
use symdyn_core::onedim::{
    homotopy_equivalent_transitive, mixing_contraction_homotopy, recode_to_vertex_shift, transition_words,
    words_by_pair, Equivalence,
};
use symdyn_core::zddim::{almost_union, corner_merge, corner_partition, greedy_net_completion, is_net, Torus};
use symdyn_core::{BlockMap, Element, FiniteDomain, Group, Pattern, PeriodicConfig, Sft, Sym, Verdict};

#[test]
fn second_difference() {
    let d = BlockMap::line_xor();
    let dd = BlockMap::compose(&d, &[d.clone()]).unwrap();
    let word = [0, 1, 1, 0, 0];
    let first: Vec<Sym> = word.windows(2).map(|w| w[0] ^ w[1]).collect();
    let second: Vec<Sym> = first.windows(2).map(|w| w[0] ^ w[1]).collect();
    assert_eq!(second, vec![1, 1, 1]);
    assert_eq!(dd.apply(&[Pattern::word(&word)]).unwrap(), Pattern::word(&second));
}

#[test]
fn product_pairs_tracks() {
    let f = BlockMap::product(&BlockMap::line_xor(), &BlockMap::identity(Group::Line, 3)).unwrap();
    for a in 0..3 {
        for b in 0..3 {
            let out = f.apply(&[Pattern::word(&[0, 1]), Pattern::word(&[a, b])]).unwrap();
            // (0 xor 1, a) coded as 1 * 3 + a
            assert_eq!(out, Pattern::word(&[3 + a]));
        }
    }
}

#[test]
fn homotopy_constructor_examples() {
    let gm = Sft::golden_mean();
    let safe = safe_symbol_homotopy(&gm, 0).unwrap();
    assert!(matches!(verify_contraction(&safe, Some(1), true), Verdict::Counterexample(_)));
    assert!(matches!(verify_contraction(&naive_contraction(&gm), None, false), Verdict::Counterexample(_)));
    assert!(coloring_homotopy(Group::Grid(2), 4).is_err());
    let (line_bs, _) = burton_steif(Group::Line, 1).unwrap();
    assert_eq!(line_bs.size(), 2);
    let full = Sft::full(Group::Line, 2);
    for w in 0..1 << 6 {
        let word: Vec<Sym> = (0..6).map(|i| (w >> i & 1) as Sym).collect();
        assert!(line_bs.locally_valid(&Pattern::word(&word)).unwrap());
        assert!(full.locally_valid(&Pattern::word(&word)).unwrap());
    }
}

#[test]
fn natural_extension_copies_invalid_tracks() {
    let gm = Sft::golden_mean();
    let h = safe_symbol_homotopy(&gm, 0).unwrap();
    let ext = natural_extension(&h).unwrap();
    let n = ext.nbhd.len();
    let c = ext.nbhd.index_of(&Group::Line.identity()).unwrap();
    let x = vec![1; n];
    for y in [vec![0; n], vec![1; n]] {
        assert_eq!(ext.eval(&[vec![0; n], x.clone(), y.clone()]), x[c]);
        assert_eq!(ext.eval(&[vec![1; n], y.clone(), x.clone()]), x[c]);
    }
}

#[test]
fn dilation_examples() {
    let alt = PeriodicConfig::line(vec![0, 1]).unwrap();
    assert_eq!(BlockMap::ball_min(Group::Line, 2).apply_periodic(&[alt]).unwrap().labels(), [0, 0]);
    let f = BlockMap::z_min_max(2);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..50 {
        let word: Vec<Sym> = (0..80).map(|_| rng.gen_range(0..2)).collect();
        let out = f.apply(&[Pattern::word(&word)]).unwrap();
        let syms: Vec<Sym> = out.cells().map(|(_, s)| s).collect();
        let mut runs = Vec::new();
        let mut len = 1;
        for w in syms.windows(2) {
            if w[0] == w[1] {
                len += 1;
            } else {
                runs.push(len);
                len = 1;
            }
        }
        runs.push(len);
        if runs.len() > 2 {
            assert!(runs[1..runs.len() - 1].iter().all(|&r| r >= 2), "{syms:?}");
        }
    }
}

#[test]
fn recoding_keeps_the_language() {
    // window {0, 1, 2}, forbid 111
    let x = Sft::new(
        Group::Line,
        Sft::numeric_alphabet(2),
        FiniteDomain::interval(0, 2),
        vec![Pattern::word(&[1, 1, 1])],
    )
    .unwrap();
    let g = recode_to_vertex_shift(&x).unwrap();
    for len in 2..10usize {
        let mut paths = 0u64;
        let mut count = vec![1u64; g.vertices()];
        for _ in 2..len {
            let mut next = vec![0u64; g.vertices()];
            for (u, c) in count.iter().enumerate() {
                for &v in &g.succ[u] {
                    next[v] += c;
                }
            }
            count = next;
        }
        paths += count.iter().sum::<u64>();
        let brute = (0..1u32 << len).filter(|w| (0..len - 2).all(|i| w >> i & 7 != 7)).count() as u64;
        assert_eq!(paths, brute, "length {len}");
    }
}

#[test]
fn transition_word_examples() {
    let gm = Sft::golden_mean();
    let t = words_by_pair(&transition_words(&gm, 1).unwrap());
    assert_eq!(t.len(), 4);
    assert!(t.values().all(|v| v == &vec![0]));
    assert!(transition_words(&gm, 0).is_err());
    let full = words_by_pair(&transition_words(&Sft::full(Group::Line, 2), 2).unwrap());
    assert!(full.values().all(|v| v == &vec![0, 0]));
}

#[test]
fn equivalence_examples() {
    let gm = Sft::golden_mean();
    let full = Sft::full(Group::Line, 2);
    let two = Sft::vertex_shift(2, &[(0, 1), (1, 0)]);
    assert!(mixing_contraction_homotopy(&two).is_err());
    assert!(verify_contraction(&mixing_contraction_homotopy(&gm).unwrap(), None, false).is_proved());
    assert!(matches!(homotopy_equivalent_transitive(&gm, &full, 8).unwrap(), Equivalence::Equivalent { .. }));
    assert!(matches!(homotopy_equivalent_transitive(&full, &two, 8).unwrap(), Equivalence::NotEquivalent { .. }));
    assert!(matches!(homotopy_equivalent_transitive(&two, &two, 8).unwrap(), Equivalence::Equivalent { .. }));
}

#[test]
fn retraction_repairs_a_defect() {
    let gm = Sft::golden_mean();
    let h = safe_symbol_homotopy(&gm, 0).unwrap();
    let r = build_retraction(&gm, &h, 0, 3).unwrap().map;
    let mut word = vec![0; 24];
    word[10] = 1;
    word[11] = 1;
    let out = r.apply_periodic(&[PeriodicConfig::line(word.clone()).unwrap()]).unwrap();
    let labels = out.labels();
    assert!((0..24).all(|i| labels[i] & labels[(i + 1) % 24] == 0), "{labels:?}");
    let reach = r.nbhd.radius() as i64;
    for i in 0..24i64 {
        if (i - 10).abs() > reach + 1 && (i - 11).abs() > reach + 1 {
            assert_eq!(labels[i as usize], word[i as usize]);
        }
    }
    let full = Sft::full(Group::Line, 2);
    let id = build_retraction(&full, &naive_contraction(&full), 0, 3).unwrap().map;
    assert_eq!(id.nbhd, FiniteDomain::singleton(Group::Line.identity()));
    assert_eq!((id.eval(&[vec![0]]), id.eval(&[vec![1]])), (0, 1));
}

#[test]
fn stitch_examples() {
    let gm = Sft::golden_mean();
    let h = safe_symbol_homotopy(&gm, 0).unwrap();
    let x = Sft::full(Group::Line, 2);
    let total = BlockMap::constant(Group::Line, vec![2], 3, 0);
    let blank = BlockMap::constant(Group::Line, vec![2], 3, 2);
    let k = stitch(&[total.clone(), blank.clone()], &gm, &h).unwrap();
    verify_stitch(&k, &x, &gm).unwrap();
    let n = k.nbhd.len();
    for w in 0..1u32 << n.min(12) {
        let c: Vec<Sym> = (0..n).map(|i| (w >> i & 1) as Sym).collect();
        assert_eq!(k.eval(&[c]), 0);
    }
    let none = stitch(&[blank.clone(), blank], &gm, &h).unwrap();
    assert!(verify_stitch(&none, &x, &gm).is_err());
}

#[test]
fn factor_edge_cases() {
    let (x, y) = (Sft::full(Group::Line, 3), Sft::golden_mean());
    let h = safe_symbol_homotopy(&y, 0).unwrap();
    let f = BlockMap::constant(Group::Line, vec![3], 2, 0);
    let into = BlockMap::relabel(Group::Line, 3, 2, vec![0, 1, 0]).unwrap();
    let never = BlockMap::constant(Group::Line, vec![3], 2, 1);
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let words: Vec<Vec<Sym>> = (0..40).map(|_| (0..10).map(|_| rng.gen_range(0..3)).collect()).collect();
    for (g, follows_g) in [(into, false), (never, true)] {
        let k = factor_onto_contractible(&f, &g, &x, &y, &h).unwrap();
        for w in &words {
            let c = PeriodicConfig::line(w.clone()).unwrap();
            let want = if follows_g { f.apply_periodic(&[c.clone()]) } else { g.apply_periodic(&[c.clone()]) }.unwrap();
            let got = k.apply_periodic(&[c]).unwrap();
            if follows_g || y_valid(want.labels()) {
                assert_eq!(got.labels(), want.labels());
            }
        }
    }
}

fn y_valid(w: &[Sym]) -> bool {
    (0..w.len()).all(|i| w[i] & w[(i + 1) % w.len()] == 0)
}

#[test]
fn edge_difference_examples() {
    let f = edge_difference();
    let zero = PeriodicConfig::grid(vec![4, 4], vec![0; 16]).unwrap();
    assert!(f.apply_periodic(&[zero]).unwrap().labels().iter().all(|&s| s == 0));
    let board: Vec<Sym> = (0..16).map(|v| ((v % 4 + v / 4) % 2) as Sym).collect();
    let out = f.apply_periodic(&[PeriodicConfig::grid(vec![4, 4], board).unwrap()]).unwrap();
    assert!(out.labels().iter().all(|&s| s == 15));
    let c = cocycle_sft();
    assert!(check_into(&f, &Sft::full(Group::Grid(2), 2), &c, window_diameter(&c.window)).is_proved());
}

#[test]
fn random_sft_density_limits() {
    let dense = random_sft(2, 3, 1.0 - 1e-12, 42).unwrap();
    assert!(dense.allowed.iter().all(|r| r.iter().all(|&m| m == 0b111)));
    let sparse = random_sft(2, 3, 1e-12, 42).unwrap();
    assert_eq!(essential_symbols(&sparse), 0);
    let p = SearchParams { k: 2, alphabet: 3, density: 0.5, count: 0, rmax: 3, degree_bound: 2, seed: 1 };
    let r = search_counterexample(&p).unwrap();
    assert!(r.verdicts.is_empty() && r.candidates.is_empty());
}

/// One cell per corner, each 4-connected.
fn cells_ok(t: &Torus, cell: &[usize], corners: usize) -> bool {
    let mut labels = BTreeSet::new();
    let mut seen = vec![false; cell.len()];
    let mut regions = 0;
    for s in 0..cell.len() {
        labels.insert(cell[s]);
        if seen[s] {
            continue;
        }
        regions += 1;
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for d in [[1i64, 0], [-1, 0], [0, 1], [0, -1]] {
                let v = t.offset(u, &d);
                if !seen[v] && cell[v] == cell[u] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
    }
    regions == corners && labels.len() == corners
}

#[test]
fn random_net_partition() {
    let t = Torus::new(vec![100, 100]).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(30);
    let start = vec![vec![rng.gen_range(0..100), rng.gen_range(0..100)]];
    let net = greedy_net_completion(&t, 10, &start, 20).unwrap();
    let p = corner_partition(&t, 10, &net, 1).unwrap();
    assert!(cells_ok(&t, &p.cell, net.len()), "{} corners", net.len());
}

#[test]
fn half_plane_merge() {
    let t = Torus::new(vec![60, 60]).unwrap();
    let r = 4usize;
    let xs = greedy_net_completion(&t, r, &[vec![0, 0]], 2 * r).unwrap();
    let ys = greedy_net_completion(&t, r, &[vec![3, 5]], 2 * r).unwrap();
    let time: Vec<Sym> = (0..t.len()).map(|v| (t.coords(v)[0] >= 30) as Sym).collect();
    let z = corner_merge(&t, &time, &xs, &ys, r).unwrap();
    assert!(is_net(&t, &z, r));
    // deep inside a half: farther than 3R from both boundary lines x = 0 and x = 30
    let deep = |p: &Vec<i64>, lo: i64| p[0] >= lo + 3 * r as i64 && p[0] < lo + 30 - 3 * r as i64;
    for p in &xs {
        if deep(p, 0) {
            assert!(z.contains(p), "{p:?}");
        }
    }
    for p in &ys {
        if deep(p, 30) {
            assert!(z.contains(p), "{p:?}");
        }
    }
    for p in &z {
        if deep(p, 0) {
            assert!(xs.contains(p));
        }
        if deep(p, 30) {
            assert!(ys.contains(p));
        }
    }
}

/// Direct set arithmetic with the `ℓ1` word metric on the plane.
fn almost_union_oracle(a: &BTreeSet<(i64, i64)>, b: &BTreeSet<(i64, i64)>, r: i64) -> BTreeSet<(i64, i64)> {
    let ball: Vec<(i64, i64)> =
        (-r..=r).flat_map(|x| (-r..=r).map(move |y| (x, y))).filter(|(x, y)| x.abs() + y.abs() <= r).collect();
    let interior = |s: &BTreeSet<(i64, i64)>| -> BTreeSet<(i64, i64)> {
        s.iter().filter(|p| ball.iter().all(|q| s.contains(&(p.0 + q.0, p.1 + q.1)))).copied().collect()
    };
    let near = |s: &BTreeSet<(i64, i64)>, p: &(i64, i64)| ball.iter().any(|q| s.contains(&(p.0 - q.0, p.1 - q.1)));
    let mut out: BTreeSet<(i64, i64)> = interior(a).union(&interior(b)).copied().collect();
    for p in a.union(b) {
        if !(near(a, p) && near(b, p)) {
            out.insert(*p);
        }
    }
    out
}

fn boxed(x0: i64, y0: i64, side: i64) -> BTreeSet<(i64, i64)> {
    (x0..x0 + side).flat_map(|x| (y0..y0 + side).map(move |y| (x, y))).collect()
}

fn dom(s: &BTreeSet<(i64, i64)>) -> FiniteDomain {
    FiniteDomain::new(s.iter().map(|&(x, y)| Element::Grid(vec![x, y])).collect())
}

#[test]
fn almost_union_examples() {
    let g = Group::Grid(2);
    let (a, b) = (boxed(0, 0, 8), boxed(5, 3, 8));
    let got = almost_union(g, &dom(&a), &dom(&b), 2).unwrap();
    assert_eq!(got, dom(&almost_union_oracle(&a, &b, 2)));
    let far = boxed(20, 20, 4);
    let union: BTreeSet<_> = a.union(&far).copied().collect();
    assert_eq!(almost_union(g, &dom(&a), &dom(&far), 2).unwrap(), dom(&union));
}
