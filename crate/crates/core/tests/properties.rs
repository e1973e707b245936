use std::collections::{BTreeMap, BTreeSet, VecDeque};

use proptest::prelude::*;
use symdyn_core::freegroup::{glue_check, random_sft, search_one, NnFreeSft, SearchParams};
use symdyn_core::homotopy::{
    burton_steif, coloring_homotopy, eval_at, ksymbol_lift, ksymbol_reduce, naive_contraction, safe_symbol_homotopy,
    verify_contraction,
};
use symdyn_core::onedim::{analyze_1d, transition_words, words_by_pair};
use symdyn_core::sft::DEFAULT_BUDGET;
use symdyn_core::zddim::{greedy_net_completion, is_net, is_packing, Torus};
use symdyn_core::{BlockMap, Element, FiniteDomain, Group, Method, Pattern, PeriodicConfig, Sft, Sym, Validity, Verdict};

const GROUPS: [Group; 3] = [Group::Line, Group::Grid(2), Group::Free(2)];

fn group() -> impl Strategy<Value = Group> {
    prop::sample::select(GROUPS.to_vec())
}

/// A random element as a product of up to `len` generators.
fn element(g: Group, len: usize) -> impl Strategy<Value = Element> {
    let gens = g.generators();
    prop::collection::vec(prop::sample::select(gens), 0..=len)
        .prop_map(move |w| w.iter().fold(g.identity(), |a, s| a.mul(s)))
}

fn domain(g: Group) -> impl Strategy<Value = FiniteDomain> {
    prop::collection::vec(element(g, 4), 1..12).prop_map(FiniteDomain::new)
}

fn pattern(g: Group, n: Sym) -> impl Strategy<Value = Pattern> {
    domain(g).prop_flat_map(move |d| {
        let len = d.len();
        prop::collection::vec(0..n, len).prop_map(move |s| Pattern::new(d.clone(), s))
    })
}

/// Distance by breadth-first search in the Cayley graph.
fn bfs_dist(g: Group, a: &Element, b: &Element) -> usize {
    let gens = g.generators();
    let mut seen = BTreeSet::from([a.clone()]);
    let mut queue = VecDeque::from([(a.clone(), 0usize)]);
    while let Some((u, d)) = queue.pop_front() {
        if &u == b {
            return d;
        }
        for s in &gens {
            let v = u.mul(s);
            if seen.insert(v.clone()) {
                queue.push_back((v, d + 1));
            }
        }
    }
    unreachable!()
}

proptest! {
    #[test]
    fn translation_is_invertible((_, p, a) in group().prop_flat_map(|g| (Just(g), pattern(g, 3), element(g, 5)))) {
        prop_assert_eq!(p.translate(&a).translate(&a.inv()), p.clone());
        // (a p)_(a b) = p_b
        let q = p.translate(&a);
        for (b, s) in p.cells() {
            prop_assert_eq!(q.get(&a.mul(b)), Some(s));
        }
    }

    #[test]
    fn metric_is_symmetric_and_matches_bfs((g, a, b) in group().prop_flat_map(|g| (Just(g), element(g, 4), element(g, 4)))) {
        let d = g.dist(&a, &b);
        prop_assert_eq!(d, g.dist(&b, &a));
        prop_assert_eq!(d, a.inv().mul(&b).norm());
        prop_assert_eq!(d, bfs_dist(g, &a, &b));
    }

    #[test]
    fn free_words_stay_reduced(a in element(Group::Free(3), 8), b in element(Group::Free(3), 8)) {
        if let Element::Free(w) = a.mul(&b) {
            prop_assert!(w.windows(2).all(|p| p[1] != p[0] ^ 1));
        }
    }

    #[test]
    fn domains_are_canonical((_, elems) in group().prop_flat_map(|g| (Just(g), prop::collection::vec(element(g, 3), 0..10)))) {
        let d = FiniteDomain::new(elems.clone());
        let mut rev = elems.clone();
        rev.reverse();
        rev.extend(elems.iter().cloned());
        prop_assert_eq!(FiniteDomain::new(rev), d.clone());
        prop_assert!(d.as_slice().windows(2).all(|w| w[0] < w[1]));
        let set: BTreeSet<Element> = elems.into_iter().collect();
        prop_assert_eq!(d.len(), set.len());
    }

    #[test]
    fn product_and_interior((g, d, e) in group().prop_flat_map(|g| (Just(g), domain(g), domain(g)))) {
        let de = d.product(&e);
        for a in &d {
            for b in &e {
                prop_assert!(de.contains(&a.mul(b)));
            }
        }
        prop_assert_eq!(de.len(), d.iter().flat_map(|a| e.iter().map(move |b| a.mul(b))).collect::<BTreeSet<_>>().len());
        let ball = g.ball(1);
        let inner = de.interior(&g, 1);
        for a in &de {
            prop_assert_eq!(inner.contains(a), ball.iter().all(|s| de.contains(&a.mul(s))));
        }
    }

    #[test]
    fn balls_hold_exactly_the_short_elements((g, a) in group().prop_flat_map(|g| (Just(g), element(g, 4)))) {
        prop_assert_eq!(g.ball(3).contains(&a), a.norm() <= 3);
    }

    #[test]
    fn local_validity_survives_restriction(word in prop::collection::vec(0..2 as Sym, 1..14), keep in prop::collection::vec(any::<bool>(), 14)) {
        let gm = Sft::golden_mean();
        let p = Pattern::word(&word);
        let sub = FiniteDomain::new(p.domain.iter().zip(&keep).filter(|(_, &k)| k).map(|(e, _)| e.clone()).collect());
        if gm.locally_valid(&p).unwrap() {
            prop_assert!(gm.locally_valid(&p.restrict(&sub)).unwrap());
        }
    }

    #[test]
    fn grid_validity_survives_restriction(syms in prop::collection::vec(0..3 as Sym, 16), keep in prop::collection::vec(any::<bool>(), 16)) {
        let x = Sft::coloring(Group::Grid(2), 3);
        let p = Pattern::new(FiniteDomain::grid_box(&[0, 0], &[3, 3]), syms);
        let sub = FiniteDomain::new(p.domain.iter().zip(&keep).filter(|(_, &k)| k).map(|(e, _)| e.clone()).collect());
        if x.locally_valid(&p).unwrap() {
            prop_assert!(x.locally_valid(&p.restrict(&sub)).unwrap());
        }
    }

    #[test]
    fn bounded_oracle_is_sound(mask in 0u32..512, word in prop::collection::vec(0..3 as Sym, 1..=8), margin in 0usize..4) {
        let pairs: Vec<(Sym, Sym)> = (0..9).filter(|i| mask >> i & 1 == 1).map(|i| ((i / 3) as Sym, (i % 3) as Sym)).collect();
        let x = Sft::vertex_shift(3, &pairs);
        let p = Pattern::word(&word);
        let exact = x.globally_valid(&p, Method::Exact1d).unwrap();
        if x.globally_valid(&p, Method::Bounded(margin)).unwrap() == Validity::Invalid {
            prop_assert_eq!(exact, Validity::Invalid);
        }
    }
}

/// A random binary table map on the line with radius-1 neighborhood.
fn line_table() -> impl Strategy<Value = BlockMap> {
    prop::collection::vec(0..2 as Sym, 8)
        .prop_map(|rows| BlockMap::table(Group::Line, vec![2], 2, FiniteDomain::interval(-1, 1), rows).unwrap())
}

proptest! {
    #[test]
    fn apply_commutes_with_shifts((g, p, a, radius) in group().prop_flat_map(|g| (Just(g), pattern(g, 2), element(g, 3), 0usize..2))) {
        let maps = [BlockMap::xor(g, g.ball(radius)), BlockMap::ball_min(g, radius), BlockMap::top_symbol(g, 2)];
        for f in &maps {
            let lhs = f.apply(&[p.translate(&a)]).unwrap();
            let rhs = f.apply(&[p.clone()]).unwrap().translate(&a);
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn table_maps_commute_with_shifts(f in line_table(), word in prop::collection::vec(0..2 as Sym, 3..12), a in -5i64..5) {
        let p = Pattern::word(&word);
        let s = Element::Line(a);
        prop_assert_eq!(f.apply(&[p.translate(&s)]).unwrap(), f.apply(&[p]).unwrap().translate(&s));
    }

    #[test]
    fn composition_is_associative(f in line_table(), g in line_table(), h in line_table(), word in prop::collection::vec(0..2 as Sym, 7..16)) {
        let p = Pattern::word(&word);
        let left = BlockMap::compose(&h, &[BlockMap::compose(&g, &[f.clone()]).unwrap()]).unwrap();
        let right = BlockMap::compose(&BlockMap::compose(&h, &[g.clone()]).unwrap(), &[f.clone()]).unwrap();
        let stepwise = h.apply(&[g.apply(&[f.apply(&[p.clone()]).unwrap()]).unwrap()]).unwrap();
        prop_assert_eq!(left.apply(&[p.clone()]).unwrap(), stepwise.clone());
        prop_assert_eq!(right.apply(&[p]).unwrap().restrict(&stepwise.domain), stepwise);
    }

    #[test]
    fn tabulation_preserves_the_rule(contents in prop::collection::vec(0..2 as Sym, 5)) {
        for f in [BlockMap::xor(Group::Grid(2), Group::Grid(2).ball(1)), BlockMap::ball_min(Group::Grid(2), 1)] {
            let t = f.tabulate().unwrap();
            prop_assert_eq!(t.eval(&[contents.clone()]), f.eval(&[contents.clone()]));
        }
    }

    #[test]
    fn periodic_application_matches_patterns(f in line_table(), word in prop::collection::vec(0..2 as Sym, 1..8)) {
        let c = PeriodicConfig::line(word.clone()).unwrap();
        let out = f.apply_periodic(&[c.clone()]).unwrap();
        prop_assert!(out.same_period(&c));
        let d = FiniteDomain::interval(-1, word.len() as i64);
        let img = f.apply(&[c.pattern(&d)]).unwrap();
        for (e, s) in img.cells() {
            prop_assert_eq!(out.at(e), s);
        }
    }

    #[test]
    fn ball_min_output_lies_in_j(word in prop::collection::vec(0..2 as Sym, 1..20), n in 1usize..3) {
        let f = BlockMap::ball_min(Group::Line, n);
        let y = f.apply_periodic(&[PeriodicConfig::line(word).unwrap()]).unwrap();
        let ni = n as i64;
        for a in 0..y.cell_count() as i64 {
            if y.at(&Element::Line(a)) == 0 {
                let found = (a - ni..=a + ni).any(|b| (b - ni..=b + ni).all(|c| y.at(&Element::Line(c)) == 0));
                prop_assert!(found, "cell {}", a);
            }
        }
    }

    #[test]
    fn homotopy_endpoints_are_projections(seed in any::<u64>()) {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let gm = Sft::golden_mean();
        let hs = [
            safe_symbol_homotopy(&gm, 0).unwrap(),
            coloring_homotopy(Group::Line, 3).unwrap().1,
            burton_steif(Group::Grid(2), 2).unwrap().1,
        ];
        for h in &hs {
            let n = h.map.nbhd.len();
            let c = h.map.nbhd.index_of(&h.map.group.identity()).unwrap();
            let k = h.sft.size() as Sym;
            let x: Vec<Sym> = (0..n).map(|_| rng.gen_range(0..k)).collect();
            let y: Vec<Sym> = (0..n).map(|_| rng.gen_range(0..k)).collect();
            prop_assert_eq!(eval_at(h, &vec![h.left(); n], &x, &y), x[c]);
            prop_assert_eq!(eval_at(h, &vec![h.right(); n], &x, &y), y[c]);
        }
    }

    #[test]
    fn free_relations_transpose(k in 1usize..3, n in 1usize..5, density in 0.1f64..0.9, seed in any::<u64>()) {
        let x = random_sft(k, n, density, seed).unwrap();
        for j in 0..k {
            for u in 0..n {
                for v in 0..n {
                    let fwd = x.step(2 * j as u8, u) >> v & 1;
                    let back = x.step(2 * j as u8 + 1, v) >> u & 1;
                    prop_assert_eq!(fwd, back);
                }
            }
        }
        prop_assert_eq!(random_sft(k, n, density, seed).unwrap(), x);
    }

    #[test]
    fn enlarging_relations_keeps_gluing(mask in 0u32..256, extra in 0u32..256, a in 0..2 as Sym, b in 0..2 as Sym, w in prop::sample::select(symdyn_core::freegroup::reduced_words(2, 2))) {
        let build = |m: u32| {
            let pairs: Vec<(usize, Sym, Sym)> = (0..8)
                .filter(|i| m >> i & 1 == 1)
                .map(|i| ((i / 4) as usize, (i / 2 % 2) as Sym, (i % 2) as Sym))
                .collect();
            NnFreeSft::from_pairs(2, 2, &pairs).unwrap()
        };
        let (small, big) = (build(mask), build(mask | extra));
        let p = Pattern::from_cells([(Element::Free(Vec::new()), a)]);
        let q = Pattern::from_cells([(Element::Free(w), b)]);
        if glue_check(&small, &p, &q).unwrap() {
            prop_assert!(glue_check(&big, &p, &q).unwrap());
        }
    }
}

#[test]
fn golden_mean_counts_follow_fibonacci() {
    let gm = Sft::golden_mean();
    let (mut a, mut b) = (2u64, 3u64);
    for n in 1..=12 {
        assert_eq!(gm.count_locally_valid(&FiniteDomain::interval(0, n - 1), DEFAULT_BUDGET).unwrap(), a);
        (a, b) = (b, a + b);
    }
}

#[test]
fn transition_words_are_globally_valid() {
    let mut tested = 0;
    for mask in 0u32..512 {
        let pairs: Vec<(Sym, Sym)> = (0..9).filter(|i| mask >> i & 1 == 1).map(|i| ((i / 3) as Sym, (i % 3) as Sym)).collect();
        let x = Sft::vertex_shift(3, &pairs);
        let rep = analyze_1d(&x, 1).unwrap();
        if !rep.mixing {
            continue;
        }
        let gap = rep.gap.unwrap();
        for n in [gap, gap + 1] {
            let t = transition_words(&x, n).unwrap();
            let table: BTreeMap<(Vec<Sym>, Vec<Sym>), Vec<Sym>> = words_by_pair(&t);
            for ((a, b), v) in table {
                let w: Vec<Sym> = a.iter().chain(&v).chain(&b).copied().collect();
                assert_eq!(x.globally_valid(&Pattern::word(&w), Method::Exact1d).unwrap(), Validity::Valid, "{w:?}");
            }
        }
        tested += 1;
    }
    assert!(tested > 100);
}

#[test]
fn mixing_implies_transitive() {
    for mask in 0u32..512 {
        let pairs: Vec<(Sym, Sym)> = (0..9).filter(|i| mask >> i & 1 == 1).map(|i| ((i / 3) as Sym, (i % 3) as Sym)).collect();
        let rep = analyze_1d(&Sft::vertex_shift(3, &pairs), 4).unwrap();
        assert!(!rep.mixing || rep.transitive, "mask {mask}");
    }
}

#[test]
fn greedy_completion_is_idempotent() {
    let t = Torus::new(vec![60, 48]).unwrap();
    for seed in 0..10i64 {
        let start = vec![vec![seed * 7 % 60, seed * 13 % 48]];
        let net = greedy_net_completion(&t, 4, &start, 8).unwrap();
        assert!(is_net(&t, &net, 4) && is_packing(&t, &net, 4));
        assert!(net.contains(&start[0]));
        assert_eq!(greedy_net_completion(&t, 4, &net, 8).unwrap(), net);
    }
}

#[test]
fn time_relabeling_keeps_verdicts() {
    let gm = Sft::golden_mean();
    let good = safe_symbol_homotopy(&gm, 0).unwrap();
    let lifted = ksymbol_lift(&good, 3).unwrap();
    assert!(verify_contraction(&lifted, None, false).is_proved());
    assert!(verify_contraction(&ksymbol_reduce(&lifted).unwrap(), None, false).is_proved());
    let bad = naive_contraction(&gm);
    assert!(matches!(verify_contraction(&ksymbol_reduce(&bad).unwrap(), None, false), Verdict::Counterexample(_)));
}

#[test]
fn search_jobs_are_reproducible() {
    let params = SearchParams { k: 2, alphabet: 3, density: 0.5, count: 30, rmax: 3, degree_bound: 2, seed: 11 };
    for i in 0..30 {
        assert_eq!(search_one(&params, i).unwrap(), search_one(&params, i).unwrap());
    }
}

#[test]
fn found_periodic_points_verify() {
    use symdyn_core::freegroup::{find_periodic_point, verify_free_periodic, PeriodicSearch};
    let mut found = 0;
    for seed in 0..40 {
        let x = random_sft(2, 3, 0.6, seed).unwrap();
        if let PeriodicSearch::Found(c) = find_periodic_point(&x, 3) {
            assert!(verify_free_periodic(&x, &c), "seed {seed}");
            found += 1;
        }
    }
    assert!(found > 0);
    assert!(matches!(find_periodic_point(&NnFreeSft::coloring(2, 3), 3), PeriodicSearch::Found(_)));
}
