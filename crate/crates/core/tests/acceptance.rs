//! Acceptance criteria 1 to 7. Each test prints one PASS/FAIL line and then
//! asserts. The criteria run one at a time so their time limits measure
//! only their own work.

mod common;

use std::collections::HashMap;
use std::sync::Mutex;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;
use ranklab::canon::canonical_key;
use ranklab::embed::embeds_in_star_tree;
use ranklab::forest::{Label, LabeledForest};
use ranklab::game::{play, ClassSpec, GameState};
use ranklab::generators::{build_star_tree, build_tkd, star_tree_size, tkd_size};
use ranklab::oracles::{online_rank_decision, online_rank_value, psi_exact, psi_path_formula, rho_tkd_formula, tree_depth};
use ranklab::presenters::{best_response, explore, spider_presenter, star_tree_presenter, ForcingPresenter, LabelRange, RandomPresenter};
use ranklab::rankers::{
    audit_rankcomplete, leaf_lemma_holds, DoubleStarRanker, GreedyRanker, RandomRanker, RankcompleteRanker, RanksmallRanker,
};

const C1_LIMIT: Duration = Duration::from_secs(1);
const C1_CASES: u32 = 5;
const C2_LIMIT: Duration = Duration::from_secs(600);
const C2_BUDGET: u64 = 100_000_000;
const C2_MAX_CAP: usize = 10;
const C2_EXPLORE_CAP: usize = 8;
const C2_RANDOM_GAMES: u64 = 1000;
const C2_RANDOM_N_MAX: usize = 12;
const C3_LIMIT: Duration = Duration::from_secs(300);
const C3_SEEDS: u64 = 200;
const C3_N_MAX_CAP: u128 = 200;
const C4_LIMIT: Duration = Duration::from_secs(600);
const C4_RANDOM_RANKERS: u64 = 20;
const C4_BEST_RESPONSE_MAX_VERTICES: usize = 12;
const C5_LIMIT: Duration = Duration::from_secs(900);
const C6_LIMIT: Duration = Duration::from_secs(600);
const C6_CAP: usize = 8;
const C7_LIMIT: Duration = Duration::from_secs(600);
const C7_SAMPLED_CLASSES: usize = 20;
const SOLVER_BUDGET: u64 = 100_000_000;

static SERIAL: Mutex<()> = Mutex::new(());

fn report(n: u32, what: &str, failures: &[String], elapsed: Duration, limit: Duration) {
    let in_time = elapsed <= limit;
    let pass = failures.is_empty() && in_time;
    println!(
        "criterion {n} ({what}): {} in {:.2}s (limit {}s){}",
        if pass { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64(),
        limit.as_secs(),
        if failures.is_empty() { String::new() } else { format!("; {}", failures.join("; ")) }
    );
    assert!(failures.is_empty(), "criterion {n}: {failures:?}");
    assert!(in_time, "criterion {n} took {elapsed:?}, limit {limit:?}");
}

fn serial() -> std::sync::MutexGuard<'static, ()> {
    SERIAL.lock().unwrap_or_else(|e| e.into_inner())
}

#[test]
fn criterion_1_exact_small_values() {
    let _g = serial();
    let start = Instant::now();
    let mut failures = Vec::new();
    let cases: [(&str, LabeledForest, u32); C1_CASES as usize] = [
        ("K1", LabeledForest::isolated(1), 1),
        ("3K1", LabeledForest::isolated(3), 1),
        ("P2", LabeledForest::path(2), 2),
        ("P3", LabeledForest::path(3), 3),
        ("P4", LabeledForest::path(4), 3),
    ];
    for (name, f, want) in cases {
        let t = Instant::now();
        let n = f.len();
        let got = online_rank_value(&ClassSpec::induced_of(f), n, 8, SOLVER_BUDGET).unwrap().value;
        let took = t.elapsed();
        if got != Some(want) {
            failures.push(format!("{name}: got {got:?}, want {want}"));
        }
        if took > C1_LIMIT {
            failures.push(format!("{name}: {took:?}"));
        }
    }
    report(1, "exact small values", &failures, start.elapsed(), C1_LIMIT * C1_CASES);
}

#[test]
fn criterion_2_two_three_class_value_is_four() {
    let _g = serial();
    let start = Instant::now();
    let mut failures = Vec::new();
    let class = ClassSpec::few_internal(2, 3);

    let forcing_cap = (1..=C2_MAX_CAP).find(|&cap| !online_rank_decision(&class, cap, 3, C2_BUDGET).unwrap());
    match forcing_cap {
        None => failures.push(format!("no Presenter win at b=3 up to n_cap {C2_MAX_CAP}")),
        Some(cap) => {
            println!("  Presenter forces 4 from n_cap {cap}");
            let v = online_rank_value(&class, cap, 6, C2_BUDGET).unwrap().value;
            if v != Some(4) {
                failures.push(format!("value at n_cap {cap} is {v:?}"));
            }
        }
    }

    let rep = explore(&class.capped(C2_EXPLORE_CAP), &DoubleStarRanker::new(), Some(C2_BUDGET), &mut |_, _: &GameState, _: &GameState| Ok(()))
        .unwrap();
    println!("  exhaustive presenter at n_cap {C2_EXPLORE_CAP}: max label {} over {} nodes", rep.max_label, rep.nodes);
    if rep.max_label > 4 {
        failures.push(format!("doublestar reached {} against the exhaustive presenter", rep.max_label));
    }
    let mut worst = 0;
    for seed in 0..C2_RANDOM_GAMES {
        let t = play(&class, &mut RandomPresenter::new(seed, C2_RANDOM_N_MAX), &mut DoubleStarRanker::new(), None).unwrap();
        t.replay().unwrap();
        worst = worst.max(t.max_label().unwrap().get());
    }
    if worst > 4 {
        failures.push(format!("doublestar reached {worst} against a random presenter"));
    }
    report(2, "value of the (2,3) class is 4", &failures, start.elapsed(), C2_LIMIT);
}

#[test]
fn criterion_3_rankcomplete_upper_bound() {
    let _g = serial();
    let start = Instant::now();
    let mut failures = Vec::new();
    let k = 3;
    for d in 6..=9 {
        let class = ClassSpec::max_deg_diam(k, d);
        let n_max = tkd_size(k, d).unwrap().min(C3_N_MAX_CAP) as usize;
        let bound = 3 * star_tree_size(k - 1, d / 3).unwrap() as u32;
        assert!(bound <= 6 * 2u32.pow((d / 3) as u32));
        let mut worst = 0;
        for seed in 0..C3_SEEDS {
            let t = match play(&class, &mut RandomPresenter::new(seed, n_max), &mut RankcompleteRanker::new(k, d), None) {
                Ok(t) => t,
                Err(e) => {
                    failures.push(format!("d={d} seed={seed}: {e}"));
                    continue;
                }
            };
            if let Err(e) = t.replay() {
                failures.push(format!("d={d} seed={seed}: replay {e}"));
            }
            let m = t.max_label().unwrap().get();
            worst = worst.max(m);
            if m > bound {
                failures.push(format!("d={d} seed={seed}: label {m} > {bound}"));
            }
            if let Err(e) = audit_rankcomplete(&t, k, d) {
                failures.push(format!("d={d} seed={seed}: {e}"));
            }
        }
        println!("  d={d}: n_max {n_max}, worst label {worst}, bound {bound}");
    }
    report(3, "rankcomplete upper bound and lemmas", &failures, start.elapsed(), C3_LIMIT);
}

#[test]
fn criterion_4_lower_bound_adversaries() {
    let _g = serial();
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut instances: Vec<(String, Box<dyn ForcingPresenter>, u32)> = Vec::new();
    for (k, r) in [(2usize, 2usize), (2, 4), (3, 2)] {
        instances.push((format!("star k={k} r={r}"), star_tree_presenter(k, r).unwrap(), k.pow((r / 2) as u32) as u32));
    }
    for a in 1..=5usize {
        instances.push((format!("spider a={a}"), spider_presenter(a).unwrap(), a as u32 + 1));
    }
    for (name, p, bound) in &instances {
        let class = ClassSpec::induced_of(p.blueprint());
        let mut rankers: Vec<(String, Box<dyn ranklab::game::RankerStrategy>)> = vec![("greedy".into(), Box::new(GreedyRanker))];
        for seed in 0..C4_RANDOM_RANKERS {
            rankers.push((format!("random:{seed}"), Box::new(RandomRanker::new(seed))));
        }
        let mut worst = u32::MAX;
        for (rname, mut r) in rankers {
            let t = play(&class, p.fresh().box_clone().as_mut(), r.as_mut(), None).unwrap();
            t.replay().unwrap();
            let m = t.max_label().unwrap().get();
            worst = worst.min(m);
            if m < *bound {
                failures.push(format!("{name} vs {rname}: {m} < {bound}"));
            }
        }
        let br = if p.blueprint().len() <= C4_BEST_RESPONSE_MAX_VERTICES {
            let res = best_response(&class, p.fresh().box_clone().as_ref(), LabelRange::Exact, p.blueprint().len()).unwrap();
            if res.value < *bound {
                failures.push(format!("{name} vs best response: {} < {bound}", res.value));
            }
            format!("{}", res.value)
        } else {
            "skipped".into()
        };
        println!("  {name}: {} vertices, bound {bound}, weakest ranker {worst}, best response {br}", p.blueprint().len());
    }
    report(4, "lower-bound adversaries", &failures, start.elapsed(), C4_LIMIT);
}

#[test]
fn criterion_5_formulas_against_oracles() {
    let _g = serial();
    let start = Instant::now();
    let mut failures = Vec::new();
    for (k, d_max) in [(3, 6), (4, 4)] {
        for d in 0..=d_max {
            let got = tree_depth(&build_tkd(k, d).unwrap());
            let want = (d as u32).div_ceil(2) + 1;
            if got != want || rho_tkd_formula(k, d) != want {
                failures.push(format!("T_{{{k},{d}}}: depth {got}, formula {}", rho_tkd_formula(k, d)));
            }
        }
    }
    for n in 1..=9 {
        let got = psi_exact(&LabeledForest::path(n)).unwrap();
        if got != psi_path_formula(n as u64) {
            failures.push(format!("psi(P{n}) = {got}, formula {}", psi_path_formula(n as u64)));
        }
    }
    for n in 1..=7 {
        let v = online_rank_value(&ClassSpec::induced_of(LabeledForest::path(n)), n, 8, SOLVER_BUDGET).unwrap().value;
        match v {
            Some(v) if v <= psi_path_formula(n as u64) => println!("  P{n}: online {v}, psi {}", psi_path_formula(n as u64)),
            other => failures.push(format!("online value of P{n} is {other:?}")),
        }
    }
    report(5, "formulas against oracles", &failures, start.elapsed(), C5_LIMIT);
}

#[test]
fn criterion_6_ranksmall_bound() {
    let _g = serial();
    let start = Instant::now();
    let mut failures = Vec::new();
    for (p, q) in [(1usize, 2usize), (2, 3), (3, 4)] {
        let class = ClassSpec::few_internal(p, q).with_cap(C6_CAP);
        let mut leaf_failures = 0u64;
        let rep = explore(&class, &RanksmallRanker::new(p, q), Some(SOLVER_BUDGET), &mut |round, pr, lb| {
            if let Err(e) = leaf_lemma_holds(round, pr, lb) {
                leaf_failures += 1;
                return Err(e.to_string());
            }
            Ok(())
        });
        match rep {
            Ok(rep) => {
                println!("  p={p} q={q}: max label {} over {} nodes", rep.max_label, rep.nodes);
                if rep.max_label as usize > p + q + 1 {
                    failures.push(format!("p={p} q={q}: label {} > {}", rep.max_label, p + q + 1));
                }
            }
            Err(e) => failures.push(format!("p={p} q={q}: {e}")),
        }
        if leaf_failures > 0 {
            failures.push(format!("p={p} q={q}: leaf lemma failed"));
        }
    }
    report(6, "ranksmall bound and leaf lemma", &failures, start.elapsed(), C6_LIMIT);
}

fn ranking_suite(failures: &mut Vec<String>) -> u64 {
    let mut checked = 0;
    for f in forests_by_size(10).iter().flatten().filter(|f| !f.is_empty()) {
        let paths = pair_paths(f);
        let mut labels = vec![1u32; f.len()];
        let mut g = with_labels(f, &labels);
        loop {
            checked += 1;
            if g.is_valid_ranking().unwrap() != brute_ranking(&labels, &paths) {
                failures.push(format!("ranking check disagrees on {labels:?} over {:?}", f.edges()));
                return checked;
            }
            if !next_labels(&mut labels, 1, 4) {
                break;
            }
            for (v, &l) in labels.iter().enumerate() {
                if g.label_value(v) != l {
                    g.set_label(v, Label::new(l));
                }
            }
        }
    }
    checked
}

fn candidate_suite(failures: &mut Vec<String>) -> u64 {
    let mut checked = 0;
    let max = Label::new(4).unwrap();
    for f in forests_by_size(8).iter().flatten().filter(|f| !f.is_empty()) {
        let paths = pair_paths(f);
        let comp_of = f.component_ids().0;
        for v in 0..f.len() {
            let others: Vec<usize> = (0..f.len()).filter(|&u| u != v).collect();
            let mut digits = vec![1u32; others.len()];
            loop {
                let mut labels = vec![0u32; f.len()];
                for (i, &u) in others.iter().enumerate() {
                    labels[u] = digits[i];
                }
                let g = with_labels(f, &labels);
                let got: Vec<u32> = g.candidate_labels(v, max).iter().map(|l| l.get()).collect();
                // validity is judged on v's component only
                let want: Vec<u32> = (1..=4)
                    .filter(|&l| {
                        labels[v] = l;
                        let ok = paths
                            .iter()
                            .filter(|(a, _, _)| comp_of[*a] == comp_of[v])
                            .all(|(a, b, inner)| labels[*a] != labels[*b] || inner.iter().any(|&w| labels[w] > labels[*a]));
                        labels[v] = 0;
                        ok
                    })
                    .collect();
                checked += 1;
                if got != want {
                    failures.push(format!("candidate_labels({v}) = {got:?}, brute {want:?} on {labels:?} over {:?}", f.edges()));
                    return checked;
                }
                if !next_labels(&mut digits, 1, 3) {
                    break;
                }
            }
        }
    }
    checked
}

fn embedding_suite(failures: &mut Vec<String>) -> u64 {
    let mut checked = 0;
    let trees = trees_by_size(8);
    for k in 1..=3 {
        for r in 0..=3 {
            let host = build_star_tree(k, r).unwrap().to_forest();
            for t in trees.iter().flatten() {
                checked += 1;
                if embeds_in_star_tree(t, k, r) != brute_subtree(t, &host) {
                    failures.push(format!("embeds_in_star_tree disagrees for k={k} r={r} on {:?}", t.edges()));
                }
            }
        }
    }
    checked
}

fn canonical_suite(failures: &mut Vec<String>) -> u64 {
    let mut checked = 0;
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for f in forests_by_size(8).iter().flatten() {
        for _ in 0..2 {
            let labels: Vec<u32> = (0..f.len()).map(|_| rng.gen_range(0..=4)).collect();
            let g = with_labels(f, &labels);
            let key = canonical_key(&g);
            for _ in 0..100 {
                checked += 1;
                if canonical_key(&shuffled(&g, &mut rng)) != key {
                    failures.push(format!("key changes under a shuffle of {:?}", g.edges()));
                    return checked;
                }
            }
        }
    }
    let mut groups: HashMap<Vec<u8>, Vec<LabeledForest>> = HashMap::new();
    for f in forests_by_size(6).iter().flatten() {
        let mut labels = vec![0u32; f.len()];
        loop {
            let g = with_labels(f, &labels);
            groups.entry(canonical_key(&g).into_bytes()).or_default().push(g);
            if !next_labels(&mut labels, 0, 3) {
                break;
            }
        }
    }
    for members in groups.values() {
        for g in &members[1..] {
            checked += 1;
            if !brute_isomorphic(&members[0], g) {
                failures.push(format!("{:?} and {:?} share a key", members[0], g));
                return checked;
            }
        }
    }
    println!("  canonical keys: {} classes of labeled forests on <= 6 vertices", groups.len());
    checked
}

fn sampled_classes() -> Vec<(ClassSpec, usize)> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    (0..C7_SAMPLED_CLASSES)
        .map(|i| match i % 4 {
            0 => {
                let t = random_tree(rng.gen_range(4..=7), &mut rng);
                let n = t.len().min(6);
                (ClassSpec::induced_of(t), n)
            }
            1 => (ClassSpec::few_internal(rng.gen_range(1..=3), rng.gen_range(2..=4)), 6),
            2 => (ClassSpec::max_deg_diam(rng.gen_range(2..=3), rng.gen_range(2..=4)), 6),
            _ => {
                let n = rng.gen_range(3..=8);
                (ClassSpec::path_family(n), n.min(7))
            }
        })
        .collect()
}

fn monotonicity_suite(failures: &mut Vec<String>) -> u64 {
    let mut checked = 0;
    for (class, max_cap) in sampled_classes() {
        let values: Vec<u32> = (1..=max_cap)
            .map(|cap| online_rank_value(&class, cap, 8, SOLVER_BUDGET).unwrap().value.expect("held within 8"))
            .collect();
        checked += 1;
        if values.windows(2).any(|w| w[0] > w[1]) {
            failures.push(format!("{class}: values {values:?} drop as n_cap grows"));
        }
        println!("  {class}: {values:?}");
    }
    checked
}

type Suite = fn(&mut Vec<String>) -> u64;

#[test]
fn criterion_7_property_suites() {
    let _g = serial();
    let start = Instant::now();
    let mut failures = Vec::new();
    let suites: [(&str, Suite); 5] = [
        ("ranking check", ranking_suite),
        ("candidate labels", candidate_suite),
        ("star tree embedding", embedding_suite),
        ("canonical key", canonical_suite),
        ("monotonicity in n_cap", monotonicity_suite),
    ];
    for (name, suite) in suites {
        let t = Instant::now();
        let n = suite(&mut failures);
        println!("  {name}: {n} checks in {:.2}s", t.elapsed().as_secs_f64());
    }
    report(7, "property suites", &failures, start.elapsed(), C7_LIMIT);
}
