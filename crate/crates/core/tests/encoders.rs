mod common;

use std::collections::BTreeSet;

use common::all_assignments;
use proptest::prelude::*;
use qudo_core::encoders::{
    encode_hashi, encode_inshi, encode_kakuro, encode_knapsack, encode_queens, encode_tsp, EncodedProblem,
    KnapsackVariant, TspPenalty,
};
use qudo_core::problems::{
    DomainSolution, HashiInstance, InshiInstance, KakuroInstance, KnapsackInstance, Portion, ProblemInstance,
    QueensInstance, TspInstance, TspSolution,
};
use qudo_core::validators::{validate, validate_hashi, validate_tsp, ValidationReport};

fn report(inst: &ProblemInstance, sol: &DomainSolution) -> ValidationReport {
    validate(inst, sol).unwrap()
}

/// Per assignment: below the threshold exactly when the decoded solution is
/// accepted. Returns the number of such assignments.
fn assert_equivalent(enc: &EncodedProblem, inst: &ProblemInstance) -> usize {
    let thr = enc.feasibility_threshold.expect("threshold");
    let mut hits = 0;
    for x in all_assignments(&enc.model.dims()) {
        let low = enc.model.cost(&x) <= thr;
        let accepted = enc.decode(&x).map(|s| report(inst, &s).accepted).unwrap_or(false);
        assert_eq!(low, accepted, "assignment {:?} cost {}", x, enc.model.cost(&x));
        hits += usize::from(low);
    }
    hits
}

#[test]
fn queens_oracle() {
    let counts = [(1, 1), (2, 0), (3, 0), (4, 2), (5, 10)];
    for (n, want) in counts {
        let inst = QueensInstance::new(n).unwrap();
        let enc = encode_queens(&inst, None).unwrap();
        let hits = assert_equivalent(&enc, &ProblemInstance::Queens(inst));
        assert_eq!(hits, want, "N = {n}");
    }
}

fn kakuro_latin() -> KakuroInstance {
    let row = |r: usize| Portion {
        cells: (0..3).map(|c| (r, c)).collect(),
        sum: 6,
    };
    let col = |c: usize| Portion {
        cells: (0..3).map(|r| (r, c)).collect(),
        sum: 6,
    };
    KakuroInstance {
        size: 3,
        max_digit: 3,
        white: None,
        rows: (0..3).map(row).collect(),
        cols: (0..3).map(col).collect(),
    }
}

#[test]
fn kakuro_oracle() {
    // rows and columns all {1, 2, 3}: the 12 Latin squares of order 3
    let inst = kakuro_latin();
    let enc = encode_kakuro(&inst, None, None).unwrap();
    assert_eq!(assert_equivalent(&enc, &ProblemInstance::Kakuro(inst)), 12);

    let inst = KakuroInstance {
        size: 2,
        max_digit: 4,
        white: None,
        rows: vec![
            Portion { cells: vec![(0, 0), (0, 1)], sum: 3 },
            Portion { cells: vec![(1, 0), (1, 1)], sum: 7 },
        ],
        cols: vec![
            Portion { cells: vec![(0, 0), (1, 0)], sum: 4 },
            Portion { cells: vec![(0, 1), (1, 1)], sum: 6 },
        ],
    };
    let enc = encode_kakuro(&inst, None, None).unwrap();
    assert_eq!(assert_equivalent(&enc, &ProblemInstance::Kakuro(inst)), 1);
}

#[test]
fn inshi_oracle() {
    // 3x3 Latin squares with row-pair regions
    let inst = InshiInstance {
        size: 3,
        regions: vec![
            Portion { cells: vec![(0, 0), (0, 1)], sum: 3 },
            Portion { cells: vec![(0, 2), (1, 2)], sum: 5 },
            Portion { cells: vec![(1, 0), (1, 1)], sum: 4 },
            Portion { cells: vec![(2, 0), (2, 1), (2, 2)], sum: 6 },
        ],
    };
    let enc = encode_inshi(&inst, None, None).unwrap();
    let hits = assert_equivalent(&enc, &ProblemInstance::Inshi(inst));
    assert!(hits > 0);

    let inst = InshiInstance {
        size: 2,
        regions: vec![
            Portion { cells: vec![(0, 0), (0, 1)], sum: 3 },
            Portion { cells: vec![(1, 0)], sum: 2 },
            Portion { cells: vec![(1, 1)], sum: 1 },
        ],
    };
    let enc = encode_inshi(&inst, None, None).unwrap();
    assert_eq!(assert_equivalent(&enc, &ProblemInstance::Inshi(inst)), 1);
}

fn tsp_matrix(v: usize, seed: u64) -> Vec<Vec<f64>> {
    // small deterministic integer costs
    let mut s = seed;
    (0..v)
        .map(|i| {
            (0..v)
                .map(|j| {
                    s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                    if i == j {
                        0.0
                    } else {
                        ((s >> 33) % 9 + 1) as f64
                    }
                })
                .collect()
        })
        .collect()
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.is_empty() {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for k in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(k);
        for mut p in permutations(&rest) {
            p.insert(0, head);
            out.push(p);
        }
    }
    out
}

#[test]
fn tsp_pairwise_oracle() {
    for v in 3..=5 {
        for fix_first in [false, true] {
            let inst = TspInstance::from_matrix(tsp_matrix(v, v as u64)).unwrap();
            let enc = encode_tsp(&inst, TspPenalty::PairwiseDelta, None, fix_first).unwrap();
            let hits = assert_equivalent(&enc, &ProblemInstance::Tsp(inst));
            let fact: usize = (1..=v).product();
            assert_eq!(hits, if fix_first { fact / v } else { fact });
        }
    }
}

#[test]
fn tsp_minimum_is_brute_force_tour() {
    for seed in 0..5 {
        let inst = TspInstance::from_matrix(tsp_matrix(4, seed)).unwrap();
        let enc = encode_tsp(&inst, TspPenalty::PairwiseDelta, None, false).unwrap();
        let model_min = all_assignments(&enc.model.dims())
            .into_iter()
            .map(|x| enc.model.cost(&x))
            .fold(f64::INFINITY, f64::min);
        let brute = permutations(&[1, 2, 3])
            .into_iter()
            .map(|p| {
                let mut tour = vec![0];
                tour.extend(p);
                validate_tsp(&inst, &TspSolution { tour }).unwrap().tour_cost
            })
            .fold(f64::INFINITY, f64::min);
        assert_eq!(model_min, brute);
    }
}

#[test]
fn tsp_prime_log_default_lambda_separates() {
    let inst = TspInstance::from_matrix(tsp_matrix(4, 11)).unwrap();
    let enc = encode_tsp(&inst, TspPenalty::PrimeLog, None, true).unwrap();
    assert_equivalent(&enc, &ProblemInstance::Tsp(inst));
}

fn hashi_edges_ok(inst: &HashiInstance, sol: &DomainSolution) -> (bool, bool) {
    let DomainSolution::Hashi(s) = sol else { unreachable!() };
    let r = validate_hashi(inst, s).unwrap();
    (r.edges_valid && r.degrees_ok && r.no_cross, r.accepted)
}

/// Zero cost exactly on valid, degree-correct, crossing-free bridge sets;
/// accepted solutions are a subset of those.
fn hashi_oracle(inst: &HashiInstance) -> (usize, usize) {
    let enc = encode_hashi(inst, None).unwrap();
    let thr = enc.feasibility_threshold.unwrap();
    let (mut low_count, mut accepted_count) = (0, 0);
    for x in all_assignments(&enc.model.dims()) {
        let sol = enc.decode(&x).unwrap();
        let (rules, accepted) = hashi_edges_ok(inst, &sol);
        let low = enc.model.cost(&x) <= thr;
        assert_eq!(low, rules, "{:?}", x);
        assert!(!accepted || low);
        low_count += usize::from(low);
        accepted_count += usize::from(accepted);
    }
    (low_count, accepted_count)
}

#[test]
fn hashi_oracles() {
    // square of four plus one to the right; bridges 1, 2, 1, 1, 0
    let five = HashiInstance::new(vec![(0, 0, 2), (0, 2, 3), (0, 4, 2), (2, 0, 2), (2, 2, 1)]).unwrap();
    let (low, acc) = hashi_oracle(&five);
    assert!(low >= 1 && acc >= 1);

    // two horizontal or two vertical pairs: never connected
    let split = HashiInstance::new(vec![(0, 0, 1), (0, 1, 1), (2, 0, 1), (2, 1, 1)]).unwrap();
    assert_eq!(hashi_oracle(&split), (2, 0));

    // crossing plus
    let plus = HashiInstance::new(vec![(0, 1, 1), (2, 1, 1), (1, 0, 1), (1, 2, 1)]).unwrap();
    assert_eq!(hashi_oracle(&plus), (0, 0));
}

fn brute_knapsack(inst: &KnapsackInstance) -> (f64, BTreeSet<Vec<u64>>) {
    let dims: Vec<usize> = inst.counts.iter().map(|&c| c as usize + 1).collect();
    let mut best = 0.0f64;
    let mut feasible = BTreeSet::new();
    for x in all_assignments(&dims) {
        let w: u64 = x.iter().zip(&inst.weights).map(|(&k, &w)| k as u64 * w).sum();
        if w <= inst.capacity {
            let v: f64 = x.iter().zip(&inst.values).map(|(&k, &v)| k as f64 * v).sum();
            best = best.max(v);
            feasible.insert(x.iter().map(|&k| k as u64).collect());
        }
    }
    (best, feasible)
}

fn knapsack_oracle(inst: &KnapsackInstance, variant: KnapsackVariant, base: usize) -> Result<(), TestCaseError> {
    let enc = encode_knapsack(inst, variant, base, None).unwrap();
    let thr = enc.feasibility_threshold.unwrap();
    let (best, feasible) = brute_knapsack(inst);
    let mut image = BTreeSet::new();
    let mut model_min = f64::INFINITY;
    for x in all_assignments(&enc.model.dims()) {
        let c = enc.model.cost(&x);
        model_min = model_min.min(c);
        if c <= thr {
            let DomainSolution::Knapsack(s) = enc.decode(&x).unwrap() else { unreachable!() };
            image.insert(s.counts);
        }
    }
    prop_assert_eq!(image, feasible);
    prop_assert!((model_min + best).abs() < 1e-9, "model {} brute {}", model_min, best);
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn knapsack_four_items(
        values in prop::collection::vec(1u32..=9, 4),
        weights in prop::collection::vec(1u64..=4, 4),
        capacity in 0u64..=8,
    ) {
        let inst = KnapsackInstance::new(values.iter().map(|&v| f64::from(v)).collect(), weights, vec![1; 4], capacity).unwrap();
        knapsack_oracle(&inst, KnapsackVariant::QuboFlat, 2)?;
        knapsack_oracle(&inst, KnapsackVariant::Qudo, 3)?;
    }

    #[test]
    fn knapsack_multi_counts(
        values in prop::collection::vec(1u32..=9, 2),
        weights in prop::collection::vec(1u64..=3, 2),
        counts in prop::collection::vec(prop::sample::select(vec![1u64, 2, 4]), 2),
        capacity in 0u64..=6,
    ) {
        let inst = KnapsackInstance::new(values.iter().map(|&v| f64::from(v)).collect(), weights, counts, capacity).unwrap();
        for variant in [KnapsackVariant::QuboFlat, KnapsackVariant::QuboCondensed, KnapsackVariant::Qudo, KnapsackVariant::QudoDary] {
            knapsack_oracle(&inst, variant, 2)?;
        }
    }
}
