//! Acceptance suite: one test per release criterion, each printing a
//! pass/fail line (run with `--nocapture` to see them). Every expected value
//! is exact; no tolerances anywhere.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_traits::One;

use parklot::counting::{count_pf, CountOptions};
use parklot::digraph::{build_star, DiGraph, Orientation, VertexId};
use parklot::flip::{flip_star, FlipPlan};
use parklot::formulas::{
    binomial, classical_count, falling, lemma_precise_holds, lemma_premaxbound_holds,
    thm_star_comparison,
};
use parklot::parking::{is_parking_function, PrefSeq};
use parklot::samples;
use parklot::treegen::all_rooted_trees;
use parklot::verify::{
    find_crossover, generate_crudebound_instances, suite_crudebounds, suite_full_capacity,
    suite_partition_identities, suite_sparse_tree, suite_star_exact, Verdict,
};

fn opts() -> CountOptions {
    CountOptions::default()
}

fn conclude(criterion: &str, violations: Vec<String>) {
    let status = if violations.is_empty() { "PASS" } else { "FAIL" };
    println!("criterion {criterion}: {status}");
    assert!(
        violations.is_empty(),
        "criterion {criterion} violations:\n{}",
        violations.join("\n")
    );
}

fn all_seqs(n: usize, m: usize) -> Vec<Vec<VertexId>> {
    let mut out = vec![vec![]];
    for _ in 0..m {
        let mut next = Vec::with_capacity(out.len() * n);
        for s in &out {
            for v in 1..=n as VertexId {
                let mut t = s.clone();
                t.push(v);
                next.push(t);
            }
        }
        out = next;
    }
    out
}

#[test]
fn criterion_01_classical_count_reproduction() {
    let mut violations = Vec::new();
    for n in 1..=6usize {
        let path = samples::path(n, Orientation::Sink);
        for m in 1..=n {
            let oracle = count_pf(&path, m, &opts()).unwrap();
            let formula = classical_count(n as u64, m as u64).unwrap();
            if oracle != formula {
                violations.push(format!("n={n} m={m}: oracle {oracle} vs formula {formula}"));
            }
        }
    }
    conclude("01 classical-count-reproduction", violations);
}

#[test]
fn criterion_02_star_formula_reproduction() {
    let report = suite_star_exact(6, &opts()).unwrap();
    let violations = failing_cases(&report);
    conclude("02 star-formula-reproduction", violations);
}

#[test]
fn criterion_03_paper_fixtures() {
    let mut violations = Vec::new();

    let t13 = samples::tree13();
    let seq: PrefSeq = "6,6,6,10,10,1,1,1,1".parse().unwrap();
    if is_parking_function(&t13, &seq).unwrap().is_none() {
        violations.push("the (13,9) sequence must check true".into());
    }

    let t22 = samples::tree22();
    for (input, want) in [
        ("2,2,10,11", "8,8,10,9"),
        ("6,6,6,14,12", "7,7,7,5,13"),
        ("4,16,16,22", "17,15,15,21"),
    ] {
        let s: PrefSeq = input.parse().unwrap();
        let got = flip_star(&t22, &s).unwrap().to_string();
        if got != want {
            violations.push(format!("flip of {input}: got {got}, want {want}"));
        }
    }

    if t13.minleafdist() != Some(2) {
        violations.push(format!("minleafdist of the 13-vertex tree: {:?}", t13.minleafdist()));
    }
    let t20 = samples::tree20();
    if t20.minleafdist() != Some(4) {
        violations.push(format!("minleafdist of the 20-vertex tree: {:?}", t20.minleafdist()));
    }

    conclude("03 paper-fixtures", violations);
}

#[test]
fn criterion_04_wide_star_sweep() {
    let mut violations = Vec::new();
    for n in 1..=300u64 {
        for m in 4..=(2 * n / 3) {
            let c = thm_star_comparison(n, m, None);
            if !c.in_hypothesis || !c.holds {
                violations.push(format!(
                    "n={n} m={m}: in_hypothesis={} lhs={} rhs={}",
                    c.in_hypothesis, c.lhs, c.rhs
                ));
            }
        }
    }
    conclude("04 star-comparison-sweep (3 < m <= 2n/3, n <= 300)", violations);
}

#[test]
fn criterion_05_scaled_star_sweep() {
    let mut violations = Vec::new();
    for r in [2u64, 3, 4] {
        for n in 1..=300u64 {
            let mut m = 4;
            while r * m <= n + 1 {
                let c = thm_star_comparison(n, m, Some(r));
                if !c.in_hypothesis || !c.holds {
                    violations.push(format!(
                        "r={r} n={n} m={m}: in_hypothesis={} lhs={} rhs={}",
                        c.in_hypothesis, c.lhs, c.rhs
                    ));
                }
                m += 1;
            }
        }
    }
    conclude("05 scaled-star-sweep (r in {2,3,4}, n <= 300)", violations);
}

#[test]
fn criterion_06_bounding_lemma_sweeps() {
    let mut violations = Vec::new();
    let mut equality_seen = false;

    // r scales the left side linearly, so checking the largest admissible r
    // covers every smaller one; both ends are still evaluated via the op.
    for b in 1..=200u64 {
        for a in 0..b {
            let r_max = (b + 1) / (a + 1);
            if r_max < 2 {
                continue;
            }
            for r in [2, r_max] {
                let c = lemma_precise_holds(a, b, r);
                if !c.in_hypothesis || !c.holds {
                    violations.push(format!("lemma-precise a={a} b={b} r={r} fails"));
                } else {
                    if a == 0 && c.lhs == c.rhs {
                        equality_seen = true;
                    }
                    if a > 0 && c.lhs == c.rhs {
                        violations.push(format!(
                            "lemma-precise must be strict for a={a} b={b} r={r}"
                        ));
                    }
                }
            }
        }
    }
    if !equality_seen {
        violations.push("the a=0 equality case never materialized".into());
    }

    for b in 1..=200u64 {
        for a in 0..b {
            if 3 * a > 2 * b {
                continue;
            }
            let c = lemma_premaxbound_holds(a, b);
            if !c.in_hypothesis || !c.holds || c.lhs >= c.rhs {
                violations.push(format!("lemma-premaxbound a={a} b={b} fails"));
            }
        }
    }

    conclude("06 bounding-lemma-sweeps (b <= 200)", violations);
}

#[test]
fn criterion_07_sparse_tree_verification() {
    let report = suite_sparse_tree(8, 3, false, &opts()).unwrap();
    let mut violations = failing_cases(&report);
    let compared = report
        .cases
        .iter()
        .filter(|c| c.verdict == Verdict::Pass && c.params.contains_key("m"))
        .count();
    if compared < 100 {
        violations.push(format!("only {compared} tree comparisons ran"));
    }
    conclude("07 sparse-tree-verification (n <= 8, m <= 3)", violations);
}

#[test]
fn criterion_08_full_capacity_inequality() {
    let report = suite_full_capacity(6, &opts()).unwrap();
    let violations = failing_cases(&report);
    conclude("08 full-capacity-inequality (n <= 6)", violations);
}

#[test]
fn criterion_09_partition_identities() {
    let mut violations = Vec::new();
    let mut strict_witnessed = false;
    let mut nonstar_trees = BTreeSet::new();
    for (n, m) in [(3, 3), (4, 3), (5, 3), (5, 4), (6, 3)] {
        let report = suite_partition_identities(n, m, &opts()).unwrap();
        violations.extend(failing_cases(&report));
        for case in &report.cases {
            if case.label.starts_with("tree pair partition") {
                if let Some(tree) = case.params.get("tree") {
                    nonstar_trees.insert(tree.clone());
                }
            }
            if case.label.starts_with("collision containment strict somewhere")
                && case.verdict == Verdict::Pass
                && case.observed == "witnessed"
            {
                strict_witnessed = true;
            }
        }
    }
    if nonstar_trees.len() < 3 {
        violations.push(format!(
            "need at least three non-star trees, saw {}",
            nonstar_trees.len()
        ));
    }
    if !strict_witnessed {
        violations.push("the containment never came out strict".into());
    }
    conclude("09 partition-identities (stars and trees, n <= 6)", violations);
}

#[test]
fn criterion_10_completion_bounds() {
    let instances = generate_crudebound_instances(8).unwrap();
    let report = suite_crudebounds(&instances, &opts()).unwrap();
    let mut violations = failing_cases(&report);
    let growth_passes = report
        .cases
        .iter()
        .filter(|c| c.label.starts_with("growth") && c.verdict == Verdict::Pass)
        .count();
    let displacement_passes = report
        .cases
        .iter()
        .filter(|c| c.label.starts_with("displacement") && c.verdict == Verdict::Pass)
        .count();
    if growth_passes < 50 {
        violations.push(format!("only {growth_passes} growth instances evaluated"));
    }
    if displacement_passes < 50 {
        violations.push(format!(
            "only {displacement_passes} displacement instances evaluated"
        ));
    }
    conclude("10 completion-bounds (>= 50 instances each, trees n <= 8)", violations);
}

#[test]
fn criterion_11_crossover_table() {
    let mut violations = Vec::new();
    for n in 3..=7u64 {
        match find_crossover(n, &opts()) {
            Ok(scan) => {
                if !scan.oracle_confirmed {
                    violations.push(format!("n={n}: oracle confirmation missing"));
                }
                if n == 4 {
                    if scan.crossover_m != Some(4) {
                        violations.push(format!("n=4 crossover: {:?}", scan.crossover_m));
                    }
                    let row3 = &scan.rows[2];
                    let row4 = &scan.rows[3];
                    if (row3.sink.as_str(), row3.source.as_str()) != ("42", "34") {
                        violations.push(format!("n=4 m=3 row: {}/{}", row3.sink, row3.source));
                    }
                    if (row4.sink.as_str(), row4.source.as_str()) != ("60", "73") {
                        violations.push(format!("n=4 m=4 row: {}/{}", row4.sink, row4.source));
                    }
                }
                if n == 3 && scan.crossover_m != Some(3) {
                    violations.push(format!("n=3 crossover: {:?}", scan.crossover_m));
                }
            }
            Err(e) => violations.push(format!("n={n}: {e}")),
        }
    }
    if find_crossover(1, &opts()).unwrap().crossover_m.is_some() {
        violations.push("n=1 must have no crossover".into());
    }
    conclude("11 crossover-table (3 <= n <= 7 oracle-confirmed)", violations);
}

#[test]
fn criterion_12_property_suites() {
    let mut violations = Vec::new();

    // Involution: vertex permutation squared is the identity on every shape,
    // and the sequence-level flip round-trips.
    for n in 1..=9 {
        for shape in all_rooted_trees(n).unwrap() {
            let g = shape.to_digraph(Orientation::Source);
            let plan = FlipPlan::new(&g).unwrap();
            for v in 1..=n as VertexId {
                if plan.vertex_image(plan.vertex_image(v)) != v {
                    violations.push(format!("involution breaks at n={n} v={v}"));
                }
            }
        }
    }
    for n in 1..=5 {
        for shape in all_rooted_trees(n).unwrap() {
            let g = shape.to_digraph(Orientation::Source);
            for m in 0..=2.min(n) {
                for prefs in all_seqs(n, m) {
                    let s = PrefSeq::new(prefs);
                    let round = flip_star(&g, &flip_star(&g, &s).unwrap()).unwrap();
                    if round != s {
                        violations.push(format!("flip round-trip n={n} s={s}"));
                    }
                }
            }
        }
    }

    // Prefix closure.
    for n in 1..=5 {
        for shape in all_rooted_trees(n).unwrap() {
            for orient in [Orientation::Sink, Orientation::Source] {
                let g = shape.to_digraph(orient);
                for m in 1..=n.min(4) {
                    for prefs in all_seqs(n, m) {
                        let s = PrefSeq::new(prefs.clone());
                        if is_parking_function(&g, &s).unwrap().is_some() {
                            let head = PrefSeq::new(prefs[..m - 1].to_vec());
                            if is_parking_function(&g, &head).unwrap().is_none() {
                                violations.push(format!("prefix closure n={n} s={s}"));
                            }
                        }
                    }
                }
            }
        }
    }

    // Automorphism invariance under a leaf 3-cycle of the 5-star.
    for orient in [Orientation::Sink, Orientation::Source] {
        let star = build_star(5, orient).unwrap();
        let sigma = |v: VertexId| match v {
            2 => 3,
            3 => 4,
            4 => 2,
            other => other,
        };
        for m in 1..=3 {
            for prefs in all_seqs(5, m) {
                let s = PrefSeq::new(prefs.clone());
                let mapped = PrefSeq::new(prefs.iter().map(|&v| sigma(v)).collect());
                let a = is_parking_function(&star, &s).unwrap().is_some();
                let b = is_parking_function(&star, &mapped).unwrap().is_some();
                if a != b {
                    violations.push(format!("automorphism invariance {orient} s={s}"));
                }
            }
        }
    }

    // Memoized search equals naive backtracking.
    for n in 1..=5 {
        for shape in all_rooted_trees(n).unwrap() {
            for orient in [Orientation::Sink, Orientation::Source] {
                let g = shape.to_digraph(orient);
                for m in 0..=n.min(4) {
                    for prefs in all_seqs(n, m) {
                        let s = PrefSeq::new(prefs.clone());
                        let memoized = is_parking_function(&g, &s).unwrap().is_some();
                        let naive = naive_is_parking_function(&g, &prefs);
                        if memoized != naive {
                            violations.push(format!(
                                "memo {memoized} vs naive {naive} at n={n} {orient} s={s}"
                            ));
                        }
                    }
                }
            }
        }
    }

    // One car always parks: the count is the vertex count on any digraph.
    for n in 1..=6 {
        for shape in all_rooted_trees(n).unwrap() {
            for orient in [Orientation::Sink, Orientation::Source] {
                let g = shape.to_digraph(orient);
                if count_pf(&g, 1, &opts()).unwrap() != BigUint::from(n) {
                    violations.push(format!("single-car count on n={n} {orient}"));
                }
            }
        }
    }
    let cyclic = DiGraph::from_edges(6, &[(1, 2), (2, 3), (3, 1), (4, 5), (5, 6)], Some(1)).unwrap();
    if count_pf(&cyclic, 1, &opts()).unwrap() != BigUint::from(6u32) {
        violations.push("single-car count on the cyclic digraph".into());
    }

    conclude("12 property-suites", violations);
}

/// Failure lines of a suite report.
fn failing_cases(report: &parklot::verify::SuiteReport) -> Vec<String> {
    report
        .cases
        .iter()
        .filter(|c| c.verdict == Verdict::Fail)
        .map(|c| format!("{}: expected {}, observed {}", c.label, c.expected, c.observed))
        .collect()
}

// ---------------------------------------------------------------------------
// Independent oracle: plain backtracking with its own set bookkeeping.
// ---------------------------------------------------------------------------

fn naive_feasible(g: &DiGraph, occupied: &BTreeSet<VertexId>, start: VertexId) -> BTreeSet<VertexId> {
    if !occupied.contains(&start) {
        return BTreeSet::from([start]);
    }
    let mut seen = BTreeSet::from([start]);
    let mut stack = vec![start];
    let mut spots = BTreeSet::new();
    while let Some(w) = stack.pop() {
        for &x in g.out_neighbors(w) {
            if occupied.contains(&x) {
                if seen.insert(x) {
                    stack.push(x);
                }
            } else {
                spots.insert(x);
            }
        }
    }
    spots
}

fn naive_is_parking_function(g: &DiGraph, prefs: &[VertexId]) -> bool {
    fn go(g: &DiGraph, prefs: &[VertexId], car: usize, occupied: &mut BTreeSet<VertexId>) -> bool {
        if car == prefs.len() {
            return true;
        }
        for v in naive_feasible(g, occupied, prefs[car]) {
            occupied.insert(v);
            if go(g, prefs, car + 1, occupied) {
                occupied.remove(&v);
                return true;
            }
            occupied.remove(&v);
        }
        false
    }
    go(g, prefs, 0, &mut BTreeSet::new())
}

// Keep the suite honest about exactness: the formulas the criteria compare
// against are assembled from integer primitives only.
#[test]
fn acceptance_arithmetic_is_exact() {
    let mut violations = Vec::new();
    if falling(300, 150).bits() < 64 {
        violations.push("falling factorial should exceed machine width".into());
    }
    if binomial(0, 0) != BigUint::one() {
        violations.push("binomial(0,0)".into());
    }
    conclude("00 exact-arithmetic-smoke", violations);
}
