//! Brute-force enumeration oracle: exact parking-function counts over the
//! full preference space `[n]^m`, with the refined filters and restricted
//! prefix completions used by the verification suites.
//!
//! The oracle never takes closed-form shortcuts; every count is an
//! enumeration so it can serve as ground truth for the formulas.

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::digraph::{DiGraph, GraphError, VertexId};
use crate::parking::{
    park_deterministic_unchecked, ParkError, ParkOutcome, ParkSearch, PrefSeq,
};

/// Cardinalities are exposed as unbounded integers for uniformity with the
/// closed-form side.
pub type Count = BigUint;

/// Work ceiling for one oracle call, measured in sequence checks.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

#[derive(Debug, Clone)]
pub struct CountOptions {
    pub budget: u64,
}

impl Default for CountOptions {
    fn default() -> CountOptions {
        CountOptions {
            budget: DEFAULT_BUDGET,
        }
    }
}

#[derive(Debug, Error)]
pub enum CountError {
    #[error("enumeration needs {needed} sequence checks, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },
    #[error("need 0 <= m <= n, got n={n}, m={m}")]
    CarRange { n: usize, m: usize },
    #[error("need 1 <= i < j <= m, got i={i}, j={j}, m={m}")]
    InvalidPair { i: usize, j: usize, m: usize },
    #[error("graph has no designated root")]
    NoRoot,
    #[error("operation requires a sink tree")]
    NeedsSinkTree,
    #[error("operation requires an acyclic digraph")]
    Cyclic,
    #[error("invalid prefix: {0}")]
    InvalidPrefix(String),
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error(transparent)]
    Park(#[from] ParkError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A partial preference map. The car set is either an initial segment `[j]`
/// or `[j]` minus a designated pair, matching the two prefix styles of the
/// partition arguments.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrefixAssignment {
    /// (1-indexed car, preferred vertex), sorted by car.
    pairs: Vec<(usize, VertexId)>,
}

impl PrefixAssignment {
    /// Cars `1..=prefs.len()` prefer the given vertices in order.
    pub fn initial(prefs: &[VertexId]) -> PrefixAssignment {
        PrefixAssignment {
            pairs: prefs
                .iter()
                .copied()
                .enumerate()
                .map(|(idx, v)| (idx + 1, v))
                .collect(),
        }
    }

    pub fn from_pairs(mut pairs: Vec<(usize, VertexId)>) -> Result<PrefixAssignment, CountError> {
        pairs.sort_unstable();
        if pairs.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(CountError::InvalidPrefix("duplicate car index".into()));
        }
        if pairs.iter().any(|&(c, _)| c == 0) {
            return Err(CountError::InvalidPrefix("cars are 1-indexed".into()));
        }
        Ok(PrefixAssignment { pairs })
    }

    pub fn pairs(&self) -> &[(usize, VertexId)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn max_car(&self) -> usize {
        self.pairs.last().map_or(0, |&(c, _)| c)
    }

    /// True when the car set is exactly `1..=len`.
    pub fn is_initial_segment(&self) -> bool {
        self.pairs.iter().enumerate().all(|(idx, &(c, _))| c == idx + 1)
    }

    /// The assigned preferences in car order, for initial segments.
    pub fn as_seq(&self) -> Option<PrefSeq> {
        if self.is_initial_segment() {
            Some(PrefSeq::new(self.pairs.iter().map(|&(_, v)| v).collect()))
        } else {
            None
        }
    }
}

// ---------------------------------------------------------------------------
// Enumeration engine
// ---------------------------------------------------------------------------

/// Per-worker membership checker. Out-degree-<=-1 graphs run the linear
/// deterministic walk; everything else runs the memoized search.
pub(crate) struct Checker<'g> {
    g: &'g DiGraph,
    deterministic: bool,
    search: ParkSearch<'g>,
}

impl<'g> Checker<'g> {
    pub(crate) fn new(g: &'g DiGraph) -> Result<Checker<'g>, ParkError> {
        Ok(Checker {
            g,
            deterministic: g.max_out_degree() <= 1,
            search: ParkSearch::new(g)?,
        })
    }

    pub(crate) fn is_pf(&mut self, prefs: &[VertexId]) -> bool {
        if self.deterministic {
            matches!(
                park_deterministic_unchecked(self.g, prefs),
                ParkOutcome::AllParked(_)
            )
        } else {
            self.search.succeeds(prefs, None)
        }
    }

    /// Some execution parks every car and never occupies `v`.
    fn has_execution_avoiding(&mut self, prefs: &[VertexId], v: VertexId) -> bool {
        if self.deterministic {
            match park_deterministic_unchecked(self.g, prefs) {
                ParkOutcome::AllParked(w) => !w.parks_any_at(v),
                ParkOutcome::Stuck { .. } => false,
            }
        } else {
            self.search.succeeds(prefs, Some(v))
        }
    }

    /// Some execution parks every car with one of them at `v`.
    fn has_execution_reaching(&mut self, prefs: &[VertexId], v: VertexId) -> bool {
        if self.deterministic {
            match park_deterministic_unchecked(self.g, prefs) {
                ParkOutcome::AllParked(w) => w.parks_any_at(v),
                ParkOutcome::Stuck { .. } => false,
            }
        } else {
            self.search.succeeds_requiring(prefs, v)
        }
    }

    /// Deterministic outcome; callers must have checked out-degree <= 1.
    fn deterministic_outcome(&mut self, prefs: &[VertexId]) -> ParkOutcome {
        park_deterministic_unchecked(self.g, prefs)
    }
}

/// Enumerates every sequence in `[n]^m` that agrees with `pinned`, classifies
/// each into a bucket, and returns per-bucket totals. Splits the space into
/// chunks on the first free position and counts chunks in parallel.
fn enumerate_buckets<F>(
    g: &DiGraph,
    m: usize,
    pinned: &[(usize, VertexId)],
    buckets: usize,
    opts: &CountOptions,
    classify: F,
) -> Result<Vec<u64>, CountError>
where
    F: Fn(&[VertexId], &mut Checker) -> Option<usize> + Sync,
{
    let n = g.n();
    if m > n {
        return Err(CountError::CarRange { n, m });
    }
    for &(car, v) in pinned {
        if car == 0 || car > m {
            return Err(CountError::InvalidPrefix(format!(
                "pinned car {car} outside 1..={m}"
            )));
        }
        if v == 0 || v as usize > n {
            return Err(CountError::InvalidPrefix(format!(
                "pinned vertex {v} outside 1..={n}"
            )));
        }
    }
    let mut base: Vec<Option<VertexId>> = vec![None; m];
    for &(car, v) in pinned {
        base[car - 1] = Some(v);
    }
    let free: Vec<usize> = (0..m).filter(|&i| base[i].is_none()).collect();

    let mut needed: u128 = 1;
    for _ in &free {
        needed = needed.saturating_mul(n as u128);
    }
    if needed > opts.budget as u128 {
        return Err(CountError::BudgetExceeded {
            needed,
            budget: opts.budget,
        });
    }

    if free.is_empty() {
        let seq: Vec<VertexId> = base.iter().map(|v| v.unwrap()).collect();
        let mut checker = Checker::new(g)?;
        let mut counts = vec![0u64; buckets];
        if let Some(b) = classify(&seq, &mut checker) {
            counts[b] += 1;
        }
        return Ok(counts);
    }

    // One chunk per value of the first free coordinate.
    let totals = (1..=n as VertexId)
        .into_par_iter()
        .map(|first| -> Result<Vec<u64>, CountError> {
            let mut checker = Checker::new(g)?;
            let mut counts = vec![0u64; buckets];
            let mut seq: Vec<VertexId> = base.iter().map(|v| v.unwrap_or(1)).collect();
            seq[free[0]] = first;
            let rest = &free[1..];
            // Odometer over the remaining free coordinates.
            loop {
                if let Some(b) = classify(&seq, &mut checker) {
                    counts[b] += 1;
                }
                let mut pos = rest.len();
                loop {
                    if pos == 0 {
                        return Ok(counts);
                    }
                    pos -= 1;
                    let idx = rest[pos];
                    if (seq[idx] as usize) < n {
                        seq[idx] += 1;
                        break;
                    }
                    seq[idx] = 1;
                }
            }
        })
        .collect::<Result<Vec<_>, _>>()?;

    let mut counts = vec![0u64; buckets];
    for chunk in totals {
        for (acc, c) in counts.iter_mut().zip(chunk) {
            *acc += c;
        }
    }
    Ok(counts)
}

// ---------------------------------------------------------------------------
// Counting operations
// ---------------------------------------------------------------------------

/// Number of parking functions with `m` cars on `g`.
pub fn count_pf(g: &DiGraph, m: usize, opts: &CountOptions) -> Result<Count, CountError> {
    let counts = enumerate_buckets(g, m, &[], 1, opts, |prefs, ck| {
        ck.is_pf(prefs).then_some(0)
    })?;
    Ok(Count::from(counts[0]))
}

/// Partition of the parking-function count by how many cars prefer the root;
/// entry `k` of the result counts sequences with exactly `k` root cars.
pub fn count_by_root_preference(
    g: &DiGraph,
    m: usize,
    opts: &CountOptions,
) -> Result<Vec<Count>, CountError> {
    let z = g.root().ok_or(CountError::NoRoot)?;
    let counts = enumerate_buckets(g, m, &[], m + 1, opts, |prefs, ck| {
        if ck.is_pf(prefs) {
            Some(prefs.iter().filter(|&&v| v == z).count())
        } else {
            None
        }
    })?;
    Ok(counts.into_iter().map(Count::from).collect())
}

/// Parking functions on a sink tree where no car prefers the root yet some
/// car is displaced into it.
pub fn count_case3a(g: &DiGraph, m: usize, opts: &CountOptions) -> Result<Count, CountError> {
    if !g.is_sink_tree() {
        return Err(CountError::NeedsSinkTree);
    }
    let z = g.root().expect("sink tree has a root");
    let counts = enumerate_buckets(g, m, &[], 1, opts, |prefs, ck| {
        if prefs.contains(&z) {
            return None;
        }
        match ck.deterministic_outcome(prefs) {
            ParkOutcome::AllParked(w) if w.parks_any_at(z) => Some(0),
            _ => None,
        }
    })?;
    Ok(Count::from(counts[0]))
}

/// Filter style for [`count_first_pair`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairMode {
    /// Source side: `i`, `j` are the first two cars preferring the root.
    RootPair,
    /// Sink side: `i`, `j` are the first two cars preferring one vertex and
    /// car `j` is displaced into the root.
    LeafCollision,
}

/// Parking functions whose designated car pair realizes the mode's collision
/// pattern. See [`count_first_pair_arranged`] to also pin the earlier cars.
pub fn count_first_pair(
    g: &DiGraph,
    m: usize,
    i: usize,
    j: usize,
    mode: PairMode,
    opts: &CountOptions,
) -> Result<Count, CountError> {
    count_first_pair_impl(g, m, i, j, mode, &[], opts)
}

/// As [`count_first_pair`], with the cars `[j]` minus the pair pinned to a
/// fixed arrangement.
pub fn count_first_pair_arranged(
    g: &DiGraph,
    m: usize,
    i: usize,
    j: usize,
    mode: PairMode,
    arrangement: &PrefixAssignment,
    opts: &CountOptions,
) -> Result<Count, CountError> {
    let expected: Vec<usize> = (1..=j).filter(|&c| c != i && c != j).collect();
    let cars: Vec<usize> = arrangement.pairs().iter().map(|&(c, _)| c).collect();
    if cars != expected {
        return Err(CountError::InvalidPrefix(format!(
            "arrangement must cover exactly cars {expected:?}, got {cars:?}"
        )));
    }
    count_first_pair_impl(g, m, i, j, mode, arrangement.pairs(), opts)
}

fn count_first_pair_impl(
    g: &DiGraph,
    m: usize,
    i: usize,
    j: usize,
    mode: PairMode,
    pinned: &[(usize, VertexId)],
    opts: &CountOptions,
) -> Result<Count, CountError> {
    if i < 1 || i >= j || j > m {
        return Err(CountError::InvalidPair { i, j, m });
    }
    let z = g.root().ok_or(CountError::NoRoot)?;
    if mode == PairMode::LeafCollision && !g.is_sink_tree() {
        return Err(CountError::NeedsSinkTree);
    }
    let counts = enumerate_buckets(g, m, pinned, 1, opts, move |prefs, ck| {
        let ok = match mode {
            PairMode::RootPair => {
                prefs[i - 1] == z
                    && prefs[j - 1] == z
                    && (0..j - 1).all(|c| c == i - 1 || prefs[c] != z)
                    && ck.is_pf(prefs)
            }
            PairMode::LeafCollision => {
                let v = prefs[i - 1];
                v != z
                    && prefs[j - 1] == v
                    && !prefs.contains(&z)
                    && (0..i - 1).all(|c| prefs[c] != v)
                    && (i..j - 1).all(|c| prefs[c] != v)
                    && match ck.deterministic_outcome(prefs) {
                        ParkOutcome::AllParked(w) => w.spot(j) == z,
                        ParkOutcome::Stuck { .. } => false,
                    }
            }
        };
        ok.then_some(0)
    })?;
    Ok(Count::from(counts[0]))
}

/// Number of ways the cars after an already-committed initial segment can
/// extend it to a full parking function on `m` cars.
pub fn count_completions(
    g: &DiGraph,
    m: usize,
    prefix: &PrefixAssignment,
    opts: &CountOptions,
) -> Result<Count, CountError> {
    validate_initial_prefix(g, m, prefix)?;
    let counts = enumerate_buckets(g, m, prefix.pairs(), 1, opts, |prefs, ck| {
        ck.is_pf(prefs).then_some(0)
    })?;
    Ok(Count::from(counts[0]))
}

/// Completion counts split on a marked vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitCounts {
    /// Completions where no execution can park a car at the marked vertex.
    pub avoiding: Count,
    /// Completions where some execution parks a car there.
    pub reaching: Count,
}

/// Splits [`count_completions`] at vertex `v` into sequences that can never
/// place a car on `v` and sequences that may. Requires the structural
/// hypotheses of the displacement bound: an acyclic graph, a prefix with a
/// unique occupancy that misses `v`, everything downstream of `v` occupied,
/// and every branch vertex at directed distance at least `total - j` from
/// `v`. Violations are reported, never silently accepted.
pub fn count_completions_split(
    g: &DiGraph,
    total: usize,
    prefix: &PrefixAssignment,
    v: VertexId,
    opts: &CountOptions,
) -> Result<SplitCounts, CountError> {
    if !is_acyclic(g) {
        return Err(CountError::Cyclic);
    }
    if v == 0 || v as usize > g.n() {
        return Err(CountError::InvalidPrefix(format!(
            "marked vertex {v} outside 1..={}",
            g.n()
        )));
    }
    let seq = validate_initial_prefix(g, total, prefix)?;
    let j = prefix.len();
    let l = total - j;

    let mut search = ParkSearch::new(g)?;
    let occupancies = search.occupancies(seq.prefs());
    if occupancies.len() != 1 {
        return Err(CountError::Hypothesis(format!(
            "prefix occupancy is witness-dependent ({} outcomes)",
            occupancies.len()
        )));
    }
    let occ = *occupancies.iter().next().expect("one occupancy");
    if occ & (1u64 << (v - 1)) != 0 {
        return Err(CountError::Hypothesis(format!(
            "prefix occupies the marked vertex {v}"
        )));
    }
    for w in reachable_from(g, v) {
        if w != v && occ & (1u64 << (w - 1)) == 0 {
            return Err(CountError::Hypothesis(format!(
                "vertex {w} downstream of {v} is not occupied by the prefix"
            )));
        }
    }
    for w in g.vertices() {
        if w == v || g.undirected_degree(w) < 3 {
            continue;
        }
        if let Some(dist) = directed_distance(g, w, v) {
            if (dist as usize) < l {
                return Err(CountError::Hypothesis(format!(
                    "branch vertex {w} is {dist} vertices from {v}, need at least {l}"
                )));
            }
        }
    }

    let counts = enumerate_buckets(g, total, prefix.pairs(), 2, opts, |prefs, ck| {
        if ck.has_execution_reaching(prefs, v) {
            Some(1)
        } else if ck.has_execution_avoiding(prefs, v) {
            Some(0)
        } else {
            None
        }
    })?;
    Ok(SplitCounts {
        avoiding: Count::from(counts[0]),
        reaching: Count::from(counts[1]),
    })
}

fn validate_initial_prefix(
    g: &DiGraph,
    m: usize,
    prefix: &PrefixAssignment,
) -> Result<PrefSeq, CountError> {
    if !prefix.is_initial_segment() {
        return Err(CountError::InvalidPrefix(
            "prefix must assign an initial segment of cars".into(),
        ));
    }
    if prefix.len() > m {
        return Err(CountError::InvalidPrefix(format!(
            "prefix has {} cars but only {m} park",
            prefix.len()
        )));
    }
    let seq = prefix.as_seq().expect("initial segment");
    match crate::parking::is_parking_function(g, &seq)? {
        Some(_) => Ok(seq),
        None => Err(CountError::InvalidPrefix(
            "assigned cars cannot all park".into(),
        )),
    }
}

/// Kahn's algorithm.
pub fn is_acyclic(g: &DiGraph) -> bool {
    let n = g.n();
    let mut indeg = vec![0usize; n];
    for (_, v) in g.edges() {
        indeg[(v - 1) as usize] += 1;
    }
    let mut queue: Vec<VertexId> = g.vertices().filter(|&v| indeg[(v - 1) as usize] == 0).collect();
    let mut seen = 0;
    while let Some(u) = queue.pop() {
        seen += 1;
        for &w in g.out_neighbors(u) {
            indeg[(w - 1) as usize] -= 1;
            if indeg[(w - 1) as usize] == 0 {
                queue.push(w);
            }
        }
    }
    seen == n
}

fn reachable_from(g: &DiGraph, start: VertexId) -> Vec<VertexId> {
    let mut seen = vec![false; g.n()];
    seen[(start - 1) as usize] = true;
    let mut stack = vec![start];
    let mut out = Vec::new();
    while let Some(w) = stack.pop() {
        out.push(w);
        for &x in g.out_neighbors(w) {
            if !seen[(x - 1) as usize] {
                seen[(x - 1) as usize] = true;
                stack.push(x);
            }
        }
    }
    out
}

/// Vertex count of the shortest directed path from `u` to `v`, endpoints
/// included; `None` when unreachable.
fn directed_distance(g: &DiGraph, u: VertexId, v: VertexId) -> Option<u32> {
    g.path_between(u, v).ok().map(|p| p.len() as u32)
}

// ---------------------------------------------------------------------------
// Result records
// ---------------------------------------------------------------------------

/// One oracle result in its JSON wire shape; counts travel as decimal
/// strings so arbitrary precision survives.
#[derive(Debug, Clone, Serialize)]
pub struct CountRecord {
    pub graph_hash: String,
    pub m: usize,
    pub filter: String,
    pub count: String,
}

impl CountRecord {
    pub fn new(g: &DiGraph, m: usize, filter: impl Into<String>, count: &Count) -> CountRecord {
        CountRecord {
            graph_hash: graph_hash(g),
            m,
            filter: filter.into(),
            count: count.to_string(),
        }
    }
}

/// Stable FNV-1a hash of (n, root, edges); identifies a graph across runs.
pub fn graph_hash(g: &DiGraph) -> String {
    let mut h: u64 = 0xcbf29ce484222325;
    let mut eat = |x: u64| {
        for b in x.to_le_bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x100000001b3);
        }
    };
    eat(g.n() as u64);
    eat(g.root().map_or(0, |z| z as u64));
    for (u, v) in g.edges() {
        eat(u as u64);
        eat(v as u64);
    }
    format!("{h:016x}")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::{build_star, Orientation};
    use crate::samples;

    fn big(x: u64) -> Count {
        Count::from(x)
    }

    fn opts() -> CountOptions {
        CountOptions::default()
    }

    #[test]
    fn count_pf_examples() {
        let p3 = samples::path(3, Orientation::Sink);
        assert_eq!(count_pf(&p3, 2, &opts()).unwrap(), big(8));

        let sink4 = build_star(4, Orientation::Sink).unwrap();
        assert_eq!(count_pf(&sink4, 2, &opts()).unwrap(), big(15));

        assert_eq!(count_pf(&samples::tree13(), 0, &opts()).unwrap(), big(1));
    }

    #[test]
    fn count_pf_single_car_is_n() {
        // Holds for any digraph, cyclic ones included.
        let cyclic =
            DiGraph::from_edges(5, &[(1, 2), (2, 3), (3, 1), (3, 4), (4, 5)], Some(1)).unwrap();
        assert_eq!(count_pf(&cyclic, 1, &opts()).unwrap(), big(5));
    }

    #[test]
    fn budget_exceeded_is_distinct() {
        let sink4 = build_star(4, Orientation::Sink).unwrap();
        let tight = CountOptions { budget: 15 };
        match count_pf(&sink4, 2, &tight) {
            Err(CountError::BudgetExceeded { needed: 16, budget: 15 }) => {}
            other => panic!("expected budget error, got {other:?}"),
        }
    }

    #[test]
    fn car_range_rejected() {
        let sink4 = build_star(4, Orientation::Sink).unwrap();
        assert!(matches!(
            count_pf(&sink4, 5, &opts()),
            Err(CountError::CarRange { n: 4, m: 5 })
        ));
    }

    #[test]
    fn count_by_root_preference_examples() {
        let source4 = build_star(4, Orientation::Source).unwrap();
        let counts = count_by_root_preference(&source4, 2, &opts()).unwrap();
        assert_eq!(counts, vec![big(6), big(6), big(1)]);

        let sink4 = build_star(4, Orientation::Sink).unwrap();
        let counts = count_by_root_preference(&sink4, 2, &opts()).unwrap();
        assert_eq!(counts, vec![big(9), big(6), big(0)]);

        let counts = count_by_root_preference(&sink4, 0, &opts()).unwrap();
        assert_eq!(counts, vec![big(1)]);
    }

    #[test]
    fn root_preference_partition_sums_to_total() {
        for orient in [Orientation::Sink, Orientation::Source] {
            let star5 = build_star(5, orient).unwrap();
            for m in 0..=5 {
                let total = count_pf(&star5, m, &opts()).unwrap();
                let parts: Count = count_by_root_preference(&star5, m, &opts())
                    .unwrap()
                    .into_iter()
                    .sum();
                assert_eq!(parts, total, "m={m} {orient}");
            }
        }
    }

    #[test]
    fn count_case3a_examples() {
        let sink4 = build_star(4, Orientation::Sink).unwrap();
        assert_eq!(count_case3a(&sink4, 2, &opts()).unwrap(), big(3));

        let sink5 = build_star(5, Orientation::Sink).unwrap();
        assert_eq!(count_case3a(&sink5, 3, &opts()).unwrap(), big(36));
        assert_eq!(count_case3a(&sink5, 1, &opts()).unwrap(), big(0));

        let source4 = build_star(4, Orientation::Source).unwrap();
        assert!(matches!(
            count_case3a(&source4, 2, &opts()),
            Err(CountError::NeedsSinkTree)
        ));
    }

    #[test]
    fn count_first_pair_examples() {
        let source4 = build_star(4, Orientation::Source).unwrap();
        assert_eq!(
            count_first_pair(&source4, 2, 1, 2, PairMode::RootPair, &opts()).unwrap(),
            big(1)
        );
        assert_eq!(
            count_first_pair(&source4, 3, 2, 3, PairMode::RootPair, &opts()).unwrap(),
            big(3)
        );

        let sink4 = build_star(4, Orientation::Sink).unwrap();
        assert_eq!(
            count_first_pair(&sink4, 3, 1, 2, PairMode::LeafCollision, &opts()).unwrap(),
            big(6)
        );

        assert!(matches!(
            count_first_pair(&sink4, 3, 2, 2, PairMode::LeafCollision, &opts()),
            Err(CountError::InvalidPair { .. })
        ));
    }

    #[test]
    fn count_completions_examples() {
        let source4 = build_star(4, Orientation::Source).unwrap();
        // Complete assignment extends in exactly one way: itself.
        let full = PrefixAssignment::initial(&[2, 3]);
        assert_eq!(count_completions(&source4, 2, &full, &opts()).unwrap(), big(1));

        // One leaf taken: car 2 may prefer the root or either free leaf, but
        // not the occupied leaf (no way out of it).
        let g = PrefixAssignment::initial(&[2]);
        assert_eq!(count_completions(&source4, 2, &g, &opts()).unwrap(), big(3));

        let sink4 = build_star(4, Orientation::Sink).unwrap();
        let g = PrefixAssignment::initial(&[1]);
        assert_eq!(count_completions(&sink4, 2, &g, &opts()).unwrap(), big(3));

        // (1,1) is not a valid prefix on the sink star.
        let bad = PrefixAssignment::initial(&[1, 1]);
        assert!(matches!(
            count_completions(&sink4, 3, &bad, &opts()),
            Err(CountError::InvalidPrefix(_))
        ));
    }

    #[test]
    fn count_completions_split_examples() {
        let p3 = samples::path(3, Orientation::Source);
        let g = PrefixAssignment::initial(&[2]);

        // l = 0: the prefix itself avoids the marked vertex.
        let split = count_completions_split(&p3, 1, &g, 3, &opts()).unwrap();
        assert_eq!((split.avoiding, split.reaching), (big(1), big(0)));

        let split = count_completions_split(&p3, 2, &g, 3, &opts()).unwrap();
        assert_eq!((split.avoiding.clone(), split.reaching.clone()), (big(1), big(2)));
        let total = count_completions(&p3, 2, &g, &opts()).unwrap();
        assert_eq!(split.avoiding + split.reaching, total);
    }

    #[test]
    fn count_completions_split_rejects_violations() {
        let p3 = samples::path(3, Orientation::Source);
        // Marked vertex occupied by the prefix.
        let g = PrefixAssignment::initial(&[3]);
        assert!(matches!(
            count_completions_split(&p3, 2, &g, 3, &opts()),
            Err(CountError::Hypothesis(_))
        ));
        // Downstream of the marked vertex not occupied.
        let g = PrefixAssignment::initial(&[1]);
        assert!(matches!(
            count_completions_split(&p3, 2, &g, 2, &opts()),
            Err(CountError::Hypothesis(_))
        ));
        // Cyclic graphs are rejected outright.
        let cyc = DiGraph::from_edges(3, &[(1, 2), (2, 3), (3, 1)], Some(1)).unwrap();
        let g = PrefixAssignment::initial(&[1]);
        assert!(matches!(
            count_completions_split(&cyc, 2, &g, 2, &opts()),
            Err(CountError::Cyclic)
        ));
    }

    #[test]
    fn split_partition_identity_on_a_tree() {
        // Sink orientation of the 5-vertex two-leg spider: occupy the root,
        // mark one mid-leg vertex.
        let sp = samples::spider(&[2, 2], Orientation::Sink);
        let g = PrefixAssignment::initial(&[1]);
        for v in [2u32, 4] {
            let total = count_completions(&sp, 3, &g, &opts()).unwrap();
            let split = count_completions_split(&sp, 3, &g, v, &opts()).unwrap();
            assert_eq!(split.avoiding + split.reaching, total, "v={v}");
        }
    }

    #[test]
    fn prefix_assignment_shapes() {
        let init = PrefixAssignment::initial(&[4, 4, 2]);
        assert!(init.is_initial_segment());
        assert_eq!(init.as_seq().unwrap().to_string(), "4,4,2");

        let gapped = PrefixAssignment::from_pairs(vec![(1, 5), (4, 2)]).unwrap();
        assert!(!gapped.is_initial_segment());
        assert!(gapped.as_seq().is_none());

        assert!(PrefixAssignment::from_pairs(vec![(2, 1), (2, 3)]).is_err());
    }

    #[test]
    fn records_are_stable() {
        let t13 = samples::tree13();
        let h1 = graph_hash(&t13);
        let h2 = graph_hash(&samples::tree13());
        assert_eq!(h1, h2);
        assert_ne!(h1, graph_hash(&t13.reverse()));

        let rec = CountRecord::new(&t13, 9, "all", &big(12345));
        let json = serde_json::to_string(&rec).unwrap();
        assert!(json.contains("\"count\":\"12345\""), "{json}");
    }
}
