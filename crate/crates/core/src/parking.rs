//! The sequential parking process on a digraph: cars drive to their
//! preferred vertex, park at the first unoccupied vertex on their walk, and
//! may choose a direction only while standing on occupied vertices.
//!
//! Membership is existential: a sequence is a parking function when some
//! choice of walks parks every car. The checker is a depth-first search over
//! per-car feasible spots, memoized on (car index, occupancy set).

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::digraph::{DiGraph, VertexId};

/// Occupancy sets are bitmasks, which caps searchable graphs at 64 vertices.
pub const MAX_PARKING_VERTICES: usize = 64;

#[derive(Debug, Error)]
pub enum ParkError {
    #[error("car {car} prefers vertex {v}, outside 1..={n}")]
    PrefOutOfRange { car: usize, v: VertexId, n: usize },
    #[error("vertex {v} outside 1..={n}")]
    VertexOutOfRange { v: VertexId, n: usize },
    #[error("graph has {n} vertices; the parking search supports at most {MAX_PARKING_VERTICES}")]
    GraphTooLarge { n: usize },
    #[error("vertex {v} has out-degree {d}; deterministic parking needs out-degree <= 1")]
    NotDeterministic { v: VertexId, d: usize },
    #[error("operation requires a sink tree with a designated root")]
    NotSinkTree,
    #[error("sequence is not a parking function on this graph")]
    NotAParkingFunction,
    #[error("invalid preference sequence: {0}")]
    ParseSeq(String),
}

/// An ordered car preference sequence; car `i` prefers the `i`-th entry.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PrefSeq {
    prefs: Vec<VertexId>,
}

impl PrefSeq {
    pub fn new(prefs: Vec<VertexId>) -> PrefSeq {
        PrefSeq { prefs }
    }

    pub fn len(&self) -> usize {
        self.prefs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.prefs.is_empty()
    }

    pub fn prefs(&self) -> &[VertexId] {
        &self.prefs
    }

    /// Preference of car `car` (1-indexed).
    pub fn pref(&self, car: usize) -> VertexId {
        self.prefs[car - 1]
    }

    /// Checks every entry against the host vertex range.
    pub fn validate(&self, g: &DiGraph) -> Result<(), ParkError> {
        for (idx, &v) in self.prefs.iter().enumerate() {
            if v == 0 || v as usize > g.n() {
                return Err(ParkError::PrefOutOfRange {
                    car: idx + 1,
                    v,
                    n: g.n(),
                });
            }
        }
        Ok(())
    }
}

impl FromStr for PrefSeq {
    type Err = ParkError;

    /// Parses comma-separated 1-indexed vertices, e.g. `6,6,6,10,10,1,1,1,1`.
    /// The empty string is the zero-car sequence.
    fn from_str(s: &str) -> Result<PrefSeq, ParkError> {
        let trimmed = s.trim();
        if trimmed.is_empty() {
            return Ok(PrefSeq::new(Vec::new()));
        }
        let mut prefs = Vec::new();
        for tok in trimmed.split(',') {
            let v: VertexId = tok
                .trim()
                .parse()
                .map_err(|_| ParkError::ParseSeq(format!("bad vertex `{tok}`")))?;
            if v == 0 {
                return Err(ParkError::ParseSeq("vertices are 1-indexed".into()));
            }
            prefs.push(v);
        }
        Ok(PrefSeq::new(prefs))
    }
}

impl fmt::Display for PrefSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.prefs.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// A set of vertices backed by a 64-bit mask.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Hash)]
pub struct VertexSet {
    bits: u64,
}

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet { bits: 0 };

    pub fn insert(&mut self, v: VertexId) {
        self.bits |= 1u64 << (v - 1);
    }

    pub fn remove(&mut self, v: VertexId) {
        self.bits &= !(1u64 << (v - 1));
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.bits & (1u64 << (v - 1)) != 0
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    /// Ascending vertex labels.
    pub fn iter(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..64u32)
            .filter(move |b| self.bits & (1u64 << b) != 0)
            .map(|b| b + 1)
    }
}

impl FromIterator<VertexId> for VertexSet {
    fn from_iter<I: IntoIterator<Item = VertexId>>(iter: I) -> VertexSet {
        let mut s = VertexSet::default();
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// Per-car parked positions of one successful execution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    parked_at: Vec<VertexId>,
}

impl Witness {
    pub fn parked_at(&self) -> &[VertexId] {
        &self.parked_at
    }

    /// Where car `car` (1-indexed) parked.
    pub fn spot(&self, car: usize) -> VertexId {
        self.parked_at[car - 1]
    }

    pub fn parks_any_at(&self, v: VertexId) -> bool {
        self.parked_at.contains(&v)
    }
}

/// Unoccupied vertices a car starting at `start` can stop at: the first
/// unoccupied vertex of some directed walk whose earlier vertices are all
/// occupied. An unoccupied start is the only feasible spot.
pub fn feasible_spots(
    g: &DiGraph,
    occupied: VertexSet,
    start: VertexId,
) -> Result<VertexSet, ParkError> {
    check_graph_size(g)?;
    if start == 0 || start as usize > g.n() {
        return Err(ParkError::VertexOutOfRange { v: start, n: g.n() });
    }
    Ok(feasible_spots_unchecked(g, occupied, start))
}

fn feasible_spots_unchecked(g: &DiGraph, occupied: VertexSet, start: VertexId) -> VertexSet {
    let mut spots = VertexSet::default();
    if !occupied.contains(start) {
        spots.insert(start);
        return spots;
    }
    // Walk the occupied region; visited marks keep cycles finite.
    let mut visited = VertexSet::default();
    visited.insert(start);
    let mut stack = vec![start];
    while let Some(w) = stack.pop() {
        for &x in g.out_neighbors(w) {
            if occupied.contains(x) {
                if !visited.contains(x) {
                    visited.insert(x);
                    stack.push(x);
                }
            } else {
                spots.insert(x);
            }
        }
    }
    spots
}

/// Reusable existential search over car placements. `failed` memoizes dead
/// states keyed on (car index, occupancy bits); successful states are left
/// out because the search returns on first success.
pub(crate) struct ParkSearch<'g> {
    g: &'g DiGraph,
    failed: HashSet<(u16, u64)>,
}

impl<'g> ParkSearch<'g> {
    pub(crate) fn new(g: &'g DiGraph) -> Result<ParkSearch<'g>, ParkError> {
        check_graph_size(g)?;
        Ok(ParkSearch {
            g,
            failed: HashSet::new(),
        })
    }

    /// Finds one successful execution, never parking on `banned`.
    pub(crate) fn witness(
        &mut self,
        prefs: &[VertexId],
        banned: Option<VertexId>,
    ) -> Option<Witness> {
        self.failed.clear();
        let mut parked_at = Vec::with_capacity(prefs.len());
        if self.dfs(prefs, banned, 0, VertexSet::default(), &mut parked_at) {
            Some(Witness { parked_at })
        } else {
            None
        }
    }

    pub(crate) fn succeeds(&mut self, prefs: &[VertexId], banned: Option<VertexId>) -> bool {
        self.failed.clear();
        let mut scratch = Vec::new();
        self.dfs(prefs, banned, 0, VertexSet::default(), &mut scratch)
    }

    fn dfs(
        &mut self,
        prefs: &[VertexId],
        banned: Option<VertexId>,
        car: usize,
        occupied: VertexSet,
        parked: &mut Vec<VertexId>,
    ) -> bool {
        if car == prefs.len() {
            return true;
        }
        let key = (car as u16, occupied.bits());
        if self.failed.contains(&key) {
            return false;
        }
        let spots = feasible_spots_unchecked(self.g, occupied, prefs[car]);
        for v in spots.iter() {
            if banned == Some(v) {
                continue;
            }
            let mut next = occupied;
            next.insert(v);
            parked.push(v);
            if self.dfs(prefs, banned, car + 1, next, parked) {
                return true;
            }
            parked.pop();
        }
        self.failed.insert(key);
        false
    }

    /// True when some successful execution ends with `required` occupied.
    pub(crate) fn succeeds_requiring(&mut self, prefs: &[VertexId], required: VertexId) -> bool {
        self.failed.clear();
        self.dfs_requiring(prefs, required, 0, VertexSet::default())
    }

    fn dfs_requiring(
        &mut self,
        prefs: &[VertexId],
        required: VertexId,
        car: usize,
        occupied: VertexSet,
    ) -> bool {
        if car == prefs.len() {
            return occupied.contains(required);
        }
        let key = (car as u16, occupied.bits());
        if self.failed.contains(&key) {
            return false;
        }
        let spots = feasible_spots_unchecked(self.g, occupied, prefs[car]);
        for v in spots.iter() {
            let mut next = occupied;
            next.insert(v);
            if self.dfs_requiring(prefs, required, car + 1, next) {
                return true;
            }
        }
        self.failed.insert(key);
        false
    }

    /// Occupancy sets over all successful executions.
    pub(crate) fn occupancies(&mut self, prefs: &[VertexId]) -> std::collections::BTreeSet<u64> {
        let mut out = std::collections::BTreeSet::new();
        self.collect_occ(prefs, 0, VertexSet::default(), &mut out);
        out
    }

    fn collect_occ(
        &mut self,
        prefs: &[VertexId],
        car: usize,
        occupied: VertexSet,
        out: &mut std::collections::BTreeSet<u64>,
    ) {
        if car == prefs.len() {
            out.insert(occupied.bits());
            return;
        }
        let spots = feasible_spots_unchecked(self.g, occupied, prefs[car]);
        for v in spots.iter() {
            let mut next = occupied;
            next.insert(v);
            self.collect_occ(prefs, car + 1, next, out);
        }
    }
}

/// Existential membership: `Some(witness)` when every car can park.
pub fn is_parking_function(g: &DiGraph, s: &PrefSeq) -> Result<Option<Witness>, ParkError> {
    s.validate(g)?;
    let mut search = ParkSearch::new(g)?;
    Ok(search.witness(s.prefs(), None))
}

/// Outcome of the deterministic process on an out-degree-<=-1 digraph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParkOutcome {
    AllParked(Witness),
    /// 1-indexed first car that could not park.
    Stuck { failed_car: usize },
}

impl ParkOutcome {
    pub fn witness(&self) -> Option<&Witness> {
        match self {
            ParkOutcome::AllParked(w) => Some(w),
            ParkOutcome::Stuck { .. } => None,
        }
    }
}

/// Runs the process where every vertex has at most one way out, so no car
/// ever has a choice.
pub fn park_deterministic(g: &DiGraph, s: &PrefSeq) -> Result<ParkOutcome, ParkError> {
    check_graph_size(g)?;
    s.validate(g)?;
    for v in g.vertices() {
        let d = g.out_degree(v);
        if d > 1 {
            return Err(ParkError::NotDeterministic { v, d });
        }
    }
    Ok(park_deterministic_unchecked(g, s.prefs()))
}

pub(crate) fn park_deterministic_unchecked(g: &DiGraph, prefs: &[VertexId]) -> ParkOutcome {
    let mut occupied = VertexSet::default();
    let mut parked_at = Vec::with_capacity(prefs.len());
    for (idx, &start) in prefs.iter().enumerate() {
        let mut cur = start;
        let mut visited = VertexSet::default();
        loop {
            if !occupied.contains(cur) {
                occupied.insert(cur);
                parked_at.push(cur);
                break;
            }
            visited.insert(cur);
            match g.out_neighbors(cur).first() {
                Some(&next) if !visited.contains(next) => cur = next,
                _ => return ParkOutcome::Stuck { failed_car: idx + 1 },
            }
        }
    }
    ParkOutcome::AllParked(Witness { parked_at })
}

/// Whether the deterministic outcome on a sink tree parks some car at the
/// root. Rejects non-parking sequences.
pub fn parked_root_flag(g: &DiGraph, s: &PrefSeq) -> Result<bool, ParkError> {
    if !g.is_sink_tree() {
        return Err(ParkError::NotSinkTree);
    }
    let z = g.root().expect("sink tree has a root");
    match park_deterministic(g, s)? {
        ParkOutcome::AllParked(w) => Ok(w.parks_any_at(z)),
        ParkOutcome::Stuck { .. } => Err(ParkError::NotAParkingFunction),
    }
}

fn check_graph_size(g: &DiGraph) -> Result<(), ParkError> {
    if g.n() > MAX_PARKING_VERTICES {
        Err(ParkError::GraphTooLarge { n: g.n() })
    } else {
        Ok(())
    }
}
