//! Path reversals of car preferences and the tree-wide involution built from
//! the flip-path decomposition.

use crate::digraph::{DiGraph, GraphError, PathSeg, VertexId};
use crate::parking::PrefSeq;

/// The flip-path decomposition of a rooted tree together with the vertex
/// permutation it induces: each segment is reversed in place and the root is
/// fixed. Applying the permutation twice is the identity.
#[derive(Debug, Clone)]
pub struct FlipPlan {
    segments: Vec<PathSeg>,
    map: Vec<VertexId>,
}

impl FlipPlan {
    pub fn new(g: &DiGraph) -> Result<FlipPlan, GraphError> {
        let segments = g.flip_path_decomposition()?;
        let mut map: Vec<VertexId> = (1..=g.n() as VertexId).collect();
        for seg in &segments {
            let vs = seg.vertices();
            for (k, &w) in vs.iter().enumerate() {
                map[(w - 1) as usize] = vs[vs.len() - 1 - k];
            }
        }
        Ok(FlipPlan { segments, map })
    }

    pub fn segments(&self) -> &[PathSeg] {
        &self.segments
    }

    pub fn vertex_image(&self, v: VertexId) -> VertexId {
        self.map[(v - 1) as usize]
    }

    /// Rewrites every preference through the vertex permutation.
    pub fn apply(&self, s: &PrefSeq) -> PrefSeq {
        PrefSeq::new(s.prefs().iter().map(|&v| self.vertex_image(v)).collect())
    }
}

/// Reverses the preferences of the cars along one path: a car preferring the
/// k-th path vertex now prefers the k-th from the end. Other cars are
/// untouched.
pub fn flip_on_path(path: &PathSeg, s: &PrefSeq) -> PrefSeq {
    let vs = path.vertices();
    let prefs = s
        .prefs()
        .iter()
        .map(|&v| match path.position(v) {
            Some(k) => vs[vs.len() - 1 - k],
            None => v,
        })
        .collect();
    PrefSeq::new(prefs)
}

/// Applies the full flip-path decomposition of `g` to a preference sequence;
/// preferences for the root never move.
pub fn flip_star(g: &DiGraph, s: &PrefSeq) -> Result<PrefSeq, GraphError> {
    for &v in s.prefs() {
        if v == 0 || v as usize > g.n() {
            return Err(GraphError::VertexOutOfRange { v, n: g.n() });
        }
    }
    Ok(FlipPlan::new(g)?.apply(s))
}

/// Image of a single vertex under the flip permutation of `g`.
pub fn flip_star_vertex(g: &DiGraph, v: VertexId) -> Result<VertexId, GraphError> {
    if v == 0 || v as usize > g.n() {
        return Err(GraphError::VertexOutOfRange { v, n: g.n() });
    }
    Ok(FlipPlan::new(g)?.vertex_image(v))
}
