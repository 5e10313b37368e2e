//! Isomorphism-free enumeration of rooted trees via canonical level
//! sequences, one canonical labeling per shape.

use crate::digraph::{build_tree, DiGraph, GraphError, Orientation, VertexId};

/// Upper bound for [`all_rooted_trees`]; 286 shapes at the limit.
pub const MAX_TREE_VERTICES: usize = 9;

/// One rooted tree shape. Vertices are numbered `1..=n` in preorder of the
/// canonical level sequence, so vertex 1 is always the root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeShape {
    pub n: usize,
    pub root: VertexId,
    pub edges: Vec<(VertexId, VertexId)>,
}

impl TreeShape {
    pub fn to_digraph(&self, orient: Orientation) -> DiGraph {
        build_tree(self.n, &self.edges, self.root, orient)
            .expect("generated shapes are valid trees")
    }
}

/// Streams every rooted tree on `n` unlabeled vertices up to isomorphism.
///
/// Shapes are represented by their lexicographically largest level sequence;
/// the successor rule walks them in decreasing order, from the path down to
/// the star.
pub fn all_rooted_trees(n: usize) -> Result<RootedTreeIter, GraphError> {
    if !(1..=MAX_TREE_VERTICES).contains(&n) {
        return Err(GraphError::UnsupportedSize {
            n,
            min: 1,
            max: MAX_TREE_VERTICES,
        });
    }
    Ok(RootedTreeIter {
        levels: Some((1..=n as u32).collect()),
    })
}

pub struct RootedTreeIter {
    levels: Option<Vec<u32>>,
}

impl Iterator for RootedTreeIter {
    type Item = TreeShape;

    fn next(&mut self) -> Option<TreeShape> {
        let levels = self.levels.take()?;
        let shape = shape_from_levels(&levels);
        self.levels = successor(&levels);
        Some(shape)
    }
}

/// Level-sequence successor: locate the last entry above 2, then repeat the
/// block starting at its parent until the sequence is full length again.
fn successor(levels: &[u32]) -> Option<Vec<u32>> {
    let n = levels.len();
    let p = (0..n).rev().find(|&i| levels[i] > 2)?;
    let q = (0..p)
        .rev()
        .find(|&i| levels[i] == levels[p] - 1)
        .expect("every non-root level has a parent level before it");
    let mut next = levels.to_vec();
    for i in p..n {
        next[i] = next[i - (p - q)];
    }
    Some(next)
}

/// Parent of position `i` is the nearest earlier position one level up.
fn shape_from_levels(levels: &[u32]) -> TreeShape {
    let n = levels.len();
    let mut edges = Vec::with_capacity(n.saturating_sub(1));
    for i in 1..n {
        let parent = (0..i)
            .rev()
            .find(|&j| levels[j] == levels[i] - 1)
            .expect("preorder level sequence");
        edges.push((parent as VertexId + 1, i as VertexId + 1));
    }
    TreeShape {
        n,
        root: 1,
        edges,
    }
}
