//! Ready-made example graphs used across the test suites and docs.

use crate::digraph::{build_tree, DiGraph, Orientation, VertexId};

/// 13-vertex source tree rooted at 1: four branches off the root, two of
/// them ending in forks.
pub fn tree13() -> DiGraph {
    let edges: &[(VertexId, VertexId)] = &[
        (1, 2),
        (1, 3),
        (1, 4),
        (1, 5),
        (2, 6),
        (6, 7),
        (7, 8),
        (6, 9),
        (9, 10),
        (10, 11),
        (10, 13),
        (5, 12),
    ];
    build_tree(13, edges, 1, Orientation::Source).unwrap()
}

/// 20-vertex source tree rooted at 1: five legs of three vertices each, one
/// pair sharing the branch vertex 2.
pub fn tree20() -> DiGraph {
    build_tree(20, &tree20_edges(), 1, Orientation::Source).unwrap()
}

/// 22-vertex source tree: [`tree20`] plus the extra two-vertex branch
/// (21, 22) hanging off vertex 16.
pub fn tree22() -> DiGraph {
    let mut edges = tree20_edges();
    edges.push((16, 21));
    edges.push((21, 22));
    build_tree(22, &edges, 1, Orientation::Source).unwrap()
}

fn tree20_edges() -> Vec<(VertexId, VertexId)> {
    vec![
        (1, 2),
        (1, 3),
        (1, 4),
        (1, 5),
        (2, 6),
        (6, 7),
        (7, 8),
        (2, 9),
        (9, 10),
        (10, 11),
        (5, 12),
        (12, 13),
        (13, 14),
        (4, 15),
        (15, 16),
        (16, 17),
        (3, 18),
        (18, 19),
        (19, 20),
    ]
}

/// A spider: paths of the given lengths (in non-root vertices) joined at a
/// common root 1, legs laid out in order.
pub fn spider(leg_lengths: &[usize], orient: Orientation) -> DiGraph {
    let n = 1 + leg_lengths.iter().sum::<usize>();
    let mut edges = Vec::with_capacity(n - 1);
    let mut next: VertexId = 2;
    for &len in leg_lengths {
        let mut prev: VertexId = 1;
        for _ in 0..len {
            edges.push((prev, next));
            prev = next;
            next += 1;
        }
    }
    build_tree(n, &edges, 1, orient).unwrap()
}

/// A directed path on `n` vertices rooted at vertex 1.
pub fn path(n: usize, orient: Orientation) -> DiGraph {
    let edges: Vec<(VertexId, VertexId)> = (1..n as VertexId)
        .map(|v| (v, v + 1))
        .collect();
    build_tree(n, &edges, 1, orient).unwrap()
}
