//! Directed graphs on vertex set `1..=n`, rooted-tree builders, and the
//! structural statistics used by the flip machinery.

use std::borrow::Cow;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Vertices are labeled `1..=n`.
pub type VertexId = u32;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("graph must have at least one vertex")]
    Empty,
    #[error("vertex {v} out of range 1..={n}")]
    VertexOutOfRange { v: VertexId, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(VertexId),
    #[error("duplicate edge {0} -> {1}")]
    DuplicateEdge(VertexId, VertexId),
    #[error("edge list is not a tree on 1..={n}: {reason}")]
    NotATree { n: usize, reason: String },
    #[error("graph has no designated root")]
    NoRoot,
    #[error("operation requires a {expected} tree orientation")]
    NotOriented { expected: &'static str },
    #[error("no directed path from {from} to {to}")]
    Unreachable { from: VertexId, to: VertexId },
    #[error("vertex count {n} outside supported range {min}..={max}")]
    UnsupportedSize { n: usize, min: usize, max: usize },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// Direction of every edge of a rooted tree relative to its root.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    /// Every edge points toward the root; the root is the unique sink.
    Sink,
    /// Every edge points away from the root; the root is the unique source.
    Source,
}

impl Orientation {
    pub fn flipped(self) -> Orientation {
        match self {
            Orientation::Sink => Orientation::Source,
            Orientation::Source => Orientation::Sink,
        }
    }
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Orientation::Sink => write!(f, "sink"),
            Orientation::Source => write!(f, "source"),
        }
    }
}

impl FromStr for Orientation {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "sink" => Ok(Orientation::Sink),
            "source" => Ok(Orientation::Source),
            other => Err(format!("expected `sink` or `source`, got `{other}`")),
        }
    }
}

/// A digraph on vertices `1..=n` with sorted adjacency lists and an optional
/// designated root. Immutable after construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiGraph {
    n: usize,
    out: Vec<Vec<VertexId>>,
    root: Option<VertexId>,
    orient: Option<Orientation>,
}

impl DiGraph {
    /// Builds an arbitrary digraph from directed edges. Rejects out-of-range
    /// endpoints, self-loops, and duplicate edges.
    pub fn from_edges(
        n: usize,
        edges: &[(VertexId, VertexId)],
        root: Option<VertexId>,
    ) -> Result<DiGraph, GraphError> {
        if n == 0 {
            return Err(GraphError::Empty);
        }
        if let Some(z) = root {
            check_vertex(z, n)?;
        }
        let mut out = vec![Vec::new(); n];
        for &(u, v) in edges {
            check_vertex(u, n)?;
            check_vertex(v, n)?;
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            let row = &mut out[(u - 1) as usize];
            if row.contains(&v) {
                return Err(GraphError::DuplicateEdge(u, v));
            }
            row.push(v);
        }
        for row in &mut out {
            row.sort_unstable();
        }
        Ok(DiGraph {
            n,
            out,
            root,
            orient: None,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn root(&self) -> Option<VertexId> {
        self.root
    }

    /// The orientation this graph was tagged with at build/parse time, if any.
    pub fn orientation(&self) -> Option<Orientation> {
        self.orient
    }

    pub fn out_neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.out[(v - 1) as usize]
    }

    pub fn out_degree(&self, v: VertexId) -> usize {
        self.out[(v - 1) as usize].len()
    }

    pub fn edge_count(&self) -> usize {
        self.out.iter().map(Vec::len).sum()
    }

    /// Directed edges in (source, target) order, sorted.
    pub fn edges(&self) -> Vec<(VertexId, VertexId)> {
        let mut es = Vec::with_capacity(self.edge_count());
        for u in 1..=self.n as VertexId {
            for &v in self.out_neighbors(u) {
                es.push((u, v));
            }
        }
        es
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        1..=self.n as VertexId
    }

    pub fn in_degree(&self, v: VertexId) -> usize {
        self.vertices()
            .filter(|&u| self.out_neighbors(u).contains(&v))
            .count()
    }

    pub fn undirected_degree(&self, v: VertexId) -> usize {
        self.out_degree(v) + self.in_degree(v)
    }

    /// Neighbors in the underlying undirected graph, sorted ascending.
    pub fn undirected_neighbors(&self, v: VertexId) -> Vec<VertexId> {
        let mut ns: Vec<VertexId> = self.out_neighbors(v).to_vec();
        for u in self.vertices() {
            if u != v && self.out_neighbors(u).contains(&v) {
                ns.push(u);
            }
        }
        ns.sort_unstable();
        ns.dedup();
        ns
    }

    pub fn max_out_degree(&self) -> usize {
        self.out.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// True when the underlying undirected graph is a tree (connected,
    /// acyclic, `n - 1` edges).
    pub fn is_tree_shape(&self) -> bool {
        if self.edge_count() != self.n - 1 {
            return false;
        }
        // Union-find over undirected edges; n-1 edges + no cycle = connected.
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for (u, v) in self.edges() {
            let (ru, rv) = (
                find(&mut parent, (u - 1) as usize),
                find(&mut parent, (v - 1) as usize),
            );
            if ru == rv {
                return false;
            }
            parent[ru] = rv;
        }
        true
    }

    /// True for a tree rooted at `root` with every edge pointing toward it.
    pub fn is_sink_tree(&self) -> bool {
        match self.root {
            Some(z) => {
                self.is_tree_shape()
                    && self.max_out_degree() <= 1
                    && self.out_degree(z) == 0
            }
            None => false,
        }
    }

    /// True for a tree rooted at `root` with every edge pointing away from it.
    pub fn is_source_tree(&self) -> bool {
        match self.root {
            Some(z) => {
                self.is_tree_shape()
                    && self.vertices().all(|v| self.in_degree(v) <= 1)
                    && self.in_degree(z) == 0
            }
            None => false,
        }
    }

    /// Reverses every edge; the root and tree shape are preserved.
    pub fn reverse(&self) -> DiGraph {
        let mut out = vec![Vec::new(); self.n];
        for (u, v) in self.edges() {
            out[(v - 1) as usize].push(u);
        }
        for row in &mut out {
            row.sort_unstable();
        }
        DiGraph {
            n: self.n,
            out,
            root: self.root,
            orient: self.orient.map(Orientation::flipped),
        }
    }

    /// The tree with edges pointing away from the root, reversing if needed.
    /// Errors when the graph is not a rooted tree orientation.
    pub(crate) fn source_view(&self) -> Result<Cow<'_, DiGraph>, GraphError> {
        if self.is_source_tree() {
            Ok(Cow::Borrowed(self))
        } else if self.is_sink_tree() {
            Ok(Cow::Owned(self.reverse()))
        } else if self.root.is_none() {
            Err(GraphError::NoRoot)
        } else {
            Err(GraphError::NotOriented { expected: "sink or source" })
        }
    }

    /// Among the deepest leaves reachable from `u` (depth counted in
    /// vertices), returns the one with the smallest label. Computed on the
    /// away-from-root orientation; a leaf returns itself.
    pub fn leaf_of(&self, u: VertexId) -> Result<VertexId, GraphError> {
        check_vertex(u, self.n)?;
        let src = self.source_view()?;
        Ok(deepest_min_leaf(&src, u).1)
    }

    /// The unique directed path from `u` to `v` in this graph's orientation,
    /// endpoints included.
    pub fn path_between(&self, u: VertexId, v: VertexId) -> Result<PathSeg, GraphError> {
        check_vertex(u, self.n)?;
        check_vertex(v, self.n)?;
        // BFS so the result is shortest even on non-tree inputs.
        let mut prev: Vec<Option<VertexId>> = vec![None; self.n];
        let mut queue = std::collections::VecDeque::new();
        let mut seen = vec![false; self.n];
        seen[(u - 1) as usize] = true;
        queue.push_back(u);
        while let Some(w) = queue.pop_front() {
            if w == v {
                let mut path = vec![v];
                let mut cur = v;
                while cur != u {
                    cur = prev[(cur - 1) as usize].expect("bfs predecessor");
                    path.push(cur);
                }
                path.reverse();
                return Ok(PathSeg { vertices: path });
            }
            for &x in self.out_neighbors(w) {
                if !seen[(x - 1) as usize] {
                    seen[(x - 1) as usize] = true;
                    prev[(x - 1) as usize] = Some(w);
                    queue.push_back(x);
                }
            }
        }
        Err(GraphError::Unreachable { from: u, to: v })
    }

    /// Vertices adjacent to the path, excluding the path itself and the
    /// parent of its first vertex. On a source tree these are exactly the
    /// off-path children of path vertices. Sorted ascending.
    pub fn branch_neighborhood(&self, path: &PathSeg) -> Result<Vec<VertexId>, GraphError> {
        let src = self.source_view()?;
        let start = path.first();
        let parent_of_start = src
            .vertices()
            .find(|&p| src.out_neighbors(p).contains(&start));
        let mut result: Vec<VertexId> = Vec::new();
        for &w in path.vertices() {
            for x in src.undirected_neighbors(w) {
                if !path.contains(x) && Some(x) != parent_of_start {
                    result.push(x);
                }
            }
        }
        result.sort_unstable();
        result.dedup();
        Ok(result)
    }

    /// Minimum vertex count of a path between a degree-1 vertex and a vertex
    /// of undirected degree >= 3, endpoints included. `None` when no vertex
    /// has degree >= 3 (paths and the single vertex).
    pub fn minleafdist(&self) -> Option<u32> {
        let leaves: Vec<VertexId> = self
            .vertices()
            .filter(|&v| self.undirected_degree(v) == 1)
            .collect();
        let big: Vec<VertexId> = self
            .vertices()
            .filter(|&v| self.undirected_degree(v) >= 3)
            .collect();
        if big.is_empty() {
            return None;
        }
        let mut best: Option<u32> = None;
        for &leaf in &leaves {
            // BFS over the undirected graph from the leaf.
            let mut dist: Vec<Option<u32>> = vec![None; self.n];
            dist[(leaf - 1) as usize] = Some(1);
            let mut queue = std::collections::VecDeque::from([leaf]);
            while let Some(w) = queue.pop_front() {
                let dw = dist[(w - 1) as usize].unwrap();
                for x in self.undirected_neighbors(w) {
                    if dist[(x - 1) as usize].is_none() {
                        dist[(x - 1) as usize] = Some(dw + 1);
                        queue.push_back(x);
                    }
                }
            }
            for &w in &big {
                if let Some(d) = dist[(w - 1) as usize] {
                    best = Some(best.map_or(d, |b| b.min(d)));
                }
            }
        }
        best
    }

    /// Splits the non-root vertices into directed path segments: each branch
    /// root gets the path toward its smallest-labeled reachable leaf, and the
    /// construction recurses into the off-path branches, in ascending label
    /// order. Always computed on the away-from-root orientation, so both
    /// orientations of a tree share one decomposition.
    pub fn flip_path_decomposition(&self) -> Result<Vec<PathSeg>, GraphError> {
        let src = self.source_view()?;
        let z = src.root().ok_or(GraphError::NoRoot)?;
        let mut segments = Vec::new();
        let mut stack: Vec<VertexId> = src.out_neighbors(z).iter().rev().copied().collect();
        while let Some(u) = stack.pop() {
            let leaf = smallest_reachable_leaf(&src, u);
            let path = src.path_between(u, leaf)?;
            let branches = src.branch_neighborhood(&path)?;
            for &b in branches.iter().rev() {
                stack.push(b);
            }
            segments.push(path);
        }
        Ok(segments)
    }
}

fn check_vertex(v: VertexId, n: usize) -> Result<(), GraphError> {
    if v == 0 || v as usize > n {
        Err(GraphError::VertexOutOfRange { v, n })
    } else {
        Ok(())
    }
}

/// (depth in vertices, leaf label) of the deepest directed path from `u`;
/// ties resolved toward the smaller leaf label.
fn deepest_min_leaf(g: &DiGraph, u: VertexId) -> (u32, VertexId) {
    let children = g.out_neighbors(u);
    if children.is_empty() {
        return (1, u);
    }
    let mut best = (0u32, VertexId::MAX);
    for &c in children {
        let (d, leaf) = deepest_min_leaf(g, c);
        if d > best.0 || (d == best.0 && leaf < best.1) {
            best = (d, leaf);
        }
    }
    (best.0 + 1, best.1)
}

/// The smallest-labeled leaf reachable from `u` along directed edges.
fn smallest_reachable_leaf(g: &DiGraph, u: VertexId) -> VertexId {
    let mut best = VertexId::MAX;
    let mut stack = vec![u];
    while let Some(w) = stack.pop() {
        let children = g.out_neighbors(w);
        if children.is_empty() {
            best = best.min(w);
        } else {
            stack.extend_from_slice(children);
        }
    }
    best
}

/// Builds the n-vertex star rooted at vertex 1 under the given orientation.
pub fn build_star(n: usize, orient: Orientation) -> Result<DiGraph, GraphError> {
    if n == 0 {
        return Err(GraphError::Empty);
    }
    let edges: Vec<(VertexId, VertexId)> = (2..=n as VertexId)
        .map(|leaf| match orient {
            Orientation::Sink => (leaf, 1),
            Orientation::Source => (1, leaf),
        })
        .collect();
    let mut g = DiGraph::from_edges(n, &edges, Some(1))?;
    g.orient = Some(orient);
    Ok(g)
}

/// Orients an undirected tree toward (`Sink`) or away from (`Source`) `root`.
pub fn build_tree(
    n: usize,
    undirected_edges: &[(VertexId, VertexId)],
    root: VertexId,
    orient: Orientation,
) -> Result<DiGraph, GraphError> {
    if n == 0 {
        return Err(GraphError::Empty);
    }
    check_vertex(root, n)?;
    if undirected_edges.len() != n - 1 {
        return Err(GraphError::NotATree {
            n,
            reason: format!("expected {} edges, got {}", n - 1, undirected_edges.len()),
        });
    }
    let mut adj: Vec<Vec<VertexId>> = vec![Vec::new(); n];
    for &(u, v) in undirected_edges {
        check_vertex(u, n)?;
        check_vertex(v, n)?;
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        adj[(u - 1) as usize].push(v);
        adj[(v - 1) as usize].push(u);
    }
    // BFS from the root assigns parents; unreached vertices or a re-reached
    // vertex mean the input is disconnected or cyclic.
    let mut seen = vec![false; n];
    seen[(root - 1) as usize] = true;
    let mut queue = std::collections::VecDeque::from([root]);
    let mut directed: Vec<(VertexId, VertexId)> = Vec::with_capacity(n - 1);
    while let Some(w) = queue.pop_front() {
        for &x in &adj[(w - 1) as usize] {
            if seen[(x - 1) as usize] {
                continue;
            }
            seen[(x - 1) as usize] = true;
            match orient {
                Orientation::Sink => directed.push((x, w)),
                Orientation::Source => directed.push((w, x)),
            }
            queue.push_back(x);
        }
    }
    if directed.len() != n - 1 || !seen.iter().all(|&s| s) {
        return Err(GraphError::NotATree {
            n,
            reason: "edge list is disconnected or contains a cycle".into(),
        });
    }
    let mut g = DiGraph::from_edges(n, &directed, Some(root))?;
    if !g.is_tree_shape() {
        return Err(GraphError::NotATree {
            n,
            reason: "edge list contains a cycle".into(),
        });
    }
    g.orient = Some(orient);
    Ok(g)
}

/// A directed path with ordered, pairwise distinct vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathSeg {
    vertices: Vec<VertexId>,
}

impl PathSeg {
    /// Wraps an ordered vertex list; the caller asserts it is a directed path
    /// of the host graph.
    pub fn new(vertices: Vec<VertexId>) -> PathSeg {
        debug_assert!(!vertices.is_empty());
        PathSeg { vertices }
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn first(&self) -> VertexId {
        self.vertices[0]
    }

    pub fn last(&self) -> VertexId {
        *self.vertices.last().unwrap()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.vertices.contains(&v)
    }

    /// Position of `v` within the path, 0-based.
    pub fn position(&self, v: VertexId) -> Option<usize> {
        self.vertices.iter().position(|&w| w == v)
    }
}

impl fmt::Display for PathSeg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.vertices.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

// ---------------------------------------------------------------------------
// Text format: `n <N> root <Z> orient <sink|source>` then one `<u> <v>` line
// per directed edge; `#` starts a comment line.
// ---------------------------------------------------------------------------

impl DiGraph {
    pub fn parse(text: &str) -> Result<DiGraph, GraphError> {
        let mut header: Option<(usize, VertexId, Orientation)> = None;
        let mut edges: Vec<(VertexId, VertexId)> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let tokens: Vec<&str> = line.split_whitespace().collect();
            if header.is_none() {
                if tokens.len() != 6 || tokens[0] != "n" || tokens[2] != "root" || tokens[4] != "orient"
                {
                    return Err(GraphError::Parse {
                        line: line_no,
                        msg: format!("expected `n <N> root <Z> orient <sink|source>`, got `{line}`"),
                    });
                }
                let n: usize = tokens[1].parse().map_err(|_| GraphError::Parse {
                    line: line_no,
                    msg: format!("invalid vertex count `{}`", tokens[1]),
                })?;
                let z: VertexId = tokens[3].parse().map_err(|_| GraphError::Parse {
                    line: line_no,
                    msg: format!("invalid root `{}`", tokens[3]),
                })?;
                let orient: Orientation = tokens[5].parse().map_err(|e| GraphError::Parse {
                    line: line_no,
                    msg: e,
                })?;
                header = Some((n, z, orient));
            } else {
                if tokens.len() != 2 {
                    return Err(GraphError::Parse {
                        line: line_no,
                        msg: format!("expected `<u> <v>`, got `{line}`"),
                    });
                }
                let parse_v = |t: &str| -> Result<VertexId, GraphError> {
                    t.parse().map_err(|_| GraphError::Parse {
                        line: line_no,
                        msg: format!("invalid vertex `{t}`"),
                    })
                };
                edges.push((parse_v(tokens[0])?, parse_v(tokens[1])?));
            }
        }
        let (n, z, orient) = header.ok_or(GraphError::Parse {
            line: 0,
            msg: "missing header line".into(),
        })?;
        let mut g = DiGraph::from_edges(n, &edges, Some(z))?;
        let ok = match orient {
            Orientation::Sink => g.is_sink_tree(),
            Orientation::Source => g.is_source_tree(),
        };
        if !ok {
            return Err(GraphError::NotOriented {
                expected: match orient {
                    Orientation::Sink => "sink",
                    Orientation::Source => "source",
                },
            });
        }
        g.orient = Some(orient);
        Ok(g)
    }

    /// Renders the graph in the line-oriented text format. Requires a root
    /// and a tree orientation.
    pub fn to_text(&self) -> Result<String, GraphError> {
        let z = self.root.ok_or(GraphError::NoRoot)?;
        let orient = self.orient.or_else(|| {
            if self.is_sink_tree() {
                Some(Orientation::Sink)
            } else if self.is_source_tree() {
                Some(Orientation::Source)
            } else {
                None
            }
        });
        let orient = orient.ok_or(GraphError::NotOriented { expected: "sink or source" })?;
        let mut s = format!("n {} root {} orient {}\n", self.n, z, orient);
        for (u, v) in self.edges() {
            s.push_str(&format!("{u} {v}\n"));
        }
        Ok(s)
    }
}
