//! Maximal outerplanar graphs viewed through their triangles: recognition by
//! ear clipping, the dual tree (triangles sharing an edge), the clique graph
//! (triangles sharing a vertex), a 4-coloring in which every 4-cycle sees all
//! four colors, and the two transfers between the clique graph and the
//! original graph (dominating sets down, packings up).

use std::collections::{BTreeSet, HashMap};

use thiserror::Error;

use crate::graph::{Graph, GraphError, Vertex, VertexSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MopError {
    #[error("need at least 3 vertices, got {0}")]
    TooSmall(usize),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("expected {expected} edges, found {found}")]
    EdgeCount { expected: usize, found: usize },
    #[error("no vertex of degree 2 left to clip")]
    NoEar,
    #[error("degree-2 vertex {0} has nonadjacent neighbors")]
    EarNotTriangle(Vertex),
    #[error("edge {0}-{1} lies in more than two triangles")]
    CrowdedEdge(Vertex, Vertex),
    #[error("edges on a single triangle do not form a Hamiltonian cycle")]
    BoundaryNotHamiltonian,
    #[error("neighborhood of vertex {0} does not induce a path")]
    NeighborhoodNotPath(Vertex),
    #[error("node set does not dominate the clique graph")]
    NotCliqueDominating,
    #[error("node set is not a packing of the clique graph")]
    NotCliquePacking,
    #[error("node set is empty")]
    EmptyNodeSet,
    #[error("inconsistent inputs: {0}")]
    Inconsistent(&'static str),
    #[error("invariant violated: {0}")]
    Invariant(&'static str),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A recognized maximal outerplanar graph with its outer cycle and its
/// triangles (each sorted, the list sorted).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Triangulation {
    pub graph: Graph,
    pub boundary: Vec<Vertex>,
    pub triangles: Vec<[Vertex; 3]>,
}

impl Triangulation {
    /// Number of vertices of degree at most 3.
    pub fn low_degree_count(&self) -> usize {
        (0..self.graph.n()).filter(|&v| self.graph.degree(v) <= 3).count()
    }

    /// Vertices of a set of triangles.
    pub fn vertices_of(&self, nodes: &[usize]) -> VertexSet {
        VertexSet::new(self.graph.n(), nodes.iter().flat_map(|&i| self.triangles[i])).expect("triangle vertices in range")
    }
}

fn key(u: Vertex, v: Vertex) -> (Vertex, Vertex) {
    (u.min(v), u.max(v))
}

pub fn recognize_mop(g: &Graph) -> Result<Triangulation, MopError> {
    let n = g.n();
    if n < 3 {
        return Err(MopError::TooSmall(n));
    }
    if !g.is_connected() {
        return Err(MopError::Disconnected);
    }
    if g.m() != 2 * n - 3 {
        return Err(MopError::EdgeCount { expected: 2 * n - 3, found: g.m() });
    }

    let mut adj: Vec<BTreeSet<Vertex>> = (0..n).map(|v| g.neighbors(v).iter().copied().collect()).collect();
    let mut stack: Vec<Vertex> = (0..n).rev().filter(|&v| adj[v].len() == 2).collect();
    let mut removed = vec![false; n];
    let mut left = n;
    let mut triangles = Vec::with_capacity(n - 2);
    while left > 3 {
        let v = loop {
            let v = stack.pop().ok_or(MopError::NoEar)?;
            if !removed[v] && adj[v].len() == 2 {
                break v;
            }
        };
        let mut it = adj[v].iter().copied();
        let (a, b) = (it.next().expect("two neighbors"), it.next().expect("two neighbors"));
        if !adj[a].contains(&b) {
            return Err(MopError::EarNotTriangle(v));
        }
        let mut tri = [v, a, b];
        tri.sort_unstable();
        triangles.push(tri);
        removed[v] = true;
        left -= 1;
        for x in [a, b] {
            adj[x].remove(&v);
            if adj[x].len() == 2 {
                stack.push(x);
            }
        }
        adj[v].clear();
    }
    let rest: Vec<Vertex> = (0..n).filter(|&v| !removed[v]).collect();
    if !(g.has_edge(rest[0], rest[1]) && g.has_edge(rest[0], rest[2]) && g.has_edge(rest[1], rest[2])) {
        return Err(MopError::EarNotTriangle(rest[0]));
    }
    triangles.push([rest[0], rest[1], rest[2]]);
    triangles.sort_unstable();

    let mut count: HashMap<(Vertex, Vertex), usize> = HashMap::new();
    for t in &triangles {
        for (u, v) in [(t[0], t[1]), (t[0], t[2]), (t[1], t[2])] {
            *count.entry((u, v)).or_default() += 1;
        }
    }
    if let Some((&(u, v), _)) = count.iter().filter(|(_, &c)| c > 2).min() {
        return Err(MopError::CrowdedEdge(u, v));
    }
    let boundary = boundary_cycle(n, count.iter().filter(|(_, &c)| c == 1).map(|(&e, _)| e))?;

    for v in 0..n {
        let (sub, _) = g.induced_subgraph(g.neighbors(v));
        if !(sub.is_connected() && sub.m() + 1 == sub.n() && sub.max_degree() <= 2) {
            return Err(MopError::NeighborhoodNotPath(v));
        }
    }
    Ok(Triangulation { graph: g.clone(), boundary, triangles })
}

fn boundary_cycle<I: Iterator<Item = (Vertex, Vertex)>>(n: usize, edges: I) -> Result<Vec<Vertex>, MopError> {
    let mut nb = vec![Vec::new(); n];
    for (u, v) in edges {
        nb[u].push(v);
        nb[v].push(u);
    }
    if nb.iter().any(|l| l.len() != 2) {
        return Err(MopError::BoundaryNotHamiltonian);
    }
    for l in &mut nb {
        l.sort_unstable();
    }
    let mut cycle = vec![0];
    let (mut prev, mut cur) = (0, nb[0][0]);
    while cur != 0 {
        cycle.push(cur);
        let next = if nb[cur][0] == prev { nb[cur][1] } else { nb[cur][0] };
        prev = cur;
        cur = next;
    }
    if cycle.len() != n {
        return Err(MopError::BoundaryNotHamiltonian);
    }
    Ok(cycle)
}

/// Triangles as nodes, joined when they share a graph edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualTree {
    pub graph: Graph,
    /// Shared graph edge of each dual edge, keyed by the ordered node pair.
    pub shared: HashMap<(usize, usize), (Vertex, Vertex)>,
}

/// The dual tree hung from a root node. `height` is the height of the
/// subtree below each node (leaves have height 0).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootedDual {
    pub root: usize,
    pub parent: Vec<Option<usize>>,
    pub children: Vec<Vec<usize>>,
    pub height: Vec<usize>,
    /// Nodes in BFS order from the root.
    pub order: Vec<usize>,
}

impl DualTree {
    pub fn shared_edge(&self, a: usize, b: usize) -> Option<(Vertex, Vertex)> {
        self.shared.get(&key(a, b)).copied()
    }

    pub fn rooted(&self, root: usize) -> RootedDual {
        let k = self.graph.n();
        let mut parent = vec![None; k];
        let mut children = vec![Vec::new(); k];
        let mut seen = vec![false; k];
        let mut order = vec![root];
        seen[root] = true;
        let mut i = 0;
        while i < order.len() {
            let u = order[i];
            i += 1;
            for &w in self.graph.neighbors(u) {
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = Some(u);
                    children[u].push(w);
                    order.push(w);
                }
            }
        }
        let mut height = vec![0; k];
        for &u in order.iter().rev() {
            if let Some(p) = parent[u] {
                height[p] = height[p].max(height[u] + 1);
            }
        }
        RootedDual { root, parent, children, height, order }
    }
}

fn triangles_by_edge(t: &Triangulation) -> HashMap<(Vertex, Vertex), Vec<usize>> {
    let mut by_edge: HashMap<(Vertex, Vertex), Vec<usize>> = HashMap::new();
    for (i, tri) in t.triangles.iter().enumerate() {
        for (u, v) in [(tri[0], tri[1]), (tri[0], tri[2]), (tri[1], tri[2])] {
            by_edge.entry((u, v)).or_default().push(i);
        }
    }
    by_edge
}

pub fn build_dual(t: &Triangulation) -> DualTree {
    let mut shared = HashMap::new();
    for (e, tris) in triangles_by_edge(t) {
        if let [a, b] = tris[..] {
            shared.insert(key(a, b), e);
        }
    }
    let graph = Graph::from_edges(t.triangles.len(), shared.keys().copied()).expect("dual edges are simple");
    assert!(graph.is_connected() && graph.m() + 1 == graph.n(), "dual of a triangulation is a tree");
    DualTree { graph, shared }
}

/// Triangles as nodes, joined when they share at least one vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliqueGraph {
    pub graph: Graph,
}

pub fn build_clique_graph(t: &Triangulation) -> CliqueGraph {
    let mut by_vertex = vec![Vec::new(); t.graph.n()];
    for (i, tri) in t.triangles.iter().enumerate() {
        for &v in tri {
            by_vertex[v].push(i);
        }
    }
    let mut edges = BTreeSet::new();
    for list in &by_vertex {
        for (i, &a) in list.iter().enumerate() {
            for &b in &list[i + 1..] {
                edges.insert(key(a, b));
            }
        }
    }
    CliqueGraph { graph: Graph::from_edges(t.triangles.len(), edges).expect("clique graph edges are simple") }
}

/// Colors in `1..=4`, one per vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FourColoring {
    pub colors: Vec<u8>,
}

fn third(tri: &[Vertex; 3], a: Vertex, b: Vertex) -> Vertex {
    *tri.iter().find(|&&x| x != a && x != b).expect("triangle has a third vertex")
}

/// Colors the root triangle 1, 2, 3 and gives each newly reached vertex the
/// color missing from the shared edge and the parent's apex.
pub fn tokunaga_color(t: &Triangulation) -> Result<FourColoring, MopError> {
    let dual = build_dual(t);
    let rooted = dual.rooted(0);
    let mut colors = vec![0u8; t.graph.n()];
    for (i, &v) in t.triangles[0].iter().enumerate() {
        colors[v] = i as u8 + 1;
    }
    for &u in &rooted.order[1..] {
        let p = rooted.parent[u].expect("non-root node has a parent");
        let (a, b) = dual.shared_edge(u, p).expect("tree edge is shared");
        let d = third(&t.triangles[p], a, b);
        let c = third(&t.triangles[u], a, b);
        if colors[c] != 0 {
            return Err(MopError::Invariant("vertex reached twice while coloring"));
        }
        colors[c] = (1..=4u8).find(|x| ![colors[a], colors[b], colors[d]].contains(x)).expect("one color is free");
    }
    let coloring = FourColoring { colors };
    if !check_four_coloring(t, &dual, &coloring) {
        return Err(MopError::Invariant("coloring misses a color on some 4-cycle"));
    }
    Ok(coloring)
}

/// Proper, uses colors 1..=4, and every pair of triangles sharing an edge
/// carries all four colors.
pub fn check_four_coloring(t: &Triangulation, dual: &DualTree, coloring: &FourColoring) -> bool {
    let c = &coloring.colors;
    if c.len() != t.graph.n() || c.iter().any(|&x| !(1..=4).contains(&x)) {
        return false;
    }
    if t.graph.edges().any(|(u, v)| c[u] == c[v]) {
        return false;
    }
    dual.shared.iter().all(|(&(a, b), &(x, y))| {
        let seen: BTreeSet<u8> =
            [x, y, third(&t.triangles[a], x, y), third(&t.triangles[b], x, y)].iter().map(|&v| c[v]).collect();
        seen.len() == 4
    })
}

/// Union of the vertices of a dominating node set of the clique graph; it
/// dominates the original graph.
pub fn project_dominating(t: &Triangulation, cg: &CliqueGraph, nodes: &VertexSet) -> Result<VertexSet, MopError> {
    if nodes.universe() != cg.graph.n() || !cg.graph.is_dominating(nodes.as_slice()) {
        return Err(MopError::NotCliqueDominating);
    }
    let x = t.vertices_of(nodes.as_slice());
    if !t.graph.is_dominating(x.as_slice()) {
        return Err(MopError::Invariant("projected set does not dominate"));
    }
    if x.len() > 3 * nodes.len() {
        return Err(MopError::Invariant("projected set larger than three per node"));
    }
    Ok(x)
}

/// The color triples used by the averaging step.
pub const COLOR_TRIPLES: [[u8; 3]; 4] = [[1, 2, 3], [1, 2, 4], [1, 3, 4], [2, 3, 4]];

/// For each color triple, the part of `x` in those colors together with
/// the vertices it leaves undominated.
pub fn averaged_candidates(t: &Triangulation, x: &VertexSet, coloring: &FourColoring) -> Result<Vec<VertexSet>, MopError> {
    let g = &t.graph;
    if x.universe() != g.n() || coloring.colors.len() != g.n() {
        return Err(MopError::Inconsistent("sizes differ from the graph"));
    }
    if !g.is_dominating(x.as_slice()) {
        return Err(MopError::Inconsistent("projected set does not dominate"));
    }
    COLOR_TRIPLES
        .iter()
        .map(|triple| {
            let c: Vec<Vertex> = x.iter().filter(|&v| triple.contains(&coloring.colors[v])).collect();
            let u = g.undominated_by(&c);
            let set = VertexSet::new(g.n(), c.into_iter().chain(u))?;
            if !g.is_dominating(set.as_slice()) {
                return Err(MopError::Invariant("averaged candidate does not dominate"));
            }
            Ok(set)
        })
        .collect()
}

/// Smallest of the four averaged candidates; at most (3|X| + t)/4 where t
/// counts vertices of degree at most 3.
pub fn averaged_dominating(t: &Triangulation, x: &VertexSet, coloring: &FourColoring) -> Result<VertexSet, MopError> {
    let best = averaged_candidates(t, x, coloring)?
        .into_iter()
        .min_by_key(VertexSet::len)
        .expect("four candidates");
    if 4 * best.len() > 3 * x.len() + t.low_degree_count() {
        return Err(MopError::Invariant("averaged set exceeds (3|X| + t)/4"));
    }
    Ok(best)
}

/// Lifts a packing of the clique graph to a packing of the same size in the
/// graph, one vertex per node, following the rooted dual tree.
pub fn lift_packing(t: &Triangulation, dual: &DualTree, cg: &CliqueGraph, z: &VertexSet) -> Result<VertexSet, MopError> {
    let k = t.triangles.len();
    if z.universe() != k {
        return Err(MopError::Inconsistent("node set universe differs from the triangle count"));
    }
    let root = z.iter().next().ok_or(MopError::EmptyNodeSet)?;
    if !cg.graph.is_packing(z.as_slice()) {
        return Err(MopError::NotCliquePacking);
    }
    let rooted = dual.rooted(root);

    // nearest strict Z-descendants of each Z node
    let mut nearest: Vec<Vec<usize>> = vec![Vec::new(); k];
    for u in z.iter() {
        let mut stack = rooted.children[u].clone();
        while let Some(w) = stack.pop() {
            if z.contains(w) {
                nearest[u].push(w);
            } else {
                stack.extend(&rooted.children[w]);
            }
        }
    }

    let apex = |u: usize| -> Vertex {
        match rooted.parent[u] {
            Some(p) => {
                let (a, b) = dual.shared_edge(u, p).expect("tree edge is shared");
                third(&t.triangles[u], a, b)
            }
            None => t.triangles[u][0],
        }
    };

    // children before parents: reverse BFS order restricted to Z
    let mut lifted: Vec<Option<Vec<Vertex>>> = vec![None; k];
    for &u in rooted.order.iter().rev().filter(|&&u| z.contains(u)) {
        let mut y = vec![apex(u)];
        for &q in &nearest[u] {
            y.extend(lifted[q].take().expect("descendant lifted first"));
        }
        if !t.graph.is_packing(&y) {
            return Err(MopError::Invariant("lifted set is not a packing"));
        }
        if let Some(p) = rooted.parent[u] {
            let (a, b) = dual.shared_edge(u, p).expect("tree edge is shared");
            if y.contains(&a) || y.contains(&b) {
                return Err(MopError::Invariant("lifted set meets the parent edge"));
            }
        }
        lifted[u] = Some(y);
    }
    let y = VertexSet::new(t.graph.n(), lifted[root].take().expect("root lifted"))?;
    if y.len() != z.len() || !t.graph.is_packing(y.as_slice()) {
        return Err(MopError::Invariant("lift lost a node"));
    }
    Ok(y)
}
