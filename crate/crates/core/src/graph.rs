//! Simple undirected graphs with dense integer vertex ids.

use std::collections::VecDeque;
use std::fmt;

use thiserror::Error;

pub type Vertex = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    InvalidVertex { vertex: Vertex, n: usize },
    #[error("self-loop at vertex {0}")]
    Loop(Vertex),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(Vertex, Vertex),
    #[error("empty vertex set")]
    EmptySet,
    #[error("graph is not bipartite (odd cycle through vertex {0})")]
    NotBipartite(Vertex),
    #[error("vertices {0} and {1} of the chosen side are adjacent")]
    SideNotIndependent(Vertex, Vertex),
    #[error("vertex set universe {set} does not match graph order {graph}")]
    UniverseMismatch { set: usize, graph: usize },
}

/// Shortest-path length; `Infinite` sorts after every finite value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Distance {
    Finite(usize),
    Infinite,
}

impl Distance {
    pub fn finite(self) -> Option<usize> {
        match self {
            Distance::Finite(d) => Some(d),
            Distance::Infinite => None,
        }
    }

    pub fn at_least(self, k: usize) -> bool {
        match self {
            Distance::Finite(d) => d >= k,
            Distance::Infinite => true,
        }
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Finite(d) => write!(f, "{d}"),
            Distance::Infinite => write!(f, "inf"),
        }
    }
}

/// Sorted, duplicate-free set of vertex ids drawn from `0..universe`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct VertexSet {
    members: Vec<Vertex>,
    universe: usize,
}

impl VertexSet {
    pub fn new<I: IntoIterator<Item = Vertex>>(universe: usize, members: I) -> Result<Self, GraphError> {
        let mut members: Vec<Vertex> = members.into_iter().collect();
        if let Some(&v) = members.iter().find(|&&v| v >= universe) {
            return Err(GraphError::InvalidVertex { vertex: v, n: universe });
        }
        members.sort_unstable();
        members.dedup();
        Ok(VertexSet { members, universe })
    }

    pub fn empty(universe: usize) -> Self {
        VertexSet { members: Vec::new(), universe }
    }

    pub fn full(universe: usize) -> Self {
        VertexSet { members: (0..universe).collect(), universe }
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.members.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.members.iter().copied()
    }

    pub fn as_slice(&self) -> &[Vertex] {
        &self.members
    }

    pub fn into_vec(self) -> Vec<Vertex> {
        self.members
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        let mut members = self.members.clone();
        members.extend_from_slice(&other.members);
        members.sort_unstable();
        members.dedup();
        VertexSet { members, universe: self.universe.max(other.universe) }
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        VertexSet {
            members: self.members.iter().copied().filter(|&v| !other.contains(v)).collect(),
            universe: self.universe,
        }
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.members.iter().all(|&v| other.contains(v))
    }
}

impl AsRef<[Vertex]> for VertexSet {
    fn as_ref(&self) -> &[Vertex] {
        &self.members
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.members.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    X,
    Y,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::X => Side::Y,
            Side::Y => Side::X,
        }
    }
}

/// Two-coloring of a bipartite graph; every edge joins `side_x` to `side_y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteLabeling {
    pub side_x: VertexSet,
    pub side_y: VertexSet,
}

impl BipartiteLabeling {
    pub fn side(&self, side: Side) -> &VertexSet {
        match side {
            Side::X => &self.side_x,
            Side::Y => &self.side_y,
        }
    }

    pub fn side_of(&self, v: Vertex) -> Option<Side> {
        if self.side_x.contains(v) {
            Some(Side::X)
        } else if self.side_y.contains(v) {
            Some(Side::Y)
        } else {
            None
        }
    }

    /// Checks the labeling partitions `g` and that every edge crosses sides.
    pub fn is_valid_for(&self, g: &Graph) -> bool {
        if self.side_x.len() + self.side_y.len() != g.n() {
            return false;
        }
        (0..g.n()).all(|v| match self.side_of(v) {
            Some(s) => g.neighbors(v).iter().all(|&u| self.side_of(u) == Some(s.other())),
            None => false,
        })
    }
}

/// The graph on one bipartition side whose edges join vertices sharing a
/// neighbor, with the id maps needed to move vertex sets between the two.
#[derive(Debug, Clone)]
pub struct RestrictedSquare {
    pub graph: Graph,
    /// local id -> original id
    pub to_original: Vec<Vertex>,
    /// original id -> local id
    pub to_local: Vec<Option<Vertex>>,
}

impl RestrictedSquare {
    pub fn lift(&self, local: &[Vertex]) -> VertexSet {
        VertexSet::new(self.to_local.len(), local.iter().map(|&v| self.to_original[v]))
            .expect("local ids map into the original universe")
    }

    pub fn project(&self, original: &[Vertex]) -> Option<VertexSet> {
        let local: Option<Vec<Vertex>> = original.iter().map(|&v| self.to_local.get(v).copied().flatten()).collect();
        VertexSet::new(self.graph.n(), local?).ok()
    }
}

/// Immutable simple undirected graph; neighbor lists are strictly ascending.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<Vertex>>,
    m: usize,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph { adj: vec![Vec::new(); n], m: 0 }
    }

    /// Builds a graph, rejecting loops, parallel edges and out-of-range ids.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut adj = vec![Vec::new(); n];
        let mut m = 0;
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::InvalidVertex { vertex: w, n });
                }
            }
            if u == v {
                return Err(GraphError::Loop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
            m += 1;
        }
        for (u, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(GraphError::DuplicateEdge(u.min(w[0]), u.max(w[0])));
            }
        }
        Ok(Graph { adj, m })
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn is_regular(&self, d: usize) -> bool {
        self.adj.iter().all(|a| a.len() == d)
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn closed_neighborhood(&self, v: Vertex) -> Vec<Vertex> {
        let mut out = Vec::with_capacity(self.adj[v].len() + 1);
        let pos = self.adj[v].partition_point(|&u| u < v);
        out.extend_from_slice(&self.adj[v][..pos]);
        out.push(v);
        out.extend_from_slice(&self.adj[v][pos..]);
        out
    }

    /// Neighbors of a vertex set, excluding the set itself.
    pub fn open_neighborhood_of_set(&self, set: &[Vertex]) -> VertexSet {
        let mut mark = vec![false; self.n()];
        for &v in set {
            for &u in &self.adj[v] {
                mark[u] = true;
            }
        }
        for &v in set {
            mark[v] = false;
        }
        VertexSet::new(self.n(), (0..self.n()).filter(|&v| mark[v])).expect("ids in range")
    }

    /// Union of neighborhoods of `set` (members of `set` included only if adjacent to another member).
    pub fn neighborhood_union(&self, set: &[Vertex]) -> VertexSet {
        let mut mark = vec![false; self.n()];
        for &v in set {
            for &u in &self.adj[v] {
                mark[u] = true;
            }
        }
        VertexSet::new(self.n(), (0..self.n()).filter(|&v| mark[v])).expect("ids in range")
    }

    fn check_vertex(&self, v: Vertex) -> Result<(), GraphError> {
        if v < self.n() {
            Ok(())
        } else {
            Err(GraphError::InvalidVertex { vertex: v, n: self.n() })
        }
    }

    /// BFS distances from all `sources` simultaneously.
    pub fn bfs_from(&self, sources: &[Vertex]) -> Vec<Distance> {
        let mut dist = vec![Distance::Infinite; self.n()];
        let mut queue = VecDeque::new();
        for &s in sources {
            if dist[s] == Distance::Infinite {
                dist[s] = Distance::Finite(0);
                queue.push_back(s);
            }
        }
        while let Some(u) = queue.pop_front() {
            let Distance::Finite(du) = dist[u] else { unreachable!() };
            for &w in &self.adj[u] {
                if dist[w] == Distance::Infinite {
                    dist[w] = Distance::Finite(du + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn distance(&self, u: Vertex, v: Vertex) -> Result<Distance, GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Ok(Distance::Finite(0));
        }
        Ok(self.bfs_from(&[u])[v])
    }

    /// Minimum distance between two nonempty vertex sets (multi-source BFS).
    pub fn set_distance(&self, a: &[Vertex], b: &[Vertex]) -> Result<Distance, GraphError> {
        if a.is_empty() || b.is_empty() {
            return Err(GraphError::EmptySet);
        }
        for &v in a.iter().chain(b) {
            self.check_vertex(v)?;
        }
        let dist = self.bfs_from(a);
        Ok(b.iter().map(|&v| dist[v]).min().expect("b nonempty"))
    }

    /// Connected components, each sorted, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let mut seen = vec![false; self.n()];
        let mut comps = Vec::new();
        for s in 0..self.n() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                let u = comp[i];
                i += 1;
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.n() <= 1 || self.components().len() == 1
    }

    /// Induced subgraph on `vertices` (relabelled in the given order) and the
    /// new-to-old id map.
    pub fn induced_subgraph(&self, vertices: &[Vertex]) -> (Graph, Vec<Vertex>) {
        let mut local = vec![usize::MAX; self.n()];
        for (i, &v) in vertices.iter().enumerate() {
            local[v] = i;
        }
        let mut adj = vec![Vec::new(); vertices.len()];
        let mut m = 0;
        for (i, &v) in vertices.iter().enumerate() {
            for &w in &self.adj[v] {
                if local[w] != usize::MAX {
                    adj[i].push(local[w]);
                    if local[w] > i {
                        m += 1;
                    }
                }
            }
            adj[i].sort_unstable();
        }
        (Graph { adj, m }, vertices.to_vec())
    }

    /// Graph with the given vertices removed (remaining ids keep their relative order).
    pub fn without(&self, removed: &[Vertex]) -> (Graph, Vec<Vertex>) {
        let mut drop = vec![false; self.n()];
        for &v in removed {
            drop[v] = true;
        }
        let keep: Vec<Vertex> = (0..self.n()).filter(|&v| !drop[v]).collect();
        self.induced_subgraph(&keep)
    }

    /// True iff members of `s` pairwise lie at distance at least 3, i.e. their
    /// closed neighborhoods are pairwise disjoint.
    pub fn is_packing(&self, s: &[Vertex]) -> bool {
        let mut covered = vec![false; self.n()];
        for &v in s {
            if v >= self.n() {
                return false;
            }
            for u in self.closed_neighborhood(v) {
                if covered[u] {
                    return false;
                }
                covered[u] = true;
            }
        }
        true
    }

    pub fn is_dominating(&self, s: &[Vertex]) -> bool {
        let mut covered = vec![false; self.n()];
        for &v in s {
            if v >= self.n() {
                return false;
            }
            covered[v] = true;
            for &u in &self.adj[v] {
                covered[u] = true;
            }
        }
        covered.into_iter().all(|c| c)
    }

    /// Vertices of `0..n` not dominated by `s`.
    pub fn undominated_by(&self, s: &[Vertex]) -> Vec<Vertex> {
        let mut covered = vec![false; self.n()];
        for &v in s {
            covered[v] = true;
            for &u in &self.adj[v] {
                covered[u] = true;
            }
        }
        (0..self.n()).filter(|&v| !covered[v]).collect()
    }

    pub fn is_independent(&self, s: &[Vertex]) -> bool {
        s.iter().all(|&v| self.adj[v].iter().all(|&u| s.binary_search(&u).is_err()))
    }

    /// BFS 2-coloring; the smallest vertex of each component goes to side X.
    pub fn bipartition(&self) -> Result<BipartiteLabeling, GraphError> {
        let mut color: Vec<Option<Side>> = vec![None; self.n()];
        for s in 0..self.n() {
            if color[s].is_some() {
                continue;
            }
            color[s] = Some(Side::X);
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                let cu = color[u].expect("queued vertices are colored");
                for &w in &self.adj[u] {
                    match color[w] {
                        None => {
                            color[w] = Some(cu.other());
                            queue.push_back(w);
                        }
                        Some(cw) if cw == cu => return Err(GraphError::NotBipartite(w)),
                        Some(_) => {}
                    }
                }
            }
        }
        let n = self.n();
        let pick = |side| VertexSet::new(n, (0..n).filter(|&v| color[v] == Some(side))).expect("in range");
        Ok(BipartiteLabeling { side_x: pick(Side::X), side_y: pick(Side::Y) })
    }

    /// The square of the graph restricted to an independent vertex set:
    /// `x ~ x'` iff they share a neighbor. Local ids follow the order of `side`.
    pub fn square_restricted(&self, side: &VertexSet) -> Result<RestrictedSquare, GraphError> {
        if side.universe() != self.n() {
            return Err(GraphError::UniverseMismatch { set: side.universe(), graph: self.n() });
        }
        for v in side.iter() {
            if let Some(&u) = self.adj[v].iter().find(|&&u| side.contains(u)) {
                return Err(GraphError::SideNotIndependent(v.min(u), v.max(u)));
            }
        }
        let mut to_local = vec![None; self.n()];
        for (i, v) in side.iter().enumerate() {
            to_local[v] = Some(i);
        }
        let mut edges = Vec::new();
        for (i, x) in side.iter().enumerate() {
            let mut seen: Vec<Vertex> = self.adj[x]
                .iter()
                .flat_map(|&y| self.adj[y].iter().copied())
                .filter_map(|x2| to_local[x2])
                .filter(|&j| j > i)
                .collect();
            seen.sort_unstable();
            seen.dedup();
            edges.extend(seen.into_iter().map(|j| (i, j)));
        }
        let graph = Graph::from_edges(side.len(), edges).expect("square edges are simple");
        Ok(RestrictedSquare { graph, to_original: side.as_slice().to_vec(), to_local })
    }

    /// Graph on the same vertices joining every pair at distance 1 or 2.
    pub fn distance_two_conflicts(&self) -> Graph {
        let mut edges = Vec::new();
        let mut mark = vec![usize::MAX; self.n()];
        for u in 0..self.n() {
            for &w in &self.adj[u] {
                mark[w] = u;
                for &z in &self.adj[w] {
                    mark[z] = u;
                }
            }
            edges.extend(mark.iter().enumerate().skip(u + 1).filter(|&(_, &m)| m == u).map(|(v, _)| (u, v)));
        }
        Graph::from_edges(self.n(), edges).expect("conflict edges are simple")
    }

    /// Biconnected components as sorted vertex lists (a bridge is a block of
    /// two vertices, an isolated vertex a block of one), plus the cut vertices.
    pub fn blocks(&self) -> (Vec<Vec<Vertex>>, Vec<Vertex>) {
        let n = self.n();
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0; n];
        let mut is_cut = vec![false; n];
        let mut blocks = Vec::new();
        let mut edge_stack: Vec<(Vertex, Vertex)> = Vec::new();
        let mut time = 0;
        for root in 0..n {
            if disc[root] != usize::MAX {
                continue;
            }
            if self.adj[root].is_empty() {
                disc[root] = time;
                time += 1;
                blocks.push(vec![root]);
                continue;
            }
            disc[root] = time;
            low[root] = time;
            time += 1;
            let mut root_children = 0;
            // (vertex, parent, next neighbor index)
            let mut stack = vec![(root, usize::MAX, 0usize)];
            while let Some(&mut (v, parent, ref mut idx)) = stack.last_mut() {
                if let Some(&w) = self.adj[v].get(*idx) {
                    *idx += 1;
                    if disc[w] == usize::MAX {
                        edge_stack.push((v, w));
                        disc[w] = time;
                        low[w] = time;
                        time += 1;
                        stack.push((w, v, 0));
                    } else if w != parent && disc[w] < disc[v] {
                        edge_stack.push((v, w));
                        low[v] = low[v].min(disc[w]);
                    }
                    continue;
                }
                stack.pop();
                if parent == usize::MAX {
                    continue;
                }
                low[parent] = low[parent].min(low[v]);
                if low[v] >= disc[parent] {
                    if parent == root {
                        root_children += 1;
                    } else {
                        is_cut[parent] = true;
                    }
                    let mut block = Vec::new();
                    while let Some((a, b)) = edge_stack.pop() {
                        block.push(a);
                        block.push(b);
                        if (a, b) == (parent, v) {
                            break;
                        }
                    }
                    block.sort_unstable();
                    block.dedup();
                    blocks.push(block);
                }
            }
            if root_children > 1 {
                is_cut[root] = true;
            }
        }
        let cuts = (0..n).filter(|&v| is_cut[v]).collect();
        (blocks, cuts)
    }

    /// A proper coloring check: adjacent vertices get distinct colors.
    pub fn is_proper_coloring(&self, colors: &[usize]) -> bool {
        colors.len() == self.n() && self.edges().all(|(u, v)| colors[u] != colors[v])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    fn k33() -> Graph {
        Graph::from_edges(6, (0..3).flat_map(|a| (3..6).map(move |b| (a, b)))).unwrap()
    }

    fn brute_pair_distance_ok(g: &Graph, s: &[Vertex]) -> bool {
        s.iter().enumerate().all(|(i, &u)| s[i + 1..].iter().all(|&v| g.distance(u, v).unwrap().at_least(3)))
    }

    #[test]
    fn rejects_loops_duplicates_and_bad_ids() {
        assert_eq!(Graph::from_edges(3, [(0, 0)]), Err(GraphError::Loop(0)));
        assert_eq!(Graph::from_edges(3, [(0, 1), (1, 0)]), Err(GraphError::DuplicateEdge(0, 1)));
        assert!(matches!(Graph::from_edges(3, [(0, 3)]), Err(GraphError::InvalidVertex { vertex: 3, .. })));
    }

    #[test]
    fn distances() {
        let p4 = path(4);
        assert_eq!(p4.distance(0, 3).unwrap(), Distance::Finite(3));
        assert_eq!(p4.distance(2, 2).unwrap(), Distance::Finite(0));
        assert_eq!(cycle(4).distance(0, 2).unwrap(), Distance::Finite(2));
        assert!(p4.distance(0, 4).is_err());
        let two = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(two.distance(0, 3).unwrap(), Distance::Infinite);
    }

    #[test]
    fn set_distances() {
        let g = path(5);
        assert_eq!(g.set_distance(&[2], &[2]).unwrap(), Distance::Finite(0));
        assert_eq!(g.set_distance(&[0, 4], &[2]).unwrap(), Distance::Finite(2));
        assert_eq!(g.set_distance(&[], &[2]), Err(GraphError::EmptySet));
        let two = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(two.set_distance(&[0, 1], &[2, 3]).unwrap(), Distance::Infinite);
    }

    #[test]
    fn packing_and_domination_checks() {
        let c4 = cycle(4);
        assert!(c4.is_packing(&[1]));
        assert!(!c4.is_packing(&[0, 2]));
        assert!(c4.is_packing(&[]));
        assert!(path(7).is_packing(&[0, 3, 6]));
        assert!(!c4.is_dominating(&[0]));
        assert!(c4.is_dominating(&[0, 1]));
        let star = Graph::from_edges(6, (1..6).map(|i| (0, i))).unwrap();
        assert!(star.is_dominating(&[0]));
        assert!(star.is_dominating(&(0..6).collect::<Vec<_>>()));
    }

    #[test]
    fn bipartition_cases() {
        let lab = k33().bipartition().unwrap();
        assert_eq!((lab.side_x.len(), lab.side_y.len()), (3, 3));
        assert!(lab.side_x.contains(0));
        assert!(lab.is_valid_for(&k33()));
        assert!(matches!(cycle(5).bipartition(), Err(GraphError::NotBipartite(_))));
    }

    #[test]
    fn square_restricted_examples() {
        let g = k33();
        let sq = g.square_restricted(&VertexSet::new(6, 0..3).unwrap()).unwrap();
        assert_eq!(sq.graph.m(), 3);
        assert!(sq.graph.is_regular(2));

        let p5 = path(5);
        let sq = p5.square_restricted(&VertexSet::new(5, [0, 2, 4]).unwrap()).unwrap();
        assert_eq!(sq.graph.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2)]);
        assert_eq!(sq.lift(&[0, 2]).as_slice(), &[0, 4]);

        let single = p5.square_restricted(&VertexSet::new(5, [2]).unwrap()).unwrap();
        assert_eq!((single.graph.n(), single.graph.m()), (1, 0));

        assert!(matches!(
            p5.square_restricted(&VertexSet::new(5, [0, 1]).unwrap()),
            Err(GraphError::SideNotIndependent(0, 1))
        ));
    }

    #[test]
    fn packing_checker_matches_pairwise_bfs() {
        let g = path(9);
        for mask in 0u32..(1 << 9) {
            let s: Vec<Vertex> = (0..9).filter(|&i| mask >> i & 1 == 1).collect();
            assert_eq!(g.is_packing(&s), brute_pair_distance_ok(&g, &s));
        }
    }

    #[test]
    fn vertex_set_basics() {
        let s = VertexSet::new(5, [3, 1, 3]).unwrap();
        assert_eq!(s.as_slice(), &[1, 3]);
        assert!(VertexSet::new(3, [3]).is_err());
        assert_eq!(s.to_string(), "{1,3}");
        let t = VertexSet::new(5, [0, 1]).unwrap();
        assert_eq!(s.union(&t).as_slice(), &[0, 1, 3]);
        assert_eq!(s.difference(&t).as_slice(), &[3]);
    }

    #[test]
    fn conflict_graph_joins_distance_two() {
        let g = path(4);
        let c = g.distance_two_conflicts();
        assert_eq!(c.edges().collect::<Vec<_>>(), vec![(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]);
    }

    #[test]
    fn blocks_and_cut_vertices() {
        // two triangles joined at vertex 2, plus a pendant edge 4-5 and an isolated 6
        let g = Graph::from_edges(7, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4), (4, 5)]).unwrap();
        let (mut blocks, cuts) = g.blocks();
        blocks.sort();
        assert_eq!(blocks, vec![vec![0, 1, 2], vec![2, 3, 4], vec![4, 5], vec![6]]);
        assert_eq!(cuts, vec![2, 4]);
        let (blocks, cuts) = cycle(6).blocks();
        assert_eq!(blocks, vec![vec![0, 1, 2, 3, 4, 5]]);
        assert!(cuts.is_empty());
        let (blocks, cuts) = path(4).blocks();
        assert_eq!(blocks.len(), 3);
        assert_eq!(cuts, vec![1, 2]);
    }
}
