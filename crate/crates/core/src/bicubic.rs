//! Packing constructions for bicubic (connected, cubic, bipartite) graphs:
//! a constructive Brooks coloring, side packings from the restricted square,
//! and the P, Q, R, S, T, W layering that turns a maximal one-side packing
//! into a larger packing of the whole graph.

use std::collections::VecDeque;

use thiserror::Error;

use crate::graph::{BipartiteLabeling, Graph, GraphError, Side, Vertex, VertexSet};
use crate::harness::{self, EvalOptions, Facts};
use crate::io::ScanRecord;
use crate::solvers::SolveError;

/// Smallest order for which the restricted square of a side is guaranteed
/// not to be complete.
pub const SIDE_PACKING_MIN_ORDER: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BicubicError {
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph is not cubic")]
    NotCubic,
    #[error("labeling is not a bipartition of the graph")]
    BadLabeling,
    #[error("order {0} is below {SIDE_PACKING_MIN_ORDER}")]
    TooSmall(usize),
    #[error("set is not a packing inside one side")]
    NotSidePacking,
    #[error("packing is not maximal: vertex {0} can be added")]
    NotMaximal(Vertex),
    #[error("invariant violated: {0}")]
    Invariant(&'static str),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Solve(#[from] SolveError),
}

/// Proper coloring with colors `0..count`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BrooksColoring {
    pub colors: Vec<usize>,
    pub count: usize,
}

impl BrooksColoring {
    fn from_colors(colors: Vec<usize>) -> Self {
        let count = colors.iter().max().map_or(0, |&c| c + 1);
        BrooksColoring { colors, count }
    }

    /// Color classes indexed by color.
    pub fn classes(&self) -> Vec<Vec<Vertex>> {
        let mut out = vec![Vec::new(); self.count];
        for (v, &c) in self.colors.iter().enumerate() {
            out[c].push(v);
        }
        out
    }
}

fn is_complete(g: &Graph) -> bool {
    let n = g.n();
    g.m() == n * n.saturating_sub(1) / 2
}

fn smallest_free(g: &Graph, colors: &[Option<usize>], v: Vertex) -> usize {
    let mut used: Vec<usize> = g.neighbors(v).iter().filter_map(|&w| colors[w]).collect();
    used.sort_unstable();
    used.dedup();
    used.iter().enumerate().find(|&(i, &c)| i != c).map_or(used.len(), |(i, _)| i)
}

/// BFS order from `root` over vertices not in `skip`.
fn bfs_order(g: &Graph, root: Vertex, skip: &[Vertex]) -> Vec<Vertex> {
    let mut seen = vec![false; g.n()];
    for &s in skip {
        seen[s] = true;
    }
    seen[root] = true;
    let mut order = vec![root];
    let mut queue = VecDeque::from([root]);
    while let Some(v) = queue.pop_front() {
        for &w in g.neighbors(v) {
            if !seen[w] {
                seen[w] = true;
                order.push(w);
                queue.push_back(w);
            }
        }
    }
    order
}

/// Greedy coloring along the reverse of a BFS order: every vertex but the
/// root still has an uncolored neighbor (its BFS parent) when colored.
fn greedy_reverse_bfs(g: &Graph, mut colors: Vec<Option<usize>>, order: &[Vertex]) -> Vec<Option<usize>> {
    for &v in order.iter().rev() {
        colors[v] = Some(smallest_free(g, &colors, v));
    }
    colors
}

fn finish(colors: Vec<Option<usize>>) -> Vec<usize> {
    colors.into_iter().map(|c| c.expect("every vertex colored")).collect()
}

/// Colors a connected graph with at most Δ colors unless it is complete
/// (n colors) or an odd cycle (3 colors).
pub fn brooks_color(g: &Graph) -> Result<BrooksColoring, BicubicError> {
    let n = g.n();
    if n == 0 {
        return Ok(BrooksColoring { colors: Vec::new(), count: 0 });
    }
    if !g.is_connected() {
        return Err(BicubicError::Disconnected);
    }
    if is_complete(g) {
        return Ok(BrooksColoring::from_colors((0..n).collect()));
    }
    if let Ok(lab) = g.bipartition() {
        let colors = (0..n).map(|v| usize::from(lab.side_of(v) == Some(Side::Y))).collect();
        return Ok(BrooksColoring::from_colors(colors));
    }
    let delta = g.max_degree();
    if delta <= 2 {
        // odd cycle
        let order = bfs_order(g, 0, &[]);
        return Ok(BrooksColoring::from_colors(finish(greedy_reverse_bfs(g, vec![None; n], &order))));
    }
    if let Some(root) = (0..n).find(|&v| g.degree(v) < delta) {
        let order = bfs_order(g, root, &[]);
        return Ok(BrooksColoring::from_colors(finish(greedy_reverse_bfs(g, vec![None; n], &order))));
    }
    let (blocks, cuts) = g.blocks();
    if !cuts.is_empty() {
        return Ok(BrooksColoring::from_colors(color_by_blocks(g, &blocks)?));
    }
    let (v, u, w) = brooks_triple(g).ok_or(BicubicError::Invariant("2-connected regular graph without a Brooks triple"))?;
    let mut colors = vec![None; n];
    colors[u] = Some(0);
    colors[w] = Some(0);
    let order = bfs_order(g, v, &[u, w]);
    Ok(BrooksColoring::from_colors(finish(greedy_reverse_bfs(g, colors, &order))))
}

/// A vertex `v` with nonadjacent neighbors `u`, `w` such that removing both
/// leaves the graph connected.
fn brooks_triple(g: &Graph) -> Option<(Vertex, Vertex, Vertex)> {
    for v in 0..g.n() {
        let nb = g.neighbors(v);
        for (i, &u) in nb.iter().enumerate() {
            for &w in &nb[i + 1..] {
                if !g.has_edge(u, w) && g.without(&[u, w]).0.is_connected() {
                    return Some((v, u, w));
                }
            }
        }
    }
    None
}

/// Colors each block on its own, then walks the block tree permuting block
/// colors so that shared cut vertices agree.
fn color_by_blocks(g: &Graph, blocks: &[Vec<Vertex>]) -> Result<Vec<usize>, BicubicError> {
    let mut colors: Vec<Option<usize>> = vec![None; g.n()];
    let mut done = vec![false; blocks.len()];
    let mut remaining = blocks.len();
    while remaining > 0 {
        let mut progressed = false;
        for (bi, block) in blocks.iter().enumerate() {
            if done[bi] {
                continue;
            }
            let anchor = block.iter().copied().find(|&v| colors[v].is_some());
            if anchor.is_none() && remaining != blocks.len() {
                continue;
            }
            let (sub, map) = g.induced_subgraph(block);
            let local = brooks_color(&sub)?;
            let mut perm: Vec<usize> = (0..local.count.max(1)).collect();
            if let Some(a) = anchor {
                let want = colors[a].expect("anchor colored");
                let have = local.colors[map.iter().position(|&x| x == a).expect("anchor in block")];
                if perm.len() <= want {
                    perm.extend(perm.len()..=want);
                }
                perm.swap(have, want);
            }
            for (i, &v) in map.iter().enumerate() {
                colors[v] = Some(perm[local.colors[i]]);
            }
            done[bi] = true;
            remaining -= 1;
            progressed = true;
        }
        if !progressed {
            return Err(BicubicError::Disconnected);
        }
    }
    Ok(finish(colors))
}

fn check_cubic_bipartite(g: &Graph, labeling: &BipartiteLabeling) -> Result<(), BicubicError> {
    if !g.is_regular(3) {
        return Err(BicubicError::NotCubic);
    }
    if !labeling.is_valid_for(g) {
        return Err(BicubicError::BadLabeling);
    }
    if !g.is_connected() {
        return Err(BicubicError::Disconnected);
    }
    Ok(())
}

/// Largest color class of a Brooks coloring of the restricted square on
/// `side`: a packing inside that side holding at least a sixth of it.
pub fn side_packing(g: &Graph, labeling: &BipartiteLabeling, side: Side) -> Result<VertexSet, BicubicError> {
    check_cubic_bipartite(g, labeling)?;
    if g.n() < SIDE_PACKING_MIN_ORDER {
        return Err(BicubicError::TooSmall(g.n()));
    }
    let part = labeling.side(side);
    let sq = g.square_restricted(part)?;
    if !sq.graph.is_connected() {
        return Err(BicubicError::Invariant("restricted square is disconnected"));
    }
    if sq.graph.max_degree() > 6 {
        return Err(BicubicError::Invariant("restricted square has degree above 6"));
    }
    if is_complete(&sq.graph) {
        return Err(BicubicError::Invariant("restricted square is complete"));
    }
    let coloring = brooks_color(&sq.graph)?;
    if !sq.graph.is_proper_coloring(&coloring.colors) {
        return Err(BicubicError::Invariant("improper Brooks coloring"));
    }
    let best = coloring
        .classes()
        .into_iter()
        .enumerate()
        .max_by_key(|(c, class)| (class.len(), std::cmp::Reverse(*c)))
        .map(|(_, class)| class)
        .unwrap_or_default();
    let packing = sq.lift(&best);
    if !g.is_packing(packing.as_slice()) {
        return Err(BicubicError::Invariant("side class is not a packing"));
    }
    if 6 * packing.len() < part.len() {
        return Err(BicubicError::Invariant("side packing below a sixth of the side"));
    }
    Ok(packing)
}

/// The layers grown around a maximal packing `p` inside one side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayerDecomposition {
    /// Side containing `p` (and `r`).
    pub side: Side,
    pub p: VertexSet,
    pub q: VertexSet,
    pub r: VertexSet,
    pub s: VertexSet,
    pub t: VertexSet,
    pub w: VertexSet,
}

fn ensure(cond: bool, what: &'static str) -> Result<(), BicubicError> {
    if cond {
        Ok(())
    } else {
        Err(BicubicError::Invariant(what))
    }
}

/// Greedy inclusion-maximal packing among `candidates`, scanned by ascending id.
fn greedy_packing(g: &Graph, candidates: &[Vertex]) -> Vec<Vertex> {
    let mut covered = vec![false; g.n()];
    let mut out = Vec::new();
    for &v in candidates {
        let closed = g.closed_neighborhood(v);
        if closed.iter().all(|&x| !covered[x]) {
            for x in closed {
                covered[x] = true;
            }
            out.push(v);
        }
    }
    out
}

/// Extends a packing inside one side to an inclusion-maximal one, keeping
/// `seed` and scanning the rest of the side by ascending id.
pub fn maximal_side_packing(g: &Graph, labeling: &BipartiteLabeling, side: Side, seed: &VertexSet) -> Result<VertexSet, BicubicError> {
    let part = labeling.side(side);
    if !seed.is_subset(part) || !g.is_packing(seed.as_slice()) {
        return Err(BicubicError::NotSidePacking);
    }
    let order: Vec<Vertex> = seed.iter().chain(part.difference(seed).iter()).collect();
    Ok(VertexSet::new(g.n(), greedy_packing(g, &order))?)
}

pub fn layer_decompose(g: &Graph, labeling: &BipartiteLabeling, p: &VertexSet) -> Result<LayerDecomposition, BicubicError> {
    check_cubic_bipartite(g, labeling)?;
    let first = p.iter().next().ok_or(GraphError::EmptySet)?;
    let side = labeling.side_of(first).ok_or(BicubicError::BadLabeling)?;
    let part = labeling.side(side);
    if !p.is_subset(part) || !g.is_packing(p.as_slice()) {
        return Err(BicubicError::NotSidePacking);
    }
    let near = g.bfs_from(p.as_slice());
    if let Some(v) = part.iter().find(|&v| near[v].at_least(3)) {
        return Err(BicubicError::NotMaximal(v));
    }

    let q = g.open_neighborhood_of_set(p.as_slice());
    let r = g.open_neighborhood_of_set(q.as_slice()).difference(p);
    let s = g.open_neighborhood_of_set(r.as_slice()).difference(&q);
    let t = VertexSet::new(g.n(), greedy_packing(g, s.as_slice()))?;
    let w = g.open_neighborhood_of_set(t.as_slice());

    let other = labeling.side(side.other());
    ensure(&p.union(&r) == part, "X = P ∪ R")?;
    ensure(&q.union(&s) == other, "Y = Q ∪ S")?;
    ensure(q.len() == 3 * p.len(), "|Q| = 3|P|")?;
    ensure(w.is_subset(&r), "W ⊆ R")?;
    ensure(w.len() == 3 * t.len(), "|W| = 3|T|")?;
    let rest = s.difference(&t);
    ensure(rest.iter().all(|v| g.neighbors(v).iter().any(|&x| w.contains(x))), "S \\ T vertices see W")?;
    ensure(s.len() <= 4 * t.len(), "|S| ≤ 4|T|")?;
    Ok(LayerDecomposition { side, p: p.clone(), q, r, s, t, w })
}

/// P ∪ T, verified to be a packing.
pub fn combined_packing(g: &Graph, d: &LayerDecomposition) -> Result<VertexSet, BicubicError> {
    let out = d.p.union(&d.t);
    ensure(g.is_packing(out.as_slice()), "P ∪ T is a packing")?;
    Ok(out)
}

/// Exact γ and ρ of a bicubic graph checked against every bound registered
/// for the class.
pub fn check_bicubic_bounds(g: &Graph, budget: u64) -> Result<ScanRecord, BicubicError> {
    let labeling = g.bipartition()?;
    check_cubic_bipartite(g, &labeling)?;
    let opts = EvalOptions { budget, ..EvalOptions::default() };
    Ok(harness::try_evaluate("bicubic", "bicubic", g, Facts::of(g, None), &opts)?)
}
