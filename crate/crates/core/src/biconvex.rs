//! Biconvex graphs with supplied convex orderings: trimming to the
//! bipartite permutation core, its complete bipartite decomposition, and the
//! packing and dominating sets built from that decomposition.
//!
//! Orderings are validated, never discovered; every returned set is
//! re-checked with the packing / domination checkers.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::graph::{Distance, Graph, GraphError, Side, Vertex, VertexSet};
use crate::harness::{self, EvalOptions, Facts};
use crate::io::{BoundCheck, BoundKind, OrderingLines, Rational, ScanRecord};
use crate::solvers::SolveError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BiconvexError {
    #[error("orderings are not convex orderings of the two sides")]
    NotConvex,
    #[error("graph is disconnected")]
    Disconnected,
    #[error("both sides must be nonempty")]
    EmptySide,
    #[error("trimmed core is disconnected")]
    CoreDisconnected,
    #[error("flank neighborhoods are not nested at {0}; supply orderings with nested flanks")]
    NestingViolated(Vertex),
    #[error("core orderings are not strong: edges {0}-{3} and {1}-{2} lack their companions")]
    NotStrong(Vertex, Vertex, Vertex, Vertex),
    #[error("decomposition property {property} fails at block {block}")]
    Decomposition { property: &'static str, block: usize },
    #[error("{0} certificate failed verification")]
    Rejected(Branch),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Solve(#[from] SolveError),
}

/// Orderings of the two sides; `order_x` is the side the trimming acts on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvexOrdering {
    pub order_x: Vec<Vertex>,
    pub order_y: Vec<Vertex>,
}

impl From<OrderingLines> for ConvexOrdering {
    fn from(o: OrderingLines) -> Self {
        ConvexOrdering { order_x: o.order_x, order_y: o.order_y }
    }
}

impl From<&ConvexOrdering> for OrderingLines {
    fn from(o: &ConvexOrdering) -> Self {
        OrderingLines { order_x: o.order_x.clone(), order_y: o.order_y.clone() }
    }
}

const NONE: usize = usize::MAX;

fn positions(n: usize, order: &[Vertex]) -> Vec<usize> {
    let mut pos = vec![NONE; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    pos
}

fn is_interval(nb: &[Vertex], pos: &[usize]) -> bool {
    if nb.is_empty() {
        return true;
    }
    let mut lo = usize::MAX;
    let mut hi = 0;
    for &v in nb {
        if pos[v] == NONE {
            return false;
        }
        lo = lo.min(pos[v]);
        hi = hi.max(pos[v]);
    }
    hi - lo + 1 == nb.len()
}

/// Both orderings partition the vertices into two independent sides and
/// every neighborhood is consecutive in the opposite ordering.
pub fn validate_convex(g: &Graph, ord: &ConvexOrdering) -> bool {
    let n = g.n();
    if ord.order_x.len() + ord.order_y.len() != n {
        return false;
    }
    let mut side = vec![None; n];
    for (order, s) in [(&ord.order_x, Side::X), (&ord.order_y, Side::Y)] {
        for &v in order.iter() {
            if v >= n || side[v].is_some() {
                return false;
            }
            side[v] = Some(s);
        }
    }
    if g.edges().any(|(u, v)| side[u] == side[v]) {
        return false;
    }
    let px = positions(n, &ord.order_x);
    let py = positions(n, &ord.order_y);
    ord.order_y.iter().all(|&y| is_interval(g.neighbors(y), &px)) && ord.order_x.iter().all(|&x| is_interval(g.neighbors(x), &py))
}

/// The bipartite permutation core `Gp = G[Xp ∪ Y]` with `Xp` the interval
/// `x_L ..= x_R` of the (possibly reversed) X ordering.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrimmedCore {
    /// Orderings in force after the optional reversal of the X side.
    pub ordering: ConvexOrdering,
    pub reversed: bool,
    pub x_l: Vertex,
    pub x_r: Vertex,
    pub xp: Vec<Vertex>,
    pub gp: Graph,
    /// Original id of each vertex of `gp`.
    pub gp_map: Vec<Vertex>,
}

impl TrimmedCore {
    pub fn in_core(&self, v: Vertex) -> bool {
        self.gp_map.binary_search(&v).is_ok()
    }
}

fn properly_contained(a: &[Vertex], b: &[Vertex]) -> bool {
    a.len() < b.len() && a.iter().all(|v| b.binary_search(v).is_ok())
}

fn contained(a: &[Vertex], b: &[Vertex]) -> bool {
    a.iter().all(|v| b.binary_search(v).is_ok())
}

/// Vertices of N(y) whose neighborhood no X-vertex properly contains,
/// listed by X position.
fn maximal_in(g: &Graph, y: Vertex, order_x: &[Vertex], px: &[usize]) -> Vec<Vertex> {
    let mut cands: Vec<Vertex> =
        g.neighbors(y).iter().copied().filter(|&x| !order_x.iter().any(|&o| properly_contained(g.neighbors(x), g.neighbors(o)))).collect();
    cands.sort_by_key(|&x| px[x]);
    cands
}

fn ends(g: &Graph, ord: &ConvexOrdering) -> (usize, usize) {
    let px = positions(g.n(), &ord.order_x);
    let first = ord.order_y[0];
    let last = *ord.order_y.last().expect("nonempty side");
    let x_l = maximal_in(g, first, &ord.order_x, &px)[0];
    let x_r = *maximal_in(g, last, &ord.order_x, &px).last().expect("a maximal neighborhood exists");
    (px[x_l], px[x_r])
}

pub fn trim_core(g: &Graph, ord: &ConvexOrdering) -> Result<TrimmedCore, BiconvexError> {
    if !validate_convex(g, ord) {
        return Err(BiconvexError::NotConvex);
    }
    if ord.order_x.is_empty() || ord.order_y.is_empty() {
        return Err(BiconvexError::EmptySide);
    }
    if !g.is_connected() {
        return Err(BiconvexError::Disconnected);
    }
    let mut ordering = ord.clone();
    let mut reversed = false;
    let (mut l, mut r) = ends(g, &ordering);
    if l > r {
        ordering.order_x.reverse();
        reversed = true;
        (l, r) = ends(g, &ordering);
        if l > r {
            return Err(BiconvexError::NestingViolated(ordering.order_x[l]));
        }
    }
    let ox = &ordering.order_x;
    for i in 0..l {
        if !contained(g.neighbors(ox[i]), g.neighbors(ox[i + 1])) {
            return Err(BiconvexError::NestingViolated(ox[i]));
        }
    }
    for i in r + 1..ox.len() {
        if !contained(g.neighbors(ox[i]), g.neighbors(ox[i - 1])) {
            return Err(BiconvexError::NestingViolated(ox[i]));
        }
    }
    let xp = ox[l..=r].to_vec();
    let mut keep: Vec<Vertex> = xp.iter().chain(&ordering.order_y).copied().collect();
    keep.sort_unstable();
    let (gp, gp_map) = g.induced_subgraph(&keep);
    if !gp.is_connected() {
        return Err(BiconvexError::CoreDisconnected);
    }
    check_strong(g, &xp, &ordering.order_y)?;
    Ok(TrimmedCore { x_l: ox[l], x_r: ox[r], xp, gp, gp_map, ordering, reversed })
}

/// Core of a bipartite permutation graph taken whole, without trimming:
/// the orderings must already be strong.
pub fn permutation_core(g: &Graph, ord: &ConvexOrdering) -> Result<TrimmedCore, BiconvexError> {
    if !validate_convex(g, ord) {
        return Err(BiconvexError::NotConvex);
    }
    if ord.order_x.is_empty() || ord.order_y.is_empty() {
        return Err(BiconvexError::EmptySide);
    }
    if !g.is_connected() {
        return Err(BiconvexError::Disconnected);
    }
    check_strong(g, &ord.order_x, &ord.order_y)?;
    let gp_map: Vec<Vertex> = (0..g.n()).collect();
    Ok(TrimmedCore {
        ordering: ord.clone(),
        reversed: false,
        x_l: ord.order_x[0],
        x_r: *ord.order_x.last().expect("nonempty side"),
        xp: ord.order_x.clone(),
        gp: g.clone(),
        gp_map,
    })
}

fn check_strong(g: &Graph, xs: &[Vertex], ys: &[Vertex]) -> Result<(), BiconvexError> {
    let py = &positions(g.n(), ys);
    let edges: Vec<(usize, usize, Vertex, Vertex)> =
        xs.iter().enumerate().flat_map(|(i, &x)| g.neighbors(x).iter().map(move |&y| (i, py[y], x, y))).collect();
    for &(i, c, xi, yc) in &edges {
        for &(k, a, xk, ya) in &edges {
            if i < k && a < c && !(g.has_edge(xi, ya) && g.has_edge(xk, yc)) {
                return Err(BiconvexError::NotStrong(xi, xk, ya, yc));
            }
        }
    }
    Ok(())
}

/// One `K_i ∪ J_i` block; both sides of `K_i` listed by ordering position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CbBlock {
    pub kx: Vec<Vertex>,
    pub ky: Vec<Vertex>,
    pub j: Vec<Vertex>,
    pub j_side: Option<Side>,
}

impl CbBlock {
    fn k_side(&self, side: Side) -> &[Vertex] {
        match side {
            Side::X => &self.kx,
            Side::Y => &self.ky,
        }
    }

    /// Leftmost vertex of `K_i` on a side.
    pub fn l(&self, side: Side) -> Vertex {
        self.k_side(side)[0]
    }

    /// Rightmost vertex of `K_i` on a side.
    pub fn r(&self, side: Side) -> Vertex {
        *self.k_side(side).last().expect("K side nonempty")
    }

    pub fn k_contains(&self, v: Vertex) -> bool {
        self.kx.contains(&v) || self.ky.contains(&v)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CbDecomposition {
    pub blocks: Vec<CbBlock>,
}

impl CbDecomposition {
    pub fn width(&self) -> usize {
        self.blocks.len()
    }
}

fn decomposition_error(property: &'static str, block: usize) -> BiconvexError {
    BiconvexError::Decomposition { property, block }
}

/// Peels `K_i = N(a) ∪ N(b)` for the first remaining vertex of each side,
/// then the vertices this isolates as `J_i`, until the core is empty.
pub fn cb_decompose(g: &Graph, core: &TrimmedCore) -> Result<CbDecomposition, BiconvexError> {
    let n = g.n();
    let ys = &core.ordering.order_y;
    let mut alive = vec![false; n];
    for &v in core.xp.iter().chain(ys) {
        alive[v] = true;
    }
    let live_nb = |alive: &[bool], v: Vertex| -> Vec<Vertex> { g.neighbors(v).iter().copied().filter(|&w| alive[w]).collect() };
    let px = positions(n, &core.xp);
    let py = positions(n, ys);
    let by_pos = |mut v: Vec<Vertex>, pos: &[usize]| {
        v.sort_by_key(|&x| pos[x]);
        v
    };

    let mut blocks = Vec::new();
    loop {
        let a = core.xp.iter().copied().find(|&x| alive[x]);
        let b = ys.iter().copied().find(|&y| alive[y]);
        let (a, b) = match (a, b) {
            (None, None) => break,
            (Some(a), Some(b)) => (a, b),
            _ => return Err(decomposition_error("one side exhausted first", blocks.len())),
        };
        let kx = by_pos(live_nb(&alive, b), &px);
        let ky = by_pos(live_nb(&alive, a), &py);
        if kx.is_empty() || ky.is_empty() {
            return Err(decomposition_error("K has an edge", blocks.len()));
        }
        if !kx.iter().all(|&x| ky.iter().all(|&y| g.has_edge(x, y))) {
            return Err(decomposition_error("K is complete bipartite", blocks.len()));
        }
        for &v in kx.iter().chain(&ky) {
            alive[v] = false;
        }
        let isolated: Vec<Vertex> = (0..n).filter(|&v| alive[v] && live_nb(&alive, v).is_empty()).collect();
        for &v in &isolated {
            alive[v] = false;
        }
        let jx: Vec<Vertex> = isolated.iter().copied().filter(|&v| px[v] != NONE).collect();
        let jy: Vec<Vertex> = isolated.iter().copied().filter(|&v| py[v] != NONE).collect();
        let (j, j_side) = match (jx.is_empty(), jy.is_empty()) {
            (true, true) => (Vec::new(), None),
            (false, true) => (by_pos(jx, &px), Some(Side::X)),
            (true, false) => (by_pos(jy, &py), Some(Side::Y)),
            (false, false) => return Err(decomposition_error("J lies in one side", blocks.len())),
        };
        blocks.push(CbBlock { kx, ky, j, j_side });
    }
    let dec = CbDecomposition { blocks };
    check_decomposition(g, core, &dec)?;
    Ok(dec)
}

fn check_decomposition(g: &Graph, core: &TrimmedCore, dec: &CbDecomposition) -> Result<(), BiconvexError> {
    let n = g.n();
    let px = positions(n, &core.xp);
    let py = positions(n, &core.ordering.order_y);
    let mut block_of = vec![NONE; n];
    for (i, b) in dec.blocks.iter().enumerate() {
        for &v in b.kx.iter().chain(&b.ky).chain(&b.j) {
            if block_of[v] != NONE {
                return Err(decomposition_error("blocks are disjoint", i));
            }
            block_of[v] = i;
        }
    }
    if core.gp_map.iter().any(|&v| block_of[v] == NONE) {
        return Err(decomposition_error("blocks cover the core", dec.width()));
    }
    let in_k = |v: Vertex| block_of[v] != NONE && dec.blocks[block_of[v]].k_contains(v);
    for (i, b) in dec.blocks.iter().enumerate() {
        // i) K_i touches exactly its neighbors in the sequence
        let mut touches = vec![false; dec.width()];
        for &v in b.kx.iter().chain(&b.ky) {
            for &w in g.neighbors(v) {
                if in_k(w) && block_of[w] != i {
                    touches[block_of[w]] = true;
                }
            }
        }
        for (j, &t) in touches.iter().enumerate() {
            if j != i && t != (i.abs_diff(j) == 1) {
                return Err(decomposition_error("K_i adjacent to K_j iff |i-j| = 1", i));
            }
        }
        // ii) J_i hangs off K_i with nested neighborhoods
        let core_nb = |v: Vertex| -> Vec<Vertex> { g.neighbors(v).iter().copied().filter(|&w| core.in_core(w)).collect() };
        for &z in &b.j {
            if !core_nb(z).iter().all(|&w| block_of[w] == i && b.k_contains(w)) {
                return Err(decomposition_error("N(J_i) inside K_i", i));
            }
        }
        for w in b.j.windows(2) {
            let pos = if b.j_side == Some(Side::X) { &px } else { &py };
            debug_assert!(pos[w[0]] < pos[w[1]]);
            if !contained(&core_nb(w[1]), &core_nb(w[0])) {
                return Err(decomposition_error("J_i neighborhoods nested", i));
            }
        }
        // iii) the opposite-side right marker sees every J_i vertex
        if let Some(side) = b.j_side {
            let r = b.r(side.other());
            if !b.j.iter().all(|&z| g.has_edge(r, z)) {
                return Err(decomposition_error("r marker adjacent to J_i", i));
            }
        }
    }
    Ok(())
}

/// Which construction produced a certificate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Branch {
    /// Alternating left markers, one per block.
    PackingBase,
    /// First block has an X-side J vertex far from x_1.
    PackingFirstBlockX,
    /// First block has a Y-side J vertex far from x_1.
    PackingFirstBlockY,
    /// N(x_n) lies inside J_k, so x_n joins the base set.
    PackingLastVertex,
    /// Width 1 with x_1 and x_n at distance at least 3.
    PackingEnds,
    /// Width at least 2, J_1 close to x_1 and x_n touching K_k.
    DominatingTight,
    /// Width at least 2, remaining configurations.
    DominatingGeneral,
    /// Width 1 with x_1 and x_n at distance at most 2.
    DominatingNear,
    /// Width 1 with x_1 and x_n at distance at least 3.
    DominatingFar,
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Branch::PackingBase => "packing-base",
            Branch::PackingFirstBlockX => "packing-first-block-x",
            Branch::PackingFirstBlockY => "packing-first-block-y",
            Branch::PackingLastVertex => "packing-last-vertex",
            Branch::PackingEnds => "packing-ends",
            Branch::DominatingTight => "dominating-tight",
            Branch::DominatingGeneral => "dominating-general",
            Branch::DominatingNear => "dominating-near",
            Branch::DominatingFar => "dominating-far",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CertificateKind {
    Packing,
    Dominating,
}

/// A packing of exactly `claimed` vertices, or a dominating set of at most
/// `claimed` vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub kind: CertificateKind,
    pub set: VertexSet,
    pub claimed: usize,
    pub branch: Branch,
    pub width: usize,
}

impl Certificate {
    pub fn holds(&self, g: &Graph) -> bool {
        match self.kind {
            CertificateKind::Packing => self.set.len() == self.claimed && g.is_packing(self.set.as_slice()),
            CertificateKind::Dominating => self.set.len() <= self.claimed && g.is_dominating(self.set.as_slice()),
        }
    }
}

fn certify(g: &Graph, kind: CertificateKind, set: Vec<Vertex>, claimed: usize, branch: Branch, width: usize) -> Result<Certificate, BiconvexError> {
    let cert = Certificate { kind, set: VertexSet::new(g.n(), set)?, claimed, branch, width };
    if cert.holds(g) {
        Ok(cert)
    } else {
        Err(BiconvexError::Rejected(branch))
    }
}

/// Distances and end vertices shared by both constructions.
struct Ends {
    x1: Vertex,
    xn: Vertex,
    dist_x1: Vec<Distance>,
    /// Largest distance from x_1 to a J_1 vertex (0 when J_1 is empty).
    j1_far: Distance,
}

fn ends_of(g: &Graph, core: &TrimmedCore, dec: &CbDecomposition) -> Ends {
    let ox = &core.ordering.order_x;
    let (x1, xn) = (ox[0], *ox.last().expect("nonempty side"));
    let dist_x1 = g.bfs_from(&[x1]);
    let j1_far = dec.blocks[0].j.iter().map(|&a| dist_x1[a]).max().unwrap_or(Distance::Finite(0));
    Ends { x1, xn, dist_x1, j1_far }
}

fn empty_width() -> BiconvexError {
    decomposition_error("width at least 1", 0)
}

/// Packing of size k (or k + 1 when one of the strengthening conditions
/// holds) from the decomposition.
pub fn construct_packing(g: &Graph, core: &TrimmedCore, dec: &CbDecomposition) -> Result<Certificate, BiconvexError> {
    let k = dec.width();
    if k == 0 {
        return Err(empty_width());
    }
    let e = ends_of(g, core, dec);
    let b = &dec.blocks;
    // block i (1-based) contributes its left marker on the side given by parity
    let alternating = |from: usize, odd_side: Side| -> Vec<Vertex> {
        (from..=k).map(|i| b[i - 1].l(if i % 2 == 1 { odd_side } else { odd_side.other() })).collect()
    };
    let packing = |set, claimed, branch| certify(g, CertificateKind::Packing, set, claimed, branch, k);

    if e.j1_far.at_least(3) {
        let far = *b[0].j.iter().find(|&&a| e.dist_x1[a].at_least(3)).expect("a far J_1 vertex");
        let (mut set, branch) = match b[0].j_side {
            Some(Side::X) => (alternating(2, Side::X), Branch::PackingFirstBlockX),
            _ => (alternating(2, Side::Y), Branch::PackingFirstBlockY),
        };
        set.extend([e.x1, far]);
        return packing(set, k + 1, branch);
    }
    let last = &b[k - 1];
    let xn_nb = g.neighbors(e.xn);
    if !xn_nb.is_empty() && xn_nb.iter().all(|y| last.j.contains(y)) {
        let mut set = alternating(1, Side::X);
        set.push(e.xn);
        return packing(set, k + 1, Branch::PackingLastVertex);
    }
    if k == 1 && e.dist_x1[e.xn].at_least(3) {
        return packing(vec![e.x1, e.xn], 2, Branch::PackingEnds);
    }
    packing(alternating(1, Side::X), k, Branch::PackingBase)
}

/// Dominating set of size at most 2k (tight configuration) or 2k + 2, and
/// the two width-1 cases (at most 2 or 4).
pub fn construct_dominating(g: &Graph, core: &TrimmedCore, dec: &CbDecomposition) -> Result<Certificate, BiconvexError> {
    let k = dec.width();
    if k == 0 {
        return Err(empty_width());
    }
    let e = ends_of(g, core, dec);
    let b = &dec.blocks;
    let py = positions(g.n(), &core.ordering.order_y);
    let first_by_y = |cands: Vec<Vertex>| cands.into_iter().min_by_key(|&y| py[y]);
    let dominating = |set, claimed, branch| certify(g, CertificateKind::Dominating, set, claimed, branch, k);
    let any_nb = |x: Vertex| first_by_y(g.neighbors(x).to_vec()).expect("connected graph has no isolated vertex");

    if k == 1 {
        let d = e.dist_x1[e.xn];
        if !d.at_least(3) {
            let common: Vec<Vertex> = g.neighbors(e.x1).iter().copied().filter(|&y| g.has_edge(e.xn, y)).collect();
            let y_star = first_by_y(common).expect("x_1 and x_n share a neighbor");
            return dominating(vec![b[0].l(Side::X), y_star], 2, Branch::DominatingNear);
        }
        let set = vec![b[0].r(Side::X), b[0].r(Side::Y), any_nb(e.x1), any_nb(e.xn)];
        return dominating(set, 4, Branch::DominatingFar);
    }

    let middle: Vec<Vertex> = b[1..k - 1].iter().flat_map(|blk| [blk.r(Side::X), blk.r(Side::Y)]).collect();
    let last = &b[k - 1];
    let xn_in_k: Vec<Vertex> = g.neighbors(e.xn).iter().copied().filter(|&y| last.k_contains(y)).collect();
    if !e.j1_far.at_least(3) && !xn_in_k.is_empty() {
        let sees_all = |y: Vertex, js: &[Vertex]| js.iter().all(|&z| g.has_edge(y, z));
        let j1x: Vec<Vertex> = if b[0].j_side == Some(Side::X) { b[0].j.clone() } else { Vec::new() };
        let y_star = first_by_y(g.neighbors(e.x1).iter().copied().filter(|&y| sees_all(y, &j1x)).collect()).unwrap_or_else(|| any_nb(e.x1));
        let jkx: Vec<Vertex> = if last.j_side == Some(Side::X) { last.j.clone() } else { Vec::new() };
        let y_prime = first_by_y(xn_in_k.iter().copied().filter(|&y| sees_all(y, &jkx)).collect()).unwrap_or(xn_in_k[0]);
        let mut set = middle;
        set.extend([b[0].r(Side::X), y_star, last.r(Side::X), y_prime]);
        return dominating(set, 2 * k, Branch::DominatingTight);
    }
    let mut set = middle;
    set.extend([b[0].r(Side::X), b[0].r(Side::Y), last.r(Side::X), last.r(Side::Y), any_nb(e.x1), any_nb(e.xn)]);
    dominating(set, 2 * k + 2, Branch::DominatingGeneral)
}

/// Whether the dominating branch is paired with a packing branch whose size
/// makes |dominating| ≤ 2·|packing| follow from the constructions alone.
pub fn branches_pair(packing: &Certificate, dominating: &Certificate) -> bool {
    match dominating.branch {
        Branch::DominatingTight | Branch::DominatingNear => true,
        Branch::DominatingGeneral | Branch::DominatingFar => packing.claimed > packing.width,
        _ => false,
    }
}

/// Everything the constructive pipeline produces for one ordered graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BiconvexCertificates {
    pub core: TrimmedCore,
    pub decomposition: CbDecomposition,
    pub packing: Certificate,
    pub dominating: Certificate,
}

pub fn certify_biconvex(g: &Graph, ord: &ConvexOrdering) -> Result<BiconvexCertificates, BiconvexError> {
    let core = trim_core(g, ord)?;
    let decomposition = cb_decompose(g, &core)?;
    let packing = construct_packing(g, &core, &decomposition)?;
    let dominating = construct_dominating(g, &core, &decomposition)?;
    Ok(BiconvexCertificates { core, decomposition, packing, dominating })
}

fn check(name: &str, value: Rational, satisfied: bool) -> BoundCheck {
    BoundCheck { name: name.to_string(), kind: BoundKind::Theorem, value, satisfied }
}

/// Exact γ and ρ next to both certificates: the class bound plus the
/// sandwich |packing| ≤ ρ ≤ γ ≤ |dominating|, and |dominating| ≤ 2·|packing|
/// when the fired branches pair up.
pub fn check_biconvex_bound(g: &Graph, ord: &ConvexOrdering, budget: u64) -> Result<ScanRecord, BiconvexError> {
    let certs = certify_biconvex(g, ord)?;
    let opts = EvalOptions { budget, ..EvalOptions::default() };
    let mut rec = harness::try_evaluate("biconvex", "biconvex", g, Facts::of(g, Some(ord)), &opts)?;
    append_certificate_checks(&mut rec, &certs);
    Ok(rec)
}

/// Adds the certificate sandwich checks and the certificate sets to a solved
/// record.
pub fn append_certificate_checks(rec: &mut ScanRecord, certs: &BiconvexCertificates) {
    let (p, d) = (&certs.packing, &certs.dominating);
    let k = p.width;
    if let (Some(gamma), Some(rho)) = (rec.gamma, rec.rho) {
        rec.checks.push(check("certificate: |packing| <= rho", Rational::integer(rho as i64), p.set.len() <= rho));
        rec.checks.push(check("certificate: gamma <= |dominating|", Rational::integer(d.set.len() as i64), gamma <= d.set.len()));
    }
    if branches_pair(p, d) {
        let twice = Rational::integer(2 * p.set.len() as i64);
        rec.checks.push(check("certificate: |dominating| <= 2|packing|", twice, d.set.len() <= 2 * p.set.len()));
    }
    let certificates = rec.certificates.get_or_insert_with(BTreeMap::new);
    certificates.insert(format!("packing/{}/k={k}", p.branch), p.set.as_slice().to_vec());
    certificates.insert(format!("dominating/{}/k={k}", d.branch), d.set.as_slice().to_vec());
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solvers::{brute_gamma, brute_rho};

    /// Bipartite graph from a list of X intervals over Y positions; X ids
    /// come first, then Y ids.
    fn from_intervals(intervals: &[(usize, usize)], ny: usize) -> (Graph, ConvexOrdering) {
        let nx = intervals.len();
        let edges = intervals.iter().enumerate().flat_map(|(i, &(l, r))| (l..=r).map(move |j| (i, nx + j)));
        let g = Graph::from_edges(nx + ny, edges).unwrap();
        (g, ConvexOrdering { order_x: (0..nx).collect(), order_y: (nx..nx + ny).collect() })
    }

    fn tight(k: usize) -> (Graph, ConvexOrdering) {
        // x_{2i-1}, x_{2i} see y_{2i-1}, y_{2i}; x_{2i} also sees y_{2i+1}
        let intervals: Vec<_> = (0..2 * k).map(|i| (i / 2 * 2, if i % 2 == 1 && i + 1 < 2 * k { i + 1 } else { i / 2 * 2 + 1 })).collect();
        from_intervals(&intervals, 2 * k)
    }

    #[test]
    fn convexity_checks() {
        let (k22, ord) = from_intervals(&[(0, 1), (0, 1)], 2);
        assert!(validate_convex(&k22, &ord));
        // C6: x0 y0 x1 y1 x2 y2 x0 (ids x = 0..3, y = 3..6)
        let c6 = Graph::from_edges(6, [(0, 3), (3, 1), (1, 4), (4, 2), (2, 5), (5, 0)]).unwrap();
        let ord = ConvexOrdering { order_x: vec![0, 1, 2], order_y: vec![3, 4, 5] };
        assert!(!validate_convex(&c6, &ord));
        let bad = ConvexOrdering { order_x: vec![0, 1], order_y: vec![2] };
        assert!(!validate_convex(&k22, &bad));
    }

    #[test]
    fn trimming() {
        // permutation graph with strictly growing intervals: x_L is the first
        // X vertex with a maximal neighborhood, nothing outside is nested away
        let (g, ord) = from_intervals(&[(0, 1), (1, 2), (2, 3)], 4);
        let core = trim_core(&g, &ord).unwrap();
        assert_eq!(core.xp, vec![0, 1, 2]);
        // star with center in Y: every leaf has the same neighborhood, ties
        // pick the smallest for x_L and the largest for x_R
        let (g, ord) = from_intervals(&[(0, 0), (0, 0), (0, 0)], 1);
        let core = trim_core(&g, &ord).unwrap();
        assert_eq!((core.x_l, core.x_r), (0, 2));
        assert_eq!(core.xp, vec![0, 1, 2]);
        // a left flank nested inside its successor is trimmed
        let (g, ord) = from_intervals(&[(0, 0), (0, 1), (1, 2), (2, 2)], 3);
        let core = trim_core(&g, &ord).unwrap();
        assert_eq!(core.xp, vec![1, 2]);
        assert!(!core.reversed);
    }

    #[test]
    fn trimming_tight_family_drops_x1() {
        // N(x_1) = {y_1, y_2} is properly inside N(x_2) = {y_1, y_2, y_3}
        let (g, ord) = tight(3);
        let core = trim_core(&g, &ord).unwrap();
        assert_eq!(core.x_l, 1);
        assert_eq!(core.xp, (1..6).collect::<Vec<_>>());
    }

    #[test]
    fn trimming_reverses_when_ends_cross() {
        // N(y_1) only meets the last X vertex and N(y_3) only the first
        let (g, ord) = from_intervals(&[(1, 2), (0, 1)], 3);
        let core = trim_core(&g, &ord).unwrap();
        assert!(core.reversed);
        assert_eq!(core.ordering.order_x, vec![1, 0]);
    }

    #[test]
    fn decomposition_widths() {
        let (g, ord) = from_intervals(&[(0, 1), (0, 1)], 2);
        let core = trim_core(&g, &ord).unwrap();
        let dec = cb_decompose(&g, &core).unwrap();
        assert_eq!(dec.width(), 1);
        assert!(dec.blocks[0].j.is_empty());

        for k in 1..=8 {
            let (g, ord) = tight(k);
            let core = trim_core(&g, &ord).unwrap();
            let dec = cb_decompose(&g, &core).unwrap();
            assert_eq!(dec.width(), k, "k = {k}");
        }

        // P7 = x0 y0 x1 y1 x2 y2 x3 decomposed whole: K_1 = {x0, x1, y0},
        // K_2 = {x2, y1, y2}, J_2 = {x3}
        let (g, ord) = from_intervals(&[(0, 0), (0, 1), (1, 2), (2, 2)], 3);
        let dec = cb_decompose(&g, &permutation_core(&g, &ord).unwrap()).unwrap();
        assert_eq!(dec.width(), 2);
        assert_eq!(dec.blocks[1].j, vec![3]);
        assert_eq!(dec.blocks[1].j_side, Some(Side::X));
        // trimming drops both ends of P7 and leaves P5, two blocks, no J
        let core = trim_core(&g, &ord).unwrap();
        assert_eq!(core.xp, vec![1, 2]);
        let dec = cb_decompose(&g, &core).unwrap();
        assert_eq!(dec.width(), 2);
        assert!(dec.blocks.iter().all(|b| b.j.is_empty()));
    }

    #[test]
    fn tight_family_certificates() {
        for k in 1..=5 {
            let (g, ord) = tight(k);
            let c = certify_biconvex(&g, &ord).unwrap();
            assert!(c.packing.holds(&g));
            assert!(c.dominating.holds(&g));
            assert_eq!(c.packing.set.len(), k);
            assert!(c.dominating.set.len() <= 2 * k + 2);
        }
        let (g, ord) = tight(3);
        let c = certify_biconvex(&g, &ord).unwrap();
        assert_eq!(c.packing.set.len(), brute_rho(&g).unwrap());
    }

    #[test]
    fn width_one_cases() {
        let (g, ord) = from_intervals(&[(0, 1), (0, 1)], 2);
        let c = certify_biconvex(&g, &ord).unwrap();
        assert_eq!(c.packing.set.len(), 1);
        assert_eq!(c.dominating.branch, Branch::DominatingNear);
        assert_eq!(c.dominating.set.len(), 2);
        assert_eq!(brute_gamma(&g).unwrap(), 2);
        assert_eq!(brute_rho(&g).unwrap(), 1);

        // width 1 core with far flanks: x_1 and x_4 three apart
        let (g, ord) = from_intervals(&[(0, 0), (0, 1), (0, 2), (1, 2), (2, 2)], 3);
        let c = certify_biconvex(&g, &ord).unwrap();
        assert_eq!(c.decomposition.width(), 1);
        assert_eq!(c.dominating.branch, Branch::DominatingFar);
        assert_eq!(c.packing.set.len(), 2);
        assert!(c.dominating.set.len() <= 4);
    }

    #[test]
    fn bound_record_for_k22() {
        let (g, ord) = from_intervals(&[(0, 1), (0, 1)], 2);
        let rec = check_biconvex_bound(&g, &ord, 1_000).unwrap();
        assert_eq!((rec.gamma, rec.rho), (Some(2), Some(1)));
        assert!(rec.checks.iter().all(|c| c.satisfied));
        assert!(rec.checks.iter().any(|c| c.name == "biconvex-2rho"));
    }
}
