//! Exact domination number γ(G) and packing number ρ(G).
//!
//! γ minimises Σx_v subject to x(N[v]) ≥ 1 for every vertex; ρ maximises
//! Σy_v subject to y(N[v]) ≤ 1. Both 0/1 programs are solved by native
//! branch-and-bound. The brute-force enumerators at the bottom share no code
//! with the search and serve as oracles.

use thiserror::Error;

use crate::graph::{Graph, Vertex, VertexSet};

pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// Largest order accepted by the brute-force oracles.
pub const BRUTE_FORCE_CAP: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("node budget exhausted after {nodes} nodes; optimum lies in [{lower}, {upper}]")]
    Inconclusive { lower: usize, upper: usize, nodes: u64 },
    #[error("graph order {0} exceeds the brute-force cap of {BRUTE_FORCE_CAP}")]
    TooLarge(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaResult {
    pub value: usize,
    pub witness: VertexSet,
    pub nodes: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RhoResult {
    pub value: usize,
    pub witness: VertexSet,
    pub nodes: u64,
}

struct Budget {
    limit: u64,
    used: u64,
}

impl Budget {
    fn tick(&mut self) -> Result<(), ()> {
        self.used += 1;
        if self.used > self.limit {
            Err(())
        } else {
            Ok(())
        }
    }
}

/// Per-component optimum with bounds, used to assemble a whole-graph answer
/// or an inconclusive report.
struct Partial {
    lower: usize,
    upper: usize,
    witness: Vec<Vertex>,
    exact: bool,
}

fn solve_by_components<F>(g: &Graph, budget: u64, mut solve: F) -> Result<(usize, VertexSet, u64), SolveError>
where
    F: FnMut(&Graph, &mut Budget) -> Partial,
{
    let mut b = Budget { limit: budget, used: 0 };
    let (mut lower, mut upper, mut exact) = (0, 0, true);
    let mut witness = Vec::new();
    for comp in g.components() {
        let (sub, map) = g.induced_subgraph(&comp);
        let part = solve(&sub, &mut b);
        lower += part.lower;
        upper += part.upper;
        exact &= part.exact;
        witness.extend(part.witness.into_iter().map(|v| map[v]));
    }
    if exact {
        let ws = VertexSet::new(g.n(), witness).expect("component ids map back in range");
        Ok((upper, ws, b.used))
    } else {
        Err(SolveError::Inconclusive { lower, upper, nodes: b.used })
    }
}

/// Minimum dominating set by branch-and-bound.
///
/// Branching picks an undominated vertex with the fewest admissible
/// dominators (smallest id on ties) and tries each member of its closed
/// neighborhood; members tried in earlier siblings are excluded from later
/// ones. Pruning uses a greedy packing of undominated vertices (each needs a
/// distinct new dominator) and a coverage-count bound.
pub fn domination_number(g: &Graph, budget: u64) -> Result<GammaResult, SolveError> {
    let (value, witness, nodes) = solve_by_components(g, budget, |sub, b| DomSearch::new(sub).run(b))?;
    Ok(GammaResult { value, witness, nodes })
}

struct DomSearch<'a> {
    g: &'a Graph,
    closed: Vec<Vec<Vertex>>,
    cover: Vec<u32>,
    excluded: Vec<bool>,
    chosen: Vec<Vertex>,
    best: Vec<Vertex>,
    scratch: Vec<bool>,
}

impl<'a> DomSearch<'a> {
    fn new(g: &'a Graph) -> Self {
        let n = g.n();
        DomSearch {
            g,
            closed: (0..n).map(|v| g.closed_neighborhood(v)).collect(),
            cover: vec![0; n],
            excluded: vec![false; n],
            chosen: Vec::new(),
            best: Vec::new(),
            scratch: vec![false; n],
        }
    }

    fn gain(&self, u: Vertex) -> usize {
        self.closed[u].iter().filter(|&&w| self.cover[w] == 0).count()
    }

    fn add(&mut self, u: Vertex) -> usize {
        let mut newly = 0;
        for &w in &self.closed[u] {
            if self.cover[w] == 0 {
                newly += 1;
            }
            self.cover[w] += 1;
        }
        self.chosen.push(u);
        newly
    }

    fn remove(&mut self, u: Vertex) {
        for &w in &self.closed[u] {
            self.cover[w] -= 1;
        }
        let popped = self.chosen.pop();
        debug_assert_eq!(popped, Some(u));
    }

    fn greedy_upper(&mut self) -> Vec<Vertex> {
        let n = self.g.n();
        let mut undominated = n;
        while undominated > 0 {
            let u = (0..n).max_by_key(|&u| (self.gain(u), std::cmp::Reverse(u))).expect("nonempty");
            undominated -= self.add(u);
        }
        let sol = self.chosen.clone();
        for &u in sol.iter().rev() {
            self.remove(u);
        }
        sol
    }

    fn lower_bound(&mut self, undominated: usize) -> usize {
        // disjoint admissible-dominator sets among undominated vertices
        self.scratch.iter_mut().for_each(|s| *s = false);
        let mut packing = 0;
        for v in 0..self.g.n() {
            if self.cover[v] != 0 {
                continue;
            }
            let cands = &self.closed[v];
            if cands.iter().any(|&u| !self.excluded[u] && self.scratch[u]) {
                continue;
            }
            packing += 1;
            for &u in cands {
                if !self.excluded[u] {
                    self.scratch[u] = true;
                }
            }
        }
        let max_gain =
            (0..self.g.n()).filter(|&u| !self.excluded[u]).map(|u| self.gain(u)).max().unwrap_or(0);
        let coverage = if max_gain == 0 { usize::MAX } else { undominated.div_ceil(max_gain) };
        packing.max(coverage)
    }

    fn run(mut self, budget: &mut Budget) -> Partial {
        let n = self.g.n();
        self.best = self.greedy_upper();
        let root_lower = self.lower_bound(n);
        let exact = self.search(n, budget).is_ok();
        Partial {
            lower: if exact { self.best.len() } else { root_lower.min(self.best.len()) },
            upper: self.best.len(),
            witness: self.best,
            exact,
        }
    }

    fn search(&mut self, undominated: usize, budget: &mut Budget) -> Result<(), ()> {
        budget.tick()?;
        if undominated == 0 {
            if self.chosen.len() < self.best.len() {
                self.best = self.chosen.clone();
            }
            return Ok(());
        }
        if self.chosen.len() + 1 >= self.best.len() {
            return Ok(());
        }
        let lb = self.lower_bound(undominated);
        if lb == usize::MAX || self.chosen.len() + lb >= self.best.len() {
            return Ok(());
        }
        let mut pick: Option<(usize, Vertex)> = None;
        for v in 0..self.g.n() {
            if self.cover[v] != 0 {
                continue;
            }
            let avail = self.closed[v].iter().filter(|&&u| !self.excluded[u]).count();
            if pick.is_none_or(|(a, _)| avail < a) {
                pick = Some((avail, v));
            }
        }
        let (avail, v) = pick.expect("an undominated vertex exists");
        if avail == 0 {
            return Ok(());
        }
        let mut cands: Vec<(usize, Vertex)> =
            self.closed[v].iter().filter(|&&u| !self.excluded[u]).map(|&u| (self.gain(u), u)).collect();
        cands.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        let mut tried = Vec::with_capacity(cands.len());
        let mut result = Ok(());
        for (_, u) in cands {
            let newly = self.add(u);
            result = self.search(undominated - newly, budget);
            self.remove(u);
            if result.is_err() {
                break;
            }
            self.excluded[u] = true;
            tried.push(u);
        }
        for u in tried {
            self.excluded[u] = false;
        }
        result
    }
}

/// Fixed-width bitset over `0..n`.
#[derive(Clone, PartialEq, Eq)]
struct Bits(Vec<u64>);

impl Bits {
    fn zeros(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64)])
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn clear(&mut self, i: usize) {
        self.0[i / 64] &= !(1 << (i % 64));
    }


    fn first(&self) -> Option<usize> {
        self.0.iter().position(|&w| w != 0).map(|wi| wi * 64 + self.0[wi].trailing_zeros() as usize)
    }

    fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn and_count(&self, other: &Bits) -> usize {
        self.0.iter().zip(&other.0).map(|(a, b)| (a & b).count_ones() as usize).sum()
    }

    fn and_not(&self, other: &Bits) -> Bits {
        Bits(self.0.iter().zip(&other.0).map(|(a, b)| a & !b).collect())
    }

    fn and(&self, other: &Bits) -> Bits {
        Bits(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let t = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(wi * 64 + t)
                }
            })
        })
    }
}

/// Maximum packing: a maximum independent set of the conflict graph joining
/// vertices at distance 1 or 2.
///
/// Branches include/exclude on a maximum-degree candidate of the conflict
/// graph (smallest id on ties) and prunes with a greedy clique cover.
pub fn packing_number(g: &Graph, budget: u64) -> Result<RhoResult, SolveError> {
    let (value, witness, nodes) = solve_by_components(g, budget, |sub, b| MisSearch::new(&sub.distance_two_conflicts()).run(b))?;
    Ok(RhoResult { value, witness, nodes })
}

/// Maximum independent set of an arbitrary graph (same search as
/// [`packing_number`], applied directly).
pub fn independence_number(g: &Graph, budget: u64) -> Result<RhoResult, SolveError> {
    let (value, witness, nodes) = solve_by_components(g, budget, |sub, b| MisSearch::new(sub).run(b))?;
    Ok(RhoResult { value, witness, nodes })
}

struct MisSearch {
    n: usize,
    adj: Vec<Bits>,
    best: Vec<Vertex>,
    current: Vec<Vertex>,
}

impl MisSearch {
    fn new(conflict: &Graph) -> Self {
        let n = conflict.n();
        let adj = (0..n)
            .map(|v| {
                let mut b = Bits::zeros(n);
                for &u in conflict.neighbors(v) {
                    b.set(u);
                }
                b
            })
            .collect();
        MisSearch { n, adj, best: Vec::new(), current: Vec::new() }
    }

    fn greedy(&self) -> Vec<Vertex> {
        let mut cand = Bits::zeros(self.n);
        (0..self.n).for_each(|v| cand.set(v));
        let mut out = Vec::new();
        while !cand.is_empty() {
            let v = cand.iter().min_by_key(|&v| (self.adj[v].and_count(&cand), v)).expect("nonempty");
            out.push(v);
            cand = cand.and_not(&self.adj[v]);
            cand.clear(v);
        }
        out
    }

    fn clique_cover(&self, cand: &Bits) -> usize {
        let mut rest = cand.clone();
        let mut cliques = 0;
        while let Some(v) = rest.first() {
            rest.clear(v);
            let mut common = rest.and(&self.adj[v]);
            while let Some(u) = common.first() {
                rest.clear(u);
                common.clear(u);
                common = common.and(&self.adj[u]);
            }
            cliques += 1;
        }
        cliques
    }

    fn run(mut self, budget: &mut Budget) -> Partial {
        self.best = self.greedy();
        let mut all = Bits::zeros(self.n);
        (0..self.n).for_each(|v| all.set(v));
        let root_upper = self.clique_cover(&all);
        let exact = self.expand(all, budget).is_ok();
        Partial {
            lower: self.best.len(),
            upper: if exact { self.best.len() } else { root_upper.max(self.best.len()) },
            witness: self.best,
            exact,
        }
    }

    fn expand(&mut self, mut cand: Bits, budget: &mut Budget) -> Result<(), ()> {
        budget.tick()?;
        // isolated candidates can always be taken
        let isolated: Vec<usize> = cand.iter().filter(|&v| self.adj[v].and_count(&cand) == 0).collect();
        for &v in &isolated {
            cand.clear(v);
        }
        self.current.extend_from_slice(&isolated);
        let result = self.expand_inner(cand, budget);
        self.current.truncate(self.current.len() - isolated.len());
        result
    }

    fn expand_inner(&mut self, cand: Bits, budget: &mut Budget) -> Result<(), ()> {
        if cand.is_empty() {
            if self.current.len() > self.best.len() {
                self.best = self.current.clone();
            }
            return Ok(());
        }
        if self.current.len() + cand.count().min(self.clique_cover(&cand)) <= self.best.len() {
            return Ok(());
        }
        let v = cand
            .iter()
            .max_by_key(|&v| (self.adj[v].and_count(&cand), std::cmp::Reverse(v)))
            .expect("nonempty");
        let mut with_v = cand.and_not(&self.adj[v]);
        with_v.clear(v);
        self.current.push(v);
        let r = self.expand(with_v, budget);
        self.current.pop();
        r?;
        let mut without_v = cand;
        without_v.clear(v);
        self.expand(without_v, budget)
    }
}

fn check_cap(g: &Graph) -> Result<(), SolveError> {
    if g.n() > BRUTE_FORCE_CAP {
        Err(SolveError::TooLarge(g.n()))
    } else {
        Ok(())
    }
}

fn closed_masks(g: &Graph) -> Vec<u32> {
    (0..g.n()).map(|v| g.neighbors(v).iter().fold(1u32 << v, |m, &u| m | 1 << u)).collect()
}

/// All `k`-subsets of `0..n` as bitmasks, in increasing numeric order.
fn k_subsets(n: usize, k: usize) -> impl Iterator<Item = u32> {
    let limit = 1u64 << n;
    let mut next = if k == 0 { Some(0u64) } else if k <= n { Some((1u64 << k) - 1) } else { None };
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 {
            None
        } else {
            // Gosper's hack
            let c = cur & cur.wrapping_neg();
            let r = cur + c;
            let nxt = (((r ^ cur) >> 2) / c) | r;
            (nxt < limit).then_some(nxt)
        };
        Some(cur as u32)
    })
}

/// γ(G) by enumerating subsets in increasing size.
pub fn brute_gamma(g: &Graph) -> Result<usize, SolveError> {
    check_cap(g)?;
    let n = g.n();
    let full: u32 = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    let masks = closed_masks(g);
    for k in 0..=n {
        for s in k_subsets(n, k) {
            let mut cov = 0u32;
            let mut bits = s;
            while bits != 0 {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                cov |= masks[v];
            }
            if cov == full {
                return Ok(k);
            }
        }
    }
    unreachable!("the full vertex set dominates")
}

/// ρ(G) by enumerating subsets in decreasing size.
pub fn brute_rho(g: &Graph) -> Result<usize, SolveError> {
    check_cap(g)?;
    let n = g.n();
    let masks = closed_masks(g);
    for k in (1..=n).rev() {
        for s in k_subsets(n, k) {
            let mut used = 0u32;
            let mut ok = true;
            let mut bits = s;
            while bits != 0 {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                if used & masks[v] != 0 {
                    ok = false;
                    break;
                }
                used |= masks[v];
            }
            if ok {
                return Ok(k);
            }
        }
    }
    Ok(0)
}
