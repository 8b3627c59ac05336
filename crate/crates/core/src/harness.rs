//! Predicate registry, corpus construction, parallel scans, certificate
//! bundles and the named experiments behind the command-line tool.

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::io::Write;
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::sync::LazyLock;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::biconvex::{self, certify_biconvex, validate_convex, BiconvexError, ConvexOrdering};
use crate::bicubic::{self, BicubicError, SIDE_PACKING_MIN_ORDER};
use crate::generators::{self, GenError};
use crate::graph::{Graph, Side, Vertex, VertexSet};
use crate::io::{
    decode_any, encode_graph6, read_edge_list_with_orderings, BoundCheck, BoundKind, FormatError, OrderingLines, Rational, ReportLine, ReportWriter,
    ScanRecord, ScanSummary, SolveStatus,
};
use crate::outerplanar::{self, MopError, Triangulation};
use crate::solvers::{domination_number, packing_number, SolveError, DEFAULT_BUDGET};

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("unknown predicate `{0}`")]
    UnknownPredicate(String),
    #[error("unknown experiment `{0}`; known: bicubic-small, tight-family, mop-bound, biconvex-bound")]
    UnknownExperiment(String),
    #[error("unknown {what} `{value}`")]
    UnknownName { what: &'static str, value: String },
    #[error("{class} validator rejected the input: {reason}")]
    Rejected { class: GraphClass, reason: String },
    #[error("invalid scan spec: {0}")]
    Spec(String),
    #[error(transparent)]
    Gen(#[from] GenError),
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn rejected(class: GraphClass, reason: impl fmt::Display) -> HarnessError {
    HarnessError::Rejected { class, reason: reason.to_string() }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GraphClass {
    Tree,
    Bicubic,
    Mop,
    Biconvex,
    Any,
    /// Random connected graphs.
    Connected,
    /// Rook graphs K_n □ K_n, n taken from the size range.
    Rook,
    /// The tight biconvex chain, k taken from the size range.
    Tight,
}

impl GraphClass {
    pub const ALL: [GraphClass; 8] = [
        GraphClass::Tree,
        GraphClass::Bicubic,
        GraphClass::Mop,
        GraphClass::Biconvex,
        GraphClass::Any,
        GraphClass::Connected,
        GraphClass::Rook,
        GraphClass::Tight,
    ];

    /// Families with a built-in generator, excluding the `any` mixture.
    pub const FAMILIES: [GraphClass; 7] = [
        GraphClass::Tree,
        GraphClass::Bicubic,
        GraphClass::Mop,
        GraphClass::Biconvex,
        GraphClass::Connected,
        GraphClass::Rook,
        GraphClass::Tight,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            GraphClass::Tree => "tree",
            GraphClass::Bicubic => "bicubic",
            GraphClass::Mop => "mop",
            GraphClass::Biconvex => "biconvex",
            GraphClass::Any => "any",
            GraphClass::Connected => "connected",
            GraphClass::Rook => "rook",
            GraphClass::Tight => "tight",
        }
    }

    /// Size range and sample count used when a scan names only the class.
    pub fn default_scan(self) -> (RangeInclusive<usize>, Option<usize>) {
        match self {
            GraphClass::Tree => (1..=40, Some(200)),
            GraphClass::Bicubic => (6..=12, None),
            GraphClass::Mop => (4..=18, Some(200)),
            GraphClass::Biconvex => (2..=16, Some(200)),
            GraphClass::Any => (2..=12, Some(200)),
            GraphClass::Connected => (1..=12, Some(200)),
            GraphClass::Rook => (1..=4, None),
            GraphClass::Tight => (1..=6, None),
        }
    }
}

impl fmt::Display for GraphClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for GraphClass {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        GraphClass::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| HarnessError::UnknownName { what: "class", value: s.to_string() })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InputFormat {
    Graph6,
    EdgeList,
}

impl FromStr for InputFormat {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "graph6" => Ok(InputFormat::Graph6),
            "edgelist" => Ok(InputFormat::EdgeList),
            _ => Err(HarnessError::UnknownName { what: "format", value: s.to_string() }),
        }
    }
}

/// Structural facts deciding which predicates apply to a graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Facts {
    pub n: usize,
    pub m: usize,
    pub max_degree: usize,
    pub min_degree: usize,
    pub connected: bool,
    pub tree: bool,
    pub cactus: bool,
    pub cubic: bool,
    pub bipartite: bool,
    pub mop: bool,
    /// Vertices of degree at most 3.
    pub low_degree: usize,
    /// A valid convex ordering of both sides was supplied.
    pub biconvex: bool,
}

impl Facts {
    pub fn of(g: &Graph, ordering: Option<&ConvexOrdering>) -> Facts {
        let n = g.n();
        let connected = g.is_connected();
        Facts {
            n,
            m: g.m(),
            max_degree: g.max_degree(),
            min_degree: g.min_degree(),
            connected,
            tree: connected && g.m() + 1 == n,
            cactus: connected && is_cactus(g),
            cubic: n > 0 && g.is_regular(3),
            bipartite: g.bipartition().is_ok(),
            mop: outerplanar::recognize_mop(g).is_ok(),
            low_degree: (0..n).filter(|&v| g.degree(v) <= 3).count(),
            biconvex: connected && ordering.is_some_and(|o| validate_convex(g, o)),
        }
    }

    pub fn bicubic(&self) -> bool {
        self.connected && self.cubic && self.bipartite
    }
}

/// Every block is a single edge or a cycle.
fn is_cactus(g: &Graph) -> bool {
    let (blocks, _) = g.blocks();
    blocks.iter().all(|b| {
        let inside = b.iter().map(|&v| g.neighbors(v).iter().filter(|x| b.contains(x)).count()).sum::<usize>() / 2;
        b.len() <= 2 || inside == b.len()
    })
}

/// A registered bound: `kind` decides whether a failure is a bug
/// (theorem) or a finding (conjecture).
pub struct Predicate {
    pub name: &'static str,
    pub relation: &'static str,
    pub kind: BoundKind,
    applies: fn(&Facts) -> bool,
    /// Right-hand side and whether the relation holds, given γ and ρ.
    test: fn(usize, usize, &Facts) -> (Rational, bool),
}

impl Predicate {
    /// Conjectures run on every connected graph with at least two vertices
    /// when `unrestricted` is set; theorems always keep their hypotheses.
    pub fn applies(&self, f: &Facts, unrestricted: bool) -> bool {
        (self.applies)(f) || (unrestricted && self.kind == BoundKind::Conjecture && f.connected && f.n >= 2)
    }

    pub fn check(&self, gamma: usize, rho: usize, f: &Facts) -> BoundCheck {
        let (value, satisfied) = (self.test)(gamma, rho, f);
        BoundCheck { name: self.name.to_string(), kind: self.kind, value, satisfied }
    }
}

fn int(v: usize) -> Rational {
    Rational::integer(v as i64)
}

/// γ ≤ num/den, compared exactly.
fn gamma_at_most(gamma: usize, num: usize, den: usize) -> (Rational, bool) {
    (Rational::new(num as i64, den as i64), gamma * den <= num)
}

fn connected_pair(f: &Facts) -> bool {
    f.connected && f.n >= 2
}

static PREDICATES: LazyLock<Vec<Predicate>> = LazyLock::new(|| {
    use BoundKind::{Conjecture, Theorem};
    vec![
        Predicate { name: "rho-le-gamma", relation: "rho <= gamma", kind: Theorem, applies: |_| true, test: |g, r, _| (int(g), r <= g) },
        Predicate {
            name: "delta-rho",
            relation: "gamma <= Delta*rho (no isolated vertices)",
            kind: Theorem,
            applies: |f| f.n > 0 && f.min_degree >= 1,
            test: |g, r, f| gamma_at_most(g, f.max_degree * r, 1),
        },
        Predicate {
            name: "max-degree-2",
            relation: "gamma <= rho + 1 (connected, Delta <= 2)",
            kind: Theorem,
            applies: |f| f.connected && f.max_degree <= 2,
            test: |g, r, _| gamma_at_most(g, r + 1, 1),
        },
        Predicate { name: "tree-equality", relation: "gamma = rho (trees)", kind: Theorem, applies: |f| f.tree, test: |g, r, _| (int(r), g == r) },
        Predicate {
            name: "cactus-2rho",
            relation: "gamma <= 2 rho (cacti)",
            kind: Theorem,
            applies: |f| f.cactus,
            test: |g, r, _| gamma_at_most(g, 2 * r, 1),
        },
        Predicate {
            name: "cubic-5n-14",
            relation: "gamma <= 5n/14 (connected cubic, n >= 9)",
            kind: Theorem,
            applies: |f| f.connected && f.cubic && f.n >= 9,
            test: |g, _, f| gamma_at_most(g, 5 * f.n, 14),
        },
        Predicate {
            name: "bicubic-7n-48",
            relation: "rho >= 7n/48 (bicubic, n >= 16)",
            kind: Theorem,
            applies: |f| f.bicubic() && f.n >= SIDE_PACKING_MIN_ORDER,
            test: |_, r, f| (Rational::new(7 * f.n as i64, 48), 48 * r >= 7 * f.n),
        },
        Predicate {
            name: "bicubic-small-2rho",
            relation: "gamma <= 2 rho (bicubic, n <= 14)",
            kind: Theorem,
            applies: |f| f.bicubic() && f.n <= 14,
            test: |g, r, _| gamma_at_most(g, 2 * r, 1),
        },
        Predicate {
            name: "bicubic-120-49",
            relation: "gamma <= 120/49 rho (bicubic)",
            kind: Theorem,
            applies: Facts::bicubic,
            test: |g, r, _| gamma_at_most(g, 120 * r, 49),
        },
        Predicate { name: "mop-3rho", relation: "gamma <= 3 rho (mop)", kind: Theorem, applies: |f| f.mop, test: |g, r, _| gamma_at_most(g, 3 * r, 1) },
        Predicate {
            name: "mop-9-4",
            relation: "gamma <= 9/4 rho + t/4 (mop, t = #vertices of degree <= 3)",
            kind: Theorem,
            applies: |f| f.mop,
            test: |g, r, f| gamma_at_most(g, 9 * r + f.low_degree, 4),
        },
        Predicate {
            name: "biconvex-2rho",
            relation: "gamma <= 2 rho (connected biconvex)",
            kind: Theorem,
            applies: |f| f.biconvex,
            test: |g, r, _| gamma_at_most(g, 2 * r, 1),
        },
        Predicate {
            name: "subcubic-2rho-plus-1",
            relation: "gamma <= 2 rho + 1 (connected subcubic)",
            kind: Conjecture,
            applies: |f| f.connected && f.max_degree <= 3,
            test: |g, r, _| gamma_at_most(g, 2 * r + 1, 1),
        },
        Predicate {
            name: "delta-minus-1",
            relation: "gamma <= (Delta-1) rho + 1 (connected, n >= 2)",
            kind: Conjecture,
            applies: connected_pair,
            test: |g, r, f| gamma_at_most(g, (f.max_degree - 1) * r + 1, 1),
        },
        Predicate {
            name: "relaxed-max",
            relation: "gamma <= max{(Delta-1) rho, Delta (rho-1)} + 1 (connected, n >= 2)",
            kind: Conjecture,
            applies: connected_pair,
            test: |g, r, f| {
                let d = f.max_degree;
                gamma_at_most(g, ((d - 1) * r).max(d * (r - 1)) + 1, 1)
            },
        },
        Predicate { name: "mop-2rho", relation: "gamma <= 2 rho (mop)", kind: Conjecture, applies: |f| f.mop, test: |g, r, _| gamma_at_most(g, 2 * r, 1) },
    ]
});

pub fn predicates() -> &'static [Predicate] {
    &PREDICATES
}

pub fn predicate(name: &str) -> Option<&'static Predicate> {
    PREDICATES.iter().find(|p| p.name == name)
}

/// Checks every name against the registry.
pub fn validate_predicates(names: &[String]) -> Result<(), HarnessError> {
    match names.iter().find(|n| predicate(n).is_none()) {
        Some(bad) => Err(HarnessError::UnknownPredicate(bad.clone())),
        None => Ok(()),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvalOptions {
    /// Node budget for each of the two solves.
    pub budget: u64,
    /// Evaluate conjectures outside their stated classes.
    pub unrestricted: bool,
    /// Restrict to these predicate names; `None` runs the whole registry.
    pub predicates: Option<Vec<String>>,
}

impl Default for EvalOptions {
    fn default() -> Self {
        EvalOptions { budget: DEFAULT_BUDGET, unrestricted: false, predicates: None }
    }
}

impl EvalOptions {
    fn selected(&self, p: &Predicate) -> bool {
        self.predicates.as_ref().is_none_or(|names| names.iter().any(|n| n == p.name))
    }
}

pub const GAMMA_WITNESS: &str = "gamma";
pub const RHO_WITNESS: &str = "rho";

fn bare_record(graph_id: &str, class: &str, g: &Graph) -> ScanRecord {
    ScanRecord {
        graph_id: graph_id.to_string(),
        class: class.to_string(),
        n: g.n(),
        m: g.m(),
        max_degree: g.max_degree(),
        graph6: encode_graph6(g).unwrap_or_default(),
        status: SolveStatus::Inconclusive,
        gamma: None,
        rho: None,
        checks: Vec::new(),
        certificates: None,
    }
}

/// Exact γ and ρ with witnesses, then every applicable selected predicate.
pub fn try_evaluate(graph_id: &str, class: &str, g: &Graph, facts: Facts, opts: &EvalOptions) -> Result<ScanRecord, SolveError> {
    let gamma = domination_number(g, opts.budget)?;
    let rho = packing_number(g, opts.budget)?;
    let mut rec = bare_record(graph_id, class, g);
    rec.status = SolveStatus::Solved;
    rec.gamma = Some(gamma.value);
    rec.rho = Some(rho.value);
    rec.checks = PREDICATES
        .iter()
        .filter(|p| opts.selected(p) && p.applies(&facts, opts.unrestricted))
        .map(|p| p.check(gamma.value, rho.value, &facts))
        .collect();
    rec.certificates = Some(BTreeMap::from([(GAMMA_WITNESS.to_string(), gamma.witness.into_vec()), (RHO_WITNESS.to_string(), rho.witness.into_vec())]));
    Ok(rec)
}

/// Like [`try_evaluate`], but an exhausted budget yields an inconclusive
/// record with no checks.
pub fn evaluate(graph_id: &str, class: &str, g: &Graph, facts: Facts, opts: &EvalOptions) -> ScanRecord {
    try_evaluate(graph_id, class, g, facts, opts).unwrap_or_else(|_| bare_record(graph_id, class, g))
}

fn theorem_check(name: &str, value: Rational, satisfied: bool) -> BoundCheck {
    BoundCheck { name: name.to_string(), kind: BoundKind::Theorem, value, satisfied }
}

/// Everything the outerplanar pipeline produces for one graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MopPipeline {
    pub triangulation: Triangulation,
    pub coloring_ok: bool,
    pub clique_gamma: usize,
    pub clique_rho: usize,
    /// Union of the triangles of a minimum dominating set of the clique graph.
    pub projection: VertexSet,
    pub averaged: VertexSet,
    pub lifted: VertexSet,
}

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error(transparent)]
    Mop(#[from] MopError),
    #[error(transparent)]
    Solve(#[from] SolveError),
}

pub fn mop_pipeline(g: &Graph, budget: u64) -> Result<MopPipeline, PipelineError> {
    let t = outerplanar::recognize_mop(g)?;
    let dual = outerplanar::build_dual(&t);
    let cg = outerplanar::build_clique_graph(&t);
    let coloring = outerplanar::tokunaga_color(&t)?;
    let coloring_ok = outerplanar::check_four_coloring(&t, &dual, &coloring);
    let cg_gamma = domination_number(&cg.graph, budget)?;
    let cg_rho = packing_number(&cg.graph, budget)?;
    let projection = outerplanar::project_dominating(&t, &cg, &cg_gamma.witness)?;
    let averaged = outerplanar::averaged_dominating(&t, &projection, &coloring)?;
    let lifted = outerplanar::lift_packing(&t, &dual, &cg, &cg_rho.witness)?;
    Ok(MopPipeline { triangulation: t, coloring_ok, clique_gamma: cg_gamma.value, clique_rho: cg_rho.value, projection, averaged, lifted })
}

impl MopPipeline {
    pub fn checks(&self) -> Vec<BoundCheck> {
        let g = &self.triangulation.graph;
        let t = self.triangulation.low_degree_count();
        let (x, d) = (self.projection.len(), self.averaged.len());
        vec![
            theorem_check("clique-graph: gamma = rho", int(self.clique_rho), self.clique_gamma == self.clique_rho),
            theorem_check("coloring: four colors around every shared edge", int(4), self.coloring_ok),
            theorem_check(
                "averaged: 4|D| <= 3|X| + t",
                Rational::new((3 * x + t) as i64, 4),
                4 * d <= 3 * x + t && g.is_dominating(self.averaged.as_slice()),
            ),
            theorem_check(
                "lift: packing of size rho(clique graph)",
                int(self.clique_rho),
                self.lifted.len() == self.clique_rho && g.is_packing(self.lifted.as_slice()),
            ),
        ]
    }
}

/// One graph of a corpus with the class it was drawn from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusItem {
    pub id: String,
    pub class: GraphClass,
    pub graph: Graph,
    pub ordering: Option<ConvexOrdering>,
}

/// Evaluates one item and adds the class pipeline checks: certificates for
/// ordered biconvex graphs and the triangle-level constructions for mops.
pub fn evaluate_item(item: &CorpusItem, opts: &EvalOptions) -> ScanRecord {
    let g = &item.graph;
    let facts = Facts::of(g, item.ordering.as_ref());
    let mut rec = evaluate(&item.id, item.class.as_str(), g, facts, opts);
    if rec.status != SolveStatus::Solved {
        return rec;
    }
    if let (true, Some(ord)) = (facts.biconvex, &item.ordering) {
        match certify_biconvex(g, ord) {
            Ok(certs) => biconvex::append_certificate_checks(&mut rec, &certs),
            Err(e) => rec.checks.push(theorem_check(&format!("certificate: construction ({e})"), int(0), false)),
        }
    }
    if item.class == GraphClass::Mop && facts.mop {
        match mop_pipeline(g, opts.budget) {
            Ok(p) => rec.checks.extend(p.checks()),
            Err(PipelineError::Solve(_)) => rec.status = SolveStatus::Inconclusive,
            Err(e) => rec.checks.push(theorem_check(&format!("mop pipeline ({e})"), int(0), false)),
        }
    }
    rec
}

/// What to scan: a generated family over a size range.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanSpec {
    pub class: GraphClass,
    pub sizes: RangeInclusive<usize>,
    pub seed: u64,
    /// `None` enumerates exhaustively (bicubic, rook and tight only).
    pub samples: Option<usize>,
    pub jobs: usize,
    pub options: EvalOptions,
}

impl ScanSpec {
    pub fn for_class(class: GraphClass) -> ScanSpec {
        let (sizes, samples) = class.default_scan();
        ScanSpec { class, sizes, seed: 0, samples, jobs: default_jobs(), options: EvalOptions::default() }
    }

    pub fn validate(&self) -> Result<(), HarnessError> {
        if self.sizes.is_empty() {
            return Err(HarnessError::Spec(format!("empty size range {:?}", self.sizes)));
        }
        if self.samples == Some(0) {
            return Err(HarnessError::Spec("sample count must be at least 1".into()));
        }
        if self.jobs == 0 {
            return Err(HarnessError::Spec("parallelism must be at least 1".into()));
        }
        if let Some(names) = &self.options.predicates {
            validate_predicates(names)?;
        }
        Ok(())
    }
}

pub fn default_jobs() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

/// Independent stream seed for sample `i`.
fn sample_seed(seed: u64, i: usize) -> u64 {
    let mut z = seed.wrapping_add((i as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn item(id: String, class: GraphClass, graph: Graph) -> CorpusItem {
    CorpusItem { id, class, graph, ordering: None }
}

/// Deterministic corpus for a scan spec.
pub fn build_corpus(spec: &ScanSpec) -> Result<Vec<CorpusItem>, HarnessError> {
    spec.validate()?;
    let (lo, hi) = (*spec.sizes.start(), *spec.sizes.end());
    let class = spec.class;
    let mut out = Vec::new();
    let Some(samples) = spec.samples else {
        for n in lo..=hi {
            match class {
                GraphClass::Bicubic if n % 2 == 0 && n >= 6 => {
                    for (i, g) in generators::enumerate_bicubic(n)?.into_iter().enumerate() {
                        out.push(item(format!("bicubic/n{n}/{i}"), class, g));
                    }
                }
                GraphClass::Bicubic => {}
                GraphClass::Rook => out.push(item(format!("rook/{n}"), class, generators::gen_rook(n)?)),
                GraphClass::Tight => {
                    let (g, ord) = generators::gen_tight_family(n)?;
                    out.push(CorpusItem { id: format!("tight/k{n}"), class, graph: g, ordering: Some(ord) });
                }
                _ => return Err(HarnessError::Spec(format!("class {class} has no exhaustive enumeration; give a sample count"))),
            }
        }
        return Ok(out);
    };
    let span = hi - lo + 1;
    for i in 0..samples {
        let s = sample_seed(spec.seed, i);
        let n = lo + i % span;
        let id = format!("{class}/{i}");
        let next = match class {
            GraphClass::Tree => item(id, class, generators::gen_random_tree(n, s)?),
            GraphClass::Connected => item(id, class, generators::gen_random_connected(n, s)?),
            GraphClass::Mop => item(id, class, generators::gen_random_mop(n.max(3), s)?),
            GraphClass::Bicubic => {
                let even = if n % 2 == 0 { n } else { n + 1 };
                item(id, class, generators::gen_random_bicubic(even.max(6), s)?)
            }
            GraphClass::Biconvex => {
                let n = n.max(2);
                let nx = 1 + (s % (n as u64 - 1)) as usize;
                let (g, ord) = generators::gen_random_biconvex(nx, n - nx, s)?;
                CorpusItem { id, class, graph: g, ordering: Some(ord) }
            }
            GraphClass::Rook => item(id, class, generators::gen_rook(n)?),
            GraphClass::Tight => {
                let (g, ord) = generators::gen_tight_family(n)?;
                CorpusItem { id, class, graph: g, ordering: Some(ord) }
            }
            GraphClass::Any => match i % 3 {
                0 => item(id, GraphClass::Tree, generators::gen_random_tree(n, s)?),
                1 if n >= 3 => item(id, GraphClass::Mop, generators::gen_random_mop(n, s)?),
                _ => item(id, GraphClass::Connected, generators::gen_random_connected(n, s)?),
            },
        };
        out.push(next);
    }
    Ok(out)
}

/// Reads a corpus file. In graph6 files, `# orderX ...` / `# orderY ...`
/// comment lines attach convex orderings to the next graph; an edge-list
/// file holds a single graph.
pub fn read_corpus(text: &str, format: InputFormat, class: GraphClass, label: &str) -> Result<Vec<CorpusItem>, HarnessError> {
    match format {
        InputFormat::EdgeList => {
            let (g, orders) = read_edge_list_with_orderings(text)?;
            Ok(vec![CorpusItem { id: format!("{label}/0"), class, graph: g, ordering: orders.map(ConvexOrdering::from) }])
        }
        InputFormat::Graph6 => {
            let mut out = Vec::new();
            let mut pending = String::new();
            for line in text.lines().map(str::trim) {
                if let Some(comment) = line.strip_prefix('#') {
                    let c = comment.trim();
                    if c.starts_with("orderX") || c.starts_with("orderY") {
                        pending.push_str(c);
                        pending.push('\n');
                    }
                    continue;
                }
                if line.is_empty() {
                    continue;
                }
                let graph = decode_any(line)?;
                let ordering = OrderingLines::parse(&pending).map(ConvexOrdering::from);
                pending.clear();
                out.push(CorpusItem { id: format!("{label}/{}", out.len()), class, graph, ordering });
            }
            Ok(out)
        }
    }
}

/// Serializes one corpus item as graph6 preceded by its ordering comments.
pub fn write_graph6_item(item: &CorpusItem) -> Result<String, HarnessError> {
    let mut out = String::new();
    if let Some(ord) = &item.ordering {
        for line in OrderingLines::from(ord).to_lines().lines() {
            out.push_str(&format!("# {line}\n"));
        }
    }
    out.push_str(&encode_graph6(&item.graph)?);
    out.push('\n');
    Ok(out)
}

/// Exit status of a scan.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScanStatus {
    Pass,
    ConjectureCounterexample,
    TheoremFailure,
}

impl ScanStatus {
    pub fn exit_code(self) -> i32 {
        match self {
            ScanStatus::Pass => 0,
            ScanStatus::ConjectureCounterexample => 2,
            ScanStatus::TheoremFailure => 3,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanOutcome {
    pub records: Vec<ScanRecord>,
    pub summary: ScanSummary,
    pub dumps: Vec<PathBuf>,
}

impl ScanOutcome {
    pub fn status(&self) -> ScanStatus {
        if self.summary.theorem_failures > 0 {
            ScanStatus::TheoremFailure
        } else if self.summary.conjecture_violations > 0 {
            ScanStatus::ConjectureCounterexample
        } else {
            ScanStatus::Pass
        }
    }
}

/// Evaluates items on `jobs` workers; records come back in corpus order.
pub fn scan_items(items: &[CorpusItem], opts: &EvalOptions, jobs: usize) -> Result<Vec<ScanRecord>, HarnessError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| HarnessError::Spec(format!("cannot start {jobs} workers: {e}")))?;
    Ok(pool.install(|| items.par_iter().map(|it| evaluate_item(it, opts)).collect()))
}

/// Standalone counterexample file: annotation comments, then the graph.
pub fn counterexample_dump(item: &CorpusItem, rec: &ScanRecord) -> Result<String, HarnessError> {
    let mut out = format!("# graph {} class {}\n", rec.graph_id, rec.class);
    for c in rec.checks.iter().filter(|c| !c.satisfied) {
        let relation = predicate(&c.name).map_or("", |p| p.relation);
        out.push_str(&format!("# violated {} {:?} rhs {} {}\n", c.name, c.kind, c.value, relation).to_lowercase());
    }
    let witness = |key: &str| rec.certificates.as_ref().and_then(|c| c.get(key)).map(|w| w.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" "));
    if let (Some(g), Some(w)) = (rec.gamma, witness(GAMMA_WITNESS)) {
        out.push_str(&format!("# gamma {g} witness {w}\n"));
    }
    if let (Some(r), Some(w)) = (rec.rho, witness(RHO_WITNESS)) {
        out.push_str(&format!("# rho {r} witness {w}\n"));
    }
    out.push_str(&write_graph6_item(item)?);
    Ok(out)
}

/// Runs a scan: parallel evaluation, one serialized report (records then a
/// summary line) and a dump file per record with a failed check.
pub fn run_scan<W: Write>(items: &[CorpusItem], opts: &EvalOptions, jobs: usize, sink: W, dump_dir: Option<&Path>) -> Result<ScanOutcome, HarnessError> {
    let records = scan_items(items, opts, jobs)?;
    let mut summary = ScanSummary::default();
    let mut writer = ReportWriter::new(sink);
    let mut dumps = Vec::new();
    for (item, rec) in items.iter().zip(&records) {
        summary.absorb(rec);
        writer.write(&ReportLine::Graph(rec.clone()))?;
        if let Some(dir) = dump_dir {
            if rec.checks.iter().any(|c| !c.satisfied) {
                fs::create_dir_all(dir)?;
                let path = dir.join(format!("counterexample-{:05}.g6", dumps.len()));
                fs::write(&path, counterexample_dump(item, rec)?)?;
                dumps.push(path);
            }
        }
    }
    writer.write(&ReportLine::Summary(summary.clone()))?;
    Ok(ScanOutcome { records, summary, dumps })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CertStatus {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CertItem {
    pub name: String,
    pub status: CertStatus,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub set: Option<Vec<Vertex>>,
}

impl CertItem {
    fn new(name: &str, ok: bool, detail: impl Into<String>, set: Option<&VertexSet>) -> CertItem {
        CertItem {
            name: name.to_string(),
            status: if ok { CertStatus::Pass } else { CertStatus::Fail },
            detail: detail.into(),
            set: set.map(|s| s.as_slice().to_vec()),
        }
    }

    fn skipped(name: &str, detail: impl Into<String>) -> CertItem {
        CertItem { name: name.to_string(), status: CertStatus::Skipped, detail: detail.into(), set: None }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CertifyReport {
    pub class: String,
    pub items: Vec<CertItem>,
}

impl CertifyReport {
    pub fn passed(&self) -> bool {
        self.items.iter().all(|i| i.status != CertStatus::Fail)
    }
}

/// Runs the constructive pipeline of a class and verifies every certificate.
pub fn certify(g: &Graph, class: GraphClass, ordering: Option<&ConvexOrdering>, budget: u64) -> Result<CertifyReport, HarnessError> {
    let items = match class {
        GraphClass::Bicubic => certify_bicubic(g).map_err(|e| rejected(class, e))?,
        GraphClass::Mop => certify_mop(g, budget).map_err(|e| match e {
            PipelineError::Solve(s) => HarnessError::Solve(s),
            PipelineError::Mop(m) => rejected(class, m),
        })?,
        GraphClass::Biconvex | GraphClass::Tight => {
            let ord = ordering.ok_or_else(|| rejected(class, "convex orderings of both sides are required"))?;
            certify_biconvex_items(g, ord).map_err(|e| rejected(class, e))?
        }
        GraphClass::Tree => {
            if !(g.is_connected() && g.m() + 1 == g.n()) {
                return Err(rejected(class, "graph is not a tree"));
            }
            let gamma = domination_number(g, budget)?;
            let rho = packing_number(g, budget)?;
                        vec![CertItem::new("tree: gamma = rho", gamma.value == rho.value, format!("gamma {} rho {}", gamma.value, rho.value), Some(&rho.witness))]
        }
        other => return Err(HarnessError::Spec(format!("class {other} has no certificate pipeline"))),
    };
    Ok(CertifyReport { class: class.to_string(), items })
}

fn certify_bicubic(g: &Graph) -> Result<Vec<CertItem>, BicubicError> {
    let labeling = g.bipartition()?;
    let n = g.n();
    let mut items = Vec::new();
    let mut seed = VertexSet::empty(n);
    for side in [Side::X, Side::Y] {
        let name = format!("side packing {side:?}");
        if n < SIDE_PACKING_MIN_ORDER {
            // still validates the class before reporting the skip
            bicubic::maximal_side_packing(g, &labeling, side, &VertexSet::empty(n))?;
            items.push(CertItem::skipped(&name, format!("order {n} below {SIDE_PACKING_MIN_ORDER}")));
            continue;
        }
        let p = bicubic::side_packing(g, &labeling, side)?;
        let part = labeling.side(side).len();
        let ok = g.is_packing(p.as_slice()) && p.is_subset(labeling.side(side)) && 6 * p.len() >= part;
        items.push(CertItem::new(&name, ok, format!("|P| = {}, side size {part}", p.len()), Some(&p)));
        if side == Side::X {
            seed = p;
        }
    }
    let p = bicubic::maximal_side_packing(g, &labeling, Side::X, &seed)?;
    let layers = bicubic::layer_decompose(g, &labeling, &p)?;
    items.push(CertItem::new(
        "layers",
        true,
        format!("|P| {} |Q| {} |R| {} |S| {} |T| {} |W| {}", layers.p.len(), layers.q.len(), layers.r.len(), layers.s.len(), layers.t.len(), layers.w.len()),
        None,
    ));
    let combined = bicubic::combined_packing(g, &layers)?;
    let size_ok = n < SIDE_PACKING_MIN_ORDER || 48 * combined.len() >= 7 * n;
    items.push(CertItem::new(
        "combined packing P ∪ T",
        g.is_packing(combined.as_slice()) && size_ok,
        format!("size {} against 7n/48 = {}", combined.len(), Rational::new(7 * n as i64, 48)),
        Some(&combined),
    ));
    Ok(items)
}

fn certify_mop(g: &Graph, budget: u64) -> Result<Vec<CertItem>, PipelineError> {
    let p = mop_pipeline(g, budget)?;
    let mut items: Vec<CertItem> = p
        .checks()
        .into_iter()
        .map(|c| CertItem { name: c.name, status: if c.satisfied { CertStatus::Pass } else { CertStatus::Fail }, detail: format!("rhs {}", c.value), set: None })
        .collect();
    items[2].set = Some(p.averaged.as_slice().to_vec());
    items[3].set = Some(p.lifted.as_slice().to_vec());
    items.insert(0, CertItem::new("projection dominates", g.is_dominating(p.projection.as_slice()), format!("|X| = {}", p.projection.len()), Some(&p.projection)));
    Ok(items)
}

fn certify_biconvex_items(g: &Graph, ord: &ConvexOrdering) -> Result<Vec<CertItem>, BiconvexError> {
    let certs = certify_biconvex(g, ord)?;
    let (p, d) = (&certs.packing, &certs.dominating);
    let k = certs.decomposition.width();
    let mut items = vec![
        CertItem::new(&format!("packing ({})", p.branch), p.holds(g), format!("size {} with width k = {k}", p.set.len()), Some(&p.set)),
        CertItem::new(&format!("dominating ({})", d.branch), d.holds(g), format!("size {} within claimed {}", d.set.len(), d.claimed), Some(&d.set)),
    ];
    if biconvex::branches_pair(p, d) {
        items.push(CertItem::new("|dominating| <= 2|packing|", d.set.len() <= 2 * p.set.len(), format!("{} vs {}", d.set.len(), p.set.len()), None));
    }
    Ok(items)
}

/// Structure of a class as JSON: the trimmed core and block sequence of a
/// biconvex graph, or the triangles, dual tree and coloring of a mop.
pub fn decompose(g: &Graph, class: GraphClass, ordering: Option<&ConvexOrdering>) -> Result<Value, HarnessError> {
    match class {
        GraphClass::Biconvex | GraphClass::Tight => {
            let ord = ordering.ok_or_else(|| rejected(class, "convex orderings of both sides are required"))?;
            let core = biconvex::trim_core(g, ord).map_err(|e| rejected(class, e))?;
            let dec = biconvex::cb_decompose(g, &core).map_err(|e| rejected(class, e))?;
            let blocks: Vec<Value> = dec
                .blocks
                .iter()
                .map(|b| json!({"kx": b.kx, "ky": b.ky, "j": b.j, "j_side": b.j_side.map(|s| format!("{s:?}"))}))
                .collect();
            Ok(json!({
                "class": class.as_str(),
                "reversed": core.reversed,
                "x_l": core.x_l,
                "x_r": core.x_r,
                "xp": core.xp,
                "width": dec.width(),
                "blocks": blocks,
            }))
        }
        GraphClass::Mop => {
            let t = outerplanar::recognize_mop(g).map_err(|e| rejected(class, e))?;
            let dual = outerplanar::build_dual(&t);
            let coloring = outerplanar::tokunaga_color(&t).map_err(|e| rejected(class, e))?;
            let dual_edges: Vec<_> = dual.graph.edges().collect();
            Ok(json!({
                "class": class.as_str(),
                "boundary": t.boundary,
                "triangles": t.triangles,
                "dual_edges": dual_edges,
                "colors": coloring.colors,
                "low_degree": t.low_degree_count(),
            }))
        }
        other => Err(HarnessError::Spec(format!("class {other} has no decomposition"))),
    }
}

/// Graphs of a family: `count` seeded samples of order `n` (for rook and
/// tight, `n` is the parameter and one graph is produced).
pub fn generate(class: GraphClass, n: usize, seed: u64, count: usize) -> Result<Vec<CorpusItem>, HarnessError> {
    let spec = ScanSpec {
        class,
        sizes: n..=n,
        seed,
        samples: match class {
            GraphClass::Rook | GraphClass::Tight => None,
            GraphClass::Bicubic if count == 0 => None,
            _ => Some(count),
        },
        jobs: 1,
        options: EvalOptions::default(),
    };
    build_corpus(&spec)
}

pub const EXPERIMENTS: [&str; 4] = ["bicubic-small", "tight-family", "mop-bound", "biconvex-bound"];

/// Tight-family expectation checks: γ = 2k and ρ = k.
fn tight_checks(rec: &mut ScanRecord, k: usize) {
    if let (Some(g), Some(r)) = (rec.gamma, rec.rho) {
        rec.checks.push(theorem_check("tight: gamma = 2k", int(2 * k), g == 2 * k));
        rec.checks.push(theorem_check("tight: rho = k", int(k), r == k));
    }
}

/// Corpus of a named experiment; `extra` is an optional graph6 corpus
/// (the n = 14 bicubic graphs for `bicubic-small`).
pub fn experiment_corpus(name: &str, extra: Option<&str>) -> Result<Vec<CorpusItem>, HarnessError> {
    let spec = |class, sizes, seed, samples| ScanSpec { class, sizes, seed, samples, jobs: 1, options: EvalOptions::default() };
    let mut items = match name {
        "bicubic-small" => build_corpus(&spec(GraphClass::Bicubic, 6..=12, 0, None))?,
        "tight-family" => build_corpus(&spec(GraphClass::Tight, 1..=6, 0, None))?,
        "mop-bound" => build_corpus(&spec(GraphClass::Mop, 4..=18, 4, Some(100)))?,
        "biconvex-bound" => {
            let mut v = build_corpus(&spec(GraphClass::Biconvex, 2..=16, 12, Some(200)))?;
            v.extend(build_corpus(&spec(GraphClass::Tight, 1..=6, 0, None))?.into_iter().map(|mut it| {
                it.class = GraphClass::Biconvex;
                it
            }));
            v
        }
        other => return Err(HarnessError::UnknownExperiment(other.to_string())),
    };
    if let Some(text) = extra {
        let class = if name == "bicubic-small" { GraphClass::Bicubic } else { items.first().map_or(GraphClass::Any, |i| i.class) };
        items.extend(read_corpus(text, InputFormat::Graph6, class, "corpus")?);
    }
    Ok(items)
}

/// Runs a named experiment as a scan over its corpus.
pub fn reproduce<W: Write>(name: &str, extra: Option<&str>, jobs: usize, budget: u64, sink: W, dump_dir: Option<&Path>) -> Result<ScanOutcome, HarnessError> {
    let items = experiment_corpus(name, extra)?;
    let opts = EvalOptions { budget, ..EvalOptions::default() };
    if name != "tight-family" {
        return run_scan(&items, &opts, jobs, sink, dump_dir);
    }
    let mut records = scan_items(&items, &opts, jobs)?;
    let mut summary = ScanSummary::default();
    let mut writer = ReportWriter::new(sink);
    for (k, rec) in (1..).zip(records.iter_mut()) {
        tight_checks(rec, k);
        summary.absorb(rec);
        writer.write(&ReportLine::Graph(rec.clone()))?;
    }
    writer.write(&ReportLine::Summary(summary.clone()))?;
    Ok(ScanOutcome { records, summary, dumps: Vec::new() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::decode_graph6;

    const PETERSEN: &str = "IheA@GUAo";

    fn opts() -> EvalOptions {
        EvalOptions::default()
    }

    fn names(rec: &ScanRecord) -> Vec<&str> {
        rec.checks.iter().map(|c| c.name.as_str()).collect()
    }

    #[test]
    fn class_and_format_names() {
        for c in GraphClass::ALL {
            assert_eq!(c.as_str().parse::<GraphClass>().unwrap(), c);
        }
        assert!("planar".parse::<GraphClass>().is_err());
        assert_eq!("edgelist".parse::<InputFormat>().unwrap(), InputFormat::EdgeList);
        assert!(validate_predicates(&["mop-2rho".into()]).is_ok());
        assert!(matches!(validate_predicates(&["nope".into()]), Err(HarnessError::UnknownPredicate(_))));
    }

    #[test]
    fn facts_of_small_graphs() {
        let c4 = generators::gen_cycle(4).unwrap();
        let f = Facts::of(&c4, None);
        assert!(f.cactus && f.connected && !f.tree && !f.mop && f.bipartite);
        let sun = generators::gen_sun();
        let f = Facts::of(&sun, None);
        assert!(f.mop && !f.cactus);
        assert_eq!(f.low_degree, 3);
        let k33 = decode_graph6("Es\\o").unwrap();
        assert!(Facts::of(&k33, None).bicubic());
        let (g, ord) = generators::gen_tight_family(2).unwrap();
        assert!(Facts::of(&g, Some(&ord)).biconvex);
        assert!(!Facts::of(&g, None).biconvex);
    }

    #[test]
    fn compute_values() {
        let c4 = generators::gen_cycle(4).unwrap();
        let rec = evaluate("c4", "any", &c4, Facts::of(&c4, None), &opts());
        assert_eq!((rec.gamma, rec.rho), (Some(2), Some(1)));
        assert!(names(&rec).contains(&"cactus-2rho") && names(&rec).contains(&"max-degree-2"));
        assert!(rec.checks.iter().all(|c| c.satisfied));
        let k1 = Graph::empty(1);
        let rec = evaluate("k1", "any", &k1, Facts::of(&k1, None), &opts());
        assert_eq!((rec.gamma, rec.rho), (Some(1), Some(1)));
        let p = decode_graph6(PETERSEN).unwrap();
        let rec = evaluate("petersen", "any", &p, Facts::of(&p, None), &opts());
        assert_eq!((rec.gamma, rec.rho), (Some(3), Some(1)));
        // subcubic conjecture holds with equality
        let sub = rec.checks.iter().find(|c| c.name == "subcubic-2rho-plus-1").unwrap();
        assert!(sub.satisfied);
        assert_eq!(sub.value, Rational::integer(3));
    }

    #[test]
    fn exhausted_budget_is_inconclusive() {
        let g = generators::gen_random_connected(12, 5).unwrap();
        let o = EvalOptions { budget: 1, ..opts() };
        let rec = evaluate("x", "any", &g, Facts::of(&g, None), &o);
        assert_eq!(rec.status, SolveStatus::Inconclusive);
        assert!(rec.checks.is_empty());
        assert!(try_evaluate("x", "any", &g, Facts::of(&g, None), &o).is_err());
    }

    #[test]
    fn predicate_filter_and_unrestricted() {
        let rook = generators::gen_rook(4).unwrap();
        let f = Facts::of(&rook, None);
        let rec = evaluate("rook", "rook", &rook, f, &opts());
        assert_eq!(rec.conjecture_violations().count(), 0);
        let o = EvalOptions { unrestricted: true, predicates: Some(vec!["subcubic-2rho-plus-1".into()]), ..opts() };
        let rec = evaluate("rook", "rook", &rook, f, &o);
        assert_eq!(names(&rec), ["subcubic-2rho-plus-1"]);
        assert_eq!(rec.conjecture_violations().count(), 1);
    }

    #[test]
    fn corpora_are_deterministic() {
        for class in GraphClass::ALL {
            let mut spec = ScanSpec::for_class(class);
            if spec.samples.is_some() {
                spec.samples = Some(12);
            }
            let a = build_corpus(&spec).unwrap();
            let b = build_corpus(&spec).unwrap();
            assert_eq!(a, b, "{class}");
            assert!(!a.is_empty());
        }
        let bicubic = build_corpus(&ScanSpec::for_class(GraphClass::Bicubic)).unwrap();
        assert_eq!(bicubic.len(), 1 + 1 + 2 + 5);
        let mut spec = ScanSpec::for_class(GraphClass::Tree);
        spec.samples = None;
        assert!(build_corpus(&spec).is_err());
        spec.samples = Some(0);
        assert!(spec.validate().is_err());
    }

    #[test]
    fn corpus_text_round_trip() {
        let (g, ord) = generators::gen_random_biconvex(4, 5, 3).unwrap();
        let it = CorpusItem { id: "b".into(), class: GraphClass::Biconvex, graph: g.clone(), ordering: Some(ord.clone()) };
        let text = write_graph6_item(&it).unwrap() + &write_graph6_item(&item("t".into(), GraphClass::Any, generators::gen_path(3).unwrap())).unwrap();
        let back = read_corpus(&text, InputFormat::Graph6, GraphClass::Biconvex, "in").unwrap();
        assert_eq!(back.len(), 2);
        assert_eq!(back[0].graph, g);
        assert_eq!(back[0].ordering, Some(ord));
        assert_eq!(back[1].ordering, None);
    }

    #[test]
    fn scan_writes_records_summary_and_dumps() {
        let items: Vec<_> = (1..=4).map(|n| item(format!("rook/{n}"), GraphClass::Rook, generators::gen_rook(n).unwrap())).collect();
        let dir = tempfile::tempdir().unwrap();
        let o = EvalOptions { unrestricted: true, ..opts() };
        let mut buf = Vec::new();
        let out = run_scan(&items, &o, 2, &mut buf, Some(dir.path())).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), items.len() + 1);
        assert!(matches!(ReportLine::parse(text.lines().last().unwrap()).unwrap(), ReportLine::Summary(_)));
        assert_eq!(out.status(), ScanStatus::ConjectureCounterexample);
        assert_eq!(out.status().exit_code(), 2);
        assert!(!out.dumps.is_empty());
        let dump = fs::read_to_string(&out.dumps[0]).unwrap();
        let again = read_corpus(&dump, InputFormat::Graph6, GraphClass::Rook, "dump").unwrap();
        let rescan = run_scan(&again, &o, 1, Vec::new(), None).unwrap();
        assert_eq!(rescan.status(), ScanStatus::ConjectureCounterexample);
        let mut buf2 = Vec::new();
        run_scan(&items, &o, 3, &mut buf2, None).unwrap();
        assert_eq!(text.as_bytes(), &buf2[..]);
    }

    #[test]
    fn certify_pipelines() {
        let (g, ord) = generators::gen_tight_family(3).unwrap();
        let rep = certify(&g, GraphClass::Biconvex, Some(&ord), DEFAULT_BUDGET).unwrap();
        assert!(rep.passed());
        let sizes: Vec<_> = rep.items.iter().map(|i| i.set.as_ref().map(Vec::len)).collect();
        assert_eq!(sizes[0], Some(3));
        assert_eq!(sizes[1], Some(6));
        let sun = generators::gen_sun();
        let rep = certify(&sun, GraphClass::Mop, None, DEFAULT_BUDGET).unwrap();
        assert!(rep.passed(), "{rep:?}");
        let c4 = generators::gen_cycle(4).unwrap();
        assert!(matches!(certify(&c4, GraphClass::Mop, None, DEFAULT_BUDGET), Err(HarnessError::Rejected { .. })));
        let k33 = decode_graph6("Es\\o").unwrap();
        let rep = certify(&k33, GraphClass::Bicubic, None, DEFAULT_BUDGET).unwrap();
        assert!(rep.passed());
        assert_eq!(rep.items[0].status, CertStatus::Skipped);
        let mk = decode_graph6("OhEGHC@AG?_PO@?Ga?K?P").unwrap();
        assert!(certify(&mk, GraphClass::Bicubic, None, DEFAULT_BUDGET).unwrap().passed());
        assert!(certify(&generators::gen_path(5).unwrap(), GraphClass::Tree, None, DEFAULT_BUDGET).unwrap().passed());
    }

    #[test]
    fn decompositions() {
        let (g, ord) = generators::gen_tight_family(3).unwrap();
        let v = decompose(&g, GraphClass::Biconvex, Some(&ord)).unwrap();
        assert_eq!(v["width"], 3);
        let v = decompose(&generators::gen_sun(), GraphClass::Mop, None).unwrap();
        assert_eq!(v["triangles"].as_array().unwrap().len(), 4);
        assert!(decompose(&g, GraphClass::Tree, None).is_err());
    }

    #[test]
    fn experiments() {
        assert!(matches!(experiment_corpus("nope", None), Err(HarnessError::UnknownExperiment(_))));
        let out = reproduce("bicubic-small", None, 2, DEFAULT_BUDGET, Vec::new(), None).unwrap();
        assert_eq!(out.records.len(), 9);
        assert_eq!(out.status(), ScanStatus::Pass);
        assert!(out.records.iter().all(|r| names(r).contains(&"bicubic-small-2rho")));
    }
}
