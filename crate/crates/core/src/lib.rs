//! Exact domination and packing numbers for small graphs, together with
//! constructive certificate builders for bicubic, maximal outerplanar and
//! biconvex graphs.
//!
//! The crate is organised bottom-up:
//!
//! - [`graph`]: immutable simple graphs, vertex sets, distances and the
//!   packing / domination checkers every other module relies on.
//! - [`io`]: graph6 / sparse6 / edge-list codecs and the line-delimited
//!   scan report format.
//! - [`solvers`]: branch-and-bound for γ(G) and ρ(G) plus brute-force oracles.
//! - [`bicubic`], [`outerplanar`], [`biconvex`]: class-specific constructions
//!   that emit checkable packings, dominating sets, colorings and
//!   decompositions.
//! - [`generators`]: seeded graph families.
//! - [`harness`]: predicate registry, corpus scans and named experiments.

pub mod biconvex;
pub mod bicubic;
pub mod generators;
pub mod graph;
pub mod harness;
pub mod io;
pub mod outerplanar;
pub mod solvers;

pub use graph::{BipartiteLabeling, Distance, Graph, GraphError, Side, Vertex, VertexSet};
