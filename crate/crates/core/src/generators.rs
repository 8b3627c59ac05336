//! Deterministic and seeded graph families. Every random generator draws
//! from a ChaCha stream seeded with the given `u64`, so equal seeds give
//! equal graphs on every platform.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::biconvex::ConvexOrdering;
use crate::graph::{Graph, Vertex};

pub type Seed = u64;

/// Attempts allowed before the bicubic configuration model gives up.
pub const BICUBIC_RETRIES: usize = 10_000;

/// Largest order handled by [`enumerate_bicubic`].
pub const ENUMERATION_CAP: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("parameter {name} = {value} is below {min}")]
    TooSmall { name: &'static str, value: usize, min: usize },
    #[error("bicubic order must be even, got {0}")]
    OddOrder(usize),
    #[error("no simple connected sample after {0} attempts")]
    RetryBudget(usize),
    #[error("enumeration supports even n in 6..={ENUMERATION_CAP}, got {0}")]
    Unsupported(usize),
}

fn at_least(name: &'static str, value: usize, min: usize) -> Result<(), GenError> {
    if value < min {
        Err(GenError::TooSmall { name, value, min })
    } else {
        Ok(())
    }
}

fn rng(seed: Seed) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Chain of `k` copies of K_{2,2}; block i holds x_{2i-1}, x_{2i} and
/// y_{2i-1}, y_{2i}, and x_{2i} is joined to y_{2i+1}. X ids are `0..2k`,
/// Y ids `2k..4k`, both in index order.
pub fn gen_tight_family(k: usize) -> Result<(Graph, ConvexOrdering), GenError> {
    at_least("k", k, 1)?;
    let y = |j: usize| 2 * k + j;
    let mut edges = Vec::with_capacity(5 * k - 1);
    for b in 0..k {
        for x in [2 * b, 2 * b + 1] {
            edges.extend([(x, y(2 * b)), (x, y(2 * b + 1))]);
        }
        if b + 1 < k {
            edges.push((2 * b + 1, y(2 * b + 2)));
        }
    }
    let g = Graph::from_edges(4 * k, edges).expect("tight family edges are simple");
    Ok((g, ConvexOrdering { order_x: (0..2 * k).collect(), order_y: (2 * k..4 * k).collect() }))
}

/// Triangle 0, 1, 2 with an ear on each side: 3 on 01, 4 on 12, 5 on 20.
pub fn gen_sun() -> Graph {
    Graph::from_edges(6, [(0, 1), (1, 2), (2, 0), (0, 3), (1, 3), (1, 4), (2, 4), (2, 5), (0, 5)]).expect("sun edges are simple")
}

/// K_n □ K_n with cell (i, j) at id `i * n + j`.
pub fn gen_rook(n: usize) -> Result<Graph, GenError> {
    at_least("n", n, 1)?;
    let mut edges = Vec::new();
    for a in 0..n * n {
        for b in a + 1..n * n {
            if a / n == b / n || a % n == b % n {
                edges.push((a, b));
            }
        }
    }
    Ok(Graph::from_edges(n * n, edges).expect("rook edges are simple"))
}

pub fn gen_path(n: usize) -> Result<Graph, GenError> {
    at_least("n", n, 1)?;
    Ok(Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).expect("path edges are simple"))
}

pub fn gen_cycle(n: usize) -> Result<Graph, GenError> {
    at_least("n", n, 3)?;
    Ok(Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).expect("cycle edges are simple"))
}

/// Each vertex after the first attaches to a uniformly chosen earlier one.
pub fn gen_random_tree(n: usize, seed: Seed) -> Result<Graph, GenError> {
    at_least("n", n, 1)?;
    let mut r = rng(seed);
    let edges: Vec<_> = (1..n).map(|v| (r.gen_range(0..v), v)).collect();
    Ok(Graph::from_edges(n, edges).expect("tree edges are simple"))
}

/// Random spanning tree plus each remaining pair with a per-graph density
/// drawn from [0.1, 0.6).
pub fn gen_random_connected(n: usize, seed: Seed) -> Result<Graph, GenError> {
    at_least("n", n, 1)?;
    let mut r = rng(seed);
    let p: f64 = r.gen_range(0.1..0.6);
    let mut perm: Vec<Vertex> = (0..n).collect();
    perm.shuffle(&mut r);
    let mut edges = std::collections::BTreeSet::new();
    for i in 1..n {
        let (a, b) = (perm[i], perm[r.gen_range(0..i)]);
        edges.insert((a.min(b), a.max(b)));
    }
    for a in 0..n {
        for b in a + 1..n {
            if !edges.contains(&(a, b)) && r.gen_bool(p) {
                edges.insert((a, b));
            }
        }
    }
    Ok(Graph::from_edges(n, edges).expect("edges are simple"))
}

/// Triangulation counts of polygons, `count(m)` for `m + 2` corners.
enum Catalan {
    Exact(Vec<u128>),
    Log(Vec<f64>),
}

impl Catalan {
    fn new(max: usize) -> Self {
        let mut exact = vec![1u128];
        for m in 0..max {
            let next = exact[m].checked_mul(2 * (2 * m as u128 + 1)).map(|x| x / (m as u128 + 2));
            match next {
                Some(x) => exact.push(x),
                None => {
                    let mut logs = vec![0.0f64];
                    for m in 0..max {
                        logs.push(logs[m] + ((2.0 * (2.0 * m as f64 + 1.0)) / (m as f64 + 2.0)).ln());
                    }
                    return Catalan::Log(logs);
                }
            }
        }
        Catalan::Exact(exact)
    }

    /// Picks the apex offset `a` in `0..=total` (left part has `a`
    /// triangles, right part `total - a`) with weight count(a)·count(total-a).
    fn split<R: Rng>(&self, total: usize, r: &mut R) -> usize {
        match self {
            Catalan::Exact(c) => {
                let mut pick = r.gen_range(0..c[total + 1]);
                for a in 0..=total {
                    let w = c[a] * c[total - a];
                    if pick < w {
                        return a;
                    }
                    pick -= w;
                }
                unreachable!("weights sum to the next Catalan number")
            }
            Catalan::Log(l) => {
                let mut pick: f64 = r.gen::<f64>();
                for a in 0..=total {
                    let w = (l[a] + l[total - a] - l[total + 1]).exp();
                    if pick < w {
                        return a;
                    }
                    pick -= w;
                }
                total
            }
        }
    }
}

/// Uniformly random triangulation of an n-gon, relabeled at random.
pub fn gen_random_mop(n: usize, seed: Seed) -> Result<Graph, GenError> {
    at_least("n", n, 3)?;
    let mut r = rng(seed);
    let catalan = Catalan::new(n);
    let mut edges: Vec<(Vertex, Vertex)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    // polygon i..=j with side (i, j) still to be triangulated
    let mut stack = vec![(0, n - 1)];
    while let Some((i, j)) = stack.pop() {
        if j - i < 2 {
            continue;
        }
        let total = j - i - 2;
        let k = i + 1 + catalan.split(total, &mut r);
        for (a, b) in [(i, k), (k, j)] {
            if b - a >= 2 {
                edges.push((a, b));
                stack.push((a, b));
            }
        }
    }
    let mut label: Vec<Vertex> = (0..n).collect();
    label.shuffle(&mut r);
    let edges: Vec<_> = edges.into_iter().map(|(a, b)| (label[a], label[b])).collect();
    Ok(Graph::from_edges(n, edges).expect("triangulation edges are simple"))
}

/// Bipartite configuration model with three stubs per vertex, rejecting
/// parallel edges and disconnected samples. X ids are `0..n/2`.
pub fn gen_random_bicubic(n: usize, seed: Seed) -> Result<Graph, GenError> {
    at_least("n", n, 6)?;
    if !n.is_multiple_of(2) {
        return Err(GenError::OddOrder(n));
    }
    let h = n / 2;
    let mut r = rng(seed);
    let mut stubs: Vec<Vertex> = (0..3 * h).map(|s| h + s / 3).collect();
    for _ in 0..BICUBIC_RETRIES {
        stubs.shuffle(&mut r);
        let edges: Vec<_> = (0..3 * h).map(|s| (s / 3, stubs[s])).collect();
        if let Ok(g) = Graph::from_edges(n, edges) {
            if g.is_connected() {
                return Ok(g);
            }
        }
    }
    Err(GenError::RetryBudget(BICUBIC_RETRIES))
}

/// Random connected biconvex graph with orderings satisfying the trimming
/// requirements: a core of monotone intervals over the Y order (both ends
/// nondecreasing, consecutive intervals overlapping) flanked on each side by
/// X vertices whose intervals shrink away from the core inside the
/// neighborhood of the outermost core vertex. Ids are shuffled and the X
/// order is reversed half of the time.
pub fn gen_random_biconvex(nx: usize, ny: usize, seed: Seed) -> Result<(Graph, ConvexOrdering), GenError> {
    at_least("nX", nx, 1)?;
    at_least("nY", ny, 1)?;
    let mut r = rng(seed);
    let core = r.gen_range(1..=nx);
    let left = r.gen_range(0..=nx - core);
    let right = nx - core - left;

    let mut core_iv = Vec::with_capacity(core);
    let (mut l, mut rr) = (0usize, r.gen_range(0..ny.min(3)));
    for j in 0..core {
        if j > 0 {
            l = r.gen_range(l..=rr);
            rr = (rr + r.gen_range(0..=2)).max(l).min(ny - 1);
        }
        if j == core - 1 {
            rr = ny - 1;
        }
        core_iv.push((l, rr));
    }
    let shrink = |r: &mut ChaCha8Rng, count: usize, start: (usize, usize)| -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(count);
        let (mut a, mut b) = start;
        for _ in 0..count {
            let na = r.gen_range(a..=b);
            let nb = r.gen_range(na..=b);
            (a, b) = (na, nb);
            out.push((a, b));
        }
        out
    };
    let mut left_iv = shrink(&mut r, left, core_iv[0]);
    left_iv.reverse();
    let right_iv = shrink(&mut r, right, core_iv[core - 1]);
    let intervals: Vec<(usize, usize)> = left_iv.into_iter().chain(core_iv).chain(right_iv).collect();

    let n = nx + ny;
    let mut ids: Vec<Vertex> = (0..n).collect();
    ids.shuffle(&mut r);
    let (xs, ys) = ids.split_at(nx);
    let edges: Vec<_> = intervals.iter().enumerate().flat_map(|(i, &(a, b))| (a..=b).map(move |j| (xs[i], ys[j]))).collect();
    let g = Graph::from_edges(n, edges).expect("interval edges are simple");
    let mut order_x = xs.to_vec();
    if r.gen_bool(0.5) {
        order_x.reverse();
    }
    Ok((g, ConvexOrdering { order_x, order_y: ys.to_vec() }))
}

/// All connected cubic bipartite graphs on `n` vertices up to isomorphism,
/// sides `0..n/2` and `n/2..n`.
pub fn enumerate_bicubic(n: usize) -> Result<Vec<Graph>, GenError> {
    if !n.is_multiple_of(2) || !(6..=ENUMERATION_CAP).contains(&n) {
        return Err(GenError::Unsupported(n));
    }
    let h = n / 2;
    let triples: Vec<u32> = (0u32..1 << h).filter(|m| m.count_ones() == 3).collect();
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    let mut rows = Vec::with_capacity(h);
    let mut col = vec![0u8; h];
    extend_rows(h, &triples, 0, &mut rows, &mut col, &mut |rows: &[u32]| {
        let g = biadjacency_graph(h, rows);
        if g.is_connected() && seen.insert(canonical_form(h, rows)) {
            out.push(g);
        }
    });
    Ok(out)
}

/// Rows as a nondecreasing sequence of 3-subsets with every column used at
/// most three times.
fn extend_rows(h: usize, triples: &[u32], from: usize, rows: &mut Vec<u32>, col: &mut [u8], emit: &mut dyn FnMut(&[u32])) {
    if rows.len() == h {
        emit(rows);
        return;
    }
    // each remaining row adds 3 to the column total; columns must end at 3
    for (ti, &t) in triples.iter().enumerate().skip(from) {
        if (0..h).any(|c| t >> c & 1 == 1 && col[c] == 3) {
            continue;
        }
        for c in (0..h).filter(|&c| t >> c & 1 == 1) {
            col[c] += 1;
        }
        let left = h - rows.len() - 1;
        if col.iter().all(|&c| 3 - c as usize <= left) {
            rows.push(t);
            extend_rows(h, triples, ti, rows, col, emit);
            rows.pop();
        }
        for c in (0..h).filter(|&c| t >> c & 1 == 1) {
            col[c] -= 1;
        }
    }
}

fn biadjacency_graph(h: usize, rows: &[u32]) -> Graph {
    let edges: Vec<_> = rows.iter().enumerate().flat_map(|(i, &m)| (0..h).filter(move |&c| m >> c & 1 == 1).map(move |c| (i, h + c))).collect();
    Graph::from_edges(2 * h, edges).expect("biadjacency edges are simple")
}

fn transpose(h: usize, rows: &[u32]) -> Vec<u32> {
    (0..h).map(|c| (0..h).fold(0, |acc, r| acc | ((rows[r] >> c & 1) << r))).collect()
}

/// Minimum, over side swap and row permutations, of the sorted column
/// signatures; equal for two biadjacency matrices iff the graphs are
/// isomorphic by a side-preserving or side-swapping map.
pub(crate) fn canonical_form(h: usize, rows: &[u32]) -> Vec<u32> {
    let mut best: Option<Vec<u32>> = None;
    for m in [rows.to_vec(), transpose(h, rows)] {
        let mut perm: Vec<usize> = (0..h).collect();
        permutations(&mut perm, 0, &mut |p| {
            let mut cols: Vec<u32> = (0..h).map(|c| (0..h).fold(0, |acc, i| acc | ((m[p[i]] >> c & 1) << (h - 1 - i)))).collect();
            cols.sort_unstable();
            if best.as_ref().is_none_or(|b| cols < *b) {
                best = Some(cols);
            }
        });
    }
    best.expect("at least one permutation")
}

fn permutations(p: &mut [usize], k: usize, f: &mut dyn FnMut(&[usize])) {
    if k == p.len() {
        f(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permutations(p, k + 1, f);
        p.swap(k, i);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::biconvex::{trim_core, validate_convex};
    use crate::io::encode_graph6;
    use crate::outerplanar::recognize_mop;
    use crate::solvers::{brute_gamma, brute_rho};

    #[test]
    fn tight_family_shape() {
        let (g, ord) = gen_tight_family(1).unwrap();
        assert_eq!((g.n(), g.m()), (4, 4));
        assert!(g.is_regular(2));
        let (g, ord3) = gen_tight_family(3).unwrap();
        assert_eq!((g.n(), g.m()), (12, 14));
        assert!(validate_convex(&g, &ord3));
        assert!(validate_convex(&gen_tight_family(1).unwrap().0, &ord));
        assert_eq!(brute_rho(&g).unwrap(), 3);
        assert!(gen_tight_family(0).is_err());
    }

    #[test]
    fn fixed_families() {
        let sun = gen_sun();
        assert!(recognize_mop(&sun).is_ok());
        assert_eq!((brute_gamma(&sun).unwrap(), brute_rho(&sun).unwrap()), (2, 1));
        let c4 = gen_cycle(4).unwrap();
        let r2 = gen_rook(2).unwrap();
        assert_eq!(r2.m(), 4);
        assert!(r2.is_regular(2) && r2.is_connected());
        assert_eq!(brute_gamma(&c4).unwrap(), brute_gamma(&r2).unwrap());
        let r3 = gen_rook(3).unwrap();
        assert_eq!((brute_gamma(&r3).unwrap(), brute_rho(&r3).unwrap()), (3, 1));
        let r4 = gen_rook(4).unwrap();
        assert_eq!((brute_gamma(&r4).unwrap(), brute_rho(&r4).unwrap()), (4, 1));
    }

    #[test]
    fn random_families_pass_their_validators() {
        assert_eq!(gen_random_tree(1, 7).unwrap().n(), 1);
        for seed in 0..40 {
            let t = gen_random_tree(25, seed).unwrap();
            assert!(t.is_connected() && t.m() == 24);
            let m = gen_random_mop(3 + seed as usize % 20, seed).unwrap();
            assert_eq!(m.m(), 2 * m.n() - 3);
            assert!(recognize_mop(&m).is_ok());
            let b = gen_random_bicubic(14, seed).unwrap();
            assert!(b.is_regular(3) && b.is_connected() && b.bipartition().is_ok());
            let (g, ord) = gen_random_biconvex(1 + seed as usize % 9, 1 + seed as usize % 7, seed).unwrap();
            assert!(validate_convex(&g, &ord) && g.is_connected());
            trim_core(&g, &ord).unwrap();
            let c = gen_random_connected(10, seed).unwrap();
            assert!(c.is_connected());
        }
        assert_eq!(gen_random_bicubic(9, 1), Err(GenError::OddOrder(9)));
    }

    #[test]
    fn large_mop_uses_log_weights() {
        let g = gen_random_mop(120, 3).unwrap();
        assert!(recognize_mop(&g).is_ok());
    }

    #[test]
    fn seeds_are_deterministic() {
        for seed in [0, 1, 99] {
            let a = encode_graph6(&gen_random_mop(15, seed).unwrap()).unwrap();
            let b = encode_graph6(&gen_random_mop(15, seed).unwrap()).unwrap();
            assert_eq!(a, b);
            let a = gen_random_biconvex(6, 5, seed).unwrap();
            let b = gen_random_biconvex(6, 5, seed).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn bicubic_census() {
        let expected = [(6, 1), (8, 1), (10, 2), (12, 5)];
        for (n, count) in expected {
            let all = enumerate_bicubic(n).unwrap();
            assert_eq!(all.len(), count, "n = {n}");
            for g in &all {
                assert!(g.is_regular(3) && g.is_connected() && g.bipartition().is_ok());
            }
        }
        assert_eq!(enumerate_bicubic(14), Err(GenError::Unsupported(14)));
    }

    #[test]
    fn canonical_form_ignores_labels() {
        let rows = [0b0111u32, 0b1011, 0b1101, 0b1110];
        let swapped = [0b1110u32, 0b0111, 0b1101, 0b1011];
        assert_eq!(canonical_form(4, &rows), canonical_form(4, &swapped));
    }
}
