//! Acceptance suite: one PASS/FAIL line per criterion. All checks are exact
//! integer comparisons (tolerance 0); wall-clock limits are pinned below.

use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use dompack::biconvex::{branches_pair, certify_biconvex, validate_convex};
use dompack::bicubic::side_packing;
use dompack::generators::{enumerate_bicubic, gen_random_biconvex, gen_random_bicubic, gen_random_connected, gen_random_mop, gen_random_tree, gen_tight_family};
use dompack::harness::{self, CorpusItem, EvalOptions, GraphClass, InputFormat, ScanSpec};
use dompack::io::{encode_graph6, read_graph6_file};
use dompack::outerplanar::{build_clique_graph, build_dual, check_four_coloring, lift_packing, recognize_mop, tokunaga_color};
use dompack::solvers::{brute_gamma, brute_rho, domination_number, packing_number, DEFAULT_BUDGET};
use dompack::{Graph, Side};

const ORACLE_LIMIT: Duration = Duration::from_secs(5 * 60);
const SCAN_LIMIT: Duration = Duration::from_secs(15 * 60);
const SCAN_WORKERS: usize = 4;
/// Optional path to a graph6 file of the connected bicubic graphs on 14 vertices.
const BICUBIC14_ENV: &str = "DOMPACK_BICUBIC14";

type Verdict = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Verdict + 'a>);

fn gamma(g: &Graph) -> usize {
    domination_number(g, DEFAULT_BUDGET).expect("solved within budget").value
}

fn rho(g: &Graph) -> usize {
    packing_number(g, DEFAULT_BUDGET).expect("solved within budget").value
}

fn fail_if(failures: Vec<String>, ok: String) -> Verdict {
    if failures.is_empty() {
        Ok(ok)
    } else {
        let shown: Vec<_> = failures.iter().take(6).map(String::as_str).collect();
        Err(format!("{} failures: {}", failures.len(), shown.join("; ")))
    }
}

fn oracle_equivalence() -> Verdict {
    let start = Instant::now();
    let mut bad = Vec::new();
    for seed in 0..500u64 {
        let g = gen_random_connected(1 + seed as usize % 12, seed).unwrap();
        let (bg, br) = (brute_gamma(&g).unwrap(), brute_rho(&g).unwrap());
        let (eg, er) = (gamma(&g), rho(&g));
        if (bg, br) != (eg, er) {
            bad.push(format!("seed {seed}: brute ({bg},{br}) vs solver ({eg},{er})"));
        }
    }
    let took = start.elapsed();
    if took > ORACLE_LIMIT {
        bad.push(format!("took {took:?}, limit {ORACLE_LIMIT:?}"));
    }
    fail_if(bad, format!("500 graphs, n <= 12, exact match in {took:.1?}"))
}

fn trees() -> Verdict {
    let bad: Vec<_> = (0..300u64)
        .filter_map(|seed| {
            let t = gen_random_tree(1 + seed as usize % 40, seed).unwrap();
            let (g, r) = (gamma(&t), rho(&t));
            (g != r).then(|| format!("seed {seed}: gamma {g} rho {r}"))
        })
        .collect();
    fail_if(bad, "300 trees, n <= 40, gamma = rho".into())
}

fn bicubic_small() -> Verdict {
    let mut graphs: Vec<(String, Graph)> = Vec::new();
    for n in [6, 8, 10, 12] {
        graphs.extend(enumerate_bicubic(n).unwrap().into_iter().enumerate().map(|(i, g)| (format!("n{n}/{i}"), g)));
    }
    let census = graphs.len();
    let corpus = match std::env::var(BICUBIC14_ENV) {
        Ok(path) => {
            let text = std::fs::read_to_string(&path).map_err(|e| format!("{path}: {e}"))?;
            let g14 = read_graph6_file(&text).map_err(|e| format!("{path}: {e}"))?;
            let count = g14.len();
            graphs.extend(g14.into_iter().enumerate().map(|(i, g)| (format!("n14/{i}"), g)));
            format!("{count} graphs from {path}")
        }
        Err(_) => {
            // exercise the corpus path with sampled n = 14 graphs written as graph6
            let text: String = (0..20).map(|s| encode_graph6(&gen_random_bicubic(14, s).unwrap()).unwrap() + "\n").collect();
            let g14 = read_graph6_file(&text).unwrap();
            graphs.extend(g14.into_iter().enumerate().map(|(i, g)| (format!("n14-sample/{i}"), g)));
            format!("20 sampled n = 14 graphs (set {BICUBIC14_ENV} for the full corpus)")
        }
    };
    let bad: Vec<_> = graphs
        .iter()
        .filter_map(|(id, g)| {
            let (a, b) = (gamma(g), rho(g));
            (a > 2 * b).then(|| format!("{id}: gamma {a} > 2 rho {}", 2 * b))
        })
        .collect();
    fail_if(bad, format!("census 1/1/2/5 = {census} graphs plus {corpus}: gamma <= 2 rho"))
}

fn bicubic_corpus() -> Vec<Graph> {
    (0..100u64).map(|s| gen_random_bicubic(16 + 2 * (s as usize % 5), s).unwrap()).collect()
}

fn bicubic_bounds(corpus: &[Graph]) -> Verdict {
    let mut bad = Vec::new();
    for (i, g) in corpus.iter().enumerate() {
        let n = g.n();
        let (a, b) = (gamma(g), rho(g));
        if b < (7 * n).div_ceil(48) {
            bad.push(format!("#{i}: rho {b} < ceil(7*{n}/48)"));
        }
        if 14 * a > 5 * n {
            bad.push(format!("#{i}: gamma {a} > 5*{n}/14"));
        }
        if 49 * a > 120 * b {
            bad.push(format!("#{i}: gamma {a} > 120/49 * {b}"));
        }
    }
    fail_if(bad, "100 bicubic graphs, 16 <= n <= 24: rho >= ceil(7n/48), gamma <= 5n/14, gamma <= 120/49 rho".into())
}

fn side_packings(corpus: &[Graph]) -> Verdict {
    let mut bad = Vec::new();
    for (i, g) in corpus.iter().enumerate() {
        let labeling = g.bipartition().unwrap();
        for side in [Side::X, Side::Y] {
            match side_packing(g, &labeling, side) {
                Ok(p) => {
                    let part = labeling.side(side);
                    if !(g.is_packing(p.as_slice()) && p.is_subset(part) && 6 * p.len() >= part.len()) {
                        bad.push(format!("#{i} {side:?}: invalid set of size {}", p.len()));
                    }
                }
                Err(e) => bad.push(format!("#{i} {side:?}: {e}")),
            }
        }
    }
    fail_if(bad, "200 side packings (both sides), 6|P| >= |side|".into())
}

fn mop_corpus() -> Vec<Graph> {
    (0..200u64).map(|s| gen_random_mop(4 + s as usize % 15, s).unwrap()).collect()
}

fn mop_bounds(corpus: &[Graph]) -> Verdict {
    let mut bad = Vec::new();
    for (i, g) in corpus.iter().enumerate() {
        let t = recognize_mop(g).unwrap();
        let low = t.low_degree_count();
        let (a, b) = (gamma(g), rho(g));
        if a > 3 * b || 4 * a > 9 * b + low {
            bad.push(format!("#{i}: gamma {a}, rho {b}, t {low}"));
        }
        let dual = build_dual(&t);
        let cg = build_clique_graph(&t);
        let cg_gamma = gamma(&cg.graph);
        let z = packing_number(&cg.graph, DEFAULT_BUDGET).unwrap().witness;
        if cg_gamma != z.len() {
            bad.push(format!("#{i}: clique graph gamma {cg_gamma} != rho {}", z.len()));
        }
        match lift_packing(&t, &dual, &cg, &z) {
            Ok(p) if p.len() == z.len() && g.is_packing(p.as_slice()) => {}
            Ok(p) => bad.push(format!("#{i}: lifted set of size {} vs {}", p.len(), z.len())),
            Err(e) => bad.push(format!("#{i}: lift failed: {e}")),
        }
    }
    fail_if(bad, "200 mops, 4 <= n <= 18: gamma <= min{3 rho, 9/4 rho + t/4}, lift = rho(clique), clique gamma = rho".into())
}

fn tokunaga(corpus: &[Graph]) -> Verdict {
    let bad: Vec<_> = corpus
        .iter()
        .enumerate()
        .filter_map(|(i, g)| {
            let t = recognize_mop(g).unwrap();
            let ok = tokunaga_color(&t).is_ok_and(|c| check_four_coloring(&t, &build_dual(&t), &c));
            (!ok).then(|| format!("#{i}"))
        })
        .collect();
    fail_if(bad, "200 mops: every shared edge sits on a 4-colored 4-cycle".into())
}

fn biconvex() -> Verdict {
    let mut bad = Vec::new();
    for k in 1..=6 {
        let (g, _) = gen_tight_family(k).unwrap();
        let (a, b) = (gamma(&g), rho(&g));
        if (a, b) != (2 * k, k) {
            bad.push(format!("tight k={k}: gamma {a} rho {b}, expected gamma {} rho {k}", 2 * k));
        }
    }
    for seed in 0..200u64 {
        let n = 2 + seed as usize % 15;
        let nx = 1 + seed as usize % (n - 1);
        let (g, ord) = gen_random_biconvex(nx, n - nx, seed).unwrap();
        if !validate_convex(&g, &ord) {
            bad.push(format!("seed {seed}: generator ordering not convex"));
            continue;
        }
        let (a, b) = (gamma(&g), rho(&g));
        if a > 2 * b {
            bad.push(format!("seed {seed}: gamma {a} > 2 rho {}", 2 * b));
        }
        match certify_biconvex(&g, &ord) {
            Ok(c) => {
                let (p, d, k) = (&c.packing, &c.dominating, c.decomposition.width());
                let sized = p.width == k && (p.claimed == k || p.claimed == k + 1) && d.claimed <= 2 * k + 2;
                let paired = !branches_pair(p, d) || d.set.len() <= 2 * p.set.len();
                if !(p.holds(&g) && d.holds(&g) && sized && paired && p.set.len() <= b && a <= d.set.len()) {
                    bad.push(format!("seed {seed}: certificates {} / {} at width {k}", p.branch, d.branch));
                }
            }
            Err(e) => bad.push(format!("seed {seed}: {e}")),
        }
    }
    fail_if(bad, "tight family k = 1..6 and 200 biconvex graphs: gamma <= 2 rho, certificates valid".into())
}

fn scans() -> Verdict {
    let start = Instant::now();
    let mut bad = Vec::new();
    let mut notes = Vec::new();
    for class in GraphClass::FAMILIES {
        let items = harness::build_corpus(&ScanSpec::for_class(class)).map_err(|e| e.to_string())?;
        let out = harness::run_scan(&items, &EvalOptions::default(), SCAN_WORKERS, std::io::sink(), None).map_err(|e| e.to_string())?;
        let s = &out.summary;
        if s.theorem_failures > 0 || s.inconclusive > 0 || s.records != items.len() {
            bad.push(format!("{class}: {} theorem failures, {} inconclusive", s.theorem_failures, s.inconclusive));
        }
        notes.push(format!("{class} {}/{}", s.records, s.conjecture_violations));
    }
    let took = start.elapsed();
    if took > SCAN_LIMIT {
        bad.push(format!("family scans took {took:?}, limit {SCAN_LIMIT:?}"));
    }

    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let dumps = dir.path().join("dumps");
    let bin = env!("CARGO_BIN_EXE_dompack");
    let run = |args: &[&str]| Command::new(bin).args(args).output().map(|o| o.status.code()).map_err(|e| e.to_string());
    let report = dir.path().join("rook.jsonl");
    let code = run(&["scan", "--class", "rook", "--unrestricted", "--jobs", "4", "--out", path(&report), "--dump", path(&dumps)])?;
    if code != Some(2) {
        bad.push(format!("rook scan exit {code:?}, expected 2"));
    }
    let files: Vec<_> = std::fs::read_dir(&dumps).map_err(|e| e.to_string())?.map(|e| e.unwrap().path()).collect();
    if files.is_empty() {
        bad.push("no counterexample dump written".into());
    }
    for f in &files {
        let text = std::fs::read_to_string(f).map_err(|e| e.to_string())?;
        let again: Vec<CorpusItem> = harness::read_corpus(&text, InputFormat::Graph6, GraphClass::Rook, "dump").map_err(|e| e.to_string())?;
        let code = run(&["scan", "--input", path(f), "--unrestricted", "--dump", path(&dir.path().join("again"))])?;
        if again.len() != 1 || code != Some(2) {
            bad.push(format!("{}: re-ingest exit {code:?}", f.display()));
        }
    }
    fail_if(
        bad,
        format!("families (records/conjecture violations) {} in {took:.1?}; rook counterexamples exit 2, {} dumps re-violate", notes.join(", "), files.len()),
    )
}

fn path(p: &Path) -> &str {
    p.to_str().expect("utf-8 temp path")
}

fn main() -> ExitCode {
    let bicubic = bicubic_corpus();
    let mops = mop_corpus();
    let criteria: Vec<Criterion> = vec![
        ("oracle equivalence", Box::new(oracle_equivalence)),
        ("trees gamma = rho", Box::new(trees)),
        ("bicubic n <= 14 gamma <= 2 rho", Box::new(bicubic_small)),
        ("bicubic bounds", Box::new(|| bicubic_bounds(&bicubic))),
        ("side packing certificate", Box::new(|| side_packings(&bicubic))),
        ("mop bounds, lift, clique graph", Box::new(|| mop_bounds(&mops))),
        ("four-coloring property", Box::new(|| tokunaga(&mops))),
        ("biconvex bound and tightness", Box::new(biconvex)),
        ("conjecture scans", Box::new(scans)),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {}: PASS  {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
