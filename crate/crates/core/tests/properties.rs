use proptest::prelude::*;

use dompack::biconvex::{certify_biconvex, cb_decompose, trim_core, validate_convex};
use dompack::generators::{gen_random_biconvex, gen_random_mop, gen_random_tree};
use dompack::harness::{self, EvalOptions, Facts};
use dompack::io::{decode_graph6, encode_graph6, read_edge_list, write_edge_list, write_report, ReportLine, SolveStatus};
use dompack::outerplanar::{build_clique_graph, build_dual, check_four_coloring, lift_packing, recognize_mop, tokunaga_color};
use dompack::solvers::{brute_gamma, brute_rho, domination_number, packing_number, DEFAULT_BUDGET};
use dompack::Graph;

fn graph_from_bits(n: usize, bits: &[bool]) -> Graph {
    let pairs = (0..n).flat_map(|j| (0..j).map(move |i| (i, j)));
    let edges: Vec<_> = pairs.zip(bits.iter().cycle()).filter(|(_, &b)| b).map(|(e, _)| e).collect();
    Graph::from_edges(n, edges).unwrap()
}

prop_compose! {
    fn small_graph(max_n: usize)(n in 0..=max_n, bits in proptest::collection::vec(any::<bool>(), 1..80)) -> Graph {
        graph_from_bits(n, &bits)
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn graph6_round_trip(g in small_graph(64)) {
        let text = encode_graph6(&g).unwrap();
        prop_assert_eq!(decode_graph6(&text).unwrap(), g);
        prop_assert_eq!(encode_graph6(&decode_graph6(&text).unwrap()).unwrap(), text);
    }

    #[test]
    fn edge_list_round_trip(g in small_graph(30)) {
        prop_assert_eq!(read_edge_list(&write_edge_list(&g)).unwrap(), g);
    }

    #[test]
    fn solvers_match_brute_force(g in small_graph(11)) {
        let gamma = domination_number(&g, DEFAULT_BUDGET).unwrap();
        let rho = packing_number(&g, DEFAULT_BUDGET).unwrap();
        prop_assert_eq!(gamma.value, brute_gamma(&g).unwrap());
        prop_assert_eq!(rho.value, brute_rho(&g).unwrap());
        prop_assert!(g.is_dominating(gamma.witness.as_slice()) && gamma.witness.len() == gamma.value);
        prop_assert!(g.is_packing(rho.witness.as_slice()) && rho.witness.len() == rho.value);
        prop_assert!(rho.value <= gamma.value);
    }

    #[test]
    fn report_lines_parse_back(g in small_graph(10)) {
        let rec = harness::evaluate("p", "any", &g, Facts::of(&g, None), &EvalOptions::default());
        prop_assert_eq!(rec.status, SolveStatus::Solved);
        for c in &rec.checks {
            prop_assert!(c.satisfied || c.kind == dompack::io::BoundKind::Conjecture, "{:?}", c);
        }
        let mut buf = Vec::new();
        write_report([&rec], &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        prop_assert_eq!(text.lines().count(), 1);
        prop_assert_eq!(ReportLine::parse(text.lines().next().unwrap()).unwrap(), ReportLine::Graph(rec));
    }

    #[test]
    fn trees_have_equal_gamma_and_rho(n in 1usize..40, seed in any::<u64>()) {
        let t = gen_random_tree(n, seed).unwrap();
        let gamma = domination_number(&t, DEFAULT_BUDGET).unwrap().value;
        prop_assert_eq!(gamma, packing_number(&t, DEFAULT_BUDGET).unwrap().value);
    }

    #[test]
    fn mop_constructions_hold(n in 3usize..20, seed in any::<u64>()) {
        let g = gen_random_mop(n, seed).unwrap();
        let t = recognize_mop(&g).unwrap();
        prop_assert_eq!(t.triangles.len(), n - 2);
        let dual = build_dual(&t);
        prop_assert!(check_four_coloring(&t, &dual, &tokunaga_color(&t).unwrap()));
        let cg = build_clique_graph(&t);
        let z = packing_number(&cg.graph, DEFAULT_BUDGET).unwrap().witness;
        let lifted = lift_packing(&t, &dual, &cg, &z).unwrap();
        prop_assert!(g.is_packing(lifted.as_slice()));
        prop_assert_eq!(lifted.len(), z.len());
    }

    #[test]
    fn biconvex_certificates_hold(nx in 1usize..9, ny in 1usize..9, seed in any::<u64>()) {
        let (g, ord) = gen_random_biconvex(nx, ny, seed).unwrap();
        prop_assert!(validate_convex(&g, &ord));
        let core = trim_core(&g, &ord).unwrap();
        let dec = cb_decompose(&g, &core).unwrap();
        let certs = certify_biconvex(&g, &ord).unwrap();
        prop_assert_eq!(certs.decomposition.width(), dec.width());
        prop_assert!(certs.packing.holds(&g) && certs.dominating.holds(&g));
        let rho = brute_rho(&g).unwrap();
        let gamma = brute_gamma(&g).unwrap();
        prop_assert!(certs.packing.set.len() <= rho && gamma <= certs.dominating.set.len());
        prop_assert!(gamma <= 2 * rho);
    }
}
