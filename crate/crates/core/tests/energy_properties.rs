use bienergy_core::energy::{energy_coulson_explicit, energy_difference, energy_eigen};
use bienergy_core::graph::{enumerate_bipartite_bicyclic, EnumerationConfig, Graph};
use bienergy_core::poly::charpoly_direct;
use nalgebra::DMatrix;
use proptest::prelude::*;

fn graph_from_bits(n: usize, bits: &[bool]) -> Graph {
    let mut g = Graph::empty(n);
    let mut k = 0;
    for u in 0..n {
        for v in u + 1..n {
            if bits[k] {
                g.add_edge(u, v).unwrap();
            }
            k += 1;
        }
    }
    g
}

fn arb_graph() -> impl Strategy<Value = Graph> {
    (2usize..10).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| graph_from_bits(n, &bits))
    })
}

/// Energy from a floating point symmetric eigensolver.
fn energy_float(g: &Graph) -> f64 {
    let n = g.order();
    let a = g.adjacency_matrix();
    let m = DMatrix::from_fn(n, n, |i, j| a[i][j] as f64);
    m.symmetric_eigen().eigenvalues.iter().map(|l| l.abs()).sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn three_methods_agree(g in arb_graph()) {
        let p = charpoly_direct(&g);
        let e = energy_eigen(&p).unwrap();
        prop_assert!((e.value - energy_float(&g)).abs() < 1e-9);
        prop_assert!((e.value - energy_coulson_explicit(&p).unwrap().value).abs() < 1e-8);
        prop_assert!(e.trace_identities_hold(g.size()));
        prop_assert_eq!(e.value == 0.0, g.size() == 0);
        let eig = e.eigenvalues.unwrap();
        prop_assert_eq!(eig.len(), g.order());
        prop_assert!(eig.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn differences_are_consistent(a in arb_graph(), seed in any::<u64>()) {
        let n = a.order();
        let bits: Vec<bool> = (0..n * (n - 1) / 2).map(|k| (seed >> (k % 64)) & 1 == 1).collect();
        let b = graph_from_bits(n, &bits);
        let c = graph_from_bits(n, &bits.iter().map(|x| !x).collect::<Vec<_>>());
        let (pa, pb, pc) = (charpoly_direct(&a), charpoly_direct(&b), charpoly_direct(&c));
        let dab = energy_difference(&pa, &pb).unwrap();
        let dba = energy_difference(&pb, &pa).unwrap();
        let dbc = energy_difference(&pb, &pc).unwrap();
        let dac = energy_difference(&pa, &pc).unwrap();
        prop_assert!((dab + dba).abs() < 2e-6);
        prop_assert!((dac - dab - dbc).abs() < 3e-6);
        let want = energy_eigen(&pa).unwrap().value - energy_eigen(&pb).unwrap().value;
        prop_assert!((dab - want).abs() < 1e-6);
    }
}

#[test]
fn enumerated_graphs_cross_method() {
    let mut worst = 0f64;
    let mut count = 0;
    for n in 5..=12 {
        for g in enumerate_bipartite_bicyclic(n, &EnumerationConfig::default()).unwrap() {
            let p = charpoly_direct(&g);
            let e = energy_eigen(&p).unwrap();
            let c = energy_coulson_explicit(&p).unwrap();
            assert!(e.trace_identities_hold(g.size()));
            worst = worst.max((e.value - c.value).abs());
            count += 1;
        }
    }
    assert!(worst < 1e-8, "worst {worst:e} over {count} graphs");
}
