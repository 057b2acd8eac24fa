use std::fmt;

use serde::{Deserialize, Serialize};

use super::Graph;
use crate::{Error, Result};

/// The graph families studied here.
///
/// Vertex layouts are fixed so that labelled fixtures are stable:
///
/// - `Path(n)`: `0 - 1 - ... - (n-1)`.
/// - `Cycle(n)`: the path plus the edge `(n-1, 0)`.
/// - `Tadpole { n, cycle }`: a cycle on `0..cycle`, then the edge
///   `(cycle-1, cycle)` and a path on `cycle..n`.
/// - `P66(n)`: hexagons on `0..6` and `n-6..n`, joined by the path
///   `5 - 6 - ... - (n-6)`; for `n = 12` that path is the single edge `(5, 6)`.
/// - `R { a, b }`: cycles on `0..a` and `a..a+b` joined by the bridge `(a-1, a)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FamilySpec {
    Path(usize),
    Cycle(usize),
    Tadpole { n: usize, cycle: usize },
    P66(usize),
    R { a: usize, b: usize },
}

impl FamilySpec {
    pub fn validate(&self) -> Result<()> {
        match *self {
            FamilySpec::Path(n) if n < 1 => Err(Error::domain("Path(n) requires n >= 1")),
            FamilySpec::Cycle(n) if n < 3 => Err(Error::domain("Cycle(n) requires n >= 3")),
            FamilySpec::Tadpole { cycle, .. } if cycle < 3 => {
                Err(Error::domain("Tadpole requires cycle length >= 3"))
            }
            FamilySpec::Tadpole { n, cycle } if n < cycle => Err(Error::domain(format!(
                "Tadpole requires n >= cycle length (got n = {n}, cycle = {cycle})"
            ))),
            FamilySpec::P66(n) if n < 12 => Err(Error::domain("P66(n) requires n >= 12")),
            FamilySpec::R { a, b } if a < 3 || b < 3 => Err(Error::domain(format!(
                "R(a,b) requires a >= 3 and b >= 3 (got a = {a}, b = {b})"
            ))),
            _ => Ok(()),
        }
    }

    /// Number of vertices of the built graph.
    pub fn order(&self) -> usize {
        match *self {
            FamilySpec::Path(n)
            | FamilySpec::Cycle(n)
            | FamilySpec::Tadpole { n, .. }
            | FamilySpec::P66(n) => n,
            FamilySpec::R { a, b } => a + b,
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            FamilySpec::Path(n) => write!(f, "path({n})"),
            FamilySpec::Cycle(n) => write!(f, "cycle({n})"),
            FamilySpec::Tadpole { n, cycle } => write!(f, "tadpole({n},{cycle})"),
            FamilySpec::P66(n) => write!(f, "p66({n})"),
            FamilySpec::R { a, b } => write!(f, "r({a},{b})"),
        }
    }
}

fn push_path(edges: &mut Vec<(usize, usize)>, from: usize, to: usize) {
    edges.extend((from..to).map(|i| (i, i + 1)));
}

fn push_cycle(edges: &mut Vec<(usize, usize)>, start: usize, len: usize) {
    push_path(edges, start, start + len - 1);
    edges.push((start, start + len - 1));
}

pub fn build(spec: &FamilySpec) -> Result<Graph> {
    spec.validate()?;
    let mut edges = Vec::new();
    let n = spec.order();
    match *spec {
        FamilySpec::Path(n) => push_path(&mut edges, 0, n - 1),
        FamilySpec::Cycle(n) => push_cycle(&mut edges, 0, n),
        FamilySpec::Tadpole { n, cycle } => {
            push_cycle(&mut edges, 0, cycle);
            push_path(&mut edges, cycle - 1, n - 1);
        }
        FamilySpec::P66(n) => {
            push_cycle(&mut edges, 0, 6);
            push_cycle(&mut edges, n - 6, 6);
            push_path(&mut edges, 5, n - 6);
        }
        FamilySpec::R { a, b } => {
            push_cycle(&mut edges, 0, a);
            push_cycle(&mut edges, a, b);
            edges.push((a - 1, a));
        }
    }
    Graph::from_edges(n, edges)
}

/// Every valid family instance of order at most `max_n`: paths, cycles,
/// tadpoles with a proper tail, `P66(n)`, and `R(a,b)` with `a <= b`.
pub fn family_instances(max_n: usize) -> Vec<FamilySpec> {
    let mut out: Vec<FamilySpec> = (1..=max_n).map(FamilySpec::Path).collect();
    out.extend((3..=max_n).map(FamilySpec::Cycle));
    for n in 4..=max_n {
        out.extend((3..n).map(|cycle| FamilySpec::Tadpole { n, cycle }));
    }
    out.extend((12..=max_n).map(FamilySpec::P66));
    for a in 3..=max_n / 2 {
        out.extend((a..=max_n - a).map(|b| FamilySpec::R { a, b }));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{is_bicyclic, is_bipartite};

    #[test]
    fn edge_counts_match_families() {
        assert_eq!(build(&FamilySpec::Path(2)).unwrap().size(), 1);
        assert_eq!(build(&FamilySpec::Path(1)).unwrap().size(), 0);
        assert_eq!(build(&FamilySpec::Cycle(7)).unwrap().size(), 7);
        assert_eq!(build(&FamilySpec::Tadpole { n: 9, cycle: 6 }).unwrap().size(), 9);
        for n in 12..30 {
            let g = build(&FamilySpec::P66(n)).unwrap();
            assert_eq!((g.order(), g.size()), (n, n + 1));
            assert!(g.is_connected());
        }
        let r = build(&FamilySpec::R { a: 10, b: 10 }).unwrap();
        assert_eq!((r.order(), r.size()), (20, 21));
    }

    #[test]
    fn p66_12_is_two_hexagons_and_a_bridge() {
        let g = build(&FamilySpec::P66(12)).unwrap();
        assert_eq!(g.size(), 13);
        let without = g.without_edge(5, 6).unwrap();
        let comps = without.components();
        assert_eq!(comps, vec![(0..6).collect::<Vec<_>>(), (6..12).collect()]);
        for c in comps {
            assert!(c.iter().all(|&v| without.degree(v) == 2));
        }
    }

    #[test]
    fn r_10_10_has_two_ten_cycles() {
        let g = build(&FamilySpec::R { a: 10, b: 10 }).unwrap();
        let without = g.without_edge(9, 10).unwrap();
        let comps = without.components();
        assert_eq!(comps.len(), 2);
        for c in &comps {
            assert_eq!(c.len(), 10);
            assert!(c.iter().all(|&v| without.degree(v) == 2));
        }
    }

    #[test]
    fn tadpole_degenerates_to_cycle() {
        assert_eq!(
            build(&FamilySpec::Tadpole { n: 6, cycle: 6 }).unwrap(),
            build(&FamilySpec::Cycle(6)).unwrap()
        );
    }

    #[test]
    fn invalid_parameters_name_the_bound() {
        let err = build(&FamilySpec::P66(11)).unwrap_err();
        assert!(err.to_string().contains("n >= 12"), "{err}");
        assert!(build(&FamilySpec::Cycle(2)).is_err());
        assert!(build(&FamilySpec::R { a: 2, b: 5 }).is_err());
        assert!(build(&FamilySpec::Tadpole { n: 4, cycle: 5 }).is_err());
        assert!(build(&FamilySpec::Path(0)).is_err());
    }

    #[test]
    fn bipartiteness_follows_cycle_parity() {
        for n in 12..26 {
            let g = build(&FamilySpec::P66(n)).unwrap();
            assert!(is_bipartite(&g) && is_bicyclic(&g));
        }
        for a in 3..9 {
            for b in 3..9 {
                let g = build(&FamilySpec::R { a, b }).unwrap();
                assert_eq!(is_bipartite(&g), a % 2 == 0 && b % 2 == 0, "R({a},{b})");
            }
        }
    }
}
