//! Exhaustive generation of connected bipartite bicyclic graphs, one
//! representative per isomorphism class.
//!
//! Every connected bipartite bicyclic graph is a spanning tree plus two
//! edges, each joining the two colour classes of the tree. Generation runs
//! in three layers, deduplicating by canonical form after each:
//! free trees, then trees plus one such edge (connected bipartite unicyclic
//! graphs), then unicyclic graphs plus one more.

use std::collections::BTreeMap;

use rayon::prelude::*;

use super::{canonical_form, two_coloring, CanonicalForm, Graph};
use crate::{Error, Result};

pub const DEFAULT_ENUMERATION_CAP: usize = 14;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumerationConfig {
    /// Largest order accepted by [`enumerate_bipartite_bicyclic`].
    pub cap: usize,
}

impl Default for EnumerationConfig {
    fn default() -> Self {
        EnumerationConfig {
            cap: DEFAULT_ENUMERATION_CAP,
        }
    }
}

fn dedup(graphs: impl ParallelIterator<Item = Graph>) -> Vec<Graph> {
    let unique: BTreeMap<CanonicalForm, Graph> = graphs
        .map(|g| (canonical_form(&g), g))
        .collect::<Vec<_>>()
        .into_iter()
        .collect();
    unique.into_keys().map(|f| f.to_graph()).collect()
}

/// Non-isomorphic free trees on `n >= 1` vertices, in canonical order.
pub fn free_trees(n: usize) -> Vec<Graph> {
    assert!(n >= 1, "trees need at least one vertex");
    let mut layer = vec![Graph::empty(1)];
    for k in 1..n {
        layer = dedup(layer.par_iter().flat_map_iter(|t| {
            (0..k).map(move |v| {
                let mut grown = Graph::empty(k + 1);
                for (a, b) in t.edges() {
                    grown.add_edge(a, b).unwrap();
                }
                grown.add_edge(v, k).unwrap();
                grown
            })
        }));
    }
    layer
}

/// All graphs obtained from a parent by adding one edge between its two
/// colour classes, deduplicated up to isomorphism and returned in canonical
/// order. Parents must be connected and bipartite; the output does not
/// depend on the order in which parents are supplied.
pub fn augment_bipartite(parents: &[Graph]) -> Vec<Graph> {
    dedup(parents.par_iter().flat_map_iter(|p| {
        let color = two_coloring(p).expect("parent must be bipartite");
        let n = p.order();
        let candidates: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|&(u, v)| color[u] != color[v] && !p.has_edge(u, v))
            .collect();
        candidates.into_iter().map(move |(u, v)| {
            let mut child = p.clone();
            child.add_edge(u, v).unwrap();
            child
        })
    }))
}

/// One representative per isomorphism class of connected bipartite graphs
/// with `n` vertices and `n + 1` edges, sorted by canonical form. Each
/// representative is given in its canonical labelling.
pub fn enumerate_bipartite_bicyclic(n: usize, config: &EnumerationConfig) -> Result<Vec<Graph>> {
    if n > config.cap {
        return Err(Error::Capacity {
            what: "enumeration order",
            value: n,
            limit: config.cap,
        });
    }
    if n < 4 {
        return Err(Error::domain(format!("enumeration requires n >= 4 (got {n})")));
    }
    let trees = free_trees(n);
    let unicyclic = augment_bipartite(&trees);
    Ok(augment_bipartite(&unicyclic))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build, is_bicyclic, is_bipartite, FamilySpec};

    #[test]
    fn tree_counts() {
        // Known counts of unlabelled free trees.
        let counts: Vec<usize> = (1..=10).map(|n| free_trees(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 1, 2, 3, 6, 11, 23, 47, 106]);
    }

    #[test]
    fn nothing_on_four_vertices() {
        // At most four edges fit between two colour classes of four vertices.
        let graphs = enumerate_bipartite_bicyclic(4, &EnumerationConfig::default()).unwrap();
        assert!(graphs.is_empty());
    }

    #[test]
    fn k23_is_the_only_one_on_five_vertices() {
        let graphs = enumerate_bipartite_bicyclic(5, &EnumerationConfig::default()).unwrap();
        assert_eq!(graphs.len(), 1);
        let mut degrees: Vec<usize> = (0..5).map(|v| graphs[0].degree(v)).collect();
        degrees.sort_unstable();
        assert_eq!(degrees, vec![2, 2, 2, 3, 3]);
    }

    #[test]
    fn outputs_are_bipartite_bicyclic_and_distinct() {
        let graphs = enumerate_bipartite_bicyclic(8, &EnumerationConfig::default()).unwrap();
        let forms: std::collections::BTreeSet<_> = graphs.iter().map(canonical_form).collect();
        assert_eq!(forms.len(), graphs.len());
        assert!(graphs.iter().all(|g| is_bipartite(g) && is_bicyclic(g)));
    }

    #[test]
    fn contains_p66_12() {
        let graphs = enumerate_bipartite_bicyclic(12, &EnumerationConfig::default()).unwrap();
        let target = canonical_form(&build(&FamilySpec::P66(12)).unwrap());
        assert!(graphs.iter().any(|g| canonical_form(g) == target));
    }

    #[test]
    fn capacity_and_domain_errors() {
        let cfg = EnumerationConfig { cap: 10 };
        assert!(matches!(
            enumerate_bipartite_bicyclic(11, &cfg),
            Err(Error::Capacity { value: 11, limit: 10, .. })
        ));
        assert!(matches!(
            enumerate_bipartite_bicyclic(3, &cfg),
            Err(Error::Domain(_))
        ));
    }
}
