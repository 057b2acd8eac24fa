//! Simple undirected graphs, the graph families under study, and the
//! enumeration machinery used for extremal checks.

mod canon;
mod enumerate;
mod family;
mod io;

use std::collections::VecDeque;

use crate::{Error, Result};

pub use canon::{canonical_form, canonical_labeling, CanonicalForm};
pub use enumerate::{
    augment_bipartite, enumerate_bipartite_bicyclic, free_trees, EnumerationConfig,
    DEFAULT_ENUMERATION_CAP,
};
pub use family::{build, family_instances, FamilySpec};
pub use io::parse_edge_list;

/// A simple undirected graph on the vertex set `{0, .., n-1}`.
///
/// Neighbour lists are kept sorted, so two graphs compare equal exactly when
/// they have the same labelled edge set.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
        }
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::empty(n);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        let n = self.order();
        if u >= n || v >= n {
            return Err(Error::InvalidGraph(format!(
                "edge ({u}, {v}) references a vertex outside 0..{n}"
            )));
        }
        if u == v {
            return Err(Error::InvalidGraph(format!("self-loop at vertex {u}")));
        }
        match self.adj[u].binary_search(&v) {
            Ok(_) => Err(Error::InvalidGraph(format!("duplicate edge ({u}, {v})"))),
            Err(pos) => {
                self.adj[u].insert(pos, v);
                let pos = self.adj[v].binary_search(&u).unwrap_err();
                self.adj[v].insert(pos, u);
                Ok(())
            }
        }
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) -> Result<()> {
        if !self.has_edge(u, v) {
            return Err(Error::domain(format!("({u}, {v}) is not an edge")));
        }
        let pos = self.adj[u].binary_search(&v).unwrap();
        self.adj[u].remove(pos);
        let pos = self.adj[v].binary_search(&u).unwrap();
        self.adj[v].remove(pos);
        Ok(())
    }

    /// Number of vertices.
    pub fn order(&self) -> usize {
        self.adj.len()
    }

    /// Number of edges.
    pub fn size(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.order() && self.adj[u].binary_search(&v).is_ok()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// All edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.size());
        for (u, nbrs) in self.adj.iter().enumerate() {
            out.extend(nbrs.iter().filter(|&&v| v > u).map(|&v| (u, v)));
        }
        out
    }

    pub fn without_edge(&self, u: usize, v: usize) -> Result<Graph> {
        let mut g = self.clone();
        g.remove_edge(u, v)?;
        Ok(g)
    }

    /// Subgraph induced by `keep`, relabelled `keep[i] -> i`.
    pub fn induced(&self, keep: &[usize]) -> Graph {
        let mut index = vec![usize::MAX; self.order()];
        for (i, &v) in keep.iter().enumerate() {
            index[v] = i;
        }
        let mut g = Graph::empty(keep.len());
        for (i, &v) in keep.iter().enumerate() {
            g.adj[i] = self.adj[v]
                .iter()
                .filter_map(|&w| (index[w] != usize::MAX).then_some(index[w]))
                .collect();
            g.adj[i].sort_unstable();
        }
        g
    }

    /// Delete the given vertices; the survivors keep their relative order.
    pub fn without_vertices(&self, removed: &[usize]) -> Graph {
        let mut gone = vec![false; self.order()];
        for &v in removed {
            gone[v] = true;
        }
        let keep: Vec<usize> = (0..self.order()).filter(|&v| !gone[v]).collect();
        self.induced(&keep)
    }

    /// Vertex sets of the connected components, each sorted, ordered by
    /// smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Connected in the usual sense; the empty graph counts as disconnected.
    pub fn is_connected(&self) -> bool {
        self.order() > 0 && self.components().len() == 1
    }

    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.order();
        let mut adj = self.adj.clone();
        adj.extend(
            other
                .adj
                .iter()
                .map(|nbrs| nbrs.iter().map(|&w| w + shift).collect()),
        );
        Graph { adj }
    }

    /// Relabel vertex `v` as `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.order(), "permutation length mismatch");
        let mut g = Graph::empty(self.order());
        for (v, nbrs) in self.adj.iter().enumerate() {
            let mut mapped: Vec<usize> = nbrs.iter().map(|&w| perm[w]).collect();
            mapped.sort_unstable();
            g.adj[perm[v]] = mapped;
        }
        g
    }

    /// Dense 0/1 adjacency matrix.
    pub fn adjacency_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.order();
        let mut a = vec![vec![0; n]; n];
        for (u, v) in self.edges() {
            a[u][v] = 1;
            a[v][u] = 1;
        }
        a
    }
}

/// A proper 2-colouring (`0`/`1` per vertex), or `None` when the graph has
/// an odd cycle. Each component's smallest vertex gets colour 0.
pub fn two_coloring(g: &Graph) -> Option<Vec<u8>> {
    let n = g.order();
    let mut color = vec![u8::MAX; n];
    for s in 0..n {
        if color[s] != u8::MAX {
            continue;
        }
        color[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &w in g.neighbors(u) {
                if color[w] == u8::MAX {
                    color[w] = 1 - color[u];
                    queue.push_back(w);
                } else if color[w] == color[u] {
                    return None;
                }
            }
        }
    }
    Some(color)
}

pub fn is_bipartite(g: &Graph) -> bool {
    two_coloring(g).is_some()
}

/// Connected with exactly one more edge than vertices.
pub fn is_bicyclic(g: &Graph) -> bool {
    g.size() == g.order() + 1 && g.is_connected()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_loops_duplicates_and_out_of_range() {
        assert!(Graph::from_edges(3, [(0, 0)]).is_err());
        assert!(Graph::from_edges(3, [(0, 1), (1, 0)]).is_err());
        assert!(Graph::from_edges(3, [(0, 3)]).is_err());
    }

    #[test]
    fn removing_vertices_relabels_in_order() {
        let g = build(&FamilySpec::Path(5)).unwrap();
        let h = g.without_vertices(&[0, 1]);
        assert_eq!(h.edges(), vec![(0, 1), (1, 2)]);
        let h = g.without_vertices(&[2]);
        assert_eq!(h.components().len(), 2);
    }

    #[test]
    fn bipartiteness_of_small_cycles() {
        assert!(is_bipartite(&build(&FamilySpec::Cycle(6)).unwrap()));
        assert!(!is_bipartite(&build(&FamilySpec::Cycle(5)).unwrap()));
    }

    #[test]
    fn coloring_is_proper_on_r_10_14() {
        let g = build(&FamilySpec::R { a: 10, b: 14 }).unwrap();
        let c = two_coloring(&g).expect("R(10,14) is bipartite");
        for (u, v) in g.edges() {
            assert_ne!(c[u], c[v]);
        }
    }

    #[test]
    fn bicyclic_predicate() {
        assert!(is_bicyclic(&build(&FamilySpec::P66(14)).unwrap()));
        assert!(!is_bicyclic(&build(&FamilySpec::Cycle(8)).unwrap()));
        assert!(!is_bicyclic(&build(&FamilySpec::Path(5)).unwrap()));
        let two_c4 = build(&FamilySpec::Cycle(4))
            .unwrap()
            .disjoint_union(&build(&FamilySpec::Cycle(4)).unwrap());
        assert!(!is_bicyclic(&two_c4));
    }

    #[test]
    fn permuting_preserves_edge_count() {
        let g = build(&FamilySpec::P66(13)).unwrap();
        let perm: Vec<usize> = (0..13).rev().collect();
        let h = g.permuted(&perm);
        assert_eq!(h.size(), g.size());
        assert!(h.has_edge(12 - 5, 12 - 6));
    }
}
