//! Exact canonical labelling by partition refinement and individualisation.
//!
//! The search tree is the usual one: refine the ordered partition to an
//! equitable one, individualise each vertex of the first non-singleton cell
//! in turn, recurse. Every leaf gives a labelling; the canonical form is the
//! lexicographically smallest relabelled edge list over all leaves.
//!
//! Two prunings keep symmetric graphs cheap, both of which only discard
//! subtrees whose leaves are automorphic images of leaves already visited:
//!
//! - twins: if `u` and `v` sit in the same cell and `N(u) \ {v} = N(v) \ {u}`,
//!   the transposition `(u v)` is an automorphism fixing everything already
//!   individualised, so only one of them is expanded;
//! - orbits on the first path: automorphisms discovered from equal leaves
//!   that fix the current prefix pointwise merge candidate vertices.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::Graph;

/// A labelling-independent representative of an isomorphism class: the
/// vertex count and the edge list under the canonical labelling.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CanonicalForm {
    pub n: usize,
    pub edges: Vec<(u32, u32)>,
}

impl CanonicalForm {
    pub fn to_graph(&self) -> Graph {
        Graph::from_edges(
            self.n,
            self.edges.iter().map(|&(u, v)| (u as usize, v as usize)),
        )
        .expect("canonical edge lists are simple")
    }
}

impl std::fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}:", self.n)?;
        for (i, (u, v)) in self.edges.iter().enumerate() {
            let sep = if i == 0 { "" } else { "," };
            write!(f, "{sep}{u}-{v}")?;
        }
        Ok(())
    }
}

type Cells = Vec<Vec<usize>>;

/// Coarsest equitable refinement of an ordered partition. Cells are split by
/// the multiset of cell indices of their neighbours; fragments are ordered
/// by that multiset, so the result commutes with relabelling.
fn refine(g: &Graph, mut cells: Cells) -> Cells {
    let n = g.order();
    let mut cell_of = vec![0usize; n];
    loop {
        for (i, cell) in cells.iter().enumerate() {
            for &v in cell {
                cell_of[v] = i;
            }
        }
        let mut next: Cells = Vec::with_capacity(cells.len());
        for cell in &cells {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            let mut keyed: Vec<(Vec<usize>, usize)> = cell
                .iter()
                .map(|&v| {
                    let mut sig: Vec<usize> = g.neighbors(v).iter().map(|&w| cell_of[w]).collect();
                    sig.sort_unstable();
                    (sig, v)
                })
                .collect();
            keyed.sort();
            let mut start = 0;
            for i in 1..=keyed.len() {
                if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                    next.push(keyed[start..i].iter().map(|(_, v)| *v).collect());
                    start = i;
                }
            }
        }
        if next.len() == cells.len() {
            return next;
        }
        cells = next;
    }
}

fn are_twins(g: &Graph, u: usize, v: usize) -> bool {
    let a = g.neighbors(u).iter().filter(|&&w| w != v);
    let b = g.neighbors(v).iter().filter(|&&w| w != u);
    a.eq(b)
}

struct Search<'a> {
    g: &'a Graph,
    best: Option<(Vec<(u32, u32)>, Vec<usize>)>,
    automorphisms: Vec<Vec<usize>>,
}

impl<'a> Search<'a> {
    fn relabelled(&self, label: &[usize]) -> Vec<(u32, u32)> {
        let mut edges: Vec<(u32, u32)> = self
            .g
            .edges()
            .into_iter()
            .map(|(u, v)| {
                let (a, b) = (label[u] as u32, label[v] as u32);
                (a.min(b), a.max(b))
            })
            .collect();
        edges.sort_unstable();
        edges
    }

    fn leaf(&mut self, cells: &Cells) {
        let mut label = vec![0usize; self.g.order()];
        for (i, cell) in cells.iter().enumerate() {
            label[cell[0]] = i;
        }
        let key = self.relabelled(&label);
        match &self.best {
            None => self.best = Some((key, label)),
            Some((best, best_label)) => match key.cmp(best) {
                Ordering::Less => self.best = Some((key, label)),
                Ordering::Equal => {
                    // best_label^{-1} . label maps this leaf onto the best one.
                    let mut inv = vec![0usize; label.len()];
                    for (v, &l) in best_label.iter().enumerate() {
                        inv[l] = v;
                    }
                    let auto: Vec<usize> = label.iter().map(|&l| inv[l]).collect();
                    if auto.iter().enumerate().any(|(i, &j)| i != j) {
                        self.automorphisms.push(auto);
                    }
                }
                Ordering::Greater => {}
            },
        }
    }

    /// Orbit representative of each vertex under the automorphisms found so
    /// far that fix every vertex of `prefix`.
    fn orbits_fixing(&self, prefix: &[usize]) -> Vec<usize> {
        let n = self.g.order();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for auto in &self.automorphisms {
            if prefix.iter().any(|&p| auto[p] != p) {
                continue;
            }
            for (v, &w) in auto.iter().enumerate() {
                let (a, b) = (find(&mut parent, v), find(&mut parent, w));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        (0..n).map(|v| find(&mut parent, v)).collect()
    }

    fn run(&mut self, cells: Cells, prefix: &mut Vec<usize>, first_path: bool) {
        let cells = refine(self.g, cells);
        let Some(target) = cells.iter().position(|c| c.len() > 1) else {
            self.leaf(&cells);
            return;
        };
        let candidates = cells[target].clone();
        let mut expanded: Vec<usize> = Vec::new();
        for (i, &v) in candidates.iter().enumerate() {
            if expanded.iter().any(|&u| are_twins(self.g, u, v)) {
                continue;
            }
            if first_path && i > 0 {
                let orbit = self.orbits_fixing(prefix);
                if expanded.iter().any(|&u| orbit[u] == orbit[v]) {
                    continue;
                }
            }
            let mut next = Vec::with_capacity(cells.len() + 1);
            next.extend_from_slice(&cells[..target]);
            next.push(vec![v]);
            next.push(candidates.iter().copied().filter(|&w| w != v).collect());
            next.extend_from_slice(&cells[target + 1..]);
            prefix.push(v);
            self.run(next, prefix, first_path && i == 0);
            prefix.pop();
            expanded.push(v);
        }
    }
}

/// Canonical labelling `label[v]` together with the canonical form it
/// produces. Isomorphic graphs get equal forms and only isomorphic graphs do.
pub fn canonical_labeling(g: &Graph) -> (Vec<usize>, CanonicalForm) {
    let n = g.order();
    if n == 0 {
        return (
            Vec::new(),
            CanonicalForm {
                n: 0,
                edges: Vec::new(),
            },
        );
    }
    let mut search = Search {
        g,
        best: None,
        automorphisms: Vec::new(),
    };
    search.run(vec![(0..n).collect()], &mut Vec::new(), true);
    let (edges, label) = search.best.expect("search visits at least one leaf");
    (label, CanonicalForm { n, edges })
}

pub fn canonical_form(g: &Graph) -> CanonicalForm {
    canonical_labeling(g).1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build, FamilySpec};
    use proptest::prelude::*;

    fn star(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|v| (0, v))).unwrap()
    }

    #[test]
    fn path_and_star_differ() {
        let p4 = build(&FamilySpec::Path(4)).unwrap();
        assert_ne!(canonical_form(&p4), canonical_form(&star(4)));
    }

    #[test]
    fn labelling_reproduces_form() {
        let g = build(&FamilySpec::P66(14)).unwrap();
        let (label, form) = canonical_labeling(&g);
        assert_eq!(form.to_graph(), g.permuted(&label));
    }

    #[test]
    fn large_stars_are_fast() {
        // Twin pruning keeps this linear instead of 19!.
        let f = canonical_form(&star(20));
        assert_eq!(f.edges.len(), 19);
    }

    #[test]
    fn eleven_classes_on_four_vertices() {
        // Brute force: every labelled graph on 4 vertices; group by the
        // minimum edge-set image over all 24 permutations.
        let pairs: Vec<(usize, usize)> = (0..4)
            .flat_map(|u| (u + 1..4).map(move |v| (u, v)))
            .collect();
        let perms = permutations(4);
        let mut brute = std::collections::BTreeSet::new();
        let mut ours = std::collections::BTreeSet::new();
        for mask in 0u32..64 {
            let edges: Vec<(usize, usize)> = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            let g = Graph::from_edges(4, edges.iter().copied()).unwrap();
            let min_image = perms
                .iter()
                .map(|p| g.permuted(p).edges())
                .min()
                .unwrap();
            brute.insert(min_image);
            ours.insert(canonical_form(&g));
        }
        assert_eq!(brute.len(), 11);
        assert_eq!(ours.len(), 11);
    }

    fn permutations(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in permutations(n - 1) {
            for i in 0..n {
                let mut q = p.clone();
                q.insert(i, n - 1);
                out.push(q);
            }
        }
        out
    }

    fn shuffled(n: usize, seed: Vec<usize>) -> Vec<usize> {
        let mut perm: Vec<usize> = (0..n).collect();
        for (i, s) in seed.into_iter().enumerate().take(n) {
            perm.swap(i, i + s % (n - i));
        }
        perm
    }

    proptest! {
        #[test]
        fn invariant_under_relabelling(seed in proptest::collection::vec(0usize..1000, 24)) {
            for spec in [
                FamilySpec::Cycle(6),
                FamilySpec::P66(13),
                FamilySpec::R { a: 6, b: 10 },
                FamilySpec::Tadpole { n: 11, cycle: 4 },
            ] {
                let g = build(&spec).unwrap();
                let perm = shuffled(g.order(), seed.clone());
                prop_assert_eq!(canonical_form(&g), canonical_form(&g.permuted(&perm)));
            }
        }
    }
}
