//! Characteristic polynomials `phi(G, x) = det(xI - A(G))`, computed three
//! independent ways: determinant interpolation, family recursions and the
//! edge-deletion expansion.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use super::IntPoly;
use crate::graph::{FamilySpec, Graph};
use crate::{Error, Result};

/// Determinant by fraction-free Gaussian elimination. Every intermediate
/// division is exact.
pub fn bareiss_determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, r);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

/// Exact characteristic polynomial: `det(kI - A)` at `k = 0..=n`, then
/// Newton forward differences. `Delta^j v_0` is divisible by `j!` because the
/// interpolant has integer coefficients.
pub fn charpoly_direct(g: &Graph) -> IntPoly {
    let n = g.order();
    let a = g.adjacency_matrix();
    let values: Vec<BigInt> = (0..=n)
        .into_par_iter()
        .map(|k| {
            let m = (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| {
                            let d = if i == j { k as i64 } else { 0 };
                            BigInt::from(d - a[i][j])
                        })
                        .collect()
                })
                .collect();
            bareiss_determinant(m)
        })
        .collect();

    // Divided differences d_j = Delta^j v_0 / j!.
    let mut diffs = values;
    let mut d = Vec::with_capacity(n + 1);
    let mut factorial = BigInt::one();
    for j in 0..=n {
        if j > 0 {
            factorial *= j;
        }
        d.push(&diffs[0] / &factorial);
        diffs = diffs.windows(2).map(|w| &w[1] - &w[0]).collect();
    }

    // p = d_0 + x (d_1 + (x - 1)(d_2 + (x - 2)(...))).
    let mut acc = IntPoly::constant(d[n].clone());
    for j in (0..n).rev() {
        let linear = IntPoly::new(vec![-BigInt::from(j), BigInt::one()]);
        acc = &(&acc * &linear) + &IntPoly::constant(d[j].clone());
    }
    acc
}

/// Product of the characteristic polynomials of the connected components.
pub fn component_product(g: &Graph) -> IntPoly {
    g.components()
        .par_iter()
        .map(|c| charpoly_direct(&g.induced(c)))
        .reduce(IntPoly::one, |a, b| &a * &b)
}

/// `phi(P_0), ..., phi(P_n)` with `phi(P_0) = 1`.
fn paths_upto(n: usize) -> Vec<IntPoly> {
    let x = IntPoly::x();
    let mut out = vec![IntPoly::one(), x.clone()];
    for k in 2..=n {
        let next = &(&x * &out[k - 1]) - &out[k - 2];
        out.push(next);
    }
    out.truncate(n + 1);
    out
}

fn cycle(paths: &[IntPoly], n: usize) -> IntPoly {
    &(&paths[n] - &paths[n - 2]) - &IntPoly::constant(BigInt::from(2))
}

/// Tadpoles with cycle length `l`, indexed by order from `l - 1` to `upto`.
/// The order `l - 1` entry is `P_{l-1}`, the cycle minus a vertex, which
/// makes the three-term recursion hold from order `l + 1` on.
fn tadpoles(l: usize, upto: usize) -> Vec<IntPoly> {
    let x = IntPoly::x();
    let paths = paths_upto(l);
    let mut out = vec![paths[l - 1].clone(), cycle(&paths, l)];
    for _ in l + 1..=upto {
        let k = out.len();
        let next = &(&x * &out[k - 1]) - &out[k - 2];
        out.push(next);
    }
    out
}

/// Characteristic polynomial of a family member from the three-term and
/// bridge recursions alone, without touching a matrix.
pub fn charpoly_by_recursion(spec: &FamilySpec) -> Result<IntPoly> {
    spec.validate()?;
    let x = IntPoly::x();
    Ok(match *spec {
        FamilySpec::Path(n) => paths_upto(n).swap_remove(n),
        FamilySpec::Cycle(n) => cycle(&paths_upto(n), n),
        FamilySpec::Tadpole { n, cycle: l } => tadpoles(l, n).swap_remove(n + 1 - l),
        FamilySpec::P66(n) => {
            // Bridge between the tail end of a hexagon tadpole and a hexagon:
            // phi = phi(T_{m}) phi(C_6) - phi(T_{m-1}) phi(P_5), m = order - 6.
            let tad = tadpoles(6, 7);
            let p5 = &tad[0];
            let c6 = &tad[1];
            let bridge = |m: usize| &(&tad[m - 5] * c6) - &(&tad[m - 6] * p5);
            let mut prev = bridge(6);
            let mut cur = bridge(7);
            if n == 12 {
                return Ok(prev);
            }
            for _ in 14..=n {
                let next = &(&x * &cur) - &prev;
                prev = cur;
                cur = next;
            }
            cur
        }
        FamilySpec::R { a, b } => {
            let paths = paths_upto(a.max(b));
            &(&cycle(&paths, a) * &cycle(&paths, b)) - &(&paths[a - 1] * &paths[b - 1])
        }
    })
}

/// Vertex sets of the cycles through the edge `uv`, i.e. the simple `u`-`v`
/// paths in `G - uv`. Each set is sorted; the list is sorted.
pub fn cycles_through_edge(g: &Graph, u: usize, v: usize) -> Result<Vec<Vec<usize>>> {
    if u >= g.order() || v >= g.order() || !g.has_edge(u, v) {
        return Err(Error::domain(format!("({u}, {v}) is not an edge of the graph")));
    }
    let state = SubGraph::whole(g);
    Ok(state.cycles_through(u, v))
}

/// A subgraph in the original labels: surviving vertices and edges, both sorted.
#[derive(Clone, PartialEq, Eq, Hash)]
struct SubGraph {
    vertices: Vec<usize>,
    edges: Vec<(usize, usize)>,
}

impl SubGraph {
    fn whole(g: &Graph) -> Self {
        SubGraph {
            vertices: (0..g.order()).collect(),
            edges: g.edges(),
        }
    }

    fn neighbours(&self) -> HashMap<usize, Vec<usize>> {
        let mut adj: HashMap<usize, Vec<usize>> =
            self.vertices.iter().map(|&v| (v, Vec::new())).collect();
        for &(a, b) in &self.edges {
            adj.get_mut(&a).unwrap().push(b);
            adj.get_mut(&b).unwrap().push(a);
        }
        adj
    }

    fn without_edge(&self, u: usize, v: usize) -> SubGraph {
        let e = (u.min(v), u.max(v));
        SubGraph {
            vertices: self.vertices.clone(),
            edges: self.edges.iter().copied().filter(|&f| f != e).collect(),
        }
    }

    fn without_vertices(&self, gone: &[usize]) -> SubGraph {
        SubGraph {
            vertices: self
                .vertices
                .iter()
                .copied()
                .filter(|v| !gone.contains(v))
                .collect(),
            edges: self
                .edges
                .iter()
                .copied()
                .filter(|(a, b)| !gone.contains(a) && !gone.contains(b))
                .collect(),
        }
    }

    fn restricted_to(&self, keep: &[usize]) -> SubGraph {
        SubGraph {
            vertices: keep.to_vec(),
            edges: self
                .edges
                .iter()
                .copied()
                .filter(|(a, b)| keep.binary_search(a).is_ok() && keep.binary_search(b).is_ok())
                .collect(),
        }
    }

    fn components(&self) -> Vec<Vec<usize>> {
        let adj = self.neighbours();
        let mut seen = std::collections::HashSet::new();
        let mut out = Vec::new();
        for &s in &self.vertices {
            if !seen.insert(s) {
                continue;
            }
            let mut comp = vec![s];
            let mut stack = vec![s];
            while let Some(a) = stack.pop() {
                for &b in &adj[&a] {
                    if seen.insert(b) {
                        comp.push(b);
                        stack.push(b);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Cycles through `uv` as sorted vertex sets.
    fn cycles_through(&self, u: usize, v: usize) -> Vec<Vec<usize>> {
        let rest = self.without_edge(u, v);
        let adj = rest.neighbours();
        let mut out = Vec::new();
        let mut path = vec![u];
        fn dfs(
            adj: &HashMap<usize, Vec<usize>>,
            target: usize,
            path: &mut Vec<usize>,
            out: &mut Vec<Vec<usize>>,
        ) {
            let last = *path.last().unwrap();
            for &w in &adj[&last] {
                if w == target {
                    let mut c = path.clone();
                    c.push(w);
                    c.sort_unstable();
                    out.push(c);
                } else if !path.contains(&w) {
                    path.push(w);
                    dfs(adj, target, path, out);
                    path.pop();
                }
            }
        }
        dfs(&adj, v, &mut path, &mut out);
        out.sort();
        out
    }
}

#[derive(Default)]
struct Expander {
    memo: HashMap<SubGraph, IntPoly>,
}

impl Expander {
    fn phi(&mut self, s: &SubGraph) -> IntPoly {
        if s.edges.is_empty() {
            return IntPoly::monomial(BigInt::one(), s.vertices.len());
        }
        if let Some(p) = self.memo.get(s) {
            return p.clone();
        }
        let comps = s.components();
        let result = if comps.len() > 1 {
            comps
                .iter()
                .map(|c| self.phi(&s.restricted_to(c)))
                .fold(IntPoly::one(), |acc, p| &acc * &p)
        } else {
            let adj = s.neighbours();
            let (u, v) = s
                .edges
                .iter()
                .copied()
                .find(|(a, b)| adj[a].len() == 1 || adj[b].len() == 1)
                .unwrap_or(s.edges[0]);
            self.delete(s, u, v)
        };
        self.memo.insert(s.clone(), result.clone());
        result
    }

    /// `phi(G) = phi(G - uv) - phi(G - u - v) - 2 sum_C phi(G - V(C))`.
    fn delete(&mut self, s: &SubGraph, u: usize, v: usize) -> IntPoly {
        let mut acc = &self.phi(&s.without_edge(u, v)) - &self.phi(&s.without_vertices(&[u, v]));
        for c in s.cycles_through(u, v) {
            let term = self.phi(&s.without_vertices(&c));
            acc = &acc - &term.scale(&BigInt::from(2));
        }
        acc
    }
}

/// Characteristic polynomial by repeated edge deletion, starting from the
/// edge `e`. Later steps prefer pendant edges and split off components.
pub fn edge_deletion_recursion(g: &Graph, e: (usize, usize)) -> Result<IntPoly> {
    let (u, v) = e;
    if u >= g.order() || v >= g.order() || !g.has_edge(u, v) {
        return Err(Error::domain(format!("({u}, {v}) is not an edge of the graph")));
    }
    Ok(Expander::default().delete(&SubGraph::whole(g), u, v))
}

/// Whether every coefficient satisfies the bipartite sign pattern:
/// odd-index `a_i` vanish and `(-1)^k a_{2k} >= 0`.
pub fn has_bipartite_signs(p: &IntPoly) -> bool {
    let n = p.degree().unwrap_or(0);
    (0..=n).all(|i| {
        let a = p.a(i);
        if i % 2 == 1 {
            a.is_zero()
        } else if (i / 2) % 2 == 0 {
            !a.is_negative()
        } else {
            !a.is_positive()
        }
    })
}
