//! Matching numbers `m(G, k)`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::graph::Graph;

type Mask = Vec<u64>;

fn lowest(mask: &Mask) -> Option<usize> {
    mask.iter()
        .enumerate()
        .find(|(_, w)| **w != 0)
        .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
}

fn contains(mask: &Mask, v: usize) -> bool {
    mask[v / 64] >> (v % 64) & 1 == 1
}

fn clear(mask: &mut Mask, v: usize) {
    mask[v / 64] &= !(1u64 << (v % 64));
}

/// Matching generating polynomial of the subgraph on `mask`, as a list
/// indexed by matching size. Branches on the lowest live vertex: either it
/// stays unmatched or it is matched to one of its live neighbours.
fn count(g: &Graph, mask: Mask, memo: &mut HashMap<Mask, Vec<BigInt>>) -> Vec<BigInt> {
    let Some(v) = lowest(&mask) else {
        return vec![BigInt::one()];
    };
    if let Some(r) = memo.get(&mask) {
        return r.clone();
    }
    let mut rest = mask.clone();
    clear(&mut rest, v);
    let mut out = count(g, rest.clone(), memo);
    for &w in g.neighbors(v) {
        if !contains(&rest, w) {
            continue;
        }
        let mut both = rest.clone();
        clear(&mut both, w);
        let sub = count(g, both, memo);
        if out.len() < sub.len() + 1 {
            out.resize(sub.len() + 1, BigInt::zero());
        }
        for (k, c) in sub.into_iter().enumerate() {
            out[k + 1] += c;
        }
    }
    memo.insert(mask, out.clone());
    out
}

/// `m(G, 0), ..., m(G, floor(n/2))`.
pub fn matching_numbers(g: &Graph) -> Vec<BigInt> {
    let n = g.order();
    let mut mask = vec![0u64; n.div_ceil(64).max(1)];
    for v in 0..n {
        mask[v / 64] |= 1 << (v % 64);
    }
    let mut out = count(g, mask, &mut HashMap::new());
    out.resize(n / 2 + 1, BigInt::zero());
    out
}

/// Number of `k`-edge matchings.
pub fn matching_count(g: &Graph, k: usize) -> BigInt {
    matching_numbers(g).get(k).cloned().unwrap_or_default()
}
