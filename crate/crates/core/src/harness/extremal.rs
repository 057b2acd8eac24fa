use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::energy::energy_eigen;
use crate::graph::{build, canonical_form, enumerate_bipartite_bicyclic, CanonicalForm, EnumerationConfig, FamilySpec};
use crate::poly::{charpoly_direct, IntPoly};
use crate::{Error, Result};

/// Largest order enumerated by default.
pub const DEFAULT_EXTREMAL_CAP: usize = 13;
/// Largest order enumerated with `allow_large`.
pub const LARGE_EXTREMAL_CAP: usize = 14;

const TOP: usize = 10;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RankedGraph {
    pub rank: usize,
    pub energy: f64,
    pub error_bound: f64,
    pub canonical: CanonicalForm,
    pub is_p66: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExtremalReport {
    pub n: usize,
    pub class_size: usize,
    pub top: Vec<RankedGraph>,
    /// The maximum is separated from the runner-up by more than both
    /// certified error bounds.
    pub unique: bool,
    pub winner_is_p66: bool,
    /// `E(first) - E(second)`.
    pub margin: f64,
}

impl ExtremalReport {
    pub fn passed(&self) -> bool {
        self.unique && self.winner_is_p66
    }
}

struct Scored {
    energy: f64,
    error_bound: f64,
    canonical: CanonicalForm,
    poly: IntPoly,
}

/// Rank every connected bipartite bicyclic graph of order `n` by energy.
pub fn extremal(n: usize, allow_large: bool) -> Result<ExtremalReport> {
    let cap = if allow_large { LARGE_EXTREMAL_CAP } else { DEFAULT_EXTREMAL_CAP };
    if n > cap {
        return Err(Error::Capacity {
            what: "extremal order",
            value: n,
            limit: cap,
        });
    }
    if n < 12 {
        return Err(Error::domain(format!("extremal ranking needs n >= 12 (got {n})")));
    }
    let graphs = enumerate_bipartite_bicyclic(n, &EnumerationConfig { cap })?;
    let mut scored = graphs
        .par_iter()
        .map(|g| {
            let poly = charpoly_direct(g);
            let e = energy_eigen(&poly)?;
            Ok(Scored {
                energy: e.value,
                error_bound: e.error_bound,
                canonical: canonical_form(g),
                poly,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    scored.sort_by(|a, b| b.energy.total_cmp(&a.energy).then_with(|| a.canonical.cmp(&b.canonical)));
    let p66 = canonical_form(&build(&FamilySpec::P66(n))?);
    let (first, second) = (&scored[0], &scored[1]);
    let margin = first.energy - second.energy;
    let unique = margin > first.error_bound + second.error_bound && first.poly != second.poly;
    let top = scored
        .iter()
        .take(TOP)
        .enumerate()
        .map(|(i, s)| RankedGraph {
            rank: i + 1,
            energy: s.energy,
            error_bound: s.error_bound,
            is_p66: s.canonical == p66,
            canonical: s.canonical.clone(),
        })
        .collect();
    Ok(ExtremalReport {
        n,
        class_size: scored.len(),
        winner_is_p66: first.canonical == p66,
        top,
        unique,
        margin,
    })
}
