use rayon::prelude::*;

use crate::energy::{compare_families, ComparisonRecord};
use crate::{Error, Result};

/// Largest `a + b` accepted by [`scan`] unless the caller raises it.
pub const DEFAULT_SCAN_CAP: usize = 100;

/// Pairs `(a, b)` with `10 <= a <= b`, `a = b = 2 (mod 4)`, `a + b <= max_sum`.
pub fn scan_pairs(max_sum: usize) -> Vec<(usize, usize)> {
    let valid = |v: &usize| v % 4 == 2;
    let mut out = Vec::new();
    for a in (10..=max_sum / 2).filter(valid) {
        for b in (a..=max_sum - a).filter(valid) {
            out.push((a, b));
        }
    }
    out
}

/// One comparison record per pair of [`scan_pairs`], with `n = a + b` and
/// `t = a`, sorted by `(n, t)`.
pub fn scan(max_sum: usize, cap: usize) -> Result<Vec<ComparisonRecord>> {
    if max_sum < 20 {
        return Err(Error::domain(format!("scan needs max_sum >= 20 (got {max_sum})")));
    }
    if max_sum > cap {
        return Err(Error::Capacity {
            what: "scan max_sum",
            value: max_sum,
            limit: cap,
        });
    }
    let mut records = scan_pairs(max_sum)
        .into_par_iter()
        .map(|(a, b)| compare_families(a + b, a))
        .collect::<Result<Vec<_>>>()?;
    records.sort_by_key(|r| (r.n, r.t));
    Ok(records)
}

/// Every difference positive and every cross-check in agreement.
pub fn scan_passes(records: &[ComparisonRecord]) -> bool {
    records.iter().all(|r| r.difference > 0.0 && r.methods_agree)
}
