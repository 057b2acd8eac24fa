//! Acceptance suite: one line per criterion, `PASS` or `FAIL`, with the
//! measured time against its budget. Criteria run one after another so the
//! timings are not distorted by each other.
//!
//! Run with `cargo test -p bienergy-core --test acceptance -- --nocapture`.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use bienergy_core::closedform::{
    phi_cycle_closed, phi_p66_closed, phi_path_closed, phi_r_closed, sign_grid, ClosedFormContext, ComplexHi,
    DEFAULT_GRID_DENSITY,
};
use bienergy_core::energy::{energy_coulson_explicit, energy_eigen};
use bienergy_core::graph::{build, enumerate_bipartite_bicyclic, family_instances, EnumerationConfig, FamilySpec};
use bienergy_core::harness::{extremal, scan, scan_pairs, signgrid, SignGridConfig, SignQuantity};
use bienergy_core::poly::{charpoly_by_recursion, charpoly_direct, edge_deletion_recursion};
use bienergy_core::{HiReal, IntPoly, Precision};
use rayon::prelude::*;

/// `phi(P66(12))` and `phi(P66(13))`, highest degree first.
const P66_12: [i64; 13] = [1, 0, -13, 0, 62, 0, -138, 0, 153, 0, -81, 0, 16];
const P66_13: [i64; 14] = [1, 0, -14, 0, 74, 0, -188, 0, 245, 0, -158, 0, 40, 0];

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        detail: detail.into(),
    }
}

fn run(id: usize, title: &str, budget: Duration, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let o = f();
    let elapsed = start.elapsed();
    let in_time = elapsed <= budget;
    let passed = o.passed && in_time;
    println!(
        "criterion {id} [{}] {title}: {} ({:.1}s of {}s{})",
        if passed { "PASS" } else { "FAIL" },
        o.detail,
        elapsed.as_secs_f64(),
        budget.as_secs(),
        if in_time { "" } else { ", over budget" }
    );
    passed
}

fn tol(exp: i32) -> HiReal {
    HiReal::parse(&format!("1e{exp}"), Precision::default()).unwrap()
}

fn golden() -> Outcome {
    let mut ok = true;
    for (n, want) in [(12, IntPoly::from_descending(&P66_12)), (13, IntPoly::from_descending(&P66_13))] {
        let g = build(&FamilySpec::P66(n)).unwrap();
        ok &= charpoly_direct(&g) == want;
        ok &= charpoly_by_recursion(&FamilySpec::P66(n)).unwrap() == want;
    }
    outcome(ok, "P66(12), P66(13) exact by direct and recursive routes")
}

fn oracle_equivalence() -> Outcome {
    let specs: Vec<FamilySpec> = family_instances(30)
        .into_iter()
        .filter(|s| s.order() >= 2)
        .collect();
    let family_bad: Vec<String> = specs
        .par_iter()
        .filter_map(|s| {
            let g = build(s).unwrap();
            let direct = charpoly_direct(&g);
            let rec = charpoly_by_recursion(s).unwrap();
            let edges = g.edges();
            let del = edge_deletion_recursion(&g, edges[edges.len() / 2]).unwrap();
            (direct != rec || direct != del).then(|| s.to_string())
        })
        .collect();
    let mut enumerated = 0;
    let mut enum_bad = 0;
    for n in 5..=10 {
        let graphs = enumerate_bipartite_bicyclic(n, &EnumerationConfig::default()).unwrap();
        enumerated += graphs.len();
        enum_bad += graphs
            .par_iter()
            .filter(|g| {
                let direct = charpoly_direct(g);
                let edges = g.edges();
                [edges[0], edges[edges.len() - 1]]
                    .iter()
                    .any(|&e| edge_deletion_recursion(g, e).unwrap() != direct)
            })
            .count();
    }
    outcome(
        family_bad.is_empty() && enum_bad == 0,
        format!(
            "{} family instances ({} mismatches), {enumerated} enumerated graphs ({enum_bad} mismatches)",
            specs.len(),
            family_bad.len()
        ),
    )
}

fn scan_check(max_sum: usize) -> Outcome {
    let records = scan(max_sum, 100).unwrap();
    let brute = (10..=max_sum)
        .flat_map(|a| (a..=max_sum).map(move |b| (a, b)))
        .filter(|&(a, b)| a % 4 == 2 && b % 4 == 2 && a + b <= max_sum)
        .count();
    let positive = records.iter().filter(|r| r.difference > 0.0).count();
    let agree = records
        .iter()
        .filter(|r| (r.difference - r.coulson_difference).abs() < 1e-6)
        .count();
    let min = records.iter().map(|r| r.difference).fold(f64::INFINITY, f64::min);
    let worst = records
        .iter()
        .map(|r| (r.difference - r.coulson_difference).abs())
        .fold(0f64, f64::max);
    outcome(
        records.len() == brute && scan_pairs(max_sum).len() == brute && positive == brute && agree == brute,
        format!(
            "{} pairs (brute-force count {brute}), {positive} positive, smallest difference {min:.6}, {agree} agree (worst {worst:.1e})",
            records.len()
        ),
    )
}

fn sign_chain() -> Outcome {
    let config = SignGridConfig::default();
    let mut by_check: BTreeMap<String, usize> = BTreeMap::new();
    let mut points = 0;
    let mut evaluations = 0;
    for q in [SignQuantity::K, SignQuantity::F, SignQuantity::F10, SignQuantity::Chain] {
        let r = signgrid(q, &config).unwrap();
        points = r.points;
        evaluations += r.evaluations;
        for v in &r.violations {
            *by_check.entry(v.check.clone()).or_default() += 1;
        }
    }
    let total: usize = by_check.values().sum();
    outcome(
        total == 0,
        format!("{points} grid points, {evaluations} sign evaluations, violations {by_check:?}"),
    )
}

fn a_product_identity() -> Outcome {
    let p = Precision::default();
    let grid = sign_grid(DEFAULT_GRID_DENSITY);
    let step = grid.len() / 20;
    let tol = tol(-40);
    let mut identity_ok = true;
    let mut worst = 0f64;
    for &x in grid.iter().step_by(step).take(20) {
        let ctx = ClosedFormContext::from_f64(x, None, p).unwrap();
        let xh = ctx.x().clone();
        let xx = xh.square();
        let sextic = &(&(&(&xx * &xx) * &xx) + &(&HiReal::from_i64(8, p) * &(&xx * &xx)))
            + &(&(&HiReal::from_i64(19, p) * &xx) + &HiReal::from_i64(16, p));
        let want = &(&sextic.square() * &(&xx + &HiReal::one(p)).powi(4)) / &(&xx + &HiReal::from_i64(4, p));
        let rel = (ctx.a1() * ctx.a2()).rel_diff(&want);
        identity_ok &= rel <= tol;
        worst = worst.max(rel.to_f64());
    }
    let negative = grid
        .par_iter()
        .filter(|&&x| {
            let ctx = ClosedFormContext::from_f64(x, None, p).unwrap();
            !(ctx.a1().is_positive() && ctx.a2().is_positive())
        })
        .count();
    outcome(
        identity_ok && negative == 0,
        format!(
            "A1 A2 identity worst relative error {worst:.1e} on 20 points; A1 <= 0 or A2 <= 0 at {negative} of {} points",
            grid.len()
        ),
    )
}

/// `i^{-n} p(ix)` by complex Horner evaluation.
fn complex_oracle(p: &IntPoly, x: &HiReal) -> ComplexHi {
    let prec = x.precision();
    let n = p.degree().unwrap();
    let mut acc = ComplexHi::real(HiReal::zero(prec));
    for k in (0..=n).rev() {
        // acc * (ix) + c_k
        let re = -(&acc.im * x);
        let im = &acc.re * x;
        let c = HiReal::from_bigint(&p.coeff(k), prec);
        acc = ComplexHi { re: &re + &c, im };
    }
    acc.times_i_pow(-(n as i64))
}

fn closed_form_consistency() -> Outcome {
    let mut specs: Vec<FamilySpec> = (4..=40).flat_map(|n| [FamilySpec::Path(n), FamilySpec::Cycle(n)]).collect();
    specs.extend((12..=40).map(FamilySpec::P66));
    for n in 6..=40 {
        specs.extend((3..=n - 3).map(|t| FamilySpec::R { a: n - t, b: t }));
    }
    let polys: Vec<(FamilySpec, IntPoly)> = specs
        .iter()
        .map(|s| (*s, charpoly_direct(&build(s).unwrap())))
        .collect();
    let grid = sign_grid(DEFAULT_GRID_DENSITY);
    let tol = tol(-30);
    let per_point: Vec<(usize, f64)> = grid
        .par_iter()
        .map(|&x| {
            let ctx = ClosedFormContext::from_f64(x, None, Precision::default()).unwrap();
            let mut bad = 0;
            let mut worst = 0f64;
            for (spec, p) in &polys {
                let closed = match *spec {
                    FamilySpec::Path(n) => phi_path_closed(n, &ctx),
                    FamilySpec::Cycle(n) => phi_cycle_closed(n, &ctx),
                    FamilySpec::P66(n) => phi_p66_closed(n, &ctx),
                    FamilySpec::R { a, b } => phi_r_closed(a + b, b, &ctx),
                    FamilySpec::Tadpole { .. } => unreachable!(),
                }
                .unwrap();
                let rel = closed.rel_diff(&complex_oracle(p, ctx.x()));
                if rel > tol {
                    bad += 1;
                }
                worst = worst.max(rel.to_f64());
            }
            (bad, worst)
        })
        .collect();
    let bad: usize = per_point.iter().map(|r| r.0).sum();
    let worst = per_point.iter().map(|r| r.1).fold(0f64, f64::max);
    outcome(
        bad == 0,
        format!(
            "{} instances x {} points, {bad} above 1e-30, worst relative error {worst:.1e}",
            specs.len(),
            grid.len()
        ),
    )
}

fn extremal_check(orders: &[usize], allow_large: bool) -> Outcome {
    let mut ok = true;
    let mut parts = vec![];
    for &n in orders {
        let r = extremal(n, allow_large).unwrap();
        ok &= r.passed();
        parts.push(format!(
            "n = {n}: {} graphs, winner P66 {}, unique {}, margin {:.6}",
            r.class_size, r.winner_is_p66, r.unique, r.margin
        ));
    }
    outcome(ok, parts.join("; "))
}

fn cross_method() -> Outcome {
    let specs: Vec<FamilySpec> = family_instances(40);
    let results: Vec<(f64, bool)> = specs
        .par_iter()
        .map(|s| {
            let g = build(s).unwrap();
            let p = charpoly_direct(&g);
            let e = energy_eigen(&p).unwrap();
            let c = energy_coulson_explicit(&p).unwrap();
            ((e.value - c.value).abs(), e.trace_identities_hold(g.size()))
        })
        .collect();
    let worst = results.iter().map(|r| r.0).fold(0f64, f64::max);
    let trace_bad = results.iter().filter(|r| !r.1).count();
    outcome(
        worst < 1e-8 && trace_bad == 0,
        format!(
            "{} family instances, worst |eigen - coulson| {worst:.1e}, trace identity failures {trace_bad}",
            specs.len()
        ),
    )
}

#[test]
fn acceptance_criteria() {
    let secs = Duration::from_secs;
    let results = [
        run(1, "golden coefficients", secs(1), golden),
        run(2, "charpoly oracle equivalence", secs(120), oracle_equivalence),
        run(3, "scan reproduction, a + b <= 50", secs(300), || scan_check(50)),
        run(4, "scan extension, a + b <= 100", secs(900), || scan_check(100)),
        run(5, "sign chain on the default grid", secs(300), sign_chain),
        run(6, "A1 A2 product identity and positivity", secs(10), a_product_identity),
        run(7, "closed forms against exact polynomials, n <= 40", secs(120), closed_form_consistency),
        run(8, "extremal enumeration at n = 12, 13", secs(600), || extremal_check(&[12, 13], false)),
        run(9, "eigenvalue and Coulson energies, n <= 40", secs(300), cross_method),
    ];
    let failed: Vec<usize> = results
        .iter()
        .enumerate()
        .filter(|(_, ok)| !**ok)
        .map(|(i, _)| i + 1)
        .collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}

/// The n = 14 case of the extremal criterion, which the CLI gates behind
/// `--allow-large`. Run with `--ignored`.
#[test]
#[ignore]
fn acceptance_extremal_n14() {
    assert!(run(8, "extremal enumeration at n = 14", Duration::from_secs(1800), || extremal_check(
        &[14],
        true
    )));
}
