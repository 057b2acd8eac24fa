//! Every identity and invariant the toolkit relies on, as one report.

use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::signgrid::{signgrid, SignGridConfig, SignQuantity};
use crate::closedform::{
    k_both, k_exact_poly, phi_cycle_closed, phi_p66_closed, phi_path_closed, phi_r_closed, sign_grid,
    ClosedFormContext, ComplexHi, DEFAULT_GRID_DENSITY,
};
use crate::energy::{energy_coulson_explicit, energy_difference, energy_eigen};
use crate::graph::{build, enumerate_bipartite_bicyclic, family_instances, EnumerationConfig, FamilySpec, Graph};
use crate::hireal::{HiReal, Precision};
use crate::poly::{
    charpoly_by_recursion, charpoly_direct, edge_deletion_recursion, has_bipartite_signs, imag_axis_parts, IntPoly,
};
use crate::Result;

/// `phi(P66(12))` and `phi(P66(13))`, highest degree first.
const P66_12: [i64; 13] = [1, 0, -13, 0, 62, 0, -138, 0, 153, 0, -81, 0, 16];
const P66_13: [i64; 14] = [1, 0, -14, 0, 74, 0, -188, 0, 245, 0, -158, 0, 40, 0];

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub density: usize,
    pub precision: Precision,
    /// Largest family order in the polynomial and energy checks.
    pub family_max_n: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            density: DEFAULT_GRID_DENSITY,
            precision: Precision::default(),
            family_max_n: 40,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IdentityCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
}

/// The energies behind the base case of the monotonicity argument, reported
/// against both candidate reference graphs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BaseCase {
    pub e_r_10_10: f64,
    pub e_p66_20: f64,
    pub e_p66_12: f64,
    /// `E(R(10,10)) - E(P66(20))`.
    pub r_minus_p66_20: f64,
    /// `E(R(10,10)) - E(P66(12))`.
    pub r_minus_p66_12: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub checks: Vec<IdentityCheck>,
    pub base_case: BaseCase,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

fn timed(name: &str, f: impl FnOnce() -> Result<(bool, String)>) -> Result<IdentityCheck> {
    let start = Instant::now();
    let (passed, detail) = f()?;
    Ok(IdentityCheck {
        name: name.to_string(),
        passed,
        detail,
        seconds: start.elapsed().as_secs_f64(),
    })
}

fn pow10(p: Precision, e: i32) -> HiReal {
    HiReal::parse(&format!("1e{e}"), p).expect("decimal literal")
}

/// Run every check. Failures are reported, not raised; an `Err` means a
/// check could not be carried out at all.
pub fn verify_identities(config: &VerifyConfig) -> Result<VerifyReport> {
    let mut checks = vec![
        timed("golden-p66-coefficients", golden)?,
        timed("charpoly-routes-agree-families", || routes_on_families(30))?,
        timed("charpoly-routes-agree-enumerated", || routes_on_enumerated(10))?,
        timed("a-product-identity", || a_identity(config))?,
        timed("a-positive", || a_positive(config))?,
        timed("closed-forms-match-polynomials", || closed_forms(config))?,
        timed("k-forms-match-exact-polynomial", || k_exact(config))?,
    ];
    let sg = SignGridConfig {
        density: config.density,
        precision: config.precision,
        ..SignGridConfig::default()
    };
    for q in [SignQuantity::K, SignQuantity::F, SignQuantity::F10, SignQuantity::Chain] {
        checks.push(timed(&format!("signgrid-{q}"), || {
            let r = signgrid(q, &sg)?;
            let mut detail = format!("{} points, {} evaluations, {} violations", r.points, r.evaluations, r.violations.len());
            if let Some(v) = r.violations.first() {
                detail.push_str(&format!("; first: {} at x = {} (value {:e})", v.check, v.x, v.value));
            }
            Ok((r.passed(), detail))
        })?);
    }
    checks.push(timed("energy-methods-agree", || energy_methods(config.family_max_n))?);
    checks.push(timed("energy-difference-consistency", difference_consistency)?);
    let base_case = base_case()?;
    checks.push(IdentityCheck {
        name: "base-case-r10-10-below-p66-20".to_string(),
        passed: base_case.r_minus_p66_20 < 0.0,
        detail: format!(
            "E(R(10,10)) - E(P66(20)) = {:.12e}; E(R(10,10)) - E(P66(12)) = {:.12e}",
            base_case.r_minus_p66_20, base_case.r_minus_p66_12
        ),
        seconds: 0.0,
    });
    Ok(VerifyReport { checks, base_case })
}

fn golden() -> Result<(bool, String)> {
    let ok12 = charpoly_by_recursion(&FamilySpec::P66(12))? == IntPoly::from_descending(&P66_12)
        && charpoly_direct(&build(&FamilySpec::P66(12))?) == IntPoly::from_descending(&P66_12);
    let ok13 = charpoly_by_recursion(&FamilySpec::P66(13))? == IntPoly::from_descending(&P66_13)
        && charpoly_direct(&build(&FamilySpec::P66(13))?) == IntPoly::from_descending(&P66_13);
    Ok((ok12 && ok13, format!("P66(12): {ok12}, P66(13): {ok13}")))
}

fn three_routes(g: &Graph, recursion: Option<IntPoly>) -> Result<bool> {
    let direct = charpoly_direct(g);
    let edge = g.edges()[0];
    let deleted = edge_deletion_recursion(g, edge)?;
    Ok(direct == deleted && recursion.map_or(true, |r| r == direct))
}

fn routes_on_families(max_n: usize) -> Result<(bool, String)> {
    let specs: Vec<FamilySpec> = family_instances(max_n)
        .into_iter()
        .filter(|s| !matches!(s, FamilySpec::Path(1)))
        .collect();
    let bad = specs
        .par_iter()
        .map(|s| Ok((three_routes(&build(s)?, Some(charpoly_by_recursion(s)?))?, *s)))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .filter(|(ok, _)| !ok)
        .map(|(_, s)| s.to_string())
        .collect::<Vec<_>>();
    Ok((bad.is_empty(), format!("{} instances, mismatches: {:?}", specs.len(), bad)))
}

fn routes_on_enumerated(max_n: usize) -> Result<(bool, String)> {
    let mut total = 0;
    let mut bad = 0;
    let mut signs_bad = 0;
    for n in 5..=max_n {
        let graphs = enumerate_bipartite_bicyclic(n, &EnumerationConfig::default())?;
        total += graphs.len();
        let results = graphs
            .par_iter()
            .map(|g| Ok((three_routes(g, None)?, has_bipartite_signs(&charpoly_direct(g)))))
            .collect::<Result<Vec<_>>>()?;
        bad += results.iter().filter(|r| !r.0).count();
        signs_bad += results.iter().filter(|r| !r.1).count();
    }
    Ok((
        bad == 0 && signs_bad == 0,
        format!("{total} graphs, {bad} route mismatches, {signs_bad} sign-pattern failures"),
    ))
}

/// Twenty points spread over the sign grid.
fn sample_points(density: usize) -> Vec<f64> {
    let grid = sign_grid(density);
    let step = (grid.len() / 20).max(1);
    grid.into_iter().step_by(step).take(20).collect()
}

fn a_identity(config: &VerifyConfig) -> Result<(bool, String)> {
    let tol = pow10(config.precision, -40);
    let mut worst = 0f64;
    let mut ok = true;
    for x in sample_points(config.density) {
        let ctx = ClosedFormContext::from_f64(x, None, config.precision)?;
        let rel = (ctx.a1() * ctx.a2()).rel_diff(&ctx.a_product_identity());
        ok &= rel <= tol;
        worst = worst.max(rel.to_f64());
    }
    Ok((ok, format!("20 points, worst relative error {worst:e}")))
}

fn a_positive(config: &VerifyConfig) -> Result<(bool, String)> {
    let grid = sign_grid(config.density);
    let bad = grid
        .par_iter()
        .map(|&x| {
            let ctx = ClosedFormContext::from_f64(x, None, config.precision)?;
            Ok(!(ctx.a1().is_positive() && ctx.a2().is_positive()))
        })
        .collect::<Result<Vec<bool>>>()?
        .into_iter()
        .filter(|b| *b)
        .count();
    Ok((bad == 0, format!("{} points, {bad} failures", grid.len())))
}

fn closed_forms(config: &VerifyConfig) -> Result<(bool, String)> {
    let max_n = config.family_max_n;
    let mut specs: Vec<FamilySpec> = (4..=max_n).flat_map(|n| [FamilySpec::Path(n), FamilySpec::Cycle(n)]).collect();
    specs.extend((12..=max_n).map(FamilySpec::P66));
    for n in 6..=max_n {
        specs.extend((3..=n - 3).map(|t| FamilySpec::R { a: n - t, b: t }));
    }
    let rotated = specs
        .iter()
        .map(|s| Ok((*s, imag_axis_parts(&charpoly_by_recursion(s)?))))
        .collect::<Result<Vec<_>>>()?;
    let grid = sign_grid(config.density.min(8));
    let tol = pow10(config.precision, -30);
    let per_point = grid
        .par_iter()
        .map(|&x| -> Result<(usize, f64)> {
            let ctx = ClosedFormContext::from_f64(x, None, config.precision)?;
            let mut bad = 0;
            let mut worst = 0f64;
            for (spec, (re, im)) in &rotated {
                let closed = match *spec {
                    FamilySpec::Path(n) => phi_path_closed(n, &ctx)?,
                    FamilySpec::Cycle(n) => phi_cycle_closed(n, &ctx)?,
                    FamilySpec::P66(n) => phi_p66_closed(n, &ctx)?,
                    FamilySpec::R { a, b } => phi_r_closed(a + b, b, &ctx)?,
                    FamilySpec::Tadpole { .. } => unreachable!("no closed form for tadpoles"),
                };
                let exact = ComplexHi {
                    re: re.eval_hi(ctx.x()),
                    im: im.eval_hi(ctx.x()),
                };
                let rel = closed.rel_diff(&exact);
                if rel > tol {
                    bad += 1;
                }
                worst = worst.max(rel.to_f64());
            }
            Ok((bad, worst))
        })
        .collect::<Result<Vec<_>>>()?;
    let bad: usize = per_point.iter().map(|r| r.0).sum();
    let worst = per_point.iter().map(|r| r.1).fold(0f64, f64::max);
    Ok((
        bad == 0,
        format!(
            "{} instances x {} points, {bad} above 1e-30, worst {worst:e}",
            specs.len(),
            grid.len()
        ),
    ))
}

fn k_exact(config: &VerifyConfig) -> Result<(bool, String)> {
    let tol = pow10(config.precision, -30);
    let mut ok = true;
    let mut worst = 0f64;
    for (n, t) in [(20, 10), (24, 10), (28, 14), (40, 18)] {
        let exact = k_exact_poly(n, t)?;
        for x in sample_points(config.density) {
            let ctx = ClosedFormContext::from_f64(x, None, config.precision)?;
            let (k, k_prod) = k_both(n, t, &ctx)?;
            let want = exact.eval_hi(ctx.x());
            for v in [&k, &k_prod] {
                let rel = v.rel_diff(&want);
                ok &= rel <= tol;
                worst = worst.max(rel.to_f64());
            }
        }
    }
    Ok((ok, format!("4 (n,t) pairs x 20 points, worst relative error {worst:e}")))
}

fn energy_methods(max_n: usize) -> Result<(bool, String)> {
    let specs = family_instances(max_n);
    let results = specs
        .par_iter()
        .map(|s| {
            let g = build(s)?;
            let p = charpoly_by_recursion(s)?;
            let e = energy_eigen(&p)?;
            let c = energy_coulson_explicit(&p)?;
            Ok(((e.value - c.value).abs(), e.trace_identities_hold(g.size())))
        })
        .collect::<Result<Vec<_>>>()?;
    let worst = results.iter().map(|r| r.0).fold(0f64, f64::max);
    let trace_bad = results.iter().filter(|r| !r.1).count();
    Ok((
        worst < 1e-8 && trace_bad == 0,
        format!(
            "{} instances, worst |eigen - coulson| {worst:e}, {trace_bad} trace failures",
            specs.len()
        ),
    ))
}

fn difference_consistency() -> Result<(bool, String)> {
    let polys = [
        FamilySpec::P66(24),
        FamilySpec::R { a: 14, b: 10 },
        FamilySpec::Path(24),
        FamilySpec::Tadpole { n: 24, cycle: 7 },
    ]
    .iter()
    .map(charpoly_by_recursion)
    .collect::<Result<Vec<_>>>()?;
    let eig = polys.iter().map(|p| Ok(energy_eigen(p)?.value)).collect::<Result<Vec<_>>>()?;
    let mut worst_anti = 0f64;
    let mut worst_add = 0f64;
    let mut worst_eig = 0f64;
    for i in 0..polys.len() {
        for j in 0..polys.len() {
            let dij = energy_difference(&polys[i], &polys[j])?;
            let dji = energy_difference(&polys[j], &polys[i])?;
            worst_anti = worst_anti.max((dij + dji).abs());
            worst_eig = worst_eig.max((dij - (eig[i] - eig[j])).abs());
            for k in 0..polys.len() {
                let dik = energy_difference(&polys[i], &polys[k])?;
                let djk = energy_difference(&polys[j], &polys[k])?;
                worst_add = worst_add.max((dik - dij - djk).abs());
            }
        }
    }
    Ok((
        worst_anti < 2e-6 && worst_add < 3e-6 && worst_eig < 1e-6,
        format!("antisymmetry {worst_anti:e}, additivity {worst_add:e}, against eigenvalues {worst_eig:e}"),
    ))
}

fn base_case() -> Result<BaseCase> {
    let e = |s: FamilySpec| -> Result<f64> { Ok(energy_eigen(&charpoly_by_recursion(&s)?)?.value) };
    let e_r_10_10 = e(FamilySpec::R { a: 10, b: 10 })?;
    let e_p66_20 = e(FamilySpec::P66(20))?;
    let e_p66_12 = e(FamilySpec::P66(12))?;
    Ok(BaseCase {
        e_r_10_10,
        e_p66_20,
        e_p66_12,
        r_minus_p66_20: e_r_10_10 - e_p66_20,
        r_minus_p66_12: e_r_10_10 - e_p66_12,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cheap_checks_pass() {
        assert!(golden().unwrap().0);
        assert!(routes_on_families(14).unwrap().0);
        assert!(routes_on_enumerated(7).unwrap().0);
        let cfg = VerifyConfig {
            density: 2,
            family_max_n: 16,
            ..VerifyConfig::default()
        };
        assert!(a_identity(&cfg).unwrap().0);
        assert!(a_positive(&cfg).unwrap().0);
        let (ok, detail) = closed_forms(&cfg).unwrap();
        assert!(ok, "{detail}");
        let (ok, detail) = k_exact(&cfg).unwrap();
        assert!(ok, "{detail}");
        assert!(energy_methods(16).unwrap().0);
    }

    #[test]
    fn base_case_signs() {
        let b = base_case().unwrap();
        assert!(b.r_minus_p66_20 < 0.0);
        assert!(b.e_p66_12 < b.e_p66_20);
    }
}
