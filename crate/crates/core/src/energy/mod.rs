//! Graph energy `E(G) = sum |lambda_i|` by three independent routes:
//!
//! - certified eigenvalues from Sturm isolation on the exact polynomial;
//! - the Coulson integral in its explicit coefficient form,
//!   `E = (1/pi) int_0^inf x^-2 ln(even(x)^2 + odd(x)^2) dx`;
//! - the Coulson difference integral for two graphs of equal order,
//!   `E1 - E2 = (1/pi) int_0^inf ln(|phi1(ix)|^2 / |phi2(ix)|^2) dx`.
//!
//! Both integrals are rewritten exactly before any floating point work.
//! For a real spectrum, `even^2 + odd^2 = prod (1 + lambda^2 x^2)` and
//! `|phi(ix)|^2 = prod (x^2 + lambda^2)`, so after the substitution
//! `y = x^2` every polynomial evaluated has non-negative coefficients, or is
//! an exact integer difference of two such polynomials. The half-line is
//! split at 1 and `x = 1/u` folds `[1, inf)` back onto `[0, 1]`; the
//! logarithmic terms this produces are integrated in closed form.

mod quad;
mod roots;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::graph::{build, FamilySpec};
use crate::poly::{bigint_to_f64, charpoly_by_recursion, coulson_split, imag_axis_parts, IntPoly};
use crate::{Error, Result};
use roots::{isolate, narrower_than, refine, root_bound, sqrt_enclosure, Dyadic};

/// Eigenvalue enclosures are refined to width `2^-REFINE_BITS`.
const REFINE_BITS: u32 = 51;
/// Absolute quadrature tolerance per integral.
const QUAD_TOL: f64 = 1e-12;
const QUAD_MAX_SEGMENTS: usize = 4000;
/// Two energy differences agree when closer than this.
pub const AGREEMENT_TOL: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EnergyMethod {
    Eigenvalue,
    CoulsonExplicit,
    /// Reference energy plus a Coulson difference integral.
    CoulsonDifference { reference: String },
}

/// Exact trace sums of the reported eigenvalue midpoints, with bounds on
/// their distance from the true sums.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TraceSums {
    pub sum: f64,
    pub sum_bound: f64,
    pub sum_squares: f64,
    pub sum_squares_bound: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EnergyResult {
    pub value: f64,
    pub method: EnergyMethod,
    /// Sorted, repeated by multiplicity.
    pub eigenvalues: Option<Vec<f64>>,
    pub error_bound: f64,
    pub trace: Option<TraceSums>,
}

impl EnergyResult {
    /// `sum lambda = 0` and `sum lambda^2 = 2 m` within the certified bounds.
    pub fn trace_identities_hold(&self, edges: usize) -> bool {
        self.trace.as_ref().is_some_and(|t| {
            t.sum.abs() <= t.sum_bound && (t.sum_squares - 2.0 * edges as f64).abs() <= t.sum_squares_bound
        })
    }
}

/// One eigenvalue enclosure `[lo, hi]` with its multiplicity.
struct Enclosure {
    lo: Dyadic,
    hi: Dyadic,
    mult: usize,
}

fn non_real(degree: usize, found: usize) -> Error {
    Error::NonRealSpectrum { degree, found }
}

/// Enclosures of all eigenvalues of a polynomial whose roots are real.
fn eigen_enclosures(p: &IntPoly) -> Result<Vec<Enclosure>> {
    let degree = p.degree().ok_or_else(|| Error::domain("zero polynomial has no spectrum"))?;
    let k = p.valuation();
    let rest = IntPoly::new(p.coeffs()[k..].to_vec());
    let mut out = Vec::new();
    if k > 0 {
        out.push(Enclosure {
            lo: Dyadic::zero(),
            hi: Dyadic::zero(),
            mult: k,
        });
    }
    let mut found = k;
    if let Some(q) = rest.as_poly_in_square() {
        // rest(x) = q(x^2): roots of q are squared eigenvalues, all positive.
        for (g, mult) in q.square_free_decomposition() {
            let top = root_bound(&g);
            let isolated = isolate(&g, &Dyadic::zero(), &top);
            found += 2 * mult * isolated.len();
            if isolated.len() != g.degree().unwrap() {
                return Err(non_real(degree, found));
            }
            let encl: Vec<Enclosure> = isolated
                .into_par_iter()
                .flat_map_iter(|(a, b)| {
                    let done = |a: &Dyadic, b: &Dyadic| {
                        let (lo, hi) = sqrt_enclosure(a, b, REFINE_BITS);
                        hi.sub(&lo).at_most_pow2(REFINE_BITS)
                    };
                    let (a, b) = refine(&g, a, b, done);
                    let (lo, hi) = sqrt_enclosure(&a, &b, REFINE_BITS);
                    [
                        Enclosure {
                            lo: hi.neg(),
                            hi: lo.neg(),
                            mult,
                        },
                        Enclosure { lo, hi, mult },
                    ]
                })
                .collect();
            out.extend(encl);
        }
    } else {
        for (g, mult) in rest.square_free_decomposition() {
            let top = root_bound(&g);
            let isolated = isolate(&g, &top.neg(), &top);
            found += mult * isolated.len();
            if isolated.len() != g.degree().unwrap() {
                return Err(non_real(degree, found));
            }
            let encl: Vec<Enclosure> = isolated
                .into_par_iter()
                .map(|(a, b)| {
                    let (lo, hi) = refine(&g, a, b, narrower_than(REFINE_BITS));
                    Enclosure { lo, hi, mult }
                })
                .collect();
            out.extend(encl);
        }
    }
    if found != degree {
        return Err(non_real(degree, found));
    }
    out.sort_by(|a, b| a.lo.cmp_value(&b.lo));
    Ok(out)
}

/// Energy from certified eigenvalue enclosures. Every eigenvalue is
/// enclosed in an interval of width at most `2^-51`; sums are formed exactly
/// from the midpoints and rounded once.
pub fn energy_eigen(p: &IntPoly) -> Result<EnergyResult> {
    let enclosures = eigen_enclosures(p)?;
    let mut energy = Dyadic::zero();
    let mut sum = Dyadic::zero();
    let mut squares = Dyadic::zero();
    let mut width_total = Dyadic::zero();
    let mut squares_slack = Dyadic::zero();
    let mut eigenvalues = Vec::new();
    for e in &enclosures {
        let mid = Dyadic::midpoint(&e.lo, &e.hi);
        let half = e.hi.sub(&e.lo).half();
        energy = energy.add(&mid.abs().scale_int(e.mult));
        sum = sum.add(&mid.scale_int(e.mult));
        squares = squares.add(&mid.mul(&mid).scale_int(e.mult));
        width_total = width_total.add(&half.scale_int(e.mult));
        // |lambda^2 - mid^2| <= 2 |mid| half + half^2.
        let slack = mid.abs().scale_int(2).mul(&half).add(&half.mul(&half));
        squares_slack = squares_slack.add(&slack.scale_int(e.mult));
        let v = mid.to_f64();
        eigenvalues.extend(std::iter::repeat(v).take(e.mult));
    }
    let eps = f64::EPSILON;
    let value = energy.to_f64();
    let widths = width_total.to_f64() * (1.0 + eps);
    let trace = TraceSums {
        sum: sum.to_f64(),
        sum_bound: widths + eps * sum.to_f64().abs(),
        sum_squares: squares.to_f64(),
        sum_squares_bound: squares_slack.to_f64() * (1.0 + eps) + eps * squares.to_f64(),
    };
    Ok(EnergyResult {
        value,
        method: EnergyMethod::Eigenvalue,
        eigenvalues: Some(eigenvalues),
        error_bound: widths + 0.5 * eps * value,
        trace: Some(trace),
    })
}

fn to_f64_coeffs(p: &IntPoly) -> Result<Vec<f64>> {
    let c: Vec<f64> = p.coeffs().iter().map(bigint_to_f64).collect();
    if c.iter().any(|v| !v.is_finite()) {
        return Err(Error::Capacity {
            what: "coefficient magnitude for double-precision quadrature",
            value: p.coeffs().iter().map(|c| c.bits() as usize).max().unwrap_or(0),
            limit: 1023,
        });
    }
    Ok(c)
}

fn horner(c: &[f64], y: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, v| acc * y + v)
}

/// `R(y) = prod (1 + lambda^2 y)` with `R(x^2) = even(x)^2 + odd(x)^2`.
fn coulson_r(p: &IntPoly) -> Result<IntPoly> {
    let (even, odd) = coulson_split(p);
    let r = &(&even * &even) + &(&odd * &odd);
    r.as_poly_in_square()
        .ok_or_else(|| Error::domain("even^2 + odd^2 is not a polynomial in x^2"))
}

/// `Q(y) = prod (y + lambda^2)` with `Q(x^2) = |p(ix)|^2`.
fn rotated_modulus(p: &IntPoly) -> Result<IntPoly> {
    let (re, im) = imag_axis_parts(p);
    let q = &(&re * &re) + &(&im * &im);
    q.as_poly_in_square()
        .ok_or_else(|| Error::domain("|p(ix)|^2 is not a polynomial in x^2"))
}

fn reversed(p: &IntPoly, degree: usize) -> IntPoly {
    let mut c: Vec<BigInt> = (0..=degree).map(|i| p.coeff(i)).collect();
    c.reverse();
    IntPoly::new(c)
}

fn drop_low(p: &IntPoly, k: usize) -> IntPoly {
    IntPoly::new(p.coeffs()[k.min(p.coeffs().len())..].to_vec())
}

/// Energy from the explicit Coulson formula. With `R(y) = sum c_k y^k`,
/// `c_0 = 1`, `d = deg R`:
///
/// `pi E = int_0^1 ln R(x^2) / x^2 dx + 2d + int_0^1 ln R*(u^2) du`,
///
/// where `R*(y) = y^d R(1/y)` has positive constant term.
pub fn energy_coulson_explicit(p: &IntPoly) -> Result<EnergyResult> {
    let r = coulson_r(p)?;
    let d = r.degree().unwrap_or(0);
    if d == 0 {
        return Ok(EnergyResult {
            value: 0.0,
            method: EnergyMethod::CoulsonExplicit,
            eigenvalues: None,
            error_bound: 0.0,
            trace: None,
        });
    }
    let c = to_f64_coeffs(&r)?;
    if c.iter().any(|v| *v < 0.0) || c[0] != 1.0 {
        return Err(Error::domain("explicit Coulson form needs a real spectrum"));
    }
    let tail = c[1..].to_vec();
    let rev = to_f64_coeffs(&reversed(&r, d))?;
    let near = |x: f64| {
        let y = x * x;
        let t = horner(&tail, y);
        if y == 0.0 {
            t
        } else {
            (y * t).ln_1p() / y
        }
    };
    let far = |u: f64| horner(&rev, u * u).ln();
    let (i1, e1) = quad::integrate(near, 0.0, 1.0, QUAD_TOL, QUAD_MAX_SEGMENTS)?;
    let (i2, e2) = quad::integrate(far, 0.0, 1.0, QUAD_TOL, QUAD_MAX_SEGMENTS)?;
    let pi = std::f64::consts::PI;
    let value = (i1 + 2.0 * d as f64 + i2) / pi;
    // Quadrature estimates plus the relative error of positive-coefficient
    // Horner evaluation carried through the logarithm.
    let eval = 4.0 * (d as f64 + 1.0) * f64::EPSILON * (1.0 + value);
    Ok(EnergyResult {
        value,
        method: EnergyMethod::CoulsonExplicit,
        eigenvalues: None,
        error_bound: (e1 + e2) / pi + eval,
        trace: None,
    })
}

/// `ln(A(y) / B(y)) / y^shift` evaluated through the exact difference
/// `D = A - B = y^shift * dd`: `ln_1p(D/B)` when the ratio is near one.
struct LogRatio {
    a: Vec<f64>,
    b: Vec<f64>,
    dd: Vec<f64>,
    shift: i32,
}

impl LogRatio {
    fn new(a: &IntPoly, b: &IntPoly, shift: usize) -> Result<Self> {
        let diff = a - b;
        debug_assert!(diff.is_zero() || diff.valuation() >= shift);
        Ok(LogRatio {
            a: to_f64_coeffs(a)?,
            b: to_f64_coeffs(b)?,
            dd: to_f64_coeffs(&drop_low(&diff, shift))?,
            shift: shift as i32,
        })
    }

    fn at(&self, y: f64) -> f64 {
        let bv = horner(&self.b, y);
        let scale = y.powi(self.shift);
        let w = scale * horner(&self.dd, y) / bv;
        if w.abs() < 0.5 {
            if scale == 0.0 {
                horner(&self.dd, y) / bv
            } else {
                w.ln_1p() / scale
            }
        } else {
            (horner(&self.a, y).ln() - bv.ln()) / scale
        }
    }
}

/// `(E(p1) - E(p2), error estimate)` from the Coulson difference integral.
pub fn energy_difference_estimate(p1: &IntPoly, p2: &IntPoly) -> Result<(f64, f64)> {
    let (n1, n2) = (p1.degree(), p2.degree());
    if n1 != n2 {
        return Err(Error::domain(format!(
            "energy difference needs equal orders (got {:?} and {:?})",
            n1, n2
        )));
    }
    let n = n1.ok_or_else(|| Error::domain("zero polynomial"))?;
    let (q1, q2) = (rotated_modulus(p1)?, rotated_modulus(p2)?);
    if q1 == q2 {
        return Ok((0.0, 0.0));
    }
    // [0, 1]: Q_j(y) = y^{k_j} Q'_j(y) with Q'_j(0) > 0.
    let (k1, k2) = (q1.valuation(), q2.valuation());
    let (s1, s2) = (drop_low(&q1, k1), drop_low(&q2, k2));
    let near = LogRatio::new(&s1, &s2, 0)?;
    // [1, inf) with x = 1/u: ln(Q1/Q2)(1/u^2) = ln(R1/R2)(u^2), R_j = y^n Q_j(1/y),
    // R_j(0) = 1; divided by u^2 from dx = du/u^2.
    let (r1, r2) = (reversed(&q1, n), reversed(&q2, n));
    let far = LogRatio::new(&r1, &r2, 1)?;
    let (i1, e1) = quad::integrate(|x| near.at(x * x), 0.0, 1.0, QUAD_TOL, QUAD_MAX_SEGMENTS)?;
    let (i2, e2) = quad::integrate(|u| far.at(u * u), 0.0, 1.0, QUAD_TOL, QUAD_MAX_SEGMENTS)?;
    // int_0^1 (k1 - k2) ln x^2 dx = -2 (k1 - k2).
    let log_term = -2.0 * (k1 as f64 - k2 as f64);
    let pi = std::f64::consts::PI;
    let eval = 8.0 * (n as f64 + 1.0) * f64::EPSILON;
    Ok(((i1 + log_term + i2) / pi, (e1 + e2) / pi + eval))
}

/// `E(p1) - E(p2)` from the Coulson difference integral.
pub fn energy_difference(p1: &IntPoly, p2: &IntPoly) -> Result<f64> {
    Ok(energy_difference_estimate(p1, p2)?.0)
}

/// Energy of `p` as `E(reference) + (E(p) - E(reference))`, the second term
/// from the difference integral.
pub fn energy_relative_to(
    p: &IntPoly,
    reference: &IntPoly,
    reference_energy: &EnergyResult,
    label: &str,
) -> Result<EnergyResult> {
    let (d, err) = energy_difference_estimate(p, reference)?;
    Ok(EnergyResult {
        value: reference_energy.value + d,
        method: EnergyMethod::CoulsonDifference {
            reference: label.to_string(),
        },
        eigenvalues: None,
        error_bound: reference_energy.error_bound + err,
        trace: None,
    })
}

/// `E(P66(n)) - E(R(n-t, t))` by eigenvalues, cross-checked by the
/// difference integral.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComparisonRecord {
    pub n: usize,
    pub t: usize,
    pub e_p66: f64,
    pub e_r: f64,
    pub difference: f64,
    pub coulson_difference: f64,
    pub methods_agree: bool,
}

/// Parameter domain of the comparison: `n - t >= 10`, `t >= 10`, both
/// congruent to 2 mod 4.
pub fn check_comparison_domain(n: usize, t: usize) -> Result<()> {
    let ok = |v: usize| v >= 10 && v % 4 == 2;
    if t >= n || !ok(t) || !ok(n - t) {
        return Err(Error::domain(format!(
            "comparison needs t, n - t >= 10 and both = 2 (mod 4) (got n = {n}, t = {t})"
        )));
    }
    Ok(())
}

pub fn compare_families(n: usize, t: usize) -> Result<ComparisonRecord> {
    check_comparison_domain(n, t)?;
    let p66 = charpoly_by_recursion(&FamilySpec::P66(n))?;
    let r = charpoly_by_recursion(&FamilySpec::R { a: n - t, b: t })?;
    debug_assert_eq!(build(&FamilySpec::P66(n))?.order(), n);
    let (e1, e2) = rayon::join(|| energy_eigen(&p66), || energy_eigen(&r));
    let (e1, e2) = (e1?, e2?);
    let difference = e1.value - e2.value;
    let coulson_difference = energy_difference(&p66, &r)?;
    Ok(ComparisonRecord {
        n,
        t,
        e_p66: e1.value,
        e_r: e2.value,
        difference,
        coulson_difference,
        methods_agree: (difference - coulson_difference).abs() < AGREEMENT_TOL,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::poly::{charpoly_direct, component_product};

    fn phi(spec: FamilySpec) -> IntPoly {
        charpoly_by_recursion(&spec).unwrap()
    }

    #[test]
    fn path_two() {
        let p = phi(FamilySpec::Path(2));
        let e = energy_eigen(&p).unwrap();
        assert_eq!(e.value, 2.0);
        assert_eq!(e.eigenvalues.as_deref(), Some(&[-1.0, 1.0][..]));
        assert!((energy_coulson_explicit(&p).unwrap().value - 2.0).abs() < 1e-8);
    }

    #[test]
    fn cycle_six() {
        let p = phi(FamilySpec::Cycle(6));
        let e = energy_eigen(&p).unwrap();
        assert!((e.value - 8.0).abs() <= e.error_bound.max(1e-15));
        let want = [-2.0, -1.0, -1.0, 1.0, 1.0, 2.0];
        for (got, w) in e.eigenvalues.unwrap().iter().zip(want) {
            assert!((got - w).abs() < 1e-15);
        }
        assert!((energy_coulson_explicit(&p).unwrap().value - 8.0).abs() < 1e-8);
    }

    #[test]
    fn edgeless_graph() {
        let p = IntPoly::monomial(BigInt::from(1), 5);
        assert_eq!(energy_eigen(&p).unwrap().value, 0.0);
        assert_eq!(energy_coulson_explicit(&p).unwrap().value, 0.0);
    }

    #[test]
    fn odd_cycles_use_the_general_path() {
        for n in [3, 5, 7, 9] {
            let p = phi(FamilySpec::Cycle(n));
            let e = energy_eigen(&p).unwrap();
            let want: f64 = (0..n)
                .map(|j| (2.0 * (2.0 * std::f64::consts::PI * j as f64 / n as f64).cos()).abs())
                .sum();
            assert!((e.value - want).abs() < 1e-13, "C{n}");
            assert!(e.trace_identities_hold(n));
            assert!((energy_coulson_explicit(&p).unwrap().value - want).abs() < 1e-8);
        }
    }

    #[test]
    fn non_real_spectrum_is_rejected() {
        let p = IntPoly::from_i64s(&[1, 0, 1]); // x^2 + 1
        assert!(matches!(energy_eigen(&p), Err(Error::NonRealSpectrum { degree: 2, found: 0 })));
        let q = IntPoly::from_i64s(&[2, 0, 0, 1]); // x^3 + 2, one real root
        assert!(matches!(energy_eigen(&q), Err(Error::NonRealSpectrum { degree: 3, found: 1 })));
    }

    #[test]
    fn error_bound_and_traces() {
        for spec in [FamilySpec::P66(12), FamilySpec::R { a: 10, b: 10 }, FamilySpec::Tadpole { n: 9, cycle: 5 }] {
            let g = build(&spec).unwrap();
            let e = energy_eigen(&charpoly_direct(&g)).unwrap();
            assert!(e.error_bound <= g.order() as f64 * 1e-15);
            assert!(e.trace_identities_hold(g.size()), "{spec}");
        }
    }

    #[test]
    fn difference_basics() {
        let p = phi(FamilySpec::P66(20));
        let r = phi(FamilySpec::R { a: 10, b: 10 });
        assert_eq!(energy_difference(&p, &p).unwrap(), 0.0);
        assert!(energy_difference(&p, &r).unwrap() > 0.0);
        assert!(matches!(
            energy_difference(&p, &phi(FamilySpec::P66(12))),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn difference_handles_singular_graphs() {
        // P2 against two isolated vertices: valuations 0 and 2.
        let p2 = phi(FamilySpec::Path(2));
        let empty = charpoly_direct(&Graph::empty(2));
        assert!((energy_difference(&p2, &empty).unwrap() - 2.0).abs() < 1e-10);
        assert!((energy_difference(&empty, &p2).unwrap() + 2.0).abs() < 1e-10);
    }

    #[test]
    fn difference_matches_eigenvalues_for_c6_pair_vs_p12() {
        let c6 = build(&FamilySpec::Cycle(6)).unwrap();
        let union = component_product(&c6.disjoint_union(&c6));
        let p12 = phi(FamilySpec::Path(12));
        let want = energy_eigen(&union).unwrap().value - energy_eigen(&p12).unwrap().value;
        assert!((energy_difference(&union, &p12).unwrap() - want).abs() < 1e-6);
    }

    #[test]
    fn comparison_record() {
        let rec = compare_families(20, 10).unwrap();
        assert!(rec.difference > 0.0);
        assert!(rec.methods_agree);
        assert!((rec.difference - (rec.e_p66 - rec.e_r)).abs() < 1e-15);
        assert!(compare_families(20, 8).is_err());
        assert!(compare_families(24, 12).is_err());
    }

    #[test]
    fn relative_energy() {
        let r = phi(FamilySpec::R { a: 10, b: 10 });
        let p = phi(FamilySpec::P66(20));
        let er = energy_eigen(&r).unwrap();
        let via = energy_relative_to(&p, &r, &er, "R(10,10)").unwrap();
        assert!((via.value - energy_eigen(&p).unwrap().value).abs() < 1e-6);
    }
}
