//! Pointwise sign checks of `K(n,t,x)` and `f(t,x)` on the sign grid.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::closedform::{
    check_k_domain, f10_explicit, f_coeffs, f_value, k_both, sign_grid, ClosedFormContext, DEFAULT_GRID_DENSITY,
};
use crate::hireal::{HiReal, Precision};
use crate::{Error, Result};

/// The two forms of `K`, and `f10_explicit` against `f(10,.)`, must agree to
/// this relative tolerance.
const AGREEMENT_DIGITS: i32 = 30;
/// Slack for the non-strict links of the chain, where `K(2t,t,x) = f(t,x)`
/// holds exactly and the two sides differ only by rounding.
const CHAIN_SLACK_DIGITS: i32 = 40;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SignQuantity {
    /// `K(n,t,x) < 0`, with both forms of `K` in agreement.
    K,
    /// `f(t,x) < 0`, `f(t+4,x) < f(t,x)` and the coefficient sign pattern.
    F,
    /// `f(10,x) < 0` from both the coefficient form and the explicit polynomial,
    /// which must agree.
    F10,
    /// `K(n,t,x) <= f(t,x) <= f(10,x) < 0`.
    Chain,
}

impl fmt::Display for SignQuantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SignQuantity::K => "k",
            SignQuantity::F => "f",
            SignQuantity::F10 => "f10",
            SignQuantity::Chain => "chain",
        })
    }
}

impl FromStr for SignQuantity {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "k" => Ok(SignQuantity::K),
            "f" => Ok(SignQuantity::F),
            "f10" => Ok(SignQuantity::F10),
            "chain" => Ok(SignQuantity::Chain),
            _ => Err(Error::Usage(format!("unknown quantity {s:?} (expected k, f, f10 or chain)"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SignGridConfig {
    pub t_list: Vec<usize>,
    /// `n` runs over `2t, 2t + 4, ..., n_max`.
    pub n_max: usize,
    pub density: usize,
    pub precision: Precision,
}

impl Default for SignGridConfig {
    fn default() -> Self {
        SignGridConfig {
            t_list: vec![10, 14, 18, 22],
            n_max: 60,
            density: DEFAULT_GRID_DENSITY,
            precision: Precision::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub check: String,
    pub n: Option<usize>,
    pub t: Option<usize>,
    pub x: f64,
    /// The offending value (a relative difference for agreement checks).
    pub value: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SignGridReport {
    pub quantity: SignQuantity,
    pub points: usize,
    pub evaluations: usize,
    pub violations: Vec<Violation>,
}

impl SignGridReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

fn pow10(p: Precision, e: i32) -> HiReal {
    HiReal::parse(&format!("1e{e}"), p).expect("decimal literal")
}

struct PointCheck<'a> {
    x: f64,
    found: Vec<Violation>,
    evaluations: usize,
    agree: &'a HiReal,
    slack: &'a HiReal,
}

impl PointCheck<'_> {
    fn fail(&mut self, check: &str, n: Option<usize>, t: Option<usize>, value: &HiReal) {
        self.found.push(Violation {
            check: check.to_string(),
            n,
            t,
            x: self.x,
            value: value.to_f64(),
        });
    }

    fn negative(&mut self, check: &str, n: Option<usize>, t: Option<usize>, v: &HiReal) {
        self.evaluations += 1;
        if !v.is_negative() {
            self.fail(check, n, t, v);
        }
    }

    fn agree(&mut self, check: &str, n: Option<usize>, t: Option<usize>, a: &HiReal, b: &HiReal) {
        let rel = a.rel_diff(b);
        if rel > *self.agree {
            self.fail(check, n, t, &rel);
        }
    }

    /// `lo <= hi` up to the rounding slack; records `lo - hi` on failure.
    fn at_most(&mut self, check: &str, n: Option<usize>, t: Option<usize>, lo: &HiReal, hi: &HiReal) {
        self.evaluations += 1;
        let gap = lo - hi;
        let scale = if lo.abs() > hi.abs() { lo.abs() } else { hi.abs() };
        if gap > &scale * self.slack {
            self.fail(check, n, t, &gap);
        }
    }

    /// `lo < hi` strictly; records `lo - hi` on failure.
    fn below(&mut self, check: &str, n: Option<usize>, t: Option<usize>, lo: &HiReal, hi: &HiReal) {
        self.evaluations += 1;
        let gap = lo - hi;
        if !gap.is_negative() {
            self.fail(check, n, t, &gap);
        }
    }
}

/// Evaluate `quantity` on the sign grid (which excludes `x = 0`).
pub fn signgrid(quantity: SignQuantity, config: &SignGridConfig) -> Result<SignGridReport> {
    for &t in &config.t_list {
        check_k_domain(2 * t, t)?;
    }
    let grid = sign_grid(config.density);
    let p = config.precision;
    let agree_tol = pow10(p, -AGREEMENT_DIGITS);
    let slack = pow10(p, -CHAIN_SLACK_DIGITS);
    let per_point = grid
        .par_iter()
        .map(|&x| -> Result<(Vec<Violation>, usize)> {
            let ctx = ClosedFormContext::from_f64(x, None, p)?;
            let mut pc = PointCheck {
                x,
                found: Vec::new(),
                evaluations: 0,
                agree: &agree_tol,
                slack: &slack,
            };
            check_point(quantity, config, &ctx, &mut pc)?;
            Ok((pc.found, pc.evaluations))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut violations = Vec::new();
    let mut evaluations = 0;
    for (v, e) in per_point {
        violations.extend(v);
        evaluations += e;
    }
    // The grid is sorted and processed in order, so this is deterministic.
    Ok(SignGridReport {
        quantity,
        points: grid.len(),
        evaluations,
        violations,
    })
}

fn n_values(t: usize, n_max: usize) -> impl Iterator<Item = usize> {
    (2 * t..=n_max).step_by(4)
}

fn check_point(q: SignQuantity, config: &SignGridConfig, ctx: &ClosedFormContext, pc: &mut PointCheck) -> Result<()> {
    match q {
        SignQuantity::K => {
            for &t in &config.t_list {
                for n in n_values(t, config.n_max) {
                    let (k, k_prod) = k_both(n, t, ctx)?;
                    pc.negative("k-negative", Some(n), Some(t), &k);
                    pc.agree("k-forms-agree", Some(n), Some(t), &k, &k_prod);
                }
            }
        }
        SignQuantity::F => {
            let coeffs = f_coeffs(ctx);
            let side: i8 = if ctx.x().is_negative() { -1 } else { 1 };
            for (name, c, sign) in coeffs.signed() {
                pc.evaluations += 1;
                let ok = if sign * side > 0 { c.is_positive() } else { c.is_negative() };
                if !ok {
                    pc.fail(&format!("f-coefficient-{name}"), None, None, c);
                }
            }
            for &t in &config.t_list {
                let ft = coeffs.eval(t, ctx.z1());
                let next = f_value(t + 4, ctx)?;
                pc.negative("f-negative", None, Some(t), &ft);
                pc.below("f-decreasing", None, Some(t), &next, &ft);
            }
        }
        SignQuantity::F10 => {
            let f10 = f_value(10, ctx)?;
            let explicit = f10_explicit(ctx.x());
            pc.negative("f10-negative", None, Some(10), &f10);
            pc.negative("f10-explicit-negative", None, Some(10), &explicit);
            pc.agree("f10-explicit-agreement", None, Some(10), &f10, &explicit);
        }
        SignQuantity::Chain => {
            let f10 = f_value(10, ctx)?;
            pc.negative("f10-negative", None, Some(10), &f10);
            for &t in &config.t_list {
                let ft = f_value(t, ctx)?;
                pc.at_most("f-below-f10", None, Some(t), &ft, &f10);
                for n in n_values(t, config.n_max) {
                    let (k, _) = k_both(n, t, ctx)?;
                    pc.at_most("k-below-f", Some(n), Some(t), &k, &ft);
                }
            }
        }
    }
    Ok(())
}
