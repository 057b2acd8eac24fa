//! Closed forms of the family characteristic polynomials on the imaginary
//! axis, and the quantities `K(n,t,x)` and `f(t,x)` comparing `P66(n)` with
//! `R(n-t,t)`.
//!
//! With `Z1 = (x + sqrt(x^2+4))/2` and `Z2 = (x - sqrt(x^2+4))/2` (so
//! `Z1 Z2 = -1`, `Z1 + Z2 = x`), the rotated values `i^{-n} phi(G, ix)` are
//!
//! - path: `B1 Z1^n + B2 Z2^n` with `B_j = Z_j^2 / (Z_j^2 + 1)`;
//! - cycle: `Z1^n + Z2^n - 2 i^{-n}`;
//! - `P66(n)`: `A1 Z1^n + A2 Z2^n` with
//!   `A_j = (Z_j g13 + g12) / ((Z_j^2 + 1) Z_j^12)`;
//! - `R(n-t,t)`: `C1 Z1^n + C2 Z2^n - 2 i^{t-n} (Z1^t + Z2^t) + 4 i^{-n}`.
//!
//! Everything is evaluated in [`HiReal`] arithmetic at the precision of the
//! point `x`.

use serde::Serialize;

use crate::hireal::{HiReal, Precision};
use crate::poly::{charpoly_by_recursion, imag_axis_parts, IntPoly};
use crate::graph::FamilySpec;
use crate::{Error, Result};

/// Points per decade of the default sign grid.
pub const DEFAULT_GRID_DENSITY: usize = 60;

/// A complex number with [`HiReal`] parts.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexHi {
    pub re: HiReal,
    pub im: HiReal,
}

impl ComplexHi {
    pub fn real(re: HiReal) -> Self {
        let im = HiReal::zero(re.precision());
        ComplexHi { re, im }
    }

    pub fn add(&self, o: &ComplexHi) -> ComplexHi {
        ComplexHi {
            re: &self.re + &o.re,
            im: &self.im + &o.im,
        }
    }

    pub fn sub(&self, o: &ComplexHi) -> ComplexHi {
        ComplexHi {
            re: &self.re - &o.re,
            im: &self.im - &o.im,
        }
    }

    pub fn mul(&self, o: &ComplexHi) -> ComplexHi {
        ComplexHi {
            re: &(&self.re * &o.re) - &(&self.im * &o.im),
            im: &(&self.re * &o.im) + &(&self.im * &o.re),
        }
    }

    pub fn scale(&self, r: &HiReal) -> ComplexHi {
        ComplexHi {
            re: &self.re * r,
            im: &self.im * r,
        }
    }

    /// `self * i^k`.
    pub fn times_i_pow(&self, k: i64) -> ComplexHi {
        match k.rem_euclid(4) {
            0 => self.clone(),
            1 => ComplexHi {
                re: -&self.im,
                im: self.re.clone(),
            },
            2 => ComplexHi {
                re: -&self.re,
                im: -&self.im,
            },
            _ => ComplexHi {
                re: self.im.clone(),
                im: -&self.re,
            },
        }
    }

    pub fn modulus(&self) -> HiReal {
        (&self.re.square() + &self.im.square()).sqrt()
    }

    /// `|self - o| / max(|self|, |o|)`, zero when both vanish.
    pub fn rel_diff(&self, o: &ComplexHi) -> HiReal {
        let (a, b) = (self.modulus(), o.modulus());
        let scale = if a >= b { a } else { b };
        if scale.is_zero() {
            return scale;
        }
        &self.sub(o).modulus() / &scale
    }
}

/// `i^k` as a unit complex number at precision `p`.
fn i_pow(k: i64, p: Precision) -> ComplexHi {
    ComplexHi::real(HiReal::one(p)).times_i_pow(k)
}

/// `g12(x) = i^{-12} phi(P66(12), ix)` and `g13(x) = i^{-13} phi(P66(13), ix)`,
/// written with positive coefficients.
fn g12(x: &HiReal) -> HiReal {
    IntPoly::from_descending(&[1, 0, 13, 0, 62, 0, 138, 0, 153, 0, 81, 0, 16]).eval_hi(x)
}

fn g13(x: &HiReal) -> HiReal {
    IntPoly::from_descending(&[1, 0, 14, 0, 74, 0, 188, 0, 245, 0, 158, 0, 40, 0]).eval_hi(x)
}

/// Evaluation state at a real point `x`.
#[derive(Clone, Debug)]
pub struct ClosedFormContext {
    x: HiReal,
    z1: HiReal,
    z2: HiReal,
    a1: HiReal,
    a2: HiReal,
    b1: HiReal,
    b2: HiReal,
    g12: HiReal,
    g13: HiReal,
    t: Option<usize>,
    c: Option<(ComplexHi, ComplexHi)>,
}

impl ClosedFormContext {
    /// Populate every quantity at `x`. `t` (at least 3) fixes the cycle
    /// length used by `C1`, `C2`.
    pub fn new(x: HiReal, t: Option<usize>) -> Result<Self> {
        if let Some(t) = t {
            if t < 3 {
                return Err(Error::domain(format!("cycle parameter t must be >= 3 (got {t})")));
            }
        }
        let p = x.precision();
        let root = (&x.square() + &HiReal::from_i64(4, p)).sqrt();
        let two = HiReal::from_i64(2, p);
        let one = HiReal::one(p);
        let z1 = &(&x + &root) / &two;
        // Z2 = -1 / Z1 avoids cancellation in x - sqrt(x^2 + 4) for large x > 0;
        // for x < 0 the subtraction is benign and Z1 suffers instead.
        let (z1, z2) = if x.is_negative() {
            let z2 = &(&x - &root) / &two;
            (&(-&one) / &z2, z2)
        } else {
            let z2 = &(-&one) / &z1;
            (z1, z2)
        };
        let (g12v, g13v) = (g12(&x), g13(&x));
        let a = |z: &HiReal| {
            let num = &(z * &g13v) + &g12v;
            &num / &(&(&z.square() + &one) * &z.powi(12))
        };
        let b = |z: &HiReal| {
            let zz = z.square();
            &zz / &(&zz + &one)
        };
        let mut ctx = ClosedFormContext {
            a1: a(&z1),
            a2: a(&z2),
            b1: b(&z1),
            b2: b(&z2),
            x,
            z1,
            z2,
            g12: g12v,
            g13: g13v,
            t,
            c: None,
        };
        ctx.c = t.map(|t| ctx.c_general(t));
        Ok(ctx)
    }

    pub fn from_f64(x: f64, t: Option<usize>, p: Precision) -> Result<Self> {
        ClosedFormContext::new(HiReal::from_f64(x, p), t)
    }

    pub fn precision(&self) -> Precision {
        self.x.precision()
    }

    pub fn x(&self) -> &HiReal {
        &self.x
    }

    pub fn z1(&self) -> &HiReal {
        &self.z1
    }

    pub fn z2(&self) -> &HiReal {
        &self.z2
    }

    pub fn a1(&self) -> &HiReal {
        &self.a1
    }

    pub fn a2(&self) -> &HiReal {
        &self.a2
    }

    pub fn b1(&self) -> &HiReal {
        &self.b1
    }

    pub fn b2(&self) -> &HiReal {
        &self.b2
    }

    pub fn g12(&self) -> &HiReal {
        &self.g12
    }

    pub fn g13(&self) -> &HiReal {
        &self.g13
    }

    pub fn t(&self) -> Option<usize> {
        self.t
    }

    fn c_pair(&self) -> Result<&(ComplexHi, ComplexHi)> {
        self.c
            .as_ref()
            .ok_or_else(|| Error::Usage("C1/C2 need a context built with a cycle parameter t".into()))
    }

    pub fn c1(&self) -> Result<&ComplexHi> {
        Ok(&self.c_pair()?.0)
    }

    pub fn c2(&self) -> Result<&ComplexHi> {
        Ok(&self.c_pair()?.1)
    }

    /// `C1`, `C2` at the point `ix` for any `t`, from the `B`-function
    /// expressions with `Y_j(ix) = i Z_j`:
    ///
    /// `C1 = 1 + (i Z2)^{2t} - 2 (i Z2)^t - B1^2 (i Z2)^2 - B1 B2 (i Z2)^{2t}`
    /// and symmetrically for `C2`.
    pub fn c_general(&self, t: usize) -> (ComplexHi, ComplexHi) {
        let p = self.precision();
        let t = t as i64;
        let one = ComplexHi::real(HiReal::one(p));
        let two = HiReal::from_i64(2, p);
        let b1b2 = &self.b1 * &self.b2;
        let c = |z: &HiReal, b: &HiReal| {
            let zt = ComplexHi::real(z.powi(t)).times_i_pow(t);
            let z2t = ComplexHi::real(z.powi(2 * t)).times_i_pow(2 * t);
            let zsq = ComplexHi::real(z.square()).times_i_pow(2);
            one.add(&z2t)
                .sub(&zt.scale(&two))
                .sub(&zsq.scale(&b.square()))
                .sub(&z2t.scale(&b1b2))
        };
        (c(&self.z2, &self.b1), c(&self.z1, &self.b2))
    }

    /// The simplified real forms, valid for `t = 2 (mod 4)`:
    ///
    /// `C1 = 1 + (x^2+3)/(x^2+4) Z2^{2t} + 2 Z2^t + Z1^2/(Z1^2+1)^2`,
    /// `C2 = 1 + (x^2+3)/(x^2+4) Z1^{2t} + 2 Z1^t + Z2^2/(Z2^2+1)^2`.
    pub fn c_simplified(&self, t: usize) -> Result<(HiReal, HiReal)> {
        if t % 4 != 2 {
            return Err(Error::domain(format!("simplified C_j need t = 2 (mod 4) (got {t})")));
        }
        let p = self.precision();
        let one = HiReal::one(p);
        let two = HiReal::from_i64(2, p);
        let xx = self.x.square();
        let ratio = &(&xx + &HiReal::from_i64(3, p)) / &(&xx + &HiReal::from_i64(4, p));
        let t = t as i64;
        let c = |z: &HiReal, w: &HiReal| {
            let ww = w.square();
            let tail = &ww / &(&ww + &one).square();
            &(&(&one + &(&ratio * &z.powi(2 * t))) + &(&two * &z.powi(t))) + &tail
        };
        Ok((c(&self.z2, &self.z1), c(&self.z1, &self.z2)))
    }

    /// `(x^6 + 8x^4 + 19x^2 + 16)^2 (x^2 + 1)^4 / (x^2 + 4)`, the value `A1 A2`
    /// must take.
    pub fn a_product_identity(&self) -> HiReal {
        let p = self.precision();
        let xx = self.x.square();
        let sextic = IntPoly::from_descending(&[1, 0, 8, 0, 19, 0, 16]).eval_hi(&self.x);
        let xx1 = &xx + &HiReal::one(p);
        &(&sextic.square() * &xx1.powi(4)) / &(&xx + &HiReal::from_i64(4, p))
    }
}

fn check_order(n: usize, min: usize, what: &str) -> Result<()> {
    if n < min {
        return Err(Error::domain(format!("{what} closed form needs n >= {min} (got {n})")));
    }
    Ok(())
}

/// `i^{-n} phi(P_n, ix)`.
pub fn phi_path_closed(n: usize, ctx: &ClosedFormContext) -> Result<ComplexHi> {
    check_order(n, 4, "path")?;
    let n = n as i64;
    Ok(ComplexHi::real(
        &(&ctx.b1 * &ctx.z1.powi(n)) + &(&ctx.b2 * &ctx.z2.powi(n)),
    ))
}

/// `i^{-n} phi(C_n, ix)`.
pub fn phi_cycle_closed(n: usize, ctx: &ClosedFormContext) -> Result<ComplexHi> {
    check_order(n, 4, "cycle")?;
    let p = ctx.precision();
    let n = n as i64;
    let powers = ComplexHi::real(&ctx.z1.powi(n) + &ctx.z2.powi(n));
    Ok(powers.sub(&i_pow(-n, p).scale(&HiReal::from_i64(2, p))))
}

/// `i^{-n} phi(P66(n), ix)`.
pub fn phi_p66_closed(n: usize, ctx: &ClosedFormContext) -> Result<ComplexHi> {
    check_order(n, 12, "P66")?;
    let n = n as i64;
    Ok(ComplexHi::real(
        &(&ctx.a1 * &ctx.z1.powi(n)) + &(&ctx.a2 * &ctx.z2.powi(n)),
    ))
}

/// `i^{-n} phi(R(n-t, t), ix)`, using the general `C_j` for this `t`.
pub fn phi_r_closed(n: usize, t: usize, ctx: &ClosedFormContext) -> Result<ComplexHi> {
    check_order(n, 6, "R")?;
    if t < 3 || n < t + 3 {
        return Err(Error::domain(format!(
            "R(n-t,t) closed form needs t >= 3 and n - t >= 3 (got n = {n}, t = {t})"
        )));
    }
    let p = ctx.precision();
    let (c1, c2) = match (&ctx.c, ctx.t) {
        (Some(c), Some(ct)) if ct == t => c.clone(),
        _ => ctx.c_general(t),
    };
    let (ni, ti) = (n as i64, t as i64);
    let main = c1
        .scale(&ctx.z1.powi(ni))
        .add(&c2.scale(&ctx.z2.powi(ni)));
    let cyc = i_pow(ti - ni, p).scale(&(&HiReal::from_i64(2, p) * &(&ctx.z1.powi(ti) + &ctx.z2.powi(ti))));
    let constant = i_pow(-ni, p).scale(&HiReal::from_i64(4, p));
    Ok(main.sub(&cyc).add(&constant))
}

/// Parameter domain of `K(n,t,x)`: `t = 2 (mod 4)`, `t >= 10`,
/// `n = 0 (mod 4)`, `n >= 2t`.
pub fn check_k_domain(n: usize, t: usize) -> Result<()> {
    if t < 10 || t % 4 != 2 {
        return Err(Error::domain(format!("K needs t >= 10 with t = 2 (mod 4) (got t = {t})")));
    }
    if n % 4 != 0 || n < 2 * t {
        return Err(Error::domain(format!(
            "K needs n >= 2t with n = 0 (mod 4) (got n = {n}, t = {t})"
        )));
    }
    Ok(())
}

/// `K(n,t,x)` in the expanded form
/// `(Z1^4 - Z2^4)(A2 C1 - A1 C2) + (2 Z1^t + 2 Z2^t + 4)(A1 Z1^n (1 - Z1^4) + A2 Z2^n (1 - Z2^4))`.
pub fn k_value(n: usize, t: usize, ctx: &ClosedFormContext) -> Result<HiReal> {
    check_k_domain(n, t)?;
    let p = ctx.precision();
    let (c1, c2) = ctx.c_simplified(t)?;
    let one = HiReal::one(p);
    let (z1_4, z2_4) = (ctx.z1.powi(4), ctx.z2.powi(4));
    let (ni, ti) = (n as i64, t as i64);
    let first = &(&z1_4 - &z2_4) * &(&(&ctx.a2 * &c1) - &(&ctx.a1 * &c2));
    let cyc = &(&HiReal::from_i64(2, p) * &(&ctx.z1.powi(ti) + &ctx.z2.powi(ti))) + &HiReal::from_i64(4, p);
    let tail = &(&(&ctx.a1 * &ctx.z1.powi(ni)) * &(&one - &z1_4))
        + &(&(&ctx.a2 * &ctx.z2.powi(ni)) * &(&one - &z2_4));
    Ok(&first + &(&cyc * &tail))
}

/// `K(n,t,x)` from its definition
/// `phi(R(n+4-t,t); ix) phi(P66(n); ix) - phi(P66(n+4); ix) phi(R(n-t,t); ix)`,
/// evaluated through the closed forms. The two products nearly cancel, so
/// the work runs at a precision raised by the bits they can lose.
pub fn k_product_form(n: usize, t: usize, ctx: &ClosedFormContext) -> Result<HiReal> {
    check_k_domain(n, t)?;
    let lg = ctx.z1.to_f64().abs().log2().abs();
    let extra = ((2 * n + 8) as f64 * lg).ceil() as usize + 64;
    let p = ctx.precision();
    let hi = ClosedFormContext::new(ctx.x.with_precision(p.with_extra_bits(extra)), None)?;
    let lhs = phi_r_closed(n + 4, t, &hi)?.mul(&phi_p66_closed(n, &hi)?);
    let rhs = phi_p66_closed(n + 4, &hi)?.mul(&phi_r_closed(n, t, &hi)?);
    // The i-powers of the two products agree (i^{2n+4} = 1 for n = 0 mod 4),
    // so the rotated values give K directly.
    Ok(lhs.sub(&rhs).re.with_precision(p))
}

/// Both forms of `K`; the first is the expanded form.
pub fn k_both(n: usize, t: usize, ctx: &ClosedFormContext) -> Result<(HiReal, HiReal)> {
    Ok((k_value(n, t, ctx)?, k_product_form(n, t, ctx)?))
}

/// Exact `K(n,t,x)` as an integer polynomial in `x`, from the exact
/// characteristic polynomials.
pub fn k_exact_poly(n: usize, t: usize) -> Result<IntPoly> {
    check_k_domain(n, t)?;
    let rotated = |spec: FamilySpec| -> Result<IntPoly> {
        let (re, im) = imag_axis_parts(&charpoly_by_recursion(&spec)?);
        debug_assert!(im.is_zero(), "bipartite graphs have real rotated values");
        Ok(re)
    };
    let r_big = rotated(FamilySpec::R { a: n + 4 - t, b: t })?;
    let r_small = rotated(FamilySpec::R { a: n - t, b: t })?;
    let p_small = rotated(FamilySpec::P66(n))?;
    let p_big = rotated(FamilySpec::P66(n + 4))?;
    Ok(&(&r_big * &p_small) - &(&p_big * &r_small))
}

/// The coefficients of `f(t,x) = alpha0 Z1^{3t} + alpha1 Z1^{-3t} +
/// beta0 Z1^{2t} + beta1 Z1^{-2t} + gamma0 Z1^t + gamma1 Z1^{-t} + a0`.
#[derive(Clone, Debug, Serialize)]
pub struct FCoefficients {
    #[serde(serialize_with = "ser_hi")]
    pub alpha0: HiReal,
    #[serde(serialize_with = "ser_hi")]
    pub alpha1: HiReal,
    #[serde(serialize_with = "ser_hi")]
    pub beta0: HiReal,
    #[serde(serialize_with = "ser_hi")]
    pub beta1: HiReal,
    #[serde(serialize_with = "ser_hi")]
    pub gamma0: HiReal,
    #[serde(serialize_with = "ser_hi")]
    pub gamma1: HiReal,
    #[serde(serialize_with = "ser_hi")]
    pub a0: HiReal,
}

fn ser_hi<S: serde::Serializer>(v: &HiReal, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_f64(v.to_f64())
}

impl FCoefficients {
    /// `f(t,x)` for an even `t` at the point the coefficients were built for.
    pub fn eval(&self, t: usize, z1: &HiReal) -> HiReal {
        let t = t as i64;
        let terms = [
            (&self.alpha0, 3 * t),
            (&self.alpha1, -3 * t),
            (&self.beta0, 2 * t),
            (&self.beta1, -2 * t),
            (&self.gamma0, t),
            (&self.gamma1, -t),
        ];
        terms
            .iter()
            .fold(self.a0.clone(), |acc, (c, k)| &acc + &(*c * &z1.powi(*k)))
    }

    /// The six non-constant coefficients, each with its expected sign for
    /// `x > 0` (`-1` or `+1`); all signs flip for `x < 0`.
    pub fn signed(&self) -> [(&'static str, &HiReal, i8); 6] {
        [
            ("alpha0", &self.alpha0, -1),
            ("alpha1", &self.alpha1, 1),
            ("beta0", &self.beta0, -1),
            ("beta1", &self.beta1, 1),
            ("gamma0", &self.gamma0, -1),
            ("gamma1", &self.gamma1, 1),
        ]
    }
}

pub fn f_coeffs(ctx: &ClosedFormContext) -> FCoefficients {
    let p = ctx.precision();
    let one = HiReal::one(p);
    let two = HiReal::from_i64(2, p);
    let four = HiReal::from_i64(4, p);
    let (z1_4, z2_4) = (ctx.z1.powi(4), ctx.z2.powi(4));
    let d1 = &one - &z1_4;
    let d2 = &one - &z2_4;
    let spread = &z1_4 - &z2_4;
    let xx = ctx.x.square();
    let ratio = &(&xx + &HiReal::from_i64(3, p)) / &(&xx + &four);
    let tail = |w: &HiReal| {
        let ww = w.square();
        &one + &(&ww / &(&ww + &one).square())
    };
    FCoefficients {
        alpha0: &(&two * &ctx.a1) * &d1,
        alpha1: &(&two * &ctx.a2) * &d2,
        beta0: &ctx.a1 * &(&(&four * &d1) - &(&spread * &ratio)),
        beta1: &ctx.a2 * &(&(&four * &d2) + &(&spread * &ratio)),
        gamma0: &(&two * &ctx.a1) * &(&d1 - &spread),
        gamma1: &(&two * &ctx.a2) * &(&d2 + &spread),
        a0: &spread * &(&(&ctx.a2 * &tail(&ctx.z1)) - &(&ctx.a1 * &tail(&ctx.z2))),
    }
}

/// `f(t,x) = K(2t, t, x)` from its coefficient expansion.
pub fn f_value(t: usize, ctx: &ClosedFormContext) -> Result<HiReal> {
    check_k_domain(2 * t, t)?;
    Ok(f_coeffs(ctx).eval(t, &ctx.z1))
}

/// The explicit polynomial displayed as the value of `f(10, x)`:
///
/// `-4x^2 (x^2+1)^2 (x^18 + 23x^16 + 224x^14 + 1203x^12 + 3887x^10 + 7731x^8
/// + 9285x^6 + 6301x^4 + 2077x^2 + 224) - (x^10 + 13x^8 + 62x^6 + 131x^4
/// + 109x^2 + 16) x^2 (x^4 + 5x^2 + 6)(x^4 + 3x^2 + 1)(x^2 + 1)^2`.
pub fn f10_explicit(x: &HiReal) -> HiReal {
    f10_explicit_poly().eval_hi(x)
}

/// [`f10_explicit`] expanded into an integer polynomial.
pub fn f10_explicit_poly() -> IntPoly {
    let d = IntPoly::from_descending;
    let xx1 = d(&[1, 0, 1]);
    let x2 = d(&[1, 0, 0]);
    let first = &(&(&d(&[-4]) * &x2) * &xx1.pow(2))
        * &d(&[1, 0, 23, 0, 224, 0, 1203, 0, 3887, 0, 7731, 0, 9285, 0, 6301, 0, 2077, 0, 224]);
    let second = &(&(&(&d(&[1, 0, 13, 0, 62, 0, 131, 0, 109, 0, 16]) * &x2)
        * &d(&[1, 0, 5, 0, 6]))
        * &d(&[1, 0, 3, 0, 1]))
        * &xx1.pow(2);
    &first - &second
}

/// Log-spaced sign grid: `density` points per decade on `|x|` in
/// `[1e-3, 1e3]`, both signs, plus `+-0.5, +-1, +-2, +-3`. Sorted, no zero,
/// no duplicates.
pub fn sign_grid(density: usize) -> Vec<f64> {
    let density = density.max(1);
    let mut pos: Vec<f64> = (0..=6 * density)
        .map(|k| 10f64.powf(-3.0 + k as f64 / density as f64))
        .collect();
    pos.extend([0.5, 1.0, 2.0, 3.0]);
    pos.sort_by(f64::total_cmp);
    pos.dedup_by(|a, b| (*a - *b).abs() <= 1e-12 * b.abs());
    let mut grid: Vec<f64> = pos.iter().rev().map(|v| -v).collect();
    grid.extend(pos);
    grid
}
