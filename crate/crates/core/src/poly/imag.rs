//! Evaluation of characteristic polynomials on the imaginary axis.

use num_bigint::BigInt;
use num_traits::Zero;

use super::IntPoly;
use crate::hireal::HiReal;

impl IntPoly {
    /// Horner evaluation at a high-precision point.
    pub fn eval_hi(&self, x: &HiReal) -> HiReal {
        let p = x.precision();
        self.coeffs
            .iter()
            .rev()
            .fold(HiReal::zero(p), |acc, c| &(&acc * x) + &HiReal::from_bigint(c, p))
    }
}

fn alternate(c: &BigInt, j: usize) -> BigInt {
    if j % 2 == 0 {
        c.clone()
    } else {
        -c
    }
}

/// Real and imaginary parts of `i^{-n} p(ix)` as polynomials in `x`, where
/// `n = deg p`:
///
/// `i^{-n} p(ix) = sum (-1)^j a_{2j} x^{n-2j} - i sum (-1)^j a_{2j+1} x^{n-2j-1}`.
///
/// For a bipartite graph the imaginary part vanishes.
pub fn imag_axis_parts(p: &IntPoly) -> (IntPoly, IntPoly) {
    let Some(n) = p.degree() else {
        return (IntPoly::zero(), IntPoly::zero());
    };
    let mut re = vec![BigInt::zero(); n + 1];
    let mut im = vec![BigInt::zero(); n + 1];
    for k in 0..=n {
        let a = p.a(k);
        if k % 2 == 0 {
            re[n - k] = alternate(&a, k / 2);
        } else {
            im[n - k] = -alternate(&a, k / 2);
        }
    }
    (IntPoly::new(re), IntPoly::new(im))
}

/// `(Re, Im)` of `i^{-n} p(ix)`.
pub fn evaluate_on_imag_axis(p: &IntPoly, x: &HiReal) -> (HiReal, HiReal) {
    let (re, im) = imag_axis_parts(p);
    (re.eval_hi(x), im.eval_hi(x))
}

/// The two sums `sum (-1)^i a_{2i} x^{2i}` and `sum (-1)^i a_{2i+1} x^{2i+1}`
/// whose squares sum to the argument of the logarithm in the explicit
/// Coulson formula. They are the rotated imaginary-axis values read with
/// reversed coefficients: `even(x) + i odd(x)` has modulus `|x^n p(i/x)|`.
pub fn evaluate_at_ix_squared_split(p: &IntPoly, x: &HiReal) -> (HiReal, HiReal) {
    let (even, odd) = coulson_split(p);
    (even.eval_hi(x), odd.eval_hi(x))
}

/// The polynomials behind [`evaluate_at_ix_squared_split`].
pub fn coulson_split(p: &IntPoly) -> (IntPoly, IntPoly) {
    let Some(n) = p.degree() else {
        return (IntPoly::zero(), IntPoly::zero());
    };
    let mut even = vec![BigInt::zero(); n + 1];
    let mut odd = vec![BigInt::zero(); n + 1];
    for k in 0..=n {
        let c = alternate(&p.a(k), k / 2);
        if k % 2 == 0 {
            even[k] = c;
        } else {
            odd[k] = c;
        }
    }
    (IntPoly::new(even), IntPoly::new(odd))
}
