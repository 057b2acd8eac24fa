//! Dense univariate polynomials with arbitrary-precision integer
//! coefficients, and the characteristic polynomials built on them.

mod charpoly;
mod imag;
mod matching;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

pub use charpoly::{
    bareiss_determinant, charpoly_by_recursion, charpoly_direct, component_product,
    cycles_through_edge, edge_deletion_recursion, has_bipartite_signs,
};
pub use imag::{
    coulson_split, evaluate_at_ix_squared_split, evaluate_on_imag_axis, imag_axis_parts,
};
pub use matching::{matching_count, matching_numbers};

/// Polynomial `sum c_i x^i` stored low degree first. The highest stored
/// coefficient is non-zero; the zero polynomial has no coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    /// From small coefficients, lowest degree first.
    pub fn from_i64s(coeffs: &[i64]) -> Self {
        IntPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// From coefficients listed highest degree first.
    pub fn from_descending(coeffs: &[i64]) -> Self {
        let mut c: Vec<i64> = coeffs.to_vec();
        c.reverse();
        IntPoly::from_i64s(&c)
    }

    pub fn zero() -> Self {
        IntPoly::default()
    }

    pub fn one() -> Self {
        IntPoly::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        IntPoly::new(vec![c])
    }

    /// `c x^k`.
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.push(c);
        IntPoly::new(coeffs)
    }

    pub fn x() -> Self {
        IntPoly::monomial(BigInt::one(), 1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `x^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    /// Coefficient `a_i` of `x^{n-i}` for a polynomial of degree `n`.
    pub fn a(&self, i: usize) -> BigInt {
        match self.degree() {
            Some(n) if i <= n => self.coeffs[n - i].clone(),
            _ => BigInt::zero(),
        }
    }

    /// Lowest index with a non-zero coefficient (multiplicity of the root 0).
    pub fn valuation(&self) -> usize {
        self.coeffs.iter().position(|c| !c.is_zero()).unwrap_or(0)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        IntPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Multiply by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        IntPoly { coeffs }
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(IntPoly::one(), |acc, _| &acc * self)
    }

    pub fn derivative(&self) -> Self {
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// `p(x) * 2^(deg * shift)` at `x = m / 2^shift`; an integer with the sign
    /// of `p(m / 2^shift)`.
    pub fn eval_dyadic_scaled(&self, m: &BigInt, shift: u32) -> BigInt {
        let Some(d) = self.degree() else {
            return BigInt::zero();
        };
        let mut acc = self.coeffs[d].clone();
        for i in (0..d).rev() {
            acc = acc * m + (&self.coeffs[i] << ((d - i) as u64 * shift as u64));
        }
        acc
    }

    /// Value at `x` in double precision (Horner).
    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + bigint_to_f64(c))
    }

    /// Gcd of the coefficients, non-negative.
    pub fn content(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divide out the content and make the leading coefficient positive.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut c = self.content();
        if self.leading().is_negative() {
            c = -c;
        }
        IntPoly::new(self.coeffs.iter().map(|a| a / &c).collect())
    }

    /// Pseudo-remainder: `lc(d)^(deg self - deg d + 1) * self mod d`.
    pub fn pseudo_rem(&self, d: &IntPoly) -> IntPoly {
        let dd = d.degree().expect("pseudo-division by zero");
        let lc = d.leading();
        let mut r = self.coeffs.clone();
        let Some(mut rd) = self.degree() else {
            return IntPoly::zero();
        };
        if rd < dd {
            return self.clone();
        }
        let mut steps = rd - dd + 1;
        loop {
            // r := lc * r - r_lead * x^(rd - dd) * d
            let lead = r[rd].clone();
            for c in r.iter_mut() {
                *c *= &lc;
            }
            for (i, dc) in d.coeffs.iter().enumerate() {
                r[rd - dd + i] -= &lead * dc;
            }
            steps -= 1;
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
            match r.len().checked_sub(1) {
                Some(nd) if nd >= dd => rd = nd,
                _ => break,
            }
        }
        // Apply the remaining powers of lc so the multiplier is exact.
        let rem = IntPoly::new(r);
        if steps > 0 {
            rem.scale(&num_traits::pow(lc, steps))
        } else {
            rem
        }
    }

    /// Exact quotient `self / d`, assuming `d` divides `self` over the
    /// rationals and the quotient has integer coefficients.
    pub fn div_exact(&self, d: &IntPoly) -> Result<IntPoly> {
        let dd = d.degree().ok_or_else(|| Error::domain("division by the zero polynomial"))?;
        let Some(nd) = self.degree() else {
            return Ok(IntPoly::zero());
        };
        if nd < dd {
            return Err(Error::domain("divisor has larger degree than dividend"));
        }
        let lc = d.leading();
        let mut r = self.coeffs.clone();
        let mut q = vec![BigInt::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let (quot, rem) = r[k + dd].div_rem(&lc);
            if !rem.is_zero() {
                return Err(Error::domain("polynomial division is not exact"));
            }
            for (i, dc) in d.coeffs.iter().enumerate() {
                r[k + i] -= &quot * dc;
            }
            q[k] = quot;
        }
        if r.iter().any(|c| !c.is_zero()) {
            return Err(Error::domain("polynomial division leaves a remainder"));
        }
        Ok(IntPoly::new(q))
    }

    /// Primitive gcd with positive leading coefficient (primitive PRS).
    pub fn gcd(&self, other: &IntPoly) -> IntPoly {
        let (mut a, mut b) = (self.primitive_part(), other.primitive_part());
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).primitive_part();
            a = b;
            b = r;
        }
        a
    }

    /// Square-free decomposition `self = c * prod f_i^i`. Returns the
    /// non-constant primitive factors with their multiplicities.
    pub fn square_free_decomposition(&self) -> Vec<(IntPoly, usize)> {
        if self.degree().unwrap_or(0) == 0 {
            return Vec::new();
        }
        let p = self.primitive_part();
        let mut c = p.gcd(&p.derivative());
        let mut w = p.div_exact(&c).expect("gcd divides").primitive_part();
        let mut out = Vec::new();
        let mut i = 1;
        while w.degree().unwrap_or(0) > 0 {
            let y = w.gcd(&c);
            let z = w.div_exact(&y).expect("gcd divides").primitive_part();
            if z.degree().unwrap_or(0) > 0 {
                out.push((z, i));
            }
            c = c.div_exact(&y).expect("gcd divides").primitive_part();
            w = y;
            i += 1;
        }
        out
    }

    /// Even-index part `sum c_{2k} y^k` and odd part `sum c_{2k+1} y^k`.
    pub fn split_parity(&self) -> (IntPoly, IntPoly) {
        let even = self.coeffs.iter().step_by(2).cloned().collect();
        let odd = self.coeffs.iter().skip(1).step_by(2).cloned().collect();
        (IntPoly::new(even), IntPoly::new(odd))
    }

    /// `q(y)` with `self(x) = q(x^2)`; `None` when an odd coefficient is non-zero.
    pub fn as_poly_in_square(&self) -> Option<IntPoly> {
        let (even, odd) = self.split_parity();
        odd.is_zero().then_some(even)
    }
}

pub(crate) fn bigint_to_f64(c: &BigInt) -> f64 {
    num_traits::ToPrimitive::to_f64(c).unwrap_or(f64::NAN)
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($trait:ident, $method:ident) => {
        impl $trait for IntPoly {
            type Output = IntPoly;
            fn $method(self, rhs: IntPoly) -> IntPoly {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&IntPoly> for IntPoly {
            type Output = IntPoly;
            fn $method(self, rhs: &IntPoly) -> IntPoly {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        -&self
    }
}

/// Text form `deg c_deg c_{deg-1} ... c_0`. The zero polynomial prints as `0 0`.
impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let Some(d) = self.degree() else {
            return f.write_str("0 0");
        };
        write!(f, "{d}")?;
        for c in self.coeffs.iter().rev() {
            write!(f, " {c}")?;
        }
        Ok(())
    }
}

impl FromStr for IntPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parse_err = |message: String| Error::Parse { line: 1, message };
        let mut fields = s.split_whitespace();
        let deg: usize = fields
            .next()
            .ok_or_else(|| parse_err("empty polynomial".into()))?
            .parse()
            .map_err(|_| parse_err("degree is not a non-negative integer".into()))?;
        let mut coeffs = fields
            .map(|t| {
                t.parse::<BigInt>()
                    .map_err(|_| parse_err(format!("coefficient `{t}` is not an integer")))
            })
            .collect::<Result<Vec<_>>>()?;
        if coeffs.len() != deg + 1 {
            return Err(parse_err(format!(
                "degree {deg} needs {} coefficients, found {}",
                deg + 1,
                coeffs.len()
            )));
        }
        coeffs.reverse();
        let p = IntPoly::new(coeffs);
        if p.degree().unwrap_or(0) != deg {
            return Err(parse_err("leading coefficient is zero".into()));
        }
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn text_format() {
        assert_eq!(p(&[-1, 0, 1]).to_string(), "2 1 0 -1");
        assert_eq!(p(&[0, 0, -4, 0, 1]).to_string(), "4 1 0 -4 0 0");
        assert_eq!("2 1 0 -1".parse::<IntPoly>().unwrap(), p(&[-1, 0, 1]));
        assert!("2 1 0".parse::<IntPoly>().is_err());
        assert!("2 0 1 1".parse::<IntPoly>().is_err());
        assert_eq!(IntPoly::zero().to_string(), "0 0");
    }

    #[test]
    fn arithmetic() {
        let a = p(&[1, 1]);
        let b = p(&[-1, 1]);
        assert_eq!(&a * &b, p(&[-1, 0, 1]));
        assert_eq!(&a + &b, p(&[0, 2]));
        assert_eq!(&a - &a, IntPoly::zero());
        assert_eq!(a.pow(3), p(&[1, 3, 3, 1]));
        assert_eq!(p(&[5, 3, 0, 2]).derivative(), p(&[3, 0, 6]));
        assert_eq!(p(&[0, 0, 3]).valuation(), 2);
    }

    #[test]
    fn gcd_and_exact_division() {
        let f = &p(&[-1, 1]).pow(2) * &p(&[2, 0, 1]);
        let g = &p(&[-1, 1]) * &p(&[3, 1]);
        assert_eq!(f.gcd(&g), p(&[-1, 1]));
        assert_eq!(f.div_exact(&p(&[-1, 1])).unwrap(), &p(&[-1, 1]) * &p(&[2, 0, 1]));
        assert!(f.div_exact(&p(&[3, 1])).is_err());
    }

    #[test]
    fn square_free_of_c6_charpoly() {
        // (x-2)(x+2)(x-1)^2(x+1)^2
        let c6 = &(&p(&[-4, 0, 1]) * &p(&[-1, 0, 1])) * &p(&[-1, 0, 1]);
        let sf = c6.square_free_decomposition();
        assert_eq!(sf, vec![(p(&[-4, 0, 1]), 1), (p(&[-1, 0, 1]), 2)]);
    }

    #[test]
    fn dyadic_evaluation_sign() {
        let f = p(&[-2, 0, 1]); // x^2 - 2
        assert!(f.eval_dyadic_scaled(&BigInt::from(3), 1).is_positive()); // 1.5
        assert!(f.eval_dyadic_scaled(&BigInt::from(5), 2).is_negative()); // 1.25
        assert_eq!(f.eval_dyadic_scaled(&BigInt::from(2), 0), BigInt::from(2));
    }

    #[test]
    fn a_indexing_follows_descending_convention() {
        let f = p(&[16, 0, -81, 0, 1]);
        assert_eq!(f.a(0), BigInt::from(1));
        assert_eq!(f.a(2), BigInt::from(-81));
        assert_eq!(f.a(4), BigInt::from(16));
        assert_eq!(f.a(5), BigInt::from(0));
    }

    fn small_poly() -> impl Strategy<Value = IntPoly> {
        proptest::collection::vec(-20i64..20, 0..7).prop_map(|c| IntPoly::from_i64s(&c))
    }

    proptest! {
        #[test]
        fn text_round_trip(f in small_poly()) {
            prop_assume!(!f.is_zero());
            prop_assert_eq!(f.to_string().parse::<IntPoly>().unwrap(), f);
        }

        #[test]
        fn pseudo_remainder_identity(a in small_poly(), b in small_poly()) {
            prop_assume!(!b.is_zero());
            let (da, db) = (a.degree().unwrap_or(0), b.degree().unwrap());
            let r = a.pseudo_rem(&b);
            prop_assert!(r.is_zero() || r.degree().unwrap() < db);
            // lc(b)^k a - r is an integer multiple of b.
            let k = (da + 1).saturating_sub(db);
            let lhs = &a.scale(&num_traits::pow(b.leading(), k)) - &r;
            prop_assert!(lhs.is_zero() || lhs.div_exact(&b).is_ok());
        }

        #[test]
        fn square_free_factors_multiply_back(a in small_poly(), b in small_poly()) {
            let f = &(&a * &a) * &b;
            prop_assume!(f.degree().unwrap_or(0) > 0);
            let mut prod = IntPoly::one();
            for (g, m) in f.square_free_decomposition() {
                prop_assert_eq!(g.gcd(&g.derivative()).degree(), Some(0));
                prod = &prod * &g.pow(m as u32);
            }
            prop_assert_eq!(prod, f.primitive_part());
        }
    }
}
