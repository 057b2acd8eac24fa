//! Arbitrary-precision reals used by the closed-form evaluations.
//!
//! [`HiReal`] wraps an `astro_float::BigFloat` together with its working
//! precision. Binary operations round to the larger precision of the two
//! operands, so a computation seeded from a single [`Precision`] stays at that
//! precision throughout.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use astro_float::{BigFloat, Consts, Radix, RoundingMode, Sign};
use num_bigint::BigInt;

const RM: RoundingMode = RoundingMode::ToEven;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("constant cache"));
}

/// Working precision in bits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Precision(usize);

impl Precision {
    pub const DEFAULT_DIGITS: usize = 150;

    /// Enough bits for `digits` significant decimal digits, rounded up to a
    /// whole number of 64-bit words.
    pub fn from_digits(digits: usize) -> Self {
        let bits = (digits as f64 * std::f64::consts::LOG2_10).ceil() as usize;
        Precision::from_bits(bits)
    }

    pub fn from_bits(bits: usize) -> Self {
        Precision(bits.max(64).div_ceil(64) * 64)
    }

    pub fn bits(self) -> usize {
        self.0
    }

    /// Approximate number of significant decimal digits.
    pub fn digits(self) -> usize {
        (self.0 as f64 / std::f64::consts::LOG2_10).floor() as usize
    }

    pub fn with_extra_bits(self, extra: usize) -> Self {
        Precision::from_bits(self.0 + extra)
    }
}

impl Default for Precision {
    fn default() -> Self {
        Precision::from_digits(Self::DEFAULT_DIGITS)
    }
}

#[derive(Clone)]
pub struct HiReal {
    v: BigFloat,
    p: usize,
}

impl HiReal {
    pub fn zero(p: Precision) -> Self {
        HiReal::from_i64(0, p)
    }

    pub fn one(p: Precision) -> Self {
        HiReal::from_i64(1, p)
    }

    pub fn from_i64(i: i64, p: Precision) -> Self {
        HiReal {
            v: BigFloat::from_i64(i, p.bits()),
            p: p.bits(),
        }
    }

    /// Exact conversion of a double (every finite double is representable).
    pub fn from_f64(f: f64, p: Precision) -> Self {
        HiReal {
            v: BigFloat::from_f64(f, p.bits().max(64)),
            p: p.bits(),
        }
    }

    /// `num / den` rounded to precision `p`.
    pub fn from_ratio(num: i64, den: i64, p: Precision) -> Self {
        &HiReal::from_i64(num, p) / &HiReal::from_i64(den, p)
    }

    /// Integer conversion, exact when `p` covers the bit length of `i`.
    pub fn from_bigint(i: &BigInt, p: Precision) -> Self {
        let (sign, digits) = i.to_u64_digits();
        if digits.is_empty() {
            return HiReal::zero(p);
        }
        let words: Vec<u64> = digits;
        let e = (words.len() * 64) as i32;
        let s = if sign == num_bigint::Sign::Minus {
            Sign::Neg
        } else {
            Sign::Pos
        };
        let mut v = BigFloat::from_words(&words, s, e);
        // from_words keeps the full mantissa; round to the working precision.
        if v.mantissa_max_bit_len().unwrap_or(0) > p.bits() {
            v.set_precision(p.bits(), RM).expect("valid precision");
        }
        HiReal { v, p: p.bits() }
    }

    /// Parse a decimal literal such as `"1.5"` or `"-2e-3"`.
    pub fn parse(s: &str, p: Precision) -> Option<Self> {
        let v = CONSTS.with(|cc| BigFloat::parse(s, Radix::Dec, p.bits(), RM, &mut cc.borrow_mut()));
        (!v.is_nan()).then_some(HiReal { v, p: p.bits() })
    }

    pub fn precision(&self) -> Precision {
        Precision(self.p)
    }

    /// The same value carried at precision `p` (rounded if `p` is smaller).
    pub fn with_precision(&self, p: Precision) -> Self {
        let mut v = self.v.clone();
        v.set_precision(p.bits(), RM).expect("valid precision");
        HiReal { v, p: p.bits() }
    }

    fn wrap(&self, v: BigFloat, p: usize) -> Self {
        debug_assert!(!v.is_nan(), "NaN in high-precision arithmetic");
        HiReal { v, p }
    }

    pub fn sqrt(&self) -> Self {
        self.wrap(self.v.sqrt(self.p, RM), self.p)
    }

    pub fn ln(&self) -> Self {
        let v = CONSTS.with(|cc| self.v.ln(self.p, RM, &mut cc.borrow_mut()));
        self.wrap(v, self.p)
    }

    /// Integer power; negative exponents go through the reciprocal.
    pub fn powi(&self, n: i64) -> Self {
        let v = self.v.powi(n.unsigned_abs() as usize, self.p, RM);
        if n < 0 {
            self.wrap(v.reciprocal(self.p, RM), self.p)
        } else {
            self.wrap(v, self.p)
        }
    }

    pub fn abs(&self) -> Self {
        self.wrap(self.v.abs(), self.p)
    }

    pub fn square(&self) -> Self {
        self * self
    }

    pub fn is_zero(&self) -> bool {
        self.v.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        !self.v.is_zero() && self.v.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        !self.v.is_zero() && self.v.is_negative()
    }

    /// `|self - other| / max(|self|, |other|)`, zero when both vanish.
    pub fn rel_diff(&self, other: &HiReal) -> HiReal {
        let scale = if self.abs() >= other.abs() {
            self.abs()
        } else {
            other.abs()
        };
        if scale.is_zero() {
            return HiReal::zero(self.precision());
        }
        &(self - other).abs() / &scale
    }

    /// Nearest double, saturating to infinities outside the double range.
    pub fn to_f64(&self) -> f64 {
        if self.v.is_zero() {
            return 0.0;
        }
        let Some((words, _, sign, exp, _)) = self.v.as_raw_parts() else {
            return f64::NAN;
        };
        let top = *words.last().expect("non-zero mantissa");
        let next = if words.len() > 1 { words[words.len() - 2] } else { 0 };
        // The mantissa is 0.m with the top bit of the last word set.
        let mant = top as f64 + next as f64 / 18446744073709551616.0;
        let mag = mant * 2f64.powi(-64);
        let value = scale_by_pow2(mag, exp as i64);
        if sign == Sign::Neg {
            -value
        } else {
            value
        }
    }
}

fn scale_by_pow2(mut v: f64, mut e: i64) -> f64 {
    // powi overflows for large exponents; step in safe chunks.
    while e > 1000 {
        v *= 2f64.powi(1000);
        e -= 1000;
        if v.is_infinite() {
            return v;
        }
    }
    while e < -1000 {
        v *= 2f64.powi(-1000);
        e += 1000;
        if v == 0.0 {
            return v;
        }
    }
    v * 2f64.powi(e as i32)
}

macro_rules! binop {
    ($trait:ident, $method:ident, $op:ident) => {
        impl $trait<&HiReal> for &HiReal {
            type Output = HiReal;
            fn $method(self, rhs: &HiReal) -> HiReal {
                let p = self.p.max(rhs.p);
                self.wrap(self.v.$op(&rhs.v, p, RM), p)
            }
        }
        impl $trait<HiReal> for HiReal {
            type Output = HiReal;
            fn $method(self, rhs: HiReal) -> HiReal {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&HiReal> for HiReal {
            type Output = HiReal;
            fn $method(self, rhs: &HiReal) -> HiReal {
                (&self).$method(rhs)
            }
        }
        impl $trait<HiReal> for &HiReal {
            type Output = HiReal;
            fn $method(self, rhs: HiReal) -> HiReal {
                self.$method(&rhs)
            }
        }
    };
}

binop!(Add, add, add);
binop!(Sub, sub, sub);
binop!(Mul, mul, mul);
binop!(Div, div, div);

impl Neg for &HiReal {
    type Output = HiReal;
    fn neg(self) -> HiReal {
        self.wrap(-self.v.clone(), self.p)
    }
}

impl Neg for HiReal {
    type Output = HiReal;
    fn neg(self) -> HiReal {
        -&self
    }
}

impl PartialEq for HiReal {
    fn eq(&self, other: &Self) -> bool {
        self.v == other.v
    }
}

impl PartialOrd for HiReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.v.partial_cmp(&other.v)
    }
}

impl fmt::Debug for HiReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HiReal({})", self)
    }
}

impl fmt::Display for HiReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = CONSTS.with(|cc| self.v.format(Radix::Dec, RM, &mut cc.borrow_mut()));
        match s {
            Ok(s) => f.write_str(&s),
            Err(_) => write!(f, "{:e}", self.to_f64()),
        }
    }
}
