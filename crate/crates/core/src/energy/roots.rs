//! Certified real root isolation for integer polynomials by Sturm sequences,
//! with exact dyadic arithmetic throughout.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::poly::IntPoly;

/// The dyadic rational `m / 2^s`.
#[derive(Clone, Debug)]
pub(crate) struct Dyadic {
    pub m: BigInt,
    pub s: u32,
}

impl Dyadic {
    pub fn int(m: BigInt) -> Self {
        Dyadic { m, s: 0 }
    }

    pub fn zero() -> Self {
        Dyadic::int(BigInt::zero())
    }

    fn at_scale(&self, s: u32) -> BigInt {
        &self.m << (s - self.s)
    }

    fn align(a: &Dyadic, b: &Dyadic) -> (BigInt, BigInt, u32) {
        let s = a.s.max(b.s);
        (a.at_scale(s), b.at_scale(s), s)
    }

    pub fn add(&self, o: &Dyadic) -> Dyadic {
        let (a, b, s) = Dyadic::align(self, o);
        Dyadic { m: a + b, s }
    }

    pub fn sub(&self, o: &Dyadic) -> Dyadic {
        let (a, b, s) = Dyadic::align(self, o);
        Dyadic { m: a - b, s }
    }

    pub fn mul(&self, o: &Dyadic) -> Dyadic {
        Dyadic {
            m: &self.m * &o.m,
            s: self.s + o.s,
        }
    }

    pub fn scale_int(&self, k: usize) -> Dyadic {
        Dyadic {
            m: &self.m * BigInt::from(k),
            s: self.s,
        }
    }

    pub fn neg(&self) -> Dyadic {
        Dyadic {
            m: -&self.m,
            s: self.s,
        }
    }

    pub fn abs(&self) -> Dyadic {
        Dyadic {
            m: self.m.abs(),
            s: self.s,
        }
    }

    pub fn midpoint(a: &Dyadic, b: &Dyadic) -> Dyadic {
        let (x, y, s) = Dyadic::align(a, b);
        Dyadic { m: x + y, s: s + 1 }
    }

    pub fn half(&self) -> Dyadic {
        Dyadic {
            m: self.m.clone(),
            s: self.s + 1,
        }
    }

    /// `true` when `self <= 2^-bits`.
    pub fn at_most_pow2(&self, bits: u32) -> bool {
        let one = Dyadic {
            m: BigInt::one(),
            s: bits,
        };
        self.cmp_value(&one) != Ordering::Greater
    }

    pub fn cmp_value(&self, o: &Dyadic) -> Ordering {
        let (a, b, _) = Dyadic::align(self, o);
        a.cmp(&b)
    }

    /// Nearest double (the numerator conversion rounds to nearest).
    pub fn to_f64(&self) -> f64 {
        let m = crate::poly::bigint_to_f64(&self.m);
        let mut v = m;
        let mut s = self.s as i32;
        while s > 1000 {
            v *= 2f64.powi(-1000);
            s -= 1000;
        }
        v * 2f64.powi(-s)
    }

    /// `floor(sqrt(self) * 2^scale) / 2^scale`, for `self >= 0`.
    fn sqrt_floor(&self, scale: u32) -> Dyadic {
        let shift = 2 * scale - self.s;
        let n = &self.m << shift;
        Dyadic {
            m: n.sqrt(),
            s: scale,
        }
    }

    /// `ceil(sqrt(self) * 2^scale) / 2^scale`, for `self >= 0`.
    fn sqrt_ceil(&self, scale: u32) -> Dyadic {
        let shift = 2 * scale - self.s;
        let n = &self.m << shift;
        let r = n.sqrt();
        let m = if &r * &r < n { r + 1 } else { r };
        Dyadic { m, s: scale }
    }
}

/// Sign of `f` at a dyadic point: `-1`, `0` or `1`.
fn sign_at(f: &IntPoly, x: &Dyadic) -> i8 {
    let v = f.eval_dyadic_scaled(&x.m, x.s);
    if v.is_zero() {
        0
    } else if v.is_positive() {
        1
    } else {
        -1
    }
}

/// Sturm sequence `f, f', -rem(f, f'), ...` computed with pseudo-remainders.
/// Each term is rescaled by a positive factor only, so the sign pattern at
/// every point matches the classical sequence.
pub(crate) fn sturm_sequence(f: &IntPoly) -> Vec<IntPoly> {
    let mut seq = vec![f.clone(), f.derivative()];
    loop {
        let k = seq.len();
        let (a, b) = (&seq[k - 2], &seq[k - 1]);
        if b.degree().unwrap_or(0) == 0 {
            break;
        }
        let mut r = a.pseudo_rem(b);
        if r.is_zero() {
            break;
        }
        // prem multiplies by lc(b)^(da - db + 1); undo a negative factor.
        let exponent = a.degree().unwrap() - b.degree().unwrap() + 1;
        if b.leading().is_negative() && exponent % 2 == 1 {
            r = -r;
        }
        let c = r.content();
        let next = IntPoly::new(r.coeffs().iter().map(|v| -(v / &c)).collect());
        seq.push(next);
    }
    seq
}

fn variations(seq: &[IntPoly], x: &Dyadic) -> usize {
    let mut count = 0;
    let mut last = 0i8;
    for p in seq {
        let s = sign_at(p, x);
        if s != 0 {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
    }
    count
}

/// `2^k` with every root of `f` strictly inside `(-2^k, 2^k)` (Cauchy bound).
pub(crate) fn root_bound(f: &IntPoly) -> Dyadic {
    let lead = f.leading().abs();
    let max = f.coeffs().iter().map(|c| c.abs()).max().unwrap_or_default();
    let ratio = max / lead + 2u32;
    Dyadic::int(BigInt::one() << ratio.bits())
}

/// Disjoint half-open intervals `(a, b]`, each holding exactly one root of
/// the square-free polynomial `f` in `(lo, hi]`, in increasing order.
pub(crate) fn isolate(f: &IntPoly, lo: &Dyadic, hi: &Dyadic) -> Vec<(Dyadic, Dyadic)> {
    let seq = sturm_sequence(f);
    let mut out = Vec::new();
    let mut stack = vec![(lo.clone(), hi.clone(), variations(&seq, lo), variations(&seq, hi))];
    while let Some((a, b, va, vb)) = stack.pop() {
        let count = va.saturating_sub(vb);
        match count {
            0 => {}
            1 => out.push((a, b)),
            _ => {
                let m = Dyadic::midpoint(&a, &b);
                let vm = variations(&seq, &m);
                stack.push((a, m.clone(), va, vm));
                stack.push((m, b, vm, vb));
            }
        }
    }
    out.sort_by(|x, y| x.0.cmp_value(&y.0));
    out
}

/// Shrink `(a, b]`, which holds exactly one root of the square-free `f`,
/// until `done(a, b)` holds. Only signs of `f` (and of `f'` at a root
/// endpoint) are evaluated. A root hit exactly returns a degenerate interval.
pub(crate) fn refine(
    f: &IntPoly,
    mut a: Dyadic,
    mut b: Dyadic,
    done: impl Fn(&Dyadic, &Dyadic) -> bool,
) -> (Dyadic, Dyadic) {
    if sign_at(f, &b) == 0 {
        return (b.clone(), b);
    }
    let mut right_of_a = sign_at(f, &a);
    if right_of_a == 0 {
        right_of_a = sign_at(&f.derivative(), &a);
    }
    while !done(&a, &b) {
        let m = Dyadic::midpoint(&a, &b);
        match sign_at(f, &m) {
            0 => return (m.clone(), m),
            s if s == right_of_a => a = m,
            _ => b = m,
        }
    }
    (a, b)
}

/// Interval width test used for direct refinement.
pub(crate) fn narrower_than(bits: u32) -> impl Fn(&Dyadic, &Dyadic) -> bool {
    move |a, b| b.sub(a).at_most_pow2(bits)
}

/// For `mu` in `[a, b]` with `a >= 0`, an enclosure of `sqrt(mu)`.
pub(crate) fn sqrt_enclosure(a: &Dyadic, b: &Dyadic, bits: u32) -> (Dyadic, Dyadic) {
    let scale = (bits + 8).max(a.s.div_ceil(2)).max(b.s.div_ceil(2));
    (a.sqrt_floor(scale), b.sqrt_ceil(scale))
}
