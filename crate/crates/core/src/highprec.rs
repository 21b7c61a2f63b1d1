//! Certified high-precision scalars: MPFR floats for the midpoints plus a
//! conservatively propagated absolute error radius.
//!
//! The radius lives in an `f64`; working precisions stay well inside the
//! exponent range where that is sound (the crate caps requests at 300
//! decimal digits). Radius arithmetic always rounds up: every operation
//! multiplies by a small safety factor and clamps away from underflow.

use crate::exact::Rat;
use rug::float::Constant;
use rug::ops::Pow;
use rug::Float;
use std::cmp::Ordering;

/// Decimal digits → MPFR precision in bits, with guard bits.
pub fn bits_for_digits(digits: u32) -> u32 {
    (digits as f64 * 3.3219280948873626).ceil() as u32 + 32
}

/// Hard cap keeping f64 radii representable.
pub const MAX_DIGITS: u32 = 300;

const SAFETY: f64 = 1.0 + 1e-12;
const RAD_FLOOR: f64 = 1e-300;

fn bump(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        let y = x * SAFETY;
        if y < RAD_FLOOR {
            RAD_FLOOR
        } else {
            y
        }
    }
}

fn r_add(a: f64, b: f64) -> f64 {
    bump(a + b)
}

fn r_mul(a: f64, b: f64) -> f64 {
    if a == 0.0 || b == 0.0 {
        0.0
    } else {
        let y = a * b;
        bump(if y < RAD_FLOOR { RAD_FLOOR } else { y })
    }
}

/// A real number known to lie within `rad` of `val`.
#[derive(Debug, Clone)]
pub struct Real {
    val: Float,
    rad: f64,
}

impl Real {
    pub fn new(val: Float, rad: f64) -> Self {
        assert!(rad >= 0.0 && rad.is_finite());
        Real { val, rad }
    }

    pub fn exact(val: Float) -> Self {
        Real { val, rad: 0.0 }
    }

    pub fn zero(prec: u32) -> Self {
        Real::exact(Float::with_val(prec, 0))
    }

    pub fn from_i64(prec: u32, n: i64) -> Self {
        Real::exact(Float::with_val(prec, n))
    }

    /// Conversion from an exact rational; the only error is the final
    /// rounding, bounded by one ulp.
    pub fn from_rat(prec: u32, r: &Rat) -> Self {
        let val = Float::with_val(prec, r);
        let rad = ulp(&val);
        Real { val, rad }
    }

    pub fn pi(prec: u32) -> Self {
        let val = Float::with_val(prec, Constant::Pi);
        let rad = ulp(&val);
        Real { val, rad }
    }

    /// ζ(n) for integer n ≥ 2, correctly rounded by MPFR.
    pub fn zeta_u(prec: u32, n: u32) -> Self {
        assert!(n >= 2);
        let val = Float::with_val(prec, Float::zeta_u(n));
        let rad = ulp(&val);
        Real { val, rad }
    }

    pub fn prec(&self) -> u32 {
        self.val.prec()
    }

    pub fn mid(&self) -> &Float {
        &self.val
    }

    pub fn rad(&self) -> f64 {
        self.rad
    }

    pub fn to_f64(&self) -> f64 {
        self.val.to_f64()
    }

    /// Upper bound on |x| over the ball.
    pub fn abs_upper(&self) -> f64 {
        bump(self.val.to_f64().abs() * SAFETY + self.rad)
    }

    pub fn add(&self, other: &Self) -> Self {
        let val = Float::with_val(self.prec().max(other.prec()), &self.val + &other.val);
        let rad = r_add(r_add(self.rad, other.rad), ulp(&val));
        Real { val, rad }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let val = Float::with_val(self.prec().max(other.prec()), &self.val - &other.val);
        let rad = r_add(r_add(self.rad, other.rad), ulp(&val));
        Real { val, rad }
    }

    pub fn neg(&self) -> Self {
        Real {
            val: Float::with_val(self.prec(), -&self.val),
            rad: self.rad,
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let val = Float::with_val(self.prec().max(other.prec()), &self.val * &other.val);
        let prop = r_add(
            r_add(
                r_mul(self.abs_upper(), other.rad),
                r_mul(other.abs_upper(), self.rad),
            ),
            r_mul(self.rad, other.rad),
        );
        let rad = r_add(prop, ulp(&val));
        Real { val, rad }
    }

    pub fn mul_i64(&self, n: i64) -> Self {
        let val = Float::with_val(self.prec(), &self.val * n);
        let rad = r_add(r_mul(self.rad, n.unsigned_abs() as f64), ulp(&val));
        Real { val, rad }
    }

    pub fn mul_rat(&self, r: &Rat) -> Self {
        self.mul(&Real::from_rat(self.prec(), r))
    }

    /// Division; fails (panics) if the divisor ball contains zero.
    pub fn div(&self, other: &Self) -> Self {
        let lower = other.val.to_f64().abs() / SAFETY - other.rad;
        assert!(lower > 0.0, "division by a ball containing zero");
        let val = Float::with_val(self.prec().max(other.prec()), &self.val / &other.val);
        // |x/y - x'/y'| <= rad_x/|y| + |x| rad_y / |y|^2 (first order, padded)
        let prop = r_add(
            bump(self.rad / lower),
            bump(self.abs_upper() * other.rad / (lower * lower)),
        );
        let rad = r_add(prop, ulp(&val));
        Real { val, rad }
    }

    pub fn recip(&self) -> Self {
        Real::from_i64(self.prec(), 1).div(self)
    }

    /// e^x over the ball: the radius propagates as e^{x̂}(e^r - 1) ≤ 2 r e^{x̂}
    /// for r ≤ 1/2.
    pub fn exp(&self) -> Self {
        let val = Float::with_val(self.prec(), self.val.clone().exp());
        let vmag = bump(val.to_f64().abs() * SAFETY);
        assert!(self.rad <= 0.5, "exp of a ball with radius > 1/2");
        let prop = r_mul(vmag, bump(2.0 * self.rad));
        let rad = r_add(prop, ulp(&val));
        Real { val, rad }
    }

    pub fn pow_i64(&self, e: i64) -> Self {
        if e == 0 {
            return Real::from_i64(self.prec(), 1);
        }
        let mut acc = self.clone();
        for _ in 1..e.unsigned_abs() {
            acc = acc.mul(self);
        }
        if e < 0 {
            acc = acc.recip();
        }
        acc
    }

    pub fn abs(&self) -> Self {
        Real {
            val: Float::with_val(self.prec(), self.val.clone().abs()),
            rad: self.rad,
        }
    }

    /// Add a certified amount of extra error (used for truncation tails).
    pub fn widen(&self, extra: f64) -> Self {
        assert!(extra >= 0.0 && extra.is_finite());
        Real {
            val: self.val.clone(),
            rad: r_add(self.rad, extra),
        }
    }

    /// Whether the ball certifies |x| ≤ bound.
    pub fn abs_at_most(&self, bound: f64) -> bool {
        self.abs_upper() <= bound
    }

    /// Whether `other` lies within the combined radii of the two balls.
    pub fn consistent_with(&self, other: &Self) -> bool {
        let d = Float::with_val(self.prec().max(other.prec()), &self.val - &other.val);
        d.to_f64().abs() <= r_add(self.rad, other.rad).max(1e-307)
    }

    /// Midpoint comparison (ignores radii).
    pub fn cmp_mid(&self, other: &Self) -> Ordering {
        self.val.partial_cmp(&other.val).unwrap()
    }

    pub fn is_certainly_positive(&self) -> bool {
        self.val.to_f64() / SAFETY - self.rad > 0.0 && self.val.is_sign_positive()
    }

    /// Decimal rendering of the midpoint (for reports and JSON).
    pub fn to_decimal(&self, digits: usize) -> String {
        let s = self.val.to_string_radix(10, Some(digits));
        s
    }
}

/// One ulp of a float, as an f64 upper bound.
pub fn ulp(x: &Float) -> f64 {
    if x.is_zero() {
        return RAD_FLOOR;
    }
    let e = x.get_exp().unwrap_or(0) - x.prec() as i32;
    pow2(e + 1)
}

/// 2^e clamped into f64 range (rounding up at the edges).
pub fn pow2(e: i32) -> f64 {
    if e < -995 {
        RAD_FLOOR
    } else if e > 1020 {
        f64::MAX
    } else {
        (2.0f64).powi(e)
    }
}

/// Complex ball with independent real and imaginary components.
#[derive(Debug, Clone)]
pub struct Complex {
    pub re: Real,
    pub im: Real,
}

impl Complex {
    pub fn new(re: Real, im: Real) -> Self {
        Complex { re, im }
    }

    pub fn zero(prec: u32) -> Self {
        Complex {
            re: Real::zero(prec),
            im: Real::zero(prec),
        }
    }

    pub fn from_real(re: Real) -> Self {
        let prec = re.prec();
        Complex {
            re,
            im: Real::zero(prec),
        }
    }

    pub fn from_i64(prec: u32, n: i64) -> Self {
        Complex::from_real(Real::from_i64(prec, n))
    }

    pub fn from_gauss(prec: u32, g: &crate::exact::GaussRat) -> Self {
        Complex {
            re: Real::from_rat(prec, &g.re),
            im: Real::from_rat(prec, &g.im),
        }
    }

    /// i^k as an exact complex unit.
    pub fn i_pow(prec: u32, k: i64) -> Self {
        let (re, im) = match k.rem_euclid(4) {
            0 => (1, 0),
            1 => (0, 1),
            2 => (-1, 0),
            _ => (0, -1),
        };
        Complex {
            re: Real::from_i64(prec, re),
            im: Real::from_i64(prec, im),
        }
    }

    pub fn prec(&self) -> u32 {
        self.re.prec().max(self.im.prec())
    }

    pub fn add(&self, other: &Self) -> Self {
        Complex {
            re: self.re.add(&other.re),
            im: self.im.add(&other.im),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        Complex {
            re: self.re.sub(&other.re),
            im: self.im.sub(&other.im),
        }
    }

    pub fn neg(&self) -> Self {
        Complex {
            re: self.re.neg(),
            im: self.im.neg(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let re = self.re.mul(&other.re).sub(&self.im.mul(&other.im));
        let im = self.re.mul(&other.im).add(&self.im.mul(&other.re));
        Complex { re, im }
    }

    pub fn mul_real(&self, r: &Real) -> Self {
        Complex {
            re: self.re.mul(r),
            im: self.im.mul(r),
        }
    }

    pub fn mul_rat(&self, r: &Rat) -> Self {
        Complex {
            re: self.re.mul_rat(r),
            im: self.im.mul_rat(r),
        }
    }

    pub fn mul_i64(&self, n: i64) -> Self {
        Complex {
            re: self.re.mul_i64(n),
            im: self.im.mul_i64(n),
        }
    }

    pub fn div(&self, other: &Self) -> Self {
        let norm = other.re.mul(&other.re).add(&other.im.mul(&other.im));
        let num = self.mul(&other.conj());
        Complex {
            re: num.re.div(&norm),
            im: num.im.div(&norm),
        }
    }

    pub fn conj(&self) -> Self {
        Complex {
            re: self.re.clone(),
            im: self.im.neg(),
        }
    }

    pub fn abs_upper(&self) -> f64 {
        bump(self.re.abs_upper() + self.im.abs_upper())
    }

    pub fn rad_upper(&self) -> f64 {
        r_add(self.re.rad(), self.im.rad())
    }

    pub fn widen(&self, extra: f64) -> Self {
        Complex {
            re: self.re.widen(extra),
            im: self.im.widen(extra),
        }
    }

    pub fn consistent_with(&self, other: &Self) -> bool {
        self.re.consistent_with(&other.re) && self.im.consistent_with(&other.im)
    }
}

/// Upper incomplete gamma Γ(s, x) for real s ≤ 1 and x ≥ 1, by the classical
/// continued fraction
/// Γ(s,x) = e^{-x} x^s / (x + 1 - s - 1(1-s)/(x + 3 - s - 2(2-s)/(...))).
///
/// The returned radius covers both the continued-fraction truncation
/// (bounded by the last convergent increment) and the float rounding.
pub fn upper_gamma(s: &Float, x: &Float, prec: u32) -> Real {
    assert!(x.to_f64() >= 1.0, "upper_gamma requires x >= 1");
    assert!(s.to_f64() <= 1.0, "upper_gamma expects s <= 1 here");
    let wp = prec + 24;
    // modified Lentz on the continued fraction
    let tiny = Float::with_val(wp, Float::parse("1e-320").unwrap());
    let b0 = Float::with_val(wp, x - s) + 1f64;
    let mut f = if b0.is_zero() { tiny.clone() } else { b0.clone() };
    let mut c = Float::with_val(wp, &f);
    let mut d = Float::with_val(wp, 0);
    let mut last_delta = f64::MAX;
    for i in 1..10_000u32 {
        let ai = Float::with_val(wp, -(i as f64)) * Float::with_val(wp, i as f64 - s.to_f64());
        let bi = Float::with_val(wp, x - s) + (2 * i + 1) as f64;
        d = bi.clone() + Float::with_val(wp, &ai * &d);
        if d.is_zero() {
            d = tiny.clone();
        }
        c = bi + Float::with_val(wp, &ai / &c);
        if c.is_zero() {
            c = tiny.clone();
        }
        d = d.recip();
        let delta = Float::with_val(wp, &c * &d);
        f *= &delta;
        let dd = Float::with_val(wp, &delta - 1f64).to_f64().abs();
        last_delta = dd;
        if dd < pow2(-(prec as i32) - 16) {
            break;
        }
    }
    let front = Float::with_val(wp, x.clone().pow(s)) * Float::with_val(wp, (-x.clone()).exp());
    let val = Float::with_val(prec, &front / &f);
    let rel_err = bump(last_delta * 8.0 + pow2(-(prec as i32) + 2));
    let rad = r_mul(val.to_f64().abs().max(RAD_FLOOR), rel_err);
    Real::new(val, rad)
}

/// Γ(s, x) for arbitrary real s ≥ 0 is reached from the s ≤ 1 continued
/// fraction through the recurrence Γ(s+1, x) = s Γ(s, x) + x^s e^{-x}
/// (numerically stable upward: all terms are positive).
pub fn upper_gamma_any(s: &Float, x: &Float, prec: u32) -> Real {
    let wp = prec + 24;
    let mut steps = 0u32;
    let mut s0 = Float::with_val(wp, s);
    while s0.to_f64() > 1.0 {
        s0 -= 1f64;
        steps += 1;
    }
    let mut acc = upper_gamma(&s0, x, prec);
    let emx = Real::exact(Float::with_val(wp, (-x.clone()).exp()));
    let xr = Real::exact(Float::with_val(wp, x));
    for _ in 0..steps {
        // Γ(s0+1, x) = s0 Γ(s0, x) + x^{s0} e^{-x}
        let xs = Real::exact(Float::with_val(
            wp,
            x.clone().pow(&s0),
        ));
        acc = acc
            .mul(&Real::exact(s0.clone()))
            .add(&xs.mul(&emx));
        let _ = &xr;
        s0 += 1f64;
    }
    acc
}

/// Generalized exponential integral E_q(x) = ∫_1^∞ e^{-xt} t^{-q} dt for
/// integer q ≥ 1 and x ≥ 1, via E_q(x) = x^{q-1} Γ(1-q, x).
pub fn exp_integral_e(q: u32, x: &Float, prec: u32) -> Real {
    assert!(q >= 1);
    let wp = prec + 24;
    let s = Float::with_val(wp, 1i64 - q as i64);
    let g = upper_gamma(&s, &Float::with_val(wp, x), prec);
    let xq = Real::exact(Float::with_val(wp, x)).pow_i64(q as i64 - 1);
    let v = g.mul(&xq);
    // elementary bracket e^{-x}/(x+q) <= E_q(x) <= e^{-x}/(x+q-1)
    let emx = Float::with_val(53, (-x.clone()).exp()).to_f64();
    let lo = emx / (x.to_f64() + q as f64) * 0.999;
    let hi = emx / (x.to_f64() + q as f64 - 1.0) * 1.001;
    let m = v.to_f64();
    assert!(
        m >= lo && m <= hi,
        "exp_integral_e({q}, {x}) = {m} escapes bracket [{lo}, {hi}]"
    );
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn ball_basics() {
        let prec = bits_for_digits(40);
        let a = Real::from_rat(prec, &rat(1, 3));
        let b = Real::from_rat(prec, &rat(2, 3));
        let one = a.add(&b);
        assert!(one.sub(&Real::from_i64(prec, 1)).abs_at_most(1e-35));
        assert!(one.rad() > 0.0);
    }

    #[test]
    fn exp_and_div() {
        let prec = bits_for_digits(40);
        let x = Real::from_i64(prec, -2);
        let e2 = x.exp();
        let back = e2.mul(&Real::from_i64(prec, 2).exp());
        assert!(back.sub(&Real::from_i64(prec, 1)).abs_at_most(1e-35));
    }

    #[test]
    fn pi_and_zeta() {
        let prec = bits_for_digits(50);
        let pi = Real::pi(prec);
        let z2 = Real::zeta_u(prec, 2);
        let lhs = z2.mul_i64(6);
        let rhs = pi.mul(&pi);
        assert!(lhs.sub(&rhs).abs_at_most(1e-45));
    }

    #[test]
    fn complex_mul() {
        let prec = bits_for_digits(30);
        let i = Complex::i_pow(prec, 1);
        let m1 = i.mul(&i);
        assert!(m1.re.add(&Real::from_i64(prec, 1)).abs_at_most(1e-25));
        assert!(m1.im.abs_at_most(1e-25));
    }

    // E_1(1) = 0.21938393439552027... (classical value)
    #[test]
    fn exponential_integral_value() {
        let prec = bits_for_digits(40);
        let v = exp_integral_e(1, &Float::with_val(prec, 1), prec);
        let expect = Float::with_val(prec, Float::parse("0.219383934395520273677163775460121649031").unwrap());
        assert!(v.sub(&Real::exact(expect)).abs_at_most(1e-30));
    }

    // E_q satisfies the recurrence q E_{q+1}(x) = e^{-x} - x E_q(x).
    #[test]
    fn exponential_integral_recurrence() {
        let prec = bits_for_digits(40);
        for q in 1..6u32 {
            for xi in [1i64, 3, 7] {
                let x = Float::with_val(prec, xi);
                let eq = exp_integral_e(q, &x, prec);
                let eq1 = exp_integral_e(q + 1, &x, prec);
                let lhs = eq1.mul_i64(q as i64);
                let emx = Real::exact(Float::with_val(prec, (-x.clone()).exp()));
                let rhs = emx.sub(&Real::exact(x.clone()).mul(&eq));
                assert!(lhs.sub(&rhs).abs_at_most(1e-30), "q={q} x={xi}");
            }
        }
    }
}
