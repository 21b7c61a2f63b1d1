//! High-precision numerics for ζ(n) and double zeta values.
//!
//! The double-zeta evaluator sums Σ_m m^-a H^(b)_{m-1} directly up to a cut
//! M and then closes the tail with Euler–Maclaurin expansions of the zeta
//! tails r_s(m) = Σ_{n≥m} n^-s; every remainder is bounded by the first
//! omitted term (valid here since all derivatives of x^-s alternate), and
//! those bounds are folded into the certified error radius.

use crate::exact::{bernoulli_number, factorial, Rat};
use crate::highprec::Real;
use rug::{Integer, Rational};

/// ζ(n) to the working precision, correctly rounded by MPFR.
pub fn zeta_numeric(n: u32, prec: u32) -> Real {
    assert!(n >= 2, "zeta_numeric needs n >= 2, got {n}");
    Real::zeta_u(prec, n)
}

/// Euler–Maclaurin coefficient B_{2j}/(2j)! · s(s+1)···(s+2j-2).
fn em_coefficient(s: u32, j: u32) -> Rat {
    let mut rising = Integer::from(1);
    for i in 0..(2 * j - 1) {
        rising *= Integer::from(s + i);
    }
    bernoulli_number(2 * j) / Rational::from(factorial(2 * j)) * Rational::from(rising)
}

/// Tail r_s(m) = Σ_{n≥m} n^-s for s ≥ 2, with certified radius.
///
/// Small m is handled by summing directly up to a cut where the
/// Euler–Maclaurin expansion reaches the target accuracy.
pub fn zeta_tail(s: u32, m: u64, prec: u32) -> Real {
    assert!(s >= 2 && m >= 1);
    let cut = cut_for(prec).max(m);
    let mut head = Real::zero(prec);
    for n in m..cut {
        head = head.add(&Real::from_i64(prec, n as i64).pow_i64(-(s as i64)));
    }
    head.add(&zeta_tail_em(s, cut, prec))
}

/// Euler–Maclaurin tail at a point m already large enough for the target
/// precision; the assertion fires if it is not.
fn zeta_tail_em(s: u32, m: u64, prec: u32) -> Real {
    assert!(s >= 2 && m >= 2);
    let mf = Real::from_i64(prec, m as i64);
    // ∫_m^∞ + f(m)/2
    let mut acc = mf
        .pow_i64(1 - s as i64)
        .mul_rat(&(Rational::from(1) / Rational::from(s - 1)));
    acc = acc.add(&mf.pow_i64(-(s as i64)).mul_rat(&Rational::from((1, 2))));
    let target = crate::highprec::pow2(-(prec as i32) - 8);
    let mut j = 1u32;
    let mut last = f64::MAX;
    loop {
        let c = em_coefficient(s, j);
        let term = mf.pow_i64(-(s as i64) - 2 * j as i64 + 1).mul_rat(&c);
        let mag = term.abs_upper();
        assert!(
            mag < last,
            "Euler–Maclaurin terms stopped decreasing at j={j} (s={s}, m={m}); increase m"
        );
        last = mag;
        if mag < target || j > 400 {
            // remainder bounded by the first omitted term
            acc = acc.widen(mag);
            break;
        }
        acc = acc.add(&term);
        j += 1;
    }
    acc
}

/// Cut point beyond which the Euler–Maclaurin expansions converge past the
/// target precision (terms behave like ((s+2j)/(2πm))^{2j}).
fn cut_for(prec: u32) -> u64 {
    let digits = (prec as f64 / 3.321928) as u64;
    (2 * digits).max(48)
}

/// ζ(a, b) = Σ_{0<n<m} m^-a n^-b with certified error, for a ≥ 2, b ≥ 1.
///
/// b = 1 goes through Euler's reduction
/// ζ(a,1) = (a/2) ζ(a+1) - (1/2) Σ_{k=2}^{a-2} ζ(k) ζ(a+1-k);
/// b ≥ 2 uses the direct sum with Euler–Maclaurin tails.
pub fn double_zeta_numeric(a: u32, b: u32, prec: u32) -> Real {
    assert!(a >= 2, "double_zeta_numeric needs a >= 2, got ({a},{b})");
    assert!(b >= 1);
    assert!(a + b >= 3);
    if b == 1 {
        // Euler: ζ(a,1) = (a/2)ζ(a+1) - (1/2) Σ_{k=2}^{a-1} ζ(k)ζ(a+1-k)
        let mut acc = zeta_numeric(a + 1, prec).mul_rat(&Rational::from((a, 2)));
        for k in 2..=(a - 1) {
            let prod = zeta_numeric(k, prec).mul(&zeta_numeric(a + 1 - k, prec));
            acc = acc.sub(&prod.mul_rat(&Rational::from((1, 2))));
        }
        return acc;
    }
    let wp = prec + 32;
    let m_cut = cut_for(prec);
    // direct part: Σ_{m=2}^{M} m^-a H^(b)_{m-1}
    let mut h = Real::zero(wp); // running H^(b)_{m-1}
    let mut acc = Real::zero(wp);
    for m in 2..=m_cut {
        h = h.add(&Real::from_i64(wp, (m - 1) as i64).pow_i64(-(b as i64)));
        acc = acc.add(&Real::from_i64(wp, m as i64).pow_i64(-(a as i64)).mul(&h));
    }
    // tail: Σ_{m>M} m^-a (ζ(b) - r_b(m))
    //     = ζ(b) r_a(M+1) - [r_{a+b-1}/(b-1) + r_{a+b}/2 + Σ_j c_j r_{a+b+2j-1}](M+1) - E
    let m1 = m_cut + 1;
    acc = acc.add(&zeta_numeric(b, wp).mul(&zeta_tail(a, m1, wp)));
    acc = acc.sub(&zeta_tail(a + b - 1, m1, wp).mul_rat(&(Rational::from(1) / Rational::from(b - 1))));
    acc = acc.sub(&zeta_tail(a + b, m1, wp).mul_rat(&Rational::from((1, 2))));
    let target = crate::highprec::pow2(-(wp as i32) + 4);
    let mut j = 1u32;
    loop {
        let c = em_coefficient(b, j);
        let term = zeta_tail(a + b + 2 * j - 1, m1, wp).mul_rat(&c);
        let mag = term.abs_upper();
        if mag < target || j > 400 {
            acc = acc.widen(mag);
            break;
        }
        acc = acc.sub(&term);
        j += 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::zeta_even_over_2pi;
    use crate::highprec::bits_for_digits;

    #[test]
    fn zeta2_is_pi2_over_6() {
        let prec = bits_for_digits(50);
        let z2 = zeta_numeric(2, prec);
        let pi = Real::pi(prec);
        let expect = pi.mul(&pi).mul_rat(&Rational::from((1, 6)));
        assert!(z2.consistent_with(&expect));
    }

    #[test]
    fn zeta12_matches_exact_rational() {
        let prec = bits_for_digits(60);
        let z12 = zeta_numeric(12, prec);
        let two_pi = Real::pi(prec).mul_i64(2);
        let expect = two_pi.pow_i64(12).mul_rat(&zeta_even_over_2pi(12).unwrap());
        assert!(z12.consistent_with(&expect));
    }

    // Independent slow direct-sum oracle for ζ(3).
    #[test]
    fn zeta3_against_direct_sum() {
        let prec = bits_for_digits(30);
        let z3 = zeta_numeric(3, prec).to_f64();
        // Σ n^-3 with the integral tail bracket
        let mut s = 0f64;
        let cut = 4000u64;
        for n in 1..=cut {
            s += 1.0 / (n as f64).powi(3);
        }
        let tail_mid = 1.0 / (2.0 * (cut as f64).powi(2));
        assert!((z3 - (s + tail_mid)).abs() < 1e-8);
        assert!((z3 - 1.2020569031595942).abs() < 1e-12);
    }

    #[test]
    fn zeta_tail_additivity() {
        // r_s(m) = r_s(m+1) + m^-s
        let prec = bits_for_digits(40);
        for s in [2u32, 5, 9] {
            for m in [10u64, 50, 200] {
                let lhs = zeta_tail(s, m, prec);
                let rhs = zeta_tail(s, m + 1, prec)
                    .add(&Real::from_i64(prec, m as i64).pow_i64(-(s as i64)));
                assert!(lhs.consistent_with(&rhs), "s={s} m={m}");
            }
        }
        // and r_s(2) = ζ(s) - 1
        for s in [3u32, 7] {
            let lhs = zeta_tail(s, 2, prec);
            let rhs = zeta_numeric(s, prec).sub(&Real::from_i64(prec, 1));
            assert!(lhs.consistent_with(&rhs));
        }
    }

    // Euler: ζ(2,1) = ζ(3).
    #[test]
    fn euler_zeta21() {
        let prec = bits_for_digits(50);
        let lhs = double_zeta_numeric(2, 1, prec);
        let rhs = zeta_numeric(3, prec);
        assert!(lhs.consistent_with(&rhs));
    }

    // With ζ(a,b) = Σ_{m>n} m^-a n^-b: ζ(2,3) = 9/2 ζ(5) - 2 ζ(2)ζ(3) and
    // ζ(3,2) = 3 ζ(2)ζ(3) - 11/2 ζ(5) (the first identity with the stuffle).
    #[test]
    fn weight_five_closed_forms() {
        let prec = bits_for_digits(50);
        let z5 = zeta_numeric(5, prec);
        let z2z3 = zeta_numeric(2, prec).mul(&zeta_numeric(3, prec));
        let lhs = double_zeta_numeric(2, 3, prec);
        let rhs = z5.mul_rat(&Rational::from((9, 2))).sub(&z2z3.mul_i64(2));
        assert!(lhs.consistent_with(&rhs));
        let lhs = double_zeta_numeric(3, 2, prec);
        let rhs = z2z3.mul_i64(3).sub(&z5.mul_rat(&Rational::from((11, 2))));
        assert!(lhs.consistent_with(&rhs));
        // ζ(2,2) = 3/4 ζ(4)
        let lhs = double_zeta_numeric(2, 2, prec);
        let rhs = zeta_numeric(4, prec).mul_rat(&Rational::from((3, 4)));
        assert!(lhs.consistent_with(&rhs));
    }

    // Brute double-sum oracle, including the b = 1 route.
    #[test]
    fn double_zeta_against_brute_sum() {
        let prec = bits_for_digits(30);
        // pairs chosen so the brute tail Σ_{m>M} ζ(b) m^-a sits below 1e-8
        for (a, b) in [(9u32, 1u32), (3, 2), (4, 3)] {
            let fast = double_zeta_numeric(a, b, prec).to_f64();
            let mut brute = 0f64;
            for m in 2..30000u64 {
                let mut inner = 0f64;
                for n in 1..m {
                    inner += 1.0 / (n as f64).powi(b as i32);
                }
                brute += inner / (m as f64).powi(a as i32);
                if m > 100 && (m as f64).powi(-(a as i32)) * inner < 1e-13 {
                    break;
                }
            }
            assert!((fast - brute).abs() < 1e-8, "({a},{b}): {fast} vs {brute}");
        }
    }

    // The same value at two precisions agrees within the coarser radius.
    #[test]
    fn precision_consistency() {
        let lo = double_zeta_numeric(6, 4, bits_for_digits(20));
        let hi = double_zeta_numeric(6, 4, bits_for_digits(80));
        assert!(lo.consistent_with(&hi));
        assert!(hi.rad() < 1e-70);
    }
}
