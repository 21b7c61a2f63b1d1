//! Rational q-expansions of the level-1 forms (Δ and the Eisenstein series
//! G_k), dimension bookkeeping for M_k/S_k, and evaluation of f(it) with a
//! rigorous tail bound from the Hecke estimate |a_n| ≤ C n^{k/2}.

use crate::exact::{factorial, zeta_even_over_2pi, ExactError, Rat};
use crate::highprec::{pow2, Real};
use rug::ops::Pow;
use rug::{Integer, Rational};
use serde::{Deserialize, Serialize};

/// Symbolic identity of a level-1 form.
///
/// `EisensteinG(k)` is the normalized series with a_n = σ_{k-1}(n) and
/// rational constant term (k-1)! ζ(k)/(2iπ)^k; `EisensteinE(k)` is
/// Σ'(mz+n)^{-k} = 2(2iπ)^k/(k-1)! · G_k, whose q-coefficients carry the
/// transcendental scalar. Expansions are always stored for the rational
/// normalization and the scalar is applied at evaluation time.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum FormLabel {
    Delta,
    EisensteinG(u32),
    EisensteinE(u32),
    ScalarMultiple(Box<FormLabel>, Rat),
}

impl FormLabel {
    pub fn weight(&self) -> u32 {
        match self {
            FormLabel::Delta => 12,
            FormLabel::EisensteinG(k) | FormLabel::EisensteinE(k) => *k,
            FormLabel::ScalarMultiple(inner, _) => inner.weight(),
        }
    }

    pub fn is_cuspidal(&self) -> bool {
        match self {
            FormLabel::Delta => true,
            FormLabel::EisensteinG(_) | FormLabel::EisensteinE(_) => false,
            FormLabel::ScalarMultiple(inner, _) => inner.is_cuspidal(),
        }
    }

    /// Rational scalar relative to the stored rational expansion.
    pub fn rational_scalar(&self) -> Rat {
        match self {
            FormLabel::ScalarMultiple(inner, c) => inner.rational_scalar() * c.clone(),
            _ => Rational::from(1),
        }
    }

    /// Transcendental scalar relative to the stored rational expansion:
    /// 1 for Δ and G_k, and 2(2iπ)^k/(k-1)! (a real number, k even) for E_k.
    pub fn transcendental_scalar(&self, prec: u32) -> Real {
        match self {
            FormLabel::EisensteinE(k) => {
                let sign = if k % 4 == 0 { 1 } else { -1 };
                let two_pi = Real::pi(prec).mul_i64(2);
                two_pi
                    .pow_i64(*k as i64)
                    .mul_i64(2 * sign)
                    .mul_rat(&(Rational::from(1) / Rational::from(factorial(*k - 1))))
            }
            FormLabel::ScalarMultiple(inner, _) => inner.transcendental_scalar(prec),
            _ => Real::from_i64(prec, 1),
        }
    }

    pub fn expansion(&self, n: usize) -> Result<QExpansion, ExactError> {
        match self {
            FormLabel::Delta => Ok(delta_qexp(n)),
            FormLabel::EisensteinG(k) | FormLabel::EisensteinE(k) => eisenstein_g_qexp(*k, n),
            FormLabel::ScalarMultiple(inner, _) => inner.expansion(n),
        }
    }
}

/// Truncated q-expansion with exact rational coefficients a_0..a_N.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QExpansion {
    pub weight: u32,
    /// a_0, a_1, ..., a_N
    pub coeffs: Vec<Rat>,
    pub is_cuspidal: bool,
    /// Constant C with |a_n| ≤ C n^{k/2} for all stored n ≥ 1, fitted on
    /// construction and used for certified tail bounds.
    pub hecke_constant: Rat,
}

impl QExpansion {
    fn new(weight: u32, coeffs: Vec<Rat>) -> Self {
        let is_cuspidal = coeffs[0] == 0;
        let mut c = Rational::new();
        for (n, a) in coeffs.iter().enumerate().skip(1) {
            // |a_n|^2 vs C^2 n^k, kept exact by comparing squares
            let a2 = Rational::from(a * a);
            let nk = Rational::from(Integer::from(n as u64).pow(weight));
            let ratio = a2 / nk;
            if ratio > c {
                c = ratio;
            }
        }
        // C = sqrt(max ratio), rounded up to a simple rational bound
        let cf = c.to_f64().sqrt() * 1.0000001 + 1e-12;
        let hecke_constant = Rational::from_f64(cf).unwrap_or_else(|| Rational::from(1));
        QExpansion {
            weight,
            coeffs,
            is_cuspidal,
            hecke_constant,
        }
    }

    pub fn truncation(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn a(&self, n: usize) -> Rat {
        self.coeffs[n].clone()
    }

    pub fn a0(&self) -> Rat {
        self.coeffs[0].clone()
    }

    /// JSON export: weight, truncation, and numerator/denominator strings.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "weight": self.weight,
            "truncation": self.truncation(),
            "is_cuspidal": self.is_cuspidal,
            "coefficients": self.coeffs.iter().map(|c| {
                serde_json::json!({
                    "numerator": c.numer().to_string(),
                    "denominator": c.denom().to_string(),
                })
            }).collect::<Vec<_>>(),
        })
    }

    /// Inverse of [`QExpansion::to_json`].
    pub fn from_json(v: &serde_json::Value) -> Result<Self, ExactError> {
        let weight = v["weight"]
            .as_u64()
            .ok_or_else(|| ExactError::Domain("missing weight".into()))? as u32;
        let arr = v["coefficients"]
            .as_array()
            .ok_or_else(|| ExactError::Domain("missing coefficients".into()))?;
        let mut coeffs = Vec::with_capacity(arr.len());
        for c in arr {
            let num = c["numerator"].as_str().unwrap_or("0");
            let den = c["denominator"].as_str().unwrap_or("1");
            let r: Rational = format!("{num}/{den}")
                .parse()
                .map_err(|_| ExactError::Domain("bad rational".into()))?;
            coeffs.push(r);
        }
        Ok(QExpansion::new(weight, coeffs))
    }
}

/// q ∏_{n≥1} (1-q^n)^24 to order N (so a_1 = 1, a_2 = -24, ...).
///
/// The Euler product ∏(1-q^n) is expanded with the pentagonal-number
/// theorem and raised to the 24th power by repeated squaring; the unit
/// tests check the result against the direct product expansion.
pub fn delta_qexp(n: usize) -> QExpansion {
    assert!(n >= 1);
    let order = n - 1; // coefficients of ∏(1-q^n)^24 up to q^{n-1}
    let mut euler = vec![Rational::new(); order + 1];
    euler[0] = Rational::from(1);
    let mut k = 1i64;
    loop {
        let g1 = k * (3 * k - 1) / 2;
        let g2 = k * (3 * k + 1) / 2;
        if g1 as usize > order && g2 as usize > order {
            break;
        }
        let sign = if k % 2 == 0 { 1 } else { -1 };
        if (g1 as usize) <= order {
            euler[g1 as usize] = Rational::from(sign);
        }
        if (g2 as usize) <= order {
            euler[g2 as usize] = Rational::from(sign);
        }
        k += 1;
    }
    let mul = |a: &[Rational], b: &[Rational]| -> Vec<Rational> {
        let mut out = vec![Rational::new(); order + 1];
        for i in 0..=order {
            if a[i] == 0 {
                continue;
            }
            for j in 0..=(order - i) {
                if b[j] == 0 {
                    continue;
                }
                out[i + j] += Rational::from(&a[i] * &b[j]);
            }
        }
        out
    };
    let e2 = mul(&euler, &euler);
    let e4 = mul(&e2, &e2);
    let e8 = mul(&e4, &e4);
    let e16 = mul(&e8, &e8);
    let e24 = mul(&e16, &e8);
    // shift by q
    let mut coeffs = vec![Rational::new()];
    coeffs.extend(e24.into_iter().take(n));
    QExpansion::new(12, coeffs)
}

/// σ_{k-1}(n).
pub fn sigma(k_minus_1: u32, n: u64) -> Integer {
    let mut s = Integer::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            s += Integer::from(d).pow(k_minus_1);
            let e = n / d;
            if e != d {
                s += Integer::from(e).pow(k_minus_1);
            }
        }
        d += 1;
    }
    s
}

/// G_k to order N: constant term (k-1)! ζ(k)/(2iπ)^k (an exact rational for
/// even k) and a_n = σ_{k-1}(n).
pub fn eisenstein_g_qexp(k: u32, n: usize) -> Result<QExpansion, ExactError> {
    if k % 2 != 0 || k < 4 {
        return Err(ExactError::Domain(format!(
            "Eisenstein weight must be even and >= 4, got {k}"
        )));
    }
    // (k-1)! ζ(k)/(2iπ)^k = (k-1)! (-1)^{k/2} ζ(k)/(2π)^k
    let sign = if (k / 2) % 2 == 0 { 1 } else { -1 };
    let a0 = Rational::from(factorial(k - 1)) * zeta_even_over_2pi(k)? * Rational::from(sign);
    let mut coeffs = vec![a0];
    for m in 1..=n {
        coeffs.push(Rational::from(sigma(k - 1, m as u64)));
    }
    Ok(QExpansion::new(k, coeffs))
}

/// dim M_k = ⌊k/12⌋ + 1 - δ(k ≡ 2 mod 12) for even k ≥ 0.
pub fn dim_mk(k: u32) -> Result<u32, ExactError> {
    if k % 2 != 0 {
        return Err(ExactError::Domain(format!("odd weight {k}")));
    }
    if k == 2 {
        return Ok(0);
    }
    let d = k / 12 + 1 - if k % 12 == 2 { 1 } else { 0 };
    Ok(d)
}

/// dim S_k = dim M_k - 1 for k ≥ 4, and 0 for k ∈ {0, 2}.
pub fn dim_sk(k: u32) -> Result<u32, ExactError> {
    let m = dim_mk(k)?;
    if k < 4 {
        Ok(0)
    } else {
        Ok(m.saturating_sub(1))
    }
}

/// Evaluation error: the stored truncation cannot reach the requested
/// precision; carries the truncation that would suffice.
#[derive(Debug, Clone)]
pub struct InsufficientTruncation {
    pub available: usize,
    pub required: usize,
}

impl std::fmt::Display for InsufficientTruncation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "insufficient q-expansion truncation: have {}, need {}",
            self.available, self.required
        )
    }
}

impl std::error::Error for InsufficientTruncation {}

/// Number of q-expansion terms needed so that the Hecke tail bound
/// Σ_{n>N} C n^{k/2} e^{-2π n t} drops below 2^-prec_bits, at the smallest
/// t in play.
pub fn truncation_for(weight: u32, hecke_c: f64, t_min: f64, prec_bits: u32) -> usize {
    let target = -(prec_bits as f64) * std::f64::consts::LN_2;
    let rate = 2.0 * std::f64::consts::PI * t_min;
    let half_k = weight as f64 / 2.0;
    let mut n = 4usize;
    loop {
        let nf = n as f64;
        // log of C (n+1)^{k/2} e^{-rate (n+1)} * 2  (factor 2 covers the geometric tail)
        let log_tail =
            hecke_c.max(1.0).ln() + half_k * (nf + 1.0).ln() - rate * (nf + 1.0) + 2.0f64.ln();
        if log_tail < target - 2.0 {
            return n;
        }
        n += 1;
        if n > 4_000_000 {
            return n;
        }
    }
}

/// Certified f64 upper bound for Σ_{n>N} C n^{k/2} e^{-2π n t}.
///
/// Valid whenever the term ratio at n = N+1 is below 1/2, which the
/// assertion enforces.
pub fn hecke_tail_bound(weight: u32, hecke_c: f64, t: f64, n: usize) -> f64 {
    let rate = 2.0 * std::f64::consts::PI * t;
    let half_k = weight as f64 / 2.0;
    let n1 = (n + 1) as f64;
    let ratio = (half_k * (1.0 + 1.0 / n1).ln() - rate).exp();
    assert!(ratio < 0.5, "tail ratio {ratio} too close to 1; increase N");
    let first = hecke_c.max(1e-300) * (half_k * n1.ln() - rate * n1).exp();
    first / (1.0 - ratio) * 1.001
}

/// f(i t) = Σ a_n e^{-2π n t} with certified truncation error below
/// 2^-prec_bits (absolute). For cusp forms and t < 1 the functional
/// substitution f(it) = i^k t^{-k} f(i/t) is applied first so the series is
/// always summed at argument ≥ 1.
pub fn eval_at_it(
    f: &QExpansion,
    t: &Real,
    prec_bits: u32,
) -> Result<Real, InsufficientTruncation> {
    let tf = t.to_f64();
    assert!(tf > 0.0, "t must be positive");
    if tf < 1.0 && f.is_cuspidal {
        let inv = t.recip();
        let inner = eval_at_it(f, &inv, prec_bits)?;
        // f(it) = f(i/u) with u = 1/t, and f(i/u) = (iu)^k f(iu)
        let sign = if f.weight % 4 == 0 { 1 } else { -1 };
        let factor = inv.pow_i64(f.weight as i64).mul_i64(sign);
        return Ok(inner.mul(&factor));
    }
    let prec = prec_bits + 32;
    let needed = truncation_for(f.weight, f.hecke_constant.to_f64(), tf, prec_bits);
    if needed > f.truncation() {
        return Err(InsufficientTruncation {
            available: f.truncation(),
            required: needed,
        });
    }
    let minus_two_pi_t = Real::pi(prec).mul_i64(-2).mul(t);
    let q = minus_two_pi_t.exp();
    // Horner over n from the top
    let mut acc = Real::zero(prec);
    for n in (1..=needed).rev() {
        acc = acc.add(&Real::from_rat(prec, &f.coeffs[n]));
        acc = acc.mul(&q);
    }
    acc = acc.add(&Real::from_rat(prec, &f.coeffs[0]));
    let tail = hecke_tail_bound(f.weight, f.hecke_constant.to_f64(), tf, needed);
    let acc = acc.widen(tail);
    assert!(tail <= pow2(-(prec_bits as i32)));
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::highprec::bits_for_digits;
    use rug::Rational;

    // Oracle: direct expansion of q ∏_{n≤N}(1-q^n)^{24} by naive polynomial
    // multiplication, independent of the pentagonal-number route.
    fn delta_brute(order: usize) -> Vec<Rational> {
        let mut poly = vec![Rational::new(); order + 1];
        poly[0] = Rational::from(1);
        for n in 1..=order {
            for _ in 0..24 {
                let snapshot = poly.clone();
                for i in 0..=order {
                    if i >= n {
                        let v = Rational::from(&poly[i] - &snapshot[i - n]);
                        poly[i] = v;
                    }
                }
            }
        }
        let mut out = vec![Rational::new()];
        out.extend(poly.into_iter().take(order));
        out
    }

    #[test]
    fn delta_matches_product_oracle() {
        let d = delta_qexp(12);
        let brute = delta_brute(12);
        assert_eq!(d.coeffs.len(), brute.len());
        for (n, (a, b)) in d.coeffs.iter().zip(brute.iter()).enumerate() {
            assert_eq!(a, b, "coefficient {n}");
        }
        assert_eq!(d.a(1), Rational::from(1));
        assert_eq!(d.a(2), Rational::from(-24));
        assert_eq!(d.a(3), Rational::from(252));
    }

    #[test]
    fn tau_multiplicativity() {
        let d = delta_qexp(20);
        // τ(6) = τ(2) τ(3)
        assert_eq!(d.a(6), Rational::from(&d.a(2) * &d.a(3)));
        // τ(4) = τ(2)^2 - 2^{11} τ(1)
        let expect = Rational::from(&d.a(2) * &d.a(2)) - Rational::from(2048) * d.a(1);
        assert_eq!(d.a(4), expect);
    }

    #[test]
    fn eisenstein_constants() {
        let g4 = eisenstein_g_qexp(4, 2).unwrap();
        assert_eq!(g4.a0(), Rational::from((1u32, 240u32)));
        assert_eq!(g4.a(1), Rational::from(1));
        assert_eq!(g4.a(2), Rational::from(9));
        let g6 = eisenstein_g_qexp(6, 1).unwrap();
        assert_eq!(g6.a0(), Rational::from((-1i32, 504i32)));
        assert!(eisenstein_g_qexp(5, 1).is_err());
    }

    #[test]
    fn sigma_at_primes() {
        for k in [4u32, 6, 8, 12] {
            for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47] {
                let expect = Integer::from(1) + Integer::from(p).pow(k - 1);
                assert_eq!(sigma(k - 1, p), expect, "k={k} p={p}");
            }
        }
    }

    #[test]
    fn dimensions() {
        assert_eq!(dim_mk(12).unwrap(), 2);
        assert_eq!(dim_sk(12).unwrap(), 1);
        assert_eq!(dim_mk(2).unwrap(), 0);
        // 26 ≡ 2 mod 12, so ⌊26/12⌋ + 1 - 1 = 2 (M_26 = <E_26, Δ E_14>)
        assert_eq!(dim_mk(26).unwrap(), 2);
        assert_eq!(dim_sk(26).unwrap(), 1);
        assert_eq!(dim_sk(4).unwrap(), 0);
        assert_eq!(dim_mk(0).unwrap(), 1);
        assert!(dim_mk(7).is_err());
    }

    #[test]
    fn hecke_bound_holds_for_delta() {
        let d = delta_qexp(60);
        let c = d.hecke_constant.to_f64();
        for n in 1..=60usize {
            let bound = c * (n as f64).powf(6.0);
            assert!(d.a(n).to_f64().abs() <= bound * 1.0000001, "n={n}");
        }
    }

    // Direct low-precision summation oracle at t = 1.
    #[test]
    fn eval_matches_direct_sum() {
        let d = delta_qexp(40);
        let prec = bits_for_digits(20);
        let t = Real::from_i64(prec, 1);
        let v = eval_at_it(&d, &t, 40).unwrap();
        let mut direct = 0f64;
        for n in 1..=15 {
            direct += d.a(n).to_f64() * (-2.0 * std::f64::consts::PI * n as f64).exp();
        }
        assert!((v.to_f64() - direct).abs() < 1e-9);
    }

    // Weight-12 modularity on the imaginary axis: f(it) t^6 invariant under t -> 1/t.
    #[test]
    fn modularity_on_axis() {
        let d = delta_qexp(80);
        let prec = bits_for_digits(30);
        for tf in [(3i64, 2i64), (2, 1), (5, 2)] {
            let t = Real::from_rat(prec, &Rational::from(tf));
            let tinv = t.recip();
            let lhs = eval_at_it(&d, &t, 100).unwrap().mul(&t.pow_i64(6));
            let rhs = eval_at_it(&d, &tinv, 100).unwrap().mul(&tinv.pow_i64(6));
            assert!(lhs.sub(&rhs).abs_at_most(1e-25), "t={tf:?}");
        }
    }

    // t < 1 goes through the functional substitution branch and agrees with
    // the modularity relation applied by hand.
    #[test]
    fn functional_substitution_fixed_point() {
        let d = delta_qexp(80);
        let prec = bits_for_digits(30);
        let t_under = Real::from_rat(prec, &Rational::from((1, 2)));
        let direct = eval_at_it(&d, &t_under, 90).unwrap();
        // f(i/2) = i^12 2^12 f(2i)
        let two = Real::from_i64(prec, 2);
        let expect = eval_at_it(&d, &two, 90).unwrap().mul(&two.pow_i64(12));
        assert!(direct.sub(&expect).abs_at_most(1e-24));
    }

    #[test]
    fn insufficient_truncation_reports_requirement() {
        let d = delta_qexp(5);
        let prec = bits_for_digits(40);
        let t = Real::from_rat(prec, &Rational::from((1, 4)));
        let g = eisenstein_g_qexp(4, 5).unwrap();
        let err = eval_at_it(&g, &t, 200).unwrap_err();
        assert!(err.required > 5);
        assert_eq!(err.available, 5);
        // the cusp branch flips t=1/4 to t=4 where 5 terms suffice
        let _ = eval_at_it(&d, &t, 64).unwrap();
    }

    #[test]
    fn qexpansion_json_roundtrip() {
        let d = delta_qexp(10);
        let j = d.to_json();
        let back = QExpansion::from_json(&j).unwrap();
        assert_eq!(d.weight, back.weight);
        assert_eq!(d.coeffs, back.coeffs);
    }
}
