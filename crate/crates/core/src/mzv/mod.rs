//! Multiple-zeta machinery: the symbol algebra for exact zeta combinations,
//! high-precision numerics for ζ(n) and double zetas ζ(a,b), the reductions
//! at non-positive arguments, the Z(a,b,c) numbers, the J(α,β) rationals and
//! the Z_g lattice sums.

mod jtable;
mod numeric;
mod zg;

pub use jtable::{j_value, JTable, JValue};
pub use numeric::{double_zeta_numeric, zeta_numeric, zeta_tail};
pub use zg::{zg_closed_form, zg_recursion, zg_symmetries, ZgIndex};

use crate::exact::{bernoulli_number, binomial, rat, ExactError, Rat};
use crate::highprec::Real;
use rug::Rational;
use std::collections::BTreeMap;

/// A basis symbol for exact zeta combinations.
///
/// `w` is the power of (2π) in the denominator (negative values put the
/// power in the numerator). Double zetas are ζ(a,b) = Σ_{0<l₂<l₁} l₁^-a l₂^-b;
/// a negative or zero second argument is transient and removed by
/// [`SymbolicZetaCombo::canonicalize`].
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum ZetaSymbol {
    One,
    PiSquared,
    /// (2π)^e with e ≠ 0.
    TwoPiPow(i32),
    /// ζ(n)/(2π)^w with n ≥ 2.
    SingleZeta(u32, i32),
    /// ζ(a,b)/(2π)^w with a ≥ 2 (b may be ≤ 0 before canonicalization).
    DoubleZeta(u32, i32, i32),
}

impl ZetaSymbol {
    /// Weight used for the deterministic serialization order.
    pub fn weight(&self) -> i64 {
        match self {
            ZetaSymbol::One => 0,
            ZetaSymbol::PiSquared => 2,
            ZetaSymbol::TwoPiPow(e) => *e as i64,
            ZetaSymbol::SingleZeta(n, w) => *n as i64 - *w as i64,
            ZetaSymbol::DoubleZeta(a, b, w) => *a as i64 + *b as i64 - *w as i64,
        }
    }

    pub fn eval(&self, prec: u32) -> Real {
        match self {
            ZetaSymbol::One => Real::from_i64(prec, 1),
            ZetaSymbol::PiSquared => {
                let pi = Real::pi(prec);
                pi.mul(&pi)
            }
            ZetaSymbol::TwoPiPow(e) => Real::pi(prec).mul_i64(2).pow_i64(*e as i64),
            ZetaSymbol::SingleZeta(n, w) => {
                let z = zeta_numeric(*n, prec);
                if *w == 0 {
                    z
                } else {
                    z.mul(&Real::pi(prec).mul_i64(2).pow_i64(-(*w as i64)))
                }
            }
            ZetaSymbol::DoubleZeta(a, b, w) => {
                let z = if *b >= 1 {
                    double_zeta_numeric(*a, *b as u32, prec)
                } else {
                    // transient symbol: evaluate through the reduction
                    double_zeta_reduce_negative(*a, (-*b) as u32)
                        .expect("divergent transient double zeta")
                        .eval(prec)
                };
                if *w == 0 {
                    z
                } else {
                    z.mul(&Real::pi(prec).mul_i64(2).pow_i64(-(*w as i64)))
                }
            }
        }
    }

    fn json_fields(&self) -> (String, i64) {
        match self {
            ZetaSymbol::One => ("1".into(), 0),
            ZetaSymbol::PiSquared => ("pi^2".into(), 0),
            ZetaSymbol::TwoPiPow(e) => ("1".into(), -(*e as i64)),
            ZetaSymbol::SingleZeta(n, w) => (format!("zeta({n})"), *w as i64),
            ZetaSymbol::DoubleZeta(a, b, w) => (format!("zeta({a},{b})"), *w as i64),
        }
    }
}

/// Exact rational linear combination over the symbol basis.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SymbolicZetaCombo {
    terms: BTreeMap<ZetaSymbol, Rat>,
}

impl SymbolicZetaCombo {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_rat(c: Rat) -> Self {
        let mut combo = Self::zero();
        combo.push(ZetaSymbol::One, c);
        combo
    }

    pub fn from_symbol(sym: ZetaSymbol, c: Rat) -> Self {
        let mut combo = Self::zero();
        combo.push(sym, c);
        combo
    }

    pub fn push(&mut self, sym: ZetaSymbol, c: Rat) {
        if c == 0 {
            return;
        }
        let entry = self.terms.entry(sym.clone()).or_insert_with(Rational::new);
        *entry += c;
        if *entry == 0 {
            self.terms.remove(&sym);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (s, c) in &other.terms {
            out.push(s.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (s, c) in &other.terms {
            out.push(s.clone(), -c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if *c == 0 {
            return Self::zero();
        }
        let mut out = Self::zero();
        for (s, v) in &self.terms {
            out.push(s.clone(), Rational::from(v * c));
        }
        out
    }

    /// Multiply every term by (2π)^e, shifting the denominators.
    pub fn shift_two_pi(&self, e: i32) -> Self {
        if e == 0 {
            return self.clone();
        }
        let mut out = Self::zero();
        for (s, c) in &self.terms {
            let shifted = match s {
                ZetaSymbol::One => ZetaSymbol::TwoPiPow(e),
                ZetaSymbol::PiSquared => {
                    // π^2 = (2π)^2 / 4
                    let sym = if e + 2 == 0 {
                        ZetaSymbol::One
                    } else {
                        ZetaSymbol::TwoPiPow(e + 2)
                    };
                    out.push(sym, rat(1, 4) * c.clone());
                    continue;
                }
                ZetaSymbol::TwoPiPow(f) => {
                    if f + e == 0 {
                        ZetaSymbol::One
                    } else {
                        ZetaSymbol::TwoPiPow(f + e)
                    }
                }
                ZetaSymbol::SingleZeta(n, w) => ZetaSymbol::SingleZeta(*n, w - e),
                ZetaSymbol::DoubleZeta(a, b, w) => ZetaSymbol::DoubleZeta(*a, *b, w - e),
            };
            out.push(shifted, c.clone());
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ZetaSymbol, &Rat)> {
        self.terms.iter()
    }

    /// Some(r) when the combination is the pure rational r.
    pub fn as_rational(&self) -> Option<Rat> {
        if self.terms.is_empty() {
            return Some(Rational::new());
        }
        if self.terms.len() == 1 {
            if let Some(c) = self.terms.get(&ZetaSymbol::One) {
                return Some(c.clone());
            }
        }
        None
    }

    /// Rewrite every transient symbol: double zetas with second argument
    /// ≤ 0 are expanded by the Bernoulli reduction (with ζ(b,0) =
    /// ζ(b-1) - ζ(b) as the boundary case); zero coefficients drop out.
    ///
    /// The rewriting is value-preserving, which the tests check numerically.
    pub fn canonicalize(&self) -> Result<Self, ExactError> {
        let mut out = Self::zero();
        for (s, c) in &self.terms {
            match s {
                ZetaSymbol::DoubleZeta(a, b, w) if *b <= 0 => {
                    let reduced = double_zeta_reduce_negative(*a, (-*b) as u32)?;
                    for (rs, rc) in &reduced.terms {
                        let shifted = match rs {
                            ZetaSymbol::SingleZeta(n, 0) => ZetaSymbol::SingleZeta(*n, *w),
                            other => {
                                if *w != 0 {
                                    return Err(ExactError::Domain(format!(
                                        "unexpected symbol {other:?} under 2π shift"
                                    )));
                                }
                                other.clone()
                            }
                        };
                        out.push(shifted, Rational::from(rc * c));
                    }
                }
                _ => out.push(s.clone(), c.clone()),
            }
        }
        Ok(out)
    }

    pub fn eval(&self, prec: u32) -> Real {
        let mut acc = Real::zero(prec);
        for (s, c) in &self.terms {
            acc = acc.add(&s.eval(prec).mul_rat(c));
        }
        acc
    }

    /// JSON list of {symbol, numerator, denominator, two_pi_power}, in
    /// (weight, lexicographic) order.
    pub fn to_json(&self) -> serde_json::Value {
        let mut items: Vec<_> = self.terms.iter().collect();
        items.sort_by_key(|(s, _)| (s.weight(), (*s).clone()));
        serde_json::Value::Array(
            items
                .into_iter()
                .map(|(s, c)| {
                    let (symbol, two_pi_power) = s.json_fields();
                    serde_json::json!({
                        "symbol": symbol,
                        "numerator": c.numer().to_string(),
                        "denominator": c.denom().to_string(),
                        "two_pi_power": two_pi_power,
                    })
                })
                .collect(),
        )
    }
}

/// ζ(b, -a) for a ≥ 0 (with ζ(b,0) = ζ(b-1) - ζ(b)) as an exact combination
/// of single zetas, by the Bernoulli sum-of-powers reduction. Requires
/// b - a > 2; anything else diverges.
pub fn double_zeta_reduce_negative(b: u32, a: u32) -> Result<SymbolicZetaCombo, ExactError> {
    if (b as i64) - (a as i64) <= 2 {
        return Err(ExactError::Domain(format!(
            "zeta({b},-{a}) diverges: need b - a > 2"
        )));
    }
    let mut combo = SymbolicZetaCombo::zero();
    if a == 0 {
        combo.push(ZetaSymbol::SingleZeta(b - 1, 0), rat(1, 1));
        combo.push(ZetaSymbol::SingleZeta(b, 0), rat(-1, 1));
        return Ok(combo);
    }
    for n in 0..=a {
        let bn = bernoulli_number(n);
        if bn == 0 {
            continue;
        }
        let c = Rational::from(binomial(a as i64 + 1, n as i64)) * bn / Rational::from(a + 1);
        combo.push(ZetaSymbol::SingleZeta(b - a - 1 + n, 0), c);
    }
    Ok(combo)
}

/// Z(a, -n, b) = Σ_j (-1)^j C(n,j) ζ(b-n+j, a-j), canonicalized so that no
/// non-positive second arguments survive. Z(a,b,c) = Σ α^-a β^-b (α+β)^-c.
pub fn z_reduce(a: u32, n: u32, b: u32) -> Result<SymbolicZetaCombo, ExactError> {
    if (a as i64) + (b as i64) - (n as i64) <= 2 {
        return Err(ExactError::Domain(format!(
            "Z({a},-{n},{b}) diverges: need a + b - n > 2"
        )));
    }
    let mut combo = SymbolicZetaCombo::zero();
    for j in 0..=n {
        let first = b as i64 - n as i64 + j as i64;
        if first < 2 {
            return Err(ExactError::Domain(format!(
                "Z({a},-{n},{b}): term zeta({first}, {}) out of range",
                a as i64 - j as i64
            )));
        }
        let sign = if j % 2 == 0 { 1 } else { -1 };
        let c = Rational::from(binomial(n as i64, j as i64)) * Rational::from(sign);
        combo.push(
            ZetaSymbol::DoubleZeta(first as u32, a as i32 - j as i32, 0),
            c,
        );
    }
    combo.canonicalize()
}

/// Numerically checks Euler's double-shuffle family
/// Σ_{r=2}^{k-1} [C(r-1,j-1) + C(r-1,k-j-1)] ζ(r, k-r) = ζ(j) ζ(k-j)
/// within the combined certified error bounds.
pub fn euler_double_shuffle_check(j: u32, k: u32, prec: u32) -> bool {
    assert!(2 <= j && j <= k - 2);
    let mut lhs = Real::zero(prec);
    for r in 2..=(k - 1) {
        let c = Rational::from(binomial(r as i64 - 1, j as i64 - 1))
            + Rational::from(binomial(r as i64 - 1, (k - j) as i64 - 1));
        if c == 0 {
            continue;
        }
        lhs = lhs.add(&double_zeta_numeric(r, k - r, prec).mul_rat(&c));
    }
    let rhs = zeta_numeric(j, prec).mul(&zeta_numeric(k - j, prec));
    lhs.consistent_with(&rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat_int;
    use crate::highprec::bits_for_digits;

    #[test]
    fn reduce_zeta_b0() {
        let c = double_zeta_reduce_negative(10, 0).unwrap();
        let mut expect = SymbolicZetaCombo::zero();
        expect.push(ZetaSymbol::SingleZeta(9, 0), rat_int(1));
        expect.push(ZetaSymbol::SingleZeta(10, 0), rat_int(-1));
        assert_eq!(c, expect);
    }

    #[test]
    fn reduce_zeta_10_minus1() {
        // ζ(10,-1) = (1/2)[B_0 ζ(8) + 2 B_1 ζ(9)] = ζ(8)/2 - ζ(9)/2,
        // matching the direct evaluation Σ (m-1)m/2 · m^-10.
        let c = double_zeta_reduce_negative(10, 1).unwrap();
        let mut expect = SymbolicZetaCombo::zero();
        expect.push(ZetaSymbol::SingleZeta(8, 0), rat(1, 2));
        expect.push(ZetaSymbol::SingleZeta(9, 0), rat(-1, 2));
        assert_eq!(c, expect);
    }

    #[test]
    fn reduce_zeta_8_minus2() {
        // (1/3)[ζ(5) + 3 B_1 ζ(6) + 3 B_2 ζ(7)]
        let c = double_zeta_reduce_negative(8, 2).unwrap();
        let mut expect = SymbolicZetaCombo::zero();
        expect.push(ZetaSymbol::SingleZeta(5, 0), rat(1, 3));
        expect.push(ZetaSymbol::SingleZeta(6, 0), rat(-1, 2));
        expect.push(ZetaSymbol::SingleZeta(7, 0), rat(1, 6));
        assert_eq!(c, expect);
        assert!(double_zeta_reduce_negative(4, 2).is_err());
    }

    // Numeric cross-check of the reduction against the brute double sum
    // Σ_{n<m} n^a / m^b.
    #[test]
    fn reduction_matches_brute_sum() {
        let prec = bits_for_digits(30);
        for (b, a) in [(10u32, 1u32), (8, 2), (9, 3)] {
            let combo = double_zeta_reduce_negative(b, a).unwrap();
            let fast = combo.eval(prec).to_f64();
            let mut brute = 0f64;
            for m in 2..4000u64 {
                let mut inner = 0f64;
                for n in 1..m {
                    inner += (n as f64).powi(a as i32);
                }
                brute += inner / (m as f64).powi(b as i32);
            }
            assert!((fast - brute).abs() < 1e-6, "({b},-{a}): {fast} vs {brute}");
        }
    }

    #[test]
    fn z_reduce_collapses_at_zero() {
        let c = z_reduce(4, 0, 6).unwrap();
        let mut expect = SymbolicZetaCombo::zero();
        expect.push(ZetaSymbol::DoubleZeta(6, 4, 0), rat_int(1));
        assert_eq!(c, expect);
    }

    #[test]
    fn z_reduce_examples() {
        // Z(4,-1,6) = ζ(5,4) - ζ(6,3)
        let c = z_reduce(4, 1, 6).unwrap();
        let mut expect = SymbolicZetaCombo::zero();
        expect.push(ZetaSymbol::DoubleZeta(5, 4, 0), rat_int(1));
        expect.push(ZetaSymbol::DoubleZeta(6, 3, 0), rat_int(-1));
        assert_eq!(c, expect);
        // Z(2,-2,8) = ζ(6,2) - 2ζ(7,1) + ζ(8,0) with ζ(8,0) -> ζ(7) - ζ(8)
        let c = z_reduce(2, 2, 8).unwrap();
        let mut expect = SymbolicZetaCombo::zero();
        expect.push(ZetaSymbol::DoubleZeta(6, 2, 0), rat_int(1));
        expect.push(ZetaSymbol::DoubleZeta(7, 1, 0), rat_int(-2));
        expect.push(ZetaSymbol::SingleZeta(7, 0), rat_int(1));
        expect.push(ZetaSymbol::SingleZeta(8, 0), rat_int(-1));
        assert_eq!(c, expect);
    }

    // Z(a,-n,b) against the brute triple sum Σ α^-a β^n (α+β)^-b.
    #[test]
    fn z_reduce_matches_brute_sum() {
        let prec = bits_for_digits(30);
        for (a, n, b) in [(4u32, 1u32, 6u32), (2, 2, 8)] {
            let fast = z_reduce(a, n, b).unwrap().eval(prec).to_f64();
            let mut brute = 0f64;
            for alpha in 1..1500u64 {
                for beta in 1..1500u64 {
                    brute += (beta as f64).powi(n as i32)
                        / (alpha as f64).powi(a as i32)
                        / ((alpha + beta) as f64).powi(b as i32);
                }
            }
            assert!((fast - brute).abs() < 1e-4, "Z({a},-{n},{b}): {fast} vs {brute}");
        }
    }

    // Canonicalization preserves the numeric value.
    #[test]
    fn canonicalize_is_value_preserving() {
        let prec = bits_for_digits(40);
        let mut combo = SymbolicZetaCombo::zero();
        combo.push(ZetaSymbol::DoubleZeta(9, -2, 4), rat(3, 7));
        combo.push(ZetaSymbol::DoubleZeta(8, 0, 4), rat(-2, 5));
        combo.push(ZetaSymbol::SingleZeta(5, 2), rat_int(11));
        combo.push(ZetaSymbol::One, rat(1, 3));
        let canon = combo.canonicalize().unwrap();
        for (s, _) in canon.terms() {
            if let ZetaSymbol::DoubleZeta(_, b, _) = s {
                assert!(*b >= 1);
            }
        }
        assert!(combo.eval(prec).consistent_with(&canon.eval(prec)));
    }

    #[test]
    fn two_pi_shift_round_trip() {
        let prec = bits_for_digits(40);
        let mut combo = SymbolicZetaCombo::zero();
        combo.push(ZetaSymbol::SingleZeta(3, 0), rat_int(2));
        combo.push(ZetaSymbol::One, rat(1, 2));
        combo.push(ZetaSymbol::PiSquared, rat_int(1));
        let shifted = combo.shift_two_pi(4);
        let back = shifted.shift_two_pi(-4);
        assert!(combo.eval(prec).consistent_with(&back.eval(prec)));
        let direct = combo.eval(prec).mul(&Real::pi(prec).mul_i64(2).pow_i64(4));
        assert!(direct.consistent_with(&shifted.eval(prec)));
    }

    // Stuffle: ζ(a)ζ(b) = ζ(a,b) + ζ(b,a) + ζ(a+b).
    #[test]
    fn stuffle_identity() {
        let prec = bits_for_digits(45);
        for (a, b) in [(2u32, 2u32), (2, 3), (3, 3), (4, 2)] {
            let lhs = zeta_numeric(a, prec).mul(&zeta_numeric(b, prec));
            let rhs = double_zeta_numeric(a, b, prec)
                .add(&double_zeta_numeric(b, a, prec))
                .add(&zeta_numeric(a + b, prec));
            assert!(lhs.consistent_with(&rhs), "stuffle ({a},{b})");
        }
    }

    // ζ(2)^2 = 5/2 ζ(4) via the double-shuffle check, and more of the family.
    #[test]
    fn euler_double_shuffle_family() {
        let prec = bits_for_digits(40);
        assert!(euler_double_shuffle_check(2, 4, prec));
        assert!(euler_double_shuffle_check(2, 6, prec));
        assert!(euler_double_shuffle_check(3, 7, prec));
        for k in 4..=10u32 {
            for j in 2..=(k - 2) {
                assert!(euler_double_shuffle_check(j, k, prec), "(j,k)=({j},{k})");
            }
        }
    }

    #[test]
    fn combo_json_is_ordered() {
        let mut combo = SymbolicZetaCombo::zero();
        combo.push(ZetaSymbol::SingleZeta(9, 2), rat_int(5));
        combo.push(ZetaSymbol::One, rat_int(1));
        combo.push(ZetaSymbol::DoubleZeta(4, 2, 0), rat(-7, 3));
        let j = combo.to_json();
        let arr = j.as_array().unwrap();
        assert_eq!(arr.len(), 3);
        assert_eq!(arr[0]["symbol"], "1");
        // weights: 0 < 6 (=4+2) < 7 (=9-2)
        assert_eq!(arr[1]["symbol"], "zeta(4,2)");
        assert_eq!(arr[2]["symbol"], "zeta(9)");
        assert_eq!(arr[2]["two_pi_power"], 2);
    }
}
