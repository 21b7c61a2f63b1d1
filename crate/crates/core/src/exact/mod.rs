//! Exact rational arithmetic: Bernoulli numbers and polynomials, Gaussian
//! rationals, and truncated formal power series in one and two variables.
//!
//! Everything here is the exact substrate for the closed formulas elsewhere
//! in the crate; no floating point enters.

mod series;

pub use series::{PowerSeries1, PowerSeries2};

use rug::ops::Pow;
use rug::{Integer, Rational};
use std::fmt;
use std::sync::RwLock;

/// Exact rational scalar, always in lowest terms with positive denominator
/// (both invariants are maintained by `rug`).
pub type Rat = Rational;

/// `n!` as a big integer.
pub fn factorial(n: u32) -> Integer {
    Integer::factorial(n).into()
}

/// Binomial coefficient `C(n, k)`, zero when `k > n` or `k < 0`.
pub fn binomial(n: i64, k: i64) -> Integer {
    if k < 0 || k > n || n < 0 {
        return Integer::new();
    }
    Integer::from(n).binomial(k as u32)
}

/// Shorthand for building a rational from an integer pair.
pub fn rat(num: i64, den: i64) -> Rat {
    assert!(den != 0, "zero denominator");
    Rational::from((num, den))
}

pub fn rat_int(n: i64) -> Rat {
    Rational::from(n)
}

static BERNOULLI: RwLock<Vec<Rational>> = RwLock::new(Vec::new());

/// `B_n`, from the generating series t/(e^t - 1) = Σ B_n t^n / n!.
///
/// Computed by exact series division of 1 by (e^t - 1)/t and memoized; the
/// cache only ever grows and is safe for concurrent readers.
pub fn bernoulli_number(n: u32) -> Rat {
    {
        let cache = BERNOULLI.read().unwrap();
        if (n as usize) < cache.len() {
            return cache[n as usize].clone();
        }
    }
    let mut cache = BERNOULLI.write().unwrap();
    // b_m = B_m / m! are the coefficients of the reciprocal series of
    // (e^t - 1)/t = Σ t^m/(m+1)!, so b_0 = 1 and
    // b_m = -Σ_{j<m} b_j / (m-j+1)!.
    let mut scaled: Vec<Rational> = cache
        .iter()
        .enumerate()
        .map(|(m, b)| Rational::from(b / &Rational::from(factorial(m as u32))))
        .collect();
    if scaled.is_empty() {
        scaled.push(Rational::from(1));
        cache.push(Rational::from(1));
    }
    for m in cache.len()..=(n as usize) {
        let mut acc = Rational::new();
        for (j, b) in scaled.iter().enumerate() {
            acc += Rational::from(b / &Rational::from(factorial((m - j + 1) as u32)));
        }
        let bm = -acc;
        cache.push(Rational::from(&bm * &Rational::from(factorial(m as u32))));
        scaled.push(bm);
    }
    cache[n as usize].clone()
}

/// `B_n(X) = Σ_α C(n,α) B_{n-α} X^α` as an exact polynomial of degree `n`.
pub fn bernoulli_polynomial(n: u32) -> PowerSeries1 {
    let mut coeffs = Vec::with_capacity(n as usize + 1);
    for alpha in 0..=n {
        let c = Rational::from(binomial(n as i64, alpha as i64)) * bernoulli_number(n - alpha);
        coeffs.push(c);
    }
    PowerSeries1::from_coeffs(coeffs)
}

/// `B^0_n(X) = B_n(X) - B_1 X^{n-1}`, the variant with the degree-(n-1)
/// term removed that enters the Kohnen–Zagier period polynomials.
pub fn bernoulli_polynomial_b0(n: u32) -> PowerSeries1 {
    assert!(n >= 1);
    let mut p = bernoulli_polynomial(n);
    let idx = (n - 1) as usize;
    let adj = p.coeff(idx) - bernoulli_number(1);
    p.set_coeff(idx, adj);
    p
}

/// Exact value of ζ(2n)/(2π)^{2n} = (-1)^{n-1} B_{2n} / (2 (2n)!).
///
/// The argument is the even integer `2n ≥ 2` itself.
pub fn zeta_even_over_2pi(arg: u32) -> Result<Rat, ExactError> {
    if arg < 2 || arg % 2 != 0 {
        return Err(ExactError::Domain(format!(
            "zeta_even_over_2pi needs an even argument >= 2, got {arg}"
        )));
    }
    let n = arg / 2;
    let sign = if n % 2 == 1 { 1 } else { -1 };
    let mut v = bernoulli_number(arg);
    v *= Rational::from((sign, 2));
    v /= Rational::from(factorial(arg));
    Ok(v)
}

/// ζ(m)/(2π)^m for any even integer m, extended by ζ(0) = -1/2 and by the
/// trivial zeros ζ(-2l) = 0. Used by the closed formulas that meet ζ at
/// non-positive even points.
pub fn zeta_even_over_2pi_ext(arg: i64) -> Rat {
    assert!(arg % 2 == 0, "argument must be even, got {arg}");
    if arg >= 2 {
        zeta_even_over_2pi(arg as u32).unwrap()
    } else if arg == 0 {
        rat(-1, 2)
    } else {
        Rational::new()
    }
}

/// `Σ_{k=1}^{n-1} k^m`, by the Bernoulli closed form
/// (1/(m+1)) Σ_α C(m+1,α) B_α n^{m+1-α} for m ≥ 1, and n-1 for m = 0.
pub fn sum_of_powers(m: u32, n: u64) -> Rat {
    assert!(n >= 1);
    if m == 0 {
        return Rational::from(n - 1);
    }
    let nn = Integer::from(n);
    let mut acc = Rational::new();
    for alpha in 0..=m {
        let mut term = Rational::from(binomial((m + 1) as i64, alpha as i64));
        term *= bernoulli_number(alpha);
        term *= Rational::from(nn.clone().pow(m + 1 - alpha));
        acc += term;
    }
    acc / Rational::from(m + 1)
}

/// Error type for the exact layer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExactError {
    Domain(String),
}

impl fmt::Display for ExactError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExactError::Domain(msg) => write!(f, "domain error: {msg}"),
        }
    }
}

impl std::error::Error for ExactError {}

/// Gaussian rational a + bi with exact components.
///
/// The closed formulas of the theory produce coefficients in Q(i); keeping
/// the two components exact avoids every sign/i-power transcription risk.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaussRat {
    pub re: Rat,
    pub im: Rat,
}

impl GaussRat {
    pub fn zero() -> Self {
        GaussRat {
            re: Rational::new(),
            im: Rational::new(),
        }
    }

    pub fn one() -> Self {
        GaussRat {
            re: Rational::from(1),
            im: Rational::new(),
        }
    }

    pub fn from_rat(re: Rat) -> Self {
        GaussRat {
            re,
            im: Rational::new(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rat(Rational::from(n))
    }

    /// i^k for any integer k (negative allowed).
    pub fn i_pow(k: i64) -> Self {
        match k.rem_euclid(4) {
            0 => GaussRat::one(),
            1 => GaussRat {
                re: Rational::new(),
                im: Rational::from(1),
            },
            2 => GaussRat {
                re: Rational::from(-1),
                im: Rational::new(),
            },
            _ => GaussRat {
                re: Rational::new(),
                im: Rational::from(-1),
            },
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re == 0 && self.im == 0
    }

    pub fn is_real(&self) -> bool {
        self.im == 0
    }

    pub fn conj(&self) -> Self {
        GaussRat {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        GaussRat {
            re: Rational::from(&self.re + &other.re),
            im: Rational::from(&self.im + &other.im),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        GaussRat {
            re: Rational::from(&self.re - &other.re),
            im: Rational::from(&self.im - &other.im),
        }
    }

    pub fn neg(&self) -> Self {
        GaussRat {
            re: -self.re.clone(),
            im: -self.im.clone(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let re = Rational::from(&self.re * &other.re) - Rational::from(&self.im * &other.im);
        let im = Rational::from(&self.re * &other.im) + Rational::from(&self.im * &other.re);
        GaussRat { re, im }
    }

    pub fn mul_rat(&self, r: &Rat) -> Self {
        GaussRat {
            re: Rational::from(&self.re * r),
            im: Rational::from(&self.im * r),
        }
    }

    pub fn div(&self, other: &Self) -> Self {
        let norm = Rational::from(&other.re * &other.re) + Rational::from(&other.im * &other.im);
        assert!(norm != 0, "division by zero Gaussian rational");
        let conj = other.conj();
        let num = self.mul(&conj);
        GaussRat {
            re: num.re / norm.clone(),
            im: num.im / norm,
        }
    }
}

impl fmt::Display for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im == 0 {
            write!(f, "{}", self.re)
        } else if self.re == 0 {
            write!(f, "{}*i", self.im)
        } else {
            write!(f, "{} + {}*i", self.re, self.im)
        }
    }
}
