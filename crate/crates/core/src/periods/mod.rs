//! Length-1 period theory: period polynomials (cusp and extended), Manin
//! relations, the W_k spaces, the Petersson product from periods, the
//! Kohnen–Zagier closed formula and the Hecke action.

mod hecke;
mod kz;
mod wk;

pub use hecke::{hecke_action, hecke_matrices_printed, hecke_operator_elements};
pub use kz::{kz_lambda, kz_period_polynomial_parts, KzParity};
pub use wk::{relation_matrix, w_k_basis, RelationMatrix};

use crate::exact::{binomial, factorial, zeta_even_over_2pi, ExactError, GaussRat, Rat};
use crate::highprec::{bits_for_digits, Complex, Real};
use crate::mellin::{lambda_multi, LambdaRequest, MellinError};
use crate::mzv::{SymbolicZetaCombo, ZetaSymbol};
use crate::qseries::FormLabel;
use rug::{Integer, Rational};

/// Numeric period polynomial of weight k: coefficients of X^0..X^{k-2},
/// with optional 1/X and X^{k-1} fringe coefficients for the extended
/// (non-cusp) case.
#[derive(Debug, Clone)]
pub struct PeriodPolynomial {
    pub weight: u32,
    /// c[m] is the coefficient of X^m, m = 0..k-2.
    pub coeffs: Vec<Complex>,
    /// (coefficient of 1/X, coefficient of X^{k-1})
    pub fringe: Option<(Complex, Complex)>,
}

/// Exact period polynomial with Gaussian-rational coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactPolynomial {
    pub weight: u32,
    pub coeffs: Vec<GaussRat>,
    pub fringe: Option<(GaussRat, GaussRat)>,
}

impl ExactPolynomial {
    pub fn zero(weight: u32) -> Self {
        ExactPolynomial {
            weight,
            coeffs: vec![GaussRat::zero(); (weight - 1) as usize],
            fringe: None,
        }
    }

    pub fn to_numeric(&self, prec: u32) -> PeriodPolynomial {
        PeriodPolynomial {
            weight: self.weight,
            coeffs: self
                .coeffs
                .iter()
                .map(|c| Complex::from_gauss(prec, c))
                .collect(),
            fringe: self
                .fringe
                .as_ref()
                .map(|(a, b)| (Complex::from_gauss(prec, a), Complex::from_gauss(prec, b))),
        }
    }

    /// Even/odd part under X -> -X (fringe terms both flip sign with odd
    /// exponents -1 and k-1).
    pub fn parity_part(&self, even: bool) -> Self {
        let mut out = self.clone();
        for (m, c) in out.coeffs.iter_mut().enumerate() {
            let keep = (m % 2 == 0) == even;
            if !keep {
                *c = GaussRat::zero();
            }
        }
        if let Some((a, b)) = &mut out.fringe {
            if even {
                *a = GaussRat::zero();
                *b = GaussRat::zero();
            }
        }
        if out.fringe.as_ref().is_some_and(|(a, b)| a.is_zero() && b.is_zero()) {
            out.fringe = None;
        }
        out
    }

    pub fn scale(&self, c: &GaussRat) -> Self {
        ExactPolynomial {
            weight: self.weight,
            coeffs: self.coeffs.iter().map(|x| x.mul(c)).collect(),
            fringe: self
                .fringe
                .as_ref()
                .map(|(a, b)| (a.mul(c), b.mul(c))),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.weight, other.weight);
        let fringe = match (&self.fringe, &other.fringe) {
            (None, None) => None,
            (a, b) => {
                let (a1, a2) = a.clone().unwrap_or((GaussRat::zero(), GaussRat::zero()));
                let (b1, b2) = b.clone().unwrap_or((GaussRat::zero(), GaussRat::zero()));
                Some((a1.sub(&b1), a2.sub(&b2)))
            }
        };
        ExactPolynomial {
            weight: self.weight,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.sub(b))
                .collect(),
            fringe,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
            && self
                .fringe
                .as_ref()
                .map_or(true, |(a, b)| a.is_zero() && b.is_zero())
    }
}

/// Slash action |_{2-k} γ on C_{k-2}[X] for an integer matrix γ = [a,b;c,d]
/// with positive determinant (no determinant normalization):
/// (P|γ)(X) = (cX+d)^{k-2} P((aX+b)/(cX+d)).
///
/// On the monomial X^m this is (aX+b)^m (cX+d)^{k-2-m}; the function
/// returns the integer matrix of the action on coefficient vectors.
pub fn slash_matrix(weight: u32, g: [i64; 4]) -> Vec<Vec<Integer>> {
    let w = (weight - 2) as usize;
    let [a, b, c, d] = g;
    let mut cols = Vec::with_capacity(w + 1);
    for m in 0..=w {
        // (aX+b)^m (cX+d)^{w-m}
        let mut poly = vec![Integer::new(); w + 1];
        for i in 0..=m {
            let c1 = binomial(m as i64, i as i64)
                * Integer::from(a).pow(i as u32)
                * Integer::from(b).pow((m - i) as u32);
            for j in 0..=(w - m) {
                let c2 = binomial((w - m) as i64, j as i64)
                    * Integer::from(c).pow(j as u32)
                    * Integer::from(d).pow((w - m - j) as u32);
                poly[i + j] += c1.clone() * c2;
            }
        }
        cols.push(poly);
    }
    // transpose into row-major action on coefficient vectors
    let mut rows = vec![vec![Integer::new(); w + 1]; w + 1];
    for (m, col) in cols.iter().enumerate() {
        for (i, v) in col.iter().enumerate() {
            rows[i][m] = v.clone();
        }
    }
    rows
}

use rug::ops::Pow as _;

/// Apply the slash matrix to exact coefficients.
pub fn slash_exact(p: &[GaussRat], weight: u32, g: [i64; 4]) -> Vec<GaussRat> {
    let m = slash_matrix(weight, g);
    let n = p.len();
    let mut out = vec![GaussRat::zero(); n];
    for (i, row) in m.iter().enumerate() {
        for (j, c) in row.iter().enumerate() {
            if *c == 0 {
                continue;
            }
            out[i] = out[i].add(&p[j].mul_rat(&Rational::from(c)));
        }
    }
    out
}

/// Apply the slash matrix to numeric coefficients.
pub fn slash_numeric(p: &[Complex], weight: u32, g: [i64; 4]) -> Vec<Complex> {
    let m = slash_matrix(weight, g);
    let prec = p[0].prec();
    let n = p.len();
    let mut out = vec![Complex::zero(prec); n];
    for (i, row) in m.iter().enumerate() {
        for (j, c) in row.iter().enumerate() {
            if *c == 0 {
                continue;
            }
            out[i] = out[i].add(&p[j].mul_rat(&Rational::from(c)));
        }
    }
    out
}

pub const MAT_S: [i64; 4] = [0, -1, 1, 0];
pub const MAT_T: [i64; 4] = [1, 1, 0, 1];
pub const MAT_T_INV: [i64; 4] = [1, -1, 0, 1];
pub const MAT_U: [i64; 4] = [0, 1, -1, 1];
pub const MAT_U2: [i64; 4] = [-1, 1, -1, 0];

/// Numeric period polynomial of a cusp form, in the real-measure
/// normalization P_f(X) = ∫_0^∞ f(it)(X-it)^{k-2} dt, i.e. the coefficient
/// of X^{k-1-m} is C(k-2,m-1) i^{1-m} Λ(f; m).
pub fn period_polynomial(f: &FormLabel, digits: u32) -> Result<PeriodPolynomial, MellinError> {
    let k = f.weight();
    let prec = bits_for_digits(digits);
    let mut coeffs = vec![Complex::zero(prec + 32); (k - 1) as usize];
    let extended = !f.is_cuspidal();
    let mut fringe = None;
    for m in 1..=(k - 1) as i64 {
        let lam = lambda_multi(&LambdaRequest::new(vec![f.clone()], vec![m], digits))?;
        let c = lam
            .mul(&Complex::i_pow(lam.prec(), 1 - m))
            .mul_rat(&Rational::from(binomial(k as i64 - 2, m - 1)));
        coeffs[(k as i64 - 1 - m) as usize] = c;
    }
    if extended {
        // fringe terms a_0/((k-1)X) and a_0 X^{k-1}/(k-1) in the extended
        // normalization; converted to the real-measure normalization by the
        // same -i factor as the polynomial part
        let prec = prec + 32;
        let a0 = f
            .transcendental_scalar(prec)
            .mul_rat(&f.rational_scalar())
            .mul_rat(&f.expansion(1)?.a0());
        let c = Complex::from_real(a0.mul_rat(&(Rational::from(1) / Rational::from(k - 1))))
            .mul(&Complex::i_pow(prec, -1));
        fringe = Some((c.clone(), c));
    }
    Ok(PeriodPolynomial {
        weight: k,
        coeffs,
        fringe,
    })
}

/// Exact extended period polynomial of E_k, in the same real-measure
/// normalization as [`period_polynomial`] (so the two can be compared
/// directly). Coefficients are pairs (real combo, imaginary combo).
///
/// The underlying closed form, in the ∫dz normalization, is
/// P_{E_k}(X) = -(2iπ)^k/(k-1) Σ_{n=0}^{k} B_n/n! · B_{k-n}/(k-n)! X^{n-1}
///              - 2iπ ζ(k-1)(1 - X^{k-2}),
/// and the real-measure version divides by i.
#[derive(Debug, Clone)]
pub struct ExactSymbolicPolynomial {
    pub weight: u32,
    /// (re, im) combos for X^0..X^{k-2}
    pub coeffs: Vec<(SymbolicZetaCombo, SymbolicZetaCombo)>,
    pub fringe: Option<((SymbolicZetaCombo, SymbolicZetaCombo), (SymbolicZetaCombo, SymbolicZetaCombo))>,
}

impl ExactSymbolicPolynomial {
    pub fn to_numeric(&self, prec: u32) -> PeriodPolynomial {
        let conv = |(re, im): &(SymbolicZetaCombo, SymbolicZetaCombo)| {
            Complex::new(re.eval(prec), im.eval(prec))
        };
        PeriodPolynomial {
            weight: self.weight,
            coeffs: self.coeffs.iter().map(conv).collect(),
            fringe: self.fringe.as_ref().map(|(a, b)| (conv(a), conv(b))),
        }
    }
}

pub fn eisenstein_period_polynomial_exact(k: u32) -> Result<ExactSymbolicPolynomial, ExactError> {
    if k % 2 != 0 || k < 4 {
        return Err(ExactError::Domain(format!("bad Eisenstein weight {k}")));
    }
    let zero = || (SymbolicZetaCombo::zero(), SymbolicZetaCombo::zero());
    let mut coeffs = vec![zero(); (k - 1) as usize];
    // -(2iπ)^k/(k-1) · B_n B_{k-n}/(n!(k-n)!) on X^{n-1}, divided by i:
    // (2iπ)^k = i^k (2π)^k is real, so /i contributes -i: the Bernoulli block
    // lands in the imaginary part with coefficient +i^k (2π)^k (…).
    let ik = if k % 4 == 0 { 1 } else { -1 };
    let mut bern = |n: u32| -> Rat {
        crate::exact::bernoulli_number(n) / Rational::from(factorial(n))
            * (crate::exact::bernoulli_number(k - n) / Rational::from(factorial(k - n)))
    };
    let mut fringe_lo = zero();
    let mut fringe_hi = zero();
    for n in (0..=k).step_by(2) {
        let c = Rational::from(ik) * bern(n) / Rational::from(k - 1);
        if c == 0 {
            continue;
        }
        let combo = SymbolicZetaCombo::from_symbol(ZetaSymbol::TwoPiPow(k as i32), c);
        if n == 0 {
            fringe_lo.1 = fringe_lo.1.add(&combo);
        } else if n == k {
            fringe_hi.1 = fringe_hi.1.add(&combo);
        } else {
            coeffs[(n - 1) as usize].1 = coeffs[(n - 1) as usize].1.add(&combo);
        }
    }
    // -2iπ ζ(k-1) (1 - X^{k-2}) divided by i = -2π ζ(k-1)(1 - X^{k-2}): real.
    let zc = SymbolicZetaCombo::from_symbol(ZetaSymbol::SingleZeta(k - 1, -1), Rational::from(-1));
    coeffs[0].0 = coeffs[0].0.add(&zc);
    coeffs[(k - 2) as usize].0 = coeffs[(k - 2) as usize].0.sub(&zc);
    Ok(ExactSymbolicPolynomial {
        weight: k,
        coeffs,
        fringe: Some((fringe_lo, fringe_hi)),
    })
}

/// Max-norm residuals of P|_{1+S} and P|_{1+U+U²} for a numeric polynomial.
///
/// Extended polynomials (with fringe terms) are checked by evaluating the
/// relation as a rational function at fixed sample points, since the fringe
/// monomials leave C_{k-2}[X] under U.
pub fn manin_check(p: &PeriodPolynomial) -> (f64, f64) {
    match &p.fringe {
        None => {
            let s_res = residual_poly(&p.coeffs, p.weight, &[([1, 0, 0, 1], 1), (MAT_S, 1)]);
            let u_res = residual_poly(
                &p.coeffs,
                p.weight,
                &[([1, 0, 0, 1], 1), (MAT_U, 1), (MAT_U2, 1)],
            );
            (s_res, u_res)
        }
        Some(_) => {
            let s_res = residual_sampled(p, &[([1, 0, 0, 1], 1), (MAT_S, 1)]);
            let u_res = residual_sampled(p, &[([1, 0, 0, 1], 1), (MAT_U, 1), (MAT_U2, 1)]);
            (s_res, u_res)
        }
    }
}

fn residual_poly(coeffs: &[Complex], weight: u32, word: &[([i64; 4], i64)]) -> f64 {
    let prec = coeffs[0].prec();
    let mut acc = vec![Complex::zero(prec); coeffs.len()];
    for (g, mult) in word {
        let t = slash_numeric(coeffs, weight, *g);
        for (a, b) in acc.iter_mut().zip(&t) {
            *a = a.add(&b.mul_i64(*mult));
        }
    }
    acc.iter().map(|c| c.abs_upper()).fold(0.0, f64::max)
}

/// Evaluate P (with fringe) at a rational point x.
fn eval_extended(p: &PeriodPolynomial, num: i64, den: i64) -> Complex {
    let prec = p.coeffs[0].prec();
    let x = Real::from_rat(prec, &Rational::from((num, den)));
    let mut acc = Complex::zero(prec);
    let mut xp = Real::from_i64(prec, 1);
    for c in &p.coeffs {
        acc = acc.add(&c.mul_real(&xp));
        xp = xp.mul(&x);
    }
    if let Some((lo, hi)) = &p.fringe {
        acc = acc.add(&lo.mul_real(&x.recip()));
        let xk1 = x.pow_i64(p.weight as i64 - 1);
        acc = acc.add(&hi.mul_real(&xk1));
    }
    acc
}

fn residual_sampled(p: &PeriodPolynomial, word: &[([i64; 4], i64)]) -> f64 {
    // sample points x = num/7 avoiding poles of the γ·x images
    let prec = p.coeffs[0].prec();
    let mut worst = 0f64;
    let samples: Vec<(i64, i64)> = (1..=(3 * p.weight as i64 + 6)).map(|i| (2 * i + 1, 7)).collect();
    for (num, den) in samples {
        let mut acc = Complex::zero(prec);
        for ([a, b, c, d], mult) in word {
            // (P|γ)(x) = (c x + d)^{k-2} P(γx)
            let gx_num = a * num + b * den;
            let gx_den = c * num + d * den;
            assert!(gx_den != 0, "sample hit a pole");
            let factor = Real::from_rat(prec, &Rational::from((c * num + d * den, den)))
                .pow_i64(p.weight as i64 - 2);
            // P(γx) via exact rational argument
            let val = eval_extended_rat(p, gx_num, gx_den);
            acc = acc.add(&val.mul_real(&factor).mul_i64(*mult));
        }
        worst = worst.max(acc.abs_upper());
    }
    worst
}

fn eval_extended_rat(p: &PeriodPolynomial, num: i64, den: i64) -> Complex {
    assert!(num != 0, "extended polynomial evaluated at 0");
    eval_extended(p, num, den)
}

/// The bilinear pairing on V_k: [X^m, X^n] = δ_{m+n,k-2} (-1)^n / C(k-2, m).
pub fn pair_monomials(weight: u32, m: usize, n: usize) -> Rat {
    let w = (weight - 2) as usize;
    if m + n != w {
        return Rational::new();
    }
    let sign = if n % 2 == 0 { 1 } else { -1 };
    Rational::from(sign) / Rational::from(binomial(w as i64, m as i64))
}

/// [P, Q] for numeric coefficient vectors.
pub fn pairing(p: &[Complex], q: &[Complex], weight: u32) -> Complex {
    let prec = p[0].prec();
    let w = (weight - 2) as usize;
    let mut acc = Complex::zero(prec);
    for m in 0..=w {
        let c = pair_monomials(weight, m, w - m);
        if c == 0 {
            continue;
        }
        acc = acc.add(&p[m].mul(&q[w - m]).mul_rat(&c));
    }
    acc
}

/// [P, Q] for exact coefficient vectors.
pub fn pairing_exact(p: &[GaussRat], q: &[GaussRat], weight: u32) -> GaussRat {
    let w = (weight - 2) as usize;
    let mut acc = GaussRat::zero();
    for m in 0..=w {
        let c = pair_monomials(weight, m, w - m);
        if c == 0 {
            continue;
        }
        acc = acc.add(&p[m].mul(&q[w - m]).mul_rat(&c));
    }
    acc
}

/// Petersson product from periods:
/// ⟨f,g⟩ = (1/(6 (2i)^{k-1})) [P_f|_{T-T^{-1}}, conj(P_g)].
///
/// The i-rescaling freedom of the period polynomials cancels between the
/// bilinear pairing and the conjugation, so the real-measure normalization
/// used by [`period_polynomial`] can be fed in directly.
pub fn petersson_from_periods(
    pf: &PeriodPolynomial,
    pg: &PeriodPolynomial,
) -> Result<Complex, ExactError> {
    if pf.weight != pg.weight {
        return Err(ExactError::Domain(format!(
            "weight mismatch {} vs {}",
            pf.weight, pg.weight
        )));
    }
    let k = pf.weight;
    let prec = pf.coeffs[0].prec();
    let t = slash_numeric(&pf.coeffs, k, MAT_T);
    let tinv = slash_numeric(&pf.coeffs, k, MAT_T_INV);
    let diff: Vec<Complex> = t.iter().zip(&tinv).map(|(a, b)| a.sub(b)).collect();
    let qbar: Vec<Complex> = pg.coeffs.iter().map(|c| c.conj()).collect();
    let paired = pairing(&diff, &qbar, k);
    // 1/(6 (2i)^{k-1}) = i^{1-k} / (6 · 2^{k-1})
    let scale = Complex::i_pow(prec, 1 - k as i64)
        .mul_rat(&(Rational::from(1) / (Rational::from(6) * Rational::from(Integer::from(1) << (k - 1)))));
    Ok(paired.mul(&scale))
}
