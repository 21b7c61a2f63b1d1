//! Iterated Mellin transforms Λ(f_1,…,f_n; m_1,…,m_n) at integer points.
//!
//! The integral over the simplex {0 < t_1 < … < t_n} is split at T = 1 into
//! Λ = Σ_j i^{k_1+…+k_j} Λ₁(f_j,…,f_1; k_j-s_j,…,k_1-s_1) Λ₁(f_{j+1},…,f_n; s_{j+1},…),
//! and each Λ₁ (the integral over {1 < t_1 < … < t_m}) is evaluated by exact
//! closed-form nested integration of q-expansion terms:
//! ∫_x^∞ t^p e^{-at} dt = e^{-ax} Σ_{i≤p} (p!/i!) x^i a^{i-p-1}.
//! Non-cusp forms enter through their épointée f* = f - a_0(1 + z^{-k}),
//! whose extra t^{-k} component meets the exponential factors of inner
//! levels in generalized exponential integrals E_q at the last level.
//!
//! Truncation of the q-expansion lattice is certified: a second pass with
//! absolute values plus a one-component exponential majorant of each tail
//! (Σ_{l>N} |a_l| e^{-2πlt} ≤ H_N e^{2π(N+1)} e^{-2π(N+1)t} for t ≥ 1)
//! bounds the discarded part, and the bound is folded into the error radius.

use crate::exact::{binomial, factorial, zeta_even_over_2pi, ExactError, Rat};
use crate::highprec::{bits_for_digits, exp_integral_e, upper_gamma_any, Complex, Real};
use crate::mzv::{SymbolicZetaCombo, ZetaSymbol};
use crate::qseries::{hecke_tail_bound, truncation_for, FormLabel, QExpansion};
use rug::{Float, Integer, Rational};
use std::collections::HashMap;

/// Errors from the Mellin layer.
#[derive(Debug)]
pub enum MellinError {
    Domain(String),
    Divergent(String),
    InsufficientTruncation { available: usize, required: usize },
}

impl std::fmt::Display for MellinError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            MellinError::Domain(m) => write!(f, "domain error: {m}"),
            MellinError::Divergent(m) => write!(f, "divergent integral: {m}"),
            MellinError::InsufficientTruncation {
                available,
                required,
            } => write!(
                f,
                "insufficient q-expansion truncation: have {available}, need {required}"
            ),
        }
    }
}

impl std::error::Error for MellinError {}

impl From<ExactError> for MellinError {
    fn from(e: ExactError) -> Self {
        MellinError::Domain(e.to_string())
    }
}

/// A request for Λ(f_1,…,f_n; m_1,…,m_n).
#[derive(Debug, Clone)]
pub struct LambdaRequest {
    pub forms: Vec<FormLabel>,
    pub exponents: Vec<i64>,
    /// Non-cusp forms are integrated through their épointée; refusing that
    /// makes non-cusp input an error.
    pub use_epointee: bool,
    pub precision_digits: u32,
}

impl LambdaRequest {
    pub fn new(forms: Vec<FormLabel>, exponents: Vec<i64>, precision_digits: u32) -> Self {
        LambdaRequest {
            forms,
            exponents,
            use_epointee: true,
            precision_digits,
        }
    }
}

/// One multiplicative piece of an integrand: coeff · t^power · e^{-2π·rate·t}.
#[derive(Debug, Clone)]
struct Component {
    coeff: Complex,
    rate: u64,
    power: i64,
}

/// A form prepared for the Λ₁ engine: its component list relative to the
/// stored rational q-expansion, plus the data for the certified tail pass.
#[derive(Debug, Clone)]
pub struct PreparedForm {
    pub weight: u32,
    comps: Vec<Component>,
    /// |coeff| versions of `comps` plus the exponential tail majorant.
    bound_comps: Vec<Component>,
}

/// Laurent polynomial in the pending variable times e^{-2π·rate·x},
/// grouped by rate. `offset` is the exponent of the first coefficient.
#[derive(Debug, Clone)]
struct Group {
    rate: u64,
    offset: i64,
    coeffs: Vec<Complex>,
}

/// Shared evaluation context: working precision and caches for e^{-2πr}
/// and the one-dimensional integrals ∫_1^∞ t^p e^{-2πrt} dt.
pub struct MellinEngine {
    prec: u32,
    two_pi: Real,
    exp_cache: HashMap<u64, Real>,
    j_cache: HashMap<(i64, u64), Real>,
}

impl MellinEngine {
    pub fn new(prec: u32) -> Self {
        MellinEngine {
            prec,
            two_pi: Real::pi(prec).mul_i64(2),
            exp_cache: HashMap::new(),
            j_cache: HashMap::new(),
        }
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    fn exp_neg_2pi(&mut self, r: u64) -> Real {
        if let Some(v) = self.exp_cache.get(&r) {
            return v.clone();
        }
        let v = self.two_pi.mul_i64(-(r as i64)).exp();
        self.exp_cache.insert(r, v.clone());
        v
    }

    /// ∫_1^∞ t^p e^{-2πrt} dt. For r = 0 this needs p ≤ -2; for p < 0 it is
    /// the generalized exponential integral E_{-p}(2πr).
    pub fn j_int(&mut self, p: i64, r: u64) -> Result<Real, MellinError> {
        if let Some(v) = self.j_cache.get(&(p, r)) {
            return Ok(v.clone());
        }
        let v = if r == 0 {
            if p >= -1 {
                return Err(MellinError::Divergent(format!("∫_1^∞ t^{p} dt diverges")));
            }
            Real::from_i64(self.prec, 1).div(&Real::from_i64(self.prec, -1 - p))
        } else if p >= 0 {
            // e^{-2πr} Σ_{i≤p} (p!/i!) (2πr)^{i-p-1}
            let a = self.two_pi.mul_i64(r as i64);
            let mut acc = Real::zero(self.prec);
            let pfac = factorial(p as u32);
            for i in 0..=p {
                let c = Rational::from(&pfac) / Rational::from(factorial(i as u32));
                acc = acc.add(&a.pow_i64(i - p - 1).mul_rat(&c));
            }
            acc.mul(&self.exp_neg_2pi(r))
        } else {
            let x = Float::with_val(
                self.prec,
                self.two_pi.mid() * Float::with_val(self.prec, r),
            );
            exp_integral_e((-p) as u32, &x, self.prec)
        };
        self.j_cache.insert((p, r), v.clone());
        Ok(v)
    }

    /// Apply a component at one level: multiply by coeff·t^{z-1+power}·e^{-2π·rate·t}
    /// and integrate from the next variable to ∞.
    fn step(
        &mut self,
        incoming: &[Group],
        comp: &Component,
        z: i64,
    ) -> Result<Vec<Group>, MellinError> {
        let mut out: Vec<Group> = Vec::new();
        for g in incoming {
            let rate = g.rate + comp.rate;
            for (idx, c) in g.coeffs.iter().enumerate() {
                if c.abs_upper() == 0.0 {
                    continue;
                }
                let q = g.offset + idx as i64 + z - 1 + comp.power;
                let c = c.mul(&comp.coeff);
                if rate == 0 {
                    if q >= -1 {
                        return Err(MellinError::Divergent(format!(
                            "power t^{q} with no exponential damping"
                        )));
                    }
                    push_term(
                        &mut out,
                        0,
                        q + 1,
                        c.mul_real(&Real::from_i64(self.prec, -1 - q).recip()),
                    );
                } else if q >= 0 {
                    let a = self.two_pi.mul_i64(rate as i64);
                    let qfac = factorial(q as u32);
                    for i in 0..=q {
                        let cc = Rational::from(&qfac) / Rational::from(factorial(i as u32));
                        let coeff = c.mul_real(&a.pow_i64(i - q - 1)).mul_rat(&cc);
                        push_term(&mut out, rate, i, coeff);
                    }
                } else {
                    return Err(MellinError::Divergent(format!(
                        "negative power t^{q} against e^(-2π·{rate}·t) at an inner level"
                    )));
                }
            }
        }
        Ok(out)
    }

    /// Final level: apply the component and evaluate the integral from 1.
    fn step_final(
        &mut self,
        incoming: &[Group],
        comp: &Component,
        z: i64,
    ) -> Result<Complex, MellinError> {
        let mut acc = Complex::zero(self.prec);
        for g in incoming {
            let rate = g.rate + comp.rate;
            for (idx, c) in g.coeffs.iter().enumerate() {
                if c.abs_upper() == 0.0 {
                    continue;
                }
                let q = g.offset + idx as i64 + z - 1 + comp.power;
                let c = c.mul(&comp.coeff);
                let j = self.j_int(q, rate)?;
                acc = acc.add(&c.mul_real(&j));
            }
        }
        Ok(acc)
    }

    fn lambda1_pass(
        &mut self,
        forms: &[&PreparedForm],
        z: &[i64],
        majorant: bool,
    ) -> Result<Complex, MellinError> {
        let m = forms.len();
        assert_eq!(z.len(), m);
        if m == 0 {
            return Ok(Complex::from_i64(self.prec, 1));
        }
        let unit = vec![Group {
            rate: 0,
            offset: 0,
            coeffs: vec![Complex::from_i64(self.prec, 1)],
        }];
        self.rec(forms, z, majorant, m - 1, &unit)
    }

    fn rec(
        &mut self,
        forms: &[&PreparedForm],
        z: &[i64],
        majorant: bool,
        level: usize,
        incoming: &[Group],
    ) -> Result<Complex, MellinError> {
        let comps = if majorant {
            forms[level].bound_comps.clone()
        } else {
            forms[level].comps.clone()
        };
        let mut acc = Complex::zero(self.prec);
        for comp in &comps {
            if level == 0 {
                acc = acc.add(&self.step_final(incoming, comp, z[0])?);
            } else {
                let next = self.step(incoming, comp, z[level])?;
                acc = acc.add(&self.rec(forms, z, majorant, level - 1, &next)?);
            }
        }
        Ok(acc)
    }
}

fn push_term(groups: &mut Vec<Group>, rate: u64, power: i64, c: Complex) {
    let prec = c.prec();
    if let Some(g) = groups.iter_mut().find(|g| g.rate == rate) {
        if power < g.offset {
            let pad = (g.offset - power) as usize;
            let mut coeffs = vec![Complex::zero(prec); pad];
            coeffs.extend(g.coeffs.drain(..));
            g.coeffs = coeffs;
            g.offset = power;
        }
        let idx = (power - g.offset) as usize;
        while g.coeffs.len() <= idx {
            g.coeffs.push(Complex::zero(prec));
        }
        g.coeffs[idx] = g.coeffs[idx].add(&c);
    } else {
        groups.push(Group {
            rate,
            offset: power,
            coeffs: vec![c],
        });
    }
}

/// Prepare a form for Λ₁ at the given precision: exponential components up
/// to the certified truncation, the épointée power component when the form
/// is not cuspidal, and the majorant components for the tail pass.
pub fn prepare_form(
    label: &FormLabel,
    prec_bits: u32,
    use_epointee: bool,
) -> Result<PreparedForm, MellinError> {
    let k = label.weight();
    let probe = label.expansion(1)?;
    let n = truncation_for(k, probe.hecke_constant.to_f64().max(1.0), 1.0, prec_bits + 8);
    let exp = label.expansion(n)?;
    prepare_from_expansion(&exp, prec_bits, use_epointee)
}

fn prepare_from_expansion(
    exp: &QExpansion,
    prec_bits: u32,
    use_epointee: bool,
) -> Result<PreparedForm, MellinError> {
    let k = exp.weight;
    let prec = prec_bits + 32;
    let n = truncation_for(k, exp.hecke_constant.to_f64().max(1.0), 1.0, prec_bits + 8);
    if n > exp.truncation() {
        return Err(MellinError::InsufficientTruncation {
            available: exp.truncation(),
            required: n,
        });
    }
    let mut comps = Vec::with_capacity(n + 1);
    let mut bound_comps = Vec::with_capacity(n + 2);
    for l in 1..=n {
        let a = exp.a(l);
        if a == 0 {
            continue;
        }
        comps.push(Component {
            coeff: Complex::from_real(Real::from_rat(prec, &a)),
            rate: l as u64,
            power: 0,
        });
        bound_comps.push(Component {
            coeff: Complex::from_real(Real::from_rat(prec, &a.clone().abs())),
            rate: l as u64,
            power: 0,
        });
    }
    if exp.a0() != 0 {
        if !use_epointee {
            return Err(MellinError::Domain(
                "non-cusp form needs the épointée route".into(),
            ));
        }
        // f*(it) extra component: -a_0 i^{-k} t^{-k}
        let sign = if k % 4 == 0 { 1 } else { -1 };
        let c = -exp.a0() * Rational::from(sign);
        comps.push(Component {
            coeff: Complex::from_real(Real::from_rat(prec, &c)),
            rate: 0,
            power: -(k as i64),
        });
        bound_comps.push(Component {
            coeff: Complex::from_real(Real::from_rat(prec, &c.clone().abs())),
            rate: 0,
            power: -(k as i64),
        });
    }
    // exponential tail majorant
    let h = hecke_tail_bound(k, exp.hecke_constant.to_f64(), 1.0, n);
    let lift = (2.0 * std::f64::consts::PI * (n as f64 + 1.0)).exp();
    let tail_coeff = h * lift;
    if tail_coeff.is_finite() {
        bound_comps.push(Component {
            coeff: Complex::from_real(Real::exact(Float::with_val(64, tail_coeff))),
            rate: n as u64 + 1,
            power: 0,
        });
    } else {
        // ln-space assembly when the crude product overflows f64
        let ln_tail = h.ln() + 2.0 * std::f64::consts::PI * (n as f64 + 1.0);
        let v = Float::with_val(64, ln_tail).exp();
        bound_comps.push(Component {
            coeff: Complex::from_real(Real::exact(v)),
            rate: n as u64 + 1,
            power: 0,
        });
    }
    Ok(PreparedForm {
        weight: k,
        comps,
        bound_comps,
    })
}

/// Λ₁(g_1,…,g_m; z⃗) over {1 < t_1 < … < t_m} with a certified truncation
/// remainder folded into the radius.
pub fn lambda_tail(
    engine: &mut MellinEngine,
    forms: &[&PreparedForm],
    z: &[i64],
) -> Result<Complex, MellinError> {
    for &zj in z {
        if zj < 1 {
            return Err(MellinError::Domain(format!(
                "integer exponents must be >= 1, got {zj}"
            )));
        }
    }
    let value = engine.lambda1_pass(forms, z, false)?;
    // majorant pass at low precision; difference bounds the discarded tail
    let mut bound_engine = MellinEngine::new(96);
    let with_tail = bound_engine.lambda1_pass(forms, z, true)?;
    let without = {
        let stripped: Vec<PreparedForm> = forms
            .iter()
            .map(|f| {
                let mut g = (*f).clone();
                let max_rate = g.comps.iter().map(|c| c.rate).max().unwrap_or(0);
                g.bound_comps.retain(|c| c.rate <= max_rate);
                g
            })
            .collect();
        let refs: Vec<&PreparedForm> = stripped.iter().collect();
        bound_engine.lambda1_pass(&refs, z, true)?
    };
    let rem = (with_tail.re.to_f64() - without.re.to_f64()).abs() * 1.000001
        + with_tail.re.rad()
        + without.re.rad();
    Ok(value.widen(rem))
}

/// Λ(f_1,…,f_n; m⃗) by the split at T = 1.
pub fn lambda_multi(req: &LambdaRequest) -> Result<Complex, MellinError> {
    if req.forms.is_empty() || req.forms.len() != req.exponents.len() {
        return Err(MellinError::Domain(
            "forms/exponents length mismatch".into(),
        ));
    }
    if req.forms.len() > 3 {
        return Err(MellinError::Domain("only n <= 3 is supported".into()));
    }
    if req.precision_digits < 10 || req.precision_digits > crate::highprec::MAX_DIGITS {
        return Err(MellinError::Domain(format!(
            "precision must be between 10 and {} digits",
            crate::highprec::MAX_DIGITS
        )));
    }
    if req.forms.len() == 3 && req.precision_digits > 20 {
        return Err(MellinError::Domain(
            "n = 3 requests are capped at 20 digits".into(),
        ));
    }
    let prec_bits = bits_for_digits(req.precision_digits);
    let prepared: Vec<PreparedForm> = req
        .forms
        .iter()
        .map(|f| prepare_form(f, prec_bits, req.use_epointee))
        .collect::<Result<_, _>>()?;
    let weights: Vec<i64> = req.forms.iter().map(|f| f.weight() as i64).collect();
    for (j, (&s, &k)) in req.exponents.iter().zip(&weights).enumerate() {
        if s < 1 || s > k - 1 {
            return Err(MellinError::Domain(format!(
                "exponent {s} at slot {j} outside the critical strip [1, {}]",
                k - 1
            )));
        }
    }
    let mut engine = MellinEngine::new(prec_bits + 32);
    let value = lambda_multi_with(&mut engine, &prepared, &weights, &req.exponents)?;
    // global scalars (rational multiples and the E_k normalization)
    let mut scalar = Complex::from_i64(engine.prec, 1);
    for f in &req.forms {
        scalar = scalar
            .mul_rat(&f.rational_scalar())
            .mul_real(&f.transcendental_scalar(engine.prec));
    }
    Ok(value.mul(&scalar))
}

/// The T = 1 split for prepared forms (no global scalars applied).
pub fn lambda_multi_with(
    engine: &mut MellinEngine,
    prepared: &[PreparedForm],
    weights: &[i64],
    s: &[i64],
) -> Result<Complex, MellinError> {
    let n = prepared.len();
    let mut total = Complex::zero(engine.prec);
    for j in 0..=n {
        // reversed prefix: (f_j,…,f_1; k_j-s_j,…,k_1-s_1)
        let pre_forms: Vec<&PreparedForm> = (0..j).rev().map(|a| &prepared[a]).collect();
        let pre_z: Vec<i64> = (0..j).rev().map(|a| weights[a] - s[a]).collect();
        let suf_forms: Vec<&PreparedForm> = (j..n).map(|a| &prepared[a]).collect();
        let suf_z: Vec<i64> = (j..n).map(|a| s[a]).collect();
        let left = lambda_tail(engine, &pre_forms, &pre_z)?;
        let right = lambda_tail(engine, &suf_forms, &suf_z)?;
        let ksum: i64 = weights[..j].iter().sum();
        let term = left.mul(&right).mul(&Complex::i_pow(engine.prec, ksum));
        total = total.add(&term);
    }
    Ok(total)
}

/// Exact critical values of the Eisenstein series:
/// Λ(E_k, m) = 4 i^m (m-1)!(k-m-1)!/(k-1)! ζ(m) ζ(k-m) for even critical m,
/// and 0 for odd m.
pub fn lambda_eisenstein_exact(k: u32, m: u32) -> Result<SymbolicZetaCombo, MellinError> {
    if k % 2 != 0 || k < 4 {
        return Err(MellinError::Domain(format!("bad Eisenstein weight {k}")));
    }
    if m < 1 || m > k - 1 {
        return Err(MellinError::Domain(format!(
            "m = {m} outside the critical strip of weight {k}"
        )));
    }
    if m % 2 == 1 {
        return Ok(SymbolicZetaCombo::zero());
    }
    let sign = if m % 4 == 0 { 1 } else { -1 }; // i^m for even m
    let c = Rational::from(4 * sign)
        * Rational::from(factorial(m - 1))
        * Rational::from(factorial(k - m - 1))
        / Rational::from(factorial(k - 1))
        * zeta_even_over_2pi(m)?
        * zeta_even_over_2pi(k - m)?;
    Ok(SymbolicZetaCombo::from_symbol(
        ZetaSymbol::TwoPiPow(k as i32),
        c,
    ))
}

/// L(G_k, s) = ζ(s)ζ(s-k+1), as the pair of zeta arguments.
pub fn eisenstein_l_factors(k: u32, s: i64) -> (i64, i64) {
    (s, s - k as i64 + 1)
}

/// Direction of the conversion between Λ and the completed L*.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// Λ(m⃗) = Σ A_{m⃗}(M⃗) L*(M⃗)
    LambdaFromLStar,
    /// L*(m⃗) = Σ B_{m⃗}(M⃗) Λ(M⃗)
    LStarFromLambda,
}

/// Integer conversion row: the coefficients indexed by the target tuples of
/// the same total weight.
#[derive(Debug, Clone)]
pub struct ConversionCoefficients {
    pub direction: Direction,
    pub source: Vec<i64>,
    pub tuples: Vec<Vec<i64>>,
    pub coefficients: Vec<Integer>,
}

pub fn tuples_of_weight(n: usize, weight: i64) -> Vec<Vec<i64>> {
    fn rec(n: usize, weight: i64, prefix: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if n == 1 {
            if weight >= 1 {
                let mut t = prefix.clone();
                t.push(weight);
                out.push(t);
            }
            return;
        }
        for v in 1..=(weight - (n as i64 - 1)) {
            prefix.push(v);
            rec(n - 1, weight - v, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, weight, &mut Vec::new(), &mut out);
    out
}

/// A_{m⃗}(M⃗): sum over the triangular array α_{a,b} (1 ≤ a ≤ b ≤ n) with
/// column sums m_b - 1 and row sums M_j - 1 of ∏ (m_b-1)! / ∏ α_{a,b}!.
pub fn conversion_a(m: &[i64], target: &[i64]) -> Integer {
    let n = m.len();
    assert_eq!(target.len(), n);
    fn columns(n: usize, b: usize, m: &[i64], target: &[i64], rows: &mut Vec<i64>, acc: &Rat, total: &mut Rat) {
        if b == n {
            for j in 0..n {
                if rows[j] != target[j] - 1 {
                    return;
                }
            }
            *total += acc;
            return;
        }
        let acc2 = Rational::from(acc * &Rational::from(factorial(m[b] as u32 - 1)));
        comps(b + 1, m[b] - 1, 0, n, b, m, target, rows, &acc2, total);
    }
    #[allow(clippy::too_many_arguments)]
    fn comps(parts: usize, rest: i64, row0: usize, n: usize, b: usize, m: &[i64], target: &[i64], rows: &mut Vec<i64>, acc: &Rat, total: &mut Rat) {
        if parts == 1 {
            rows[row0] += rest;
            let acc2 = Rational::from(acc / &Rational::from(factorial(rest as u32)));
            columns(n, b + 1, m, target, rows, &acc2, total);
            rows[row0] -= rest;
            return;
        }
        for v in 0..=rest {
            rows[row0] += v;
            let acc2 = Rational::from(acc / &Rational::from(factorial(v as u32)));
            comps(parts - 1, rest - v, row0 + 1, n, b, m, target, rows, &acc2, total);
            rows[row0] -= v;
        }
    }
    let mut total = Rational::new();
    let mut rows = vec![0i64; n];
    columns(n, 0, m, target, &mut rows, &Rational::from(1), &mut total);
    assert_eq!(total.denom(), &Integer::from(1), "A coefficient not integral");
    total.numer().clone()
}

/// B_{m⃗}(M⃗) = (-1)^{Σ_j (n+1-j)(M_j - m_j)} ∏_{j<n} C(m_{j+1}-1, Σ_{a≤j}(M_a - m_a)).
pub fn conversion_b(m: &[i64], target: &[i64]) -> Integer {
    let n = m.len();
    let mut sign_exp = 0i64;
    for j in 0..n {
        sign_exp += (n as i64 - j as i64) * (target[j] - m[j]);
    }
    let mut prod = Integer::from(1);
    let mut partial = 0i64;
    for j in 0..(n - 1) {
        partial += target[j] - m[j];
        prod *= binomial(m[j + 1] - 1, partial);
    }
    if sign_exp.rem_euclid(2) == 1 {
        -prod
    } else {
        prod
    }
}

/// The conversion row for a source tuple.
pub fn convert_l_lambda(direction: Direction, m: &[i64]) -> ConversionCoefficients {
    let weight: i64 = m.iter().sum();
    let tuples = tuples_of_weight(m.len(), weight);
    let coefficients = tuples
        .iter()
        .map(|t| match direction {
            Direction::LambdaFromLStar => conversion_a(m, t),
            Direction::LStarFromLambda => conversion_b(m, t),
        })
        .collect();
    ConversionCoefficients {
        direction,
        source: m.to_vec(),
        tuples,
        coefficients,
    }
}

/// Λ(f, s) for real s via the generalized writing at t_0 = 1:
/// Λ(f,s) = Φ(s) + i^k Φ(k-s) - a_0 (1/s + i^k/(k-s)) with
/// Φ(u) = Σ_l a_l ∫_1^∞ t^{u-1} e^{-2πlt} dt.
fn lambda_real_s(exp: &QExpansion, s: &Real, prec: u32) -> Real {
    let k = exp.weight;
    let ik = if k % 4 == 0 { 1i64 } else { -1 };
    let phi = |u: &Real| -> Real {
        let two_pi = Real::pi(prec).mul_i64(2);
        let mut acc = Real::zero(prec);
        let n = exp.truncation();
        for l in 1..=n {
            let a = exp.a(l);
            if a == 0 {
                continue;
            }
            let x = two_pi.mul_i64(l as i64);
            // ∫_1^∞ t^{u-1} e^{-xt} dt = x^{-u} Γ(u, x)
            let g = upper_gamma_any(u.mid(), x.mid(), prec);
            let ln_x = Float::with_val(prec, x.mid().clone().ln());
            let xu = Real::exact(Float::with_val(prec, ln_x * u.mid().clone()).exp());
            acc = acc.add(&g.div(&xu).mul_rat(&a));
        }
        // |a_l| ≤ C l^{k/2} and ∫_1^∞ t^{u-1}e^{-2πlt}dt ≤ ∫_1^∞ t^{k+1}e^{-2πlt}dt
        let tail = hecke_tail_bound(k + 4, exp.hecke_constant.to_f64(), 1.0, n);
        acc.widen(tail * 40.0)
    };
    let k_minus_s = Real::from_i64(prec, k as i64).sub(s);
    let mut v = phi(s).add(&phi(&k_minus_s).mul_i64(ik));
    let a0 = Real::from_rat(prec, &exp.a0());
    v = v.sub(&a0.div(s));
    v = v.sub(&a0.mul_i64(ik).div(&k_minus_s));
    v
}

/// Residue probe of Λ(f, s) at s = 0 (or s = k with `pole_at_weight`).
/// Only non-cusp forms have poles. Evaluates s·Λ(f,s) (resp (s-k)·Λ) at two
/// small offsets and extrapolates linearly.
pub fn residue_check(
    label: &FormLabel,
    pole_at_weight: bool,
    precision_digits: u32,
) -> Result<Real, MellinError> {
    if label.is_cuspidal() {
        return Err(MellinError::Domain(
            "cusp forms have entire Λ; no pole to probe".into(),
        ));
    }
    let prec = bits_for_digits(precision_digits.max(24));
    let k = label.weight();
    let n = truncation_for(k, 1.0, 1.0, prec);
    let exp = label.expansion(n)?;
    let scalar = label
        .transcendental_scalar(prec)
        .mul_rat(&label.rational_scalar());
    let probe = |eps: &Rat| -> Real {
        let (s, factor) = if pole_at_weight {
            let s = Real::from_rat(prec, &(Rational::from(k) - eps.clone()));
            (s.clone(), s.sub(&Real::from_i64(prec, k as i64)))
        } else {
            let s = Real::from_rat(prec, eps);
            (s.clone(), s.clone())
        };
        lambda_real_s(&exp, &s, prec).mul(&factor)
    };
    let e1 = Rational::from((1u32, 1000u32));
    let e2 = Rational::from((1u32, 10000u32));
    let v1 = probe(&e1);
    let v2 = probe(&e2);
    // linear extrapolation to eps = 0
    let slope_scale = e2.clone() / Rational::from(&e1 - &e2);
    let r = v2.add(&v2.sub(&v1).mul_rat(&slope_scale));
    let rough = v2.sub(&v1).abs_upper() * 2.0e-4 + 1e-9;
    Ok(r.mul(&scalar).widen(rough))
}
