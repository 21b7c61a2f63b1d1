//! Hecke action on period polynomials: P_{T_n f} as an explicit signed sum
//! of slash actions by determinant-n integer matrices.
//!
//! The verified construction follows the modular-symbol decomposition: for
//! each coset representative (a b; 0 d) (ad = n, 0 ≤ b < d), the symbol
//! {b/d, i∞} is split through continued fractions into SL₂ legs g = (p q; r s),
//! each contributing the determinant-n matrix (s·a, s·b - d·q; -r·a, d·p - r·b).
//! The eigenvalue tests (τ(2) on Δ) gate this construction.
//!
//! The printed three-condition enumeration of M_n^0 is also provided for
//! inspection; the τ(2) test shows it does not reproduce the Hecke
//! eigenvalue, so `hecke_action` uses the modular-symbol route.

use super::{slash_matrix, PeriodPolynomial};
use crate::highprec::Complex;
use crate::relations::path_from_cusp_to_infinity;
use rug::Rational;

/// Signed determinant-n matrices realizing P_{T_n f} = Σ sign · P_f|γ.
pub fn hecke_operator_elements(n: u64) -> Vec<([i64; 4], i64)> {
    assert!(n >= 1);
    let mut out = Vec::new();
    for a in 1..=n {
        if n % a != 0 {
            continue;
        }
        let d = (n / a) as i64;
        let a = a as i64;
        for b in 0..d {
            // legs of (i∞) - (b/d)
            for (g, sign) in path_from_cusp_to_infinity(b, d) {
                let [p, q, r, s] = g.0;
                let delta = [s * a, s * b - d * q, -r * a, d * p - r * b];
                debug_assert_eq!(delta[0] * delta[3] - delta[1] * delta[2], a * d);
                out.push((delta, sign));
            }
        }
    }
    out
}

/// The matrices satisfying the three printed conditions
/// (bc < 0, 0 < |b| < a, 0 < |c| < d), (b = 0, |c| < d/2), (c = 0, |b| < a/2)
/// among integer matrices of determinant n.
pub fn hecke_matrices_printed(n: i64) -> Vec<[i64; 4]> {
    let mut out = Vec::new();
    for a in 1..=n {
        for d in 1..=n {
            for b in -a..=a {
                for c in -d..=d {
                    if a * d - b * c != n {
                        continue;
                    }
                    let cond1 = b * c < 0 && 0 < b.abs() && b.abs() < a && 0 < c.abs() && c.abs() < d;
                    let cond2 = b == 0 && 2 * c.abs() < d;
                    let cond3 = c == 0 && 2 * b.abs() < a;
                    if cond1 || cond2 || cond3 {
                        out.push([a, b, c, d]);
                    }
                }
            }
        }
    }
    out
}

/// P_{T_n f} from a numeric period polynomial of a cusp form.
pub fn hecke_action(p: &PeriodPolynomial, n: u64) -> PeriodPolynomial {
    assert!(p.fringe.is_none(), "Hecke action implemented for cusp polynomials");
    let prec = p.coeffs[0].prec();
    let mut out = vec![Complex::zero(prec); p.coeffs.len()];
    for (g, sign) in hecke_operator_elements(n) {
        let m = slash_matrix(p.weight, g);
        for (i, row) in m.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                if *c == 0 {
                    continue;
                }
                let v = p.coeffs[j].mul_rat(&Rational::from(c)).mul_i64(sign);
                out[i] = out[i].add(&v);
            }
        }
    }
    PeriodPolynomial {
        weight: p.weight,
        coeffs: out,
        fringe: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::periods::period_polynomial;
    use crate::qseries::{delta_qexp, FormLabel};

    #[test]
    fn n_equals_one_is_identity() {
        let els = hecke_operator_elements(1);
        assert_eq!(els, vec![([1, 0, 0, 1], 1)]);
        let printed = hecke_matrices_printed(1);
        assert_eq!(printed, vec![[1, 0, 0, 1]]);
    }

    // P_{T_2 Δ} = τ(2) P_Δ = -24 P_Δ, numerically.
    #[test]
    fn delta_eigenvalue_at_two() {
        let p = period_polynomial(&FormLabel::Delta, 25).unwrap();
        let tp = hecke_action(&p, 2);
        let tau2 = delta_qexp(3).a(2);
        for (a, b) in tp.coeffs.iter().zip(&p.coeffs) {
            let expect = b.mul_rat(&tau2);
            assert!(
                a.sub(&expect).abs_upper() < 1e-15,
                "{}+{}i vs {}+{}i",
                a.re.to_f64(),
                a.im.to_f64(),
                expect.re.to_f64(),
                expect.im.to_f64()
            );
        }
    }

    // And τ(3) = 252.
    #[test]
    fn delta_eigenvalue_at_three() {
        let p = period_polynomial(&FormLabel::Delta, 20).unwrap();
        let tp = hecke_action(&p, 3);
        let tau3 = delta_qexp(4).a(3);
        for (a, b) in tp.coeffs.iter().zip(&p.coeffs) {
            let expect = b.mul_rat(&tau3);
            assert!(a.sub(&expect).abs_upper() < 1e-10);
        }
    }

    // The element set respects X ↦ -X: conjugating every matrix by
    // ε = diag(-1,1) permutes the multiset.
    #[test]
    fn elements_respect_parity_exchange() {
        use std::collections::BTreeMap;
        let mut counts: BTreeMap<([i64; 4], i64), i64> = BTreeMap::new();
        for (g, s) in hecke_operator_elements(4) {
            *counts.entry((canon(g), s)).or_insert(0) += 1;
        }
        // the ε-conjugate multiset must produce the same Hecke operator;
        // check equality of the induced action on a test polynomial instead
        let p = period_polynomial(&FormLabel::Delta, 18).unwrap();
        let tp = hecke_action(&p, 4);
        // parity split commutes: (T_n P)(-X) parts match T_n applied to parts
        let flip = |poly: &PeriodPolynomial| PeriodPolynomial {
            weight: poly.weight,
            coeffs: poly
                .coeffs
                .iter()
                .enumerate()
                .map(|(m, c)| if m % 2 == 1 { c.neg() } else { c.clone() })
                .collect(),
            fringe: None,
        };
        let a = flip(&hecke_action(&flip(&p), 4));
        for (x, y) in a.coeffs.iter().zip(&tp.coeffs) {
            assert!(x.sub(y).abs_upper() < 1e-10);
        }
        let _ = counts;
    }

    fn canon(g: [i64; 4]) -> [i64; 4] {
        g
    }

    // The printed condition set for n = 2 contains exactly the two diagonal
    // matrices, which cannot reproduce τ(2); the modular-symbol route is the
    // one wired into hecke_action.
    #[test]
    fn printed_conditions_at_two() {
        let printed = hecke_matrices_printed(2);
        assert_eq!(printed, vec![[1, 0, 0, 2], [2, 0, 0, 1]]);
        let p = period_polynomial(&FormLabel::Delta, 18).unwrap();
        let prec = p.coeffs[0].prec();
        let mut out = vec![Complex::zero(prec); p.coeffs.len()];
        for g in printed {
            let m = slash_matrix(p.weight, g);
            for (i, row) in m.iter().enumerate() {
                for (j, c) in row.iter().enumerate() {
                    if *c != 0 {
                        out[i] = out[i].add(&p.coeffs[j].mul_rat(&Rational::from(c)));
                    }
                }
            }
        }
        // differs from -24·P on some coefficient
        let mut matches = true;
        for (a, b) in out.iter().zip(&p.coeffs) {
            if a.sub(&b.mul_i64(-24)).abs_upper() > 1e-8 {
                matches = false;
            }
        }
        assert!(!matches, "printed set unexpectedly reproduced the eigenvalue");
    }
}
