//! The Z_g lattice sums attached to pairs of Eisenstein series:
//! Z_g(e1 f1; e2 f2) = Σ' a1^-e1 b1^-f1 a2^-e2 b2^-f2 (a1 b2 - a2 b1)^-g
//! over nonzero integers with a1 b2 ≠ a2 b1.
//!
//! Only g = 0 has a closed form; the recursion to g+1 and the three
//! symmetry relations are exposed as rewrite rules on index tuples.

use super::{SymbolicZetaCombo, ZetaSymbol};
use crate::exact::{zeta_even_over_2pi, ExactError, Rat};
use rug::Rational;

/// Index tuple of a Z_g number.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ZgIndex {
    pub e1: u32,
    pub f1: u32,
    pub e2: u32,
    pub f2: u32,
    pub g: u32,
}

impl ZgIndex {
    pub fn total_weight(&self) -> u32 {
        self.e1 + self.f1 + self.e2 + self.f2 + self.g
    }
}

/// Closed form at g = 0: for all-even exponents
/// 16 ζ(e1)ζ(f1)ζ(e2)ζ(f2) - 8 ζ(e1+f1)ζ(e2+f2)ζ(e1+e2)ζ(f1+f2)/ζ(Σ),
/// for all-odd exponents just the second (ratio) term, 0 otherwise.
/// Mixed-parity tuples vanish. All exponents must be ≥ 2 for convergence.
pub fn zg_closed_form(idx: ZgIndex) -> Result<SymbolicZetaCombo, ExactError> {
    if idx.g != 0 {
        return Err(ExactError::Domain(
            "closed form only available at g = 0; use the recursion relations".into(),
        ));
    }
    let (e1, f1, e2, f2) = (idx.e1, idx.f1, idx.e2, idx.f2);
    if idx.total_weight() < 3 {
        return Err(ExactError::Domain("total weight must be >= 3".into()));
    }
    for e in [e1, f1, e2, f2] {
        if e < 2 {
            return Err(ExactError::Domain(format!(
                "Z_0 needs every exponent >= 2 to converge, got {e}"
            )));
        }
    }
    let all_even = [e1, f1, e2, f2].iter().all(|e| e % 2 == 0);
    let all_odd = [e1, f1, e2, f2].iter().all(|e| e % 2 == 1);
    if !all_even && !all_odd {
        return Ok(SymbolicZetaCombo::zero());
    }
    let total = e1 + f1 + e2 + f2;
    // the four pair sums are even in both branches
    let ratio: Rat = zeta_even_over_2pi((e1 + f1) as u32)?
        * zeta_even_over_2pi((e2 + f2) as u32)?
        * zeta_even_over_2pi((e1 + e2) as u32)?
        * zeta_even_over_2pi((f1 + f2) as u32)?
        / zeta_even_over_2pi(total as u32)?;
    let mut combo = SymbolicZetaCombo::zero();
    combo.push(
        ZetaSymbol::TwoPiPow(total as i32),
        Rational::from(-8) * ratio,
    );
    if all_even {
        let prod: Rat = zeta_even_over_2pi(e1)?
            * zeta_even_over_2pi(f1)?
            * zeta_even_over_2pi(e2)?
            * zeta_even_over_2pi(f2)?;
        combo.push(
            ZetaSymbol::TwoPiPow(total as i32),
            Rational::from(16) * prod,
        );
    }
    Ok(combo)
}

/// Rewrite rule Z_g = Z_{g+1}(e1-1, f1; e2, f2-1) - Z_{g+1}(e1, f1-1; e2-1, f2):
/// the two right-hand tuples with coefficients (+1, -1).
pub fn zg_recursion(idx: ZgIndex) -> [(ZgIndex, i32); 2] {
    [
        (
            ZgIndex {
                e1: idx.e1 - 1,
                f1: idx.f1,
                e2: idx.e2,
                f2: idx.f2 - 1,
                g: idx.g + 1,
            },
            1,
        ),
        (
            ZgIndex {
                e1: idx.e1,
                f1: idx.f1 - 1,
                e2: idx.e2 - 1,
                f2: idx.f2,
                g: idx.g + 1,
            },
            -1,
        ),
    ]
}

/// The three symmetry images and their signs:
/// Z_g(e1 f1; e2 f2) = Z_g(f2 f1; e2 e1) = Z_g(e1 e2; f1 f2)
///                   = (-1)^g Z_g(e2 f2; e1 f1).
pub fn zg_symmetries(idx: ZgIndex) -> [(ZgIndex, i32); 3] {
    let row_swap_sign = if idx.g % 2 == 0 { 1 } else { -1 };
    [
        (
            ZgIndex {
                e1: idx.f2,
                f1: idx.f1,
                e2: idx.e2,
                f2: idx.e1,
                g: idx.g,
            },
            1,
        ),
        (
            ZgIndex {
                e1: idx.e1,
                f1: idx.e2,
                e2: idx.f1,
                f2: idx.f2,
                g: idx.g,
            },
            1,
        ),
        (
            ZgIndex {
                e1: idx.e2,
                f1: idx.f2,
                e2: idx.e1,
                f2: idx.f1,
                g: idx.g,
            },
            row_swap_sign,
        ),
    ]
}
