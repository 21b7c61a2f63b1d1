//! Finite formal integer combinations over PSL₂(Z)ⁿ ⋊ Sₙ for n ∈ {1, 2}:
//! the normal form is a sorted term map over (matrix tuple, permutation),
//! so group-ring identities reduce to map equality.

use super::psl2::{Psl2, ID};
use std::collections::BTreeMap;

/// Permutation slot for n = 2 (identity or the swap).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Perm {
    Id,
    Swap,
}

impl Perm {
    fn compose(self, other: Perm) -> Perm {
        match (self, other) {
            (Perm::Id, p) | (p, Perm::Id) => p,
            (Perm::Swap, Perm::Swap) => Perm::Id,
        }
    }
}

/// A basis term: an n-tuple of matrices and a permutation.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Term {
    pub mats: Vec<Psl2>,
    pub perm: Perm,
}

impl Term {
    pub fn unit(n: usize) -> Self {
        Term {
            mats: vec![ID; n],
            perm: Perm::Id,
        }
    }
}

/// Element of Z[PSL₂(Z)ⁿ ⋊ Sₙ]; no zero coefficients are stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GroupRingElement {
    terms: BTreeMap<Term, i64>,
}

impl GroupRingElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn unit(n: usize) -> Self {
        Self::from_term(Term::unit(n), 1)
    }

    pub fn from_term(t: Term, c: i64) -> Self {
        let mut e = Self::zero();
        e.push(t, c);
        e
    }

    /// Convenience: a single (γ₁, γ₂) term with coefficient 1.
    pub fn pair(g1: Psl2, g2: Psl2) -> Self {
        Self::from_term(
            Term {
                mats: vec![g1, g2],
                perm: Perm::Id,
            },
            1,
        )
    }

    /// Convenience: a single (γ) term for n = 1.
    pub fn single(g: Psl2) -> Self {
        Self::from_term(
            Term {
                mats: vec![g],
                perm: Perm::Id,
            },
            1,
        )
    }

    pub fn push(&mut self, t: Term, c: i64) {
        if c == 0 {
            return;
        }
        let e = self.terms.entry(t.clone()).or_insert(0);
        *e += c;
        if *e == 0 {
            self.terms.remove(&t);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (t, c) in &other.terms {
            out.push(t.clone(), *c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (t, c) in &other.terms {
            out.push(t.clone(), -c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = Self::zero();
        for (t, c) in &self.terms {
            out.push(t.clone(), -c);
        }
        out
    }

    /// Ring product, with the semidirect rule [γ,ρ][γ',ρ'] = [γ^{ρ'} γ', ρρ'].
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (t1, c1) in &self.terms {
            for (t2, c2) in &other.terms {
                assert_eq!(t1.mats.len(), t2.mats.len(), "mixed arities");
                let mut mats = t1.mats.clone();
                if t2.perm == Perm::Swap {
                    mats.reverse();
                }
                let mats: Vec<Psl2> = mats
                    .iter()
                    .zip(&t2.mats)
                    .map(|(a, b)| a.mul(b))
                    .collect();
                out.push(
                    Term {
                        mats,
                        perm: t1.perm.compose(t2.perm),
                    },
                    c1 * c2,
                );
            }
        }
        out
    }

    /// The anti-automorphism γ ↦ γ⁻¹ extended linearly (used to turn
    /// left-ideal generators into annihilator conditions).
    pub fn tilde(&self) -> Self {
        let mut out = Self::zero();
        for (t, c) in &self.terms {
            assert_eq!(t.perm, Perm::Id, "tilde only used on permutation-free elements");
            out.push(
                Term {
                    mats: t.mats.iter().map(|g| g.inv()).collect(),
                    perm: Perm::Id,
                },
                *c,
            );
        }
        out
    }

    /// Conjugation by ε in the chosen slots.
    pub fn eps_conj(&self, slots: &[bool]) -> Self {
        let mut out = Self::zero();
        for (t, c) in &self.terms {
            let mats: Vec<Psl2> = t
                .mats
                .iter()
                .zip(slots)
                .map(|(g, &flip)| if flip { g.eps_conj() } else { *g })
                .collect();
            out.push(
                Term {
                    mats,
                    perm: t.perm,
                },
                *c,
            );
        }
        out
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Term, &i64)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn arity(&self) -> usize {
        self.terms.keys().next().map(|t| t.mats.len()).unwrap_or(0)
    }

    /// JSON export: words over {S, T, U} per slot plus the permutation tag.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.terms
                .iter()
                .map(|(t, c)| {
                    serde_json::json!({
                        "coefficient": c,
                        "slots": t.mats.iter().map(|g| g.word()).collect::<Vec<_>>(),
                        "permutation": match t.perm { Perm::Id => "id", Perm::Swap => "swap" },
                    })
                })
                .collect(),
        )
    }
}
