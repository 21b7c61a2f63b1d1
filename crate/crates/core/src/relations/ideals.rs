//! The printed generator lists of the relation ideals I₁, I_H, I_V, I_D and
//! I₂ (with its ε-conjugates), plus the decomposition identities used to
//! cross-check them.

use super::groupring::{GroupRingElement, Perm, Term};
use super::psl2::{Psl2, ID, S, T, U};

/// Names of the printed ideals.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IdealName {
    /// (1+S, 1+U+U²) in Z[Γ]
    I1,
    /// ((1+S,1), (1+U+U²,1), (1,1-T))
    IH,
    /// ((1,1+S), (1,1+U+U²), (1-US,1))
    IV,
    /// ((1,1)+(S,S), (1,1)+(U,U)+(U²,U²))
    ID,
    /// ((1,1)+(S,S), (1,1)+(U,V)+(U²,V²)) with V = εUε
    IDMixed,
    /// The five annihilator conditions of the biperiod polynomial
    /// (the tilde of the five left-ideal generators).
    I2,
    /// The five left-ideal generators as printed in the finiteness theorem.
    I2LeftIdeal,
    /// The ε-conjugate I₂^{(+,-)} annihilator conditions.
    I2Mixed,
}

fn one() -> GroupRingElement {
    GroupRingElement::single(ID)
}

fn one_plus(g: Psl2) -> GroupRingElement {
    one().add(&GroupRingElement::single(g))
}

fn manin_u() -> GroupRingElement {
    one()
        .add(&GroupRingElement::single(U))
        .add(&GroupRingElement::single(U.pow(2)))
}

fn pair2(a: &GroupRingElement, b: &GroupRingElement) -> GroupRingElement {
    // (x, y) for n=1 elements x, y: the outer product in Z[Γ²]
    let mut out = GroupRingElement::zero();
    for (t1, c1) in a.terms() {
        for (t2, c2) in b.terms() {
            out.push(
                Term {
                    mats: vec![t1.mats[0], t2.mats[0]],
                    perm: Perm::Id,
                },
                c1 * c2,
            );
        }
    }
    out
}

fn diag_plus(gs: &[Psl2]) -> GroupRingElement {
    // (1,1) + Σ (g,g)
    let mut out = GroupRingElement::pair(ID, ID);
    for g in gs {
        out = out.add(&GroupRingElement::pair(*g, *g));
    }
    out
}

/// V = εUε = SU²S.
pub fn mat_v() -> Psl2 {
    U.eps_conj()
}

/// The fifth I₂ annihilator condition:
/// (S,S)+(S,SU²)+(SU²,SU²)+(1,U²)-(U,U).
pub fn i2_fifth_annihilator() -> GroupRingElement {
    let su2 = S.mul(&U.pow(2));
    GroupRingElement::pair(S, S)
        .add(&GroupRingElement::pair(S, su2))
        .add(&GroupRingElement::pair(su2, su2))
        .add(&GroupRingElement::pair(ID, U.pow(2)))
        .sub(&GroupRingElement::pair(U, U))
}

/// The fifth left-ideal generator:
/// (S,S)+(S,US)+(US,US)+(1,U)-(U²,U²).
pub fn i2_fifth_left() -> GroupRingElement {
    let us = U.mul(&S);
    GroupRingElement::pair(S, S)
        .add(&GroupRingElement::pair(S, us))
        .add(&GroupRingElement::pair(us, us))
        .add(&GroupRingElement::pair(ID, U))
        .sub(&GroupRingElement::pair(U.pow(2), U.pow(2)))
}

/// Printed generator lists. For `I2` the returned elements are the
/// annihilator conditions P|_g = 0 of the biperiod polynomial (the order of
/// the two-sided products follows the relation statement, i.e. the tilde of
/// the left-ideal list).
pub fn ideal_generators(name: IdealName) -> Vec<GroupRingElement> {
    match name {
        IdealName::I1 => vec![one_plus(S), manin_u()],
        IdealName::IH => vec![
            pair2(&one_plus(S), &one()),
            pair2(&manin_u(), &one()),
            pair2(&one(), &one().sub(&GroupRingElement::single(T))),
        ],
        IdealName::IV => vec![
            pair2(&one(), &one_plus(S)),
            pair2(&one(), &manin_u()),
            pair2(&one().sub(&GroupRingElement::single(U.mul(&S))), &one()),
        ],
        IdealName::ID => vec![diag_plus(&[S]), diag_plus(&[U, U.pow(2)])],
        IdealName::IDMixed => {
            let v = mat_v();
            vec![
                diag_plus(&[S]),
                GroupRingElement::pair(ID, ID)
                    .add(&GroupRingElement::pair(U, v))
                    .add(&GroupRingElement::pair(U.pow(2), v.pow(2))),
            ]
        }
        IdealName::I2 => {
            // annihilator conditions: (1+S,1+S), [(1,1)+(S,S)](1+U+U²,1),
            // [(1,1)+(S,S)](1,1+U+U²), (1+U+U²,1+U+U²), fifth.
            let dss = diag_plus(&[S]);
            vec![
                pair2(&one_plus(S), &one_plus(S)),
                dss.mul(&pair2(&manin_u(), &one())),
                dss.mul(&pair2(&one(), &manin_u())),
                pair2(&manin_u(), &manin_u()),
                i2_fifth_annihilator(),
            ]
        }
        IdealName::I2LeftIdeal => {
            let dss = diag_plus(&[S]);
            vec![
                pair2(&one_plus(S), &one_plus(S)),
                pair2(&manin_u(), &one()).mul(&dss),
                pair2(&one(), &manin_u()).mul(&dss),
                pair2(&manin_u(), &manin_u()),
                i2_fifth_left(),
            ]
        }
        IdealName::I2Mixed => {
            // the printed left-ideal list of I₂^{(+,-)}: the fourth and
            // fifth generators pick up V = εUε
            let v = mat_v();
            let dss = diag_plus(&[S]);
            let manin_v = one()
                .add(&GroupRingElement::single(v))
                .add(&GroupRingElement::single(v.pow(2)));
            let vs = v.mul(&S);
            let us = U.mul(&S);
            let fifth = GroupRingElement::pair(S, S)
                .add(&GroupRingElement::pair(S, vs))
                .add(&GroupRingElement::pair(us, vs))
                .add(&GroupRingElement::pair(ID, v))
                .sub(&GroupRingElement::pair(U.pow(2), v.pow(2)));
            vec![
                pair2(&one_plus(S), &one_plus(S)),
                pair2(&manin_u(), &one()).mul(&dss),
                pair2(&one(), &manin_u()).mul(&dss),
                pair2(&manin_u(), &manin_v),
                fifth,
            ]
        }
    }
}
