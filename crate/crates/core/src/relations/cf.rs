//! Continued-fraction decomposition of modular symbols: an SL₂(Z) chain
//! whose telescoped cusp endpoints realize (p/q) - (0) in Z[P¹(Q)]⁰.

use super::psl2::{Psl2, ID, S, T};

/// For gcd(p, q) = 1, a chain γ_1..γ_N with γ_N·i∞ = p/q, γ_j·0 = γ_{j-1}·i∞
/// and γ_1·0 = 0, so that (p/q) - (0) = Σ_j [(γ_j·i∞) - (γ_j·0)].
///
/// The chain follows the continued-fraction convergents of p/q; 0/1 gives
/// the empty chain.
pub fn continued_fraction_decomposition(p: i64, q: i64) -> Vec<Psl2> {
    assert!(q != 0 || p != 0, "0/0 is not a cusp");
    if q == 0 {
        // i∞ itself: (i∞) - (0) = Θ₁(id)
        return vec![ID];
    }
    let (mut p, mut q) = if q < 0 { (-p, -q) } else { (p, q) };
    let g = gcd(p.abs(), q);
    if g > 1 {
        p /= g;
        q /= g;
    }
    if p == 0 {
        return Vec::new();
    }
    // convergents p_j/q_j of p/q with p_{-1}/q_{-1} = 1/0, p_0/q_0 = a_0/1
    let mut quotients = Vec::new();
    let (mut a, mut b) = (p, q);
    while b != 0 {
        let fq = a.div_euclid(b);
        quotients.push(fq);
        let r = a - fq * b;
        a = b;
        b = r;
    }
    let mut conv: Vec<(i64, i64)> = Vec::with_capacity(quotients.len() + 1);
    let (mut pm1, mut qm1) = (1i64, 0i64);
    let (mut pm2, mut qm2) = (0i64, 1i64);
    for &aq in &quotients {
        let pj = aq * pm1 + pm2;
        let qj = aq * qm1 + qm2;
        conv.push((pj, qj));
        pm2 = pm1;
        qm2 = qm1;
        pm1 = pj;
        qm1 = qj;
    }
    // chain from 0 to p/q: first leg 0 -> a_0 (= conv[0]), then convergents
    let mut chain = Vec::with_capacity(conv.len());
    // leg 0 -> p_0/q_0 = a_0/1: γ = T^{a_0} S maps i∞ -> a_0, 0 -> i∞… use
    // γ with γ·0 = 0, γ·i∞ = a_0: [a_0, b; 1, ?]… take γ = [a_0 -1; 1 0]:
    // γ·i∞ = a_0, γ·0 = -1/0 = i∞ — wrong; use γ = [a_0 0; 1 1]: det a_0…
    // Instead start the telescope at (0) directly: γ_1 maps 0 ↦ 0 and
    // i∞ ↦ a_0 requires det ±1: [a_0 0; 1 1] has det a_0. When a_0 = 0 the
    // leg is empty; otherwise decompose 0 -> a_0 through ±1 steps of T.
    let a0 = quotients[0];
    let step = if a0 >= 0 { 1 } else { -1 };
    let mut at = 0i64;
    while at != a0 {
        // leg at -> at+step: γ = T^{at+min(step,0)}·[1 0; 1 1]-style
        // use γ = T^{at} [s -1+…]: the matrix [at+step, at; 1, 1] (det ±1)
        let m = if step > 0 {
            Psl2::new(at + 1, at, 1, 1)
        } else {
            Psl2::new(-(at - 1), at, -1, 1)
        };
        debug_assert_eq!(m.act_cusp(0, 1), cusp(at, 1));
        debug_assert_eq!(m.act_cusp(1, 0), cusp(at + step, 1));
        chain.push(m);
        at += step;
    }
    for j in 1..conv.len() {
        let (pj, qj) = conv[j];
        let (pjm, qjm) = conv[j - 1];
        // det [pj pjm; qj qjm] = ±1; fix the sign into the second column
        let det = pj * qjm - pjm * qj;
        let m = Psl2::new(pj, det * pjm, qj, det * qjm);
        debug_assert_eq!(m.act_cusp(1, 0), cusp(pj, qj));
        debug_assert_eq!(m.act_cusp(0, 1), cusp(pjm, qjm));
        chain.push(m);
    }
    chain
}

fn cusp(p: i64, q: i64) -> (i64, i64) {
    let (mut p, mut q) = if q < 0 || (q == 0 && p < 0) {
        (-p, -q)
    } else {
        (p, q)
    };
    let g = gcd(p.abs(), q.abs()).max(1);
    p /= g;
    q /= g;
    (p, q)
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Signed SL₂ pieces realizing (i∞) - (p/q) = Σ sign·Θ₁(g).
pub fn path_from_cusp_to_infinity(p: i64, q: i64) -> Vec<(Psl2, i64)> {
    let mut out = vec![(ID, 1)];
    for g in continued_fraction_decomposition(p, q) {
        out.push((g, -1));
    }
    out
}

/// The telescoped boundary Σ sign·[(g·i∞) - (g·0)] of a signed chain, as a
/// multiset over cusps; used by the tests as the endpoint oracle.
pub fn telescope(chain: &[(Psl2, i64)]) -> std::collections::BTreeMap<(i64, i64), i64> {
    let mut acc = std::collections::BTreeMap::new();
    for (g, sign) in chain {
        *acc.entry(g.act_cusp(1, 0)).or_insert(0) += sign;
        *acc.entry(g.act_cusp(0, 1)).or_insert(0) -= sign;
    }
    acc.retain(|_, v| *v != 0);
    acc
}

#[allow(unused_imports)]
use super::psl2::U;
#[allow(dead_code)]
fn _keep_imports(_: Psl2) {
    let _ = (S, T, U);
}
