//! PSL₂(Z) elements: integer 2×2 matrices of determinant 1, canonicalized
//! up to sign, with word decomposition over the generators S and T.

use serde::{Deserialize, Serialize};
use std::fmt;

/// A PSL₂(Z) element. The representative is normalized so that the first
/// nonzero entry of (c, d, a, b) is positive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Psl2(pub [i64; 4]);

pub const ID: Psl2 = Psl2([1, 0, 0, 1]);
/// S = [0, -1; 1, 0]
pub const S: Psl2 = Psl2([0, -1, 1, 0]);
/// T = [1, 1; 0, 1]
pub const T: Psl2 = Psl2([1, 1, 0, 1]);
/// U = TS = [0, 1; -1, 1] (canonicalized)
pub const U: Psl2 = Psl2([0, -1, 1, -1]);

impl Psl2 {
    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Self {
        assert_eq!(a * d - b * c, 1, "determinant must be 1");
        Psl2([a, b, c, d]).canonical()
    }

    fn canonical(self) -> Self {
        let [a, b, c, d] = self.0;
        for v in [c, d, a, b] {
            if v != 0 {
                return if v < 0 { Psl2([-a, -b, -c, -d]) } else { self };
            }
        }
        self
    }

    pub fn a(&self) -> i64 {
        self.0[0]
    }
    pub fn b(&self) -> i64 {
        self.0[1]
    }
    pub fn c(&self) -> i64 {
        self.0[2]
    }
    pub fn d(&self) -> i64 {
        self.0[3]
    }

    pub fn mul(&self, other: &Psl2) -> Psl2 {
        let [a, b, c, d] = self.0;
        let [e, f, g, h] = other.0;
        Psl2([
            a * e + b * g,
            a * f + b * h,
            c * e + d * g,
            c * f + d * h,
        ])
        .canonical()
    }

    pub fn inv(&self) -> Psl2 {
        let [a, b, c, d] = self.0;
        Psl2([d, -b, -c, a]).canonical()
    }

    /// Conjugation by ε = diag(-1, 1): negates the off-diagonal entries.
    pub fn eps_conj(&self) -> Psl2 {
        let [a, b, c, d] = self.0;
        Psl2([a, -b, -c, d]).canonical()
    }

    pub fn pow(&self, e: i64) -> Psl2 {
        let mut acc = ID;
        let base = if e < 0 { self.inv() } else { *self };
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base);
        }
        acc
    }

    /// Build from a word over S, T, U (e.g. "U2 S" means U²·S).
    pub fn from_word(word: &str) -> Psl2 {
        let mut acc = ID;
        for tok in word.split_whitespace() {
            let (base, exp) = if let Some(rest) = tok.strip_prefix('S') {
                (S, rest)
            } else if let Some(rest) = tok.strip_prefix('T') {
                (T, rest)
            } else if let Some(rest) = tok.strip_prefix('U') {
                (U, rest)
            } else {
                panic!("unknown generator in word: {tok}")
            };
            let e: i64 = if exp.is_empty() { 1 } else { exp.parse().unwrap() };
            acc = acc.mul(&base.pow(e));
        }
        acc
    }

    /// Action on P¹(Q): γ·(p:q) = (ap+bq : cp+dq), with i∞ = (1:0).
    pub fn act_cusp(&self, p: i64, q: i64) -> (i64, i64) {
        let [a, b, c, d] = self.0;
        let (mut np, mut nq) = (a * p + b * q, c * p + d * q);
        if nq < 0 || (nq == 0 && np < 0) {
            np = -np;
            nq = -nq;
        }
        let g = gcd(np.abs(), nq.abs()).max(1);
        (np / g, nq / g)
    }

    /// Word decomposition over S and T: returns tokens multiplying left to
    /// right to the element.
    pub fn word(&self) -> String {
        let mut g = *self;
        let mut tokens: Vec<String> = Vec::new();
        // peel S and T^q from the left: g = T^q S g' reduces |c|
        let mut guard = 0;
        loop {
            guard += 1;
            assert!(guard < 200, "word decomposition failed to terminate");
            let [a, _b, c, _d] = g.0;
            if c == 0 {
                // g = ±T^b
                let b = g.b() * g.a(); // a = d = ±1; T^b with b = a·b entry
                if b != 0 {
                    tokens.push(format!("T{b}"));
                }
                break;
            }
            if a == 0 {
                tokens.push("S".into());
                g = S.inv().mul(&g);
                continue;
            }
            // choose q near a/c so the S-conjugate shrinks
            let q = div_round(a, c);
            if q != 0 {
                tokens.push(format!("T{q}"));
            }
            tokens.push("S".into());
            g = S.inv().mul(&T.pow(-q).mul(&g));
        }
        if tokens.is_empty() {
            "1".into()
        } else {
            tokens.join(" ")
        }
    }
}

fn div_round(a: i64, b: i64) -> i64 {
    let q = a / b;
    let r = a - q * b;
    if 2 * r.abs() > b.abs() {
        q + r.signum() * b.signum()
    } else {
        q
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl fmt::Display for Psl2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{} {}; {} {}]",
            self.0[0], self.0[1], self.0[2], self.0[3]
        )
    }
}
