//! Truncated formal power series with exact rational coefficients, in one
//! and two variables.
//!
//! Truncation orders are explicit data: coefficients beyond the order are
//! undefined rather than zero, and every binary operation truncates to the
//! minimum of the operand orders.

use super::Rat;
use rug::Rational;

/// Univariate truncated power series (also used as a plain polynomial when
/// the order equals the degree).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerSeries1 {
    coeffs: Vec<Rat>,
}

impl PowerSeries1 {
    /// Series with the given coefficients c_0..c_order.
    pub fn from_coeffs(coeffs: Vec<Rat>) -> Self {
        assert!(!coeffs.is_empty());
        PowerSeries1 { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        PowerSeries1 {
            coeffs: vec![Rational::new(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = Rational::from(1);
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> Rat {
        assert!(
            n < self.coeffs.len(),
            "coefficient {n} beyond truncation order {}",
            self.order()
        );
        self.coeffs[n].clone()
    }

    pub fn set_coeff(&mut self, n: usize, v: Rat) {
        assert!(n < self.coeffs.len());
        self.coeffs[n] = v;
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order());
        PowerSeries1 {
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let coeffs = (0..=order)
            .map(|n| Rational::from(&self.coeffs[n] + &other.coeffs[n]))
            .collect();
        PowerSeries1 { coeffs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let coeffs = (0..=order)
            .map(|n| Rational::from(&self.coeffs[n] - &other.coeffs[n]))
            .collect();
        PowerSeries1 { coeffs }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        PowerSeries1 {
            coeffs: self.coeffs.iter().map(|a| Rational::from(a * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let mut coeffs = vec![Rational::new(); order + 1];
        for i in 0..=order.min(self.order()) {
            if self.coeffs[i] == 0 {
                continue;
            }
            for j in 0..=(order - i).min(other.order()) {
                coeffs[i + j] += Rational::from(&self.coeffs[i] * &other.coeffs[j]);
            }
        }
        PowerSeries1 { coeffs }
    }

    /// Series division; the divisor must have an invertible constant term.
    pub fn div(&self, other: &Self) -> Self {
        assert!(other.coeffs[0] != 0, "division by series with zero constant term");
        let order = self.order().min(other.order());
        let mut q = vec![Rational::new(); order + 1];
        for n in 0..=order {
            let mut acc = self.coeffs[n].clone();
            for j in 1..=n {
                acc -= Rational::from(&other.coeffs[j] * &q[n - j]);
            }
            q[n] = acc / other.coeffs[0].clone();
        }
        PowerSeries1 { coeffs: q }
    }

    /// Evaluate at an exact rational point (treating the series as the
    /// polynomial of its stored coefficients).
    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rational::new();
        for c in self.coeffs.iter().rev() {
            acc *= x.clone();
            acc += c;
        }
        acc
    }
}

/// Bivariate truncated power series with independent truncation orders.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerSeries2 {
    // coeffs[i][j] is the coefficient of X^i Y^j
    coeffs: Vec<Vec<Rat>>,
}

impl PowerSeries2 {
    pub fn zero(order_x: usize, order_y: usize) -> Self {
        PowerSeries2 {
            coeffs: vec![vec![Rational::new(); order_y + 1]; order_x + 1],
        }
    }

    pub fn order_x(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn order_y(&self) -> usize {
        self.coeffs[0].len() - 1
    }

    pub fn coeff(&self, i: usize, j: usize) -> Rat {
        assert!(
            i < self.coeffs.len() && j < self.coeffs[0].len(),
            "coefficient ({i},{j}) beyond truncation orders ({}, {})",
            self.order_x(),
            self.order_y()
        );
        self.coeffs[i][j].clone()
    }

    pub fn set_coeff(&mut self, i: usize, j: usize, v: Rat) {
        self.coeffs[i][j] = v;
    }

    pub fn add(&self, other: &Self) -> Self {
        let ox = self.order_x().min(other.order_x());
        let oy = self.order_y().min(other.order_y());
        let mut out = Self::zero(ox, oy);
        for i in 0..=ox {
            for j in 0..=oy {
                out.coeffs[i][j] = Rational::from(&self.coeffs[i][j] + &other.coeffs[i][j]);
            }
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let ox = self.order_x().min(other.order_x());
        let oy = self.order_y().min(other.order_y());
        let mut out = Self::zero(ox, oy);
        for i1 in 0..=ox.min(self.order_x()) {
            for j1 in 0..=oy.min(self.order_y()) {
                if self.coeffs[i1][j1] == 0 {
                    continue;
                }
                for i2 in 0..=(ox - i1).min(other.order_x()) {
                    for j2 in 0..=(oy - j1).min(other.order_y()) {
                        out.coeffs[i1 + i2][j1 + j2] +=
                            Rational::from(&self.coeffs[i1][j1] * &other.coeffs[i2][j2]);
                    }
                }
            }
        }
        out
    }

    /// Series division; the divisor must have an invertible constant term.
    ///
    /// Divisors with vanishing constant term (such as the common factor
    /// Y - X met in the J-coefficient series) must be cancelled symbolically
    /// by the caller before dividing.
    pub fn div(&self, other: &Self) -> Self {
        assert!(
            other.coeffs[0][0] != 0,
            "division by bivariate series with zero constant term"
        );
        let ox = self.order_x().min(other.order_x());
        let oy = self.order_y().min(other.order_y());
        let inv0 = Rational::from(1) / other.coeffs[0][0].clone();
        let mut q = Self::zero(ox, oy);
        // Solve q * other = self degree by degree in graded-lex order.
        for n in 0..=(ox + oy) {
            for i in 0..=n.min(ox) {
                let j = n - i;
                if j > oy {
                    continue;
                }
                let mut acc = self.coeffs[i][j].clone();
                for a in 0..=i {
                    for b in 0..=j {
                        if a == 0 && b == 0 {
                            continue;
                        }
                        if a > other.order_x() || b > other.order_y() {
                            continue;
                        }
                        if other.coeffs[a][b] == 0 {
                            continue;
                        }
                        acc -= Rational::from(&other.coeffs[a][b] * &q.coeffs[i - a][j - b]);
                    }
                }
                q.coeffs[i][j] = acc * inv0.clone();
            }
        }
        q
    }
}
