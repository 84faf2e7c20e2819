//! Polynomials in `u` with Yangian coefficients and the quantum determinant.

use num_integer::binomial;
use serde::Serialize;

use super::{NCPolynomial, Yangian};
use crate::poly::Scalar;

/// `Σ_k c_k u^k`, coefficients stored lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperatorPoly {
    coeffs: Vec<NCPolynomial>,
}

impl OperatorPoly {
    pub fn new(p: u32, mut coeffs: Vec<NCPolynomial>) -> Self {
        while coeffs.last().is_some_and(NCPolynomial::is_zero) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(NCPolynomial::zero(p));
        }
        OperatorPoly { coeffs }
    }

    /// `T_ij(u) = δ_ij u^p + Σ_k t_ij^(k) u^{p−k}`.
    pub fn t(p: u32, i: u8, j: u8) -> Self {
        let coeffs = (0..=p).map(|d| NCPolynomial::t(p, i, j, p - d)).collect();
        OperatorPoly::new(p, coeffs)
    }

    pub fn coeffs(&self) -> &[NCPolynomial] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> NCPolynomial {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(|| NCPolynomial::zero(self.level()))
    }

    pub fn level(&self) -> u32 {
        self.coeffs[0].level()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// `P(u + c)` by binomial re-expansion of each power of `u`.
    pub fn shift(&self, c: i64) -> OperatorPoly {
        let p = self.level();
        let n = self.coeffs.len();
        let mut out = vec![NCPolynomial::zero(p); n];
        for (k, ck) in self.coeffs.iter().enumerate() {
            for (m, slot) in out.iter_mut().enumerate().take(k + 1) {
                let b = binomial(k as i64, m as i64);
                let w = Scalar::from(b) * Scalar::from(c).pow((k - m) as u32);
                *slot = &*slot + &ck.scale(&w);
            }
        }
        OperatorPoly::new(p, out)
    }

    pub fn mul(&self, other: &OperatorPoly, alg: &Yangian) -> OperatorPoly {
        let p = self.level();
        let mut out = vec![NCPolynomial::zero(p); self.coeffs.len() + other.coeffs.len() - 1];
        for (a, ca) in self.coeffs.iter().enumerate() {
            for (b, cb) in other.coeffs.iter().enumerate() {
                out[a + b] = &out[a + b] + &alg.multiply(ca, cb);
            }
        }
        OperatorPoly::new(p, out)
    }

    pub fn sub(&self, other: &OperatorPoly) -> OperatorPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let out = (0..n).map(|k| &self.coeff(k) - &other.coeff(k)).collect();
        OperatorPoly::new(self.level(), out)
    }
}

/// The four equal presentations of the quantum determinant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum QdetExpression {
    /// `T11(u) T22(u−1) − T21(u) T12(u−1)`
    First,
    /// `T11(u−1) T22(u) − T12(u−1) T21(u)`
    Second,
    /// `T22(u) T11(u−1) − T12(u) T21(u−1)`
    Third,
    /// `T22(u−1) T11(u) − T21(u−1) T12(u)`
    Fourth,
}

impl QdetExpression {
    pub const ALL: [QdetExpression; 4] = [
        QdetExpression::First,
        QdetExpression::Second,
        QdetExpression::Third,
        QdetExpression::Fourth,
    ];
}

impl Yangian {
    /// `D(u)` as an operator polynomial via the chosen presentation.
    pub fn quantum_determinant_poly(&self, expr: QdetExpression) -> OperatorPoly {
        let p = self.level();
        let t = |i, j, s: i64| {
            let base = OperatorPoly::t(p, i, j);
            if s == 0 {
                base
            } else {
                base.shift(s)
            }
        };
        // (a, b, c, d) with D = T_a T_b − T_c T_d
        let (a, b, c, d) = match expr {
            QdetExpression::First => (t(1, 1, 0), t(2, 2, -1), t(2, 1, 0), t(1, 2, -1)),
            QdetExpression::Second => (t(1, 1, -1), t(2, 2, 0), t(1, 2, -1), t(2, 1, 0)),
            QdetExpression::Third => (t(2, 2, 0), t(1, 1, -1), t(1, 2, 0), t(2, 1, -1)),
            QdetExpression::Fourth => (t(2, 2, -1), t(1, 1, 0), t(2, 1, -1), t(1, 2, 0)),
        };
        a.mul(&b, self).sub(&c.mul(&d, self))
    }

    /// `[d_1, …, d_2p]` from `D(u) = u^{2p} + d_1 u^{2p−1} + … + d_{2p}`,
    /// using the presentation `T11(u) T22(u−1) − T21(u) T12(u−1)`.
    pub fn quantum_determinant(&self) -> Vec<NCPolynomial> {
        self.qdet_coefficients(QdetExpression::First)
    }

    pub fn qdet_coefficients(&self, expr: QdetExpression) -> Vec<NCPolynomial> {
        let d = self.quantum_determinant_poly(expr);
        let n = 2 * self.level() as usize;
        debug_assert_eq!(d.degree(), n);
        debug_assert_eq!(d.coeff(n), self.one());
        (1..=n).map(|k| d.coeff(n - k)).collect()
    }
}
