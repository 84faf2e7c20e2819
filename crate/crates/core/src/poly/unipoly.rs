//! Dense univariate polynomials over the rationals.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::{PolyError, Scalar};

/// A polynomial in one variable `u`, coefficients stored lowest degree first.
/// The zero polynomial is the empty coefficient list.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(from = "Vec<Scalar>", into = "Vec<Scalar>")]
pub struct UniPoly {
    coeffs: Vec<Scalar>,
}

impl From<Vec<Scalar>> for UniPoly {
    fn from(coeffs: Vec<Scalar>) -> Self {
        UniPoly::new(coeffs)
    }
}

impl From<UniPoly> for Vec<Scalar> {
    fn from(p: UniPoly) -> Self {
        p.coeffs
    }
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        UniPoly::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        UniPoly::new(vec![c])
    }

    /// The monomial `c * u^deg`.
    pub fn monomial(c: Scalar, deg: usize) -> Self {
        let mut coeffs = vec![Scalar::zero(); deg + 1];
        coeffs[deg] = c;
        UniPoly::new(coeffs)
    }

    /// `u + c`.
    pub fn linear(c: Scalar) -> Self {
        UniPoly::new(vec![c, Scalar::one()])
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    /// Coefficient of `u^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> Scalar {
        self.coeffs.get(i).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Scalar {
        self.coeffs.last().cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(Scalar::is_one)
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        let mut acc = Scalar::zero();
        for c in self.coeffs.iter().rev() {
            acc = &acc * x + c;
        }
        acc
    }

    pub fn scale(&self, c: &Scalar) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// `p(u + c)`.
    pub fn shift(&self, c: &Scalar) -> UniPoly {
        // Horner in the polynomial ring: p(u+c) = (...(a_n (u+c) + a_{n-1})(u+c) + ...)
        let lin = UniPoly::linear(c.clone());
        let mut acc = UniPoly::zero();
        for a in self.coeffs.iter().rev() {
            acc = &(&acc * &lin) + &UniPoly::constant(a.clone());
        }
        acc
    }

    pub fn derivative(&self) -> UniPoly {
        UniPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Scalar::from(i as i64))
                .collect(),
        )
    }

    pub fn pow(&self, e: u32) -> UniPoly {
        let mut acc = UniPoly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Euclidean division: `(quotient, remainder)` with `deg r < deg den`.
    pub fn div_rem(&self, den: &UniPoly) -> Result<(UniPoly, UniPoly), PolyError> {
        let dd = den.degree().ok_or(PolyError::DivisionByZero)?;
        let lead_inv = den.leading().recip();
        let mut rem = self.coeffs.clone();
        let n = rem.len();
        if n <= dd {
            return Ok((UniPoly::zero(), self.clone()));
        }
        let mut quot = vec![Scalar::zero(); n - dd];
        for i in (0..n - dd).rev() {
            let c = &rem[i + dd] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in den.coeffs.iter().enumerate() {
                let t = &c * dc;
                rem[i + j] -= t;
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        Ok((UniPoly::new(quot), UniPoly::new(rem)))
    }

    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            let l = a.leading().recip();
            a.scale(&l)
        }
    }

    /// The formal variable as a display name is `u`.
    fn fmt_with(&self, var: &str, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            match i {
                0 => write!(f, "{a}")?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{a}*")?;
                    }
                    write!(f, "{var}")?;
                    if i > 1 {
                        write!(f, "^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_with("u", f)
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_with("u", f)
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Scalar::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Add for UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: UniPoly) -> UniPoly {
        &self + &rhs
    }
}

impl Sub for UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: UniPoly) -> UniPoly {
        &self - &rhs
    }
}

impl Mul for UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: UniPoly) -> UniPoly {
        &self * &rhs
    }
}

/// `∏ (u + r)` over the given roots; monic of degree `roots.len()`.
pub fn poly_from_roots(roots: &[Scalar]) -> UniPoly {
    roots
        .iter()
        .fold(UniPoly::one(), |acc, r| &acc * &UniPoly::linear(r.clone()))
}

/// Exact division; fails with the remainder when `den` does not divide `num`.
pub fn poly_div_exact(num: &UniPoly, den: &UniPoly) -> Result<UniPoly, PolyError> {
    let (quot, rem) = num.div_rem(den)?;
    if rem.is_zero() {
        Ok(quot)
    } else {
        Err(PolyError::NonzeroRemainder(rem))
    }
}

/// The interpolation factor attached to axis `i` at lattice point `k`:
/// numerator `∏_{j≠i} (u + β_j + k_j)` and denominator
/// `∏_{j≠i} (β_j − β_i + k_j − k_i)`. The factor equals 1 at
/// `u = −β_i − k_i` and vanishes at `u = −β_j − k_j` for every `j ≠ i`.
pub fn lagrange_numerator(
    beta: &[Scalar],
    k: &[i64],
    i: usize,
) -> Result<(UniPoly, Scalar), PolyError> {
    assert_eq!(beta.len(), k.len(), "beta and k must have the same length");
    assert!(i < beta.len(), "axis index out of range");
    let shifted: Vec<Scalar> = beta
        .iter()
        .zip(k)
        .map(|(b, &kj)| b + Scalar::from(kj))
        .collect();
    let mut num = UniPoly::one();
    let mut den = Scalar::one();
    for (j, s) in shifted.iter().enumerate() {
        if j == i {
            continue;
        }
        let factor = s - &shifted[i];
        if factor.is_zero() {
            return Err(PolyError::DegenerateDenominator { axis: i, other: j });
        }
        num = &num * &UniPoly::linear(s.clone());
        den *= &factor;
    }
    Ok((num, den))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::q;
    use proptest::prelude::*;

    fn up(cs: &[(i64, i64)]) -> UniPoly {
        UniPoly::new(cs.iter().map(|&(n, d)| q(n, d)).collect())
    }

    #[test]
    fn from_roots_examples() {
        assert_eq!(poly_from_roots(&[]), UniPoly::one());
        assert_eq!(poly_from_roots(&[q(1, 2)]), up(&[(1, 2), (1, 1)]));
        // (u + 5/2)(u + 1/3) = u^2 + 17/6 u + 5/6
        assert_eq!(
            poly_from_roots(&[q(5, 2), q(1, 3)]),
            up(&[(5, 6), (17, 6), (1, 1)])
        );
    }

    #[test]
    fn exact_division() {
        let u2m1 = up(&[(-1, 1), (0, 1), (1, 1)]);
        assert_eq!(
            poly_div_exact(&u2m1, &up(&[(-1, 1), (1, 1)])).unwrap(),
            up(&[(1, 1), (1, 1)])
        );
        let u2pu = up(&[(0, 1), (1, 1), (1, 1)]);
        assert_eq!(
            poly_div_exact(&u2pu, &up(&[(0, 1), (1, 1)])).unwrap(),
            up(&[(1, 1), (1, 1)])
        );
        let u2p1 = up(&[(1, 1), (0, 1), (1, 1)]);
        match poly_div_exact(&u2p1, &up(&[(-1, 1), (1, 1)])) {
            Err(PolyError::NonzeroRemainder(r)) => assert_eq!(r, UniPoly::constant(q(2, 1))),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            poly_div_exact(&u2p1, &UniPoly::zero()),
            Err(PolyError::DivisionByZero)
        ));
    }

    #[test]
    fn lagrange_examples() {
        let (n, d) = lagrange_numerator(&[q(3, 7)], &[5], 0).unwrap();
        assert_eq!((n, d), (UniPoly::one(), Scalar::one()));

        let (n, d) = lagrange_numerator(&[q(0, 1), q(1, 2)], &[0, 0], 0).unwrap();
        assert_eq!(n, up(&[(1, 2), (1, 1)]));
        assert_eq!(d, q(1, 2));

        assert!(matches!(
            lagrange_numerator(&[q(0, 1), q(0, 1)], &[0, 0], 0),
            Err(PolyError::DegenerateDenominator { .. })
        ));
    }

    #[test]
    fn shift_matches_substitution() {
        let p = up(&[(1, 1), (-2, 3), (0, 1), (5, 1)]);
        let c = q(-7, 4);
        let s = p.shift(&c);
        for x in [q(0, 1), q(1, 1), q(-3, 2), q(11, 5)] {
            assert_eq!(s.eval(&x), p.eval(&(&x + &c)));
        }
    }

    #[test]
    fn display() {
        assert_eq!(
            up(&[(5, 6), (17, 6), (1, 1)]).to_string(),
            "u^2 + 17/6*u + 5/6"
        );
        assert_eq!(up(&[(0, 1), (-1, 1)]).to_string(), "-u");
        assert_eq!(UniPoly::zero().to_string(), "0");
    }

    #[test]
    fn json_layout() {
        let p = up(&[(5, 6), (17, 6), (1, 1)]);
        assert_eq!(serde_json::to_string(&p).unwrap(), r#"["5/6","17/6","1"]"#);
        let back: UniPoly = serde_json::from_str(r#"["1","0","0"]"#).unwrap();
        assert_eq!(back, UniPoly::one());
    }

    proptest! {
        #[test]
        fn roots_are_roots(roots in proptest::collection::vec((-50i64..50, 1i64..9), 0..5)) {
            let rs: Vec<Scalar> = roots.iter().map(|&(n, d)| q(n, d)).collect();
            let p = poly_from_roots(&rs);
            prop_assert!(p.is_monic());
            prop_assert_eq!(p.degree(), Some(rs.len()));
            for r in &rs {
                prop_assert!(p.eval(&-r).is_zero());
            }
        }

        #[test]
        fn div_rem_reconstructs(a in proptest::collection::vec(-20i64..20, 0..6),
                                b in proptest::collection::vec(-20i64..20, 1..4)) {
            let a = UniPoly::new(a.into_iter().map(Scalar::from).collect());
            let b = UniPoly::new(b.into_iter().map(Scalar::from).collect());
            prop_assume!(!b.is_zero());
            let (quo, rem) = a.div_rem(&b).unwrap();
            prop_assert_eq!(&(&quo * &b) + &rem, a);
            prop_assert!(rem.degree() < b.degree());
        }
    }
}
