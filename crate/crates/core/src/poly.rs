//! Univariate polynomials generic over an exact scalar, constant term first.
//!
//! Coefficient vectors are normalized: the leading coefficient is nonzero
//! unless the polynomial is zero, in which case the vector is empty.

use crate::matrix::Matrix;
use crate::{Error, Int, Result};
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Mul, Neg};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly<T> {
    coeffs: Vec<T>,
}

impl<T: Zero> Poly<T> {
    /// Build from constant-first coefficients, trimming trailing zeros.
    pub fn from_coeffs(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Constant-first coefficient slice (empty for the zero polynomial).
    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&T> {
        self.coeffs.last()
    }
}

impl<T: Zero + One + PartialEq> Poly<T> {
    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }
}

impl<T: Clone + Zero> Poly<T> {
    /// The monomial `c x^k`.
    pub fn monomial(c: T, k: usize) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![T::zero(); k + 1];
        coeffs[k] = c;
        Poly { coeffs }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i).cloned().unwrap_or_else(T::zero);
            let b = other.coeffs.get(i).cloned().unwrap_or_else(T::zero);
            out.push(a + b);
        }
        Poly::from_coeffs(out)
    }

    /// Evaluate by Horner's rule.
    pub fn eval(&self, x: &T) -> T
    where
        T: Mul<Output = T>,
    {
        let mut acc = T::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }
}

impl<T: Clone + Zero + Neg<Output = T>> Poly<T> {
    pub fn neg(&self) -> Self {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }
}

impl<T: Clone + Zero + Mul<Output = T>> Poly<T> {
    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::from_coeffs(out)
    }

    /// Formal derivative. The scalar must absorb small integer multiples;
    /// repeated addition keeps the bound at `Zero + Mul`.
    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        let mut out = Vec::with_capacity(self.coeffs.len() - 1);
        for (k, c) in self.coeffs.iter().enumerate().skip(1) {
            let mut acc = T::zero();
            for _ in 0..k {
                acc = acc + c.clone();
            }
            out.push(acc);
        }
        Poly::from_coeffs(out)
    }
}

/// Resultant of two integer polynomials: the determinant of their Sylvester
/// matrix, computed by fraction-free elimination so every intermediate stays
/// an exact integer.
pub fn resultant(f: &Poly<Int>, g: &Poly<Int>) -> Int {
    let (Some(m), Some(n)) = (f.degree(), g.degree()) else {
        return Int::zero();
    };
    if m == 0 && n == 0 {
        return Int::one();
    }
    let size = m + n;
    let mut rows: Vec<Vec<Int>> = Vec::with_capacity(size);
    for shift in 0..n {
        let mut row = vec![Int::zero(); size];
        for (k, c) in f.coeffs().iter().enumerate() {
            row[shift + (m - k)] = c.clone();
        }
        rows.push(row);
    }
    for shift in 0..m {
        let mut row = vec![Int::zero(); size];
        for (k, c) in g.coeffs().iter().enumerate() {
            row[shift + (n - k)] = c.clone();
        }
        rows.push(row);
    }
    Matrix::from_rows(rows).expect("square by construction").det()
}

/// Discriminant of a monic integer polynomial:
/// `(-1)^(n(n-1)/2) Res(f, f')`.
pub fn discriminant(f: &Poly<Int>) -> Result<Int> {
    let n = f
        .degree()
        .filter(|&d| d >= 1)
        .ok_or_else(|| Error::Internal("discriminant needs degree >= 1".into()))?;
    let res = resultant(f, &f.derivative());
    // monic leading coefficient, so no division by lc(f)
    let sign_exp = n * (n - 1) / 2;
    Ok(if sign_exp % 2 == 0 { res } else { -res })
}

impl<T> fmt::Display for Poly<T>
where
    T: Zero + One + PartialEq + Signed + fmt::Display,
{
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match k {
                0 => write!(f, "{mag}")?,
                _ => {
                    if mag.is_one() {
                        write!(f, "x")?;
                    } else {
                        write!(f, "{mag}*x")?;
                    }
                    if k > 1 {
                        write!(f, "^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ip(cs: &[i64]) -> Poly<Int> {
        Poly::from_coeffs(cs.iter().map(|&c| Int::from(c)).collect())
    }

    #[test]
    fn normalization_and_degree() {
        assert_eq!(ip(&[1, 2, 0, 0]).degree(), Some(1));
        assert!(ip(&[0, 0]).is_zero());
        assert_eq!(Poly::<Int>::zero().degree(), None);
    }

    #[test]
    fn discriminant_quadratics() {
        // x^2 + 1 -> -4, x^2 - 2 -> 8; both checkable as 3x3 Sylvester determinants
        assert_eq!(discriminant(&ip(&[1, 0, 1])).unwrap(), Int::from(-4));
        assert_eq!(discriminant(&ip(&[-2, 0, 1])).unwrap(), Int::from(8));
        // (x-1)^2 = x^2 - 2x + 1 has a repeated root
        assert_eq!(discriminant(&ip(&[1, -2, 1])).unwrap(), Int::from(0));
    }

    #[test]
    fn discriminant_cubic() {
        // disc(x^3 + px + q) = -4p^3 - 27q^2; here x^3 - 2: -27*4 = -108
        assert_eq!(discriminant(&ip(&[-2, 0, 0, 1])).unwrap(), Int::from(-108));
    }

    #[test]
    fn display_reads_naturally() {
        assert_eq!(ip(&[-2, -3, 0, 1]).to_string(), "x^3 - 3*x - 2");
        assert_eq!(ip(&[5]).to_string(), "5");
    }

    proptest! {
        #[test]
        fn product_rule(a in prop::collection::vec(-6i64..=6, 0..5),
                        b in prop::collection::vec(-6i64..=6, 0..5)) {
            let f = ip(&a);
            let g = ip(&b);
            let lhs = f.mul(&g).derivative();
            let rhs = f.derivative().mul(&g).add(&f.mul(&g.derivative()));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn resultant_vanishes_iff_common_root(r in -4i64..=4, s in -4i64..=4, t in -4i64..=4) {
            // f = (x - r)(x - s), g = (x - t)
            let f = ip(&[r * s, -(r + s), 1]);
            let g = ip(&[-t, 1]);
            let res = resultant(&f, &g);
            prop_assert_eq!(res.is_zero(), t == r || t == s);
        }
    }
}
