//! Dense matrices generic over an exact scalar.
//!
//! The scalar bounds come from `num-traits`, so the same kernels serve
//! `Int` (Berkowitz characteristic polynomials of adjacency matrices) and
//! `Rat` (intertwiners, Gram matrices, congruence transforms). Determinants
//! use fraction-free Bareiss elimination, which is exact over any integral
//! domain; inversion requires a field scalar and is exact over `Rat`.

use crate::poly::Poly;
use crate::Error;
use num_traits::{One, Zero};
use std::ops::{Div, Index, IndexMut, Mul, Neg, Sub};

/// Row-major dense matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T> Matrix<T> {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self, Error> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::ShapeMismatch("ragged rows".into()));
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// Apply `f` entrywise, e.g. to convert the scalar type.
    pub fn map<U>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }
}

impl<T: Clone> Matrix<T> {
    pub fn filled(rows: usize, cols: usize, value: T) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![value; rows * cols],
        }
    }

    pub fn transpose(&self) -> Self {
        let mut out = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                out.push(self[(i, j)].clone());
            }
        }
        Matrix {
            rows: self.cols,
            cols: self.rows,
            data: out,
        }
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

impl<T: Clone + Zero> Matrix<T> {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix::filled(rows, cols, T::zero())
    }
}

impl<T: Clone + Zero + PartialEq> Matrix<T> {
    pub fn is_symmetric(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }
}

impl<T: Clone + Zero + One> Matrix<T> {
    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zero(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }
}

impl<T> Matrix<T>
where
    T: Clone + Zero + Mul<Output = T>,
{
    pub fn mul(&self, other: &Matrix<T>) -> Result<Matrix<T>, Error> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out: Matrix<T> = Matrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)].clone();
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let t = a.clone() * other[(k, j)].clone();
                    out[(i, j)] = out[(i, j)].clone() + t;
                }
            }
        }
        Ok(out)
    }
}

impl<T> Matrix<T>
where
    T: Clone + Zero + One + Neg<Output = T> + Sub<Output = T> + Mul<Output = T> + Div<Output = T> + PartialEq,
{
    /// Exact determinant by fraction-free Bareiss elimination.
    ///
    /// Over an integral domain every division performed is exact; over a
    /// field this degenerates to ordinary elimination. Panics only if the
    /// matrix is not square.
    pub fn det(&self) -> T {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return T::one();
        }
        let mut m = self.data.clone();
        let at = |m: &Vec<T>, i: usize, j: usize| m[i * n + j].clone();
        let mut sign_flip = false;
        let mut prev = T::one();
        for k in 0..n - 1 {
            if at(&m, k, k).is_zero() {
                match (k + 1..n).find(|&i| !at(&m, i, k).is_zero()) {
                    Some(i) => {
                        for j in 0..n {
                            m.swap(k * n + j, i * n + j);
                        }
                        sign_flip = !sign_flip;
                    }
                    None => return T::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = at(&m, i, j) * at(&m, k, k) - at(&m, i, k) * at(&m, k, j);
                    m[i * n + j] = num / prev.clone();
                }
            }
            prev = at(&m, k, k);
        }
        let d = at(&m, n - 1, n - 1);
        if sign_flip {
            -d
        } else {
            d
        }
    }

    /// Exact inverse by Gauss-Jordan elimination; `None` if singular.
    ///
    /// Requires a field scalar (every nonzero pivot must be invertible).
    pub fn inverse(&self) -> Option<Matrix<T>> {
        assert!(self.is_square(), "inverse of a non-square matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut inv: Matrix<T> = Matrix::identity(n);
        for col in 0..n {
            let pivot = (col..n).find(|&i| !a[(i, col)].is_zero())?;
            if pivot != col {
                for j in 0..n {
                    let (x, y) = (a[(pivot, j)].clone(), a[(col, j)].clone());
                    a[(pivot, j)] = y;
                    a[(col, j)] = x;
                    let (x, y) = (inv[(pivot, j)].clone(), inv[(col, j)].clone());
                    inv[(pivot, j)] = y;
                    inv[(col, j)] = x;
                }
            }
            let p = a[(col, col)].clone();
            for j in 0..n {
                a[(col, j)] = a[(col, j)].clone() / p.clone();
                inv[(col, j)] = inv[(col, j)].clone() / p.clone();
            }
            for i in 0..n {
                if i == col || a[(i, col)].is_zero() {
                    continue;
                }
                let f = a[(i, col)].clone();
                for j in 0..n {
                    let t = f.clone() * a[(col, j)].clone();
                    a[(i, j)] = a[(i, j)].clone() - t;
                    let t = f.clone() * inv[(col, j)].clone();
                    inv[(i, j)] = inv[(i, j)].clone() - t;
                }
            }
        }
        Some(inv)
    }
}

impl<T> Matrix<T>
where
    T: Clone + Zero + One + Neg<Output = T> + Mul<Output = T>,
{
    /// Characteristic polynomial `det(x I - A)` by the division-free
    /// Berkowitz algorithm, constant coefficient first.
    ///
    /// Works over any commutative ring, so integer adjacency matrices stay
    /// integer throughout; no pivoting, no divisions, no rounding.
    pub fn char_poly(&self) -> Result<Poly<T>, Error> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch(
                "characteristic polynomial of a non-square matrix".into(),
            ));
        }
        let n = self.rows;
        // coefficients of the leading i x i block, highest degree first
        let mut c: Vec<T> = vec![T::one()];
        for i in 0..n {
            // Krylov products s_k = row . M^k . col against the leading block
            let row: Vec<T> = (0..i).map(|j| self[(i, j)].clone()).collect();
            let mut v: Vec<T> = (0..i).map(|j| self[(j, i)].clone()).collect();
            let mut q: Vec<T> = Vec::with_capacity(i + 2);
            q.push(T::one());
            q.push(-self[(i, i)].clone());
            for _ in 0..i {
                let s = row
                    .iter()
                    .zip(v.iter())
                    .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone());
                q.push(-s);
                let mut next = vec![T::zero(); i];
                for (r, item) in next.iter_mut().enumerate() {
                    let mut acc = T::zero();
                    for (k, vk) in v.iter().enumerate() {
                        acc = acc + self[(r, k)].clone() * vk.clone();
                    }
                    *item = acc;
                }
                v = next;
            }
            // convolve q into the running coefficient vector
            let mut next = vec![T::zero(); i + 2];
            for (a, qa) in q.iter().enumerate() {
                for (b, cb) in c.iter().enumerate() {
                    if a + b < i + 2 {
                        next[a + b] = next[a + b].clone() + qa.clone() * cb.clone();
                    }
                }
            }
            c = next;
        }
        c.reverse();
        Ok(Poly::from_coeffs(c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{Int, IntMatrix, Rat, RatMatrix};

    fn int_m(rows: &[&[i64]]) -> IntMatrix {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| Int::from(x)).collect()).collect())
            .unwrap()
    }

    #[test]
    fn bareiss_det_matches_known_values() {
        assert_eq!(int_m(&[&[2, 1], &[1, 2]]).det(), Int::from(3));
        assert_eq!(int_m(&[&[0, 1], &[1, 0]]).det(), Int::from(-1));
        assert_eq!(int_m(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]]).det(), Int::from(0));
        assert_eq!(
            int_m(&[&[3, 0, 0], &[0, 0, 2], &[0, 5, 0]]).det(),
            Int::from(-30)
        );
    }

    #[test]
    fn inverse_roundtrip() {
        let m: RatMatrix = int_m(&[&[2, 1], &[1, 2]]).map(|v| Rat::from(v.clone()));
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), Matrix::identity(2));
        let singular: RatMatrix = int_m(&[&[1, 2], &[2, 4]]).map(|v| Rat::from(v.clone()));
        assert!(singular.inverse().is_none());
    }

    #[test]
    fn char_poly_small_cases() {
        // 3-cycle adjacency: x^3 - 3x - 2
        let a = int_m(&[&[0, 1, 1], &[1, 0, 1], &[1, 1, 0]]);
        let p = a.char_poly().unwrap();
        assert_eq!(
            p.coeffs(),
            &[Int::from(-2), Int::from(-3), Int::from(0), Int::from(1)]
        );
        // zero matrix: x^n
        let z: IntMatrix = Matrix::zero(4, 4);
        assert_eq!(
            z.char_poly().unwrap().coeffs(),
            &[Int::from(0), Int::from(0), Int::from(0), Int::from(0), Int::from(1)]
        );
    }

    #[test]
    fn char_poly_constant_term_is_det_up_to_sign() {
        let a = int_m(&[&[1, 2, 0, 1], &[0, 3, 1, 1], &[2, 0, 1, 0], &[1, 1, 1, 2]]);
        let p = a.char_poly().unwrap();
        // p(0) = det(-A) = (-1)^n det(A)
        assert_eq!(p.coeffs()[0], a.det());
    }
}
