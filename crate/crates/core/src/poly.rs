//! Exact polynomials and determinants over generic scalar rings.
//!
//! The characteristic polynomial uses Berkowitz's algorithm, which needs only
//! ring operations, so it runs unchanged over machine integers, big integers
//! or rationals. The determinant uses Bareiss elimination, whose divisions
//! are always exact.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{Num, One, Zero};

/// Commutative ring operations needed by the division-free routines.
pub trait Ring:
    Clone + Zero + One + PartialEq + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
}

impl<T> Ring for T where
    T: Clone + Zero + One + PartialEq + Add<Output = T> + Sub<Output = T> + Mul<Output = T> + Neg<Output = T>
{
}

/// Dense polynomial, coefficients stored constant term first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial<T> {
    coeffs: Vec<T>,
}

impl<T: Ring> Polynomial<T> {
    /// Builds from coefficients (constant first); trailing zeros are trimmed.
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.len() > 1 && coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(T::zero());
        }
        Polynomial { coeffs }
    }

    /// Builds from coefficients listed highest degree first.
    pub fn from_descending(mut coeffs: Vec<T>) -> Self {
        coeffs.reverse();
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn leading(&self) -> &T {
        self.coeffs.last().expect("nonempty")
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &T) -> T {
        self.coeffs.iter().rev().fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    /// Coefficient-wise conversion into another ring.
    pub fn map<U: Ring>(&self, f: impl Fn(&T) -> U) -> Polynomial<U> {
        Polynomial::new(self.coeffs.iter().map(f).collect())
    }
}

impl<T: Ring + fmt::Display + PartialOrd> fmt::Display for Polynomial<T> {
    /// Human form, e.g. `x^3 - 3x - 2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() && !(k == 0 && first) {
                continue;
            }
            let neg = *c < T::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let unit = mag.is_one() && k > 0;
            if !unit {
                write!(f, "{mag}")?;
            }
            match k {
                0 => {}
                1 => f.write_str("x")?,
                _ => write!(f, "x^{k}")?,
            }
        }
        Ok(())
    }
}

/// Square matrix as rows.
pub type Matrix<T> = Vec<Vec<T>>;

/// `det(xI - A)` by Berkowitz's division-free algorithm.
pub fn char_poly<T: Ring>(a: &Matrix<T>) -> Polynomial<T> {
    let n = a.len();
    // Highest degree first while building.
    let mut v: Vec<T> = vec![T::one()];
    for r in 0..n {
        // Leading (r+1)x(r+1) block: A_r, row R = a[r][..r], column C = a[..r][r].
        let mut t = Vec::with_capacity(r + 2);
        t.push(T::one());
        t.push(-a[r][r].clone());
        // Powers A_r^k C for k = 0..r-1, contracted with R.
        let mut col: Vec<T> = (0..r).map(|i| a[i][r].clone()).collect();
        for _ in 0..r {
            let rc = (0..r).fold(T::zero(), |acc, j| acc + a[r][j].clone() * col[j].clone());
            t.push(-rc);
            col = (0..r).map(|i| (0..r).fold(T::zero(), |acc, j| acc + a[i][j].clone() * col[j].clone())).collect();
        }
        // Lower-triangular Toeplitz product: new[i] = sum_{j<=i} t[i-j] * v[j].
        let mut next = vec![T::zero(); r + 2];
        for (i, slot) in next.iter_mut().enumerate() {
            for (j, vj) in v.iter().enumerate().take(i + 1) {
                *slot = slot.clone() + t[i - j].clone() * vj.clone();
            }
        }
        v = next;
    }
    Polynomial::from_descending(v)
}

/// Determinant by fraction-free Gaussian elimination (Bareiss).
///
/// Every division is exact, so this works over integer types as well as
/// fields.
pub fn det_bareiss<T: Num + Clone + Neg<Output = T>>(a: &Matrix<T>) -> T {
    let n = a.len();
    if n == 0 {
        return T::one();
    }
    let mut m = a.clone();
    let mut sign_flip = false;
    let mut prev = T::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign_flip = !sign_flip;
                }
                None => return T::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[i][j].clone() * m[k][k].clone() - m[i][k].clone() * m[k][j].clone();
                m[i][j] = num / prev.clone();
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign_flip {
        -d
    } else {
        d
    }
}

/// Converts a 0/1 matrix into any ring.
pub fn lift<T: Ring>(a: &[Vec<u8>]) -> Matrix<T> {
    a.iter().map(|row| row.iter().map(|&x| if x == 0 { T::zero() } else { T::one() }).collect()).collect()
}
