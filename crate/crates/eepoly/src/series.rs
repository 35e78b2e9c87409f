//! Truncated formal power series in an auxiliary variable `t` whose
//! coefficients are [`Poly`] values.
//!
//! A series of order `N` stores the coefficients of `t^0 .. t^N` exactly;
//! everything above `t^N` is unknown. Binary operations truncate to the
//! smaller order.

use thiserror::Error;

use crate::poly::{Poly, Ring};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeriesError {
    /// Inversion needs constant coefficient exactly 1.
    #[error("series constant term is not the unit polynomial")]
    NonUnitConstantTerm,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Series<C: Ring> {
    coeffs: Vec<Poly<C>>,
}

impl<C: Ring> Series<C> {
    /// The zero series of the given truncation order (`order + 1` coefficients).
    pub fn zero(order: usize) -> Self {
        Series {
            coeffs: vec![Poly::zero(); order + 1],
        }
    }

    /// The unit series `1 + 0*t + ...` of the given order.
    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = Poly::one();
        s
    }

    /// Builds a series from explicit coefficients for `t^0 .. t^N`.
    /// The list must be nonempty; its length fixes `N + 1`.
    pub fn from_coeffs(coeffs: Vec<Poly<C>>) -> Self {
        assert!(!coeffs.is_empty(), "a series has at least the t^0 coefficient");
        Series { coeffs }
    }

    /// Truncation order `N`.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of `t^k`; panics above the truncation order.
    pub fn coeff(&self, k: usize) -> &Poly<C> {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[Poly<C>] {
        &self.coeffs
    }

    /// Drops coefficients above `order`.
    pub fn truncate(mut self, order: usize) -> Self {
        self.coeffs.truncate(order + 1);
        self
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        let coeffs = (0..=n)
            .map(|k| self.coeffs[k].clone() + other.coeffs[k].clone())
            .collect();
        Series { coeffs }
    }

    /// Cauchy product, truncated to the smaller order.
    pub fn mul(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        let mut coeffs = vec![Poly::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(n + 1 - i) {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] += &(a * b);
            }
        }
        Series { coeffs }
    }

    /// Multiplicative inverse up to the truncation order.
    ///
    /// Requires the constant coefficient to be the unit polynomial, which
    /// keeps every reciprocal coefficient in the same ring:
    /// `c_0 = 1`, `c_n = -sum_{k=1..n} a_k * c_{n-k}`.
    pub fn inverse(&self) -> Result<Self, SeriesError> {
        if !self.coeffs[0].is_one() {
            return Err(SeriesError::NonUnitConstantTerm);
        }
        let n = self.order();
        let mut inv = vec![Poly::zero(); n + 1];
        inv[0] = Poly::one();
        for k in 1..=n {
            let mut acc = Poly::zero();
            for j in 1..=k {
                if self.coeffs[j].is_zero() || inv[k - j].is_zero() {
                    continue;
                }
                acc += &(&self.coeffs[j] * &inv[k - j]);
            }
            inv[k] = -acc;
        }
        Ok(Series { coeffs: inv })
    }
}
