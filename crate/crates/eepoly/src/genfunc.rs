//! Generating functions of the path and cycle families as truncated series.
//!
//! ```text
//! sum_n xi(P_n) t^n = (1 - y t) / (1 - (x+y) t - z t^2)
//! sum_n xi(C_n) t^n = (1 + z t^2) / (1 - (x+y) t - z t^2)
//!                   + (xy - y + z) t / (1 - y t)
//! ```
//!
//! Both rational functions have unit constant term downstairs, so the
//! coefficients come out of exact series inversion; no division happens in
//! the coefficient ring.

use crate::{IntPoly, IntSeries};

/// Series whose `t^n` coefficient is `xi` of the path on `n` vertices,
/// for `n = 0..=order`.
pub fn path_series(order: usize) -> IntSeries {
    let numerator = poly_in_t(order, &[IntPoly::one(), -IntPoly::y()]);
    numerator.mul(&root_denominator(order).inverse().expect("unit constant"))
}

/// Series whose `t^n` coefficient is `xi` of the cycle on `n` vertices;
/// the `t^0` coefficient is 1 by the empty-graph convention.
pub fn cycle_series(order: usize) -> IntSeries {
    let head = poly_in_t(order, &[IntPoly::one(), IntPoly::zero(), IntPoly::z()])
        .mul(&root_denominator(order).inverse().expect("unit constant"));
    let tail_coeff = IntPoly::x() * IntPoly::y() - IntPoly::y() + IntPoly::z();
    let tail = poly_in_t(order, &[IntPoly::zero(), tail_coeff]).mul(
        &poly_in_t(order, &[IntPoly::one(), -IntPoly::y()])
            .inverse()
            .expect("unit constant"),
    );
    head.add(&tail)
}

/// `1 - (x+y) t - z t^2`, the characteristic denominator.
pub fn root_denominator(order: usize) -> IntSeries {
    poly_in_t(
        order,
        &[
            IntPoly::one(),
            -(IntPoly::x() + IntPoly::y()),
            -IntPoly::z(),
        ],
    )
}

/// A polynomial in `t` as a series of the given order; coefficients above
/// the order are dropped.
fn poly_in_t(order: usize, coeffs: &[IntPoly]) -> IntSeries {
    let mut v = vec![IntPoly::zero(); order + 1];
    for (k, p) in coeffs.iter().enumerate().take(order + 1) {
        v[k] = p.clone();
    }
    IntSeries::from_coeffs(v)
}
