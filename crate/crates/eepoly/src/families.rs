//! Path and cycle families: exact recurrence polynomials and numeric
//! closed-form evaluation.
//!
//! The path polynomials satisfy the three-term recurrence
//! `xi(P_n) = (x + y) xi(P_{n-1}) + z xi(P_{n-2})`, whose characteristic
//! equation `r^2 - (x+y) r - z = 0` has discriminant
//! `D = x^2 + 2xy + y^2 + 4z`. The closed forms follow the sign of `D`:
//! distinct real roots, complex conjugate roots (trigonometric form, no
//! complex intermediates), or a repeated root. Cycles add the particular
//! tail `y^{n-1} (xy - y + z)` on top of the same roots.

use num_traits::float::FloatConst;
use num_traits::Float;
use thiserror::Error;

use crate::poly::Point3;
use crate::IntPoly;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FamiliesError {
    /// The phase angle only exists for a negative discriminant.
    #[error("phase is undefined for discriminant {0} >= 0")]
    PhaseUndefined(f64),
}

/// Exact `xi` of the path on `n` vertices, by iterating the recurrence.
pub fn xi_path_poly(n: usize) -> IntPoly {
    path_prefix(n).pop().expect("prefix is nonempty")
}

/// The values for paths on `0..=n` vertices.
fn path_prefix(n: usize) -> Vec<IntPoly> {
    let mut values = Vec::with_capacity(n + 1);
    values.push(IntPoly::one());
    if n == 0 {
        return values;
    }
    values.push(IntPoly::x());
    let x_plus_y = IntPoly::x() + IntPoly::y();
    let z = IntPoly::z();
    for k in 2..=n {
        let next = &x_plus_y * &values[k - 1] + &z * &values[k - 2];
        values.push(next);
    }
    values
}

/// Exact `xi` of the cycle on `n` vertices.
///
/// `n = 0` returns 1 (the empty-graph convention) rather than an error.
/// The one- and two-vertex values are pinned; larger cycles iterate
/// `xi(C_n) = xi(P_n) + y xi(C_{n-1}) + z xi(P_{n-2})`.
pub fn xi_cycle_poly(n: usize) -> IntPoly {
    match n {
        0 => IntPoly::one(),
        1 => cycle_one(),
        2 => cycle_two(),
        _ => {
            let paths = path_prefix(n);
            let y = IntPoly::y();
            let z = IntPoly::z();
            let mut value = cycle_two();
            for k in 3..=n {
                value = paths[k].clone() + &y * &value + &z * &paths[k - 2];
            }
            value
        }
    }
}

/// x + x*y + z, the single loop.
fn cycle_one() -> IntPoly {
    IntPoly::x() + IntPoly::x() * IntPoly::y() + IntPoly::z()
}

/// x^2 + 2*x*y + x*y^2 + y*z + 2*z, the double edge.
fn cycle_two() -> IntPoly {
    let (x, y, z) = (IntPoly::x(), IntPoly::y(), IntPoly::z());
    let two = |p: &IntPoly| p.scale(&2.into());
    x.checked_pow(2).unwrap()
        + two(&(x.clone() * y.clone()))
        + x * y.clone().checked_pow(2).unwrap()
        + y * z.clone()
        + two(&z)
}

/// Discriminant of the path recurrence: `x^2 + 2xy + y^2 + 4z`.
pub fn discriminant<F: Float>(pt: &Point3<F>) -> F {
    let s = pt.x + pt.y;
    s * s + cast::<F>(4.0) * pt.z
}

/// Phase angle of the complex characteristic roots, in `(0, pi)`.
///
/// Only defined for `D < 0`:
/// `arctan(sqrt(-D)/(x+y))` for `x + y > 0`, `pi/2` at `x + y = 0`, and
/// `pi + arctan(sqrt(-D)/(x+y))` for `x + y < 0`.
pub fn phase_phi<F: Float + FloatConst>(pt: &Point3<F>) -> Result<F, FamiliesError> {
    let d = discriminant(pt);
    if d >= F::zero() {
        return Err(FamiliesError::PhaseUndefined(d.to_f64().unwrap_or(f64::NAN)));
    }
    Ok(phi_unchecked(pt, d))
}

fn phi_unchecked<F: Float + FloatConst>(pt: &Point3<F>, d: F) -> F {
    let s = pt.x + pt.y;
    let root = (-d).sqrt();
    if s > F::zero() {
        (root / s).atan()
    } else if s == F::zero() {
        F::FRAC_PI_2()
    } else {
        F::PI() + (root / s).atan()
    }
}

/// Which closed-form branch applies at a point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CaseKind {
    PositiveDiscriminant,
    NegativeDiscriminant,
    RepeatedRoot,
}

/// Case selection with the cached discriminant and, in the negative case,
/// the phase angle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosedFormCase<F> {
    pub kind: CaseKind,
    pub discriminant: F,
    pub phase: Option<F>,
}

/// Classifies a point by the sign of `D`.
///
/// `D` counts as zero within `1e-12 * max(1, (x+y)^2, 4|z|)`: the split-root
/// formulas divide by `sqrt(|D|)` and lose all precision there, while the
/// repeated-root formula is the two-sided limit.
pub fn classify<F: Float + FloatConst>(pt: &Point3<F>) -> ClosedFormCase<F> {
    let d = discriminant(pt);
    let s = pt.x + pt.y;
    let scale = F::one().max(s * s).max(cast::<F>(4.0) * pt.z.abs());
    let kind = if d.abs() <= cast::<F>(1e-12) * scale {
        CaseKind::RepeatedRoot
    } else if d > F::zero() {
        CaseKind::PositiveDiscriminant
    } else {
        CaseKind::NegativeDiscriminant
    };
    let phase = match kind {
        CaseKind::NegativeDiscriminant => Some(phi_unchecked(pt, d)),
        _ => None,
    };
    ClosedFormCase {
        kind,
        discriminant: d,
        phase,
    }
}

/// Closed-form `xi` of the path on `n` vertices, selecting the branch from
/// the sign of the discriminant. Total: every point falls in one case.
pub fn xi_path_closed<F: Float + FloatConst>(n: usize, pt: &Point3<F>) -> F {
    if n == 0 {
        return F::one();
    }
    match classify(pt).kind {
        CaseKind::PositiveDiscriminant => xi_path_closed_positive(n, pt),
        CaseKind::NegativeDiscriminant => xi_path_closed_negative(n, pt),
        CaseKind::RepeatedRoot => xi_path_closed_repeated(n, pt),
    }
}

/// Distinct-real-roots branch, valid for `D > 0`:
/// `c1 r1^n + c2 r2^n` with `r_{1,2} = ((x+y) -/+ sqrt(D))/2`.
pub fn xi_path_closed_positive<F: Float + FloatConst>(n: usize, pt: &Point3<F>) -> F {
    let root = discriminant(pt).sqrt();
    let s = pt.x + pt.y;
    let half = cast::<F>(0.5);
    let r1 = (s - root) * half;
    let r2 = (s + root) * half;
    let c1 = (root - pt.x + pt.y) / (cast::<F>(2.0) * root);
    let c2 = (root + pt.x - pt.y) / (cast::<F>(2.0) * root);
    c1 * powi(r1, n) + c2 * powi(r2, n)
}

/// Complex-conjugate-roots branch, valid for `D < 0` (which forces `z < 0`):
/// `(-z)^{n/2} (cos(n phi) + (x-y)/sqrt(-D) sin(n phi))`, evaluated in real
/// arithmetic throughout.
pub fn xi_path_closed_negative<F: Float + FloatConst>(n: usize, pt: &Point3<F>) -> F {
    let d = discriminant(pt);
    let phi = phi_unchecked(pt, d);
    let n_f = cast::<F>(n as f64);
    let amplitude = (-pt.z).powf(n_f * cast::<F>(0.5));
    let angle = n_f * phi;
    amplitude * (angle.cos() + (pt.x - pt.y) / (-d).sqrt() * angle.sin())
}

/// Repeated-root branch, valid at `D = 0`:
/// `((n+1)x - (n-1)y)/2 * ((x+y)/2)^{n-1}`; in particular 0 for `n >= 2`
/// when `x + y = 0`.
pub fn xi_path_closed_repeated<F: Float + FloatConst>(n: usize, pt: &Point3<F>) -> F {
    if n == 0 {
        return F::one();
    }
    let half = cast::<F>(0.5);
    let linear = (cast::<F>((n + 1) as f64) * pt.x - cast::<F>((n - 1) as f64) * pt.y) * half;
    linear * powi((pt.x + pt.y) * half, n - 1)
}

/// Closed-form `xi` of the cycle on `n` vertices; `n = 0` returns 1 by the
/// empty-graph convention. At the case boundary the dedicated boundary
/// formula is used, where the two root branches coincide.
pub fn xi_cycle_closed<F: Float + FloatConst>(n: usize, pt: &Point3<F>) -> F {
    if n == 0 {
        return F::one();
    }
    match classify(pt).kind {
        CaseKind::PositiveDiscriminant => xi_cycle_closed_nonnegative(n, pt),
        CaseKind::NegativeDiscriminant => xi_cycle_closed_nonpositive(n, pt),
        CaseKind::RepeatedRoot => xi_cycle_closed_boundary(n, pt),
    }
}

/// Root-power branch, valid for `D >= 0` and `n >= 1`:
/// `r1^n + r2^n + y^{n-1} (xy - y + z)`.
pub fn xi_cycle_closed_nonnegative<F: Float + FloatConst>(n: usize, pt: &Point3<F>) -> F {
    if n == 0 {
        return F::one();
    }
    let root = discriminant(pt).sqrt();
    let s = pt.x + pt.y;
    let half = cast::<F>(0.5);
    let r1 = (s - root) * half;
    let r2 = (s + root) * half;
    powi(r1, n) + powi(r2, n) + cycle_tail(n, pt)
}

/// Trigonometric branch, valid for `D <= 0` and `n >= 1`:
/// `2 (-z)^{n/2} cos(n phi) + y^{n-1} (xy - y + z)`.
pub fn xi_cycle_closed_nonpositive<F: Float + FloatConst>(n: usize, pt: &Point3<F>) -> F {
    if n == 0 {
        return F::one();
    }
    let d = discriminant(pt);
    let phi = phi_unchecked(pt, d);
    let n_f = cast::<F>(n as f64);
    let amplitude = (-pt.z).powf(n_f * cast::<F>(0.5));
    cast::<F>(2.0) * amplitude * (n_f * phi).cos() + cycle_tail(n, pt)
}

/// Boundary formula at `z = -((x+y)/2)^2` for `n >= 1`, the common limit of
/// the two branches: `2 ((x+y)/2)^n - (x^2 - 2xy + y^2 + 4y)/4 * y^{n-1}`.
pub fn xi_cycle_closed_boundary<F: Float + FloatConst>(n: usize, pt: &Point3<F>) -> F {
    if n == 0 {
        return F::one();
    }
    let half = cast::<F>(0.5);
    let quarter = cast::<F>(0.25);
    let head = cast::<F>(2.0) * powi((pt.x + pt.y) * half, n);
    let diff = pt.x - pt.y;
    head - (diff * diff + cast::<F>(4.0) * pt.y) * quarter * powi(pt.y, n - 1)
}

fn cycle_tail<F: Float>(n: usize, pt: &Point3<F>) -> F {
    powi(pt.y, n - 1) * (pt.x * pt.y - pt.y + pt.z)
}

fn cast<F: Float>(v: f64) -> F {
    F::from(v).expect("constant fits the float type")
}

/// Integer power with sign-correct handling of negative bases.
fn powi<F: Float>(base: F, e: usize) -> F {
    base.powi(i32::try_from(e).expect("exponent fits i32"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Monomial;
    use crate::FloatPoint;
    use num_bigint::BigInt;

    fn poly(terms: &[(u32, u32, u32, i64)]) -> IntPoly {
        IntPoly::from_terms(
            terms
                .iter()
                .map(|&(a, b, c, k)| (Monomial::new(a, b, c), BigInt::from(k))),
        )
    }

    fn pt(x: f64, y: f64, z: f64) -> FloatPoint {
        Point3::new(x, y, z)
    }

    #[test]
    fn path_base_and_small_cases() {
        assert_eq!(xi_path_poly(0), IntPoly::one());
        assert_eq!(xi_path_poly(1), IntPoly::x());
        assert_eq!(
            xi_path_poly(2),
            poly(&[(2, 0, 0, 1), (1, 1, 0, 1), (0, 0, 1, 1)])
        );
        assert_eq!(
            xi_path_poly(3),
            poly(&[
                (3, 0, 0, 1),
                (2, 1, 0, 2),
                (1, 2, 0, 1),
                (1, 0, 1, 2),
                (0, 1, 1, 1)
            ])
        );
    }

    #[test]
    fn cycle_small_cases() {
        assert_eq!(xi_cycle_poly(0), IntPoly::one());
        assert_eq!(
            xi_cycle_poly(1),
            poly(&[(1, 0, 0, 1), (1, 1, 0, 1), (0, 0, 1, 1)])
        );
        assert_eq!(
            xi_cycle_poly(2),
            poly(&[
                (2, 0, 0, 1),
                (1, 1, 0, 2),
                (1, 2, 0, 1),
                (0, 1, 1, 1),
                (0, 0, 1, 2)
            ])
        );
        assert_eq!(
            xi_cycle_poly(3),
            poly(&[
                (3, 0, 0, 1),
                (2, 1, 0, 3),
                (1, 2, 0, 3),
                (1, 3, 0, 1),
                (1, 0, 1, 3),
                (0, 1, 1, 3),
                (0, 2, 1, 1)
            ])
        );
    }

    #[test]
    fn cycle_recurrence_reproduces_pinned_two_vertex_value() {
        // xi(C_2) = xi(P_2) + y xi(C_1) + z xi(P_0)
        let recurred =
            xi_path_poly(2) + IntPoly::y() * xi_cycle_poly(1) + IntPoly::z() * IntPoly::one();
        assert_eq!(recurred, xi_cycle_poly(2));
    }

    #[test]
    fn discriminant_hand_values() {
        assert_eq!(discriminant(&pt(2.0, 1.0, 1.0)), 13.0);
        assert_eq!(discriminant(&pt(0.0, 0.0, -1.0)), -4.0);
        assert_eq!(discriminant(&pt(1.0, 1.0, -1.0)), 0.0);
    }

    #[test]
    fn phase_branches() {
        use std::f64::consts::{FRAC_PI_2, PI};
        assert_eq!(phase_phi(&pt(1.0, -1.0, -1.0)).unwrap(), FRAC_PI_2);
        let acute = phase_phi(&pt(1.0, 0.5, -3.0)).unwrap();
        assert!(acute > 0.0 && acute < FRAC_PI_2);
        let obtuse = phase_phi(&pt(-1.0, -0.5, -3.0)).unwrap();
        assert!(obtuse > FRAC_PI_2 && obtuse < PI);
        assert!(phase_phi(&pt(2.0, 1.0, 1.0)).is_err());
    }

    #[test]
    fn classify_cases() {
        assert_eq!(
            classify(&pt(2.0, 1.0, 1.0)).kind,
            CaseKind::PositiveDiscriminant
        );
        let negative = classify(&pt(0.0, 0.0, -1.0));
        assert_eq!(negative.kind, CaseKind::NegativeDiscriminant);
        assert!(negative.phase.is_some());
        assert_eq!(classify(&pt(1.0, 1.0, -1.0)).kind, CaseKind::RepeatedRoot);
        // within the relative tolerance of the boundary
        assert_eq!(
            classify(&pt(1.0, 1.0, -1.0 - 1e-14)).kind,
            CaseKind::RepeatedRoot
        );
    }

    #[test]
    fn path_closed_hand_values() {
        let v = xi_path_closed(2, &pt(2.0, 1.0, 1.0));
        assert!((v - 7.0).abs() < 1e-12, "got {}", v);

        // oscillatory point: xi(P_4)(0,0,-1) = z^2 = 1
        let v = xi_path_closed(4, &pt(0.0, 0.0, -1.0));
        assert!((v - 1.0).abs() < 1e-12, "got {}", v);

        // repeated root: xi(P_5)(1,1,-1) = 1
        let v = xi_path_closed(5, &pt(1.0, 1.0, -1.0));
        assert!((v - 1.0).abs() < 1e-12, "got {}", v);

        assert_eq!(xi_path_closed(0, &pt(3.0, -2.0, 0.25)), 1.0);
    }

    #[test]
    fn path_repeated_root_vanishes_when_x_plus_y_is_zero() {
        // x + y = 0 with z = 0 makes D = 0; the path values vanish from n = 2 on
        let p = pt(1.0, -1.0, 0.0);
        assert_eq!(classify(&p).kind, CaseKind::RepeatedRoot);
        assert_eq!(xi_path_closed(1, &p), 1.0);
        for n in 2..=6 {
            assert_eq!(xi_path_closed(n, &p), 0.0, "n = {}", n);
        }
    }

    #[test]
    fn cycle_closed_hand_values() {
        let v = xi_cycle_closed(1, &pt(2.0, 1.0, 1.0));
        assert!((v - 5.0).abs() < 1e-12, "got {}", v);

        let v = xi_cycle_closed(3, &pt(2.0, 1.0, 1.0));
        assert!((v - 38.0).abs() < 1e-11, "got {}", v);

        // boundary: xi(C_2)(1,1,-1) = 1
        let v = xi_cycle_closed(2, &pt(1.0, 1.0, -1.0));
        assert!((v - 1.0).abs() < 1e-12, "got {}", v);

        assert_eq!(xi_cycle_closed(0, &pt(2.0, 1.0, 1.0)), 1.0);
    }

    #[test]
    fn closed_forms_match_recurrence_on_a_small_grid() {
        let points = [
            pt(2.0, 1.0, 1.0),
            pt(0.5, -0.25, 2.0),
            pt(-1.5, 0.5, -3.0),
            pt(0.0, 0.0, -2.0),
            pt(-2.0, -1.0, -4.0),
            pt(1.0, 1.0, -1.0),
            pt(3.0, 0.0, -2.25),
        ];
        for n in 0..=12 {
            let path = xi_path_poly(n);
            let cycle = xi_cycle_poly(n);
            for p in &points {
                let exact = path.eval_float(p);
                let closed = xi_path_closed(n, p);
                assert!(
                    (closed - exact).abs() <= 1e-9 * exact.abs().max(1.0),
                    "path n={} at {:?}: {} vs {}",
                    n,
                    p,
                    closed,
                    exact
                );
                if n >= 1 {
                    let exact = cycle.eval_float(p);
                    let closed = xi_cycle_closed(n, p);
                    assert!(
                        (closed - exact).abs() <= 1e-9 * exact.abs().max(1.0),
                        "cycle n={} at {:?}: {} vs {}",
                        n,
                        p,
                        closed,
                        exact
                    );
                }
            }
        }
    }

    #[test]
    fn repeated_root_continuity() {
        for (x, y) in [(2.0, 1.0), (1.0, -0.5), (-1.0, -2.0), (0.5, 0.25)] {
            let boundary_z = -((x + y) / 2.0) * ((x + y) / 2.0);
            for n in [2, 5, 10, 20] {
                let at_boundary = xi_path_closed(n, &pt(x, y, boundary_z));
                for dz in [1e-9, -1e-9] {
                    let nearby = xi_path_closed(n, &pt(x, y, boundary_z + dz));
                    let tol = 1e-6 * at_boundary.abs().max(1.0);
                    assert!(
                        (nearby - at_boundary).abs() <= tol,
                        "n={} (x,y)=({},{}) dz={}: {} vs {}",
                        n,
                        x,
                        y,
                        dz,
                        nearby,
                        at_boundary
                    );
                }
            }
        }
    }

    #[test]
    fn closed_forms_work_in_single_precision() {
        let p: Point3<f32> = Point3::new(2.0, 1.0, 1.0);
        let v = xi_path_closed(2, &p);
        assert!((v - 7.0).abs() < 1e-3);
        assert_eq!(classify(&p).kind, CaseKind::PositiveDiscriminant);
    }
}
