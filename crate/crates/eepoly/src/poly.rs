//! Sparse trivariate polynomials in `x`, `y`, `z` over an exact coefficient ring.
//!
//! A [`Poly`] is a map from [`Monomial`] (an exponent triple) to a nonzero
//! coefficient. The coefficient ring is generic; the crate root fixes
//! [`crate::IntPoly`] = `Poly<BigInt>` as the working type for graph
//! polynomials, whose coefficients grow combinatorially but stay integral.
//!
//! Invariants:
//! - no stored coefficient is zero (pruned on every operation),
//! - equality is coefficient-wise,
//! - exponents are `u32` wide and all arithmetic on them is checked;
//!   overflow surfaces as [`PolyError::ExponentOverflow`], never wraps.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Coefficient ring bound: exact, signed, with `0` and `1`.
///
/// Blanket-implemented; `BigInt`, `BigRational` and the machine integers all
/// qualify, as does `Poly<C>` itself.
pub trait Ring: Clone + PartialEq + Zero + One + Neg<Output = Self> {}
impl<T> Ring for T where T: Clone + PartialEq + Zero + One + Neg<Output = T> {}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    /// An exponent left the supported `u32` range.
    #[error("monomial exponent overflow: {0}")]
    ExponentOverflow(&'static str),
    #[error("invalid polynomial JSON: {0}")]
    InvalidJson(String),
}

/// Exponent triple `x^a * y^b * z^c`.
///
/// Exponents are 32 bits wide; every operation that grows them is checked.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub a: u32,
    pub b: u32,
    pub c: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { a: 0, b: 0, c: 0 };

    pub fn new(a: u32, b: u32, c: u32) -> Self {
        Monomial { a, b, c }
    }

    pub fn is_constant(&self) -> bool {
        *self == Self::ONE
    }

    pub fn degree(&self) -> u64 {
        self.a as u64 + self.b as u64 + self.c as u64
    }

    fn checked_mul(&self, other: &Monomial) -> Result<Monomial, PolyError> {
        Ok(Monomial {
            a: self
                .a
                .checked_add(other.a)
                .ok_or(PolyError::ExponentOverflow("x"))?,
            b: self
                .b
                .checked_add(other.b)
                .ok_or(PolyError::ExponentOverflow("y"))?,
            c: self
                .c
                .checked_add(other.c)
                .ok_or(PolyError::ExponentOverflow("z"))?,
        })
    }
}

/// Canonical term order: ascending z-degree, then ascending y-degree, then
/// descending x-degree. Iteration, the text form and the JSON form all use
/// it, so output is byte-deterministic.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.c, self.b)
            .cmp(&(other.c, other.b))
            .then(other.a.cmp(&self.a))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial in `x`, `y`, `z` with coefficients in `C`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly<C: Ring> {
    terms: BTreeMap<Monomial, C>,
}

impl<C: Ring> Default for Poly<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Ring> Poly<C> {
    pub fn zero() -> Self {
        Poly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn constant(c: C) -> Self {
        Self::term(Monomial::ONE, c)
    }

    /// The variable `x`.
    pub fn x() -> Self {
        Self::term(Monomial::new(1, 0, 0), C::one())
    }

    /// The variable `y`.
    pub fn y() -> Self {
        Self::term(Monomial::new(0, 1, 0), C::one())
    }

    /// The variable `z`.
    pub fn z() -> Self {
        Self::term(Monomial::new(0, 0, 1), C::one())
    }

    /// Single-term polynomial; the zero coefficient gives the zero polynomial.
    pub fn term(m: Monomial, c: C) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    /// Sums an arbitrary term list, combining duplicates and pruning zeros.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, C)>>(iter: I) -> Self {
        let mut p = Self::zero();
        for (m, c) in iter {
            p.add_term(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&Monomial::ONE)
                .is_some_and(|c| c == &C::one())
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Coefficient of a monomial, zero when absent.
    pub fn coeff(&self, m: &Monomial) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    /// Terms in canonical order.
    pub fn iter(&self) -> impl Iterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn total_degree(&self) -> u64 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    fn add_term(&mut self, m: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().clone() + c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    /// Multiply every coefficient by `k`.
    pub fn scale(&self, k: &C) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            out.add_term(*m, c.clone() * k.clone());
        }
        out
    }

    /// Product with exponent-overflow reporting.
    pub fn checked_mul(&self, other: &Self) -> Result<Self, PolyError> {
        let mut out = Self::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.checked_mul(m2)?, c1.clone() * c2.clone());
            }
        }
        Ok(out)
    }

    /// `self^e` by repeated squaring, exponent-checked.
    pub fn checked_pow(&self, e: u32) -> Result<Self, PolyError> {
        let mut result = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.checked_mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.checked_mul(&base)?;
            }
        }
        Ok(result)
    }

    /// Applies the ring homomorphism `x -> sx, y -> sy, z -> sz`.
    pub fn substitute(&self, sx: &Self, sy: &Self, sz: &Self) -> Result<Self, PolyError> {
        let mut out = Self::zero();
        for (m, coeff) in &self.terms {
            let mut t = sx.checked_pow(m.a)?;
            t = t.checked_mul(&sy.checked_pow(m.b)?)?;
            t = t.checked_mul(&sz.checked_pow(m.c)?)?;
            out += &t.scale(coeff);
        }
        Ok(out)
    }

    /// Evaluates in any ring `S`, lifting coefficients through `lift`.
    pub fn eval_map<S: Ring>(&self, pt: &Point3<S>, lift: impl Fn(&C) -> S) -> S {
        let mut acc = S::zero();
        for (m, c) in &self.terms {
            let mut t = lift(c);
            t = t * pow_ring(&pt.x, m.a);
            t = t * pow_ring(&pt.y, m.b);
            t = t * pow_ring(&pt.z, m.c);
            acc = acc + t;
        }
        acc
    }
}

fn pow_ring<S: Ring>(base: &S, mut e: u32) -> S {
    let mut result = S::one();
    let mut b = base.clone();
    while e > 0 {
        if e & 1 == 1 {
            result = result * b.clone();
        }
        e >>= 1;
        if e > 0 {
            b = b.clone() * b;
        }
    }
    result
}

/// Evaluation point with one value per variable.
#[derive(Debug, Clone, PartialEq)]
pub struct Point3<T> {
    pub x: T,
    pub y: T,
    pub z: T,
}

impl<T> Point3<T> {
    pub fn new(x: T, y: T, z: T) -> Self {
        Point3 { x, y, z }
    }
}

impl Poly<BigInt> {
    /// Exact evaluation at a rational point.
    pub fn eval_exact(&self, pt: &crate::RationalPoint) -> BigRational {
        self.eval_map(pt, |c| BigRational::from_integer(c.clone()))
    }

    /// Double-precision evaluation; IEEE semantics, saturates on overflow.
    pub fn eval_float(&self, pt: &crate::FloatPoint) -> f64 {
        self.eval_map(pt, |c| c.to_f64().unwrap_or(f64::NAN))
    }

    /// JSON form: array of `{a, b, c, coeff}` records in canonical term
    /// order, coefficients as decimal strings.
    pub fn to_json(&self) -> String {
        let records: Vec<TermRecord> = self
            .terms
            .iter()
            .map(|(m, c)| TermRecord {
                a: m.a,
                b: m.b,
                c: m.c,
                coeff: c.to_string(),
            })
            .collect();
        serde_json::to_string(&records).expect("term records always serialize")
    }

    /// Parses the JSON form. Duplicate monomials are summed; zero
    /// coefficients are dropped, so re-serializing is canonical.
    pub fn from_json(s: &str) -> Result<Self, PolyError> {
        let records: Vec<TermRecord> =
            serde_json::from_str(s).map_err(|e| PolyError::InvalidJson(e.to_string()))?;
        let mut p = Self::zero();
        for r in records {
            let coeff: BigInt = r
                .coeff
                .parse()
                .map_err(|_| PolyError::InvalidJson(format!("bad coefficient {:?}", r.coeff)))?;
            p.add_term(Monomial::new(r.a, r.b, r.c), coeff);
        }
        Ok(p)
    }
}

#[derive(Serialize, Deserialize)]
struct TermRecord {
    a: u32,
    b: u32,
    c: u32,
    coeff: String,
}

impl<C: Ring> Add for Poly<C> {
    type Output = Poly<C>;
    fn add(mut self, rhs: Poly<C>) -> Poly<C> {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
        self
    }
}

impl<C: Ring> AddAssign<&Poly<C>> for Poly<C> {
    fn add_assign(&mut self, rhs: &Poly<C>) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, c.clone());
        }
    }
}

impl<C: Ring> Neg for Poly<C> {
    type Output = Poly<C>;
    fn neg(self) -> Poly<C> {
        Poly {
            terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect(),
        }
    }
}

impl<C: Ring> Sub for Poly<C> {
    type Output = Poly<C>;
    fn sub(self, rhs: Poly<C>) -> Poly<C> {
        self + (-rhs)
    }
}

/// Panics on exponent overflow; use [`Poly::checked_mul`] to handle it.
impl<C: Ring> Mul for &Poly<C> {
    type Output = Poly<C>;
    fn mul(self, rhs: &Poly<C>) -> Poly<C> {
        self.checked_mul(rhs).expect("monomial exponent overflow")
    }
}

impl<C: Ring> Mul for Poly<C> {
    type Output = Poly<C>;
    fn mul(self, rhs: Poly<C>) -> Poly<C> {
        &self * &rhs
    }
}

impl<C: Ring> Zero for Poly<C> {
    fn zero() -> Self {
        Poly::zero()
    }
    fn is_zero(&self) -> bool {
        Poly::is_zero(self)
    }
}

impl<C: Ring> One for Poly<C> {
    fn one() -> Self {
        Poly::one()
    }
    fn is_one(&self) -> bool {
        Poly::is_one(self)
    }
}

/// Canonical text form, e.g. `x^2 + 2*x*y + x*y^2 + 2*z + y*z`: terms in
/// canonical order, unit coefficients and `^1` omitted.
impl<C: Ring + Signed + fmt::Display> fmt::Display for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            if i == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = c.abs();
            let mut wrote = false;
            if m.is_constant() || !mag.is_one() {
                write!(f, "{}", mag)?;
                wrote = true;
            }
            for (var, e) in [("x", m.a), ("y", m.b), ("z", m.c)] {
                if e == 0 {
                    continue;
                }
                if wrote {
                    write!(f, "*")?;
                }
                wrote = true;
                if e == 1 {
                    write!(f, "{}", var)?;
                } else {
                    write!(f, "{}^{}", var, e)?;
                }
            }
        }
        Ok(())
    }
}
