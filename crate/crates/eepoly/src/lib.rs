//! Exact computation of the universal edge elimination polynomial
//! `xi(G, x, y, z)` of finite multigraphs.
//!
//! The crate provides:
//! - [`graph`]: multigraphs with loops and parallel edges, the three edge
//!   eliminations (delete, contract, extract), component splitting, and an
//!   exact isomorphism-invariant [`graph::CanonicalKey`];
//! - [`poly`] / [`series`]: sparse trivariate polynomial arithmetic over a
//!   generic exact coefficient ring, and truncated power series over it;
//! - [`engine`]: the memoized three-way recursion computing `xi` of an
//!   arbitrary multigraph;
//! - [`families`]: recurrence polynomials and closed-form evaluation for
//!   paths and cycles, generic over the float type;
//! - [`genfunc`]: the rational generating functions of both families;
//! - [`specializations`]: matching, bivariate chromatic and covered
//!   components polynomials with independent brute-force oracles.
//!
//! The concrete working types are fixed here at the crate root: integer
//! coefficients ([`IntPoly`], [`IntSeries`]) and `f64` evaluation points
//! ([`FloatPoint`]), with exact rational points ([`RationalPoint`]) for
//! exact evaluation.

pub mod engine;
pub mod families;
pub mod genfunc;
pub mod graph;
pub mod poly;
pub mod series;
pub mod specializations;

pub use engine::{xi, xi_with_stats, EdgePolicy, Engine, XiError, XiOptions, XiStats};
pub use graph::{CanonicalKey, EdgeRef, GraphError, GraphParseError, Multigraph};
pub use poly::{Monomial, Point3, Poly, PolyError};
pub use series::{Series, SeriesError};

/// Coefficient integers: arbitrary precision, since `xi` coefficients grow
/// combinatorially and all substitutions stay integral.
pub type Int = num_bigint::BigInt;

/// Exact rational scalars for evaluation.
pub type Rational = num_rational::BigRational;

/// The working polynomial type: sparse trivariate over [`Int`].
pub type IntPoly = Poly<Int>;

/// Truncated power series with [`IntPoly`] coefficients.
pub type IntSeries = Series<Int>;

/// Exact evaluation point.
pub type RationalPoint = Point3<Rational>;

/// Double-precision evaluation point.
pub type FloatPoint = Point3<f64>;
