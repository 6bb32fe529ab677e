//! Exact symbolic engine for locally nilpotent derivations (LNDs) and
//! unipotent automorphisms of affine space.
//!
//! The crate works over `Q[x_1, ..., x_n]` with exact rational arithmetic:
//!
//! * [`poly`]: polynomials, rational functions, gcd, parser and printer.
//! * [`linalg`]: symbolic rank and span solving over the rational function field.
//! * [`derivation`]: derivations, brackets, LND certificates, family checks.
//! * [`automorphism`]: pullback automorphisms, exp/log, BCH products.
//! * [`djlike`]: slice systems, kernel projection, dJ-like and R_X membership,
//!   family inclusion, commuting reduction, cylinder presentations.
//! * [`degrees`]: weighted degree functions and bounding weights.
//! * [`cli`]: command front end and fixture corpus runner.

pub mod automorphism;
pub mod cli;
pub mod degrees;
pub mod derivation;
pub mod djlike;
pub mod error;
pub mod json;
pub mod linalg;
pub mod poly;

pub use automorphism::Auto;
pub use derivation::{Deriv, LndCert};
pub use djlike::{Family, MembershipReport, SliceSys};
pub use error::{Error, Result};
pub use poly::{parse_expr, parse_poly, Poly, RatFn, Rational, VarSet};

/// Default iteration cap for nilpotency checks and logarithms.
pub const DEFAULT_CAP: usize = 64;

/// Default total-degree cap for slice searches.
pub const DEFAULT_DEGREE_CAP: usize = 12;
