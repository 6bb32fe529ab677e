//! Exact multivariate polynomials and rational functions over the rationals.

mod gcd;
mod parse;
mod polynomial;
mod print;
mod ratfn;
mod varset;

use std::collections::BTreeMap;

pub use gcd::{poly_gcd, poly_lcm};
pub use parse::{parse_expr, parse_poly};
pub use polynomial::{Degree, Monomial, Poly};
pub use print::{canonical_string, Canonical};
pub use ratfn::RatFn;
pub use varset::VarSet;

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

/// Builds a rational `n / d`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// Exact value of `v` at `point`. Every non-parameter variable must be
/// assigned, as must any parameter the expression actually uses.
pub fn evaluate_at(
    v: &RatFn,
    vars: &VarSet,
    point: &BTreeMap<String, Rational>,
) -> Result<Rational> {
    let mut values = Vec::with_capacity(vars.len());
    for i in 0..vars.len() {
        let used = v.numer().depends_on(i) || v.denom().depends_on(i);
        match point.get(vars.name(i)) {
            Some(x) => values.push(x.clone()),
            None if vars.is_param(i) && !used => values.push(Rational::from_integer(0.into())),
            None => return Err(Error::MissingPointValue(vars.name(i).to_string())),
        }
    }
    v.eval(&values)
}

/// Max over terms of the weighted exponent sum; minus infinity for zero.
pub fn weighted_total_degree(p: &Poly, weights: &[i64]) -> Degree {
    p.weighted_degree(weights)
}
