//! Weighted degree functions on `Z x A^k` and the bounding-weights
//! recursion for unitriangular automorphisms.

use std::collections::BTreeMap;

use crate::automorphism::{compose, Auto};
use crate::error::{Error, Result};
use crate::poly::{Degree, Poly, VarSet};

/// `omega(x^a) = sum a_v * weight(v)`, extended to polynomials by max.
///
/// Base variables carry user weights, cylinder variables `x_1, ..., x_k`
/// carry `d_1, ..., d_k`, parameters weigh 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightFn {
    vars: VarSet,
    weights: Vec<i64>,
    cyl: Vec<usize>,
}

impl WeightFn {
    /// `base` gives weights for base variables (missing ones weigh 1);
    /// `cyl` lists `(variable, d)` in cylinder order.
    pub fn new(vars: &VarSet, base: &BTreeMap<usize, i64>, cyl: &[(usize, i64)]) -> Result<Self> {
        let mut weights: Vec<i64> = (0..vars.len())
            .map(|i| if vars.is_param(i) { 0 } else { 1 })
            .collect();
        let mut is_cyl = vec![false; vars.len()];
        for &(v, d) in cyl {
            if v >= vars.len() || vars.is_param(v) || std::mem::replace(&mut is_cyl[v], true) {
                return Err(Error::Schema(format!("bad cylinder variable index {v}")));
            }
            if d < 1 {
                return Err(Error::Schema(format!(
                    "cylinder weight of `{}` must be positive",
                    vars.name(v)
                )));
            }
            weights[v] = d;
        }
        for (&v, &w) in base {
            if v >= vars.len() || vars.is_param(v) || is_cyl[v] {
                return Err(Error::Schema(format!("bad base variable index {v}")));
            }
            if w < 1 {
                return Err(Error::Schema(format!(
                    "base weight of `{}` must be positive",
                    vars.name(v)
                )));
            }
            weights[v] = w;
        }
        Ok(WeightFn {
            vars: vars.clone(),
            weights,
            cyl: cyl.iter().map(|&(v, _)| v).collect(),
        })
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn weight(&self, v: usize) -> i64 {
        self.weights[v]
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    pub fn cylinder(&self) -> &[usize] {
        &self.cyl
    }

    /// Non-parameter variables outside the cylinder.
    pub fn base(&self) -> Vec<usize> {
        self.vars
            .free_indices()
            .into_iter()
            .filter(|v| !self.cyl.contains(v))
            .collect()
    }

    /// `(variable, d)` for the cylinder variables, in order.
    pub fn cylinder_weights(&self) -> Vec<(usize, i64)> {
        self.cyl.iter().map(|&v| (v, self.weights[v])).collect()
    }
}

pub fn eval_degree(w: &WeightFn, f: &Poly) -> Degree {
    f.weighted_degree(&w.weights)
}

/// A variable whose image has larger weight than the variable itself.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeViolation {
    pub var: usize,
    /// `true` when the violation is in the inverse.
    pub inverse: bool,
    pub degree: Degree,
    pub bound: i64,
}

impl DegreeViolation {
    pub fn display(&self, vars: &VarSet) -> String {
        let side = if self.inverse { " (inverse)" } else { "" };
        format!(
            "{}{side}: {} > {}",
            vars.name(self.var),
            self.degree,
            self.bound
        )
    }
}

/// Checks `omega(a*(v)) <= omega(v)` and the same for `a_inv` on every
/// variable; returns the first violation.
pub fn is_degree_preserving(a: &Auto, a_inv: &Auto, w: &WeightFn) -> Option<DegreeViolation> {
    for (inverse, map) in [(false, a), (true, a_inv)] {
        for v in w.vars.free_indices() {
            let degree = eval_degree(w, map.image(v));
            if degree > Degree::Finite(w.weights[v]) {
                return Some(DegreeViolation {
                    var: v,
                    inverse,
                    degree,
                    bound: w.weights[v],
                });
            }
        }
    }
    None
}

/// `d_i = max(1, max omega(g*(x_i) - x_i))` over both members of every pair,
/// left to right along `order`, with earlier `d_j` already fixed. Every map
/// must fix the base variables and be unitriangular along `order`.
pub fn bounding_weights(
    pairs: &[(Auto, Auto)],
    order: &[usize],
    base: &BTreeMap<usize, i64>,
) -> Result<WeightFn> {
    let Some((first, _)) = pairs.first() else {
        return Err(Error::Schema(
            "bounding weights need at least one automorphism".into(),
        ));
    };
    let vars = first.vars().clone();
    let n = vars.len();
    for (a, b) in pairs {
        vars.ensure_same(a.vars())?;
        vars.ensure_same(b.vars())?;
        if !compose(a, b).is_identity() || !compose(b, a).is_identity() {
            return Err(Error::NotInverse);
        }
    }
    let mut w = WeightFn::new(
        &vars,
        base,
        &order.iter().map(|&v| (v, 1)).collect::<Vec<_>>(),
    )?;
    let mut allowed: Vec<bool> = (0..n).map(|v| !order.contains(&v)).collect();
    for (a, b) in pairs {
        for map in [a, b] {
            for v in w.base() {
                if *map.image(v) != Poly::var(n, v) {
                    return Err(Error::NotUnitriangular(format!(
                        "base variable `{}` is moved",
                        vars.name(v)
                    )));
                }
            }
        }
    }
    for &v in order {
        let mut d = 1;
        for (a, b) in pairs {
            for map in [a, b] {
                let diff = map.image(v) - &Poly::var(n, v);
                if let Some(&u) = diff.support().iter().find(|&&u| !allowed[u]) {
                    return Err(Error::NotUnitriangular(format!(
                        "image of `{}` involves `{}`",
                        vars.name(v),
                        vars.name(u)
                    )));
                }
                if let Some(e) = eval_degree(&w, &diff).finite() {
                    d = d.max(e);
                }
            }
        }
        w.weights[v] = d;
        allowed[v] = true;
    }
    for (a, b) in pairs {
        if let Some(bad) = is_degree_preserving(a, b, &w) {
            return Err(Error::Internal(format!(
                "bounding weights violated: {}",
                bad.display(&vars)
            )));
        }
    }
    Ok(w)
}
