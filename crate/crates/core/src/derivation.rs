//! Derivations of `Q[X]`, brackets, and local-nilpotency certificates.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{symbolic_rank, RatMatrix};
use crate::poly::{Canonical, Poly, RatFn, Rational, VarSet};

/// A derivation `sum_i coeffs[i] * d/dx_i`. Coefficients on parameter
/// variables are always zero.
#[derive(Clone, PartialEq, Eq)]
pub struct Deriv {
    vars: VarSet,
    coeffs: Vec<Poly>,
}

impl Deriv {
    /// `coeffs` holds one polynomial per variable of `vars`; entries for
    /// parameter variables must be zero.
    pub fn new(vars: VarSet, coeffs: Vec<Poly>) -> Result<Self> {
        if coeffs.len() != vars.len() {
            return Err(Error::Schema(format!(
                "expected {} coefficients, got {}",
                vars.len(),
                coeffs.len()
            )));
        }
        for (i, c) in coeffs.iter().enumerate() {
            if c.nvars() != vars.len() {
                return Err(Error::VarSetMismatch);
            }
            if vars.is_param(i) && !c.is_zero() {
                return Err(Error::Schema(format!(
                    "parameter `{}` must have coefficient 0",
                    vars.name(i)
                )));
            }
        }
        Ok(Deriv { vars, coeffs })
    }

    pub fn zero(vars: &VarSet) -> Self {
        Deriv {
            vars: vars.clone(),
            coeffs: vec![Poly::zero(vars.len()); vars.len()],
        }
    }

    /// The coordinate derivation `d/dx_i`.
    pub fn partial(vars: &VarSet, i: usize) -> Self {
        assert!(!vars.is_param(i), "no partial derivative along a parameter");
        let mut d = Deriv::zero(vars);
        d.coeffs[i] = Poly::one(vars.len());
        d
    }

    /// Builds from `(variable name, coefficient)` pairs; omitted variables get 0.
    pub fn from_named(vars: &VarSet, pairs: &[(&str, Poly)]) -> Result<Self> {
        let mut coeffs = vec![Poly::zero(vars.len()); vars.len()];
        for (name, p) in pairs {
            let i = vars
                .index_of(name)
                .ok_or_else(|| Error::Schema(format!("unknown variable `{name}`")))?;
            coeffs[i] = p.clone();
        }
        Deriv::new(vars.clone(), coeffs)
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn coeff(&self, i: usize) -> &Poly {
        &self.coeffs[i]
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Poly::is_zero)
    }

    pub fn apply_poly(&self, f: &Poly) -> Poly {
        let mut out = Poly::zero(self.vars.len());
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() || !f.depends_on(i) {
                continue;
            }
            out = &out + &(c * &f.derivative(i));
        }
        out
    }

    /// Extension to rational functions by the quotient rule.
    pub fn apply_ratfn(&self, f: &RatFn) -> RatFn {
        let dn = self.apply_poly(f.numer());
        if f.is_polynomial() {
            return RatFn::from_poly(dn);
        }
        let dd = self.apply_poly(f.denom());
        if dd.is_zero() {
            return RatFn::new(dn, f.denom().clone()).expect("nonzero denominator");
        }
        let top = &(&dn * f.denom()) - &(f.numer() * &dd);
        RatFn::new(top, f.denom().pow(2)).expect("nonzero denominator")
    }

    /// `d^m(f)`.
    pub fn apply_times(&self, f: &Poly, m: usize) -> Poly {
        let mut g = f.clone();
        for _ in 0..m {
            if g.is_zero() {
                break;
            }
            g = self.apply_poly(&g);
        }
        g
    }

    pub fn scale(&self, c: &Rational) -> Deriv {
        self.map(|p| p.scale(c))
    }

    /// `p * d`, for a polynomial multiplier `p`.
    pub fn mul_poly(&self, p: &Poly) -> Deriv {
        self.map(|c| c * p)
    }

    fn map(&self, f: impl Fn(&Poly) -> Poly) -> Deriv {
        Deriv {
            vars: self.vars.clone(),
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    pub fn add(&self, other: &Deriv) -> Deriv {
        debug_assert_eq!(self.vars, other.vars);
        Deriv {
            vars: self.vars.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Deriv) -> Deriv {
        debug_assert_eq!(self.vars, other.vars);
        Deriv {
            vars: self.vars.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn neg(&self) -> Deriv {
        self.map(|p| -p)
    }

    /// Maximum total degree of the coefficients.
    pub fn degree(&self) -> i64 {
        self.coeffs
            .iter()
            .filter_map(|c| c.total_degree().finite())
            .max()
            .unwrap_or(-1)
    }

    /// Re-expresses the derivation over a larger variable set that contains
    /// every variable of this one (e.g. after adding a parameter).
    pub fn extend_to(&self, vars: &VarSet) -> Result<Deriv> {
        let map: Vec<usize> = (0..self.vars.len())
            .map(|i| {
                vars.index_of(self.vars.name(i))
                    .ok_or(Error::VarSetMismatch)
            })
            .collect::<Result<_>>()?;
        let images: Vec<Poly> = map.iter().map(|&j| Poly::var(vars.len(), j)).collect();
        let mut coeffs = vec![Poly::zero(vars.len()); vars.len()];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[map[i]] = c.substitute(&images);
        }
        Deriv::new(vars.clone(), coeffs)
    }

    /// Text such as `x^2*d/dy - d/dx + (y + 1)*d/dz`.
    pub fn display(&self) -> String {
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            let (neg, c) = if c.num_terms() == 1 && c.leading_coefficient() < Rational::zero() {
                (true, -c)
            } else {
                (false, c.clone())
            };
            let term = match (c.is_one(), c.num_terms()) {
                (true, _) => format!("d/d{}", self.vars.name(i)),
                (false, 1) => format!("{}*d/d{}", c.canonical(&self.vars), self.vars.name(i)),
                _ => format!("({})*d/d{}", c.canonical(&self.vars), self.vars.name(i)),
            };
            match (out.is_empty(), neg) {
                (true, false) => out = term,
                (true, true) => out = format!("-{term}"),
                (false, false) => out = format!("{out} + {term}"),
                (false, true) => out = format!("{out} - {term}"),
            }
        }
        if out.is_empty() {
            "0".into()
        } else {
            out
        }
    }
}

impl fmt::Debug for Deriv {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Deriv[{}]", self.display())
    }
}

/// `d(f)` for a polynomial or rational function.
pub fn apply(d: &Deriv, f: &RatFn) -> RatFn {
    d.apply_ratfn(f)
}

/// Commutator `[d1, d2]`, with coefficients `d1(d2(x_i)) - d2(d1(x_i))`.
pub fn bracket(d1: &Deriv, d2: &Deriv) -> Deriv {
    debug_assert_eq!(d1.vars, d2.vars);
    let coeffs = d1
        .coeffs
        .iter()
        .zip(&d2.coeffs)
        .map(|(c1, c2)| &d1.apply_poly(c2) - &d2.apply_poly(c1))
        .collect();
    Deriv {
        vars: d1.vars.clone(),
        coeffs,
    }
}

/// Smallest `m` with `d^m(f) = 0`, or `None` when that exceeds `cap`.
pub fn nilpotency_index(d: &Deriv, f: &Poly, cap: usize) -> Option<usize> {
    let mut g = f.clone();
    for m in 0..=cap {
        if g.is_zero() {
            return Some(m);
        }
        if m == cap {
            break;
        }
        g = d.apply_poly(&g);
    }
    None
}

/// Proof (or lack of one) that a derivation is locally nilpotent.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum LndCert {
    /// Variable order in which the coefficient of each `d/dx` only involves
    /// earlier variables and parameters.
    Triangular(Vec<usize>),
    /// `(variable, m)` with `d^m(x) = 0` and `d^(m-1)(x) != 0`, for every
    /// non-parameter variable.
    IteratedZero(Vec<(usize, usize)>),
    /// Neither certificate was found within the cap. Not a proof.
    Unknown(usize),
}

impl LndCert {
    pub fn is_certified(&self) -> bool {
        !matches!(self, LndCert::Unknown(_))
    }

    pub fn display(&self, vars: &VarSet) -> String {
        match self {
            LndCert::Triangular(order) => {
                let names: Vec<&str> = order.iter().map(|&i| vars.name(i)).collect();
                format!("Triangular({})", names.join(","))
            }
            LndCert::IteratedZero(bounds) => {
                let parts: Vec<String> = bounds
                    .iter()
                    .map(|&(i, m)| format!("{}:{m}", vars.name(i)))
                    .collect();
                format!("IteratedZero({})", parts.join(","))
            }
            LndCert::Unknown(cap) => format!("Unknown({cap})"),
        }
    }

    pub fn check(&self, d: &Deriv) -> bool {
        match self {
            LndCert::Triangular(order) => is_triangular_for(d, order),
            LndCert::IteratedZero(bounds) => bounds.iter().all(|&(i, m)| {
                let x = Poly::var(d.vars.len(), i);
                m >= 1 && d.apply_times(&x, m).is_zero() && !d.apply_times(&x, m - 1).is_zero()
            }),
            LndCert::Unknown(_) => false,
        }
    }
}

/// Does the coefficient of each `d/dx_{order[i]}` involve only the earlier
/// variables of `order` (and parameters)?
pub fn is_triangular_for(d: &Deriv, order: &[usize]) -> bool {
    let vars = &d.vars;
    let free = vars.free_indices();
    if order.len() != free.len() || order.iter().collect::<BTreeSet<_>>() != free.iter().collect() {
        return false;
    }
    let mut allowed = vec![false; vars.len()];
    for i in 0..vars.len() {
        allowed[i] = vars.is_param(i);
    }
    for &v in order {
        if d.coeffs[v].support().iter().any(|&u| !allowed[u]) {
            return false;
        }
        allowed[v] = true;
    }
    true
}

/// Topological order of the dependency digraph (edge `u -> v` when `u`
/// occurs in the coefficient of `d/dv`), smallest index first among ready
/// vertices; `None` when the digraph has a cycle.
pub fn triangular_order(d: &Deriv) -> Option<Vec<usize>> {
    let vars = &d.vars;
    let free = vars.free_indices();
    let n = vars.len();
    let mut indegree = vec![0usize; n];
    let mut out_edges: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &v in &free {
        for u in d.coeffs[v].support() {
            if vars.is_param(u) {
                continue;
            }
            out_edges[u].push(v);
            indegree[v] += 1;
        }
    }
    let mut ready: BTreeSet<usize> = free.iter().copied().filter(|&v| indegree[v] == 0).collect();
    let mut order = Vec::with_capacity(free.len());
    while let Some(u) = ready.pop_first() {
        order.push(u);
        for &v in &out_edges[u] {
            indegree[v] -= 1;
            if indegree[v] == 0 {
                ready.insert(v);
            }
        }
    }
    (order.len() == free.len()).then_some(order)
}

/// Triangular certificate first, then bounded iteration on every
/// generator, else `Unknown(cap)`.
pub fn certify_lnd(d: &Deriv, cap: usize) -> LndCert {
    if let Some(order) = triangular_order(d) {
        return LndCert::Triangular(order);
    }
    let mut bounds = Vec::new();
    for i in d.vars.free_indices() {
        match nilpotency_index(d, &Poly::var(d.vars.len(), i), cap) {
            Some(m) => bounds.push((i, m)),
            None => return LndCert::Unknown(cap),
        }
    }
    LndCert::IteratedZero(bounds)
}

/// Coefficient matrix of a family: one row per derivation, one column per
/// non-parameter variable.
pub fn coefficient_matrix(family: &[Deriv]) -> RatMatrix {
    let rows = family
        .iter()
        .map(|d| {
            d.vars
                .free_indices()
                .into_iter()
                .map(|i| RatFn::from_poly(d.coeffs[i].clone()))
                .collect()
        })
        .collect();
    RatMatrix::from_rows(rows)
}

/// Rank over `Q(X)` of the family's coefficient matrix equals its size.
pub fn is_locally_free(family: &[Deriv]) -> bool {
    if family.is_empty() {
        return true;
    }
    symbolic_rank(&coefficient_matrix(family)) == family.len()
}

/// All index pairs `(i, j)`, `i < j`, whose bracket is nonzero.
pub fn check_commuting(family: &[Deriv]) -> Vec<(usize, usize)> {
    let mut bad = Vec::new();
    for i in 0..family.len() {
        for j in i + 1..family.len() {
            if !bracket(&family[i], &family[j]).is_zero() {
                bad.push((i, j));
            }
        }
    }
    bad
}

/// Coefficients of a derivation, viewed as elements of `Q(X)`.
pub(crate) fn coeff_row(d: &Deriv) -> Vec<RatFn> {
    d.vars
        .free_indices()
        .into_iter()
        .map(|i| RatFn::from_poly(d.coeffs[i].clone()))
        .collect()
}

/// `true` when `f` is annihilated by `d` (rational constants always are).
pub fn kills(d: &Deriv, f: &RatFn) -> bool {
    d.apply_ratfn(f).is_zero()
}
