//! Polynomial automorphisms as pullback tuples, the exp/log bijection with
//! locally nilpotent derivations, and products of exponentials.
//!
//! An [`Auto`] stores the pullback images `a*(x_i)`. Composition follows
//! map composition: `compose(a, b)` is `a ∘ b` (apply `b` to a point first,
//! then `a`), so its pullback is `b* ∘ a*` and its images are `b*(a*(x_i))`.
//! Under this convention `exp(d1) ∘ exp(d2) = exp(z)` with
//! `z = d1 + d2 - [d1, d2]/2 + ...`, where `[.,.]` is the operator
//! commutator used by [`bracket`].

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::derivation::{bracket, certify_lnd, Deriv, LndCert};
use crate::error::{Error, Result};
use crate::poly::{Canonical, Poly, RatFn, Rational, VarSet};

/// Polynomial automorphism given by the pullbacks of the variables.
/// Parameters are mapped to themselves.
#[derive(Clone, PartialEq, Eq)]
pub struct Auto {
    vars: VarSet,
    images: Vec<Poly>,
}

impl Auto {
    pub fn identity(vars: &VarSet) -> Self {
        Auto {
            vars: vars.clone(),
            images: (0..vars.len()).map(|i| Poly::var(vars.len(), i)).collect(),
        }
    }

    #[cfg(test)]
    pub(crate) fn from_images_unchecked(vars: VarSet, images: Vec<Poly>) -> Self {
        debug_assert_eq!(images.len(), vars.len());
        Auto { vars, images }
    }

    /// Builds an automorphism from images and proves it invertible: either
    /// the map is unitriangular for some variable order, or `inverse` is
    /// given and verified by composition on both sides, or the map is
    /// unipotent (its logarithm exists within `cap`).
    pub fn from_images(
        vars: &VarSet,
        images: Vec<Poly>,
        inverse: Option<Vec<Poly>>,
        cap: usize,
    ) -> Result<Self> {
        if images.len() != vars.len() || images.iter().any(|p| p.nvars() != vars.len()) {
            return Err(Error::VarSetMismatch);
        }
        for (i, p) in images.iter().enumerate() {
            if vars.is_param(i) && *p != Poly::var(vars.len(), i) {
                return Err(Error::Schema(format!(
                    "parameter `{}` must map to itself",
                    vars.name(i)
                )));
            }
        }
        let a = Auto {
            vars: vars.clone(),
            images,
        };
        if a.triangular_order().is_some() {
            return Ok(a);
        }
        if let Some(inv) = inverse {
            let b = Auto {
                vars: vars.clone(),
                images: inv,
            };
            if compose(&a, &b).is_identity() && compose(&b, &a).is_identity() {
                return Ok(a);
            }
            return Err(Error::NotInverse);
        }
        log_automorphism(&a, cap)?;
        Ok(a)
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn images(&self) -> &[Poly] {
        &self.images
    }

    pub fn image(&self, i: usize) -> &Poly {
        &self.images[i]
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, p)| *p == Poly::var(self.vars.len(), i))
    }

    pub fn apply_poly(&self, f: &Poly) -> Poly {
        f.substitute(&self.images)
    }

    /// Order in which every image is `x_v + P_v` with `P_v` involving only
    /// earlier variables and parameters; `None` if there is no such order.
    pub fn triangular_order(&self) -> Option<Vec<usize>> {
        let n = self.vars.len();
        let free = self.vars.free_indices();
        let mut indegree = vec![0usize; n];
        let mut out_edges: Vec<Vec<usize>> = vec![Vec::new(); n];
        for &v in &free {
            let tail = &self.images[v] - &Poly::var(n, v);
            for u in tail.support() {
                if self.vars.is_param(u) {
                    continue;
                }
                out_edges[u].push(v);
                indegree[v] += 1;
            }
        }
        let mut ready: BTreeSet<usize> =
            free.iter().copied().filter(|&v| indegree[v] == 0).collect();
        let mut order = Vec::new();
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

    /// Maximum total degree of the images in the non-parameter variables.
    pub fn max_image_degree(&self) -> i64 {
        let mask: Vec<bool> = (0..self.vars.len())
            .map(|i| !self.vars.is_param(i))
            .collect();
        self.vars
            .free_indices()
            .into_iter()
            .filter_map(|i| self.images[i].total_degree_in(&mask).finite())
            .max()
            .unwrap_or(0)
    }

    pub fn display(&self) -> String {
        let parts: Vec<String> = self
            .vars
            .free_indices()
            .into_iter()
            .map(|i| {
                format!(
                    "{} -> {}",
                    self.vars.name(i),
                    self.images[i].canonical(&self.vars)
                )
            })
            .collect();
        parts.join(", ")
    }
}

impl fmt::Debug for Auto {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Auto[{}]", self.display())
    }
}

/// Pullback `a*(f)`.
pub fn apply_auto(a: &Auto, f: &RatFn) -> Result<RatFn> {
    f.substitute(&a.images)
}

/// Map composition `a ∘ b`; images are `b*(a*(x_i))`.
pub fn compose(a: &Auto, b: &Auto) -> Auto {
    assert_eq!(
        a.vars, b.vars,
        "composing automorphisms over different variable sets"
    );
    let images = a.images.iter().map(|p| p.substitute(&b.images)).collect();
    Auto {
        vars: a.vars.clone(),
        images,
    }
}

fn factorial_inverse(m: usize) -> Rational {
    let mut f = BigInt::one();
    for i in 2..=m {
        f *= i;
    }
    Rational::new(BigInt::one(), f)
}

/// `exp(d)`: images `sum_m d^m(x_i) / m!`, a finite sum for certified `d`.
pub fn exp_derivation(d: &Deriv, cert: &LndCert) -> Result<Auto> {
    if let LndCert::Unknown(cap) = cert {
        return Err(Error::Uncertified { cap: *cap });
    }
    let vars = d.vars();
    let n = vars.len();
    let images = (0..n)
        .map(|i| {
            let mut term = Poly::var(n, i);
            let mut acc = term.clone();
            let mut m = 0;
            loop {
                term = d.apply_poly(&term);
                if term.is_zero() {
                    break;
                }
                m += 1;
                acc = &acc + &term.scale(&factorial_inverse(m));
            }
            acc
        })
        .collect();
    Ok(Auto {
        vars: vars.clone(),
        images,
    })
}

/// `log(a)`: the derivation `D` with `D(x_i) = sum_m (-1)^(m+1) N^m(x_i) / m`
/// where `N = a* - id`. Fails unless `N` kills every generator within `cap`
/// steps; the result is verified by re-exponentiation.
pub fn log_automorphism(a: &Auto, cap: usize) -> Result<Deriv> {
    let vars = a.vars();
    let n = vars.len();
    let mut coeffs = vec![Poly::zero(n); n];
    for i in vars.free_indices() {
        let mut power = Poly::var(n, i);
        let mut acc = Poly::zero(n);
        let mut done = false;
        for m in 1..=cap {
            power = &a.apply_poly(&power) - &power;
            if power.is_zero() {
                done = true;
                break;
            }
            let sign = if m % 2 == 1 { 1 } else { -1 };
            acc = &acc + &power.scale(&Rational::new(sign.into(), (m as i64).into()));
        }
        if !done {
            return Err(Error::NotUnipotent {
                var: vars.name(i).to_string(),
                cap,
            });
        }
        coeffs[i] = acc;
    }
    let d = Deriv::new(vars.clone(), coeffs)?;
    let cert = certify_lnd(&d, cap);
    if !cert.is_certified() {
        return Err(Error::Internal("logarithm is not a certified LND".into()));
    }
    if exp_derivation(&d, &cert)? != *a {
        return Err(Error::Internal("exp(log(a)) differs from a".into()));
    }
    Ok(d)
}

/// `z` with `exp(z) = exp(d1) ∘ exp(d2)`, computed as the logarithm of the
/// composed automorphism and checked exactly.
pub fn bch(d1: &Deriv, d2: &Deriv, certs: (&LndCert, &LndCert), cap: usize) -> Result<Deriv> {
    d1.vars().ensure_same(d2.vars())?;
    let product = compose(&exp_derivation(d1, certs.0)?, &exp_derivation(d2, certs.1)?);
    let z = log_automorphism(&product, cap)?;
    let cz = certify_lnd(&z, cap);
    if exp_derivation(&z, &cz)? != product {
        return Err(Error::Internal("exp(bch) differs from the product".into()));
    }
    Ok(z)
}

/// How the log of a group commutator relates to the operator bracket.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BracketRelation {
    /// `log(c) = [d1, d2]`
    Equal,
    /// `log(c) = -[d1, d2]`
    Negated,
    Differs,
}

impl BracketRelation {
    pub fn as_str(self) -> &'static str {
        match self {
            BracketRelation::Equal => "equal",
            BracketRelation::Negated => "negated",
            BracketRelation::Differs => "differs",
        }
    }
}

#[derive(Clone, Debug)]
pub struct CommutatorLog {
    pub log: Deriv,
    pub bracket: Deriv,
    pub relation: BracketRelation,
}

/// `log(exp(d1) ∘ exp(d2) ∘ exp(-d1) ∘ exp(-d2))`, reported next to the
/// bracket `[d1, d2]`.
pub fn group_commutator_log(
    d1: &Deriv,
    d2: &Deriv,
    certs: (&LndCert, &LndCert),
    cap: usize,
) -> Result<CommutatorLog> {
    d1.vars().ensure_same(d2.vars())?;
    let e1 = exp_derivation(d1, certs.0)?;
    let e2 = exp_derivation(d2, certs.1)?;
    let e1_inv = exp_derivation(&d1.neg(), certs.0)?;
    let e2_inv = exp_derivation(&d2.neg(), certs.1)?;
    let c = compose(&e1, &compose(&e2, &compose(&e1_inv, &e2_inv)));
    let log = log_automorphism(&c, cap)?;
    let br = bracket(d1, d2);
    let relation = if log == br {
        BracketRelation::Equal
    } else if log == br.neg() {
        BracketRelation::Negated
    } else {
        BracketRelation::Differs
    };
    Ok(CommutatorLog {
        log,
        bracket: br,
        relation,
    })
}

/// Inverse of a map unitriangular for `order`, by back-substitution.
pub fn triangular_inverse(a: &Auto, order: &[usize]) -> Result<Auto> {
    let vars = a.vars();
    let n = vars.len();
    let free = vars.free_indices();
    if order.len() != free.len() || order.iter().collect::<BTreeSet<_>>() != free.iter().collect() {
        return Err(Error::NotUnitriangular(
            "order is not a permutation of the variables".into(),
        ));
    }
    let mut allowed: Vec<bool> = (0..n).map(|i| vars.is_param(i)).collect();
    let mut inverse: Vec<Poly> = (0..n).map(|i| Poly::var(n, i)).collect();
    for &v in order {
        let tail = &a.images[v] - &Poly::var(n, v);
        if let Some(&u) = tail.support().iter().find(|&&u| !allowed[u]) {
            return Err(Error::NotUnitriangular(format!(
                "image of `{}` involves `{}`",
                vars.name(v),
                vars.name(u)
            )));
        }
        inverse[v] = &Poly::var(n, v) - &tail.substitute(&inverse);
        allowed[v] = true;
    }
    let b = Auto {
        vars: vars.clone(),
        images: inverse,
    };
    if !compose(a, &b).is_identity() {
        return Err(Error::Internal(
            "triangular inverse failed verification".into(),
        ));
    }
    Ok(b)
}

/// Max total degree over the images of `a` and `a_inv`, after checking that
/// they are mutually inverse.
pub fn automorphism_degree(a: &Auto, a_inv: &Auto) -> Result<i64> {
    a.vars().ensure_same(a_inv.vars())?;
    if !compose(a, a_inv).is_identity() || !compose(a_inv, a).is_identity() {
        return Err(Error::NotInverse);
    }
    Ok(a.max_image_degree().max(a_inv.max_image_degree()))
}

/// `exp(t * d)`.
pub fn one_parameter(d: &Deriv, cert: &LndCert, t: &Rational) -> Result<Auto> {
    if t.is_zero() {
        if let LndCert::Unknown(cap) = cert {
            return Err(Error::Uncertified { cap: *cap });
        }
        return Ok(Auto::identity(d.vars()));
    }
    exp_derivation(&d.scale(t), cert)
}

/// Conjugate derivation `f -> tau_inv*(d(tau*(f)))`, which satisfies
/// `exp(result) = tau ∘ exp(d) ∘ tau^-1`.
pub fn pushforward(d: &Deriv, tau: &Auto, tau_inv: &Auto) -> Deriv {
    let vars = d.vars();
    let n = vars.len();
    let coeffs = (0..n)
        .map(|i| {
            if vars.is_param(i) {
                Poly::zero(n)
            } else {
                tau_inv.apply_poly(&d.apply_poly(&tau.images[i]))
            }
        })
        .collect();
    Deriv::new(vars.clone(), coeffs).expect("parameters stay fixed")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{canonical_string, parse_expr, parse_poly, rat};

    fn der(v: &VarSet, pairs: &[(&str, &str)]) -> Deriv {
        let pairs: Vec<(&str, Poly)> = pairs
            .iter()
            .map(|(n, e)| (*n, parse_poly(e, v).unwrap()))
            .collect();
        Deriv::from_named(v, &pairs).unwrap()
    }

    fn exp(d: &Deriv) -> Auto {
        exp_derivation(d, &certify_lnd(d, 64)).unwrap()
    }

    fn auto(v: &VarSet, images: &[&str]) -> Auto {
        let images = images.iter().map(|s| parse_poly(s, v).unwrap()).collect();
        Auto::from_images(v, images, None, 64).unwrap()
    }

    #[test]
    fn identity_and_composition() {
        let v = VarSet::new(&["x", "y"]).unwrap();
        let a = auto(&v, &["x", "y + x^2"]);
        assert_eq!(compose(&a, &Auto::identity(&v)), a);
        let f = parse_expr("x*y - 3", &v).unwrap();
        assert_eq!(apply_auto(&Auto::identity(&v), &f).unwrap(), f);
        let d = der(&v, &[("y", "x^2"), ("x", "1")]);
        assert!(compose(&exp(&d), &exp(&d.neg())).is_identity());
    }

    #[test]
    fn composition_is_map_composition() {
        // a: (x, y) -> (x + 1, y), b: (x, y) -> (x, y + x); (a ∘ b)(p) = a(b(p))
        let v = VarSet::new(&["x", "y"]).unwrap();
        let a = auto(&v, &["x + 1", "y"]);
        let b = auto(&v, &["x", "y + x"]);
        let ab = compose(&a, &b);
        assert_eq!(ab.images(), auto(&v, &["x + 1", "y + x"]).images());
    }

    #[test]
    fn log_examples() {
        let v = VarSet::new(&["x"]).unwrap();
        let shift = auto(&v, &["x + 1"]);
        assert_eq!(
            log_automorphism(&shift, 64).unwrap(),
            der(&v, &[("x", "1")])
        );
        let scale = Auto::from_images_unchecked(v.clone(), vec![parse_poly("2*x", &v).unwrap()]);
        assert_eq!(
            log_automorphism(&scale, 64),
            Err(Error::NotUnipotent {
                var: "x".into(),
                cap: 64
            })
        );

        let v = VarSet::new(&["x", "y"]).unwrap();
        let a = auto(&v, &["x", "y + x^2"]);
        assert_eq!(log_automorphism(&a, 64).unwrap(), der(&v, &[("y", "x^2")]));
    }

    #[test]
    fn nagata_exponential() {
        let v = VarSet::new(&["x", "y", "z"]).unwrap();
        let f = parse_poly("x*z - y^2", &v).unwrap();
        let d = der(&v, &[("y", "x"), ("z", "2*y")]).mul_poly(&f);
        let nu = exp(&d);
        // oracle: the series z + D(z) + D^2(z)/2 expanded by hand
        let want = parse_poly("z + 2*y*(x*z - y^2) + x*(x*z - y^2)^2", &v).unwrap();
        assert_eq!(nu.image(2), &want);
        assert_eq!(nu.image(1), &parse_poly("y + x*(x*z - y^2)", &v).unwrap());
        let inv = exp(&d.neg());
        assert_eq!(automorphism_degree(&nu, &inv), Ok(5));
        assert_eq!(log_automorphism(&nu, 64).unwrap(), d);
    }

    #[test]
    fn bch_examples() {
        let v = VarSet::new(&["x", "y"]).unwrap();
        let dx = der(&v, &[("x", "1")]);
        let xdy = der(&v, &[("y", "x")]);
        let zero = Deriv::zero(&v);
        let c = |d: &Deriv| certify_lnd(d, 64);
        assert_eq!(bch(&dx, &zero, (&c(&dx), &c(&zero)), 64).unwrap(), dx);

        let dy = der(&v, &[("y", "1")]);
        assert_eq!(bch(&dx, &dy, (&c(&dx), &c(&dy)), 64).unwrap(), dx.add(&dy));

        // exp(dx) ∘ exp(x dy) = exp(dx + x dy - dy/2) for map composition
        let z = bch(&dx, &xdy, (&c(&dx), &c(&xdy)), 64).unwrap();
        assert_eq!(z, der(&v, &[("x", "1"), ("y", "x - 1/2")]));
    }

    #[test]
    fn commutator_examples() {
        let v = VarSet::new(&["x", "y"]).unwrap();
        let c = |d: &Deriv| certify_lnd(d, 64);
        let dx = der(&v, &[("x", "1")]);
        let dy = der(&v, &[("y", "1")]);
        let r = group_commutator_log(&dx, &dy, (&c(&dx), &c(&dy)), 64).unwrap();
        assert!(r.log.is_zero());
        assert_eq!(r.relation, BracketRelation::Equal);

        let xdy = der(&v, &[("y", "x")]);
        let r = group_commutator_log(&dx, &xdy, (&c(&dx), &c(&xdy)), 64).unwrap();
        assert_eq!(r.bracket, dy);
        assert_eq!(r.log, dy.neg());
        assert_eq!(r.relation, BracketRelation::Negated);

        let d1 = der(&v, &[("x", "1"), ("y", "x")]);
        let d2 = der(&v, &[("y", "x^2")]);
        let r = group_commutator_log(&d1, &d2, (&c(&d1), &c(&d2)), 64).unwrap();
        assert!(certify_lnd(&r.log, 64).is_certified());
    }

    #[test]
    fn triangular_inverse_examples() {
        let v = VarSet::new(&["x", "y"]).unwrap();
        let a = auto(&v, &["x", "y + x^2"]);
        let inv = triangular_inverse(&a, &[0, 1]).unwrap();
        assert_eq!(inv.images(), auto(&v, &["x", "y - x^2"]).images());

        let swap = Auto::from_images_unchecked(v.clone(), vec![Poly::var(2, 1), Poly::var(2, 0)]);
        assert!(matches!(
            triangular_inverse(&swap, &[0, 1]),
            Err(Error::NotUnitriangular(_))
        ));
        assert!(matches!(
            triangular_inverse(&swap, &[1, 0]),
            Err(Error::NotUnitriangular(_))
        ));
    }

    #[test]
    fn one_parameter_group() {
        let v = VarSet::new(&["x", "y"]).unwrap();
        let d = der(&v, &[("x", "1"), ("y", "x^2")]);
        let cert = certify_lnd(&d, 64);
        assert!(one_parameter(&d, &cert, &rat(0, 1)).unwrap().is_identity());
        let a = one_parameter(&d, &cert, &rat(1, 1)).unwrap();
        let b = one_parameter(&d, &cert, &rat(-1, 1)).unwrap();
        assert!(compose(&a, &b).is_identity());
        let s = one_parameter(&d, &cert, &rat(2, 3)).unwrap();
        let t = one_parameter(&d, &cert, &rat(-5, 7)).unwrap();
        assert_eq!(
            compose(&s, &t),
            one_parameter(&d, &cert, &(rat(2, 3) + rat(-5, 7))).unwrap()
        );
    }

    #[test]
    fn identity_degree_is_one() {
        let v = VarSet::new(&["x", "y"]).unwrap();
        let id = Auto::identity(&v);
        assert_eq!(automorphism_degree(&id, &id), Ok(1));
        let a = auto(&v, &["x", "y + x^2"]);
        assert_eq!(automorphism_degree(&a, &a), Err(Error::NotInverse));
    }

    #[test]
    fn pushforward_matches_conjugation() {
        let v = VarSet::new(&["x", "y", "z"]).unwrap();
        let d = der(&v, &[("y", "x"), ("z", "y")]);
        let tau = auto(&v, &["x", "y + x^2", "z + x*y"]);
        let tau_inv = triangular_inverse(&tau, &tau.triangular_order().unwrap()).unwrap();
        let conj = compose(&tau, &compose(&exp(&d), &tau_inv));
        let pushed = pushforward(&d, &tau, &tau_inv);
        assert_eq!(log_automorphism(&conj, 64).unwrap(), pushed);
        assert_eq!(canonical_string(pushed.coeff(1), &v), "x");
    }
}
