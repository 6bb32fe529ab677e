//! Multivariate gcd over the rationals.
//!
//! Recursive content / primitive-part splitting on the first occurring
//! variable, with a subresultant remainder sequence over the ring of the
//! remaining variables.

use num_traits::Zero;

use super::{Poly, Rational};

/// Greatest common divisor, normalized to leading coefficient 1.
/// `gcd(p, 0)` is `p` made monic; `gcd(0, 0)` is zero.
pub fn poly_gcd(p: &Poly, q: &Poly) -> Poly {
    gcd_rec(p, q).monic()
}

/// Least common multiple, monic.
pub fn poly_lcm(p: &Poly, q: &Poly) -> Poly {
    if p.is_zero() || q.is_zero() {
        return Poly::zero(p.nvars());
    }
    let g = poly_gcd(p, q);
    (&p.div_exact(&g).expect("gcd divides") * q).monic()
}

fn gcd_rec(p: &Poly, q: &Poly) -> Poly {
    let n = p.nvars();
    if p.is_zero() {
        return q.clone();
    }
    if q.is_zero() {
        return p.clone();
    }
    if p.is_constant() || q.is_constant() {
        return Poly::one(n);
    }
    if p.num_terms() <= q.num_terms() {
        if q.div_exact(p).is_some() {
            return p.clone();
        }
    } else if p.div_exact(q).is_some() {
        return q.clone();
    }
    let var = (0..n)
        .find(|&i| p.depends_on(i) || q.depends_on(i))
        .expect("non-constant polynomial has a variable");
    if !p.depends_on(var) {
        return gcd_rec(p, &content(q, var));
    }
    if !q.depends_on(var) {
        return gcd_rec(&content(p, var), q);
    }
    let cp = content(p, var);
    let cq = content(q, var);
    let pp = p.div_exact(&cp).expect("content divides");
    let qq = q.div_exact(&cq).expect("content divides");
    let c = gcd_rec(&cp, &cq);
    let g = if coprime_at_some_point(&pp, &qq, var) { Poly::one(n) } else { subresultant_gcd(pp, qq, var) };
    &c * &g
}

/// Dense coefficients of `p` in `var` after fixing every other variable
/// to `point`.
fn univariate_image(p: &Poly, var: usize, point: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); p.degree_in(var).map_or(0, |d| d as usize + 1)];
    for (m, c) in p.terms() {
        let mut v = c.clone();
        for (i, &e) in m.exponents().iter().enumerate() {
            if i != var && e > 0 {
                v *= num_traits::pow(point[i].clone(), e as usize);
            }
        }
        out[m.exponent(var) as usize] += v;
    }
    out
}

fn trim(p: &mut Vec<Rational>) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

/// Degree of the monic Euclidean gcd of two dense univariate polynomials.
fn univariate_gcd_degree(mut a: Vec<Rational>, mut b: Vec<Rational>) -> usize {
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let lb = b.last().expect("nonempty").clone();
        while a.len() >= b.len() {
            let shift = a.len() - b.len();
            let f = a.last().expect("nonempty").clone() / &lb;
            for (i, c) in b.iter().enumerate() {
                a[i + shift] -= &f * c;
            }
            a.pop();
            trim(&mut a);
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len().saturating_sub(1)
}

/// Sufficient test for `gcd(a, b) = 1` when both are primitive in `var`:
/// at a point where neither leading coefficient vanishes, the image of any
/// common factor keeps its degree in `var`.
fn coprime_at_some_point(a: &Poly, b: &Poly, var: usize) -> bool {
    let n = a.nvars();
    let (la, lb) = (leading_coeff_in(a, var), leading_coeff_in(b, var));
    for attempt in 0..3i64 {
        let point: Vec<Rational> =
            (0..n).map(|i| Rational::from_integer((2 + attempt * 7 + 3 * i as i64 * (attempt + 1)).into())).collect();
        if la.eval(&point).is_zero() || lb.eval(&point).is_zero() {
            continue;
        }
        return univariate_gcd_degree(univariate_image(a, var, &point), univariate_image(b, var, &point)) == 0;
    }
    false
}

/// Gcd of the coefficients of `p` viewed as a polynomial in `var`.
pub(crate) fn content(p: &Poly, var: usize) -> Poly {
    let mut acc = Poly::zero(p.nvars());
    for (_, c) in p.coefficients_in(var) {
        acc = gcd_rec(&acc, &c);
        if acc.is_constant() {
            return Poly::one(p.nvars());
        }
    }
    acc
}

fn primitive_part(p: &Poly, var: usize) -> Poly {
    let c = content(p, var);
    p.div_exact(&c).expect("content divides")
}

fn leading_coeff_in(p: &Poly, var: usize) -> Poly {
    let d = p.degree_in(var).unwrap_or(0);
    p.coefficient_in(var, d)
}

/// Pseudo-remainder: `lc(b)^(deg a - deg b + 1) * a = quot * b + rem`.
pub(crate) fn pseudo_remainder(a: &Poly, b: &Poly, var: usize) -> Poly {
    let n = a.nvars();
    let db = b.degree_in(var).unwrap_or(0);
    let da = a.degree_in(var).unwrap_or(0);
    if da < db {
        return a.clone();
    }
    let lb = leading_coeff_in(b, var);
    let mut e = da - db + 1;
    let mut r = a.clone();
    while !r.is_zero() {
        let dr = r.degree_in(var).unwrap_or(0);
        if dr < db {
            break;
        }
        let lr = leading_coeff_in(&r, var);
        let shift = &lr * &Poly::var_power(n, var, dr - db);
        r = &(&lb * &r) - &(&shift * b);
        e -= 1;
    }
    if e > 0 {
        r = &r * &lb.pow(e);
    }
    r
}

/// Gcd of two polynomials that are primitive in `var` and both depend on it.
fn subresultant_gcd(a: Poly, b: Poly, var: usize) -> Poly {
    let n = a.nvars();
    let (mut a, mut b) = if a.degree_in(var) >= b.degree_in(var) {
        (a, b)
    } else {
        (b, a)
    };
    let mut g = Poly::one(n);
    let mut h = Poly::one(n);
    loop {
        let delta = a.degree_in(var).unwrap_or(0) - b.degree_in(var).unwrap_or(0);
        let r = pseudo_remainder(&a, &b, var);
        if r.is_zero() {
            return primitive_part(&b, var);
        }
        if !r.depends_on(var) {
            return Poly::one(n);
        }
        let divisor = &g * &h.pow(delta);
        a = b;
        b = r
            .div_exact(&divisor)
            .expect("subresultant division is exact");
        g = leading_coeff_in(&a, var);
        h = match delta {
            0 => h,
            1 => g.clone(),
            _ => g
                .pow(delta)
                .div_exact(&h.pow(delta - 1))
                .expect("subresultant division is exact"),
        };
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_poly, VarSet};

    fn p(vs: &VarSet, s: &str) -> Poly {
        parse_poly(s, vs).unwrap()
    }

    #[test]
    fn univariate_gcd() {
        let vs = VarSet::new(&["x"]).unwrap();
        assert_eq!(
            poly_gcd(&p(&vs, "x^2 - 1"), &p(&vs, "x - 1")),
            p(&vs, "x - 1")
        );
        assert_eq!(
            poly_gcd(&p(&vs, "2*x - 2"), &Poly::zero(1)),
            p(&vs, "x - 1")
        );
        assert_eq!(poly_gcd(&p(&vs, "x^2 + 1"), &p(&vs, "x - 1")), Poly::one(1));
    }

    #[test]
    fn multivariate_gcd() {
        let vs = VarSet::new(&["x", "y", "z"]).unwrap();
        let g = p(&vs, "x*z - y^2 + 3");
        let a = &g * &p(&vs, "x + y*z");
        let b = &g * &p(&vs, "y^3 - 2*x + z");
        assert_eq!(poly_gcd(&a, &b), g.monic());
        let a2 = &a * &p(&vs, "x");
        let b2 = &b * &p(&vs, "x^2");
        assert_eq!(poly_gcd(&a2, &b2), (&g * &p(&vs, "x")).monic());
    }

    #[test]
    fn lcm_of_coprime_is_product() {
        let vs = VarSet::new(&["x", "y"]).unwrap();
        let a = p(&vs, "x");
        let b = p(&vs, "x*y - 1");
        assert_eq!(poly_lcm(&a, &b), &a * &b);
    }

    #[test]
    fn pseudo_remainder_identity() {
        let vs = VarSet::new(&["x", "y"]).unwrap();
        let a = p(&vs, "y*x^3 + x + 1");
        let b = p(&vs, "(y + 1)*x - 2");
        let r = pseudo_remainder(&a, &b, 0);
        assert!(r.degree_in(0).unwrap_or(0) < 1);
        // lc(b)^3 * a - r is divisible by b
        let lb = p(&vs, "y + 1");
        let lhs = &(&lb.pow(3) * &a) - &r;
        assert!(lhs.div_exact(&b).is_some());
    }
}
