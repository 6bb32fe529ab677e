use num_traits::{One, Signed};

use super::{Monomial, Poly, RatFn, Rational, VarSet};

/// Values with a canonical textual form over a variable set.
pub trait Canonical {
    fn canonical(&self, vars: &VarSet) -> String;
}

/// Deterministic printing: monomials in descending graded-lex order,
/// reduced coefficients, output re-parses to the same value.
pub fn canonical_string<T: Canonical + ?Sized>(value: &T, vars: &VarSet) -> String {
    value.canonical(vars)
}

fn write_rational(out: &mut String, c: &Rational) {
    if c.is_integer() {
        out.push_str(&c.numer().to_string());
    } else {
        out.push_str(&format!("{}/{}", c.numer(), c.denom()));
    }
}

fn write_monomial(out: &mut String, m: &Monomial, vars: &VarSet) {
    let mut first = true;
    for (i, &e) in m.exponents().iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !first {
            out.push('*');
        }
        first = false;
        out.push_str(vars.name(i));
        if e > 1 {
            out.push_str(&format!("^{e}"));
        }
    }
}

impl Canonical for Poly {
    fn canonical(&self, vars: &VarSet) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms().rev().enumerate() {
            let negative = c.is_negative();
            match (i, negative) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            let a = c.abs();
            if m.is_one() {
                write_rational(&mut out, &a);
            } else {
                if !a.is_one() {
                    write_rational(&mut out, &a);
                    out.push('*');
                }
                write_monomial(&mut out, m, vars);
            }
        }
        out
    }
}

/// A single-variable power such as `x` or `x^3` needs no parentheses as a
/// divisor.
fn is_bare_power(p: &Poly) -> bool {
    match p.leading_term() {
        Some((m, c)) if p.num_terms() == 1 && c.is_one() => {
            m.exponents().iter().filter(|&&e| e > 0).count() == 1
        }
        _ => false,
    }
}

impl Canonical for RatFn {
    fn canonical(&self, vars: &VarSet) -> String {
        if self.is_polynomial() {
            return self.numer().canonical(vars);
        }
        let num = self.numer().canonical(vars);
        let den = self.denom().canonical(vars);
        let num = if self.numer().num_terms() == 1 {
            num
        } else {
            format!("({num})")
        };
        let den = if is_bare_power(self.denom()) {
            den
        } else {
            format!("({den})")
        };
        format!("{num}/{den}")
    }
}
