//! Membership in `D(d_1, ..., d_k)` and `R_X`, and inclusion of families.

use super::Family;
use crate::derivation::{coeff_row, coefficient_matrix, Deriv};
use crate::error::Result;
use crate::linalg::solve_in_span;
use crate::poly::{Canonical, Poly, RatFn, VarSet};

/// Why a derivation was rejected. Indices are 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// The derivation is not in the rational span of the family.
    NotInSpan,
    /// `d_l(f_j) = value != 0`.
    Kernel { j: usize, l: usize, value: RatFn },
    /// The reduced denominator of `f_j` is not killed by `d_l`.
    Denominator { j: usize, l: usize, den: Poly },
}

impl Witness {
    pub fn display(&self, vars: &VarSet) -> String {
        match self {
            Witness::NotInSpan => "not in the span of the family".into(),
            Witness::Kernel { j, l, value } => {
                format!("j={j} l={l} d_l(f_j)={}", value.canonical(vars))
            }
            Witness::Denominator { j, l, den } => {
                format!("j={j} l={l} denominator {} not killed", den.canonical(vars))
            }
        }
    }
}

/// Outcome of a membership test.
///
/// `level` is the largest `i` with `f_1 = ... = f_{i-1} = 0` (so `k + 1`
/// for the zero derivation); it is 0 when `d` is outside the span.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MembershipReport {
    pub member: bool,
    pub level: usize,
    pub coeffs: Vec<RatFn>,
    pub witness: Option<Witness>,
}

fn span_coefficients(d: &Deriv, fam: &Family) -> Option<Vec<RatFn>> {
    if d.vars() != fam.vars() {
        return None;
    }
    solve_in_span(&coefficient_matrix(fam.gens()), &coeff_row(d))
}

fn level_of(coeffs: &[RatFn]) -> usize {
    coeffs
        .iter()
        .position(|c| !c.is_zero())
        .map_or(coeffs.len() + 1, |p| p + 1)
}

fn report(
    coeffs: Option<Vec<RatFn>>,
    test: impl Fn(&[RatFn]) -> Option<Witness>,
) -> MembershipReport {
    match coeffs {
        None => MembershipReport {
            member: false,
            level: 0,
            coeffs: Vec::new(),
            witness: Some(Witness::NotInSpan),
        },
        Some(coeffs) => {
            let witness = test(&coeffs);
            MembershipReport {
                member: witness.is_none(),
                level: level_of(&coeffs),
                coeffs,
                witness,
            }
        }
    }
}

/// `d = sum_j f_j d_j` with `f_j` in `A_1^-1 A_j`: every `d_l`, `l >= j`,
/// kills `f_j`, and the reduced denominator of `f_j` lies in `A_1`.
pub fn dj_membership(d: &Deriv, fam: &Family) -> MembershipReport {
    report(span_coefficients(d, fam), |coeffs| {
        for (j, f) in coeffs.iter().enumerate() {
            for l in j..fam.len() {
                let value = fam.gen(l).apply_ratfn(f);
                if !value.is_zero() {
                    return Some(Witness::Kernel {
                        j: j + 1,
                        l: l + 1,
                        value,
                    });
                }
            }
            let den = RatFn::from_poly(f.denom().clone());
            for l in 0..fam.len() {
                if !fam.gen(l).apply_ratfn(&den).is_zero() {
                    return Some(Witness::Denominator {
                        j: j + 1,
                        l: l + 1,
                        den: f.denom().clone(),
                    });
                }
            }
        }
        None
    })
}

/// `d = sum_j f_j d_j` with every `f_j` killed by every generator.
pub fn rx_membership(d: &Deriv, fam: &Family) -> MembershipReport {
    report(span_coefficients(d, fam), |coeffs| {
        for (j, f) in coeffs.iter().enumerate() {
            for l in 0..fam.len() {
                let value = fam.gen(l).apply_ratfn(f);
                if !value.is_zero() {
                    return Some(Witness::Kernel {
                        j: j + 1,
                        l: l + 1,
                        value,
                    });
                }
            }
        }
        None
    })
}

/// Result of [`family_includes`]. On success `coeffs[s]` holds the
/// coefficients of the `s`-th small generator over the big family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Inclusion {
    pub holds: bool,
    pub coeffs: Vec<Vec<RatFn>>,
    pub failure: Option<String>,
}

/// Is the dJ-like group of `small = (d'_l, ..., d'_k)` contained in the one
/// of `big = (d_1, ..., d_k)`? With `l = k - m + 1`, this holds iff every
/// `d'_i = sum_{j >= i} f_ij d_j` with `f_ii != 0` and every `f_ij` in
/// `A_1^-1 A_l`.
pub fn family_includes(big: &Family, small: &Family) -> Inclusion {
    let fail = |coeffs, msg: String| Inclusion {
        holds: false,
        coeffs,
        failure: Some(msg),
    };
    let k = big.len();
    let m = small.len();
    if m > k {
        return fail(
            Vec::new(),
            format!("small family has {m} generators, big has {k}"),
        );
    }
    if big.vars() != small.vars() {
        return fail(
            Vec::new(),
            "families live over different variable sets".into(),
        );
    }
    let vars = big.vars();
    let l = k - m + 1;
    let mut all = Vec::with_capacity(m);
    for (s, d) in small.gens().iter().enumerate() {
        let i = l + s;
        let Some(coeffs) = span_coefficients(d, big) else {
            return fail(all, format!("generator {} is not in the span", s + 1));
        };
        if let Some(j) = (1..i).find(|&j| !coeffs[j - 1].is_zero()) {
            return fail(
                all,
                format!("generator {} has a nonzero coefficient on d_{j}", s + 1),
            );
        }
        if coeffs[i - 1].is_zero() {
            return fail(
                all,
                format!("generator {} has a zero coefficient on d_{i}", s + 1),
            );
        }
        for (j, f) in coeffs.iter().enumerate() {
            if let Some(t) = (l..=k).find(|&t| !big.gen(t - 1).apply_ratfn(f).is_zero()) {
                return fail(
                    all,
                    format!(
                        "coefficient {} of generator {} is not killed by d_{t}: {}",
                        j + 1,
                        s + 1,
                        f.canonical(vars)
                    ),
                );
            }
            if !big.kills(&RatFn::from_poly(f.denom().clone())) {
                return fail(
                    all,
                    format!(
                        "denominator of coefficient {} of generator {} is not invariant",
                        j + 1,
                        s + 1
                    ),
                );
            }
        }
        all.push(coeffs);
    }
    Inclusion {
        holds: true,
        coeffs: all,
        failure: None,
    }
}

/// Inclusion in both directions.
pub fn family_equivalent(f1: &Family, f2: &Family) -> Result<bool> {
    if f1.len() != f2.len() {
        return Err(crate::error::Error::InvalidFamily(
            "families have different lengths".into(),
        ));
    }
    Ok(family_includes(f1, f2).holds && family_includes(f2, f1).holds)
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;
    use crate::poly::canonical_string;

    fn coeff_strings(r: &MembershipReport, v: &VarSet) -> Vec<String> {
        r.coeffs.iter().map(|c| canonical_string(c, v)).collect()
    }

    #[test]
    fn non_decomposable_member() {
        let f = non_decomposable();
        let v = f.vars().clone();
        let dy = der(&v, &[("y", "1")]);
        let r = dj_membership(&dy, &f);
        assert!(r.member);
        assert_eq!(r.level, 1);
        assert_eq!(coeff_strings(&r, &v), ["1/x", "-1/x"]);
        let r = rx_membership(&dy, &f);
        assert!(r.member);
        assert_eq!(coeff_strings(&r, &v), ["1/x", "-1/x"]);
    }

    #[test]
    fn coordinate_family_example() {
        let v = vs(&["x1", "x2", "x3", "x4", "x5"]);
        let gens: Vec<Vec<(&str, &str)>> = ["x1", "x2", "x3", "x4", "x5"]
            .iter()
            .map(|n| vec![(*n, "1")])
            .collect();
        let gens: Vec<&[(&str, &str)]> = gens.iter().map(Vec::as_slice).collect();
        let f = fam(&v, &gens);
        let d = der(
            &v,
            &[
                ("x2", "x1^2"),
                ("x3", "x1^2"),
                ("x4", "x3"),
                ("x5", "x2 - x4"),
            ],
        );
        let r = dj_membership(&d, &f);
        assert!(r.member);
        assert_eq!(r.level, 2);
        assert_eq!(
            coeff_strings(&r, &v),
            ["0", "x1^2", "x1^2", "x3", "x2 - x4"]
        );
    }

    #[test]
    fn nagata_member() {
        let f = nagata();
        let v = f.vars().clone();
        let d = der(&v, &[("y", "x*(x*z - y^2)"), ("z", "2*y*(x*z - y^2)")]);
        let r = dj_membership(&d, &f);
        assert!(r.member);
        assert_eq!(r.level, 2);
        assert_eq!(coeff_strings(&r, &v), ["0", "x*z - y^2"]);
    }

    #[test]
    fn rejections() {
        let f = coordinate_yz();
        let v = f.vars().clone();
        let zdy = der(&v, &[("y", "z")]);
        let r = dj_membership(&zdy, &f);
        assert!(!r.member);
        assert_eq!(
            r.witness,
            Some(Witness::Kernel {
                j: 1,
                l: 2,
                value: RatFn::one(3)
            })
        );

        let ydz = der(&v, &[("z", "y")]);
        assert!(dj_membership(&ydz, &f).member);
        assert_eq!(dj_membership(&ydz, &f).level, 2);
        assert!(!rx_membership(&ydz, &f).member);

        let pq = der(&v, &[("y", "x^2 + 1"), ("z", "3*x")]);
        assert!(rx_membership(&pq, &f).member);

        let dx = der(&v, &[("x", "1")]);
        let r = dj_membership(&dx, &f);
        assert_eq!(
            (r.member, r.level, r.witness),
            (false, 0, Some(Witness::NotInSpan))
        );

        let zero = Deriv::zero(&v);
        let r = dj_membership(&zero, &f);
        assert!(r.member);
        assert_eq!(r.level, 3);
    }

    #[test]
    fn rational_replica_rx() {
        let v = vs(&["x", "y", "z"]);
        let f = fam(&v, &[&[("y", "x"), ("z", "2*y")]]);
        let d = der(&v, &[("y", "x*(x*z - y^2)"), ("z", "2*y*(x*z - y^2)")]);
        assert!(rx_membership(&d, &f).member);
    }

    #[test]
    fn inclusion_examples() {
        let v = vs(&["x", "y", "z"]);
        let yz = coordinate_yz();
        let z = fam(&v, &[&[("z", "1")]]);
        let y = fam(&v, &[&[("y", "1")]]);
        assert!(family_includes(&yz, &z).holds);
        assert!(!family_includes(&yz, &y).holds);
        assert!(family_includes(&yz, &yz).holds);

        let sum = fam(&v, &[&[("y", "1"), ("z", "1")], &[("z", "1")]]);
        assert_eq!(family_equivalent(&yz, &sum), Ok(true));
        let swapped = yz.reordered(&[1, 0]).unwrap();
        assert_eq!(family_equivalent(&yz, &swapped), Ok(false));
        assert_eq!(family_equivalent(&yz, &yz), Ok(true));
        assert!(family_equivalent(&yz, &z).is_err());
    }
}
