//! Slice systems, the kernel (slice) projection and cylinder presentations.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::Family;
use crate::error::{Error, Result};
use crate::linalg::rational_rref;
use crate::poly::{poly_gcd, Monomial, Poly, RatFn, Rational};

/// Elements `y_i` with `d_i(y_j) = 0` for `i != j` and `d_i(y_i)` in the
/// joint kernel, plus the local coordinates `x_i = y_i / d_i(y_i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SliceSys {
    pub family: Family,
    pub y: Vec<Poly>,
    pub x: Vec<RatFn>,
    pub h: Poly,
}

/// Coefficients `c_alpha` of `g = sum_alpha c_alpha * x^alpha`, keyed by
/// the multi-index `alpha`.
pub type Expansion = BTreeMap<Vec<u32>, RatFn>;

/// All monomials in the variables `free` of total degree `1..=max_deg`,
/// ascending in graded-lex order.
fn monomials_up_to(nvars: usize, free: &[usize], max_deg: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut exps = vec![0u32; nvars];
    fn rec(pos: usize, left: u32, free: &[usize], exps: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if pos == free.len() {
            if exps.iter().any(|&e| e > 0) {
                out.push(Monomial::from_exponents(exps.clone()));
            }
            return;
        }
        for e in 0..=left {
            exps[free[pos]] = e;
            rec(pos + 1, left - e, free, exps, out);
        }
        exps[free[pos]] = 0;
    }
    rec(0, max_deg, free, &mut exps, &mut out);
    out.sort();
    out
}

/// Basis of `{p : deg p <= max_deg, p(0) = 0, d(p) = 0 for d in others}`,
/// one vector per free column of the reduced echelon form, ordered by its
/// leading monomial.
fn kernel_basis(fam: &Family, others: &[usize], monos: &[Monomial]) -> Vec<Poly> {
    let n = fam.vars().len();
    let mut row_index: BTreeMap<(usize, Monomial), usize> = BTreeMap::new();
    let mut entries: Vec<(usize, usize, Rational)> = Vec::new();
    for (col, m) in monos.iter().enumerate() {
        let p = Poly::monomial(m.clone(), Rational::one());
        for &j in others {
            for (om, c) in fam.gen(j).apply_poly(&p).terms() {
                let next = row_index.len();
                let r = *row_index.entry((j, om.clone())).or_insert(next);
                entries.push((r, col, c.clone()));
            }
        }
    }
    let mut a = vec![vec![Rational::zero(); monos.len()]; row_index.len()];
    for (r, c, v) in entries {
        a[r][c] += v;
    }
    let pivots = rational_rref(&mut a);
    let mut is_pivot = vec![None; monos.len()];
    for (r, &c) in pivots.iter().enumerate() {
        is_pivot[c] = Some(r);
    }
    (0..monos.len())
        .filter(|&f| is_pivot[f].is_none())
        .map(|f| {
            let mut terms = vec![(monos[f].clone(), Rational::one())];
            for (r, &c) in pivots.iter().enumerate() {
                if !a[r][f].is_zero() {
                    terms.push((monos[c].clone(), -a[r][f].clone()));
                }
            }
            Poly::from_terms(n, terms)
        })
        .collect()
}

fn find_slice(fam: &Family, i: usize, degree_cap: usize) -> Result<Poly> {
    let vars = fam.vars();
    let free = vars.free_indices();
    let others: Vec<usize> = (0..fam.len()).filter(|&j| j != i).collect();
    let di = fam.gen(i);
    for deg in 1..=degree_cap {
        let monos = monomials_up_to(vars.len(), &free, deg as u32);
        let found = kernel_basis(fam, &others, &monos)
            .into_iter()
            .find(|v| !di.apply_poly(v).is_zero());
        if let Some(mut y) = found {
            loop {
                let dy = di.apply_poly(&y);
                if di.apply_poly(&dy).is_zero() {
                    return Ok(y.monic());
                }
                y = dy;
            }
        }
    }
    Err(Error::SliceSearchExhausted {
        index: i + 1,
        cap: degree_cap,
    })
}

/// Searches, by increasing total degree up to `degree_cap`, for the
/// smallest slice element of each generator.
pub fn build_slice_system(fam: &Family, degree_cap: usize) -> Result<SliceSys> {
    let mut y = Vec::with_capacity(fam.len());
    let mut x = Vec::with_capacity(fam.len());
    let mut h = Poly::one(fam.vars().len());
    for i in 0..fam.len() {
        let yi = find_slice(fam, i, degree_cap)?;
        let dyi = fam.gen(i).apply_poly(&yi);
        x.push(RatFn::new(yi.clone(), dyi.clone())?);
        h = &h * &dyi;
        y.push(yi);
    }
    let s = SliceSys {
        family: fam.clone(),
        y,
        x,
        h,
    };
    for i in 0..fam.len() {
        for j in 0..fam.len() {
            let v = fam.gen(i).apply_ratfn(&s.x[j]);
            let want = if i == j {
                RatFn::one(v.nvars())
            } else {
                RatFn::zero(v.nvars())
            };
            if v != want {
                return Err(Error::Internal(format!(
                    "slice coordinates fail at ({}, {})",
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    Ok(s)
}

/// `exp(-x_i d_i)` applied to `g`, whose denominator is in the joint kernel.
fn project_step(g: &RatFn, s: &SliceSys, i: usize) -> RatFn {
    let d = s.family.gen(i);
    let minus_x = -&s.x[i];
    let mut term = g.clone();
    let mut acc = g.clone();
    let mut m = 0i64;
    let mut factor = RatFn::one(g.nvars());
    loop {
        term = d.apply_ratfn(&term);
        if term.is_zero() {
            return acc;
        }
        m += 1;
        factor = factor.scale(&Rational::new(1.into(), m.into())) * &minus_x;
        acc = &acc + &(&factor * &term);
    }
}

fn project_poly(g: &Poly, s: &SliceSys) -> RatFn {
    (0..s.family.len()).fold(RatFn::from_poly(g.clone()), |acc, i| {
        project_step(&acc, s, i)
    })
}

/// The ring morphism `prod_i exp(-x_i d_i)` onto the joint kernel. A
/// rational input is projected as numerator over denominator.
pub fn kernel_project(g: &RatFn, s: &SliceSys) -> Result<RatFn> {
    let num = project_poly(g.numer(), s);
    if g.denom().is_one() {
        return Ok(num);
    }
    let den = project_poly(g.denom(), s);
    num.div(&den)
}

fn factorial(alpha: &[u32]) -> Rational {
    let mut f = num_bigint::BigInt::one();
    for &a in alpha {
        for i in 2..=a {
            f *= i;
        }
    }
    Rational::from_integer(f)
}

/// `g = sum_alpha c_alpha x^alpha` with `c_alpha = pi(d^alpha(g) / alpha!)`;
/// zero coefficients are omitted.
pub fn slice_expand(g: &Poly, s: &SliceSys) -> Expansion {
    fn rec(i: usize, alpha: &mut Vec<u32>, g: Poly, s: &SliceSys, out: &mut Expansion) {
        if i == s.family.len() {
            let c = project_poly(&g, s).scale(&factorial(alpha).recip());
            if !c.is_zero() {
                out.insert(alpha.clone(), c);
            }
            return;
        }
        let mut cur = g;
        alpha[i] = 0;
        while !cur.is_zero() {
            let next = s.family.gen(i).apply_poly(&cur);
            rec(i + 1, alpha, cur, s, out);
            alpha[i] += 1;
            cur = next;
        }
        alpha[i] = 0;
    }
    let mut out = Expansion::new();
    rec(0, &mut vec![0; s.family.len()], g.clone(), s, &mut out);
    out
}

/// `sum_alpha c_alpha x^alpha`.
pub fn reconstruct(e: &Expansion, s: &SliceSys) -> RatFn {
    let n = s.family.vars().len();
    e.iter().fold(RatFn::zero(n), |acc, (alpha, c)| {
        let term = alpha.iter().zip(&s.x).fold(
            c.clone(),
            |t, (&a, x)| if a == 0 { t } else { &t * &x.pow(a) },
        );
        &acc + &term
    })
}

/// `K[X]_f = R[x_1, ..., x_k]` with each ambient variable expanded in the
/// slice coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CylPres {
    pub slices: SliceSys,
    pub f: Poly,
    /// One expansion per non-parameter variable, in variable order.
    pub table: Vec<(usize, Expansion)>,
}

/// Part of `g` coprime to `f`, made monic.
fn strip_common(g: &Poly, f: &Poly) -> Poly {
    let mut g = g.clone();
    loop {
        let c = poly_gcd(&g, f);
        if c.is_constant() {
            return g.monic();
        }
        g = g.div_exact(&c).expect("gcd divides");
    }
}

/// Expands every ambient variable and localizes at `f = h * g_1 * ... * g_m`,
/// with `g_j` the parts of the coefficient denominators not already
/// dividing a power of `h`.
pub fn cylinder_presentation(fam: &Family, s: &SliceSys) -> Result<CylPres> {
    if s.family != *fam {
        return Err(Error::InvalidFamily(
            "slice system belongs to another family".into(),
        ));
    }
    let vars = fam.vars();
    let n = vars.len();
    let mut f = s.h.monic();
    let mut table = Vec::new();
    for v in vars.free_indices() {
        let e = slice_expand(&Poly::var(n, v), s);
        for c in e.values() {
            let extra = strip_common(c.denom(), &f);
            if !extra.is_constant() {
                f = &f * &extra;
            }
        }
        if reconstruct(&e, s) != RatFn::from_poly(Poly::var(n, v)) {
            return Err(Error::Internal(format!(
                "expansion of `{}` does not reconstruct",
                vars.name(v)
            )));
        }
        table.push((v, e));
    }
    Ok(CylPres {
        slices: s.clone(),
        f,
        table,
    })
}
