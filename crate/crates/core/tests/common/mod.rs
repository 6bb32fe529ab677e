#![allow(dead_code)]

use num_traits::Zero;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use unipotent::derivation::Deriv;
use unipotent::djlike::{build_slice_system, Family, SliceSys};
use unipotent::poly::{parse_poly, Monomial, Poly, RatFn, Rational, VarSet};

pub fn vs(names: &[&str]) -> VarSet {
    VarSet::new(names).unwrap()
}

pub fn der(v: &VarSet, pairs: &[(&str, &str)]) -> Deriv {
    let pairs: Vec<(&str, Poly)> = pairs
        .iter()
        .map(|(n, e)| (*n, parse_poly(e, v).unwrap()))
        .collect();
    Deriv::from_named(v, &pairs).unwrap()
}

pub fn fam(v: &VarSet, gens: &[&[(&str, &str)]]) -> Family {
    Family::new(gens.iter().map(|g| der(v, g)).collect(), 64).unwrap()
}

pub fn poly(v: &VarSet, s: &str) -> Poly {
    parse_poly(s, v).unwrap()
}

/// A dJ-like fixture family with generators of its kernel flag:
/// `flag[i]` generates `A_{i+1}` as an algebra.
pub struct Fixture {
    pub name: &'static str,
    pub family: Family,
    pub slices: SliceSys,
    pub flag: Vec<Vec<Poly>>,
}

fn fixture(name: &'static str, family: Family, flag: &[&[&str]]) -> Fixture {
    let v = family.vars().clone();
    let slices = build_slice_system(&family, 12).unwrap();
    let flag = flag
        .iter()
        .map(|gens| gens.iter().map(|g| poly(&v, g)).collect())
        .collect();
    Fixture {
        name,
        family,
        slices,
        flag,
    }
}

pub fn coordinate5() -> Fixture {
    let v = vs(&["x1", "x2", "x3", "x4", "x5"]);
    let gens: Vec<Vec<(&str, &str)>> = ["x1", "x2", "x3", "x4", "x5"]
        .iter()
        .map(|n| vec![(*n, "1")])
        .collect();
    let gens: Vec<&[(&str, &str)]> = gens.iter().map(Vec::as_slice).collect();
    fixture(
        "coordinate",
        fam(&v, &gens),
        &[
            &[],
            &["x1"],
            &["x1", "x2"],
            &["x1", "x2", "x3"],
            &["x1", "x2", "x3", "x4"],
        ],
    )
}

pub fn non_decomposable() -> Fixture {
    let v = vs(&["x", "y", "z"]);
    fixture(
        "non-decomposable",
        fam(&v, &[&[("z", "1"), ("y", "x")], &[("z", "1")]]),
        &[&["x"], &["x", "y"]],
    )
}

pub fn nagata() -> Fixture {
    let v = vs(&["x", "y", "z"]);
    fixture(
        "nagata",
        fam(&v, &[&[("z", "1")], &[("y", "x"), ("z", "2*y")]]),
        &[&["x"], &["x", "x*z - y^2"]],
    )
}

pub fn coordinate_yz() -> Fixture {
    let v = vs(&["x", "y", "z"]);
    fixture(
        "coordinate-yz",
        fam(&v, &[&[("y", "1")], &[("z", "1")]]),
        &[&["x"], &["x", "y"]],
    )
}

pub fn rand_rational(rng: &mut ChaCha8Rng) -> Rational {
    loop {
        let n: i64 = rng.gen_range(-9..=9);
        if n != 0 {
            return Rational::new(n.into(), rng.gen_range(1i64..=3).into());
        }
    }
}

/// Random polynomial in the variables `allowed` with total degree at most
/// `max_deg` and at most `max_terms` terms.
pub fn rand_poly(
    rng: &mut ChaCha8Rng,
    nvars: usize,
    allowed: &[usize],
    max_deg: u32,
    max_terms: usize,
) -> Poly {
    let terms = rng.gen_range(0..=max_terms);
    let mut out = Vec::new();
    for _ in 0..terms {
        let mut exps = vec![0u32; nvars];
        if !allowed.is_empty() {
            let deg = rng.gen_range(0..=max_deg);
            for _ in 0..deg {
                exps[allowed[rng.gen_range(0..allowed.len())]] += 1;
            }
        }
        out.push((Monomial::from_exponents(exps), rand_rational(rng)));
    }
    Poly::from_terms(nvars, out)
}

/// Random polynomial expression in the given generators.
pub fn rand_in_algebra(
    rng: &mut ChaCha8Rng,
    nvars: usize,
    gens: &[Poly],
    max_deg: u32,
    max_terms: usize,
) -> Poly {
    let k = gens.len();
    let shape = rand_poly(rng, k, &(0..k).collect::<Vec<_>>(), max_deg, max_terms);
    if k == 0 {
        return Poly::constant(nvars, shape.constant_value().unwrap_or_else(Rational::zero));
    }
    shape.substitute(gens)
}

/// Triangular derivation for a random variable order: the coefficient of
/// each `d/dx` is a polynomial in the earlier variables.
pub fn rand_triangular(rng: &mut ChaCha8Rng, n: usize, max_deg: u32, max_terms: usize) -> Deriv {
    let names: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    let v = VarSet::new(&names).unwrap();
    let mut order: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        order.swap(i, rng.gen_range(0..=i));
    }
    let mut coeffs = vec![Poly::zero(n); n];
    for (pos, &var) in order.iter().enumerate() {
        coeffs[var] = rand_poly(rng, n, &order[..pos], max_deg, max_terms);
    }
    Deriv::new(v, coeffs).unwrap()
}

/// Random member `sum_j f_j d_j` of the dJ-like algebra of a fixture, with
/// `f_j` a polynomial in `A_1`-generators and slice coordinates
/// `x_1, ..., x_{j-1}` (and `A_j` generators), scaled to make the
/// coefficients polynomial.
pub fn rand_member(rng: &mut ChaCha8Rng, fx: &Fixture, max_deg: u32) -> Deriv {
    let fam = &fx.family;
    let n = fam.vars().len();
    let k = fam.len();
    let mut fs: Vec<RatFn> = Vec::with_capacity(k);
    let start = rng.gen_range(0..k);
    for j in 0..k {
        if j < start {
            fs.push(RatFn::zero(n));
            continue;
        }
        let mut f = RatFn::from_poly(rand_in_algebra(rng, n, &fx.flag[j], max_deg, 3));
        for i in 0..j {
            let e = rng.gen_range(0..=1u32);
            if e > 0 {
                f = &f * &fx.slices.x[i].pow(e);
            }
        }
        fs.push(f);
    }
    let mut coeffs: Vec<RatFn> = vec![RatFn::zero(n); n];
    for (j, f) in fs.iter().enumerate() {
        for (v, c) in fam.gen(j).coeffs().iter().enumerate() {
            coeffs[v] = &coeffs[v] + &f.mul_poly(c);
        }
    }
    let lcm = coeffs.iter().fold(Poly::one(n), |acc, c| {
        unipotent::poly::poly_lcm(&acc, c.denom())
    });
    let polys: Vec<Poly> = coeffs
        .iter()
        .map(|c| c.mul_poly(&lcm).into_poly().unwrap())
        .collect();
    Deriv::new(fam.vars().clone(), polys).unwrap()
}

/// Random member of `R_X`: coefficients in `A_1`, divided by a power of `h`
/// when that keeps them polynomial.
pub fn rand_rx_member(rng: &mut ChaCha8Rng, fx: &Fixture, max_deg: u32) -> Deriv {
    let fam = &fx.family;
    let n = fam.vars().len();
    let fs: Vec<Poly> = (0..fam.len())
        .map(|_| rand_in_algebra(rng, n, &fx.flag[0], max_deg, 3))
        .collect();
    let mut coeffs: Vec<RatFn> = vec![RatFn::zero(n); n];
    for (j, f) in fs.iter().enumerate() {
        for (v, c) in fam.gen(j).coeffs().iter().enumerate() {
            coeffs[v] = &coeffs[v] + &RatFn::from_poly(f * c);
        }
    }
    let e = rng.gen_range(0..=2u32);
    let scaled: Vec<RatFn> = coeffs
        .iter()
        .map(|c| c.div(&RatFn::from_poly(fx.slices.h.pow(e))).unwrap())
        .collect();
    let use_scaled = scaled.iter().all(RatFn::is_polynomial);
    let chosen = if use_scaled { scaled } else { coeffs };
    Deriv::new(
        fam.vars().clone(),
        chosen.into_iter().map(|c| c.into_poly().unwrap()).collect(),
    )
    .unwrap()
}

/// Random `sum_j f_j d/dx_j` with `f_j` in `K[x_1, ..., x_{j-1}]`, a member
/// of the dJ-like algebra of the coordinate family.
pub fn rand_coordinate_member(
    rng: &mut ChaCha8Rng,
    n: usize,
    max_deg: u32,
    max_terms: usize,
) -> Deriv {
    let names: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    let v = VarSet::new(&names).unwrap();
    let allowed: Vec<usize> = (0..n).collect();
    let coeffs = (0..n)
        .map(|j| rand_poly(rng, n, &allowed[..j], max_deg, max_terms))
        .collect();
    Deriv::new(v, coeffs).unwrap()
}
