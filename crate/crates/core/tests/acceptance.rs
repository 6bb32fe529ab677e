//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line for
//! each and exits nonzero if any failed.

mod common;

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;
use unipotent::automorphism::{
    automorphism_degree, bch, compose, exp_derivation, log_automorphism, one_parameter,
    triangular_inverse, Auto,
};
use unipotent::degrees::{bounding_weights, is_degree_preserving};
use unipotent::derivation::{bracket, certify_lnd, Deriv, LndCert};
use unipotent::djlike::{
    annihilated_level, build_slice_system, dj_membership, family_equivalent, family_includes,
    kernel_project, reconstruct, rx_membership, slice_expand, Family,
};
use unipotent::poly::{canonical_string, rat, Poly, RatFn, VarSet};

type Outcome = Result<(), String>;

const CAP: usize = 64;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Outcome {
    let took = start.elapsed();
    ensure(took < limit, || format!("took {took:?}, limit {limit:?}"))
}

fn exp(d: &Deriv) -> Result<Auto, String> {
    let cert = certify_lnd(d, CAP);
    exp_derivation(d, &cert).map_err(|e| e.to_string())
}

fn show(p: &Poly, v: &VarSet) -> String {
    canonical_string(p, v)
}

fn deg_drop_derivation(v: &VarSet) -> Deriv {
    der(
        v,
        &[
            ("x2", "x1^2"),
            ("x3", "x1^2"),
            ("x4", "x3"),
            ("x5", "x2 - x4"),
        ],
    )
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let vt =
        VarSet::with_params(&["x1", "x2", "x3", "x4", "x5"], &["t"]).map_err(|e| e.to_string())?;
    let d = deg_drop_derivation(&vt);
    let t = poly(&vt, "t");
    let h = exp(&d.mul_poly(&t))?;
    let displayed = [
        "x1",
        "x2 + t*x1^2",
        "x3 + t*x1^2",
        "x4 + t*x3 + t^2/2*x1^2",
        "x5 + t*(x2 - x4) + t^2/2*(x1^2 - x3) - t^3/6*x1^2",
    ];
    for (i, want) in displayed.iter().enumerate() {
        let want = poly(&vt, want);
        ensure(h.image(i) == &want, || {
            format!(
                "image of x{}: {} != {}",
                i + 1,
                show(h.image(i), &vt),
                show(&want, &vt)
            )
        })?;
    }

    let v = vs(&["x1", "x2", "x3", "x4", "x5"]);
    let d = deg_drop_derivation(&v);
    let cert = certify_lnd(&d, CAP);
    let at = |t: i64| one_parameter(&d, &cert, &rat(t, 1)).map_err(|e| e.to_string());
    let h3 = at(3)?;
    ensure(h3.image(4).total_degree().finite() == Some(1), || {
        "x5 image at t=3 is not of degree 1".into()
    })?;
    let h2 = at(2)?;
    let drop = h2.apply_poly(&poly(&v, "x2 - x4"));
    ensure(drop.total_degree().finite() == Some(1), || {
        format!("x2 - x4 at t=2 maps to {}", show(&drop, &v))
    })?;
    ensure(
        d.apply_poly(&poly(&v, "2*(x2 - x4)"))
            .total_degree()
            .finite()
            == Some(2),
        || "2d(x2 - x4) not quadratic".into(),
    )?;

    for t in 1..=3i64 {
        let s = |e: &str| e.replace('t', &format!("({t})"));
        let factor = |var: &str, coeff: &str| exp(&der(&v, &[(var, &s(coeff))]));
        let h2 = factor("x2", "t*x1^2")?;
        let h3 = factor("x3", "t*x1^2")?;
        let h4 = factor("x4", "t*x3 + t^2/2*x1^2")?;
        let h5 = factor("x5", "t*(x2 - x4) + t^2/2*(x1^2 - x3) - t^3/6*x1^2")?;
        let product = compose(&h2, &compose(&h3, &compose(&h4, &h5)));
        ensure(product == at(t)?, || {
            format!("factorization fails at t={t}")
        })?;
    }
    within(start, Duration::from_secs(1))
}

fn criterion_2() -> Outcome {
    let v = vs(&["x", "y", "z"]);
    let family = fam(&v, &[&[("z", "1"), ("y", "x")], &[("z", "1")]]);
    let d = der(&v, &[("y", "1")]);
    let want = vec![
        RatFn::new(poly(&v, "1"), poly(&v, "x")).unwrap(),
        RatFn::new(poly(&v, "-1"), poly(&v, "x")).unwrap(),
    ];
    let dj = dj_membership(&d, &family);
    ensure(dj.member && dj.level == 1 && dj.coeffs == want, || {
        format!("dj: {dj:?}")
    })?;
    let rx = rx_membership(&d, &family);
    ensure(rx.member && rx.level == 1 && rx.coeffs == want, || {
        format!("rx: {rx:?}")
    })?;
    for name in ["non-decomposable-dj", "non-decomposable-rx"] {
        corpus_fixture(name)?
            .check()
            .map_err(|e| format!("{name}: {e}"))?;
    }
    Ok(())
}

fn corpus_fixture(name: &str) -> Result<unipotent::cli::Fixture, String> {
    let path = std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("corpus")
        .join(format!("{name}.json"));
    let text = std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| e.to_string())
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let v = vs(&["x", "y", "z"]);
    let nag = der(&v, &[("y", "x"), ("z", "2*y")]);
    let f = poly(&v, "x*z - y^2");
    ensure(nag.apply_poly(&f).is_zero(), || "d(xz - y^2) != 0".into())?;
    let nu = nag.mul_poly(&f);
    let cert = certify_lnd(&nu, CAP);
    ensure(matches!(cert, LndCert::IteratedZero(_)), || {
        format!("certificate {}", cert.display(&v))
    })?;
    let a = exp_derivation(&nu, &cert).map_err(|e| e.to_string())?;
    let a_inv =
        exp_derivation(&nu.neg(), &certify_lnd(&nu.neg(), CAP)).map_err(|e| e.to_string())?;
    let deg = automorphism_degree(&a, &a_inv).map_err(|e| e.to_string())?;
    ensure(deg == 5, || format!("degree {deg}"))?;
    let back = log_automorphism(&a, CAP).map_err(|e| e.to_string())?;
    ensure(back == nu, || format!("log(exp) = {}", back.display()))?;
    let family = fam(&v, &[&[("z", "1")], &[("y", "x"), ("z", "2*y")]]);
    let r = dj_membership(&nu, &family);
    ensure(r.member && r.level == 2, || format!("membership {r:?}"))?;
    within(start, Duration::from_secs(2))
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for case in 0..200 {
        let n = rng.gen_range(1..=5);
        let d = rand_triangular(&mut rng, n, 3, 3);
        let a = exp(&d)?;
        let back = log_automorphism(&a, CAP).map_err(|e| format!("case {case}: {e}"))?;
        ensure(back == d, || {
            format!("case {case}: log(exp(d)) != d for {}", d.display())
        })?;
        ensure(exp(&back)? == a, || {
            format!("case {case}: exp(log(exp(d))) != exp(d)")
        })?;
    }
    within(start, Duration::from_secs(60))
}

fn criterion_5() -> Outcome {
    let fx = coordinate5();
    let v = fx.family.vars().clone();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for case in 0..50 {
        let d1 = rand_coordinate_member(&mut rng, 5, 2, 2);
        let d2 = rand_coordinate_member(&mut rng, 5, 2, 2);
        for d in [&d1, &d2] {
            ensure(dj_membership(d, &fx.family).member, || {
                format!("case {case}: generated non-member")
            })?;
        }
        let (c1, c2) = (certify_lnd(&d1, CAP), certify_lnd(&d2, CAP));
        let z = bch(&d1, &d2, (&c1, &c2), CAP).map_err(|e| format!("case {case}: {e}"))?;
        ensure(exp(&z)? == compose(&exp(&d1)?, &exp(&d2)?), || {
            format!("case {case}: exp(bch) differs")
        })?;
        ensure(dj_membership(&z, &fx.family).member, || {
            format!("case {case}: bch left the algebra")
        })?;
    }
    for case in 0..50 {
        let f = rand_poly(&mut rng, 5, &[0, 1, 2, 3], 2, 3);
        let g = rand_poly(&mut rng, 5, &[0, 1, 2, 3], 2, 3);
        let d1 = Deriv::partial(&v, 4).mul_poly(&f);
        let d2 = if case % 2 == 0 {
            Deriv::partial(&v, 4).mul_poly(&g)
        } else {
            d1.scale(&rand_rational(&mut rng))
        };
        ensure(bracket(&d1, &d2).is_zero(), || {
            format!("case {case}: pair does not commute")
        })?;
        let (c1, c2) = (certify_lnd(&d1, CAP), certify_lnd(&d2, CAP));
        let z =
            bch(&d1, &d2, (&c1, &c2), CAP).map_err(|e| format!("commuting case {case}: {e}"))?;
        ensure(z == d1.add(&d2), || {
            format!("commuting case {case}: bch is not the sum")
        })?;
    }
    Ok(())
}

fn fixtures() -> Vec<Fixture> {
    vec![coordinate5(), non_decomposable(), nagata(), coordinate_yz()]
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for fx in fixtures() {
        let family = &fx.family;
        let n = family.vars().len();
        let k = family.len();
        for case in 0..100 {
            let d1 = rand_member(&mut rng, &fx, 2);
            let d2 = rand_member(&mut rng, &fx, 2);
            for d in [&d1, &d2] {
                let r = dj_membership(d, family);
                ensure(r.member, || {
                    format!(
                        "{} case {case}: generated non-member {}",
                        fx.name,
                        d.display()
                    )
                })?;
            }
            let b = bracket(&d1, &d2);
            let r = dj_membership(&b, family);
            ensure(r.member, || {
                format!("{} case {case}: bracket rejected {}", fx.name, b.display())
            })?;

            let i = rng.gen_range(1..=k);
            let f = rand_in_algebra(&mut rng, n, &fx.flag[i - 1], 3, 4);
            let level = annihilated_level(&RatFn::from_poly(f.clone()), family);
            ensure(level <= i, || {
                format!("{} case {case}: flag generator outside A_{i}", fx.name)
            })?;
            for d in [&d1, &d2, &b] {
                let image = annihilated_level(&RatFn::from_poly(d.apply_poly(&f)), family);
                ensure(image <= level, || {
                    format!("{} case {case}: A_{level} not stable", fx.name)
                })?;
            }
        }
    }
    Ok(())
}

fn criterion_7() -> Outcome {
    let v = vs(&["x", "y", "z"]);
    let yz = fam(&v, &[&[("y", "1")], &[("z", "1")]]);
    let z = fam(&v, &[&[("z", "1")]]);
    let y = fam(&v, &[&[("y", "1")]]);
    let sum = fam(&v, &[&[("y", "1"), ("z", "1")], &[("z", "1")]]);
    let zy = fam(&v, &[&[("z", "1")], &[("y", "1")]]);
    ensure(family_includes(&yz, &z).holds, || {
        "(dy,dz) should include (dz)".into()
    })?;
    ensure(!family_includes(&yz, &y).holds, || {
        "(dy,dz) should not include (dy)".into()
    })?;
    ensure(
        family_equivalent(&yz, &sum).map_err(|e| e.to_string())?,
        || "(dy,dz) ~ (dy+dz,dz) expected".into(),
    )?;
    ensure(
        !family_equivalent(&yz, &zy).map_err(|e| e.to_string())?,
        || "(dy,dz) ~ (dz,dy) not expected".into(),
    )
}

fn slice_strings(fx: &Fixture) -> (Vec<String>, Vec<String>, String) {
    let v = fx.family.vars();
    (
        fx.slices.y.iter().map(|p| canonical_string(p, v)).collect(),
        fx.slices.x.iter().map(|p| canonical_string(p, v)).collect(),
        canonical_string(&fx.slices.h, v),
    )
}

fn criterion_8() -> Outcome {
    let v = vs(&["x", "y"]);
    let dx = fam(&v, &[&[("x", "1")]]);
    let s = build_slice_system(&dx, 12).map_err(|e| e.to_string())?;
    ensure(
        s.y == vec![poly(&v, "x")] && s.x == vec![RatFn::from_poly(poly(&v, "x"))] && s.h.is_one(),
        || "slices of d/dx".into(),
    )?;
    let strings = |y: &[&str], x: &[&str], h: &str| {
        (
            y.iter().map(|s| s.to_string()).collect(),
            x.iter().map(|s| s.to_string()).collect(),
            h.to_string(),
        )
    };
    let nd = non_decomposable();
    let want = strings(&["y", "x*z - y"], &["y/x", "(x*z - y)/x"], "x^2");
    ensure(slice_strings(&nd) == want, || {
        format!("non-decomposable slices {:?}", slice_strings(&nd))
    })?;
    let nag = nagata();
    let want = strings(&["x*z - y^2", "y"], &["(x*z - y^2)/x", "y/x"], "x^2");
    ensure(slice_strings(&nag) == want, || {
        format!("nagata slices {:?}", slice_strings(&nag))
    })?;

    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for fx in fixtures() {
        let family = &fx.family;
        let n = family.vars().len();
        let all: Vec<usize> = (0..n).collect();
        for case in 0..100 {
            let g = rand_poly(&mut rng, n, &all, 4, 5);
            let e = slice_expand(&g, &fx.slices);
            let back = reconstruct(&e, &fx.slices);
            ensure(back == RatFn::from_poly(g.clone()), || {
                format!("{} case {case}: reconstruction differs", fx.name)
            })?;
            let p = kernel_project(&RatFn::from_poly(g), &fx.slices).map_err(|e| e.to_string())?;
            ensure(family.kills(&p), || {
                format!("{} case {case}: projection not invariant", fx.name)
            })?;
            let pp = kernel_project(&p, &fx.slices).map_err(|e| e.to_string())?;
            ensure(pp == p, || {
                format!("{} case {case}: projection not idempotent", fx.name)
            })?;
        }
    }
    Ok(())
}

fn criterion_9() -> Outcome {
    let v = vs(&["x1", "x2", "x3", "x4", "x5"]);
    let base = BTreeMap::from([(0usize, 1i64)]);
    for t in 1..=3i64 {
        let s = |e: &str| e.replace('t', &format!("({t})"));
        let factors = [
            ("x2", "t*x1^2"),
            ("x3", "t*x1^2"),
            ("x4", "t*x3 + t^2/2*x1^2"),
            ("x5", "t*(x2 - x4) + t^2/2*(x1^2 - x3) - t^3/6*x1^2"),
        ];
        let mut pairs = Vec::new();
        for (var, coeff) in factors {
            let d = der(&v, &[(var, &s(coeff))]);
            pairs.push((exp(&d)?, exp(&d.neg())?));
        }
        let w = bounding_weights(&pairs, &[1, 2, 3, 4], &base).map_err(|e| e.to_string())?;
        for (a, a_inv) in &pairs {
            if let Some(bad) = is_degree_preserving(a, a_inv, &w) {
                return Err(format!("t={t}: {}", bad.display(&v)));
            }
        }
        if t == 1 {
            ensure(w.weights() == [1, 2, 2, 2, 2], || {
                format!("weights {:?}", w.weights())
            })?;
        }
    }

    let v = vs(&["x", "y"]);
    let a = Auto::from_images(&v, vec![poly(&v, "x"), poly(&v, "y + x^2")], None, CAP)
        .map_err(|e| e.to_string())?;
    let a_inv = triangular_inverse(&a, &[0, 1]).map_err(|e| e.to_string())?;
    let w = bounding_weights(&[(a, a_inv)], &[1], &BTreeMap::from([(0usize, 1i64)]))
        .map_err(|e| e.to_string())?;
    ensure(w.weight(1) == 2, || format!("d_y = {}", w.weight(1)))
}

fn criterion_10() -> Outcome {
    let v = vs(&["x", "y", "z"]);
    let yz = fam(&v, &[&[("y", "1")], &[("z", "1")]]);
    let member = der(&v, &[("y", "x^2 + 1"), ("z", "3*x - 2")]);
    ensure(rx_membership(&member, &yz).member, || {
        "p(x)dy + q(x)dz rejected".into()
    })?;
    let non = der(&v, &[("z", "y")]);
    ensure(!rx_membership(&non, &yz).member, || "y dz accepted".into())?;

    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for fx in fixtures() {
        let family: &Family = &fx.family;
        let gen_exps: Vec<Auto> = family.gens().iter().map(exp).collect::<Result<_, _>>()?;
        for case in 0..25 {
            let d = rand_rx_member(&mut rng, &fx, 2);
            let r = rx_membership(&d, family);
            ensure(r.member, || {
                format!(
                    "{} case {case}: generated rx non-member {}",
                    fx.name,
                    d.display()
                )
            })?;
            let a = exp(&d)?;
            for (j, g) in gen_exps.iter().enumerate() {
                ensure(compose(&a, g) == compose(g, &a), || {
                    format!(
                        "{} case {case}: exp does not commute with generator {}",
                        fx.name,
                        j + 1
                    )
                })?;
            }
        }
    }
    Ok(())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("degree-drop example", criterion_1),
        ("non-decomposable example", criterion_2),
        ("nagata example", criterion_3),
        ("exp/log round trip", criterion_4),
        ("bch products", criterion_5),
        ("lie closure and flag stability", criterion_6),
        ("inclusion and equivalence", criterion_7),
        ("slice systems", criterion_8),
        ("bounding weights", criterion_9),
        ("rx membership", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let took = start.elapsed().as_secs_f64();
        match outcome {
            Ok(()) => println!("PASS {} {name} ({took:.2}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {} {name}: {why}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} / {} passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
