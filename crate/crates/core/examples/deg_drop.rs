//! The one-parameter group `h(t) = exp(t*d)` on A^5 whose images lose
//! degree at special values of `t`, and its factorization into
//! elementary maps.

use unipotent::automorphism::{compose, exp_derivation, one_parameter};
use unipotent::derivation::{certify_lnd, Deriv};
use unipotent::poly::{canonical_string, parse_poly, rat, VarSet};
use unipotent::Result;

fn deriv(v: &VarSet, pairs: &[(&str, &str)]) -> Result<Deriv> {
    let pairs = pairs
        .iter()
        .map(|(n, e)| Ok((*n, parse_poly(e, v)?)))
        .collect::<Result<Vec<_>>>()?;
    Deriv::from_named(v, &pairs)
}

fn main() -> Result<()> {
    let coeffs = [("x2", "x1^2"), ("x3", "x1^2"), ("x4", "x3"), ("x5", "x2 - x4")];

    let vt = VarSet::with_params(&["x1", "x2", "x3", "x4", "x5"], &["t"])?;
    let d = deriv(&vt, &coeffs)?;
    let td = d.mul_poly(&parse_poly("t", &vt)?);
    let h = exp_derivation(&td, &certify_lnd(&td, 64))?;
    println!("h(t):");
    for (i, img) in h.images().iter().enumerate().take(5) {
        println!("  {} -> {}", vt.name(i), canonical_string(img, &vt));
    }

    let v = VarSet::new(&["x1", "x2", "x3", "x4", "x5"])?;
    let d = deriv(&v, &coeffs)?;
    let cert = certify_lnd(&d, 64);
    println!("certificate: {}", cert.display(&v));
    for t in 1..=4 {
        let h = one_parameter(&d, &cert, &rat(t, 1))?;
        println!("t={t}: x5 -> {}", canonical_string(h.image(4), &v));
    }
    let h2 = one_parameter(&d, &cert, &rat(2, 1))?;
    let diff = parse_poly("x2 - x4", &v)?;
    println!("t=2: x2 - x4 -> {}", canonical_string(&h2.apply_poly(&diff), &v));

    // h(1) as h2 ∘ h3 ∘ h4 ∘ h5
    let elementary = [
        ("x2", "x1^2"),
        ("x3", "x1^2"),
        ("x4", "x3 + 1/2*x1^2"),
        ("x5", "x2 - x4 + 1/2*(x1^2 - x3) - 1/6*x1^2"),
    ];
    let mut product = None;
    for (var, c) in elementary.iter().rev() {
        let e = deriv(&v, &[(var, c)])?;
        let f = exp_derivation(&e, &certify_lnd(&e, 64))?;
        product = Some(match product {
            None => f,
            Some(rest) => compose(&f, &rest),
        });
    }
    let h1 = one_parameter(&d, &cert, &rat(1, 1))?;
    println!("h(1) = h2 ∘ h3 ∘ h4 ∘ h5: {}", product.as_ref() == Some(&h1));
    Ok(())
}
