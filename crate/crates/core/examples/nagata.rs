//! Nagata's automorphism as `exp(f*d)` with `d = x*d/dy + 2y*d/dz` and
//! `f = xz - y^2`.

use unipotent::automorphism::{automorphism_degree, exp_derivation, log_automorphism};
use unipotent::derivation::certify_lnd;
use unipotent::djlike::{dj_membership, Family};
use unipotent::poly::{canonical_string, parse_poly, VarSet};
use unipotent::{Deriv, Result};

fn main() -> Result<()> {
    let v = VarSet::new(&["x", "y", "z"])?;
    let p = |s: &str| parse_poly(s, &v);
    let d = Deriv::from_named(&v, &[("y", p("x")?), ("z", p("2*y")?)])?;
    let f = p("x*z - y^2")?;
    println!("d(f) = {}", canonical_string(&d.apply_poly(&f), &v));

    let nu = d.mul_poly(&f);
    let cert = certify_lnd(&nu, 64);
    println!("certificate: {}", cert.display(&v));
    let a = exp_derivation(&nu, &cert)?;
    let a_inv = exp_derivation(&nu.neg(), &certify_lnd(&nu.neg(), 64))?;
    for (i, img) in a.images().iter().enumerate() {
        println!("  {} -> {}", v.name(i), canonical_string(img, &v));
    }
    println!("degree: {}", automorphism_degree(&a, &a_inv)?);
    println!("log(exp(f*d)) == f*d: {}", log_automorphism(&a, 64)? == nu);

    let dz = Deriv::from_named(&v, &[("z", p("1")?)])?;
    let family = Family::new(vec![dz, d], 64)?;
    let r = dj_membership(&nu, &family);
    println!("member of D(d/dz, d): {} at level {}", r.member, r.level);
    Ok(())
}
