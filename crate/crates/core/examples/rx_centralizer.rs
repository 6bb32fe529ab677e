use unipotent::automorphism::{compose, exp_derivation};
use unipotent::derivation::certify_lnd;
use unipotent::djlike::{rx_membership, Family};
use unipotent::poly::{parse_poly, VarSet};
use unipotent::{Deriv, Result};

fn main() -> Result<()> {
    let v = VarSet::new(&["x", "y", "z"])?;
    let p = |s: &str| parse_poly(s, &v);
    let dy = Deriv::from_named(&v, &[("y", p("1")?)])?;
    let dz = Deriv::from_named(&v, &[("z", p("1")?)])?;
    let family = Family::new(vec![dy.clone(), dz.clone()], 64)?;

    let candidates = [
        Deriv::from_named(&v, &[("y", p("x^2 + 1")?), ("z", p("3*x")?)])?,
        Deriv::from_named(&v, &[("z", p("y")?)])?,
    ];
    for d in &candidates {
        let r = rx_membership(d, &family);
        let a = exp_derivation(d, &certify_lnd(d, 64))?;
        let commutes = [&dy, &dz].iter().all(|g| {
            let e = exp_derivation(g, &certify_lnd(g, 64)).expect("coordinate derivations are LNDs");
            compose(&a, &e) == compose(&e, &a)
        });
        println!("{}: in R_X {}, centralizes the generators {}", d.display(), r.member, commutes);
    }
    Ok(())
}
