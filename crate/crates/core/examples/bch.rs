use unipotent::automorphism::{bch, compose, exp_derivation, group_commutator_log};
use unipotent::derivation::{bracket, certify_lnd};
use unipotent::poly::{parse_poly, VarSet};
use unipotent::{Deriv, Result};

fn main() -> Result<()> {
    let v = VarSet::new(&["x", "y", "z"])?;
    let p = |s: &str| parse_poly(s, &v);
    let d1 = Deriv::from_named(&v, &[("y", p("x")?)])?;
    let d2 = Deriv::from_named(&v, &[("z", p("y^2")?)])?;
    let (c1, c2) = (certify_lnd(&d1, 64), certify_lnd(&d2, 64));

    println!("[d1, d2] = {}", bracket(&d1, &d2).display());
    let z = bch(&d1, &d2, (&c1, &c2), 64)?;
    println!("bch(d1, d2) = {}", z.display());
    let lhs = exp_derivation(&z, &certify_lnd(&z, 64))?;
    let rhs = compose(&exp_derivation(&d1, &c1)?, &exp_derivation(&d2, &c2)?);
    println!("exp(bch) == exp(d1) ∘ exp(d2): {}", lhs == rhs);

    let c = group_commutator_log(&d1, &d2, (&c1, &c2), 64)?;
    println!("log of the group commutator = {}", c.log.display());
    println!("relation to the bracket: {}", c.relation.as_str());

    // a two-step nilpotent pair: the commutator log is minus the bracket
    let e1 = Deriv::from_named(&v, &[("y", p("1")?)])?;
    let e2 = Deriv::from_named(&v, &[("z", p("y")?)])?;
    let c = group_commutator_log(&e1, &e2, (&certify_lnd(&e1, 64), &certify_lnd(&e2, 64)), 64)?;
    println!("[d/dy, y*d/dz] = {}", bracket(&e1, &e2).display());
    println!("log of the group commutator = {} ({})", c.log.display(), c.relation.as_str());
    Ok(())
}
