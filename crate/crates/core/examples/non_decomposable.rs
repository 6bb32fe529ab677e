use unipotent::djlike::{dj_membership, rx_membership, Family};
use unipotent::poly::{canonical_string, parse_poly, VarSet};
use unipotent::{Deriv, Result};

fn main() -> Result<()> {
    let v = VarSet::new(&["x", "y", "z"])?;
    let p = |s: &str| parse_poly(s, &v);
    let d1 = Deriv::from_named(&v, &[("z", p("1")?), ("y", p("x")?)])?;
    let d2 = Deriv::from_named(&v, &[("z", p("1")?)])?;
    let family = Family::new(vec![d1, d2], 64)?;

    // d/dy is not a combination of the generators with polynomial
    // coefficients, but it is one over Frac(K[x]).
    let dy = Deriv::from_named(&v, &[("y", p("1")?)])?;
    for (name, report) in [("dJ-like", dj_membership(&dy, &family)), ("R_X", rx_membership(&dy, &family))] {
        let coeffs: Vec<String> = report.coeffs.iter().map(|c| canonical_string(c, &v)).collect();
        println!("{name}: member={} level={} coeffs=[{}]", report.member, report.level, coeffs.join(", "));
    }

    let z_dy = Deriv::from_named(&v, &[("y", p("z")?)])?;
    let r = dj_membership(&z_dy, &family);
    if let Some(w) = &r.witness {
        println!("z*d/dy rejected: {}", w.display(&v));
    }
    Ok(())
}
