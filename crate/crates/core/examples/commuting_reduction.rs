use unipotent::djlike::commuting_reduction;
use unipotent::poly::{parse_poly, VarSet};
use unipotent::{Deriv, Result};

fn main() -> Result<()> {
    let v = VarSet::new(&["x", "y"])?;
    let p = |s: &str| parse_poly(s, &v);
    let basis = vec![
        Deriv::from_named(&v, &[("x", p("1")?)])?,
        Deriv::from_named(&v, &[("y", p("x")?)])?,
        Deriv::from_named(&v, &[("y", p("1")?)])?,
    ];
    let family = commuting_reduction(&basis, None, 1000, 64)?;
    for (i, g) in family.gens().iter().enumerate() {
        println!("d{} = {}", i + 1, g.display());
    }
    Ok(())
}
