//! Slice coordinates, the kernel projection and the cylinder presentation
//! for the Nagata family `(d/dz, x*d/dy + 2y*d/dz)`.

use unipotent::djlike::{build_slice_system, cylinder_presentation, kernel_project, reconstruct, slice_expand, Family};
use unipotent::poly::{canonical_string, parse_poly, VarSet};
use unipotent::{Deriv, RatFn, Result};

fn main() -> Result<()> {
    let v = VarSet::new(&["x", "y", "z"])?;
    let p = |s: &str| parse_poly(s, &v);
    let family = Family::new(
        vec![
            Deriv::from_named(&v, &[("z", p("1")?)])?,
            Deriv::from_named(&v, &[("y", p("x")?), ("z", p("2*y")?)])?,
        ],
        64,
    )?;
    let s = build_slice_system(&family, 12)?;
    for (i, (y, x)) in s.y.iter().zip(&s.x).enumerate() {
        println!("y{} = {}, x{} = {}", i + 1, canonical_string(y, &v), i + 1, canonical_string(x, &v));
    }
    println!("h = {}", canonical_string(&s.h, &v));

    let g = p("x^3 + y*z + z^2")?;
    let pi = kernel_project(&RatFn::from_poly(g.clone()), &s)?;
    println!("pi(g) = {}  (invariant: {})", canonical_string(&pi, &v), family.kills(&pi));
    let e = slice_expand(&g, &s);
    for (alpha, c) in &e {
        println!("  c{alpha:?} = {}", canonical_string(c, &v));
    }
    println!("reconstructs g: {}", reconstruct(&e, &s) == RatFn::from_poly(g));

    let cyl = cylinder_presentation(&family, &s)?;
    println!("localize at f = {}", canonical_string(&cyl.f, &v));
    for (var, e) in &cyl.table {
        let terms: Vec<String> = e.iter().map(|(a, c)| format!("{a:?}:{}", canonical_string(c, &v))).collect();
        println!("  {} = {}", v.name(*var), terms.join(" + "));
    }
    Ok(())
}
