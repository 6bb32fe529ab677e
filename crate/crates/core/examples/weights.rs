use std::collections::BTreeMap;

use unipotent::automorphism::{exp_derivation, Auto};
use unipotent::degrees::{bounding_weights, is_degree_preserving, WeightFn};
use unipotent::derivation::certify_lnd;
use unipotent::poly::{parse_poly, VarSet};
use unipotent::{Deriv, Result};

fn main() -> Result<()> {
    let v = VarSet::new(&["x1", "x2", "x3", "x4", "x5"])?;
    let factors = [
        ("x2", "x1^2"),
        ("x3", "x1^2"),
        ("x4", "x3 + 1/2*x1^2"),
        ("x5", "x2 - x4 + 1/2*(x1^2 - x3) - 1/6*x1^2"),
    ];
    let mut pairs: Vec<(Auto, Auto)> = Vec::new();
    for (var, c) in factors {
        let d = Deriv::from_named(&v, &[(var, parse_poly(c, &v)?)])?;
        let a = exp_derivation(&d, &certify_lnd(&d, 64))?;
        let a_inv = exp_derivation(&d.neg(), &certify_lnd(&d.neg(), 64))?;
        pairs.push((a, a_inv));
    }
    let base = BTreeMap::from([(0, 1)]);
    let w = bounding_weights(&pairs, &[1, 2, 3, 4], &base)?;
    for (var, d) in w.cylinder_weights() {
        println!("d_{} = {d}", v.name(var));
    }

    // lowering a weight breaks the postcondition
    let low = WeightFn::new(&v, &base, &[(1, 1), (2, 2), (3, 2), (4, 2)])?;
    if let Some(bad) = is_degree_preserving(&pairs[0].0, &pairs[0].1, &low) {
        println!("with d_x2 = 1: {}", bad.display(&v));
    }
    Ok(())
}
