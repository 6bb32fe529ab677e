//! dJ-like families of commuting, locally free LNDs and their calculus.
//!
//! A [`Family`] is an ordered tuple `(d_1, ..., d_k)`. Its order fixes the
//! annihilator tower `A_i = ker d_i ∩ ... ∩ ker d_k`, which drives
//! membership levels; reordering is always explicit.

mod membership;
mod reduction;
mod slices;

pub use membership::{
    dj_membership, family_equivalent, family_includes, rx_membership, Inclusion, MembershipReport,
    Witness,
};
pub use reduction::commuting_reduction;
pub use slices::{
    build_slice_system, cylinder_presentation, kernel_project, reconstruct, slice_expand, CylPres,
    Expansion, SliceSys,
};

use crate::derivation::{certify_lnd, check_commuting, is_locally_free, Deriv, LndCert};
use crate::error::{Error, Result};
use crate::poly::{RatFn, VarSet};

/// Ordered commuting, locally free family of certified LNDs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Family {
    vars: VarSet,
    gens: Vec<Deriv>,
    certs: Vec<LndCert>,
}

impl Family {
    /// Validates and certifies `gens`. Each generator must be certified
    /// within `cap`, the generators must commute pairwise and be linearly
    /// independent over the rational function field.
    pub fn new(gens: Vec<Deriv>, cap: usize) -> Result<Self> {
        let certs = gens
            .iter()
            .map(|d| match certify_lnd(d, cap) {
                LndCert::Unknown(cap) => Err(Error::Uncertified { cap }),
                c => Ok(c),
            })
            .collect::<Result<Vec<_>>>()?;
        Family::with_certs(gens, certs)
    }

    pub fn with_certs(gens: Vec<Deriv>, certs: Vec<LndCert>) -> Result<Self> {
        let Some(first) = gens.first() else {
            return Err(Error::InvalidFamily(
                "a family needs at least one generator".into(),
            ));
        };
        let vars = first.vars().clone();
        for d in &gens[1..] {
            vars.ensure_same(d.vars())?;
        }
        if certs.len() != gens.len() {
            return Err(Error::InvalidFamily(
                "one certificate per generator is required".into(),
            ));
        }
        for (i, (d, c)) in gens.iter().zip(&certs).enumerate() {
            if !c.check(d) {
                return Err(Error::InvalidFamily(format!(
                    "certificate of generator {} does not hold",
                    i + 1
                )));
            }
        }
        if let Some(&(i, j)) = check_commuting(&gens).first() {
            return Err(Error::InvalidFamily(format!(
                "generators {} and {} do not commute",
                i + 1,
                j + 1
            )));
        }
        if !is_locally_free(&gens) {
            return Err(Error::InvalidFamily(
                "generators are not locally free".into(),
            ));
        }
        Ok(Family { vars, gens, certs })
    }

    /// The family `(d_{perm[0]}, d_{perm[1]}, ...)`.
    pub fn reordered(&self, perm: &[usize]) -> Result<Self> {
        let mut seen = vec![false; self.len()];
        if perm.len() != self.len()
            || perm
                .iter()
                .any(|&p| p >= self.len() || std::mem::replace(&mut seen[p], true))
        {
            return Err(Error::InvalidFamily(
                "reordering is not a permutation".into(),
            ));
        }
        Ok(Family {
            vars: self.vars.clone(),
            gens: perm.iter().map(|&p| self.gens[p].clone()).collect(),
            certs: perm.iter().map(|&p| self.certs[p].clone()).collect(),
        })
    }

    /// The tail `(d_i, ..., d_k)`, with `i` 1-based.
    pub fn tail(&self, i: usize) -> Self {
        assert!(i >= 1 && i <= self.len(), "tail index out of range");
        Family {
            vars: self.vars.clone(),
            gens: self.gens[i - 1..].to_vec(),
            certs: self.certs[i - 1..].to_vec(),
        }
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn gens(&self) -> &[Deriv] {
        &self.gens
    }

    pub fn gen(&self, i: usize) -> &Deriv {
        &self.gens[i]
    }

    pub fn certs(&self) -> &[LndCert] {
        &self.certs
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    /// Is `f` annihilated by every generator?
    pub fn kills(&self, f: &RatFn) -> bool {
        self.gens.iter().all(|d| d.apply_ratfn(f).is_zero())
    }
}

/// Smallest `i` in `1..=k+1` with `d_l(f) = 0` for every `l >= i`.
pub fn annihilated_level(f: &RatFn, fam: &Family) -> usize {
    let mut i = fam.len() + 1;
    while i > 1 && fam.gens[i - 2].apply_ratfn(f).is_zero() {
        i -= 1;
    }
    i
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;
    use crate::poly::parse_poly;

    pub fn vs(names: &[&str]) -> VarSet {
        VarSet::new(names).unwrap()
    }

    pub fn der(v: &VarSet, pairs: &[(&str, &str)]) -> Deriv {
        let pairs: Vec<(&str, crate::poly::Poly)> = pairs
            .iter()
            .map(|(n, e)| (*n, parse_poly(e, v).unwrap()))
            .collect();
        Deriv::from_named(v, &pairs).unwrap()
    }

    pub fn fam(v: &VarSet, gens: &[&[(&str, &str)]]) -> Family {
        Family::new(gens.iter().map(|g| der(v, g)).collect(), 64).unwrap()
    }

    /// `(d_z + x d_y, d_z)` on `A^3`.
    pub fn non_decomposable() -> Family {
        let v = vs(&["x", "y", "z"]);
        fam(&v, &[&[("z", "1"), ("y", "x")], &[("z", "1")]])
    }

    /// `(d_z, x d_y + 2y d_z)` on `A^3`.
    pub fn nagata() -> Family {
        let v = vs(&["x", "y", "z"]);
        fam(&v, &[&[("z", "1")], &[("y", "x"), ("z", "2*y")]])
    }

    /// `(d_y, d_z)` on `A^3`.
    pub fn coordinate_yz() -> Family {
        let v = vs(&["x", "y", "z"]);
        fam(&v, &[&[("y", "1")], &[("z", "1")]])
    }
}
