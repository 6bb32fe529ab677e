//! Replacing a basis of a nilpotent Lie algebra of LNDs by a commuting,
//! locally free family through bracket substitution.

use std::collections::BTreeMap;

use num_traits::Zero;

use super::Family;
use crate::derivation::{bracket, coefficient_matrix, Deriv};
use crate::error::{Error, Result};
use crate::linalg::{rational_rank, symbolic_rank};
use crate::poly::{Monomial, Rational};

/// Flattens coefficient vectors over a shared `(variable, monomial)` index.
fn flatten(ds: &[&Deriv]) -> Vec<Vec<Rational>> {
    let mut index: BTreeMap<(usize, Monomial), usize> = BTreeMap::new();
    for d in ds {
        for (i, c) in d.coeffs().iter().enumerate() {
            for (m, _) in c.terms() {
                let next = index.len();
                index.entry((i, m.clone())).or_insert(next);
            }
        }
    }
    ds.iter()
        .map(|d| {
            let mut row = vec![Rational::zero(); index.len()];
            for (i, c) in d.coeffs().iter().enumerate() {
                for (m, v) in c.terms() {
                    row[index[&(i, m.clone())]] = v.clone();
                }
            }
            row
        })
        .collect()
}

fn in_rational_span(basis: &[Deriv], target: &Deriv) -> bool {
    let mut all: Vec<&Deriv> = basis.iter().collect();
    let base_rank = rational_rank(&flatten(&all));
    all.push(target);
    rational_rank(&flatten(&all)) == base_rank
}

fn rank(ds: &[Deriv]) -> usize {
    if ds.is_empty() {
        0
    } else {
        symbolic_rank(&coefficient_matrix(ds))
    }
}

/// Picks `k` elements of rank `k` from `basis` (by default `k` is the rank
/// of the whole basis), then, while some pair `(i, j)` fails to commute,
/// replaces `d_j` and otherwise `d_i` by `[d_i, d_j]` if the rank stays `k`.
/// At most `cap` substitutions are made.
pub fn commuting_reduction(
    basis: &[Deriv],
    k: Option<usize>,
    cap: usize,
    lnd_cap: usize,
) -> Result<Family> {
    let Some(first) = basis.first() else {
        return Err(Error::InvalidFamily("empty basis".into()));
    };
    for d in basis {
        first.vars().ensure_same(d.vars())?;
    }
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            if !in_rational_span(basis, &bracket(&basis[i], &basis[j])) {
                return Err(Error::NotBracketClosed(format!(
                    "[{}, {}] is outside the span",
                    basis[i].display(),
                    basis[j].display()
                )));
            }
        }
    }
    let found = rank(basis);
    let k = k.unwrap_or(found);
    if k == 0 || k > found {
        return Err(Error::RankDeficient {
            requested: k,
            found,
        });
    }
    let mut current: Vec<Deriv> = Vec::with_capacity(k);
    for d in basis {
        if current.len() == k {
            break;
        }
        current.push(d.clone());
        if rank(&current) < current.len() {
            current.pop();
        }
    }
    let mut steps = 0;
    loop {
        let pair = (0..k)
            .flat_map(|i| (i + 1..k).map(move |j| (i, j)))
            .find(|&(i, j)| !bracket(&current[i], &current[j]).is_zero());
        let Some((i, j)) = pair else { break };
        if steps == cap {
            return Err(Error::ReductionCapExceeded {
                cap,
                pair: (i + 1, j + 1),
            });
        }
        let b = bracket(&current[i], &current[j]);
        let replaced = [j, i].into_iter().any(|slot| {
            let old = std::mem::replace(&mut current[slot], b.clone());
            if rank(&current) == k {
                true
            } else {
                current[slot] = old;
                false
            }
        });
        if !replaced {
            return Err(Error::ReductionStuck { i: i + 1, j: j + 1 });
        }
        steps += 1;
    }
    Family::new(current, lnd_cap)
}
