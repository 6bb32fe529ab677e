//! Exact linear algebra over `Q(X)`: fraction-free rank and span solving.

use num_traits::{One, Zero};

use crate::poly::{poly_lcm, Poly, RatFn, Rational};

/// Rectangular matrix of reduced rational functions, stored row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<RatFn>,
}

impl RatMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<RatFn>) -> Self {
        assert_eq!(entries.len(), rows * cols, "matrix shape");
        RatMatrix {
            rows,
            cols,
            entries,
        }
    }

    pub fn from_rows(rows: Vec<Vec<RatFn>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        RatMatrix::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &RatFn {
        &self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[RatFn] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    /// Entrywise evaluation; `None` when a denominator vanishes.
    pub fn eval_at(&self, point: &[Rational]) -> Option<Vec<Vec<Rational>>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|e| e.eval(point).ok()).collect())
            .collect()
    }
}

/// Rank over the rational function field, by Bareiss elimination on the
/// matrix with each row scaled by the lcm of its denominators.
pub fn symbolic_rank(m: &RatMatrix) -> usize {
    let mut a: Vec<Vec<Poly>> = (0..m.rows)
        .map(|i| {
            let row = m.row(i);
            let nvars = row.first().map_or(0, RatFn::nvars);
            let l = row
                .iter()
                .fold(Poly::one(nvars), |acc, e| poly_lcm(&acc, e.denom()));
            row.iter()
                .map(|e| e.mul_poly(&l).into_poly().expect("lcm clears denominators"))
                .collect()
        })
        .collect();
    let (rows, cols) = (m.rows, m.cols);
    if rows == 0 || cols == 0 {
        return 0;
    }
    let nvars = m.entries[0].nvars();
    let mut prev = Poly::one(nvars);
    let mut rank = 0;
    for step in 0..rows.min(cols) {
        let mut best: Option<(i64, usize, usize)> = None;
        for (i, row) in a.iter().enumerate().skip(step) {
            for (j, e) in row.iter().enumerate().skip(step) {
                if let Some(d) = e.total_degree().finite() {
                    if best.is_none_or(|(bd, _, _)| d < bd) {
                        best = Some((d, i, j));
                    }
                }
            }
        }
        let Some((_, pi, pj)) = best else { break };
        a.swap(step, pi);
        for row in a.iter_mut() {
            row.swap(step, pj);
        }
        let pivot = a[step][step].clone();
        for i in step + 1..rows {
            let factor = a[i][step].clone();
            for j in step + 1..cols {
                let v = &(&pivot * &a[i][j]) - &(&factor * &a[step][j]);
                a[i][j] = v.div_exact(&prev).expect("Bareiss division is exact");
            }
            a[i][step] = Poly::zero(nvars);
        }
        prev = pivot;
        rank += 1;
    }
    rank
}

/// Finds `c` with `sum_j c_j * rows[j] = target` over the rational function
/// field. Free coefficients are set to zero; `None` when no solution exists.
pub fn solve_in_span(rows: &RatMatrix, target: &[RatFn]) -> Option<Vec<RatFn>> {
    assert_eq!(target.len(), rows.cols, "target length");
    let k = rows.rows;
    let n = rows.cols;
    let nvars = target.first().map_or(0, RatFn::nvars);
    // augmented n x (k + 1) system, one equation per column of `rows`
    let mut a: Vec<Vec<RatFn>> = (0..n)
        .map(|l| {
            let mut eq: Vec<RatFn> = (0..k).map(|j| rows.get(j, l).clone()).collect();
            eq.push(target[l].clone());
            eq
        })
        .collect();
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut r = 0;
    for col in 0..k {
        let choice = (r..n)
            .filter(|&i| !a[i][col].is_zero())
            .min_by_key(|&i| (a[i][col].size_degree(), i));
        let Some(pi) = choice else { continue };
        a.swap(r, pi);
        let inv = a[r][col].recip().expect("pivot is nonzero");
        for e in a[r].iter_mut() {
            *e = &*e * &inv;
        }
        for i in 0..n {
            if i == r || a[i][col].is_zero() {
                continue;
            }
            let factor = a[i][col].clone();
            for j in 0..=k {
                let delta = &factor * &a[r][j];
                a[i][j] = &a[i][j] - &delta;
            }
        }
        pivots.push((r, col));
        r += 1;
    }
    if a[r..].iter().any(|eq| !eq[k].is_zero()) {
        return None;
    }
    let mut c = vec![RatFn::zero(nvars); k];
    for (row, col) in pivots {
        c[col] = a[row][k].clone();
    }
    Some(c)
}

/// Reduced row echelon form over the rationals, in place. Returns the pivot
/// column of each nonzero row.
pub fn rational_rref(a: &mut [Vec<Rational>]) -> Vec<usize> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..cols {
        if r == rows {
            break;
        }
        let Some(pi) = (r..rows).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(r, pi);
        let inv = a[r][col].recip();
        if !inv.is_one() {
            for e in a[r].iter_mut() {
                *e *= &inv;
            }
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (e, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *e -= &factor * p;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    pivots
}

/// Rank of a rational matrix.
pub fn rational_rank(a: &[Vec<Rational>]) -> usize {
    let mut copy = a.to_vec();
    rational_rref(&mut copy).len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{canonical_string, parse_expr, VarSet};

    fn mat(vs: &VarSet, rows: &[&[&str]]) -> RatMatrix {
        RatMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|s| parse_expr(s, vs).unwrap()).collect())
                .collect(),
        )
    }

    fn xyz() -> VarSet {
        VarSet::new(&["x", "y", "z"]).unwrap()
    }

    #[test]
    fn rank_examples() {
        let vs = xyz();
        assert_eq!(
            symbolic_rank(&mat(&vs, &[&["0", "x", "1"], &["0", "0", "1"]])),
            2
        );
        assert_eq!(
            symbolic_rank(&mat(&vs, &[&["0", "0", "0"], &["0", "0", "0"]])),
            0
        );
        assert_eq!(
            symbolic_rank(&mat(
                &vs,
                &[&["1", "0", "0"], &["0", "1", "0"], &["0", "0", "1"]]
            )),
            3
        );
        // proportional over Q(X), even though no rational multiple relates them
        assert_eq!(
            symbolic_rank(&mat(&vs, &[&["0", "1", "0"], &["0", "x", "0"]])),
            1
        );
        assert_eq!(symbolic_rank(&mat(&vs, &[&["1/x", "y"], &["1", "x*y"]])), 1);
    }

    #[test]
    fn span_examples() {
        let vs = xyz();
        let rows = mat(&vs, &[&["0", "x", "1"], &["0", "0", "1"]]);
        let target: Vec<RatFn> = ["0", "1", "0"]
            .iter()
            .map(|s| parse_expr(s, &vs).unwrap())
            .collect();
        let c = solve_in_span(&rows, &target).unwrap();
        let printed: Vec<String> = c.iter().map(|e| canonical_string(e, &vs)).collect();
        assert_eq!(printed, ["1/x", "-1/x"]);

        let first: Vec<RatFn> = rows.row(0).to_vec();
        let c = solve_in_span(&rows, &first).unwrap();
        assert!(c[0] == RatFn::one(3) && c[1].is_zero());

        let yz = VarSet::new(&["y", "z"]).unwrap();
        let rows = mat(&yz, &[&["1", "0"]]);
        let target: Vec<RatFn> = ["0", "1"]
            .iter()
            .map(|s| parse_expr(s, &yz).unwrap())
            .collect();
        assert_eq!(solve_in_span(&rows, &target), None);
    }

    #[test]
    fn rref_rank() {
        let a = vec![
            vec![
                Rational::from_integer(1.into()),
                Rational::from_integer(2.into()),
            ],
            vec![
                Rational::from_integer(2.into()),
                Rational::from_integer(4.into()),
            ],
        ];
        assert_eq!(rational_rank(&a), 1);
    }
}
