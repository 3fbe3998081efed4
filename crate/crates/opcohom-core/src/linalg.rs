//! Exact rational scalars, sparse matrices, and the rank/kernel computations
//! underlying every homology calculation in the crate.
//!
//! All arithmetic is exact: scalars are arbitrary-precision rationals (always
//! stored reduced with a positive denominator) and elimination never rounds.

use num::{BigInt, BigRational, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

/// Exact rational scalar. Arbitrary-precision, always reduced, denominator
/// positive. Field axioms hold exactly.
pub type Rational = BigRational;

/// Convenience constructor for an integer rational.
pub fn rat(n: i64) -> Rational {
    BigRational::from(BigInt::from(n))
}

/// Convenience constructor for the fraction `p/q`.
pub fn frac(p: i64, q: i64) -> Rational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// Parses a rational from a decimal-free string: either an integer `"p"` or a
/// fraction `"p/q"` with `q != 0`.
pub fn parse_rational(s: &str) -> Result<Rational, LinalgError> {
    let s = s.trim();
    let bad = || LinalgError::BadRational(s.to_string());
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        Ok(BigRational::new(p, q))
    } else {
        let p: BigInt = s.parse().map_err(|_| bad())?;
        Ok(BigRational::from(p))
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LinalgError {
    #[error("cannot parse rational from {0:?} (expected an integer or \"p/q\")")]
    BadRational(String),
    #[error("dimension mismatch: {context} expected {expected}, got {got}")]
    DimensionMismatch {
        context: &'static str,
        expected: usize,
        got: usize,
    },
    #[error("differentials do not compose to zero: column {column} of d_in maps to a nonzero vector under d_out")]
    NotAComplex { column: usize },
}

/// Sparse matrix with exact rational entries. Absent entries are exactly zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), Rational>,
}

/// Pivot column selection used during elimination. Two strategies exist so
/// that pivot-order independence of rank/kernel can be property-tested.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PivotStrategy {
    /// Among candidate rows for the current column, take the first nonzero.
    FirstNonzero,
    /// Among candidate rows, take the sparsest one (fewest nonzero entries).
    Sparsest,
}

impl ExactMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, rat(1));
        }
        m
    }

    /// Builds a matrix from dense integer rows (test convenience).
    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut m = Self::zero(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, rat(v));
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Sets entry `(r, c)`; storing an exact zero removes the entry.
    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        assert!(r < self.rows && c < self.cols, "index out of bounds");
        if v.is_zero() {
            self.entries.remove(&(r, c));
        } else {
            self.entries.insert((r, c), v);
        }
    }

    /// Adds `v` to entry `(r, c)`.
    pub fn add_to(&mut self, r: usize, c: usize, v: &Rational) {
        if v.is_zero() {
            return;
        }
        let cur = self.get(r, c) + v;
        self.set(r, c, cur);
    }

    pub fn get(&self, r: usize, c: usize) -> Rational {
        self.entries.get(&(r, c)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &Rational)> {
        self.entries.iter().map(|(&(r, c), v)| (r, c, v))
    }

    pub fn transpose(&self) -> ExactMatrix {
        let mut t = ExactMatrix::zero(self.cols, self.rows);
        for (r, c, v) in self.iter() {
            t.set(c, r, v.clone());
        }
        t
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &ExactMatrix) -> Result<ExactMatrix, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::DimensionMismatch {
                context: "matrix product inner dimension",
                expected: self.cols,
                got: other.rows,
            });
        }
        // Group other's entries by row for sparse accumulation.
        let mut other_rows: Vec<Vec<(usize, &Rational)>> = vec![Vec::new(); other.rows];
        for (r, c, v) in other.iter() {
            other_rows[r].push((c, v));
        }
        let mut out = ExactMatrix::zero(self.rows, other.cols);
        for (r, k, v) in self.iter() {
            for &(c, w) in &other_rows[k] {
                out.add_to(r, c, &(v * w));
            }
        }
        Ok(out)
    }

    /// Applies the matrix to a dense column vector.
    pub fn apply(&self, v: &[Rational]) -> Result<Vec<Rational>, LinalgError> {
        if v.len() != self.cols {
            return Err(LinalgError::DimensionMismatch {
                context: "matrix-vector product",
                expected: self.cols,
                got: v.len(),
            });
        }
        let mut out = vec![Rational::zero(); self.rows];
        for (r, c, e) in self.iter() {
            if !v[c].is_zero() {
                out[r] += e * &v[c];
            }
        }
        Ok(out)
    }

    /// Exact Gaussian elimination. Returns the rank together with a basis of
    /// the right kernel `{v : Mv = 0}`.
    pub fn rank_and_kernel(&self) -> (usize, Vec<Vec<Rational>>) {
        self.rank_and_kernel_with(PivotStrategy::FirstNonzero)
    }

    /// As [`rank_and_kernel`](Self::rank_and_kernel) with an explicit pivot
    /// strategy; the results span the same space for every strategy.
    pub fn rank_and_kernel_with(&self, strategy: PivotStrategy) -> (usize, Vec<Vec<Rational>>) {
        // Sparse row representation: col -> value, kept sorted.
        let mut work: Vec<BTreeMap<usize, Rational>> = vec![BTreeMap::new(); self.rows];
        for (r, c, v) in self.iter() {
            work[r].insert(c, v.clone());
        }
        // pivot_in_col[c] = row index (into `reduced`) holding the pivot of column c.
        let mut pivots: Vec<(usize, BTreeMap<usize, Rational>)> = Vec::new(); // (pivot col, normalized row)
        let mut pending: Vec<BTreeMap<usize, Rational>> = work.drain(..).collect();

        loop {
            // Reduce every pending row by the pivots found so far.
            for row in pending.iter_mut() {
                reduce_row(row, &pivots);
            }
            pending.retain(|row| !row.is_empty());
            if pending.is_empty() {
                break;
            }
            // Choose the next pivot row.
            let idx = match strategy {
                PivotStrategy::FirstNonzero => 0,
                PivotStrategy::Sparsest => pending
                    .iter()
                    .enumerate()
                    .min_by_key(|(i, row)| (row.len(), *i))
                    .map(|(i, _)| i)
                    .unwrap(),
            };
            let mut row = pending.swap_remove(idx);
            let (&pc, _) = row.iter().next().unwrap();
            let inv = {
                let lead = row.get(&pc).unwrap().clone();
                lead.recip()
            };
            for v in row.values_mut() {
                *v *= &inv;
            }
            // Back-substitute the new pivot into existing pivot rows to reach
            // reduced echelon form.
            for (_, prow) in pivots.iter_mut() {
                if let Some(factor) = prow.get(&pc).cloned() {
                    subtract_scaled(prow, &row, &factor);
                }
            }
            pivots.push((pc, row));
        }

        pivots.sort_by_key(|&(c, _)| c);
        let rank = pivots.len();
        let pivot_cols: Vec<usize> = pivots.iter().map(|&(c, _)| c).collect();
        let is_pivot = {
            let mut v = vec![false; self.cols];
            for &c in &pivot_cols {
                v[c] = true;
            }
            v
        };
        // Kernel basis: one vector per free column.
        let mut kernel = Vec::new();
        for free in 0..self.cols {
            if is_pivot[free] {
                continue;
            }
            let mut v = vec![Rational::zero(); self.cols];
            v[free] = rat(1);
            for (pc, prow) in &pivots {
                if let Some(coef) = prow.get(&free) {
                    v[*pc] = -coef.clone();
                }
            }
            kernel.push(v);
        }
        (rank, kernel)
    }

    pub fn rank(&self) -> usize {
        self.rank_and_kernel().0
    }
}

fn reduce_row(row: &mut BTreeMap<usize, Rational>, pivots: &[(usize, BTreeMap<usize, Rational>)]) {
    for (pc, prow) in pivots {
        if let Some(factor) = row.get(pc).cloned() {
            subtract_scaled(row, prow, &factor);
        }
    }
}

/// `row -= factor * other`, dropping exact zeros.
fn subtract_scaled(
    row: &mut BTreeMap<usize, Rational>,
    other: &BTreeMap<usize, Rational>,
    factor: &Rational,
) {
    if factor.is_zero() {
        return;
    }
    for (c, v) in other {
        let cur = row.remove(c).unwrap_or_else(Rational::zero) - factor * v;
        if !cur.is_zero() {
            row.insert(*c, cur);
        }
    }
}

/// Homology dimension at the middle of `.. --d_in--> C --d_out--> ..`:
/// `dim ker(d_out) - rank(d_in)`.
///
/// Rejects dimension mismatches and pairs that are not a complex; in the
/// latter case the error names an offending column of `d_in`.
pub fn betti_at(d_in: &ExactMatrix, d_out: &ExactMatrix) -> Result<usize, LinalgError> {
    if d_in.rows() != d_out.cols() {
        return Err(LinalgError::DimensionMismatch {
            context: "betti_at middle dimension",
            expected: d_out.cols(),
            got: d_in.rows(),
        });
    }
    let composite = d_out.mul(d_in)?;
    if let Some((_, c, _)) = composite.iter().next() {
        return Err(LinalgError::NotAComplex { column: c });
    }
    let (rank_out, kernel_out) = d_out.rank_and_kernel();
    debug_assert_eq!(rank_out + kernel_out.len(), d_out.cols());
    let rank_in = d_in.rank();
    Ok(kernel_out.len() - rank_in)
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}x{} matrix:", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_rationals() {
        assert_eq!(parse_rational("3").unwrap(), rat(3));
        assert_eq!(parse_rational("-4/6").unwrap(), frac(-2, 3));
        assert_eq!(parse_rational("2/-4").unwrap(), frac(-1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("0.5").is_err());
    }

    #[test]
    fn rank_identity() {
        let m = ExactMatrix::identity(2);
        let (rank, kernel) = m.rank_and_kernel();
        assert_eq!(rank, 2);
        assert!(kernel.is_empty());
    }

    #[test]
    fn rank_zero_matrix() {
        let m = ExactMatrix::zero(2, 2);
        let (rank, kernel) = m.rank_and_kernel();
        assert_eq!(rank, 0);
        assert_eq!(kernel.len(), 2);
    }

    #[test]
    fn rank_one_with_kernel() {
        let m = ExactMatrix::from_int_rows(&[&[1, 2], &[2, 4]]);
        let (rank, kernel) = m.rank_and_kernel();
        assert_eq!(rank, 1);
        assert_eq!(kernel.len(), 1);
        // Kernel spanned by (-2, 1).
        let v = &kernel[0];
        assert!((&v[0] * rat(1) + &v[1] * rat(2)).is_zero());
        assert!(m.apply(v).unwrap().iter().all(|x| x.is_zero()));
        let expected = [rat(-2), rat(1)];
        let scale = &v[1] / &expected[1];
        assert_eq!(v[0], &expected[0] * &scale);
    }

    #[test]
    fn betti_trivial_cases() {
        // 0 -> Q -> 0
        let d_in = ExactMatrix::zero(1, 0);
        let d_out = ExactMatrix::zero(0, 1);
        assert_eq!(betti_at(&d_in, &d_out).unwrap(), 1);
        // exact at the middle: d_out is the identity on Q
        let d_out = ExactMatrix::identity(1);
        assert_eq!(betti_at(&d_in, &d_out).unwrap(), 0);
    }

    #[test]
    fn betti_middle_of_three_term_complex() {
        // Q --(1,1)^T--> Q^2 --(1,-1)--> Q: kernel and image both spanned by
        // (1,1), so the middle homology vanishes.
        let mut d_in = ExactMatrix::zero(2, 1);
        d_in.set(0, 0, rat(1));
        d_in.set(1, 0, rat(1));
        let mut d_out = ExactMatrix::zero(1, 2);
        d_out.set(0, 0, rat(1));
        d_out.set(0, 1, rat(-1));
        assert_eq!(betti_at(&d_in, &d_out).unwrap(), 0);
        // With a zero incoming differential the middle homology is ker(d_out).
        assert_eq!(betti_at(&ExactMatrix::zero(2, 0), &d_out).unwrap(), 1);
    }

    #[test]
    fn betti_rejects_non_complex() {
        let d_in = ExactMatrix::identity(1);
        let d_out = ExactMatrix::identity(1);
        match betti_at(&d_in, &d_out) {
            Err(LinalgError::NotAComplex { column: 0 }) => {}
            other => panic!("expected NotAComplex, got {other:?}"),
        }
    }

    #[test]
    fn betti_rejects_dimension_mismatch() {
        let d_in = ExactMatrix::zero(2, 1);
        let d_out = ExactMatrix::zero(1, 3);
        assert!(matches!(
            betti_at(&d_in, &d_out),
            Err(LinalgError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn kernel_vectors_annihilate() {
        let m = ExactMatrix::from_int_rows(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]]);
        let (rank, kernel) = m.rank_and_kernel();
        assert_eq!(rank, 2);
        assert_eq!(kernel.len(), 1);
        for v in &kernel {
            assert!(m.apply(v).unwrap().iter().all(|x| x.is_zero()));
        }
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn arb_matrix() -> impl Strategy<Value = ExactMatrix> {
            (1usize..6, 1usize..6).prop_flat_map(|(r, c)| {
                proptest::collection::vec(-5i64..=5, r * c).prop_map(move |vals| {
                    let mut m = ExactMatrix::zero(r, c);
                    for (k, v) in vals.into_iter().enumerate() {
                        m.set(k / c, k % c, rat(v));
                    }
                    m
                })
            })
        }

        proptest! {
            #[test]
            fn rank_equals_transpose_rank(m in arb_matrix()) {
                prop_assert_eq!(m.rank(), m.transpose().rank());
            }

            #[test]
            fn pivot_strategy_independent(m in arb_matrix()) {
                let (r1, k1) = m.rank_and_kernel_with(PivotStrategy::FirstNonzero);
                let (r2, k2) = m.rank_and_kernel_with(PivotStrategy::Sparsest);
                prop_assert_eq!(r1, r2);
                prop_assert_eq!(k1.len(), k2.len());
                // Both kernels annihilate and have full rank, hence span the
                // same space (the kernel).
                for v in k1.iter().chain(k2.iter()) {
                    prop_assert!(m.apply(v).unwrap().iter().all(|x| x.is_zero()));
                }
                let as_matrix = |k: &Vec<Vec<Rational>>| {
                    let mut km = ExactMatrix::zero(m.cols(), k.len());
                    for (j, v) in k.iter().enumerate() {
                        for (i, x) in v.iter().enumerate() {
                            km.set(i, j, x.clone());
                        }
                    }
                    km
                };
                prop_assert_eq!(as_matrix(&k1).rank(), k1.len());
                prop_assert_eq!(as_matrix(&k2).rank(), k2.len());
            }

            #[test]
            fn rank_plus_nullity(m in arb_matrix()) {
                let (rank, kernel) = m.rank_and_kernel();
                prop_assert_eq!(rank + kernel.len(), m.cols());
            }
        }
    }
}
