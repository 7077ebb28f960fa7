//! Sparse complex matrices and the operator norm.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::LabError;

pub type C64 = Complex64;

const ZERO: C64 = C64::new(0.0, 0.0);

/// Compressed-row complex matrix. Exact zeros are never stored.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    indptr: Vec<usize>,
    indices: Vec<usize>,
    values: Vec<C64>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, indptr: vec![0; rows + 1], indices: Vec::new(), values: Vec::new() }
    }

    pub fn identity(n: usize) -> Self {
        Self::diagonal(&vec![C64::new(1.0, 0.0); n])
    }

    pub fn diagonal(d: &[C64]) -> Self {
        Self::from_triplets(d.len(), d.len(), d.iter().enumerate().map(|(i, &v)| (i, i, v)))
    }

    /// Duplicates are summed; zeros dropped.
    pub fn from_triplets<I>(rows: usize, cols: usize, triplets: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize, C64)>,
    {
        let mut t: Vec<(usize, usize, C64)> = triplets.into_iter().collect();
        t.sort_by_key(|a| (a.0, a.1));
        let mut indptr = vec![0; rows + 1];
        let mut indices = Vec::with_capacity(t.len());
        let mut values: Vec<C64> = Vec::with_capacity(t.len());
        let mut last: Option<(usize, usize)> = None;
        let mut row_of = Vec::with_capacity(t.len());
        for (r, c, v) in t {
            assert!(r < rows && c < cols, "triplet ({r}, {c}) outside {rows}x{cols}");
            if last == Some((r, c)) {
                *values.last_mut().expect("nonempty") += v;
            } else {
                indices.push(c);
                values.push(v);
                row_of.push(r);
                last = Some((r, c));
            }
        }
        let mut keep_idx = Vec::with_capacity(indices.len());
        let mut keep_val = Vec::with_capacity(values.len());
        for ((c, v), r) in indices.into_iter().zip(values).zip(row_of) {
            if v != ZERO {
                keep_idx.push(c);
                keep_val.push(v);
                indptr[r + 1] += 1;
            }
        }
        for r in 0..rows {
            indptr[r + 1] += indptr[r];
        }
        Self { rows, cols, indptr, indices: keep_idx, values: keep_val }
    }

    pub fn from_dense(m: &DMatrix<C64>) -> Self {
        Self::from_triplets(
            m.nrows(),
            m.ncols(),
            (0..m.nrows()).flat_map(|r| (0..m.ncols()).map(move |c| (r, c, m[(r, c)]))),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    /// Nonzero entries of row `r` as `(column, value)`.
    pub fn row(&self, r: usize) -> impl Iterator<Item = (usize, C64)> + '_ {
        let (s, e) = (self.indptr[r], self.indptr[r + 1]);
        self.indices[s..e].iter().copied().zip(self.values[s..e].iter().copied())
    }

    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, C64)> + '_ {
        (0..self.rows).flat_map(move |r| self.row(r).map(move |(c, v)| (r, c, v)))
    }

    pub fn get(&self, r: usize, c: usize) -> C64 {
        self.row(r).find(|&(cc, _)| cc == c).map_or(ZERO, |(_, v)| v)
    }

    pub fn is_finite(&self) -> bool {
        self.values.iter().all(|v| v.re.is_finite() && v.im.is_finite())
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.values.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn scale(&self, c: C64) -> Self {
        if c == ZERO {
            return Self::zeros(self.rows, self.cols);
        }
        let mut out = self.clone();
        out.values.iter_mut().for_each(|v| *v *= c);
        out
    }

    pub fn adjoint(&self) -> Self {
        Self::from_triplets(self.cols, self.rows, self.triplets().map(|(r, c, v)| (c, r, v.conj())))
    }

    fn combine(&self, rhs: &Self, sign: f64) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch");
        Self::from_triplets(
            self.rows,
            self.cols,
            self.triplets().chain(rhs.triplets().map(|(r, c, v)| (r, c, v * sign))),
        )
    }

    pub fn add(&self, rhs: &Self) -> Self {
        self.combine(rhs, 1.0)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.combine(rhs, -1.0)
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "shape mismatch");
        let mut acc = vec![ZERO; rhs.cols];
        let mut mark = vec![usize::MAX; rhs.cols];
        let mut indptr = vec![0; self.rows + 1];
        let mut indices = Vec::new();
        let mut values = Vec::new();
        for r in 0..self.rows {
            let start = indices.len();
            for (k, a) in self.row(r) {
                for (c, b) in rhs.row(k) {
                    if mark[c] != r {
                        mark[c] = r;
                        acc[c] = ZERO;
                        indices.push(c);
                    }
                    acc[c] += a * b;
                }
            }
            indices[start..].sort_unstable();
            let mut w = start;
            for i in start..indices.len() {
                let c = indices[i];
                if acc[c] != ZERO {
                    indices[w] = c;
                    values.push(acc[c]);
                    w += 1;
                }
            }
            indices.truncate(w);
            indptr[r + 1] = indices.len();
        }
        Self { rows: self.rows, cols: rhs.cols, indptr, indices, values }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        assert_eq!(self.rows, self.cols, "pow needs a square matrix");
        let mut result = Self::identity(self.rows);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    pub fn matvec(&self, x: &[C64]) -> Vec<C64> {
        (0..self.rows).map(|r| self.row(r).map(|(c, v)| v * x[c]).sum()).collect()
    }

    pub fn adjoint_matvec(&self, x: &[C64]) -> Vec<C64> {
        let mut out = vec![ZERO; self.cols];
        for (r, xr) in x.iter().enumerate().take(self.rows) {
            for (c, v) in self.row(r) {
                out[c] += v.conj() * xr;
            }
        }
        out
    }

    /// `self · D` for a dense right factor.
    pub fn mul_dense(&self, d: &DMatrix<C64>) -> DMatrix<C64> {
        assert_eq!(self.cols, d.nrows(), "shape mismatch");
        let mut out = DMatrix::zeros(self.rows, d.ncols());
        for r in 0..self.rows {
            for (k, v) in self.row(r) {
                for j in 0..d.ncols() {
                    out[(r, j)] += v * d[(k, j)];
                }
            }
        }
        out
    }

    pub fn to_dense(&self) -> DMatrix<C64> {
        let mut m = DMatrix::zeros(self.rows, self.cols);
        for (r, c, v) in self.triplets() {
            m[(r, c)] = v;
        }
        m
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut col_pos = vec![usize::MAX; self.cols];
        for (j, &c) in cols.iter().enumerate() {
            col_pos[c] = j;
        }
        Self::from_triplets(
            rows.len(),
            cols.len(),
            rows.iter().enumerate().flat_map(|(i, &r)| {
                let col_pos = &col_pos;
                self.row(r).filter_map(move |(c, v)| (col_pos[c] != usize::MAX).then_some((i, col_pos[c], v)))
            }),
        )
    }

    /// Diagonal entries (zero where unstored).
    pub fn diagonal_entries(&self) -> Vec<C64> {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).collect()
    }

    pub fn is_diagonal(&self) -> bool {
        self.triplets().all(|(r, c, _)| r == c)
    }

    /// At most one nonzero per row and per column; the norm is then the largest modulus.
    fn is_monomial(&self) -> bool {
        let mut seen = vec![false; self.cols];
        for r in 0..self.rows {
            if self.indptr[r + 1] - self.indptr[r] > 1 {
                return false;
            }
            for (c, _) in self.row(r) {
                if std::mem::replace(&mut seen[c], true) {
                    return false;
                }
            }
        }
        true
    }
}

/// Matrices up to this size go straight to a dense singular value decomposition.
pub const DENSE_LIMIT: usize = 300;
const LANCZOS_SEED: u64 = 0x0005_eed0_1a2c_2052;
const MAX_LANCZOS_STEPS: usize = 400;
/// Ritz residual (relative to the Ritz value) at which Lanczos stops; the singular value
/// is then accurate to about half of this, relatively.
const RESIDUAL_TOLERANCE: f64 = 1e-12;

/// Largest singular value.
///
/// Exact for matrices with at most one nonzero per row and column; dense SVD up to
/// [`DENSE_LIMIT`]; otherwise Lanczos on `M*M` with full reorthogonalisation from a
/// fixed seed, falling back to dense SVD if it fails to converge.
pub fn operator_norm(m: &SparseMatrix) -> Result<f64, LabError> {
    if !m.is_finite() {
        return Err(LabError::NonFinite);
    }
    if m.nnz() == 0 {
        return Ok(0.0);
    }
    if m.is_monomial() {
        return Ok(m.max_abs());
    }
    if m.rows.min(m.cols) <= DENSE_LIMIT {
        return Ok(dense_norm(&m.to_dense()));
    }
    match lanczos_norm(m) {
        Some(v) => Ok(v),
        None => Ok(dense_norm(&m.to_dense())),
    }
}

/// Largest singular value of a dense matrix.
pub fn dense_norm(m: &DMatrix<C64>) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    m.clone().singular_values().iter().copied().fold(0.0, f64::max)
}

fn dot(a: &[C64], b: &[C64]) -> C64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

fn norm(a: &[C64]) -> f64 {
    a.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

fn lanczos_norm(m: &SparseMatrix) -> Option<f64> {
    let n = m.cols;
    let mut rng = ChaCha8Rng::seed_from_u64(LANCZOS_SEED);
    let mut v: Vec<C64> = (0..n).map(|_| C64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5)).collect();
    let s = norm(&v);
    v.iter_mut().for_each(|x| *x /= s);
    let mut basis: Vec<Vec<C64>> = vec![v];
    let mut alphas: Vec<f64> = Vec::new();
    let mut betas: Vec<f64> = Vec::new();
    let steps = n.min(MAX_LANCZOS_STEPS);
    for j in 0..steps {
        let mut w = m.adjoint_matvec(&m.matvec(&basis[j]));
        let a = dot(&basis[j], &w).re;
        alphas.push(a);
        for _ in 0..2 {
            for b in &basis {
                let c = dot(b, &w);
                w.iter_mut().zip(b).for_each(|(x, y)| *x -= c * y);
            }
        }
        let beta = norm(&w);
        let k = alphas.len();
        let last = j + 1 == steps;
        if !k.is_multiple_of(8) && beta > 1e-14 * a.abs() && !last {
            betas.push(beta);
            w.iter_mut().for_each(|x| *x /= beta);
            basis.push(w);
            continue;
        }
        let mut t = DMatrix::<f64>::zeros(k, k);
        for i in 0..k {
            t[(i, i)] = alphas[i];
            if i + 1 < k {
                t[(i, i + 1)] = betas[i];
                t[(i + 1, i)] = betas[i];
            }
        }
        let eig = SymmetricEigen::new(t);
        let (top, idx) = eig
            .eigenvalues
            .iter()
            .enumerate()
            .map(|(i, &x)| (x, i))
            .fold((f64::NEG_INFINITY, 0), |acc, x| if x.0 > acc.0 { x } else { acc });
        let residual = beta * eig.eigenvectors[(k - 1, idx)].abs();
        if top <= 0.0 {
            return Some(0.0);
        }
        if residual <= RESIDUAL_TOLERANCE * top || beta <= 1e-14 * top || j + 1 == n {
            return Some(top.max(0.0).sqrt());
        }
        betas.push(beta);
        w.iter_mut().for_each(|x| *x /= beta);
        basis.push(w);
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    #[test]
    fn basic_norms() {
        assert_eq!(operator_norm(&SparseMatrix::identity(5)).unwrap(), 1.0);
        assert_eq!(operator_norm(&SparseMatrix::diagonal(&[c(3.0), c(-4.0)])).unwrap(), 4.0);
        assert_eq!(operator_norm(&SparseMatrix::zeros(3, 3)).unwrap(), 0.0);
        let bad = SparseMatrix::diagonal(&[c(f64::NAN)]);
        assert_eq!(operator_norm(&bad), Err(LabError::NonFinite));
    }

    #[test]
    fn lanczos_matches_dense_on_a_large_tridiagonal() {
        let n = 600;
        let m = SparseMatrix::from_triplets(
            n,
            n,
            (0..n).flat_map(|i| {
                let d = if i == 300 { 4.0 } else { 2.0 + (i as f64 * 0.37).sin() };
                let mut v = vec![(i, i, c(d))];
                if i + 1 < n {
                    v.push((i, i + 1, C64::new(0.5, -0.25)));
                }
                v
            }),
        );
        let lanczos = operator_norm(&m).unwrap();
        let dense = dense_norm(&m.to_dense());
        assert!((lanczos - dense).abs() <= 1e-10 * dense, "{lanczos} vs {dense}");
        let adj = operator_norm(&m.adjoint()).unwrap();
        assert!((adj - lanczos).abs() <= 1e-10 * lanczos);
    }

    #[test]
    fn products_and_submatrices() {
        let a = SparseMatrix::from_triplets(2, 2, [(0, 1, c(2.0)), (1, 0, c(3.0))]);
        let b = a.mul(&a);
        assert_eq!(b, SparseMatrix::diagonal(&[c(6.0), c(6.0)]));
        assert_eq!(a.pow(3), a.scale(c(6.0)));
        assert_eq!(a.sub(&a).nnz(), 0);
        assert_eq!(a.submatrix(&[1], &[0]).get(0, 0), c(3.0));
        assert_eq!(a.adjoint().get(0, 1), c(3.0));
        assert_eq!(a.matvec(&[c(1.0), c(1.0)]), vec![c(2.0), c(3.0)]);
    }
}
