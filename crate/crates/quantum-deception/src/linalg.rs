//! Dense complex linear algebra for small operators: Kronecker products,
//! partial traces, cyclic-Jacobi Hermitian eigendecomposition, norms, and
//! positive-semidefinite projection.
//!
//! Matrices are stored row-major. Operators on a bipartite space `H_A (x) H_B`
//! use the composite index `a * n_b + b`; the first factor varies slowest.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};

/// Absolute floor applied to scale-relative tolerances.
pub const TOL_FLOOR: f64 = 1e-12;

/// `rel * scale` floored at [`TOL_FLOOR`], so tolerances track the payoff
/// scale without collapsing on zero matrices.
pub fn scaled_tol(rel: f64, scale: f64) -> f64 {
    (rel * scale).max(TOL_FLOOR)
}

pub(crate) const C_ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub(crate) const C_ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Dense row-major complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    /// Builds a matrix from row-major entries.
    pub fn new(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                context: "matrix construction",
                expected: rows * cols,
                found: data.len(),
            });
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![C_ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = C_ONE;
        }
        m
    }

    /// Builds a matrix with real entries.
    pub fn from_real(rows: usize, cols: usize, entries: &[f64]) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                context: "matrix construction",
                expected: rows * cols,
                found: entries.len(),
            });
        }
        Ok(Self {
            rows,
            cols,
            data: entries.iter().map(|&r| Complex64::new(r, 0.0)).collect(),
        })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn diagonal(entries: &[Complex64]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, &v) in entries.iter().enumerate() {
            m.data[i * n + i] = v;
        }
        m
    }

    pub fn diagonal_real(entries: &[f64]) -> Self {
        let vals: Vec<Complex64> = entries.iter().map(|&r| Complex64::new(r, 0.0)).collect();
        Self::diagonal(&vals)
    }

    /// Gaussian matrix with independent standard-normal real and imaginary
    /// parts in every entry.
    pub fn random_gaussian(rows: usize, cols: usize, rng: &mut impl Rng) -> Self {
        Self::from_fn(rows, cols, |_, _| {
            Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        debug_assert!(row < self.rows && col < self.cols);
        self.data[row * self.cols + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: Complex64) {
        debug_assert!(row < self.rows && col < self.cols);
        self.data[row * self.cols + col] = value;
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn trace(&self) -> Complex64 {
        assert!(self.is_square(), "trace requires a square matrix");
        (0..self.rows).map(|i| self.data[i * self.cols + i]).sum()
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).conj())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "dimension mismatch in add");
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "dimension mismatch in sub");
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * factor).collect(),
        }
    }

    pub fn scale_re(&self, factor: f64) -> Self {
        self.scale(Complex64::new(factor, 0.0))
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch in matmul");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let aik = self.data[i * self.cols + k];
                if aik == C_ZERO {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i * other.cols + j] += aik * other.data[k * other.cols + j];
                }
            }
        }
        out
    }

    pub fn matvec(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in matvec");
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| self.data[i * self.cols + j] * v[j])
                    .sum()
            })
            .collect()
    }

    /// Kronecker product. `(A kron B)[(i*rb+k), (j*cb+l)] = A[i,j] * B[k,l]`.
    pub fn kron(&self, other: &Self) -> Self {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut data = vec![C_ZERO; rows * cols];
        for i in 0..self.rows {
            for j in 0..self.cols {
                let aij = self.data[i * self.cols + j];
                if aij == C_ZERO {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let r = i * other.rows + k;
                        let c = j * other.cols + l;
                        data[r * cols + c] = aij * other.data[k * other.cols + l];
                    }
                }
            }
        }
        Self { rows, cols, data }
    }

    /// Traces out the first tensor factor of an `n_a * n_b` square matrix,
    /// returning the `n_b x n_b` matrix with entries
    /// `sum_i M[(i,k),(i,l)]`.
    pub fn partial_trace_a(&self, n_a: usize, n_b: usize) -> Result<Self> {
        self.check_bipartite(n_a, n_b)?;
        let mut out = Self::zeros(n_b, n_b);
        for k in 0..n_b {
            for l in 0..n_b {
                let mut s = C_ZERO;
                for i in 0..n_a {
                    s += self.get(i * n_b + k, i * n_b + l);
                }
                out.data[k * n_b + l] = s;
            }
        }
        Ok(out)
    }

    /// Traces out the second tensor factor, returning the `n_a x n_a` matrix
    /// with entries `sum_k M[(i,k),(j,k)]`.
    pub fn partial_trace_b(&self, n_a: usize, n_b: usize) -> Result<Self> {
        self.check_bipartite(n_a, n_b)?;
        let mut out = Self::zeros(n_a, n_a);
        for i in 0..n_a {
            for j in 0..n_a {
                let mut s = C_ZERO;
                for k in 0..n_b {
                    s += self.get(i * n_b + k, j * n_b + k);
                }
                out.data[i * n_a + j] = s;
            }
        }
        Ok(out)
    }

    fn check_bipartite(&self, n_a: usize, n_b: usize) -> Result<()> {
        if !self.is_square() {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        if self.rows != n_a * n_b {
            return Err(Error::DimensionMismatch {
                context: "partial trace",
                expected: n_a * n_b,
                found: self.rows,
            });
        }
        Ok(())
    }

    /// Frobenius norm `sqrt(tr(A^dag A))`.
    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Matrix norm induced by the vector 1-norm: the maximum absolute column
    /// sum (entry moduli).
    pub fn induced_one_norm(&self) -> f64 {
        let mut best = 0.0f64;
        for j in 0..self.cols {
            let mut s = 0.0;
            for i in 0..self.rows {
                s += self.data[i * self.cols + j].norm();
            }
            best = best.max(s);
        }
        best
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|c| c.re.is_finite() && c.im.is_finite())
    }

    /// Largest deviation from conjugate symmetry, `max |M[i,j] - conj(M[j,i])|`.
    pub fn hermiticity_residual(&self) -> f64 {
        assert!(self.is_square());
        let n = self.rows;
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in i..n {
                let d = (self.get(i, j) - self.get(j, i).conj()).norm();
                worst = worst.max(d);
            }
        }
        worst
    }
}

/// Hermitian operator with conjugate symmetry enforced by construction: the
/// constructor stores `(M + M^dag)/2`, so `entry(i,j) == conj(entry(j,i))`
/// holds exactly and the diagonal is real.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianOperator {
    dim: usize,
    matrix: ComplexMatrix,
}

impl HermitianOperator {
    /// Symmetrizing constructor. Accumulated floating-point asymmetry in `m`
    /// is folded away rather than rejected.
    pub fn new(m: ComplexMatrix) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::NotSquare { rows: m.rows, cols: m.cols });
        }
        if !m.is_finite() {
            return Err(Error::NonFinite);
        }
        let n = m.rows;
        let mut data = m.data;
        for i in 0..n {
            let d = data[i * n + i];
            data[i * n + i] = Complex64::new(d.re, 0.0);
            for j in (i + 1)..n {
                let h = (data[i * n + j] + data[j * n + i].conj()) * 0.5;
                data[i * n + j] = h;
                data[j * n + i] = h.conj();
            }
        }
        Ok(Self {
            dim: n,
            matrix: ComplexMatrix { rows: n, cols: n, data },
        })
    }

    /// Wraps a matrix already known to be exactly conjugate-symmetric
    /// (entrywise sums/scalings of Hermitian operators preserve that).
    pub(crate) fn from_symmetric_unchecked(m: ComplexMatrix) -> Self {
        debug_assert!(m.is_square());
        debug_assert!(m.hermiticity_residual() == 0.0);
        Self { dim: m.rows, matrix: m }
    }

    pub fn zeros(dim: usize) -> Self {
        Self::from_symmetric_unchecked(ComplexMatrix::zeros(dim, dim))
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_symmetric_unchecked(ComplexMatrix::identity(dim))
    }

    pub fn diagonal_real(entries: &[f64]) -> Self {
        Self::from_symmetric_unchecked(ComplexMatrix::diagonal_real(entries))
    }

    /// Random Hermitian draw `(G + G^dag)/2` with Gaussian `G`.
    pub fn random_gaussian(dim: usize, rng: &mut impl Rng) -> Self {
        let g = ComplexMatrix::random_gaussian(dim, dim, rng);
        Self::new(g).expect("gaussian draw is square and finite")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        self.matrix.get(i, j)
    }

    pub fn as_matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::from_symmetric_unchecked(self.matrix.add(&other.matrix))
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::from_symmetric_unchecked(self.matrix.sub(&other.matrix))
    }

    /// Scaling by a real factor (complex factors would break hermiticity).
    pub fn scale(&self, factor: f64) -> Self {
        Self::from_symmetric_unchecked(self.matrix.scale_re(factor))
    }

    /// `self + c * I`.
    pub fn shift(&self, c: f64) -> Self {
        self.add(&Self::identity(self.dim).scale(c))
    }

    pub fn trace_re(&self) -> f64 {
        self.matrix.trace().re
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.matrix.frobenius_norm()
    }

    pub fn induced_one_norm(&self) -> f64 {
        self.matrix.induced_one_norm()
    }

    pub fn partial_trace_a(&self, n_a: usize, n_b: usize) -> Result<Self> {
        let m = self.matrix.partial_trace_a(n_a, n_b)?;
        Ok(Self::from_symmetric_unchecked(m))
    }

    pub fn partial_trace_b(&self, n_a: usize, n_b: usize) -> Result<Self> {
        let m = self.matrix.partial_trace_b(n_a, n_b)?;
        Ok(Self::from_symmetric_unchecked(m))
    }

    /// Full eigendecomposition by cyclic Jacobi rotations.
    ///
    /// Each rotation annihilates one off-diagonal pair with a complex plane
    /// rotation; sweeps repeat until the off-diagonal mass is negligible
    /// relative to the Frobenius norm. Unconditionally convergent on
    /// Hermitian input and plenty fast at the dimensions used here.
    /// Eigenvalues are returned ascending with matching eigenvector columns;
    /// exact ties keep the deterministic Jacobi ordering.
    pub fn eig(&self) -> Result<EigenDecomposition> {
        const MAX_SWEEPS: usize = 64;
        let n = self.dim;
        if n == 0 {
            return Ok(EigenDecomposition {
                eigenvalues: Vec::new(),
                eigenvectors: ComplexMatrix::zeros(0, 0),
            });
        }
        let scale = self.matrix.frobenius_norm();
        let mut a = self.matrix.data.clone();
        let mut v = ComplexMatrix::identity(n).data;
        if scale > 0.0 && n > 1 {
            let stop = 1e-14 * scale;
            let skip = stop / (10.0 * (n * n) as f64);
            let mut converged = false;
            for _ in 0..MAX_SWEEPS {
                let mut off = 0.0;
                for p in 0..n {
                    for q in (p + 1)..n {
                        off += a[p * n + q].norm_sqr();
                    }
                }
                if off.sqrt() <= stop {
                    converged = true;
                    break;
                }
                for p in 0..n {
                    for q in (p + 1)..n {
                        let apq = a[p * n + q];
                        let abs = apq.norm();
                        if abs <= skip {
                            continue;
                        }
                        let app = a[p * n + p].re;
                        let aqq = a[q * n + q].re;
                        let phase = apq / abs;
                        let tau = (aqq - app) / (2.0 * abs);
                        let t = if tau >= 0.0 {
                            1.0 / (tau + (1.0 + tau * tau).sqrt())
                        } else {
                            -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                        };
                        let c = 1.0 / (1.0 + t * t).sqrt();
                        let s = t * c;
                        let u = phase * s;
                        // A <- U^dag A, rows p and q
                        for k in 0..n {
                            let apk = a[p * n + k];
                            let aqk = a[q * n + k];
                            a[p * n + k] = apk * c - u * aqk;
                            a[q * n + k] = u.conj() * apk + aqk * c;
                        }
                        // A <- A U, columns p and q
                        for k in 0..n {
                            let akp = a[k * n + p];
                            let akq = a[k * n + q];
                            a[k * n + p] = akp * c - u.conj() * akq;
                            a[k * n + q] = u * akp + akq * c;
                        }
                        a[p * n + q] = C_ZERO;
                        a[q * n + p] = C_ZERO;
                        a[p * n + p] = Complex64::new(a[p * n + p].re, 0.0);
                        a[q * n + q] = Complex64::new(a[q * n + q].re, 0.0);
                        // V <- V U
                        for k in 0..n {
                            let vkp = v[k * n + p];
                            let vkq = v[k * n + q];
                            v[k * n + p] = vkp * c - u.conj() * vkq;
                            v[k * n + q] = u * vkp + vkq * c;
                        }
                    }
                }
            }
            if !converged {
                let mut off = 0.0;
                for p in 0..n {
                    for q in (p + 1)..n {
                        off += a[p * n + q].norm_sqr();
                    }
                }
                if off.sqrt() > stop {
                    return Err(Error::EigConvergence { sweeps: MAX_SWEEPS });
                }
            }
        }
        let mut order: Vec<usize> = (0..n).collect();
        let diag: Vec<f64> = (0..n).map(|i| a[i * n + i].re).collect();
        order.sort_by(|&x, &y| diag[x].partial_cmp(&diag[y]).expect("finite eigenvalues"));
        let eigenvalues: Vec<f64> = order.iter().map(|&i| diag[i]).collect();
        let eigenvectors = ComplexMatrix::from_fn(n, n, |i, j| v[i * n + order[j]]);
        Ok(EigenDecomposition { eigenvalues, eigenvectors })
    }

    pub fn lambda_min(&self) -> Result<f64> {
        Ok(*self
            .eig()?
            .eigenvalues
            .first()
            .expect("nonempty spectrum"))
    }

    pub fn lambda_max(&self) -> Result<f64> {
        Ok(*self.eig()?.eigenvalues.last().expect("nonempty spectrum"))
    }

    /// Clamps negative eigenvalues to zero and reconstructs. Idempotent.
    pub fn project_psd(&self) -> Result<Self> {
        let dec = self.eig()?;
        if dec.eigenvalues.iter().all(|&l| l >= 0.0) {
            return Ok(self.clone());
        }
        let clamped: Vec<f64> = dec.eigenvalues.iter().map(|&l| l.max(0.0)).collect();
        Ok(dec.reconstruct(&clamped))
    }

    /// `exp(self) / tr(exp(self))`, computed through the eigendecomposition
    /// with the spectrum shifted by its maximum for overflow safety.
    pub fn normalized_exp(&self) -> Result<Self> {
        let dec = self.eig()?;
        let top = dec.eigenvalues.last().copied().unwrap_or(0.0);
        let weights: Vec<f64> = dec.eigenvalues.iter().map(|&l| (l - top).exp()).collect();
        let total: f64 = weights.iter().sum();
        let scaled: Vec<f64> = weights.iter().map(|w| w / total).collect();
        Ok(dec.reconstruct(&scaled))
    }
}

/// Result of [`HermitianOperator::eig`]: real eigenvalues in ascending order
/// and the unitary matrix whose columns are the matching eigenvectors.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: ComplexMatrix,
}

impl EigenDecomposition {
    /// Eigenvector for the k-th ascending eigenvalue.
    pub fn eigenvector(&self, k: usize) -> Vec<Complex64> {
        let n = self.eigenvectors.rows();
        (0..n).map(|i| self.eigenvectors.get(i, k)).collect()
    }

    /// `V diag(values) V^dag` for replacement eigenvalues.
    pub fn reconstruct(&self, values: &[f64]) -> HermitianOperator {
        let n = self.eigenvectors.rows();
        assert_eq!(values.len(), n);
        let m = ComplexMatrix::from_fn(n, n, |i, j| {
            (0..n)
                .map(|k| self.eigenvectors.get(i, k) * self.eigenvectors.get(j, k).conj() * values[k])
                .sum()
        });
        HermitianOperator::new(m).expect("reconstruction is square and finite")
    }

    /// Number of eigenvalues within `tol` of the smallest.
    pub fn min_multiplicity(&self, tol: f64) -> usize {
        let lo = self.eigenvalues[0];
        self.eigenvalues.iter().filter(|&&l| l - lo <= tol).count()
    }

    /// Number of eigenvalues within `tol` of the largest.
    pub fn max_multiplicity(&self, tol: f64) -> usize {
        let hi = *self.eigenvalues.last().expect("nonempty spectrum");
        self.eigenvalues.iter().filter(|&&l| hi - l <= tol).count()
    }
}
