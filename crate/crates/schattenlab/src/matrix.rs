//! Dense complex linear algebra: the matrix type, SVD-backed Schatten norms,
//! trace duality, and Hölder conjugation of Schatten indices.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::tol;

/// Dense complex matrix, row-major storage.
///
/// Storage order is an internal contract of this type; vectorization order is
/// column-major and is stated explicitly by every operation that relies on it.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    /// Builds a matrix from row-major data, rejecting empty shapes, a length
    /// mismatch, and non-finite entries.
    pub fn new(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::domain("matrix dimensions must be positive"));
        }
        if data.len() != rows * cols {
            return Err(Error::shape(
                format!("{} entries", rows * cols),
                format!("{}", data.len()),
            ));
        }
        if !data.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
            return Err(Error::domain("non-finite matrix entry"));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    /// Matrix unit E_{ij} (1-based indices would invite mistakes; these are 0-based).
    pub fn unit(rows: usize, cols: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(rows, cols);
        m[(i, j)] = Complex64::new(1.0, 0.0);
        m
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

    pub fn from_real_rows(rows: &[&[f64]]) -> Self {
        let r = rows.len();
        let c = rows[0].len();
        Self::from_fn(r, c, |i, j| Complex64::new(rows[i][j], 0.0))
    }

    pub fn diag_real(values: &[f64]) -> Self {
        let n = values.len();
        Self::from_fn(n, n, |i, j| {
            if i == j {
                Complex64::new(values[i], 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn conj(&self) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z.conj()).collect(),
        }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z * c).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "add: shape mismatch");
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(x, y)| x + y)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matmul: inner dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let lik = self[(i, k)];
                if lik == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += lik * other[(k, j)];
                }
            }
        }
        out
    }

    /// Kronecker product, blocks of `other` scaled by entries of `self`.
    pub fn kron(&self, other: &Self) -> Self {
        let (r1, c1, r2, c2) = (self.rows, self.cols, other.rows, other.cols);
        Self::from_fn(r1 * r2, c1 * c2, |i, j| {
            self[(i / r2, j / c2)] * other[(i % r2, j % c2)]
        })
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Column-major vectorization.
    pub fn vec_col_major(&self) -> Vec<Complex64> {
        let mut v = Vec::with_capacity(self.rows * self.cols);
        for j in 0..self.cols {
            for i in 0..self.rows {
                v.push(self[(i, j)]);
            }
        }
        v
    }

    /// Inverse of `vec_col_major`.
    pub fn unvec_col_major(rows: usize, cols: usize, v: &[Complex64]) -> Self {
        assert_eq!(v.len(), rows * cols, "unvec: length mismatch");
        Self::from_fn(rows, cols, |i, j| v[j * rows + i])
    }

    pub fn to_na(&self) -> DMatrix<Complex64> {
        DMatrix::from_fn(self.rows, self.cols, |i, j| self[(i, j)])
    }

    pub fn from_na(m: &DMatrix<Complex64>) -> Self {
        Self::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)])
    }

    /// Trace of a square matrix.
    pub fn trace(&self) -> Complex64 {
        assert!(self.is_square(), "trace of a non-square matrix");
        (0..self.rows).map(|i| self[(i, i)]).sum()
    }
}

impl std::ops::Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.cols + j]
    }
}

/// Extended Schatten exponent in [1, inf]. The endpoints 1 and infinity are
/// represented exactly so that Hölder conjugation is exact, never a large
/// float standing in for infinity.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub enum SchattenIndex {
    Finite(f64),
    Infinity,
}

impl SchattenIndex {
    pub const ONE: SchattenIndex = SchattenIndex::Finite(1.0);
    pub const TWO: SchattenIndex = SchattenIndex::Finite(2.0);

    pub fn new(p: f64) -> Result<Self> {
        if p.is_nan() || p < 1.0 {
            return Err(Error::domain(format!("Schatten exponent {p} < 1")));
        }
        if p.is_infinite() {
            Ok(SchattenIndex::Infinity)
        } else {
            Ok(SchattenIndex::Finite(p))
        }
    }

    /// Hölder conjugate: 1 <-> inf, 2 <-> 2, p <-> p/(p-1).
    pub fn holder(self) -> Self {
        match self {
            SchattenIndex::Infinity => SchattenIndex::Finite(1.0),
            SchattenIndex::Finite(p) if p == 1.0 => SchattenIndex::Infinity,
            SchattenIndex::Finite(p) => SchattenIndex::Finite(p / (p - 1.0)),
        }
    }

    pub fn is_one(self) -> bool {
        self == SchattenIndex::Finite(1.0)
    }

    pub fn is_two(self) -> bool {
        self == SchattenIndex::Finite(2.0)
    }

    pub fn is_infinity(self) -> bool {
        self == SchattenIndex::Infinity
    }

    /// Numeric value, `f64::INFINITY` at the upper endpoint.
    pub fn value(self) -> f64 {
        match self {
            SchattenIndex::Finite(p) => p,
            SchattenIndex::Infinity => f64::INFINITY,
        }
    }
}

impl std::fmt::Display for SchattenIndex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SchattenIndex::Finite(p) => write!(f, "{p}"),
            SchattenIndex::Infinity => write!(f, "inf"),
        }
    }
}

/// Full SVD `M = U diag(s) Vh` with `s` nonincreasing.
pub struct Svd {
    pub u: ComplexMatrix,
    pub s: Vec<f64>,
    pub vh: ComplexMatrix,
}

/// One-sided complex Jacobi SVD of a matrix with rows >= cols. Returns the
/// transformed column block (U scaled by the singular values), the values,
/// and the accumulated right factor V, so that M = U diag(s) V^H.
///
/// Chosen over a bidiagonalization backend because one-sided Jacobi keeps
/// high relative accuracy on badly column-scaled inputs, which the norming
/// steps of the dual-ascent optimizer produce routinely.
fn jacobi_tall(m: &ComplexMatrix) -> (ComplexMatrix, Vec<f64>, ComplexMatrix) {
    let (rows, cols) = (m.rows, m.cols);
    debug_assert!(rows >= cols);
    // Column-major working copies for cache-friendly column rotations.
    let mut a: Vec<Vec<Complex64>> = (0..cols)
        .map(|j| (0..rows).map(|i| m[(i, j)]).collect())
        .collect();
    let mut v: Vec<Vec<Complex64>> = (0..cols)
        .map(|j| {
            (0..cols)
                .map(|i| {
                    if i == j {
                        Complex64::new(1.0, 0.0)
                    } else {
                        Complex64::new(0.0, 0.0)
                    }
                })
                .collect()
        })
        .collect();
    let eps = 1e-15;
    for _sweep in 0..60 {
        let mut converged = true;
        for i in 0..cols {
            for j in (i + 1)..cols {
                let mut alpha = 0.0;
                let mut beta = 0.0;
                let mut gamma = Complex64::new(0.0, 0.0);
                for r in 0..rows {
                    alpha += a[i][r].norm_sqr();
                    beta += a[j][r].norm_sqr();
                    gamma += a[i][r].conj() * a[j][r];
                }
                let g = gamma.norm();
                if g <= eps * (alpha * beta).sqrt() || alpha == 0.0 || beta == 0.0 {
                    continue;
                }
                converged = false;
                let ph = gamma / g;
                let zeta = (beta - alpha) / (2.0 * g);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                let phc = ph.conj();
                for r in 0..rows {
                    let (ai, aj) = (a[i][r], a[j][r]);
                    a[i][r] = ai * c - aj * phc * s;
                    a[j][r] = ai * s + aj * phc * c;
                }
                for r in 0..cols {
                    let (vi, vj) = (v[i][r], v[j][r]);
                    v[i][r] = vi * c - vj * phc * s;
                    v[j][r] = vi * s + vj * phc * c;
                }
            }
        }
        if converged {
            break;
        }
    }
    let mut order: Vec<usize> = (0..cols).collect();
    let norms: Vec<f64> = a
        .iter()
        .map(|col| col.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt())
        .collect();
    order.sort_by(|&x, &y| norms[y].partial_cmp(&norms[x]).unwrap());
    let s: Vec<f64> = order.iter().map(|&k| norms[k]).collect();
    // Columns whose squared norm sits in the denormal range carry no usable
    // direction information (the orthogonalization threshold degenerates), so
    // their U columns are zeroed rather than normalized into noise.
    let cutoff = s.first().copied().unwrap_or(0.0) * 1e-120;
    let u = ComplexMatrix::from_fn(rows, cols, |r, k| {
        let col = order[k];
        if norms[col] > cutoff && norms[col] > 0.0 {
            a[col][r] / norms[col]
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    let vh = ComplexMatrix::from_fn(cols, cols, |k, r| v[order[k]][r].conj());
    (u, s, vh)
}

/// Computes the full SVD via one-sided Jacobi, verifying the reconstruction
/// residual against the central tolerance.
pub fn svd(m: &ComplexMatrix) -> Svd {
    let (u, s, vh) = if m.rows >= m.cols {
        jacobi_tall(m)
    } else {
        let (u2, s, vh2) = jacobi_tall(&m.adjoint());
        (vh2.adjoint(), s, u2.adjoint())
    };
    if cfg!(debug_assertions) {
        let k = s.len();
        let sig = ComplexMatrix::from_fn(k, k, |i, j| {
            if i == j {
                Complex64::new(s[i], 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        });
        let resid = m.sub(&u.matmul(&sig).matmul(&vh)).frobenius_norm();
        let scale = m.frobenius_norm().max(1e-300);
        debug_assert!(
            resid <= tol::SVD_RECONSTRUCTION_REL * scale,
            "svd reconstruction residual {resid} above {} relative",
            tol::SVD_RECONSTRUCTION_REL
        );
    }
    Svd { u, s, vh }
}

/// All `min(rows, cols)` singular values, sorted nonincreasing. Uses Jacobi
/// up to moderate sizes and the bidiagonalization backend above it, where
/// O(n^3) sweeps stop being affordable.
pub fn singular_values(m: &ComplexMatrix) -> Vec<f64> {
    if m.rows.max(m.cols) <= 512 {
        let mt;
        let tall = if m.rows >= m.cols {
            m
        } else {
            mt = m.adjoint();
            &mt
        };
        let (_, s, _) = jacobi_tall(tall);
        s
    } else {
        let mut s: Vec<f64> = m.to_na().singular_values().iter().copied().collect();
        s.sort_by(|a, b| b.partial_cmp(a).unwrap());
        s
    }
}

/// Largest singular value.
pub fn sigma_max(m: &ComplexMatrix) -> f64 {
    singular_values(m).first().copied().unwrap_or(0.0)
}

/// Schatten norm `(sum s_i^p)^{1/p}`, `max s_i` at p = infinity.
pub fn schatten_norm(m: &ComplexMatrix, p: SchattenIndex) -> f64 {
    let s = singular_values(m);
    schatten_norm_of_values(&s, p)
}

/// Schatten norm of a precomputed singular value list.
pub fn schatten_norm_of_values(s: &[f64], p: SchattenIndex) -> f64 {
    match p {
        SchattenIndex::Infinity => s.iter().copied().fold(0.0, f64::max),
        SchattenIndex::Finite(p) if p == 1.0 => s.iter().sum(),
        SchattenIndex::Finite(p) if p == 2.0 => s.iter().map(|x| x * x).sum::<f64>().sqrt(),
        SchattenIndex::Finite(p) => {
            let top = s.iter().copied().fold(0.0, f64::max);
            if top == 0.0 {
                return 0.0;
            }
            // Factor out the top value to avoid overflow at large p.
            let sum: f64 = s.iter().map(|x| (x / top).powf(p)).sum();
            top * sum.powf(1.0 / p)
        }
    }
}

/// Trace duality pairing `Tr(A^T B)`.
pub fn trace_pairing(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<Complex64> {
    if (a.rows(), a.cols()) != (b.rows(), b.cols()) {
        return Err(Error::shape(
            format!("{}x{}", a.rows(), a.cols()),
            format!("{}x{}", b.rows(), b.cols()),
        ));
    }
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            acc += a[(i, j)] * b[(i, j)];
        }
    }
    Ok(acc)
}

/// Eigenvalues of a Hermitian matrix, ascending.
pub fn hermitian_eigenvalues(m: &ComplexMatrix) -> Vec<f64> {
    let herm = m.add(&m.adjoint()).scale(Complex64::new(0.5, 0.0));
    let eig = nalgebra::SymmetricEigen::new(herm.to_na());
    let mut vals: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    vals.sort_by(|a, b| a.partial_cmp(b).unwrap());
    vals
}

/// Matrix exponential by scaling and squaring with a truncated series.
pub fn expm(m: &ComplexMatrix) -> ComplexMatrix {
    assert!(m.is_square(), "expm of a non-square matrix");
    let n = m.rows();
    let norm = m.frobenius_norm();
    let squarings = if norm > 0.5 {
        (norm / 0.5).log2().ceil().max(0.0) as u32
    } else {
        0
    };
    let scaled = m.scale(Complex64::new(1.0 / 2f64.powi(squarings as i32), 0.0));
    let mut acc = ComplexMatrix::identity(n);
    let mut term = ComplexMatrix::identity(n);
    for k in 1..=18 {
        term = term.matmul(&scaled).scale(Complex64::new(1.0 / k as f64, 0.0));
        acc = acc.add(&term);
    }
    for _ in 0..squarings {
        acc = acc.matmul(&acc);
    }
    acc
}

/// Solves `A X = B` for square invertible `A` (dense LU).
pub fn solve(a: &ComplexMatrix, b: &ComplexMatrix) -> Option<ComplexMatrix> {
    let lu = nalgebra::LU::new(a.to_na());
    let rhs = b.to_na();
    let cols: Option<Vec<DVector<Complex64>>> = (0..rhs.ncols())
        .map(|j| lu.solve(&DVector::from_column_slice(rhs.column(j).as_slice())))
        .collect();
    let cols = cols?;
    Some(ComplexMatrix::from_fn(a.rows(), b.cols(), |i, j| cols[j][i]))
}

/// Standard complex Gaussian matrix.
pub fn random_matrix(rng: &mut impl Rng, rows: usize, cols: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| {
        Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    })
}

/// Haar-ish random unitary from the QR decomposition of a Gaussian matrix,
/// with column phases fixed so the result is a deterministic function of the
/// Gaussian sample.
pub fn random_unitary(rng: &mut impl Rng, n: usize) -> ComplexMatrix {
    let g = random_matrix(rng, n, n);
    let qr = nalgebra::QR::new(g.to_na());
    let q = qr.q();
    let r = qr.r();
    let mut u = ComplexMatrix::from_na(&q);
    for j in 0..n {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 {
            d / d.norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        for i in 0..n {
            u[(i, j)] *= phase.conj();
        }
    }
    u
}
