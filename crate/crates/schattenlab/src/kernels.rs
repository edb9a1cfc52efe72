//! Kernels on products of two groups, realized as matrices indexed by group
//! balls: Schatten norms, diagonal lifts, Schur multiplication, and the
//! convolution-power bound sequence.

use std::collections::{BTreeMap, HashSet};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::group::{ball, phi_t, Group, GroupFunction, Word};
use crate::matrix::{self, ComplexMatrix, SchattenIndex};
use crate::tol;

/// Finitely supported complex function on `G1 x G2`, stored sparsely with
/// support constrained to `ball(R1) x ball(R2)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ProductKernel {
    group1: Group,
    group2: Group,
    r1: u32,
    r2: u32,
    values: BTreeMap<(Word, Word), Complex64>,
}

impl ProductKernel {
    pub fn zero(group1: Group, group2: Group, r1: u32, r2: u32) -> Self {
        Self {
            group1,
            group2,
            r1,
            r2,
            values: BTreeMap::new(),
        }
    }

    pub fn groups(&self) -> (Group, Group) {
        (self.group1, self.group2)
    }

    pub fn radii(&self) -> (u32, u32) {
        (self.r1, self.r2)
    }

    pub fn values(&self) -> &BTreeMap<(Word, Word), Complex64> {
        &self.values
    }

    pub fn support_size(&self) -> usize {
        self.values.len()
    }

    pub fn value_at(&self, s: &Word, t: &Word) -> Complex64 {
        self.values
            .get(&(s.clone(), t.clone()))
            .copied()
            .unwrap_or(Complex64::new(0.0, 0.0))
    }

    /// Accumulates into an entry, enforcing the ball invariant and dropping
    /// exact zeros.
    pub fn add_to(&mut self, s: Word, t: Word, v: Complex64) -> Result<()> {
        if s.group() != self.group1 || t.group() != self.group2 {
            return Err(Error::GroupMismatch(format!(
                "pair ({s}, {t}) does not belong to {} x {}",
                self.group1, self.group2
            )));
        }
        if s.length() > self.r1 || t.length() > self.r2 {
            return Err(Error::domain(format!(
                "pair ({s}, {t}) outside ball({}) x ball({})",
                self.r1, self.r2
            )));
        }
        let entry = self.values.entry((s, t));
        match entry {
            std::collections::btree_map::Entry::Vacant(e) => {
                if v != Complex64::new(0.0, 0.0) {
                    e.insert(v);
                }
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let nv = *e.get() + v;
                if nv == Complex64::new(0.0, 0.0) {
                    e.remove();
                } else {
                    *e.get_mut() = nv;
                }
            }
        }
        Ok(())
    }

    pub fn delta(s: Word, t: Word) -> Self {
        let mut k = Self::zero(s.group(), t.group(), s.length(), t.length());
        k.add_to(s, t, Complex64::new(1.0, 0.0)).expect("in ball");
        k
    }

    pub fn scale(&self, c: Complex64) -> Self {
        let mut out = Self::zero(self.group1, self.group2, self.r1, self.r2);
        for ((s, t), v) in &self.values {
            out.add_to(s.clone(), t.clone(), v * c).expect("in ball");
        }
        out
    }

    /// Product-group convolution `(f*g)(s,t) = sum f(s1,t1) g(s1^{-1}s, t1^{-1}t)`.
    pub fn convolve(&self, other: &Self) -> Result<Self> {
        self.convolve_capped(other, tol::KERNEL_SUPPORT_CAP)
    }

    pub fn convolve_capped(&self, other: &Self, cap: usize) -> Result<Self> {
        if (self.group1, self.group2) != (other.group1, other.group2) {
            return Err(Error::GroupMismatch(
                "kernel convolution across different product groups".into(),
            ));
        }
        let mut out = Self::zero(
            self.group1,
            self.group2,
            self.r1 + other.r1,
            self.r2 + other.r2,
        );
        for ((s1, t1), v1) in &self.values {
            for ((s2, t2), v2) in &other.values {
                out.add_to(s1.mul(s2), t1.mul(t2), v1 * v2)?;
            }
            if out.values.len() > cap {
                return Err(Error::SupportExplosion {
                    cap,
                    reached: out.values.len(),
                });
            }
        }
        Ok(out)
    }

    /// Involution `f^*(s,t) = conj(f(s^{-1}, t^{-1}))`.
    pub fn involution(&self) -> Self {
        let mut out = Self::zero(self.group1, self.group2, self.r1, self.r2);
        for ((s, t), v) in &self.values {
            out.add_to(s.inv(), t.inv(), v.conj()).expect("in ball");
        }
        out
    }

    /// True when every row index and every column index carries at most one
    /// entry; then the kernel matrix is a generalized permutation matrix and
    /// its singular values are exactly the entry moduli.
    fn is_generalized_permutation(&self) -> bool {
        let mut rows = HashSet::with_capacity(self.values.len());
        let mut cols = HashSet::with_capacity(self.values.len());
        self.values
            .keys()
            .all(|(s, t)| rows.insert(s) && cols.insert(t))
    }

    /// Schatten norm of the kernel matrix. Diagonal-like kernels and q = 2
    /// are evaluated exactly from the entries; the general case densifies
    /// (on the tight support radii, which leaves the norm unchanged) and
    /// runs an SVD.
    pub fn schatten_norm(&self, q: SchattenIndex) -> Result<f64> {
        if self.values.is_empty() {
            return Ok(0.0);
        }
        if self.is_generalized_permutation() {
            let mods: Vec<f64> = self.values.values().map(|v| v.norm()).collect();
            return Ok(matrix::schatten_norm_of_values(&mods, q));
        }
        if q == SchattenIndex::TWO {
            return Ok(self
                .values
                .values()
                .map(|v| v.norm_sqr())
                .sum::<f64>()
                .sqrt());
        }
        let tight = self.tightened();
        let m = tight.kernel_matrix()?;
        Ok(matrix::schatten_norm(&m, q))
    }

    /// Same kernel with radii shrunk to the actual support.
    fn tightened(&self) -> Self {
        let r1 = self.values.keys().map(|(s, _)| s.length()).max().unwrap_or(0);
        let r2 = self.values.keys().map(|(_, t)| t.length()).max().unwrap_or(0);
        Self {
            group1: self.group1,
            group2: self.group2,
            r1,
            r2,
            values: self.values.clone(),
        }
    }

    /// Dense matrix `[f(s,t)]` with rows over `ball(R1)` and columns over
    /// `ball(R2)` in canonical order.
    pub fn kernel_matrix(&self) -> Result<ComplexMatrix> {
        let rows = ball(self.group1, self.r1);
        let cols = ball(self.group2, self.r2);
        for (dim, what) in [(rows.len(), "rows"), (cols.len(), "columns")] {
            if dim > tol::DENSE_DIM_CAP {
                let _ = what;
                return Err(Error::DimensionCap {
                    dim,
                    cap: tol::DENSE_DIM_CAP,
                });
            }
        }
        let row_index: BTreeMap<&Word, usize> = rows.iter().zip(0..).collect();
        let col_index: BTreeMap<&Word, usize> = cols.iter().zip(0..).collect();
        let mut m = ComplexMatrix::zeros(rows.len(), cols.len());
        for ((s, t), v) in &self.values {
            m[(row_index[s], col_index[t])] = *v;
        }
        Ok(m)
    }
}

/// Lifts a function on `G` to the diagonal of `G x G`, truncated to `ball(R)`.
/// The lift's Schatten p-norm equals the l^p norm of the truncation exactly.
pub fn diagonal_lift(phi: &GroupFunction, r: u32) -> ProductKernel {
    let g = phi.group();
    let mut k = ProductKernel::zero(g, g, r, r);
    for (w, v) in phi.support() {
        if w.length() <= r {
            k.add_to(w.clone(), w.clone(), *v).expect("in ball");
        }
    }
    k
}

/// Entrywise (Schur) product `u . f` on f's support.
pub fn schur_multiply(u: &ProductKernel, f: &ProductKernel) -> Result<ProductKernel> {
    if u.groups() != f.groups() {
        return Err(Error::GroupMismatch(
            "Schur multiplier on a different product group".into(),
        ));
    }
    if u.radii() != f.radii() {
        return Err(Error::shape(
            format!("radii {:?}", u.radii()),
            format!("radii {:?}", f.radii()),
        ));
    }
    let mut out = ProductKernel::zero(f.group1, f.group2, f.r1, f.r2);
    for ((s, t), v) in &f.values {
        let uv = u.value_at(s, t);
        out.add_to(s.clone(), t.clone(), uv * v)?;
    }
    Ok(out)
}

/// The normalized positive-definite multiplier `phi_{t1} x phi_{t2}` on the
/// full `ball(r1) x ball(r2)` grid. Its value at (e,e) is 1.
pub fn product_pd_multiplier(
    group1: Group,
    group2: Group,
    t1: f64,
    t2: f64,
    r1: u32,
    r2: u32,
) -> Result<ProductKernel> {
    let p1 = phi_t(group1, t1, r1)?;
    let p2 = phi_t(group2, t2, r2)?;
    let mut u = ProductKernel::zero(group1, group2, r1, r2);
    for (s, vs) in p1.support() {
        for (t, vt) in p2.support() {
            u.add_to(s.clone(), t.clone(), vs * vt)?;
        }
    }
    Ok(u)
}

/// Random sparse kernel: `terms` Gaussian entries at uniformly drawn pairs
/// of ball words.
pub fn random_kernel(
    rng: &mut impl rand::Rng,
    group1: Group,
    group2: Group,
    r1: u32,
    r2: u32,
    terms: usize,
) -> ProductKernel {
    let b1 = ball(group1, r1);
    let b2 = ball(group2, r2);
    let mut k = ProductKernel::zero(group1, group2, r1, r2);
    for _ in 0..terms {
        let s = b1[rng.gen_range(0..b1.len())].clone();
        let t = b2[rng.gen_range(0..b2.len())].clone();
        let v = Complex64::new(
            rng.sample(rand_distr::StandardNormal),
            rng.sample(rand_distr::StandardNormal),
        );
        k.add_to(s, t, v).expect("drawn from the balls");
    }
    k
}

/// The root sequence `c_n = ||(f^* * f)^{*n}||_{S_q}^{1/2n}`.
#[derive(Clone, Debug, serde::Serialize, serde::Deserialize)]
pub struct CHHSequence {
    pub q: SchattenIndex,
    /// Pairs `(n, c_n)`.
    pub entries: Vec<(usize, f64)>,
    /// Truncation radii actually used for each n.
    pub radii: Vec<(u32, u32)>,
}

/// Computes the convolution-power bound sequence exactly on grown supports.
/// Aborts with a support-explosion error once the exact powers outgrow the
/// configured cap rather than silently truncating.
pub fn chh_sequence(f: &ProductKernel, q: SchattenIndex, n_max: usize) -> Result<CHHSequence> {
    chh_sequence_capped(f, q, n_max, tol::KERNEL_SUPPORT_CAP)
}

pub fn chh_sequence_capped(
    f: &ProductKernel,
    q: SchattenIndex,
    n_max: usize,
    cap: usize,
) -> Result<CHHSequence> {
    if n_max < 1 {
        return Err(Error::domain("chh_sequence needs n_max >= 1"));
    }
    let h = f.involution().convolve_capped(f, cap)?;
    let mut power = h.clone();
    let mut entries = Vec::with_capacity(n_max);
    let mut radii = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        if n > 1 {
            power = power.convolve_capped(&h, cap)?;
        }
        let norm = power.schatten_norm(q)?;
        entries.push((n, norm.powf(1.0 / (2.0 * n as f64))));
        radii.push(power.radii());
    }
    Ok(CHHSequence { q, entries, radii })
}

/// Minimum eigenvalue of the Hermitian part of the Gram matrix
/// `[phi(s^{-1} s')]` over `ball(R)`.
#[derive(Clone, Debug, serde::Serialize, serde::Deserialize)]
pub struct GramReport {
    pub dim: usize,
    pub min_eigenvalue: f64,
    pub positive_definite: bool,
}

pub fn pd_gram_check(phi: &GroupFunction, r: u32) -> Result<GramReport> {
    let words = ball(phi.group(), r);
    let n = words.len();
    if n > tol::DENSE_DIM_CAP {
        return Err(Error::DimensionCap {
            dim: n,
            cap: tol::DENSE_DIM_CAP,
        });
    }
    let gram = ComplexMatrix::from_fn(n, n, |i, j| phi.value_at(&words[i].inv().mul(&words[j])));
    let eig = matrix::hermitian_eigenvalues(&gram);
    let min_eigenvalue = eig.first().copied().unwrap_or(0.0);
    Ok(GramReport {
        dim: n,
        min_eigenvalue,
        positive_definite: min_eigenvalue >= tol::PD_MIN_EIG,
    })
}
