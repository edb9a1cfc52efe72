//! Tensor elements `x = sum a_i (x) b_i` of M_{d_A} (x) M_{d_B} and their
//! concrete action on d_A x d_B matrices.

use num_complex::Complex64;
use rand::Rng;

use crate::error::{Error, Result};
use crate::matrix::{self, ComplexMatrix};
use crate::tol;

/// Finite sum `sum a_i (x) b_i` with square factors of fixed sizes.
#[derive(Clone, Debug)]
pub struct TensorElement {
    d_a: usize,
    d_b: usize,
    terms: Vec<(ComplexMatrix, ComplexMatrix)>,
}

impl TensorElement {
    /// Builds an element from a nonempty term list of square factor pairs of
    /// consistent sizes.
    pub fn new(terms: Vec<(ComplexMatrix, ComplexMatrix)>) -> Result<Self> {
        let (a0, b0) = terms
            .first()
            .ok_or_else(|| Error::domain("tensor element needs at least one term"))?;
        if !a0.is_square() || !b0.is_square() {
            return Err(Error::domain("tensor factors must be square"));
        }
        let (d_a, d_b) = (a0.rows(), b0.rows());
        for (a, b) in &terms {
            if a.rows() != d_a || a.cols() != d_a || b.rows() != d_b || b.cols() != d_b {
                return Err(Error::shape(
                    format!("{d_a}x{d_a} and {d_b}x{d_b} factors"),
                    format!("{}x{} and {}x{}", a.rows(), a.cols(), b.rows(), b.cols()),
                ));
            }
        }
        Ok(Self { d_a, d_b, terms })
    }

    pub fn elementary(a: ComplexMatrix, b: ComplexMatrix) -> Result<Self> {
        Self::new(vec![(a, b)])
    }

    pub fn identity(d_a: usize, d_b: usize) -> Self {
        Self::new(vec![(ComplexMatrix::identity(d_a), ComplexMatrix::identity(d_b))]).unwrap()
    }

    pub fn d_a(&self) -> usize {
        self.d_a
    }

    pub fn d_b(&self) -> usize {
        self.d_b
    }

    pub fn terms(&self) -> &[(ComplexMatrix, ComplexMatrix)] {
        &self.terms
    }

    /// Action `T -> sum a_i T b_i^T`. The plain transpose is the matrix of
    /// the Banach adjoint `b^dagger` in conjugate bases; this convention is
    /// frozen and cross-checked against `pi_matrix`.
    pub fn pi_apply(&self, t: &ComplexMatrix) -> Result<ComplexMatrix> {
        if t.rows() != self.d_a || t.cols() != self.d_b {
            return Err(Error::shape(
                format!("{}x{}", self.d_a, self.d_b),
                format!("{}x{}", t.rows(), t.cols()),
            ));
        }
        let mut out = ComplexMatrix::zeros(self.d_a, self.d_b);
        for (a, b) in &self.terms {
            out = out.add(&a.matmul(t).matmul(&b.transpose()));
        }
        Ok(out)
    }

    /// Matrix of the action under column-major vectorization:
    /// `sum b_i kron a_i`, so `pi_matrix(x) vec(T) = vec(pi_apply(x, T))`.
    pub fn pi_matrix(&self) -> ComplexMatrix {
        let n = self.d_a * self.d_b;
        let mut out = ComplexMatrix::zeros(n, n);
        for (a, b) in &self.terms {
            out = out.add(&b.kron(a));
        }
        out
    }

    /// Hilbert-Schmidt adjoint of the action: `S -> sum a_i^* S conj(b_i)`.
    pub fn pi_apply_hs_adjoint(&self, s: &ComplexMatrix) -> Result<ComplexMatrix> {
        if s.rows() != self.d_a || s.cols() != self.d_b {
            return Err(Error::shape(
                format!("{}x{}", self.d_a, self.d_b),
                format!("{}x{}", s.rows(), s.cols()),
            ));
        }
        let mut out = ComplexMatrix::zeros(self.d_a, self.d_b);
        for (a, b) in &self.terms {
            out = out.add(&a.adjoint().matmul(s).matmul(&b.conj()));
        }
        Ok(out)
    }

    /// Involution `(sum a_i (x) b_i)^* = sum a_i^* (x) b_i^*`.
    pub fn adjoint(&self) -> Self {
        Self {
            d_a: self.d_a,
            d_b: self.d_b,
            terms: self
                .terms
                .iter()
                .map(|(a, b)| (a.adjoint(), b.adjoint()))
                .collect(),
        }
    }

    /// Flip `sum b_i (x) a_i` into M_{d_B} (x) M_{d_A}.
    pub fn flip(&self) -> Self {
        Self {
            d_a: self.d_b,
            d_b: self.d_a,
            terms: self
                .terms
                .iter()
                .map(|(a, b)| (b.clone(), a.clone()))
                .collect(),
        }
    }

    /// Amplification `sum (a_i kron I_k) (x) (b_i kron I_k)`.
    pub fn amplify(&self, k: usize) -> Self {
        assert!(k >= 1, "amplification factor must be positive");
        if k == 1 {
            return self.clone();
        }
        let ik = ComplexMatrix::identity(k);
        Self {
            d_a: self.d_a * k,
            d_b: self.d_b * k,
            terms: self
                .terms
                .iter()
                .map(|(a, b)| (a.kron(&ik), b.kron(&ik)))
                .collect(),
        }
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self {
            d_a: self.d_a,
            d_b: self.d_b,
            terms: self
                .terms
                .iter()
                .map(|(a, b)| (a.scale(c), b.clone()))
                .collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if (self.d_a, self.d_b) != (other.d_a, other.d_b) {
            return Err(Error::shape(
                format!("{}x{}", self.d_a, self.d_b),
                format!("{}x{}", other.d_a, other.d_b),
            ));
        }
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        Self::new(terms)
    }

    /// Product in the tensor-product algebra (termwise factor products).
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if (self.d_a, self.d_b) != (other.d_a, other.d_b) {
            return Err(Error::shape(
                format!("{}x{}", self.d_a, self.d_b),
                format!("{}x{}", other.d_a, other.d_b),
            ));
        }
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (a1, b1) in &self.terms {
            for (a2, b2) in &other.terms {
                terms.push((a1.matmul(a2), b1.matmul(b2)));
            }
        }
        Self::new(terms)
    }

    /// Coefficient matrix `sum vec(a_i) vec(b_i)^T` (column-major vecs),
    /// the linear invariant that determines x as an element of the algebraic
    /// tensor product.
    pub fn coefficient_matrix(&self) -> ComplexMatrix {
        let (na, nb) = (self.d_a * self.d_a, self.d_b * self.d_b);
        let mut c = ComplexMatrix::zeros(na, nb);
        for (a, b) in &self.terms {
            let va = a.vec_col_major();
            let vb = b.vec_col_major();
            for i in 0..na {
                for j in 0..nb {
                    c[(i, j)] += va[i] * vb[j];
                }
            }
        }
        c
    }

    /// Replaces the term list by a minimal-rank representation of the same
    /// element, via an SVD of the coefficient matrix. Caps the term count at
    /// `min(d_A^2, d_B^2)` regardless of the input length.
    pub fn compress(&self) -> Self {
        let c = self.coefficient_matrix();
        let d = matrix::svd(&c);
        let top = d.s.first().copied().unwrap_or(0.0);
        let mut terms = Vec::new();
        for (k, &s) in d.s.iter().enumerate() {
            if s <= tol::COMPRESSION_REL * top {
                break;
            }
            let ua: Vec<Complex64> = (0..c.rows())
                .map(|i| d.u[(i, k)] * Complex64::new(s, 0.0))
                .collect();
            // Row k of vh is v_k^H, whose entries are exactly the b-side vec.
            let vb: Vec<Complex64> = (0..c.cols()).map(|j| d.vh[(k, j)]).collect();
            terms.push((
                ComplexMatrix::unvec_col_major(self.d_a, self.d_a, &ua),
                ComplexMatrix::unvec_col_major(self.d_b, self.d_b, &vb),
            ));
        }
        if terms.is_empty() {
            terms.push((
                ComplexMatrix::zeros(self.d_a, self.d_a),
                ComplexMatrix::zeros(self.d_b, self.d_b),
            ));
        }
        Self {
            d_a: self.d_a,
            d_b: self.d_b,
            terms,
        }
    }

    /// True when the element equals its involution as an element of the
    /// algebraic tensor product (coefficient matrices compared).
    pub fn is_self_adjoint(&self, rel_tol: f64) -> bool {
        let c = self.coefficient_matrix();
        let ca = self.adjoint().coefficient_matrix();
        c.sub(&ca).frobenius_norm() <= rel_tol * c.frobenius_norm().max(1.0)
    }

    /// True when every factor is exactly zero.
    pub fn is_zero(&self) -> bool {
        self.terms
            .iter()
            .all(|(a, b)| a.frobenius_norm() == 0.0 || b.frobenius_norm() == 0.0)
    }
}

/// Random tensor element with standard complex Gaussian factors.
pub fn random_tensor(rng: &mut impl Rng, d_a: usize, d_b: usize, terms: usize) -> TensorElement {
    let list = (0..terms.max(1))
        .map(|_| {
            (
                matrix::random_matrix(rng, d_a, d_a),
                matrix::random_matrix(rng, d_b, d_b),
            )
        })
        .collect();
    TensorElement::new(list).unwrap()
}

/// Random self-adjoint tensor element: `y + y^*` for a random y.
pub fn random_self_adjoint_tensor(
    rng: &mut impl Rng,
    d_a: usize,
    d_b: usize,
    terms: usize,
) -> TensorElement {
    let y = random_tensor(rng, d_a, d_b, terms);
    y.add(&y.adjoint()).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{random_matrix, sigma_max, singular_values};
    use num_complex::Complex64;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn constructor_validates() {
        assert!(TensorElement::new(vec![]).is_err());
        let a = ComplexMatrix::identity(2);
        let bad = ComplexMatrix::zeros(2, 3);
        assert!(TensorElement::elementary(a.clone(), bad).is_err());
        let b3 = ComplexMatrix::identity(3);
        let x = TensorElement::elementary(a.clone(), b3.clone()).unwrap();
        assert_eq!((x.d_a(), x.d_b()), (2, 3));
        assert!(TensorElement::new(vec![
            (a.clone(), b3.clone()),
            (ComplexMatrix::identity(3), b3)
        ])
        .is_err());
    }

    #[test]
    fn pi_apply_identity_and_left_multiplication() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let t = random_matrix(&mut rng, 3, 2);
        let x = TensorElement::identity(3, 2);
        assert!(x.pi_apply(&t).unwrap().sub(&t).frobenius_norm() < 1e-14);

        let a = random_matrix(&mut rng, 3, 3);
        let xa = TensorElement::elementary(a.clone(), ComplexMatrix::identity(2)).unwrap();
        let want = a.matmul(&t);
        assert!(xa.pi_apply(&t).unwrap().sub(&want).frobenius_norm() < 1e-13);

        assert!(x.pi_apply(&random_matrix(&mut rng, 2, 2)).is_err());
    }

    #[test]
    fn pi_apply_matrix_unit_example() {
        // x = E11 (x) E22 acting on the all-ones 2x2 matrix leaves a single 1
        // at entry (1,2) in 1-based indexing.
        let x = TensorElement::elementary(
            ComplexMatrix::unit(2, 2, 0, 0),
            ComplexMatrix::unit(2, 2, 1, 1),
        )
        .unwrap();
        let ones = ComplexMatrix::from_real_rows(&[&[1.0, 1.0], &[1.0, 1.0]]);
        let out = x.pi_apply(&ones).unwrap();
        assert_eq!(out[(0, 1)], c(1.0, 0.0));
        assert_eq!(out[(0, 0)], c(0.0, 0.0));
        assert_eq!(out[(1, 0)], c(0.0, 0.0));
        assert_eq!(out[(1, 1)], c(0.0, 0.0));
    }

    #[test]
    fn pi_matrix_trivial_cases() {
        let x = TensorElement::identity(2, 3);
        let m = x.pi_matrix();
        assert!(m.sub(&ComplexMatrix::identity(6)).frobenius_norm() < 1e-14);

        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let a = random_matrix(&mut rng, 2, 2);
        let xa = TensorElement::elementary(a.clone(), ComplexMatrix::identity(3)).unwrap();
        let want = ComplexMatrix::identity(3).kron(&a);
        assert!(xa.pi_matrix().sub(&want).frobenius_norm() < 1e-13);
    }

    #[test]
    fn pi_matrix_cross_checks_pi_apply() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..5 {
            let x = random_tensor(&mut rng, 3, 2, 3);
            let m = x.pi_matrix();
            for _ in 0..10 {
                let t = random_matrix(&mut rng, 3, 2);
                let tv = t.vec_col_major();
                let direct = x.pi_apply(&t).unwrap().vec_col_major();
                let mut err: f64 = 0.0;
                for i in 0..direct.len() {
                    let got: Complex64 = (0..tv.len()).map(|j| m[(i, j)] * tv[j]).sum();
                    err = err.max((got - direct[i]).norm());
                }
                assert!(err <= crate::tol::PI_MATRIX_CROSSCHECK * m.frobenius_norm().max(1.0));
            }
        }
    }

    #[test]
    fn hs_adjoint_is_adjoint_for_frobenius_pairing() {
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        let x = random_tensor(&mut rng, 3, 2, 3);
        let t = random_matrix(&mut rng, 3, 2);
        let s = random_matrix(&mut rng, 3, 2);
        // <A T, S>_HS = <T, A* S>_HS.
        let lhs = crate::matrix::trace_pairing(&s.conj(), &x.pi_apply(&t).unwrap()).unwrap();
        let rhs = crate::matrix::trace_pairing(
            &x.pi_apply_hs_adjoint(&s).unwrap().conj(),
            &t,
        )
        .unwrap();
        assert!((lhs - rhs).norm() < 1e-12);
    }

    #[test]
    fn adjoint_and_flip_shapes() {
        let mut rng = ChaCha8Rng::seed_from_u64(15);
        let x = random_tensor(&mut rng, 3, 2, 2);
        let xs = x.adjoint();
        assert_eq!((xs.d_a(), xs.d_b()), (3, 2));
        let xf = x.flip();
        assert_eq!((xf.d_a(), xf.d_b()), (2, 3));
        // (a (x) b)^* = a^* (x) b^*.
        let (a, b) = &x.terms()[0];
        assert_eq!(xs.terms()[0].0, a.adjoint());
        assert_eq!(xs.terms()[0].1, b.adjoint());
    }

    #[test]
    fn self_adjointness_detection() {
        let mut rng = ChaCha8Rng::seed_from_u64(16);
        let y = random_tensor(&mut rng, 2, 2, 2);
        assert!(!y.is_self_adjoint(1e-10));
        let x = y.add(&y.adjoint()).unwrap();
        assert!(x.is_self_adjoint(1e-10));
    }

    #[test]
    fn amplification_scales_pi_matrix_spectrum() {
        // Amplifying by k repeats each singular value of pi_matrix k^2 times
        // and leaves sigma_max unchanged.
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let x = random_tensor(&mut rng, 2, 2, 2);
        let base = sigma_max(&x.pi_matrix());
        let amp = sigma_max(&x.amplify(3).pi_matrix());
        assert!((base - amp).abs() < 1e-10 * base.max(1.0));
    }

    #[test]
    fn compress_preserves_element_and_caps_terms() {
        let mut rng = ChaCha8Rng::seed_from_u64(18);
        let x = random_tensor(&mut rng, 2, 2, 9);
        let xc = x.compress();
        assert!(xc.terms().len() <= 4);
        let diff = x
            .coefficient_matrix()
            .sub(&xc.coefficient_matrix())
            .frobenius_norm();
        assert!(diff <= 1e-10 * x.coefficient_matrix().frobenius_norm());
        // The action agrees too.
        let t = random_matrix(&mut rng, 2, 2);
        let d = x
            .pi_apply(&t)
            .unwrap()
            .sub(&xc.pi_apply(&t).unwrap())
            .frobenius_norm();
        assert!(d < 1e-10);
    }

    #[test]
    fn mul_matches_pi_matrix_product() {
        let mut rng = ChaCha8Rng::seed_from_u64(19);
        let x = random_tensor(&mut rng, 2, 2, 2);
        let y = random_tensor(&mut rng, 2, 2, 2);
        let xy = x.mul(&y).unwrap();
        let lhs = xy.pi_matrix();
        let rhs = x.pi_matrix().matmul(&y.pi_matrix());
        assert!(lhs.sub(&rhs).frobenius_norm() < 1e-11);
    }

    #[test]
    fn zero_element_allowed() {
        let z = TensorElement::elementary(ComplexMatrix::zeros(2, 2), ComplexMatrix::zeros(2, 2))
            .unwrap();
        assert!(z.is_zero());
        assert_eq!(singular_values(&z.pi_matrix())[0], 0.0);
    }
}
