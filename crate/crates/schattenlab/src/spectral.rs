//! Spectral-radius estimation in competing completions: Fekete estimates
//! from norm power sequences, the l1-vs-reduced gap on the free group,
//! near-equality on the integers, and the spectral interpolation inequality
//! for tensor elements.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{reduced_norm_estimate, Group, GroupFunction};
use crate::matrix::{self, SchattenIndex};
use crate::norms::{interpolated_index, symmetrized_norm};
use crate::tensor::TensorElement;
use crate::tol;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RadiusMethod {
    PowerNorms,
    Fekete,
    Exact,
}

/// Spectral-radius estimate from a submultiplicative norm power sequence.
/// Every recorded `||x^n||^{1/n}` is an upper bound for the radius, so the
/// Fekete value (their infimum) is the soundest one available.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RadiusEstimate {
    pub value: f64,
    pub method: RadiusMethod,
    pub n_used: usize,
    /// Pairs `(n, ||x^n||^{1/n})`.
    pub sequence: Vec<(usize, f64)>,
}

impl RadiusEstimate {
    fn from_sequence(sequence: Vec<(usize, f64)>, method: RadiusMethod) -> Self {
        let value = sequence
            .iter()
            .map(|&(_, v)| v)
            .fold(f64::INFINITY, f64::min);
        RadiusEstimate {
            value: if value.is_finite() { value } else { 0.0 },
            method,
            n_used: sequence.len(),
            sequence,
        }
    }
}

/// Fekete estimate of the l1 spectral radius from exact sparse convolution
/// powers, guarded by a support cap.
pub fn l1_radius(f: &GroupFunction, n_max: usize) -> Result<RadiusEstimate> {
    l1_radius_capped(f, n_max, tol::SUPPORT_CAP)
}

pub fn l1_radius_capped(f: &GroupFunction, n_max: usize, cap: usize) -> Result<RadiusEstimate> {
    if n_max < 1 {
        return Err(Error::domain("l1_radius needs n_max >= 1"));
    }
    // For nonnegative f the l1 norm is multiplicative under convolution, so
    // the radius is ||f||_1 with no root-taking float error.
    let nonnegative = f
        .support()
        .values()
        .all(|v| v.im == 0.0 && v.re >= 0.0);
    if nonnegative {
        let value = f.l1_norm();
        return Ok(RadiusEstimate {
            value,
            method: RadiusMethod::Exact,
            n_used: n_max,
            sequence: (1..=n_max).map(|n| (n, value)).collect(),
        });
    }
    let mut sequence = Vec::with_capacity(n_max);
    let mut power = f.clone();
    for n in 1..=n_max {
        if n > 1 {
            power = power.convolve(f)?;
        }
        if power.support_size() > cap {
            return Err(Error::SupportExplosion {
                cap,
                reached: power.support_size(),
            });
        }
        sequence.push((n, power.l1_norm().powf(1.0 / n as f64)));
    }
    Ok(RadiusEstimate::from_sequence(sequence, RadiusMethod::Fekete))
}

/// Reduced norm on the integers: `max |f_hat|` over a dense circle grid,
/// with the Bernstein derivative bound for the grid discretization error.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ZReducedNorm {
    pub value: f64,
    /// Certified bound on `sup |f_hat| - value` from the grid spacing.
    pub grid_error: f64,
    pub grid_points: usize,
}

pub fn z_reduced_norm(f: &GroupFunction) -> Result<ZReducedNorm> {
    if f.group() != Group::Integers {
        return Err(Error::GroupMismatch(
            "circle-grid reduced norm is only defined on the integers".into(),
        ));
    }
    let terms: Vec<(i64, Complex64)> = f
        .support()
        .iter()
        .map(|(w, v)| match w {
            crate::group::Word::Int(n) => (*n, *v),
            _ => unreachable!(),
        })
        .collect();
    let n_grid = tol::CIRCLE_GRID;
    let mut max = 0.0_f64;
    for k in 0..n_grid {
        let theta = 2.0 * std::f64::consts::PI * k as f64 / n_grid as f64;
        let val: Complex64 = terms
            .iter()
            .map(|&(n, v)| v * Complex64::from_polar(1.0, n as f64 * theta))
            .sum();
        max = max.max(val.norm());
    }
    // |d f_hat / d theta| <= sum |n f(n)| pointwise; the true supremum lies
    // within half a grid step of a sampled point.
    let deriv_bound: f64 = terms.iter().map(|&(n, v)| n.abs() as f64 * v.norm()).sum();
    let grid_error = deriv_bound * std::f64::consts::PI / n_grid as f64;
    Ok(ZReducedNorm {
        value: max,
        grid_error,
        grid_points: n_grid,
    })
}

/// Comparison of the l1 spectral radius of `f^* * f` against the square of
/// the reduced-norm estimate of `f`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GapReport {
    pub l1_radius: RadiusEstimate,
    pub reduced_norm: f64,
    pub reduced_norm_sq: f64,
    /// Multiplicative gap `r_l1(f^* * f) / reduced^2`; bounded away from 1
    /// on the free group, near 1 on the integers.
    pub gap: f64,
}

pub fn gap_report(f: &GroupFunction, r: u32, n_max: usize) -> Result<GapReport> {
    let h = f.involution().convolve(f)?;
    let l1 = l1_radius(&h, n_max)?;
    let reduced = match f.group() {
        Group::FreeRank2 => reduced_norm_estimate(f, r)?.value,
        Group::Integers => z_reduced_norm(f)?.value,
    };
    let reduced_sq = reduced * reduced;
    Ok(GapReport {
        gap: l1.value / reduced_sq,
        l1_radius: l1,
        reduced_norm: reduced,
        reduced_norm_sq: reduced_sq,
    })
}

/// Report of the spectral interpolation inequality
/// `r_p <= r_{p0}^{1-theta} * r_{p1}^theta` at the symmetrized norms.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SpectralInterpolationReport {
    pub p0: SchattenIndex,
    pub p1: SchattenIndex,
    pub theta: f64,
    pub p: SchattenIndex,
    pub r0: RadiusEstimate,
    pub r1: RadiusEstimate,
    pub r_mid: RadiusEstimate,
    /// `r0^{1-theta} * r1^theta - r_mid`; the inequality asks for this to be
    /// nonnegative up to slack.
    pub slack: f64,
    /// Spectral radius of `pi_matrix(x)` — the common exact value of all
    /// three radii in finite dimensions.
    pub exact_rho: f64,
    pub holds: bool,
}

/// Estimates the three radii from symmetrized-norm power sequences, with the
/// powers computed in the algebra and rank-compressed after each step.
pub fn radius_interpolation_check(
    x: &TensorElement,
    p0: SchattenIndex,
    p1: SchattenIndex,
    theta: f64,
    n_max: usize,
    restarts: usize,
) -> Result<SpectralInterpolationReport> {
    if !x.is_self_adjoint(1e-10) {
        return Err(Error::domain(
            "spectral interpolation check requires a self-adjoint element",
        ));
    }
    if n_max < 1 {
        return Err(Error::domain("radius check needs n_max >= 1"));
    }
    let p = interpolated_index(p0, p1, theta)?;
    let mut seq0 = Vec::with_capacity(n_max);
    let mut seq1 = Vec::with_capacity(n_max);
    let mut seqm = Vec::with_capacity(n_max);
    let mut power = x.clone();
    for n in 1..=n_max {
        if n > 1 {
            let raw = power.mul(x)?;
            let compressed = raw.compress();
            let drift = raw
                .coefficient_matrix()
                .sub(&compressed.coefficient_matrix())
                .frobenius_norm();
            let scale = raw.coefficient_matrix().frobenius_norm().max(1e-300);
            if drift > 1e-10 * scale {
                return Err(Error::domain(format!(
                    "power compression drifted by {:.3e} (relative)",
                    drift / scale
                )));
            }
            power = compressed;
        }
        let root = 1.0 / n as f64;
        seq0.push((n, symmetrized_norm(&power, p0, 1, restarts)?.value.powf(root)));
        seq1.push((n, symmetrized_norm(&power, p1, 1, restarts)?.value.powf(root)));
        seqm.push((n, symmetrized_norm(&power, p, 1, restarts)?.value.powf(root)));
    }
    let r0 = RadiusEstimate::from_sequence(seq0, RadiusMethod::Fekete);
    let r1 = RadiusEstimate::from_sequence(seq1, RadiusMethod::Fekete);
    let r_mid = RadiusEstimate::from_sequence(seqm, RadiusMethod::Fekete);
    let rhs = r0.value.powf(1.0 - theta) * r1.value.powf(theta);
    let slack = rhs - r_mid.value;
    let pm = x.pi_matrix();
    let herm_defect = pm.sub(&pm.adjoint()).max_abs();
    debug_assert!(
        herm_defect <= 1e-8 * pm.max_abs().max(1.0),
        "pi_matrix of a self-adjoint element should be Hermitian"
    );
    let exact_rho = matrix::hermitian_eigenvalues(&pm)
        .iter()
        .map(|l| l.abs())
        .fold(0.0, f64::max);
    Ok(SpectralInterpolationReport {
        p0,
        p1,
        theta,
        p,
        r0,
        r1,
        r_mid,
        slack,
        exact_rho,
        holds: slack >= -tol::RADIUS_INTERP_SLACK,
    })
}

/// One row of the subexponential growth bound
/// `||f^{*n}||_1 <= reduced^{n-1} * ||f||_2 * (2 n R0 + 1)^{1/2}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GrowthRow {
    pub n: usize,
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GrowthBoundReport {
    pub reduced: ZReducedNorm,
    pub rows: Vec<GrowthRow>,
    pub all_hold: bool,
}

pub fn growth_bound_check(f: &GroupFunction, n_max: usize) -> Result<GrowthBoundReport> {
    if f.group() != Group::Integers {
        return Err(Error::GroupMismatch(
            "growth bound check is only defined on the integers".into(),
        ));
    }
    if n_max < 1 {
        return Err(Error::domain("growth bound check needs n_max >= 1"));
    }
    let reduced = z_reduced_norm(f)?;
    let r0 = f.radius() as f64;
    let l2 = f.l2_norm();
    let mut rows = Vec::with_capacity(n_max);
    let mut power = f.clone();
    for n in 1..=n_max {
        if n > 1 {
            power = power.convolve(f)?;
        }
        let lhs = power.l1_norm();
        let rhs = reduced.value.powi(n as i32 - 1) * l2 * (2.0 * n as f64 * r0 + 1.0).sqrt();
        rows.push(GrowthRow {
            n,
            lhs,
            rhs,
            holds: lhs <= rhs * (1.0 + tol::CONTRACTION_SLACK),
        });
    }
    let all_hold = rows.iter().all(|r| r.holds);
    Ok(GrowthBoundReport {
        reduced,
        rows,
        all_hold,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{ball, random_function, Word, LETTERS};
    use crate::matrix::ComplexMatrix;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn generators() -> GroupFunction {
        let mut f = GroupFunction::zero(Group::FreeRank2);
        for &l in &LETTERS {
            f.add_to(Word::Free(vec![l]), Complex64::new(1.0, 0.0));
        }
        f
    }

    #[test]
    fn l1_radius_nonnegative_is_exact() {
        let f = generators();
        let est = l1_radius(&f, 4).unwrap();
        assert_eq!(est.value, 4.0);
        for &(_, v) in &est.sequence {
            assert!((v - 4.0).abs() < 1e-12);
        }
        let d = GroupFunction::delta(Word::Free(vec![1, 2]));
        assert_eq!(l1_radius(&d, 6).unwrap().value, 1.0);
    }

    #[test]
    fn l1_radius_support_cap() {
        let signed = generators()
            .add(&GroupFunction::delta(Word::Free(vec![1])).scale(Complex64::new(-2.0, 0.0)))
            .unwrap();
        let err = l1_radius_capped(&signed, 16, 1000).unwrap_err();
        assert!(matches!(err, Error::SupportExplosion { .. }));
    }

    #[test]
    fn z_signed_difference_radius_is_two() {
        let f = GroupFunction::delta(Word::Int(1))
            .add(&GroupFunction::delta(Word::Int(-1)).scale(Complex64::new(-1.0, 0.0)))
            .unwrap();
        let est = l1_radius(&f, 64).unwrap();
        assert!((est.value - 2.0).abs() <= 0.01 * 2.0, "got {}", est.value);
        // The oracle: max over the circle of |2i sin(theta)| = 2.
        let red = z_reduced_norm(&f).unwrap();
        assert!((red.value - 2.0).abs() <= red.grid_error + 1e-12);
    }

    #[test]
    fn gap_on_free_group_generators() {
        let f = generators();
        let rep = gap_report(&f, 8, 4).unwrap();
        assert_eq!(rep.l1_radius.value, 16.0);
        assert!(rep.reduced_norm_sq <= 12.0 + 1e-6);
        assert!(rep.gap >= 1.30, "gap {}", rep.gap);
    }

    #[test]
    fn gap_of_delta_is_one() {
        let rep = gap_report(&GroupFunction::delta(Word::identity(Group::FreeRank2)), 2, 3).unwrap();
        assert!((rep.gap - 1.0).abs() < 1e-9);
    }

    #[test]
    fn gap_on_integers_near_one() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..5 {
            // Real symmetric f: f(n) = f(-n) real.
            let mut f = GroupFunction::zero(Group::Integers);
            for n in 0..=2i64 {
                let v = Complex64::new(rng.gen_range(-1.0..1.0), 0.0);
                f.add_to(Word::Int(n), v);
                if n != 0 {
                    f.add_to(Word::Int(-n), v);
                }
            }
            if f.support_size() == 0 {
                continue;
            }
            let rep = gap_report(&f, 0, 24).unwrap();
            assert!((rep.gap - 1.0).abs() <= 0.02, "gap {}", rep.gap);
        }
    }

    #[test]
    fn interpolation_on_a_tensor_identity() {
        // x = a (x) I with a self-adjoint: all radii equal rho(a).
        let a = ComplexMatrix::from_real_rows(&[&[1.0, 0.5, 0.0], &[0.5, -0.3, 0.2], &[0.0, 0.2, 2.0]]);
        let x = TensorElement::elementary(a.clone(), ComplexMatrix::identity(2)).unwrap();
        let rho = matrix::hermitian_eigenvalues(&a)
            .iter()
            .map(|l| l.abs())
            .fold(0.0, f64::max);
        let rep =
            radius_interpolation_check(&x, SchattenIndex::ONE, SchattenIndex::TWO, 0.5, 4, 4)
                .unwrap();
        assert!(rep.holds);
        assert!((rep.exact_rho - rho).abs() < 1e-10);
        for r in [&rep.r0, &rep.r1, &rep.r_mid] {
            assert!((r.value - rho).abs() <= 0.02 * rho, "{} vs {rho}", r.value);
        }
    }

    #[test]
    fn interpolation_random_self_adjoint() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let x = crate::tensor::random_self_adjoint_tensor(&mut rng, 2, 2, 2);
        let rep =
            radius_interpolation_check(&x, SchattenIndex::ONE, SchattenIndex::TWO, 0.5, 8, 4)
                .unwrap();
        assert!(rep.holds, "slack {}", rep.slack);
        for r in [&rep.r0, &rep.r1, &rep.r_mid] {
            assert!(
                (r.value - rep.exact_rho).abs() <= 0.02 * rep.exact_rho,
                "{} vs {}",
                r.value,
                rep.exact_rho
            );
        }
    }

    #[test]
    fn interpolation_scaling_homogeneity() {
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        let x = crate::tensor::random_self_adjoint_tensor(&mut rng, 2, 2, 2);
        let y = x.scale(Complex64::new(-2.0, 0.0));
        let rx = radius_interpolation_check(&x, SchattenIndex::ONE, SchattenIndex::TWO, 0.5, 3, 3)
            .unwrap();
        let ry = radius_interpolation_check(&y, SchattenIndex::ONE, SchattenIndex::TWO, 0.5, 3, 3)
            .unwrap();
        assert!((ry.exact_rho - 2.0 * rx.exact_rho).abs() < 1e-10);
        assert!((ry.r_mid.value - 2.0 * rx.r_mid.value).abs() < 1e-6 * ry.r_mid.value);
    }

    #[test]
    fn interpolation_rejects_non_self_adjoint() {
        let x = TensorElement::elementary(
            ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]),
            ComplexMatrix::identity(2),
        )
        .unwrap();
        assert!(
            radius_interpolation_check(&x, SchattenIndex::ONE, SchattenIndex::TWO, 0.5, 3, 2)
                .is_err()
        );
    }

    #[test]
    fn growth_bound_hand_values() {
        let f = GroupFunction::delta(Word::Int(1))
            .add(&GroupFunction::delta(Word::Int(-1)))
            .unwrap();
        let rep = growth_bound_check(&f, 4).unwrap();
        assert!(rep.all_hold);
        let row = &rep.rows[1];
        assert_eq!(row.n, 2);
        assert!((row.lhs - 4.0).abs() < 1e-12);
        // 2 * sqrt(2) * sqrt(5) = 2 sqrt(10).
        assert!((row.rhs - 2.0 * 10f64.sqrt()).abs() < 1e-6);
    }

    #[test]
    fn growth_bound_delta_and_random() {
        let rep = growth_bound_check(&GroupFunction::delta(Word::Int(0)), 3).unwrap();
        assert!(rep.all_hold);
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..20 {
            let f = random_function(&mut rng, Group::Integers, 3, 5);
            if f.support_size() == 0 {
                continue;
            }
            let rep = growth_bound_check(&f, 6).unwrap();
            assert!(rep.all_hold);
        }
        assert!(growth_bound_check(&generators(), 2).is_err());
    }

    #[test]
    fn ball_radius_consistency() {
        // The reduced component of the free-group gap grows with R.
        let f = generators();
        let mut prev = 0.0;
        for r in [2u32, 4, 6] {
            let rep = gap_report(&f, r, 2).unwrap();
            assert!(rep.reduced_norm >= prev - 1e-10);
            prev = rep.reduced_norm;
        }
        let _ = ball(Group::FreeRank2, 1);
    }
}
