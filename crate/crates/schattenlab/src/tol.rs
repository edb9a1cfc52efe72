//! Central tolerance constants. Every numeric check in the crate pulls its
//! threshold from here so the defaults can be audited in one place.

/// Relative SVD reconstruction residual guaranteed by `svd`.
pub const SVD_RECONSTRUCTION_REL: f64 = 1e-10;

/// Relative agreement between the Schatten-2 norm and the Frobenius norm.
pub const S2_FROBENIUS_REL: f64 = 1e-12;

/// Cross-check between `pi_apply` and `pi_matrix` vectorization paths.
pub const PI_MATRIX_CROSSCHECK: f64 = 1e-12;

/// Slack allowed when a lower bound is compared against an upper bound for
/// the same quantity.
pub const BOUND_ORDER_SLACK: f64 = 1e-9;

/// Relative tolerance for norm identities that hold exactly at p in {1,2,inf}.
pub const CROSS_NORM_EXACT_REL: f64 = 1e-8;

/// Relative tolerance for norm identities probed by the iterative optimizer
/// at general p.
pub const CROSS_NORM_GENERAL_REL: f64 = 1e-3;

/// Unitary / corner-embedding invariance tolerance.
pub const INVARIANCE_REL: f64 = 1e-8;

/// Slack for contractivity checks (functorial compressions, Schur bounds,
/// interpolation, sandwich chains).
pub const CONTRACTION_SLACK: f64 = 1e-9;

/// Minimum eigenvalue allowed in positive-definiteness checks.
pub const PD_MIN_EIG: f64 = -1e-9;

/// Haagerup upper bound vs amplified lower bound relative gap target.
pub const HAAGERUP_GAP_REL: f64 = 0.05;

/// Relative increment at which iterative maximizers stop.
pub const ASCENT_STOP_REL: f64 = 1e-14;

/// Maximum dual-ascent iterations per restart.
pub const ASCENT_MAX_ITERS: usize = 500;

/// Relative eigenvalue increment at which power iteration stops.
pub const POWER_ITER_STOP_REL: f64 = 1e-10;

/// Maximum power-iteration steps.
pub const POWER_ITER_MAX: usize = 1000;

/// Slack for the spectral interpolation inequality.
pub const RADIUS_INTERP_SLACK: f64 = 1e-6;

/// Singular values below this relative threshold are dropped when a tensor
/// element is rank-compressed.
pub const COMPRESSION_REL: f64 = 1e-14;

/// Default cap on sparse supports produced by convolution powers.
pub const SUPPORT_CAP: usize = 1_000_000;

/// Default cap on sparse supports for product-kernel convolution powers.
pub const KERNEL_SUPPORT_CAP: usize = 4_000_000;

/// Largest matrix dimension handed to the dense eigen/SVD solvers.
pub const DENSE_DIM_CAP: usize = 4096;

/// Number of grid points used for reduced norms on the integers.
pub const CIRCLE_GRID: usize = 1 << 16;
