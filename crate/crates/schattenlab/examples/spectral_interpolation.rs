//! The spectral interpolation inequality r_p <= r_{p0}^{1-theta} r_{p1}^theta
//! on self-adjoint tensor elements, with the exact spectral radius of the
//! vectorized action as the common reference.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use schattenlab::matrix::SchattenIndex;
use schattenlab::spectral::radius_interpolation_check;
use schattenlab::tensor::random_self_adjoint_tensor;

fn main() -> schattenlab::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for i in 0..3 {
        let x = random_self_adjoint_tensor(&mut rng, 2, 2, 2);
        let rep = radius_interpolation_check(&x, SchattenIndex::ONE, SchattenIndex::TWO, 0.5, 8, 4)?;
        println!("instance {i} (theta = 0.5, endpoints 1 and 2):");
        println!("  exact rho(pi_matrix) = {:.10}", rep.exact_rho);
        println!("  r at p0 = {:.10}", rep.r0.value);
        println!("  r at p1 = {:.10}", rep.r1.value);
        println!("  r at p  = {:.10} (p = {})", rep.r_mid.value, rep.p);
        println!("  slack   = {:+.3e}, holds = {}", rep.slack, rep.holds);
    }
    Ok(())
}
