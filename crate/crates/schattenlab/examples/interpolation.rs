//! The interpolation inequality ||x||_p <= ||x||_{p0}^{1-theta} ||x||_{p1}^theta
//! checked on random elements with certified right-hand sides.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use schattenlab::matrix::SchattenIndex;
use schattenlab::norms::{interpolated_index, verify_interpolation};
use schattenlab::tensor::random_tensor;

fn main() -> schattenlab::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let endpoints = [
        (SchattenIndex::ONE, SchattenIndex::Infinity),
        (SchattenIndex::ONE, SchattenIndex::TWO),
        (SchattenIndex::TWO, SchattenIndex::Infinity),
    ];
    for (p0, p1) in endpoints {
        println!("endpoints p0 = {p0}, p1 = {p1}:");
        for &theta in &[0.25, 0.5, 0.75] {
            let x = random_tensor(&mut rng, 3, 2, 2);
            let p = interpolated_index(p0, p1, theta)?;
            let rep = verify_interpolation(&x, p0, p1, theta, 1)?;
            println!(
                "  theta = {theta:.2} (p = {p:.4}): left = {:.8}, slack = {:+.3e}, certified = {}",
                rep.left.value, rep.slack, rep.certified
            );
        }
    }
    Ok(())
}
