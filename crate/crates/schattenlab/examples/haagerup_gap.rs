//! The Haagerup-style upper bound against the amplified operator-norm
//! ladder, including the Sigma E_{i1} (x) E_{1i} element whose completely
//! bounded norm is sqrt(3) while its unamplified norm is 1.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use schattenlab::matrix::{ComplexMatrix, SchattenIndex};
use schattenlab::norms::{haagerup_norm, schatten_op_norm};
use schattenlab::tensor::{random_tensor, TensorElement};

fn main() -> schattenlab::Result<()> {
    let n = 3;
    let terms = (0..n)
        .map(|i| (ComplexMatrix::unit(n, n, i, 0), ComplexMatrix::unit(n, n, 0, i)))
        .collect();
    let x = TensorElement::new(terms)?;
    println!("x = sum E_(i1) (x) E_(1i), n = {n}:");
    for k in 1..=4 {
        let est = schatten_op_norm(&x, SchattenIndex::Infinity, k, 4)?;
        println!("  amplified lower bound, k = {k}: {:.10}", est.value);
    }
    let upper = haagerup_norm(&x, 4)?;
    println!("  haagerup upper bound:         {:.10}", upper.value);
    println!("  sqrt(3) =                     {:.10}", 3f64.sqrt());

    println!("\nrandom 2-term instances (upper vs k = 4 lower):");
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for i in 0..5 {
        let y = random_tensor(&mut rng, 3, 3, 2);
        let upper = haagerup_norm(&y, 4)?;
        let lower = schatten_op_norm(&y, SchattenIndex::Infinity, 4, 4)?;
        println!(
            "  {i}: upper = {:.8}, lower = {:.8}, gap = {:.2e}",
            upper.value,
            lower.value,
            (upper.value - lower.value) / lower.value
        );
    }
    Ok(())
}
