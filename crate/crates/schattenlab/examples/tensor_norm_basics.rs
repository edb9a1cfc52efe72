//! Schatten operator norms of a small tensor element: the exact p = 2 value
//! from the vectorized action, lower-bound iterates at other exponents, and
//! the cross-norm property on elementary tensors.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use schattenlab::matrix::{self, SchattenIndex};
use schattenlab::norms::schatten_op_norm;
use schattenlab::tensor::{random_tensor, TensorElement};

fn main() -> schattenlab::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(1);

    // Cross norm on an elementary tensor: ||a (x) b||_p = ||a|| ||b||.
    let a = matrix::random_matrix(&mut rng, 3, 3);
    let b = matrix::random_matrix(&mut rng, 2, 2);
    let x = TensorElement::elementary(a.clone(), b.clone())?;
    let product = matrix::sigma_max(&a) * matrix::sigma_max(&b);
    println!("elementary tensor, ||a|| ||b|| = {product:.12}");
    for p in [
        SchattenIndex::ONE,
        SchattenIndex::TWO,
        SchattenIndex::new(4.0)?,
        SchattenIndex::Infinity,
    ] {
        let est = schatten_op_norm(&x, p, 1, 4)?;
        println!(
            "  p = {p:<4}  estimate = {:.12}  ({:?}, {} iterations)",
            est.value, est.kind, est.iterations
        );
    }

    // At p = 2 the norm is exactly the top singular value of pi_matrix.
    let y = random_tensor(&mut rng, 3, 3, 3);
    let exact = matrix::sigma_max(&y.pi_matrix());
    let est = schatten_op_norm(&y, SchattenIndex::TWO, 1, 1)?;
    println!("\nrandom 3-term element:");
    println!("  sigma_max(pi_matrix) = {exact:.12}");
    println!("  schatten_op_norm p=2 = {:.12}", est.value);

    // Amplification ladder: the estimates grow toward the cb norm.
    println!("\namplification ladder at p = inf:");
    for k in 1..=4 {
        let est = schatten_op_norm(&y, SchattenIndex::Infinity, k, 4)?;
        println!("  k = {k}: {:.10}", est.value);
    }
    Ok(())
}
