//! The convolution-power bound sequence c_n = ||(f^* * f)^{*n}||_{S_2}^{1/2n}
//! for the diagonal generator kernel on F2 x F2. The sequence increases
//! toward 2 sqrt(3), the reduced norm of the corresponding group element.

use schattenlab::group::{reduced_norm_estimate, Group, GroupFunction, Word, LETTERS};
use schattenlab::kernels::chh_sequence;
use schattenlab::matrix::SchattenIndex;
use schattenlab::runner::diag_generator_kernel;
use num_complex::Complex64;

fn main() -> schattenlab::Result<()> {
    let f = diag_generator_kernel();
    // The exact convolution powers fit in memory up to n = 6
    // (|ball(12)| = 1,062,881 support points).
    let seq = chh_sequence(&f, SchattenIndex::TWO, 6)?;
    println!("c_n sequence at q = 2:");
    for ((n, c), (r1, r2)) in seq.entries.iter().zip(&seq.radii) {
        println!("  n = {n}: c_n = {c:.8}  (support radii {r1} x {r2})");
    }

    let mut g = GroupFunction::zero(Group::FreeRank2);
    for &l in &LETTERS {
        g.add_to(Word::Free(vec![l]), Complex64::new(1.0, 0.0));
    }
    let reduced = reduced_norm_estimate(&g, 10)?;
    println!("\nreduced-norm reference (R = 10): {:.8}", reduced.value);
    println!("limit 2 sqrt(3)                : {:.8}", 2.0 * 3f64.sqrt());
    Ok(())
}
