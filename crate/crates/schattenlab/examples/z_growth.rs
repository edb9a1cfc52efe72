//! Amenable-case checks on the integers: the l1 and reduced spectral radii
//! of real symmetric functions agree, and the subexponential growth bound
//! ||f^n||_1 <= reduced^{n-1} ||f||_2 (2nR+1)^{1/2} never fails.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use schattenlab::group::{Group, GroupFunction, Word};
use schattenlab::spectral::{growth_bound_check, l1_radius, z_reduced_norm};

fn main() -> schattenlab::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for i in 0..3 {
        let mut f = GroupFunction::zero(Group::Integers);
        for n in 0..=2i64 {
            let v = Complex64::new(rng.gen_range(-1.0..1.0f64), 0.0);
            f.add_to(Word::Int(n), v);
            if n != 0 {
                f.add_to(Word::Int(-n), v);
            }
        }
        let l1 = l1_radius(&f, 64)?;
        let red = z_reduced_norm(&f)?;
        println!(
            "instance {i}: l1 radius = {:.8}, max|f_hat| = {:.8} (grid error <= {:.1e})",
            l1.value, red.value, red.grid_error
        );
    }

    let f = GroupFunction::delta(Word::Int(1))
        .add(&GroupFunction::delta(Word::Int(-1)))?;
    let rep = growth_bound_check(&f, 6)?;
    println!("\ngrowth bound for delta_1 + delta_(-1):");
    for row in &rep.rows {
        println!(
            "  n = {}: ||f^n||_1 = {:>8.3} <= {:>9.3}  ({})",
            row.n,
            row.lhs,
            row.rhs,
            if row.holds { "ok" } else { "VIOLATED" }
        );
    }
    Ok(())
}
