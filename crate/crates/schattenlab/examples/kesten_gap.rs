//! The l1-vs-reduced spectral gap on the free group: for the sum of the four
//! generators the l1 radius of f^* * f is exactly 16 while the reduced-norm
//! square converges to the Kesten value 12, leaving the gap 4/3.

use num_complex::Complex64;
use schattenlab::group::{reduced_norm_estimate, Group, GroupFunction, Word, LETTERS};
use schattenlab::spectral::gap_report;

fn main() -> schattenlab::Result<()> {
    let mut f = GroupFunction::zero(Group::FreeRank2);
    for &l in &LETTERS {
        f.add_to(Word::Free(vec![l]), Complex64::new(1.0, 0.0));
    }
    println!("truncation ladder (Kesten value 2 sqrt(3) = {:.8}):", 2.0 * 3f64.sqrt());
    for r in [2u32, 4, 6, 8, 10] {
        let est = reduced_norm_estimate(&f, r)?;
        println!(
            "  R = {r:>2}: reduced norm >= {:.8} ({} power iterations)",
            est.value, est.iterations
        );
    }
    let rep = gap_report(&f, 10, 4)?;
    println!("\nl1 radius of f^* * f    = {}", rep.l1_radius.value);
    println!("reduced norm squared    = {:.8}", rep.reduced_norm_sq);
    println!("multiplicative gap      = {:.8}  (limit 4/3 = {:.8})", rep.gap, 4.0 / 3.0);
    Ok(())
}
