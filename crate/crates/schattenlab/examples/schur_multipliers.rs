//! Schur multiplication by normalized positive-definite product kernels:
//! the exact shift identity on diagonal lifts and the S_p contraction.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use schattenlab::group::{phi_t, Group};
use schattenlab::kernels::{
    diagonal_lift, product_pd_multiplier, random_kernel, schur_multiply,
};
use schattenlab::matrix::SchattenIndex;

fn main() -> schattenlab::Result<()> {
    let (t, tp, r) = (0.4, 0.3, 3u32);
    let u = product_pd_multiplier(Group::FreeRank2, Group::FreeRank2, tp, tp, r, r)?;
    let f = diagonal_lift(&phi_t(Group::FreeRank2, t, r)?, r);
    let shifted = schur_multiply(&u, &f)?;
    let expected = diagonal_lift(&phi_t(Group::FreeRank2, t + 2.0 * tp, r)?, r);
    let max_dev = shifted
        .values()
        .iter()
        .map(|((s, w), v)| (v - expected.value_at(s, w)).norm())
        .fold(0.0, f64::max);
    println!("shift identity phi~_t . (phi_t' x phi_t') = phi~_(t+2t'):");
    println!("  max entry deviation = {max_dev:.3e}");

    println!("\nS_p contraction under u = phi_0.7 x phi_0.7:");
    let u = product_pd_multiplier(Group::FreeRank2, Group::FreeRank2, 0.7, 0.7, 2, 2)?;
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for i in 0..3 {
        let f = random_kernel(&mut rng, Group::FreeRank2, Group::FreeRank2, 2, 2, 12);
        let uf = schur_multiply(&u, &f)?;
        print!("  instance {i}:");
        for p in [SchattenIndex::ONE, SchattenIndex::TWO, SchattenIndex::Infinity] {
            let before = f.schatten_norm(p)?;
            let after = uf.schatten_norm(p)?;
            print!("  p={p}: {:.4} -> {:.4}", before, after);
        }
        println!();
    }
    Ok(())
}
