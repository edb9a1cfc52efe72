//! l^p membership thresholds of the length kernel phi_t(s) = exp(-t |s|):
//! on the free group the l^p increments form a geometric series with ratio
//! 3 exp(-p t), so the threshold sits at t = (ln 3)/p.

use schattenlab::group::{lp_threshold_probe, Group};

fn main() -> schattenlab::Result<()> {
    let ln3 = 3f64.ln();
    for p in [1.0, 2.0, 4.0] {
        let t_crit = ln3 / p;
        println!("p = {p}: critical t = {t_crit:.6}");
        for factor in [0.8, 1.0, 1.2] {
            let t = factor * t_crit;
            let rep = lp_threshold_probe(Group::FreeRank2, p, t, 12)?;
            let last = rep.partial_sums.last().unwrap();
            println!(
                "  t = {t:.4}: ratio = {:.6} -> {} (partial sum at r = {}: {:.6})",
                rep.ratio,
                if rep.convergent { "convergent" } else { "divergent" },
                last.0,
                last.1
            );
        }
    }
    // On the integers the sphere sizes are constant, so any t > 0 converges.
    let rep = lp_threshold_probe(Group::Integers, 2.0, 0.05, 12)?;
    println!(
        "\nZ at p = 2, t = 0.05: ratio = {:.6}, convergent = {}",
        rep.ratio, rep.convergent
    );
    Ok(())
}
