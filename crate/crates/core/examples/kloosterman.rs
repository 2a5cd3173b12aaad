//! Kloosterman sums K_p(a), their angles, and the distribution of
//! kappa_n = K_{p^n}(a) / (2 p^{n/2}).

use frobenius_equidist::equidist::default_grid;
use frobenius_equidist::kloosterman::{kappa_distribution_report, kloosterman_sum};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for a in 1..=4 {
        let k1 = kloosterman_sum(11, 1, a)?;
        let k2 = kloosterman_sum(11, 2, a)?;
        println!("a = {a}: K_11 = {k1:+.10}, K_121 = {k2:+.10}, 2p - K_11^2 = {:+.10}", 22.0 - k1 * k1);
    }
    let (seq, report) = kappa_distribution_report(11, 1, 10_000, &default_grid(21)?)?;
    println!("phi = {:.15}", seq.data.phi_f64());
    println!("relation on phi/pi: {:?}", report.relation.found);
    println!("sup |T/N - lambda_1| at N = 10^4: {:.5}", report.empirical.sup_deviation);
    Ok(())
}
