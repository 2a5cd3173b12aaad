//! Interval frequencies of alpha_n approach lambda_g as N grows.

use frobenius_equidist::curves::CurveSpec;
use frobenius_equidist::equidist::{alpha_sequence, default_grid, empirical_report, AlphaMode};
use frobenius_equidist::zeta::numerator_for_curve;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let curves = [
        CurveSpec::elliptic(5, -1, 0)?,
        CurveSpec::hyperelliptic2(7, &[2, 1, 0, 1, 0, 1])?,
    ];
    let grid = default_grid(21)?;
    for curve in &curves {
        let z = numerator_for_curve(curve)?;
        let seq = alpha_sequence(&z, 100_000, AlphaMode::Exact)?;
        println!("{curve}");
        for n in [1_000, 10_000, 100_000] {
            let r = empirical_report(&seq.prefix(n), &grid)?;
            println!("  N = {n:>6}: sup |T/N - lambda| = {:.5}", r.sup_deviation);
        }
    }
    Ok(())
}
