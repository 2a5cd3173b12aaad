//! Star discrepancy of the Kronecker points (n theta_1, ..., n theta_g) mod 1.

use frobenius_equidist::curves::CurveSpec;
use frobenius_equidist::equidist::discrepancy::{kronecker_points, star_discrepancy};
use frobenius_equidist::zeta::{frobenius_angles, numerator_for_curve};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let curves = [
        CurveSpec::elliptic(5, -1, 0)?,
        CurveSpec::hyperelliptic2(7, &[2, 1, 0, 1, 0, 1])?,
    ];
    for curve in &curves {
        let angles = frobenius_angles(&numerator_for_curve(curve)?, 50)?;
        println!("{curve}  theta = {:?}", angles.theta_f64());
        for n in [100, 1_000, 10_000] {
            let r = star_discrepancy(&kronecker_points(&angles, n)?)?;
            println!("  D*({n:>5}) = {:.6} [{}]", r.star_discrepancy, r.method.as_str());
        }
    }
    Ok(())
}
