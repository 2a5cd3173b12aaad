//! Newton polygon, irreducibility and relation search for a few curves.

use frobenius_equidist::classify::{classify, find_integer_relation, is_irreducible_over_z};
use frobenius_equidist::curves::CurveSpec;
use frobenius_equidist::zeta::{frobenius_angles, numerator_for_curve, pm_numerator};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let curves = [
        CurveSpec::elliptic(3, 1, 0)?,
        CurveSpec::elliptic(5, -1, 0)?,
        CurveSpec::hyperelliptic2(5, &[1, 1, 0, 0, 0, 1])?,
        CurveSpec::hyperelliptic2(7, &[2, 1, 0, 1, 0, 1])?,
    ];
    for curve in &curves {
        let z = numerator_for_curve(curve)?;
        let c = classify(&z, curve.p())?;
        let p2 = pm_numerator(&z, 2)?;
        let rel = find_integer_relation(&frobenius_angles(&z, 50)?, 50, 1e-9)?;
        println!("{curve}");
        println!("  P = {z}");
        println!("  {} (p-rank {}), slopes {:?}", c.kind, c.p_rank, c.newton_slopes.iter().map(|s| s.to_string()).collect::<Vec<_>>());
        println!(
            "  P irreducible: {}, P_2 irreducible: {}",
            is_irreducible_over_z(&z.coefficients())?,
            is_irreducible_over_z(&p2.coefficients())?
        );
        match rel.found {
            Some(k) => println!("  relation (k_0, k..) = {k:?}"),
            None => println!("  no relation with |k| <= 50 (closest residual {:e})", rel.min_residual),
        }
    }
    Ok(())
}
