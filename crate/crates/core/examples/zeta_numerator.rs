//! Zeta numerator from a handful of point counts, then power sums and
//! Jacobian orders far beyond what enumeration could reach.

use frobenius_equidist::curves::CurveSpec;
use frobenius_equidist::zeta::{extend_power_sums, jacobian_order, numerator_for_curve, pm_numerator};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let curve = CurveSpec::elliptic(7, 3, 2)?;
    let z = numerator_for_curve(&curve)?;
    println!("{curve}");
    println!("P(T)   = {z}");
    println!("P_2(T) = {}", pm_numerator(&z, 2)?);

    let ps = extend_power_sums(&z, 40)?;
    for n in [1, 2, 10, 40] {
        println!("#C(F_{{7^{n}}}) = {}", ps.point_count(n).unwrap());
    }
    for n in 1..=4 {
        println!("#J(F_{{7^{n}}}) = {}", jacobian_order(&z, n)?);
    }
    Ok(())
}
