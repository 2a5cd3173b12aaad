//! Frobenius angles of a genus-2 curve to 60 digits.

use frobenius_equidist::curves::CurveSpec;
use frobenius_equidist::mp::fixed_decimal;
use frobenius_equidist::zeta::{frobenius_angles, numerator_for_curve};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let curve = CurveSpec::hyperelliptic2(7, &[2, 1, 0, 1, 0, 1])?;
    let z = numerator_for_curve(&curve)?;
    let angles = frobenius_angles(&z, 60)?;
    println!("P(T) = {z}");
    for t in angles.theta() {
        println!("theta = {}", fixed_decimal(t, 60, angles.working_bits()));
    }
    println!("max ||tau| - sqrt q|       = {:e}", angles.modulus_residual());
    println!("reconstruction error (rel) = {:e}", angles.reconstruction_error());
    Ok(())
}
