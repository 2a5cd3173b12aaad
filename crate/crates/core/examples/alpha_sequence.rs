//! Normalized traces alpha_n computed exactly and from the angles agree.

use frobenius_equidist::curves::CurveSpec;
use frobenius_equidist::equidist::{alpha_sequence, AlphaMode};
use frobenius_equidist::zeta::numerator_for_curve;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let z = numerator_for_curve(&CurveSpec::elliptic(5, -1, 0)?)?;
    let n = 2000;
    let exact = alpha_sequence(&z, n, AlphaMode::Exact)?;
    let angle = alpha_sequence(&z, n, AlphaMode::Angle)?;
    let worst = exact
        .alpha
        .iter()
        .zip(&angle.alpha)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    for (i, a) in exact.alpha.iter().take(8).enumerate() {
        println!("alpha_{} = {a:+.12}", i + 1);
    }
    println!("max |exact - angle| over n <= {n}: {worst:e}");
    Ok(())
}
