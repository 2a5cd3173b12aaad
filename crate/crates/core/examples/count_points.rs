//! Point counts of y^2 = x^3 - x over F_{5^n} and the genus-2 curve
//! y^2 = x^5 + x + 1 over F_{5^n}.

use frobenius_equidist::curves::CurveSpec;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let e = CurveSpec::elliptic(5, -1, 0)?;
    let h = CurveSpec::hyperelliptic2(5, &[1, 1, 0, 0, 0, 1])?;
    for curve in [&e, &h] {
        println!("{curve}");
        for n in 1..=4 {
            println!("  #C(F_{{5^{n}}}) = {}", curve.count_points(n)?);
        }
    }
    Ok(())
}
