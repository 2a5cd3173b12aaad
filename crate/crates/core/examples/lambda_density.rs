//! lambda_g(beta, gamma) by quadrature, checked against Monte Carlo.

use frobenius_equidist::equidist::density::{default_tolerance, lambda_density, monte_carlo_lambda};
use frobenius_equidist::equidist::IntervalQuery;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let q = IntervalQuery::new(-0.5, 0.5)?;
    for g in 1..=3 {
        let exact = lambda_density(g, q, default_tolerance(g))?;
        let mc = monte_carlo_lambda(g, q, 1_000_000, 0)?;
        println!(
            "g = {g}: {:.10} ({}, err <= {:.1e})   monte carlo {:.5} +- {:.5}",
            exact.value,
            exact.method.as_str(),
            exact.error_bound,
            mc.value,
            mc.error_bound
        );
    }
    Ok(())
}
