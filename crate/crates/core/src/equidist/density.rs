//! The limit law `lambda_g(beta, gamma)`: the Lebesgue measure of
//! `V_g = { psi in [0,1]^g : beta <= (1/g) sum cos(pi psi_j) <= gamma }`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::IntervalQuery;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    ClosedForm,
    Quadrature,
    MonteCarlo,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::ClosedForm => "closed-form",
            Method::Quadrature => "quadrature",
            Method::MonteCarlo => "monte-carlo",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityValue {
    pub value: f64,
    pub method: Method,
    /// Quadrature error estimate, or the binomial standard error for Monte
    /// Carlo.
    pub error_bound: f64,
}

/// Default quadrature tolerance for genus `g`.
pub fn default_tolerance(g: usize) -> f64 {
    if g <= 2 {
        1e-9
    } else {
        1e-6
    }
}

/// Monte-Carlo samples are drawn in blocks of this size, block `b` using
/// stream `b` of the seeded generator.
pub const MC_BLOCK: u64 = 1 << 16;

const MAX_LEVEL: u32 = 12;
const T_MAX: f64 = 4.5;

fn lambda1(beta: f64, gamma: f64) -> f64 {
    let b = beta.clamp(-1.0, 1.0);
    let c = gamma.clamp(-1.0, 1.0);
    if c <= b {
        return 0.0;
    }
    ((c.asin() - b.asin()) / std::f64::consts::PI).clamp(0.0, 1.0)
}

/// Tanh-sinh quadrature of `f` over `[a, b]`, refining until two
/// successive levels agree to `tol`. Returns `(value, error estimate)`.
///
/// `f` receives `(x, x - a, b - x)` with the two distances computed
/// without cancellation.
fn tanh_sinh(
    f: &mut dyn FnMut(f64, f64, f64) -> Result<f64>,
    a: f64,
    b: f64,
    tol: f64,
) -> Result<(f64, f64)> {
    use std::f64::consts::FRAC_PI_2;
    if b <= a {
        return Ok((0.0, 0.0));
    }
    let half = 0.5 * (b - a);
    let mut node = |t: f64| -> Result<f64> {
        let u = FRAC_PI_2 * t.sinh();
        let w = FRAC_PI_2 * t.cosh() / (u.cosh() * u.cosh());
        // distance to the nearer endpoint, computed without cancellation
        let d = half * 2.0 / (1.0 + (2.0 * u.abs()).exp());
        if w == 0.0 || d == 0.0 {
            return Ok(0.0);
        }
        let (x, da, db) = if t < 0.0 {
            (a + d, d, 2.0 * half - d)
        } else {
            (b - d, 2.0 * half - d, d)
        };
        Ok(w * f(x, da, db)?)
    };
    let mut h = 1.0;
    let mut sum = node(0.0)?;
    let mut k = 1;
    while k as f64 * h <= T_MAX {
        let t = k as f64 * h;
        sum += node(t)? + node(-t)?;
        k += 1;
    }
    let mut prev = sum * h * half;
    for level in 1..=MAX_LEVEL {
        h *= 0.5;
        let mut k = 1;
        while k as f64 * h <= T_MAX {
            let t = k as f64 * h;
            sum += node(t)? + node(-t)?;
            k += 2;
        }
        let est = sum * h * half;
        let err = (est - prev).abs();
        if level >= 3 && err <= tol {
            return Ok((est, err));
        }
        prev = est;
    }
    Err(Error::ToleranceUnachievable {
        tol,
        achieved: f64::NAN,
    })
}

/// Points in `(0, 1)` where `(g c - cos(pi alpha)) / (g - 1)` equals one
/// of the kinks of `lambda_{g-1}`, for `c` in `{beta, gamma}`.
fn breakpoints(g: usize, beta: f64, gamma: f64) -> Vec<f64> {
    let m = g - 1;
    let mut pts = vec![0.0, 1.0];
    for c in [beta, gamma] {
        for k in 0..=m {
            let kink = (2 * k) as f64 / m as f64 - 1.0;
            let arg = g as f64 * c - m as f64 * kink;
            if arg > -1.0 && arg < 1.0 {
                pts.push(arg.acos() / std::f64::consts::PI);
            }
        }
    }
    pts.sort_by(|a, b| a.total_cmp(b));
    pts.dedup_by(|a, b| (*a - *b).abs() < 1e-15);
    pts
}

fn lambda_rec(g: usize, beta: f64, gamma: f64, tol: f64) -> Result<(f64, f64)> {
    if gamma < beta || beta > 1.0 || gamma < -1.0 {
        return Ok((0.0, 0.0));
    }
    if beta <= -1.0 && gamma >= 1.0 {
        return Ok((1.0, 0.0));
    }
    if g == 1 {
        return Ok((lambda1(beta, gamma), 0.0));
    }
    let pts = breakpoints(g, beta, gamma);
    let pieces = (pts.len() - 1) as f64;
    let inner_tol = tol / 10.0;
    let gf = g as f64;
    let m = (g - 1) as f64;
    let mut total = 0.0;
    let mut err = 0.0;
    for w in pts.windows(2) {
        let mut f = |a: f64, _: f64, _: f64| -> Result<f64> {
            let c = (std::f64::consts::PI * a).cos();
            Ok(lambda_rec(g - 1, (gf * beta - c) / m, (gf * gamma - c) / m, inner_tol)?.0)
        };
        let (v, e) = tanh_sinh(&mut f, w[0], w[1], tol / (2.0 * pieces)).map_err(|_| {
            Error::ToleranceUnachievable {
                tol,
                achieved: f64::NAN,
            }
        })?;
        total += v;
        err += e;
    }
    Ok((total.clamp(0.0, 1.0), err + inner_tol))
}

fn check_tol(tol: f64) -> Result<()> {
    if !(1e-12..=1e-3).contains(&tol) {
        return Err(Error::InvalidArgument(format!(
            "tol must lie in [1e-12, 1e-3], got {tol:e}"
        )));
    }
    Ok(())
}

fn check_genus(g: usize) -> Result<()> {
    if !(1..=3).contains(&g) {
        return Err(Error::InvalidArgument(format!("g must lie in [1, 3], got {g}")));
    }
    Ok(())
}

/// `lambda_g(beta, gamma)`: arcsine closed form for `g = 1`, nested
/// quadrature of the recursion for `g = 2, 3`.
pub fn lambda_density(g: usize, query: IntervalQuery, tol: f64) -> Result<DensityValue> {
    check_genus(g)?;
    check_tol(tol)?;
    if g == 1 {
        return Ok(DensityValue {
            value: lambda1(query.beta(), query.gamma()),
            method: Method::ClosedForm,
            error_bound: 0.0,
        });
    }
    let (value, err) = lambda_rec(g, query.beta(), query.gamma(), tol)?;
    if err > tol {
        return Err(Error::ToleranceUnachievable { tol, achieved: err });
    }
    Ok(DensityValue {
        value,
        method: Method::Quadrature,
        error_bound: err,
    })
}

/// `lambda_1` by integrating the arcsine density `1/(pi sqrt(1 - x^2))`
/// numerically; an independent route to the closed form.
pub fn lambda1_quadrature(query: IntervalQuery, tol: f64) -> Result<DensityValue> {
    check_tol(tol)?;
    let (b, c) = (query.beta(), query.gamma());
    let mut f = |_: f64, da: f64, db: f64| -> Result<f64> {
        let s = ((1.0 + b) + da) * ((1.0 - c) + db);
        Ok(if s > 0.0 { 1.0 / (std::f64::consts::PI * s.sqrt()) } else { 0.0 })
    };
    let (value, error_bound) = tanh_sinh(&mut f, b, c, tol)?;
    Ok(DensityValue {
        value,
        method: Method::Quadrature,
        error_bound,
    })
}

/// Fraction of `samples` uniform points of `[0,1]^g` falling in `V_g`.
///
/// Deterministic in `seed` and independent of the thread count.
pub fn monte_carlo_lambda(g: usize, query: IntervalQuery, samples: u64, seed: u64) -> Result<DensityValue> {
    check_genus(g)?;
    if samples < 1000 {
        return Err(Error::InvalidArgument(format!(
            "Monte Carlo needs at least 1000 samples, got {samples}"
        )));
    }
    let blocks = samples.div_ceil(MC_BLOCK);
    let (beta, gamma) = (query.beta(), query.gamma());
    let gf = g as f64;
    let hits: u64 = (0..blocks)
        .into_par_iter()
        .map(|b| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(b);
            let n = MC_BLOCK.min(samples - b * MC_BLOCK);
            let mut hits = 0u64;
            for _ in 0..n {
                let mut s = 0.0;
                for _ in 0..g {
                    let psi: f64 = rng.gen();
                    s += (std::f64::consts::PI * psi).cos();
                }
                let a = s / gf;
                if beta <= a && a <= gamma {
                    hits += 1;
                }
            }
            hits
        })
        .sum();
    let p = hits as f64 / samples as f64;
    Ok(DensityValue {
        value: p,
        method: Method::MonteCarlo,
        error_bound: (p * (1.0 - p) / samples as f64).sqrt(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(b: f64, c: f64) -> IntervalQuery {
        IntervalQuery::new(b, c).unwrap()
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(lambda_density(1, q(-1.0, 1.0), 1e-9).unwrap().value, 1.0);
        let v = lambda_density(1, q(-0.5, 0.5), 1e-9).unwrap().value;
        assert!((v - 1.0 / 3.0).abs() < 1e-15);
        assert!((lambda_density(1, q(-1.0, 0.0), 1e-9).unwrap().value - 0.5).abs() < 1e-15);
    }

    #[test]
    fn full_mass() {
        for g in 2..=3 {
            let tol = default_tolerance(g);
            let v = lambda_density(g, q(-1.0, 1.0), tol).unwrap();
            assert!((v.value - 1.0).abs() <= tol);
        }
    }

    #[test]
    fn g1_quadrature_matches_closed_form() {
        for (b, c) in [(-1.0, 1.0), (-0.5, 0.5), (-0.99, -0.3), (0.2, 0.9999), (0.0, 0.0)] {
            let a = lambda_density(1, q(b, c), 1e-12).unwrap().value;
            let d = lambda1_quadrature(q(b, c), 1e-12).unwrap().value;
            assert!((a - d).abs() < 1e-10, "[{b}, {c}]: {a} vs {d}");
        }
    }

    #[test]
    fn g2_against_independent_closed_form() {
        // by symmetry lambda_2(-1, 0) = 1/2; lambda_2(-1, -1/2) is compared with
        // a fine midpoint rule over the inner measure of b
        let v = lambda_density(2, q(-1.0, 0.0), 1e-10).unwrap().value;
        assert!((v - 0.5).abs() < 1e-9);
        let n = 400_000;
        let mut acc = 0.0;
        for i in 0..n {
            let a = (i as f64 + 0.5) / n as f64;
            // measure of b with cos(pi b) <= -1 - cos(pi a)
            let t = -1.0 - (std::f64::consts::PI * a).cos();
            acc += if t <= -1.0 { 0.0 } else if t >= 1.0 { 1.0 } else { 1.0 - t.acos() / std::f64::consts::PI };
        }
        let mid = acc / n as f64;
        let v = lambda_density(2, q(-1.0, -0.5), 1e-10).unwrap().value;
        assert!((v - mid).abs() < 1e-6, "{v} vs {mid}");
    }

    #[test]
    fn symmetry_and_monotonicity() {
        let pts = [-0.9, -0.6, -0.25, 0.0, 0.1, 0.45, 0.8];
        for g in 1..=3 {
            let tol = if g == 3 { 1e-7 } else { 1e-9 };
            for (i, &b) in pts.iter().enumerate() {
                for &c in &pts[i..] {
                    let l = lambda_density(g, q(b, c), tol).unwrap().value;
                    let r = lambda_density(g, q(-c, -b), tol).unwrap().value;
                    assert!((l - r).abs() < 4.0 * tol, "g={g} [{b},{c}]");
                }
            }
            let mut last = 0.0;
            for &c in &pts {
                let v = lambda_density(g, q(-0.95, c), tol).unwrap().value;
                assert!(v + 2.0 * tol >= last);
                last = v;
            }
        }
    }

    #[test]
    fn partition_sums_to_one() {
        for g in 1..=3 {
            let tol = default_tolerance(g);
            let cuts: Vec<f64> = (0..=10).map(|i| -1.0 + i as f64 * 0.2).collect();
            let total: f64 = cuts
                .windows(2)
                .map(|w| lambda_density(g, q(w[0], w[1]), tol).unwrap().value)
                .sum();
            assert!((total - 1.0).abs() <= 10.0 * tol, "g={g}: {total}");
        }
    }

    #[test]
    fn breakpoints_cover_kinks() {
        let b = breakpoints(2, 0.0, 0.5);
        // 2 * 0.5 - cos(pi a) = 1 at a = 1/2
        assert!(b.iter().any(|x| (x - 0.5).abs() < 1e-15));
        let b3 = breakpoints(3, 0.1, 0.2);
        // kink at inner argument 0: cos(pi a) = 3 * 0.1
        assert!(b3.iter().any(|x| (x - 0.3f64.acos() / std::f64::consts::PI).abs() < 1e-15));
    }

    #[test]
    fn monte_carlo_examples() {
        assert_eq!(monte_carlo_lambda(1, q(-1.0, 1.0), 5000, 3).unwrap().value, 1.0);
        let v = monte_carlo_lambda(1, q(-0.5, 0.5), 1_000_000, 0).unwrap();
        assert!((v.value - 1.0 / 3.0).abs() <= 4.0 * v.error_bound);
        let a = monte_carlo_lambda(2, q(-0.3, 0.4), 200_000, 11).unwrap();
        let b = monte_carlo_lambda(2, q(-0.3, 0.4), 200_000, 11).unwrap();
        assert_eq!(a, b);
        let l = lambda_density(2, q(-0.3, 0.4), 1e-9).unwrap();
        assert!((a.value - l.value).abs() <= 4.0 * a.error_bound);
        assert!(monte_carlo_lambda(1, q(-1.0, 1.0), 999, 0).is_err());
    }

    #[test]
    fn monte_carlo_independent_of_thread_count() {
        let run = |threads| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap()
                .install(|| monte_carlo_lambda(3, q(-0.2, 0.3), 300_000, 5).unwrap())
        };
        assert_eq!(run(1), run(4));
    }

    #[test]
    fn argument_checks() {
        assert!(lambda_density(4, q(-1.0, 1.0), 1e-9).is_err());
        assert!(lambda_density(2, q(-1.0, 1.0), 1e-13).is_err());
        assert!(lambda_density(2, q(-1.0, 1.0), 1e-2).is_err());
    }
}
