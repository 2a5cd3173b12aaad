//! Normalized traces `alpha_n = a_n / (2g q^{n/2})`, interval counts,
//! comparison with the limit law `lambda_g`, and Kronecker-sequence
//! discrepancy.

pub mod density;
pub mod discrepancy;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::mp::{MpCtx, Turns};
use crate::zeta::{frobenius_angles, half_log_dd, normalized_trace, FrobeniusAngles, PowerSumIter, ZetaNumerator};

pub use density::{
    default_tolerance, lambda1_quadrature, lambda_density, monte_carlo_lambda, DensityValue, Method,
};
pub use discrepancy::{kronecker_points, star_discrepancy, DiscrepancyMethod, DiscrepancyReport};

/// Largest `N` for exact-mode sequences.
pub const MAX_EXACT_N: usize = 1_000_000;
/// Largest `N` for angle-mode sequences.
pub const MAX_ANGLE_N: usize = 100_000_000;
/// Minimum angle precision (decimal digits) for angle mode.
pub const ANGLE_MODE_DIGITS: u32 = 50;
/// Number of histogram bins in an [`EmpiricalReport`].
pub const HISTOGRAM_BINS: usize = 64;

const RANGE_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AlphaMode {
    /// From exact power sums, converted through the log domain.
    Exact,
    /// From the Frobenius angles, `(1/g) sum cos(pi theta_j n)`.
    Angle,
}

impl AlphaMode {
    pub fn as_str(self) -> &'static str {
        match self {
            AlphaMode::Exact => "exact",
            AlphaMode::Angle => "angle",
        }
    }
}

impl std::str::FromStr for AlphaMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<AlphaMode> {
        match s {
            "exact" => Ok(AlphaMode::Exact),
            "angle" => Ok(AlphaMode::Angle),
            _ => Err(Error::InvalidArgument(format!("unknown mode {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AlphaSequence {
    pub q: BigInt,
    pub g: usize,
    pub mode: AlphaMode,
    /// `alpha_1, ..., alpha_N`.
    pub alpha: Vec<f64>,
}

impl AlphaSequence {
    pub fn len(&self) -> usize {
        self.alpha.len()
    }

    pub fn is_empty(&self) -> bool {
        self.alpha.is_empty()
    }

    /// The first `n` terms.
    pub fn prefix(&self, n: usize) -> AlphaSequence {
        AlphaSequence {
            alpha: self.alpha[..n.min(self.alpha.len())].to_vec(),
            ..self.clone()
        }
    }
}

fn clamp_checked(a: f64, n: usize, err: impl Fn(String) -> Error) -> Result<f64> {
    if !(-1.0 - RANGE_SLACK..=1.0 + RANGE_SLACK).contains(&a) || a.is_nan() {
        return Err(err(format!("alpha_{n} = {a} outside [-1, 1]")));
    }
    Ok(a.clamp(-1.0, 1.0))
}

/// `alpha_1..alpha_N` for the numerator `z`.
pub fn alpha_sequence(z: &ZetaNumerator, n_max: usize, mode: AlphaMode) -> Result<AlphaSequence> {
    match mode {
        AlphaMode::Exact => {
            if n_max > MAX_EXACT_N {
                return Err(Error::GuardExceeded(format!(
                    "exact mode allows N <= {MAX_EXACT_N}, got {n_max}"
                )));
            }
            let lq = half_log_dd(z.q());
            let g = z.g();
            let alpha = PowerSumIter::new(z)
                .take(n_max)
                .enumerate()
                .map(|(i, s)| clamp_checked(normalized_trace(&s, i + 1, g, lq), i + 1, Error::WeilViolation))
                .collect::<Result<Vec<_>>>()?;
            Ok(AlphaSequence {
                q: z.q().clone(),
                g,
                mode,
                alpha,
            })
        }
        AlphaMode::Angle => {
            if n_max > MAX_ANGLE_N {
                return Err(Error::GuardExceeded(format!(
                    "angle mode allows N <= {MAX_ANGLE_N}, got {n_max}"
                )));
            }
            let angles = frobenius_angles(z, ANGLE_MODE_DIGITS)?;
            alpha_from_angles(&angles, n_max)
        }
    }
}

/// `alpha_n = (1/g) sum_j cos(pi theta_j n)` from given angles.
pub fn alpha_from_angles(angles: &FrobeniusAngles, n_max: usize) -> Result<AlphaSequence> {
    if angles.precision_digits() < ANGLE_MODE_DIGITS {
        return Err(Error::PrecisionInsufficient(format!(
            "angle mode needs at least {ANGLE_MODE_DIGITS} digits, angles carry {}",
            angles.precision_digits()
        )));
    }
    if n_max > MAX_ANGLE_N {
        return Err(Error::GuardExceeded(format!(
            "angle mode allows N <= {MAX_ANGLE_N}, got {n_max}"
        )));
    }
    // cos(pi theta n) = cos(2 pi n (theta / 2)); track n theta / 2 modulo 1
    let ctx = MpCtx::new(angles.working_bits());
    let two = ctx.int(2);
    let steps: Vec<Turns> = angles
        .theta()
        .iter()
        .map(|t| Turns::from_float(&ctx.div(t, &two)))
        .collect();
    let g = steps.len();
    let mut acc = vec![Turns::ZERO; g];
    let mut alpha = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        let mut s = 0.0;
        for (a, st) in acc.iter_mut().zip(&steps) {
            *a = a.wrapping_add(*st);
            s += (std::f64::consts::TAU * a.to_f64()).cos();
        }
        alpha.push(clamp_checked(s / g as f64, n, Error::PrecisionInsufficient)?);
    }
    Ok(AlphaSequence {
        q: angles.q().clone(),
        g,
        mode: AlphaMode::Angle,
        alpha,
    })
}

/// A closed interval `[beta, gamma]` with `-1 <= beta <= gamma <= 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntervalQuery {
    beta: f64,
    gamma: f64,
}

impl IntervalQuery {
    pub fn new(beta: f64, gamma: f64) -> Result<IntervalQuery> {
        if !(-1.0 <= beta && beta <= gamma && gamma <= 1.0) {
            return Err(Error::InvalidArgument(format!(
                "need -1 <= beta <= gamma <= 1, got [{beta}, {gamma}]"
            )));
        }
        Ok(IntervalQuery { beta, gamma })
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn contains(&self, a: f64) -> bool {
        self.beta <= a && a <= self.gamma
    }
}

/// `m` equispaced closed intervals covering `[-1, 1]`.
pub fn default_grid(m: usize) -> Result<Vec<IntervalQuery>> {
    if m == 0 {
        return Err(Error::InvalidArgument("grid needs at least one interval".into()));
    }
    (0..m)
        .map(|i| {
            let lo = -1.0 + 2.0 * i as f64 / m as f64;
            let hi = if i + 1 == m { 1.0 } else { -1.0 + 2.0 * (i + 1) as f64 / m as f64 };
            IntervalQuery::new(lo, hi)
        })
        .collect()
}

/// `T_{beta,gamma}(N)`: how many `alpha_n` lie in the closed interval.
pub fn count_in_interval(seq: &AlphaSequence, query: IntervalQuery) -> usize {
    count_values(&seq.alpha, query)
}

pub(crate) fn count_values(values: &[f64], query: IntervalQuery) -> usize {
    values.iter().filter(|a| query.contains(**a)).count()
}

#[derive(Debug, Clone, PartialEq)]
pub struct GridRow {
    pub query: IntervalQuery,
    pub count: usize,
    pub frequency: f64,
    pub lambda: f64,
    pub deviation: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct HistogramBin {
    pub lo: f64,
    pub hi: f64,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EmpiricalReport {
    pub n: usize,
    pub g: usize,
    pub rows: Vec<GridRow>,
    pub sup_deviation: f64,
    pub histogram: Vec<HistogramBin>,
}

/// Equal-width bins over `[-1, 1]`; the last bin is closed.
pub fn histogram(values: &[f64], bins: usize) -> Vec<HistogramBin> {
    let mut counts = vec![0usize; bins];
    for a in values {
        let i = (((a + 1.0) / 2.0) * bins as f64).floor();
        let i = (i.max(0.0) as usize).min(bins - 1);
        counts[i] += 1;
    }
    counts
        .into_iter()
        .enumerate()
        .map(|(i, count)| HistogramBin {
            lo: -1.0 + 2.0 * i as f64 / bins as f64,
            hi: -1.0 + 2.0 * (i + 1) as f64 / bins as f64,
            count,
        })
        .collect()
}

/// Frequencies of `values` on each grid interval against `lambda_g`.
pub fn empirical_report_values(values: &[f64], g: usize, grid: &[IntervalQuery]) -> Result<EmpiricalReport> {
    if grid.is_empty() {
        return Err(Error::InvalidArgument("grid must be nonempty".into()));
    }
    let n = values.len();
    let tol = default_tolerance(g);
    let mut rows = Vec::with_capacity(grid.len());
    let mut sup: f64 = 0.0;
    for q in grid {
        let count = count_values(values, *q);
        let frequency = if n == 0 { 0.0 } else { count as f64 / n as f64 };
        let lambda = lambda_density(g, *q, tol)?.value;
        let deviation = (frequency - lambda).abs();
        sup = sup.max(deviation);
        rows.push(GridRow {
            query: *q,
            count,
            frequency,
            lambda,
            deviation,
        });
    }
    Ok(EmpiricalReport {
        n,
        g,
        rows,
        sup_deviation: sup,
        histogram: histogram(values, HISTOGRAM_BINS),
    })
}

/// [`empirical_report_values`] for an alpha sequence.
pub fn empirical_report(seq: &AlphaSequence, grid: &[IntervalQuery]) -> Result<EmpiricalReport> {
    empirical_report_values(&seq.alpha, seq.g, grid)
}
