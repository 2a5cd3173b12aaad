//! Kloosterman sums `K_{p^n}(a) = sum_{x != 0} e(Tr(x + a/x) / p)` over
//! `F_{p^n}`, their angle, and the normalized sequence
//! `kappa_n = K_{p^n}(a) / (2 p^{n/2})`.
//!
//! With `K_p(a) = 2 sqrt(p) cos(phi)`, the sums over extensions satisfy
//! `K_{p^n}(a) = -(sigma^n + conj(sigma)^n)` where `sigma + conj(sigma) = -K_p(a)`
//! and `|sigma| = sqrt(p)`, so `kappa_n = (-1)^(n+1) cos(n phi)`.

use astro_float::BigFloat;
use num_bigint::BigInt;
use rayon::prelude::*;

use crate::classify::{find_integer_relation, RelationReport};
use crate::equidist::{empirical_report_values, EmpiricalReport, IntervalQuery};
use crate::error::{Error, Result};
use crate::ffield::{is_prime, make_field};
use crate::mp::{self, MpCtx, Turns};
use crate::zeta::FrobeniusAngles;

/// Largest field `F_{p^n}` summed over.
pub const MAX_KLOOSTERMAN_FIELD: u64 = 1 << 24;
/// Largest `N` for [`kappa_sequence`].
pub const MAX_KAPPA_N: usize = 10_000_000;
/// Decimal digits carried by the sum and the angle.
pub const KLOOSTERMAN_DIGITS: u32 = 50;
/// The imaginary part of a computed sum must vanish to this tolerance.
pub const IMAG_TOLERANCE: f64 = 1e-10;
/// Search parameters for the relation check on `phi / pi`.
pub const RELATION_BOUND: u32 = 50;
pub const RELATION_EPSILON: f64 = 1e-9;

const SWITCH_TO_ASIN: f64 = 0.99;
const CHUNK: u64 = 1 << 12;

fn working_ctx() -> MpCtx {
    MpCtx::new(mp::digits_to_bits(2 * KLOOSTERMAN_DIGITS))
}

fn reduce_parameter(p: u64, a: i64) -> Result<u64> {
    let r = a.rem_euclid(p as i64) as u64;
    if r == 0 {
        return Err(Error::ZeroParameter);
    }
    Ok(r)
}

/// `c[t] = #{x in F_{p^n}^* : Tr(x + a/x) = t}`.
pub fn trace_distribution(p: u64, n: usize, a: i64) -> Result<Vec<u64>> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if n == 0 {
        return Err(Error::InvalidArgument("extension degree must be >= 1".into()));
    }
    let a = reduce_parameter(p, a)?;
    let size = (p as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if size > MAX_KLOOSTERMAN_FIELD as u128 {
        return Err(Error::SizeExceeded(format!(
            "F_{p}^{n} exceeds {MAX_KLOOSTERMAN_FIELD} elements"
        )));
    }
    let field = make_field(p, n)?;
    let size = field.size();
    let ac = field.constant_raw(a);
    let chunks: Vec<u64> = (1..size).step_by(CHUNK as usize).collect();
    let counts = chunks
        .into_par_iter()
        .map(|start| -> Result<Vec<u64>> {
            let mut c = vec![0u64; p as usize];
            for idx in start..(start + CHUNK).min(size) {
                let x = field.from_index_raw(idx);
                let y = field.mul_raw(&ac, &field.inv_raw(&x)?);
                let t = field.trace_raw(&field.add_raw(&x, &y));
                c[t as usize] += 1;
            }
            Ok(c)
        })
        .try_reduce(
            || vec![0u64; p as usize],
            |mut acc, c| {
                for (x, y) in acc.iter_mut().zip(c) {
                    *x += y;
                }
                Ok(acc)
            },
        )?;
    Ok(counts)
}

/// A Kloosterman sum at high precision.
#[derive(Debug, Clone)]
pub struct KloostermanSum {
    pub p: u64,
    pub n: usize,
    pub a: u64,
    pub value: BigFloat,
    /// `|sum c_t sin(2 pi t / p)|`, discarded after the check.
    pub imaginary_part: f64,
    pub trace_counts: Vec<u64>,
}

impl KloostermanSum {
    pub fn value_f64(&self) -> f64 {
        mp::to_f64(&self.value)
    }
}

/// `K_{p^n}(a)` with `psi(t) = exp(2 pi i t / p)`, at 50 digits.
pub fn kloosterman_sum_mp(p: u64, n: usize, a: i64) -> Result<KloostermanSum> {
    let counts = trace_distribution(p, n, a)?;
    let mut ctx = working_ctx();
    let two_pi_over_p = {
        let pi = ctx.pi();
        ctx.div(&ctx.mul(&ctx.int(2), &pi), &ctx.int(p as i64))
    };
    let mut re = ctx.int(0);
    let mut im = ctx.int(0);
    for (t, c) in counts.iter().enumerate() {
        if *c == 0 {
            continue;
        }
        let arg = ctx.mul(&two_pi_over_p, &ctx.int(t as i64));
        let cf = ctx.int(*c as i64);
        let cs = ctx.cos(&arg);
        let sn = ctx.sin(&arg);
        re = ctx.add(&re, &ctx.mul(&cf, &cs));
        im = ctx.add(&im, &ctx.mul(&cf, &sn));
    }
    let imaginary_part = mp::to_f64(&im).abs();
    if imaginary_part > IMAG_TOLERANCE {
        return Err(Error::PrecisionInsufficient(format!(
            "imaginary part {imaginary_part:e} of K_{p}^{n} does not vanish"
        )));
    }
    // Weil: K^2 <= 4 p^n
    let bound = ctx.mul(&ctx.int(4), &ctx.from_bigint(&num_traits::pow(BigInt::from(p), n)));
    let sq = ctx.mul(&re, &re);
    let slack = ctx.pow10(-(KLOOSTERMAN_DIGITS as i32));
    if sq.cmp(&ctx.add(&bound, &slack)).is_some_and(|o| o > 0) {
        return Err(Error::WeilViolation(format!(
            "|K_{p}^{n}| = {} exceeds 2 p^(n/2)",
            mp::to_f64(&re).abs()
        )));
    }
    Ok(KloostermanSum {
        p,
        n,
        a: a.rem_euclid(p as i64) as u64,
        value: re,
        imaginary_part,
        trace_counts: counts,
    })
}

/// `K_{p^n}(a)` as a double.
pub fn kloosterman_sum(p: u64, n: usize, a: i64) -> Result<f64> {
    Ok(kloosterman_sum_mp(p, n, a)?.value_f64())
}

/// `arccos(x)` for `x` in `[-1, 1]`, through `asin(sqrt(1 - x^2))` when `|x|`
/// is close to 1.
fn arccos_stable(ctx: &mut MpCtx, x: &BigFloat) -> BigFloat {
    let xf = mp::to_f64(x);
    if xf.abs() <= SWITCH_TO_ASIN {
        return ctx.acos(x);
    }
    let one = ctx.int(1);
    let s = ctx.mul(&ctx.sub(&one, x), &ctx.add(&one, x));
    let s = if s.is_negative() { ctx.int(0) } else { s };
    let r = ctx.sqrt(&s);
    let small = ctx.asin(&r);
    if xf > 0.0 {
        small
    } else {
        let pi = ctx.pi();
        ctx.sub(&pi, &small)
    }
}

/// `K_p(a)` and its angle `phi = arccos(K / (2 sqrt p))` in `[0, pi]`.
#[derive(Debug, Clone)]
pub struct KloostermanData {
    pub p: u64,
    pub a: u64,
    pub k: BigFloat,
    pub phi: BigFloat,
    pub precision_digits: u32,
}

impl KloostermanData {
    pub fn new(p: u64, a: i64) -> Result<KloostermanData> {
        let sum = kloosterman_sum_mp(p, 1, a)?;
        let mut ctx = working_ctx();
        let pf = ctx.int(p as i64);
        let two_sqrt_p = ctx.mul(&ctx.int(2), &ctx.sqrt(&pf));
        let x = ctx.div(&sum.value, &two_sqrt_p);
        let phi = arccos_stable(&mut ctx, &x);
        Ok(KloostermanData {
            p,
            a: sum.a,
            k: sum.value,
            phi,
            precision_digits: KLOOSTERMAN_DIGITS,
        })
    }

    pub fn k_f64(&self) -> f64 {
        mp::to_f64(&self.k)
    }

    pub fn phi_f64(&self) -> f64 {
        mp::to_f64(&self.phi)
    }

    /// `phi / pi` as a one-angle set, for the relation search.
    pub fn angle_over_pi(&self) -> FrobeniusAngles {
        let mut ctx = working_ctx();
        let pi = ctx.pi();
        FrobeniusAngles::from_values(
            vec![ctx.div(&self.phi, &pi)],
            self.precision_digits,
            BigInt::from(self.p),
        )
    }
}

#[derive(Debug, Clone)]
pub struct KappaSequence {
    pub data: KloostermanData,
    /// `kappa_1, ..., kappa_N`.
    pub kappa: Vec<f64>,
}

/// `kappa_n = (-1)^(n+1) cos(n pi theta)` for `n = 1..N`, with the
/// multiples of `theta / 2` reduced exactly in fixed point.
pub fn kappa_from_angle(theta_over_pi: &BigFloat, bits: usize, n_max: usize) -> Result<Vec<f64>> {
    if n_max > MAX_KAPPA_N {
        return Err(Error::GuardExceeded(format!(
            "kappa sequence allows N <= {MAX_KAPPA_N}, got {n_max}"
        )));
    }
    // (-1)^(n+1) cos(n phi) = -cos(n (pi - phi)); track n (1 - theta) / 2
    let ctx = MpCtx::new(bits);
    let step = Turns::from_float(&ctx.div(&ctx.sub(&ctx.int(1), theta_over_pi), &ctx.int(2)));
    let mut acc = Turns::ZERO;
    let mut out = Vec::with_capacity(n_max);
    for _ in 0..n_max {
        acc = acc.wrapping_add(step);
        out.push((-(std::f64::consts::TAU * acc.to_f64()).cos()).clamp(-1.0, 1.0));
    }
    Ok(out)
}

/// The normalized sums `kappa_n` for `n = 1..N`.
pub fn kappa_sequence(p: u64, a: i64, n_max: usize) -> Result<KappaSequence> {
    if n_max > MAX_KAPPA_N {
        return Err(Error::GuardExceeded(format!(
            "kappa sequence allows N <= {MAX_KAPPA_N}, got {n_max}"
        )));
    }
    let data = KloostermanData::new(p, a)?;
    let theta = data.angle_over_pi();
    let kappa = kappa_from_angle(&theta.theta()[0], theta.working_bits(), n_max)?;
    Ok(KappaSequence { data, kappa })
}

#[derive(Debug, Clone)]
pub struct KappaReport {
    pub empirical: EmpiricalReport,
    pub relation: RelationReport,
    /// False when a relation was found: the sequence is then periodic and
    /// the arcsine law cannot hold.
    pub equidistribution_expected: bool,
}

fn report_from(kappa: &[f64], theta: &FrobeniusAngles, grid: &[IntervalQuery]) -> Result<KappaReport> {
    let empirical = empirical_report_values(kappa, 1, grid)?;
    let relation = find_integer_relation(theta, RELATION_BOUND, RELATION_EPSILON)?;
    Ok(KappaReport {
        equidistribution_expected: relation.found.is_none(),
        empirical,
        relation,
    })
}

/// Interval frequencies of `kappa_n` against the arcsine law, annotated
/// with the relation search on `phi / pi`.
pub fn kappa_distribution_report(
    p: u64,
    a: i64,
    n_max: usize,
    grid: &[IntervalQuery],
) -> Result<(KappaSequence, KappaReport)> {
    let seq = kappa_sequence(p, a, n_max)?;
    let report = report_from(&seq.kappa, &seq.data.angle_over_pi(), grid)?;
    Ok((seq, report))
}

/// The same report for a synthetic angle `phi / pi = theta`.
pub fn synthetic_kappa_report(theta: &FrobeniusAngles, n_max: usize, grid: &[IntervalQuery]) -> Result<KappaReport> {
    if theta.theta().len() != 1 {
        return Err(Error::InvalidArgument("expected exactly one angle".into()));
    }
    let kappa = kappa_from_angle(&theta.theta()[0], theta.working_bits(), n_max)?;
    report_from(&kappa, theta, grid)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equidist::default_grid;

    /// Direct enumeration in f64 with the naive trace `sum x^(p^j)`.
    fn naive(p: u64, n: usize, a: u64) -> f64 {
        let f = make_field(p, n).unwrap();
        let ac = f.constant_raw(a);
        let mut s = 0.0;
        for idx in 1..f.size() {
            let x = f.from_index_raw(idx);
            let z = f.add_raw(&x, &f.mul_raw(&ac, &f.pow_raw(&x, f.size() - 2)));
            let mut t = z.clone();
            let mut tr = z.clone();
            for _ in 1..n {
                t = f.pow_raw(&t, p);
                tr = f.add_raw(&tr, &t);
            }
            s += (std::f64::consts::TAU * tr[0] as f64 / p as f64).cos();
        }
        s
    }

    #[test]
    fn small_examples() {
        assert!((kloosterman_sum(3, 1, 1).unwrap() + 1.0).abs() < 1e-10);
        // enumeration over F_9 gives +5 = 2p - K_3(1)^2
        assert!((kloosterman_sum(3, 2, 1).unwrap() - 5.0).abs() < 1e-10);
        assert!((naive(3, 2, 1) - 5.0).abs() < 1e-9);
    }

    #[test]
    fn matches_naive_enumeration() {
        for (p, n) in [(3, 1), (3, 2), (3, 3), (5, 1), (5, 2), (7, 2), (2, 3), (11, 1)] {
            for a in 1..p {
                let k = kloosterman_sum(p, n, a as i64).unwrap();
                assert!((k - naive(p, n, a)).abs() < 1e-8, "p={p} n={n} a={a}");
            }
        }
    }

    #[test]
    fn tower_relation_and_weil() {
        for p in [3u64, 5, 7, 11, 13] {
            for a in 1..p as i64 {
                let k1 = kloosterman_sum(p, 1, a).unwrap();
                let k2 = kloosterman_sum(p, 2, a).unwrap();
                assert!((k2 - (2.0 * p as f64 - k1 * k1)).abs() < 1e-6);
                assert!(k1.abs() <= 2.0 * (p as f64).sqrt());
                assert!(k2.abs() <= 2.0 * p as f64);
            }
        }
    }

    #[test]
    fn errors() {
        assert_eq!(kloosterman_sum(5, 1, 10).unwrap_err(), Error::ZeroParameter);
        assert_eq!(kloosterman_sum(6, 1, 1).unwrap_err(), Error::NotPrime(6));
        assert!(matches!(kloosterman_sum(3, 16, 1), Err(Error::SizeExceeded(_))));
    }

    #[test]
    fn kappa_examples() {
        let s = kappa_sequence(3, 1, 4).unwrap();
        assert!((s.kappa[0] + 1.0 / (2.0 * 3f64.sqrt())).abs() < 1e-12);
        // K_9(1) = 5, so kappa_2 = 5/6
        assert!((s.kappa[1] - 5.0 / 6.0).abs() < 1e-12);
        assert!(s.kappa.iter().all(|k| (-1.0..=1.0).contains(k)));
        let c = s.data.phi_f64().cos();
        assert!((2.0 * 3f64.sqrt() * c - s.data.k_f64()).abs() < 1e-14);
    }

    #[test]
    fn kappa_matches_sums_over_extensions() {
        for (p, a, n_max) in [(3u64, 1i64, 8usize), (3, 2, 6), (5, 2, 5), (7, 3, 4), (11, 1, 3), (13, 5, 3)] {
            let s = kappa_sequence(p, a, n_max).unwrap();
            for n in 1..=n_max {
                let k = kloosterman_sum(p, n, a).unwrap();
                let scaled = 2.0 * (p as f64).powf(n as f64 / 2.0) * s.kappa[n - 1];
                assert!((k - scaled).abs() < 1e-6, "p={p} a={a} n={n}: {k} vs {scaled}");
            }
        }
    }

    #[test]
    fn angle_near_the_ends_uses_the_stable_branch() {
        // the round trip 2 sqrt(p) cos(phi) = K must hold on both branches
        for a in 1..13 {
            let d = KloostermanData::new(13, a).unwrap();
            let mut ctx = working_ctx();
            let c = ctx.cos(&d.phi);
            let back = ctx.mul(&ctx.mul(&ctx.int(2), &ctx.sqrt(&ctx.int(13))), &c);
            let err = mp::to_f64(&ctx.sub(&back, &d.k)).abs();
            assert!(err < 1e-40, "a={a}: {err:e}");
        }
    }

    #[test]
    fn stable_arccos_branch() {
        let mut ctx = working_ctx();
        for x in ["0.995", "-0.995", "0.99999999", "-1", "1", "0.3"] {
            let v = BigFloat::parse(x, astro_float::Radix::Dec, ctx.bits(), mp::RM, &mut astro_float::Consts::new().unwrap());
            let a = arccos_stable(&mut ctx, &v);
            let back = ctx.cos(&a);
            assert!(mp::to_f64(&ctx.sub(&back, &v)).abs() < 1e-60, "{x}");
        }
    }

    #[test]
    fn full_range_grid() {
        let (_, r) = kappa_distribution_report(11, 1, 500, &[IntervalQuery::new(-1.0, 1.0).unwrap()]).unwrap();
        assert_eq!(r.empirical.rows[0].frequency, 1.0);
        assert_eq!(r.empirical.rows[0].lambda, 1.0);
        assert_eq!(r.empirical.sup_deviation, 0.0);
    }

    #[test]
    fn planted_third_is_flagged() {
        let ctx = MpCtx::new(384);
        let th = FrobeniusAngles::from_values(vec![ctx.ratio(1, 3)], 50, BigInt::from(11));
        let r = synthetic_kappa_report(&th, 600, &default_grid(21).unwrap()).unwrap();
        assert!(r.relation.found.is_some());
        assert!(!r.equidistribution_expected);
        assert!(r.empirical.sup_deviation > 0.1);
    }
}
