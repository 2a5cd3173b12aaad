//! Zeta numerators `P(T) = prod (1 - tau_j T)`, exact power sums
//! `s_n = sum tau_j^n`, numerators over extensions, Jacobian orders and
//! Frobenius angles.
//!
//! Coefficients are stored in the signed convention
//! `P(T) = sum_i (-1)^i e_i T^i`, so `e_i` is the `i`-th elementary
//! symmetric function of the eigenvalues.

pub mod roots;

use std::collections::VecDeque;

use astro_float::BigFloat;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::curves::CurveSpec;
use crate::error::{Error, Result};
use crate::mp::{self, MpCtx, Turns};

/// Maximum length accepted by [`extend_power_sums`].
pub const MAX_POWER_SUMS: usize = 1_000_000;

/// Integer coefficients `e_0..e_{2g}` of the zeta numerator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZetaNumerator {
    g: usize,
    q: BigInt,
    e: Vec<BigInt>,
}

impl ZetaNumerator {
    /// Checks `e_0 = 1`, the length, and the functional equation
    /// `e_{2g-i} = q^{g-i} e_i`.
    pub fn new(g: usize, q: BigInt, e: Vec<BigInt>) -> Result<ZetaNumerator> {
        if g == 0 {
            return Err(Error::InvalidArgument("genus must be >= 1".into()));
        }
        if q < BigInt::from(2) {
            return Err(Error::InvalidArgument("q must be >= 2".into()));
        }
        if e.len() != 2 * g + 1 {
            return Err(Error::InvalidArgument(format!(
                "expected {} coefficients, got {}",
                2 * g + 1,
                e.len()
            )));
        }
        if !e[0].is_one() {
            return Err(Error::FunctionalEquation("e_0 must be 1".into()));
        }
        for i in 0..=g {
            let expected = &e[i] * num_traits::pow(q.clone(), g - i);
            if e[2 * g - i] != expected {
                return Err(Error::FunctionalEquation(format!(
                    "e_{} = {} but q^{} e_{} = {}",
                    2 * g - i,
                    e[2 * g - i],
                    g - i,
                    i,
                    expected
                )));
            }
        }
        Ok(ZetaNumerator { g, q, e })
    }

    /// Completes `e_0..e_g` through the functional equation.
    pub fn from_lower_half(g: usize, q: BigInt, lower: &[BigInt]) -> Result<ZetaNumerator> {
        if lower.len() != g + 1 {
            return Err(Error::InvalidArgument(format!(
                "expected {} lower coefficients",
                g + 1
            )));
        }
        let mut e = lower.to_vec();
        for i in (0..g).rev() {
            e.push(&lower[i] * num_traits::pow(q.clone(), g - i));
        }
        ZetaNumerator::new(g, q, e)
    }

    /// Convenience constructor from small integers `e_0..e_{2g}`.
    pub fn from_i64(g: usize, q: i64, e: &[i64]) -> Result<ZetaNumerator> {
        ZetaNumerator::new(g, BigInt::from(q), e.iter().map(|x| BigInt::from(*x)).collect())
    }

    pub fn g(&self) -> usize {
        self.g
    }

    pub fn q(&self) -> &BigInt {
        &self.q
    }

    /// `e_0..e_{2g}`.
    pub fn e(&self) -> &[BigInt] {
        &self.e
    }

    /// Coefficients of `P(T)` in ascending degree, `(-1)^i e_i`.
    pub fn coefficients(&self) -> Vec<BigInt> {
        self.e
            .iter()
            .enumerate()
            .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
            .collect()
    }

    /// Ascending coefficients of the eigenvalue polynomial
    /// `prod (T - tau_j) = sum_i (-1)^i e_i T^{2g-i}`.
    pub fn eigenvalue_polynomial(&self) -> Vec<BigInt> {
        let mut c = self.coefficients();
        c.reverse();
        c
    }

    /// `P(1)`.
    pub fn value_at_one(&self) -> BigInt {
        self.coefficients().iter().sum()
    }
}

impl std::fmt::Display for ZetaNumerator {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut out = String::new();
        for (i, c) in self.coefficients().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { " - " } else { " + " };
            if out.is_empty() {
                if c.is_negative() {
                    out.push('-');
                }
            } else {
                out.push_str(sign);
            }
            let a = c.abs();
            match i {
                0 => out.push_str(&a.to_string()),
                1 if a.is_one() => out.push('T'),
                1 => out.push_str(&format!("{a}T")),
                _ if a.is_one() => out.push_str(&format!("T^{i}")),
                _ => out.push_str(&format!("{a}T^{i}")),
            }
        }
        write!(f, "{out}")
    }
}

/// Exact power sums `s_1..s_N` of the Frobenius eigenvalues (`s_n = a_n`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerSums {
    g: usize,
    q: BigInt,
    s: Vec<BigInt>,
}

impl PowerSums {
    pub fn new(g: usize, q: BigInt, s: Vec<BigInt>) -> PowerSums {
        PowerSums { g, q, s }
    }

    pub fn g(&self) -> usize {
        self.g
    }

    pub fn q(&self) -> &BigInt {
        &self.q
    }

    /// `s_1..s_N` (index 0 holds `s_1`).
    pub fn values(&self) -> &[BigInt] {
        &self.s
    }

    /// `s_n`, 1-based.
    pub fn get(&self, n: usize) -> Option<&BigInt> {
        n.checked_sub(1).and_then(|i| self.s.get(i))
    }

    pub fn len(&self) -> usize {
        self.s.len()
    }

    pub fn is_empty(&self) -> bool {
        self.s.is_empty()
    }

    /// `#C(F_{q^n}) = q^n + 1 - s_n`.
    pub fn point_count(&self, n: usize) -> Option<BigInt> {
        self.get(n)
            .map(|s| num_traits::pow(self.q.clone(), n) + 1 - s)
    }

    /// First `n` (1-based) with `s_n^2 > 4 g^2 q^n`, if any.
    pub fn first_weil_violation(&self) -> Option<usize> {
        let four_g2 = BigInt::from(4 * self.g * self.g);
        let mut qn = BigInt::one();
        for (i, s) in self.s.iter().enumerate() {
            qn *= &self.q;
            if s * s > &four_g2 * &qn {
                return Some(i + 1);
            }
        }
        None
    }
}

fn weil_ok(s: &BigInt, g: usize, q: &BigInt, n: usize) -> bool {
    s * s <= BigInt::from(4 * g * g) * num_traits::pow(q.clone(), n)
}

/// `s_n = q^n + 1 - #C(F_{q^n})` for `n = 1..g`.
pub fn power_sums_from_counts(counts: &[u64], q: u64, g: usize) -> Result<PowerSums> {
    if counts.len() != g {
        return Err(Error::InvalidArgument(format!(
            "need exactly {g} point counts, got {}",
            counts.len()
        )));
    }
    let qb = BigInt::from(q);
    let mut s = Vec::with_capacity(g);
    for (i, c) in counts.iter().enumerate() {
        let n = i + 1;
        let sn = num_traits::pow(qb.clone(), n) + 1 - BigInt::from(*c);
        if !weil_ok(&sn, g, &qb, n) {
            return Err(Error::WeilViolation(format!(
                "|s_{n}| = |{sn}| exceeds 2g q^(n/2) (count {c})"
            )));
        }
        s.push(sn);
    }
    Ok(PowerSums::new(g, qb, s))
}

/// Newton's identities `k e_k = sum_{i=1}^k (-1)^{i-1} e_{k-i} s_i` for
/// `k = 1..=degree`, with exact division.
fn elementary_from_power_sums(s: &[BigInt], degree: usize) -> Result<Vec<BigInt>> {
    let mut e = vec![BigInt::one()];
    for k in 1..=degree {
        let mut acc = BigInt::zero();
        for i in 1..=k {
            let term = &e[k - i] * &s[i - 1];
            if i % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        let (quot, rem) = acc.div_rem(&BigInt::from(k));
        if !rem.is_zero() {
            return Err(Error::NonIntegerCoefficient(k));
        }
        e.push(quot);
    }
    Ok(e)
}

/// `e_1..e_g` by Newton's identities, completed with the functional
/// equation.
pub fn numerator_from_power_sums(ps: &PowerSums) -> Result<ZetaNumerator> {
    if ps.len() != ps.g {
        return Err(Error::InvalidArgument(format!(
            "need exactly g = {} power sums, got {}",
            ps.g,
            ps.len()
        )));
    }
    let lower = elementary_from_power_sums(&ps.s, ps.g)?;
    ZetaNumerator::from_lower_half(ps.g, ps.q.clone(), &lower)
}

/// Streaming exact power sums; holds only the last `2g` values.
#[derive(Debug, Clone)]
pub struct PowerSumIter {
    /// `(-1)^{i-1} e_i` for `i = 1..=2g`.
    rec: Vec<BigInt>,
    history: VecDeque<BigInt>,
    n: usize,
}

impl PowerSumIter {
    pub fn new(z: &ZetaNumerator) -> PowerSumIter {
        let rec = z.e[1..]
            .iter()
            .enumerate()
            .map(|(i, c)| if i % 2 == 0 { c.clone() } else { -c })
            .collect();
        PowerSumIter {
            rec,
            history: VecDeque::with_capacity(2 * z.g + 1),
            n: 0,
        }
    }
}

impl Iterator for PowerSumIter {
    type Item = BigInt;

    fn next(&mut self) -> Option<BigInt> {
        self.n += 1;
        let n = self.n;
        let deg = self.rec.len();
        // s_n = sum_{i=1}^{min(n-1, 2g)} (-1)^{i-1} e_i s_{n-i} + [n <= 2g] (-1)^{n-1} n e_n
        let mut acc = BigInt::zero();
        for (i, r) in self.rec.iter().enumerate().take((n - 1).min(deg)) {
            // history.back() is s_{n-1}
            let s = &self.history[self.history.len() - 1 - i];
            acc += r * s;
        }
        if n <= deg {
            acc += &self.rec[n - 1] * BigInt::from(n);
        }
        if self.history.len() == deg {
            self.history.pop_front();
        }
        self.history.push_back(acc.clone());
        Some(acc)
    }
}

/// `s_1..s_N` exactly.
pub fn extend_power_sums(z: &ZetaNumerator, n_max: usize) -> Result<PowerSums> {
    if n_max == 0 {
        return Err(Error::InvalidArgument("N must be >= 1".into()));
    }
    if n_max > MAX_POWER_SUMS {
        return Err(Error::GuardExceeded(format!(
            "N = {n_max} exceeds {MAX_POWER_SUMS}"
        )));
    }
    let s = PowerSumIter::new(z).take(n_max).collect();
    Ok(PowerSums::new(z.g, z.q.clone(), s))
}

/// `P_m(T) = prod (1 - tau_j^m T)`, the numerator over `F_{q^m}`.
pub fn pm_numerator(z: &ZetaNumerator, m: usize) -> Result<ZetaNumerator> {
    if m == 0 {
        return Err(Error::InvalidArgument("m must be >= 1".into()));
    }
    if m == 1 {
        return Ok(z.clone());
    }
    let g = z.g;
    let all: Vec<BigInt> = PowerSumIter::new(z).take(2 * g * m).collect();
    let sm: Vec<BigInt> = (1..=2 * g).map(|n| all[m * n - 1].clone()).collect();
    let e = elementary_from_power_sums(&sm, 2 * g)?;
    ZetaNumerator::new(g, num_traits::pow(z.q.clone(), m), e)
}

/// `#J_C(F_{q^n}) = P_n(1)`.
pub fn jacobian_order(z: &ZetaNumerator, n: usize) -> Result<BigInt> {
    Ok(pm_numerator(z, n)?.value_at_one())
}

/// Numerator of a curve from its point counts over `F_{q^n}`, `n = 1..g`.
pub fn numerator_for_curve(curve: &CurveSpec) -> Result<ZetaNumerator> {
    let g = curve.genus();
    let counts = (1..=g)
        .map(|n| curve.count_points(n))
        .collect::<Result<Vec<_>>>()?;
    numerator_from_power_sums(&power_sums_from_counts(&counts, curve.q(), g)?)
}

/// Frobenius angles `theta_1 <= ... <= theta_g` in `[0, 1]` with
/// `tau_j = sqrt(q) exp(+- i pi theta_j)`.
#[derive(Debug, Clone)]
pub struct FrobeniusAngles {
    theta: Vec<BigFloat>,
    precision_digits: u32,
    working_bits: usize,
    q: BigInt,
    g: usize,
    /// `max_j | |tau_j| - sqrt(q) |`, as measured at working precision.
    modulus_residual: f64,
    /// Largest relative deviation of the reconstructed `e_i`.
    reconstruction_error: f64,
}

impl FrobeniusAngles {
    /// Angles given directly (e.g. planted rationals in tests or the
    /// Kloosterman angle); `q` is informational.
    pub fn from_values(theta: Vec<BigFloat>, precision_digits: u32, q: BigInt) -> FrobeniusAngles {
        let g = theta.len();
        let working_bits = mp::digits_to_bits(precision_digits);
        FrobeniusAngles {
            theta,
            precision_digits,
            working_bits,
            q,
            g,
            modulus_residual: 0.0,
            reconstruction_error: 0.0,
        }
    }

    pub fn theta(&self) -> &[BigFloat] {
        &self.theta
    }

    pub fn theta_f64(&self) -> Vec<f64> {
        self.theta.iter().map(mp::to_f64).collect()
    }

    /// `theta_j` as fractions of a turn (exact to `2^-256`).
    pub fn theta_turns(&self) -> Vec<Turns> {
        self.theta.iter().map(Turns::from_float).collect()
    }

    pub fn precision_digits(&self) -> u32 {
        self.precision_digits
    }

    pub fn working_bits(&self) -> usize {
        self.working_bits
    }

    pub fn q(&self) -> &BigInt {
        &self.q
    }

    pub fn g(&self) -> usize {
        self.g
    }

    pub fn modulus_residual(&self) -> f64 {
        self.modulus_residual
    }

    pub fn reconstruction_error(&self) -> f64 {
        self.reconstruction_error
    }

    /// Expands `prod_j (T^2 - 2 sqrt(q) cos(pi theta_j) T + q)` and returns
    /// the signed coefficients `e_0..e_{2g}` as big floats.
    pub fn reconstruct(&self, ctx: &mut MpCtx) -> Vec<BigFloat> {
        let qf = ctx.from_bigint(&self.q);
        let sq = ctx.sqrt(&qf);
        let pi = ctx.pi();
        // descending-power coefficients of the monic product
        let mut poly = vec![ctx.int(1)];
        for th in &self.theta {
            let x = ctx.mul(&pi, th);
            let c = ctx.cos(&x);
            let lin = ctx.mul(&ctx.mul(&ctx.int(-2), &sq), &c);
            let factor = [ctx.int(1), lin, qf.clone()];
            let mut next = vec![ctx.int(0); poly.len() + 2];
            for (i, a) in poly.iter().enumerate() {
                for (j, b) in factor.iter().enumerate() {
                    next[i + j] = ctx.add(&next[i + j], &ctx.mul(a, b));
                }
            }
            poly = next;
        }
        poly.iter()
            .enumerate()
            .map(|(i, c)| if i % 2 == 1 { c.neg() } else { c.clone() })
            .collect()
    }
}

/// Finds the Frobenius angles at `digits` decimal digits (working
/// precision twice that).
pub fn frobenius_angles(z: &ZetaNumerator, digits: u32) -> Result<FrobeniusAngles> {
    if !(15..=200).contains(&digits) {
        return Err(Error::InvalidArgument(format!(
            "digits must lie in [15, 200], got {digits}"
        )));
    }
    let bits = mp::digits_to_bits(2 * digits) + 64;
    let mut ctx = MpCtx::new(bits);
    let qf = ctx.from_bigint(&z.q);
    let sq = ctx.sqrt(&qf);
    let found = roots::polynomial_roots(&z.eigenvalue_polynomial(), &sq, &mut ctx)?;

    let tol_modulus = ctx.pow10(-(digits as i32 - 3));
    let tol_imag = ctx.pow10(-(digits as i32));
    let tol_imag = ctx.mul(&tol_imag, &sq);
    let pi = ctx.pi();

    let mut worst = ctx.int(0);
    let mut upper = Vec::new();
    let mut lower_count = 0usize;
    let mut real_thetas = Vec::new();
    for r in &found {
        let dev = ctx.sub(&r.value.abs(&ctx), &sq).abs();
        if dev.cmp(&worst).is_some_and(|o| o > 0) {
            worst = dev.clone();
        }
        if dev.cmp(&tol_modulus).is_some_and(|o| o > 0) {
            return Err(Error::WeilViolation(format!(
                "root modulus deviates from sqrt(q) by {:e}",
                mp::to_f64(&dev)
            )));
        }
        if r.value.im.abs().cmp(&tol_imag).is_some_and(|o| o <= 0) {
            let th = if r.value.re.is_negative() { 1 } else { 0 };
            for _ in 0..r.multiplicity {
                real_thetas.push(th);
            }
        } else if r.value.im.is_positive() {
            let arg = ctx.atan2(&r.value.im, &r.value.re);
            let th = ctx.div(&arg, &pi);
            for _ in 0..r.multiplicity {
                upper.push(th.clone());
            }
        } else {
            lower_count += r.multiplicity;
        }
    }
    if upper.len() != lower_count || real_thetas.len() % 2 != 0 {
        return Err(Error::WeilViolation(
            "eigenvalues do not pair into conjugates".into(),
        ));
    }
    real_thetas.sort_unstable();
    let mut theta: Vec<BigFloat> = upper;
    theta.extend(real_thetas.iter().step_by(2).map(|t| ctx.int(*t)));
    theta.sort_by(|a, b| a.cmp(b).unwrap_or(0).cmp(&0));
    if theta.len() != z.g {
        return Err(Error::WeilViolation(format!(
            "found {} angles for genus {}",
            theta.len(),
            z.g
        )));
    }

    let mut angles = FrobeniusAngles {
        theta,
        precision_digits: digits,
        working_bits: bits,
        q: z.q.clone(),
        g: z.g,
        modulus_residual: mp::to_f64(&worst),
        reconstruction_error: 0.0,
    };
    let recon = angles.reconstruct(&mut ctx);
    let mut err = 0f64;
    for (r, e) in recon.iter().zip(&z.e) {
        let ef = ctx.from_bigint(e);
        let den = if e.is_zero() { ctx.int(1) } else { ef.abs() };
        let rel = mp::to_f64(&ctx.div(&ctx.sub(r, &ef), &den)).abs();
        err = err.max(rel);
    }
    angles.reconstruction_error = err;
    if err > 10f64.powi(-(digits as i32 - 5)) {
        return Err(Error::PrecisionInsufficient(format!(
            "angle reconstruction error {err:e} above 1e-{}",
            digits - 5
        )));
    }
    Ok(angles)
}

/// `a_n / (2 g q^{n/2})` for one exact power sum, via the log domain.
pub fn normalized_trace(s: &BigInt, n: usize, g: usize, ln_q_half: (f64, f64)) -> f64 {
    if s.is_zero() {
        return 0.0;
    }
    let mag = s.magnitude();
    let bits = mag.bits();
    let (top, shift) = if bits > 64 {
        ((mag >> (bits - 64)).to_u64().unwrap_or(u64::MAX), bits - 64)
    } else {
        (mag.to_u64().unwrap_or(0), 0)
    };
    // ln|s| - (n/2) ln q - ln(2g), grouping the two large terms in
    // double-double arithmetic
    let (l2_hi, l2_lo) = LN2_DD;
    let big = dd_sub(
        dd_mul_int(l2_hi, l2_lo, shift as i64),
        dd_mul_int(ln_q_half.0, ln_q_half.1, n as i64),
    );
    let exponent = big.0 + big.1 + (top as f64).ln() - ((2 * g) as f64).ln();
    let v = exponent.exp();
    if s.is_negative() {
        -v
    } else {
        v
    }
}

const LN2_DD: (f64, f64) = (std::f64::consts::LN_2, 2.319_046_813_846_299_6e-17);

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

fn dd_mul_int(hi: f64, lo: f64, k: i64) -> (f64, f64) {
    let kf = k as f64;
    let p = hi * kf;
    let e = hi.mul_add(kf, -p);
    two_sum(p, e + lo * kf)
}

fn dd_sub(a: (f64, f64), b: (f64, f64)) -> (f64, f64) {
    let (s, e) = two_sum(a.0, -b.0);
    two_sum(s, e + a.1 - b.1)
}

/// `ln(q)/2` as a double-double, computed at high precision.
pub fn half_log_dd(q: &BigInt) -> (f64, f64) {
    let mut ctx = MpCtx::new(192);
    let qf = ctx.from_bigint(q);
    let l = ctx.ln(&qf);
    let half = ctx.div(&l, &ctx.int(2));
    let hi = mp::to_f64(&half);
    let lo = mp::to_f64(&ctx.sub(&half, &ctx.from_f64(hi)));
    (hi, lo)
}
