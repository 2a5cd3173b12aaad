//! All complex roots of a small-degree integer polynomial at arbitrary
//! precision.
//!
//! The polynomial is first split into squarefree factors with Yun's
//! algorithm over `Q` (exact), so the simultaneous iteration only ever sees
//! simple roots. Each factor is then solved by Aberth–Ehrlich iteration
//! started from equispaced points on a caller-supplied circle.

use astro_float::BigFloat;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::mp::MpCtx;

pub const MAX_ITERATIONS: usize = 500;

#[derive(Debug, Clone)]
pub struct MpComplex {
    pub re: BigFloat,
    pub im: BigFloat,
}

impl MpComplex {
    pub fn new(re: BigFloat, im: BigFloat) -> Self {
        MpComplex { re, im }
    }

    fn add(&self, o: &Self, c: &MpCtx) -> Self {
        MpComplex::new(c.add(&self.re, &o.re), c.add(&self.im, &o.im))
    }

    fn sub(&self, o: &Self, c: &MpCtx) -> Self {
        MpComplex::new(c.sub(&self.re, &o.re), c.sub(&self.im, &o.im))
    }

    fn mul(&self, o: &Self, c: &MpCtx) -> Self {
        let re = c.sub(&c.mul(&self.re, &o.re), &c.mul(&self.im, &o.im));
        let im = c.add(&c.mul(&self.re, &o.im), &c.mul(&self.im, &o.re));
        MpComplex::new(re, im)
    }

    fn div(&self, o: &Self, c: &MpCtx) -> Self {
        let den = c.add(&c.mul(&o.re, &o.re), &c.mul(&o.im, &o.im));
        let re = c.add(&c.mul(&self.re, &o.re), &c.mul(&self.im, &o.im));
        let im = c.sub(&c.mul(&self.im, &o.re), &c.mul(&self.re, &o.im));
        MpComplex::new(c.div(&re, &den), c.div(&im, &den))
    }

    /// `|z|`.
    pub fn abs(&self, c: &MpCtx) -> BigFloat {
        c.sqrt(&self.norm_sqr(c))
    }

    pub fn norm_sqr(&self, c: &MpCtx) -> BigFloat {
        c.add(&c.mul(&self.re, &self.re), &c.mul(&self.im, &self.im))
    }
}

/// A root together with its multiplicity in the input polynomial.
#[derive(Debug, Clone)]
pub struct Root {
    pub value: MpComplex,
    pub multiplicity: usize,
}

type QPoly = Vec<BigRational>;

fn q_trim(a: &mut QPoly) {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
}

fn q_deriv(a: &QPoly) -> QPoly {
    let mut d: QPoly = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
        .collect();
    q_trim(&mut d);
    d
}

fn q_divmod(a: &QPoly, b: &QPoly) -> (QPoly, QPoly) {
    let mut r = a.clone();
    q_trim(&mut r);
    let db = b.len() - 1;
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let mut q = vec![BigRational::zero(); r.len() - db];
    while r.len() > db && !r.is_empty() {
        let shift = r.len() - 1 - db;
        let c = r.last().unwrap() / b.last().unwrap();
        for (i, bi) in b.iter().enumerate() {
            r[shift + i] = &r[shift + i] - &c * bi;
        }
        q[shift] = c;
        r.pop();
        q_trim(&mut r);
    }
    q_trim(&mut q);
    (q, r)
}

fn q_monic(mut a: QPoly) -> QPoly {
    if let Some(l) = a.last().cloned() {
        for c in a.iter_mut() {
            *c = &*c / &l;
        }
    }
    a
}

fn q_gcd(a: &QPoly, b: &QPoly) -> QPoly {
    let mut x = a.clone();
    let mut y = b.clone();
    q_trim(&mut x);
    q_trim(&mut y);
    while !y.is_empty() {
        let (_, r) = q_divmod(&x, &y);
        x = y;
        y = r;
    }
    q_monic(x)
}

fn q_sub(a: &QPoly, b: &QPoly) -> QPoly {
    let n = a.len().max(b.len());
    let mut out: QPoly = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(BigRational::zero);
            let y = b.get(i).cloned().unwrap_or_else(BigRational::zero);
            x - y
        })
        .collect();
    q_trim(&mut out);
    out
}

/// Yun's squarefree decomposition: `f = lc * prod a_i^i`, returned as
/// `(a_i, i)` with each `a_i` monic, squarefree and of positive degree.
pub fn squarefree_decomposition(f: &[BigInt]) -> Vec<(Vec<BigRational>, usize)> {
    let mut fq: QPoly = f.iter().cloned().map(BigRational::from_integer).collect();
    q_trim(&mut fq);
    let fq = q_monic(fq);
    let mut out = Vec::new();
    if fq.len() <= 1 {
        return out;
    }
    let fd = q_deriv(&fq);
    let a0 = q_gcd(&fq, &fd);
    let mut b = q_divmod(&fq, &a0).0;
    let c = q_divmod(&fd, &a0).0;
    let mut d = q_sub(&c, &q_deriv(&b));
    let mut i = 1;
    while b.len() > 1 {
        let a = q_gcd(&b, &d);
        let nb = q_divmod(&b, &a).0;
        let nc = q_divmod(&d, &a).0;
        if a.len() > 1 {
            out.push((a, i));
        }
        d = q_sub(&nc, &q_deriv(&nb));
        b = nb;
        i += 1;
    }
    out
}

fn rational_to_float(r: &BigRational, ctx: &MpCtx) -> BigFloat {
    ctx.div(&ctx.from_bigint(r.numer()), &ctx.from_bigint(r.denom()))
}

/// Horner evaluation of `p` and `p'` at `z`.
fn eval_with_derivative(coeffs: &[BigFloat], z: &MpComplex, ctx: &MpCtx) -> (MpComplex, MpComplex) {
    let zero = ctx.int(0);
    let mut val = MpComplex::new(coeffs.last().unwrap().clone(), zero.clone());
    let mut der = MpComplex::new(zero.clone(), zero.clone());
    for c in coeffs.iter().rev().skip(1) {
        der = der.mul(z, ctx).add(&val, ctx);
        val = val.mul(z, ctx).add(&MpComplex::new(c.clone(), zero.clone()), ctx);
    }
    (val, der)
}

/// Simple roots of a squarefree polynomial with real coefficients, by
/// Aberth–Ehrlich iteration (Gauss–Seidel updates).
fn aberth(coeffs: &[BigFloat], radius: &BigFloat, ctx: &mut MpCtx) -> Result<Vec<MpComplex>> {
    let deg = coeffs.len() - 1;
    if deg == 1 {
        let r = ctx.div(&coeffs[0], &coeffs[1]).neg();
        return Ok(vec![MpComplex::new(r, ctx.int(0))]);
    }
    let pi = ctx.pi();
    // equispaced on the circle, rotated off the real axis
    let mut z: Vec<MpComplex> = (0..deg)
        .map(|j| {
            let t = ctx.div(
                &ctx.mul(&pi, &ctx.from_f64(2.0 * j as f64 + 0.5)),
                &ctx.int(deg as i64),
            );
            let (c, s) = (ctx.cos(&t), ctx.sin(&t));
            MpComplex::new(ctx.mul(&c, radius), ctx.mul(&s, radius))
        })
        .collect();
    let one = MpComplex::new(ctx.int(1), ctx.int(0));
    let bits = ctx.bits() as i32;
    // 2^-(bits - 16)
    let mut target = ctx.int(1);
    target.set_exponent(-(bits - 16) + 1);
    let mut settled = 0;
    for _ in 0..MAX_ITERATIONS {
        let mut max_rel = ctx.int(0);
        for k in 0..deg {
            let (val, der) = eval_with_derivative(coeffs, &z[k], ctx);
            if val.re.is_zero() && val.im.is_zero() {
                continue;
            }
            let ratio = val.div(&der, ctx);
            let mut sum = MpComplex::new(ctx.int(0), ctx.int(0));
            for j in 0..deg {
                if j != k {
                    sum = sum.add(&one.div(&z[k].sub(&z[j], ctx), ctx), ctx);
                }
            }
            let w = ratio.div(&one.sub(&ratio.mul(&sum, ctx), ctx), ctx);
            let rel = ctx.div(&w.abs(ctx), radius);
            if rel.cmp(&max_rel).is_some_and(|o| o > 0) {
                max_rel = rel;
            }
            z[k] = z[k].sub(&w, ctx);
        }
        if max_rel.cmp(&target).is_some_and(|o| o <= 0) {
            settled += 1;
            // two polishing sweeps after the step size drops below target
            if settled >= 2 {
                return Ok(z);
            }
        }
    }
    Err(Error::NoConvergence(MAX_ITERATIONS))
}

/// All roots of the integer polynomial `f` (ascending coefficients) with
/// multiplicities, starting simultaneous iteration on the circle of the
/// given radius.
pub fn polynomial_roots(f: &[BigInt], radius: &BigFloat, ctx: &mut MpCtx) -> Result<Vec<Root>> {
    if f.iter().all(|c| c.is_zero()) {
        return Err(Error::InvalidArgument("zero polynomial".into()));
    }
    let mut out = Vec::new();
    for (factor, mult) in squarefree_decomposition(f) {
        let coeffs: Vec<BigFloat> = factor.iter().map(|c| rational_to_float(c, ctx)).collect();
        for value in aberth(&coeffs, radius, ctx)? {
            out.push(Root {
                value,
                multiplicity: mult,
            });
        }
    }
    Ok(out)
}
