use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Positive divisors of `|n|`, `n != 0`, by trial division.
fn divisors(n: &BigInt) -> Result<Vec<BigInt>> {
    let mut m = n
        .abs()
        .to_u128()
        .ok_or_else(|| Error::SizeExceeded(format!("coefficient {n} too large to factor")))?;
    let mut factors: Vec<(u128, u32)> = Vec::new();
    let mut d = 2u128;
    while d * d <= m {
        if m % d == 0 {
            let mut e = 0;
            while m % d == 0 {
                m /= d;
                e += 1;
            }
            factors.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if m > 1 {
        factors.push((m, 1));
    }
    let mut divs = vec![BigInt::one()];
    for (p, e) in factors {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut pk = BigInt::one();
            for _ in 0..=e {
                next.push(d * &pk);
                pk *= p;
            }
        }
        divs = next;
    }
    divs.sort();
    Ok(divs)
}

/// `sum c_i num^i den^(n-i)`, zero iff `num/den` is a root.
fn eval_homogeneous(c: &[BigInt], num: &BigInt, den: &BigInt) -> BigInt {
    let n = c.len() - 1;
    let mut acc = BigInt::zero();
    let mut np = BigInt::one();
    for (i, ci) in c.iter().enumerate() {
        acc += ci * &np * num_traits::pow(den.clone(), n - i);
        np *= num;
    }
    acc
}

fn has_rational_root(c: &[BigInt]) -> Result<bool> {
    if c[0].is_zero() {
        return Ok(true);
    }
    let lead = c.last().expect("nonempty");
    let nums = divisors(&c[0])?;
    let dens = divisors(lead)?;
    for d in &dens {
        for r in &nums {
            if !r.gcd(d).is_one() {
                continue;
            }
            if eval_homogeneous(c, r, d).is_zero() || eval_homogeneous(c, &-r, d).is_zero() {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// Does the quartic `c_0 + ... + c_4 T^4` split as a product of two
/// integer quadratics?
fn splits_into_quadratics(c: &[BigInt]) -> Result<bool> {
    let zero = BigInt::zero();
    // (a0 + a1 T + a2 T^2)(b0 + b1 T + b2 T^2); fix a2 > 0
    for a2 in divisors(&c[4])? {
        let b2 = &c[4] / &a2;
        for a0_abs in divisors(&c[0])? {
            for a0 in [a0_abs.clone(), -a0_abs] {
                let b0 = &c[0] / &a0;
                // from T^3: b1 = (c3 - a1 b2) / a2; substituting into T^2 gives
                //   b2 a1^2 - c3 a1 + a2 (c2 - a0 b2 - a2 b0) = 0
                let qa = b2.clone();
                let qb = -&c[3];
                let qc = &a2 * (&c[2] - &a0 * &b2 - &a2 * &b0);
                let mut candidates = Vec::new();
                if qa.is_zero() {
                    continue;
                }
                let disc = &qb * &qb - BigInt::from(4) * &qa * &qc;
                if disc < zero {
                    continue;
                }
                let r = disc.sqrt();
                if &r * &r != disc {
                    continue;
                }
                for root_num in [-&qb + &r, -&qb - &r] {
                    let den = BigInt::from(2) * &qa;
                    if root_num.is_multiple_of(&den) {
                        candidates.push(root_num / den);
                    }
                }
                for a1 in candidates {
                    let t = &c[3] - &a1 * &b2;
                    if !t.is_multiple_of(&a2) {
                        continue;
                    }
                    let b1 = t / &a2;
                    if &a0 * &b1 + &a1 * &b0 == c[1]
                        && &a0 * &b2 + &a1 * &b1 + &a2 * &b0 == c[2]
                    {
                        return Ok(true);
                    }
                }
            }
        }
    }
    Ok(false)
}

/// Irreducibility over the integers of the primitive part of a polynomial
/// of degree 1 to 4 (coefficients ascending).
pub fn is_irreducible_over_z(poly: &[BigInt]) -> Result<bool> {
    let mut c: Vec<BigInt> = poly.to_vec();
    while c.last().is_some_and(|x| x.is_zero()) {
        c.pop();
    }
    let deg = c.len().saturating_sub(1);
    if !(1..=4).contains(&deg) {
        return Err(Error::DegreeOutOfRange(deg));
    }
    let content = c.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    for x in c.iter_mut() {
        *x /= &content;
    }
    if c[deg].is_negative() {
        for x in c.iter_mut() {
            *x = -&*x;
        }
    }
    if deg == 1 {
        return Ok(true);
    }
    if has_rational_root(&c)? {
        return Ok(false);
    }
    if deg <= 3 {
        return Ok(true);
    }
    Ok(!splits_into_quadratics(&c)?)
}
