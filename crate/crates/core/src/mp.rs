//! Multiprecision helpers on top of `astro-float`, plus a 256-bit
//! fixed-point "turns" type used wherever angles are multiplied by large
//! integers and reduced modulo one.

use astro_float::{BigFloat, Consts, Radix, RoundingMode, Sign};
use num_bigint::{BigInt, BigUint, Sign as IntSign};
use num_traits::Zero;

pub const RM: RoundingMode = RoundingMode::ToEven;

/// Bits needed to carry `digits` decimal digits, rounded up to whole words.
pub fn digits_to_bits(digits: u32) -> usize {
    let raw = (digits as f64 * std::f64::consts::LOG2_10).ceil() as usize;
    raw.div_ceil(64) * 64
}

/// Working precision plus a constants cache.
pub struct MpCtx {
    bits: usize,
    cc: Consts,
}

impl std::fmt::Debug for MpCtx {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("MpCtx").field("bits", &self.bits).finish()
    }
}

impl MpCtx {
    pub fn new(bits: usize) -> Self {
        let bits = bits.max(64).div_ceil(64) * 64;
        MpCtx {
            bits,
            cc: Consts::new().expect("astro-float constants cache"),
        }
    }

    pub fn with_digits(digits: u32) -> Self {
        Self::new(digits_to_bits(digits))
    }

    pub fn bits(&self) -> usize {
        self.bits
    }

    pub fn int(&self, i: i64) -> BigFloat {
        BigFloat::from_i64(i, self.bits)
    }

    pub fn from_f64(&self, x: f64) -> BigFloat {
        BigFloat::from_f64(x, self.bits)
    }

    pub fn from_bigint(&self, n: &BigInt) -> BigFloat {
        bigint_to_float(n, self.bits)
    }

    pub fn ratio(&self, num: i64, den: i64) -> BigFloat {
        self.div(&self.int(num), &self.int(den))
    }

    pub fn add(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.add(b, self.bits, RM)
    }

    pub fn sub(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.sub(b, self.bits, RM)
    }

    pub fn mul(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.mul(b, self.bits, RM)
    }

    pub fn div(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.div(b, self.bits, RM)
    }

    pub fn sqrt(&self, a: &BigFloat) -> BigFloat {
        a.sqrt(self.bits, RM)
    }

    pub fn pi(&mut self) -> BigFloat {
        self.cc.pi(self.bits, RM)
    }

    pub fn cos(&mut self, a: &BigFloat) -> BigFloat {
        a.cos(self.bits, RM, &mut self.cc)
    }

    pub fn sin(&mut self, a: &BigFloat) -> BigFloat {
        a.sin(self.bits, RM, &mut self.cc)
    }

    pub fn acos(&mut self, a: &BigFloat) -> BigFloat {
        a.acos(self.bits, RM, &mut self.cc)
    }

    pub fn asin(&mut self, a: &BigFloat) -> BigFloat {
        a.asin(self.bits, RM, &mut self.cc)
    }

    pub fn ln(&mut self, a: &BigFloat) -> BigFloat {
        a.ln(self.bits, RM, &mut self.cc)
    }

    pub fn atan(&mut self, a: &BigFloat) -> BigFloat {
        a.atan(self.bits, RM, &mut self.cc)
    }

    pub fn exp(&mut self, a: &BigFloat) -> BigFloat {
        a.exp(self.bits, RM, &mut self.cc)
    }

    /// `10^k`, correctly rounded.
    pub fn pow10(&mut self, k: i32) -> BigFloat {
        BigFloat::parse(&format!("1e{k}"), Radix::Dec, self.bits, RM, &mut self.cc)
    }

    /// Argument of `x + iy` in `(-pi, pi]`.
    pub fn atan2(&mut self, y: &BigFloat, x: &BigFloat) -> BigFloat {
        let pi = self.pi();
        if x.is_zero() {
            if y.is_zero() {
                return self.int(0);
            }
            let half = self.div(&pi, &self.int(2));
            return if y.is_negative() { half.neg() } else { half };
        }
        let base = self.div(y, x).atan(self.bits, RM, &mut self.cc);
        if x.is_positive() {
            base
        } else if y.is_negative() {
            self.sub(&base, &pi)
        } else {
            self.add(&base, &pi)
        }
    }

    /// Decimal rendering (scientific notation).
    pub fn to_decimal(&mut self, a: &BigFloat) -> String {
        a.format(Radix::Dec, RM, &mut self.cc)
            .unwrap_or_else(|_| "NaN".to_string())
    }
}

pub fn bigint_to_float(n: &BigInt, bits: usize) -> BigFloat {
    let (sign, mag) = n.to_u64_digits();
    if mag.is_empty() {
        return BigFloat::from_i64(0, bits);
    }
    let s = if sign == IntSign::Minus { Sign::Neg } else { Sign::Pos };
    let e = (mag.len() * 64) as i32;
    let mut x = BigFloat::from_words(&mag, s, e);
    if mag.len() * 64 > bits {
        x = x.add(&BigFloat::from_i64(0, bits), bits, RM);
    }
    x
}

/// Nearest f64 to a (finite) big float.
pub fn to_f64(x: &BigFloat) -> f64 {
    let Some((words, _, sign, exp, _)) = x.as_raw_parts() else {
        return f64::NAN;
    };
    let len = words.len();
    if len == 0 || words.iter().all(|w| *w == 0) {
        return 0.0;
    }
    let hi = words[len - 1] as f64;
    let lo = if len >= 2 { words[len - 2] as f64 } else { 0.0 };
    let frac = (hi + lo / 18446744073709551616.0) / 18446744073709551616.0;
    let mut v = frac;
    // scale by 2^exp in bounded steps to avoid premature overflow of powi
    let mut e = exp as i64;
    while e > 1000 {
        v *= 2f64.powi(1000);
        e -= 1000;
    }
    while e < -1000 {
        v *= 2f64.powi(-1000);
        e += 1000;
    }
    v *= 2f64.powi(e as i32);
    if sign == Sign::Neg {
        -v
    } else {
        v
    }
}

/// `|x|`, without the constants cache.
pub fn abs(x: &BigFloat) -> BigFloat {
    x.abs()
}

/// A fraction of a full turn, `value / 2^256`, with wrapping arithmetic
/// (i.e. arithmetic in R/Z).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Turns([u64; 4]);

impl Turns {
    pub const ZERO: Turns = Turns([0; 4]);

    /// `x mod 1` rounded down to a multiple of `2^-256`.
    pub fn from_float(x: &BigFloat) -> Turns {
        let Some((words, _, sign, exp, _)) = x.as_raw_parts() else {
            return Turns::ZERO;
        };
        if words.iter().all(|w| *w == 0) {
            return Turns::ZERO;
        }
        let m = BigUint::from_slice(
            &words
                .iter()
                .flat_map(|w| [*w as u32, (*w >> 32) as u32])
                .collect::<Vec<_>>(),
        );
        let shift = exp as i64 - (words.len() * 64) as i64 + 256;
        let scaled = if shift >= 0 {
            m << (shift as usize)
        } else {
            m >> ((-shift) as usize)
        };
        let t = Turns::from_biguint_low(&scaled);
        if sign == Sign::Neg {
            t.neg()
        } else {
            t
        }
    }

    pub fn from_f64(x: f64) -> Turns {
        Turns::from_float(&BigFloat::from_f64(x, 128))
    }

    fn from_biguint_low(n: &BigUint) -> Turns {
        let digits = n.to_u64_digits();
        let mut w = [0u64; 4];
        for (i, d) in digits.iter().take(4).enumerate() {
            w[i] = *d;
        }
        Turns(w)
    }

    pub fn wrapping_add(self, o: Turns) -> Turns {
        let mut out = [0u64; 4];
        let mut carry = false;
        for i in 0..4 {
            let (s1, c1) = self.0[i].overflowing_add(o.0[i]);
            let (s2, c2) = s1.overflowing_add(carry as u64);
            out[i] = s2;
            carry = c1 || c2;
        }
        Turns(out)
    }

    pub fn neg(self) -> Turns {
        let mut inv = [0u64; 4];
        for i in 0..4 {
            inv[i] = !self.0[i];
        }
        Turns(inv).wrapping_add(Turns([1, 0, 0, 0]))
    }

    pub fn wrapping_sub(self, o: Turns) -> Turns {
        self.wrapping_add(o.neg())
    }

    /// `k * self mod 1`.
    pub fn mul_int(self, k: i64) -> Turns {
        let m = k.unsigned_abs();
        let mut out = [0u64; 4];
        let mut carry: u128 = 0;
        for i in 0..4 {
            let prod = self.0[i] as u128 * m as u128 + carry;
            out[i] = prod as u64;
            carry = prod >> 64;
        }
        let t = Turns(out);
        if k < 0 {
            t.neg()
        } else {
            t
        }
    }

    /// Value in `[0, 1)`.
    pub fn to_f64(self) -> f64 {
        let hi = self.0[3] as f64;
        let lo = self.0[2] as f64;
        let v = (hi + lo / 18446744073709551616.0) / 18446744073709551616.0;
        if v >= 1.0 {
            0.0
        } else {
            v
        }
    }

    /// Distance to the nearest integer, in `[0, 1/2]`.
    pub fn dist_to_int(self) -> f64 {
        if self.0[3] >> 63 == 1 {
            self.neg().to_f64()
        } else {
            self.to_f64()
        }
    }

    pub fn is_zero(self) -> bool {
        self.0.iter().all(|w| *w == 0)
    }

    /// Exact value as an integer numerator over `2^256`.
    pub fn numerator(self) -> BigUint {
        let mut n = BigUint::zero();
        for w in self.0.iter().rev() {
            n = (n << 64u32) + BigUint::from(*w);
        }
        n
    }
}

/// `floor(x)` as an exact integer.
pub fn floor_to_bigint(x: &BigFloat) -> Option<BigInt> {
    let (words, _, sign, exp, _) = x.as_raw_parts()?;
    let m = BigUint::from_slice(
        &words
            .iter()
            .flat_map(|w| [*w as u32, (*w >> 32) as u32])
            .collect::<Vec<_>>(),
    );
    let shift = exp as i64 - 64 * words.len() as i64;
    let (int, exact) = if shift >= 0 {
        (m << shift as usize, true)
    } else {
        let s = (-shift) as usize;
        let q = &m >> s;
        let exact = (&q << s) == m;
        (q, exact)
    };
    let int = BigInt::from(int);
    Some(match (sign, exact) {
        (Sign::Neg, true) => -int,
        (Sign::Neg, false) => -int - 1,
        _ => int,
    })
}

/// `x` rounded half-up to `places` digits after the decimal point, written
/// without an exponent. `x` must be finite; `bits` should comfortably
/// exceed the requested precision.
pub fn fixed_decimal(x: &BigFloat, places: u32, bits: usize) -> String {
    let mut ctx = MpCtx::new(bits);
    let scale = ctx.pow10(places as i32);
    let scaled = ctx.mul(x, &scale);
    let half = ctx.ratio(1, 2);
    let n = floor_to_bigint(&ctx.add(&scaled, &half)).unwrap_or_default();
    let neg = n.sign() == IntSign::Minus;
    let digits = n.magnitude().to_string();
    let places = places as usize;
    let digits = if digits.len() <= places {
        format!("{}{}", "0".repeat(places + 1 - digits.len()), digits)
    } else {
        digits
    };
    let (int, frac) = digits.split_at(digits.len() - places);
    let sign = if neg { "-" } else { "" };
    if places == 0 {
        format!("{sign}{int}")
    } else {
        format!("{sign}{int}.{frac}")
    }
}
