//! Arithmetic in prime fields and their extensions `F_p[x]/(m(x))`.
//!
//! Elements are dense coefficient vectors in ascending degree. A field is
//! shared through an [`Arc`], so elements of the same field can be combined
//! cheaply and fields can be handed to worker threads.

use std::sync::Arc;

use crate::error::{Error, Result};

/// Upper bound on `p^k` for any field constructed here.
pub const MAX_FIELD_SIZE: u64 = 1 << 40;
/// Upper bound on `p^k` for full element enumeration.
pub const MAX_ENUMERATION: u64 = 1 << 28;

/// Polynomials over `F_p` as ascending coefficient vectors.
pub mod polyfp {
    pub fn trim(a: &mut Vec<u64>) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    pub fn degree(a: &[u64]) -> Option<usize> {
        a.iter().rposition(|c| *c != 0)
    }

    pub fn inv_mod(a: u64, p: u64) -> u64 {
        pow_mod(a, p - 2, p)
    }

    pub fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
        let mut acc = 1u64 % p;
        base %= p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = (acc as u128 * base as u128 % p as u128) as u64;
            }
            base = (base as u128 * base as u128 % p as u128) as u64;
            exp >>= 1;
        }
        acc
    }

    pub fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let n = a.len().max(b.len());
        let mut out: Vec<u64> = (0..n)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                (x + p - y) % p
            })
            .collect();
        trim(&mut out);
        out
    }

    pub fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u128; a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] += *x as u128 * *y as u128;
            }
        }
        let mut out: Vec<u64> = out.into_iter().map(|c| (c % p as u128) as u64).collect();
        trim(&mut out);
        out
    }

    /// Remainder of `a` modulo a nonzero `m`.
    pub fn rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        let mut r: Vec<u64> = a.to_vec();
        trim(&mut r);
        let dm = degree(m).expect("nonzero modulus");
        let lead_inv = inv_mod(m[dm], p);
        while let Some(dr) = degree(&r) {
            if dr < dm {
                break;
            }
            let c = (r[dr] as u128 * lead_inv as u128 % p as u128) as u64;
            let shift = dr - dm;
            for (i, mi) in m.iter().enumerate().take(dm + 1) {
                let t = (c as u128 * *mi as u128 % p as u128) as u64;
                r[shift + i] = (r[shift + i] + p - t) % p;
            }
            trim(&mut r);
        }
        r
    }

    /// Monic gcd.
    pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut x = a.to_vec();
        let mut y = b.to_vec();
        trim(&mut x);
        trim(&mut y);
        while !y.is_empty() {
            let r = rem(&x, &y, p);
            x = y;
            y = r;
        }
        if let Some(d) = degree(&x) {
            let inv = inv_mod(x[d], p);
            for c in x.iter_mut() {
                *c = (*c as u128 * inv as u128 % p as u128) as u64;
            }
        }
        x
    }

    pub fn derivative(a: &[u64], p: u64) -> Vec<u64> {
        let mut out: Vec<u64> = a
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| ((i as u64 % p) as u128 * *c as u128 % p as u128) as u64)
            .collect();
        trim(&mut out);
        out
    }

    pub fn eval(a: &[u64], x: u64, p: u64) -> u64 {
        a.iter()
            .rev()
            .fold(0u64, |acc, c| ((acc as u128 * x as u128 + *c as u128) % p as u128) as u64)
    }

    /// `base^exp mod m`.
    pub fn pow_rem(base: &[u64], mut exp: u64, m: &[u64], p: u64) -> Vec<u64> {
        let mut acc = vec![1u64];
        let mut b = rem(base, m, p);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = rem(&mul(&acc, &b, p), m, p);
            }
            b = rem(&mul(&b, &b, p), m, p);
            exp >>= 1;
        }
        acc
    }

    /// Ben-Or test: a monic `m` of degree `k` is irreducible iff
    /// `gcd(m, x^{p^i} - x) = 1` for `i = 1..=k/2`.
    pub fn is_irreducible(m: &[u64], p: u64) -> bool {
        let Some(k) = degree(m) else { return false };
        if k == 0 {
            return false;
        }
        if k == 1 {
            return true;
        }
        let x = vec![0u64, 1];
        let mut h = x.clone();
        for _ in 1..=k / 2 {
            h = pow_rem(&h, p, m, p);
            let g = gcd(m, &sub(&h, &x, p), p);
            if degree(&g) != Some(0) {
                return false;
            }
        }
        true
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

fn checked_size(p: u64, k: usize) -> Option<u64> {
    let mut size = 1u64;
    for _ in 0..k {
        size = size.checked_mul(p)?;
        if size > MAX_FIELD_SIZE {
            return None;
        }
    }
    Some(size)
}

/// The field `F_p[x]/(modulus)` of `p^k` elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldSpec {
    p: u64,
    k: usize,
    size: u64,
    /// Monic, ascending, length `k + 1`.
    modulus: Vec<u64>,
    /// `Tr(x^i)` for `i < k`.
    basis_traces: Vec<u64>,
}

pub type Field = Arc<FieldSpec>;

/// Builds `F_{p^k}` using the first monic irreducible polynomial of degree
/// `k` when the lower coefficients are read as base-`p` digits with the
/// constant term least significant.
pub fn make_field(p: u64, k: usize) -> Result<Field> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if k == 0 {
        return Err(Error::InvalidArgument("extension degree must be >= 1".into()));
    }
    let size = checked_size(p, k)
        .ok_or_else(|| Error::SizeExceeded(format!("{p}^{k} exceeds 2^40")))?;
    for idx in 0..size {
        let mut modulus = digits(idx, p, k);
        modulus.push(1);
        if polyfp::is_irreducible(&modulus, p) {
            return Ok(Arc::new(FieldSpec::build(p, k, size, modulus)));
        }
    }
    unreachable!("an irreducible polynomial of every degree exists over F_p")
}

fn digits(mut idx: u64, p: u64, k: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(k + 1);
    for _ in 0..k {
        out.push(idx % p);
        idx /= p;
    }
    out
}

impl FieldSpec {
    /// Builds a field from an explicit modulus, validating every invariant.
    pub fn with_modulus(p: u64, modulus: Vec<u64>) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let mut m = modulus;
        polyfp::trim(&mut m);
        let k = match polyfp::degree(&m) {
            Some(d) if d >= 1 => d,
            _ => return Err(Error::InvalidModulus("degree must be >= 1".into())),
        };
        if m.iter().any(|c| *c >= p) {
            return Err(Error::InvalidModulus("coefficients must lie in [0, p-1]".into()));
        }
        if m[k] != 1 {
            return Err(Error::InvalidModulus("modulus must be monic".into()));
        }
        if k == 1 && m[0] != 0 {
            return Err(Error::InvalidModulus("the degree-1 modulus is x".into()));
        }
        if !polyfp::is_irreducible(&m, p) {
            return Err(Error::InvalidModulus("modulus is reducible".into()));
        }
        let size = checked_size(p, k)
            .ok_or_else(|| Error::SizeExceeded(format!("{p}^{k} exceeds 2^40")))?;
        Ok(Arc::new(FieldSpec::build(p, k, size, m)))
    }

    fn build(p: u64, k: usize, size: u64, modulus: Vec<u64>) -> FieldSpec {
        let mut f = FieldSpec {
            p,
            k,
            size,
            modulus,
            basis_traces: Vec::new(),
        };
        f.basis_traces = (0..k)
            .map(|i| {
                let mut e = vec![0u64; k];
                e[i] = 1;
                f.trace_by_frobenius(&e)
            })
            .collect();
        f
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// `q = p^k`.
    pub fn size(&self) -> u64 {
        self.size
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    // ---- raw-slice arithmetic, used by the hot loops of counting code ----

    pub fn zero_raw(&self) -> Vec<u64> {
        vec![0; self.k]
    }

    pub fn one_raw(&self) -> Vec<u64> {
        let mut v = vec![0; self.k];
        v[0] = 1 % self.p;
        v
    }

    pub fn constant_raw(&self, c: u64) -> Vec<u64> {
        let mut v = vec![0; self.k];
        v[0] = c % self.p;
        v
    }

    /// Element with the given index in lexicographic enumeration order.
    pub fn from_index_raw(&self, idx: u64) -> Vec<u64> {
        digits(idx, self.p, self.k)
    }

    pub fn add_raw(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter()
            .zip(b)
            .map(|(x, y)| {
                let s = x + y;
                if s >= self.p {
                    s - self.p
                } else {
                    s
                }
            })
            .collect()
    }

    pub fn neg_raw(&self, a: &[u64]) -> Vec<u64> {
        a.iter()
            .map(|x| if *x == 0 { 0 } else { self.p - x })
            .collect()
    }

    pub fn mul_raw(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let p = self.p;
        let k = self.k;
        if k == 1 {
            return vec![(a[0] as u128 * b[0] as u128 % p as u128) as u64];
        }
        let mut prod = vec![0u128; 2 * k - 1];
        for (i, x) in a.iter().enumerate() {
            if *x == 0 {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                prod[i + j] += *x as u128 * *y as u128;
            }
        }
        let mut r: Vec<u64> = prod.iter().map(|c| (c % p as u128) as u64).collect();
        // x^k = -(m_0 + ... + m_{k-1} x^{k-1})
        for d in (k..2 * k - 1).rev() {
            let c = r[d];
            if c == 0 {
                continue;
            }
            r[d] = 0;
            for i in 0..k {
                let t = (c as u128 * self.modulus[i] as u128 % p as u128) as u64;
                let idx = d - k + i;
                r[idx] = (r[idx] + p - t) % p;
            }
        }
        r.truncate(k);
        r
    }

    pub fn pow_raw(&self, a: &[u64], mut exp: u64) -> Vec<u64> {
        let mut acc = self.one_raw();
        let mut base = a.to_vec();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul_raw(&acc, &base);
            }
            exp >>= 1;
            if exp > 0 {
                base = self.mul_raw(&base, &base);
            }
        }
        acc
    }

    /// Inverse by the extended Euclidean algorithm on polynomials.
    pub fn inv_raw(&self, a: &[u64]) -> Result<Vec<u64>> {
        let p = self.p;
        if a.iter().all(|c| *c == 0) {
            return Err(Error::DivisionByZero);
        }
        if self.k == 1 {
            return Ok(vec![polyfp::inv_mod(a[0], p)]);
        }
        let mut r0 = self.modulus.clone();
        let mut r1 = a.to_vec();
        polyfp::trim(&mut r1);
        let mut s0: Vec<u64> = Vec::new();
        let mut s1: Vec<u64> = vec![1];
        while polyfp::degree(&r1).is_some_and(|d| d > 0) {
            let (q, r) = divmod(&r0, &r1, p);
            let s2 = polyfp::sub(&s0, &polyfp::mul(&q, &s1, p), p);
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s2;
        }
        // r1 is a nonzero constant c: s1 * a = c (mod m)
        let c_inv = polyfp::inv_mod(r1[0], p);
        let mut out = vec![0u64; self.k];
        for (i, c) in s1.iter().enumerate() {
            out[i] = (*c as u128 * c_inv as u128 % p as u128) as u64;
        }
        Ok(out)
    }

    /// `a^((q-1)/2)` mapped to `{-1, 0, 1}`; odd characteristic only.
    pub fn chi_raw(&self, a: &[u64]) -> i32 {
        if a.iter().all(|c| *c == 0) {
            return 0;
        }
        let r = self.pow_raw(a, (self.size - 1) / 2);
        if r[0] == 1 {
            1
        } else {
            -1
        }
    }

    /// Trace to `F_p` through the precomputed traces of the power basis.
    pub fn trace_raw(&self, a: &[u64]) -> u64 {
        let p = self.p as u128;
        (a.iter()
            .zip(&self.basis_traces)
            .map(|(c, t)| *c as u128 * *t as u128)
            .sum::<u128>()
            % p) as u64
    }

    /// `sum_{j<k} a^{p^j}`, the defining formula.
    fn trace_by_frobenius(&self, a: &[u64]) -> u64 {
        let mut acc = self.zero_raw();
        let mut cur = a.to_vec();
        for _ in 0..self.k {
            acc = self.add_raw(&acc, &cur);
            cur = self.pow_raw(&cur, self.p);
        }
        debug_assert!(acc[1..].iter().all(|c| *c == 0));
        acc[0]
    }

    /// Reduces arbitrary integer coefficients into a canonical element.
    pub fn reduce_raw(&self, coeffs: &[i64]) -> Vec<u64> {
        let p = self.p as i64;
        let lifted: Vec<u64> = coeffs.iter().map(|c| c.rem_euclid(p) as u64).collect();
        let mut r = polyfp::rem(&lifted, &self.modulus, self.p);
        r.resize(self.k, 0);
        r
    }
}

fn divmod(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let mut r = a.to_vec();
    polyfp::trim(&mut r);
    let db = polyfp::degree(b).expect("nonzero divisor");
    let lead_inv = polyfp::inv_mod(b[db], p);
    let mut q = vec![0u64; r.len().saturating_sub(db).max(1)];
    while let Some(dr) = polyfp::degree(&r) {
        if dr < db {
            break;
        }
        let c = (r[dr] as u128 * lead_inv as u128 % p as u128) as u64;
        let shift = dr - db;
        q[shift] = c;
        for i in 0..=db {
            let t = (c as u128 * b[i] as u128 % p as u128) as u64;
            r[shift + i] = (r[shift + i] + p - t) % p;
        }
        polyfp::trim(&mut r);
    }
    polyfp::trim(&mut q);
    (q, r)
}

/// An element of a [`FieldSpec`], fully reduced.
#[derive(Debug, Clone)]
pub struct FieldElement {
    coeffs: Vec<u64>,
    field: Field,
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && same_field(&self.field, &other.field)
    }
}

impl Eq for FieldElement {}

fn same_field(a: &Field, b: &Field) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl FieldElement {
    /// Element from ascending integer coefficients (reduced mod `p` and the
    /// modulus).
    pub fn new(field: &Field, coeffs: &[i64]) -> FieldElement {
        FieldElement {
            coeffs: field.reduce_raw(coeffs),
            field: Arc::clone(field),
        }
    }

    pub fn from_raw(field: &Field, coeffs: Vec<u64>) -> FieldElement {
        debug_assert_eq!(coeffs.len(), field.k);
        FieldElement {
            coeffs,
            field: Arc::clone(field),
        }
    }

    pub fn zero(field: &Field) -> FieldElement {
        FieldElement::from_raw(field, field.zero_raw())
    }

    pub fn one(field: &Field) -> FieldElement {
        FieldElement::from_raw(field, field.one_raw())
    }

    /// The generator `x` of the power basis (equals `0` when `k = 1`).
    pub fn generator(field: &Field) -> FieldElement {
        FieldElement::new(field, &[0, 1])
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| *c == 0)
    }

    fn check(&self, other: &FieldElement) -> Result<()> {
        if same_field(&self.field, &other.field) {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn add(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check(other)?;
        Ok(FieldElement::from_raw(
            &self.field,
            self.field.add_raw(&self.coeffs, &other.coeffs),
        ))
    }

    pub fn sub(&self, other: &FieldElement) -> Result<FieldElement> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> FieldElement {
        FieldElement::from_raw(&self.field, self.field.neg_raw(&self.coeffs))
    }

    pub fn mul(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check(other)?;
        Ok(FieldElement::from_raw(
            &self.field,
            self.field.mul_raw(&self.coeffs, &other.coeffs),
        ))
    }

    pub fn inv(&self) -> Result<FieldElement> {
        Ok(FieldElement::from_raw(&self.field, self.field.inv_raw(&self.coeffs)?))
    }

    pub fn pow(&self, exp: u64) -> FieldElement {
        FieldElement::from_raw(&self.field, self.field.pow_raw(&self.coeffs, exp))
    }

    /// Quadratic character: `0` for zero, `1` for nonzero squares, `-1`
    /// otherwise.
    pub fn quadratic_character(&self) -> Result<i32> {
        if self.field.p == 2 {
            return Err(Error::EvenCharacteristic);
        }
        Ok(self.field.chi_raw(&self.coeffs))
    }

    /// Absolute trace `Tr_{F_{p^k}/F_p}`.
    pub fn trace_to_prime(&self) -> u64 {
        self.field.trace_raw(&self.coeffs)
    }
}

impl std::fmt::Display for FieldElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut terms = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if *c == 0 {
                continue;
            }
            terms.push(match (i, *c) {
                (0, c) => format!("{c}"),
                (1, 1) => "x".to_string(),
                (1, c) => format!("{c}x"),
                (i, 1) => format!("x^{i}"),
                (i, c) => format!("{c}x^{i}"),
            });
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

/// Iterator over all elements of a field in lexicographic order.
#[derive(Debug, Clone)]
pub struct Elements {
    field: Field,
    next: u64,
    end: u64,
}

impl Iterator for Elements {
    type Item = FieldElement;

    fn next(&mut self) -> Option<FieldElement> {
        if self.next >= self.end {
            return None;
        }
        let e = FieldElement::from_raw(&self.field, self.field.from_index_raw(self.next));
        self.next += 1;
        Some(e)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = (self.end - self.next) as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Elements {}

/// All `p^k` elements, each exactly once.
pub fn enumerate(field: &Field) -> Result<Elements> {
    enumerate_range(field, 0..field.size)
}

/// A contiguous slice of the enumeration order, for partitioned work.
pub fn enumerate_range(field: &Field, range: std::ops::Range<u64>) -> Result<Elements> {
    if field.size > MAX_ENUMERATION {
        return Err(Error::SizeExceeded(format!(
            "field of size {} exceeds the enumeration bound 2^28",
            field.size
        )));
    }
    Ok(Elements {
        field: Arc::clone(field),
        next: range.start.min(field.size),
        end: range.end.min(field.size),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn brute_irreducible(m: &[u64], p: u64) -> bool {
        // degree <= 3: irreducible iff no root
        !(0..p).any(|x| polyfp::eval(m, x, p) == 0)
    }

    #[test]
    fn make_field_examples() {
        assert_eq!(make_field(5, 1).unwrap().modulus(), &[0, 1]);
        assert_eq!(make_field(3, 2).unwrap().modulus(), &[1, 0, 1]);
        assert_eq!(make_field(5, 2).unwrap().modulus(), &[2, 0, 1]);
    }

    #[test]
    fn make_field_picks_first_candidate_by_root_oracle() {
        for p in [3u64, 5, 7, 11] {
            for k in [2usize, 3] {
                let f = make_field(p, k).unwrap();
                let chosen = f.modulus().to_vec();
                let mut first = None;
                for idx in 0..p.pow(k as u32) {
                    let mut m = digits(idx, p, k);
                    m.push(1);
                    if brute_irreducible(&m, p) {
                        first = Some(m);
                        break;
                    }
                }
                assert_eq!(Some(chosen), first, "p={p} k={k}");
            }
        }
    }

    #[test]
    fn make_field_errors() {
        assert_eq!(make_field(9, 1).unwrap_err(), Error::NotPrime(9));
        assert!(matches!(make_field(2, 41), Err(Error::SizeExceeded(_))));
        assert!(matches!(make_field(3, 26), Err(Error::SizeExceeded(_))));
    }

    #[test]
    fn with_modulus_validates() {
        assert!(FieldSpec::with_modulus(3, vec![1, 0, 1]).is_ok());
        assert!(FieldSpec::with_modulus(5, vec![1, 0, 1]).is_err());
        assert!(FieldSpec::with_modulus(5, vec![2, 0, 2]).is_err());
        assert!(FieldSpec::with_modulus(5, vec![1, 1]).is_err());
        assert!(FieldSpec::with_modulus(4, vec![0, 1]).is_err());
    }

    #[test]
    fn mul_examples() {
        let f9 = make_field(3, 2).unwrap();
        let x = FieldElement::generator(&f9);
        assert_eq!(x.mul(&x).unwrap(), FieldElement::new(&f9, &[2]));
        let f5 = make_field(5, 1).unwrap();
        assert_eq!(
            FieldElement::new(&f5, &[2]).inv().unwrap(),
            FieldElement::new(&f5, &[3])
        );
        let a = FieldElement::new(&f9, &[2, 1]);
        assert_eq!(a.mul(&FieldElement::one(&f9)).unwrap(), a);
    }

    #[test]
    fn errors_on_mismatch_and_zero() {
        let f9 = make_field(3, 2).unwrap();
        let f5 = make_field(5, 1).unwrap();
        let a = FieldElement::one(&f9);
        let b = FieldElement::one(&f5);
        assert_eq!(a.mul(&b).unwrap_err(), Error::FieldMismatch);
        assert_eq!(FieldElement::zero(&f9).inv().unwrap_err(), Error::DivisionByZero);
    }

    #[test]
    fn quadratic_character_examples() {
        let f5 = make_field(5, 1).unwrap();
        assert_eq!(FieldElement::new(&f5, &[4]).quadratic_character(), Ok(1));
        assert_eq!(FieldElement::new(&f5, &[2]).quadratic_character(), Ok(-1));
        assert_eq!(FieldElement::zero(&f5).quadratic_character(), Ok(0));
        let f2 = make_field(2, 3).unwrap();
        assert_eq!(
            FieldElement::one(&f2).quadratic_character(),
            Err(Error::EvenCharacteristic)
        );
    }

    #[test]
    fn trace_examples() {
        let f9 = make_field(3, 2).unwrap();
        assert_eq!(FieldElement::generator(&f9).trace_to_prime(), 0);
        assert_eq!(FieldElement::one(&f9).trace_to_prime(), 2);
        let f7 = make_field(7, 1).unwrap();
        for a in 0..7 {
            assert_eq!(FieldElement::new(&f7, &[a]).trace_to_prime(), a as u64);
        }
    }

    #[test]
    fn fast_trace_matches_defining_sum() {
        for (p, k) in [(3u64, 2usize), (3, 3), (5, 2), (2, 5), (7, 3)] {
            let f = make_field(p, k).unwrap();
            for e in enumerate(&f).unwrap() {
                assert_eq!(f.trace_raw(e.coeffs()), f.trace_by_frobenius(e.coeffs()));
            }
        }
    }

    #[test]
    fn enumerate_examples() {
        let f3 = make_field(3, 1).unwrap();
        let v: Vec<u64> = enumerate(&f3).unwrap().map(|e| e.coeffs()[0]).collect();
        assert_eq!(v, vec![0, 1, 2]);
        let f9 = make_field(3, 2).unwrap();
        let all: Vec<FieldElement> = enumerate(&f9).unwrap().collect();
        assert_eq!(all.len(), 9);
        assert!(all[0].is_zero());
        assert_eq!(all[8], FieldElement::new(&f9, &[2, 2]));
        assert_eq!(enumerate(&make_field(5, 2).unwrap()).unwrap().count(), 25);
        let big = make_field(2, 29).unwrap();
        assert!(matches!(enumerate(&big), Err(Error::SizeExceeded(_))));
    }

    #[test]
    fn fermat_exhaustive() {
        for (p, k) in [(3u64, 2usize), (5, 2), (5, 4), (2, 4), (7, 2), (3, 5)] {
            let f = make_field(p, k).unwrap();
            let q = f.size();
            for a in enumerate(&f).unwrap() {
                assert_eq!(a.pow(q), a);
                if !a.is_zero() {
                    assert_eq!(a.pow(q - 1), FieldElement::one(&f));
                    assert_eq!(a.mul(&a.inv().unwrap()).unwrap(), FieldElement::one(&f));
                }
            }
        }
    }

    #[test]
    fn square_count_and_multiplicativity() {
        for (p, k) in [(3u64, 2usize), (5, 2), (7, 1), (3, 3), (11, 2)] {
            let f = make_field(p, k).unwrap();
            let elems: Vec<FieldElement> = enumerate(&f).unwrap().collect();
            let squares = elems
                .iter()
                .filter(|a| a.quadratic_character().unwrap() == 1)
                .count() as u64;
            assert_eq!(squares, (f.size() - 1) / 2);
            for a in elems.iter().step_by(3) {
                for b in elems.iter().step_by(5) {
                    if a.is_zero() || b.is_zero() {
                        continue;
                    }
                    let ab = a.mul(b).unwrap().quadratic_character().unwrap();
                    assert_eq!(
                        ab,
                        a.quadratic_character().unwrap() * b.quadratic_character().unwrap()
                    );
                }
            }
        }
    }

    proptest! {
        #[test]
        fn frobenius_is_additive(i in 0u64..625, j in 0u64..625) {
            let f = make_field(5, 4).unwrap();
            let a = FieldElement::from_raw(&f, f.from_index_raw(i));
            let b = FieldElement::from_raw(&f, f.from_index_raw(j));
            let lhs = a.add(&b).unwrap().pow(5);
            let rhs = a.pow(5).add(&b.pow(5)).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn trace_is_additive(i in 0u64..2187, j in 0u64..2187) {
            let f = make_field(3, 7).unwrap();
            let a = FieldElement::from_raw(&f, f.from_index_raw(i));
            let b = FieldElement::from_raw(&f, f.from_index_raw(j));
            let lhs = a.add(&b).unwrap().trace_to_prime();
            prop_assert_eq!(lhs, (a.trace_to_prime() + b.trace_to_prime()) % 3);
        }
    }
}
