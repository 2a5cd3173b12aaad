//! Elliptic and genus-2 hyperelliptic models `y^2 = f(x)` over odd prime
//! fields, with exact point counting over extensions by enumeration.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::ffield::{make_field, polyfp, Field, MAX_ENUMERATION};

/// Right-hand side of the curve equation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CurveModel {
    /// `y^2 = x^3 + a x + b`
    Elliptic { a: u64, b: u64 },
    /// `y^2 = f(x)`, `deg f` in {5, 6}; ascending coefficients.
    Hyperelliptic2 { f: Vec<u64> },
}

#[derive(Debug, Clone, PartialEq)]
pub struct CurveSpec {
    base: Field,
    model: CurveModel,
}

impl CurveSpec {
    /// Validated curve over a prime base field.
    pub fn new(base: Field, model: CurveModel) -> Result<CurveSpec> {
        let c = CurveSpec { base, model };
        c.validate()?;
        Ok(c)
    }

    pub fn elliptic(p: u64, a: i64, b: i64) -> Result<CurveSpec> {
        let base = make_field(p, 1)?;
        let pi = p as i64;
        CurveSpec::new(
            base,
            CurveModel::Elliptic {
                a: a.rem_euclid(pi) as u64,
                b: b.rem_euclid(pi) as u64,
            },
        )
    }

    /// `f` given in ascending degree; trailing zeros are dropped.
    pub fn hyperelliptic2(p: u64, f: &[i64]) -> Result<CurveSpec> {
        let base = make_field(p, 1)?;
        let pi = p as i64;
        let mut f: Vec<u64> = f.iter().map(|c| c.rem_euclid(pi) as u64).collect();
        polyfp::trim(&mut f);
        CurveSpec::new(base, CurveModel::Hyperelliptic2 { f })
    }

    pub fn base(&self) -> &Field {
        &self.base
    }

    pub fn model(&self) -> &CurveModel {
        &self.model
    }

    /// `p`; base fields are prime.
    pub fn p(&self) -> u64 {
        self.base.p()
    }

    /// `q`, the size of the base field.
    pub fn q(&self) -> u64 {
        self.base.size()
    }

    pub fn genus(&self) -> usize {
        match &self.model {
            CurveModel::Elliptic { .. } => 1,
            CurveModel::Hyperelliptic2 { .. } => 2,
        }
    }

    /// `f(x)` with coefficients in `F_p`, ascending.
    pub fn rhs(&self) -> Vec<u64> {
        match &self.model {
            CurveModel::Elliptic { a, b } => vec![*b, *a, 0, 1],
            CurveModel::Hyperelliptic2 { f } => f.clone(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let p = self.base.p();
        if p == 2 {
            return Err(Error::EvenCharacteristic);
        }
        if self.base.k() != 1 {
            return Err(Error::UnsupportedModel(
                "curve coefficients must live in a prime field".into(),
            ));
        }
        match &self.model {
            CurveModel::Elliptic { a, b } => {
                let (a, b) = (*a as u128, *b as u128);
                let pp = p as u128;
                let disc = (4 * a * a % pp * a + 27 * b * b) % pp;
                if disc == 0 {
                    return Err(Error::SingularCurve("4a^3 + 27b^2 = 0".into()));
                }
            }
            CurveModel::Hyperelliptic2 { f } => {
                if f.iter().any(|c| *c >= p) {
                    return Err(Error::InvalidArgument("coefficients must be reduced mod p".into()));
                }
                match polyfp::degree(f) {
                    Some(5) | Some(6) => {}
                    d => {
                        return Err(Error::BadDegree(format!(
                            "genus-2 model needs deg f in {{5, 6}}, got {}",
                            d.map_or("-inf".to_string(), |d| d.to_string())
                        )))
                    }
                }
                let g = polyfp::gcd(f, &polyfp::derivative(f, p), p);
                if polyfp::degree(&g) != Some(0) {
                    return Err(Error::SingularCurve("f is not squarefree".into()));
                }
            }
        }
        Ok(())
    }

    /// Number of points at infinity on the smooth projective model over
    /// `F_{q^n}`.
    fn points_at_infinity(&self, ext: &Field) -> u64 {
        match &self.model {
            CurveModel::Elliptic { .. } => 1,
            CurveModel::Hyperelliptic2 { f } => {
                if f.len() == 6 {
                    1
                } else {
                    let lc = ext.constant_raw(f[6]);
                    if ext.chi_raw(&lc) == 1 {
                        2
                    } else {
                        0
                    }
                }
            }
        }
    }

    /// `#C(F_{q^n})` on the smooth projective model.
    pub fn count_points(&self, n: usize) -> Result<u64> {
        self.validate()?;
        if n == 0 {
            return Err(Error::InvalidArgument("extension degree must be >= 1".into()));
        }
        let p = self.p();
        let size = (p as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
        if size > MAX_ENUMERATION as u128 {
            return Err(Error::SizeExceeded(format!(
                "q^n = {p}^{n} exceeds the enumeration bound 2^28"
            )));
        }
        let ext = make_field(p, n)?;
        let f = self.rhs();
        let q_n = ext.size();
        let chi_sum = character_sum(&ext, &f, 0..q_n);
        let affine = q_n as i64 + chi_sum;
        Ok(affine as u64 + self.points_at_infinity(&ext))
    }
}

impl std::fmt::Display for CurveSpec {
    fn fmt(&self, fm: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let f = self.rhs();
        let mut terms = Vec::new();
        for (i, c) in f.iter().enumerate().rev() {
            if *c == 0 {
                continue;
            }
            terms.push(match (i, *c) {
                (0, c) => format!("{c}"),
                (1, 1) => "x".into(),
                (1, c) => format!("{c}x"),
                (i, 1) => format!("x^{i}"),
                (i, c) => format!("{c}x^{i}"),
            });
        }
        write!(fm, "y^2 = {} over F_{}", terms.join(" + "), self.p())
    }
}

const CHUNK: u64 = 4096;

/// `sum chi(f(x))` over the elements with enumeration index in `range`.
/// Partial sums over disjoint ranges add up to the full sum.
pub fn character_sum(ext: &Field, f: &[u64], range: std::ops::Range<u64>) -> i64 {
    let chunks: Vec<std::ops::Range<u64>> = (range.start..range.end)
        .step_by(CHUNK as usize)
        .map(|s| s..(s + CHUNK).min(range.end))
        .collect();
    chunks
        .into_par_iter()
        .map(|r| {
            let coeffs: Vec<Vec<u64>> = f.iter().map(|c| ext.constant_raw(*c)).collect();
            let mut acc = 0i64;
            for idx in r {
                let x = ext.from_index_raw(idx);
                let mut v = coeffs.last().cloned().unwrap_or_else(|| ext.zero_raw());
                for c in coeffs.iter().rev().skip(1) {
                    v = ext.add_raw(&ext.mul_raw(&v, &x), c);
                }
                acc += ext.chi_raw(&v) as i64;
            }
            acc
        })
        .sum()
}

/// Validates a curve; free-function form.
pub fn validate(curve: &CurveSpec) -> Result<()> {
    curve.validate()
}

/// `#C(F_{q^n})`; free-function form.
pub fn count_points(curve: &CurveSpec, n: usize) -> Result<u64> {
    curve.count_points(n)
}
