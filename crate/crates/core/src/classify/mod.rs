//! Newton-polygon classification (ordinary / supersingular / p-rank),
//! irreducibility of small integer polynomials, integer-relation search
//! among Frobenius angles, and curve-family census.

pub mod census;
mod irreducible;
mod relation;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::zeta::ZetaNumerator;

pub use census::{census, CensusOptions, CensusReport, CurveRecord};
pub use irreducible::is_irreducible_over_z;
pub use relation::{find_integer_relation, RelationReport, MAX_BOUND_G12, MAX_BOUND_G3};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Kind {
    Ordinary,
    Supersingular,
    Intermediate,
}

impl Kind {
    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Ordinary => "ordinary",
            Kind::Supersingular => "supersingular",
            Kind::Intermediate => "intermediate",
        }
    }
}

impl std::fmt::Display for Kind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub p_rank: usize,
    pub kind: Kind,
    /// Slopes of the Newton polygon, one entry per unit of horizontal
    /// length, ascending. Always `2g` entries.
    pub newton_slopes: Vec<Ratio<i64>>,
}

/// `v_p(n)`, or `None` for `n = 0`.
pub fn valuation(n: &BigInt, p: u64) -> Option<u64> {
    if n.is_zero() {
        return None;
    }
    let pb = BigInt::from(p);
    let mut n = n.abs();
    let mut v = 0;
    loop {
        let (d, r) = n.div_rem(&pb);
        if !r.is_zero() {
            return Some(v);
        }
        n = d;
        v += 1;
    }
}

/// Newton polygon of `{(i, v_p(e_i)/v_p(q))}` and the resulting p-rank.
pub fn classify(z: &ZetaNumerator, p: u64) -> Result<Classification> {
    let q = z.q();
    let vq = match valuation(q, p) {
        Some(v) if v > 0 && num_traits::pow(BigInt::from(p), v as usize) == *q => v,
        _ => {
            return Err(Error::BadCharacteristic {
                p,
                q: q.to_string(),
            })
        }
    };
    let points: Vec<(i64, Ratio<i64>)> = z
        .e()
        .iter()
        .enumerate()
        .filter_map(|(i, e)| {
            valuation(e, p).map(|v| (i as i64, Ratio::new(v as i64, vq as i64)))
        })
        .collect();

    // lower convex hull; e_0 = 1 and e_{2g} = q^g are always present
    let mut hull: Vec<(i64, Ratio<i64>)> = Vec::new();
    for pt in points {
        while hull.len() >= 2 {
            let (x1, y1) = hull[hull.len() - 2];
            let (x2, y2) = hull[hull.len() - 1];
            // drop the middle point if it lies on or above the chord
            let lhs = (y2 - y1) * Ratio::from_integer(pt.0 - x1);
            let rhs = (pt.1 - y1) * Ratio::from_integer(x2 - x1);
            if lhs >= rhs {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(pt);
    }
    let mut slopes = Vec::with_capacity(2 * z.g());
    for w in hull.windows(2) {
        let len = w[1].0 - w[0].0;
        let s = (w[1].1 - w[0].1) / Ratio::from_integer(len);
        slopes.extend(std::iter::repeat_n(s, len as usize));
    }
    let p_rank = slopes.iter().filter(|s| s.is_zero()).count();
    let half = Ratio::new(1, 2);
    let kind = if p_rank == z.g() {
        Kind::Ordinary
    } else if slopes.iter().all(|s| *s == half) {
        Kind::Supersingular
    } else {
        Kind::Intermediate
    };
    Ok(Classification {
        p_rank,
        kind,
        newton_slopes: slopes,
    })
}

/// `P_m` irreducible over the integers for every `m = 1..=max_m`; the
/// testable stand-in for an absolutely simple Jacobian.
pub fn simplicity_proxy(z: &ZetaNumerator, max_m: usize) -> Result<bool> {
    for m in 1..=max_m {
        let pm = crate::zeta::pm_numerator(z, m)?;
        if !is_irreducible_over_z(&pm.coefficients())? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(g: usize, q: i64, e: &[i64]) -> ZetaNumerator {
        ZetaNumerator::from_i64(g, q, e).unwrap()
    }

    #[test]
    fn classify_examples() {
        let c = classify(&z(1, 3, &[1, 0, 3]), 3).unwrap();
        assert_eq!(c.kind, Kind::Supersingular);
        assert_eq!(c.p_rank, 0);
        assert_eq!(c.newton_slopes, vec![Ratio::new(1, 2); 2]);

        let c = classify(&z(1, 5, &[1, -2, 5]), 5).unwrap();
        assert_eq!(c.kind, Kind::Ordinary);
        assert_eq!(c.p_rank, 1);
        assert_eq!(c.newton_slopes, vec![Ratio::from_integer(0), Ratio::from_integer(1)]);

        // g = 2, p does not divide e_1, p divides e_2
        let c = classify(&z(2, 5, &[1, 1, 5, 5, 25]), 5).unwrap();
        assert_eq!(c.kind, Kind::Intermediate);
        assert_eq!(c.p_rank, 1);
        assert_eq!(
            c.newton_slopes,
            vec![Ratio::from_integer(0), Ratio::new(1, 2), Ratio::new(1, 2), Ratio::from_integer(1)]
        );
    }

    #[test]
    fn slopes_are_per_q() {
        // q = 9: the supersingular y^2 = x^3 + x over F_9 has P = 1 + 6T + 9T^2
        let c = classify(&z(1, 9, &[1, -6, 9]), 3).unwrap();
        assert_eq!(c.newton_slopes, vec![Ratio::new(1, 2); 2]);
        // ordinary over F_9
        let c = classify(&z(1, 9, &[1, -2, 9]), 3).unwrap();
        assert_eq!(c.kind, Kind::Ordinary);
    }

    #[test]
    fn bad_characteristic() {
        assert!(matches!(
            classify(&z(1, 5, &[1, -2, 5]), 3),
            Err(Error::BadCharacteristic { .. })
        ));
        // 45 is not a power of 5
        assert!(classify(&z(1, 45, &[1, 0, 45]), 5).is_err());
    }

    #[test]
    fn ordinary_iff_middle_coefficient_is_unit_mod_p() {
        // all Weil-admissible genus-2 numerators over q = 5 with e_1, e_2 in a small box
        for e1 in -8i64..=8 {
            for e2 in -20i64..=20 {
                let zz = z(2, 5, &[1, e1, e2, 5 * e1, 25]);
                let c = classify(&zz, 5).unwrap();
                assert_eq!(c.kind == Kind::Ordinary, e2.rem_euclid(5) != 0, "e = {e1},{e2}");
                assert_eq!(c.newton_slopes.len(), 4);
            }
        }
    }
}
