use crate::error::{Error, Result};
use crate::mp::Turns;
use crate::zeta::FrobeniusAngles;

/// Largest search bound accepted for one or two angles.
pub const MAX_BOUND_G12: u32 = 1000;
/// Largest search bound accepted for three angles.
pub const MAX_BOUND_G3: u32 = 60;

#[derive(Debug, Clone, PartialEq)]
pub struct RelationReport {
    /// `(k_0, k_1, ..., k_g)` with `sum k_j theta_j = k_0` up to `epsilon`.
    pub found: Option<Vec<i64>>,
    pub residual: Option<f64>,
    pub bound: u32,
    pub epsilon: f64,
    /// Smallest `|sum k_j theta_j - k_0|` over every vector scanned.
    pub min_residual: f64,
    /// A vector attaining `min_residual`.
    pub min_vector: Vec<i64>,
    /// Residuals below this are indistinguishable from zero at the angle
    /// precision and are reported as exactly zero.
    pub floor: f64,
    pub vectors_scanned: u64,
}

/// Visits every nonzero `k` in `[-m, m]^g` with max-norm exactly `m`
/// whose first nonzero entry is positive, in lexicographic order.
fn for_each_in_shell(g: usize, m: i64, f: &mut impl FnMut(&[i64])) {
    let mut k = vec![-m; g];
    loop {
        let first = k.iter().find(|x| **x != 0);
        if first.is_some_and(|x| *x > 0) && k.iter().any(|x| x.abs() == m) {
            f(&k);
        }
        let mut i = g;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if k[i] < m {
                k[i] += 1;
                break;
            }
            k[i] = -m;
        }
    }
}

/// Shell-by-shell search for a small integer relation among the angles
/// modulo one.
pub fn find_integer_relation(
    angles: &FrobeniusAngles,
    bound: u32,
    epsilon: f64,
) -> Result<RelationReport> {
    let g = angles.theta().len();
    let digits = angles.precision_digits() as i32;
    let floor = 10f64.powi(-(digits - 10));
    if epsilon < floor {
        return Err(Error::ToleranceBelowPrecision { eps: epsilon, floor });
    }
    if bound == 0 {
        return Err(Error::InvalidArgument("K must be >= 1".into()));
    }
    let cap = if g <= 2 { MAX_BOUND_G12 } else { MAX_BOUND_G3 };
    if g == 0 || g > 3 || bound > cap {
        return Err(Error::GuardExceeded(format!(
            "relation search with g = {g} allows K <= {cap}, got {bound}"
        )));
    }

    let turns = angles.theta_turns();
    let approx = angles.theta_f64();
    let zero_floor = 10f64.powi(-(digits - 5));

    let mut found: Option<(Vec<i64>, f64)> = None;
    let mut min_residual = f64::INFINITY;
    let mut min_vector = Vec::new();
    let mut scanned = 0u64;
    for m in 1..=bound as i64 {
        for_each_in_shell(g, m, &mut |k| {
            scanned += 1;
            let mut acc = Turns::ZERO;
            for (t, kj) in turns.iter().zip(k) {
                acc = acc.wrapping_add(t.mul_int(*kj));
            }
            let mut r = acc.dist_to_int();
            if r < zero_floor {
                r = 0.0;
            }
            if r < min_residual {
                min_residual = r;
                min_vector = k.to_vec();
            }
            if r <= epsilon && found.is_none() {
                let s: f64 = approx.iter().zip(k).map(|(t, kj)| t * *kj as f64).sum();
                let mut v = vec![s.round() as i64];
                v.extend_from_slice(k);
                found = Some((v, r));
            }
        });
        if found.is_some() {
            break;
        }
    }
    let (found, residual) = match found {
        Some((v, r)) => (Some(v), Some(r)),
        None => (None, None),
    };
    let mut min_full = vec![0];
    if !min_vector.is_empty() {
        let s: f64 = approx.iter().zip(&min_vector).map(|(t, kj)| t * *kj as f64).sum();
        min_full[0] = s.round() as i64;
        min_full.extend(min_vector);
    }
    Ok(RelationReport {
        found,
        residual,
        bound,
        epsilon,
        min_residual,
        min_vector: min_full,
        floor,
        vectors_scanned: scanned,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mp::MpCtx;
    use crate::zeta::{frobenius_angles, ZetaNumerator};
    use num_bigint::BigInt;

    fn planted(ratios: &[(i64, i64)], digits: u32) -> FrobeniusAngles {
        let ctx = MpCtx::with_digits(digits * 2);
        let th = ratios.iter().map(|(a, b)| ctx.ratio(*a, *b)).collect();
        FrobeniusAngles::from_values(th, digits, BigInt::from(1))
    }

    #[test]
    fn shell_enumeration_counts() {
        for g in 1..=3usize {
            for m in 1..=4i64 {
                let mut n = 0usize;
                for_each_in_shell(g, m, &mut |_| n += 1);
                let full = (2 * m + 1).pow(g as u32) - (2 * m - 1).pow(g as u32);
                assert_eq!(n as i64, full / 2, "g={g} m={m}");
            }
        }
    }

    #[test]
    fn half_is_found() {
        let r = find_integer_relation(&planted(&[(1, 2)], 50), 50, 1e-9).unwrap();
        assert_eq!(r.found, Some(vec![1, 2]));
        assert_eq!(r.residual, Some(0.0));
        assert_eq!(r.min_residual, 0.0);
    }

    #[test]
    fn two_angle_relation() {
        let r = find_integer_relation(&planted(&[(1, 3), (1, 6)], 50), 50, 1e-9).unwrap();
        assert_eq!(r.found, Some(vec![0, 1, -2]));
    }

    #[test]
    fn ordinary_angle_has_no_small_relation() {
        let z = ZetaNumerator::from_i64(1, 5, &[1, 2, 5]).unwrap();
        let a = frobenius_angles(&z, 50).unwrap();
        let r = find_integer_relation(&a, 50, 1e-9).unwrap();
        assert_eq!(r.found, None);
        assert!(r.min_residual > 1e-9);
        assert_eq!(r.vectors_scanned, 50);
    }

    #[test]
    fn tolerance_floor() {
        let a = planted(&[(1, 2)], 20);
        assert!(matches!(
            find_integer_relation(&a, 10, 1e-12),
            Err(Error::ToleranceBelowPrecision { .. })
        ));
        assert!(find_integer_relation(&a, 10, 1e-10).is_ok());
    }

    #[test]
    fn bound_guard() {
        let a = planted(&[(1, 7), (2, 7), (3, 7)], 50);
        assert!(matches!(
            find_integer_relation(&a, 61, 1e-9),
            Err(Error::GuardExceeded(_))
        ));
    }

    #[test]
    fn planted_rationals_are_always_found() {
        for s in 2..=12i64 {
            for r in 1..s {
                let a = planted(&[(r, s)], 50);
                let rep = find_integer_relation(&a, 12, 1e-9).unwrap();
                let v = rep.found.expect("relation");
                assert_eq!(rep.residual, Some(0.0));
                // r/s in lowest terms gives the relation in shell s / gcd
                assert_eq!(v[1] * r % s, 0);
                assert_eq!(v[1] * r / s, v[0]);
            }
        }
    }

    #[test]
    fn finishes_the_shell() {
        // k = (1, 1) and k = (1, -1) both sit in shell 1 for [1/4, 3/4]
        let a = planted(&[(1, 4), (3, 4)], 50);
        let r = find_integer_relation(&a, 5, 1e-9).unwrap();
        assert_eq!(r.found, Some(vec![1, 1, 1]));
        assert_eq!(r.vectors_scanned, 4);
    }
}
