//! Exhaustive or sampled surveys of small curve families.

use std::collections::BTreeMap;

use num_traits::ToPrimitive;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{classify, is_irreducible_over_z, simplicity_proxy, Classification, Kind};
use super::{find_integer_relation, RelationReport};
use crate::curves::CurveSpec;
use crate::error::{Error, Result};
use crate::ffield::is_prime;
use crate::zeta::{
    frobenius_angles, numerator_from_power_sums, pm_numerator, power_sums_from_counts, ZetaNumerator,
};

/// Largest prime surveyed for genus 1.
pub const MAX_P_GENUS1: u64 = 13;
/// Largest prime surveyed for genus 2.
pub const MAX_P_GENUS2: u64 = 7;
/// Genus-2 families are enumerated completely up to this prime and sampled
/// above it.
pub const FULL_P_GENUS2: u64 = 5;

#[derive(Debug, Clone, PartialEq)]
pub struct CensusOptions {
    pub bound: u32,
    pub epsilon: f64,
    pub sample_limit: usize,
    pub seed: u64,
    pub digits: u32,
    /// `P_m` is tested for `m = 1..=proxy_degree`.
    pub proxy_degree: usize,
}

impl Default for CensusOptions {
    fn default() -> Self {
        CensusOptions {
            bound: 50,
            epsilon: 1e-9,
            sample_limit: 200,
            seed: 0,
            digits: 50,
            proxy_degree: 6,
        }
    }
}

#[derive(Debug, Clone)]
pub struct CurveRecord {
    /// `[a, b]` for elliptic curves, `f` ascending for genus 2.
    pub coeffs: Vec<u64>,
    pub counts: Vec<u64>,
    pub numerator: ZetaNumerator,
    pub a1: i64,
    pub classification: Classification,
    pub p_irreducible: bool,
    pub p2_irreducible: bool,
    pub simple_proxy: bool,
    pub relation: RelationReport,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct CensusFractions {
    pub ordinary: f64,
    pub supersingular: f64,
    pub intermediate: f64,
    pub p_irreducible: f64,
    pub relation_found: f64,
}

#[derive(Debug, Clone)]
pub struct CensusReport {
    pub p: u64,
    pub genus: usize,
    /// Human-readable description of the family surveyed.
    pub family: String,
    pub sampled: bool,
    /// Nonsingular members of the family.
    pub total_nonsingular: usize,
    pub singular_skipped: usize,
    pub curves: Vec<CurveRecord>,
    pub fractions: CensusFractions,
    /// Number of curves with each value of `a_1`.
    pub a1_histogram: BTreeMap<i64, usize>,
}

fn family_members(p: u64, genus: usize) -> Vec<Vec<u64>> {
    match genus {
        1 => (0..p).flat_map(|a| (0..p).map(move |b| vec![a, b])).collect(),
        _ => {
            let mut out = Vec::with_capacity((p as usize).pow(4));
            for c3 in 0..p {
                for c2 in 0..p {
                    for c1 in 0..p {
                        for c0 in 0..p {
                            out.push(vec![c0, c1, c2, c3, 0, 1]);
                        }
                    }
                }
            }
            out
        }
    }
}

fn build_curve(p: u64, coeffs: &[u64]) -> Result<CurveSpec> {
    let c: Vec<i64> = coeffs.iter().map(|x| *x as i64).collect();
    if c.len() == 2 {
        CurveSpec::elliptic(p, c[0], c[1])
    } else {
        CurveSpec::hyperelliptic2(p, &c)
    }
}

fn survey_curve(curve: &CurveSpec, coeffs: Vec<u64>, opts: &CensusOptions) -> Result<CurveRecord> {
    let g = curve.genus();
    let counts = (1..=g)
        .map(|n| curve.count_points(n))
        .collect::<Result<Vec<_>>>()?;
    let numerator = numerator_from_power_sums(&power_sums_from_counts(&counts, curve.q(), g)?)?;
    let classification = classify(&numerator, curve.p())?;
    let p_irreducible = is_irreducible_over_z(&numerator.coefficients())?;
    let p2_irreducible = is_irreducible_over_z(&pm_numerator(&numerator, 2)?.coefficients())?;
    let simple_proxy = simplicity_proxy(&numerator, opts.proxy_degree)?;
    let angles = frobenius_angles(&numerator, opts.digits)?;
    let relation = find_integer_relation(&angles, opts.bound, opts.epsilon)?;
    let a1 = numerator.e()[1].to_i64().expect("|a_1| <= 2g sqrt(q)");
    Ok(CurveRecord {
        coeffs,
        counts,
        numerator,
        a1,
        classification,
        p_irreducible,
        p2_irreducible,
        simple_proxy,
        relation,
    })
}

/// Classifies every curve in the family (or a seeded sample of it).
///
/// Genus 1 surveys `y^2 = x^3 + a x + b` over all `(a, b)`; genus 2 surveys
/// `y^2 = x^5 + c_3 x^3 + c_2 x^2 + c_1 x + c_0`.
pub fn census(p: u64, genus: usize, opts: &CensusOptions) -> Result<CensusReport> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p == 2 {
        return Err(Error::EvenCharacteristic);
    }
    let (limit, family) = match genus {
        1 => (MAX_P_GENUS1, "y^2 = x^3 + a x + b, all (a, b) in F_p^2".to_string()),
        2 => (
            MAX_P_GENUS2,
            "y^2 = x^5 + c3 x^3 + c2 x^2 + c1 x + c0 (x^4 coefficient fixed to 0)".to_string(),
        ),
        _ => return Err(Error::InvalidArgument(format!("genus must be 1 or 2, got {genus}"))),
    };
    if p > limit {
        return Err(Error::SizeExceeded(format!(
            "census in genus {genus} supports p <= {limit}, got {p}"
        )));
    }

    let members = family_members(p, genus);
    let total = members.len();
    let mut valid: Vec<(Vec<u64>, CurveSpec)> = Vec::new();
    for m in members {
        match build_curve(p, &m) {
            Ok(c) => valid.push((m, c)),
            Err(Error::SingularCurve(_)) => {}
            Err(e) => return Err(e),
        }
    }
    let total_nonsingular = valid.len();
    let singular_skipped = total - total_nonsingular;

    let sampled = genus == 2 && p > FULL_P_GENUS2 && opts.sample_limit < valid.len();
    if sampled {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        let mut idx = rand::seq::index::sample(&mut rng, valid.len(), opts.sample_limit).into_vec();
        idx.sort_unstable();
        let mut keep = vec![false; valid.len()];
        for i in idx {
            keep[i] = true;
        }
        let mut it = keep.into_iter();
        valid.retain(|_| it.next().unwrap_or(false));
    }

    let curves = valid
        .into_par_iter()
        .map(|(m, c)| survey_curve(&c, m, opts))
        .collect::<Result<Vec<_>>>()?;

    let n = curves.len().max(1) as f64;
    let frac = |pred: &dyn Fn(&CurveRecord) -> bool| curves.iter().filter(|c| pred(c)).count() as f64 / n;
    let fractions = CensusFractions {
        ordinary: frac(&|c| c.classification.kind == Kind::Ordinary),
        supersingular: frac(&|c| c.classification.kind == Kind::Supersingular),
        intermediate: frac(&|c| c.classification.kind == Kind::Intermediate),
        p_irreducible: frac(&|c| c.p_irreducible),
        relation_found: frac(&|c| c.relation.found.is_some()),
    };
    let mut a1_histogram = BTreeMap::new();
    for c in &curves {
        *a1_histogram.entry(c.a1).or_insert(0) += 1;
    }
    Ok(CensusReport {
        p,
        genus,
        family,
        sampled,
        total_nonsingular,
        singular_skipped,
        curves,
        fractions,
        a1_histogram,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn genus1_p3_is_exhaustive() {
        let r = census(3, 1, &CensusOptions::default()).unwrap();
        // 4a^3 + 27b^2 = a^3 mod 3, so exactly the a = 0 pairs are singular
        assert_eq!(r.singular_skipped, 3);
        assert_eq!(r.total_nonsingular, 6);
        assert_eq!(r.curves.len(), 6);
        assert!(r.a1_histogram.keys().all(|a| (-3..=3).contains(a)));
        assert_eq!(r.a1_histogram.values().sum::<usize>(), 6);
        for c in &r.curves {
            assert_eq!(c.counts[0] as i64, 4 - c.a1);
        }
    }

    #[test]
    fn genus1_p5_ordinary_has_no_relation() {
        let r = census(5, 1, &CensusOptions::default()).unwrap();
        for c in &r.curves {
            assert_eq!(c.classification.kind == Kind::Ordinary, c.a1.rem_euclid(5) != 0);
            if c.classification.kind == Kind::Ordinary {
                assert!(c.relation.found.is_none(), "{:?}", c.coeffs);
            }
        }
    }

    #[test]
    fn supersingular_p2_factors() {
        for p in [3, 5, 7, 11] {
            let r = census(p, 1, &CensusOptions::default()).unwrap();
            for c in r.curves.iter().filter(|c| c.a1 == 0) {
                assert_eq!(c.classification.kind, Kind::Supersingular);
                assert!(!c.p2_irreducible);
                assert!(c.relation.found.is_some());
            }
        }
    }

    #[test]
    fn errors() {
        assert_eq!(census(2, 1, &CensusOptions::default()).unwrap_err(), Error::EvenCharacteristic);
        assert_eq!(census(9, 1, &CensusOptions::default()).unwrap_err(), Error::NotPrime(9));
        assert!(matches!(census(17, 1, &CensusOptions::default()), Err(Error::SizeExceeded(_))));
        assert!(matches!(census(11, 2, &CensusOptions::default()), Err(Error::SizeExceeded(_))));
        assert!(matches!(census(5, 3, &CensusOptions::default()), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn sampled_genus2_is_deterministic() {
        let opts = CensusOptions {
            sample_limit: 12,
            seed: 7,
            ..CensusOptions::default()
        };
        let a = census(7, 2, &opts).unwrap();
        let b = census(7, 2, &opts).unwrap();
        assert!(a.sampled);
        assert_eq!(a.curves.len(), 12);
        let ca: Vec<_> = a.curves.iter().map(|c| c.coeffs.clone()).collect();
        let cb: Vec<_> = b.curves.iter().map(|c| c.coeffs.clone()).collect();
        assert_eq!(ca, cb);
        let other = census(7, 2, &CensusOptions { seed: 8, ..opts }).unwrap();
        let co: Vec<_> = other.curves.iter().map(|c| c.coeffs.clone()).collect();
        assert_ne!(ca, co);
    }
}
