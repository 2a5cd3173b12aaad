//! Kronecker points `({n theta_1}, ..., {n theta_g})` and their star
//! discrepancy.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::mp::Turns;
use crate::zeta::FrobeniusAngles;

/// Largest `N` for [`kronecker_points`].
pub const MAX_KRONECKER_N: usize = 1_000_000;
/// Largest point set accepted by the exact two-dimensional method.
pub const MAX_EXACT_2D: usize = 10_000;
/// Critical boxes examined by the three-dimensional lower bound.
pub const SAMPLED_BOXES_3D: usize = 4_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiscrepancyMethod {
    Exact1d,
    Exact2d,
    LowerBound,
}

impl DiscrepancyMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            DiscrepancyMethod::Exact1d => "exact-1d",
            DiscrepancyMethod::Exact2d => "exact-2d",
            DiscrepancyMethod::LowerBound => "lower-bound",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DiscrepancyReport {
    pub n: usize,
    pub dimension: usize,
    pub star_discrepancy: f64,
    pub method: DiscrepancyMethod,
    /// The discrepancy over all boxes lies between `star_discrepancy` and
    /// `extreme_factor * star_discrepancy`.
    pub extreme_factor: f64,
}

/// `({n theta_1}, ..., {n theta_g})` for `n = 1..N`, reduced exactly in
/// 256-bit fixed point.
pub fn kronecker_points(angles: &FrobeniusAngles, n_max: usize) -> Result<Vec<Vec<f64>>> {
    if n_max > MAX_KRONECKER_N {
        return Err(Error::SizeExceeded(format!(
            "Kronecker points limited to N <= {MAX_KRONECKER_N}, got {n_max}"
        )));
    }
    let steps = angles.theta_turns();
    let mut acc = vec![Turns::ZERO; steps.len()];
    let mut out = Vec::with_capacity(n_max);
    for _ in 0..n_max {
        for (a, s) in acc.iter_mut().zip(&steps) {
            *a = a.wrapping_add(*s);
        }
        out.push(acc.iter().map(|t| t.to_f64()).collect());
    }
    Ok(out)
}

fn star_1d(xs: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mut s = xs.to_vec();
    s.sort_by(|a, b| a.total_cmp(b));
    let worst = s
        .iter()
        .enumerate()
        .map(|(i, x)| (x - (2 * i + 1) as f64 / (2.0 * n)).abs())
        .fold(0.0, f64::max);
    1.0 / (2.0 * n) + worst
}

/// Sorted distinct values with `1.0` appended.
fn critical_values(v: impl Iterator<Item = f64>) -> Vec<f64> {
    let mut c: Vec<f64> = v.collect();
    c.push(1.0);
    c.sort_by(|a, b| a.total_cmp(b));
    c.dedup();
    c
}

fn star_2d(points: &[Vec<f64>]) -> f64 {
    let n = points.len() as f64;
    let ys = critical_values(points.iter().map(|p| p[1]));
    let rank = |y: f64| ys.partition_point(|v| *v < y);
    let mut order: Vec<(f64, usize)> = points.iter().map(|p| (p[0], rank(p[1]))).collect();
    order.sort_by(|a, b| a.0.total_cmp(&b.0));
    let xs = critical_values(points.iter().map(|p| p[0]));

    // hist[r] = points with x below the current u1 and y-rank r
    let mut hist = vec![0u32; ys.len()];
    let mut next = 0;
    let mut worst: f64 = 0.0;
    for &u1 in &xs {
        let open_hist = hist.clone();
        while next < order.len() && order[next].0 <= u1 {
            hist[order[next].1] += 1;
            next += 1;
        }
        // open: x < u1, y < u2; closed: x <= u1, y <= u2
        let mut open = 0u32;
        let mut closed = 0u32;
        for (j, &u2) in ys.iter().enumerate() {
            closed += hist[j];
            let vol = u1 * u2;
            worst = worst.max(closed as f64 / n - vol).max(vol - open as f64 / n);
            open += open_hist[j];
        }
    }
    worst
}

fn local_3d(points: &[Vec<f64>], u: [f64; 3]) -> f64 {
    let n = points.len() as f64;
    let mut open = 0usize;
    let mut closed = 0usize;
    for p in points {
        if p[0] <= u[0] && p[1] <= u[1] && p[2] <= u[2] {
            closed += 1;
            if p[0] < u[0] && p[1] < u[1] && p[2] < u[2] {
                open += 1;
            }
        }
    }
    let vol = u[0] * u[1] * u[2];
    (closed as f64 / n - vol).max(vol - open as f64 / n)
}

fn star_3d_lower(points: &[Vec<f64>]) -> f64 {
    let n = points.len();
    let coord = |k: usize| critical_values(points.iter().map(move |p| p[k]));
    let grids = [coord(0), coord(1), coord(2)];
    let mut worst: f64 = 0.0;
    // boxes anchored at the points themselves, then random grid corners
    let step = (n / (SAMPLED_BOXES_3D / 2)).max(1);
    for p in points.iter().step_by(step) {
        worst = worst.max(local_3d(points, [p[0], p[1], p[2]]));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for _ in 0..SAMPLED_BOXES_3D / 2 {
        let u = [0, 1, 2].map(|k| grids[k][rng.gen_range(0..grids[k].len())]);
        worst = worst.max(local_3d(points, u));
    }
    worst
}

/// Star discrepancy `sup_u |#{x_i in [0, u)}/N - vol [0, u)|`: exact in
/// dimensions 1 and 2, a lower bound in dimension 3.
pub fn star_discrepancy(points: &[Vec<f64>]) -> Result<DiscrepancyReport> {
    let n = points.len();
    if n == 0 {
        return Err(Error::InvalidArgument("empty point set".into()));
    }
    let d = points[0].len();
    if points.iter().any(|p| p.len() != d) {
        return Err(Error::InvalidArgument("points of mixed dimension".into()));
    }
    if points.iter().flatten().any(|x| !(0.0..=1.0).contains(x)) {
        return Err(Error::InvalidArgument("points must lie in [0, 1]^d".into()));
    }
    let (star, method) = match d {
        1 => (star_1d(&points.iter().map(|p| p[0]).collect::<Vec<_>>()), DiscrepancyMethod::Exact1d),
        2 => {
            if n > MAX_EXACT_2D {
                return Err(Error::SizeExceeded(format!(
                    "exact 2-d discrepancy limited to N <= {MAX_EXACT_2D}, got {n}"
                )));
            }
            (star_2d(points), DiscrepancyMethod::Exact2d)
        }
        3 => (star_3d_lower(points), DiscrepancyMethod::LowerBound),
        _ => {
            return Err(Error::InvalidArgument(format!(
                "dimension must be 1, 2 or 3, got {d}"
            )))
        }
    };
    Ok(DiscrepancyReport {
        n,
        dimension: d,
        star_discrepancy: star.min(1.0),
        method,
        extreme_factor: (1u32 << d) as f64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mp::MpCtx;
    use crate::zeta::{frobenius_angles, ZetaNumerator};
    use num_bigint::BigInt;
    use proptest::prelude::*;

    /// Local discrepancy maximized over every box whose corner coordinates
    /// come from the points or 1, each tested open and closed.
    fn brute(points: &[Vec<f64>]) -> f64 {
        let d = points[0].len();
        let n = points.len() as f64;
        let grids: Vec<Vec<f64>> = (0..d)
            .map(|k| critical_values(points.iter().map(|p| p[k])))
            .collect();
        let mut idx = vec![0usize; d];
        let mut worst: f64 = 0.0;
        loop {
            let u: Vec<f64> = (0..d).map(|k| grids[k][idx[k]]).collect();
            let vol: f64 = u.iter().product();
            let closed = points.iter().filter(|p| p.iter().zip(&u).all(|(x, v)| x <= v)).count();
            let open = points.iter().filter(|p| p.iter().zip(&u).all(|(x, v)| x < v)).count();
            worst = worst.max(closed as f64 / n - vol).max(vol - open as f64 / n);
            let mut k = 0;
            loop {
                if k == d {
                    return worst;
                }
                idx[k] += 1;
                if idx[k] < grids[k].len() {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
        }
    }

    fn pts1(v: &[f64]) -> Vec<Vec<f64>> {
        v.iter().map(|x| vec![*x]).collect()
    }

    #[test]
    fn one_dimensional_examples() {
        assert_eq!(star_discrepancy(&pts1(&[0.5])).unwrap().star_discrepancy, 0.5);
        for n in [1usize, 2, 7, 100] {
            let v: Vec<f64> = (1..=n).map(|i| (2 * i - 1) as f64 / (2 * n) as f64).collect();
            let r = star_discrepancy(&pts1(&v)).unwrap();
            assert!((r.star_discrepancy - 1.0 / (2 * n) as f64).abs() < 1e-15);
            assert_eq!(r.method, DiscrepancyMethod::Exact1d);
            assert_eq!(r.extreme_factor, 2.0);
        }
    }

    #[test]
    fn kronecker_examples() {
        let ctx = MpCtx::new(256);
        let half = FrobeniusAngles::from_values(vec![ctx.ratio(1, 2)], 50, BigInt::from(3));
        let p = kronecker_points(&half, 4).unwrap();
        assert_eq!(p, vec![vec![0.5], vec![0.0], vec![0.5], vec![0.0]]);

        let z = ZetaNumerator::from_i64(1, 5, &[1, -2, 5]).unwrap();
        let a = frobenius_angles(&z, 50).unwrap();
        let p = kronecker_points(&a, 2).unwrap();
        assert!((p[0][0] - 0.6475836176).abs() < 1e-9);
        assert!((p[1][0] - 0.2951672353).abs() < 1e-9);
        assert!(kronecker_points(&a, MAX_KRONECKER_N + 1).is_err());
    }

    #[test]
    fn kronecker_discrepancy_decays() {
        let z = ZetaNumerator::from_i64(1, 5, &[1, 2, 5]).unwrap();
        let a = frobenius_angles(&z, 50).unwrap();
        let p = kronecker_points(&a, 10_000).unwrap();
        let small = star_discrepancy(&p[..100]).unwrap().star_discrepancy;
        let large = star_discrepancy(&p).unwrap().star_discrepancy;
        assert!(large < small);
    }

    #[test]
    fn guards() {
        let big: Vec<Vec<f64>> = (0..MAX_EXACT_2D + 1).map(|i| vec![i as f64 / 2e4, 0.5]).collect();
        assert!(matches!(star_discrepancy(&big), Err(Error::SizeExceeded(_))));
        assert!(star_discrepancy(&[vec![0.1; 4]]).is_err());
        assert!(star_discrepancy(&[vec![1.5]]).is_err());
    }

    #[test]
    fn three_d_is_a_lower_bound() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let p: Vec<Vec<f64>> = (0..30).map(|_| (0..3).map(|_| rand::Rng::gen::<f64>(&mut rng)).collect()).collect();
        let r = star_discrepancy(&p).unwrap();
        assert_eq!(r.method, DiscrepancyMethod::LowerBound);
        assert!(r.star_discrepancy <= brute(&p) + 1e-15);
        assert_eq!(r.extreme_factor, 8.0);
    }

    fn grid_points(d: usize) -> impl Strategy<Value = Vec<Vec<f64>>> {
        // coarse grid values make ties between coordinates common
        prop::collection::vec(prop::collection::vec(0u32..=8, d), 1..25)
            .prop_map(|v| v.into_iter().map(|p| p.into_iter().map(|x| x as f64 / 8.0).collect()).collect())
    }

    proptest! {
        #[test]
        fn exact_1d_matches_brute_force(p in grid_points(1)) {
            let a = star_discrepancy(&p).unwrap().star_discrepancy;
            prop_assert!((a - brute(&p)).abs() < 1e-12);
        }

        #[test]
        fn exact_2d_matches_brute_force(p in grid_points(2)) {
            let a = star_discrepancy(&p).unwrap().star_discrepancy;
            prop_assert!((a - brute(&p)).abs() < 1e-12);
            prop_assert!(a > 0.0 && a <= 1.0);
        }
    }
}
