//! Deterministic identity testing for homogeneous polynomials.
//!
//! A homogeneous polynomial `p` of degree `d` on `ℝⁿ` vanishes identically iff
//! its full polarization `P` vanishes on every multiset of basis vectors.
//! `P` is recovered from values of `p` alone:
//!
//! ```text
//! P(v_1, …, v_d) = 1/d! · Σ_{S ⊆ {1..d}} (−1)^{d−|S|} p(Σ_{j∈S} v_j)
//! ```
//!
//! With `v_j = e_{i_j}` every argument of `p` is a non-negative integer point
//! `β` with `|β| ≤ d`, so each distinct point is evaluated once.

use std::collections::HashMap;

use itertools::Itertools;

/// Packs a lattice point with coordinates `< 16` into a key.
fn key(point: &[u8]) -> u64 {
    point
        .iter()
        .enumerate()
        .fold(0u64, |k, (i, &c)| k | (u64::from(c) << (4 * i)))
}

fn binomial(n: u8, k: u8) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * f64::from(n - i) / f64::from(i + 1))
}

/// Evaluates the full polarization of a degree-`degree` homogeneous
/// polynomial on every multiset of basis vectors of `ℝ^dim` and returns the
/// largest magnitude found.
///
/// `eval` receives integer coordinates of a point `X = Σ β_i e_i` and must
/// return `p(X)`. Each point is requested at most once.
///
/// Subsets of a multiset with counts `c` that sum to the same `β ≤ c` are
/// grouped, each group weighted by `Π C(c_i, β_i)`.
///
/// # Panics
/// If `dim > 16` or `degree > 15`.
pub fn max_polarized_residual<F>(dim: usize, degree: usize, mut eval: F) -> f64
where
    F: FnMut(&[u8]) -> f64,
{
    assert!(
        dim <= 16 && degree <= 15,
        "lattice keys hold 16 coordinates < 16"
    );
    if degree == 0 {
        return eval(&vec![0u8; dim]).abs();
    }
    let factorial: f64 = (1..=degree).map(|k| k as f64).product();
    let mut memo: HashMap<u64, f64> = HashMap::new();
    let mut counts = vec![0u8; dim];
    let mut beta = vec![0u8; dim];
    let mut worst = 0.0f64;

    for multiset in (0..dim).combinations_with_replacement(degree) {
        counts.iter_mut().for_each(|c| *c = 0);
        for &i in &multiset {
            counts[i] += 1;
        }
        let support: Vec<usize> = (0..dim).filter(|&i| counts[i] > 0).collect();
        beta.iter_mut().for_each(|b| *b = 0);
        let mut total = 0.0;
        // odometer over 0 ≤ β ≤ counts on the support, skipping β = 0
        while let Some(pos) = support.iter().position(|&i| beta[i] < counts[i]) {
            for &i in &support[..pos] {
                beta[i] = 0;
            }
            beta[support[pos]] += 1;

            let size: usize = support.iter().map(|&i| usize::from(beta[i])).sum();
            let weight: f64 = support
                .iter()
                .map(|&i| binomial(counts[i], beta[i]))
                .product();
            let value = *memo.entry(key(&beta)).or_insert_with(|| eval(&beta));
            let sign = if (degree - size).is_multiple_of(2) {
                1.0
            } else {
                -1.0
            };
            total += sign * weight * value;
        }
        worst = worst.max((total / factorial).abs());
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identically_zero_polynomial() {
        // (x+y)² − x² − 2xy − y²
        let r = max_polarized_residual(2, 2, |b| {
            let (x, y) = (f64::from(b[0]), f64::from(b[1]));
            (x + y).powi(2) - x * x - 2.0 * x * y - y * y
        });
        assert_eq!(r, 0.0);
    }

    #[test]
    fn recovers_monomial_coefficients() {
        // p = 3·x0²·x1 ; P(e0,e0,e1) = 3/3 = 1
        let r = max_polarized_residual(3, 3, |b| 3.0 * f64::from(b[0]).powi(2) * f64::from(b[1]));
        assert!((r - 1.0).abs() < 1e-14);
    }

    #[test]
    fn detects_non_radial_quartic() {
        // |X|⁴ − (x0⁴ + x1⁴ + x2⁴) ≢ 0
        let r = max_polarized_residual(3, 4, |b| {
            let s: f64 = b.iter().map(|&c| f64::from(c).powi(2)).sum();
            let q: f64 = b.iter().map(|&c| f64::from(c).powi(4)).sum();
            s * s - q
        });
        assert!(r > 0.1);
        let r = max_polarized_residual(3, 4, |b| {
            let s: f64 = b.iter().map(|&c| f64::from(c).powi(2)).sum();
            s * s - s.powi(2)
        });
        assert_eq!(r, 0.0);
    }

    /// Ungrouped `2^d` subset sum, straight from the formula.
    fn naive(dim: usize, degree: usize, p: &dyn Fn(&[u8]) -> f64) -> f64 {
        let factorial: f64 = (1..=degree).map(|k| k as f64).product();
        let mut worst = 0.0f64;
        for multiset in (0..dim).combinations_with_replacement(degree) {
            let mut total = 0.0;
            for subset in 0u32..(1 << degree) {
                let mut point = vec![0u8; dim];
                for (j, &i) in multiset.iter().enumerate() {
                    if subset & (1 << j) != 0 {
                        point[i] += 1;
                    }
                }
                let sign = if (degree - subset.count_ones() as usize).is_multiple_of(2) {
                    1.0
                } else {
                    -1.0
                };
                total += sign * p(&point);
            }
            worst = worst.max((total / factorial).abs());
        }
        worst
    }

    #[test]
    fn grouping_matches_subset_sum() {
        // x0³ − 2·x0·x1·x2 + 0.5·x1²·x3 + x3³
        let p = |b: &[u8]| {
            let x: Vec<f64> = b.iter().map(|&c| f64::from(c)).collect();
            x[0].powi(3) - 2.0 * x[0] * x[1] * x[2] + 0.5 * x[1] * x[1] * x[3] + x[3].powi(3)
        };
        let grouped = max_polarized_residual(4, 3, p);
        assert!((grouped - naive(4, 3, &p)).abs() < 1e-12);
        assert!((grouped - 1.0).abs() < 1e-12);
        let q = |b: &[u8]| {
            let s: f64 = b.iter().map(|&c| f64::from(c).powi(2)).sum();
            s.powi(3) - 1.5 * f64::from(b[2]).powi(6)
        };
        assert!((max_polarized_residual(3, 6, q) - naive(3, 6, &q)).abs() < 1e-9);
    }

    #[test]
    fn each_point_evaluated_once() {
        let mut calls = 0usize;
        max_polarized_residual(4, 4, |_| {
            calls += 1;
            0.0
        });
        // nonzero points with |β| ≤ 4 in 4 variables: C(8,4) − 1
        assert_eq!(calls, 69);
    }
}
