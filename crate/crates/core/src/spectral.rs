//! Contraction endomorphisms `τ_X` and their O(n)-conjugacy invariants.
//!
//! Two skew endomorphisms are orthogonally conjugate iff their squares have
//! the same eigenvalues with the same multiplicities, so the sorted spectrum
//! of `A²` (an [`OrbitSignature`] once clustered) decides orbit membership.
//! Spectra are always taken from the symmetric matrix `A²`.

use nalgebra::{DMatrix, SymmetricEigen};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exterior::{ExteriorError, ExteriorForm, SkewEndo, Vector};

/// Default absolute clustering tolerance, applied after scaling `A` to unit
/// operator norm.
pub const DEFAULT_CLUSTER_TOL: f64 = 1e-8;

/// Clusters separated by more than `tol` but at most this many `tol` are
/// reported as ambiguous.
pub const AMBIGUITY_FACTOR: f64 = 10.0;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpectralError {
    #[error(transparent)]
    Exterior(#[from] ExteriorError),
    #[error(
        "ambiguous eigenvalue clustering: gap {gap:e} lies between tol {tol:e} and {}·tol",
        AMBIGUITY_FACTOR
    )]
    Ambiguous { gap: f64, tol: f64 },
    #[error("nonzero eigenvalue {value} of A² has odd multiplicity {multiplicity}")]
    OddMultiplicity { value: f64, multiplicity: usize },
    #[error("invalid signature: {0}")]
    InvalidSignature(&'static str),
}

/// The O(n)-conjugacy class of a skew endomorphism: eigenvalues of `A²`
/// (all `≤ 0`, strictly increasing) with their multiplicities.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<(f64, usize)>", into = "Vec<(f64, usize)>")]
pub struct OrbitSignature {
    pairs: Vec<(f64, usize)>,
}

impl OrbitSignature {
    pub fn new(pairs: Vec<(f64, usize)>) -> Result<Self, SpectralError> {
        if pairs.is_empty() {
            return Err(SpectralError::InvalidSignature("empty"));
        }
        for w in pairs.windows(2) {
            if w[0].0 >= w[1].0 {
                return Err(SpectralError::InvalidSignature(
                    "values not strictly increasing",
                ));
            }
        }
        for &(value, multiplicity) in &pairs {
            if !value.is_finite() || value > 0.0 {
                return Err(SpectralError::InvalidSignature("values must be ≤ 0"));
            }
            if multiplicity == 0 {
                return Err(SpectralError::InvalidSignature("zero multiplicity"));
            }
            if value != 0.0 && multiplicity % 2 == 1 {
                return Err(SpectralError::OddMultiplicity {
                    value,
                    multiplicity,
                });
            }
        }
        Ok(Self { pairs })
    }

    pub fn pairs(&self) -> &[(f64, usize)] {
        &self.pairs
    }

    /// Sum of multiplicities, i.e. the ambient dimension.
    pub fn dim(&self) -> usize {
        self.pairs.iter().map(|p| p.1).sum()
    }

    pub fn kernel_dim(&self) -> usize {
        self.pairs.iter().find(|p| p.0 == 0.0).map_or(0, |p| p.1)
    }

    pub fn nonzero(&self) -> impl Iterator<Item = (f64, usize)> + '_ {
        self.pairs.iter().copied().filter(|p| p.0 != 0.0)
    }

    /// Signature of `λA`: every value multiplied by `λ²`.
    pub fn scaled(&self, lambda: f64) -> Self {
        let s = lambda * lambda;
        if s == 0.0 {
            return Self {
                pairs: vec![(0.0, self.dim())],
            };
        }
        Self {
            pairs: self.pairs.iter().map(|&(v, m)| (v * s, m)).collect(),
        }
    }

    /// `tr(A^{2k}) = Σ m·v^k` for `k = 1..=kmax`.
    pub fn power_traces(&self, kmax: usize) -> TraceVector {
        let values = (1..=kmax)
            .map(|k| {
                self.pairs
                    .iter()
                    .map(|&(v, m)| m as f64 * v.powi(k as i32))
                    .sum()
            })
            .collect();
        TraceVector { values }
    }

    /// Same multiplicities and values within `tol` relative to the larger
    /// spectral radius of the two.
    pub fn matches(&self, other: &Self, tol: f64) -> bool {
        if self.pairs.len() != other.pairs.len() {
            return false;
        }
        let scale = self
            .pairs
            .iter()
            .chain(&other.pairs)
            .fold(0.0f64, |m, p| m.max(p.0.abs()))
            .max(f64::MIN_POSITIVE);
        self.pairs
            .iter()
            .zip(&other.pairs)
            .all(|(a, b)| a.1 == b.1 && (a.0 - b.0).abs() <= tol * scale)
    }
}

impl TryFrom<Vec<(f64, usize)>> for OrbitSignature {
    type Error = SpectralError;

    fn try_from(pairs: Vec<(f64, usize)>) -> Result<Self, Self::Error> {
        Self::new(pairs)
    }
}

impl From<OrbitSignature> for Vec<(f64, usize)> {
    fn from(sig: OrbitSignature) -> Self {
        sig.pairs
    }
}

impl std::fmt::Display for OrbitSignature {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{")?;
        for (i, (v, m)) in self.pairs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "({v}, {m})")?;
        }
        write!(f, "}}")
    }
}

/// `a_k = tr(A^{2k})` for `k = 1..=kmax`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct TraceVector {
    pub values: Vec<f64>,
}

impl TraceVector {
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .fold(0.0, |m, (a, b)| m.max((a - b).abs()))
    }
}

/// `τ_X` with `⟨τ_X Y, Z⟩ = τ(X, Y, Z)`, i.e. the endomorphism of `X ⌟ τ`.
pub fn contraction_endo(tau: &ExteriorForm, x: &Vector) -> Result<SkewEndo, ExteriorError> {
    tau.expect_degree(3)?;
    SkewEndo::from_two_form(&tau.interior(x)?)
}

/// Default number of trace powers: `⌊n/2⌋` power sums pin down the spectrum
/// of `A²`, whose nonzero eigenvalues come in pairs.
pub fn default_kmax(dim: usize) -> usize {
    dim / 2
}

/// Eigenvalues of the symmetric part of `A²`, ascending.
pub fn squared_spectrum(a: &SkewEndo) -> Vec<f64> {
    let s = a.square();
    let sym = (&s + s.transpose()) * 0.5;
    let mut values: Vec<f64> = SymmetricEigen::new(sym)
        .eigenvalues
        .iter()
        .copied()
        .collect();
    values.sort_by(f64::total_cmp);
    values
}

/// Whether two ascending spectra agree within `tol` relative to the larger
/// spectral radius.
pub fn spectra_match(a: &[f64], b: &[f64], tol: f64) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let scale = a
        .iter()
        .chain(b)
        .fold(0.0f64, |m, v| m.max(v.abs()))
        .max(f64::MIN_POSITIVE);
    a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol * scale)
}

/// Clusters the spectrum of `A²` into an [`OrbitSignature`].
///
/// `A` is scaled to unit operator norm first; eigenvalues whose consecutive
/// gaps are `≤ tol` merge, and a cluster within `tol` of zero is the kernel.
/// A gap in `(tol, 10·tol]` yields [`SpectralError::Ambiguous`].
pub fn orbit_signature(a: &SkewEndo, tol: f64) -> Result<OrbitSignature, SpectralError> {
    let n = a.dim();
    let spectrum = squared_spectrum(a);
    let radius = spectrum.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if radius == 0.0 {
        return OrbitSignature::new(vec![(0.0, n)]);
    }
    let normalized: Vec<f64> = spectrum.iter().map(|v| (v / radius).min(0.0)).collect();

    let mut clusters: Vec<Vec<f64>> = vec![vec![normalized[0]]];
    for w in normalized.windows(2) {
        let gap = w[1] - w[0];
        if gap <= tol {
            clusters.last_mut().unwrap().push(w[1]);
        } else if gap <= AMBIGUITY_FACTOR * tol {
            return Err(SpectralError::Ambiguous { gap, tol });
        } else {
            clusters.push(vec![w[1]]);
        }
    }

    let mut pairs = Vec::with_capacity(clusters.len());
    for cluster in clusters {
        let mean = cluster.iter().sum::<f64>() / cluster.len() as f64;
        let value = if mean.abs() <= tol {
            0.0
        } else if mean.abs() <= AMBIGUITY_FACTOR * tol {
            return Err(SpectralError::Ambiguous {
                gap: mean.abs(),
                tol,
            });
        } else {
            mean * radius
        };
        pairs.push((value, cluster.len()));
    }
    OrbitSignature::new(pairs)
}

/// `tr(τ_X^{2k})` for `k = 1..=kmax` by repeated matrix products.
pub fn newton_traces(
    tau: &ExteriorForm,
    x: &Vector,
    kmax: usize,
) -> Result<TraceVector, ExteriorError> {
    let a = contraction_endo(tau, x)?;
    Ok(TraceVector {
        values: square_power_traces(&a.square(), kmax),
    })
}

/// `tr(S^k)` for `k = 1..=kmax`.
pub(crate) fn square_power_traces(s: &DMatrix<f64>, kmax: usize) -> Vec<f64> {
    let mut values = Vec::with_capacity(kmax);
    let mut power = s.clone();
    for k in 1..=kmax {
        if k > 1 {
            power = &power * s;
        }
        values.push(power.trace());
    }
    values
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canonical;

    #[test]
    fn a0_signature() {
        let sig = orbit_signature(&canonical::a0(3), DEFAULT_CLUSTER_TOL).unwrap();
        assert_eq!(sig.pairs(), &[(-1.0, 6), (0.0, 1)]);
    }

    #[test]
    fn zero_signature() {
        let sig = orbit_signature(&SkewEndo::zero(5), DEFAULT_CLUSTER_TOL).unwrap();
        assert_eq!(sig.pairs(), &[(0.0, 5)]);
    }

    #[test]
    fn sigma0_contraction_signature() {
        let a = contraction_endo(&canonical::sigma0(), &Vector::basis(6, 1)).unwrap();
        assert_eq!(
            a,
            SkewEndo::from_two_form(
                &ExteriorForm::from_terms(6, 2, [(&[3usize, 5][..], 1.0), (&[4, 6][..], -1.0)])
                    .unwrap()
            )
            .unwrap()
        );
        let sig = orbit_signature(&a, DEFAULT_CLUSTER_TOL).unwrap();
        assert_eq!(sig.pairs(), &[(-1.0, 4), (0.0, 2)]);
    }

    #[test]
    fn tau0_contraction_at_e1() {
        let a = contraction_endo(&canonical::tau0(), &Vector::basis(7, 1)).unwrap();
        let expected = ExteriorForm::from_terms(
            7,
            2,
            [
                (&[2usize, 7][..], 1.0),
                (&[3, 5][..], 1.0),
                (&[4, 6][..], -1.0),
            ],
        )
        .unwrap();
        assert_eq!(a.to_two_form(), expected);
    }

    #[test]
    fn contraction_kills_its_argument() {
        let tau = canonical::tau0();
        let x = Vector::new(vec![0.3, -1.2, 0.7, 2.0, 0.1, -0.4, 1.1]).unwrap();
        let a = contraction_endo(&tau, &x).unwrap();
        assert!(a.apply(&x).norm() < 1e-14);
    }

    #[test]
    fn newton_trace_examples() {
        let t = newton_traces(&canonical::tau0(), &Vector::basis(7, 1), 2).unwrap();
        assert_eq!(t.values, vec![-6.0, 6.0]);
        let t = newton_traces(&canonical::sigma0(), &Vector::basis(6, 1), 2).unwrap();
        assert_eq!(t.values, vec![-4.0, 4.0]);
        let zero = ExteriorForm::zero(5, 3).unwrap();
        let t = newton_traces(&zero, &Vector::basis(5, 2), 3).unwrap();
        assert_eq!(t.values, vec![0.0; 3]);
    }

    #[test]
    fn ambiguous_clusters_are_flagged() {
        // two 2-planes rotating at rates whose squares differ by ~5e-8
        let beta = ExteriorForm::from_terms(
            4,
            2,
            [
                (&[1usize, 2][..], 1.0),
                (&[3, 4][..], (1.0f64 - 5e-8).sqrt()),
            ],
        )
        .unwrap();
        let a = SkewEndo::from_two_form(&beta).unwrap();
        assert!(matches!(
            orbit_signature(&a, 1e-8),
            Err(SpectralError::Ambiguous { .. })
        ));
        let sig = orbit_signature(&a, 1e-6).unwrap();
        assert_eq!(sig.pairs().len(), 1);
        assert_eq!(sig.pairs()[0].1, 4);
    }

    #[test]
    fn signature_validation() {
        assert!(OrbitSignature::new(vec![(-1.0, 3)]).is_err());
        assert!(OrbitSignature::new(vec![(0.5, 2)]).is_err());
        assert!(OrbitSignature::new(vec![(0.0, 1), (-1.0, 2)]).is_err());
        assert!(OrbitSignature::new(vec![]).is_err());
        let sig = OrbitSignature::new(vec![(-1.0, 4), (0.0, 2)]).unwrap();
        assert_eq!(sig.dim(), 6);
        assert_eq!(sig.kernel_dim(), 2);
        assert_eq!(sig.scaled(2.0).pairs(), &[(-4.0, 4), (0.0, 2)]);
        assert_eq!(sig.power_traces(2).values, vec![-4.0, 4.0]);
    }

    #[test]
    fn signature_json_shape() {
        let sig = OrbitSignature::new(vec![(-1.0, 4), (0.0, 2)]).unwrap();
        let json = serde_json::to_string(&sig).unwrap();
        assert_eq!(json, "[[-1.0,4],[0.0,2]]");
        let back: OrbitSignature = serde_json::from_str(&json).unwrap();
        assert_eq!(back, sig);
        assert!(serde_json::from_str::<OrbitSignature>("[[0.0,2],[-1.0,4]]").is_err());
    }
}
