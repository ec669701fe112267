use std::collections::HashMap;
use std::f64::consts::FRAC_1_SQRT_2;

use nalgebra::DMatrix;
use serde::Serialize;

use super::ClassifyError;
use crate::exterior::{ExteriorForm, Vector};
use crate::polarization::max_polarized_residual;
use crate::sampling;
use crate::spectral::{
    contraction_endo, default_kmax, orbit_signature, spectra_match, square_power_traces,
    squared_spectrum, OrbitSignature, SpectralError, AMBIGUITY_FACTOR,
};

/// Threshold on polarized trace residuals, for `τ` scaled to unit norm.
pub const POLARIZATION_TOLERANCE: f64 = 1e-9;

/// Largest dimension for which deterministic checking is the default.
pub const DETERMINISTIC_MAX_DIM: usize = 8;

pub const DEFAULT_SAMPLES: usize = 256;

/// How constancy of the orbit of `τ_X` over the unit sphere is established.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum GvcpMode {
    /// `tr(τ_X^{2k}) = a_k |X|^{2k}` for `k ≤ ⌊n/2⌋`, decided by full
    /// polarization over basis tuples.
    Deterministic,
    /// Spectra of `τ_X²` compared at seeded random unit vectors.
    Sampled,
}

impl GvcpMode {
    pub fn default_for(dim: usize) -> Self {
        if dim <= DETERMINISTIC_MAX_DIM {
            GvcpMode::Deterministic
        } else {
            GvcpMode::Sampled
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GvcpOptions {
    /// `None` picks [`GvcpMode::default_for`] the dimension.
    pub mode: Option<GvcpMode>,
    /// Clustering / spectral comparison tolerance.
    pub tolerance: f64,
    pub samples: usize,
    pub seed: u64,
}

impl Default for GvcpOptions {
    fn default() -> Self {
        Self {
            mode: None,
            tolerance: crate::spectral::DEFAULT_CLUSTER_TOL,
            samples: DEFAULT_SAMPLES,
            seed: 0,
        }
    }
}

/// Two unit vectors whose contraction endomorphisms lie in different orbits.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Witness {
    pub first: Vector,
    pub second: Vector,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_signature: Option<OrbitSignature>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub second_signature: Option<OrbitSignature>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum GvcpOutcome {
    /// Every unit `X` gives this orbit.
    Constant(OrbitSignature),
    Varies(Witness),
    /// The polynomial test failed but no differing pair was located.
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GvcpCheck {
    pub mode: GvcpMode,
    /// Deterministic: largest polarized residual. Sampled: largest relative
    /// spectral deviation from the reference vector.
    pub residual: f64,
    pub outcome: GvcpOutcome,
    pub diagnostics: Vec<String>,
}

impl GvcpCheck {
    pub fn signature(&self) -> Option<&OrbitSignature> {
        match &self.outcome {
            GvcpOutcome::Constant(sig) => Some(sig),
            _ => None,
        }
    }

    pub fn witness(&self) -> Option<&Witness> {
        match &self.outcome {
            GvcpOutcome::Varies(w) => Some(w),
            _ => None,
        }
    }
}

/// Decides whether `τ_X` stays in one O(n)-orbit as `X` ranges over the
/// unit sphere.
pub fn is_gvcp(tau: &ExteriorForm, opts: &GvcpOptions) -> Result<GvcpCheck, ClassifyError> {
    tau.expect_degree(3)?;
    if tau.is_zero() {
        return Err(ClassifyError::ZeroForm);
    }
    let mode = opts
        .mode
        .unwrap_or_else(|| GvcpMode::default_for(tau.dim()));
    match mode {
        GvcpMode::Deterministic => deterministic(tau, opts),
        GvcpMode::Sampled => sampled(tau, opts),
    }
}

/// Largest polarized residual of `tr(τ_X^{2k}) − a_k|X|^{2k}` for each
/// `k = 1..=kmax`, with `a_k` the basis average of `tr(τ_{e_i}^{2k})`.
///
/// Returned values are for `τ` as given (not rescaled).
pub fn trace_identity_residuals(
    tau: &ExteriorForm,
    kmax: usize,
) -> Result<Vec<(f64, f64)>, ClassifyError> {
    let mut table = TraceTable::new(tau, kmax)?;
    Ok((1..=kmax).map(|k| table.residual(k)).collect())
}

/// `tr(τ_X^{2k})` at integer points `X`, built from the basis contractions
/// `τ_{e_i}` and memoised per point.
struct TraceTable {
    basis: Vec<DMatrix<f64>>,
    kmax: usize,
    cache: HashMap<Vec<u8>, Vec<f64>>,
}

impl TraceTable {
    fn new(tau: &ExteriorForm, kmax: usize) -> Result<Self, ClassifyError> {
        let n = tau.dim();
        let basis = (1..=n)
            .map(|i| {
                Ok(contraction_endo(tau, &Vector::basis(n, i))?
                    .matrix()
                    .clone())
            })
            .collect::<Result<_, ClassifyError>>()?;
        Ok(Self {
            basis,
            kmax,
            cache: HashMap::new(),
        })
    }

    fn traces(&mut self, point: &[u8]) -> &[f64] {
        if !self.cache.contains_key(point) {
            let n = self.basis.len();
            let mut a = DMatrix::<f64>::zeros(n, n);
            for (m, &c) in self.basis.iter().zip(point) {
                if c != 0 {
                    a += m * f64::from(c);
                }
            }
            let t = square_power_traces(&(&a * &a), self.kmax);
            self.cache.insert(point.to_vec(), t);
        }
        &self.cache[point]
    }

    /// `(a_k, residual)` with `a_k` the basis average of `tr(τ_{e_i}^{2k})`.
    fn residual(&mut self, k: usize) -> (f64, f64) {
        let n = self.basis.len();
        let mut a_k = 0.0;
        for i in 0..n {
            let mut p = vec![0u8; n];
            p[i] = 1;
            a_k += self.traces(&p)[k - 1];
        }
        a_k /= n as f64;
        let residual = max_polarized_residual(n, 2 * k, |point| {
            let norm_sq: f64 = point.iter().map(|&c| f64::from(c).powi(2)).sum();
            self.traces(point)[k - 1] - a_k * norm_sq.powi(k as i32)
        });
        (a_k, residual)
    }
}

fn deterministic(tau: &ExteriorForm, opts: &GvcpOptions) -> Result<GvcpCheck, ClassifyError> {
    let n = tau.dim();
    let unit = tau.scaled(1.0 / tau.norm());
    let kmax = default_kmax(n);
    let mut diagnostics = Vec::new();
    let mut table = TraceTable::new(&unit, kmax)?;
    let mut worst = 0.0f64;
    for k in 1..=kmax {
        let (_, residual) = table.residual(k);
        worst = worst.max(residual);
        if residual > POLARIZATION_TOLERANCE {
            diagnostics.push(format!(
                "trace identity fails at power 2k = {}: polarized residual {residual:.3e}",
                2 * k
            ));
            let outcome = match find_witness(tau, opts)? {
                Some(w) => GvcpOutcome::Varies(w),
                None => {
                    diagnostics.push(
                        "no witness pair found among basis, diagonal and sampled unit vectors"
                            .into(),
                    );
                    GvcpOutcome::Inconclusive
                }
            };
            return Ok(GvcpCheck {
                mode: GvcpMode::Deterministic,
                residual: worst,
                outcome,
                diagnostics,
            });
        }
    }
    diagnostics.push(format!(
        "trace identities hold for 2k ≤ {} (max polarized residual {worst:.3e})",
        2 * kmax
    ));
    let signature =
        signature_with_retry(tau, &Vector::basis(n, 1), opts.tolerance, &mut diagnostics)?;
    Ok(GvcpCheck {
        mode: GvcpMode::Deterministic,
        residual: worst,
        outcome: GvcpOutcome::Constant(signature),
        diagnostics,
    })
}

fn sampled(tau: &ExteriorForm, opts: &GvcpOptions) -> Result<GvcpCheck, ClassifyError> {
    let n = tau.dim();
    let mut rng = sampling::rng(opts.seed);
    let reference = sampling::random_unit_vector(&mut rng, n);
    let ref_spec = squared_spectrum(&contraction_endo(tau, &reference)?);
    let radius = ref_spec.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let mut worst = 0.0f64;
    let mut diagnostics = vec![format!(
        "sampled check over {} seeded unit vectors (seed {}); constancy is not proven",
        opts.samples, opts.seed
    )];
    for _ in 1..opts.samples.max(1) {
        let x = sampling::random_unit_vector(&mut rng, n);
        let spec = squared_spectrum(&contraction_endo(tau, &x)?);
        let scale = spec
            .iter()
            .fold(radius, |m, v| m.max(v.abs()))
            .max(f64::MIN_POSITIVE);
        let dev = ref_spec
            .iter()
            .zip(&spec)
            .fold(0.0f64, |m, (a, b)| m.max((a - b).abs() / scale));
        worst = worst.max(dev);
        if dev > opts.tolerance {
            let witness = make_witness(tau, reference, x, opts.tolerance)?;
            return Ok(GvcpCheck {
                mode: GvcpMode::Sampled,
                residual: worst,
                outcome: GvcpOutcome::Varies(witness),
                diagnostics,
            });
        }
    }
    let signature = signature_with_retry(tau, &reference, opts.tolerance, &mut diagnostics)?;
    Ok(GvcpCheck {
        mode: GvcpMode::Sampled,
        residual: worst,
        outcome: GvcpOutcome::Constant(signature),
        diagnostics,
    })
}

/// Orbit signature of `τ_X`, retrying once with a 100× wider tolerance when
/// clustering is ambiguous.
pub(crate) fn signature_with_retry(
    tau: &ExteriorForm,
    x: &Vector,
    tol: f64,
    diagnostics: &mut Vec<String>,
) -> Result<OrbitSignature, ClassifyError> {
    let a = contraction_endo(tau, x)?;
    match orbit_signature(&a, tol) {
        Err(SpectralError::Ambiguous { gap, .. }) => {
            let wider = tol * AMBIGUITY_FACTOR * AMBIGUITY_FACTOR;
            diagnostics.push(format!(
                "ambiguous clustering at tol {tol:e} (gap {gap:.3e}); retried at {wider:e}"
            ));
            Ok(orbit_signature(&a, wider)?)
        }
        other => Ok(other?),
    }
}

/// Candidate unit vectors for witness search: basis vectors, then
/// `(e_i ± e_j)/√2`, then seeded random directions.
fn witness_candidates(n: usize, seed: u64, samples: usize) -> impl Iterator<Item = Vector> {
    let basis = (1..=n).map(move |i| Vector::basis(n, i));
    let diagonals = [1.0, -1.0].into_iter().flat_map(move |s| {
        (1..=n).flat_map(move |i| {
            ((i + 1)..=n).map(move |j| {
                Vector::basis(n, i)
                    .add(&Vector::basis(n, j).scaled(s))
                    .scaled(FRAC_1_SQRT_2)
            })
        })
    });
    let mut rng = sampling::rng(seed);
    let random = (0..samples).map(move |_| sampling::random_unit_vector(&mut rng, n));
    basis.chain(diagonals).chain(random)
}

fn find_witness(tau: &ExteriorForm, opts: &GvcpOptions) -> Result<Option<Witness>, ClassifyError> {
    let n = tau.dim();
    let mut candidates = witness_candidates(n, opts.seed, opts.samples);
    let reference = candidates.next().expect("n ≥ 1");
    let ref_spec = squared_spectrum(&contraction_endo(tau, &reference)?);
    for x in candidates {
        let spec = squared_spectrum(&contraction_endo(tau, &x)?);
        if !spectra_match(&ref_spec, &spec, opts.tolerance) {
            return Ok(Some(make_witness(tau, reference, x, opts.tolerance)?));
        }
    }
    Ok(None)
}

fn make_witness(
    tau: &ExteriorForm,
    first: Vector,
    second: Vector,
    tol: f64,
) -> Result<Witness, ClassifyError> {
    let sig = |x: &Vector| -> Result<Option<OrbitSignature>, ClassifyError> {
        Ok(orbit_signature(&contraction_endo(tau, x)?, tol).ok())
    };
    Ok(Witness {
        first_signature: sig(&first)?,
        second_signature: sig(&second)?,
        first,
        second,
    })
}
