//! Orbit classification of 3-forms on `ℝⁿ`.
//!
//! A nonzero 3-form whose contractions `τ_X` at unit `X` all lie in a single
//! O(n)-orbit is, up to scale, one of: the volume form on ℝ³, the G₂ form
//! on ℝ⁷, or the SU(3) form on ℝ⁶. Nothing else exists, so any other
//! dimension with a constant orbit is reported as [`Verdict::Anomaly`].

mod conjugate;
mod gvcp;
mod vcp;

pub use conjugate::{check_orthogonal, conjugate, ORTHOGONALITY_TOLERANCE};
pub use gvcp::{
    is_gvcp, trace_identity_residuals, GvcpCheck, GvcpMode, GvcpOptions, GvcpOutcome, Witness,
    DEFAULT_SAMPLES, DETERMINISTIC_MAX_DIM, POLARIZATION_TOLERANCE,
};
pub use vcp::{is_vcp, is_vcp_with_tolerance, VcpCertificate, VCP_TOLERANCE};

use serde::Serialize;
use thiserror::Error;

use crate::exterior::{ExteriorError, ExteriorForm};
use crate::lifting;
use crate::spectral::{OrbitSignature, SpectralError};

/// Relative agreement required between the scale read off the spectrum and
/// the scale implied by `|τ|`.
pub const SCALE_CONSISTENCY_TOLERANCE: f64 = 1e-7;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ClassifyError {
    #[error(transparent)]
    Exterior(#[from] ExteriorError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error("the zero form has no associated endomorphism")]
    ZeroForm,
    #[error("matrix is not orthogonal (max |QᵀQ − I| = {deviation:e})")]
    NotOrthogonal { deviation: f64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Zero,
    /// Multiple of `e123` on ℝ³.
    Vol3,
    /// Rescaled vector cross product on ℝ⁷.
    G2,
    /// Rescaled `σ₀` up to O(6) on ℝ⁶.
    Su3,
    NotGvcp,
    /// Numerics contradict the classification; never expected on exact input.
    Anomaly,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Zero => "ZERO",
            Verdict::Vol3 => "VOL3",
            Verdict::G2 => "G2",
            Verdict::Su3 => "SU3",
            Verdict::NotGvcp => "NOT_GVCP",
            Verdict::Anomaly => "ANOMALY",
        }
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClassificationReport {
    pub verdict: Verdict,
    /// `λ ≥ 0` with `τ/λ` in the canonical orbit.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scale: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub signature: Option<OrbitSignature>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub diagnostics: Vec<String>,
}

impl ClassificationReport {
    fn new(verdict: Verdict) -> Self {
        Self {
            verdict,
            scale: None,
            signature: None,
            witness: None,
            diagnostics: Vec::new(),
        }
    }

    fn anomaly(mut self, why: String) -> Self {
        self.verdict = Verdict::Anomaly;
        self.diagnostics.push(why);
        self
    }
}

pub fn classify(tau: &ExteriorForm) -> Result<ClassificationReport, ClassifyError> {
    classify_with(tau, &GvcpOptions::default())
}

pub fn classify_with(
    tau: &ExteriorForm,
    opts: &GvcpOptions,
) -> Result<ClassificationReport, ClassifyError> {
    tau.expect_degree(3)?;
    if tau.is_zero() {
        return Ok(ClassificationReport::new(Verdict::Zero));
    }
    let check = is_gvcp(tau, opts)?;
    let mut report = ClassificationReport::new(Verdict::NotGvcp);
    report.diagnostics = check.diagnostics;
    let signature = match check.outcome {
        GvcpOutcome::Varies(w) => {
            report.witness = Some(w);
            return Ok(report);
        }
        GvcpOutcome::Inconclusive => {
            return Ok(report.anomaly(
                "trace identities fail yet every probed unit vector has the same orbit".into(),
            ))
        }
        GvcpOutcome::Constant(sig) => sig,
    };
    report.signature = Some(signature.clone());

    let n = tau.dim();
    if !matches!(n, 3 | 6 | 7) {
        return Ok(report.anomaly(format!(
            "constant orbit signature in dimension {n}, where no generalized vector cross product exists"
        )));
    }
    let nonzero: Vec<(f64, usize)> = signature.nonzero().collect();
    let &[(value, multiplicity)] = nonzero.as_slice() else {
        return Ok(report.anomaly(format!(
            "constant signature {signature} has {} distinct nonzero eigenvalues, expected exactly one",
            nonzero.len()
        )));
    };

    // Summing tr(τ_X²) = −m·λ² over an orthonormal basis gives
    // Σ_i |e_i ⌟ τ|² = 3|τ|² = n·m·λ²/2, an exact route to λ.
    let from_norm = (6.0 * tau.norm_squared() / (n * multiplicity) as f64).sqrt();
    let from_spectrum = (-value).sqrt();
    if (from_norm - from_spectrum).abs() > SCALE_CONSISTENCY_TOLERANCE * from_norm {
        return Ok(report.anomaly(format!(
            "scale from spectrum {from_spectrum} disagrees with scale from norm {from_norm}"
        )));
    }
    report.scale = Some(from_norm);

    match (n, multiplicity) {
        (3, 2) => {
            report.scale = Some(tau.coeff(&[1, 2, 3]).abs());
            report.verdict = Verdict::Vol3;
        }
        (7, 6) => {
            let cert = is_vcp(&tau.scaled(1.0 / from_norm))?;
            report.diagnostics.push(format!(
                "τ/λ vector cross product residual {:.3e}",
                cert.residual
            ));
            if !cert.holds {
                return Ok(report.anomaly("τ/λ fails the vector cross product identity".into()));
            }
            report.verdict = Verdict::G2;
        }
        (6, 4) => {
            let lifted = match lifting::lift(tau) {
                Ok(t) => t,
                Err(e) => return Ok(report.anomaly(format!("lift to ℝ⁷ failed: {e}"))),
            };
            let cert = is_vcp(&lifted.scaled(1.0 / from_norm))?;
            report.diagnostics.push(format!(
                "lift(τ)/λ vector cross product residual {:.3e}",
                cert.residual
            ));
            if !cert.holds {
                return Ok(
                    report.anomaly("lift(τ)/λ fails the vector cross product identity".into())
                );
            }
            report.verdict = Verdict::Su3;
        }
        _ => {
            return Ok(report.anomaly(format!(
                "constant signature {signature} in dimension {n} matches no admissible orbit"
            )))
        }
    }
    Ok(report)
}
