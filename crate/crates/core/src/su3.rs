//! The flat SU(3) model on ℝ⁶: `ω`, `Ψ±` and `J`, and the algebraic
//! identities relating them.

use nalgebra::DMatrix;
use serde::Serialize;
use thiserror::Error;

use crate::canonical;
use crate::classifier::{classify, ClassifyError, Verdict};
use crate::exterior::{ExteriorError, ExteriorForm, SkewEndo, Vector};
use crate::lifting::{f_two_form, LiftError};

/// Tolerance for the frame invariants of a non-standard [`Su3Frame`].
pub const FRAME_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Su3Error {
    #[error(transparent)]
    Exterior(#[from] ExteriorError),
    #[error(transparent)]
    Classify(#[from] ClassifyError),
    #[error(transparent)]
    Lift(#[from] LiftError),
    #[error("input classifies as {0}, not SU3")]
    NotSu3(Verdict),
    #[error("frame invariant `{invariant}` fails (deviation {deviation:.3e})")]
    Invariant {
        invariant: &'static str,
        deviation: f64,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub struct Su3Frame {
    omega: ExteriorForm,
    psi_plus: ExteriorForm,
    psi_minus: ExteriorForm,
    j: SkewEndo,
}

impl Su3Frame {
    /// Builds a frame from `Ψ⁺` and `J`, deriving `ω` and `Ψ⁻ = *Ψ⁺`.
    ///
    /// Checks `J² = −id`, and `¼ Ψ⁺ ∧ *Ψ⁺ = vol`. In the blade convention
    /// `Ψ⁺ ∧ *Ψ⁺ = |Ψ⁺|² vol`, so the quarter matches `|σ₀|² = 4` with no
    /// further factor.
    pub fn new(psi_plus: ExteriorForm, j: SkewEndo) -> Result<Self, Su3Error> {
        psi_plus.expect_degree(3)?;
        if psi_plus.dim() != 6 || j.dim() != 6 {
            return Err(ExteriorError::DimensionMismatch {
                left: 6,
                right: if psi_plus.dim() != 6 {
                    psi_plus.dim()
                } else {
                    j.dim()
                },
            }
            .into());
        }
        let j_square = (j.square() + DMatrix::<f64>::identity(6, 6)).amax();
        if j_square.is_nan() || j_square > FRAME_TOLERANCE {
            return Err(Su3Error::Invariant {
                invariant: "J² = −id",
                deviation: j_square,
            });
        }
        let psi_minus = psi_plus.hodge();
        let top = psi_plus.wedge(&psi_minus)?.scaled(0.25);
        let volume = top.max_abs_diff(&ExteriorForm::volume(6)?)?;
        if volume.is_nan() || volume > FRAME_TOLERANCE {
            return Err(Su3Error::Invariant {
                invariant: "¼ Ψ⁺ ∧ *Ψ⁺ = vol",
                deviation: volume,
            });
        }
        Ok(Self {
            omega: j.to_two_form(),
            psi_plus,
            psi_minus,
            j,
        })
    }

    /// `ω₀`, `Ψ⁺ = σ₀`, `Ψ⁻ = *σ₀`, `J₀`.
    pub fn standard() -> Self {
        Self {
            omega: canonical::omega0(),
            psi_plus: canonical::psi_plus(),
            psi_minus: canonical::psi_minus(),
            j: canonical::j0(),
        }
    }

    /// The frame of an SU3-classified `σ`: `Ψ⁺ = σ/λ` and `J` the Hermitian
    /// structure of `Ψ⁺`.
    pub fn from_gvcp(sigma: &ExteriorForm) -> Result<Self, Su3Error> {
        let report = classify(sigma)?;
        if report.verdict != Verdict::Su3 {
            return Err(Su3Error::NotSu3(report.verdict));
        }
        let lambda = report.scale.expect("SU3 reports carry a scale");
        let psi_plus = sigma.scaled(1.0 / lambda);
        let j = f_two_form(&psi_plus)?.endo;
        Self::new(psi_plus, j)
    }

    pub fn omega(&self) -> &ExteriorForm {
        &self.omega
    }

    pub fn psi_plus(&self) -> &ExteriorForm {
        &self.psi_plus
    }

    pub fn psi_minus(&self) -> &ExteriorForm {
        &self.psi_minus
    }

    pub fn j(&self) -> &SkewEndo {
        &self.j
    }
}

/// Max coefficient of each identity's defect at one `X`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize)]
pub struct Su3Residuals {
    /// `Ψ⁻_X · Ψ⁺ + 2 X ∧ ω`.
    pub psi_minus_x_on_psi_plus: f64,
    /// `Ψ⁻_X · Ψ⁻ + 2 JX ∧ ω`.
    pub psi_minus_x_on_psi_minus: f64,
    /// `J · Ψ⁺ − 3 Ψ⁻`.
    pub j_on_psi_plus: f64,
    /// `J · Ψ⁻ + 3 Ψ⁺`.
    pub j_on_psi_minus: f64,
    /// `X ⌟ Ψ⁻ + JX ⌟ Ψ⁺`.
    pub contraction_swap: f64,
}

impl Su3Residuals {
    pub fn max(&self) -> f64 {
        [
            self.psi_minus_x_on_psi_plus,
            self.psi_minus_x_on_psi_minus,
            self.j_on_psi_plus,
            self.j_on_psi_minus,
            self.contraction_swap,
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }

    pub fn merge(&self, other: &Self) -> Self {
        Self {
            psi_minus_x_on_psi_plus: self
                .psi_minus_x_on_psi_plus
                .max(other.psi_minus_x_on_psi_plus),
            psi_minus_x_on_psi_minus: self
                .psi_minus_x_on_psi_minus
                .max(other.psi_minus_x_on_psi_minus),
            j_on_psi_plus: self.j_on_psi_plus.max(other.j_on_psi_plus),
            j_on_psi_minus: self.j_on_psi_minus.max(other.j_on_psi_minus),
            contraction_swap: self.contraction_swap.max(other.contraction_swap),
        }
    }
}

pub fn check_identities(frame: &Su3Frame, x: &Vector) -> Result<Su3Residuals, ExteriorError> {
    let omega = &frame.omega;
    let (pp, pm) = (&frame.psi_plus, &frame.psi_minus);
    let jx = frame.j.apply(x);
    let pm_x = pm.interior(x)?;
    let a = SkewEndo::from_two_form(&pm_x)?;
    let x_form = ExteriorForm::from_vector(x)?;
    let jx_form = ExteriorForm::from_vector(&jx)?;

    let defect = |lhs: ExteriorForm, rhs: ExteriorForm| -> Result<f64, ExteriorError> {
        Ok(lhs.add(&rhs)?.max_abs_coeff())
    };
    Ok(Su3Residuals {
        psi_minus_x_on_psi_plus: defect(a.act_on(pp)?, x_form.wedge(omega)?.scaled(2.0))?,
        psi_minus_x_on_psi_minus: defect(a.act_on(pm)?, jx_form.wedge(omega)?.scaled(2.0))?,
        j_on_psi_plus: defect(frame.j.act_on(pp)?, pm.scaled(-3.0))?,
        j_on_psi_minus: defect(frame.j.act_on(pm)?, pp.scaled(3.0))?,
        contraction_swap: defect(pm_x, pp.interior(&jx)?)?,
    })
}

/// `X ⌟ Ψ⁻`, a 2-form of type (2,0)+(0,2).
pub fn anti_invariant_embed(x: &Vector, frame: &Su3Frame) -> Result<ExteriorForm, ExteriorError> {
    frame.psi_minus.interior(x)
}
