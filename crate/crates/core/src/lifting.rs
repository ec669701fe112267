//! From an SU(3)-type form on ℝ⁶ to a vector cross product on ℝ⁷ and back.
//!
//! For `σ` on `ℝ^{4k+2}` normalised so every unit contraction `σ_X` has
//! nonzero spectrum `{−1}`, `ψ_X = (σ_X)^{∧2k}/(2k)!` is the volume element of
//! `ker(σ_X)^⊥` and `F(X) = *(X ∧ ψ_X)/|X|^{2k}` completes `X` to an
//! orthonormal basis of `ker(σ_X)`. `F` is a Hermitian structure and
//! `e₇ ∧ F + σ` is a vector cross product on ℝ⁷.

use nalgebra::DMatrix;
use serde::Serialize;
use thiserror::Error;

use crate::classifier::{conjugate, ClassifyError};
use crate::exterior::{ExteriorError, ExteriorForm, SkewEndo, Vector};
use crate::sampling;
use crate::spectral::{contraction_endo, squared_spectrum};

/// Acceptance threshold for every [`HermitianResiduals`] entry.
pub const HERMITIAN_TOLERANCE: f64 = 1e-8;

/// Allowed deviation of the nonzero spectrum from `−1` in [`psi`].
pub const NORMALIZATION_TOLERANCE: f64 = 1e-8;

/// Unit-length tolerance for [`restrict`].
pub const UNIT_TOLERANCE: f64 = 1e-10;

/// Random probes used by [`f_two_form`].
pub const PROBE_COUNT: usize = 50;

const PROBE_SEED: u64 = 0x5eed_f00d;

/// Identities checked on a candidate Hermitian structure `F`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HermitianIdentity {
    /// `σ_X² = −|X|² id + X⊗X + F(X)⊗F(X)`.
    KernelSquare,
    /// `σ_X F(X) = 0`.
    KernelMembership,
    /// `F(X + Y) = F(X) + F(Y)`.
    Linearity,
    /// `F(tX) = t F(X)`.
    Homogeneity,
    /// `FᵀF = id`.
    Orthogonality,
    /// `F + Fᵀ = 0`.
    Skewness,
    /// `F² = −id`.
    ComplexStructure,
}

impl std::fmt::Display for HermitianIdentity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            HermitianIdentity::KernelSquare => "σ_X² = −|X|²·id + X⊗X + F(X)⊗F(X)",
            HermitianIdentity::KernelMembership => "σ_X F(X) = 0",
            HermitianIdentity::Linearity => "F(X+Y) = F(X) + F(Y)",
            HermitianIdentity::Homogeneity => "F(tX) = t·F(X)",
            HermitianIdentity::Orthogonality => "FᵀF = id",
            HermitianIdentity::Skewness => "F + Fᵀ = 0",
            HermitianIdentity::ComplexStructure => "F² = −id",
        })
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LiftError {
    #[error(transparent)]
    Exterior(#[from] ExteriorError),
    #[error(transparent)]
    Classify(#[from] ClassifyError),
    #[error("dimension {dim} is not of the form 4k+2")]
    NotTwoModFour { dim: usize },
    #[error("the F-map is only built on ℝ⁶, got dimension {dim}")]
    NotSix { dim: usize },
    #[error("ψ_X needs a nonzero vector")]
    ZeroVector,
    #[error("the zero form cannot be lifted")]
    ZeroForm,
    #[error("form is not normalised: nonzero spectrum of σ_X² at X/|X| is {found}, expected −1")]
    NotNormalized { found: f64 },
    #[error("vector has norm {norm}, expected 1")]
    NotUnit { norm: f64 },
    #[error("identity {identity} violated (residual {residual:.3e}); input is not a generalized vector cross product")]
    IdentityBreach {
        identity: HermitianIdentity,
        residual: f64,
    },
}

/// Largest deviation observed for each identity.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize)]
pub struct HermitianResiduals {
    pub kernel_square: f64,
    pub kernel_membership: f64,
    pub linearity: f64,
    pub homogeneity: f64,
    pub orthogonality: f64,
    pub skewness: f64,
    pub complex_structure: f64,
}

impl HermitianResiduals {
    fn entries(&self) -> [(HermitianIdentity, f64); 7] {
        [
            (HermitianIdentity::KernelSquare, self.kernel_square),
            (HermitianIdentity::KernelMembership, self.kernel_membership),
            (HermitianIdentity::Linearity, self.linearity),
            (HermitianIdentity::Homogeneity, self.homogeneity),
            (HermitianIdentity::Orthogonality, self.orthogonality),
            (HermitianIdentity::Skewness, self.skewness),
            (HermitianIdentity::ComplexStructure, self.complex_structure),
        ]
    }

    pub fn max(&self) -> f64 {
        self.entries().iter().fold(0.0, |m, e| m.max(e.1))
    }

    /// First identity whose residual exceeds `tol`, in declaration order.
    pub fn first_breach(&self, tol: f64) -> Option<(HermitianIdentity, f64)> {
        self.entries()
            .into_iter()
            .find(|e| e.1.is_nan() || e.1 > tol)
    }
}

/// A verified Hermitian structure `F` together with the residuals that
/// certified it.
#[derive(Clone, Debug, PartialEq)]
pub struct HermitianCandidate {
    pub endo: SkewEndo,
    pub residuals: HermitianResiduals,
}

fn half_rank(dim: usize) -> Result<usize, LiftError> {
    if dim % 4 != 2 {
        return Err(LiftError::NotTwoModFour { dim });
    }
    Ok((dim - 2) / 4)
}

/// `(σ_X)^{∧2k}/(2k)!` without any normalisation check.
fn psi_raw(sigma: &ExteriorForm, x: &Vector, k: usize) -> Result<ExteriorForm, ExteriorError> {
    let sx = sigma.interior(x)?;
    let factorial: f64 = (1..=2 * k).map(|i| i as f64).product();
    Ok(sx.wedge_power(2 * k)?.scaled(1.0 / factorial))
}

/// `ψ_X = (σ_X)^{∧2k}/(2k)!` on `ℝ^{4k+2}`; `σ` must have unit scale.
pub fn psi(sigma: &ExteriorForm, x: &Vector) -> Result<ExteriorForm, LiftError> {
    sigma.expect_degree(3)?;
    let k = half_rank(sigma.dim())?;
    let unit = x.normalized().ok_or(LiftError::ZeroVector)?;
    let spectrum = squared_spectrum(&contraction_endo(sigma, &unit)?);
    let lowest = spectrum[0];
    if (lowest + 1.0).abs() > NORMALIZATION_TOLERANCE {
        return Err(LiftError::NotNormalized { found: lowest });
    }
    Ok(psi_raw(sigma, x, k)?)
}

/// `F(X) = *(X ∧ ψ_X)/|X|²` on ℝ⁶, with `F(0) = 0`.
pub fn f_map(sigma: &ExteriorForm, x: &Vector) -> Result<Vector, LiftError> {
    sigma.expect_degree(3)?;
    if sigma.dim() != 6 {
        return Err(LiftError::NotSix { dim: sigma.dim() });
    }
    if x.dim() != 6 {
        return Err(ExteriorError::DimensionMismatch {
            left: 6,
            right: x.dim(),
        }
        .into());
    }
    if x.is_zero() {
        return Ok(Vector::zeros(6));
    }
    let psi = psi_raw(sigma, x, 1)?;
    let star = ExteriorForm::from_vector(x)?.wedge(&psi)?.hodge();
    Ok(star.to_vector()?.scaled(1.0 / x.dot(x)))
}

/// Assembles `F` from its values on the basis and certifies it as a
/// Hermitian structure compatible with `σ` (which must be normalised).
///
/// Linearity, homogeneity, `σ_X F(X) = 0` and the kernel-square identity
/// are probed at [`PROBE_COUNT`] seeded random vectors.
pub fn f_two_form(sigma: &ExteriorForm) -> Result<HermitianCandidate, LiftError> {
    let residuals_and_matrix = hermitian_residuals(sigma)?;
    let (matrix, residuals) = residuals_and_matrix;
    if let Some((identity, residual)) = residuals.first_breach(HERMITIAN_TOLERANCE) {
        return Err(LiftError::IdentityBreach { identity, residual });
    }
    let skew = (&matrix - matrix.transpose()) * 0.5;
    Ok(HermitianCandidate {
        endo: SkewEndo::from_matrix(skew)?,
        residuals,
    })
}

fn hermitian_residuals(
    sigma: &ExteriorForm,
) -> Result<(DMatrix<f64>, HermitianResiduals), LiftError> {
    let n = 6;
    let columns: Vec<Vector> = (1..=n)
        .map(|i| f_map(sigma, &Vector::basis(n, i)))
        .collect::<Result<_, _>>()?;
    let matrix = DMatrix::from_fn(n, n, |r, c| columns[c][r]);
    let id = DMatrix::<f64>::identity(n, n);
    let mut res = HermitianResiduals {
        orthogonality: (matrix.transpose() * &matrix - &id).amax(),
        skewness: (&matrix + matrix.transpose()).amax(),
        complex_structure: (&matrix * &matrix + &id).amax(),
        ..HermitianResiduals::default()
    };

    let mut rng = sampling::rng(PROBE_SEED);
    for _ in 0..PROBE_COUNT {
        let x = sampling::random_vector(&mut rng, n);
        let y = sampling::random_vector(&mut rng, n);
        let t = sampling::random_vector(&mut rng, 1)[0] * 3.0;
        let fx = f_map(sigma, &x)?;
        let fy = f_map(sigma, &y)?;
        let fxy = f_map(sigma, &x.add(&y))?;
        let linear = Vector::from_dvector(&matrix * x.as_dvector())?;
        res.linearity = res
            .linearity
            .max(fxy.sub(&fx).sub(&fy).norm())
            .max(fx.sub(&linear).norm());
        res.homogeneity = res
            .homogeneity
            .max(f_map(sigma, &x.scaled(t))?.sub(&fx.scaled(t)).norm());

        let sx = contraction_endo(sigma, &x)?;
        res.kernel_membership = res.kernel_membership.max(sx.apply(&fx).norm());
        let xv = x.as_dvector();
        let fv = fx.as_dvector();
        let expected = -&id * x.dot(&x) + xv * xv.transpose() + fv * fv.transpose();
        res.kernel_square = res.kernel_square.max((sx.square() - expected).amax());
    }
    Ok((matrix, res))
}

/// `λ` with `σ/λ` of unit scale: `|σ|² = 4λ²` on ℝ⁶.
fn su3_scale(sigma: &ExteriorForm) -> f64 {
    sigma.norm() / 2.0
}

/// `τ = λ·e₇ ∧ F + σ` on ℝ⁷, with `F` the Hermitian structure of `σ/λ`.
///
/// `τ/λ` is a vector cross product; `lift(σ₀) = τ₀` exactly.
pub fn lift(sigma: &ExteriorForm) -> Result<ExteriorForm, LiftError> {
    sigma.expect_degree(3)?;
    if sigma.dim() != 6 {
        return Err(LiftError::NotSix { dim: sigma.dim() });
    }
    if sigma.is_zero() {
        return Err(LiftError::ZeroForm);
    }
    let lambda = su3_scale(sigma);
    let normalized = if lambda == 1.0 {
        sigma.clone()
    } else {
        sigma.scaled(1.0 / lambda)
    };
    let f = f_two_form(&normalized)?.endo.to_two_form().embed(7)?;
    let e7 = ExteriorForm::blade(7, &[7])?;
    let mut scaled_f = e7.wedge(&f)?;
    if lambda != 1.0 {
        scaled_f = scaled_f.scaled(lambda);
    }
    Ok(scaled_f.add(&sigma.embed(7)?)?)
}

/// `τ − v ∧ (v ⌟ τ)` in the original coordinates.
pub fn remove_direction(tau: &ExteriorForm, v: &Vector) -> Result<ExteriorForm, LiftError> {
    check_unit(v)?;
    let v_form = ExteriorForm::from_vector(v)?;
    Ok(tau.sub(&v_form.wedge(&tau.interior(v)?)?)?)
}

fn check_unit(v: &Vector) -> Result<(), LiftError> {
    let norm = v.norm();
    if (norm - 1.0).abs() > UNIT_TOLERANCE {
        return Err(LiftError::NotUnit { norm });
    }
    Ok(())
}

/// Householder reflection `H` with `H v = e_n` (and `H e_n = v`); the
/// identity when `v = e_n`.
pub fn householder_to_last(v: &Vector) -> DMatrix<f64> {
    let n = v.dim();
    let mut u = v.as_dvector().clone();
    u[n - 1] -= 1.0;
    let uu = u.dot(&u);
    let id = DMatrix::<f64>::identity(n, n);
    if uu == 0.0 {
        return id;
    }
    id - (&u * u.transpose()) * (2.0 / uu)
}

/// The part of `τ` on `v^⊥`, written in the orthonormal basis
/// `H e_1, …, H e_{n−1}` of `v^⊥` where `H` is [`householder_to_last`].
pub fn restrict(tau: &ExteriorForm, v: &Vector) -> Result<ExteriorForm, LiftError> {
    check_unit(v)?;
    let n = tau.dim();
    if v.dim() != n {
        return Err(ExteriorError::DimensionMismatch {
            left: n,
            right: v.dim(),
        }
        .into());
    }
    if n < 2 {
        return Err(ExteriorError::DimensionOutOfRange { dim: n - 1 }.into());
    }
    let h = householder_to_last(v);
    let pulled = conjugate(tau, &h)?;
    Ok(pulled.without_index(n).truncate(n - 1)?)
}
