//! Exact integer-coefficient reference objects.

use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use thiserror::Error;

use crate::exterior::{ExteriorForm, SkewEndo};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CanonicalName {
    /// The G₂ 3-form on ℝ⁷.
    Tau0,
    /// `Re((e1+ie2)∧(e3+ie4)∧(e5+ie6))` on ℝ⁶.
    Sigma0,
    /// `e123` on ℝ³.
    Vol3,
    /// The standard complex structure on `ℝ⁶ ⊕ ker` in ℝ⁷.
    A0,
    /// `e12 + e34 + e56`.
    Omega0,
    /// Same form as `Sigma0`.
    PsiPlus,
    /// `*σ₀`.
    PsiMinus,
}

impl CanonicalName {
    pub const ALL: [CanonicalName; 7] = [
        CanonicalName::Tau0,
        CanonicalName::Sigma0,
        CanonicalName::Vol3,
        CanonicalName::A0,
        CanonicalName::Omega0,
        CanonicalName::PsiPlus,
        CanonicalName::PsiMinus,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CanonicalName::Tau0 => "TAU0",
            CanonicalName::Sigma0 => "SIGMA0",
            CanonicalName::Vol3 => "VOL3",
            CanonicalName::A0 => "A0",
            CanonicalName::Omega0 => "OMEGA0",
            CanonicalName::PsiPlus => "PSI_PLUS",
            CanonicalName::PsiMinus => "PSI_MINUS",
        }
    }
}

impl fmt::Display for CanonicalName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("unknown canonical object `{0}` (expected one of TAU0, SIGMA0, VOL3, A0, OMEGA0, PSI_PLUS, PSI_MINUS)")]
pub struct UnknownCanonical(pub String);

impl FromStr for CanonicalName {
    type Err = UnknownCanonical;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let key = s.trim().to_ascii_uppercase().replace('-', "_");
        Self::ALL
            .into_iter()
            .find(|n| n.as_str() == key)
            .ok_or_else(|| UnknownCanonical(s.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum CanonicalObject {
    Form(ExteriorForm),
    Endo(SkewEndo),
}

impl CanonicalObject {
    /// The object as a form; endomorphisms become their 2-form.
    pub fn into_form(self) -> ExteriorForm {
        match self {
            CanonicalObject::Form(f) => f,
            CanonicalObject::Endo(a) => a.to_two_form(),
        }
    }
}

pub fn canonical(name: CanonicalName) -> CanonicalObject {
    match name {
        CanonicalName::Tau0 => CanonicalObject::Form(tau0()),
        CanonicalName::Sigma0 | CanonicalName::PsiPlus => CanonicalObject::Form(sigma0()),
        CanonicalName::Vol3 => CanonicalObject::Form(vol3()),
        CanonicalName::A0 => CanonicalObject::Endo(a0(3)),
        CanonicalName::Omega0 => CanonicalObject::Form(omega0()),
        CanonicalName::PsiMinus => CanonicalObject::Form(psi_minus()),
    }
}

fn exact(dim: usize, degree: usize, terms: &[(&[usize], f64)]) -> ExteriorForm {
    ExteriorForm::from_terms(dim, degree, terms.iter().copied())
        .expect("canonical forms are well formed")
}

/// `e127 + e347 + e567 + e135 − e146 − e236 − e245`.
pub fn tau0() -> ExteriorForm {
    exact(
        7,
        3,
        &[
            (&[1, 2, 7], 1.0),
            (&[3, 4, 7], 1.0),
            (&[5, 6, 7], 1.0),
            (&[1, 3, 5], 1.0),
            (&[1, 4, 6], -1.0),
            (&[2, 3, 6], -1.0),
            (&[2, 4, 5], -1.0),
        ],
    )
}

/// `e135 − e146 − e236 − e245`.
pub fn sigma0() -> ExteriorForm {
    exact(
        6,
        3,
        &[
            (&[1, 3, 5], 1.0),
            (&[1, 4, 6], -1.0),
            (&[2, 3, 6], -1.0),
            (&[2, 4, 5], -1.0),
        ],
    )
}

pub fn vol3() -> ExteriorForm {
    exact(3, 3, &[(&[1, 2, 3], 1.0)])
}

pub fn omega0() -> ExteriorForm {
    exact(6, 2, &[(&[1, 2], 1.0), (&[3, 4], 1.0), (&[5, 6], 1.0)])
}

pub fn psi_plus() -> ExteriorForm {
    sigma0()
}

/// `e136 + e145 + e235 − e246`, the Hodge dual of `σ₀`.
pub fn psi_minus() -> ExteriorForm {
    exact(
        6,
        3,
        &[
            (&[1, 3, 6], 1.0),
            (&[1, 4, 5], 1.0),
            (&[2, 3, 5], 1.0),
            (&[2, 4, 6], -1.0),
        ],
    )
}

/// On `ℝ^{2m+1}`: `e_{2i−1} ↦ e_{2i}`, `e_{2i} ↦ −e_{2i−1}`, `e_{2m+1} ↦ 0`.
pub fn a0(m: usize) -> SkewEndo {
    let n = 2 * m + 1;
    let mut matrix = DMatrix::zeros(n, n);
    for i in 0..m {
        matrix[(2 * i + 1, 2 * i)] = 1.0;
        matrix[(2 * i, 2 * i + 1)] = -1.0;
    }
    SkewEndo::from_matrix(matrix).expect("exactly skew")
}

/// The standard complex structure on ℝ⁶, endomorphism of `ω₀`.
pub fn j0() -> SkewEndo {
    SkewEndo::from_two_form(&omega0()).expect("degree 2")
}
