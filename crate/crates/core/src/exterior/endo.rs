use std::ops::Index;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use super::{Blade, ExteriorError, ExteriorForm, MAX_DIM, SKEW_TOLERANCE};

/// A vector in Euclidean `ℝⁿ` with finite entries.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(into = "Vec<f64>", try_from = "Vec<f64>")]
pub struct Vector(DVector<f64>);

impl From<Vector> for Vec<f64> {
    fn from(v: Vector) -> Self {
        v.0.as_slice().to_vec()
    }
}

impl TryFrom<Vec<f64>> for Vector {
    type Error = ExteriorError;

    fn try_from(entries: Vec<f64>) -> Result<Self, Self::Error> {
        Self::new(entries)
    }
}

impl Vector {
    pub fn new(entries: Vec<f64>) -> Result<Self, ExteriorError> {
        Self::from_dvector(DVector::from_vec(entries))
    }

    pub fn from_dvector(v: DVector<f64>) -> Result<Self, ExteriorError> {
        if v.is_empty() || v.len() > MAX_DIM {
            return Err(ExteriorError::DimensionOutOfRange { dim: v.len() });
        }
        if v.iter().any(|x| !x.is_finite()) {
            return Err(ExteriorError::NonFiniteCoefficient);
        }
        Ok(Self(v))
    }

    pub fn zeros(dim: usize) -> Self {
        Self(DVector::zeros(dim))
    }

    /// The standard basis vector `e_index`, one-based.
    ///
    /// # Panics
    /// If `index` is not in `1..=dim`.
    pub fn basis(dim: usize, index: usize) -> Self {
        assert!(
            (1..=dim).contains(&index),
            "basis index {index} outside 1..={dim}"
        );
        let mut v = DVector::zeros(dim);
        v[index - 1] = 1.0;
        Self(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[f64] {
        self.0.as_slice()
    }

    pub fn as_dvector(&self) -> &DVector<f64> {
        &self.0
    }

    pub fn norm(&self) -> f64 {
        self.0.norm()
    }

    pub fn dot(&self, other: &Self) -> f64 {
        self.0.dot(&other.0)
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self(&self.0 * factor)
    }

    pub fn add(&self, other: &Self) -> Self {
        Self(&self.0 + &other.0)
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self(&self.0 - &other.0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|x| *x == 0.0)
    }

    /// `self / |self|`, or `None` for the zero vector.
    pub fn normalized(&self) -> Option<Self> {
        let n = self.norm();
        (n > 0.0).then(|| self.scaled(1.0 / n))
    }
}

impl Index<usize> for Vector {
    type Output = f64;

    /// Zero-based component access.
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

/// A skew-symmetric endomorphism of `ℝⁿ`, held as its matrix in the standard
/// basis (column `i` is the image of `e_{i+1}`).
#[derive(Clone, Debug, PartialEq)]
pub struct SkewEndo {
    matrix: DMatrix<f64>,
}

impl SkewEndo {
    /// Accepts a square matrix with `|M + Mᵀ| ≤ 1e-12` entrywise and stores its
    /// skew part.
    pub fn from_matrix(matrix: DMatrix<f64>) -> Result<Self, ExteriorError> {
        if !matrix.is_square() {
            return Err(ExteriorError::NotSquare {
                rows: matrix.nrows(),
                cols: matrix.ncols(),
            });
        }
        let dim = matrix.nrows();
        if dim == 0 || dim > MAX_DIM {
            return Err(ExteriorError::DimensionOutOfRange { dim });
        }
        if matrix.iter().any(|x| !x.is_finite()) {
            return Err(ExteriorError::NonFiniteCoefficient);
        }
        let deviation = (&matrix + matrix.transpose()).amax();
        if deviation > SKEW_TOLERANCE {
            return Err(ExteriorError::NotSkew { deviation });
        }
        let matrix = if deviation == 0.0 {
            matrix
        } else {
            (&matrix - matrix.transpose()) * 0.5
        };
        Ok(Self { matrix })
    }

    pub fn zero(dim: usize) -> Self {
        Self {
            matrix: DMatrix::zeros(dim, dim),
        }
    }

    /// The endomorphism `A` of a 2-form `β` with `⟨A e_i, e_j⟩ = β(e_i, e_j)`.
    ///
    /// So `e12` maps `e1 ↦ e2` and `e2 ↦ -e1`.
    pub fn from_two_form(beta: &ExteriorForm) -> Result<Self, ExteriorError> {
        beta.expect_degree(2)?;
        let n = beta.dim();
        let mut matrix = DMatrix::zeros(n, n);
        for (blade, c) in beta.terms() {
            let mut ix = blade.indices();
            let (i, j) = (ix.next().unwrap(), ix.next().unwrap());
            matrix[(j, i)] = c;
            matrix[(i, j)] = -c;
        }
        Ok(Self { matrix })
    }

    /// Inverse of [`from_two_form`](Self::from_two_form).
    pub fn to_two_form(&self) -> ExteriorForm {
        let n = self.dim();
        let mut beta = ExteriorForm::zero(n, 2).expect("dimension validated on construction");
        for i in 0..n {
            for j in (i + 1)..n {
                let c = self.matrix[(j, i)];
                if c != 0.0 {
                    let blade = Blade::from_mask((1 << i) | (1 << j));
                    beta.accumulate(blade, c).expect("finite entries");
                }
            }
        }
        beta
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn apply(&self, v: &Vector) -> Vector {
        Vector(&self.matrix * v.as_dvector())
    }

    /// `A²`, a symmetric negative semi-definite matrix.
    pub fn square(&self) -> DMatrix<f64> {
        &self.matrix * &self.matrix
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            matrix: &self.matrix * factor,
        }
    }

    /// `Qᵀ A Q`.
    pub fn conjugated(&self, q: &DMatrix<f64>) -> Self {
        let m = q.transpose() * &self.matrix * q;
        Self {
            matrix: (&m - m.transpose()) * 0.5,
        }
    }

    /// Derivation action on forms: `A · η = Σ_i A(e_i) ∧ (e_i ⌟ η)`.
    ///
    /// Degree-preserving, vanishes on scalars, and on 1-forms reproduces
    /// `v ↦ A(v)`.
    pub fn act_on(&self, eta: &ExteriorForm) -> Result<ExteriorForm, ExteriorError> {
        if eta.dim() != self.dim() {
            return Err(ExteriorError::DimensionMismatch {
                left: self.dim(),
                right: eta.dim(),
            });
        }
        let n = self.dim();
        let mut out = ExteriorForm::zero(n, eta.degree())?;
        for (blade, c) in eta.terms() {
            for i in blade.indices() {
                let (sign, rest) = blade.contract(i).expect("index taken from blade");
                for j in 0..n {
                    let a = self.matrix[(j, i)];
                    if a == 0.0 {
                        continue;
                    }
                    if let Some((s2, target)) = Blade::unit(j).wedge(rest) {
                        out.accumulate(target, s2 * sign * a * c)?;
                    }
                }
            }
        }
        Ok(out)
    }
}
