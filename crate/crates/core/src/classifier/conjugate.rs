use nalgebra::DMatrix;

use super::ClassifyError;
use crate::exterior::{ExteriorForm, Vector};

/// Entrywise tolerance on `QᵀQ − I`.
pub const ORTHOGONALITY_TOLERANCE: f64 = 1e-10;

pub fn check_orthogonal(q: &DMatrix<f64>) -> Result<(), ClassifyError> {
    if !q.is_square() {
        return Err(ClassifyError::NotOrthogonal {
            deviation: f64::INFINITY,
        });
    }
    let n = q.nrows();
    let deviation = (q.transpose() * q - DMatrix::<f64>::identity(n, n)).amax();
    if deviation.is_nan() || deviation > ORTHOGONALITY_TOLERANCE {
        return Err(ClassifyError::NotOrthogonal { deviation });
    }
    Ok(())
}

/// Pullback `(Q*η)(X₁, …, X_k) = η(QX₁, …, QX_k)`.
///
/// Each covector `e_i` pulls back to row `i` of `Q`, so a blade
/// `e_{i1} ∧ … ∧ e_{ik}` becomes the wedge of those rows. With this
/// convention the contraction endomorphisms transform as
/// `(Q*τ)_X = Qᵀ τ_{QX} Q`.
pub fn conjugate(form: &ExteriorForm, q: &DMatrix<f64>) -> Result<ExteriorForm, ClassifyError> {
    check_orthogonal(q)?;
    let n = form.dim();
    if q.nrows() != n {
        return Err(ClassifyError::Exterior(
            crate::exterior::ExteriorError::DimensionMismatch {
                left: n,
                right: q.nrows(),
            },
        ));
    }
    let rows: Vec<ExteriorForm> = (0..n)
        .map(|i| {
            let row = Vector::new(q.row(i).iter().copied().collect())?;
            ExteriorForm::from_vector(&row)
        })
        .collect::<Result<_, _>>()?;

    let mut out = ExteriorForm::zero(n, form.degree())?;
    for (blade, c) in form.terms() {
        let mut image = ExteriorForm::scalar(n, c)?;
        for i in blade.one_based() {
            image = image.wedge(&rows[i - 1])?;
        }
        out = out.add(&image)?;
    }
    Ok(out)
}
