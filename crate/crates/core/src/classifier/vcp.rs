use serde::Serialize;

use crate::exterior::{ExteriorError, ExteriorForm};

/// Residual threshold for [`is_vcp`].
pub const VCP_TOLERANCE: f64 = 1e-9;

/// Outcome of [`is_vcp`]: whether the identity holds and the largest
/// polarized residual that decided it.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct VcpCertificate {
    pub holds: bool,
    pub residual: f64,
}

/// Dense antisymmetric component array `t[i][j][k] = τ(e_i, e_j, e_k)`.
pub(crate) fn dense_components(tau: &ExteriorForm) -> Vec<f64> {
    let n = tau.dim();
    let mut t = vec![0.0; n * n * n];
    for (blade, c) in tau.terms() {
        let ix: Vec<usize> = blade.one_based().into_iter().map(|i| i - 1).collect();
        let (a, b, d) = (ix[0], ix[1], ix[2]);
        for (p, q, r, s) in [
            (a, b, d, 1.0),
            (b, d, a, 1.0),
            (d, a, b, 1.0),
            (b, a, d, -1.0),
            (a, d, b, -1.0),
            (d, b, a, -1.0),
        ] {
            t[(p * n + q) * n + r] = s * c;
        }
    }
    t
}

/// Decides `|τ_X Y|² = |X ∧ Y|²` for all `X, Y`.
///
/// `Q(X, Y) = |τ_X Y|² − |X|²|Y|² + ⟨X, Y⟩²` is quadratic in `X` and in `Y`
/// separately, so `Q ≡ 0` iff its polarization
/// `T(e_i, e_j; e_k, e_l)` vanishes for all `i ≤ j`, `k ≤ l`:
///
/// ```text
/// T = ½ Σ_m (τ_ikm τ_jlm + τ_ilm τ_jkm) − δ_ij δ_kl + ½ (δ_ik δ_jl + δ_il δ_jk)
/// ```
pub fn is_vcp(tau: &ExteriorForm) -> Result<VcpCertificate, ExteriorError> {
    is_vcp_with_tolerance(tau, VCP_TOLERANCE)
}

pub fn is_vcp_with_tolerance(
    tau: &ExteriorForm,
    tol: f64,
) -> Result<VcpCertificate, ExteriorError> {
    tau.expect_degree(3)?;
    let residual = vcp_polarization_residual(tau);
    Ok(VcpCertificate {
        holds: residual <= tol,
        residual,
    })
}

fn vcp_polarization_residual(tau: &ExteriorForm) -> f64 {
    let n = tau.dim();
    let t = dense_components(tau);
    let at = |i: usize, j: usize, k: usize| t[(i * n + j) * n + k];
    let delta = |i: usize, j: usize| if i == j { 1.0 } else { 0.0 };
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in i..n {
            for k in 0..n {
                for l in k..n {
                    let mut cross = 0.0;
                    for m in 0..n {
                        cross += at(i, k, m) * at(j, l, m) + at(i, l, m) * at(j, k, m);
                    }
                    let metric = delta(i, j) * delta(k, l)
                        - 0.5 * (delta(i, k) * delta(j, l) + delta(i, l) * delta(j, k));
                    worst = worst.max((0.5 * cross - metric).abs());
                }
            }
        }
    }
    worst
}
