//! Seeded random orthogonal matrices, unit vectors and 3-forms.
//!
//! Everything draws from `ChaCha8Rng`, so a seed reproduces the same stream
//! on every platform.

use itertools::Itertools;
use nalgebra::DMatrix;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::exterior::{Blade, ExteriorError, ExteriorForm, Vector};

pub type Rng = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn normal(rng: &mut Rng) -> f64 {
    StandardNormal.sample(rng)
}

/// Haar-distributed orthogonal matrix: QR of a Gaussian matrix with the
/// signs of `R`'s diagonal folded into `Q`.
pub fn random_orthogonal_with(rng: &mut Rng, n: usize) -> DMatrix<f64> {
    let g = DMatrix::from_fn(n, n, |_, _| normal(rng));
    let qr = g.qr();
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..n {
        if r[(j, j)] < 0.0 {
            q.column_mut(j).neg_mut();
        }
    }
    q
}

pub fn random_orthogonal(seed: u64, n: usize) -> DMatrix<f64> {
    random_orthogonal_with(&mut rng(seed), n)
}

/// Uniform point on `S^{n-1}`.
pub fn random_unit_vector(rng: &mut Rng, n: usize) -> Vector {
    loop {
        let v = Vector::new((0..n).map(|_| normal(rng)).collect()).expect("finite");
        if let Some(u) = v.normalized() {
            return u;
        }
    }
}

/// Standard-normal vector (not normalised).
pub fn random_vector(rng: &mut Rng, n: usize) -> Vector {
    Vector::new((0..n).map(|_| normal(rng)).collect()).expect("finite")
}

/// A `degree`-form with independent standard normal coefficients on every
/// blade, drawn in lexicographic blade order.
pub fn random_form(
    rng: &mut Rng,
    dim: usize,
    degree: usize,
) -> Result<ExteriorForm, ExteriorError> {
    let mut form = ExteriorForm::zero(dim, degree)?;
    for combo in (0..dim).combinations(degree) {
        let mask = combo.iter().fold(0u16, |m, i| m | (1 << i));
        form.accumulate(Blade::from_mask(mask), normal(rng))?;
    }
    Ok(form)
}
