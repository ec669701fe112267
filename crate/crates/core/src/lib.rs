//! Exterior algebra on `ℝⁿ`, spectral invariants of 3-forms, and the
//! classification of generalized vector cross products.

pub mod canonical;
pub mod classifier;
pub mod cli;
pub mod exterior;
pub mod json;
pub mod lifting;
pub mod polarization;
pub mod sampling;
pub mod spectral;
pub mod su3;
