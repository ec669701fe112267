use std::collections::BTreeMap;
use std::fmt;

use super::{Blade, ExteriorError, Vector, MAX_DIM, ZERO_THRESHOLD};

/// A homogeneous `k`-form on Euclidean `ℝⁿ` in canonical sparse form.
///
/// Terms are keyed by [`Blade`]; coefficients with magnitude below
/// [`ZERO_THRESHOLD`] are never stored, so structural equality is equality of
/// forms. Blades are orthonormal for [`inner`](Self::inner).
#[derive(Clone, PartialEq)]
pub struct ExteriorForm {
    dim: usize,
    degree: usize,
    terms: BTreeMap<Blade, f64>,
}

impl ExteriorForm {
    pub fn zero(dim: usize, degree: usize) -> Result<Self, ExteriorError> {
        if dim == 0 || dim > MAX_DIM {
            return Err(ExteriorError::DimensionOutOfRange { dim });
        }
        if degree > dim {
            return Err(ExteriorError::DegreeOverflow { degree, dim });
        }
        Ok(Self {
            dim,
            degree,
            terms: BTreeMap::new(),
        })
    }

    pub fn scalar(dim: usize, value: f64) -> Result<Self, ExteriorError> {
        let mut form = Self::zero(dim, 0)?;
        form.accumulate(Blade::SCALAR, value)?;
        Ok(form)
    }

    /// The standard volume form `e_1 ∧ … ∧ e_n`.
    pub fn volume(dim: usize) -> Result<Self, ExteriorError> {
        let mut form = Self::zero(dim, dim)?;
        form.terms.insert(Blade::volume(dim), 1.0);
        Ok(form)
    }

    /// Builds a form from `(one-based indices, coefficient)` pairs.
    ///
    /// Each index list must be strictly increasing with entries in `1..=dim`
    /// and have length `degree`. Repeated index sets are rejected rather than
    /// summed.
    pub fn from_terms<'a, I>(dim: usize, degree: usize, terms: I) -> Result<Self, ExteriorError>
    where
        I: IntoIterator<Item = (&'a [usize], f64)>,
    {
        let mut form = Self::zero(dim, degree)?;
        let mut seen = std::collections::BTreeSet::new();
        for (indices, coeff) in terms {
            let blade = form.checked_blade(indices)?;
            if !seen.insert(blade) {
                return Err(ExteriorError::DuplicateBlade {
                    indices: indices.to_vec(),
                });
            }
            form.accumulate(blade, coeff)?;
        }
        Ok(form)
    }

    /// A single basis blade, e.g. `blade(7, &[1, 2, 7])` for `e127`.
    pub fn blade(dim: usize, indices: &[usize]) -> Result<Self, ExteriorError> {
        Self::from_terms(dim, indices.len(), [(indices, 1.0)])
    }

    /// The 1-form metric-dual to `v`.
    pub fn from_vector(v: &Vector) -> Result<Self, ExteriorError> {
        let mut form = Self::zero(v.dim(), 1)?;
        for (i, &x) in v.as_slice().iter().enumerate() {
            form.accumulate(Blade::unit(i), x)?;
        }
        Ok(form)
    }

    /// The vector metric-dual to a 1-form.
    pub fn to_vector(&self) -> Result<Vector, ExteriorError> {
        self.expect_degree(1)?;
        let mut entries = vec![0.0; self.dim];
        for (blade, c) in &self.terms {
            entries[blade.mask().trailing_zeros() as usize] = *c;
        }
        Vector::new(entries)
    }

    fn checked_blade(&self, indices: &[usize]) -> Result<Blade, ExteriorError> {
        let invalid = |reason: &'static str| ExteriorError::InvalidIndices {
            indices: indices.to_vec(),
            reason,
        };
        if indices.len() != self.degree {
            return Err(invalid("length differs from the form degree"));
        }
        if indices.iter().any(|&i| i == 0 || i > self.dim) {
            return Err(invalid("index outside 1..=dim"));
        }
        Blade::from_one_based(indices).ok_or_else(|| invalid("indices not strictly increasing"))
    }

    /// Adds `value` to the coefficient of `blade`, pruning to canonical form.
    pub(crate) fn accumulate(&mut self, blade: Blade, value: f64) -> Result<(), ExteriorError> {
        if !value.is_finite() {
            return Err(ExteriorError::NonFiniteCoefficient);
        }
        debug_assert_eq!(blade.grade(), self.degree);
        debug_assert!(blade.max_index().is_none_or(|m| m < self.dim));
        let entry = self.terms.entry(blade).or_insert(0.0);
        *entry += value;
        if entry.abs() < ZERO_THRESHOLD {
            self.terms.remove(&blade);
        }
        Ok(())
    }

    /// Accumulation for arithmetic on already-valid forms, where products of
    /// finite inputs stay finite.
    fn add_term(&mut self, blade: Blade, value: f64) {
        self.accumulate(blade, value)
            .expect("arithmetic on finite forms stays finite");
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in lexicographic blade order.
    pub fn terms(&self) -> impl Iterator<Item = (Blade, f64)> + '_ {
        self.terms.iter().map(|(b, c)| (*b, *c))
    }

    /// Coefficient of the blade with the given one-based indices (0 if absent
    /// or malformed).
    pub fn coeff(&self, indices: &[usize]) -> f64 {
        Blade::from_one_based(indices)
            .and_then(|b| self.terms.get(&b).copied())
            .unwrap_or(0.0)
    }

    pub(crate) fn coeff_of(&self, blade: Blade) -> f64 {
        self.terms.get(&blade).copied().unwrap_or(0.0)
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.terms.values().fold(0.0, |m, c| m.max(c.abs()))
    }

    /// `|a|²` with orthonormal blades.
    pub fn norm_squared(&self) -> f64 {
        self.terms.values().map(|c| c * c).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_squared().sqrt()
    }

    pub fn scaled(&self, factor: f64) -> Self {
        let mut out = Self {
            dim: self.dim,
            degree: self.degree,
            terms: BTreeMap::new(),
        };
        for (b, c) in &self.terms {
            out.add_term(*b, c * factor);
        }
        out
    }

    pub fn add(&self, other: &Self) -> Result<Self, ExteriorError> {
        self.expect_same_shape(other)?;
        let mut out = self.clone();
        for (b, c) in &other.terms {
            out.add_term(*b, *c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, ExteriorError> {
        self.add(&other.scaled(-1.0))
    }

    /// Largest coefficient deviation between two forms of the same shape.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64, ExteriorError> {
        self.expect_same_shape(other)?;
        let mut worst: f64 = 0.0;
        for (b, c) in &self.terms {
            worst = worst.max((c - other.coeff_of(*b)).abs());
        }
        for (b, c) in &other.terms {
            if !self.terms.contains_key(b) {
                worst = worst.max(c.abs());
            }
        }
        Ok(worst)
    }

    /// Exterior product `self ∧ other`.
    pub fn wedge(&self, other: &Self) -> Result<Self, ExteriorError> {
        self.expect_same_dim(other)?;
        let degree = self.degree + other.degree;
        if degree > self.dim {
            return Err(ExteriorError::DegreeOverflow {
                degree,
                dim: self.dim,
            });
        }
        let mut out = Self::zero(self.dim, degree)?;
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                if let Some((sign, blade)) = a.wedge(*b) {
                    out.add_term(blade, sign * ca * cb);
                }
            }
        }
        Ok(out)
    }

    /// `p`-th exterior power `self ∧ … ∧ self`; `p = 0` gives the scalar 1.
    pub fn wedge_power(&self, p: usize) -> Result<Self, ExteriorError> {
        let mut out = Self::scalar(self.dim, 1.0)?;
        for _ in 0..p {
            out = out.wedge(self)?;
        }
        Ok(out)
    }

    /// Interior product `v ⌟ self`.
    pub fn interior(&self, v: &Vector) -> Result<Self, ExteriorError> {
        if v.dim() != self.dim {
            return Err(ExteriorError::DimensionMismatch {
                left: v.dim(),
                right: self.dim,
            });
        }
        if self.degree == 0 {
            return Err(ExteriorError::DegreeUnderflow);
        }
        let mut out = Self::zero(self.dim, self.degree - 1)?;
        for (blade, c) in &self.terms {
            for i in blade.indices() {
                let x = v[i];
                if x == 0.0 {
                    continue;
                }
                let (sign, rest) = blade.contract(i).expect("index taken from blade");
                out.add_term(rest, sign * x * c);
            }
        }
        Ok(out)
    }

    /// Interior product with the basis vector `e_index` (one-based).
    pub fn interior_basis(&self, index: usize) -> Result<Self, ExteriorError> {
        self.interior(&Vector::basis(self.dim, index))
    }

    /// Hodge star for the standard metric and orientation `e_1 ∧ … ∧ e_n`,
    /// normalised so that `a ∧ *a = |a|² vol`.
    pub fn hodge(&self) -> Self {
        let mut out = Self {
            dim: self.dim,
            degree: self.dim - self.degree,
            terms: BTreeMap::new(),
        };
        for (blade, c) in &self.terms {
            let rest = blade.complement(self.dim);
            let (sign, _) = blade.wedge(rest).expect("complement is disjoint");
            out.add_term(rest, sign * c);
        }
        out
    }

    /// Inner product with orthonormal blades.
    pub fn inner(&self, other: &Self) -> Result<f64, ExteriorError> {
        self.expect_same_shape(other)?;
        Ok(self.terms.iter().map(|(b, c)| c * other.coeff_of(*b)).sum())
    }

    /// Drops every blade that has `e_index` (one-based) as a factor.
    pub fn without_index(&self, index: usize) -> Self {
        let mut out = self.clone();
        out.terms.retain(|b, _| !b.contains(index - 1));
        out
    }

    /// Re-embeds the form into `ℝ^new_dim`, `new_dim ≥ dim`, keeping indices.
    pub fn embed(&self, new_dim: usize) -> Result<Self, ExteriorError> {
        if new_dim < self.dim {
            return Err(ExteriorError::DimensionMismatch {
                left: self.dim,
                right: new_dim,
            });
        }
        let mut out = Self::zero(new_dim, self.degree)?;
        out.terms = self.terms.clone();
        Ok(out)
    }

    /// Views the form on `ℝ^new_dim` with `new_dim < dim`; fails if some term
    /// uses an index above `new_dim`.
    pub fn truncate(&self, new_dim: usize) -> Result<Self, ExteriorError> {
        let mut out = Self::zero(new_dim, self.degree)?;
        for (b, c) in &self.terms {
            if b.max_index().is_some_and(|m| m >= new_dim) {
                return Err(ExteriorError::InvalidIndices {
                    indices: b.one_based(),
                    reason: "index outside the target dimension",
                });
            }
            out.terms.insert(*b, *c);
        }
        Ok(out)
    }

    pub(crate) fn expect_degree(&self, degree: usize) -> Result<(), ExteriorError> {
        if self.degree != degree {
            return Err(ExteriorError::DegreeMismatch {
                expected: degree,
                found: self.degree,
            });
        }
        Ok(())
    }

    fn expect_same_dim(&self, other: &Self) -> Result<(), ExteriorError> {
        if self.dim != other.dim {
            return Err(ExteriorError::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        Ok(())
    }

    fn expect_same_shape(&self, other: &Self) -> Result<(), ExteriorError> {
        self.expect_same_dim(other)?;
        if self.degree != other.degree {
            return Err(ExteriorError::DegreeMismatch {
                expected: self.degree,
                found: other.degree,
            });
        }
        Ok(())
    }
}

impl fmt::Debug for ExteriorForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Λ^{}(ℝ^{})[{}]", self.degree, self.dim, self)
    }
}

impl fmt::Display for ExteriorForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (pos, (blade, c)) in self.terms.iter().enumerate() {
            let sign = if *c < 0.0 { "-" } else { "+" };
            if pos == 0 {
                if *c < 0.0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            if c.abs() != 1.0 || blade.grade() == 0 {
                write!(f, "{}", c.abs())?;
                if blade.grade() > 0 {
                    write!(f, "·")?;
                }
            }
            if blade.grade() > 0 {
                write!(f, "{blade}")?;
            }
        }
        Ok(())
    }
}
