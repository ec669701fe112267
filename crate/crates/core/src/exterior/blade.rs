use std::cmp::Ordering;
use std::fmt;

/// A basis blade `e_{i1} ∧ … ∧ e_{ik}` with `i1 < … < ik`.
///
/// Stored as a bitmask over zero-based indices; bit `i` set means `e_{i+1}`
/// is a factor. Ordering is lexicographic on the (sorted) index tuple, so
/// iteration over a `BTreeMap<Blade, _>` of a homogeneous form lists terms
/// the way they are usually written (`e123 < e124 < … < e456`).
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Blade(u16);

impl Blade {
    /// The empty blade (the scalar `1`).
    pub const SCALAR: Blade = Blade(0);

    pub(crate) const fn from_mask(mask: u16) -> Self {
        Blade(mask)
    }

    pub(crate) const fn mask(self) -> u16 {
        self.0
    }

    /// Builds a blade from strictly increasing one-based indices.
    ///
    /// Returns `None` when the indices are not strictly increasing, contain
    /// `0`, or exceed 16.
    pub fn from_one_based(indices: &[usize]) -> Option<Self> {
        let mut mask = 0u16;
        let mut prev = 0usize;
        for &i in indices {
            if i <= prev || i > 16 {
                return None;
            }
            mask |= 1 << (i - 1);
            prev = i;
        }
        Some(Blade(mask))
    }

    /// Blade with a single zero-based factor.
    pub(crate) const fn unit(index: usize) -> Self {
        Blade(1 << index)
    }

    /// `e_1 ∧ … ∧ e_n`.
    pub(crate) const fn volume(dim: usize) -> Self {
        Blade(((1u32 << dim) - 1) as u16)
    }

    pub fn grade(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Zero-based factor indices in increasing order.
    pub(crate) fn indices(self) -> impl Iterator<Item = usize> + Clone {
        let mask = self.0;
        (0..16usize).filter(move |i| mask & (1 << i) != 0)
    }

    /// One-based factor indices in increasing order.
    pub fn one_based(self) -> Vec<usize> {
        self.indices().map(|i| i + 1).collect()
    }

    pub(crate) fn contains(self, index: usize) -> bool {
        self.0 & (1 << index) != 0
    }

    /// Highest zero-based index used, if any.
    pub(crate) fn max_index(self) -> Option<usize> {
        (self.0 != 0).then(|| 15 - self.0.leading_zeros() as usize)
    }

    /// `self ∧ other = sign · (self ∪ other)`; `None` when a factor repeats.
    pub(crate) fn wedge(self, other: Blade) -> Option<(f64, Blade)> {
        if self.0 & other.0 != 0 {
            return None;
        }
        // Each factor of `other` must move left past every larger factor of `self`.
        let swaps: u32 = other
            .indices()
            .map(|j| (self.0 >> (j + 1)).count_ones())
            .sum();
        Some((parity_sign(swaps), Blade(self.0 | other.0)))
    }

    /// `e_index ⌟ self = sign · (self \ {index})`; `None` if `index` is absent.
    pub(crate) fn contract(self, index: usize) -> Option<(f64, Blade)> {
        if !self.contains(index) {
            return None;
        }
        let below = (self.0 & ((1u16 << index) - 1)).count_ones();
        Some((parity_sign(below), Blade(self.0 & !(1 << index))))
    }

    /// Complementary blade in `{0..dim}`.
    pub(crate) fn complement(self, dim: usize) -> Blade {
        Blade(Blade::volume(dim).0 & !self.0)
    }
}

fn parity_sign(swaps: u32) -> f64 {
    if swaps.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

impl Ord for Blade {
    fn cmp(&self, other: &Self) -> Ordering {
        self.grade()
            .cmp(&other.grade())
            .then_with(|| self.indices().cmp(other.indices()))
    }
}

impl PartialOrd for Blade {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Blade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Blade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            return write!(f, "1");
        }
        write!(f, "e")?;
        let wide = self.max_index().is_some_and(|m| m >= 9);
        for (pos, i) in self.indices().enumerate() {
            if wide && pos > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", i + 1)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(ix: &[usize]) -> Blade {
        Blade::from_one_based(ix).unwrap()
    }

    #[test]
    fn rejects_bad_index_lists() {
        assert!(Blade::from_one_based(&[2, 1]).is_none());
        assert!(Blade::from_one_based(&[1, 1]).is_none());
        assert!(Blade::from_one_based(&[0, 1]).is_none());
        assert!(Blade::from_one_based(&[17]).is_none());
    }

    #[test]
    fn wedge_signs() {
        assert_eq!(b(&[1]).wedge(b(&[2])), Some((1.0, b(&[1, 2]))));
        assert_eq!(b(&[2]).wedge(b(&[1])), Some((-1.0, b(&[1, 2]))));
        assert_eq!(b(&[1, 2]).wedge(b(&[1, 2])), None);
        // e35 ∧ e46 = e3546 = −e3456
        assert_eq!(b(&[3, 5]).wedge(b(&[4, 6])), Some((-1.0, b(&[3, 4, 5, 6]))));
        // e7 ∧ e12 = e127
        assert_eq!(b(&[7]).wedge(b(&[1, 2])), Some((1.0, b(&[1, 2, 7]))));
    }

    #[test]
    fn contraction_signs() {
        assert_eq!(b(&[1, 2, 3]).contract(0), Some((1.0, b(&[2, 3]))));
        assert_eq!(b(&[1, 2, 3]).contract(1), Some((-1.0, b(&[1, 3]))));
        assert_eq!(b(&[1, 2, 3]).contract(2), Some((1.0, b(&[1, 2]))));
        assert_eq!(b(&[1, 2, 3]).contract(3), None);
    }

    #[test]
    fn ordering_is_lexicographic_within_grade() {
        let mut v = vec![b(&[2, 4, 5]), b(&[1, 3, 5]), b(&[1, 4, 6]), b(&[2, 3, 6])];
        v.sort();
        assert_eq!(
            v,
            vec![b(&[1, 3, 5]), b(&[1, 4, 6]), b(&[2, 3, 6]), b(&[2, 4, 5])]
        );
        assert!(b(&[7]) < b(&[1, 2]));
    }

    #[test]
    fn display() {
        assert_eq!(b(&[1, 2, 7]).to_string(), "e127");
        assert_eq!(b(&[1, 10]).to_string(), "e1,10");
        assert_eq!(Blade::SCALAR.to_string(), "1");
    }
}
