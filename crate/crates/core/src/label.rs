use std::cmp::Ordering;
use std::fmt;

/// A subset `F` of `[n] = {1, ..., n}` stored as a bitmask (bit `x - 1`
/// for element `x`). Used for the canonical labels of Boolean algebras,
/// `Delta_d(k)` and the windows threaded through the gluing constructions.
/// The derived order compares bitmasks; see [`FaceLabel::canonical_cmp`] for
/// the order used to number elements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct FaceLabel(pub u32);

pub const MAX_GROUND: usize = 31;

impl FaceLabel {
    pub const EMPTY: FaceLabel = FaceLabel(0);

    /// `[n]`
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_GROUND);
        FaceLabel(((1u64 << n) - 1) as u32)
    }

    /// `{lo, ..., hi}`; empty when `lo > hi`.
    pub fn range(lo: usize, hi: usize) -> Self {
        if lo > hi || hi == 0 {
            return FaceLabel::EMPTY;
        }
        let lo = lo.max(1);
        FaceLabel(Self::full(hi).0 & !Self::full(lo - 1).0)
    }

    pub fn singleton(x: usize) -> Self {
        FaceLabel(1 << (x - 1))
    }

    pub fn from_elements(xs: impl IntoIterator<Item = usize>) -> Self {
        xs.into_iter().fold(FaceLabel::EMPTY, |acc, x| acc.with(x))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, x: usize) -> bool {
        x >= 1 && self.0 & (1 << (x - 1)) != 0
    }

    pub fn is_superset_of(self, other: FaceLabel) -> bool {
        self.0 & other.0 == other.0
    }

    pub fn with(self, x: usize) -> Self {
        FaceLabel(self.0 | (1 << (x - 1)))
    }

    pub fn without(self, x: usize) -> Self {
        FaceLabel(self.0 & !(1 << (x - 1)))
    }

    pub fn minus(self, other: FaceLabel) -> Self {
        FaceLabel(self.0 & !other.0)
    }

    /// Elements in increasing order.
    pub fn elements(self) -> impl Iterator<Item = usize> {
        let bits = self.0;
        (1..=32usize).filter(move |&x| bits & (1u64 << (x - 1)) as u32 != 0)
    }

    /// All subsets of `self`, including the empty set and `self`.
    pub fn subsets(self) -> impl Iterator<Item = FaceLabel> {
        let full = self.0;
        let mut next = Some(0u32);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == full {
                None
            } else {
                Some((cur.wrapping_sub(full)) & full)
            };
            Some(FaceLabel(cur))
        })
    }

    /// Applies `f` to every element.
    pub fn map(self, f: impl Fn(usize) -> usize) -> Self {
        FaceLabel::from_elements(self.elements().map(f))
    }

    /// Order by size, then lexicographically by the increasing element list.
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.elements().cmp(other.elements()))
    }
}

impl fmt::Display for FaceLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, x) in self.elements().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str("}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges_and_subsets() {
        assert_eq!(FaceLabel::range(2, 4), FaceLabel::from_elements([2, 3, 4]));
        assert!(FaceLabel::range(3, 2).is_empty());
        assert_eq!(FaceLabel::full(3).subsets().count(), 8);
        assert_eq!(FaceLabel::EMPTY.subsets().count(), 1);
        let f = FaceLabel::from_elements([1, 3]);
        let subs: Vec<_> = f.subsets().collect();
        assert_eq!(subs.len(), 4);
        assert!(subs.iter().all(|s| f.is_superset_of(*s)));
        assert_eq!(f.to_string(), "{1,3}");
    }

    #[test]
    fn canonical_order() {
        let mut v = [
            FaceLabel::from_elements([2, 3]),
            FaceLabel::from_elements([1]),
            FaceLabel::from_elements([1, 3]),
            FaceLabel::from_elements([3]),
        ];
        v.sort_by(FaceLabel::canonical_cmp);
        let s: Vec<String> = v.iter().map(|f| f.to_string()).collect();
        assert_eq!(s, vec!["{1}", "{3}", "{1,3}", "{2,3}"]);
    }
}
