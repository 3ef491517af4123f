use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::label::FaceLabel;
use crate::poset::{ElementId, PosetError, SimplicialPoset};

use super::trace::ConstructionTrace;

/// The nonempty `F ⊆ [d]` with `F ⊉ [k]`, in increasing bitmask order.
pub fn delta_faces(d: usize, k: usize) -> impl Iterator<Item = FaceLabel> {
    let core = FaceLabel::full(k);
    FaceLabel::full(d)
        .subsets()
        .filter(move |f| !f.is_empty() && !f.is_superset_of(core))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WindowError {
    #[error("window has no element for label {0}")]
    Missing(FaceLabel),
    #[error("label {label} maps to unknown element {id}")]
    UnknownElement { label: FaceLabel, id: ElementId },
    #[error("labels {0} and {1} map to the same element")]
    NotInjective(FaceLabel, FaceLabel),
    #[error("label {label} maps to an element of rank {rank}")]
    RankMismatch { label: FaceLabel, rank: usize },
    #[error("covers of the element labeled {0} do not match its sub-labels")]
    CoverMismatch(FaceLabel),
    #[error("element labeled {0} is not in the boundary")]
    NotInBoundary(FaceLabel),
    #[error("cannot compute boundary: {0}")]
    Boundary(#[from] PosetError),
}

/// A labeled copy of `Delta_d(k)` inside a host poset: `F ↦ id` for every
/// nonempty `F ⊆ [d]` with `F ⊉ [k]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Window {
    d: usize,
    k: usize,
    labels: BTreeMap<FaceLabel, ElementId>,
}

impl Window {
    pub fn from_fn(d: usize, k: usize, mut id: impl FnMut(FaceLabel) -> ElementId) -> Self {
        let labels = delta_faces(d, k).map(|f| (f, id(f))).collect();
        Window { d, k, labels }
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn id(&self, label: FaceLabel) -> ElementId {
        self.labels[&label]
    }

    pub fn get(&self, label: FaceLabel) -> Option<ElementId> {
        self.labels.get(&label).copied()
    }

    pub fn labels(&self) -> impl Iterator<Item = (FaceLabel, ElementId)> + '_ {
        self.labels.iter().map(|(&f, &id)| (f, id))
    }

    /// The sub-window `Delta_d(k') ⊆ Delta_d(k)` for `k' <= k`.
    pub fn restrict(&self, k: usize) -> Window {
        assert!(
            k >= 1 && k <= self.k,
            "cannot restrict Delta_{}({}) to k = {k}",
            self.d,
            self.k
        );
        Window::from_fn(self.d, k, |f| self.id(f))
    }

    /// Renames every element through `map` (old id to new id).
    pub fn remap(&self, map: &[ElementId]) -> Window {
        Window {
            d: self.d,
            k: self.k,
            labels: self.labels.iter().map(|(&f, &id)| (f, map[id])).collect(),
        }
    }

    /// Elements labeled by `(d-1)`-subsets.
    pub fn facet_ids(&self) -> BTreeSet<ElementId> {
        self.labels
            .iter()
            .filter(|(f, _)| f.len() + 1 == self.d)
            .map(|(_, &id)| id)
            .collect()
    }

    /// Checks that the labels give an isomorphism of `Delta_d(k)` onto an
    /// order ideal of `host` contained in its boundary.
    pub fn check(&self, host: &SimplicialPoset) -> Result<(), WindowError> {
        for f in delta_faces(self.d, self.k) {
            if !self.labels.contains_key(&f) {
                return Err(WindowError::Missing(f));
            }
        }
        let mut seen: BTreeMap<ElementId, FaceLabel> = BTreeMap::new();
        for (&f, &id) in &self.labels {
            if id >= host.len() {
                return Err(WindowError::UnknownElement { label: f, id });
            }
            if let Some(&other) = seen.get(&id) {
                return Err(WindowError::NotInjective(other, f));
            }
            seen.insert(id, f);
            if host.rank(id) != f.len() {
                return Err(WindowError::RankMismatch {
                    label: f,
                    rank: host.rank(id),
                });
            }
            let mut expected: Vec<ElementId> = if f.len() == 1 {
                Vec::new()
            } else {
                f.elements().map(|x| self.labels[&f.without(x)]).collect()
            };
            expected.sort_unstable();
            let mut actual = host.covers(id).to_vec();
            actual.sort_unstable();
            if expected != actual {
                return Err(WindowError::CoverMismatch(f));
            }
        }
        let boundary = host.boundary()?;
        if let Some((&f, _)) = self.labels.iter().find(|(_, &id)| !boundary.contains(id)) {
            return Err(WindowError::NotInBoundary(f));
        }
        Ok(())
    }
}

/// A ball together with a labeled `Delta_d(k)` in its boundary.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WindowedBall {
    pub poset: SimplicialPoset,
    pub window: Window,
    pub trace: ConstructionTrace,
}

/// A ball with two facet-disjoint windows `Delta_d(n)` and `Delta_d(d-n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoWindowBall {
    pub poset: SimplicialPoset,
    pub window1: Window,
    pub window2: Window,
    pub trace: ConstructionTrace,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::{boolean, GlueMap};

    #[test]
    fn face_counts() {
        assert_eq!(delta_faces(3, 2).count(), 5);
        assert_eq!(delta_faces(4, 4).count(), 14);
        assert_eq!(delta_faces(1, 1).count(), 0);
    }

    #[test]
    fn simplex_boundary_window() {
        let b = boolean(3);
        let w = Window::from_fn(3, 3, |f| b.id(f));
        assert_eq!(w.check(&b.poset), Ok(()));
        assert_eq!(w.facet_ids().len(), 3);
        assert_eq!(w.restrict(1).labels().count(), 3);
    }

    #[test]
    fn interior_and_misshapen_windows_rejected() {
        // Two triangles sharing the edge {2,3}: that edge is interior.
        let a = boolean(3);
        let b = boolean(3);
        let pairs = delta_faces(3, 1).map(|f| (a.id(f), b.id(f))).collect();
        let glued = a.poset.glue(&b.poset, &GlueMap::new(pairs)).unwrap().poset;
        let whole = Window::from_fn(3, 3, |f| a.id(f));
        assert_eq!(
            whole.check(&glued),
            Err(WindowError::NotInBoundary(FaceLabel::from_elements([2, 3])))
        );

        // Swapping two vertex labels breaks cover relations.
        let v1 = FaceLabel::singleton(1);
        let v2 = FaceLabel::singleton(2);
        let swapped = Window::from_fn(3, 3, |f| {
            if f == v1 {
                a.id(v2)
            } else if f == v2 {
                a.id(v1)
            } else {
                a.id(f)
            }
        });
        assert!(matches!(
            swapped.check(&a.poset),
            Err(WindowError::CoverMismatch(_))
        ));
    }
}
