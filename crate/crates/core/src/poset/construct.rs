use std::collections::HashMap;

use crate::label::{FaceLabel, MAX_GROUND};

use super::{Element, ElementId, GlueMap, PosetError, SimplicialPoset};

/// A poset whose elements carry subset labels, as produced by the
/// canonical generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledPoset {
    pub poset: SimplicialPoset,
    labels: HashMap<FaceLabel, ElementId>,
    faces: Vec<FaceLabel>,
}

impl LabeledPoset {
    /// Builds the face poset of the simplicial complex whose nonempty faces
    /// are `faces` (which must be closed under taking nonempty subsets).
    /// Ids follow the canonical label order.
    pub fn from_faces(d: usize, mut faces: Vec<FaceLabel>) -> Self {
        faces.retain(|f| !f.is_empty());
        faces.sort_by(FaceLabel::canonical_cmp);
        faces.dedup();
        let labels: HashMap<FaceLabel, ElementId> =
            faces.iter().enumerate().map(|(id, &f)| (f, id)).collect();
        let elements = faces
            .iter()
            .map(|&f| {
                let mut covers: Vec<ElementId> = if f.len() == 1 {
                    Vec::new()
                } else {
                    f.elements().map(|x| labels[&f.without(x)]).collect()
                };
                covers.sort_unstable();
                Element {
                    rank: f.len(),
                    covers,
                }
            })
            .collect();
        LabeledPoset {
            poset: SimplicialPoset::from_elements(d, elements),
            labels,
            faces,
        }
    }

    pub fn id(&self, label: FaceLabel) -> ElementId {
        self.labels[&label]
    }

    pub fn get(&self, label: FaceLabel) -> Option<ElementId> {
        self.labels.get(&label).copied()
    }

    /// The label of element `id`.
    pub fn label(&self, id: ElementId) -> FaceLabel {
        self.faces[id]
    }

    /// `(label, id)` pairs in id order.
    pub fn labels(&self) -> impl Iterator<Item = (FaceLabel, ElementId)> + '_ {
        self.faces.iter().enumerate().map(|(id, &f)| (f, id))
    }
}

/// The Boolean algebra of rank `d` (a `(d-1)`-simplex), labeled by the
/// nonempty subsets of `[d]`.
pub fn boolean(d: usize) -> LabeledPoset {
    assert!(d <= MAX_GROUND, "rank {d} too large");
    LabeledPoset::from_faces(d, FaceLabel::full(d).subsets().collect())
}

/// `Delta_d(k)`: subsets `F` of `[d]` with `F ⊉ [k]`, a poset of rank `d-1`.
pub fn delta(d: usize, k: usize) -> Result<LabeledPoset, DeltaError> {
    if k == 0 || k > d || d > MAX_GROUND {
        return Err(DeltaError { d, k });
    }
    let core = FaceLabel::full(k);
    let faces = FaceLabel::full(d)
        .subsets()
        .filter(|f| !f.is_superset_of(core))
        .collect();
    Ok(LabeledPoset::from_faces(d - 1, faces))
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("Delta_{d}({k}) requires 1 <= k <= d")]
pub struct DeltaError {
    pub d: usize,
    pub k: usize,
}

impl SimplicialPoset {
    /// The cone `P × {1, 2}`. Element `(σ, 1)` keeps id `σ`, the apex
    /// `(0̂, 2)` gets id `n`, and `(σ, 2)` gets id `n + 1 + σ`.
    pub fn cone(&self) -> SimplicialPoset {
        let n = self.len();
        let apex = n;
        let mut elements = self.elements().to_vec();
        elements.push(Element {
            rank: 1,
            covers: Vec::new(),
        });
        for (id, e) in self.elements().iter().enumerate() {
            let mut covers: Vec<ElementId> = vec![id];
            if e.rank == 1 {
                covers.push(apex);
            } else {
                covers.extend(e.covers.iter().map(|&c| n + 1 + c));
            }
            covers.sort_unstable();
            elements.push(Element {
                rank: e.rank + 1,
                covers,
            });
        }
        SimplicialPoset::from_elements(self.d() + 1, elements)
    }

    /// Cones off the boundary: `P ∪ C(∂P)` with `σ ~ (σ, 1)` on `∂P`.
    ///
    /// For `d = 1` the boundary is `{0̂}` and the result is two points.
    pub fn sp_closure(&self) -> Result<SimplicialPoset, PosetError> {
        let boundary = self.boundary()?;
        if self.d() >= 2 && boundary.is_empty() {
            return Err(PosetError::EmptyBoundary);
        }
        let (view, to_parent) = boundary.to_poset();
        let cone = view.cone();
        // (σ, 1) in the cone has the view id of σ.
        let pairs = to_parent
            .iter()
            .enumerate()
            .map(|(view_id, &parent_id)| (parent_id, view_id))
            .collect();
        let glued = self.glue(&cone, &GlueMap::new(pairs))?;
        Ok(glued.poset)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::tests::doubled_edge;

    #[test]
    fn generators_are_valid() {
        for d in 1..=6 {
            let b = boolean(d);
            assert_eq!(b.poset.validate(), Ok(()));
            assert_eq!(b.poset.h_vector(), crate::HVector::simplex(d));
            for k in 1..=d {
                let dk = delta(d, k).unwrap();
                assert_eq!(dk.poset.validate(), Ok(()));
                let h = dk.poset.h_vector();
                for i in 0..d {
                    assert_eq!(h.get(i), i64::from(i < k), "Delta_{d}({k}) h_{i}");
                }
            }
        }
    }

    #[test]
    fn boolean_examples() {
        assert_eq!(boolean(1).poset.len(), 1);
        assert_eq!(boolean(4).poset.f_vector(), vec![1, 4, 6, 4, 1]);
        assert_eq!(boolean(3).poset.f_vector(), vec![1, 3, 3, 1]);
    }

    #[test]
    fn delta_examples() {
        let d32 = delta(3, 2).unwrap();
        assert_eq!(d32.poset.f_vector(), vec![1, 3, 2]);
        assert_eq!(d32.poset.h_vector().entries(), &[1, 1, 0]);
        let mut facets: Vec<String> = d32
            .labels()
            .filter(|(f, _)| f.len() == 2)
            .map(|(f, _)| f.to_string())
            .collect();
        facets.sort();
        assert_eq!(facets, vec!["{1,3}", "{2,3}"]);

        let d41 = delta(4, 1).unwrap();
        assert_eq!(d41.poset.h_vector().entries(), &[1, 0, 0, 0]);
        assert_eq!(d41.poset.facet_count(), 1);

        // delta(d, d) is the boundary of the simplex.
        let d33 = delta(3, 3).unwrap();
        assert_eq!(d33.poset.f_vector(), vec![1, 3, 3]);

        assert!(delta(3, 0).is_err());
        assert!(delta(3, 4).is_err());
    }

    #[test]
    fn cone_over_edge_is_triangle() {
        let c = boolean(2).poset.cone();
        assert_eq!(c.validate(), Ok(()));
        assert_eq!(c.f_vector(), vec![1, 3, 3, 1]);
        assert_eq!(c.h_vector(), crate::HVector::simplex(3));
    }

    #[test]
    fn cone_preserves_h() {
        let c = doubled_edge().cone();
        assert_eq!(c.validate(), Ok(()));
        assert_eq!(c.h_vector().entries(), &[1, 0, 1, 0]);
        let p = doubled_edge();
        let f = p.f_vector();
        let fc = c.f_vector();
        for i in 1..fc.len() {
            let below = if i >= 1 {
                f.get(i - 1).copied().unwrap_or(0)
            } else {
                0
            };
            assert_eq!(fc[i], f.get(i).copied().unwrap_or(0) + below);
        }
    }

    #[test]
    fn sp_closure_of_edge_is_triangle_boundary() {
        let sp = boolean(2).poset.sp_closure().unwrap();
        assert_eq!(sp.validate(), Ok(()));
        assert_eq!(sp.f_vector(), vec![1, 3, 3]);
        assert_eq!(sp.h_vector().entries(), &[1, 1, 1]);
        assert!(sp.boundary().unwrap().is_empty());
        assert_eq!(sp.sp_closure(), Err(PosetError::EmptyBoundary));
    }

    #[test]
    fn sp_closure_of_point_is_two_points() {
        let sp = boolean(1).poset.sp_closure().unwrap();
        assert_eq!(sp.f_vector(), vec![1, 2]);
        assert_eq!(sp.h_vector().entries(), &[1, 1]);
    }
}
