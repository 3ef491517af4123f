use thiserror::Error;

use crate::hcalc::HVector;

use super::{ElementId, SimplicialPoset};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ShellingError {
    #[error("poset is not pure")]
    NotPure,
    #[error("element {0} is not a facet")]
    NotAFacet(ElementId),
    #[error("facet {0} appears more than once")]
    Repeated(ElementId),
    #[error("order lists {listed} of {total} facets")]
    Incomplete { listed: usize, total: usize },
    #[error("step {step} (facet {facet}): intersection with earlier facets is not a Delta_d(k)")]
    NotDelta { step: usize, facet: ElementId },
}

impl SimplicialPoset {
    /// Checks that `order` is a shelling and returns `(k_2, ..., k_r)`, where
    /// `⟨σ_1, ..., σ_{i-1}⟩ ∩ ⟨σ_i⟩ ≅ Delta_d(k_i)`.
    pub fn verify_shelling(&self, order: &[ElementId]) -> Result<Vec<usize>, ShellingError> {
        let d = self.d();
        if !self.is_pure() {
            return Err(ShellingError::NotPure);
        }
        let facets = self.facets();
        let mut placed = vec![false; self.len()];
        for &f in order {
            if f >= self.len() || self.rank(f) != d || facets.binary_search(&f).is_err() {
                return Err(ShellingError::NotAFacet(f));
            }
            if std::mem::replace(&mut placed[f], true) {
                return Err(ShellingError::Repeated(f));
            }
        }
        if order.len() != facets.len() {
            return Err(ShellingError::Incomplete {
                listed: order.len(),
                total: facets.len(),
            });
        }

        let atoms = self.atom_sets();
        let mut in_union = vec![false; self.len()];
        let mut ks = Vec::with_capacity(order.len().saturating_sub(1));
        for (step, &facet) in order.iter().enumerate() {
            let below = self
                .order_ideal(&[facet])
                .expect("facet ids were checked")
                .members()
                .to_vec();
            if step > 0 {
                let own = &atoms[facet];
                let mask = |t: ElementId| -> u64 {
                    atoms[t]
                        .iter()
                        .map(|v| 1u64 << own.binary_search(v).expect("atoms of a face"))
                        .fold(0, |m, b| m | b)
                };
                let full = (1u64 << d) - 1;
                // Missing vertex of each codimension-one face in the intersection.
                let missing = below
                    .iter()
                    .filter(|&&t| in_union[t] && self.rank(t) + 1 == d)
                    .fold(0u64, |acc, &t| acc | (full & !mask(t)));
                let k = missing.count_ones() as usize;
                let consistent = below.iter().filter(|&&t| t != facet).all(|&t| {
                    let expected = mask(t) & missing != missing;
                    in_union[t] == expected
                });
                if k == 0 || !consistent {
                    return Err(ShellingError::NotDelta { step, facet });
                }
                ks.push(k);
            }
            for t in below {
                in_union[t] = true;
            }
        }
        Ok(ks)
    }
}

/// h-vector of a shellable rank-`d` poset from its shelling numbers:
/// `h_0 = 1` and `h_i = #{steps with k = i}`.
pub fn shelling_h_vector(d: usize, ks: &[usize]) -> HVector {
    let mut h = HVector::simplex(d);
    for &k in ks {
        h = h.bumped(k, 1);
    }
    h
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::label::FaceLabel;
    use crate::poset::{boolean, delta, LabeledPoset};

    #[test]
    fn delta_shelling_in_natural_order() {
        for d in 2..=6 {
            for k in 1..d {
                let lp = delta(d, k).unwrap();
                let order: Vec<ElementId> = (1..=k)
                    .map(|v| lp.id(FaceLabel::full(d).without(v)))
                    .collect();
                let ks = lp.poset.verify_shelling(&order).unwrap();
                assert_eq!(ks, (1..k).collect::<Vec<_>>());
                assert_eq!(shelling_h_vector(d - 1, &ks), lp.poset.h_vector());
            }
        }
    }

    #[test]
    fn single_simplex() {
        let b = boolean(4);
        assert_eq!(b.poset.verify_shelling(&b.poset.facets()), Ok(vec![]));
    }

    #[test]
    fn disconnected_order_is_rejected() {
        // Path of three edges 1-2, 2-3, 3-4 taken as 1-2, 3-4, 2-3.
        let faces: Vec<FaceLabel> = [[1, 2], [2, 3], [3, 4]]
            .iter()
            .flat_map(|e| FaceLabel::from_elements(e.iter().copied()).subsets())
            .collect();
        let lp = LabeledPoset::from_faces(2, faces);
        let e = |a, b| lp.id(FaceLabel::from_elements([a, b]));
        assert!(matches!(
            lp.poset.verify_shelling(&[e(1, 2), e(3, 4), e(2, 3)]),
            Err(ShellingError::NotDelta { step: 1, .. })
        ));
        assert_eq!(
            lp.poset.verify_shelling(&[e(1, 2), e(2, 3), e(3, 4)]),
            Ok(vec![1, 1])
        );
        assert!(matches!(
            lp.poset.verify_shelling(&[e(1, 2), e(2, 3)]),
            Err(ShellingError::Incomplete { .. })
        ));
        assert!(matches!(
            lp.poset.verify_shelling(&[e(1, 2), e(1, 2), e(2, 3)]),
            Err(ShellingError::Repeated(_))
        ));
    }

    #[test]
    fn intersection_of_wrong_shape() {
        // Triangles 123 and 345 meet in a vertex: not a codimension-one face.
        let faces: Vec<FaceLabel> = [[1, 2, 3], [3, 4, 5]]
            .iter()
            .flat_map(|t| FaceLabel::from_elements(t.iter().copied()).subsets())
            .collect();
        let lp = LabeledPoset::from_faces(3, faces);
        let order = lp.poset.facets();
        assert!(matches!(
            lp.poset.verify_shelling(&order),
            Err(ShellingError::NotDelta { .. })
        ));
    }
}
