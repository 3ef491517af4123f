use std::collections::BTreeSet;

use thiserror::Error;

use crate::poset::{
    boolean, delta, ElementId, GlueError, OrderIdeal, PosetError, ShellingError, SimplicialPoset,
    ValidateError,
};
use crate::realizer::{ConstructionTrace, Step};

/// Largest generator rank accepted by [`replay`].
pub const MAX_GENERATOR_D: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReplayFault {
    #[error("boolean {0} is outside the supported range 1..={MAX_GENERATOR_D}")]
    BooleanRange(usize),
    #[error("delta {d} {k} is not a ball generator (need 1 <= k < d <= {MAX_GENERATOR_D})")]
    DeltaRange { d: usize, k: usize },
    #[error("glue pieces have ranks {left} and {right}")]
    RankMismatch { left: usize, right: usize },
    #[error("invalid glue map: {0}")]
    Glue(#[from] GlueError),
    #[error("glued ideal is empty")]
    EmptyIdeal,
    #[error("glued ideal is not pure of rank {expected} (maximal element {element})")]
    IdealNotPure { element: ElementId, expected: usize },
    #[error("{side} piece: {source}")]
    NotPseudomanifold {
        side: &'static str,
        source: PosetError,
    },
    #[error("{side} piece: element {element} of the glued ideal is not in the boundary")]
    NotInBoundary {
        side: &'static str,
        element: ElementId,
    },
    #[error("{side} piece: the glued ideal is the whole boundary")]
    WholeBoundary { side: &'static str },
    #[error("glued ideal is not a Delta_d(k) and no shelling order is given")]
    NotDeltaShaped,
    #[error("shelling witness lists element {0}, which is not in the glued ideal")]
    ShellingOutsideIdeal(ElementId),
    #[error("shelling witness rejected: {0}")]
    Shelling(#[from] ShellingError),
    #[error("shelling step {step} attaches along the whole facet boundary")]
    ShellingClosesSphere { step: usize },
    #[error("result fails validation: {0}")]
    Invalid(ValidateError),
}

/// A failed replay, naming the trace step.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("step t{step}: {fault}")]
pub struct ReplayError {
    pub step: usize,
    pub fault: ReplayFault,
}

/// Executes a trace, checking that every glue is a gluing of two balls along
/// a constructible ball lying in both boundaries.
pub fn replay(trace: &ConstructionTrace) -> Result<SimplicialPoset, ReplayError> {
    let steps = trace.steps();
    let mut last_use = vec![0usize; steps.len()];
    for (i, step) in steps.iter().enumerate() {
        last_use[i] = i;
        if let Step::Glue { left, right, .. } = step {
            last_use[*left] = i;
            last_use[*right] = i;
        }
    }
    last_use[trace.result()] = usize::MAX;

    let mut values: Vec<Option<SimplicialPoset>> = Vec::with_capacity(steps.len());
    for (i, step) in steps.iter().enumerate() {
        let fail = |fault| ReplayError { step: i, fault };
        let value = match step {
            Step::Boolean(d) => {
                if *d == 0 || *d > MAX_GENERATOR_D {
                    return Err(fail(ReplayFault::BooleanRange(*d)));
                }
                boolean(*d).poset
            }
            Step::Delta { d, k } => {
                if *k == 0 || k >= d || *d > MAX_GENERATOR_D {
                    return Err(fail(ReplayFault::DeltaRange { d: *d, k: *k }));
                }
                delta(*d, *k)
                    .map_err(|_| fail(ReplayFault::DeltaRange { d: *d, k: *k }))?
                    .poset
            }
            Step::Glue {
                left,
                right,
                map,
                shelling,
            } => {
                let live = |j: usize| {
                    values[j]
                        .as_ref()
                        .expect("operands stay live until last use")
                };
                glue_checked(live(*left), live(*right), map, shelling.as_deref()).map_err(fail)?
            }
        };
        values.push(Some(value));
        if let Step::Glue { left, right, .. } = step {
            for j in [*left, *right] {
                if last_use[j] == i {
                    values[j] = None;
                }
            }
        }
    }
    Ok(values[trace.result()]
        .take()
        .expect("result value is kept until the end"))
}

fn glue_checked(
    p: &SimplicialPoset,
    q: &SimplicialPoset,
    map: &crate::poset::GlueMap,
    shelling: Option<&[ElementId]>,
) -> Result<SimplicialPoset, ReplayFault> {
    if p.d() != q.d() {
        return Err(ReplayFault::RankMismatch {
            left: p.d(),
            right: q.d(),
        });
    }
    map.verify(p, q)?;
    let d = p.d();
    if map.pairs().is_empty() {
        return Err(ReplayFault::EmptyIdeal);
    }
    let left = p
        .order_ideal(&map.left_ids())
        .expect("map ids were verified")
        .with_rank(d - 1);
    let right = q
        .order_ideal(&map.right_ids())
        .expect("map ids were verified")
        .with_rank(d - 1);
    if let Some(&element) = left.maximal().iter().find(|&&m| p.rank(m) + 1 != d) {
        return Err(ReplayFault::IdealNotPure {
            element,
            expected: d - 1,
        });
    }
    in_boundary(p, &left, "left")?;
    in_boundary(q, &right, "right")?;

    let (view, to_parent) = left.to_poset();
    if !is_delta_shaped(&view) {
        let order = shelling.ok_or(ReplayFault::NotDeltaShaped)?;
        let order = order
            .iter()
            .map(|&id| {
                to_parent
                    .binary_search(&id)
                    .map_err(|_| ReplayFault::ShellingOutsideIdeal(id))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let ks = view.verify_shelling(&order)?;
        if let Some(step) = ks.iter().position(|&k| k >= view.d()) {
            return Err(ReplayFault::ShellingClosesSphere { step: step + 1 });
        }
    }

    let glued = p.glue(q, map)?;
    glued.poset.validate().map_err(ReplayFault::Invalid)?;
    Ok(glued.poset)
}

fn in_boundary(
    host: &SimplicialPoset,
    ideal: &OrderIdeal<'_>,
    side: &'static str,
) -> Result<(), ReplayFault> {
    let boundary = host
        .boundary()
        .map_err(|source| ReplayFault::NotPseudomanifold { side, source })?;
    if let Some(&element) = ideal.members().iter().find(|&&m| !boundary.contains(m)) {
        return Err(ReplayFault::NotInBoundary { side, element });
    }
    if ideal.len() == boundary.len() {
        return Err(ReplayFault::WholeBoundary { side });
    }
    Ok(())
}

/// True when `view` (rank `r`) is isomorphic to `Delta_{r+1}(k)` for some
/// `1 <= k <= r`.
pub fn is_delta_shaped(view: &SimplicialPoset) -> bool {
    let r = view.d();
    if r == 0 || r >= 63 {
        return false;
    }
    let facets = view.facets();
    let k = facets.len();
    if k == 0 || k > r || facets.iter().any(|&f| view.rank(f) != r) {
        return false;
    }
    let atoms = view.atom_sets();
    let distinct: BTreeSet<&Vec<ElementId>> = atoms.iter().collect();
    if distinct.len() != atoms.len() {
        return false;
    }
    let union: BTreeSet<ElementId> = facets
        .iter()
        .flat_map(|&f| atoms[f].iter().copied())
        .collect();
    let expected_vertices = if k == 1 { r } else { r + 1 };
    if union.len() != expected_vertices || facets.iter().any(|&f| atoms[f].len() != r) {
        return false;
    }
    let n = r + 1;
    view.len() == (1usize << n) - 1 - (1usize << (n - k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::GlueMap;
    use crate::realizer::delta_faces;

    fn two_tetrahedra(k: usize) -> ConstructionTrace {
        let a = boolean(4);
        let pairs = delta_faces(4, k).map(|f| (a.id(f), a.id(f))).collect();
        ConstructionTrace::boolean(4).glue(ConstructionTrace::boolean(4), GlueMap::new(pairs), None)
    }

    #[test]
    fn delta_shape_recognition() {
        for d in 2..=5 {
            for k in 1..d {
                assert!(is_delta_shaped(&delta(d, k).unwrap().poset), "d={d} k={k}");
            }
            assert!(!is_delta_shaped(&delta(d, d).unwrap().poset));
        }
        // Two triangles on four vertices sharing an edge: not a Delta.
        let t = replay(&two_tetrahedra(1)).unwrap();
        let b = t.boundary().unwrap();
        let (view, _) = b.to_poset();
        assert!(!is_delta_shaped(&view));
    }

    #[test]
    fn replays_simple_gluings() {
        for k in 1..4 {
            let p = replay(&two_tetrahedra(k)).unwrap();
            assert_eq!(p.facet_count(), 2);
            assert_eq!(p.h_vector().get(k), 1);
        }
        assert_eq!(
            replay(&ConstructionTrace::boolean(3)).unwrap(),
            boolean(3).poset
        );
    }

    #[test]
    fn rejects_bad_generators_and_gluings() {
        let t = ConstructionTrace::from_steps(vec![Step::Boolean(0)], 0);
        assert_eq!(replay(&t).unwrap_err().fault, ReplayFault::BooleanRange(0));
        let t = ConstructionTrace::delta(3, 3);
        assert!(matches!(
            replay(&t).unwrap_err().fault,
            ReplayFault::DeltaRange { .. }
        ));

        // Whole boundary: produces a sphere.
        assert_eq!(
            replay(&two_tetrahedra(4)).unwrap_err().fault,
            ReplayFault::WholeBoundary { side: "left" }
        );

        // Gluing along an interior edge of the left piece.
        let a = boolean(3);
        let pairs = delta_faces(3, 1).map(|f| (a.id(f), a.id(f))).collect();
        let inner = ConstructionTrace::boolean(3).glue(
            ConstructionTrace::boolean(3),
            GlueMap::new(pairs),
            None,
        );
        let e23 = a.id(crate::FaceLabel::from_elements([2, 3]));
        let v2 = a.id(crate::FaceLabel::singleton(2));
        let v3 = a.id(crate::FaceLabel::singleton(3));
        let bad = inner.glue(
            ConstructionTrace::boolean(3),
            GlueMap::new(vec![(v2, v2), (v3, v3), (e23, e23)]),
            None,
        );
        assert!(matches!(
            replay(&bad).unwrap_err().fault,
            ReplayFault::NotInBoundary { side: "left", .. }
        ));

        // Corrupted pair list.
        let bad = ConstructionTrace::boolean(3).glue(
            ConstructionTrace::boolean(3),
            GlueMap::new(vec![(v2, v2), (v3, v2)]),
            None,
        );
        assert!(matches!(
            replay(&bad).unwrap_err().fault,
            ReplayFault::Glue(_)
        ));
    }

    #[test]
    fn non_delta_ideal_needs_a_shelling() {
        let stripped_trace = |trace: &ConstructionTrace| {
            let steps = trace
                .steps()
                .iter()
                .cloned()
                .map(|s| match s {
                    Step::Glue {
                        left, right, map, ..
                    } => Step::Glue {
                        left,
                        right,
                        map,
                        shelling: None,
                    },
                    other => other,
                })
                .collect();
            ConstructionTrace::from_steps(steps, trace.result())
        };
        // Omega = {2,4,5}, {2,3,5}, {1,4,5} has five vertices.
        let r = crate::realizer::special_ball(2, &"1,1,2,0,0".parse().unwrap()).unwrap();
        assert_eq!(replay(&r.trace).unwrap(), r.poset);
        let steps = r.trace.steps().to_vec();
        let witnessed: Vec<usize> = steps
            .iter()
            .enumerate()
            .filter(|(_, s)| {
                matches!(
                    s,
                    Step::Glue {
                        shelling: Some(_),
                        ..
                    }
                )
            })
            .map(|(i, _)| i)
            .collect();
        assert_eq!(
            replay(&stripped_trace(&r.trace)).unwrap_err().fault,
            ReplayFault::NotDeltaShaped
        );
        // A witness that names a facet outside the ideal.
        let mut bad = steps;
        for &i in &witnessed {
            if let Step::Glue {
                shelling: Some(order),
                ..
            } = &mut bad[i]
            {
                order[0] = usize::MAX;
            }
        }
        let t = ConstructionTrace::from_steps(bad, r.trace.result());
        assert_eq!(
            replay(&t).unwrap_err().fault,
            ReplayFault::ShellingOutsideIdeal(usize::MAX)
        );
    }
}
