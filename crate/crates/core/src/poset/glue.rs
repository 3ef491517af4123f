use std::collections::{BTreeSet, HashMap};

use thiserror::Error;

use super::ideal::is_down_closed;
use super::{Element, ElementId, SimplicialPoset, ValidateError};

/// Pairs `(id in P, id in Q)` identifying an order ideal of `P` with an
/// order ideal of `Q`. `0̂` is implicit and never listed.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GlueMap {
    pairs: Vec<(ElementId, ElementId)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GlueError {
    #[error("glued posets have different ranks {left} and {right}")]
    RankMismatch { left: usize, right: usize },
    #[error("pair ({0}, {1}) refers to an unknown element")]
    UnknownElement(ElementId, ElementId),
    #[error("glue map is not injective at ({0}, {1})")]
    NotInjective(ElementId, ElementId),
    #[error("{side} side of the glue map is not an order ideal")]
    NotIdeal { side: &'static str },
    #[error("pair ({0}, {1}) does not preserve ranks or cover relations")]
    NotIsomorphism(ElementId, ElementId),
    #[error("glued poset is not simplicial: {0}")]
    InvalidResult(ValidateError),
}

impl GlueMap {
    pub fn new(pairs: Vec<(ElementId, ElementId)>) -> Self {
        GlueMap { pairs }
    }

    pub fn pairs(&self) -> &[(ElementId, ElementId)] {
        &self.pairs
    }

    pub fn left_ids(&self) -> Vec<ElementId> {
        let mut v: Vec<ElementId> = self.pairs.iter().map(|&(a, _)| a).collect();
        v.sort_unstable();
        v
    }

    pub fn right_ids(&self) -> Vec<ElementId> {
        let mut v: Vec<ElementId> = self.pairs.iter().map(|&(_, b)| b).collect();
        v.sort_unstable();
        v
    }

    /// Checks that the pairs form a poset isomorphism between order ideals.
    pub fn verify(&self, p: &SimplicialPoset, q: &SimplicialPoset) -> Result<(), GlueError> {
        let mut forward: HashMap<ElementId, ElementId> = HashMap::with_capacity(self.pairs.len());
        let mut backward: HashMap<ElementId, ElementId> = HashMap::with_capacity(self.pairs.len());
        for &(a, b) in &self.pairs {
            if a >= p.len() || b >= q.len() {
                return Err(GlueError::UnknownElement(a, b));
            }
            if forward.insert(a, b).is_some() || backward.insert(b, a).is_some() {
                return Err(GlueError::NotInjective(a, b));
            }
        }
        let left: BTreeSet<ElementId> = forward.keys().copied().collect();
        let right: BTreeSet<ElementId> = backward.keys().copied().collect();
        if !is_down_closed(p, &left) {
            return Err(GlueError::NotIdeal { side: "left" });
        }
        if !is_down_closed(q, &right) {
            return Err(GlueError::NotIdeal { side: "right" });
        }
        for &(a, b) in &self.pairs {
            let mut mapped: Vec<ElementId> = p.covers(a).iter().map(|c| forward[c]).collect();
            mapped.sort_unstable();
            let mut target = q.covers(b).to_vec();
            target.sort_unstable();
            if p.rank(a) != q.rank(b) || mapped != target {
                return Err(GlueError::NotIsomorphism(a, b));
            }
        }
        Ok(())
    }
}

/// Result of [`SimplicialPoset::glue`]: elements of `P` keep their ids and
/// `right_map[q]` is the id of `Q`'s element `q` in the glued poset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Glued {
    pub poset: SimplicialPoset,
    pub right_map: Vec<ElementId>,
}

impl SimplicialPoset {
    /// `P ∪_f Q`: the disjoint union with each pair identified. Elements of
    /// `Q` outside the glued ideal are appended in id order.
    pub fn glue(&self, other: &SimplicialPoset, map: &GlueMap) -> Result<Glued, GlueError> {
        if self.d() != other.d() {
            return Err(GlueError::RankMismatch {
                left: self.d(),
                right: other.d(),
            });
        }
        map.verify(self, other)?;

        let mut right_map = vec![usize::MAX; other.len()];
        for &(a, b) in map.pairs() {
            right_map[b] = a;
        }
        let mut next = self.len();
        for slot in right_map.iter_mut().filter(|s| **s == usize::MAX) {
            *slot = next;
            next += 1;
        }

        let mut elements = self.elements().to_vec();
        elements.resize(
            next,
            Element {
                rank: 0,
                covers: Vec::new(),
            },
        );
        for (q, e) in other.elements().iter().enumerate() {
            let id = right_map[q];
            if id < self.len() {
                continue;
            }
            elements[id] = Element {
                rank: e.rank,
                covers: e.covers.iter().map(|&c| right_map[c]).collect(),
            };
        }
        let poset = SimplicialPoset::from_elements(self.d(), elements);
        poset.validate().map_err(GlueError::InvalidResult)?;
        Ok(Glued { poset, right_map })
    }
}
