use std::collections::BTreeSet;

use super::{Element, ElementId, PosetError, SimplicialPoset};

/// A downward-closed subset of a poset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderIdeal<'a> {
    parent: &'a SimplicialPoset,
    members: Vec<ElementId>,
    d: usize,
}

impl<'a> OrderIdeal<'a> {
    pub fn parent(&self) -> &'a SimplicialPoset {
        self.parent
    }

    /// Sorted member ids (in the parent).
    pub fn members(&self) -> &[ElementId] {
        &self.members
    }

    pub fn contains(&self, id: ElementId) -> bool {
        self.members.binary_search(&id).is_ok()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Rank assigned to the sub-poset view.
    pub fn d(&self) -> usize {
        self.d
    }

    pub fn with_rank(mut self, d: usize) -> Self {
        self.d = d;
        self
    }

    /// Members of rank `r`.
    pub fn rank_members(&self, r: usize) -> impl Iterator<Item = ElementId> + '_ {
        self.members
            .iter()
            .copied()
            .filter(move |&id| self.parent.rank(id) == r)
    }

    /// Maximal members.
    pub fn maximal(&self) -> Vec<ElementId> {
        let mut covered = vec![false; self.parent.len()];
        for &m in &self.members {
            for &c in self.parent.covers(m) {
                covered[c] = true;
            }
        }
        self.members
            .iter()
            .copied()
            .filter(|&m| !covered[m])
            .collect()
    }

    /// The ideal as a standalone poset, plus the map from view ids to
    /// parent ids. View ids follow the parent id order.
    pub fn to_poset(&self) -> (SimplicialPoset, Vec<ElementId>) {
        let index = |id: ElementId| self.members.binary_search(&id).expect("ideal is closed");
        let elements = self
            .members
            .iter()
            .map(|&id| Element {
                rank: self.parent.rank(id),
                covers: self.parent.covers(id).iter().map(|&c| index(c)).collect(),
            })
            .collect();
        (
            SimplicialPoset::from_elements(self.d, elements),
            self.members.clone(),
        )
    }
}

/// True when every cover of a member is a member.
pub(crate) fn is_down_closed(parent: &SimplicialPoset, members: &BTreeSet<ElementId>) -> bool {
    members
        .iter()
        .all(|&m| m < parent.len() && parent.covers(m).iter().all(|c| members.contains(c)))
}

impl SimplicialPoset {
    /// `⟨σ_1, ..., σ_k⟩`, the downward closure of `generators`.
    pub fn order_ideal(&self, generators: &[ElementId]) -> Result<OrderIdeal<'_>, PosetError> {
        if let Some(&bad) = generators.iter().find(|&&g| g >= self.len()) {
            return Err(PosetError::UnknownElement(bad));
        }
        let mut seen = vec![false; self.len()];
        let mut stack: Vec<ElementId> = generators.to_vec();
        while let Some(id) = stack.pop() {
            if std::mem::replace(&mut seen[id], true) {
                continue;
            }
            stack.extend(self.covers(id).iter().copied().filter(|&c| !seen[c]));
        }
        let members: Vec<ElementId> = (0..self.len()).filter(|&id| seen[id]).collect();
        let d = members.iter().map(|&id| self.rank(id)).max().unwrap_or(0);
        Ok(OrderIdeal {
            parent: self,
            members,
            d,
        })
    }

    /// The ideal generated by rank `d-1` elements covered by exactly one
    /// element. Its view has rank `d-1`.
    pub fn boundary(&self) -> Result<OrderIdeal<'_>, PosetError> {
        self.check_pseudomanifold()?;
        if self.d() == 0 {
            return Ok(self.order_ideal(&[])?.with_rank(0));
        }
        let up = self.up_covers();
        let generators: Vec<ElementId> = self
            .rank_elements(self.d() - 1)
            .filter(|&id| up[id].len() == 1)
            .collect();
        Ok(self.order_ideal(&generators)?.with_rank(self.d() - 1))
    }
}
