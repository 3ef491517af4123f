//! Simplicial posets stored as Hasse diagrams.
//!
//! The minimal element `0̂` is implicit. Every stored element carries its
//! rank and the ids of the elements it covers; rank-1 elements (vertices)
//! cover nothing. Distinct elements may have the same vertex set, so atom
//! sets are derived on demand and never used as identity.

mod construct;
mod glue;
mod ideal;
mod shelling;
mod text;

use std::collections::HashSet;

use thiserror::Error;

use crate::hcalc::{f_from_h, h_from_f, HVector};

pub use construct::{boolean, delta, DeltaError, LabeledPoset};
pub use glue::{GlueError, GlueMap, Glued};
pub use ideal::OrderIdeal;
pub use shelling::{shelling_h_vector, ShellingError};
pub use text::ParseError;

pub type ElementId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Element {
    pub rank: usize,
    pub covers: Vec<ElementId>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialPoset {
    d: usize,
    elements: Vec<Element>,
}

/// Malformed input that is not even a graded poset candidate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructuralError {
    #[error("element {element} covers unknown id {cover}")]
    DanglingCover {
        element: ElementId,
        cover: ElementId,
    },
    #[error("element {element} has rank {rank} outside [1, {d}]")]
    RankOutOfRange {
        element: ElementId,
        rank: usize,
        d: usize,
    },
}

/// A violated simplicial-poset invariant, with a witness element.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("element {element} (rank {rank}) covers element {cover} of rank {cover_rank}")]
    NotGraded {
        element: ElementId,
        rank: usize,
        cover: ElementId,
        cover_rank: usize,
    },
    #[error("interval below element {element} is not a Boolean algebra")]
    BooleanInterval { element: ElementId },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValidateError {
    #[error("structural error: {0}")]
    Structural(#[from] StructuralError),
    #[error("invariant violated: {0}")]
    Violation(#[from] Violation),
}

impl ValidateError {
    pub fn is_structural(&self) -> bool {
        matches!(self, ValidateError::Structural(_))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PosetError {
    #[error("element {element} of rank d-1 is covered by {covers} elements")]
    NotPseudomanifold { element: ElementId, covers: usize },
    #[error("poset has empty boundary")]
    EmptyBoundary,
    #[error("id {0} is not an element")]
    UnknownElement(ElementId),
    #[error(transparent)]
    Glue(#[from] GlueError),
}

impl SimplicialPoset {
    /// Builds a poset from raw parts without checking anything; call
    /// [`SimplicialPoset::validate`] before relying on the invariants.
    pub fn from_elements(d: usize, elements: Vec<Element>) -> Self {
        SimplicialPoset { d, elements }
    }

    /// The poset consisting of `0̂` alone, viewed with rank `d`.
    pub fn empty(d: usize) -> Self {
        SimplicialPoset {
            d,
            elements: Vec::new(),
        }
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn rank(&self, id: ElementId) -> usize {
        self.elements[id].rank
    }

    pub fn covers(&self, id: ElementId) -> &[ElementId] {
        &self.elements[id].covers
    }

    pub fn into_elements(self) -> Vec<Element> {
        self.elements
    }

    /// For each element, the ids of the elements covering it.
    pub fn up_covers(&self) -> Vec<Vec<ElementId>> {
        let mut up = vec![Vec::new(); self.elements.len()];
        for (id, e) in self.elements.iter().enumerate() {
            for &c in &e.covers {
                if let Some(slot) = up.get_mut(c) {
                    slot.push(id);
                }
            }
        }
        up
    }

    /// Elements that are not covered by anything.
    pub fn facets(&self) -> Vec<ElementId> {
        self.up_covers()
            .iter()
            .enumerate()
            .filter(|(_, up)| up.is_empty())
            .map(|(id, _)| id)
            .collect()
    }

    /// Every maximal element has rank `d`.
    pub fn is_pure(&self) -> bool {
        self.facets().iter().all(|&id| self.rank(id) == self.d)
    }

    /// Sorted vertex ids below each element. Dangling or rank-inconsistent
    /// covers are skipped, so this is total even on invalid input.
    pub fn atom_sets(&self) -> Vec<Vec<ElementId>> {
        let mut order: Vec<ElementId> = (0..self.elements.len()).collect();
        order.sort_by_key(|&id| self.elements[id].rank);
        let mut atoms: Vec<Vec<ElementId>> = vec![Vec::new(); self.elements.len()];
        for id in order {
            let e = &self.elements[id];
            if e.rank <= 1 {
                atoms[id] = vec![id];
                continue;
            }
            let mut acc: Vec<ElementId> = e
                .covers
                .iter()
                .filter(|&&c| c < self.elements.len() && self.elements[c].rank < e.rank)
                .flat_map(|&c| atoms[c].iter().copied())
                .collect();
            acc.sort_unstable();
            acc.dedup();
            atoms[id] = acc;
        }
        atoms
    }

    /// Checks that every element's lower interval `[0̂, σ]` is a Boolean
    /// algebra, reporting the first offending element.
    pub fn validate(&self) -> Result<(), ValidateError> {
        let n = self.elements.len();
        for (id, e) in self.elements.iter().enumerate() {
            if e.rank == 0 || e.rank > self.d {
                return Err(StructuralError::RankOutOfRange {
                    element: id,
                    rank: e.rank,
                    d: self.d,
                }
                .into());
            }
            if let Some(&c) = e.covers.iter().find(|&&c| c >= n) {
                return Err(StructuralError::DanglingCover {
                    element: id,
                    cover: c,
                }
                .into());
            }
        }
        for (id, e) in self.elements.iter().enumerate() {
            if let Some(&c) = e
                .covers
                .iter()
                .find(|&&c| self.elements[c].rank + 1 != e.rank)
            {
                return Err(Violation::NotGraded {
                    element: id,
                    rank: e.rank,
                    cover: c,
                    cover_rank: self.elements[c].rank,
                }
                .into());
            }
        }

        let mut order: Vec<ElementId> = (0..n).collect();
        order.sort_by_key(|&id| (self.elements[id].rank, id));
        let atoms = self.atom_sets();
        // Down-sets (excluding 0̂, including the element), sorted.
        let mut down: Vec<Vec<ElementId>> = vec![Vec::new(); n];
        for id in order {
            let e = &self.elements[id];
            let mut set: Vec<ElementId> = e
                .covers
                .iter()
                .flat_map(|&c| down[c].iter().copied())
                .collect();
            set.push(id);
            set.sort_unstable();
            set.dedup();

            let rank = e.rank;
            let boolean = atoms[id].len() == rank
                && e.covers.len() == if rank == 1 { 0 } else { rank }
                && set.len() == (1usize << rank) - 1
                && {
                    let position = |v: ElementId| atoms[id].binary_search(&v).ok();
                    let mut masks = HashSet::with_capacity(set.len());
                    set.iter().all(|&t| {
                        let mask = atoms[t]
                            .iter()
                            .try_fold(0u64, |m, &v| position(v).map(|p| m | 1 << p));
                        matches!(mask, Some(m) if masks.insert(m))
                    })
                };
            if !boolean {
                return Err(Violation::BooleanInterval { element: id }.into());
            }
            down[id] = set;
        }
        Ok(())
    }

    /// `(f_{-1}, f_0, ..., f_{d-1})`, where `f_i` counts elements of rank `i + 1`.
    pub fn f_vector(&self) -> Vec<i128> {
        let mut f = vec![0i128; self.d + 1];
        f[0] = 1;
        for e in &self.elements {
            if e.rank >= 1 && e.rank <= self.d {
                f[e.rank] += 1;
            }
        }
        f
    }

    pub fn h_vector(&self) -> HVector {
        HVector::try_from_wide(h_from_f(&self.f_vector()))
            .expect("h-vector of a finite poset fits in i64")
    }

    /// Number of rank-`d` elements.
    pub fn facet_count(&self) -> usize {
        if self.d == 0 {
            return 1;
        }
        self.elements.iter().filter(|e| e.rank == self.d).count()
    }

    /// Element ids of rank `r`.
    pub fn rank_elements(&self, r: usize) -> impl Iterator<Item = ElementId> + '_ {
        self.elements
            .iter()
            .enumerate()
            .filter(move |(_, e)| e.rank == r)
            .map(|(id, _)| id)
    }

    /// Renumbers elements by (rank, sorted atom ids, original id), where atom
    /// ids are the already-renumbered vertex ids.
    pub fn canonical(&self) -> SimplicialPoset {
        let n = self.elements.len();
        let atoms = self.atom_sets();
        let mut new_id = vec![usize::MAX; n];
        let mut order: Vec<ElementId> = Vec::with_capacity(n);
        let max_rank = self.elements.iter().map(|e| e.rank).max().unwrap_or(0);
        for r in 0..=max_rank {
            let mut layer: Vec<(Vec<ElementId>, ElementId)> = self
                .elements
                .iter()
                .enumerate()
                .filter(|(_, e)| e.rank == r)
                .map(|(id, _)| {
                    let mut key: Vec<ElementId> = if r <= 1 {
                        Vec::new()
                    } else {
                        atoms[id].iter().map(|&a| new_id[a]).collect()
                    };
                    key.sort_unstable();
                    (key, id)
                })
                .collect();
            layer.sort();
            for (_, id) in layer {
                new_id[id] = order.len();
                order.push(id);
            }
        }
        let elements = order
            .iter()
            .map(|&old| {
                let e = &self.elements[old];
                let mut covers: Vec<ElementId> = e
                    .covers
                    .iter()
                    .map(|&c| new_id.get(c).copied().unwrap_or(c))
                    .collect();
                covers.sort_unstable();
                Element {
                    rank: e.rank,
                    covers,
                }
            })
            .collect();
        SimplicialPoset {
            d: self.d,
            elements,
        }
    }

    /// Every rank `d-1` element is covered by at most two elements.
    pub fn check_pseudomanifold(&self) -> Result<(), PosetError> {
        if self.d == 0 {
            return Ok(());
        }
        let up = self.up_covers();
        for id in self.rank_elements(self.d - 1) {
            if up[id].len() > 2 {
                return Err(PosetError::NotPseudomanifold {
                    element: id,
                    covers: up[id].len(),
                });
            }
        }
        Ok(())
    }

    /// Pure, and every rank `d-1` element covered by one or two facets.
    pub fn is_pure_pseudomanifold(&self) -> bool {
        if self.d == 0 {
            return true;
        }
        let up = self.up_covers();
        self.is_pure()
            && self
                .rank_elements(self.d - 1)
                .all(|id| (1..=2).contains(&up[id].len()))
    }
}

/// f-vector recovered from an h-vector.
pub fn f_from_h_vector(h: &HVector) -> Vec<i128> {
    f_from_h(&h.wide())
}
