//! Polynomial MuM under the canonical heap model: every heap is the
//! canonical integer of a nonzero field element, and a move replaces a heap
//! by any smaller canonical integer.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::field::{FieldElement, FieldSpec};
use crate::error::{Error, IllegalMove, Result};
use crate::game::{ConsolidationPolicy, MoveAction, Outcome};
use crate::search::evaluate;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawPolyPosition")]
pub struct PolyPosition {
    field: FieldSpec,
    heaps: Vec<u64>,
}

#[derive(Deserialize)]
struct RawPolyPosition {
    field: FieldSpec,
    heaps: Vec<u64>,
}

impl TryFrom<RawPolyPosition> for PolyPosition {
    type Error = Error;

    fn try_from(raw: RawPolyPosition) -> Result<Self> {
        PolyPosition::new(raw.field, &raw.heaps)
    }
}

impl PolyPosition {
    /// Heaps must be canonical nonzero reps, `1..p^n`. Distinct reps are
    /// distinct elements, so every move changes the field product.
    pub fn new(field: FieldSpec, heaps: &[u64]) -> Result<Self> {
        if heaps.is_empty() {
            return Err(Error::EmptyHeaps);
        }
        for &h in heaps {
            if h == 0 {
                return Err(Error::NonPositiveHeap(0));
            }
            if h >= field.order() {
                return Err(Error::NotCanonical {
                    heap: h,
                    order: field.order(),
                });
            }
        }
        let mut heaps = heaps.to_vec();
        heaps.sort_unstable();
        Ok(Self::from_parts(field, heaps))
    }

    pub fn from_signed(field: FieldSpec, heaps: &[i64]) -> Result<Self> {
        let heaps = heaps
            .iter()
            .map(|&h| u64::try_from(h).map_err(|_| Error::NonPositiveHeap(h)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(field, &heaps)
    }

    fn from_parts(field: FieldSpec, mut heaps: Vec<u64>) -> Self {
        heaps.sort_unstable();
        Self { field, heaps }
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn heaps(&self) -> &[u64] {
        &self.heaps
    }

    fn element(&self, rep: u64) -> FieldElement {
        self.field.element(rep).expect("heaps are canonical")
    }

    pub fn field_product(&self) -> FieldElement {
        self.heaps
            .iter()
            .fold(self.field.one(), |acc, &h| acc.mul(&self.element(h)).expect("same field"))
    }

    pub fn classify(&self) -> Outcome {
        if self.field_product().is_one() {
            Outcome::PPosition
        } else {
            Outcome::NPosition
        }
    }

    pub fn is_terminal(&self) -> bool {
        self.heaps.iter().all(|&h| h == 1)
    }

    /// The heap value that would bring the product to 1 if heap `index`
    /// were replaced by it: `s(h) · P^{-1}`.
    pub fn winning_target(&self, index: usize) -> Option<u64> {
        let product = self.field_product();
        let inverse = product.inv().ok()?;
        let h = *self.heaps.get(index)?;
        Some(self.element(h).mul(&inverse).expect("same field").rep())
    }

    /// Winning position with no direct reduction to product 1.
    pub fn is_stranded(&self) -> bool {
        if self.classify() == Outcome::PPosition || self.is_terminal() {
            return false;
        }
        // No fast path taken: with a heap equal to p^n - 1 a direct win
        // always exists, but smaller heaps can have one too.
        !(0..self.heaps.len()).any(|i| {
            self.winning_target(i)
                .is_some_and(|k| k >= 1 && k < self.heaps[i])
        })
    }

    pub fn reduce_moves(&self) -> Vec<MoveAction> {
        let mut moves = Vec::new();
        for (heap_index, &h) in self.heaps.iter().enumerate() {
            moves.extend((1..h).map(|amount| MoveAction::Reduce { heap_index, amount }));
        }
        moves
    }

    fn consolidation_permitted(&self, policy: ConsolidationPolicy) -> bool {
        match policy {
            ConsolidationPolicy::Always => self.heaps.len() >= 2,
            ConsolidationPolicy::StrandedOnly => self.is_stranded(),
        }
    }

    /// Consolidated heap: the canonical rep of the field product.
    pub fn consolidated_heap(&self) -> u64 {
        self.field_product().rep()
    }

    pub fn legal_moves(&self, policy: ConsolidationPolicy) -> Vec<MoveAction> {
        let mut moves = self.reduce_moves();
        if self.consolidation_permitted(policy) {
            let merged = self.consolidated_heap();
            moves.extend((1..merged).map(|amount| MoveAction::ConsolidateThenReduce { amount }));
        }
        moves
    }

    pub fn apply_move(&self, mv: MoveAction, policy: ConsolidationPolicy) -> Result<PolyPosition> {
        let reduce = |heap: u64, amount: u64| -> Result<u64> {
            if amount == 0 {
                return Err(IllegalMove::ZeroAmount.into());
            }
            if amount >= heap {
                return Err(IllegalMove::AmountNotBelowHeap { amount, heap }.into());
            }
            Ok(heap - amount)
        };
        match mv {
            MoveAction::Reduce { heap_index, amount } => {
                let heap = *self.heaps.get(heap_index).ok_or(IllegalMove::NoSuchHeap {
                    index: heap_index,
                    len: self.heaps.len(),
                })?;
                let mut heaps = self.heaps.clone();
                heaps[heap_index] = reduce(heap, amount)?;
                Ok(Self::from_parts(self.field.clone(), heaps))
            }
            MoveAction::ConsolidateThenReduce { amount } => {
                if !self.consolidation_permitted(policy) {
                    return Err(IllegalMove::ConsolidationNotPermitted {
                        policy: policy.name(),
                    }
                    .into());
                }
                let next = reduce(self.consolidated_heap(), amount)?;
                Ok(Self::from_parts(self.field.clone(), vec![next]))
            }
        }
    }

    /// Replaces the first heap `h` whose target `k = s(h)·P^{-1}` is below
    /// it; otherwise consolidates and moves straight to heap 1.
    pub fn optimal_move(&self, policy: ConsolidationPolicy) -> Option<MoveAction> {
        if self.classify() == Outcome::PPosition {
            return None;
        }
        for (heap_index, &h) in self.heaps.iter().enumerate() {
            if let Some(k) = self.winning_target(heap_index) {
                if k >= 1 && k < h {
                    return Some(MoveAction::Reduce {
                        heap_index,
                        amount: h - k,
                    });
                }
            }
        }
        let merged = self.consolidated_heap();
        (self.consolidation_permitted(policy) && merged > 1)
            .then_some(MoveAction::ConsolidateThenReduce { amount: merged - 1 })
    }
}

impl fmt::Display for PolyPosition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} in {}", self.heaps, self.field)
    }
}

/// Memoized game-tree search for polynomial positions.
#[derive(Debug, Default)]
pub struct PolySolver {
    outcomes: HashMap<(ConsolidationPolicy, PolyPosition), Outcome>,
    budget: Option<usize>,
}

impl PolySolver {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_budget(budget: usize) -> Self {
        Self {
            budget: Some(budget),
            ..Self::default()
        }
    }

    pub fn outcome(&mut self, pos: &PolyPosition, policy: ConsolidationPolicy) -> Result<Outcome> {
        evaluate(
            &(policy, pos.clone()),
            &mut self.outcomes,
            self.budget,
            |(policy, pos)| {
                let mut kids: Vec<PolyPosition> = pos
                    .legal_moves(*policy)
                    .into_iter()
                    .filter_map(|mv| pos.apply_move(mv, *policy).ok())
                    .collect();
                kids.sort_unstable_by(|a, b| a.heaps.cmp(&b.heaps));
                kids.dedup();
                kids.into_iter().map(|k| (*policy, k)).collect()
            },
            |_, kids: &[Outcome]| {
                if kids.contains(&Outcome::PPosition) {
                    Outcome::NPosition
                } else {
                    Outcome::PPosition
                }
            },
        )
    }
}

pub fn outcome_bruteforce_poly(pos: &PolyPosition, policy: ConsolidationPolicy) -> Outcome {
    PolySolver::new()
        .outcome(pos, policy)
        .expect("unbounded search has no budget to exceed")
}
