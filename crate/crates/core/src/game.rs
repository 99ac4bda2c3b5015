//! Numeric positions, move generation and the product-based strategy.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, IllegalMove, Result};
use crate::modular::{gcd, mod_inverse, Modulus, Residue};

/// Win/loss status for the player to move under normal play.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Outcome {
    /// The player to move loses.
    #[serde(rename = "P")]
    PPosition,
    /// The player to move wins.
    #[serde(rename = "N")]
    NPosition,
}

impl Outcome {
    pub fn is_losing(self) -> bool {
        self == Outcome::PPosition
    }

    pub fn describe(self) -> &'static str {
        match self {
            Outcome::PPosition => "losing",
            Outcome::NPosition => "winning",
        }
    }
}

/// When a player may merge every heap into their product before reducing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConsolidationPolicy {
    /// Only from winning positions with no direct winning reduction.
    #[default]
    StrandedOnly,
    /// From any position with at least two heaps.
    Always,
}

impl ConsolidationPolicy {
    pub fn name(self) -> &'static str {
        match self {
            ConsolidationPolicy::StrandedOnly => "stranded-only",
            ConsolidationPolicy::Always => "always",
        }
    }
}

impl fmt::Display for ConsolidationPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for ConsolidationPolicy {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "stranded-only" | "stranded" => Ok(Self::StrandedOnly),
            "always" => Ok(Self::Always),
            other => Err(format!(
                "unknown policy {other:?} (expected stranded-only or always)"
            )),
        }
    }
}

/// One turn. The compound consolidate-then-reduce is a single turn.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "camelCase")]
pub enum MoveAction {
    Reduce {
        #[serde(rename = "heapIndex")]
        heap_index: usize,
        amount: u64,
    },
    ConsolidateThenReduce { amount: u64 },
}

impl fmt::Display for MoveAction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MoveAction::Reduce { heap_index, amount } => {
                write!(f, "subtract {amount} from heap #{heap_index}")
            }
            MoveAction::ConsolidateThenReduce { amount } => {
                write!(f, "consolidate all heaps, then subtract {amount}")
            }
        }
    }
}

/// A validated numeric position. Heaps are kept sorted ascending, so two
/// positions with the same multiset compare equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawPosition")]
pub struct NumPosition {
    modulus: Modulus,
    heaps: Vec<u64>,
}

#[derive(Deserialize)]
struct RawPosition {
    modulus: Modulus,
    heaps: Vec<u64>,
}

impl TryFrom<RawPosition> for NumPosition {
    type Error = Error;

    fn try_from(raw: RawPosition) -> Result<Self> {
        NumPosition::new(raw.modulus, &raw.heaps)
    }
}

impl NumPosition {
    pub fn new(modulus: Modulus, heaps: &[u64]) -> Result<Self> {
        if heaps.is_empty() {
            return Err(Error::EmptyHeaps);
        }
        for &h in heaps {
            if h == 0 {
                return Err(Error::NonPositiveHeap(0));
            }
            if gcd(h, modulus.get()) != 1 {
                return Err(Error::HeapNotCoprime {
                    heap: h,
                    modulus: modulus.get(),
                });
            }
        }
        let mut heaps = heaps.to_vec();
        heaps.sort_unstable();
        Ok(Self { modulus, heaps })
    }

    /// Like [`NumPosition::new`] but accepts signed input, as typed by a user.
    pub fn from_signed(modulus: Modulus, heaps: &[i64]) -> Result<Self> {
        let heaps = heaps
            .iter()
            .map(|&h| u64::try_from(h).map_err(|_| Error::NonPositiveHeap(h)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(modulus, &heaps)
    }

    fn from_sorted_unchecked(modulus: Modulus, mut heaps: Vec<u64>) -> Self {
        heaps.sort_unstable();
        Self { modulus, heaps }
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn heaps(&self) -> &[u64] {
        &self.heaps
    }

    /// `∏ heaps mod m`, reducing after every factor.
    pub fn product_mod(&self) -> Residue {
        let m = self.modulus;
        let value = self.heaps.iter().fold(1 % m.get(), |acc, &h| m.mul(acc, h % m.get()));
        m.residue(value)
    }

    /// Product of every heap except `index`, mod m.
    pub fn coproduct(&self, index: usize) -> Residue {
        let m = self.modulus;
        let value = self
            .heaps
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != index)
            .fold(1 % m.get(), |acc, (_, &h)| m.mul(acc, h % m.get()));
        m.residue(value)
    }

    /// The exact integer product of all heaps, as used by consolidation.
    pub fn integer_product(&self) -> Result<u64> {
        self.heaps
            .iter()
            .try_fold(1u64, |acc, &h| acc.checked_mul(h))
            .ok_or(Error::ProductOverflow)
    }

    pub fn classify(&self) -> Outcome {
        if self.product_mod().is_one() {
            Outcome::PPosition
        } else {
            Outcome::NPosition
        }
    }

    pub fn is_terminal(&self) -> bool {
        self.heaps.iter().all(|&h| h == 1)
    }

    fn reduction_allowed(&self, heap: u64, amount: u64) -> std::result::Result<u64, IllegalMove> {
        let m = self.modulus.get();
        if amount == 0 {
            return Err(IllegalMove::ZeroAmount);
        }
        if amount >= m {
            return Err(IllegalMove::AmountNotBelowModulus { amount, modulus: m });
        }
        if amount >= heap {
            return Err(IllegalMove::AmountNotBelowHeap { amount, heap });
        }
        let next = heap - amount;
        if gcd(next, m) != 1 {
            return Err(IllegalMove::ResultNotCoprime { heap: next, modulus: m });
        }
        Ok(next)
    }

    fn legal_amounts(&self, heap: u64) -> impl Iterator<Item = u64> + '_ {
        let top = (self.modulus.get() - 1).min(heap.saturating_sub(1));
        (1..=top).filter(move |&r| self.reduction_allowed(heap, r).is_ok())
    }

    /// Direct reductions only, ordered by heap index then amount.
    pub fn reduce_moves(&self) -> Vec<MoveAction> {
        let mut moves = Vec::new();
        for (heap_index, &h) in self.heaps.iter().enumerate() {
            moves.extend(
                self.legal_amounts(h)
                    .map(|amount| MoveAction::Reduce { heap_index, amount }),
            );
        }
        moves
    }

    fn consolidation_permitted(&self, policy: ConsolidationPolicy) -> bool {
        match policy {
            ConsolidationPolicy::Always => self.heaps.len() >= 2,
            ConsolidationPolicy::StrandedOnly => self.is_stranded(),
        }
    }

    /// Every legal turn: reductions first (by heap index, then amount), then
    /// compound moves by amount. Compound moves are left out when the
    /// integer product does not fit a `u64`.
    pub fn legal_moves(&self, policy: ConsolidationPolicy) -> Vec<MoveAction> {
        let mut moves = self.reduce_moves();
        if self.consolidation_permitted(policy) {
            if let Ok(merged) = self.integer_product() {
                moves.extend(
                    self.legal_amounts(merged)
                        .map(|amount| MoveAction::ConsolidateThenReduce { amount }),
                );
            }
        }
        moves
    }

    pub fn apply_move(&self, mv: MoveAction, policy: ConsolidationPolicy) -> Result<NumPosition> {
        match mv {
            MoveAction::Reduce { heap_index, amount } => {
                let heap = *self.heaps.get(heap_index).ok_or(IllegalMove::NoSuchHeap {
                    index: heap_index,
                    len: self.heaps.len(),
                })?;
                let next = self.reduction_allowed(heap, amount)?;
                let mut heaps = self.heaps.clone();
                heaps[heap_index] = next;
                Ok(Self::from_sorted_unchecked(self.modulus, heaps))
            }
            MoveAction::ConsolidateThenReduce { amount } => {
                if !self.consolidation_permitted(policy) {
                    return Err(IllegalMove::ConsolidationNotPermitted {
                        policy: policy.name(),
                    }
                    .into());
                }
                let merged = self.integer_product()?;
                let next = self.reduction_allowed(merged, amount)?;
                Ok(Self::from_sorted_unchecked(self.modulus, vec![next]))
            }
        }
    }

    /// A winning position from which no direct reduction reaches product 1.
    pub fn is_stranded(&self) -> bool {
        if self.classify() == Outcome::PPosition || self.is_terminal() {
            return false;
        }
        !self.heaps.iter().enumerate().any(|(i, &h)| {
            let co = self.coproduct(i).value();
            self.legal_amounts(h)
                .any(|r| self.modulus.mul((h - r) % self.modulus.get(), co) == 1)
        })
    }

    /// The move constructed from the coproduct inverse on the first heap
    /// larger than the modulus, if that move is legal.
    pub(crate) fn inverse_construction(&self) -> Option<(MoveAction, Residue, Residue)> {
        let m = self.modulus;
        for (heap_index, &h) in self.heaps.iter().enumerate() {
            if h <= m.get() {
                continue;
            }
            let coproduct = self.coproduct(heap_index);
            let Ok(inverse) = mod_inverse(coproduct.value(), m) else {
                continue;
            };
            let amount = (h % m.get() + m.get() - inverse.value()) % m.get();
            if amount >= 1 && self.reduction_allowed(h, amount).is_ok() {
                return Some((MoveAction::Reduce { heap_index, amount }, coproduct, inverse));
            }
        }
        None
    }

    /// A move to a position with product 1, or `None` from a losing position.
    ///
    /// Order of preference: the inverse construction on a heap above the
    /// modulus, then the first direct reduction reaching product 1, then a
    /// compound consolidation. Ties go to the lowest heap index, then the
    /// smallest amount. Also `None` in the unplayable case where a required
    /// consolidation overflows.
    pub fn optimal_move(&self, policy: ConsolidationPolicy) -> Option<MoveAction> {
        if self.classify() == Outcome::PPosition {
            return None;
        }
        if let Some((mv, _, _)) = self.inverse_construction() {
            return Some(mv);
        }
        let wins = |mv: &MoveAction| {
            self.apply_move(*mv, policy)
                .map(|next| next.classify() == Outcome::PPosition)
                .unwrap_or(false)
        };
        if let Some(mv) = self.reduce_moves().into_iter().find(wins) {
            return Some(mv);
        }
        self.legal_moves(policy)
            .into_iter()
            .filter(|mv| matches!(mv, MoveAction::ConsolidateThenReduce { .. }))
            .find(wins)
    }

    /// Side-by-side play: the multiset union of both heap lists.
    pub fn disjunctive_sum(&self, other: &NumPosition) -> Result<NumPosition> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch {
                left: self.modulus.get(),
                right: other.modulus.get(),
            });
        }
        let heaps = self.heaps.iter().chain(&other.heaps).copied().collect();
        Ok(Self::from_sorted_unchecked(self.modulus, heaps))
    }

    /// Same heaps read modulo a different modulus. Callers guarantee the
    /// heaps stay coprime to it.
    pub(crate) fn with_modulus(&self, modulus: Modulus) -> NumPosition {
        Self {
            modulus,
            heaps: self.heaps.clone(),
        }
    }
}

impl fmt::Display for NumPosition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} mod {}", self.heaps, self.modulus)
    }
}
