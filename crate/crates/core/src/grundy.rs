//! Mumbers: the recursive mex value of a position, and the search oracles
//! used to check it against the heap product.

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use crate::error::{Error, IllegalMove, Result};
use crate::game::{ConsolidationPolicy, NumPosition, Outcome};
use crate::modular::{unit_mex, Modulus, Residue};
use crate::search::evaluate;

type Key = (ConsolidationPolicy, NumPosition);

/// Everything the theory says about one position.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct MumberReport {
    pub position: NumPosition,
    pub policy: ConsolidationPolicy,
    pub mumber_mex: Residue,
    pub mumber_product: Residue,
    /// `(product - 1) mod p`, only for prime moduli.
    pub grundy: Option<u64>,
    pub outcome: Outcome,
    pub stranded: bool,
}

/// Memoized solver. The caches are keyed on the exact sorted heap multiset,
/// modulus and policy. A solver is owned by one worker; concurrent sweeps
/// give each worker its own solver.
#[derive(Debug, Default)]
pub struct Solver {
    /// `None` marks a position whose options cover all of `Z_m`; its mumber
    /// lies past the residues and blocks nothing in a parent's option set.
    mumbers: HashMap<Key, Option<Residue>>,
    outcomes: HashMap<Key, Outcome>,
    budget: Option<usize>,
}

fn options(key: &Key) -> Vec<Key> {
    let (policy, pos) = key;
    let mut kids: Vec<NumPosition> = pos
        .legal_moves(*policy)
        .into_iter()
        .filter_map(|mv| pos.apply_move(mv, *policy).ok())
        .collect();
    kids.sort_unstable();
    kids.dedup();
    kids.into_iter().map(|k| (*policy, k)).collect()
}

impl Solver {
    pub fn new() -> Self {
        Self::default()
    }

    /// Caps the number of positions a single query may newly evaluate.
    pub fn with_budget(budget: usize) -> Self {
        Self {
            budget: Some(budget),
            ..Self::default()
        }
    }

    pub fn cached_positions(&self) -> usize {
        self.mumbers.len() + self.outcomes.len()
    }

    /// Recursive mex over the mumbers of every option.
    ///
    /// Fails with [`Error::SetSaturated`] when the options already take
    /// every residue. That cannot happen under
    /// [`ConsolidationPolicy::Always`], but can under `StrandedOnly`, where
    /// mumbers drift from the product.
    pub fn mumber_mex(&mut self, pos: &NumPosition, policy: ConsolidationPolicy) -> Result<Residue> {
        let m = pos.modulus();
        evaluate(
            &(policy, pos.clone()),
            &mut self.mumbers,
            self.budget,
            options,
            |_, kids: &[Option<Residue>]| unit_mex(kids.iter().flatten().copied(), m).ok(),
        )?
        .ok_or(Error::SetSaturated(m.get()))
    }

    /// Plain game-tree search: a position is won iff some option is lost.
    /// Options come from the move rules alone; the heap product is never
    /// consulted except through the stranded gate that the rules themselves
    /// define for [`ConsolidationPolicy::StrandedOnly`].
    pub fn outcome(&mut self, pos: &NumPosition, policy: ConsolidationPolicy) -> Result<Outcome> {
        evaluate(
            &(policy, pos.clone()),
            &mut self.outcomes,
            self.budget,
            options,
            |_, kids: &[Outcome]| {
                if kids.contains(&Outcome::PPosition) {
                    Outcome::NPosition
                } else {
                    Outcome::PPosition
                }
            },
        )
    }

    pub fn report(&mut self, pos: &NumPosition, policy: ConsolidationPolicy) -> Result<MumberReport> {
        let mumber_mex = self.mumber_mex(pos, policy)?;
        let mumber_product = pos.product_mod();
        let m = pos.modulus();
        Ok(MumberReport {
            position: pos.clone(),
            policy,
            mumber_mex,
            mumber_product,
            grundy: m
                .is_prime()
                .then(|| (mumber_product.value() + m.get() - 1) % m.get()),
            outcome: pos.classify(),
            stranded: pos.is_stranded(),
        })
    }

    /// Checks `MM(a + b) = MM(a) * MM(b)` for the disjunctive sum.
    pub fn sum_multiplicativity_check(
        &mut self,
        a: &NumPosition,
        b: &NumPosition,
        policy: ConsolidationPolicy,
    ) -> Result<bool> {
        let sum = a.disjunctive_sum(b)?;
        let lhs = self.mumber_mex(&sum, policy)?;
        let rhs = self.mumber_mex(a, policy)?.mul(self.mumber_mex(b, policy)?)?;
        Ok(lhs == rhs)
    }
}

/// [`Solver::mumber_mex`] with a fresh, unbounded solver.
pub fn mumber_mex(pos: &NumPosition, policy: ConsolidationPolicy) -> Result<Residue> {
    Solver::new().mumber_mex(pos, policy)
}

/// [`Solver::outcome`] with a fresh, unbounded solver.
pub fn outcome_bruteforce(pos: &NumPosition, policy: ConsolidationPolicy) -> Outcome {
    Solver::new()
        .outcome(pos, policy)
        .expect("unbounded search has no budget to exceed")
}

pub fn sum_multiplicativity_check(
    a: &NumPosition,
    b: &NumPosition,
    policy: ConsolidationPolicy,
) -> Result<bool> {
    Solver::new().sum_multiplicativity_check(a, b, policy)
}

/// Closed form for a single heap: `h mod m`.
pub fn single_heap_mumber(h: u64, m: Modulus) -> Residue {
    m.residue(h)
}

/// Grundy values `G(1..=h_max)` of the single-heap subtraction game with
/// moves `1..p` and terminal heap 1. Multiples of `p` are not skipped.
/// Index 0 of the result is `G(1)`.
pub fn grundy_single_heap_table(h_max: u64, p: Modulus) -> Vec<u64> {
    let mut table: Vec<u64> = Vec::with_capacity(h_max as usize);
    for h in 1..=h_max {
        let lo = h.saturating_sub(p.get() - 1).max(1);
        let seen: BTreeSet<u64> = (lo..h).map(|k| table[(k - 1) as usize]).collect();
        let g = (0..).find(|g| !seen.contains(g)).expect("finite set");
        table.push(g);
    }
    table
}

pub fn grundy_single_heap(h: u64, p: Modulus) -> u64 {
    assert!(h >= 1, "heap must be positive");
    *grundy_single_heap_table(h, p).last().expect("h >= 1")
}

/// Product-residues of the children reached by reducing heap `heap_index`.
pub fn children_mumbers(pos: &NumPosition, heap_index: usize) -> Result<BTreeSet<Residue>> {
    let m = pos.modulus();
    let heap = *pos.heaps().get(heap_index).ok_or(IllegalMove::NoSuchHeap {
        index: heap_index,
        len: pos.heaps().len(),
    })?;
    if heap <= m.get() {
        return Err(Error::HeapTooSmall {
            heap,
            modulus: m.get(),
        });
    }
    let co = pos.coproduct(heap_index);
    Ok((1..m.get())
        .map(|r| heap - r)
        .filter(|&h| m.is_unit(h))
        .map(|h| m.residue(m.mul(h % m.get(), co.value())))
        .collect())
}
