//! Optimal moves packaged with the arithmetic that produced them.

use serde::Serialize;

use crate::game::{ConsolidationPolicy, MoveAction, NumPosition, Outcome};
use crate::poly::PolyPosition;

pub const LOSING_TEXT: &str =
    "position is losing: every legal move leads to a winning position";

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "camelCase", rename_all_fields = "camelCase")]
pub enum Explanation {
    /// No winning move exists.
    Losing { text: String },
    /// Heap `heap` becomes the inverse of the product of the other heaps.
    InverseConstruction {
        heap_index: usize,
        heap: u64,
        coproduct: u64,
        inverse: u64,
        target: u64,
        modulus: u64,
        text: String,
    },
    /// A reduction found by scanning, used when every heap is small.
    DirectReduction {
        heap_index: usize,
        heap: u64,
        target: u64,
        text: String,
    },
    /// Merge all heaps into one, then reduce it to a losing residue.
    Consolidation {
        consolidated: u64,
        amount: u64,
        target: u64,
        text: String,
    },
    /// Polynomial variant: heap `heap` becomes `s(h) · P^{-1}`.
    FieldInverse {
        heap_index: usize,
        heap: u64,
        product: u64,
        product_polynomial: String,
        product_inverse: u64,
        product_inverse_polynomial: String,
        target: u64,
        target_polynomial: String,
        text: String,
    },
    /// A winning position with no playable winning move (the needed
    /// consolidation does not fit a machine word).
    Unavailable { text: String },
}

impl Explanation {
    pub fn text(&self) -> &str {
        match self {
            Explanation::Losing { text }
            | Explanation::InverseConstruction { text, .. }
            | Explanation::DirectReduction { text, .. }
            | Explanation::Consolidation { text, .. }
            | Explanation::FieldInverse { text, .. }
            | Explanation::Unavailable { text } => text,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Hint {
    #[serde(rename = "move")]
    pub mv: Option<MoveAction>,
    pub explanation: Explanation,
}

fn losing() -> Hint {
    Hint {
        mv: None,
        explanation: Explanation::Losing {
            text: LOSING_TEXT.to_string(),
        },
    }
}

pub fn hint_numeric(pos: &NumPosition, policy: ConsolidationPolicy) -> Hint {
    if pos.classify() == Outcome::PPosition {
        return losing();
    }
    let m = pos.modulus().get();
    if let Some((mv, coproduct, inverse)) = pos.inverse_construction() {
        let MoveAction::Reduce { heap_index, amount } = mv else {
            unreachable!("construction only reduces")
        };
        let heap = pos.heaps()[heap_index];
        let target = heap - amount;
        let text = format!(
            "the other heaps multiply to {} (mod {m}); its inverse is {} (mod {m}), \
             so heap {heap} becomes {target} ≡ {} by subtracting {amount}",
            coproduct.value(),
            inverse.value(),
            inverse.value(),
        );
        return Hint {
            mv: Some(mv),
            explanation: Explanation::InverseConstruction {
                heap_index,
                heap,
                coproduct: coproduct.value(),
                inverse: inverse.value(),
                target,
                modulus: m,
                text,
            },
        };
    }
    let Some(mv) = pos.optimal_move(policy) else {
        return Hint {
            mv: None,
            explanation: Explanation::Unavailable {
                text: "winning, but the consolidated heap does not fit a machine word".into(),
            },
        };
    };
    let explanation = match mv {
        MoveAction::Reduce { heap_index, amount } => {
            let heap = pos.heaps()[heap_index];
            let target = heap - amount;
            Explanation::DirectReduction {
                heap_index,
                heap,
                target,
                text: format!(
                    "no heap exceeds {m}; reducing heap {heap} to {target} brings the product to 1 (mod {m})"
                ),
            }
        }
        MoveAction::ConsolidateThenReduce { amount } => {
            let consolidated = pos.integer_product().expect("move was generated");
            let target = consolidated - amount;
            Explanation::Consolidation {
                consolidated,
                amount,
                target,
                text: format!(
                    "stranded: no reduction reaches product 1, so merge the heaps into {consolidated} \
                     (same residue {} mod {m}) and subtract {amount} to leave {target} ≡ 1",
                    consolidated % m
                ),
            }
        }
    };
    Hint {
        mv: Some(mv),
        explanation,
    }
}

pub fn hint_poly(pos: &PolyPosition, policy: ConsolidationPolicy) -> Hint {
    if pos.classify() == Outcome::PPosition {
        return losing();
    }
    let product = pos.field_product();
    let inverse = product.inv().expect("winning product is nonzero");
    match pos.optimal_move(policy) {
        Some(mv @ MoveAction::Reduce { heap_index, amount }) => {
            let heap = pos.heaps()[heap_index];
            let target = heap - amount;
            let target_polynomial = pos.field().element(target).expect("canonical").polynomial();
            let text = format!(
                "P = {} has inverse {}; heap {heap} times P^-1 is {target_polynomial} = {target}, \
                 which is smaller, so move {heap} -> {target}",
                product.polynomial(),
                inverse.polynomial(),
            );
            Hint {
                mv: Some(mv),
                explanation: Explanation::FieldInverse {
                    heap_index,
                    heap,
                    product: product.rep(),
                    product_polynomial: product.polynomial(),
                    product_inverse: inverse.rep(),
                    product_inverse_polynomial: inverse.polynomial(),
                    target,
                    target_polynomial,
                    text,
                },
            }
        }
        Some(mv @ MoveAction::ConsolidateThenReduce { amount }) => {
            let consolidated = pos.consolidated_heap();
            Hint {
                mv: Some(mv),
                explanation: Explanation::Consolidation {
                    consolidated,
                    amount,
                    target: consolidated - amount,
                    text: format!(
                        "stranded: every target s(h)·P^-1 is at least its heap, so merge into \
                         C(P) = {consolidated} ({}) and reduce to 1",
                        product.polynomial()
                    ),
                },
            }
        }
        None => Hint {
            mv: None,
            explanation: Explanation::Unavailable {
                text: "no winning move is available under this policy".into(),
            },
        },
    }
}
