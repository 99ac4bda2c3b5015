//! A numeric or polynomial position behind one interface, plus the
//! analysis summary shown to players.

use serde::{Deserialize, Serialize};

use crate::crt::state_vector;
use crate::error::{Error, Result};
use crate::game::{ConsolidationPolicy, MoveAction, NumPosition, Outcome};
use crate::grundy::Solver;
use crate::hint::{hint_numeric, hint_poly, Hint};
use crate::modular::Modulus;
use crate::poly::{FieldSpec, PolyPosition};

/// Default cap on positions explored when an analysis computes a mumber.
pub const ANALYSIS_BUDGET: usize = 200_000;

/// Which game is being played.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "camelCase")]
pub enum Variant {
    Numeric { modulus: Modulus },
    Poly { field: FieldSpec },
}

impl Variant {
    pub fn position(&self, heaps: &[u64]) -> Result<Position> {
        match self {
            Variant::Numeric { modulus } => NumPosition::new(*modulus, heaps).map(Position::Numeric),
            Variant::Poly { field } => PolyPosition::new(field.clone(), heaps).map(Position::Poly),
        }
    }

    pub fn position_signed(&self, heaps: &[i64]) -> Result<Position> {
        match self {
            Variant::Numeric { modulus } => {
                NumPosition::from_signed(*modulus, heaps).map(Position::Numeric)
            }
            Variant::Poly { field } => {
                PolyPosition::from_signed(field.clone(), heaps).map(Position::Poly)
            }
        }
    }

    pub fn describe(&self) -> String {
        match self {
            Variant::Numeric { modulus } => format!("mod {modulus}"),
            Variant::Poly { field } => field.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Position {
    Numeric(NumPosition),
    Poly(PolyPosition),
}

impl Position {
    pub fn heaps(&self) -> &[u64] {
        match self {
            Position::Numeric(p) => p.heaps(),
            Position::Poly(p) => p.heaps(),
        }
    }

    pub fn variant(&self) -> Variant {
        match self {
            Position::Numeric(p) => Variant::Numeric {
                modulus: p.modulus(),
            },
            Position::Poly(p) => Variant::Poly {
                field: p.field().clone(),
            },
        }
    }

    pub fn classify(&self) -> Outcome {
        match self {
            Position::Numeric(p) => p.classify(),
            Position::Poly(p) => p.classify(),
        }
    }

    pub fn is_terminal(&self) -> bool {
        match self {
            Position::Numeric(p) => p.is_terminal(),
            Position::Poly(p) => p.is_terminal(),
        }
    }

    pub fn is_stranded(&self) -> bool {
        match self {
            Position::Numeric(p) => p.is_stranded(),
            Position::Poly(p) => p.is_stranded(),
        }
    }

    pub fn legal_moves(&self, policy: ConsolidationPolicy) -> Vec<MoveAction> {
        match self {
            Position::Numeric(p) => p.legal_moves(policy),
            Position::Poly(p) => p.legal_moves(policy),
        }
    }

    pub fn apply_move(&self, mv: MoveAction, policy: ConsolidationPolicy) -> Result<Position> {
        match self {
            Position::Numeric(p) => p.apply_move(mv, policy).map(Position::Numeric),
            Position::Poly(p) => p.apply_move(mv, policy).map(Position::Poly),
        }
    }

    pub fn optimal_move(&self, policy: ConsolidationPolicy) -> Option<MoveAction> {
        match self {
            Position::Numeric(p) => p.optimal_move(policy),
            Position::Poly(p) => p.optimal_move(policy),
        }
    }

    /// The optimal move, or from a losing position the first legal move
    /// (lowest heap index, smallest amount).
    pub fn engine_move(&self, policy: ConsolidationPolicy) -> Option<MoveAction> {
        self.optimal_move(policy)
            .or_else(|| self.legal_moves(policy).into_iter().next())
    }

    pub fn hint(&self, policy: ConsolidationPolicy) -> Hint {
        match self {
            Position::Numeric(p) => hint_numeric(p, policy),
            Position::Poly(p) => hint_poly(p, policy),
        }
    }

    pub fn analyze(&self, policy: ConsolidationPolicy) -> AnalysisView {
        self.analyze_with_budget(policy, ANALYSIS_BUDGET)
    }

    pub fn analyze_with_budget(&self, policy: ConsolidationPolicy, budget: usize) -> AnalysisView {
        let outcome = self.classify();
        let (product, product_polynomial, modulus, state_vector, mumber) = match self {
            Position::Numeric(p) => {
                let v = state_vector(p);
                let components = (v.factors().len() > 1).then(|| {
                    v.factors()
                        .iter()
                        .zip(v.components())
                        .map(|(f, c)| StateComponent {
                            modulus: f.value,
                            value: c.value(),
                        })
                        .collect()
                });
                let mumber = match Solver::with_budget(budget).mumber_mex(p, policy) {
                    Ok(r) => Some(MumberView {
                        value: r.value(),
                        policy,
                    }),
                    Err(Error::SearchBudgetExceeded(_)) | Err(Error::SetSaturated(_)) => None,
                    Err(e) => unreachable!("mumber recursion failed: {e}"),
                };
                (p.product_mod().value(), None, Some(p.modulus().get()), components, mumber)
            }
            Position::Poly(p) => {
                let product = p.field_product();
                (product.rep(), Some(product.polynomial()), None, None, None)
            }
        };
        AnalysisView {
            heaps: self.heaps().to_vec(),
            heap_polynomials: match self {
                Position::Poly(p) => Some(
                    p.heaps()
                        .iter()
                        .map(|&h| p.field().element(h).expect("canonical").polynomial())
                        .collect(),
                ),
                Position::Numeric(_) => None,
            },
            product,
            product_polynomial,
            modulus,
            outcome,
            losing: outcome.is_losing(),
            terminal: self.is_terminal(),
            stranded: self.is_stranded(),
            state_vector,
            mumber,
            hint_available: self.optimal_move(policy).is_some(),
        }
    }
}

impl std::fmt::Display for Position {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Position::Numeric(p) => p.fmt(f),
            Position::Poly(p) => p.fmt(f),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StateComponent {
    pub modulus: u64,
    pub value: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MumberView {
    pub value: u64,
    pub policy: ConsolidationPolicy,
}

/// Display quantities for one position.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct AnalysisView {
    pub heaps: Vec<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub heap_polynomials: Option<Vec<String>>,
    /// Product residue (numeric) or canonical rep of the field product.
    pub product: u64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub product_polynomial: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub modulus: Option<u64>,
    pub outcome: Outcome,
    pub losing: bool,
    pub terminal: bool,
    pub stranded: bool,
    /// Per-factor product residues, composite moduli only.
    pub state_vector: Option<Vec<StateComponent>>,
    /// Recursive mex under the active policy; absent for polynomial games
    /// or when the search budget runs out.
    pub mumber: Option<MumberView>,
    pub hint_available: bool,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numeric_analysis() {
        let v = Variant::Numeric {
            modulus: Modulus::new(15).unwrap(),
        };
        let a = v.position(&[16, 16, 16]).unwrap().analyze(ConsolidationPolicy::StrandedOnly);
        assert_eq!(a.product, 1);
        assert!(a.losing);
        assert!(!a.hint_available);
        let sv: Vec<_> = a.state_vector.unwrap().iter().map(|c| (c.modulus, c.value)).collect();
        assert_eq!(sv, vec![(3, 1), (5, 1)]);
        assert_eq!(a.mumber.unwrap().value, 1);
    }

    #[test]
    fn prime_modulus_has_no_state_vector() {
        let v = Variant::Numeric {
            modulus: Modulus::new(5).unwrap(),
        };
        let a = v.position(&[2, 2, 2]).unwrap().analyze(ConsolidationPolicy::StrandedOnly);
        assert!(a.state_vector.is_none());
        assert!(a.stranded);
        assert_eq!(a.outcome, Outcome::NPosition);
    }

    #[test]
    fn poly_analysis() {
        let v = Variant::Poly {
            field: FieldSpec::from_packed(2, 3, 0b1011).unwrap(),
        };
        let a = v.position(&[7, 6]).unwrap().analyze(ConsolidationPolicy::StrandedOnly);
        assert_eq!(a.heap_polynomials.unwrap(), vec!["x^2+x", "x^2+x+1"]);
        assert!(a.mumber.is_none());
        let json = serde_json::to_value(v).unwrap();
        assert_eq!(json["kind"], "poly");
        assert_eq!(json["field"]["irreducible"], serde_json::json!([1, 1, 0, 1]));
    }

    #[test]
    fn engine_falls_back_to_first_legal_move() {
        let v = Variant::Numeric {
            modulus: Modulus::new(5).unwrap(),
        };
        let p = v.position(&[6, 6, 6]).unwrap();
        assert_eq!(
            p.engine_move(ConsolidationPolicy::StrandedOnly),
            Some(MoveAction::Reduce { heap_index: 0, amount: 2 })
        );
        assert_eq!(v.position(&[1]).unwrap().engine_move(ConsolidationPolicy::Always), None);
    }
}
