//! Text renderings for the one-shot subcommands.

use anyhow::{bail, Context, Result};
use mum_core::grundy::Solver;
use mum_core::poly::PolySolver;
use mum_core::tables::{emit_inverse_table, emit_mex_table, emit_mum15_table, Table};
use mum_core::{AnalysisView, ConsolidationPolicy, Error, Modulus, Outcome, Position};

use crate::args::{parse_field, parse_heaps, parse_variant};
use crate::cli::{Format, MexPart, PositionArgs, TableArgs, TableKind};

pub fn position(args: &PositionArgs) -> Result<Position> {
    let variant = parse_variant(args.modulus, args.field.as_deref())?;
    let heaps = parse_heaps(&args.heaps)?;
    Ok(variant.position_signed(&heaps)?)
}

fn render(rows: &[(&str, String)], format: Format) -> String {
    match format {
        Format::Text => {
            let width = rows.iter().map(|(k, _)| k.chars().count()).max().unwrap_or(0);
            rows.iter()
                .map(|(k, v)| format!("{k:<width$}  {v}\n"))
                .collect()
        }
        Format::Csv => {
            let mut t = Table::new("", &["field", "value"]);
            for (k, v) in rows {
                t.push([k.to_string(), v.clone()]);
            }
            t.to_csv()
        }
    }
}

fn yes_no(b: bool) -> String {
    if b { "yes" } else { "no" }.to_string()
}

fn outcome_line(pos: &Position, a: &AnalysisView) -> String {
    let word = a.outcome.describe();
    match (pos, a.losing) {
        (Position::Numeric(p), true) => format!("{word} (product ≡ 1 mod {})", p.modulus()),
        (Position::Numeric(p), false) => {
            format!("{word} (product ≡ {} mod {}, not 1)", a.product, p.modulus())
        }
        (Position::Poly(_), true) => format!("{word} (field product = 1)"),
        (Position::Poly(_), false) => format!("{word} (field product ≠ 1)"),
    }
}

fn product_line(pos: &Position, a: &AnalysisView) -> String {
    match pos {
        Position::Numeric(p) => match p.integer_product() {
            Ok(n) => format!("{n} ≡ {} (mod {})", a.product, p.modulus()),
            Err(_) => format!("{} (mod {})", a.product, p.modulus()),
        },
        Position::Poly(_) => format!(
            "{} ({})",
            a.product,
            a.product_polynomial.as_deref().unwrap_or_default()
        ),
    }
}

fn hint_line(pos: &Position, policy: ConsolidationPolicy) -> String {
    let hint = pos.hint(policy);
    match hint.mv {
        Some(mv) => format!("{mv}: {}", hint.explanation.text()),
        None => format!("none: {}", hint.explanation.text()),
    }
}

pub fn analyze(args: &PositionArgs, format: Format) -> Result<String> {
    let pos = position(args)?;
    let a = pos.analyze(args.policy);
    let mut rows = vec![("position", pos.to_string())];
    if let Some(polys) = &a.heap_polynomials {
        rows.push(("heap polynomials", polys.join(", ")));
    }
    rows.push(("product", product_line(&pos, &a)));
    if let Some(sv) = &a.state_vector {
        let values: Vec<String> = sv.iter().map(|c| c.value.to_string()).collect();
        let moduli: Vec<String> = sv.iter().map(|c| c.modulus.to_string()).collect();
        rows.push((
            "state vector",
            format!("({}) over moduli ({})", values.join(","), moduli.join(",")),
        ));
    }
    rows.push(("outcome", outcome_line(&pos, &a)));
    rows.push(("stranded", yes_no(a.stranded)));
    if let Position::Numeric(_) = pos {
        let mumber = match &a.mumber {
            Some(m) => format!("{} ({})", m.value, m.policy),
            None => "not computed (search too large or options saturated)".into(),
        };
        rows.push(("mumber", mumber));
    }
    rows.push(("hint", hint_line(&pos, args.policy)));
    Ok(render(&rows, format))
}

fn outcome_word(o: Outcome) -> &'static str {
    match o {
        Outcome::PPosition => "P (losing for the player to move)",
        Outcome::NPosition => "N (winning for the player to move)",
    }
}

fn budget_context(e: Error) -> anyhow::Error {
    match e {
        Error::SearchBudgetExceeded(n) => {
            anyhow::anyhow!("SearchBudgetExceeded: {e}; raise --budget above {n} to search further")
        }
        e => e.into(),
    }
}

pub fn solve(args: &PositionArgs, budget: usize) -> Result<String> {
    let pos = position(args)?;
    let policy = args.policy;
    let by_product = pos.classify();
    let brute = match &pos {
        Position::Numeric(p) => Solver::with_budget(budget).outcome(p, policy),
        Position::Poly(p) => PolySolver::with_budget(budget).outcome(p, policy),
    }
    .map_err(budget_context)?;
    let a = pos.analyze_with_budget(policy, 0);
    let moves = pos.legal_moves(policy).len();
    let mut rows = vec![
        ("position", pos.to_string()),
        ("policy", policy.to_string()),
        (
            "legal moves",
            if moves == 0 { "none".to_string() } else { moves.to_string() },
        ),
        ("brute force", outcome_word(brute).to_string()),
        ("product", format!("{} -> {}", product_line(&pos, &a), outcome_word(by_product))),
        ("agreement", yes_no(brute == by_product)),
    ];
    if let Position::Numeric(p) = &pos {
        match Solver::with_budget(budget).mumber_mex(p, policy) {
            Ok(mex) => {
                rows.push(("mumber (mex)", mex.value().to_string()));
                if mex != p.product_mod() {
                    rows.push((
                        "note",
                        format!(
                            "recursive mex {} differs from the product {}; under {policy} \
                             non-stranded positions lack consolidation options, so the mex \
                             recursion and the product can disagree while P/N outcomes still match",
                            mex.value(),
                            p.product_mod().value()
                        ),
                    ));
                }
            }
            Err(Error::SetSaturated(m)) => rows.push((
                "mumber (mex)",
                format!("undefined: options already take every residue mod {m}"),
            )),
            Err(e) => return Err(budget_context(e)),
        }
    }
    rows.push(("hint", hint_line(&pos, policy)));
    if brute != by_product {
        bail!("brute-force outcome disagrees with the product rule for {pos}");
    }
    Ok(render(&rows, Format::Text))
}

fn emit(t: &Table, format: Format) -> String {
    match format {
        Format::Text => t.to_text(),
        Format::Csv => t.to_csv(),
    }
}

pub fn table(args: &TableArgs) -> Result<String> {
    Ok(match args.kind {
        TableKind::Mex => {
            let m = Modulus::new(args.modulus)?;
            let t = emit_mex_table(m, args.max)?;
            match args.part {
                MexPart::Single => emit(&t.single_heap, args.format),
                MexPart::States => emit(&t.states, args.format),
                MexPart::All => match args.format {
                    Format::Text => format!("{}\n{}", t.single_heap.to_text(), t.states.to_text()),
                    Format::Csv => format!("{}\n{}", t.single_heap.to_csv(), t.states.to_csv()),
                },
            }
        }
        TableKind::Inverses => emit(&emit_inverse_table(&parse_field(&args.field)?), args.format),
        TableKind::Mum15 => {
            let values: Vec<u64> = parse_heaps(&args.values)?
                .into_iter()
                .map(u64::try_from)
                .collect::<Result<_, _>>()
                .context("heap values must be positive")?;
            emit(&emit_mum15_table(&values)?, args.format)
        }
    })
}
