//! Reference tables: single-heap Grundy values, recursive mex over sample
//! states, CRT decompositions and field inverse tables.

use serde::Serialize;

use crate::crt::state_vector;
use crate::error::{Error, Result};
use crate::game::{ConsolidationPolicy, NumPosition};
use crate::grundy::{grundy_single_heap_table, Solver};
use crate::modular::{factor_prime_powers, Modulus};
use crate::poly::{format_polynomial, FieldSpec};

/// Rectangular string table renderable as aligned text or CSV.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Table {
    pub title: String,
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(title: impl Into<String>, headers: &[&str]) -> Self {
        Self {
            title: title.into(),
            headers: headers.iter().map(|h| h.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push<I, S>(&mut self, row: I)
    where
        I: IntoIterator<Item = S>,
        S: ToString,
    {
        let row: Vec<String> = row.into_iter().map(|c| c.to_string()).collect();
        debug_assert_eq!(row.len(), self.headers.len());
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.headers.iter().position(|h| h == name)
    }

    /// Title line, then the header, a rule and left-aligned columns
    /// separated by two spaces. Trailing spaces are trimmed.
    pub fn to_text(&self) -> String {
        let width = |s: &str| s.chars().count();
        let mut widths: Vec<usize> = self.headers.iter().map(|h| width(h)).collect();
        for row in &self.rows {
            for (w, cell) in widths.iter_mut().zip(row) {
                *w = (*w).max(width(cell));
            }
        }
        let line = |cells: &[String]| {
            let mut out = String::new();
            for (i, (cell, w)) in cells.iter().zip(&widths).enumerate() {
                if i > 0 {
                    out.push_str("  ");
                }
                out.push_str(cell);
                out.extend(std::iter::repeat_n(' ', w - width(cell)));
            }
            out.trim_end().to_string()
        };
        let mut out = String::new();
        out.push_str(&self.title);
        out.push('\n');
        out.push_str(&line(&self.headers));
        out.push('\n');
        let rule: Vec<String> = widths.iter().map(|&w| "-".repeat(w)).collect();
        out.push_str(&line(&rule));
        out.push('\n');
        for row in &self.rows {
            out.push_str(&line(row));
            out.push('\n');
        }
        out
    }

    pub fn to_csv(&self) -> String {
        let mut writer = csv::Writer::from_writer(Vec::new());
        writer.write_record(&self.headers).expect("in-memory write");
        for row in &self.rows {
            writer.write_record(row).expect("in-memory write");
        }
        String::from_utf8(writer.into_inner().expect("in-memory flush")).expect("utf-8 cells")
    }
}

/// Residue classes in the sample-state table list members up to this many
/// periods.
const CLASS_PERIODS: u64 = 12;

/// Grundy tables for modulus `p`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MexTable {
    /// `h`, successor Grundy set, `G(h)` for `h = 1..=h_max`.
    pub single_heap: Table,
    /// Residue-class rows, then three-heap sample states.
    pub states: Table,
}

fn successor_set(h: u64, p: u64, g: &[u64]) -> String {
    let lo = h.saturating_sub(p - 1).max(1);
    if lo >= h {
        return "∅".to_string();
    }
    let parts: Vec<String> = (lo..h)
        .map(|k| format!("G({k})={}", g[(k - 1) as usize]))
        .collect();
    format!("{{{}}}", parts.join(", "))
}

/// Builds both Grundy tables. The recursive-mex column of the sample
/// states is the mumber under [`ConsolidationPolicy::Always`], shifted to
/// identity 0 like the G-value column.
pub fn emit_mex_table(p: Modulus, h_max: u64) -> Result<MexTable> {
    if !p.is_prime() {
        return Err(Error::NotPrime(p.get()));
    }
    let pv = p.get();
    let shift = |residue: u64| (residue + pv - 1) % pv;

    let g = grundy_single_heap_table(h_max.max(1), p);
    let mut single_heap = Table::new(
        format!("Recursive Grundy values G(h), p = {pv}"),
        &["h", "Successor Grundy Set", "G(h)"],
    );
    for h in 1..=h_max {
        single_heap.push([
            h.to_string(),
            successor_set(h, pv, &g),
            g[(h - 1) as usize].to_string(),
        ]);
    }

    let mod_header = format!("Product Mod {pv}");
    let mut states = Table::new(
        format!("Recursive mex for sample states, p = {pv}"),
        &[
            "Heap 1",
            "Heap 2",
            "Heap 3",
            "Single Heap or Product",
            &mod_header,
            "G-value",
            "Recursive Mex",
        ],
    );
    for residue in 0..pv {
        let top = CLASS_PERIODS * pv + residue;
        let first = if residue == 0 { pv } else { residue };
        let members: Vec<String> = (first..=top).step_by(pv as usize).map(|h| h.to_string()).collect();
        let mex = *grundy_single_heap_table(top, p).last().expect("top >= 1");
        states.push([
            format!("{{{}}}", members.join(",")),
            String::new(),
            String::new(),
            top.to_string(),
            residue.to_string(),
            shift(residue).to_string(),
            mex.to_string(),
        ]);
    }

    let big = pv + 1;
    let small: Vec<u64> = (1..pv).chain([big]).collect();
    let mut solver = Solver::new();
    for (i, &a) in small.iter().enumerate() {
        for &b in &small[i..] {
            let pos = NumPosition::new(p, &[a, b, big])?;
            let product = a * b * big;
            let residue = product % pv;
            let mumber = solver.mumber_mex(&pos, ConsolidationPolicy::Always)?;
            states.push([
                a.to_string(),
                b.to_string(),
                big.to_string(),
                product.to_string(),
                residue.to_string(),
                shift(residue).to_string(),
                shift(mumber.value()).to_string(),
            ]);
        }
    }
    Ok(MexTable {
        single_heap,
        states,
    })
}

/// Every non-decreasing `size`-multiset of `heap_values` with per-factor
/// residues, per-factor products and status (`L` iff all products are 1).
pub fn emit_crt_table(modulus: Modulus, heap_values: &[u64], size: usize) -> Result<Table> {
    let mut values = heap_values.to_vec();
    values.sort_unstable();
    values.dedup();
    for &h in &values {
        NumPosition::new(modulus, &[h])?;
    }
    let factors = factor_prime_powers(modulus);
    let mut headers = Vec::new();
    for i in 1..=size {
        headers.push(format!("H{i}"));
        headers.extend(factors.iter().map(|f| format!("M{}", f.value)));
    }
    headers.extend(factors.iter().map(|f| format!("M{} Prod", f.value)));
    headers.push("Status".to_string());
    let header_refs: Vec<&str> = headers.iter().map(String::as_str).collect();
    let mut table = Table::new(format!("Decomposition of MuM_{modulus} states"), &header_refs);

    let mut combo = vec![0usize; size];
    if values.is_empty() || size == 0 {
        return Ok(table);
    }
    loop {
        let heaps: Vec<u64> = combo.iter().map(|&i| values[i]).collect();
        let pos = NumPosition::new(modulus, &heaps)?;
        let vector = state_vector(&pos);
        let mut row = Vec::new();
        for &h in &heaps {
            row.push(h.to_string());
            row.extend(factors.iter().map(|f| (h % f.value).to_string()));
        }
        row.extend(vector.values().iter().map(u64::to_string));
        let losing = crate::crt::is_identity_vector(&vector);
        row.push(if losing { "L" } else { "W" }.to_string());
        table.push(row);

        // next non-decreasing index tuple
        let Some(pos) = (0..size).rev().find(|&i| combo[i] + 1 < values.len()) else {
            break;
        };
        let next = combo[pos] + 1;
        for slot in &mut combo[pos..] {
            *slot = next;
        }
    }
    Ok(table)
}

pub fn emit_mum15_table(heap_values: &[u64]) -> Result<Table> {
    emit_crt_table(Modulus::new(15).expect("15 >= 2"), heap_values, 3)
}

/// Heap values used for the modulus-15 decomposition table.
pub const MUM15_HEAPS: [u64; 4] = [11, 13, 14, 16];

/// Inverse of every nonzero element. When `x` generates the multiplicative
/// group, rows follow powers of `x` and the power columns are included;
/// otherwise rows follow integer reps without power columns.
pub fn emit_inverse_table(field: &FieldSpec) -> Table {
    let p = field.p();
    let order = field.order();
    let x = field.generator_candidate();
    let generates = x.multiplicative_order() == Some(order - 1);
    let title = format!(
        "Multiplicative inverses in GF({p}^{}) with I(x) = {}",
        field.n(),
        field.irreducible_string()
    );
    let power = |k: u64| {
        if k == 0 {
            format!("x^0 or x^{}", order - 1)
        } else {
            format!("x^{k}")
        }
    };
    if generates {
        let mut table = Table::new(
            title,
            &[
                "Polynomial s",
                "Integer Rep.",
                "Power of x",
                "Inverse (Polynomial)",
                "Inverse (Integer)",
                "Inverse (Power)",
            ],
        );
        let mut acc = field.one();
        for k in 0..order - 1 {
            let inv = acc.inv().expect("powers of a generator are nonzero");
            let inv_power = (order - 1 - k) % (order - 1);
            table.push([
                acc.polynomial(),
                acc.rep().to_string(),
                power(k),
                inv.polynomial(),
                inv.rep().to_string(),
                power(inv_power),
            ]);
            acc = acc.mul(&x).expect("same field");
        }
        table
    } else {
        let mut table = Table::new(
            title,
            &[
                "Polynomial s",
                "Integer Rep.",
                "Inverse (Polynomial)",
                "Inverse (Integer)",
            ],
        );
        for rep in 1..order {
            let e = field.element(rep).expect("rep < order");
            let inv = e.inv().expect("nonzero");
            table.push([
                format_polynomial(rep, p),
                rep.to_string(),
                inv.polynomial(),
                inv.rep().to_string(),
            ]);
        }
        table
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_heap_rows() {
        let t = emit_mex_table(Modulus::new(5).unwrap(), 7).unwrap();
        let g: Vec<&str> = t.single_heap.rows.iter().map(|r| r[2].as_str()).collect();
        assert_eq!(g, ["0", "1", "2", "3", "4", "0", "1"]);
        assert_eq!(t.single_heap.rows[0][1], "∅");
        assert_eq!(t.single_heap.rows[5][1], "{G(2)=1, G(3)=2, G(4)=3, G(5)=4}");
    }

    #[test]
    fn sample_state_rows() {
        let t = emit_mex_table(Modulus::new(5).unwrap(), 7).unwrap();
        assert_eq!(t.states.rows.len(), 20);
        let find = |a: &str, b: &str| {
            t.states
                .rows
                .iter()
                .find(|r| r[0] == a && r[1] == b)
                .unwrap()
                .clone()
        };
        assert_eq!(find("1", "2")[3..], ["12", "2", "1", "1"]);
        assert_eq!(find("4", "4")[3..], ["96", "1", "0", "0"]);
        assert_eq!(t.states.rows[0][0], "{5,10,15,20,25,30,35,40,45,50,55,60}");
        assert_eq!(t.states.rows[0][3..], ["60", "0", "4", "4"]);
    }

    #[test]
    fn mex_table_needs_prime() {
        assert_eq!(
            emit_mex_table(Modulus::new(6).unwrap(), 3),
            Err(Error::NotPrime(6))
        );
    }

    #[test]
    fn crt_table_examples() {
        let t = emit_mum15_table(&MUM15_HEAPS).unwrap();
        assert_eq!(t.rows.len(), 20);
        let row = t
            .rows
            .iter()
            .find(|r| r[0] == "11" && r[3] == "13" && r[6] == "14")
            .unwrap();
        assert_eq!(row[9..], ["1", "2", "W"]);
        let t = emit_mum15_table(&[16]).unwrap();
        assert_eq!(t.rows.len(), 1);
        assert_eq!(t.rows[0].last().unwrap(), "L");
        assert!(emit_mum15_table(&[10]).is_err());
    }

    #[test]
    fn inverse_table_without_generator() {
        // x has order 4 in GF(9) = F_3[x]/(x^2+1), so power columns go away.
        let f = FieldSpec::new(3, 2, &[1, 0, 1]).unwrap();
        let t = emit_inverse_table(&f);
        assert_eq!(t.headers.len(), 4);
        assert_eq!(t.rows.len(), 8);
    }

    #[test]
    fn renderings() {
        let t = emit_mum15_table(&[16]).unwrap();
        assert_eq!(
            t.to_csv(),
            "H1,M3,M5,H2,M3,M5,H3,M3,M5,M3 Prod,M5 Prod,Status\n16,1,1,16,1,1,16,1,1,1,1,L\n"
        );
        let text = t.to_text();
        assert!(text.lines().nth(1).unwrap().starts_with("H1  M3  M5"));
        let t = emit_mex_table(Modulus::new(5).unwrap(), 2).unwrap();
        assert!(t.states.to_csv().contains("\"{5,10,15,20,25,30,35,40,45,50,55,60}\",,,60,0,4,4"));
    }
}
