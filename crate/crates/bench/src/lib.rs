//! Fixtures shared by the benchmarks in `benches/`.

use mum_core::{FieldSpec, Modulus, NumPosition, PolyPosition};

/// Every position of one to three heaps with values in `1..=max` coprime to `m`.
pub fn numeric_positions(m: u64, max: u64) -> Vec<NumPosition> {
    let modulus = Modulus::new(m).expect("modulus at least 2");
    let values: Vec<u64> = (1..=max).filter(|&h| gcd(h, m) == 1).collect();
    let mut out = Vec::new();
    for (i, &a) in values.iter().enumerate() {
        out.push(vec![a]);
        for (j, &b) in values.iter().enumerate().skip(i) {
            out.push(vec![a, b]);
            for &c in &values[j..] {
                out.push(vec![a, b, c]);
            }
        }
    }
    out.iter()
        .map(|h| NumPosition::new(modulus, h).expect("coprime heaps"))
        .collect()
}

/// Winning positions over the AES field, spread across the element range.
pub fn aes_positions(count: u64) -> Vec<PolyPosition> {
    let f = FieldSpec::aes();
    (0..count)
        .map(|i| {
            let heaps = [1 + (i * 37) % 255, 1 + (i * 101 + 7) % 255, 1 + (i * 13 + 91) % 255];
            PolyPosition::new(f.clone(), &heaps).expect("canonical heaps")
        })
        .filter(|p| !p.field_product().is_one())
        .collect()
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}
