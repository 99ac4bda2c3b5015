//! Parsing for the position flags shared by several subcommands.

use mum_core::{FieldSpec, Modulus, Variant};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ArgError {
    #[error("exactly one of --mod or --field is required")]
    VariantMissing,
    #[error("invalid heap list {0:?}: expected comma-separated integers")]
    Heaps(String),
    #[error("invalid field {0:?}: expected p,n,bits (e.g. 2,3,0b1011) or \"aes\"")]
    FieldSyntax(String),
    #[error(transparent)]
    Core(#[from] mum_core::Error),
}

/// Parses `6,6,6`. Signs are kept so the core can report non-positive heaps.
pub fn parse_heaps(s: &str) -> Result<Vec<i64>, ArgError> {
    s.split(',')
        .map(|t| t.trim().parse::<i64>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|_| ArgError::Heaps(s.to_string()))
}

/// Decimal, `0x` hex or `0b` binary.
pub fn parse_int(s: &str) -> Option<u64> {
    let s = s.trim().replace('_', "");
    if let Some(h) = s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        u64::from_str_radix(h, 16).ok()
    } else if let Some(b) = s.strip_prefix("0b").or_else(|| s.strip_prefix("0B")) {
        u64::from_str_radix(b, 2).ok()
    } else {
        s.parse().ok()
    }
}

/// `p,n,bits` where `bits` packs the irreducible polynomial's base-p
/// coefficients; `aes` is shorthand for `2,8,0x11b`.
pub fn parse_field(s: &str) -> Result<FieldSpec, ArgError> {
    if s.trim().eq_ignore_ascii_case("aes") {
        return Ok(FieldSpec::aes());
    }
    let parts: Vec<&str> = s.split(',').collect();
    let [p, n, bits] = parts[..] else {
        return Err(ArgError::FieldSyntax(s.to_string()));
    };
    let syntax = || ArgError::FieldSyntax(s.to_string());
    let p = parse_int(p).ok_or_else(syntax)?;
    let n = parse_int(n).and_then(|n| u32::try_from(n).ok()).ok_or_else(syntax)?;
    let bits = parse_int(bits).ok_or_else(syntax)?;
    Ok(FieldSpec::from_packed(p, n, bits)?)
}

pub fn parse_variant(modulus: Option<u64>, field: Option<&str>) -> Result<Variant, ArgError> {
    match (modulus, field) {
        (Some(m), None) => Ok(Variant::Numeric {
            modulus: Modulus::new(m)?,
        }),
        (None, Some(f)) => Ok(Variant::Poly {
            field: parse_field(f)?,
        }),
        _ => Err(ArgError::VariantMissing),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integers_in_three_radixes() {
        assert_eq!(parse_int("0b1011"), Some(11));
        assert_eq!(parse_int("0x11b"), Some(283));
        assert_eq!(parse_int("11"), Some(11));
        assert_eq!(parse_int("0b12"), None);
    }

    #[test]
    fn fields() {
        let f = parse_field("2,3,0b1011").unwrap();
        assert_eq!(f.irreducible_coeffs(), vec![1, 1, 0, 1]);
        assert_eq!(parse_field("2,8,0x11b").unwrap(), FieldSpec::aes());
        assert_eq!(parse_field("aes").unwrap(), FieldSpec::aes());
        assert!(matches!(parse_field("2,3"), Err(ArgError::FieldSyntax(_))));
        assert!(matches!(
            parse_field("2,2,0b101"),
            Err(ArgError::Core(mum_core::Error::NotIrreducible))
        ));
    }

    #[test]
    fn heaps() {
        assert_eq!(parse_heaps("6, 6,6").unwrap(), vec![6, 6, 6]);
        assert_eq!(parse_heaps("-1").unwrap(), vec![-1]);
        assert!(parse_heaps("6,,6").is_err());
    }

    #[test]
    fn variant_requires_exactly_one_source() {
        assert_eq!(parse_variant(None, None), Err(ArgError::VariantMissing));
        assert_eq!(parse_variant(Some(5), Some("aes")), Err(ArgError::VariantMissing));
        assert!(parse_variant(Some(1), None).is_err());
    }
}
