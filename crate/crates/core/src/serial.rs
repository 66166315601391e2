//! Canonical JSON serialization of algebras and reports.
//!
//! Schema (bit-exact):
//! `{"field":{"char":p}, "dim":n, "basis":[...], "parity":[...],
//!   "degree":[...](optional), "table":[[i,j,k,"coeff"],...]}`
//! with 0-based indices, table entries sorted lexicographically by (i,j,k),
//! and coefficients as canonical scalar strings. Deserializing and
//! re-serializing any canonical file is byte-identical.

use serde::{Deserialize, Serialize};

use crate::algebra::{Parity, Superalgebra};
use crate::error::Error;
use crate::field::FieldSpec;

#[derive(Serialize, Deserialize)]
struct FieldRepr {
    char: u64,
}

#[derive(Serialize, Deserialize)]
struct AlgebraRepr {
    field: FieldRepr,
    dim: usize,
    basis: Vec<String>,
    parity: Vec<Parity>,
    #[serde(skip_serializing_if = "Option::is_none")]
    degree: Option<Vec<i64>>,
    table: Vec<(usize, usize, usize, String)>,
}

/// Serializes an algebra in canonical form.
pub fn algebra_to_json(alg: &Superalgebra) -> String {
    let mut table: Vec<(usize, usize, usize, String)> =
        alg.entries().map(|(i, j, k, c)| (i, j, k, c.to_string())).collect();
    table.sort();
    let repr = AlgebraRepr {
        field: FieldRepr { char: alg.field().characteristic() },
        dim: alg.dim(),
        basis: alg.labels().to_vec(),
        parity: alg.parity().to_vec(),
        degree: alg.degree().map(|d| d.to_vec()),
        table,
    };
    serde_json::to_string(&repr).expect("serialization cannot fail")
}

/// Parses a canonical algebra file.
pub fn algebra_from_json(s: &str) -> Result<Superalgebra, Error> {
    let repr: AlgebraRepr = serde_json::from_str(s)?;
    let field = match repr.field.char {
        0 => FieldSpec::rationals(),
        p => FieldSpec::prime(p)?,
    };
    if repr.basis.len() != repr.dim {
        return Err(Error::Format("basis length != dim".into()));
    }
    let mut entries = Vec::with_capacity(repr.table.len());
    for (i, j, k, c) in repr.table {
        entries.push((i, j, k, field.parse_scalar(&c)?));
    }
    Superalgebra::new(field, repr.basis, repr.parity, repr.degree, entries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Scalar;

    #[test]
    fn round_trip_is_byte_identical() {
        let f = FieldSpec::prime(3).unwrap();
        let a = Superalgebra::new(
            f,
            vec!["x".into(), "y".into(), "z".into()],
            vec![1, 1, 0],
            Some(vec![1, 1, 2]),
            vec![(1, 0, 2, f.from_integer(-1)), (0, 1, 2, f.one())],
        )
        .unwrap();
        let s1 = algebra_to_json(&a);
        let b = algebra_from_json(&s1).unwrap();
        let s2 = algebra_to_json(&b);
        assert_eq!(s1, s2);
        assert_eq!(a, b);
        // Table is sorted by (i,j,k) in the output.
        assert!(s1.find("[0,1,2,").unwrap() < s1.find("[1,0,2,").unwrap());
    }

    #[test]
    fn bad_files_are_rejected() {
        assert!(algebra_from_json("{}").is_err());
        // Characteristic 2 is rejected.
        let s = r#"{"field":{"char":2},"dim":1,"basis":["1"],"parity":[0],"table":[]}"#;
        assert!(algebra_from_json(s).is_err());
        // Coefficient not in the field.
        let s = r#"{"field":{"char":3},"dim":1,"basis":["1"],"parity":[0],"table":[[0,0,0,"5"]]}"#;
        assert!(algebra_from_json(s).is_err());
        let _ = Scalar::Fp(0);
    }
}
