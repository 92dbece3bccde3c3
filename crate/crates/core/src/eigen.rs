//! Eigenvalue records for the two spherical Hecke operators at p, with
//! JSON ingestion. Big eigenvalues are accepted as decimal strings.

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use crate::error::EigenError;

/// Eigenvalues of `T_{p,1}` and `T_{p,2}` for a form with trivial central
/// character (`a0 = 1`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EigenData {
    pub label: Option<String>,
    pub p: u64,
    pub a1: BigInt,
    pub a2: BigInt,
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl EigenData {
    pub fn new(p: u64, a1: BigInt, a2: BigInt) -> Result<Self, EigenError> {
        if !is_prime(p) {
            return Err(EigenError::NotPrime(p));
        }
        Ok(EigenData {
            label: None,
            p,
            a1,
            a2,
        })
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }
}

fn bigint_field(v: &serde_json::Value) -> Option<BigInt> {
    match v {
        serde_json::Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Some(BigInt::from(i))
            } else {
                n.as_u64().map(BigInt::from)
            }
        }
        serde_json::Value::String(s) => BigInt::from_str(s.trim()).ok(),
        _ => None,
    }
}

fn parse_record(index: usize, v: &serde_json::Value) -> Result<EigenData, EigenError> {
    let schema = |message: String| EigenError::Schema { index, message };
    let obj = v
        .as_object()
        .ok_or_else(|| schema("record must be a JSON object".into()))?;
    for key in obj.keys() {
        if !matches!(key.as_str(), "label" | "p" | "a0" | "a1" | "a2") {
            return Err(schema(format!("unknown field '{}'", key)));
        }
    }
    if let Some(a0) = obj.get("a0") {
        let val = bigint_field(a0).ok_or_else(|| schema("a0 must be an integer".into()))?;
        if !val.is_one() {
            return Err(EigenError::NonTrivialCentral);
        }
    }
    let p = obj
        .get("p")
        .and_then(|x| x.as_u64())
        .ok_or_else(|| schema("missing or non-integer field 'p'".into()))?;
    let a1 = obj
        .get("a1")
        .and_then(bigint_field)
        .ok_or_else(|| schema("missing field 'a1' (integer or decimal string)".into()))?;
    let a2 = obj
        .get("a2")
        .and_then(bigint_field)
        .ok_or_else(|| schema("missing field 'a2' (integer or decimal string)".into()))?;
    let mut e = EigenData::new(p, a1, a2)?;
    if let Some(label) = obj.get("label") {
        let label = label
            .as_str()
            .ok_or_else(|| schema("label must be a string".into()))?;
        e = e.with_label(label);
    }
    Ok(e)
}

/// Parse a single record or an array of records from JSON text.
/// Duplicate labels are rejected.
pub fn load_eigen_records(json: &str) -> Result<Vec<EigenData>, EigenError> {
    let value: serde_json::Value = serde_json::from_str(json).map_err(|e| EigenError::Schema {
        index: 0,
        message: format!("malformed JSON: {}", e),
    })?;
    let records: Vec<EigenData> = match &value {
        serde_json::Value::Array(items) => items
            .iter()
            .enumerate()
            .map(|(i, v)| parse_record(i, v))
            .collect::<Result<_, _>>()?,
        v => vec![parse_record(0, v)?],
    };
    let mut seen = std::collections::BTreeSet::new();
    for r in &records {
        if let Some(label) = &r.label {
            if !seen.insert(label.clone()) {
                return Err(EigenError::DuplicateLabel(label.clone()));
            }
        }
    }
    Ok(records)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_record() {
        let got = load_eigen_records(r#"{"p": 2, "a1": 47, "a2": 19}"#).unwrap();
        assert_eq!(got.len(), 1);
        assert_eq!(got[0].p, 2);
        assert_eq!(got[0].a1, BigInt::from(47));
    }

    #[test]
    fn array_with_labels_and_strings() {
        let got = load_eigen_records(
            r#"[{"label": "f1", "p": 2, "a1": "47", "a2": 19},
                {"label": "f2", "p": 3, "a1": "123456789012345678901234567890", "a2": "7"}]"#,
        )
        .unwrap();
        assert_eq!(got.len(), 2);
        assert_eq!(
            got[1].a1,
            BigInt::from_str("123456789012345678901234567890").unwrap()
        );
    }

    #[test]
    fn composite_p_rejected() {
        assert_eq!(
            load_eigen_records(r#"{"p": 4, "a1": 1, "a2": 1}"#),
            Err(EigenError::NotPrime(4))
        );
    }

    #[test]
    fn nontrivial_central_character_rejected() {
        assert_eq!(
            load_eigen_records(r#"{"p": 2, "a0": 2, "a1": 1, "a2": 1}"#),
            Err(EigenError::NonTrivialCentral)
        );
        // Explicit a0 = 1 is fine.
        assert!(load_eigen_records(r#"{"p": 2, "a0": 1, "a1": 1, "a2": 1}"#).is_ok());
    }

    #[test]
    fn duplicate_labels_rejected() {
        let got = load_eigen_records(
            r#"[{"label": "x", "p": 2, "a1": 1, "a2": 1},
                {"label": "x", "p": 3, "a1": 1, "a2": 1}]"#,
        );
        assert_eq!(got, Err(EigenError::DuplicateLabel("x".into())));
    }

    #[test]
    fn unknown_field_rejected() {
        assert!(matches!(
            load_eigen_records(r#"{"p": 2, "a1": 1, "a2": 1, "a3": 5}"#),
            Err(EigenError::Schema { .. })
        ));
    }
}
