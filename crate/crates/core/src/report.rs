//! Verification records.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use serde::{Serialize, Serializer};

/// Serializes a big integer as a decimal string.
pub fn serialize_decimal<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_str_radix(10))
}

fn serialize_opt_decimal<S: Serializer>(v: &Option<BigUint>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(v) => serialize_decimal(v, s),
        None => s.serialize_none(),
    }
}

/// One formula value, optionally checked against an oracle value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CountReport {
    /// What was checked, e.g. `"orbit"` or `"census"`.
    pub check: String,
    pub params: BTreeMap<String, String>,
    #[serde(serialize_with = "serialize_decimal")]
    pub formula_value: BigUint,
    #[serde(serialize_with = "serialize_opt_decimal")]
    pub oracle_value: Option<BigUint>,
    #[serde(rename = "match")]
    pub matches: Option<bool>,
}

impl CountReport {
    pub fn formula_only(
        check: &str,
        params: BTreeMap<String, String>,
        formula_value: BigUint,
    ) -> Self {
        CountReport {
            check: check.into(),
            params,
            formula_value,
            oracle_value: None,
            matches: None,
        }
    }

    pub fn checked(
        check: &str,
        params: BTreeMap<String, String>,
        formula_value: BigUint,
        oracle_value: BigUint,
    ) -> Self {
        let matches = Some(formula_value == oracle_value);
        CountReport {
            check: check.into(),
            params,
            formula_value,
            oracle_value: Some(oracle_value),
            matches,
        }
    }

    /// False only when an oracle value disagrees with the formula.
    pub fn passed(&self) -> bool {
        self.matches != Some(false)
    }
}

/// Builds a parameter map from `(name, value)` pairs.
pub fn params<I, K, V>(pairs: I) -> BTreeMap<String, String>
where
    I: IntoIterator<Item = (K, V)>,
    K: Into<String>,
    V: ToString,
{
    pairs
        .into_iter()
        .map(|(k, v)| (k.into(), v.to_string()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn match_flag_tracks_oracle() {
        let p = params([("n", 2)]);
        let r = CountReport::formula_only("orbit", p.clone(), BigUint::from(6u8));
        assert_eq!(r.matches, None);
        assert!(r.passed());
        let ok = CountReport::checked("orbit", p.clone(), BigUint::from(6u8), BigUint::from(6u8));
        assert_eq!(ok.matches, Some(true));
        let bad = CountReport::checked("orbit", p, BigUint::from(6u8), BigUint::from(7u8));
        assert!(!bad.passed());
        let json = serde_json::to_string(&bad).unwrap();
        assert_eq!(
            json,
            r#"{"check":"orbit","params":{"n":"2"},"formula_value":"6","oracle_value":"7","match":false}"#
        );
    }
}
