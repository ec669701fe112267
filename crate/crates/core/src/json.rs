//! JSON encoding of forms:
//! `{"dim": n, "degree": k, "terms": [{"indices": [i1, …, ik], "coeff": c}, …]}`
//! with one-based, strictly increasing indices. Terms are written in blade
//! order, so printing is canonical.

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::exterior::{ExteriorError, ExteriorForm};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermJson {
    #[serde(deserialize_with = "increasing_indices")]
    pub indices: Vec<usize>,
    pub coeff: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormJson {
    pub dim: usize,
    pub degree: usize,
    pub terms: Vec<TermJson>,
}

/// Rejects unordered or zero indices while the parser still knows the
/// position, so the message carries a line and column.
fn increasing_indices<'de, D: Deserializer<'de>>(deserializer: D) -> Result<Vec<usize>, D::Error> {
    let indices = Vec::<usize>::deserialize(deserializer)?;
    if indices.first() == Some(&0) {
        return Err(serde::de::Error::custom(format!(
            "indices {indices:?} are one-based"
        )));
    }
    if indices.windows(2).any(|w| w[0] >= w[1]) {
        return Err(serde::de::Error::custom(format!(
            "indices {indices:?} are not strictly increasing"
        )));
    }
    Ok(indices)
}

impl From<&ExteriorForm> for FormJson {
    fn from(form: &ExteriorForm) -> Self {
        Self {
            dim: form.dim(),
            degree: form.degree(),
            terms: form
                .terms()
                .map(|(blade, coeff)| TermJson {
                    indices: blade.one_based(),
                    coeff,
                })
                .collect(),
        }
    }
}

impl TryFrom<FormJson> for ExteriorForm {
    type Error = ExteriorError;

    fn try_from(wire: FormJson) -> Result<Self, Self::Error> {
        ExteriorForm::from_terms(
            wire.dim,
            wire.degree,
            wire.terms.iter().map(|t| (t.indices.as_slice(), t.coeff)),
        )
    }
}

impl Serialize for ExteriorForm {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        FormJson::from(self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ExteriorForm {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let wire = FormJson::deserialize(deserializer)?;
        ExteriorForm::try_from(wire).map_err(serde::de::Error::custom)
    }
}

pub fn parse_form(text: &str) -> Result<ExteriorForm, serde_json::Error> {
    serde_json::from_str(text)
}

/// Pretty-printed, newline-terminated.
pub fn print_form(form: &ExteriorForm) -> String {
    let mut out = serde_json::to_string_pretty(form).expect("forms always serialize");
    out.push('\n');
    out
}
