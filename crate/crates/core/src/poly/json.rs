use indexmap::IndexMap;
use serde::{Deserialize, Serialize};
use std::sync::Arc;

use super::{Monomial, PolyError, Polynomial, Rational, VarTable};

#[derive(Serialize, Deserialize)]
struct JsonTerm {
    m: IndexMap<String, u32>,
    c: Rational,
}

#[derive(Serialize, Deserialize)]
struct JsonPoly {
    vars: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    weights: Option<Vec<u32>>,
    terms: Vec<JsonTerm>,
}

impl Polynomial {
    pub fn to_json_value(&self) -> serde_json::Value {
        let vars = self.vars();
        let doc = JsonPoly {
            vars: vars.names().to_vec(),
            weights: Some((0..vars.len()).map(|i| vars.weight(i)).collect()),
            terms: self
                .terms()
                .iter()
                .map(|(m, c)| JsonTerm {
                    m: m.iter().map(|(v, e)| (vars.name(v).to_string(), e)).collect(),
                    c: c.clone(),
                })
                .collect(),
        };
        serde_json::to_value(doc).expect("serializable")
    }

    pub fn to_json(&self) -> String {
        self.to_json_value().to_string()
    }

    /// Reads the JSON form; variables without listed weights get weight 0.
    pub fn from_json(text: &str) -> Result<Self, PolyError> {
        let doc: JsonPoly =
            serde_json::from_str(text).map_err(|e| PolyError::Parse { pos: e.column(), msg: e.to_string() })?;
        let weights = doc.weights.unwrap_or_else(|| vec![0; doc.vars.len()]);
        if weights.len() != doc.vars.len() {
            return Err(PolyError::Parse { pos: 0, msg: "weights and vars differ in length".into() });
        }
        let pairs: Vec<(&str, u32)> = doc.vars.iter().map(String::as_str).zip(weights).collect();
        let table: Arc<VarTable> = VarTable::new(&pairs)?;
        let mut terms = Vec::new();
        for t in doc.terms {
            let mut pairs = Vec::new();
            for (n, e) in t.m {
                let i = table.index_of(&n).ok_or(PolyError::UnknownVariable(n))?;
                pairs.push((i, e));
            }
            terms.push((Monomial::from_pairs(pairs), t.c));
        }
        Ok(Polynomial::from_terms(&table, terms))
    }
}
