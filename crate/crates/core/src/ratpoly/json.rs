//! Canonical JSON form:
//! `{"vars":["x1",…],"terms":[{"c":"p/q","e":[…]}]}` with terms in
//! descending graded-lex order.

use serde::{Deserialize, Serialize};

use super::{Monomial, SparsePoly};
use crate::error::{Error, Result};
use crate::rational::{fraction_string, parse_rational};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub c: String,
    pub e: Vec<u16>,
    /// One-based indices of the `y` factors; only used by mixed-ring elements.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ys: Option<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub vars: Vec<String>,
    pub terms: Vec<TermJson>,
}

impl SparsePoly {
    pub fn to_json_model(&self) -> PolyJson {
        PolyJson {
            vars: super::text::default_names(self.nvars),
            terms: self
                .terms
                .iter()
                .rev()
                .map(|(m, c)| TermJson {
                    c: fraction_string(c),
                    e: m.exponents().to_vec(),
                    ys: None,
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_json_model()).expect("polynomial JSON")
    }

    pub fn from_json_model(model: &PolyJson) -> Result<SparsePoly> {
        let n = model.vars.len();
        let mut p = SparsePoly::zero(n);
        for t in &model.terms {
            if t.e.len() != n {
                return Err(Error::Json(format!(
                    "term has {} exponents, expected {n}",
                    t.e.len()
                )));
            }
            if t.ys.as_ref().is_some_and(|ys| !ys.is_empty()) {
                return Err(Error::Json("pure polynomial term carries y-factors".into()));
            }
            p.add_term(Monomial::from_exponents(&t.e), parse_rational(&t.c)?);
        }
        Ok(p)
    }

    pub fn from_json(text: &str) -> Result<SparsePoly> {
        let model: PolyJson = serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
        Self::from_json_model(&model)
    }
}
