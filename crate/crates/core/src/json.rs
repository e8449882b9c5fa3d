//! JSON interchange for divisions.
//!
//! ```json
//! {"n":3,"degree":2,"variables":["x","y","z"],"multiplicative":{"x^2":["x"],...}}
//! ```
//!
//! `degree` is `null` for a general support. Keys of `multiplicative` are
//! written in degree-lex order, so compact output is canonical.

use std::collections::BTreeMap;

use serde::ser::{SerializeMap, SerializeStruct};
use serde::{Deserialize, Serialize, Serializer};

use crate::division::RelDivision;
use crate::error::{Error, Result};
use crate::term::{var_name, var_names, Term, VarSet};

impl Serialize for RelDivision {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("RelDivision", 4)?;
        st.serialize_field("n", &self.n())?;
        st.serialize_field("degree", &self.degree())?;
        let names: Vec<String> = (0..self.n()).map(|i| var_name(i, self.n())).collect();
        st.serialize_field("variables", &names)?;
        st.serialize_field("multiplicative", &MultMap(self))?;
        st.end()
    }
}

struct MultMap<'a>(&'a RelDivision);

impl Serialize for MultMap<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let n = self.0.n();
        let mut m = s.serialize_map(Some(self.0.len()))?;
        for (t, set) in self.0.entries() {
            m.serialize_entry(&t.to_string(), &var_names(set, n))?;
        }
        m.end()
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDivision {
    n: usize,
    degree: Option<u32>,
    #[serde(default)]
    variables: Option<Vec<String>>,
    multiplicative: BTreeMap<String, Vec<String>>,
}

impl RelDivision {
    /// Canonical compact JSON.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("division serializes")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("division serializes")
    }

    pub fn from_json(text: &str) -> Result<RelDivision> {
        let raw: RawDivision = serde_json::from_str(text)?;
        let n = raw.n;
        if n == 0 {
            return Err(Error::NoAmbientVariables);
        }
        if let Some(vars) = &raw.variables {
            let expected: Vec<String> = (0..n).map(|i| var_name(i, n)).collect();
            if *vars != expected {
                return Err(Error::Json(format!(
                    "variables {vars:?} do not match the expected names {expected:?}"
                )));
            }
        }
        let mut entries = Vec::with_capacity(raw.multiplicative.len());
        for (key, names) in &raw.multiplicative {
            let t = Term::parse(key, n)?;
            let set = VarSet::parse(&names.join(","), n)?;
            entries.push((t, set));
        }
        match raw.degree {
            Some(d) => RelDivision::slice(n, d, entries),
            None => RelDivision::general(n, entries),
        }
    }
}
