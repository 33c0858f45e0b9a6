use serde::{Deserialize, Serialize};

use super::FiniteRl;
use crate::error::{Error, Result};

/// Wire format of an algebra: `{"size","k","one","join","mult"}` plus the
/// optional `"name"` and `"inclusion"` fields.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraJson {
    pub size: usize,
    pub k: u32,
    pub one: usize,
    pub join: Vec<Vec<usize>>,
    pub mult: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inclusion: Option<Vec<usize>>,
}

fn rows(t: &[usize], n: usize) -> Vec<Vec<usize>> {
    t.chunks(n).map(<[usize]>::to_vec).collect()
}

fn flatten(name: &str, t: &[Vec<usize>], n: usize) -> Result<Vec<usize>> {
    if t.len() != n || t.iter().any(|r| r.len() != n) {
        return Err(Error::MalformedTables(format!("{name} table is not {n}x{n}")));
    }
    Ok(t.concat())
}

impl From<&FiniteRl> for AlgebraJson {
    fn from(a: &FiniteRl) -> Self {
        let n = a.size();
        AlgebraJson {
            size: n,
            k: a.k(),
            one: a.one(),
            join: rows(a.join_table(), n),
            mult: rows(a.mult_table(), n),
            name: a.name().map(str::to_owned),
            inclusion: None,
        }
    }
}

impl TryFrom<&AlgebraJson> for FiniteRl {
    type Error = Error;

    fn try_from(j: &AlgebraJson) -> Result<Self> {
        let join = flatten("join", &j.join, j.size)?;
        let mult = flatten("mult", &j.mult, j.size)?;
        let a = FiniteRl::validate(j.size, j.k, j.one, join, mult)?;
        Ok(match &j.name {
            Some(name) => a.with_name(name.clone()),
            None => a,
        })
    }
}

impl FiniteRl {
    pub fn to_json(&self) -> String {
        serde_json::to_string(&AlgebraJson::from(self)).expect("plain data serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let j: AlgebraJson = serde_json::from_str(text)?;
        FiniteRl::try_from(&j)
    }
}
