//! TOML instance files for the solvable rank-two families.
//!
//! ```toml
//! vars = ["x1", "x2"]
//! D1 = "dx1"
//! D2 = "x1*dx1 + dx2"
//! b = "x1"
//! a1 = "0"
//! f1 = ["1"]
//! ```
//!
//! Expressions use the session syntax. The affine family takes `v1`, `v2`
//! and `linear = [[i, j], ...]` selecting the fields `v_i D_j`.

use derlie_core::classify::Solv2Data;
use derlie_core::RatFunc;
use serde::Deserialize;

use crate::error::{CliError, Result};
use crate::parse::{parse_dexpr, parse_rexpr};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawInstance {
    vars: Vec<String>,
    #[serde(rename = "D1")]
    d1: Option<String>,
    #[serde(rename = "D2")]
    d2: Option<String>,
    a: Option<String>,
    a1: Option<String>,
    b: Option<String>,
    c: Option<String>,
    d: Option<String>,
    r: Option<String>,
    #[serde(default)]
    f1: Vec<String>,
    v1: Option<String>,
    v2: Option<String>,
    #[serde(default)]
    linear: Vec<[usize; 2]>,
}

fn field<T>(name: &str, parsed: Result<T>) -> Result<T> {
    parsed.map_err(|e| CliError::Data(format!("field `{name}`: {e}")))
}

/// Parses an instance file into its variable names and instance data.
pub fn load_solv2(text: &str) -> Result<(Vec<String>, Solv2Data)> {
    let raw: RawInstance = toml::from_str(text).map_err(|e| CliError::Data(e.to_string()))?;
    let vars = raw.vars;
    if vars.is_empty() {
        return Err(CliError::Data("`vars` must list at least one variable".into()));
    }
    let rexpr = |name: &str, v: &Option<String>| -> Result<Option<RatFunc>> {
        v.as_deref().map(|s| field(name, parse_rexpr(s, &vars))).transpose()
    };
    let data = Solv2Data {
        d1: raw.d1.as_deref().map(|s| field("D1", parse_dexpr(s, &vars))).transpose()?,
        d2: raw.d2.as_deref().map(|s| field("D2", parse_dexpr(s, &vars))).transpose()?,
        a: rexpr("a", &raw.a)?,
        a1: rexpr("a1", &raw.a1)?,
        b: rexpr("b", &raw.b)?,
        c: rexpr("c", &raw.c)?,
        d: rexpr("d", &raw.d)?,
        r: rexpr("r", &raw.r)?,
        f1: raw
            .f1
            .iter()
            .map(|s| field("f1", parse_rexpr(s, &vars)))
            .collect::<Result<_>>()?,
        v1: rexpr("v1", &raw.v1)?,
        v2: rexpr("v2", &raw.v2)?,
        linear: raw.linear.iter().map(|[i, j]| (*i, *j)).collect(),
    };
    Ok((vars, data))
}
