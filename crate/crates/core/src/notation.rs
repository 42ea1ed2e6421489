//! Textual monoid descriptions used by the command line.
//!
//! Grammar: factors separated by a standalone `x` (or `×`), each one of
//! `chain:m`, `mk:k`, `n5`, `cyclic:m`, `bool:k` or `file:PATH`, where the
//! file holds a JSON Cayley table. Factors combine left to right with
//! [`CayleyMonoid::product`].

use std::path::Path;

use crate::error::{Error, Result};
use crate::monoid::{CayleyJson, CayleyMonoid};

pub fn parse_monoid(spec: &str) -> Result<CayleyMonoid> {
    let mut factors: Vec<Vec<&str>> = vec![Vec::new()];
    for token in spec.split_whitespace() {
        if token == "x" || token == "×" {
            factors.push(Vec::new());
        } else {
            factors.last_mut().expect("non-empty").push(token);
        }
    }
    let mut result: Option<CayleyMonoid> = None;
    for f in factors {
        let factor = match f.as_slice() {
            [single] => parse_factor(single)?,
            [] => return Err(Error::Parse(format!("empty factor in {spec:?}"))),
            _ => {
                return Err(Error::Parse(format!(
                    "expected 'x' between factors in {spec:?}"
                )))
            }
        };
        result = Some(match result {
            None => factor,
            Some(acc) => acc.product(&factor)?,
        });
    }
    result.ok_or_else(|| Error::Parse("empty monoid description".into()))
}

fn parse_factor(token: &str) -> Result<CayleyMonoid> {
    if token == "n5" {
        return Ok(CayleyMonoid::n5());
    }
    if token == "trivial" {
        return Ok(CayleyMonoid::trivial());
    }
    let (kind, arg) = token
        .split_once(':')
        .ok_or_else(|| Error::Parse(format!("unknown monoid {token:?}")))?;
    if kind == "file" {
        return load_json(Path::new(arg));
    }
    let n: usize = arg
        .parse()
        .map_err(|_| Error::Parse(format!("bad parameter in {token:?}")))?;
    match kind {
        "chain" => CayleyMonoid::chain(n),
        "mk" => CayleyMonoid::mk(n),
        "cyclic" => CayleyMonoid::cyclic_group(n),
        "bool" => CayleyMonoid::boolean(n),
        _ => Err(Error::Parse(format!("unknown monoid kind {kind:?}"))),
    }
}

pub fn load_json(path: &Path) -> Result<CayleyMonoid> {
    let text = std::fs::read_to_string(path)?;
    let json: CayleyJson = serde_json::from_str(&text)?;
    CayleyMonoid::from_json(&json)
}
