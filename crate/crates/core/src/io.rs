//! JSON reading and writing.
//!
//! Matrices are row-major `[[a, b], [c, d]]` and are canonicalized on read.
//! Doubles are written in shortest round-trip form, so a written file reads
//! back to bit-identical values.

use serde::de::DeserializeOwned;
use serde::Serialize;

use crate::realize::FuchsianGenerators;
use crate::{Error, Representation, Result};

fn parse<T: DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("values serialize")
}

/// Parse `{"genus": g, "pairs": [{"A": …, "B": …}, …]}`. The relation is not checked here.
pub fn representation_from_json(text: &str) -> Result<Representation> {
    let rho: Representation = parse(text)?;
    if rho.genus != rho.pairs.len() {
        return Err(Error::Parse(format!(
            "genus {} does not match {} generator pairs",
            rho.genus,
            rho.pairs.len()
        )));
    }
    let finite = rho.pairs.iter().all(|p| p.a.is_finite() && p.b.is_finite());
    if !finite {
        return Err(Error::Parse("non-finite matrix entry".into()));
    }
    Ok(rho)
}

pub fn representation_to_json(rho: &Representation) -> String {
    to_json(rho)
}

pub fn generators_from_json(text: &str) -> Result<FuchsianGenerators> {
    parse(text)
}
