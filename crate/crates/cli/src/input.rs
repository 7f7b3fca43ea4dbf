use std::path::Path;

use k3_frobenius::forms::QuadraticForm;
use k3_frobenius::frobenius::{
    build_exterior_model, default_k3_model, rank_one_ns_model, with_odd_classes, GradedFrobeniusAlgebra,
    ModelDescriptor,
};
use k3_frobenius::k3::{catalog, Lattice, CATALOG_NAMES};
use k3_frobenius::linalg::RatMatrix;
use k3_frobenius::{Error, Rational};
use serde::de::DeserializeOwned;
use serde::Deserialize;

/// Inline JSON if it looks like JSON, otherwise the contents of a file.
pub fn read_source(arg: &str) -> Result<String, Error> {
    let t = arg.trim_start();
    if t.starts_with('{') || t.starts_with('[') {
        return Ok(arg.to_string());
    }
    std::fs::read_to_string(Path::new(arg)).map_err(|e| Error::Parse(format!("cannot read {arg}: {e}")))
}

pub fn parse_json<T: DeserializeOwned>(text: &str, what: &str) -> Result<T, Error> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("malformed {what} JSON: {e}")))
}

pub fn load<T: DeserializeOwned>(arg: &str, what: &str) -> Result<T, Error> {
    parse_json(&read_source(arg)?, what)
}

#[derive(Deserialize)]
#[serde(untagged)]
enum GramInput {
    Wrapped {
        gram: RatMatrix,
        #[serde(default)]
        label: Option<String>,
    },
    Bare(RatMatrix),
}

fn gram_of(arg: &str) -> Result<(String, RatMatrix), Error> {
    if CATALOG_NAMES.contains(&arg) {
        let l = catalog(arg)?;
        return Ok((l.label.clone(), l.gram().clone()));
    }
    Ok(match load::<GramInput>(arg, "form")? {
        GramInput::Wrapped { gram, label } => (label.unwrap_or_else(|| "input".into()), gram),
        GramInput::Bare(gram) => ("input".into(), gram),
    })
}

pub fn form(arg: &str) -> Result<QuadraticForm, Error> {
    QuadraticForm::new(gram_of(arg)?.1)
}

pub fn lattice(arg: &str) -> Result<Lattice, Error> {
    let (label, gram) = gram_of(arg)?;
    Lattice::new(label, gram)
}

pub fn rational(s: &str) -> Result<Rational, Error> {
    s.parse::<Rational>().map_err(|_| Error::Parse(format!("not a rational number: {s:?}")))
}

#[derive(Deserialize)]
#[serde(untagged)]
pub enum ModelRef {
    Named(String),
    Descriptor(ModelDescriptor),
}

pub fn model_by_name(name: &str, g: usize) -> Result<Option<GradedFrobeniusAlgebra>, Error> {
    Ok(Some(match name {
        "default" | "k3" => default_k3_model(),
        "rank-one" => rank_one_ns_model(),
        "exterior" => build_exterior_model(g)?,
        "odd" => with_odd_classes(&default_k3_model())?,
        _ => return Ok(None),
    }))
}

pub fn model(arg: &str, g: usize) -> Result<GradedFrobeniusAlgebra, Error> {
    if let Some(m) = model_by_name(arg, g)? {
        return Ok(m);
    }
    GradedFrobeniusAlgebra::from_descriptor(&load::<ModelDescriptor>(arg, "model")?)
}

pub fn model_ref(r: Option<ModelRef>) -> Result<GradedFrobeniusAlgebra, Error> {
    match r {
        None => Ok(default_k3_model()),
        Some(ModelRef::Named(n)) => model_by_name(&n, 1)?.ok_or_else(|| Error::Parse(format!("unknown model {n:?}"))),
        Some(ModelRef::Descriptor(d)) => GradedFrobeniusAlgebra::from_descriptor(&d),
    }
}
