//! Browser bindings: draw a family member, check a property, list left
//! modular chains. Every export returns a JSON string.

use wasm_bindgen::prelude::*;

pub mod demo;

fn js(r: Result<String, posetlab::error::Error>) -> Result<String, JsError> {
    r.map_err(|e| JsError::new(&e.to_string()))
}

/// Layout of the Hasse diagram of `family` at size `n`.
#[wasm_bindgen]
pub fn hasse(family: &str, n: usize) -> Result<String, JsError> {
    js(demo::hasse(family, n))
}

/// Report for `property` on the family member.
#[wasm_bindgen]
pub fn check(family: &str, n: usize, property: &str) -> Result<String, JsError> {
    js(demo::check(family, n, property))
}

/// Every left modular maximal chain, as lists of element indices.
#[wasm_bindgen]
pub fn left_modular_chains(family: &str, n: usize) -> Result<String, JsError> {
    js(demo::left_modular_chains(family, n))
}
