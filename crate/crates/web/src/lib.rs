//! Browser bindings for soberlab. Every export takes and returns JSON text so
//! the page needs no generated type glue beyond strings.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use soberlab::rclass::{hofmann_mislove_check, rclass_analyze_with};
use soberlab::report::{PropertiesSection, RClassSection, SobrificationSection, SpaceSection};
use soberlab::sobrification::{sobrify, verify_sobrification};
use soberlab::symbolic::{
    counterexample_family, make_symbolic_space, symbolic_query, symbolic_rclass_membership, symbolic_rclass_summary,
    Predicate, SymbolicSubset,
};
use soberlab::{validate_space, SpaceFile};

/// Longest chain the page may ask to check.
pub const MAX_J: u64 = 100_000;

fn error(msg: impl std::fmt::Display) -> String {
    json!({ "error": msg.to_string() }).to_string()
}

/// Full analysis of a finite space given as a space file: properties, the
/// Hasse diagram of its open sets, the sobrification with its checks, R(X),
/// and the filter correspondence.
#[wasm_bindgen]
pub fn analyze_space(input: &str) -> String {
    let file: SpaceFile = match serde_json::from_str(input) {
        Ok(f) => f,
        Err(e) => return error(format!("invalid space file: {e}")),
    };
    let space = match validate_space(&file) {
        Ok(s) => s,
        Err(e) => return error(e),
    };
    if space.len() > 8 {
        return error("the demo handles at most 8 points");
    }
    let sob = sobrify(&space);
    let verification = match verify_sobrification(&space, &sob) {
        Ok(v) => v,
        Err(e) => return error(e),
    };
    let rclass = rclass_analyze_with(&space, &sob);
    json!({
        "space": SpaceSection::of(&space),
        "properties": PropertiesSection::of(&space),
        "sobrification": SobrificationSection::of(&space, &sob, Some(verification)),
        "rclass": RClassSection::of(&space, &rclass),
        "hm": hofmann_mislove_check(&space),
    })
    .to_string()
}

/// Answers one predicate on a symbolic family (`cofinite` or `upper`).
#[wasm_bindgen]
pub fn symbolic_query_json(family: &str, predicate: &str, set: &str) -> String {
    let space = match make_symbolic_space(family) {
        Ok(s) => s,
        Err(e) => return error(e),
    };
    let predicate: Predicate = match predicate.parse() {
        Ok(p) => p,
        Err(e) => return error(e),
    };
    let input: SymbolicSubset = match set.parse() {
        Ok(s) => s,
        Err(e) => return error(e),
    };
    let verdict = symbolic_query(&space, predicate, &input);
    json!({
        "family": space.family(),
        "input": input,
        "verdict": verdict,
        "r_membership": symbolic_rclass_membership(&space, &input),
        "summary": symbolic_rclass_summary(&space),
    })
    .to_string()
}

/// The descending chain of compact saturated sets with empty intersection,
/// checked up to `j_max`.
#[wasm_bindgen]
pub fn counterexample_json(family: &str, j_max: u64) -> String {
    let space = match make_symbolic_space(family) {
        Ok(s) => s,
        Err(e) => return error(e),
    };
    if j_max > MAX_J {
        return error(format!("j_max is limited to {MAX_J}"));
    }
    let (chain, record) = counterexample_family(&space, j_max);
    let sample: Vec<Value> = (0..j_max.min(5) + 1).map(|j| json!(chain.member(j))).collect();
    json!({ "chain": chain, "sample": sample, "record": record }).to_string()
}
