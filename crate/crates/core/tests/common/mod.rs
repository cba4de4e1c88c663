#![allow(dead_code)]

use std::path::PathBuf;

use cbn_core::terms::{parse_term_debug, Term};
use cbn_core::trs::{parse_trs, Trs};

pub fn catalog_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../catalog")
        .join(name)
}

pub fn catalog(name: &str) -> Trs {
    let text = std::fs::read_to_string(catalog_path(name)).expect("catalog file");
    parse_trs(&text).expect("catalog system parses")
}

/// Catalog systems accepted by the checks (everything but `broken.trs`).
pub fn valid_catalog() -> Vec<(&'static str, Trs)> {
    ["example.trs", "a_to_b.trs", "berry.trs", "constants.trs", "shift.trs"]
        .into_iter()
        .map(|n| (n, catalog(n)))
        .collect()
}

pub fn example() -> Trs {
    catalog("example.trs")
}

/// Parses a ground term, allowing `#` and circled symbols.
pub fn term(trs: &Trs, s: &str) -> Term {
    let sig = trs.signature().with_bullet().with_circled();
    parse_term_debug(s, &[] as &[&str], &sig).expect("term parses")
}
