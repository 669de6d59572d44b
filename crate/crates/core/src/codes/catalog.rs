//! Built-in named codes, embedded from the text files under `codes/`.

use alloc::vec::Vec;

use super::StabilizerCode;

/// (name, file contents) for every shipped code.
pub const ENTRIES: &[(&str, &str)] = &[
    (
        "five_qubit",
        include_str!(concat!(env!("CARGO_MANIFEST_DIR"), "/codes/five_qubit.txt")),
    ),
    (
        "steane",
        include_str!(concat!(env!("CARGO_MANIFEST_DIR"), "/codes/steane.txt")),
    ),
    (
        "xx",
        include_str!(concat!(env!("CARGO_MANIFEST_DIR"), "/codes/xx.txt")),
    ),
];

/// Names of all shipped codes, in catalog order.
pub fn names() -> Vec<&'static str> {
    ENTRIES.iter().map(|(name, _)| *name).collect()
}

/// Parse one shipped code by name.
///
/// The embedded files are covered by the test suite, so a parse failure here
/// means the build itself is broken; it panics rather than returning an error.
pub fn by_name(name: &str) -> Option<StabilizerCode> {
    ENTRIES
        .iter()
        .find(|(key, _)| *key == name)
        .map(|(_, text)| StabilizerCode::parse(text).expect("embedded catalog entry is valid"))
}

/// Parse every shipped code, in catalog order.
pub fn all() -> Vec<StabilizerCode> {
    ENTRIES
        .iter()
        .map(|(_, text)| StabilizerCode::parse(text).expect("embedded catalog entry is valid"))
        .collect()
}
