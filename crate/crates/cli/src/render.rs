//! Shared output helpers: 12-significant-digit floats, text blocks for the
//! common result types, and the stdout-or-file sink.

use std::fs;
use std::io::Write;
use std::path::Path;

use msdistill_core::states::{OctahedronVerdict, Vec3};
use msdistill_core::DistillationOutcome;

use crate::failure::Failure;

/// All numeric output is printed with 12 significant digits so repeated
/// runs are byte-identical and diffable.
pub fn sig(x: f64) -> String {
    format!("{x:.11e}")
}

pub fn vec3(v: Vec3) -> String {
    format!("({}, {}, {})", sig(v[0]), sig(v[1]), sig(v[2]))
}

pub fn verdict(v: &OctahedronVerdict) -> String {
    format!(
        "{} (l1 = {}, margin = {})",
        v.location,
        sig(v.l1),
        sig(v.margin)
    )
}

pub fn outcome_block(out: &DistillationOutcome) -> String {
    format!(
        "success_prob = {}\nout_bloch    = {}\nout_fidelity = {}\nverdict      = {}",
        sig(out.success_prob),
        vec3(out.out_bloch),
        sig(out.out_fidelity),
        verdict(&out.verdict)
    )
}

/// Write `content` (newline-terminated if it is not already) to the file at
/// `out`, or to stdout when no path was given.
pub fn emit(out: Option<&Path>, content: &str) -> Result<(), Failure> {
    let terminated = if content.ends_with('\n') {
        content.to_string()
    } else {
        format!("{content}\n")
    };
    match out {
        Some(path) => fs::write(path, terminated)
            .map_err(|e| Failure::Domain(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(terminated.as_bytes())
                .map_err(Failure::from)
        }
    }
}

pub fn to_json<T: serde::Serialize>(value: &T) -> Result<String, Failure> {
    serde_json::to_string_pretty(value).map_err(|e| Failure::Domain(e.to_string()))
}
