//! Turning flag strings into domain objects: code references (catalog name
//! or file path), axis specs, and fidelity grids.

use std::fs;

use msdistill_core::codes::catalog;
use msdistill_core::states::{surface_fidelity, Axis, Vec3};
use msdistill_core::StabilizerCode;

use crate::failure::Failure;

/// A code reference is a catalog name first and a file path second.
pub fn code(spec: &str) -> Result<StabilizerCode, Failure> {
    if let Some(found) = catalog::by_name(spec) {
        return Ok(found);
    }
    let text = fs::read_to_string(spec).map_err(|e| {
        Failure::Domain(format!(
            "code {spec:?} is not in the catalog ({}) and cannot be read as a file: {e}",
            catalog::names().join(", ")
        ))
    })?;
    Ok(StabilizerCode::parse(&text)?)
}

pub fn axis(spec: &str) -> Result<Axis, Failure> {
    Ok(spec.parse::<Axis>()?)
}

/// Grid specs: `lo:hi:count` for a uniform grid or a comma-separated list
/// of fidelities. The default covers `[f_surface, 1]` with 33 points.
pub fn grid(spec: Option<&str>, axis: Vec3) -> Result<Vec<f64>, Failure> {
    let parse_f = |part: &str| -> Result<f64, Failure> {
        part.trim()
            .parse::<f64>()
            .map_err(|_| Failure::Usage(format!("bad grid value {part:?}")))
    };
    match spec {
        None => {
            let lo = surface_fidelity(axis)?;
            Ok(uniform(lo, 1.0, 33))
        }
        Some(s) if s.contains(':') => {
            let parts: Vec<&str> = s.split(':').collect();
            if parts.len() != 3 {
                return Err(Failure::Usage(format!(
                    "bad grid spec {s:?}: expected lo:hi:count"
                )));
            }
            let lo = parse_f(parts[0])?;
            let hi = parse_f(parts[1])?;
            let count: usize = parts[2]
                .trim()
                .parse()
                .map_err(|_| Failure::Usage(format!("bad grid count {:?}", parts[2])))?;
            if count < 2 || hi <= lo {
                return Err(Failure::Usage(format!(
                    "bad grid spec {s:?}: need hi > lo and count >= 2"
                )));
            }
            Ok(uniform(lo, hi, count))
        }
        Some(s) => s.split(',').map(parse_f).collect(),
    }
}

fn uniform(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    (0..count)
        .map(|k| lo + (hi - lo) * k as f64 / (count - 1) as f64)
        .collect()
}
