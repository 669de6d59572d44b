//! Line-based text format for code files.
//!
//! ```text
//! # comment
//! n=5
//! name=five_qubit
//! X Z Z X I        # generators, whitespace-insensitive
//! IXZZX
//! ...
//! X_L=-XXXXX       # optional; both logicals or neither
//! Z_L=-YYYYY
//! ```

use super::{CodeError, StabilizerCode};
use crate::pauli::PauliString;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::str::FromStr;

impl StabilizerCode {
    /// Parse a code file; see the module header for the format.
    pub fn parse(text: &str) -> Result<Self, CodeError> {
        let mut n: Option<usize> = None;
        let mut name: Option<String> = None;
        let mut logical_x: Option<PauliString> = None;
        let mut logical_z: Option<PauliString> = None;
        let mut generators: Vec<PauliString> = Vec::new();

        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let parse_pauli = |s: &str| -> Result<PauliString, CodeError> {
                let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
                PauliString::from_str(&compact)
                    .map_err(|e| CodeError::Parse { line, message: e.to_string() })
            };
            if let Some((key, value)) = content.split_once('=') {
                match key.trim() {
                    "n" => {
                        let v = value.trim().parse::<usize>().map_err(|_| CodeError::Parse {
                            line,
                            message: format!("bad qubit count {:?}", value.trim()),
                        })?;
                        if v == 0 {
                            return Err(CodeError::Parse {
                                line,
                                message: "qubit count must be positive".to_string(),
                            });
                        }
                        n = Some(v);
                    }
                    "name" => name = Some(value.trim().to_string()),
                    "X_L" => logical_x = Some(parse_pauli(value)?),
                    "Z_L" => logical_z = Some(parse_pauli(value)?),
                    other => {
                        return Err(CodeError::Parse {
                            line,
                            message: format!("unknown key {other:?}"),
                        })
                    }
                }
            } else {
                if n.is_none() {
                    return Err(CodeError::Parse {
                        line,
                        message: "expected n=<count> before the generators".to_string(),
                    });
                }
                generators.push(parse_pauli(content)?);
            }
        }

        let n = n.ok_or(CodeError::Parse {
            line: 0,
            message: String::from("missing n=<count> line"),
        })?;
        let code = match (logical_x, logical_z) {
            (Some(x), Some(z)) => StabilizerCode::with_logicals(n, generators, x, z)?,
            (None, None) => StabilizerCode::new(n, generators)?,
            _ => {
                return Err(CodeError::Parse {
                    line: 0,
                    message: String::from("give both X_L and Z_L, or neither"),
                })
            }
        };
        Ok(match name {
            Some(label) => code.named(label),
            None => code,
        })
    }
}
