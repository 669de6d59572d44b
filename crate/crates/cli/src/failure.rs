//! Error-to-exit-code mapping: usage mistakes exit 1, domain errors exit
//! 2, resource caps exit 3. Every failure becomes a one-line diagnostic on
//! stderr.

use msdistill_core::codes::CodeError;
use msdistill_core::engine::EngineError;
use msdistill_core::states::StateError;
use msdistill_core::witness::WitnessError;

#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Domain(String),
    Cap(String),
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Domain(_) => 2,
            Failure::Cap(_) => 3,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Domain(m) | Failure::Cap(m) => m,
        }
    }
}

impl From<CodeError> for Failure {
    fn from(e: CodeError) -> Self {
        match e {
            CodeError::TooLarge { .. } => Failure::Cap(e.to_string()),
            other => Failure::Domain(other.to_string()),
        }
    }
}

impl From<EngineError> for Failure {
    fn from(e: EngineError) -> Self {
        match e {
            EngineError::TooLarge { .. } => Failure::Cap(e.to_string()),
            other => Failure::Domain(other.to_string()),
        }
    }
}

impl From<WitnessError> for Failure {
    fn from(e: WitnessError) -> Self {
        match e {
            WitnessError::Code(CodeError::TooLarge { .. })
            | WitnessError::Engine(EngineError::TooLarge { .. }) => Failure::Cap(e.to_string()),
            other => Failure::Domain(other.to_string()),
        }
    }
}

impl From<StateError> for Failure {
    fn from(e: StateError) -> Self {
        Failure::Domain(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Domain(e.to_string())
    }
}
