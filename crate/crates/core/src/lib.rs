//! Exact simulation and certification of postselected stabilizer-code
//! magic-state distillation.
//!
//! The crate computes, in closed form, what one round of an `[[n, 1]]`
//! stabilizer reduction does to `n` independent copies of a single-qubit
//! mixed state: measure the `n - 1` commuting generators, postselect on all
//! `+1` outcomes, and read the surviving logical qubit back off the logical
//! operators. No sampling is involved anywhere — success probabilities and
//! output Bloch vectors are sums of `2^(n-1)` exact Pauli expectation
//! values.
//!
//! On top of the simulator sit the certification tools: the canonical
//! generator form, a witness construction proving that the output of a
//! protocol fed with octahedron-surface states stays strictly inside the
//! stabilizer octahedron, and bisection routines measuring the fidelity
//! range over which that persists (`epsilon_bisect`) and where a protocol
//! starts improving fidelity at all (`find_threshold`).
//!
//! Module map:
//! - [`pauli`]: bit-packed Hermitian Pauli strings with exact phase
//!   arithmetic and product-state expectation values.
//! - [`states`]: Bloch vectors, the stabilizer octahedron test, twirls,
//!   the single-qubit Clifford orbit, and the reachability check
//!   [`states::not_an_improvement`].
//! - [`codes`]: validated stabilizer codes, group enumeration, triviality,
//!   the canonical generator form, and random code generation.
//! - [`catalog`]: the built-in named codes (`five_qubit`, `steane`, `xx`).
//! - [`engine`]: the distillation map itself, a dense-matrix oracle used to
//!   cross-check it, product-ensemble weights, and iterated rounds.
//! - [`witness`]: the octahedron-interior certificate and `epsilon_bisect`.
//! - [`scan`]: fidelity curves, threshold search, and octant region scans.
//!
//! ```
//! use msdistill_core::engine::distill;
//! use msdistill_core::states::{t_axis, BlochState};
//!
//! let code = msdistill_core::codes::catalog::by_name("five_qubit").unwrap();
//! let input = BlochState::new(0.9, t_axis()).unwrap();
//! let out = distill(&code, &input).unwrap();
//! assert!(out.out_fidelity > 0.94);
//! ```
//!
//! The default build uses `std`; disable default features and enable
//! `libm` for `no_std` targets (allocation is still required).

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

#[cfg(all(not(feature = "std"), not(feature = "libm")))]
compile_error!("msdistill-core needs either the `std` or the `libm` feature for float math");

pub mod codes;
pub mod engine;
pub mod pauli;
pub mod scan;
pub mod states;
pub mod witness;

pub use codes::{CanonicalForm, CodeError, StabilizerCode};
pub use engine::{DistillationOutcome, EngineError};
pub use pauli::{Letter, PauliString};
pub use scan::{
    fidelity_curve, find_threshold, region_scan, CodeRegionResult, CurvePoint, RegionSample,
    ThresholdFinding,
};
pub use states::{BlochState, Location, OctahedronVerdict, Vec3};
pub use witness::{EpsilonResult, WitnessError, WitnessReport};

/// Float intrinsics routed through `std` or `libm` depending on features.
pub(crate) mod math {
    #[cfg(feature = "std")]
    #[inline]
    pub fn sqrt(x: f64) -> f64 {
        x.sqrt()
    }

    #[cfg(all(not(feature = "std"), feature = "libm"))]
    #[inline]
    pub fn sqrt(x: f64) -> f64 {
        libm::sqrt(x)
    }

    #[cfg(feature = "std")]
    #[inline]
    pub fn sin(x: f64) -> f64 {
        x.sin()
    }

    #[cfg(all(not(feature = "std"), feature = "libm"))]
    #[inline]
    pub fn sin(x: f64) -> f64 {
        libm::sin(x)
    }

    #[cfg(feature = "std")]
    #[inline]
    pub fn cos(x: f64) -> f64 {
        x.cos()
    }

    #[cfg(all(not(feature = "std"), feature = "libm"))]
    #[inline]
    pub fn cos(x: f64) -> f64 {
        libm::cos(x)
    }

    /// `abs` via bit clearing so it works identically with and without std.
    #[inline]
    pub fn abs(x: f64) -> f64 {
        f64::from_bits(x.to_bits() & !(1u64 << 63))
    }
}
