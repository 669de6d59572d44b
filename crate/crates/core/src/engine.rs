//! The distillation map itself: exact postselected output of one protocol
//! round on n i.i.d. copies of a single-qubit state.
//!
//! The primary path ([`distill`]) evaluates four sums of product-state
//! expectations over the 2^{n−1} stabilizer group elements — one sum for the
//! identity coset (the success probability) and one per logical operator
//! (the output Bloch components). [`dense_oracle`] recomputes the same
//! quantities from explicit 2^n × 2^n matrices and exists purely as an
//! independent cross-check; it shares no group enumeration or Pauli product
//! code with the primary path. [`ensemble_weights`] expands the input as a
//! mixture of pure product stabilizer states and reports how much of each
//! survives the projection, and [`iterate`] chains rounds with a re-twirl
//! in between.

mod dense;

pub use dense::{dense_oracle, DENSE_ORACLE_CAP};

use alloc::vec;
use alloc::vec::Vec;

use crate::codes::{StabilizerCode, GROUP_ENUM_CAP};
use crate::pauli::{Letter, PauliString};
use crate::states::{
    dot, norm1, norm2, octahedron_test, scale, Axis, BlochState, OctahedronVerdict, StateError,
    Vec3,
};

/// Success probabilities at or below this are reported as a failure to
/// postselect rather than as a (numerically meaningless) output state.
pub const SUCCESS_FLOOR: f64 = 1e-12;

/// ℓ1 tolerance used for the octahedron verdict attached to each outcome.
pub const DEFAULT_OCTAHEDRON_TOL: f64 = 1e-9;

/// Qubit cap for the 3^n ensemble expansion.
pub const ENSEMBLE_CAP: usize = 12;

/// Errors from the distillation engine.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum EngineError {
    /// The projection annihilates the input: postselection never succeeds.
    #[error("postselection success probability is numerically zero")]
    ZeroSuccess,
    /// The requested operation enumerates too large a set for this code.
    #[error("code too large for this operation: n = {n}, cap = {cap}")]
    TooLarge { n: usize, cap: usize },
    /// The ensemble expansion needs an axis in the closed positive octant.
    #[error("ensemble expansion requires an axis with nonnegative components")]
    NegativeAxis,
    #[error(transparent)]
    State(#[from] StateError),
}

/// Result of one postselected round, decoded to a single qubit.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct DistillationOutcome {
    /// Probability that every stabilizer measurement returns +1.
    pub success_prob: f64,
    /// Output Bloch vector (components read off the X/Y/Z logicals).
    pub out_bloch: Vec3,
    /// Fidelity of the output with respect to the input's axis direction.
    pub out_fidelity: f64,
    /// Position of `out_bloch` relative to the stabilizer octahedron.
    pub verdict: OctahedronVerdict,
}

impl DistillationOutcome {
    pub(crate) fn assemble(success_prob: f64, out_bloch: Vec3, target_axis: Vec3) -> Self {
        debug_assert!(norm2(out_bloch) <= 1.0 + 1e-10);
        DistillationOutcome {
            success_prob,
            out_bloch,
            out_fidelity: (1.0 + dot(out_bloch, target_axis)) / 2.0,
            verdict: octahedron_test(out_bloch, DEFAULT_OCTAHEDRON_TOL),
        }
    }
}

/// One term of the product-stabilizer-state expansion of the input.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct EnsembleTerm {
    /// Letter vector naming the pure product state (one of X/Y/Z per qubit).
    pub g: Vec<Letter>,
    /// Weight of the term in the input mixture.
    pub weight: f64,
    /// Un-normalized weight surviving the codespace projection.
    pub projected_weight: f64,
}

/// Outcome sequence of [`iterate`] plus the state it would feed forward.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct IterationRun {
    /// Per-round outcomes, in order.
    pub rounds: Vec<DistillationOutcome>,
    /// Re-twirled output of the last round (the input if `rounds` is empty).
    pub final_state: BlochState,
}

/// Deterministic pairwise floating-point accumulator (binary counter of
/// partial sums), so results are bit-identical for a given visit order and
/// rounding error grows like log of the term count.
#[derive(Debug, Clone, Default)]
pub(crate) struct PairwiseSum {
    levels: Vec<Option<f64>>,
}

impl PairwiseSum {
    pub(crate) fn new() -> Self {
        PairwiseSum::default()
    }

    pub(crate) fn add(&mut self, mut value: f64) {
        for slot in self.levels.iter_mut() {
            match slot.take() {
                None => {
                    *slot = Some(value);
                    return;
                }
                Some(stored) => value = stored + value,
            }
        }
        self.levels.push(Some(value));
    }

    pub(crate) fn total(&self) -> f64 {
        let mut acc = 0.0;
        for slot in self.levels.iter().flatten() {
            acc += slot;
        }
        acc
    }
}

/// Raw expectation sums over the stabilizer group for the four logical
/// cosets `{1, X_L, Y_L, Z_L}`, in that order:
/// `sums[c] = Σ_{s ∈ S} ⟨L_c · s⟩` under the n-fold product of the input.
///
/// Everything [`distill`] reports derives from these four numbers; they are
/// exposed separately because each one is a polynomial of degree ≤ n in
/// `2f − 1` at fixed axis, a structure the test suite exploits.
pub fn coset_sums(code: &StabilizerCode, input: &BlochState) -> Result<[f64; 4], EngineError> {
    let n = code.num_qubits();
    if n > GROUP_ENUM_CAP {
        return Err(EngineError::TooLarge {
            n,
            cap: GROUP_ENUM_CAP,
        });
    }
    let bloch = vec![input.bloch_vector(); n];
    // Four parallel Gray-code walks through the group, one per coset
    // representative; step k flips the same generator in each.
    let mut chains = [
        PauliString::identity(n),
        *code.logical_x(),
        code.logical_y(),
        *code.logical_z(),
    ];
    let mut sums = [
        PairwiseSum::new(),
        PairwiseSum::new(),
        PairwiseSum::new(),
        PairwiseSum::new(),
    ];
    let count: u64 = 1 << (n - 1);
    for index in 0..count {
        if index > 0 {
            let gen = code.generators()[index.trailing_zeros() as usize];
            for chain in chains.iter_mut() {
                *chain = *chain * gen;
            }
        }
        for (chain, sum) in chains.iter().zip(sums.iter_mut()) {
            sum.add(chain.expectation_product_state(&bloch));
        }
    }
    Ok([
        sums[0].total(),
        sums[1].total(),
        sums[2].total(),
        sums[3].total(),
    ])
}

/// One exact distillation round: project n i.i.d. copies of `input` onto the
/// codespace, postselect, and decode the logical qubit.
///
/// Fails with [`EngineError::ZeroSuccess`] when the success probability is
/// at or below [`SUCCESS_FLOOR`].
pub fn distill(
    code: &StabilizerCode,
    input: &BlochState,
) -> Result<DistillationOutcome, EngineError> {
    let sums = coset_sums(code, input)?;
    let group_scale = 1.0 / (1u64 << (code.num_qubits() - 1)) as f64;
    let success = sums[0] * group_scale;
    if success <= SUCCESS_FLOOR {
        return Err(EngineError::ZeroSuccess);
    }
    let out_bloch = [sums[1] / sums[0], sums[2] / sums[0], sums[3] / sums[0]];
    Ok(DistillationOutcome::assemble(
        success.clamp(0.0, 1.0),
        out_bloch,
        input.axis(),
    ))
}

/// Expand the surface state along `axis` as a mixture of 3^n pure product
/// stabilizer states and report each term's weight before and after the
/// codespace projection.
///
/// `axis` must be a nonzero vector in the closed positive octant — the
/// expansion with nonnegative weights only exists there. The projected
/// weights sum to the success probability of [`distill`] at the surface
/// fidelity of `axis`.
pub fn ensemble_weights(
    code: &StabilizerCode,
    axis: Vec3,
) -> Result<Vec<EnsembleTerm>, EngineError> {
    let n = code.num_qubits();
    if n > ENSEMBLE_CAP {
        return Err(EngineError::TooLarge {
            n,
            cap: ENSEMBLE_CAP,
        });
    }
    if axis.iter().any(|&c| c < 0.0) {
        return Err(EngineError::NegativeAxis);
    }
    let l2 = norm2(axis);
    if l2 < 1e-12 {
        return Err(EngineError::State(StateError::ZeroAxis));
    }
    let unit = scale(axis, 1.0 / l2);
    let l1 = norm1(unit);
    // Per-letter weight of the single-qubit decomposition.
    let letter_weight = [unit[0] / l1, unit[1] / l1, unit[2] / l1];

    // The group, reduced to bit planes and signs, enumerated once.
    let group: Vec<(u64, u64, bool)> = code
        .group_elements()
        .expect("ensemble cap is below the group enumeration cap")
        .map(|s| {
            let (x, z) = s.bits();
            (x, z, s.phase_exponent() == 2)
        })
        .collect();
    let group_scale = 1.0 / group.len() as f64;

    const LETTERS: [Letter; 3] = [Letter::X, Letter::Y, Letter::Z];
    let term_count = 3usize.pow(n as u32);
    let mut terms = Vec::with_capacity(term_count);
    let mut digits = vec![0usize; n];
    for _ in 0..term_count {
        let g: Vec<Letter> = digits.iter().map(|&d| LETTERS[d]).collect();
        let mut weight = 1.0;
        let (mut gx, mut gz) = (0u64, 0u64);
        for (j, letter) in g.iter().enumerate() {
            weight *= letter_weight[letter.bloch_index()];
            let (xb, zb) = letter.xz();
            gx |= (xb as u64) << j;
            gz |= (zb as u64) << j;
        }
        // A group element has a nonzero expectation in the product state
        // named by g exactly when each of its supported letters matches g;
        // the expectation is then its sign. One negative match kills the
        // whole term (the projector contains a factor orthogonal to it).
        let mut matches = 0u64;
        let mut annihilated = false;
        for &(sx, sz, negative) in &group {
            let support = sx | sz;
            if sx == support & gx && sz == support & gz {
                if negative {
                    annihilated = true;
                    break;
                }
                matches += 1;
            }
        }
        let projected_weight = if annihilated {
            0.0
        } else {
            weight * matches as f64 * group_scale
        };
        terms.push(EnsembleTerm {
            g,
            weight,
            projected_weight,
        });
        for d in digits.iter_mut() {
            *d += 1;
            if *d < 3 {
                break;
            }
            *d = 0;
        }
    }
    Ok(terms)
}

/// Run `rounds` distillation rounds, re-twirling each output onto `retwirl`
/// before feeding it forward. Returns every round's outcome plus the state
/// the next round would receive.
pub fn iterate(
    code: &StabilizerCode,
    input: &BlochState,
    rounds: usize,
    retwirl: &Axis,
) -> Result<IterationRun, EngineError> {
    let mut state = *input;
    let mut outcomes = Vec::with_capacity(rounds);
    for _ in 0..rounds {
        let outcome = distill(code, &state)?;
        let twirled = retwirl.retwirl(outcome.out_bloch)?;
        state = BlochState::from_bloch_vector(twirled)?;
        outcomes.push(outcome);
    }
    Ok(IterationRun {
        rounds: outcomes,
        final_state: state,
    })
}
