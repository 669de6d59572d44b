//! Single-qubit Bloch geometry: mixed states, the stabilizer octahedron,
//! twirls, and the Clifford orbit.
//!
//! States are parametrized as fidelity–axis pairs: `ρ(f, â)` has Bloch
//! vector `r = (2f − 1)·â` with `f ∈ [1/2, 1]` and `â` a unit vector, which
//! covers every single-qubit mixed state exactly once. The stabilizer
//! octahedron is the set `|r_x| + |r_y| + |r_z| ≤ 1`; states outside it are
//! the distillation targets, states inside are classical mixtures of the
//! six Pauli eigenstates.

mod hull;

use crate::math;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

/// Plain 3-vector of Bloch components.
pub type Vec3 = [f64; 3];

#[inline]
pub(crate) fn dot(a: Vec3, b: Vec3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

#[inline]
pub(crate) fn norm2(a: Vec3) -> f64 {
    math::sqrt(dot(a, a))
}

/// The l1 norm — the octahedron's natural gauge.
#[inline]
pub(crate) fn norm1(a: Vec3) -> f64 {
    math::abs(a[0]) + math::abs(a[1]) + math::abs(a[2])
}

#[inline]
pub(crate) fn scale(a: Vec3, s: f64) -> Vec3 {
    [a[0] * s, a[1] * s, a[2] * s]
}

/// Errors from state construction and axis handling.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum StateError {
    #[error("axis vector is zero (or too close to it)")]
    ZeroAxis,
    #[error("fidelity {0} outside [1/2, 1]")]
    FidelityRange(f64),
    #[error("Bloch vector norm {0} exceeds 1")]
    VectorTooLong(f64),
    #[error("bad axis spec {0:?}: use T, H, or three comma-separated numbers")]
    BadAxisSpec(String),
}

const F_SLACK: f64 = 1e-12;
const NORM_SLACK: f64 = 1e-9;

/// A single-qubit mixed state `ρ(f, â)` with Bloch vector `(2f − 1)·â`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct BlochState {
    f: f64,
    axis: Vec3,
}

impl BlochState {
    /// Normalizes `axis`; `f` must lie in `[1/2, 1]` (up to 1e-12 slack).
    pub fn new(f: f64, axis: Vec3) -> Result<Self, StateError> {
        if !(0.5 - F_SLACK..=1.0 + F_SLACK).contains(&f) || !f.is_finite() {
            return Err(StateError::FidelityRange(f));
        }
        let n = norm2(axis);
        if n < 1e-12 {
            return Err(StateError::ZeroAxis);
        }
        Ok(BlochState { f: f.clamp(0.5, 1.0), axis: scale(axis, 1.0 / n) })
    }

    /// Recover the fidelity–axis form from a raw Bloch vector (norm ≤ 1,
    /// up to a small slack that is clamped away). The zero vector maps to
    /// the maximally mixed state on the +Z axis by convention.
    pub fn from_bloch_vector(r: Vec3) -> Result<Self, StateError> {
        let n = norm2(r);
        if n > 1.0 + NORM_SLACK {
            return Err(StateError::VectorTooLong(n));
        }
        if n < 1e-15 {
            return Ok(BlochState { f: 0.5, axis: [0.0, 0.0, 1.0] });
        }
        let f = (1.0 + n.min(1.0)) / 2.0;
        Ok(BlochState { f, axis: scale(r, 1.0 / n) })
    }

    #[inline]
    pub fn fidelity(&self) -> f64 {
        self.f
    }

    /// Unit axis vector.
    #[inline]
    pub fn axis(&self) -> Vec3 {
        self.axis
    }

    /// `r = (2f − 1)·â`.
    #[inline]
    pub fn bloch_vector(&self) -> Vec3 {
        scale(self.axis, 2.0 * self.f - 1.0)
    }
}

/// Where a Bloch vector sits relative to the stabilizer octahedron.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Location {
    Interior,
    Surface,
    Exterior,
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Location::Interior => "interior",
            Location::Surface => "surface",
            Location::Exterior => "exterior",
        })
    }
}

/// Result of the octahedron membership test.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct OctahedronVerdict {
    /// `|r_x| + |r_y| + |r_z|`.
    pub l1: f64,
    pub location: Location,
    /// Signed distance `l1 − 1`: negative inside, positive outside.
    pub margin: f64,
}

/// Classify `r` against the octahedron surface `l1 = 1`, with points within
/// `tol` of the surface reported as `Surface`.
pub fn octahedron_test(r: Vec3, tol: f64) -> OctahedronVerdict {
    let l1 = norm1(r);
    let margin = l1 - 1.0;
    let location = if margin < -tol {
        Location::Interior
    } else if margin > tol {
        Location::Exterior
    } else {
        Location::Surface
    };
    OctahedronVerdict { l1, location, margin }
}

/// The fidelity at which the ray along `axis` pierces the octahedron
/// surface: `f^S = (1 + 1/‖â‖₁)/2` for the unit vector `â` along `axis`.
pub fn surface_fidelity(axis: Vec3) -> Result<f64, StateError> {
    let n = norm2(axis);
    if n < 1e-12 {
        return Err(StateError::ZeroAxis);
    }
    Ok((1.0 + n / norm1(axis)) / 2.0)
}

/// Dephase onto the body-diagonal axis: average over the order-3 rotation
/// cycling X → Y → Z, sending `r` to `((x+y+z)/3)·(1, 1, 1)`.
pub fn twirl_t(r: Vec3) -> Vec3 {
    let m = (r[0] + r[1] + r[2]) / 3.0;
    [m, m, m]
}

/// Dephase onto the X+Z edge axis: average with the rotation swapping
/// X ↔ Z and negating Y, sending `r` to `((x+z)/2, 0, (x+z)/2)`.
pub fn twirl_h(r: Vec3) -> Vec3 {
    let m = (r[0] + r[2]) / 2.0;
    [m, 0.0, m]
}

/// Unit vector along the body diagonal, `(1,1,1)/√3`.
pub fn t_axis() -> Vec3 {
    let s = 1.0 / math::sqrt(3.0);
    [s, s, s]
}

/// Unit vector along the X+Z edge direction, `(1,0,1)/√2`.
pub fn h_axis() -> Vec3 {
    let s = 1.0 / math::sqrt(2.0);
    [s, 0.0, s]
}

/// Axis specifier: the two named symmetry axes or an arbitrary direction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Axis {
    T,
    H,
    Custom(Vec3),
}

impl Axis {
    /// The unit vector this axis denotes.
    pub fn unit(&self) -> Result<Vec3, StateError> {
        match self {
            Axis::T => Ok(t_axis()),
            Axis::H => Ok(h_axis()),
            Axis::Custom(v) => {
                let n = norm2(*v);
                if n < 1e-12 {
                    return Err(StateError::ZeroAxis);
                }
                Ok(scale(*v, 1.0 / n))
            }
        }
    }

    /// Project a Bloch vector back onto this axis after a round: the named
    /// axes use their exact dephasing twirls, arbitrary axes the orthogonal
    /// projection `r ↦ (r·â)â`. All three preserve the component of `r`
    /// along the axis exactly.
    pub fn retwirl(&self, r: Vec3) -> Result<Vec3, StateError> {
        match self {
            Axis::T => Ok(twirl_t(r)),
            Axis::H => Ok(twirl_h(r)),
            Axis::Custom(_) => {
                let a = self.unit()?;
                Ok(scale(a, dot(r, a)))
            }
        }
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Axis::T => f.write_str("T"),
            Axis::H => f.write_str("H"),
            Axis::Custom(v) => write!(f, "{},{},{}", v[0], v[1], v[2]),
        }
    }
}

impl FromStr for Axis {
    type Err = StateError;

    /// `T`, `H`, or `x,y,z` with numeric components.
    fn from_str(s: &str) -> Result<Self, StateError> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("t") {
            return Ok(Axis::T);
        }
        if t.eq_ignore_ascii_case("h") {
            return Ok(Axis::H);
        }
        let parts: Vec<&str> = t.split(',').collect();
        if parts.len() != 3 {
            return Err(StateError::BadAxisSpec(String::from(s)));
        }
        let mut v = [0.0; 3];
        for (slot, part) in v.iter_mut().zip(&parts) {
            *slot = part
                .trim()
                .parse::<f64>()
                .map_err(|_| StateError::BadAxisSpec(String::from(s)))?;
        }
        if norm2(v) < 1e-12 {
            return Err(StateError::ZeroAxis);
        }
        Ok(Axis::Custom(v))
    }
}

/// The 24 rotations of the single-qubit Clifford group acting on Bloch
/// space: all signed coordinate permutations with determinant +1, in a
/// fixed deterministic order (permutations lexicographic, then sign
/// patterns ascending).
pub fn octahedral_rotations() -> [[Vec3; 3]; 24] {
    const PERMS: [[usize; 3]; 6] = [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    const PERM_SIGN: [f64; 6] = [1.0, -1.0, -1.0, 1.0, 1.0, -1.0];
    let mut out = [[[0.0; 3]; 3]; 24];
    let mut count = 0;
    for (p, perm) in PERMS.iter().enumerate() {
        for signs in 0..8u32 {
            let s = [
                if signs & 1 == 0 { 1.0 } else { -1.0 },
                if signs & 2 == 0 { 1.0 } else { -1.0 },
                if signs & 4 == 0 { 1.0 } else { -1.0 },
            ];
            if PERM_SIGN[p] * s[0] * s[1] * s[2] != 1.0 {
                continue;
            }
            let mut m = [[0.0; 3]; 3];
            for i in 0..3 {
                m[i][perm[i]] = s[i];
            }
            out[count] = m;
            count += 1;
        }
    }
    debug_assert_eq!(count, 24);
    out
}

#[inline]
pub(crate) fn apply_rotation(m: &[Vec3; 3], r: Vec3) -> Vec3 {
    [dot(m[0], r), dot(m[1], r), dot(m[2], r)]
}

/// Images of `r` under all 24 Clifford rotations (possibly coincident).
pub fn clifford_orbit(r: Vec3) -> [Vec3; 24] {
    let mut out = [[0.0; 3]; 24];
    for (img, m) in out.iter_mut().zip(octahedral_rotations().iter()) {
        *img = apply_rotation(m, r);
    }
    out
}

/// True iff `r_prime` is reachable from `input` without distillation: it
/// lies in the convex hull of the 24 Clifford images of `input`'s Bloch
/// vector together with the six octahedron vertices (the states obtainable
/// by unitaries, mixing, and swapping in stabilizer states).
pub fn not_an_improvement(r_prime: Vec3, input: &BlochState, tol: f64) -> bool {
    let mut points: Vec<Vec3> = Vec::with_capacity(30);
    points.extend_from_slice(&clifford_orbit(input.bloch_vector()));
    for i in 0..3 {
        for s in [1.0, -1.0] {
            let mut v = [0.0; 3];
            v[i] = s;
            points.push(v);
        }
    }
    hull::contains_point(&points, r_prime, tol)
}

#[cfg(test)]
mod tests {
    use super::*;

    const SQ3: f64 = 1.732_050_807_568_877_2;

    #[test]
    fn octahedron_classifies_named_points() {
        // f = 0.85 on the body diagonal: l1 = 0.7·√3 ≈ 1.212 > 1.
        let s = BlochState::new(0.85, [1.0, 1.0, 1.0]).unwrap();
        let v = octahedron_test(s.bloch_vector(), 1e-9);
        assert_eq!(v.location, Location::Exterior);
        assert!((v.l1 - 0.7 * SQ3).abs() < 1e-12);

        // The surface fidelity lands exactly on the face.
        let fs = surface_fidelity([1.0, 1.0, 1.0]).unwrap();
        let s = BlochState::new(fs, [1.0, 1.0, 1.0]).unwrap();
        let v = octahedron_test(s.bloch_vector(), 1e-9);
        assert_eq!(v.location, Location::Surface);
        assert!(v.margin.abs() < 1e-12);

        // A mild edge-direction state sits inside.
        let s = BlochState::new(0.6, [1.0, 0.0, 1.0]).unwrap();
        let v = octahedron_test(s.bloch_vector(), 1e-9);
        assert_eq!(v.location, Location::Interior);
        assert!(v.margin < 0.0);
    }

    #[test]
    fn surface_fidelities_of_symmetry_axes() {
        let ft = surface_fidelity([1.0, 1.0, 1.0]).unwrap();
        assert!((ft - (1.0 + 1.0 / SQ3) / 2.0).abs() < 1e-15);
        assert!((ft - 0.788_675_134_594_812_9).abs() < 1e-12);

        let fh = surface_fidelity([1.0, 0.0, 1.0]).unwrap();
        assert!((fh - (1.0 + 1.0 / core::f64::consts::SQRT_2) / 2.0).abs() < 1e-15);
        assert!((fh - 0.853_553_390_593_273_8).abs() < 1e-12);

        // Face axes need no scaling at all.
        assert!((surface_fidelity([0.0, 0.0, 2.0]).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(surface_fidelity([0.0, 0.0, 0.0]), Err(StateError::ZeroAxis));
    }

    #[test]
    fn twirls_match_hand_values() {
        let t = twirl_t([0.3, 0.0, 0.0]);
        for c in t {
            assert!((c - 0.1).abs() < 1e-15);
        }
        let h = twirl_h([0.3, 0.1, 0.5]);
        assert!((h[0] - 0.4).abs() < 1e-15 && h[1] == 0.0 && (h[2] - 0.4).abs() < 1e-15);
    }

    #[test]
    fn twirls_are_idempotent_and_preserve_axis_component() {
        let r = [0.4, -0.2, 0.3];
        let t1 = twirl_t(r);
        assert_eq!(twirl_t(t1), t1);
        assert!((dot(t1, t_axis()) - dot(r, t_axis())).abs() < 1e-15);
        let h1 = twirl_h(r);
        assert_eq!(twirl_h(h1), h1);
        assert!((dot(h1, h_axis()) - dot(r, h_axis())).abs() < 1e-15);
    }

    #[test]
    fn orbit_of_body_diagonal_has_eight_distinct_images() {
        let orbit = clifford_orbit(t_axis());
        let mut distinct: Vec<Vec3> = Vec::new();
        for img in orbit {
            assert!((norm2(img) - 1.0).abs() < 1e-12);
            if !distinct
                .iter()
                .any(|d| (d[0] - img[0]).abs() + (d[1] - img[1]).abs() + (d[2] - img[2]).abs() < 1e-9)
            {
                distinct.push(img);
            }
        }
        // The eight ±(1,±1,±1)/√3 diagonals.
        assert_eq!(distinct.len(), 8);
    }

    #[test]
    fn orbit_of_zero_is_all_zero() {
        for img in clifford_orbit([0.0, 0.0, 0.0]) {
            assert_eq!(img, [0.0, 0.0, 0.0]);
        }
    }

    #[test]
    fn rotations_have_unit_determinant_and_preserve_l1() {
        let r = [0.2, -0.5, 0.7];
        for m in octahedral_rotations() {
            let det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
                - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
                + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
            assert!((det - 1.0).abs() < 1e-12);
            assert!((norm1(apply_rotation(&m, r)) - norm1(r)).abs() < 1e-12);
        }
    }

    #[test]
    fn reachability_accepts_orbit_images_and_rejects_fidelity_gain() {
        let input = BlochState::new(0.9, [1.0, 1.0, 1.0]).unwrap();
        // Any rotation image is reachable by definition.
        for img in clifford_orbit(input.bloch_vector()).iter().take(5) {
            assert!(not_an_improvement(*img, &input, 1e-9));
        }
        // Mixing toward an octahedron vertex is also reachable.
        let r = input.bloch_vector();
        let mixed = [0.5 * r[0] + 0.5, 0.5 * r[1], 0.5 * r[2]];
        assert!(not_an_improvement(mixed, &input, 1e-9));

        // Moving outward along the same axis is not.
        let better = BlochState::new(0.999, [1.0, 1.0, 1.0]).unwrap();
        assert!(!not_an_improvement(better.bloch_vector(), &input, 1e-9));
        let slightly_better = BlochState::new(0.99 + 1e-4, [1.0, 1.0, 1.0]).unwrap();
        let input99 = BlochState::new(0.99, [1.0, 1.0, 1.0]).unwrap();
        assert!(!not_an_improvement(slightly_better.bloch_vector(), &input99, 1e-9));
    }

    #[test]
    fn bloch_state_constructors_validate() {
        assert_eq!(
            BlochState::new(0.4, [0.0, 0.0, 1.0]),
            Err(StateError::FidelityRange(0.4))
        );
        assert_eq!(BlochState::new(0.7, [0.0; 3]), Err(StateError::ZeroAxis));
        let s = BlochState::new(0.75, [0.0, 0.0, 2.0]).unwrap();
        assert_eq!(s.axis(), [0.0, 0.0, 1.0]);
        assert_eq!(s.bloch_vector(), [0.0, 0.0, 0.5]);

        let round = BlochState::from_bloch_vector([0.0, 0.0, 0.5]).unwrap();
        assert!((round.fidelity() - 0.75).abs() < 1e-15);
        assert!(BlochState::from_bloch_vector([1.5, 0.0, 0.0]).is_err());
        let mixed = BlochState::from_bloch_vector([0.0; 3]).unwrap();
        assert_eq!(mixed.fidelity(), 0.5);
    }

    #[test]
    fn axis_parsing() {
        assert_eq!("T".parse::<Axis>().unwrap(), Axis::T);
        assert_eq!("h".parse::<Axis>().unwrap(), Axis::H);
        match "0.2, 0.5, 0.9".parse::<Axis>().unwrap() {
            Axis::Custom(v) => assert_eq!(v, [0.2, 0.5, 0.9]),
            other => panic!("unexpected {other:?}"),
        }
        assert!("x,y".parse::<Axis>().is_err());
        assert!("1,2".parse::<Axis>().is_err());
        assert_eq!("0,0,0".parse::<Axis>(), Err(StateError::ZeroAxis));

        let t = Axis::T.unit().unwrap();
        assert!((norm2(t) - 1.0).abs() < 1e-15 && (t[0] - t[2]).abs() < 1e-15);
    }

    #[test]
    fn generic_retwirl_projects_onto_axis() {
        let ax = Axis::Custom([3.0, 0.0, 4.0]);
        let r = [1.0, 1.0, 0.0];
        let p = ax.retwirl(r).unwrap();
        // (r·â)â with â = (0.6, 0, 0.8).
        assert!((p[0] - 0.36).abs() < 1e-12 && p[1] == 0.0 && (p[2] - 0.48).abs() < 1e-12);
        // Named axes agree with their dedicated twirls.
        let r = [0.3, 0.1, 0.5];
        let via_enum = Axis::H.retwirl(r).unwrap();
        assert_eq!(via_enum, twirl_h(r));
    }
}
