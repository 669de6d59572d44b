//! Property-based checks of the algebraic laws the crate depends on.

use msdistill_core::codes::{random_code, random_nontrivial_code};
use msdistill_core::engine::{dense_oracle, distill, EngineError};
use msdistill_core::pauli::{Letter, PauliString};
use msdistill_core::states::{
    clifford_orbit, octahedral_rotations, octahedron_test, surface_fidelity, twirl_h, twirl_t,
    BlochState, Location,
};
use msdistill_core::witness::build_witness;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn arb_letter() -> impl Strategy<Value = Letter> {
    prop_oneof![
        Just(Letter::I),
        Just(Letter::X),
        Just(Letter::Y),
        Just(Letter::Z),
    ]
}

fn arb_pauli(n: usize) -> impl Strategy<Value = PauliString> {
    (prop::collection::vec(arb_letter(), n), any::<bool>()).prop_map(|(letters, neg)| {
        let p = PauliString::from_letters(&letters).unwrap();
        if neg {
            p.negated()
        } else {
            p
        }
    })
}

fn arb_vec3() -> impl Strategy<Value = [f64; 3]> {
    [-1.0..1.0f64, -1.0..1.0f64, -1.0..1.0f64]
}

fn l1(r: [f64; 3]) -> f64 {
    r.iter().map(|c| c.abs()).sum()
}

fn l2(r: [f64; 3]) -> f64 {
    r.iter().map(|c| c * c).sum::<f64>().sqrt()
}

proptest! {
    #[test]
    fn pauli_product_is_associative(
        p in arb_pauli(5),
        q in arb_pauli(5),
        r in arb_pauli(5),
    ) {
        prop_assert_eq!((p * q) * r, p * (q * r));
    }

    #[test]
    fn product_order_flips_sign_exactly_on_anticommutation(
        p in arb_pauli(5),
        q in arb_pauli(5),
    ) {
        if p.commutes_with(&q) {
            prop_assert_eq!(p * q, q * p);
        } else {
            prop_assert_eq!(p * q, (q * p).negated());
        }
    }

    #[test]
    fn twirls_are_idempotent_and_l1_contractive(r in arb_vec3()) {
        for (twirl, axis) in [
            (twirl_t as fn([f64; 3]) -> [f64; 3], [1.0, 1.0, 1.0]),
            (twirl_h, [1.0, 0.0, 1.0]),
        ] {
            let once = twirl(r);
            let twice = twirl(once);
            for c in 0..3 {
                prop_assert!((once[c] - twice[c]).abs() <= 1e-12);
            }
            prop_assert!(l1(once) <= l1(r) + 1e-12);
            // The axis component survives the twirl untouched.
            let dot_before: f64 = (0..3).map(|c| r[c] * axis[c]).sum();
            let dot_after: f64 = (0..3).map(|c| once[c] * axis[c]).sum();
            prop_assert!((dot_before - dot_after).abs() <= 1e-12);
        }
    }

    #[test]
    fn octahedral_rotations_preserve_both_norms(r in arb_vec3()) {
        for rot in octahedral_rotations() {
            let image = [
                rot[0][0] * r[0] + rot[0][1] * r[1] + rot[0][2] * r[2],
                rot[1][0] * r[0] + rot[1][1] * r[1] + rot[1][2] * r[2],
                rot[2][0] * r[0] + rot[2][1] * r[1] + rot[2][2] * r[2],
            ];
            prop_assert!((l1(image) - l1(r)).abs() <= 1e-12);
            prop_assert!((l2(image) - l2(r)).abs() <= 1e-12);
        }
    }

    #[test]
    fn clifford_orbit_preserves_the_octahedron_verdict(r in arb_vec3()) {
        let home = octahedron_test(r, 1e-9);
        for image in clifford_orbit(r) {
            let there = octahedron_test(image, 1e-9);
            prop_assert_eq!(there.location, home.location);
            prop_assert!((there.l1 - home.l1).abs() <= 1e-12);
        }
    }

    #[test]
    fn octahedron_margin_and_location_are_consistent(r in arb_vec3(), tolexp in 3.0..12.0f64) {
        let tol = 10f64.powf(-tolexp);
        let verdict = octahedron_test(r, tol);
        prop_assert!((verdict.margin - (verdict.l1 - 1.0)).abs() <= 1e-15);
        match verdict.location {
            Location::Interior => prop_assert!(verdict.margin < -tol),
            Location::Surface => prop_assert!(verdict.margin.abs() <= tol),
            Location::Exterior => prop_assert!(verdict.margin > tol),
        }
    }

    #[test]
    fn surface_states_sit_exactly_on_the_octahedron(r in arb_vec3()) {
        // Any direction with all components bounded away from zero.
        let axis = [r[0] + 1.5f64.copysign(r[0]), r[1] + 1.5f64.copysign(r[1]), r[2] + 1.5f64.copysign(r[2])];
        let f = surface_fidelity(axis).unwrap();
        let state = BlochState::new(f, axis).unwrap();
        prop_assert!((l1(state.bloch_vector()) - 1.0).abs() <= 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn canonical_rows_regenerate_the_same_group(seed in any::<u64>(), n in 2usize..=5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        // The canonical form is defined for non-trivial codes only.
        let code = random_nontrivial_code(n, &mut rng);
        let cf = code.canonical_form().unwrap();
        let rebuilt = msdistill_core::StabilizerCode::new(n, cf.rows().to_vec()).unwrap();
        let mut original: Vec<String> = code
            .group_elements()
            .unwrap()
            .map(|s| s.to_string())
            .collect();
        let mut transformed: Vec<String> = rebuilt
            .group_elements()
            .unwrap()
            .map(|s| s.to_string())
            .collect();
        original.sort();
        transformed.sort();
        prop_assert_eq!(original, transformed);
    }

    #[test]
    fn success_numerator_is_a_low_degree_polynomial(seed in any::<u64>(), n in 2usize..=5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let code = random_code(n, &mut rng);
        let axis = [0.64, 0.48, 0.6];
        // Exact interpolation through n+1 nodes must predict a held-out
        // point if the numerator has degree ≤ n in t = 2f − 1.
        let nodes: Vec<f64> = (0..=n).map(|k| 0.55 + 0.08 * k as f64 / n as f64).collect();
        let probe = 0.91;
        let numerator = |f: f64| -> Option<f64> {
            let state = BlochState::new(f, axis).unwrap();
            match distill(&code, &state) {
                Ok(out) => Some(out.success_prob),
                Err(EngineError::ZeroSuccess) => Some(0.0),
                Err(e) => panic!("{e}"),
            }
        };
        let values: Vec<f64> = nodes.iter().map(|&f| numerator(f).unwrap()).collect();
        let t = |f: f64| 2.0 * f - 1.0;
        let mut predicted = 0.0;
        for i in 0..nodes.len() {
            let mut weight = values[i];
            for j in 0..nodes.len() {
                if i != j {
                    weight *= (t(probe) - t(nodes[j])) / (t(nodes[i]) - t(nodes[j]));
                }
            }
            predicted += weight;
        }
        prop_assert!((predicted - numerator(probe).unwrap()).abs() <= 1e-9);
    }

    #[test]
    fn group_walk_matches_dense_projection(seed in any::<u64>(), n in 2usize..=4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let code = random_code(n, &mut rng);
        let f = 0.5 + 0.5 * (seed % 97) as f64 / 97.0;
        let axis = [0.3, 0.85, 0.44];
        let state = BlochState::new(f, axis).unwrap();
        match (distill(&code, &state), dense_oracle(&code, &state)) {
            (Ok(a), Ok(b)) => {
                prop_assert!((a.success_prob - b.success_prob).abs() <= 1e-10);
                for c in 0..3 {
                    prop_assert!((a.out_bloch[c] - b.out_bloch[c]).abs() <= 1e-10);
                }
            }
            (Err(EngineError::ZeroSuccess), Err(EngineError::ZeroSuccess)) => {}
            (a, b) => prop_assert!(false, "outcome kinds differ: {a:?} vs {b:?}"),
        }
    }

    #[test]
    fn witness_inclusion_bits_are_forced(seed in any::<u64>(), n in 2usize..=6) {
        // Flipping any single inclusion bit of the witness logical breaks
        // commutation with the canonical rows: the solved bits are unique.
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let code = random_nontrivial_code(n, &mut rng);
        let cf = code.canonical_form().unwrap();
        let report = build_witness(&cf).unwrap();
        prop_assert!(report.cond_orthogonal && report.cond_nonvanishing);
        for j in 0..report.zeta.len() {
            let qubit = cf.qubit_order()[j];
            let mut flipped = report.z_l;
            let replacement = if flipped.letter(qubit) == Letter::I {
                cf.b()[j]
            } else {
                Letter::I
            };
            flipped.set_letter(qubit, replacement);
            let all_commute = cf.rows().iter().all(|row| flipped.commutes_with(row));
            prop_assert!(!all_commute, "flipping bit {j} still commutes");
        }
    }
}
