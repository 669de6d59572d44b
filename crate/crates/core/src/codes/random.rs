//! Random code generation for test suites: commuting independent
//! generators sampled from the running symplectic null space, with
//! rejection only for the rare degenerate draws.

use super::StabilizerCode;
use crate::pauli::PauliString;
use alloc::vec::Vec;
use rand::Rng;

/// Draw a uniformly random valid [[n,1]] code (possibly trivial):
/// generators are built one at a time by sampling random elements of the
/// null space of the symplectic constraints imposed by the rows so far,
/// rejecting draws that land in the span of the accepted rows. Generator
/// signs are fair coin flips; independent rows can never multiply to −I,
/// so no further rejection is needed.
pub fn random_code<R: Rng + ?Sized>(n: usize, rng: &mut R) -> StabilizerCode {
    let generators = random_commuting_set(n, n - 1, rng);
    StabilizerCode::new(n, generators).expect("construction yields a valid code")
}

/// Like [`random_code`], rejecting trivial draws.
pub fn random_nontrivial_code<R: Rng + ?Sized>(n: usize, rng: &mut R) -> StabilizerCode {
    assert!(n >= 2, "every 1-qubit code is trivial");
    loop {
        let code = random_code(n, rng);
        if !code.is_trivial() {
            return code;
        }
    }
}

/// A random trivial code: a random stabilizer *state* on n−1 qubits with a
/// randomly placed untouched qubit carrying the logical.
pub fn random_trivial_code<R: Rng + ?Sized>(n: usize, rng: &mut R) -> StabilizerCode {
    assert!(n >= 2, "need at least one stabilized qubit");
    let free = rng.gen_range(0..n);
    let qubits: Vec<usize> = (0..n).filter(|&q| q != free).collect();
    let small = random_commuting_set(n - 1, n - 1, rng);
    let generators: Vec<PauliString> = small
        .iter()
        .map(|g| {
            let mut big = PauliString::identity(n);
            if g.phase_exponent() == 2 {
                big = big.negated();
            }
            for (j, &q) in qubits.iter().enumerate() {
                big.set_letter(q, g.letter(j));
            }
            big
        })
        .collect();
    let code = StabilizerCode::new(n, generators).expect("embedding preserves validity");
    debug_assert!(code.is_trivial());
    code
}

/// `count` independent pairwise-commuting Hermitian strings on `n` qubits.
/// `count` may be at most `n` (a full stabilizer state).
fn random_commuting_set<R: Rng + ?Sized>(n: usize, count: usize, rng: &mut R) -> Vec<PauliString> {
    assert!(count <= n);
    assert!(n <= super::GROUP_ENUM_CAP, "random codes are a test-scale tool");
    let mask: u64 = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut accepted: Vec<PauliString> = Vec::with_capacity(count);
    while accepted.len() < count {
        // Null space of the symplectic constraints of the accepted rows;
        // its dimension 2n − k exceeds the accepted span's k, so a fresh
        // draw escapes the span with probability at least 1/2.
        let basis = symplectic_nullspace(n, &accepted);
        let echelon = super::Echelon::build(&accepted).expect("accepted rows stay independent");
        let candidate = loop {
            let mut v: u128 = 0;
            for &b in &basis {
                if rng.gen::<bool>() {
                    v ^= b;
                }
            }
            let x = (v & mask as u128) as u64;
            let z = ((v >> n) & mask as u128) as u64;
            if x == 0 && z == 0 {
                continue;
            }
            let sign = if rng.gen::<bool>() { 2 } else { 0 };
            let p = PauliString::from_bits(n, x, z, sign);
            if !echelon.reduces_to_identity_letters(&p) {
                break p;
            }
        };
        accepted.push(candidate);
    }
    accepted
}

/// Basis of `{v : parity(row·v) = 0 for all constraint rows}` in the
/// x|(z<<n) packing.
fn symplectic_nullspace(n: usize, rows: &[PauliString]) -> Vec<u128> {
    let total_bits = 2 * n;
    let mut mat: Vec<u128> = rows
        .iter()
        .map(|g| {
            let (x, z) = g.bits();
            (z as u128) | ((x as u128) << n)
        })
        .collect();
    let mut pivot_cols: Vec<usize> = Vec::new();
    let mut rank = 0;
    for colb in 0..total_bits {
        if let Some(sel) = (rank..mat.len()).find(|&i| mat[i] >> colb & 1 == 1) {
            mat.swap(rank, sel);
            for i in 0..mat.len() {
                if i != rank && mat[i] >> colb & 1 == 1 {
                    mat[i] ^= mat[rank];
                }
            }
            pivot_cols.push(colb);
            rank += 1;
        }
    }
    let mut basis = Vec::with_capacity(total_bits - rank);
    for colb in 0..total_bits {
        if pivot_cols.contains(&colb) {
            continue;
        }
        let mut v: u128 = 1 << colb;
        for (ri, &pc) in pivot_cols.iter().enumerate() {
            if mat[ri] >> colb & 1 == 1 {
                v |= 1 << pc;
            }
        }
        basis.push(v);
    }
    basis
}
