//! Dense-matrix re-computation of a distillation round.
//!
//! Everything here works on explicit 2^n × 2^n complex matrices: the
//! codespace projector is accumulated as a product of (1 + g)/2 factors
//! over the generators, the input is a literal n-fold Kronecker power, and
//! outputs are traces. No stabilizer-group enumeration, Pauli-product
//! phase bookkeeping, or expectation shortcuts are shared with
//! [`distill`](super::distill) — that independence is the point.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::codes::StabilizerCode;
use crate::pauli::{Letter, PauliString};
use crate::states::BlochState;

use super::{DistillationOutcome, EngineError, SUCCESS_FLOOR};

/// Qubit cap for the dense path (2^n × 2^n matrices).
pub const DENSE_ORACLE_CAP: usize = 12;

/// Row-major square complex matrix.
#[derive(Clone)]
struct CMat {
    dim: usize,
    data: Vec<Complex64>,
}

impl CMat {
    fn zeros(dim: usize) -> Self {
        CMat {
            dim,
            data: vec![Complex64::ZERO; dim * dim],
        }
    }

    fn identity(dim: usize) -> Self {
        let mut m = CMat::zeros(dim);
        for k in 0..dim {
            m.data[k * dim + k] = Complex64::ONE;
        }
        m
    }

    fn scalar_one() -> Self {
        CMat {
            dim: 1,
            data: vec![Complex64::ONE],
        }
    }

    fn mul(&self, rhs: &CMat) -> CMat {
        assert_eq!(self.dim, rhs.dim);
        let d = self.dim;
        let mut out = CMat::zeros(d);
        for i in 0..d {
            for k in 0..d {
                let a = self.data[i * d + k];
                if a == Complex64::ZERO {
                    continue;
                }
                let row = &rhs.data[k * d..(k + 1) * d];
                let dst = &mut out.data[i * d..(i + 1) * d];
                for (o, &b) in dst.iter_mut().zip(row) {
                    *o += a * b;
                }
            }
        }
        out
    }

    fn kron(&self, rhs: &CMat) -> CMat {
        let (da, db) = (self.dim, rhs.dim);
        let d = da * db;
        let mut out = CMat::zeros(d);
        for ia in 0..da {
            for ja in 0..da {
                let a = self.data[ia * da + ja];
                if a == Complex64::ZERO {
                    continue;
                }
                for ib in 0..db {
                    for jb in 0..db {
                        out.data[(ia * db + ib) * d + (ja * db + jb)] =
                            a * rhs.data[ib * db + jb];
                    }
                }
            }
        }
        out
    }

    fn scale(&mut self, s: Complex64) {
        for v in self.data.iter_mut() {
            *v *= s;
        }
    }

    fn trace(&self) -> Complex64 {
        (0..self.dim).map(|k| self.data[k * self.dim + k]).sum()
    }

    /// `tr(self · rhs)` without forming the product.
    fn trace_product(&self, rhs: &CMat) -> Complex64 {
        assert_eq!(self.dim, rhs.dim);
        let d = self.dim;
        let mut acc = Complex64::ZERO;
        for i in 0..d {
            for j in 0..d {
                acc += self.data[i * d + j] * rhs.data[j * d + i];
            }
        }
        acc
    }
}

fn letter_matrix(w: Letter) -> CMat {
    let i = Complex64::i();
    let one = Complex64::ONE;
    let zero = Complex64::ZERO;
    let data = match w {
        Letter::I => [one, zero, zero, one],
        Letter::X => [zero, one, one, zero],
        Letter::Y => [zero, -i, i, zero],
        Letter::Z => [one, zero, zero, -one],
    };
    CMat {
        dim: 2,
        data: data.to_vec(),
    }
}

/// Full matrix of a Pauli string; qubit 0 is the leftmost (most significant)
/// Kronecker factor.
fn pauli_matrix(p: &PauliString) -> CMat {
    let mut m = CMat::scalar_one();
    for j in 0..p.num_qubits() {
        m = m.kron(&letter_matrix(p.letter(j)));
    }
    let phase = [
        Complex64::ONE,
        Complex64::i(),
        -Complex64::ONE,
        -Complex64::i(),
    ][p.phase_exponent() as usize];
    m.scale(phase);
    m
}

/// Same contract as [`distill`](super::distill), recomputed with dense
/// matrices: the post-measurement state `P ρ P` is formed explicitly, the
/// success probability is its trace, and the output Bloch components are
/// traces against explicit logical-operator matrices.
pub fn dense_oracle(
    code: &StabilizerCode,
    input: &BlochState,
) -> Result<DistillationOutcome, EngineError> {
    let n = code.num_qubits();
    if n > DENSE_ORACLE_CAP {
        return Err(EngineError::TooLarge {
            n,
            cap: DENSE_ORACLE_CAP,
        });
    }
    let dim = 1usize << n;

    let mut projector = CMat::identity(dim);
    for gen in code.generators() {
        let mut factor = pauli_matrix(gen);
        for k in 0..dim {
            factor.data[k * dim + k] += Complex64::ONE;
        }
        factor.scale(Complex64::new(0.5, 0.0));
        projector = projector.mul(&factor);
    }

    let r = input.bloch_vector();
    let single = {
        let mut m = CMat::identity(2);
        let x = letter_matrix(Letter::X);
        let y = letter_matrix(Letter::Y);
        let z = letter_matrix(Letter::Z);
        for k in 0..4 {
            m.data[k] += r[0] * x.data[k] + r[1] * y.data[k] + r[2] * z.data[k];
        }
        m.scale(Complex64::new(0.5, 0.0));
        m
    };
    let mut rho = CMat::scalar_one();
    for _ in 0..n {
        rho = rho.kron(&single);
    }

    let post = projector.mul(&rho).mul(&projector);
    let success = post.trace().re;
    if success <= SUCCESS_FLOOR {
        return Err(EngineError::ZeroSuccess);
    }

    let m_x = pauli_matrix(code.logical_x());
    let m_z = pauli_matrix(code.logical_z());
    let mut m_y = m_x.mul(&m_z);
    m_y.scale(Complex64::i());
    let out_bloch = [
        post.trace_product(&m_x).re / success,
        post.trace_product(&m_y).re / success,
        post.trace_product(&m_z).re / success,
    ];
    Ok(DistillationOutcome::assemble(
        success.clamp(0.0, 1.0),
        out_bloch,
        input.axis(),
    ))
}
