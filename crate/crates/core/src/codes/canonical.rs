//! Canonical-form reduction of a code's generator matrix.
//!
//! Viewing the generators as an (n−1)×n matrix of Pauli letters, row
//! multiplication and qubit relabeling bring the left (n−1)×(n−1) block to
//! a form where column i carries a non-identity letter A_i on the diagonal
//! and only I or a second letter B_i elsewhere. The leftover n-th column
//! holds the letters T_{j,n} that drive the witness construction; for
//! non-trivial codes the reduction guarantees T_{n−1,n} ≠ I, and that
//! letter is named A_n.

use super::{CodeError, StabilizerCode};
use crate::pauli::{Letter, PauliString};
use alloc::vec;
use alloc::vec::Vec;

/// The reduced generator matrix and its letter bookkeeping.
///
/// Row/column indices here are *display* positions after relabeling;
/// `qubit_order` maps a display position back to the original qubit, and
/// the rows remain full Pauli strings over the original qubit labels.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct CanonicalForm {
    n: usize,
    qubit_order: Vec<usize>,
    rows: Vec<PauliString>,
    a: Vec<Letter>,
    b: Vec<Letter>,
    c: Vec<Letter>,
    gamma: Vec<bool>,
    alpha: Vec<bool>,
    beta: Vec<Vec<bool>>,
    t_col: Vec<Letter>,
}

impl CanonicalForm {
    #[inline]
    pub fn num_qubits(&self) -> usize {
        self.n
    }

    /// Display position → original qubit label.
    pub fn qubit_order(&self) -> &[usize] {
        &self.qubit_order
    }

    /// The transformed generators (same group as the input code), still
    /// indexed by original qubit labels.
    pub fn rows(&self) -> &[PauliString] {
        &self.rows
    }

    /// Diagonal letters A_i for display columns 0..n−2.
    pub fn a(&self) -> &[Letter] {
        &self.a
    }

    /// Companion letters B_i (the only non-identity letters allowed off
    /// the diagonal in column i).
    pub fn b(&self) -> &[Letter] {
        &self.b
    }

    /// Third letters C_i with `A_i·B_i = i(−1)^{γ_i}·C_i`.
    pub fn c(&self) -> &[Letter] {
        &self.c
    }

    /// Phase bits γ_i of the letter products.
    pub fn gamma(&self) -> &[bool] {
        &self.gamma
    }

    /// Row sign bits: row j carries (−1)^{α_j}.
    pub fn alpha(&self) -> &[bool] {
        &self.alpha
    }

    /// `beta[j][k]`: row j has B_k (rather than I) at display column k ≠ j.
    pub fn beta(&self) -> &[Vec<bool>] {
        &self.beta
    }

    /// Letters in the leftover column: `t_col[j] = T_{j,n}`.
    pub fn t_col(&self) -> &[Letter] {
        &self.t_col
    }

    /// The distinguished letter `A_n = T_{n−1,n}`, non-identity by
    /// construction.
    pub fn a_n(&self) -> Letter {
        self.t_col[self.n - 2]
    }

    /// Letter at (row, display column), going through the relabeling.
    pub fn entry(&self, row: usize, display_col: usize) -> Letter {
        self.rows[row].letter(self.qubit_order[display_col])
    }
}

/// `A·B = i(−1)^γ·C` for distinct non-identity letters: returns `(C, γ)`.
pub(crate) fn companion(a: Letter, b: Letter) -> (Letter, bool) {
    debug_assert!(a != Letter::I && b != Letter::I && a != b);
    let prod = PauliString::single(1, 0, a) * PauliString::single(1, 0, b);
    let c = prod.letter(0);
    match prod.phase_exponent() {
        1 => (c, false),
        3 => (c, true),
        _ => unreachable!("distinct non-identity letters multiply to ±i times the third"),
    }
}

impl StabilizerCode {
    /// Reduce the generator matrix to canonical form.
    ///
    /// Deterministic choices: the pivot for column d is the first unused
    /// row with a non-identity letter there (swapping in a later column,
    /// or as a last resort the leftover column, when the current one is
    /// empty); B_d is the first letter in the column distinct from I and
    /// the diagonal, with the successor of A_d in cyclic X→Y→Z order as
    /// the fallback for constant columns. Trivial codes are rejected.
    pub fn canonical_form(&self) -> Result<CanonicalForm, CodeError> {
        if self.is_trivial() {
            return Err(CodeError::Trivial);
        }
        let n = self.num_qubits();
        let m = n - 1;
        let mut rows: Vec<PauliString> = self.generators().to_vec();
        let mut col: Vec<usize> = (0..n).collect();

        for d in 0..m {
            if (d..m).all(|r| rows[r].letter(col[d]) == Letter::I) {
                // Swap in the first later column with support among the
                // unused rows; the leftover column can only be needed at
                // the last stage (two all-identity-restricted rows would
                // have to be equal).
                let c = (d + 1..m)
                    .chain([n - 1])
                    .find(|&c| (d..m).any(|r| rows[r].letter(col[c]) != Letter::I))
                    .ok_or(CodeError::Canonicalization)?;
                col.swap(d, c);
            }
            let pivot = (d..m)
                .find(|&r| rows[r].letter(col[d]) != Letter::I)
                .ok_or(CodeError::Canonicalization)?;
            rows.swap(d, pivot);
            let a_d = rows[d].letter(col[d]);
            let b_d = (0..m)
                .filter_map(|r| {
                    let w = rows[r].letter(col[d]);
                    (w != Letter::I && w != a_d).then_some(w)
                })
                .next()
                .unwrap_or_else(|| a_d.successor());
            // Clear: a row holding the diagonal letter or the third letter
            // picks up the pivot; entries land in {I, B_d}. This can flip
            // an *earlier* diagonal between its A and C (never to I or B),
            // which the final bookkeeping pass absorbs.
            for r in 0..m {
                if r != d {
                    let w = rows[r].letter(col[d]);
                    if w != Letter::I && w != b_d {
                        rows[r] = rows[r] * rows[d];
                    }
                }
            }
        }

        // The witness needs T_{n−1,n} ≠ I; restore it by a simultaneous
        // row/column swap, which preserves the canonical block structure.
        if rows[m - 1].letter(col[n - 1]) == Letter::I {
            let jstar = (0..m)
                .rev()
                .find(|&j| rows[j].letter(col[n - 1]) != Letter::I)
                .ok_or(CodeError::Canonicalization)?;
            rows.swap(jstar, m - 1);
            col.swap(jstar, m - 1);
        }

        // Bookkeeping pass over the settled rows.
        let mut a = Vec::with_capacity(m);
        let mut b = Vec::with_capacity(m);
        let mut c = Vec::with_capacity(m);
        let mut gamma = Vec::with_capacity(m);
        for i in 0..m {
            let a_i = rows[i].letter(col[i]);
            if a_i == Letter::I {
                return Err(CodeError::Canonicalization);
            }
            let b_i = (0..m)
                .filter(|&r| r != i)
                .filter_map(|r| {
                    let w = rows[r].letter(col[i]);
                    (w != Letter::I).then_some(w)
                })
                .next()
                .unwrap_or_else(|| a_i.successor());
            if b_i == a_i {
                return Err(CodeError::Canonicalization);
            }
            let (c_i, gamma_i) = companion(a_i, b_i);
            a.push(a_i);
            b.push(b_i);
            c.push(c_i);
            gamma.push(gamma_i);
        }
        let mut alpha = Vec::with_capacity(m);
        let mut beta = vec![vec![false; m]; m];
        let mut t_col = Vec::with_capacity(m);
        for j in 0..m {
            match rows[j].phase_exponent() {
                0 => alpha.push(false),
                2 => alpha.push(true),
                _ => return Err(CodeError::Canonicalization),
            }
            t_col.push(rows[j].letter(col[n - 1]));
            for (k, &bk) in b.iter().enumerate() {
                if k != j {
                    let w = rows[j].letter(col[k]);
                    if w == bk {
                        beta[j][k] = true;
                    } else if w != Letter::I {
                        return Err(CodeError::Canonicalization);
                    }
                }
            }
        }
        if t_col[m - 1] == Letter::I {
            return Err(CodeError::Canonicalization);
        }

        Ok(CanonicalForm { n, qubit_order: col, rows, a, b, c, gamma, alpha, beta, t_col })
    }
}
