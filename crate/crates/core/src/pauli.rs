//! Bit-packed Pauli strings with exact phase arithmetic.
//!
//! A [`PauliString`] stores an n-qubit Pauli operator (n ≤ 64) as two machine
//! words — the X-part and Z-part bit masks — plus a global phase exponent
//! `k`, so that the operator equals `i^k · W_1 ⊗ … ⊗ W_n`. Each letter
//! `W_j ∈ {I, X, Y, Z}` is read off its bit pair `(x_j, z_j)`:
//! `(0,0) = I`, `(1,0) = X`, `(1,1) = Y`, `(0,1) = Z`.
//!
//! Strings with `k ∈ {0, 2}` are Hermitian with sign `±1`; `k ∈ {1, 3}`
//! (phases `±i`) arise transiently from products and are rejected where a
//! Hermitian operator is required. All phase bookkeeping is integer-exact.

use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

/// Single-qubit Pauli letter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    I,
    X,
    Y,
    Z,
}

impl Letter {
    /// Letter for a symplectic bit pair.
    #[inline]
    pub fn from_xz(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => Letter::I,
            (true, false) => Letter::X,
            (true, true) => Letter::Y,
            (false, true) => Letter::Z,
        }
    }

    #[inline]
    pub fn xz(self) -> (bool, bool) {
        match self {
            Letter::I => (false, false),
            Letter::X => (true, false),
            Letter::Y => (true, true),
            Letter::Z => (false, true),
        }
    }

    /// Index into the `(I, X, Y, Z)` order; used by the phase table.
    #[inline]
    fn index(self) -> usize {
        match self {
            Letter::I => 0,
            Letter::X => 1,
            Letter::Y => 2,
            Letter::Z => 3,
        }
    }

    /// Bloch-vector component this letter reads out: X → 0, Y → 1, Z → 2.
    ///
    /// Panics on `I`, which has no Bloch component.
    #[inline]
    pub fn bloch_index(self) -> usize {
        debug_assert!(self != Letter::I, "identity letter has no Bloch component");
        self.index() - 1
    }

    /// Successor in the cyclic order X → Y → Z → X. Panics on `I`.
    pub fn successor(self) -> Self {
        match self {
            Letter::X => Letter::Y,
            Letter::Y => Letter::Z,
            Letter::Z => Letter::X,
            Letter::I => panic!("identity letter has no successor"),
        }
    }

    /// The third non-identity letter besides `self` and `other`.
    /// Panics unless `self` and `other` are distinct non-identity letters.
    pub fn third(self, other: Self) -> Self {
        assert!(self != Letter::I && other != Letter::I && self != other);
        for cand in [Letter::X, Letter::Y, Letter::Z] {
            if cand != self && cand != other {
                return cand;
            }
        }
        unreachable!()
    }

    pub fn as_char(self) -> char {
        match self {
            Letter::I => 'I',
            Letter::X => 'X',
            Letter::Y => 'Y',
            Letter::Z => 'Z',
        }
    }

    pub fn from_char(c: char) -> Option<Self> {
        match c {
            'I' => Some(Letter::I),
            'X' => Some(Letter::X),
            'Y' => Some(Letter::Y),
            'Z' => Some(Letter::Z),
            _ => None,
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

#[cfg(feature = "serde")]
impl serde::Serialize for Letter {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_char(self.as_char())
    }
}

/// Phase exponent (of `i`, mod 4) contributed by the single-letter product
/// `row · col`, indexed in `(I, X, Y, Z)` order. For example `X·Y = iZ`
/// gives entry 1, `X·Z = -iY` gives entry 3.
const LETTER_PHASE: [[u8; 4]; 4] = [
    [0, 0, 0, 0],
    [0, 0, 1, 3],
    [0, 3, 0, 1],
    [0, 1, 3, 0],
];

/// Largest number of qubits a single string can hold (one machine word per
/// bit plane, single code path).
pub const MAX_QUBITS: usize = 64;

/// Ways a Pauli string can fail to parse or be constructed.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PauliError {
    #[error("qubit count {0} outside 1..=64")]
    Length(usize),
    #[error("unexpected character {0:?} in Pauli string")]
    BadChar(char),
    #[error("empty Pauli string")]
    Empty,
}

/// An n-qubit Pauli operator `i^k · W_1 ⊗ … ⊗ W_n`, bit-packed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PauliString {
    n: u32,
    x: u64,
    z: u64,
    /// Phase exponent: the operator carries `i^phase`, stored mod 4.
    phase: u8,
}

impl PauliString {
    /// The identity on `n` qubits.
    pub fn identity(n: usize) -> Self {
        assert!((1..=MAX_QUBITS).contains(&n), "qubit count {n} outside 1..=64");
        PauliString { n: n as u32, x: 0, z: 0, phase: 0 }
    }

    /// Build from a letter sequence with `+1` phase.
    pub fn from_letters(letters: &[Letter]) -> Result<Self, PauliError> {
        if letters.is_empty() || letters.len() > MAX_QUBITS {
            return Err(PauliError::Length(letters.len()));
        }
        let mut p = PauliString { n: letters.len() as u32, x: 0, z: 0, phase: 0 };
        for (j, &w) in letters.iter().enumerate() {
            p.set_letter(j, w);
        }
        Ok(p)
    }

    /// A single letter at qubit `j`, identity elsewhere.
    pub fn single(n: usize, j: usize, w: Letter) -> Self {
        let mut p = Self::identity(n);
        assert!(j < n);
        p.set_letter(j, w);
        p
    }

    #[inline]
    pub fn num_qubits(&self) -> usize {
        self.n as usize
    }

    /// Phase exponent `k` in `i^k`, in `0..4`.
    #[inline]
    pub fn phase_exponent(&self) -> u8 {
        self.phase
    }

    /// Hermitian strings carry phase `±1` (exponent 0 or 2).
    #[inline]
    pub fn is_hermitian(&self) -> bool {
        self.phase & 1 == 0
    }

    /// `+1.0` or `-1.0` for a Hermitian string; panics on `±i` phases.
    #[inline]
    pub fn sign(&self) -> f64 {
        match self.phase {
            0 => 1.0,
            2 => -1.0,
            _ => panic!("sign() on a non-Hermitian Pauli string (phase i^{})", self.phase),
        }
    }

    #[inline]
    pub fn is_identity_letters(&self) -> bool {
        self.x == 0 && self.z == 0
    }

    #[inline]
    pub fn letter(&self, j: usize) -> Letter {
        debug_assert!(j < self.n as usize);
        Letter::from_xz(self.x >> j & 1 == 1, self.z >> j & 1 == 1)
    }

    pub fn letters(&self) -> Vec<Letter> {
        (0..self.num_qubits()).map(|j| self.letter(j)).collect()
    }

    #[inline]
    pub fn set_letter(&mut self, j: usize, w: Letter) {
        debug_assert!(j < self.n as usize);
        let (xb, zb) = w.xz();
        self.x = self.x & !(1 << j) | (xb as u64) << j;
        self.z = self.z & !(1 << j) | (zb as u64) << j;
    }

    /// Multiply the phase by `-1`.
    #[inline]
    pub fn negated(mut self) -> Self {
        self.phase = (self.phase + 2) & 3;
        self
    }

    /// Multiply the phase by `i`.
    #[inline]
    pub fn times_i(mut self) -> Self {
        self.phase = (self.phase + 1) & 3;
        self
    }

    /// Raw symplectic bit planes `(x, z)`.
    #[inline]
    pub fn bits(&self) -> (u64, u64) {
        (self.x, self.z)
    }

    /// Assemble a string directly from bit planes (used by the linear-algebra
    /// paths that work on raw symplectic vectors).
    pub(crate) fn from_bits(n: usize, x: u64, z: u64, phase: u8) -> Self {
        assert!((1..=MAX_QUBITS).contains(&n), "qubit count out of range");
        let mask = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        debug_assert_eq!(x & !mask, 0);
        debug_assert_eq!(z & !mask, 0);
        PauliString { n: n as u32, x, z, phase: phase & 3 }
    }

    /// Letters packed two bits per qubit (qubit 0 most significant, ranked
    /// I < X < Y < Z): a total order used to pick canonical representatives.
    pub(crate) fn letter_key(&self) -> u128 {
        let mut key = 0u128;
        for j in 0..self.num_qubits() {
            key = key << 2 | self.letter(j).index() as u128;
        }
        key
    }

    /// True iff the operators commute (symplectic inner product is even).
    #[inline]
    pub fn commutes_with(&self, rhs: &Self) -> bool {
        assert_eq!(self.n, rhs.n, "qubit count mismatch");
        ((self.x & rhs.z).count_ones() + (self.z & rhs.x).count_ones()) & 1 == 0
    }

    /// `tr[(ρ_1 ⊗ … ⊗ ρ_n) · self]` for single-qubit states with Bloch
    /// vectors `bloch[j] = (r_x, r_y, r_z)`: the phase sign times the product
    /// over the support of the matching Bloch components.
    ///
    /// Requires a Hermitian string (`±1` phase).
    pub fn expectation_product_state(&self, bloch: &[[f64; 3]]) -> f64 {
        assert_eq!(bloch.len(), self.num_qubits(), "one Bloch vector per qubit");
        assert!(self.is_hermitian(), "expectation of a non-Hermitian Pauli string");
        let mut value = self.sign();
        let mut support = self.x | self.z;
        while support != 0 {
            let j = support.trailing_zeros() as usize;
            value *= bloch[j][self.letter(j).bloch_index()];
            support &= support - 1;
        }
        value
    }
}

impl core::ops::Mul for PauliString {
    type Output = PauliString;

    /// Exact product: bit parts XOR, phase accumulated per overlapping
    /// non-identity letter from the `i`-exponent table.
    fn mul(self, rhs: PauliString) -> PauliString {
        assert_eq!(self.n, rhs.n, "qubit count mismatch");
        let mut k = (self.phase + rhs.phase) as u32;
        let mut both = (self.x | self.z) & (rhs.x | rhs.z);
        while both != 0 {
            let j = both.trailing_zeros() as usize;
            k += LETTER_PHASE[self.letter(j).index()][rhs.letter(j).index()] as u32;
            both &= both - 1;
        }
        PauliString {
            n: self.n,
            x: self.x ^ rhs.x,
            z: self.z ^ rhs.z,
            phase: (k & 3) as u8,
        }
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.phase {
            0 => {}
            1 => write!(f, "i")?,
            2 => write!(f, "-")?,
            3 => write!(f, "-i")?,
            _ => unreachable!(),
        }
        for j in 0..self.num_qubits() {
            write!(f, "{}", self.letter(j).as_char())?;
        }
        Ok(())
    }
}

impl FromStr for PauliString {
    type Err = PauliError;

    /// Parse `[+|-][i]?[IXYZ]+`, e.g. `-XIZZY` or `XZZXI`.
    fn from_str(s: &str) -> Result<Self, PauliError> {
        let mut rest = s;
        let mut phase = 0u8;
        if let Some(r) = rest.strip_prefix('-') {
            phase = 2;
            rest = r;
        } else if let Some(r) = rest.strip_prefix('+') {
            rest = r;
        }
        if let Some(r) = rest.strip_prefix('i') {
            phase = (phase + 1) & 3;
            rest = r;
        }
        if rest.is_empty() {
            return Err(PauliError::Empty);
        }
        if rest.len() > MAX_QUBITS {
            return Err(PauliError::Length(rest.len()));
        }
        let mut letters = Vec::with_capacity(rest.len());
        for c in rest.chars() {
            letters.push(Letter::from_char(c).ok_or(PauliError::BadChar(c))?);
        }
        let mut p = PauliString::from_letters(&letters)?;
        p.phase = phase;
        Ok(p)
    }
}

#[cfg(feature = "serde")]
impl serde::Serialize for PauliString {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use alloc::string::ToString;
        s.serialize_str(&self.to_string())
    }
}

impl PauliString {
    /// Convenience for literals in tests and the catalog.
    pub fn parse_or_panic(s: &str) -> Self {
        match s.parse() {
            Ok(p) => p,
            Err(e) => panic!("bad Pauli literal {s:?}: {e}"),
        }
    }
}
