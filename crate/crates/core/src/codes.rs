//! [[n,1]] stabilizer codes: validation, group enumeration, logical
//! operators, triviality detection, and the canonical-form reduction used
//! by the witness construction.
//!
//! A code is n−1 independent, pairwise-commuting, ±1-phase Pauli strings on
//! n qubits whose group avoids −I, together with a logical X/Z pair. All
//! the heavy algebra (membership, logical-operator solving) runs on the
//! GF(2) symplectic representation of the strings.

mod canonical;
pub mod catalog;
mod format;
mod random;

pub use canonical::CanonicalForm;
pub(crate) use canonical::companion;
pub use random::{random_code, random_nontrivial_code, random_trivial_code};

use crate::pauli::{Letter, PauliString};
use alloc::string::String;
use alloc::vec::Vec;

/// Group-enumeration methods refuse codes beyond this qubit count
/// (2^{n−1} elements stop being a desk-scale computation).
pub const GROUP_ENUM_CAP: usize = 24;

/// Errors from code construction and analysis.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CodeError {
    #[error("an n-qubit code needs {expected} generators, got {got}")]
    WrongGeneratorCount { expected: usize, got: usize },
    #[error("generator {index} acts on {got} qubits, expected {expected}")]
    GeneratorLength { index: usize, expected: usize, got: usize },
    #[error("generator {index} has phase ±i; generators must be Hermitian")]
    NonHermitianGenerator { index: usize },
    #[error("generators {first} and {second} do not commute")]
    NonCommuting { first: usize, second: usize },
    #[error("generator {index} is a product of earlier generators")]
    Dependent { index: usize },
    #[error("the generated group contains -I")]
    MinusIdentity,
    #[error("bad logical operators: {0}")]
    BadLogicals(&'static str),
    #[error("code is trivial (some qubit is untouched by the whole group)")]
    Trivial,
    #[error("code has {n} qubits, above the cap of {cap} for this operation")]
    TooLarge { n: usize, cap: usize },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("canonicalization failed; this indicates a bug, please report it")]
    Canonicalization,
}

/// A validated [[n,1]] stabilizer code.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct StabilizerCode {
    n: usize,
    generators: Vec<PauliString>,
    logical_x: PauliString,
    logical_z: PauliString,
    name: Option<String>,
}

impl StabilizerCode {
    /// Validate generators and solve for a logical pair: `logical_x` is the
    /// lexicographically smallest centralizer element outside the generator
    /// span (letters ranked I < X < Y < Z, qubit 0 most significant), and
    /// `logical_z` the smallest element anticommuting with it under the dual
    /// ranking I < Z < Y < X. The dual order makes a code that leaves some
    /// qubit untouched decode as the identity channel on that qubit.
    pub fn new(n: usize, generators: Vec<PauliString>) -> Result<Self, CodeError> {
        let echelon = validate_generators(n, &generators)?;
        let (logical_x, logical_z) = solve_logicals(n, &generators, &echelon)?;
        Ok(StabilizerCode { n, generators, logical_x, logical_z, name: None })
    }

    /// Validate generators together with an explicitly chosen logical pair.
    pub fn with_logicals(
        n: usize,
        generators: Vec<PauliString>,
        logical_x: PauliString,
        logical_z: PauliString,
    ) -> Result<Self, CodeError> {
        let echelon = validate_generators(n, &generators)?;
        for l in [&logical_x, &logical_z] {
            if l.num_qubits() != n {
                return Err(CodeError::BadLogicals("length does not match the code"));
            }
            if !l.is_hermitian() {
                return Err(CodeError::BadLogicals("logical operators must be Hermitian"));
            }
            if generators.iter().any(|g| !g.commutes_with(l)) {
                return Err(CodeError::BadLogicals(
                    "logical operators must commute with every generator",
                ));
            }
            if echelon.reduces_to_identity_letters(l) {
                return Err(CodeError::BadLogicals(
                    "logical operators must be independent of the stabilizer group",
                ));
            }
        }
        if logical_x.commutes_with(&logical_z) {
            return Err(CodeError::BadLogicals(
                "logical X and Z must anticommute with each other",
            ));
        }
        Ok(StabilizerCode { n, generators, logical_x, logical_z, name: None })
    }

    /// Attach a display name (catalog codes carry one).
    pub fn named(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    #[inline]
    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[PauliString] {
        &self.generators
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn logical_x(&self) -> &PauliString {
        &self.logical_x
    }

    pub fn logical_z(&self) -> &PauliString {
        &self.logical_z
    }

    /// The phase-corrected logical Y: `i·X_L·Z_L`, always Hermitian.
    pub fn logical_y(&self) -> PauliString {
        let y = (self.logical_x * self.logical_z).times_i();
        debug_assert!(y.is_hermitian());
        y
    }

    /// `|S| = 2^{n−1}`.
    pub fn group_order(&self) -> u64 {
        1u64 << (self.n - 1)
    }

    /// Stream every group element exactly once, in Gray-code order (each
    /// step multiplies by a single generator).
    pub fn group_elements(&self) -> Result<GroupElements<'_>, CodeError> {
        self.coset_elements(PauliString::identity(self.n))
    }

    /// Stream the coset `rep·S` in the same Gray-code order.
    pub fn coset_elements(&self, rep: PauliString) -> Result<GroupElements<'_>, CodeError> {
        assert_eq!(rep.num_qubits(), self.n, "coset representative length");
        if self.n > GROUP_ENUM_CAP {
            return Err(CodeError::TooLarge { n: self.n, cap: GROUP_ENUM_CAP });
        }
        Ok(GroupElements {
            generators: &self.generators,
            current: rep,
            index: 0,
            total: self.group_order(),
        })
    }

    /// `Some(+1)` if `p ∈ S`, `Some(−1)` if `−p ∈ S`, `None` otherwise.
    pub fn signed_membership(&self, p: &PauliString) -> Option<i8> {
        assert_eq!(p.num_qubits(), self.n, "operator length");
        // The echelon basis is cheap to rebuild relative to every caller's
        // own work; codes stay immutable so no caching is warranted.
        let echelon = Echelon::build(&self.generators).expect("validated code");
        echelon.signed_membership(p)
    }

    /// True iff `p ∈ S` exactly (sign included).
    pub fn contains(&self, p: &PauliString) -> bool {
        self.signed_membership(p) == Some(1)
    }

    /// True iff some qubit is untouched by the whole group — the protocol
    /// then just projects the other qubits onto a stabilizer state and
    /// passes that qubit through. Equivalent to every generator having
    /// identity on that qubit, since products preserve identity columns.
    pub fn is_trivial(&self) -> bool {
        (0..self.n).any(|q| self.generators.iter().all(|g| g.letter(q) == Letter::I))
    }
}

/// Gray-code iterator over a coset of the stabilizer group.
pub struct GroupElements<'a> {
    generators: &'a [PauliString],
    current: PauliString,
    index: u64,
    total: u64,
}

impl Iterator for GroupElements<'_> {
    type Item = PauliString;

    fn next(&mut self) -> Option<PauliString> {
        if self.index == self.total {
            return None;
        }
        if self.index > 0 {
            let flip = self.index.trailing_zeros() as usize;
            self.current = self.current * self.generators[flip];
        }
        self.index += 1;
        Some(self.current)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.total - self.index) as usize;
        (left, Some(left))
    }
}

impl ExactSizeIterator for GroupElements<'_> {}

fn validate_generators(n: usize, generators: &[PauliString]) -> Result<Echelon, CodeError> {
    if n == 0 || n > crate::pauli::MAX_QUBITS {
        return Err(CodeError::TooLarge { n, cap: crate::pauli::MAX_QUBITS });
    }
    if generators.len() != n - 1 {
        return Err(CodeError::WrongGeneratorCount { expected: n - 1, got: generators.len() });
    }
    for (index, g) in generators.iter().enumerate() {
        if g.num_qubits() != n {
            return Err(CodeError::GeneratorLength {
                index,
                expected: n,
                got: g.num_qubits(),
            });
        }
        if !g.is_hermitian() {
            return Err(CodeError::NonHermitianGenerator { index });
        }
    }
    for i in 0..generators.len() {
        for j in i + 1..generators.len() {
            if !generators[i].commutes_with(&generators[j]) {
                return Err(CodeError::NonCommuting { first: i, second: j });
            }
        }
    }
    Echelon::build(generators)
}

/// Forward-elimination basis over the GF(2) symplectic bits, with exact
/// phase tracking through the Pauli products.
pub(crate) struct Echelon {
    /// `(pivot bit in x | z<<64 packing, reduced row)`, ordered by pivot.
    rows: Vec<(u128, PauliString)>,
}

impl Echelon {
    fn combined(p: &PauliString) -> u128 {
        let (x, z) = p.bits();
        (x as u128) | ((z as u128) << 64)
    }

    /// Builds the basis, detecting dependent generators and −I products.
    pub(crate) fn build(generators: &[PauliString]) -> Result<Self, CodeError> {
        let mut ech = Echelon { rows: Vec::with_capacity(generators.len()) };
        for (index, g) in generators.iter().enumerate() {
            let residue = ech.reduce(*g);
            if Self::combined(&residue) == 0 {
                return Err(match residue.phase_exponent() {
                    0 => CodeError::Dependent { index },
                    2 => CodeError::MinusIdentity,
                    // ±i·I from commuting Hermitian products is impossible.
                    _ => CodeError::Canonicalization,
                });
            }
            let pivot = 1u128 << Self::combined(&residue).trailing_zeros();
            let pos = ech.rows.partition_point(|(p, _)| *p < pivot);
            ech.rows.insert(pos, (pivot, residue));
        }
        Ok(ech)
    }

    /// Multiply `p` by basis rows until no pivot bit remains set.
    fn reduce(&self, p: PauliString) -> PauliString {
        let mut res = p;
        for (pivot, row) in &self.rows {
            if Self::combined(&res) & pivot != 0 {
                res = res * *row;
            }
        }
        res
    }

    /// True iff `p`'s bit pattern lies in the generator row span (its sign
    /// is ignored).
    pub(crate) fn reduces_to_identity_letters(&self, p: &PauliString) -> bool {
        Self::combined(&self.reduce(*p)) == 0
    }

    pub(crate) fn signed_membership(&self, p: &PauliString) -> Option<i8> {
        let residue = self.reduce(*p);
        if Self::combined(&residue) != 0 {
            return None;
        }
        // p · Q = i^k for some group element Q, hence p = i^k Q.
        match residue.phase_exponent() {
            0 => Some(1),
            2 => Some(-1),
            _ => None,
        }
    }
}

/// Letters ranked I < Z < Y < X (qubit 0 most significant): the dual of
/// `letter_key`'s order, used to pick logical Z representatives.
fn dual_order_key(p: &PauliString) -> u128 {
    let mut key = 0u128;
    for j in 0..p.num_qubits() {
        let rank: u128 = match p.letter(j) {
            Letter::I => 0,
            Letter::Z => 1,
            Letter::Y => 2,
            Letter::X => 3,
        };
        key = key << 2 | rank;
    }
    key
}

fn solve_logicals(
    n: usize,
    generators: &[PauliString],
    echelon: &Echelon,
) -> Result<(PauliString, PauliString), CodeError> {
    if n > GROUP_ENUM_CAP {
        return Err(CodeError::TooLarge { n, cap: GROUP_ENUM_CAP });
    }
    let mask: u64 = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };

    // Commuting with generator g is the GF(2) condition x_p·z_g ⊕ z_p·x_g = 0.
    // Variables pack as v = x | (z << n); the constraint row for g packs the
    // planes crosswise so that parity(row & v) is the symplectic product.
    let total_bits = 2 * n;
    let mut mat: Vec<u128> = generators
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
    debug_assert_eq!(rank, n - 1, "independent generators have full rank");

    // Null-space basis: one vector per free column.
    let mut basis: Vec<u128> = Vec::with_capacity(total_bits - rank);
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
    debug_assert_eq!(basis.len(), n + 1, "centralizer has dimension n+1");

    let decode = |v: u128| {
        let x = (v & mask as u128) as u64;
        let z = ((v >> n) & mask as u128) as u64;
        PauliString::from_bits(n, x, z, 0)
    };

    // Gray-code walk over the centralizer: pass one finds the smallest
    // element outside the generator span, pass two the smallest element
    // (dual letter order) anticommuting with it.
    let dim = basis.len();
    let mut best_x: Option<(u128, PauliString)> = None;
    let mut cur: u128 = 0;
    for k in 1u64..1 << dim {
        cur ^= basis[k.trailing_zeros() as usize];
        let p = decode(cur);
        if echelon.reduces_to_identity_letters(&p) {
            continue;
        }
        let key = p.letter_key();
        if best_x.as_ref().is_none_or(|(bk, _)| key < *bk) {
            best_x = Some((key, p));
        }
    }
    let logical_x = best_x.ok_or(CodeError::Canonicalization)?.1;

    let mut best_z: Option<(u128, PauliString)> = None;
    let mut cur: u128 = 0;
    for k in 1u64..1 << dim {
        cur ^= basis[k.trailing_zeros() as usize];
        let p = decode(cur);
        if p.commutes_with(&logical_x) {
            continue;
        }
        let key = dual_order_key(&p);
        if best_z.as_ref().is_none_or(|(bk, _)| key < *bk) {
            best_z = Some((key, p));
        }
    }
    let logical_z = best_z.ok_or(CodeError::Canonicalization)?.1;
    Ok((logical_x, logical_z))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn ps(s: &str) -> PauliString {
        PauliString::parse_or_panic(s)
    }

    fn five_qubit_generators() -> Vec<PauliString> {
        ["XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"].map(ps).to_vec()
    }

    #[test]
    fn five_qubit_code_validates_with_group_order_16() {
        let code = StabilizerCode::new(5, five_qubit_generators()).unwrap();
        let elements: Vec<PauliString> = code.group_elements().unwrap().collect();
        assert_eq!(elements.len(), 16);
        assert_eq!(code.group_order(), 16);
        for e in &elements {
            assert!(e.is_hermitian());
        }
        // No duplicates.
        for (i, a) in elements.iter().enumerate() {
            for b in &elements[i + 1..] {
                assert_ne!(a, b);
            }
        }
        // Closed under multiplication.
        assert!(code.contains(&(elements[3] * elements[7])));
    }

    #[test]
    fn two_qubit_xx_group_is_ii_and_xx() {
        let code = StabilizerCode::new(2, vec![ps("XX")]).unwrap();
        let elements: Vec<PauliString> = code.group_elements().unwrap().collect();
        assert_eq!(elements, vec![ps("II"), ps("XX")]);
    }

    #[test]
    fn generator_count_must_be_n_minus_1() {
        let err = StabilizerCode::new(2, vec![ps("XX"), ps("ZZ")]).unwrap_err();
        assert_eq!(err, CodeError::WrongGeneratorCount { expected: 1, got: 2 });
        // Padded to three qubits the same pair is a fine (trivial) code.
        let code = StabilizerCode::new(3, vec![ps("XXI"), ps("ZZI")]).unwrap();
        assert!(code.is_trivial());
    }

    #[test]
    fn dependent_and_minus_identity_are_distinguished() {
        let err = StabilizerCode::new(3, vec![ps("XXI"), ps("XXI")]).unwrap_err();
        assert_eq!(err, CodeError::Dependent { index: 1 });
        let err = StabilizerCode::new(3, vec![ps("XXI"), ps("-XXI")]).unwrap_err();
        assert_eq!(err, CodeError::MinusIdentity);
    }

    #[test]
    fn noncommuting_generators_rejected() {
        let err = StabilizerCode::new(3, vec![ps("XII"), ps("ZII")]).unwrap_err();
        assert_eq!(err, CodeError::NonCommuting { first: 0, second: 1 });
    }

    #[test]
    fn non_hermitian_generator_rejected() {
        let err = StabilizerCode::new(2, vec![ps("iXX")]).unwrap_err();
        assert_eq!(err, CodeError::NonHermitianGenerator { index: 0 });
    }

    #[test]
    fn triviality_examples() {
        let t = StabilizerCode::new(3, vec![ps("ZII"), ps("IZI")]).unwrap();
        assert!(t.is_trivial());
        let xx = StabilizerCode::new(2, vec![ps("XX")]).unwrap();
        assert!(!xx.is_trivial());
        let five = StabilizerCode::new(5, five_qubit_generators()).unwrap();
        assert!(!five.is_trivial());
    }

    #[test]
    fn membership_distinguishes_signs_and_outsiders() {
        let five = StabilizerCode::new(5, five_qubit_generators()).unwrap();
        assert_eq!(five.signed_membership(&ps("XZZXI")), Some(1));
        assert_eq!(five.signed_membership(&ps("-XZZXI")), Some(-1));
        assert_eq!(five.signed_membership(&ps("XXXXX")), None);
        assert_eq!(five.signed_membership(&ps("IIIII")), Some(1));
        let prod = ps("XZZXI") * ps("IXZZX");
        assert_eq!(five.signed_membership(&prod), Some(1));
    }

    #[test]
    fn computed_logicals_for_xx() {
        let xx = StabilizerCode::new(2, vec![ps("XX")]).unwrap();
        assert_eq!(*xx.logical_x(), ps("IX"));
        assert_eq!(*xx.logical_z(), ps("ZZ"));
        assert!(!xx.logical_x().commutes_with(xx.logical_z()));
        assert!(xx.logical_y().is_hermitian());
    }

    #[test]
    fn computed_logicals_on_a_free_qubit_decode_as_identity() {
        let t = StabilizerCode::new(3, vec![ps("ZII"), ps("IZI")]).unwrap();
        assert_eq!(*t.logical_x(), ps("IIX"));
        assert_eq!(*t.logical_z(), ps("IIZ"));
        assert_eq!(t.logical_y(), ps("IIY"));
    }

    #[test]
    fn single_qubit_degenerate_code() {
        let one = StabilizerCode::new(1, vec![]).unwrap();
        assert_eq!(*one.logical_x(), ps("X"));
        assert_eq!(*one.logical_z(), ps("Z"));
        assert_eq!(one.group_elements().unwrap().collect::<Vec<_>>(), vec![ps("I")]);
        assert!(one.is_trivial());
    }

    #[test]
    fn logicals_commute_with_generators_and_anticommute_mutually() {
        let five = StabilizerCode::new(5, five_qubit_generators()).unwrap();
        for g in five.generators() {
            assert!(g.commutes_with(five.logical_x()));
            assert!(g.commutes_with(five.logical_z()));
        }
        assert!(!five.logical_x().commutes_with(five.logical_z()));
        let y = five.logical_y();
        assert!(!y.commutes_with(five.logical_x()));
        assert!(!y.commutes_with(five.logical_z()));
    }

    #[test]
    fn explicit_logicals_are_validated() {
        let gens = vec![ps("XX")];
        let ok = StabilizerCode::with_logicals(2, gens.clone(), ps("IX"), ps("YY"));
        assert!(ok.is_ok());
        let err =
            StabilizerCode::with_logicals(2, gens.clone(), ps("ZI"), ps("YY")).unwrap_err();
        assert_eq!(
            err,
            CodeError::BadLogicals("logical operators must commute with every generator")
        );
        let err =
            StabilizerCode::with_logicals(2, gens.clone(), ps("XX"), ps("YY")).unwrap_err();
        assert_eq!(
            err,
            CodeError::BadLogicals("logical operators must be independent of the stabilizer group")
        );
        let err = StabilizerCode::with_logicals(2, gens, ps("IX"), ps("XI")).unwrap_err();
        assert_eq!(
            err,
            CodeError::BadLogicals("logical X and Z must anticommute with each other")
        );
    }

    #[test]
    fn coset_stream_multiplies_representative_through() {
        let xx = StabilizerCode::new(2, vec![ps("XX")]).unwrap();
        let coset: Vec<PauliString> = xx.coset_elements(ps("IX")).unwrap().collect();
        assert_eq!(coset, vec![ps("IX"), ps("IX") * ps("XX")]);
    }

    #[test]
    fn enumeration_cap_is_enforced() {
        // A 25-qubit trivial code trips the cap before any enumeration.
        let mut gens = Vec::new();
        for j in 0..24 {
            gens.push(PauliString::single(25, j, Letter::Z));
        }
        let err = StabilizerCode::new(25, gens).unwrap_err();
        assert_eq!(err, CodeError::TooLarge { n: 25, cap: GROUP_ENUM_CAP });
    }
}
