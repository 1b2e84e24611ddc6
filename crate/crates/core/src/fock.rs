//! The neutral-fermion Fock space: canonical monomial basis and the exact
//! action of the Clifford modes `φ_m`, `m ∈ ℤ + ½`.
//!
//! A basis monomial is `φ_{-n_k-1/2} ⋯ φ_{-n_1-1/2} |0⟩` with
//! `n_k > ⋯ > n_1 ≥ 0`: the most negative mode stands leftmost. All
//! anticommutation signs in the crate are derived from this one ordering.

use std::cmp::Ordering;
use std::fmt::{self, Display};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{FockError, ParseError};
use crate::operator::{IndexSet, LinearOperator, OperatorFamily};
use crate::scalar::{HalfInteger, Scalar};
use crate::state::LinComb;

/// A neutral fermion mode `m ∈ ℤ + ½`, stored as the odd integer `2m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ModeIndex(i64);

impl ModeIndex {
    pub fn from_twice(twice: i64) -> Option<Self> {
        (twice.rem_euclid(2) == 1).then_some(ModeIndex(twice))
    }

    /// `φ_{-n-1/2}`.
    pub const fn creation(n: u32) -> Self {
        ModeIndex(-2 * n as i64 - 1)
    }

    /// `φ_{n+1/2}`.
    pub const fn annihilation(n: u32) -> Self {
        ModeIndex(2 * n as i64 + 1)
    }

    pub const fn twice(self) -> i64 {
        self.0
    }

    pub const fn is_creation(self) -> bool {
        self.0 < 0
    }

    pub const fn is_annihilation(self) -> bool {
        self.0 > 0
    }

    /// The basis index `n` touched by this mode: `|m| = n + ½`.
    pub const fn level(self) -> u32 {
        ((self.0.abs() - 1) / 2) as u32
    }

    pub const fn dual(self) -> Self {
        ModeIndex(-self.0)
    }
}

impl Display for ModeIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/2", self.0)
    }
}

impl FromStr for ModeIndex {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let half: HalfInteger = s.parse().map_err(|_| ParseError::Mode(s.to_string()))?;
        ModeIndex::from_twice(half.twice()).ok_or_else(|| ParseError::Mode(s.to_string()))
    }
}

/// A canonical basis monomial, identified by its strictly increasing index list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct FermionMonomial {
    indices: Vec<u32>,
}

impl FermionMonomial {
    pub fn vacuum() -> Self {
        FermionMonomial::default()
    }

    pub fn new(indices: Vec<u32>) -> Result<Self, FockError> {
        if indices.windows(2).all(|w| w[0] < w[1]) {
            Ok(FermionMonomial { indices })
        } else {
            Err(FockError::NotCanonical(indices))
        }
    }

    /// Builds a monomial from an arbitrary set of distinct indices.
    pub fn from_set(indices: impl IntoIterator<Item = u32>) -> Self {
        let mut v: Vec<u32> = indices.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        FermionMonomial { indices: v }
    }

    /// Indices in increasing order (rightmost factor first).
    pub fn indices(&self) -> &[u32] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn is_vacuum(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn contains(&self, n: u32) -> bool {
        self.indices.binary_search(&n).is_ok()
    }

    /// Twice the `L_0` weight `Σ (nᵢ + ½)`.
    pub fn weight_twice(&self) -> i64 {
        self.indices.iter().map(|&n| 2 * n as i64 + 1).sum()
    }

    pub fn weight(&self) -> HalfInteger {
        HalfInteger::from_twice(self.weight_twice())
    }

    /// Number of factors standing to the left of index `n`'s slot.
    fn factors_left_of(&self, n: u32) -> usize {
        self.indices.len() - self.indices.partition_point(|&i| i <= n)
    }

    /// Action of a single mode: `None` for zero, else `(negative sign, monomial)`.
    pub fn apply_mode(&self, mode: ModeIndex) -> Option<(bool, FermionMonomial)> {
        let n = mode.level();
        let pos = self.indices.binary_search(&n);
        let sign = self.factors_left_of(n) % 2 == 1;
        match (mode.is_creation(), pos) {
            (true, Err(at)) => {
                let mut indices = self.indices.clone();
                indices.insert(at, n);
                Some((sign, FermionMonomial { indices }))
            }
            (false, Ok(at)) => {
                let mut indices = self.indices.clone();
                indices.remove(at);
                Some((sign, FermionMonomial { indices }))
            }
            _ => None,
        }
    }
}

/// Graded by weight, then lexicographic on the increasing index list.
impl Ord for FermionMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight_twice()
            .cmp(&other.weight_twice())
            .then_with(|| self.indices.cmp(&other.indices))
    }
}

impl PartialOrd for FermionMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Display for FermionMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &n in self.indices.iter().rev() {
            write!(f, "phi[{}] ", ModeIndex::creation(n))?;
        }
        write!(f, "|0>")
    }
}

pub type FockState<T> = LinComb<FermionMonomial, T>;

pub fn vacuum_state<T: Scalar>() -> FockState<T> {
    FockState::basis(FermionMonomial::vacuum())
}

/// Apply `φ_m` to a state, extended linearly.
pub fn apply_fermion_mode<T: Scalar>(mode: ModeIndex, s: &FockState<T>) -> FockState<T> {
    let mut out = FockState::zero();
    for (mono, c) in s.iter() {
        if let Some((neg, image)) = mono.apply_mode(mode) {
            out.add_term(image, if neg { -c.clone() } else { c.clone() });
        }
    }
    out
}

/// The Clifford generator `φ_m` as an operator.
#[derive(Clone, Copy, Debug)]
pub struct CliffordMode(pub ModeIndex);

impl<T: Scalar> LinearOperator<FermionMonomial, T> for CliffordMode {
    fn apply_basis(&self, b: &FermionMonomial) -> FockState<T> {
        match b.apply_mode(self.0) {
            Some((neg, image)) => FockState::term(image, T::sign_of(neg)),
            None => FockState::zero(),
        }
    }
}

/// `m ↦ φ_m`, labelled by `2m`.
pub fn clifford_family<T: Scalar>() -> OperatorFamily<FermionMonomial, T> {
    OperatorFamily::new("phi", IndexSet::HalfIntegers, |label| {
        let mode = ModeIndex::from_twice(label).expect("odd label");
        std::sync::Arc::new(CliffordMode(mode))
    })
}

/// All monomials whose twice-weight is exactly `twice`, lexicographically ordered.
pub fn monomials_of_twice_weight(twice: i64) -> Vec<FermionMonomial> {
    fn rec(remaining: i64, min_index: u32, current: &mut Vec<u32>, out: &mut Vec<FermionMonomial>) {
        if remaining == 0 {
            out.push(FermionMonomial {
                indices: current.clone(),
            });
            return;
        }
        let mut n = min_index;
        while (2 * n as i64) < remaining {
            current.push(n);
            rec(remaining - (2 * n as i64 + 1), n + 1, current, out);
            current.pop();
            n += 1;
        }
    }
    let mut out = Vec::new();
    if twice >= 0 {
        rec(twice, 0, &mut Vec::new(), &mut out);
    }
    out.sort();
    out
}

/// Every monomial of weight at most `weight_cut`, graded by weight then lexicographic.
pub fn enumerate_basis(weight_cut: HalfInteger) -> Vec<FermionMonomial> {
    (0..=weight_cut.twice())
        .flat_map(monomials_of_twice_weight)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    type Q = BigRational;

    fn mono(ix: &[u32]) -> FermionMonomial {
        FermionMonomial::new(ix.to_vec()).unwrap()
    }

    fn m(s: &str) -> ModeIndex {
        s.parse().unwrap()
    }

    #[test]
    fn annihilator_kills_vacuum() {
        assert!(apply_fermion_mode::<Q>(m("3/2"), &vacuum_state()).is_zero());
    }

    #[test]
    fn creation_squares_to_zero() {
        let once = apply_fermion_mode::<Q>(m("-1/2"), &vacuum_state());
        assert!(apply_fermion_mode(m("-1/2"), &once).is_zero());
    }

    #[test]
    fn pairing_mode_returns_vacuum() {
        let once = apply_fermion_mode::<Q>(m("-1/2"), &vacuum_state());
        assert_eq!(apply_fermion_mode(m("1/2"), &once), vacuum_state());
    }

    #[test]
    fn annihilation_sign_passes_one_factor() {
        // φ_{3/2} φ_{-5/2} φ_{-3/2}|0⟩ = −φ_{-5/2} φ_{3/2} φ_{-3/2}|0⟩ = −φ_{-5/2}|0⟩
        let s = FockState::<Q>::basis(mono(&[1, 2]));
        let out = apply_fermion_mode(m("3/2"), &s);
        assert_eq!(out, FockState::term(mono(&[2]), -Q::from_int(1)));
    }

    #[test]
    fn creation_sign_counts_larger_indices() {
        // φ_{-3/2} φ_{-5/2} φ_{-1/2}|0⟩ = −φ_{-5/2} φ_{-3/2} φ_{-1/2}|0⟩
        let s = FockState::<Q>::basis(mono(&[0, 2]));
        let out = apply_fermion_mode(m("-3/2"), &s);
        assert_eq!(out, FockState::term(mono(&[0, 1, 2]), -Q::from_int(1)));
    }

    #[test]
    fn rendering() {
        assert_eq!(mono(&[0, 2]).to_string(), "phi[-5/2] phi[-1/2] |0>");
        assert_eq!(FermionMonomial::vacuum().to_string(), "|0>");
        let s = FockState::<Q>::term(mono(&[2]), -Q::from_int(1));
        assert_eq!(s.to_string(), "-1 phi[-5/2] |0>");
        assert_eq!(FockState::<Q>::zero().to_string(), "0");
    }

    #[test]
    fn non_canonical_rejected() {
        assert!(FermionMonomial::new(vec![2, 1]).is_err());
        assert!(FermionMonomial::new(vec![1, 1]).is_err());
    }

    #[test]
    fn small_bases() {
        assert_eq!(enumerate_basis(HalfInteger::ZERO), vec![FermionMonomial::vacuum()]);
        assert_eq!(
            enumerate_basis(HalfInteger::from_twice(1)),
            vec![FermionMonomial::vacuum(), mono(&[0])]
        );
    }

    /// Coefficients of Π_{n≥0} (1 + q^{n+1/2}) in powers of q^{1/2}, by direct
    /// polynomial multiplication.
    fn strict_half_partition_counts(max_twice: usize) -> Vec<u64> {
        let mut c = vec![0u64; max_twice + 1];
        c[0] = 1;
        for part in (1..=max_twice).step_by(2) {
            for t in (part..=max_twice).rev() {
                c[t] += c[t - part];
            }
        }
        c
    }

    #[test]
    fn basis_counts_match_product_coefficients() {
        let counts = strict_half_partition_counts(8);
        let basis = enumerate_basis(HalfInteger::from_int(4));
        assert_eq!(basis.len() as u64, counts.iter().sum::<u64>());
        assert_eq!(basis.len(), 9);
        for (t, &expected) in counts.iter().enumerate() {
            let got = basis.iter().filter(|b| b.weight_twice() == t as i64).count() as u64;
            assert_eq!(got, expected, "twice-weight {t}");
        }
        let mut sorted = basis.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted, basis);
    }

    #[test]
    fn clifford_relations_small() {
        let basis = enumerate_basis(HalfInteger::from_int(3));
        let modes: Vec<ModeIndex> = (-7..=7).filter_map(ModeIndex::from_twice).collect();
        for &a in &modes {
            for &b in &modes {
                for v in &basis {
                    let s = FockState::<Q>::basis(v.clone());
                    let lhs = &apply_fermion_mode(a, &apply_fermion_mode(b, &s))
                        + &apply_fermion_mode(b, &apply_fermion_mode(a, &s));
                    let rhs = if a.twice() == -b.twice() { s.clone() } else { FockState::zero() };
                    assert_eq!(lhs, rhs, "{{{a},{b}}} on {v}");
                }
            }
        }
    }
}
