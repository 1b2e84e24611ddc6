//! The `W_{1+∞}` operators `J^k_n` and the `gl_∞` comparison.
//!
//! On the charged space `J^k(w) = (−1)^k :ψ⁺(w) ∂^k ψ⁻(w): = Σ_n J^k_n w^{−k−n−1}`,
//! so `J^k_n = (−1)^k Σ_x (x−n)^{(k)} :ψ⁺_x ψ⁻_{n−1−x}:` with `J⁰ = h^A`.
//! The neutral action is the charged one carried through the D-A
//! isomorphism; independently it is the coefficient of `z^{−2k−2n−2}` in
//! `((−1)^k / 4z) :(φ(z) − φ(−z)) ∂_{z²}^k (φ(z) + φ(−z)):`.

use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;

use crate::charged::{
    charged_bilinear_mode, enumerate_charged_basis, transport_family, ChargedBilinear, ChargedMonomial,
    ChargedQuadratic, ChargedState, Species,
};
use crate::fock::FermionMonomial;
use crate::harness::{bracket_apply, BracketKind, VerificationReport};
use crate::modes::{bilinear_mode, FermionBilinear, Sign};
use crate::operator::{Affine, IndexSet, LinearOperator, OperatorFamily, SharedOp};
use crate::scalar::{binomial, factorial, parity_sign, HalfInteger, Scalar};

pub fn jk_mode_charged<T: Scalar>(k: u32, n: i64) -> ChargedQuadratic<T> {
    let f = ChargedBilinear {
        prefactor: parity_sign::<T>(k as i64),
        zshift: 0,
        left: Species::Plus,
        dleft: 0,
        right: Species::Minus,
        dright: k,
    };
    charged_bilinear_mode(&f, -(k as i64) - n - 1)
}

pub fn jk_family_charged<T: Scalar>(k: u32) -> OperatorFamily<ChargedMonomial, T> {
    OperatorFamily::new(format!("J{k}(charged)"), IndexSet::Integers, move |n| Arc::new(jk_mode_charged::<T>(k, n)))
}

pub fn jk_family_neutral<T: Scalar>(k: u32) -> OperatorFamily<FermionMonomial, T> {
    transport_family(&jk_family_charged(k), format!("J{k}"))
}

/// Coefficients `a_{k,i}` with `(½z⁻¹ ∂_z)^k = Σ_i a_{k,i} z^{i−2k} ∂_z^i`.
fn half_inverse_derivative_powers<T: Scalar>(k: u32) -> Vec<T> {
    let mut a = vec![T::one()];
    for step in 0..k as i64 {
        let mut next = vec![T::zero(); a.len() + 1];
        for (i, c) in a.iter().enumerate() {
            next[i] = next[i].clone() + T::from_int(i as i64 - 2 * step) / T::from_int(2) * c.clone();
            next[i + 1] = next[i + 1].clone() + c.clone() / T::from_int(2);
        }
        a = next;
    }
    a
}

/// `J^k_n` on the neutral space straight from the fermion bilinears.
pub fn jk_mode_neutral_direct<T: Scalar>(k: u32, n: i64) -> Affine<FermionMonomial, T> {
    let e = -2 * k as i64 - 2 * n - 2;
    let mut terms: Vec<(T, SharedOp<FermionMonomial, T>)> = Vec::new();
    for (i, a) in half_inverse_derivative_powers::<T>(k).into_iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (sleft, eps) in [(Sign::Plus, T::one()), (Sign::Minus, -T::one())] {
            for sright in [Sign::Plus, Sign::Minus] {
                // ∂_z^i of φ(−z) is (−1)^i (∂^iφ)(−z)
                let chain = if sright == Sign::Minus { parity_sign::<T>(i as i64) } else { T::one() };
                let prefactor = parity_sign::<T>(k as i64) * a.clone() * eps.clone() * chain / T::from_int(4);
                let f = FermionBilinear::new(prefactor, 0, sleft, i as u32, sright).shifted(i as i64 - 2 * k as i64 - 1);
                terms.push((T::one(), Arc::new(bilinear_mode(&f, e))));
            }
        }
    }
    Affine::new(terms, T::zero())
}

pub fn jk_family_neutral_direct<T: Scalar>(k: u32) -> OperatorFamily<FermionMonomial, T> {
    OperatorFamily::new(format!("J{k}(field)"), IndexSet::Integers, move |n| jk_mode_neutral_direct::<T>(k, n).shared())
}

/// A finite window `[−radius, radius]²` of an infinite matrix, stored sparsely.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedMatrix<T> {
    radius: i64,
    entries: BTreeMap<i64, BTreeMap<i64, T>>,
}

impl<T: Scalar> TruncatedMatrix<T> {
    pub fn zero(radius: i64) -> Self {
        TruncatedMatrix {
            radius,
            entries: BTreeMap::new(),
        }
    }

    pub fn radius(&self) -> i64 {
        self.radius
    }

    pub fn in_window(&self, i: i64) -> bool {
        i.abs() <= self.radius
    }

    pub fn get(&self, i: i64, j: i64) -> T {
        self.entries.get(&i).and_then(|r| r.get(&j)).cloned().unwrap_or_else(T::zero)
    }

    pub fn add(&mut self, i: i64, j: i64, value: T) {
        if value.is_zero() || !self.in_window(i) || !self.in_window(j) {
            return;
        }
        let row = self.entries.entry(i).or_default();
        let sum = row.get(&j).cloned().unwrap_or_else(T::zero) + value;
        if sum.is_zero() {
            row.remove(&j);
        } else {
            row.insert(j, sum);
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (i64, i64, &T)> {
        self.entries.iter().flat_map(|(&i, row)| row.iter().map(move |(&j, v)| (i, j, v)))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = TruncatedMatrix::zero(self.radius.min(other.radius));
        for (i, j, a) in self.entries() {
            if let Some(row) = other.entries.get(&j) {
                for (&l, b) in row {
                    out.add(i, l, a.clone() * b.clone());
                }
            }
        }
        out
    }

    pub fn scaled(&self, c: &T) -> Self {
        let mut out = TruncatedMatrix::zero(self.radius);
        for (i, j, a) in self.entries() {
            out.add(i, j, a.clone() * c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (i, j, b) in other.entries() {
            out.add(i, j, -b.clone());
        }
        out
    }

    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }
}

/// `(−1)^k Σ_j C(−j, k) E_{j−n, j}` on the window.
pub fn glinf_matrix<T: Scalar>(k: u32, n: i64, radius: i64) -> TruncatedMatrix<T> {
    let mut m = TruncatedMatrix::zero(radius);
    for j in -radius..=radius {
        m.add(j - n, j, parity_sign::<T>(k as i64) * binomial::<T>(-j, k));
    }
    m
}

/// Lift `E_{ij} ↦ :ψ⁺_{−i} ψ⁻_{j−1}:`; entries must lie on one diagonal `j − i = s`.
pub struct MatrixLift<T: Scalar> {
    inner: ChargedQuadratic<T>,
}

impl<T: Scalar> MatrixLift<T> {
    pub fn new(m: &TruncatedMatrix<T>, shift: i64) -> Self {
        debug_assert!(m.entries().all(|(i, j, _)| j - i == shift));
        let m = m.clone();
        // x = −i and y = j − 1, so x + y = shift − 1
        let inner = ChargedQuadratic::new(Species::Plus, Species::Minus, shift - 1, move |x| m.get(-x, shift - x));
        MatrixLift { inner }
    }
}

impl<T: Scalar> LinearOperator<ChargedMonomial, T> for MatrixLift<T> {
    fn apply_basis(&self, v: &ChargedMonomial) -> ChargedState<T> {
        self.inner.apply_basis(v)
    }
}

/// Window radius large enough that every summand acting on the tested states
/// reads an exact entry of the matrix commutator.
pub fn default_window(n1: i64, n2: i64, weight_cut: HalfInteger) -> i64 {
    2 * (n1.abs() + n2.abs()) + weight_cut.twice() + 8
}

/// `[J^{k₁}_{n₁}, J^{k₂}_{n₂}] − k₁! k₂! · lift([M₁, M₂])` is a multiple of the identity.
///
/// The `gl_∞` matrices carry the binomial `C(−j, k)`, which is the Fock
/// operator coefficient divided by `k!`; hence the factorial rescaling.
pub fn scalar_defect_check(k1: u32, n1: i64, k2: u32, n2: i64, weight_cut: HalfInteger) -> VerificationReport {
    type Q = crate::Rational;
    let start = Instant::now();
    let mut report = VerificationReport::new("winf-defect")
        .param("k1", k1)
        .param("n1", n1)
        .param("k2", k2)
        .param("n2", n2)
        .param("weight_cut", weight_cut);
    let radius = default_window(n1, n2, weight_cut);
    let m1 = glinf_matrix::<Q>(k1, n1, radius);
    let m2 = glinf_matrix::<Q>(k2, n2, radius);
    let scale = factorial::<Q>(k1) * factorial::<Q>(k2);
    let lift = MatrixLift::new(&m1.commutator(&m2).scaled(&scale), n1 + n2);
    let a = jk_mode_charged::<Q>(k1, n1);
    let b = jk_mode_charged::<Q>(k2, n2);
    let basis = enumerate_charged_basis(weight_cut);
    let defects: Vec<(ChargedMonomial, ChargedState<Q>)> = basis
        .par_iter()
        .map(|v| {
            let s = ChargedState::basis(v.clone());
            let d = &bracket_apply(BracketKind::Commutator, &a, &b, &s) - &lift.apply(&s);
            (v.clone(), d)
        })
        .collect();
    report.cases_run = basis.len() as u64;
    let mut scalar: Option<(ChargedMonomial, Q)> = None;
    for (v, d) in defects {
        let value = d.coeff(&v);
        let residual = &d - &ChargedState::term(v.clone(), value.clone());
        if !residual.is_zero() {
            report.fail(format!("v={v}"), &d, format!("{value} {v}"));
            continue;
        }
        match &scalar {
            None => scalar = Some((v, value)),
            Some((w, c)) if *c != value => {
                report.fail(format!("v={v} against {w}"), format!("{value} {v}"), format!("{c} {v}"));
            }
            _ => {}
        }
    }
    if let Some((_, c)) = scalar {
        report.observe("defect", c);
    }
    report.elapsed_ms = start.elapsed().as_millis() as u64;
    report
}

/// The scalar found by [`scalar_defect_check`], if the check passes.
pub fn defect_scalar(k1: u32, n1: i64, k2: u32, n2: i64, weight_cut: HalfInteger) -> Option<crate::Rational> {
    let r = scalar_defect_check(k1, n1, k2, n2, weight_cut);
    if !r.passed() {
        return None;
    }
    r.observed.get("defect").and_then(|s| crate::scalar::parse_scalar(s).ok())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charged::h_a_mode;
    use crate::fock::enumerate_basis;
    use crate::heisenberg::h_mode;
    use crate::Rational as Q;

    #[test]
    fn derivative_power_coefficients() {
        // (½z⁻¹∂)² = ¼ z⁻² ∂² − ¼ z⁻³ ∂
        let a = half_inverse_derivative_powers::<Q>(2);
        assert_eq!(a, vec![Q::from_int(0), Q::from_ratio(-1, 4), Q::from_ratio(1, 4)]);
    }

    #[test]
    fn j0_is_heisenberg() {
        let basis = enumerate_charged_basis(HalfInteger::from_int(5));
        for n in -3..=3 {
            let j = jk_mode_charged::<Q>(0, n);
            let h = h_a_mode::<Q>(n);
            for v in &basis {
                assert_eq!(j.apply_basis(v), h.apply_basis(v));
            }
        }
        let nbasis = enumerate_basis(HalfInteger::from_int(5));
        for n in -3..=3 {
            let direct = jk_mode_neutral_direct::<Q>(0, n);
            let transported = jk_family_neutral::<Q>(0).mode(n);
            for v in &nbasis {
                let h = h_mode::<Q>(n).apply_basis(v);
                assert_eq!(direct.apply_basis(v), h, "direct n={n} v={v}");
                assert_eq!(transported.apply_basis(v), h, "transported n={n} v={v}");
            }
        }
    }

    #[test]
    fn higher_j_direct_matches_transport() {
        let nbasis = enumerate_basis(HalfInteger::from_int(5));
        for k in 1..=2 {
            for n in -2..=2 {
                let direct = jk_mode_neutral_direct::<Q>(k, n);
                let transported = jk_family_neutral::<Q>(k).mode(n);
                for v in &nbasis {
                    assert_eq!(direct.apply_basis(v), transported.apply_basis(v), "k={k} n={n} v={v}");
                }
            }
        }
    }

    #[test]
    fn matrix_examples() {
        let id = glinf_matrix::<Q>(0, 0, 4);
        for i in -4..=4 {
            for j in -4..=4 {
                assert_eq!(id.get(i, j), if i == j { Q::from_int(1) } else { Q::from_int(0) });
            }
        }
        let shift = glinf_matrix::<Q>(0, 2, 4);
        assert_eq!(shift.get(-1, 1), Q::from_int(1));
        let diag = glinf_matrix::<Q>(1, 0, 4);
        assert_eq!(diag.get(3, 3), Q::from_int(3));
    }

    #[test]
    fn lift_of_matrix_is_scaled_mode() {
        let basis = enumerate_charged_basis(HalfInteger::from_int(5));
        for k in 0..=2 {
            for n in -3..=3 {
                let lift = MatrixLift::new(&glinf_matrix::<Q>(k, n, 30).scaled(&factorial(k)), n);
                let j = jk_mode_charged::<Q>(k, n);
                for v in &basis {
                    assert_eq!(lift.apply_basis(v), j.apply_basis(v), "k={k} n={n} v={v}");
                }
            }
        }
    }

    #[test]
    fn defect_examples() {
        let cut = HalfInteger::from_int(5);
        assert_eq!(defect_scalar(0, 2, 0, -2, cut), Some(Q::from_int(2)));
        assert_eq!(defect_scalar(0, 1, 0, 2, cut), Some(Q::from_int(0)));
        assert!(defect_scalar(1, 1, 1, -1, cut).is_some());
        assert!(defect_scalar(1, 2, 2, -1, cut).is_some());
        assert!(defect_scalar(2, 1, 1, 2, cut).is_some());
    }
}
