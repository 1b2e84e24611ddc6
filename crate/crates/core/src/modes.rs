//! Normal-ordered quadratic operators in neutral fermion modes.
//!
//! An operator `Σ_p c(p) :φ_p φ_{S-p}: + s·Id` is stored lazily as its
//! coefficient rule `p ↦ c(p)` together with the fixed total `S`. On any
//! monomial only finitely many summands act: either one factor annihilates
//! an index present in the monomial, or both factors are creators, which
//! forces `S < p < 0`. [`QuadraticModeOperator::support`] returns exactly
//! that finite candidate set.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::error::FockError;
use crate::fock::{FermionMonomial, FockState, ModeIndex};
use crate::operator::{IndexSet, LinearOperator, OperatorFamily};
use crate::scalar::{falling_factorial, parity_sign, HalfInteger, Scalar};
use crate::state::LinComb;

/// The data of `:φ_p φ_q:` with annihilators moved right.
///
/// Both identities hold: `:φ_p φ_q: = sign · φ_left φ_right` and
/// `:φ_p φ_q: = φ_p φ_q − contraction`, where the contraction is the vacuum
/// expectation `⟨0|φ_p φ_q|0⟩ = δ_{p,−q}[p > 0]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NormalOrderedPair {
    pub left: ModeIndex,
    pub right: ModeIndex,
    pub sign: i8,
    pub contraction: u8,
}

pub fn normal_order_pair(p: ModeIndex, q: ModeIndex) -> NormalOrderedPair {
    if p.is_annihilation() && q.is_creation() {
        NormalOrderedPair {
            left: q,
            right: p,
            sign: -1,
            contraction: u8::from(p.twice() == -q.twice()),
        }
    } else {
        NormalOrderedPair {
            left: p,
            right: q,
            sign: 1,
            contraction: 0,
        }
    }
}

/// `:φ_p φ_q:` applied to a basis monomial.
pub fn apply_normal_ordered<T: Scalar>(p: ModeIndex, q: ModeIndex, v: &FermionMonomial) -> Option<(T, FermionMonomial)> {
    let pair = normal_order_pair(p, q);
    let (neg_r, w) = v.apply_mode(pair.right)?;
    let (neg_l, u) = w.apply_mode(pair.left)?;
    let negative = (neg_r ^ neg_l) ^ (pair.sign < 0);
    Some((T::sign_of(negative), u))
}

type Rule<T> = Arc<dyn Fn(ModeIndex) -> T + Send + Sync>;

/// `Σ_p c(p) :φ_p φ_{S−p}: + scalar·Id`, evaluated lazily.
#[derive(Clone)]
pub struct QuadraticModeOperator<T: Scalar> {
    total_twice: i64,
    rule: Rule<T>,
    scalar: T,
}

impl<T: Scalar> fmt::Debug for QuadraticModeOperator<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("QuadraticModeOperator")
            .field("total", &HalfInteger::from_twice(self.total_twice))
            .field("scalar", &self.scalar)
            .finish()
    }
}

impl<T: Scalar> QuadraticModeOperator<T> {
    /// `total_twice` is `2S`; it must be even because both modes are half-integers.
    pub fn new(total_twice: i64, rule: impl Fn(ModeIndex) -> T + Send + Sync + 'static) -> Self {
        assert!(total_twice % 2 == 0, "mode sum of two half-integers is an integer");
        QuadraticModeOperator {
            total_twice,
            rule: Arc::new(rule),
            scalar: T::zero(),
        }
    }

    pub fn zero() -> Self {
        QuadraticModeOperator::new(0, |_| T::zero())
    }

    pub fn with_scalar(mut self, scalar: T) -> Self {
        self.scalar = scalar;
        self
    }

    pub fn scalar_part(&self) -> &T {
        &self.scalar
    }

    /// The constant `S = p + q` shared by all summands.
    pub fn total(&self) -> HalfInteger {
        HalfInteger::from_twice(self.total_twice)
    }

    /// Change in `L_0`-weight caused on any monomial.
    pub fn weight_shift(&self) -> HalfInteger {
        HalfInteger::from_twice(-self.total_twice)
    }

    /// The summand with left mode `p`: `(p, S − p, c(p))`.
    pub fn summand(&self, p: ModeIndex) -> (ModeIndex, ModeIndex, T) {
        let q = ModeIndex::from_twice(self.total_twice - p.twice()).expect("odd");
        (p, q, (self.rule)(p))
    }

    /// Left modes of every summand that can act nonzero on `v`.
    pub fn support(&self, v: &FermionMonomial) -> BTreeSet<ModeIndex> {
        let mut out = BTreeSet::new();
        for &n in v.indices() {
            let a = ModeIndex::annihilation(n);
            out.insert(a);
            out.insert(ModeIndex::from_twice(self.total_twice - a.twice()).expect("odd"));
        }
        // both factors creators: total < p < 0
        let mut p = self.total_twice + 1;
        while p < 0 {
            out.insert(ModeIndex::from_twice(p).expect("odd"));
            p += 2;
        }
        out
    }

    fn apply_summands(&self, v: &FermionMonomial, modes: impl IntoIterator<Item = ModeIndex>) -> FockState<T> {
        let mut out = FockState::term(v.clone(), self.scalar.clone());
        for p in modes {
            let (p, q, c) = self.summand(p);
            if c.is_zero() {
                continue;
            }
            if let Some((sign, w)) = apply_normal_ordered::<T>(p, q, v) {
                out.add_term(w, sign * c);
            }
        }
        out
    }

    /// Evaluates over the support and additionally probes every summand with
    /// `|p| ≤ probe` outside it, failing if any of those acts nonzero.
    pub fn apply_checked(&self, s: &FockState<T>, probe: HalfInteger) -> Result<FockState<T>, FockError> {
        let mut out = FockState::zero();
        for (v, c) in s.iter() {
            let support = self.support(v);
            let mut p = -probe.twice() | 1;
            while p <= probe.twice() {
                let mode = ModeIndex::from_twice(p).expect("odd");
                if !support.contains(&mode) {
                    let (l, r, coeff) = self.summand(mode);
                    if !coeff.is_zero() && apply_normal_ordered::<T>(l, r, v).is_some() {
                        return Err(FockError::SupportViolation {
                            mode: mode.to_string(),
                            monomial: v.to_string(),
                        });
                    }
                }
                p += 2;
            }
            out.add_scaled(&self.apply_summands(v, support), c);
        }
        Ok(out)
    }
}

impl<T: Scalar> LinearOperator<FermionMonomial, T> for QuadraticModeOperator<T> {
    fn apply_basis(&self, v: &FermionMonomial) -> FockState<T> {
        self.apply_summands(v, self.support(v))
    }
}

/// A `±1` argument sign for `φ(±z)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    fn power<T: Scalar>(self, k: i64) -> T {
        match self {
            Sign::Plus => T::one(),
            Sign::Minus => parity_sign(k),
        }
    }
}

/// `prefactor · z^zshift · :(∂^dleft φ)(σ₁z) (∂^dright φ)(σ₂z):`.
///
/// Derivatives act on `φ` before the argument is substituted, so
/// `(∂φ)(−z)` is the field written `∂_{−z}φ(−z)`.
#[derive(Clone, Debug, PartialEq)]
pub struct FermionBilinear<T> {
    pub prefactor: T,
    pub zshift: i64,
    pub dleft: u32,
    pub dright: u32,
    pub sleft: Sign,
    pub sright: Sign,
}

impl<T: Scalar> FermionBilinear<T> {
    pub fn new(prefactor: T, dleft: u32, sleft: Sign, dright: u32, sright: Sign) -> Self {
        FermionBilinear {
            prefactor,
            zshift: 0,
            dleft,
            dright,
            sleft,
            sright,
        }
    }

    pub fn shifted(mut self, zshift: i64) -> Self {
        self.zshift = zshift;
        self
    }
}

/// Coefficient of `z^e` in a fermion bilinear, as a quadratic mode operator.
///
/// With `φ(x) = Σ_k φ_{−k−½} x^k`, the derivative `(∂^a φ)(σx)` contributes
/// `k^{(a)} σ^{k−a} φ_{−k−½} x^{k−a}`; collecting `z^e` forces
/// `k + l = e − s + a + b`.
pub fn bilinear_mode<T: Scalar>(f: &FermionBilinear<T>, e: i64) -> QuadraticModeOperator<T> {
    let kl_sum = e - f.zshift + f.dleft as i64 + f.dright as i64;
    let f = f.clone();
    QuadraticModeOperator::new(2 * (-kl_sum - 1), move |p| {
        let k = (-p.twice() - 1) / 2;
        let l = kl_sum - k;
        f.prefactor.clone()
            * falling_factorial::<T>(k, f.dleft)
            * falling_factorial::<T>(l, f.dright)
            * f.sleft.power::<T>(k - f.dleft as i64)
            * f.sright.power::<T>(l - f.dright as i64)
    })
}

/// The family `n ↦ coefficient of z^{exponent(n)}` of a bilinear field.
pub fn bilinear_family<T: Scalar>(
    name: impl Into<String>,
    f: FermionBilinear<T>,
    exponent: impl Fn(i64) -> i64 + Send + Sync + 'static,
) -> OperatorFamily<FermionMonomial, T> {
    OperatorFamily::new(name, IndexSet::Integers, move |n| Arc::new(bilinear_mode(&f, exponent(n))))
}

/// Apply a quadratic operator to a state, failing on a support violation
/// detected within `|p| ≤ probe`.
pub fn apply_quadratic<T: Scalar>(
    op: &QuadraticModeOperator<T>,
    s: &FockState<T>,
    probe: HalfInteger,
) -> Result<FockState<T>, FockError> {
    op.apply_checked(s, probe)
}

/// Vacuum expectation value `⟨0| A |0⟩` of an operator.
pub fn vacuum_expectation<T: Scalar, O: LinearOperator<FermionMonomial, T> + ?Sized>(op: &O) -> T {
    op.apply_basis(&FermionMonomial::vacuum()).coeff(&FermionMonomial::vacuum())
}

/// Pure helper used by tests and the harness: apply `:φ_p φ_q:` to a state.
pub fn apply_pair<T: Scalar>(p: ModeIndex, q: ModeIndex, s: &FockState<T>) -> FockState<T> {
    s.map_linear(|v| match apply_normal_ordered::<T>(p, q, v) {
        Some((c, w)) => LinComb::term(w, c),
        None => LinComb::zero(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{apply_fermion_mode, enumerate_basis, vacuum_state};
    use num_rational::BigRational;
    use num_traits::{One, Zero};

    type Q = BigRational;

    fn m(s: &str) -> ModeIndex {
        s.parse().unwrap()
    }

    #[test]
    fn normal_order_regions() {
        let a = normal_order_pair(m("-3/2"), m("-1/2"));
        assert_eq!((a.left, a.right, a.sign, a.contraction), (m("-3/2"), m("-1/2"), 1, 0));
        let b = normal_order_pair(m("1/2"), m("-1/2"));
        assert_eq!((b.left, b.right, b.sign, b.contraction), (m("-1/2"), m("1/2"), -1, 1));
        let c = normal_order_pair(m("-1/2"), m("1/2"));
        assert_eq!((c.left, c.right, c.sign, c.contraction), (m("-1/2"), m("1/2"), 1, 0));
    }

    #[test]
    fn normal_order_is_product_minus_contraction() {
        let basis = enumerate_basis(HalfInteger::from_int(3));
        let modes: Vec<ModeIndex> = (-7..=7).filter_map(ModeIndex::from_twice).collect();
        for &p in &modes {
            for &q in &modes {
                let pair = normal_order_pair(p, q);
                for v in &basis {
                    let s = FockState::<Q>::basis(v.clone());
                    let product = apply_fermion_mode(p, &apply_fermion_mode(q, &s));
                    let expected = &product - &s.scaled(&Q::from_int(pair.contraction as i64));
                    assert_eq!(apply_pair(p, q, &s), expected, ":{p} {q}: on {v}");
                }
                let on_vac = apply_pair::<Q>(p, q, &vacuum_state());
                assert!(on_vac.coeff(&FermionMonomial::vacuum()).is_zero());
            }
        }
    }

    #[test]
    fn self_product_field_is_zero() {
        let f = FermionBilinear::new(Q::one(), 0, Sign::Plus, 0, Sign::Plus);
        let basis = enumerate_basis(HalfInteger::from_int(5));
        for e in -8..=8 {
            let op = bilinear_mode(&f, e);
            for v in &basis {
                assert!(op.apply_basis(v).is_zero(), "e = {e} on {v}");
            }
        }
    }

    #[test]
    fn l_half_zero_mode_is_weight() {
        let f = FermionBilinear::new(Q::from_ratio(1, 2), 1, Sign::Plus, 0, Sign::Plus);
        let l0 = bilinear_mode(&f, -2);
        for v in enumerate_basis(HalfInteger::from_int(5)) {
            let expected = FockState::term(v.clone(), v.weight().to_scalar::<Q>());
            assert_eq!(l0.apply_basis(&v), expected);
        }
    }

    #[test]
    fn support_is_sound_for_bilinears() {
        let fields = [
            FermionBilinear::new(Q::one(), 1, Sign::Plus, 0, Sign::Minus),
            FermionBilinear::new(Q::from_ratio(1, 2), 0, Sign::Plus, 0, Sign::Minus),
            FermionBilinear::new(Q::from_ratio(3, 7), 2, Sign::Minus, 1, Sign::Plus),
        ];
        let basis = enumerate_basis(HalfInteger::from_int(4));
        for f in &fields {
            for e in -7..=5 {
                let op = bilinear_mode(f, e);
                for v in &basis {
                    let s = FockState::basis(v.clone());
                    let checked = op.apply_checked(&s, HalfInteger::from_int(14)).unwrap();
                    assert_eq!(checked, op.apply(&s));
                }
            }
        }
    }

    #[test]
    fn creator_pairs_are_in_support() {
        let op = QuadraticModeOperator::<Q>::new(-4, |_| Q::one());
        let support = op.support(&FermionMonomial::vacuum());
        let expected: BTreeSet<ModeIndex> = [m("-3/2"), m("-1/2")].into_iter().collect();
        assert_eq!(support, expected);
        let out = op.apply_checked(&vacuum_state(), HalfInteger::from_int(6)).unwrap();
        // :φ_{-3/2}φ_{-1/2}: + :φ_{-1/2}φ_{-3/2}: = 0
        assert!(out.is_zero());
    }
}
