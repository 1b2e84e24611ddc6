//! Virasoro families on the neutral Fock space.
//!
//! * `L^{1/2}`: `½ :∂φ(z)φ(z):`, `L(z) = Σ L_n z^{−n−2}`; central charge ½.
//! * `L̃^{1/2}`: the same field at `−z`, i.e. `(−1)^n L^{1/2}_n`.
//! * `L¹`: the Sugawara field `½ Σ_k :h_{n−k} h_k:`; central charge 1.
//! * `L̃¹`: `½ L^{1/2}_{2n} + δ_{n,0}/32`; central charge 1.
//! * `L^{λ,b}`: `L¹_n − (K(2n+1) + b) h_n + M δ_{n,0}` with `K = ¼ − λ/2`
//!   and `M = (b² + 2Kb − 3K²)/2`; central charge `−2 + 12λ − 12λ²`.

use std::sync::Arc;

use crate::fock::{FermionMonomial, FockState};
use crate::grading::deg_h;
use crate::heisenberg::{h_mode, heisenberg_family};
use crate::modes::{bilinear_family, bilinear_mode, FermionBilinear, Sign};
use crate::operator::{Affine, IndexSet, LinearOperator, OperatorFamily};
use crate::scalar::{delta, Scalar};

type Coeff<T> = crate::operator::IndexCoeff<T>;

fn constant<T: Scalar>(value: T) -> Coeff<T> {
    Arc::new(move |_| value.clone())
}

/// `½ :∂φ(z)φ(z):`
pub fn l_half_field<T: Scalar>() -> FermionBilinear<T> {
    FermionBilinear::new(T::from_ratio(1, 2), 1, Sign::Plus, 0, Sign::Plus)
}

pub fn l_half_mode<T: Scalar>(n: i64) -> crate::modes::QuadraticModeOperator<T> {
    bilinear_mode(&l_half_field(), -n - 2)
}

pub fn l_half_family<T: Scalar>() -> OperatorFamily<FermionMonomial, T> {
    bilinear_family("Lhalf", l_half_field(), |n| -n - 2)
}

/// `(−1)^n L^{1/2}_n`.
pub fn l_half_tilde_family<T: Scalar>() -> OperatorFamily<FermionMonomial, T> {
    l_half_family().parity_flip("Lhalf~")
}

/// `½ :(∂φ)(−z)φ(−z):` extracted directly.
pub fn l_half_tilde_field_family<T: Scalar>() -> OperatorFamily<FermionMonomial, T> {
    let f = FermionBilinear::new(T::from_ratio(1, 2), 1, Sign::Minus, 0, Sign::Minus);
    bilinear_family("Lhalf~(field)", f, |n| -n - 2)
}

/// The four weight-2 bilinears, with mode `j` at `z^{−j−2}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Weight2Variant {
    /// `:(∂φ)(z) φ(z):`
    PlusPlus,
    /// `:(∂φ)(−z) φ(−z):`
    MinusMinus,
    /// `:(∂φ)(z) φ(−z):`
    PlusMinus,
    /// `:(∂φ)(−z) φ(z):`
    MinusPlus,
}

pub fn weight2_bilinear<T: Scalar>(variant: Weight2Variant) -> FermionBilinear<T> {
    let (a, b) = match variant {
        Weight2Variant::PlusPlus => (Sign::Plus, Sign::Plus),
        Weight2Variant::MinusMinus => (Sign::Minus, Sign::Minus),
        Weight2Variant::PlusMinus => (Sign::Plus, Sign::Minus),
        Weight2Variant::MinusPlus => (Sign::Minus, Sign::Plus),
    };
    FermionBilinear::new(T::one(), 1, a, 0, b)
}

pub fn weight2_field<T: Scalar>(variant: Weight2Variant) -> OperatorFamily<FermionMonomial, T> {
    bilinear_family(format!("W2[{variant:?}]"), weight2_bilinear(variant), |j| -j - 2)
}

/// `L¹_n = ½ Σ_k :h_{n−k} h_k:`, larger index to the right.
///
/// On a monomial of energy `d`, `h_r` vanishes for `r > d`, so only the
/// pairs `l + r = n` with `⌈n/2⌉ ≤ r ≤ d` contribute.
#[derive(Clone, Copy, Debug)]
pub struct SugawaraMode {
    pub n: i64,
}

impl<T: Scalar> LinearOperator<FermionMonomial, T> for SugawaraMode {
    fn apply_basis(&self, v: &FermionMonomial) -> FockState<T> {
        let d = deg_h(v).expect("monomials have integral energy") as i64;
        let s = FockState::basis(v.clone());
        let n = self.n;
        let mut out = FockState::zero();
        for r in (n + 1).div_euclid(2)..=d {
            let hr = h_mode::<T>(r).apply(&s);
            if hr.is_zero() {
                continue;
            }
            let l = n - r;
            let coeff = if l == r { T::from_ratio(1, 2) } else { T::one() };
            out.add_scaled(&h_mode::<T>(l).apply(&hr), &coeff);
        }
        out
    }
}

pub fn l1_family<T: Scalar>() -> OperatorFamily<FermionMonomial, T> {
    OperatorFamily::new("L1", IndexSet::Integers, |n| Arc::new(SugawaraMode { n }))
}

/// `½ L^{1/2}_{2n} + δ_{n,0}/32`.
pub fn l1_tilde_family<T: Scalar>() -> OperatorFamily<FermionMonomial, T> {
    let base = l_half_family::<T>();
    OperatorFamily::new("L1~", IndexSet::Integers, move |n| {
        Affine::new(
            vec![(T::from_ratio(1, 2), base.mode(2 * n))],
            delta::<T>(n == 0) * T::from_ratio(1, 32),
        )
        .shared()
    })
}

/// `(1/8z²)(:∂φ(z)φ(z): + :(∂φ)(−z)φ(−z):) + 1/(32z⁴)` read in `z²`.
pub fn l1_tilde_field_family<T: Scalar>() -> OperatorFamily<FermionMonomial, T> {
    OperatorFamily::new("L1~(field)", IndexSet::Integers, |n| {
        let plus = weight2_bilinear::<T>(Weight2Variant::PlusPlus);
        let minus = weight2_bilinear::<T>(Weight2Variant::MinusMinus);
        let e = -2 * n - 2;
        Affine::new(
            vec![
                (T::from_ratio(1, 8), Arc::new(bilinear_mode(&plus, e))),
                (T::from_ratio(1, 8), Arc::new(bilinear_mode(&minus, e))),
            ],
            delta::<T>(n == 0) * T::from_ratio(1, 32),
        )
        .shared()
    })
}

/// Parameters `(λ, b)` of the two-parameter family.
#[derive(Clone, Debug, PartialEq)]
pub struct VirasoroParams<T> {
    pub lambda: T,
    pub b: T,
}

impl<T: Scalar> VirasoroParams<T> {
    pub fn new(lambda: T, b: T) -> Self {
        VirasoroParams { lambda, b }
    }

    /// `K = ¼ − λ/2`.
    pub fn k(&self) -> T {
        T::from_ratio(1, 4) - self.lambda.clone() / T::from_int(2)
    }

    /// The constant term `(b² + 2Kb − 3K²)/2` of the zero mode.
    pub fn zero_mode_constant(&self) -> T {
        let k = self.k();
        let b = self.b.clone();
        (b.clone() * b.clone() + T::from_int(2) * k.clone() * b - T::from_int(3) * k.clone() * k) / T::from_int(2)
    }

    pub fn central_charge(&self) -> T {
        central_charge_lambda(&self.lambda)
    }
}

/// `−2 + 12λ − 12λ²`.
pub fn central_charge_lambda<T: Scalar>(lambda: &T) -> T {
    T::from_int(-2) + T::from_int(12) * lambda.clone() - T::from_int(12) * lambda.clone() * lambda.clone()
}

/// `L^{λ,b}_n = L¹_n − (K(2n+1) + b) h_n + M δ_{n,0}`.
pub fn l_lambda_b_family<T: Scalar>(params: &VirasoroParams<T>) -> OperatorFamily<FermionMonomial, T> {
    l_lambda_b_family_with_constant(params, params.zero_mode_constant())
}

/// The same family with an arbitrary zero-mode constant.
pub fn l_lambda_b_family_with_constant<T: Scalar>(
    params: &VirasoroParams<T>,
    constant_term: T,
) -> OperatorFamily<FermionMonomial, T> {
    let k = params.k();
    let b = params.b.clone();
    let h_coeff: Coeff<T> = Arc::new(move |n| -(k.clone() * T::from_int(2 * n + 1) + b.clone()));
    OperatorFamily::affine(
        format!("Llb[{},{}]", params.lambda, params.b),
        vec![(l1_family(), constant(T::one())), (heisenberg_family(), h_coeff)],
        move |n| delta::<T>(n == 0) * constant_term.clone(),
    )
}

/// `n ↦ (1/N) F_{Nn} + δ_{n,0} (N² − 1) c / (24N)`.
pub fn doubling_construct<T: Scalar>(
    base: &OperatorFamily<FermionMonomial, T>,
    c: T,
    n_fold: u32,
) -> OperatorFamily<FermionMonomial, T> {
    assert!(n_fold > 0, "the fold must be positive");
    let big_n = n_fold as i64;
    let shift = T::from_int(big_n * big_n - 1) * c / T::from_int(24 * big_n);
    let base = base.clone();
    OperatorFamily::new(format!("{}^({n_fold})", base.name()), IndexSet::Integers, move |n| {
        Affine::new(
            vec![(T::from_ratio(1, big_n), base.mode(big_n * n))],
            delta::<T>(n == 0) * shift.clone(),
        )
        .shared()
    })
}

/// `j ↦` coefficient of `z^{−j−2}` in `∂h(z)`: `(−2n−1) h_n` at `j = 2n`, zero at odd `j`.
pub fn h_derivative_family<T: Scalar>() -> OperatorFamily<FermionMonomial, T> {
    OperatorFamily::new("dh", IndexSet::Integers, |j| {
        if j.rem_euclid(2) == 0 {
            let n = j / 2;
            Affine::new(vec![(T::from_int(-2 * n - 1), Arc::new(h_mode::<T>(n)))], T::zero()).shared()
        } else {
            Affine::scalar(T::zero()).shared()
        }
    })
}

/// `j ↦ ½ (:(∂φ)(z)φ(−z): + :(∂φ)(−z)φ(z):)_j`.
pub fn h_derivative_fermionic_family<T: Scalar>() -> OperatorFamily<FermionMonomial, T> {
    let half: Coeff<T> = constant(T::from_ratio(1, 2));
    OperatorFamily::affine(
        "(W2[PlusMinus]+W2[MinusPlus])/2",
        vec![
            (weight2_field(Weight2Variant::PlusMinus), half.clone()),
            (weight2_field(Weight2Variant::MinusPlus), half),
        ],
        |_| T::zero(),
    )
}

/// `j ↦` coefficient of `z^{−j−2}` in `:h(z)h(z):`: `2 L¹_{j/2}` at even `j`, zero at odd `j`.
pub fn h_square_family<T: Scalar>() -> OperatorFamily<FermionMonomial, T> {
    OperatorFamily::new(":hh:", IndexSet::Integers, |j| {
        if j.rem_euclid(2) == 0 {
            Affine::new(vec![(T::from_int(2), Arc::new(SugawaraMode { n: j / 2 }))], T::zero()).shared()
        } else {
            Affine::scalar(T::zero()).shared()
        }
    })
}

/// `j ↦` coefficient of `z^{−j−2}` in `¼ :(∂φ)(−z)φ(−z): + ¼ :∂φ(z)φ(z): − (1/2z) h(z)`.
pub fn h_square_fermionic_family<T: Scalar>() -> OperatorFamily<FermionMonomial, T> {
    OperatorFamily::new("(W2[PlusPlus]+W2[MinusMinus])/4 - h/2z", IndexSet::Integers, |j| {
        let e = -j - 2;
        let mut terms: Vec<(T, crate::operator::SharedOp<FermionMonomial, T>)> = vec![
            (T::from_ratio(1, 4), Arc::new(bilinear_mode(&weight2_bilinear(Weight2Variant::PlusPlus), e))),
            (T::from_ratio(1, 4), Arc::new(bilinear_mode(&weight2_bilinear(Weight2Variant::MinusMinus), e))),
        ];
        if j.rem_euclid(2) == 0 {
            terms.push((T::from_ratio(-1, 2), Arc::new(h_mode::<T>(j / 2))));
        }
        Affine::new(terms, T::zero()).shared()
    })
}

/// Coefficient of `z^e` in `L¹(z²) = (1/2z²) :h(z)h(z):`, computed from the
/// fermionic side of the `:hh:` identity.
pub fn l1_field_coefficient<T: Scalar>(e: i64) -> Affine<FermionMonomial, T> {
    // (1/2z²)·X(z) at z^e is ½ X at z^{e+2}, i.e. mode j = −e − 4
    let j = -e - 4;
    let x = h_square_fermionic_family::<T>().mode(j);
    Affine::new(vec![(T::from_ratio(1, 2), x)], T::zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::enumerate_basis;
    use crate::grading::vacuum_like;
    use crate::scalar::HalfInteger;
    use crate::Rational as Q;

    fn on_vn(op: &dyn LinearOperator<FermionMonomial, Q>, n: i64) -> FockState<Q> {
        op.apply(&FockState::basis(vacuum_like(n)))
    }

    #[test]
    fn l_half_zero_mode_pins() {
        let l0 = l_half_mode::<Q>(0);
        assert!(l0.apply(&crate::fock::vacuum_state()).is_zero());
        let v1 = FockState::basis(vacuum_like(1));
        assert_eq!(l0.apply(&v1), v1.scaled(&Q::from_ratio(3, 2)));
    }

    #[test]
    fn sugawara_zero_mode_on_vacuum_like() {
        for n in -4..=4 {
            let got = on_vn(&SugawaraMode { n: 0 }, n);
            assert_eq!(got, FockState::basis(vacuum_like(n)).scaled(&Q::from_ratio(n * n, 2)));
        }
    }

    #[test]
    fn sugawara_soundness() {
        // h_r annihilates every monomial of energy below r
        for v in enumerate_basis(HalfInteger::from_int(6)) {
            let d = deg_h(&v).unwrap() as i64;
            for r in d + 1..d + 4 {
                assert!(h_mode::<Q>(r).apply_basis(&v).is_zero(), "h[{r}] on {v}");
            }
        }
    }

    #[test]
    fn zero_mode_constant_pins() {
        let p = VirasoroParams::new(Q::from_ratio(1, 2), Q::from_ratio(-1, 4));
        assert_eq!(p.zero_mode_constant(), Q::from_ratio(1, 32));
        let p = VirasoroParams::new(Q::from_ratio(1, 2), Q::from_int(0));
        assert_eq!(p.zero_mode_constant(), Q::from_int(0));
        assert_eq!(central_charge_lambda(&Q::from_ratio(1, 2)), Q::from_int(1));
        assert_eq!(central_charge_lambda(&Q::from_int(0)), Q::from_int(-2));
    }

    #[test]
    fn weight2_zero_mode_is_twice_l_half() {
        let v1 = FockState::<Q>::basis(vacuum_like(1));
        let w = weight2_field::<Q>(Weight2Variant::PlusPlus).mode(0).apply(&v1);
        assert_eq!(w, v1.scaled(&Q::from_int(3)));
    }

    #[test]
    fn l1_tilde_on_vacuum() {
        let got = l1_tilde_family::<Q>().mode(0).apply(&crate::fock::vacuum_state());
        assert_eq!(got, crate::fock::vacuum_state().scaled(&Q::from_ratio(1, 32)));
    }
}
