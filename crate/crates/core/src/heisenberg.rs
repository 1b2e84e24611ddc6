//! The Heisenberg modes `h_n` on the neutral Fock space.
//!
//! `h_n = ½ Σ_i (−1)^{i+1} :φ_{−i−½} φ_{2n+i+½}:`, which is also the
//! coefficient of `z^{−2n−1}` in `½ :φ(z)φ(−z):`.

use std::sync::Arc;
use std::time::Instant;

use crate::fock::{FermionMonomial, FockState};
use crate::grading::{partition_count, partitions, sector_basis, vacuum_like};
use crate::harness::VerificationReport;
use crate::linalg::{coordinate_rows, rank, rank_fraction_free};
use crate::modes::{bilinear_family, bilinear_mode, FermionBilinear, QuadraticModeOperator, Sign};
use crate::operator::{IndexSet, LinearOperator, OperatorFamily};
use crate::scalar::{parity_sign, Scalar};

/// `h_n` from its explicit mode sum.
pub fn h_mode<T: Scalar>(n: i64) -> QuadraticModeOperator<T> {
    QuadraticModeOperator::new(4 * n, |p| {
        let i = (-p.twice() - 1) / 2;
        parity_sign::<T>(i + 1) / T::from_int(2)
    })
}

/// `½ :φ(z)φ(−z):`.
pub fn heisenberg_field<T: Scalar>() -> FermionBilinear<T> {
    FermionBilinear::new(T::from_ratio(1, 2), 0, Sign::Plus, 0, Sign::Minus)
}

/// `h_n` extracted from the field at `z^{−2n−1}`.
pub fn h_mode_from_field<T: Scalar>(n: i64) -> QuadraticModeOperator<T> {
    bilinear_mode(&heisenberg_field(), -2 * n - 1)
}

pub fn heisenberg_family<T: Scalar>() -> OperatorFamily<FermionMonomial, T> {
    OperatorFamily::new("h", IndexSet::Integers, |n| Arc::new(h_mode::<T>(n)))
}

pub fn heisenberg_field_family<T: Scalar>() -> OperatorFamily<FermionMonomial, T> {
    bilinear_family("h(field)", heisenberg_field(), |n| -2 * n - 1)
}

/// `h_{k_l} ⋯ h_{k_1} s`, with `modes = [k_1, …, k_l]` applied first to last.
pub fn apply_h_word<T: Scalar>(modes: &[i64], s: &FockState<T>) -> FockState<T> {
    modes.iter().fold(s.clone(), |acc, &k| h_mode::<T>(k).apply(&acc))
}

/// The vectors `h_{−k_l} ⋯ h_{−k_1} v_n`, one per partition of `k`.
pub fn spanning_vectors<T: Scalar>(n: i64, k: u32) -> Vec<(Vec<u32>, FockState<T>)> {
    let v = FockState::basis(vacuum_like(n));
    partitions(k)
        .into_iter()
        .map(|p| {
            let modes: Vec<i64> = p.parts().iter().map(|&x| -(x as i64)).collect();
            (p.parts().to_vec(), apply_h_word(&modes, &v))
        })
        .collect()
}

/// The vectors `h_{−λ} v_n` (`λ ⊢ k`) have rank `p(k) = dim F_(n,k)`.
pub fn spanning_check(n: i64, k: u32) -> VerificationReport {
    let start = Instant::now();
    let mut report = VerificationReport::new("spanning").param("n", n).param("k", k);
    let basis = sector_basis(n, k as u64);
    let vectors = spanning_vectors::<crate::Rational>(n, k);
    report.cases_run = vectors.len() as u64;
    let states: Vec<FockState<crate::Rational>> = vectors.iter().map(|(_, s)| s.clone()).collect();
    match coordinate_rows(&states, &basis) {
        None => report.fail(format!("n={n} k={k}"), "vector outside sector", "sector basis"),
        Some(rows) => {
            let r = rank_fraction_free(&rows);
            let r_field = rank(&rows);
            let p = partition_count(k);
            report.observe("rank", r);
            report.observe("dim", basis.len());
            report.observe("p(k)", p);
            if r != r_field {
                report.fail(format!("n={n} k={k}"), format!("fraction-free rank {r}"), format!("field rank {r_field}"));
            }
            if r as u64 != p || basis.len() as u64 != p {
                let witness: Vec<String> = vectors.iter().map(|(parts, _)| format!("{parts:?}")).collect();
                report.fail(
                    format!("n={n} k={k} partitions {}", witness.join(" ")),
                    format!("rank {r}, dim {}", basis.len()),
                    format!("p(k) = {p}"),
                );
            }
        }
    }
    report.elapsed_ms = start.elapsed().as_millis() as u64;
    report
}

/// `h_m v_n = 0` for `1 ≤ m ≤ mmax` and `h_0 v_n = n v_n`.
pub fn highest_weight_check(n: i64, mmax: i64) -> VerificationReport {
    let start = Instant::now();
    let mut report = VerificationReport::new("highest-weight").param("n", n).param("mmax", mmax);
    let v = FockState::<crate::Rational>::basis(vacuum_like(n));
    for m in 0..=mmax {
        let got = h_mode(m).apply(&v);
        let expected = if m == 0 { v.scaled(&crate::Rational::from_int(n)) } else { FockState::zero() };
        report.cases_run += 1;
        if got != expected {
            report.fail(format!("h[{m}] v_{n}"), &got, &expected);
        }
    }
    report.elapsed_ms = start.elapsed().as_millis() as u64;
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::enumerate_basis;
    use crate::grading::{deg_h, dg};
    use crate::scalar::HalfInteger;
    use crate::Rational as Q;

    #[test]
    fn zero_mode_examples() {
        let v = FockState::<Q>::basis(FermionMonomial::new(vec![2]).unwrap());
        assert_eq!(h_mode(0).apply(&v), v.scaled(&-Q::from_int(1)));
        for n in 0..4 {
            assert!(h_mode::<Q>(n).apply(&crate::fock::vacuum_state()).is_zero());
        }
    }

    #[test]
    fn two_constructions_agree() {
        let basis = enumerate_basis(HalfInteger::from_int(5));
        for n in -4..=4 {
            let a = h_mode::<Q>(n);
            let b = h_mode_from_field::<Q>(n);
            for v in &basis {
                assert_eq!(a.apply_basis(v), b.apply_basis(v), "n={n} v={v}");
            }
        }
    }

    #[test]
    fn even_exponents_vanish() {
        let basis = enumerate_basis(HalfInteger::from_int(5));
        for e in (-10..=6).step_by(2) {
            let op = bilinear_mode::<Q>(&heisenberg_field(), e);
            assert!(basis.iter().all(|v| op.apply_basis(v).is_zero()), "e={e}");
        }
    }

    #[test]
    fn monomials_are_h0_eigenvectors() {
        for v in enumerate_basis(HalfInteger::from_int(6)) {
            let s = FockState::<Q>::basis(v.clone());
            assert_eq!(h_mode(0).apply(&s), s.scaled(&Q::from_int(dg(&v))));
        }
    }

    #[test]
    fn h_minus_one_on_vacuum() {
        let s = h_mode::<Q>(-1).apply(&crate::fock::vacuum_state());
        assert!(!s.is_zero());
        for (v, _) in s.iter() {
            assert_eq!((dg(v), deg_h(v).unwrap()), (0, 1));
        }
    }

    #[test]
    fn spanning_examples() {
        for (n, k, p) in [(0, 0, 1), (2, 3, 3), (-3, 5, 7)] {
            let r = spanning_check(n, k);
            assert!(r.passed(), "{r}");
            assert_eq!(r.observed["rank"], p.to_string());
        }
    }

    #[test]
    fn highest_weight_examples() {
        for n in [0, 3, -2] {
            assert!(highest_weight_check(n, 5).passed());
        }
    }
}
