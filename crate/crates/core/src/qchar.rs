//! Truncated bivariate character series and the character identities.
//!
//! A series is `Σ c(a, t) z^a q^{t/2}` with integer coefficients, known
//! exactly for `t ≤ qmax_half`.

use std::collections::BTreeMap;
use std::fmt;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::fock::enumerate_basis;
use crate::grading::{dg, partitions, vacuum_like_weight_twice};
use crate::harness::VerificationReport;
use crate::heisenberg::apply_h_word;
use crate::operator::LinearOperator;
use crate::scalar::{HalfInteger, Scalar};
use crate::virasoro::l_half_mode;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterSeries {
    coeffs: BTreeMap<(i64, i64), BigInt>,
    qmax_half: i64,
}

/// One `{z, qhalf, coeff}` record of a series.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeriesRecord {
    pub z: i64,
    pub qhalf: i64,
    #[serde(serialize_with = "integer_or_string")]
    pub coeff: BigInt,
}

/// Machine-sized coefficients as JSON numbers, larger ones as decimal strings.
fn integer_or_string<S: Serializer>(c: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    match c.to_i64() {
        Some(v) => s.serialize_i64(v),
        None => s.serialize_str(&c.to_string()),
    }
}

impl CharacterSeries {
    pub fn zero(qmax_half: i64) -> Self {
        CharacterSeries {
            coeffs: BTreeMap::new(),
            qmax_half,
        }
    }

    pub fn one(qmax_half: i64) -> Self {
        Self::monomial(0, 0, BigInt::one(), qmax_half)
    }

    pub fn monomial(z: i64, qhalf: i64, coeff: BigInt, qmax_half: i64) -> Self {
        let mut s = Self::zero(qmax_half);
        s.add(z, qhalf, coeff);
        s
    }

    pub fn qmax_half(&self) -> i64 {
        self.qmax_half
    }

    pub fn coeff(&self, z: i64, qhalf: i64) -> BigInt {
        self.coeffs.get(&(z, qhalf)).cloned().unwrap_or_default()
    }

    pub fn add(&mut self, z: i64, qhalf: i64, coeff: BigInt) {
        if qhalf > self.qmax_half || coeff.is_zero() {
            return;
        }
        let entry = self.coeffs.entry((z, qhalf)).or_default();
        *entry += coeff;
        if entry.is_zero() {
            self.coeffs.remove(&(z, qhalf));
        }
    }

    /// Stored terms ordered by `(qhalf, z)`.
    pub fn terms(&self) -> Vec<(i64, i64, BigInt)> {
        let mut t: Vec<(i64, i64, BigInt)> = self.coeffs.iter().map(|(&(z, q), c)| (z, q, c.clone())).collect();
        t.sort_by_key(|&(z, q, _)| (q, z));
        t
    }

    pub fn records(&self) -> Vec<SeriesRecord> {
        self.terms()
            .into_iter()
            .map(|(z, qhalf, c)| SeriesRecord { z, qhalf, coeff: c })
            .collect()
    }

    pub fn truncated(&self, qmax_half: i64) -> Self {
        let mut out = Self::zero(qmax_half.min(self.qmax_half));
        for (&(z, q), c) in &self.coeffs {
            out.add(z, q, c.clone());
        }
        out
    }

    pub fn plus(&self, other: &Self) -> Self {
        let mut out = self.truncated(other.qmax_half);
        for (&(z, q), c) in &other.coeffs {
            out.add(z, q, c.clone());
        }
        out
    }

    pub fn negated(&self) -> Self {
        let mut out = Self::zero(self.qmax_half);
        for (&(z, q), c) in &self.coeffs {
            out.add(z, q, -c.clone());
        }
        out
    }

    /// Product, exact below the smaller truncation bound.
    pub fn times(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.qmax_half.min(other.qmax_half));
        for (&(z1, q1), c1) in &self.coeffs {
            for (&(z2, q2), c2) in &other.coeffs {
                out.add(z1 + z2, q1 + q2, c1 * c2);
            }
        }
        out
    }

    /// `(1 + sign · z^a q^{t/2})`.
    pub fn binomial_factor(z: i64, qhalf: i64, negative: bool, qmax_half: i64) -> Self {
        let mut s = Self::one(qmax_half);
        s.add(z, qhalf, if negative { -BigInt::one() } else { BigInt::one() });
        s
    }

    /// `1 / (1 − q^{t/2})` expanded to the truncation bound.
    pub fn geometric(qhalf_step: i64, qmax_half: i64) -> Self {
        assert!(qhalf_step > 0);
        let mut s = Self::zero(qmax_half);
        let mut q = 0;
        while q <= qmax_half {
            s.add(0, q, BigInt::one());
            q += qhalf_step;
        }
        s
    }

    /// The first `(z, qhalf)` where the two series differ, up to the common bound.
    pub fn first_difference(&self, other: &Self) -> Option<(i64, i64, BigInt, BigInt)> {
        let bound = self.qmax_half.min(other.qmax_half);
        let a = self.truncated(bound);
        let b = other.truncated(bound);
        let mut keys: Vec<(i64, i64)> = a.coeffs.keys().chain(b.coeffs.keys()).copied().collect();
        keys.sort_by_key(|&(z, q)| (q, z));
        keys.dedup();
        keys.into_iter()
            .map(|(z, q)| (z, q, a.coeff(z, q), b.coeff(z, q)))
            .find(|(_, _, x, y)| x != y)
    }
}

impl fmt::Display for CharacterSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms();
        if terms.is_empty() {
            write!(f, "0")?;
        }
        for (i, (z, q, c)) in terms.iter().enumerate() {
            let sep = if i == 0 {
                if c.is_negative() { "-" } else { "" }
            } else if c.is_negative() {
                " - "
            } else {
                " + "
            };
            write!(f, "{sep}{} z^{z} q^{}", c.abs(), HalfInteger::from_twice(*q))?;
        }
        write!(f, " + O(q^{})", HalfInteger::from_twice(self.qmax_half + 1))
    }
}

/// `Σ_v z^{dg(v)} q^{weight(v)}` over the basis up to `weight_cut`.
pub fn char_trace(weight_cut: HalfInteger) -> CharacterSeries {
    let mut s = CharacterSeries::zero(weight_cut.twice());
    for v in enumerate_basis(weight_cut) {
        s.add(dg(&v), v.weight_twice(), BigInt::one());
    }
    s
}

/// `Π_{i≥1} (1 + z q^{2i−1+½}) (1 + z⁻¹ q^{2i−2+½})`.
pub fn char_product_form(qmax_half: i64) -> CharacterSeries {
    let mut s = CharacterSeries::one(qmax_half);
    for i in 1.. {
        let plus = 4 * i - 1;
        let minus = 4 * i - 3;
        if minus > qmax_half {
            break;
        }
        s = s.times(&CharacterSeries::binomial_factor(1, plus, false, qmax_half));
        s = s.times(&CharacterSeries::binomial_factor(-1, minus, false, qmax_half));
    }
    s
}

/// `1/Π(1 − q^{2i}) · Σ_n z^n q^{n² + n/2}`.
pub fn char_sum_form(qmax_half: i64) -> CharacterSeries {
    let mut theta = CharacterSeries::zero(qmax_half);
    for n in -qmax_half..=qmax_half {
        theta.add(n, vacuum_like_weight_twice(n), BigInt::one());
    }
    let mut euler = CharacterSeries::one(qmax_half);
    for i in 1..=qmax_half / 4 {
        euler = euler.times(&CharacterSeries::geometric(4 * i, qmax_half));
    }
    theta.times(&euler)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum JacobiIdentity {
    /// `Π(1 − q^{2i})(1 + z q^{2i−½})(1 + z⁻¹ q^{2i−3/2}) = Σ z^m q^{m(2m+1)/2}`
    DA,
    /// `Π(1 − q^i)(1 − z q^{i−1})(1 − z⁻¹ q^i) = Σ (−1)^m z^m q^{m(m−1)/2}`
    ATriple,
}

pub fn jacobi_sides(which: JacobiIdentity, qmax_half: i64) -> (CharacterSeries, CharacterSeries) {
    let mut lhs = CharacterSeries::one(qmax_half);
    let mut rhs = CharacterSeries::zero(qmax_half);
    match which {
        JacobiIdentity::DA => {
            for i in 1..=(qmax_half + 3) / 4 {
                lhs = lhs.times(&CharacterSeries::binomial_factor(0, 4 * i, true, qmax_half));
                lhs = lhs.times(&CharacterSeries::binomial_factor(1, 4 * i - 1, false, qmax_half));
                lhs = lhs.times(&CharacterSeries::binomial_factor(-1, 4 * i - 3, false, qmax_half));
            }
            for m in -qmax_half..=qmax_half {
                rhs.add(m, m * (2 * m + 1), BigInt::one());
            }
        }
        JacobiIdentity::ATriple => {
            for i in 1..=(qmax_half / 2 + 1) {
                lhs = lhs.times(&CharacterSeries::binomial_factor(0, 2 * i, true, qmax_half));
                lhs = lhs.times(&CharacterSeries::binomial_factor(1, 2 * (i - 1), true, qmax_half));
                lhs = lhs.times(&CharacterSeries::binomial_factor(-1, 2 * i, true, qmax_half));
            }
            for m in -qmax_half - 2..=qmax_half + 2 {
                let sign = if m.rem_euclid(2) == 1 { -BigInt::one() } else { BigInt::one() };
                rhs.add(m, m * (m - 1), sign);
            }
        }
    }
    (lhs, rhs)
}

/// Both sides of a Jacobi identity agree through `q^{qmax}`.
pub fn jacobi_check(which: JacobiIdentity, qmax: i64) -> VerificationReport {
    let start = Instant::now();
    let mut report = VerificationReport::new("jacobi").param("which", format!("{which:?}")).param("qmax", qmax);
    let (lhs, rhs) = jacobi_sides(which, 2 * qmax);
    report.cases_run = 1;
    if let Some((z, q, a, b)) = lhs.first_difference(&rhs) {
        report.fail(format!("z^{z} q^{}", HalfInteger::from_twice(q)), a, b);
    }
    report.observe("terms", lhs.terms().len());
    report.elapsed_ms = start.elapsed().as_millis() as u64;
    report
}

/// The trace, product and sum forms agree below `weight_cut`.
pub fn character_identity_check(weight_cut: HalfInteger) -> VerificationReport {
    let start = Instant::now();
    let mut report = VerificationReport::new("character").param("weight_cut", weight_cut);
    let bound = weight_cut.twice();
    let trace = char_trace(weight_cut);
    let product = char_product_form(bound);
    let sum = char_sum_form(bound);
    for (name, other) in [("product", &product), ("sum", &sum)] {
        report.cases_run += 1;
        if let Some((z, q, a, b)) = trace.first_difference(other) {
            report.fail(format!("trace vs {name} at z^{z} q^{}", HalfInteger::from_twice(q)), a, b);
        }
    }
    report.elapsed_ms = start.elapsed().as_millis() as u64;
    report
}

/// Each `h_{−λ} v_n` is an `L^{1/2}_0`-eigenvector with eigenvalue `2|λ| + weight(v_n)`.
pub fn virasoro_weight_check(nmax: i64, kmax: u32) -> VerificationReport {
    type Q = crate::Rational;
    let start = Instant::now();
    let mut report = VerificationReport::new("spanning-weights").param("nmax", nmax).param("kmax", kmax);
    let l0 = l_half_mode::<Q>(0);
    for n in -nmax..=nmax {
        let v = crate::fock::FockState::<Q>::basis(crate::grading::vacuum_like(n));
        for k in 0..=kmax {
            for p in partitions(k) {
                let modes: Vec<i64> = p.parts().iter().map(|&x| -(x as i64)).collect();
                let s = apply_h_word(&modes, &v);
                let eigen = Q::from_ratio(4 * k as i64 + vacuum_like_weight_twice(n), 2);
                let got = l0.apply(&s);
                report.cases_run += 1;
                let expected = s.scaled(&eigen);
                if got != expected {
                    report.fail(format!("n={n} partition {p}"), &got, &expected);
                }
            }
        }
    }
    report.elapsed_ms = start.elapsed().as_millis() as u64;
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grading::partition_count;

    fn b(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn trace_examples() {
        let t = char_trace(HalfInteger::from_int(3));
        assert_eq!(t.coeff(0, 0), b(1));
        assert_eq!(t.coeff(-1, 1), b(1));
        assert_eq!(t.coeff(1, 3), b(1));
    }

    #[test]
    fn forms_agree() {
        let r = character_identity_check(HalfInteger::from_twice(19));
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn sum_form_columns() {
        let s = char_sum_form(40);
        for n in -3..=3 {
            assert_eq!(s.coeff(n, vacuum_like_weight_twice(n)), b(1));
        }
        for k in 0..=10 {
            assert_eq!(s.coeff(0, 4 * k), b(partition_count(k as u32) as i64));
        }
    }

    #[test]
    fn jacobi_examples() {
        for which in [JacobiIdentity::DA, JacobiIdentity::ATriple] {
            assert!(jacobi_check(which, 0).passed());
            let r = jacobi_check(which, 12);
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn weight_examples() {
        assert!(virasoro_weight_check(2, 2).passed());
    }

    #[test]
    fn truncation_takes_minimum() {
        let a = CharacterSeries::geometric(2, 10);
        let c = CharacterSeries::geometric(3, 6);
        assert_eq!(a.times(&c).qmax_half(), 6);
        assert_eq!(a.plus(&c).qmax_half(), 6);
    }
}
