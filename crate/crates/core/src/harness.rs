//! Exact relation checking over operator families and truncated bases.
//!
//! Every check produces a [`VerificationReport`]: the number of cases run
//! and, for each case whose exact defect is nonzero, a witness with both
//! sides rendered. Cases are evaluated in parallel and collected in input
//! order, so reports are deterministic apart from `elapsed_ms`.

use std::collections::BTreeMap;
use std::fmt::{self, Display};
use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::operator::{Affine, LinearOperator, OperatorFamily, SharedOp};
use crate::scalar::{Scalar, HalfInteger};
use crate::state::LinComb;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub witness: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub check: String,
    pub params: BTreeMap<String, String>,
    pub cases_run: u64,
    pub failures: Vec<Failure>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub observed: BTreeMap<String, String>,
    pub elapsed_ms: u64,
}

impl VerificationReport {
    pub fn new(check: impl Into<String>) -> Self {
        VerificationReport {
            check: check.into(),
            params: BTreeMap::new(),
            cases_run: 0,
            failures: Vec::new(),
            observed: BTreeMap::new(),
            elapsed_ms: 0,
        }
    }

    pub fn param(mut self, key: &str, value: impl Display) -> Self {
        self.params.insert(key.to_string(), value.to_string());
        self
    }

    pub fn observe(&mut self, key: &str, value: impl Display) {
        self.observed.insert(key.to_string(), value.to_string());
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn fail(&mut self, witness: impl Display, lhs: impl Display, rhs: impl Display) {
        self.failures.push(Failure {
            witness: witness.to_string(),
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
        });
    }

    /// Fold another report's cases and failures into this one.
    pub fn absorb(&mut self, other: VerificationReport) {
        self.cases_run += other.cases_run;
        self.elapsed_ms += other.elapsed_ms;
        let prefix = other.check;
        self.failures.extend(other.failures.into_iter().map(|f| Failure {
            witness: format!("{prefix}: {}", f.witness),
            ..f
        }));
        for (k, v) in other.observed {
            self.observed.insert(format!("{prefix}.{k}"), v);
        }
    }

    /// Single-line JSON.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

impl Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let params: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        write!(
            f,
            "{} {} [{}] cases={} failures={} ({} ms)",
            if self.passed() { "PASS" } else { "FAIL" },
            self.check,
            params.join(" "),
            self.cases_run,
            self.failures.len(),
            self.elapsed_ms
        )?;
        for (k, v) in &self.observed {
            write!(f, "\n    {k} = {v}")?;
        }
        for fail in self.failures.iter().take(5) {
            write!(f, "\n    witness: {}\n      lhs: {}\n      rhs: {}", fail.witness, fail.lhs, fail.rhs)?;
        }
        if self.failures.len() > 5 {
            write!(f, "\n    ... {} more", self.failures.len() - 5)?;
        }
        Ok(())
    }
}

/// Run `check` on every case in parallel; `Some` results become failures.
pub fn run_cases<C: Sync>(
    report: VerificationReport,
    cases: &[C],
    check: impl Fn(&C) -> Option<Failure> + Sync,
) -> VerificationReport {
    let start = Instant::now();
    let failures: Vec<Failure> = cases.par_iter().filter_map(&check).collect();
    VerificationReport {
        cases_run: report.cases_run + cases.len() as u64,
        failures: report.failures.into_iter().chain(failures).collect(),
        elapsed_ms: report.elapsed_ms + start.elapsed().as_millis() as u64,
        ..report
    }
}

/// Compare two states and produce a failure on any nonzero difference.
pub fn compare<B: Ord + Clone + Display, T: Scalar>(
    witness: impl FnOnce() -> String,
    lhs: &LinComb<B, T>,
    rhs: &LinComb<B, T>,
) -> Option<Failure> {
    (lhs != rhs).then(|| Failure {
        witness: witness(),
        lhs: lhs.to_string(),
        rhs: rhs.to_string(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BracketKind {
    Commutator,
    Anticommutator,
}

type ExpectedFn<B, T> = dyn Fn(i64, i64) -> SharedOp<B, T> + Send + Sync;

/// `kind(left_m, right_n) = expected(m, n)` as operators.
pub struct BracketSpec<B: Ord + Clone, T: Scalar> {
    pub name: String,
    pub kind: BracketKind,
    pub left: OperatorFamily<B, T>,
    pub right: OperatorFamily<B, T>,
    pub expected: Arc<ExpectedFn<B, T>>,
}

impl<B: Ord + Clone + Send + Sync + 'static, T: Scalar> BracketSpec<B, T> {
    /// `[L_m, L_n] = (m − n) L_{m+n} + δ_{m+n,0} (m³ − m)/12 · c`.
    pub fn virasoro(family: OperatorFamily<B, T>, c: T) -> Self {
        let fam = family.clone();
        BracketSpec {
            name: format!("virasoro[{}]", family.name()),
            kind: BracketKind::Commutator,
            left: family.clone(),
            right: family,
            expected: Arc::new(move |m, n| {
                let central = if m + n == 0 {
                    T::from_int(m * m * m - m) / T::from_int(12) * c.clone()
                } else {
                    T::zero()
                };
                Affine::new(vec![(T::from_int(m - n), fam.mode(m + n))], central).shared()
            }),
        }
    }

    /// `[a_m, a_n] = m δ_{m+n,0}`.
    pub fn heisenberg(family: OperatorFamily<B, T>) -> Self {
        BracketSpec {
            name: format!("heisenberg[{}]", family.name()),
            kind: BracketKind::Commutator,
            left: family.clone(),
            right: family,
            expected: Arc::new(|m, n| Affine::scalar(if m + n == 0 { T::from_int(m) } else { T::zero() }).shared()),
        }
    }

    /// `{a_m, a_n} = δ_{m+n,0}` for half-integer families labelled by `2m`.
    pub fn clifford(family: OperatorFamily<B, T>) -> Self {
        BracketSpec {
            name: format!("clifford[{}]", family.name()),
            kind: BracketKind::Anticommutator,
            left: family.clone(),
            right: family,
            expected: Arc::new(|m, n| Affine::scalar(if m + n == 0 { T::one() } else { T::zero() }).shared()),
        }
    }
}

/// Evaluate `kind(A, B) · v` for operators `A`, `B`.
pub fn bracket_apply<B: Ord + Clone, T: Scalar>(
    kind: BracketKind,
    a: &dyn LinearOperator<B, T>,
    b: &dyn LinearOperator<B, T>,
    s: &LinComb<B, T>,
) -> LinComb<B, T> {
    let ab = a.apply(&b.apply(s));
    let ba = b.apply(&a.apply(s));
    match kind {
        BracketKind::Commutator => &ab - &ba,
        BracketKind::Anticommutator => &ab + &ba,
    }
}

/// All pairs `(m, n)` with `|m|, |n| ≤ bound`.
pub fn square_pairs(bound: i64) -> Vec<(i64, i64)> {
    (-bound..=bound)
        .flat_map(|m| (-bound..=bound).map(move |n| (m, n)))
        .collect()
}

/// All pairs of half-integer labels `2m`, `2n` with `|m|, |n| ≤ bound`.
pub fn half_integer_pairs(bound: HalfInteger) -> Vec<(i64, i64)> {
    let labels: Vec<i64> = (-bound.twice()..=bound.twice()).filter(|l| l.rem_euclid(2) == 1).collect();
    labels
        .iter()
        .flat_map(|&m| labels.iter().map(move |&n| (m, n)))
        .collect()
}

/// Check `spec` for every pair in `pairs` on every basis vector.
///
/// `cases_run = |pairs| × |basis|`.
pub fn bracket_check<B, T>(spec: &BracketSpec<B, T>, pairs: &[(i64, i64)], basis: &[B]) -> VerificationReport
where
    B: Ord + Clone + Display + Send + Sync + 'static,
    T: Scalar,
{
    let start = Instant::now();
    let failures: Vec<Failure> = pairs
        .par_iter()
        .flat_map_iter(|&(m, n)| {
            let a = spec.left.mode(m);
            let b = spec.right.mode(n);
            let expected = (spec.expected)(m, n);
            basis
                .iter()
                .filter_map(|v| {
                    let s = LinComb::basis(v.clone());
                    let lhs = bracket_apply(spec.kind, a.as_ref(), b.as_ref(), &s);
                    let rhs = expected.apply(&s);
                    compare(|| format!("m={m} n={n} v={v}"), &lhs, &rhs)
                })
                .collect::<Vec<_>>()
        })
        .collect();
    VerificationReport {
        cases_run: (pairs.len() * basis.len()) as u64,
        failures,
        elapsed_ms: start.elapsed().as_millis() as u64,
        ..VerificationReport::new(spec.name.clone())
    }
}

/// Check `a.mode(n) = b.mode(n)` on every basis vector for each `n` in `modes`.
pub fn field_identity_check<B, T>(
    name: impl Into<String>,
    a: &OperatorFamily<B, T>,
    b: &OperatorFamily<B, T>,
    modes: &[i64],
    basis: &[B],
) -> VerificationReport
where
    B: Ord + Clone + Display + Send + Sync + 'static,
    T: Scalar,
{
    let start = Instant::now();
    let failures: Vec<Failure> = modes
        .par_iter()
        .flat_map_iter(|&n| {
            let x = a.mode(n);
            let y = b.mode(n);
            basis
                .iter()
                .filter_map(|v| {
                    compare(|| format!("n={n} v={v}"), &x.apply_basis(v), &y.apply_basis(v))
                })
                .collect::<Vec<_>>()
        })
        .collect();
    VerificationReport {
        cases_run: (modes.len() * basis.len()) as u64,
        failures,
        elapsed_ms: start.elapsed().as_millis() as u64,
        ..VerificationReport::new(name)
    }
    .param("lhs", a.name())
    .param("rhs", b.name())
}

/// Combine several reports into one named summary.
pub fn combine(name: impl Into<String>, reports: Vec<VerificationReport>) -> VerificationReport {
    let mut out = VerificationReport::new(name);
    for r in reports {
        out.absorb(r);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{clifford_family, enumerate_basis, FermionMonomial};
    use crate::operator::IndexSet;
    use num_rational::BigRational;

    type Q = BigRational;

    #[test]
    fn clifford_spec_passes() {
        let spec = BracketSpec::<FermionMonomial, Q>::clifford(clifford_family());
        let pairs = half_integer_pairs(HalfInteger::from_twice(5));
        let basis = enumerate_basis(HalfInteger::from_int(3));
        let report = bracket_check(&spec, &pairs, &basis);
        assert!(report.passed(), "{report}");
        assert_eq!(report.cases_run, (pairs.len() * basis.len()) as u64);
    }

    #[test]
    fn corrupted_family_is_caught() {
        let base = clifford_family::<Q>();
        let corrupted = OperatorFamily::new("phi-corrupt", IndexSet::HalfIntegers, move |l| {
            let scale = if l == 3 { Q::from_int(2) } else { Q::from_int(1) };
            Affine::new(vec![(scale, base.mode(l))], Q::from_int(0)).shared()
        });
        let spec = BracketSpec::clifford(corrupted);
        let report = bracket_check(&spec, &half_integer_pairs(HalfInteger::from_twice(3)), &enumerate_basis(HalfInteger::from_int(2)));
        assert!(!report.passed());
        assert!(report.failures.iter().any(|f| f.witness.contains("m=3 n=-3")));
    }

    #[test]
    fn identical_families_agree() {
        let f = clifford_family::<Q>();
        let report = field_identity_check("self", &f, &f, &[-3, -1, 1, 3], &enumerate_basis(HalfInteger::from_int(2)));
        assert!(report.passed());
    }

    #[test]
    fn report_json_is_deterministic() {
        let mut r = VerificationReport::new("x").param("b", 2).param("a", 1);
        r.fail("w", "1", "2");
        let mut again = r.clone();
        again.elapsed_ms = r.elapsed_ms;
        assert_eq!(r.to_json(), again.to_json());
        assert!(r.to_json().starts_with(r#"{"check":"x","params":{"a":"1","b":"2"}"#));
    }
}
