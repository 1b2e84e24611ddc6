//! Named verification suites built from the harness.

use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::charged::{
    apply_charged_mode, da_map, da_map_monomial, da_mode_dict, enumerate_charged_basis, h_a_family, l_a_family,
    l_a_sugawara_family, ChargedMonomial, ChargedState,
};
use crate::fock::{clifford_family, enumerate_basis, FermionMonomial, FockState, ModeIndex};
use crate::grading::{
    dg, deg_h, lemma_vector, partition_count, partitions, sector_basis, vacuum_like,
};
use crate::harness::{
    bracket_check, combine, compare, field_identity_check, half_integer_pairs, run_cases, square_pairs, BracketSpec,
    Failure, VerificationReport,
};
use crate::heisenberg::{h_mode, heisenberg_family, heisenberg_field_family};
use crate::modes::{bilinear_mode, FermionBilinear, Sign};
use crate::operator::{LinearOperator, OperatorFamily};
use crate::scalar::{HalfInteger, Scalar};
use crate::virasoro::{
    central_charge_lambda, doubling_construct, h_derivative_family, h_derivative_fermionic_family, h_square_family,
    h_square_fermionic_family, l1_family, l1_field_coefficient, l1_tilde_family, l1_tilde_field_family, l_half_family,
    l_half_tilde_family, l_half_tilde_field_family, l_lambda_b_family, VirasoroParams,
};
use crate::winf::{defect_scalar, jk_family_charged, jk_family_neutral, jk_family_neutral_direct, scalar_defect_check};
use crate::Rational as Q;

fn modes(bound: i64) -> Vec<i64> {
    (-bound..=bound).collect()
}

/// `{φ_m, φ_n} = δ_{m+n,0}` for `|m|, |n| ≤ max_index`.
pub fn clifford_check(max_index: HalfInteger, weight_cut: HalfInteger) -> VerificationReport {
    let spec = BracketSpec::<FermionMonomial, Q>::clifford(clifford_family());
    bracket_check(&spec, &half_integer_pairs(max_index), &enumerate_basis(weight_cut))
        .param("max_index", max_index)
        .param("weight_cut", weight_cut)
}

/// Heisenberg brackets plus agreement of the two constructions of `h_n`.
pub fn heisenberg_check(mmax: i64, weight_cut: HalfInteger) -> VerificationReport {
    let basis = enumerate_basis(weight_cut);
    let brackets = bracket_check(&BracketSpec::heisenberg(heisenberg_family::<Q>()), &square_pairs(mmax), &basis);
    let agree = field_identity_check("h-constructions", &heisenberg_family::<Q>(), &heisenberg_field_family(), &modes(mmax), &basis);
    combine("heisenberg", vec![brackets, agree])
        .param("mmax", mmax)
        .param("weight_cut", weight_cut)
}

/// `dim F_(n,k) = p(k)` and injectivity of the partition vectors.
pub fn sector_dimension_check(nmax: i64, kmax: u32) -> VerificationReport {
    let cases: Vec<(i64, u32)> = (-nmax..=nmax).flat_map(|n| (0..=kmax).map(move |k| (n, k))).collect();
    let dims = run_cases(VerificationReport::new("sector-dimensions"), &cases, |&(n, k)| {
        let dim = sector_basis(n, k as u64).len() as u64;
        let p = partition_count(k);
        (dim != p).then(|| Failure {
            witness: format!("n={n} k={k}"),
            lhs: dim.to_string(),
            rhs: p.to_string(),
        })
    });
    let ks: Vec<u32> = (0..=kmax).collect();
    let lemma = run_cases(VerificationReport::new("lemma-vectors"), &ks, |&k| {
        let images: Vec<FermionMonomial> = partitions(k).iter().map(lemma_vector).collect();
        let outside: Vec<String> = images
            .iter()
            .filter(|v| dg(v) != 0 || deg_h(v).ok() != Some(k as u64))
            .map(|v| v.to_string())
            .collect();
        let mut distinct = images.clone();
        distinct.sort();
        distinct.dedup();
        if !outside.is_empty() {
            Some(Failure {
                witness: format!("k={k}"),
                lhs: outside.join(", "),
                rhs: format!("sector (0,{k})"),
            })
        } else if distinct.len() != images.len() {
            Some(Failure {
                witness: format!("k={k}"),
                lhs: format!("{} distinct images", distinct.len()),
                rhs: format!("{} partitions", images.len()),
            })
        } else {
            None
        }
    });
    combine("sectors", vec![dims, lemma]).param("nmax", nmax).param("kmax", kmax)
}

/// Highest-weight and spanning certificates for the sector decomposition.
pub fn decomposition_check(hw_nmax: i64, mmax: i64, span_nmax: i64, kmax: u32) -> VerificationReport {
    let hw: Vec<VerificationReport> = (-hw_nmax..=hw_nmax)
        .into_par_iter()
        .map(|n| crate::heisenberg::highest_weight_check(n, mmax))
        .collect();
    let cases: Vec<(i64, u32)> = (-span_nmax..=span_nmax).flat_map(|n| (0..=kmax).map(move |k| (n, k))).collect();
    let span: Vec<VerificationReport> = cases
        .par_iter()
        .map(|&(n, k)| crate::heisenberg::spanning_check(n, k))
        .collect();
    let mut reports = hw;
    reports.extend(span);
    combine("decomposition", reports)
        .param("hw_nmax", hw_nmax)
        .param("mmax", mmax)
        .param("span_nmax", span_nmax)
        .param("kmax", kmax)
}

/// The Virasoro families exposed by name.
#[derive(Clone, Debug, PartialEq)]
pub enum VirasoroFamily {
    Half,
    HalfTilde,
    One,
    OneTilde,
    Lambda(VirasoroParams<Q>),
}

impl VirasoroFamily {
    pub fn family(&self) -> OperatorFamily<FermionMonomial, Q> {
        match self {
            VirasoroFamily::Half => l_half_family(),
            VirasoroFamily::HalfTilde => l_half_tilde_family(),
            VirasoroFamily::One => l1_family(),
            VirasoroFamily::OneTilde => l1_tilde_family(),
            VirasoroFamily::Lambda(p) => l_lambda_b_family(p),
        }
    }

    pub fn central_charge(&self) -> Q {
        match self {
            VirasoroFamily::Half | VirasoroFamily::HalfTilde => Q::from_ratio(1, 2),
            VirasoroFamily::One | VirasoroFamily::OneTilde => Q::from_int(1),
            VirasoroFamily::Lambda(p) => p.central_charge(),
        }
    }
}

/// Virasoro bracket law for a family with its declared central charge.
pub fn virasoro_check(family: &VirasoroFamily, mmax: i64, weight_cut: HalfInteger) -> VerificationReport {
    virasoro_check_with(family.family(), family.central_charge(), mmax, weight_cut)
}

pub fn virasoro_check_with(
    family: OperatorFamily<FermionMonomial, Q>,
    c: Q,
    mmax: i64,
    weight_cut: HalfInteger,
) -> VerificationReport {
    let spec = BracketSpec::virasoro(family, c.clone());
    bracket_check(&spec, &square_pairs(mmax), &enumerate_basis(weight_cut))
        .param("c", c)
        .param("mmax", mmax)
        .param("weight_cut", weight_cut)
}

/// Eigenvalue pins on the vacuum-like vectors and the monomial basis.
pub fn eigenvalue_check(nmax: i64, weight_cut: HalfInteger) -> VerificationReport {
    let l0 = crate::virasoro::l_half_mode::<Q>(0);
    let h0 = h_mode::<Q>(0);
    let ns: Vec<i64> = (-nmax..=nmax).collect();
    let pins = run_cases(VerificationReport::new("vacuum-like-eigenvalues"), &ns, |&n| {
        let v = FockState::basis(vacuum_like(n));
        let weight = Q::from_int(n * n) + Q::from_ratio(n, 2);
        compare(|| format!("L0 v_{n}"), &l0.apply(&v), &v.scaled(&weight))
            .or_else(|| compare(|| format!("h0 v_{n}"), &h0.apply(&v), &v.scaled(&Q::from_int(n))))
    });
    let basis = enumerate_basis(weight_cut);
    let monomials = run_cases(VerificationReport::new("monomial-eigenvectors"), &basis, |v| {
        let s = FockState::basis(v.clone());
        compare(|| format!("L0 {v}"), &l0.apply(&s), &s.scaled(&v.weight().to_scalar()))
            .or_else(|| compare(|| format!("h0 {v}"), &h0.apply(&s), &s.scaled(&Q::from_int(dg(v)))))
    });
    combine("eigenvalues", vec![pins, monomials])
        .param("nmax", nmax)
        .param("weight_cut", weight_cut)
}

/// The field identities relating the weight-2 bilinears, `h` and `L¹`.
pub fn field_identities_check(mmax: i64, weight_cut: HalfInteger) -> VerificationReport {
    let basis = enumerate_basis(weight_cut);
    let ms = modes(mmax);
    let hderiv = field_identity_check("dh", &h_derivative_family::<Q>(), &h_derivative_fermionic_family(), &ms, &basis);
    let hsquare = field_identity_check(":hh:", &h_square_family::<Q>(), &h_square_fermionic_family(), &ms, &basis);
    let self_product = FermionBilinear::new(Q::from_int(1), 0, Sign::Plus, 0, Sign::Plus);
    let exps: Vec<i64> = (-2 * mmax - 4..=2 * mmax + 4).collect();
    let phiphi = run_cases(VerificationReport::new(":phi phi:"), &exps, |&e| {
        let op = bilinear_mode(&self_product, e);
        basis.iter().find_map(|v| compare(|| format!("e={e} v={v}"), &op.apply_basis(v), &FockState::zero()))
    });
    let odd: Vec<i64> = exps.iter().copied().filter(|e| e.rem_euclid(2) == 1).collect();
    let even_modes = run_cases(VerificationReport::new("L1 odd exponents"), &odd, |&e| {
        let op = l1_field_coefficient::<Q>(e);
        basis.iter().find_map(|v| compare(|| format!("e={e} v={v}"), &op.apply_basis(v), &FockState::zero()))
    });
    let even: Vec<i64> = (-mmax..=mmax).collect();
    let l1_field = run_cases(VerificationReport::new("L1 from field"), &even, |&n| {
        let op = l1_field_coefficient::<Q>(-2 * n - 4);
        let l1 = l1_family::<Q>().mode(n);
        basis.iter().find_map(|v| compare(|| format!("n={n} v={v}"), &op.apply_basis(v), &l1.apply_basis(v)))
    });
    combine("field-identities", vec![hderiv, hsquare, phiphi, even_modes, l1_field])
        .param("mmax", mmax)
        .param("weight_cut", weight_cut)
}

/// `L̃¹` against its defining relation, its field form and the doubling of `L^{1/2}`.
pub fn l1_tilde_relations_check(mmax: i64, weight_cut: HalfInteger) -> VerificationReport {
    let basis = enumerate_basis(weight_cut);
    let ms = modes(mmax);
    let tilde = l1_tilde_family::<Q>();
    let field = field_identity_check("L1~ field form", &tilde, &l1_tilde_field_family(), &ms, &basis);
    let doubled = doubling_construct(&l_half_family::<Q>(), Q::from_ratio(1, 2), 2);
    let doubling = field_identity_check("L1~ doubling", &tilde, &doubled, &ms, &basis);
    combine("L1~ relations", vec![field, doubling])
        .param("mmax", mmax)
        .param("weight_cut", weight_cut)
}

/// `L^{1/2,0} = L¹` and `L^{1/2,−1/4} = L̃¹`.
pub fn specialization_check(mmax: i64, weight_cut: HalfInteger) -> VerificationReport {
    let basis = enumerate_basis(weight_cut);
    let ms = modes(mmax);
    let half = Q::from_ratio(1, 2);
    let a = l_lambda_b_family(&VirasoroParams::new(half.clone(), Q::from_int(0)));
    let b = l_lambda_b_family(&VirasoroParams::new(half, Q::from_ratio(-1, 4)));
    combine(
        "specializations",
        vec![
            field_identity_check("L(1/2,0) = L1", &a, &l1_family(), &ms, &basis),
            field_identity_check("L(1/2,-1/4) = L1~", &b, &l1_tilde_family(), &ms, &basis),
        ],
    )
    .param("mmax", mmax)
    .param("weight_cut", weight_cut)
}

/// `(−1)^n L^{1/2}_n` agrees with the field `½ :(∂φ)(−z)φ(−z):`.
pub fn parity_flip_field_check(mmax: i64, weight_cut: HalfInteger) -> VerificationReport {
    field_identity_check(
        "Lhalf~ flip = field",
        &l_half_tilde_family::<Q>(),
        &l_half_tilde_field_family(),
        &modes(mmax),
        &enumerate_basis(weight_cut),
    )
}

/// Everything in the `identities` CLI group.
pub fn identities_check(mmax: i64, weight_cut: HalfInteger) -> VerificationReport {
    combine(
        "identities",
        vec![
            field_identities_check(mmax, weight_cut),
            l1_tilde_relations_check(mmax, weight_cut),
            specialization_check(mmax, weight_cut),
            parity_flip_field_check(mmax, weight_cut),
            eigenvalue_check(5, weight_cut),
        ],
    )
    .param("mmax", mmax)
    .param("weight_cut", weight_cut)
}

/// Dictionary soundness, intertwining of `h` with `h^A`, and bijectivity of the map.
pub fn iso_check(max_index: HalfInteger, hmax: i64, weight_cut: HalfInteger) -> VerificationReport {
    let cbasis = enumerate_charged_basis(weight_cut);
    let pairs = half_integer_pairs(max_index);
    let dictionary = run_cases(VerificationReport::new("dictionary"), &pairs, |&(a, b)| {
        let (ma, mb) = (ModeIndex::from_twice(a).unwrap(), ModeIndex::from_twice(b).unwrap());
        let (ca, cb) = (da_mode_dict(ma), da_mode_dict(mb));
        cbasis.iter().find_map(|v| {
            let s = ChargedState::<Q>::basis(v.clone());
            let lhs = &apply_charged_mode(ca, &apply_charged_mode(cb, &s)) + &apply_charged_mode(cb, &apply_charged_mode(ca, &s));
            let rhs = if a + b == 0 { s.clone() } else { ChargedState::zero() };
            compare(|| format!("{{{ca},{cb}}} from {{{ma},{mb}}} on {v}"), &lhs, &rhs)
        })
    });
    let basis = enumerate_basis(weight_cut);
    let cases: Vec<(i64, FermionMonomial)> = modes(hmax)
        .into_iter()
        .flat_map(|n| basis.iter().map(move |v| (n, v.clone())))
        .collect();
    let intertwining = run_cases(VerificationReport::new("intertwining"), &cases, |(n, v)| {
        let s = FockState::<Q>::basis(v.clone());
        let lhs = da_map(&h_mode(*n).apply(&s));
        let rhs = crate::charged::h_a_mode::<Q>(*n).apply(&da_map(&s));
        compare(|| format!("n={n} v={v}"), &lhs, &rhs)
    });
    let start = Instant::now();
    let mut bijection = VerificationReport::new("bijection");
    let mut images: Vec<ChargedMonomial> = Vec::new();
    for v in &basis {
        bijection.cases_run += 1;
        let image = da_map_monomial::<Q>(v);
        let ok = image.len() == 1 && image.iter().all(|(_, c)| *c == Q::from_int(1) || *c == Q::from_int(-1));
        if !ok {
            bijection.fail(v, &image, "a signed basis monomial");
            continue;
        }
        images.extend(image.basis_elements().cloned());
        if image.basis_elements().any(|m| m.charge() != dg(v)) {
            bijection.fail(v, &image, format!("charge {}", dg(v)));
        }
    }
    images.sort();
    let before = images.len();
    images.dedup();
    if images.len() != before {
        bijection.fail("images", format!("{} distinct", images.len()), format!("{before} monomials"));
    }
    if images != cbasis {
        bijection.fail("image set", format!("{} monomials", images.len()), format!("{} charged basis monomials", cbasis.len()));
    }
    bijection.elapsed_ms = start.elapsed().as_millis() as u64;
    combine("iso", vec![dictionary, intertwining, bijection])
        .param("max_index", max_index)
        .param("hmax", hmax)
        .param("weight_cut", weight_cut)
}

/// `J⁰ = h` on both spaces, the `J⁰` central term for `1 ≤ m ≤ central_max`,
/// and scalar defects against `gl_∞` for `k ≤ kmax`, `|n| ≤ mmax`.
pub fn winf_check(kmax: u32, mmax: i64, central_max: i64, weight_cut: HalfInteger) -> VerificationReport {
    let basis = enumerate_basis(weight_cut);
    let cbasis = enumerate_charged_basis(weight_cut);
    let ms = modes(mmax);
    let neutral = field_identity_check("J0 = h (neutral)", &jk_family_neutral::<Q>(0), &heisenberg_family(), &ms, &basis);
    let direct = field_identity_check("J0 field = h", &jk_family_neutral_direct::<Q>(0), &heisenberg_family(), &ms, &basis);
    let charged = field_identity_check("J0 = hA", &jk_family_charged::<Q>(0), &h_a_family(), &ms, &cbasis);
    let positive: Vec<i64> = (1..=central_max).collect();
    let central = run_cases(VerificationReport::new("J0 central term"), &positive, |&m| {
        let got = defect_scalar(0, m, 0, -m, weight_cut);
        (got != Some(Q::from_int(m))).then(|| Failure {
            witness: format!("[J0_{m}, J0_-{m}]"),
            lhs: got.map_or("non-scalar".into(), |c| c.to_string()),
            rhs: m.to_string(),
        })
    });
    let mut tuples: Vec<(u32, i64, u32, i64)> = Vec::new();
    for k1 in 0..=kmax {
        for k2 in 0..=kmax {
            for &n1 in &ms {
                for &n2 in &ms {
                    tuples.push((k1, n1, k2, n2));
                }
            }
        }
    }
    let defects: Vec<VerificationReport> = tuples
        .par_iter()
        .map(|&(k1, n1, k2, n2)| scalar_defect_check(k1, n1, k2, n2, weight_cut))
        .collect();
    let mut scalar = VerificationReport::new("gl-inf defects");
    for r in defects {
        scalar.cases_run += r.cases_run;
        scalar.elapsed_ms += r.elapsed_ms;
        let label = format!("({},{},{},{})", r.params["k1"], r.params["n1"], r.params["k2"], r.params["n2"]);
        scalar.failures.extend(r.failures.into_iter().map(|f| Failure {
            witness: format!("{label} {}", f.witness),
            ..f
        }));
    }
    combine("winf", vec![neutral, direct, charged, central, scalar])
        .param("kmax", kmax)
        .param("mmax", mmax)
        .param("central_max", central_max)
        .param("weight_cut", weight_cut)
}

/// `J^k` preserves `dg` on the neutral basis.
pub fn winf_charge_check(kmax: u32, mmax: i64, weight_cut: HalfInteger) -> VerificationReport {
    let basis = enumerate_basis(weight_cut);
    let cases: Vec<(u32, i64)> = (0..=kmax).flat_map(|k| modes(mmax).into_iter().map(move |n| (k, n))).collect();
    run_cases(VerificationReport::new("J preserves dg"), &cases, |&(k, n)| {
        let op = jk_family_neutral::<Q>(k).mode(n);
        basis.iter().find_map(|v| {
            let image = op.apply_basis(v);
            let wrong = image.basis_elements().map(dg).find(|&d| d != dg(v));
            wrong.map(|d| Failure {
                witness: format!("J[{k},{n}] {v}"),
                lhs: format!("dg {d}"),
                rhs: format!("dg {}", dg(v)),
            })
        })
    })
    .param("kmax", kmax)
    .param("mmax", mmax)
}

/// Heisenberg and Virasoro relations on the charged space.
pub fn charged_check(lambdas: &[Q], bs: &[Q], hmax: i64, mmax: i64, weight_cut: HalfInteger) -> VerificationReport {
    let cbasis = enumerate_charged_basis(weight_cut);
    let mut reports = vec![bracket_check(&BracketSpec::heisenberg(h_a_family::<Q>()), &square_pairs(hmax), &cbasis)];
    for l in lambdas {
        for b in bs {
            let c = central_charge_lambda(l);
            let fermionic = bracket_check(&BracketSpec::virasoro(l_a_family(l.clone(), b.clone()), c.clone()), &square_pairs(mmax), &cbasis);
            reports.push(fermionic.param("c", &c));
            reports.push(field_identity_check(
                format!("LA[{l},{b}] forms"),
                &l_a_family(l.clone(), b.clone()),
                &l_a_sugawara_family(l.clone(), b.clone()),
                &modes(mmax),
                &cbasis,
            ));
        }
    }
    combine("charged", reports)
        .param("hmax", hmax)
        .param("mmax", mmax)
        .param("weight_cut", weight_cut)
}

/// One row of the sector table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SectorRow {
    pub n: i64,
    pub k: u32,
    pub dim: u64,
    pub p: u64,
    #[serde(rename = "match")]
    pub matches: bool,
}

pub fn decompose(nmax: i64, kmax: u32) -> Vec<SectorRow> {
    (-nmax..=nmax)
        .flat_map(|n| {
            (0..=kmax).map(move |k| {
                let dim = sector_basis(n, k as u64).len() as u64;
                let p = partition_count(k);
                SectorRow { n, k, dim, p, matches: dim == p }
            })
        })
        .collect()
}
