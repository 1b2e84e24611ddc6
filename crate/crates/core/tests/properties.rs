//! Property tests over random states and series.

use fockcheck::expr::evaluate;
use fockcheck::fock::{apply_fermion_mode, enumerate_basis, FermionMonomial, ModeIndex};
use fockcheck::heisenberg::h_mode;
use fockcheck::qchar::CharacterSeries;
use fockcheck::scalar::{HalfInteger, Scalar};
use fockcheck::virasoro::l1_family;
use fockcheck::{Rational as Q, State};
use num_bigint::BigInt;
use proptest::prelude::*;

fn basis() -> Vec<FermionMonomial> {
    enumerate_basis(HalfInteger::from_int(5))
}

fn state() -> impl Strategy<Value = State> {
    let n = basis().len();
    prop::collection::vec((0..n, -5i64..=5, 1i64..=4), 0..6).prop_map(|terms| {
        let b = basis();
        let mut s = State::zero();
        for (i, num, den) in terms {
            s.add_term(b[i].clone(), Q::from_ratio(num, den));
        }
        s
    })
}

fn odd() -> impl Strategy<Value = i64> {
    (-6i64..=5).prop_map(|k| 2 * k + 1)
}

fn series() -> impl Strategy<Value = CharacterSeries> {
    prop::collection::vec((-2i64..=2, 0i64..=6, -3i64..=3), 0..5).prop_map(|terms| {
        let mut s = CharacterSeries::zero(8);
        for (z, q, c) in terms {
            s.add(z, q, BigInt::from(c));
        }
        s
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn operators_are_linear(s in state(), t in state(), num in -4i64..=4, n in -2i64..=2) {
        let a = Q::from_ratio(num, 3);
        let mut combo = s.scaled(&a);
        combo.add_scaled(&t, &Q::from_int(1));
        for op in [l1_family::<Q>().mode(n), std::sync::Arc::new(h_mode::<Q>(n))] {
            let mut expected = op.apply(&s).scaled(&a);
            expected.add_scaled(&op.apply(&t), &Q::from_int(1));
            prop_assert_eq!(op.apply(&combo), expected);
        }
    }

    #[test]
    fn clifford_anticommutator(s in state(), p in odd(), q in odd()) {
        let (mp, mq) = (ModeIndex::from_twice(p).unwrap(), ModeIndex::from_twice(q).unwrap());
        let mut lhs = apply_fermion_mode(mp, &apply_fermion_mode(mq, &s));
        lhs.add_scaled(&apply_fermion_mode(mq, &apply_fermion_mode(mp, &s)), &Q::from_int(1));
        let expected = if p + q == 0 { s.clone() } else { State::zero() };
        prop_assert_eq!(lhs, expected);
    }

    #[test]
    fn rendered_states_round_trip(s in state()) {
        let text = s.to_string();
        let back = evaluate::<Q>(&text).unwrap();
        prop_assert_eq!(back.to_string(), text);
    }

    #[test]
    fn series_ring_laws(a in series(), b in series(), c in series()) {
        prop_assert_eq!(a.times(&b), b.times(&a));
        prop_assert_eq!(a.times(&b).times(&c), a.times(&b.times(&c)));
        prop_assert_eq!(a.times(&b.plus(&c)), a.times(&b).plus(&a.times(&c)));
        prop_assert_eq!(a.plus(&a.negated()), CharacterSeries::zero(8));
        prop_assert_eq!(a.times(&CharacterSeries::one(8)), a);
    }
}
