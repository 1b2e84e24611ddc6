//! The charged-fermion Fock space and the D-A dictionary.
//!
//! Modes `ψ^±_x`, `x ∈ ℤ`, with `{ψ⁺_x, ψ⁻_y} = δ_{x+y,−1}`; creators have
//! `x ≤ −1`. A basis monomial is written with every `ψ⁺` factor to the left
//! of every `ψ⁻` factor and, inside each block, the most negative mode
//! leftmost. Blocks store `j ≥ 0` for the mode `−j−1`.

use std::collections::BTreeSet;
use std::fmt::{self, Display};
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::ParseError;
use crate::fock::{FermionMonomial, FockState, ModeIndex};
use crate::grading::dg;
use crate::operator::{Affine, IndexSet, LinearOperator, OperatorFamily, SharedOp};
use crate::scalar::{delta, falling_factorial, HalfInteger, Scalar};
use crate::state::LinComb;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Species {
    Plus,
    Minus,
}

impl Species {
    pub fn dual(self) -> Species {
        match self {
            Species::Plus => Species::Minus,
            Species::Minus => Species::Plus,
        }
    }

    fn symbol(self) -> char {
        match self {
            Species::Plus => '+',
            Species::Minus => '-',
        }
    }
}

/// `ψ^±_value`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ChargedModeIndex {
    pub species: Species,
    pub value: i64,
}

impl ChargedModeIndex {
    pub fn new(species: Species, value: i64) -> Self {
        ChargedModeIndex { species, value }
    }

    pub fn is_creation(self) -> bool {
        self.value <= -1
    }
}

impl Display for ChargedModeIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "psi{}[{}]", self.species.symbol(), self.value)
    }
}

impl FromStr for ChargedModeIndex {
    type Err = ParseError;

    /// Parses `psi+[n]` or `psi-[n]`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ParseError::Mode(s.to_string());
        let species = if s.starts_with("psi+[") {
            Species::Plus
        } else if s.starts_with("psi-[") {
            Species::Minus
        } else {
            return Err(bad());
        };
        let value = s[5..].strip_suffix(']').ok_or_else(bad)?.parse().map_err(|_| bad())?;
        Ok(ChargedModeIndex { species, value })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct ChargedMonomial {
    plus: Vec<u32>,
    minus: Vec<u32>,
}

impl ChargedMonomial {
    pub fn vacuum() -> Self {
        ChargedMonomial::default()
    }

    /// Blocks given as sets of `j` (mode `−j−1`).
    pub fn from_sets(plus: impl IntoIterator<Item = u32>, minus: impl IntoIterator<Item = u32>) -> Self {
        let canon = |it: Box<dyn Iterator<Item = u32>>| {
            let mut v: Vec<u32> = it.collect();
            v.sort_unstable();
            v.dedup();
            v
        };
        ChargedMonomial {
            plus: canon(Box::new(plus.into_iter())),
            minus: canon(Box::new(minus.into_iter())),
        }
    }

    pub fn plus(&self) -> &[u32] {
        &self.plus
    }

    pub fn minus(&self) -> &[u32] {
        &self.minus
    }

    pub fn charge(&self) -> i64 {
        self.plus.len() as i64 - self.minus.len() as i64
    }

    /// Twice `Σ (j + ½)` over both blocks.
    pub fn energy_twice(&self) -> i64 {
        self.plus.iter().chain(&self.minus).map(|&j| 2 * j as i64 + 1).sum()
    }

    /// `energy − charge²/2`, the Heisenberg degree.
    pub fn heisenberg_degree(&self) -> i64 {
        let c = self.charge();
        (self.energy_twice() - c * c) / 2
    }

    /// Twice the weight of the neutral monomial this corresponds to.
    pub fn transported_weight_twice(&self) -> i64 {
        self.plus.iter().map(|&j| 4 * j as i64 + 3).sum::<i64>() + self.minus.iter().map(|&j| 4 * j as i64 + 1).sum::<i64>()
    }

    fn block(&self, species: Species) -> &[u32] {
        match species {
            Species::Plus => &self.plus,
            Species::Minus => &self.minus,
        }
    }

    /// Number of factors standing left of slot `j` in the block of `species`.
    fn factors_left_of(&self, species: Species, j: u32) -> usize {
        let block = self.block(species);
        let inside = block.len() - block.partition_point(|&i| i <= j);
        match species {
            Species::Plus => inside,
            Species::Minus => self.plus.len() + inside,
        }
    }

    /// `None` for zero, else `(negative sign, monomial)`.
    pub fn apply_mode(&self, mode: ChargedModeIndex) -> Option<(bool, ChargedMonomial)> {
        // a creator fills its own block; an annihilator ψ^±_a empties slot j = a of the other block
        let (species, j, insert) = if mode.is_creation() {
            (mode.species, (-mode.value - 1) as u32, true)
        } else {
            (mode.species.dual(), mode.value as u32, false)
        };
        let sign = self.factors_left_of(species, j) % 2 == 1;
        let mut out = self.clone();
        let block = match species {
            Species::Plus => &mut out.plus,
            Species::Minus => &mut out.minus,
        };
        match (insert, block.binary_search(&j)) {
            (true, Err(at)) => block.insert(at, j),
            (false, Ok(at)) => {
                block.remove(at);
            }
            _ => return None,
        }
        Some((sign, out))
    }
}

impl Ord for ChargedMonomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.transported_weight_twice()
            .cmp(&other.transported_weight_twice())
            .then_with(|| self.plus.cmp(&other.plus))
            .then_with(|| self.minus.cmp(&other.minus))
    }
}

impl PartialOrd for ChargedMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Display for ChargedMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &j in self.plus.iter().rev() {
            write!(f, "{} ", ChargedModeIndex::new(Species::Plus, -(j as i64) - 1))?;
        }
        for &j in self.minus.iter().rev() {
            write!(f, "{} ", ChargedModeIndex::new(Species::Minus, -(j as i64) - 1))?;
        }
        write!(f, "|0>")
    }
}

pub type ChargedState<T> = LinComb<ChargedMonomial, T>;

pub fn charged_vacuum<T: Scalar>() -> ChargedState<T> {
    ChargedState::basis(ChargedMonomial::vacuum())
}

pub fn apply_charged_mode<T: Scalar>(mode: ChargedModeIndex, s: &ChargedState<T>) -> ChargedState<T> {
    s.map_linear(|m| match m.apply_mode(mode) {
        Some((neg, image)) => ChargedState::term(image, T::sign_of(neg)),
        None => ChargedState::zero(),
    })
}

#[derive(Clone, Copy, Debug)]
pub struct ChargedClifford(pub ChargedModeIndex);

impl<T: Scalar> LinearOperator<ChargedMonomial, T> for ChargedClifford {
    fn apply_basis(&self, b: &ChargedMonomial) -> ChargedState<T> {
        apply_charged_mode(self.0, &ChargedState::basis(b.clone()))
    }
}

pub fn charged_clifford_family<T: Scalar>(species: Species) -> OperatorFamily<ChargedMonomial, T> {
    let name = format!("psi{}", species.symbol());
    OperatorFamily::new(name, IndexSet::Integers, move |x| Arc::new(ChargedClifford(ChargedModeIndex::new(species, x))))
}

/// Every charged monomial whose transported twice-weight is at most `2·cut`.
pub fn enumerate_charged_basis(cut: HalfInteger) -> Vec<ChargedMonomial> {
    fn subsets(budget: i64, cost: &dyn Fn(u32) -> i64) -> Vec<(i64, Vec<u32>)> {
        let mut out = Vec::new();
        fn rec(start: u32, budget: i64, cost: &dyn Fn(u32) -> i64, cur: &mut Vec<u32>, spent: i64, out: &mut Vec<(i64, Vec<u32>)>) {
            out.push((spent, cur.clone()));
            let mut j = start;
            while cost(j) <= budget - spent {
                cur.push(j);
                rec(j + 1, budget, cost, cur, spent + cost(j), out);
                cur.pop();
                j += 1;
            }
        }
        rec(0, budget, cost, &mut Vec::new(), 0, &mut out);
        out
    }
    let budget = cut.twice();
    let plus_cost = |j: u32| 4 * j as i64 + 3;
    let minus_cost = |j: u32| 4 * j as i64 + 1;
    let mut out = Vec::new();
    for (spent, plus) in subsets(budget, &plus_cost) {
        for (_, minus) in subsets(budget - spent, &minus_cost) {
            out.push(ChargedMonomial { plus: plus.clone(), minus });
        }
    }
    out.sort();
    out
}

/// `Σ_x c(x) :ψ^{s₁}_x ψ^{s₂}_{S−x}: + scalar`, evaluated lazily.
#[derive(Clone)]
pub struct ChargedQuadratic<T: Scalar> {
    pub left: Species,
    pub right: Species,
    total: i64,
    rule: Arc<dyn Fn(i64) -> T + Send + Sync>,
    scalar: T,
}

impl<T: Scalar> ChargedQuadratic<T> {
    pub fn new(left: Species, right: Species, total: i64, rule: impl Fn(i64) -> T + Send + Sync + 'static) -> Self {
        ChargedQuadratic {
            left,
            right,
            total,
            rule: Arc::new(rule),
            scalar: T::zero(),
        }
    }

    pub fn with_scalar(mut self, scalar: T) -> Self {
        self.scalar = scalar;
        self
    }

    pub fn total(&self) -> i64 {
        self.total
    }

    pub fn coefficient(&self, x: i64) -> T {
        (self.rule)(x)
    }

    /// Values of `x` whose summand can act nonzero on `v`.
    pub fn support(&self, v: &ChargedMonomial) -> BTreeSet<i64> {
        let mut out: BTreeSet<i64> = (self.total + 1..=-1).collect();
        // ψ^s_a with a ≥ 0 removes slot a from the dual block
        for &a in v.block(self.left.dual()) {
            out.insert(a as i64);
        }
        for &a in v.block(self.right.dual()) {
            out.insert(self.total - a as i64);
        }
        out
    }

    fn apply_summand(&self, x: i64, v: &ChargedMonomial) -> Option<(bool, ChargedMonomial)> {
        let p = ChargedModeIndex::new(self.left, x);
        let q = ChargedModeIndex::new(self.right, self.total - x);
        let (first, second, swapped) = if !p.is_creation() && q.is_creation() { (p, q, true) } else { (q, p, false) };
        let (n1, w) = v.apply_mode(first)?;
        let (n2, u) = w.apply_mode(second)?;
        Some((n1 ^ n2 ^ swapped, u))
    }
}

impl<T: Scalar> LinearOperator<ChargedMonomial, T> for ChargedQuadratic<T> {
    fn apply_basis(&self, v: &ChargedMonomial) -> ChargedState<T> {
        let mut out = ChargedState::term(v.clone(), self.scalar.clone());
        for x in self.support(v) {
            let c = self.coefficient(x);
            if c.is_zero() {
                continue;
            }
            if let Some((neg, u)) = self.apply_summand(x, v) {
                out.add_term(u, T::sign_of(neg) * c);
            }
        }
        out
    }
}

/// `prefactor · z^zshift · :(∂^a ψ^{s₁})(z) (∂^b ψ^{s₂})(z):` with `ψ(z) = Σ ψ_x z^{−x−1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct ChargedBilinear<T> {
    pub prefactor: T,
    pub zshift: i64,
    pub left: Species,
    pub dleft: u32,
    pub right: Species,
    pub dright: u32,
}

/// Coefficient of `z^e`: the summands have `x + y = s − 2 − a − b − e`.
pub fn charged_bilinear_mode<T: Scalar>(f: &ChargedBilinear<T>, e: i64) -> ChargedQuadratic<T> {
    let total = f.zshift - 2 - f.dleft as i64 - f.dright as i64 - e;
    let f = f.clone();
    ChargedQuadratic::new(f.left, f.right, total, move |x| {
        let y = total - x;
        f.prefactor.clone() * falling_factorial::<T>(-x - 1, f.dleft) * falling_factorial::<T>(-y - 1, f.dright)
    })
}

/// `h^A_n = Σ_x :ψ⁺_x ψ⁻_{n−1−x}:`.
pub fn h_a_mode<T: Scalar>(n: i64) -> ChargedQuadratic<T> {
    ChargedQuadratic::new(Species::Plus, Species::Minus, n - 1, |_| T::one())
}

pub fn h_a_family<T: Scalar>() -> OperatorFamily<ChargedMonomial, T> {
    OperatorFamily::new("hA", IndexSet::Integers, |n| Arc::new(h_a_mode::<T>(n)))
}

/// `L^{A,λ,b}_n` from the fermion bilinears:
/// `(1−λ) :∂ψ⁺ ψ⁻: + λ :∂ψ⁻ ψ⁺: − b h^A + b(b − 2λ + 1)/2 z^{−2}`.
pub fn l_a_fermionic_mode<T: Scalar>(lambda: &T, b: &T, n: i64) -> Affine<ChargedMonomial, T> {
    let e = -n - 2;
    let plus = ChargedBilinear {
        prefactor: T::one() - lambda.clone(),
        zshift: 0,
        left: Species::Plus,
        dleft: 1,
        right: Species::Minus,
        dright: 0,
    };
    let minus = ChargedBilinear {
        prefactor: lambda.clone(),
        zshift: 0,
        left: Species::Minus,
        dleft: 1,
        right: Species::Plus,
        dright: 0,
    };
    let constant = b.clone() * (b.clone() - T::from_int(2) * lambda.clone() + T::one()) / T::from_int(2);
    let terms: Vec<(T, SharedOp<ChargedMonomial, T>)> = vec![
        (T::one(), Arc::new(charged_bilinear_mode(&plus, e))),
        (T::one(), Arc::new(charged_bilinear_mode(&minus, e))),
        (-b.clone(), Arc::new(h_a_mode::<T>(n))),
    ];
    Affine::new(terms, delta::<T>(n == 0) * constant)
}

pub fn l_a_family<T: Scalar>(lambda: T, b: T) -> OperatorFamily<ChargedMonomial, T> {
    OperatorFamily::new(format!("LA[{lambda},{b}]"), IndexSet::Integers, move |n| {
        Arc::new(l_a_fermionic_mode(&lambda, &b, n))
    })
}

/// `½ Σ_k :h^A_{n−k} h^A_k:`, larger index to the right.
#[derive(Clone, Copy, Debug)]
pub struct ChargedSugawara {
    pub n: i64,
}

impl<T: Scalar> LinearOperator<ChargedMonomial, T> for ChargedSugawara {
    fn apply_basis(&self, v: &ChargedMonomial) -> ChargedState<T> {
        let d = v.heisenberg_degree();
        let s = ChargedState::basis(v.clone());
        let n = self.n;
        let mut out = ChargedState::zero();
        for r in (n + 1).div_euclid(2)..=d {
            let hr = h_a_mode::<T>(r).apply(&s);
            if hr.is_zero() {
                continue;
            }
            let l = n - r;
            let coeff = if l == r { T::from_ratio(1, 2) } else { T::one() };
            out.add_scaled(&h_a_mode::<T>(l).apply(&hr), &coeff);
        }
        out
    }
}

/// `L^{A,λ,b}_n = ½ :h^A h^A:_n − ((½ − λ)(n+1) + b) h^A_n + δ_{n,0} b(b − 2λ + 1)/2`.
pub fn l_a_sugawara_family<T: Scalar>(lambda: T, b: T) -> OperatorFamily<ChargedMonomial, T> {
    OperatorFamily::new(format!("LA[{lambda},{b}](sugawara)"), IndexSet::Integers, move |n| {
        let h_coeff = -((T::from_ratio(1, 2) - lambda.clone()) * T::from_int(n + 1) + b.clone());
        let constant = b.clone() * (b.clone() - T::from_int(2) * lambda.clone() + T::one()) / T::from_int(2);
        Affine::new(
            vec![(T::one(), Arc::new(ChargedSugawara { n })), (h_coeff, Arc::new(h_a_mode::<T>(n)))],
            delta::<T>(n == 0) * constant,
        )
        .shared()
    })
}

/// The neutral mode carrying `ψ^±_x`: `ψ⁺_x = φ_{2x+½}`, `ψ⁻_x = φ_{2x+3/2}`.
pub fn neutral_mode_of(m: ChargedModeIndex) -> ModeIndex {
    let twice = match m.species {
        Species::Plus => 4 * m.value + 1,
        Species::Minus => 4 * m.value + 3,
    };
    ModeIndex::from_twice(twice).expect("odd")
}

/// The D-A dictionary on modes.
pub fn da_mode_dict(m: ModeIndex) -> ChargedModeIndex {
    let t = m.twice();
    match t.rem_euclid(4) {
        1 => ChargedModeIndex::new(Species::Plus, (t - 1).div_euclid(4)),
        _ => ChargedModeIndex::new(Species::Minus, (t - 3).div_euclid(4)),
    }
}

/// Image of a neutral monomial: apply the mapped creators right to left.
pub fn da_map_monomial<T: Scalar>(v: &FermionMonomial) -> ChargedState<T> {
    v.indices().iter().fold(charged_vacuum(), |acc, &n| {
        apply_charged_mode(da_mode_dict(ModeIndex::creation(n)), &acc)
    })
}

pub fn da_map<T: Scalar>(s: &FockState<T>) -> ChargedState<T> {
    s.map_linear(da_map_monomial)
}

/// Inverse image of a charged monomial.
pub fn da_inverse_monomial<T: Scalar>(m: &ChargedMonomial) -> FockState<T> {
    let modes = m
        .minus()
        .iter()
        .map(|&j| ChargedModeIndex::new(Species::Minus, -(j as i64) - 1))
        .chain(m.plus().iter().map(|&j| ChargedModeIndex::new(Species::Plus, -(j as i64) - 1)));
    modes.fold(crate::fock::vacuum_state(), |acc, cm| {
        crate::fock::apply_fermion_mode(neutral_mode_of(cm), &acc)
    })
}

pub fn da_inverse<T: Scalar>(s: &ChargedState<T>) -> FockState<T> {
    s.map_linear(da_inverse_monomial)
}

/// A charged operator carried to the neutral space by the dictionary.
pub struct Transported<T: Scalar> {
    pub inner: SharedOp<ChargedMonomial, T>,
}

impl<T: Scalar> LinearOperator<FermionMonomial, T> for Transported<T> {
    fn apply_basis(&self, v: &FermionMonomial) -> FockState<T> {
        da_inverse(&self.inner.apply(&da_map_monomial(v)))
    }
}

pub fn transport_family<T: Scalar>(family: &OperatorFamily<ChargedMonomial, T>, name: impl Into<String>) -> OperatorFamily<FermionMonomial, T> {
    let family = family.clone();
    OperatorFamily::new(name, family.index_set(), move |n| Arc::new(Transported { inner: family.mode(n) }))
}

/// `dg(v) = charge(da_map(v))`.
pub fn charge_matches(v: &FermionMonomial) -> bool {
    da_map_monomial::<crate::Rational>(v)
        .basis_elements()
        .all(|m| m.charge() == dg(v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::enumerate_basis;
    use crate::Rational as Q;

    fn cm(s: Species, v: i64) -> ChargedModeIndex {
        ChargedModeIndex::new(s, v)
    }

    #[test]
    fn vacuum_axioms() {
        assert!(apply_charged_mode::<Q>(cm(Species::Plus, 0), &charged_vacuum()).is_zero());
        let m = apply_charged_mode::<Q>(cm(Species::Minus, -1), &charged_vacuum());
        assert_eq!(apply_charged_mode(cm(Species::Plus, 0), &m), charged_vacuum());
        let p = apply_charged_mode::<Q>(cm(Species::Plus, -1), &charged_vacuum());
        assert_eq!(apply_charged_mode(cm(Species::Minus, 0), &p), charged_vacuum());
    }

    #[test]
    fn charged_clifford_relations() {
        let basis = enumerate_charged_basis(HalfInteger::from_int(4));
        let modes: Vec<ChargedModeIndex> = (-4..=3)
            .flat_map(|x| [cm(Species::Plus, x), cm(Species::Minus, x)])
            .collect();
        for &a in &modes {
            for &b in &modes {
                let expected = a.species != b.species && a.value + b.value == -1;
                for v in &basis {
                    let s = ChargedState::<Q>::basis(v.clone());
                    let ab = apply_charged_mode(a, &apply_charged_mode(b, &s));
                    let ba = apply_charged_mode(b, &apply_charged_mode(a, &s));
                    let rhs = if expected { s.clone() } else { ChargedState::zero() };
                    assert_eq!(&ab + &ba, rhs, "{{{a},{b}}} on {v}");
                }
            }
        }
    }

    #[test]
    fn dictionary_examples() {
        assert_eq!(da_mode_dict("-3/2".parse().unwrap()), cm(Species::Plus, -1));
        assert_eq!(da_mode_dict("-1/2".parse().unwrap()), cm(Species::Minus, -1));
        for t in (-21..=21).filter(|t: &i64| t.rem_euclid(2) == 1) {
            let m = ModeIndex::from_twice(t).unwrap();
            assert_eq!(neutral_mode_of(da_mode_dict(m)), m);
        }
    }

    #[test]
    fn map_examples() {
        assert_eq!(da_map_monomial::<Q>(&FermionMonomial::vacuum()), charged_vacuum());
        let v1 = FermionMonomial::new(vec![1]).unwrap();
        assert_eq!(da_map_monomial::<Q>(&v1), ChargedState::basis(ChargedMonomial::from_sets([0], [])));
        // φ_{-5/2} φ_{-1/2}|0⟩ ↦ ψ⁻_{-2} ψ⁻_{-1}|0⟩
        let v = FermionMonomial::new(vec![0, 2]).unwrap();
        assert_eq!(da_map_monomial::<Q>(&v), ChargedState::basis(ChargedMonomial::from_sets([], [0, 1])));
    }

    #[test]
    fn inverse_round_trip() {
        for v in enumerate_basis(HalfInteger::from_int(6)) {
            let s = FockState::<Q>::basis(v.clone());
            assert_eq!(da_inverse(&da_map(&s)), s);
            assert!(charge_matches(&v));
        }
    }

    #[test]
    fn charged_basis_matches_neutral_count() {
        for w in 0..=8 {
            let cut = HalfInteger::from_int(w);
            assert_eq!(enumerate_charged_basis(cut).len(), enumerate_basis(cut).len());
        }
    }

    #[test]
    fn rendering_and_parsing() {
        let m = ChargedMonomial::from_sets([0], [1]);
        assert_eq!(m.to_string(), "psi+[-1] psi-[-2] |0>");
        assert_eq!("psi-[-3]".parse::<ChargedModeIndex>().unwrap(), cm(Species::Minus, -3));
    }

    #[test]
    fn sugawara_and_fermionic_forms_agree() {
        let basis = enumerate_charged_basis(HalfInteger::from_int(5));
        for (l, b) in [(Q::from_int(0), Q::from_int(0)), (Q::from_ratio(1, 3), Q::from_ratio(2, 5))] {
            let a = l_a_family(l.clone(), b.clone());
            let s = l_a_sugawara_family(l, b);
            for n in -3..=3 {
                for v in &basis {
                    assert_eq!(a.mode(n).apply_basis(v), s.mode(n).apply_basis(v), "n={n} v={v}");
                }
            }
        }
    }
}
