//! Linear operators on spaces with a distinguished basis, and indexed
//! families of them.

use std::fmt;
use std::sync::Arc;

use crate::scalar::Scalar;
use crate::state::LinComb;

/// An index-dependent coefficient.
pub type IndexCoeff<T> = Arc<dyn Fn(i64) -> T + Send + Sync>;

/// A linear map determined by its action on basis vectors.
pub trait LinearOperator<B: Ord + Clone, T: Scalar>: Send + Sync {
    fn apply_basis(&self, b: &B) -> LinComb<B, T>;

    fn apply(&self, s: &LinComb<B, T>) -> LinComb<B, T> {
        s.map_linear(|b| self.apply_basis(b))
    }
}

pub type SharedOp<B, T> = Arc<dyn LinearOperator<B, T>>;

/// `Σ cᵢ Aᵢ + scalar · Id`.
pub struct Affine<B: Ord + Clone, T: Scalar> {
    pub terms: Vec<(T, SharedOp<B, T>)>,
    pub scalar: T,
}

impl<B: Ord + Clone + Send + Sync + 'static, T: Scalar> Affine<B, T> {
    pub fn new(terms: Vec<(T, SharedOp<B, T>)>, scalar: T) -> Self {
        Affine { terms, scalar }
    }

    pub fn scalar(value: T) -> Self {
        Affine::new(Vec::new(), value)
    }

    pub fn shared(self) -> SharedOp<B, T> {
        Arc::new(self)
    }
}

impl<B: Ord + Clone + Send + Sync, T: Scalar> LinearOperator<B, T> for Affine<B, T> {
    fn apply_basis(&self, b: &B) -> LinComb<B, T> {
        let mut out = LinComb::term(b.clone(), self.scalar.clone());
        for (c, op) in &self.terms {
            out.add_scaled(&op.apply_basis(b), c);
        }
        out
    }

    fn apply(&self, s: &LinComb<B, T>) -> LinComb<B, T> {
        let mut out = s.scaled(&self.scalar);
        for (c, op) in &self.terms {
            out.add_scaled(&op.apply(s), c);
        }
        out
    }
}

/// Composition `A₁ A₂ ⋯ Aₖ`; the last factor acts first.
pub struct Product<B: Ord + Clone, T: Scalar> {
    pub factors: Vec<SharedOp<B, T>>,
}

impl<B: Ord + Clone + Send + Sync, T: Scalar> LinearOperator<B, T> for Product<B, T> {
    fn apply_basis(&self, b: &B) -> LinComb<B, T> {
        self.apply(&LinComb::basis(b.clone()))
    }

    fn apply(&self, s: &LinComb<B, T>) -> LinComb<B, T> {
        self.factors
            .iter()
            .rev()
            .fold(s.clone(), |acc, op| if acc.is_zero() { acc } else { op.apply(&acc) })
    }
}

/// Apply `ops` right-to-left to a state.
pub fn apply_word<B: Ord + Clone, T: Scalar>(ops: &[SharedOp<B, T>], s: &LinComb<B, T>) -> LinComb<B, T> {
    ops.iter().rev().fold(s.clone(), |acc, op| op.apply(&acc))
}

/// How the labels of an [`OperatorFamily`] are to be read.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IndexSet {
    /// Every integer is a mode.
    Integers,
    /// Labels are twice a half-integer mode; only odd labels are valid.
    HalfIntegers,
}

impl IndexSet {
    pub fn contains(self, label: i64) -> bool {
        match self {
            IndexSet::Integers => true,
            IndexSet::HalfIntegers => label.rem_euclid(2) == 1,
        }
    }
}

type ModeFn<B, T> = dyn Fn(i64) -> SharedOp<B, T> + Send + Sync;

/// A named map `n ↦ Fₙ` from mode labels to operators.
pub struct OperatorFamily<B: Ord + Clone, T: Scalar> {
    name: String,
    index_set: IndexSet,
    mode: Arc<ModeFn<B, T>>,
}

impl<B: Ord + Clone, T: Scalar> Clone for OperatorFamily<B, T> {
    fn clone(&self) -> Self {
        OperatorFamily {
            name: self.name.clone(),
            index_set: self.index_set,
            mode: Arc::clone(&self.mode),
        }
    }
}

impl<B: Ord + Clone, T: Scalar> fmt::Debug for OperatorFamily<B, T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("OperatorFamily")
            .field("name", &self.name)
            .field("index_set", &self.index_set)
            .finish()
    }
}

impl<B: Ord + Clone + Send + Sync + 'static, T: Scalar> OperatorFamily<B, T> {
    pub fn new(
        name: impl Into<String>,
        index_set: IndexSet,
        mode: impl Fn(i64) -> SharedOp<B, T> + Send + Sync + 'static,
    ) -> Self {
        OperatorFamily {
            name: name.into(),
            index_set,
            mode: Arc::new(mode),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn index_set(&self) -> IndexSet {
        self.index_set
    }

    pub fn mode(&self, n: i64) -> SharedOp<B, T> {
        debug_assert!(self.index_set.contains(n), "{}: invalid mode label {n}", self.name);
        (self.mode)(n)
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Pointwise affine combination `n ↦ Σ cᵢ(n)·Fᵢ(n) + s(n)·Id`.
    pub fn affine(
        name: impl Into<String>,
        parts: Vec<(OperatorFamily<B, T>, IndexCoeff<T>)>,
        scalar: impl Fn(i64) -> T + Send + Sync + 'static,
    ) -> Self {
        let index_set = parts.first().map_or(IndexSet::Integers, |(f, _)| f.index_set);
        assert!(
            parts.iter().all(|(f, _)| f.index_set == index_set),
            "affine combination of families with different index sets"
        );
        OperatorFamily::new(name, index_set, move |n| {
            let terms = parts
                .iter()
                .map(|(fam, coeff)| (coeff(n), fam.mode(n)))
                .filter(|(c, _)| !c.is_zero())
                .collect();
            Affine::new(terms, scalar(n)).shared()
        })
    }

    /// `n ↦ (−1)ⁿ Fₙ`, the mode-level image of the substitution `z ↦ −z`.
    pub fn parity_flip(&self, name: impl Into<String>) -> Self {
        let base = self.clone();
        OperatorFamily::new(name, self.index_set, move |n| {
            let sign = if n.rem_euclid(2) == 1 { -T::one() } else { T::one() };
            Affine::new(vec![(sign, base.mode(n))], T::zero()).shared()
        })
    }
}
