//! Sparse exact linear combinations of basis vectors.

use std::collections::btree_map::{self, BTreeMap, Entry};
use std::fmt::{self, Display};
use std::ops::{Add, AddAssign, Neg, Sub};

use crate::scalar::Scalar;

/// A finite linear combination `Σ c_b · b` with no zero coefficients stored.
///
/// The empty combination is the zero vector. Terms are kept in the order of
/// `B`, so iteration and rendering are deterministic.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinComb<B: Ord, T> {
    terms: BTreeMap<B, T>,
}

impl<B: Ord, T> Default for LinComb<B, T> {
    fn default() -> Self {
        LinComb {
            terms: BTreeMap::new(),
        }
    }
}

impl<B: Ord + Clone, T: Scalar> LinComb<B, T> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(b: B) -> Self {
        Self::term(b, T::one())
    }

    pub fn term(b: B, coeff: T) -> Self {
        let mut s = Self::zero();
        s.add_term(b, coeff);
        s
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, b: &B) -> T {
        self.terms.get(b).cloned().unwrap_or_else(T::zero)
    }

    pub fn iter(&self) -> btree_map::Iter<'_, B, T> {
        self.terms.iter()
    }

    pub fn basis_elements(&self) -> impl Iterator<Item = &B> {
        self.terms.keys()
    }

    pub fn add_term(&mut self, b: B, coeff: T) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(b) {
            Entry::Vacant(e) => {
                e.insert(coeff);
            }
            Entry::Occupied(mut e) => {
                let sum = e.get().clone() + coeff;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    /// `self += factor · other`
    pub fn add_scaled(&mut self, other: &Self, factor: &T) {
        if factor.is_zero() {
            return;
        }
        for (b, c) in other.iter() {
            self.add_term(b.clone(), c.clone() * factor.clone());
        }
    }

    pub fn scaled(&self, factor: &T) -> Self {
        let mut out = Self::zero();
        out.add_scaled(self, factor);
        out
    }

    /// Apply a linear map given on basis vectors.
    pub fn map_linear<C: Ord + Clone>(&self, mut f: impl FnMut(&B) -> LinComb<C, T>) -> LinComb<C, T> {
        let mut out = LinComb::zero();
        for (b, c) in self.iter() {
            out.add_scaled(&f(b), c);
        }
        out
    }

    /// `Some(λ)` when `self = λ · other` (with `other` nonzero), else `None`.
    pub fn ratio_to(&self, other: &Self) -> Option<T> {
        let (b, c) = other.iter().next()?;
        let lambda = self.coeff(b) / c.clone();
        (other.scaled(&lambda) == *self).then_some(lambda)
    }
}

impl<B: Ord + Clone, T: Scalar> FromIterator<(B, T)> for LinComb<B, T> {
    fn from_iter<I: IntoIterator<Item = (B, T)>>(iter: I) -> Self {
        let mut s = Self::zero();
        for (b, c) in iter {
            s.add_term(b, c);
        }
        s
    }
}

impl<B: Ord + Clone, T: Scalar> AddAssign<&LinComb<B, T>> for LinComb<B, T> {
    fn add_assign(&mut self, rhs: &LinComb<B, T>) {
        self.add_scaled(rhs, &T::one());
    }
}

impl<B: Ord + Clone, T: Scalar> Add for &LinComb<B, T> {
    type Output = LinComb<B, T>;

    fn add(self, rhs: Self) -> LinComb<B, T> {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<B: Ord + Clone, T: Scalar> Sub for &LinComb<B, T> {
    type Output = LinComb<B, T>;

    fn sub(self, rhs: Self) -> LinComb<B, T> {
        let mut out = self.clone();
        out.add_scaled(rhs, &-T::one());
        out
    }
}

impl<B: Ord + Clone, T: Scalar> Neg for &LinComb<B, T> {
    type Output = LinComb<B, T>;

    fn neg(self) -> LinComb<B, T> {
        self.scaled(&-T::one())
    }
}

/// Renders as `c1 b1 + c2 b2 + ...`, or `0` for the zero vector.
impl<B: Ord + Display, T: Display> Display for LinComb<B, T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (b, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c} {b}")?;
        }
        Ok(())
    }
}
