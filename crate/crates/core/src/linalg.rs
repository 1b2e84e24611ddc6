//! Exact rank computations.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::scalar::Scalar;
use crate::state::LinComb;

/// Coordinates of each state against `basis`, one row per state.
///
/// Returns `None` if some state has a component outside `basis`.
pub fn coordinate_rows<B: Ord + Clone, T: Scalar>(states: &[LinComb<B, T>], basis: &[B]) -> Option<Vec<Vec<T>>> {
    states
        .iter()
        .map(|s| {
            if s.basis_elements().any(|b| !basis.contains(b)) {
                return None;
            }
            Some(basis.iter().map(|b| s.coeff(b)).collect())
        })
        .collect()
}

/// Rank by Gaussian elimination over the scalar field.
pub fn rank<T: Scalar>(rows: &[Vec<T>]) -> usize {
    let mut m: Vec<Vec<T>> = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        let inv = T::one() / m[rank][col].clone();
        for r in rank + 1..m.len() {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = m[r][col].clone() * inv.clone();
            let (top, bottom) = m.split_at_mut(r);
            for (x, p) in bottom[0][col..cols].iter_mut().zip(&top[rank][col..cols]) {
                *x = x.clone() - factor.clone() * p.clone();
            }
        }
        rank += 1;
    }
    rank
}

/// Rank by fraction-free (Bareiss) elimination after clearing denominators row by row.
pub fn rank_fraction_free(rows: &[Vec<BigRational>]) -> usize {
    let mut m: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|row| {
            let lcm = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            row.iter().map(|x| (x * BigRational::from_integer(lcm.clone())).to_integer()).collect()
        })
        .collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut prev = BigInt::one();
    for col in 0..cols {
        let Some(pivot) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        for r in rank + 1..m.len() {
            for c in col + 1..cols {
                let value = &m[rank][col] * &m[r][c] - &m[r][col] * &m[rank][c];
                m[r][c] = value / &prev;
            }
            m[r][col] = BigInt::zero();
        }
        prev = m[rank][col].clone();
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(rows: &[&[i64]]) -> Vec<Vec<BigRational>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigRational::from_int(x)).collect())
            .collect()
    }

    #[test]
    fn ranks_agree() {
        let cases = [
            (q(&[&[1, 2], &[2, 4]]), 1),
            (q(&[&[1, 2], &[3, 4]]), 2),
            (q(&[&[0, 0, 1], &[0, 1, 0], &[0, 1, 1]]), 2),
            (q(&[&[2, 0, 0], &[0, 3, 0], &[0, 0, 5], &[1, 1, 1]]), 3),
            (q(&[&[0, 0], &[0, 0]]), 0),
        ];
        for (m, r) in cases {
            assert_eq!(rank(&m), r);
            assert_eq!(rank_fraction_free(&m), r);
        }
        let halves = vec![
            vec![BigRational::from_ratio(1, 2), BigRational::from_ratio(1, 3)],
            vec![BigRational::from_ratio(3, 2), BigRational::from_int(1)],
        ];
        assert_eq!(rank(&halves), 1);
        assert_eq!(rank_fraction_free(&halves), 1);
    }
}
