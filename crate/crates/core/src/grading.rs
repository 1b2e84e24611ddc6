//! Length, charge and energy gradings of the neutral Fock space.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::FockError;
use crate::fock::{monomials_of_twice_weight, FermionMonomial};
use crate::scalar::HalfInteger;

/// `(length, dg, deg_h)` of a monomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct GradeTriple {
    pub length: u32,
    pub charge: i64,
    pub energy: u64,
}

/// A partition, stored with non-increasing positive parts.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self, FockError> {
        if parts.iter().all(|&p| p > 0) && parts.windows(2).all(|w| w[0] >= w[1]) {
            Ok(Partition { parts })
        } else {
            Err(FockError::BadPartition(parts))
        }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn size(&self) -> u64 {
        self.parts.iter().map(|&p| p as u64).sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Column lengths of the Young diagram.
    pub fn conjugate(&self) -> Partition {
        let width = self.parts.first().copied().unwrap_or(0);
        let parts = (1..=width)
            .map(|c| self.parts.iter().filter(|&&p| p >= c).count() as u32)
            .collect();
        Partition { parts }
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// All partitions of `k`, parts non-increasing, in reverse lexicographic order.
pub fn partitions(k: u32) -> Vec<Partition> {
    fn rec(remaining: u32, max_part: u32, current: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition { parts: current.clone() });
            return;
        }
        for p in (1..=max_part.min(remaining)).rev() {
            current.push(p);
            rec(remaining - p, p, current, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    rec(k, k, &mut Vec::new(), &mut out);
    out
}

/// Number of partitions of `k`, by the standard recurrence over largest parts.
pub fn partition_count(k: u32) -> u64 {
    let k = k as usize;
    let mut table = vec![0u64; k + 1];
    table[0] = 1;
    for part in 1..=k {
        for total in part..=k {
            table[total] += table[total - part];
        }
    }
    table[k]
}

/// `#{odd indices} − #{even indices}`.
pub fn dg(v: &FermionMonomial) -> i64 {
    v.indices().iter().map(|&n| if n % 2 == 1 { 1 } else { -1 }).sum()
}

pub fn length(v: &FermionMonomial) -> u32 {
    v.len() as u32
}

pub fn weight(v: &FermionMonomial) -> HalfInteger {
    v.weight()
}

/// The lowest-weight monomial of charge `n`.
pub fn vacuum_like(n: i64) -> FermionMonomial {
    let count = n.unsigned_abs() as u32;
    let offset = if n > 0 { 1 } else { 0 };
    FermionMonomial::from_set((0..count).map(|i| 2 * i + offset))
}

/// Twice the weight of `vacuum_like(n)`, i.e. `2n² + n`.
pub fn vacuum_like_weight_twice(n: i64) -> i64 {
    2 * n * n + n
}

/// `(weight(v) − weight(v_{dg(v)})) / 2`.
pub fn deg_h(v: &FermionMonomial) -> Result<u64, FockError> {
    let excess = v.weight_twice() - vacuum_like_weight_twice(dg(v));
    if excess >= 0 && excess % 4 == 0 {
        Ok((excess / 4) as u64)
    } else {
        Err(FockError::FractionalEnergy {
            monomial: v.to_string(),
            excess,
        })
    }
}

pub fn grade(v: &FermionMonomial) -> Result<GradeTriple, FockError> {
    Ok(GradeTriple {
        length: length(v),
        charge: dg(v),
        energy: deg_h(v)?,
    })
}

/// All monomials with `dg = n` and `deg_h = k`.
pub fn sector_basis(n: i64, k: u64) -> Vec<FermionMonomial> {
    monomials_of_twice_weight(4 * k as i64 + vacuum_like_weight_twice(n))
        .into_iter()
        .filter(|v| dg(v) == n)
        .collect()
}

/// The sector-`(0, |λ|)` monomial attached to a partition via its Frobenius
/// coordinates.
///
/// With Durfee size `d`, arms `aᵢ = λᵢ − i` and legs `bᵢ = λ'ᵢ − i`
/// (`i = 1..d`), the monomial has odd indices `2aᵢ − 1` and even indices
/// `2bᵢ − 2`. This is a bijection from partitions of `k` onto the sector.
pub fn lemma_vector(lambda: &Partition) -> FermionMonomial {
    let parts = lambda.parts();
    let conj = lambda.conjugate();
    let durfee = parts.iter().enumerate().take_while(|&(i, &p)| p as usize > i).count();
    let odd = (0..durfee).map(|i| 2 * (parts[i] - i as u32) - 1);
    let even = (0..durfee).map(|i| 2 * (conj.parts()[i] - i as u32) - 2);
    FermionMonomial::from_set(odd.chain(even))
}
