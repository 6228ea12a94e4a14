//! Integer partitions: conjugation, majorization and the difference and
//! partial-sum operators on finite tuples.

use std::fmt;
use std::ops::Index;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("partitions have different weights ({0} and {1})")]
    UnequalWeight(usize, usize),
    #[error("{0} is not the conjugate of {1}")]
    NotConjugatePair(Partition, Partition),
    #[error("parts must be positive and weakly decreasing: {0:?}")]
    NotAPartition(Vec<usize>),
}

/// A weakly decreasing tuple of positive integers. Never stores zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self, PartitionError> {
        if parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(PartitionError::NotAPartition(parts));
        }
        Ok(Partition { parts })
    }

    /// Sorts the values decreasingly and drops zeros.
    pub fn from_unsorted(mut values: Vec<usize>) -> Self {
        values.retain(|&v| v > 0);
        values.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts: values }
    }

    pub fn empty() -> Self {
        Partition::default()
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// The partitioned integer.
    pub fn weight(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Largest part, or 0 for the empty partition.
    pub fn first(&self) -> usize {
        self.parts.first().copied().unwrap_or(0)
    }

    /// `#{parts ≥ h}`.
    pub fn count_at_least(&self, h: usize) -> usize {
        self.parts.partition_point(|&p| p >= h)
    }

    /// `λ*_i = #{λ_j ≥ i}` for `i = 1..=λ_1`.
    pub fn conjugate(&self) -> Partition {
        Partition {
            parts: (1..=self.first()).map(|i| self.count_at_least(i)).collect(),
        }
    }

    /// Prefix-sum dominance after zero-padding to a common length.
    pub fn majorizes(&self, other: &Partition) -> Result<bool, PartitionError> {
        if self.weight() != other.weight() {
            return Err(PartitionError::UnequalWeight(self.weight(), other.weight()));
        }
        let n = self.len().max(other.len());
        let (mut a, mut b) = (0usize, 0usize);
        for k in 0..n {
            a += self[k];
            b += other[k];
            if a < b {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The parts zero-padded (or truncated) to exactly `len` entries.
    pub fn padded(&self, len: usize) -> Vec<usize> {
        (0..len).map(|k| self[k]).collect()
    }
}

/// Out-of-range indices read as zero.
impl Index<usize> for Partition {
    type Output = usize;

    fn index(&self, index: usize) -> &usize {
        self.parts.get(index).unwrap_or(&0)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, &self.parts)
    }
}

pub(crate) fn write_tuple<T: fmt::Display>(f: &mut fmt::Formatter<'_>, items: &[T]) -> fmt::Result {
    write!(f, "(")?;
    for (k, x) in items.iter().enumerate() {
        if k > 0 {
            write!(f, ",")?;
        }
        write!(f, "{x}")?;
    }
    write!(f, ")")
}

/// `Δp = (p_1, p_2 − p_1, …, p_k − p_{k−1})`.
pub fn difference(v: &[i64]) -> Vec<i64> {
    let mut prev = 0;
    v.iter()
        .map(|&x| {
            let d = x - prev;
            prev = x;
            d
        })
        .collect()
}

pub fn partial_sums(v: &[i64]) -> Vec<i64> {
    v.iter()
        .scan(0i64, |acc, &x| {
            *acc += x;
            Some(*acc)
        })
        .collect()
}

/// Removes the first part of `a` and reduces its conjugate `b` to match.
///
/// Given `a* = b`, returns `a' = (a_2, …, a_n)` and
/// `b' = (b_1 − 1, …, b_{a_2} − 1)` with zeros dropped, and checks
/// `a_1 = |b|`, `b_1 = |a|` and `a'* = b'`.
pub fn conjugate_reduction(a: &Partition, b: &Partition) -> Result<(Partition, Partition), PartitionError> {
    if a.conjugate() != *b {
        return Err(PartitionError::NotConjugatePair(b.clone(), a.clone()));
    }
    debug_assert_eq!(a.first(), b.len());
    debug_assert_eq!(b.first(), a.len());
    let a_rest = Partition {
        parts: a.parts.iter().skip(1).copied().collect(),
    };
    let b_rest = Partition::from_unsorted(b.parts.iter().take(a[1]).map(|&x| x - 1).collect());
    debug_assert_eq!(a_rest.conjugate(), b_rest);
    Ok((a_rest, b_rest))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    /// All partitions of `n` with parts ≤ `max_part`, by brute recursion.
    fn partitions_of(n: usize, max_part: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for first in (1..=max_part.min(n)).rev() {
            for mut rest in partitions_of(n - first, first) {
                rest.insert(0, first);
                out.push(rest);
            }
        }
        out
    }

    #[test]
    fn conjugate_examples() {
        assert_eq!(p(&[4, 4, 3, 1]).conjugate(), p(&[4, 3, 3, 2]));
        assert_eq!(p(&[5]).conjugate(), p(&[1, 1, 1, 1, 1]));
        assert_eq!(
            p(&[6, 4, 3, 3, 2, 2, 2, 2, 1, 1, 1, 1]).conjugate(),
            p(&[12, 8, 4, 2, 1, 1])
        );
        assert_eq!(Partition::empty().conjugate(), Partition::empty());
    }

    #[test]
    fn rejects_non_partitions() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
        assert_eq!(Partition::from_unsorted(vec![0, 1, 3, 2]), p(&[3, 2, 1]));
    }

    #[test]
    fn majorizes_examples() {
        assert!(p(&[4, 3, 3, 2]).majorizes(&p(&[3, 3, 3, 3])).unwrap());
        assert!(p(&[3, 1]).majorizes(&p(&[3, 1])).unwrap());
        assert!(!p(&[2, 2]).majorizes(&p(&[3, 1])).unwrap());
        assert_eq!(p(&[2]).majorizes(&p(&[1])), Err(PartitionError::UnequalWeight(2, 1)));
    }

    #[test]
    fn difference_and_partial_sums() {
        assert_eq!(
            difference(&[12, 20, 24, 26, 27, 28, 28, 28, 28]),
            vec![12, 8, 4, 2, 1, 1, 0, 0, 0]
        );
        assert!(partial_sums(&[]).is_empty());
        assert_eq!(partial_sums(&[1, 1, 1]), vec![1, 2, 3]);
    }

    #[test]
    fn conjugate_reduction_examples() {
        assert_eq!(
            conjugate_reduction(&p(&[2, 1]), &p(&[2, 1])).unwrap(),
            (p(&[1]), p(&[1]))
        );
        assert_eq!(
            conjugate_reduction(&p(&[4]), &p(&[1, 1, 1, 1])).unwrap(),
            (Partition::empty(), Partition::empty())
        );
        assert_eq!(
            conjugate_reduction(&p(&[5, 3, 2, 1, 1]), &p(&[5, 3, 2, 1, 1])).unwrap(),
            (p(&[3, 2, 1, 1]), p(&[4, 2, 1]))
        );
        assert!(matches!(
            conjugate_reduction(&p(&[2, 1]), &p(&[3])),
            Err(PartitionError::NotConjugatePair(..))
        ));
    }

    #[test]
    fn conjugate_is_involution_exhaustive() {
        // parts ≤ 9 and length ≤ 9
        for n in 0..=30 {
            for parts in partitions_of(n, 9).into_iter().filter(|v| v.len() <= 9) {
                let lam = p(&parts);
                let star = lam.conjugate();
                assert_eq!(star.weight(), n);
                assert_eq!(star.conjugate(), lam);
            }
        }
    }

    #[test]
    fn majorization_is_partial_order_reversed_by_conjugation() {
        for n in 0..=9 {
            let all: Vec<Partition> = partitions_of(n, n).iter().map(|v| p(v)).collect();
            for a in &all {
                assert!(a.majorizes(a).unwrap());
                for b in &all {
                    let ab = a.majorizes(b).unwrap();
                    let ba = b.majorizes(a).unwrap();
                    if ab && ba {
                        assert_eq!(a, b);
                    }
                    assert_eq!(ab, b.conjugate().majorizes(&a.conjugate()).unwrap());
                    for c in &all {
                        if ab && b.majorizes(c).unwrap() {
                            assert!(a.majorizes(c).unwrap());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn every_conjugate_pair_reduces() {
        for n in 1..=12 {
            for parts in partitions_of(n, n) {
                let a = p(&parts);
                let (a2, b2) = conjugate_reduction(&a, &a.conjugate()).unwrap();
                assert_eq!(a2.conjugate(), b2);
                assert_eq!(a2.weight() + a.first(), n);
            }
        }
    }

    mod props {
        use super::super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn difference_inverts_partial_sums(v in proptest::collection::vec(-1000i64..1000, 0..40)) {
                prop_assert_eq!(partial_sums(&difference(&v)), v.clone());
                prop_assert_eq!(difference(&partial_sums(&v)), v);
            }

            #[test]
            fn conjugate_preserves_weight(v in proptest::collection::vec(1usize..50, 0..30)) {
                let lam = Partition::from_unsorted(v);
                let star = lam.conjugate();
                prop_assert_eq!(star.weight(), lam.weight());
                prop_assert_eq!(star.len(), lam.first());
                prop_assert_eq!(star.conjugate(), lam);
            }
        }
    }
}
