//! The tuples `α_Z`, `β_Z`, the border of the Hilbert function, and the
//! values it determines.
//!
//! Row `R_i` contributes `a_{i,k} = Σ_j (m_ij − k)_+` for
//! `0 ≤ k < l_i = max_j m_ij`; columns give `b_{j,k}` symmetrically.
//! Outside the border, that is for `i ≥ m − 1` or `j ≥ m' − 1` where
//! `m = |α_Z|` and `m' = |β_Z|`, the Hilbert function depends only on these
//! tuples.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::partition::{partial_sums, Partition};
use crate::scheme::{BiDegree, GridScheme};
use crate::table::HilbertTable;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BorderError {
    #[error("scheme has {rows} rows and {cols} columns; it is not supported on a line")]
    NotCollinear { rows: usize, cols: usize },
}

/// Raw per-row and per-column tuples plus their sorted partitions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlphaBeta {
    /// `α_{R_i}` for each row, in grid order.
    pub alpha_raw: Vec<Vec<usize>>,
    /// `β_{Q_j}` for each column, in grid order.
    pub beta_raw: Vec<Vec<usize>>,
    pub alpha: Partition,
    pub beta: Partition,
}

impl AlphaBeta {
    /// `m = l_1 + … + l_r`.
    pub fn m(&self) -> usize {
        self.alpha.len()
    }

    /// `m' = l'_1 + … + l'_t`.
    pub fn m_prime(&self) -> usize {
        self.beta.len()
    }
}

fn truncated_sums(line: impl Iterator<Item = usize> + Clone) -> Vec<usize> {
    let top = line.clone().max().unwrap_or(0);
    (0..top)
        .map(|k| line.clone().map(|m| m.saturating_sub(k)).sum())
        .collect()
}

pub fn alpha_beta(scheme: &GridScheme) -> AlphaBeta {
    let alpha_raw: Vec<Vec<usize>> = scheme
        .grid()
        .iter()
        .map(|row| truncated_sums(row.iter().copied()))
        .collect();
    let beta_raw: Vec<Vec<usize>> = (0..scheme.cols())
        .map(|j| truncated_sums(scheme.grid().iter().map(move |row| row[j])))
        .collect();
    let alpha = Partition::from_unsorted(alpha_raw.concat());
    let beta = Partition::from_unsorted(beta_raw.concat());
    AlphaBeta {
        alpha_raw,
        beta_raw,
        alpha,
        beta,
    }
}

/// Eventual column vector `B_C` (length `m'`) and eventual row vector `B_R`
/// (length `m`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Border {
    pub bc: Vec<usize>,
    pub br: Vec<usize>,
}

impl Border {
    pub fn from_alpha_beta(ab: &AlphaBeta) -> Self {
        let sums = |p: &Partition, len: usize| -> Vec<usize> {
            let star: Vec<i64> = p.conjugate().padded(len).into_iter().map(|x| x as i64).collect();
            partial_sums(&star).into_iter().map(|x| x as usize).collect()
        };
        Border {
            bc: sums(&ab.alpha, ab.m_prime()),
            br: sums(&ab.beta, ab.m()),
        }
    }

    /// `m = |B_R|`.
    pub fn m(&self) -> usize {
        self.br.len()
    }

    /// `m' = |B_C|`.
    pub fn m_prime(&self) -> usize {
        self.bc.len()
    }

    /// `deg Z`, the value at which all rows and columns stabilize.
    pub fn eventual(&self) -> usize {
        self.bc.last().copied().unwrap_or(0)
    }

    /// The Hilbert value at `(i, j)` when it lies outside the border.
    pub fn value_outside(&self, i: usize, j: usize) -> Option<usize> {
        let (m, mp) = (self.m(), self.m_prime());
        if i + 1 >= m {
            Some(self.bc[j.min(mp - 1)])
        } else if j + 1 >= mp {
            Some(self.br[i.min(m - 1)])
        } else {
            None
        }
    }

    pub fn is_inside(&self, i: usize, j: usize) -> bool {
        self.value_outside(i, j).is_none()
    }

    pub fn transpose(&self) -> Self {
        Border {
            bc: self.br.clone(),
            br: self.bc.clone(),
        }
    }
}

pub fn border(scheme: &GridScheme) -> Border {
    Border::from_alpha_beta(&alpha_beta(scheme))
}

/// `H_Z(i, j)` when `(i, j)` lies outside the border, `None` otherwise.
///
/// For `i ≥ m − 1` this is `Σ_{h=1}^{j+1} #{α-parts ≥ h}`; symmetrically in
/// `β` for `j ≥ m' − 1`.
pub fn hilbert_outside_border(scheme: &GridScheme, i: usize, j: usize) -> Option<usize> {
    let ab = alpha_beta(scheme);
    if i + 1 >= ab.m() {
        Some((1..=j + 1).map(|h| ab.alpha.count_at_least(h)).sum())
    } else if j + 1 >= ab.m_prime() {
        Some((1..=i + 1).map(|h| ab.beta.count_at_least(h)).sum())
    } else {
        None
    }
}

/// Table with every outside-border value filled and inside entries unknown.
pub fn border_table(scheme: &GridScheme, window: BiDegree) -> HilbertTable {
    let b = border(scheme);
    HilbertTable::from_fn(window, Some(b.clone()), |i, j| b.value_outside(i, j))
}

/// Hilbert function of a scheme supported on one row (or one column).
///
/// For a single row with `a_h = Σ_j (m_1j − h)_+`,
/// `H(i, j) = Σ_{h=0}^{min(i, m−1)} min(j + 1, a_h)`.
pub fn line_hilbert(scheme: &GridScheme, window: BiDegree) -> Result<HilbertTable, BorderError> {
    if scheme.rows() == 1 {
        let a = &alpha_beta(scheme).alpha_raw[0];
        let b = border(scheme);
        Ok(HilbertTable::from_fn(window, Some(b), |i, j| {
            Some(a.iter().take(i + 1).map(|&ah| ah.min(j + 1)).sum())
        }))
    } else if scheme.cols() == 1 {
        let swapped = BiDegree::new(window.j, window.i);
        Ok(line_hilbert(&scheme.transpose(), swapped)?.transpose())
    } else {
        Err(BorderError::NotCollinear {
            rows: scheme.rows(),
            cols: scheme.cols(),
        })
    }
}
