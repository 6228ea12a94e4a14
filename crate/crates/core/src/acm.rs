//! ACM detection, Hilbert functions of ACM schemes, and their bigraded
//! minimal free resolutions.
//!
//! A scheme is ACM exactly when `α_Z* = β_Z`, equivalently when the multiset
//! `S_Z` of truncated row tuples `(t_{i1}(h), …, t_{it}(h))`,
//! `t_{ij}(h) = (m_ij − h)_+`, is totally ordered componentwise. Both tests
//! are computed and cross-checked.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::border::{alpha_beta, border, border_table, line_hilbert};
use crate::partition::Partition;
use crate::scheme::{BiDegree, GridScheme};
use crate::table::{DiffTable, HilbertTable};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AcmError {
    #[error("scheme is not ACM")]
    NotAcm,
    #[error("table has unknown entries")]
    UnknownEntries,
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
}

/// One element of `S_Z`: the tuple for row `row` (0-based) at shift `h`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SzTuple {
    pub row: usize,
    pub h: usize,
    pub entries: Vec<usize>,
}

impl SzTuple {
    /// `z_{i,h}`.
    pub fn sum(&self) -> usize {
        self.entries.iter().sum()
    }

    fn le(&self, other: &SzTuple) -> bool {
        self.entries.iter().zip(&other.entries).all(|(a, b)| a <= b)
    }

    fn comparable(&self, other: &SzTuple) -> bool {
        self.le(other) || other.le(self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SzSet {
    /// All `m` tuples, duplicates kept, in (row, h) order.
    pub tuples: Vec<SzTuple>,
    /// The sorted row sums `u_1 ≥ … ≥ u_m`.
    pub u: Partition,
}

impl SzSet {
    pub fn z_values(&self) -> Vec<usize> {
        self.tuples.iter().map(SzTuple::sum).collect()
    }

    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }

    pub fn order_status(&self) -> OrderStatus {
        is_totally_ordered(self)
    }
}

pub fn s_set(scheme: &GridScheme) -> SzSet {
    let mut tuples = Vec::new();
    for (row, mults) in scheme.grid().iter().enumerate() {
        let top = mults.iter().copied().max().unwrap_or(0);
        for h in 0..top {
            tuples.push(SzTuple {
                row,
                h,
                entries: mults.iter().map(|&m| m.saturating_sub(h)).collect(),
            });
        }
    }
    let u = Partition::from_unsorted(tuples.iter().map(SzTuple::sum).collect());
    debug_assert_eq!(u, alpha_beta(scheme).alpha);
    SzSet { tuples, u }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum OrderStatus {
    Total,
    /// An incomparable pair of tuples.
    Incomparable(Vec<usize>, Vec<usize>),
}

impl OrderStatus {
    pub fn is_total(&self) -> bool {
        matches!(self, OrderStatus::Total)
    }
}

pub fn is_totally_ordered(s: &SzSet) -> OrderStatus {
    // Sorting by sum puts a chain in order; only neighbours then need checking.
    let mut sorted: Vec<&SzTuple> = s.tuples.iter().collect();
    sorted.sort_by_key(|t| t.sum());
    for w in sorted.windows(2) {
        if !w[0].le(w[1]) {
            // A failure between neighbours means some pair is incomparable;
            // report one from the full scan so the witness is genuine.
            for (k, a) in s.tuples.iter().enumerate() {
                if let Some(b) = s.tuples[k + 1..].iter().find(|b| !a.comparable(b)) {
                    return OrderStatus::Incomparable(a.entries.clone(), b.entries.clone());
                }
            }
            unreachable!("sorted chain failed but all pairs comparable");
        }
    }
    OrderStatus::Total
}

/// Both combinatorial ACM certificates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AcmCertificate {
    pub acm: bool,
    pub alpha_star: Partition,
    pub beta: Partition,
    /// First index (0-based) where `α*` and `β` differ.
    pub mismatch_index: Option<usize>,
    pub order: OrderStatus,
}

impl fmt::Display for AcmCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.acm {
            write!(f, "ACM: α* = β = {}", self.beta)?;
            write!(f, "; S_Z totally ordered")
        } else {
            write!(f, "NOT ACM: α* = {} ≠ β = {}", self.alpha_star, self.beta)?;
            if let OrderStatus::Incomparable(a, b) = &self.order {
                write!(f, "; S_Z not totally ordered: ")?;
                write_entries(f, a)?;
                write!(f, " and ")?;
                write_entries(f, b)?;
                write!(f, " are incomparable")?;
            }
            Ok(())
        }
    }
}

fn write_entries(f: &mut fmt::Formatter<'_>, v: &[usize]) -> fmt::Result {
    crate::partition::write_tuple(f, v)
}

pub fn is_acm(scheme: &GridScheme) -> Result<AcmCertificate, AcmError> {
    let ab = alpha_beta(scheme);
    let alpha_star = ab.alpha.conjugate();
    let mismatch_index = (0..alpha_star.len().max(ab.beta.len())).find(|&k| alpha_star[k] != ab.beta[k]);
    let order = is_totally_ordered(&s_set(scheme));
    let acm = mismatch_index.is_none();
    if acm != order.is_total() {
        return Err(AcmError::InternalInconsistency(format!(
            "{scheme}: α* = β is {acm} but S_Z total order is {}",
            order.is_total()
        )));
    }
    Ok(AcmCertificate {
        acm,
        alpha_star,
        beta: ab.beta,
        mismatch_index,
        order,
    })
}

fn require_acm(scheme: &GridScheme) -> Result<Partition, AcmError> {
    if is_acm(scheme)?.acm {
        Ok(alpha_beta(scheme).alpha)
    } else {
        Err(AcmError::NotAcm)
    }
}

/// `H(i, j) = Σ_{h=1}^{min(i+1, m)} min(j + 1, α_h)` for ACM schemes.
pub fn acm_hilbert(scheme: &GridScheme, window: BiDegree) -> Result<HilbertTable, AcmError> {
    let alpha = require_acm(scheme)?;
    Ok(HilbertTable::from_fn(window, Some(border(scheme)), |i, j| {
        Some(alpha.parts().iter().take(i + 1).map(|&a| a.min(j + 1)).sum())
    }))
}

/// Row `p − 1` holds `u_p` ones.
pub fn acm_delta(scheme: &GridScheme) -> Result<DiffTable, AcmError> {
    let alpha = require_acm(scheme)?;
    let width = alpha.first();
    Ok(DiffTable::new(
        alpha
            .parts()
            .iter()
            .map(|&u| (0..width).map(|j| i64::from(j < u)).collect())
            .collect(),
    ))
}

/// `ΔH(i,j) = H(i,j) − H(i−1,j) − H(i,j−1) + H(i−1,j−1)`, with `H = 0` off
/// the first quadrant.
pub fn first_difference(table: &HilbertTable) -> Result<DiffTable, AcmError> {
    let h = table.known().ok_or(AcmError::UnknownEntries)?;
    let at = |i: isize, j: isize| -> i64 {
        if i < 0 || j < 0 {
            0
        } else {
            h[i as usize][j as usize] as i64
        }
    };
    Ok(DiffTable::new(
        (0..h.len() as isize)
            .map(|i| {
                (0..h[0].len() as isize)
                    .map(|j| at(i, j) - at(i - 1, j) - at(i, j - 1) + at(i - 1, j - 1))
                    .collect()
            })
            .collect(),
    ))
}

/// True iff every entry is 0 or 1 and the ones form a down-closed set.
pub fn is_artinian_staircase(d: &DiffTable) -> bool {
    for (i, row) in d.rows().iter().enumerate() {
        for (j, &x) in row.iter().enumerate() {
            match x {
                0 => {}
                1 => {
                    if (i > 0 && d.get(i - 1, j) != 1) || (j > 0 && d.get(i, j - 1) != 1) {
                        return false;
                    }
                }
                _ => return false,
            }
        }
    }
    true
}

/// Generator twists `C_Z` and syzygy twists `V_Z` of `I_Z`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Resolution {
    pub corners: BTreeSet<BiDegree>,
    pub vertices: BTreeSet<BiDegree>,
}

impl Resolution {
    /// Builds the twists from a decreasing `α = (α_1, …, α_m)`.
    pub fn from_alpha(alpha: &Partition) -> Self {
        let a = alpha.parts();
        let m = a.len();
        let mut corners = BTreeSet::from([BiDegree::new(m, 0), BiDegree::new(0, alpha.first())]);
        let mut vertices = BTreeSet::from([BiDegree::new(m, alpha[m.saturating_sub(1)])]);
        // 1-based i = 2..m: a drop α_i < α_{i-1}
        for i in 2..=m {
            if a[i - 1] < a[i - 2] {
                corners.insert(BiDegree::new(i - 1, a[i - 1]));
                vertices.insert(BiDegree::new(i - 1, a[i - 2]));
            }
        }
        Resolution { corners, vertices }
    }
}

impl fmt::Display for Resolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // listing order: axis corners and the top vertex first, then by row
        let m = self.corners.iter().map(|c| c.i).max().unwrap_or(0);
        let corners = self
            .corners
            .iter()
            .filter(|c| c.j == 0)
            .chain(self.corners.iter().filter(|c| c.i == 0 && c.j != 0))
            .chain(self.corners.iter().filter(|c| c.i != 0 && c.j != 0));
        let vertices = self
            .vertices
            .iter()
            .filter(|v| v.i == m)
            .chain(self.vertices.iter().filter(|v| v.i != m));
        let join = |s: &mut dyn Iterator<Item = &BiDegree>| s.map(BiDegree::to_string).collect::<Vec<_>>().join(",");
        write!(f, "C = {{{}}}  V = {{{}}}", join(&mut { corners }), join(&mut { vertices }))
    }
}

pub fn resolution(scheme: &GridScheme) -> Result<Resolution, AcmError> {
    let alpha = require_acm(scheme)?;
    let res = Resolution::from_alpha(&alpha);
    if res.corners.len() != res.vertices.len() + 1 {
        return Err(AcmError::InternalInconsistency(format!(
            "{scheme}: |C| = {} but |V| = {}",
            res.corners.len(),
            res.vertices.len()
        )));
    }
    Ok(res)
}

fn dims(a: isize, b: isize) -> isize {
    if a < 0 || b < 0 {
        0
    } else {
        (a + 1) * (b + 1)
    }
}

/// Euler characteristic of the resolution in each bidegree of the window.
pub fn resolution_hilbert(res: &Resolution, window: BiDegree) -> HilbertTable {
    HilbertTable::from_fn(window, None, |i, j| {
        let (i, j) = (i as isize, j as isize);
        let gens: isize = res.corners.iter().map(|c| dims(i - c.i as isize, j - c.j as isize)).sum();
        let syz: isize = res.vertices.iter().map(|v| dims(i - v.i as isize, j - v.j as isize)).sum();
        usize::try_from(dims(i, j) - gens + syz).ok()
    })
}

/// The best combinatorial table: exact for ACM schemes, border values with
/// unknown interior otherwise.
pub fn combinatorial_table(scheme: &GridScheme, window: BiDegree) -> Result<HilbertTable, AcmError> {
    if scheme.is_collinear() {
        return line_hilbert(scheme, window).map_err(|e| AcmError::InternalInconsistency(e.to_string()));
    }
    if is_acm(scheme)?.acm {
        acm_hilbert(scheme, window)
    } else {
        Ok(border_table(scheme, window))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid(v: &[&[usize]]) -> GridScheme {
        GridScheme::new(v.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    fn entries(s: &SzSet) -> Vec<Vec<usize>> {
        s.tuples.iter().map(|t| t.entries.clone()).collect()
    }

    fn bd(v: &[(usize, usize)]) -> BTreeSet<BiDegree> {
        v.iter().map(|&(i, j)| BiDegree::new(i, j)).collect()
    }

    #[test]
    fn s_set_examples() {
        let s = s_set(&grid(&[&[3, 2], &[2, 0]]));
        assert_eq!(entries(&s), vec![vec![3, 2], vec![2, 1], vec![1, 0], vec![2, 0], vec![1, 0]]);
        assert_eq!(s.u.parts(), &[5, 3, 2, 1, 1]);
        assert_eq!(s.z_values(), vec![5, 3, 1, 2, 1]);
        assert_eq!(entries(&s_set(&grid(&[&[1, 0], &[0, 1]]))), vec![vec![1, 0], vec![0, 1]]);
        assert_eq!(entries(&s_set(&grid(&[&[1]]))), vec![vec![1]]);
    }

    #[test]
    fn total_order_examples() {
        assert!(is_totally_ordered(&s_set(&grid(&[&[3, 2], &[2, 0]]))).is_total());
        assert_eq!(
            is_totally_ordered(&s_set(&grid(&[&[1, 0], &[0, 1]]))),
            OrderStatus::Incomparable(vec![1, 0], vec![0, 1])
        );
        assert!(is_totally_ordered(&s_set(&grid(&[&[1]]))).is_total());
    }

    #[test]
    fn acm_examples() {
        let c = is_acm(&grid(&[&[3, 2], &[2, 0]])).unwrap();
        assert!(c.acm);
        assert_eq!(c.alpha_star.parts(), &[5, 3, 2, 1, 1]);
        let c = is_acm(&grid(&[&[4, 2, 0], &[0, 0, 3], &[0, 2, 0], &[3, 0, 0]])).unwrap();
        assert!(!c.acm);
        assert_eq!(c.alpha_star.parts(), &[12, 8, 4, 2, 1, 1]);
        assert_eq!(c.mismatch_index, Some(0));
        assert_eq!(
            c.to_string().split(';').next().unwrap(),
            "NOT ACM: α* = (12,8,4,2,1,1) ≠ β = (7,5,4,3,3,2,2,1,1)"
        );
        assert!(is_acm(&grid(&[&[2]])).unwrap().acm);
    }

    #[test]
    fn acm_hilbert_examples() {
        assert_eq!(acm_hilbert(&grid(&[&[2]]), BiDegree::new(1, 1)).unwrap().get(1, 1), Some(3));
        let s = grid(&[&[3, 2], &[2, 0]]);
        assert_eq!(acm_hilbert(&s, BiDegree::new(4, 4)).unwrap().get(4, 4), Some(12));
        assert_eq!(acm_hilbert(&grid(&[&[1]]), BiDegree::new(0, 0)).unwrap().get(0, 0), Some(1));
        assert_eq!(
            acm_hilbert(&grid(&[&[1, 0], &[0, 1]]), BiDegree::new(1, 1)),
            Err(AcmError::NotAcm)
        );
    }

    #[test]
    fn acm_delta_examples() {
        assert_eq!(acm_delta(&grid(&[&[2]])).unwrap().rows(), &[vec![1, 1], vec![1, 0]]);
        let d = acm_delta(&grid(&[&[3, 2], &[2, 0]])).unwrap();
        assert_eq!(d.row_sums(), vec![5, 3, 2, 1, 1]);
        assert_eq!(acm_delta(&grid(&[&[1]])).unwrap().rows(), &[vec![1]]);
        assert_eq!(acm_delta(&grid(&[&[1, 0], &[0, 1]])), Err(AcmError::NotAcm));
    }

    #[test]
    fn first_difference_examples() {
        let dp = HilbertTable {
            values: vec![vec![Some(1), Some(2)], vec![Some(2), Some(3)]],
            border: None,
        };
        assert_eq!(first_difference(&dp).unwrap().rows(), &[vec![1, 1], vec![1, 0]]);
        let c = HilbertTable::from_fn(BiDegree::new(3, 2), None, |_, _| Some(5));
        assert_eq!(first_difference(&c).unwrap().rows(), &[vec![5]]);
        let y1: Vec<Vec<usize>> = vec![
            vec![1, 2, 3, 4, 4],
            vec![2, 4, 4, 4, 4],
            vec![3, 4, 4, 4, 4],
            vec![4, 4, 4, 4, 4],
            vec![4, 4, 4, 4, 4],
        ];
        let y1 = HilbertTable {
            values: y1.into_iter().map(|r| r.into_iter().map(Some).collect()).collect(),
            border: None,
        };
        let d = first_difference(&y1).unwrap();
        assert_eq!(d.get(1, 1), 1);
        assert_eq!(d.get(1, 2), -1);
        assert_eq!(d.total(), 4);
        assert!(!is_artinian_staircase(&d));
        let partial = HilbertTable {
            values: vec![vec![Some(1), None]],
            border: None,
        };
        assert_eq!(first_difference(&partial), Err(AcmError::UnknownEntries));
    }

    #[test]
    fn staircase_examples() {
        assert!(is_artinian_staircase(&DiffTable::new(vec![vec![1, 1], vec![1, 0]])));
        assert!(!is_artinian_staircase(&DiffTable::new(vec![vec![1, 0], vec![0, 1]])));
        assert!(!is_artinian_staircase(&DiffTable::new(vec![vec![2]])));
        assert!(!is_artinian_staircase(&DiffTable::new(vec![vec![1, -1]])));
        assert!(is_artinian_staircase(&DiffTable::new(vec![])));
    }

    #[test]
    fn resolution_examples() {
        let r = resolution(&grid(&[&[2]])).unwrap();
        assert_eq!(r.corners, bd(&[(2, 0), (0, 2), (1, 1)]));
        assert_eq!(r.vertices, bd(&[(2, 1), (1, 2)]));
        assert_eq!(r.to_string(), "C = {(2,0),(0,2),(1,1)}  V = {(2,1),(1,2)}");
        let r = resolution(&grid(&[&[3, 2], &[2, 0]])).unwrap();
        assert_eq!(r.corners, bd(&[(5, 0), (0, 5), (1, 3), (2, 2), (3, 1)]));
        assert_eq!(r.vertices, bd(&[(5, 1), (1, 5), (2, 3), (3, 2)]));
        let r = resolution(&grid(&[&[1]])).unwrap();
        assert_eq!(r.corners, bd(&[(1, 0), (0, 1)]));
        assert_eq!(r.vertices, bd(&[(1, 1)]));
        assert_eq!(resolution(&grid(&[&[1, 0], &[0, 1]])), Err(AcmError::NotAcm));
    }

    #[test]
    fn resolution_hilbert_examples() {
        let dp = resolution(&grid(&[&[2]])).unwrap();
        assert_eq!(resolution_hilbert(&dp, BiDegree::new(1, 1)).get(1, 1), Some(3));
        assert_eq!(resolution_hilbert(&dp, BiDegree::new(30, 30)).get(30, 30), Some(3));
        let s = grid(&[&[3, 2], &[2, 0]]);
        let t = resolution_hilbert(&resolution(&s).unwrap(), BiDegree::new(12, 12));
        assert_eq!(t.get(5, 5), Some(12));
        assert_eq!(t.get(12, 12), Some(12));
        let pt = resolution(&grid(&[&[1]])).unwrap();
        assert_eq!(resolution_hilbert(&pt, BiDegree::new(0, 0)).get(0, 0), Some(1));
    }

    #[test]
    fn acm_routes_agree_on_small_grids() {
        for s in [
            grid(&[&[2]]),
            grid(&[&[3, 2], &[2, 0]]),
            grid(&[&[3, 3], &[3, 2]]),
            grid(&[&[2, 2], &[2, 2]]),
            grid(&[&[1, 1, 1], &[1, 1, 0]]),
        ] {
            let ab = alpha_beta(&s);
            let w = BiDegree::new(ab.m() + 1, ab.m_prime() + 1);
            let t = acm_hilbert(&s, w).unwrap();
            assert_eq!(t, {
                let mut r = resolution_hilbert(&resolution(&s).unwrap(), w);
                r.border = t.border.clone();
                r
            });
            assert_eq!(first_difference(&t).unwrap(), acm_delta(&s).unwrap());
            t.check_shape().unwrap();
        }
    }
}
