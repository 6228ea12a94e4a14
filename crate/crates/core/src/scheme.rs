//! Fat point schemes in P¹×P¹ stored as a multiplicity grid.
//!
//! A scheme is an `r × t` matrix of multiplicities `m_ij`; entry `(i, j)`
//! is the point `R_i × Q_j`. Everything except the linear oracle depends
//! only on the grid, so explicit coordinates are an optional attachment.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SchemeError {
    #[error("{axis} {index} of the multiplicity grid is all zero")]
    ZeroRowOrColumn { axis: &'static str, index: usize },
    #[error("coordinates {0} and {1} are the same point of P1")]
    CoordinateCollision(ProjPoint, ProjPoint),
    #[error("coordinate [0:0] is not a point of P1")]
    ZeroCoordinate,
    #[error("expected {expected} {side} coordinates, found {found}")]
    CoordinateArityMismatch {
        side: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("the multiplicity grid is empty or all zero")]
    EmptyScheme,
    #[error("ragged multiplicity grid: row {row} has {found} entries, expected {expected}")]
    Ragged {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("index {index} out of range 1..={len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("invalid scheme file: {0}")]
    Parse(String),
}

/// A point `[x0 : x1]` of P¹ with integer homogeneous coordinates.
///
/// Equality is projective: two points are equal when their cross product
/// vanishes.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(from = "[i64; 2]", into = "[i64; 2]")]
pub struct ProjPoint {
    pub x0: i64,
    pub x1: i64,
}

impl ProjPoint {
    pub const fn new(x0: i64, x1: i64) -> Self {
        ProjPoint { x0, x1 }
    }

    pub fn is_zero(&self) -> bool {
        self.x0 == 0 && self.x1 == 0
    }

    /// `x0·y1 − x1·y0`, computed without overflow.
    pub fn cross(&self, other: &ProjPoint) -> i128 {
        self.x0 as i128 * other.x1 as i128 - self.x1 as i128 * other.x0 as i128
    }
}

impl PartialEq for ProjPoint {
    fn eq(&self, other: &Self) -> bool {
        self.cross(other) == 0 && self.is_zero() == other.is_zero()
    }
}

impl Eq for ProjPoint {}

impl From<[i64; 2]> for ProjPoint {
    fn from(v: [i64; 2]) -> Self {
        ProjPoint::new(v[0], v[1])
    }
}

impl From<ProjPoint> for [i64; 2] {
    fn from(p: ProjPoint) -> Self {
        [p.x0, p.x1]
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}:{}]", self.x0, self.x1)
    }
}

/// A bidegree `(i, j)`, partially ordered componentwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BiDegree {
    pub i: usize,
    pub j: usize,
}

impl BiDegree {
    pub const fn new(i: usize, j: usize) -> Self {
        BiDegree { i, j }
    }

    /// Componentwise `self ≤ other`.
    pub fn le(&self, other: &BiDegree) -> bool {
        self.i <= other.i && self.j <= other.j
    }
}

impl fmt::Display for BiDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.i, self.j)
    }
}

/// Row points `R_1..R_r` and column points `Q_1..Q_t`.
#[derive(Debug, Clone, PartialEq)]
pub struct Coordinates {
    pub rows: Vec<ProjPoint>,
    pub cols: Vec<ProjPoint>,
}

impl Coordinates {
    /// `R_i = [1:i]`, `Q_j = [1:j]` (1-based).
    pub fn standard(rows: usize, cols: usize) -> Self {
        Coordinates {
            rows: (1..=rows as i64).map(|a| ProjPoint::new(1, a)).collect(),
            cols: (1..=cols as i64).map(|b| ProjPoint::new(1, b)).collect(),
        }
    }
}

/// A fat point scheme `Z ⊆ P¹×P¹` in normalized grid form.
#[derive(Debug, Clone, PartialEq)]
pub struct GridScheme {
    mult: Vec<Vec<usize>>,
    coords: Option<Coordinates>,
}

impl GridScheme {
    /// Builds a scheme from a grid, rejecting ragged, empty or
    /// un-normalized input.
    pub fn new(mult: Vec<Vec<usize>>) -> Result<Self, SchemeError> {
        check_rectangular(&mult)?;
        let scheme = GridScheme { mult, coords: None };
        scheme.validate()?;
        Ok(scheme)
    }

    pub fn with_coords(
        mult: Vec<Vec<usize>>,
        rows: Vec<ProjPoint>,
        cols: Vec<ProjPoint>,
    ) -> Result<Self, SchemeError> {
        check_rectangular(&mult)?;
        let scheme = GridScheme {
            mult,
            coords: Some(Coordinates { rows, cols }),
        };
        scheme.validate()?;
        Ok(scheme)
    }

    /// Deletes all-zero rows and columns.
    pub fn normalize(mult: &[Vec<usize>]) -> Result<Self, SchemeError> {
        check_rectangular(mult)?;
        let keep_cols: Vec<usize> = (0..mult[0].len())
            .filter(|&j| mult.iter().any(|row| row[j] > 0))
            .collect();
        let grid: Vec<Vec<usize>> = mult
            .iter()
            .filter(|row| row.iter().any(|&m| m > 0))
            .map(|row| keep_cols.iter().map(|&j| row[j]).collect())
            .collect();
        if grid.is_empty() {
            return Err(SchemeError::EmptyScheme);
        }
        Ok(GridScheme {
            mult: grid,
            coords: None,
        })
    }

    pub fn validate(&self) -> Result<(), SchemeError> {
        if self.mult.is_empty() || self.mult[0].is_empty() {
            return Err(SchemeError::EmptyScheme);
        }
        if let Some(i) = self.mult.iter().position(|row| row.iter().all(|&m| m == 0)) {
            return Err(SchemeError::ZeroRowOrColumn { axis: "row", index: i + 1 });
        }
        if let Some(j) = (0..self.cols()).find(|&j| self.mult.iter().all(|row| row[j] == 0)) {
            return Err(SchemeError::ZeroRowOrColumn { axis: "column", index: j + 1 });
        }
        if let Some(c) = &self.coords {
            check_points("row", &c.rows, self.rows())?;
            check_points("column", &c.cols, self.cols())?;
        }
        Ok(())
    }

    pub fn rows(&self) -> usize {
        self.mult.len()
    }

    pub fn cols(&self) -> usize {
        self.mult[0].len()
    }

    /// Multiplicity of `P_{ij}`, 0-based indices.
    pub fn get(&self, i: usize, j: usize) -> usize {
        self.mult[i][j]
    }

    pub fn grid(&self) -> &[Vec<usize>] {
        &self.mult
    }

    pub fn coords(&self) -> Option<&Coordinates> {
        self.coords.as_ref()
    }

    pub fn max_mult(&self) -> usize {
        self.points().map(|(_, _, m)| m).max().unwrap_or(0)
    }

    /// Iterates `(i, j, m_ij)` over the support, 0-based.
    pub fn points(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        self.mult.iter().enumerate().flat_map(|(i, row)| {
            row.iter()
                .enumerate()
                .filter(|(_, &m)| m > 0)
                .map(move |(j, &m)| (i, j, m))
        })
    }

    /// Replaces coordinates, validating them against the grid.
    pub fn attach_coords(&self, coords: Coordinates) -> Result<Self, SchemeError> {
        let scheme = GridScheme {
            mult: self.mult.clone(),
            coords: Some(coords),
        };
        scheme.validate()?;
        Ok(scheme)
    }

    pub fn without_coords(&self) -> Self {
        GridScheme {
            mult: self.mult.clone(),
            coords: None,
        }
    }

    /// The reduced scheme on the same points.
    pub fn support(&self) -> Self {
        GridScheme {
            mult: self
                .mult
                .iter()
                .map(|row| row.iter().map(|&m| usize::from(m > 0)).collect())
                .collect(),
            coords: self.coords.clone(),
        }
    }

    /// `Σ C(m_ij + 1, 2)` over the support.
    pub fn degree(&self) -> usize {
        self.points().map(|(_, _, m)| m * (m + 1) / 2).sum()
    }

    /// The subscheme on row `i` (1-based), normalized.
    pub fn row_subscheme(&self, i: usize) -> Result<Self, SchemeError> {
        if i == 0 || i > self.rows() {
            return Err(SchemeError::IndexOutOfRange {
                index: i,
                len: self.rows(),
            });
        }
        let row = &self.mult[i - 1];
        let keep: Vec<usize> = (0..self.cols()).filter(|&j| row[j] > 0).collect();
        let coords = self.coords.as_ref().map(|c| Coordinates {
            rows: vec![c.rows[i - 1]],
            cols: keep.iter().map(|&j| c.cols[j]).collect(),
        });
        Ok(GridScheme {
            mult: vec![keep.iter().map(|&j| row[j]).collect()],
            coords,
        })
    }

    /// The subscheme on column `j` (1-based), normalized.
    pub fn col_subscheme(&self, j: usize) -> Result<Self, SchemeError> {
        if j == 0 || j > self.cols() {
            return Err(SchemeError::IndexOutOfRange {
                index: j,
                len: self.cols(),
            });
        }
        let keep: Vec<usize> = (0..self.rows()).filter(|&i| self.mult[i][j - 1] > 0).collect();
        let coords = self.coords.as_ref().map(|c| Coordinates {
            rows: keep.iter().map(|&i| c.rows[i]).collect(),
            cols: vec![c.cols[j - 1]],
        });
        Ok(GridScheme {
            mult: keep.iter().map(|&i| vec![self.mult[i][j - 1]]).collect(),
            coords,
        })
    }

    /// Swaps the two factors of P¹×P¹.
    pub fn transpose(&self) -> Self {
        let mult = (0..self.cols())
            .map(|j| self.mult.iter().map(|row| row[j]).collect())
            .collect();
        GridScheme {
            mult,
            coords: self.coords.as_ref().map(|c| Coordinates {
                rows: c.cols.clone(),
                cols: c.rows.clone(),
            }),
        }
    }

    pub fn is_collinear(&self) -> bool {
        self.rows() == 1 || self.cols() == 1
    }

    pub fn to_file(&self) -> SchemeFile {
        SchemeFile {
            mult: self.mult.clone(),
            row_coords: self.coords.as_ref().map(|c| c.rows.clone()),
            col_coords: self.coords.as_ref().map(|c| c.cols.clone()),
            labels: None,
        }
    }
}

impl fmt::Display for GridScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.mult.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "[")?;
            for (j, m) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{m}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

fn check_rectangular(mult: &[Vec<usize>]) -> Result<(), SchemeError> {
    let Some(first) = mult.first() else {
        return Err(SchemeError::EmptyScheme);
    };
    if first.is_empty() {
        return Err(SchemeError::EmptyScheme);
    }
    for (row, r) in mult.iter().enumerate() {
        if r.len() != first.len() {
            return Err(SchemeError::Ragged {
                row: row + 1,
                expected: first.len(),
                found: r.len(),
            });
        }
    }
    Ok(())
}

fn check_points(side: &'static str, points: &[ProjPoint], expected: usize) -> Result<(), SchemeError> {
    if points.len() != expected {
        return Err(SchemeError::CoordinateArityMismatch {
            side,
            expected,
            found: points.len(),
        });
    }
    if points.iter().any(ProjPoint::is_zero) {
        return Err(SchemeError::ZeroCoordinate);
    }
    for (k, p) in points.iter().enumerate() {
        if let Some(q) = points[k + 1..].iter().find(|q| p.cross(q) == 0) {
            return Err(SchemeError::CoordinateCollision(*p, *q));
        }
    }
    Ok(())
}

/// Labels carried through from scheme files; not interpreted.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Labels {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rows: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cols: Option<Vec<String>>,
}

/// On-disk JSON form of a scheme.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SchemeFile {
    pub mult: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub row_coords: Option<Vec<ProjPoint>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub col_coords: Option<Vec<ProjPoint>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Labels>,
}

impl SchemeFile {
    pub fn parse(text: &str) -> Result<Self, SchemeError> {
        serde_json::from_str(text).map_err(|e| SchemeError::Parse(e.to_string()))
    }

    /// Validates the file contents into a scheme. Coordinates must be given
    /// for both sides or neither.
    pub fn into_scheme(self) -> Result<GridScheme, SchemeError> {
        match (self.row_coords, self.col_coords) {
            (None, None) => GridScheme::new(self.mult),
            (Some(rows), Some(cols)) => GridScheme::with_coords(self.mult, rows, cols),
            (Some(_), None) => Err(SchemeError::Parse("row_coords given without col_coords".into())),
            (None, Some(_)) => Err(SchemeError::Parse("col_coords given without row_coords".into())),
        }
    }
}

pub fn parse_scheme(text: &str) -> Result<GridScheme, SchemeError> {
    SchemeFile::parse(text)?.into_scheme()
}
