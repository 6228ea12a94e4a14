//! Finite windows of a bigraded Hilbert function and its first difference.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::border::Border;
use crate::scheme::BiDegree;

/// Values `H(i, j)` for `0 ≤ i ≤ window.i`, `0 ≤ j ≤ window.j`.
///
/// `None` marks an entry that cannot be determined combinatorially.
/// When a border is attached, queries outside the window that fall outside
/// the border are answered from it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HilbertTable {
    pub values: Vec<Vec<Option<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub border: Option<Border>,
}

/// A violation of the monotonicity or stabilization properties.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShapeViolation {
    pub at: BiDegree,
    pub what: &'static str,
}

impl fmt::Display for ShapeViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at {}", self.what, self.at)
    }
}

impl HilbertTable {
    pub fn from_fn(window: BiDegree, border: Option<Border>, mut f: impl FnMut(usize, usize) -> Option<usize>) -> Self {
        let values = (0..=window.i)
            .map(|i| (0..=window.j).map(|j| f(i, j)).collect())
            .collect();
        HilbertTable { values, border }
    }

    pub fn window(&self) -> BiDegree {
        BiDegree::new(self.values.len() - 1, self.values[0].len() - 1)
    }

    /// The value at `(i, j)`: from the window when inside it, else from
    /// the border when `(i, j)` is outside the border.
    pub fn get(&self, i: usize, j: usize) -> Option<usize> {
        if let Some(v) = self.values.get(i).and_then(|row| row.get(j)) {
            return *v;
        }
        self.border.as_ref().and_then(|b| b.value_outside(i, j))
    }

    pub fn is_fully_known(&self) -> bool {
        self.values.iter().flatten().all(Option::is_some)
    }

    /// Known values, or `None` if any entry is unknown.
    pub fn known(&self) -> Option<Vec<Vec<usize>>> {
        self.values
            .iter()
            .map(|row| row.iter().copied().collect::<Option<Vec<_>>>())
            .collect()
    }

    pub fn transpose(&self) -> Self {
        let w = self.window();
        HilbertTable {
            values: (0..=w.j).map(|j| (0..=w.i).map(|i| self.values[i][j]).collect()).collect(),
            border: self.border.as_ref().map(Border::transpose),
        }
    }

    /// Checks monotonicity along rows and columns and that a repeated value
    /// at consecutive indices persists, over all pairs of known entries.
    pub fn check_shape(&self) -> Result<(), ShapeViolation> {
        let w = self.window();
        let at = |i: usize, j: usize| self.values[i][j];
        for i in 0..=w.i {
            for j in 0..=w.j {
                let Some(h) = at(i, j) else { continue };
                if i < w.i {
                    if let Some(down) = at(i + 1, j) {
                        if down < h {
                            return Err(ShapeViolation { at: BiDegree::new(i, j), what: "decrease down a column" });
                        }
                        if down == h && i + 2 <= w.i && at(i + 2, j).is_some_and(|v| v != h) {
                            return Err(ShapeViolation { at: BiDegree::new(i, j), what: "column did not stabilize" });
                        }
                    }
                }
                if j < w.j {
                    if let Some(right) = at(i, j + 1) {
                        if right < h {
                            return Err(ShapeViolation { at: BiDegree::new(i, j), what: "decrease along a row" });
                        }
                        if right == h && j + 2 <= w.j && at(i, j + 2).is_some_and(|v| v != h) {
                            return Err(ShapeViolation { at: BiDegree::new(i, j), what: "row did not stabilize" });
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for HilbertTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<Vec<String>> = self
            .values
            .iter()
            .map(|row| {
                row.iter()
                    .map(|v| v.map_or_else(|| "?".to_string(), |x| x.to_string()))
                    .collect()
            })
            .collect();
        let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
        for row in &cells {
            let line: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

/// Integer matrix with every entry outside it implicitly 0. Trailing zero
/// rows and columns are trimmed, so equality is semantic.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiffTable {
    rows: Vec<Vec<i64>>,
}

impl DiffTable {
    pub fn new(rows: Vec<Vec<i64>>) -> Self {
        let width = rows
            .iter()
            .filter_map(|r| r.iter().rposition(|&x| x != 0).map(|p| p + 1))
            .max()
            .unwrap_or(0);
        let height = rows.iter().rposition(|r| r.iter().any(|&x| x != 0)).map_or(0, |p| p + 1);
        let rows = rows
            .into_iter()
            .take(height)
            .map(|r| (0..width).map(|j| r.get(j).copied().unwrap_or(0)).collect())
            .collect();
        DiffTable { rows }
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.rows.get(i).and_then(|r| r.get(j)).copied().unwrap_or(0)
    }

    pub fn height(&self) -> usize {
        self.rows.len()
    }

    pub fn width(&self) -> usize {
        self.rows.first().map_or(0, Vec::len)
    }

    pub fn total(&self) -> i64 {
        self.rows.iter().flatten().sum()
    }

    /// `Σ_i d(i, j)` for each column `j`.
    pub fn column_sums(&self) -> Vec<i64> {
        (0..self.width()).map(|j| self.rows.iter().map(|r| r[j]).sum()).collect()
    }

    /// `Σ_j d(i, j)` for each row `i`.
    pub fn row_sums(&self) -> Vec<i64> {
        self.rows.iter().map(|r| r.iter().sum()).collect()
    }
}

impl fmt::Display for DiffTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.rows {
            let line: Vec<String> = row.iter().map(i64::to_string).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}
