//! Fraction-free (Bareiss) row reduction over the integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

/// Rank over `Q` of an integer matrix given as rows. Destroys the input.
///
/// Every division is exact: after each step the working entries are minors
/// of the original matrix.
pub fn rank(rows: &mut [Vec<BigInt>]) -> usize {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut rank = 0;
    for col in 0..ncols {
        if rank == nrows {
            break;
        }
        let Some(pivot) = (rank..nrows).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(pivot, rank);
        let (head, tail) = rows.split_at_mut(rank + 1);
        let pivot_row = &head[rank];
        let lead = &pivot_row[col];
        for row in tail.iter_mut() {
            let factor = std::mem::take(&mut row[col]);
            for c in col + 1..ncols {
                let v = lead * &row[c] - &factor * &pivot_row[c];
                let (q, r) = v.div_rem(&prev);
                debug_assert!(r.is_zero(), "inexact Bareiss division");
                row[c] = q;
            }
        }
        prev = lead.clone();
        rank += 1;
    }
    rank
}
