//! Arithmetic and row reduction over `F_p` for word-sized primes.

use super::OracleError;

/// A prime `p < 2^32`, checked at construction. Products of two residues
/// fit in a `u64`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Prime(u64);

impl Prime {
    /// `2^31 − 1`.
    pub const MERSENNE31: Prime = Prime(2_147_483_647);

    pub fn new(p: u64) -> Result<Self, OracleError> {
        if p > u32::MAX as u64 {
            return Err(OracleError::BadPrime(format!("{p} does not fit in 32 bits")));
        }
        if !is_prime(p) {
            return Err(OracleError::BadPrime(format!("{p} is not prime")));
        }
        Ok(Prime(p))
    }

    pub fn get(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn reduce_i64(self, x: i64) -> u64 {
        x.rem_euclid(self.0 as i64) as u64
    }

    #[inline]
    pub fn mul(self, a: u64, b: u64) -> u64 {
        a * b % self.0
    }

    #[inline]
    pub fn add(self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.0 {
            s - self.0
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.0 - b
        }
    }

    pub fn pow(self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1 % self.0;
        base %= self.0;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Inverse of a nonzero residue.
    pub fn inv(self, a: u64) -> u64 {
        debug_assert!(!a.is_multiple_of(self.0));
        self.pow(a, self.0 - 2)
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Rank of a dense `nrows × ncols` row-major matrix of reduced residues.
/// Destroys the input.
pub fn rank(p: Prime, data: &mut [u64], nrows: usize, ncols: usize) -> usize {
    debug_assert_eq!(data.len(), nrows * ncols);
    let mut rank = 0;
    for col in 0..ncols {
        if rank == nrows {
            break;
        }
        let Some(pivot) = (rank..nrows).find(|&r| data[r * ncols + col] != 0) else {
            continue;
        };
        if pivot != rank {
            for c in col..ncols {
                data.swap(pivot * ncols + c, rank * ncols + c);
            }
        }
        let inv = p.inv(data[rank * ncols + col]);
        let (head, tail) = data.split_at_mut((rank + 1) * ncols);
        let pivot_row = &head[rank * ncols..];
        for row in tail.chunks_exact_mut(ncols) {
            let lead = row[col];
            if lead == 0 {
                continue;
            }
            let f = p.mul(lead, inv);
            row[col] = 0;
            for c in col + 1..ncols {
                let t = pivot_row[c];
                if t != 0 {
                    row[c] = p.sub(row[c], p.mul(f, t));
                }
            }
        }
        rank += 1;
    }
    rank
}
