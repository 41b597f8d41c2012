use crate::error::{Error, Result};
use crate::gf2::BitMatrix;

/// Largest error support searched exhaustively.
pub const DISTANCE_LIMIT: usize = 24;

/// XOR basis keyed by leading bit.
struct Span {
    basis: [u64; 64],
}

impl Span {
    fn new(rows: &[u64]) -> Self {
        let mut s = Span { basis: [0; 64] };
        for &r in rows {
            s.insert(r);
        }
        s
    }

    fn reduce(&self, mut v: u64) -> u64 {
        while v != 0 {
            let top = 63 - v.leading_zeros() as usize;
            if self.basis[top] == 0 {
                return v;
            }
            v ^= self.basis[top];
        }
        0
    }

    fn insert(&mut self, v: u64) {
        let v = self.reduce(v);
        if v != 0 {
            self.basis[63 - v.leading_zeros() as usize] = v;
        }
    }

    fn contains(&self, v: u64) -> bool {
        self.reduce(v) == 0
    }
}

fn row_masks(m: &BitMatrix) -> Vec<u64> {
    (0..m.rows())
        .map(|r| m.row_support(r).iter().fold(0u64, |acc, &c| acc | (1 << c)))
        .collect()
}

/// Smallest nonzero Hamming weight `w` such that some weight-`w` vector
/// supported on `support` is a logical operator: X-type (commutes with every
/// row of `hz`, not in the span of `hx`) or Z-type (the mirror image).
///
/// Weights are enumerated in increasing order, so the first hit is the answer.
/// Returns `None` when no such vector exists.
pub fn min_distance(hx: &BitMatrix, hz: &BitMatrix, support: &[usize]) -> Result<Option<usize>> {
    let n = hx.cols();
    if support.len() > DISTANCE_LIMIT {
        return Err(Error::TooLarge {
            n: support.len(),
            limit: DISTANCE_LIMIT,
        });
    }
    if n > 64 || hz.cols() != n {
        return Err(Error::TooLarge { n, limit: 64 });
    }
    let (xr, zr) = (row_masks(hx), row_masks(hz));
    let (xspan, zspan) = (Span::new(&xr), Span::new(&zr));
    let bits: Vec<u64> = support.iter().map(|&c| 1u64 << c).collect();
    let s = bits.len();

    let is_logical = |v: u64| {
        let x_type = zr.iter().all(|&r| (r & v).count_ones().is_multiple_of(2)) && !xspan.contains(v);
        x_type || (xr.iter().all(|&r| (r & v).count_ones().is_multiple_of(2)) && !zspan.contains(v))
    };

    for w in 1..=s {
        // Gosper's hack over subsets of `support` of size w.
        let mut sub: u64 = (1u64 << w) - 1;
        let end = 1u64 << s;
        while sub < end {
            let mut v = 0u64;
            let mut rest = sub;
            while rest != 0 {
                v |= bits[rest.trailing_zeros() as usize];
                rest &= rest - 1;
            }
            if is_logical(v) {
                return Ok(Some(w));
            }
            let c = sub & sub.wrapping_neg();
            let r = sub + c;
            sub = (((r ^ sub) >> 2) / c) | r;
        }
    }
    Ok(None)
}
