//! Matrix permanents and the row/column repetition submatrix.
//!
//! The permanent is evaluated with Ryser's inclusion-exclusion formula,
//!
//! ```text
//! per(A) = (-1)^n  sum_{T subset of columns} (-1)^|T|  prod_i sum_{j in T} A[i, j]
//! ```
//!
//! walking the subsets in Gray-code order so that each step updates the
//! vector of row sums by a single column: `O(2^n n)` arithmetic overall.
//!
//! The Gray-code walk is cut into fixed-size chunks that are evaluated
//! independently (in parallel for large `n`) and reduced in chunk order with
//! compensated summation, so the result does not depend on the thread count.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fock::Occupation;
use crate::matrix::{ComplexMatrix, C64};

/// Largest permanent evaluated unless the caller raises the cap.
pub const DEFAULT_MAX_PERMANENT_SIZE: usize = 24;
/// Subsets are indexed by `u64`, so no cap can go beyond this.
pub const HARD_MAX_PERMANENT_SIZE: usize = 63;

// Number of Gray-code steps per chunk. Fixed so the reduction tree is the
// same for every thread count.
const CHUNK_LOG2: u32 = 14;

/// Permanent of a square matrix, capped at [`DEFAULT_MAX_PERMANENT_SIZE`].
pub fn permanent(a: &ComplexMatrix) -> Result<C64> {
    permanent_with_limit(a, DEFAULT_MAX_PERMANENT_SIZE)
}

/// Permanent of a square matrix of size at most `max_size`.
pub fn permanent_with_limit(a: &ComplexMatrix, max_size: usize) -> Result<C64> {
    if !a.is_square() {
        return Err(Error::Shape(format!(
            "permanent needs a square matrix, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    let n = a.rows();
    let max_size = max_size.min(HARD_MAX_PERMANENT_SIZE);
    if n > max_size {
        return Err(Error::size("permanent size", n as u128, max_size as u128));
    }
    // row-major copy for cache-friendly column updates
    let cols: Vec<Vec<C64>> = (0..n).map(|j| (0..n).map(|i| a.get(i, j)).collect()).collect();
    Ok(ryser(&cols))
}

/// Permanent of the `n x n` matrix stored column-wise in `cols`.
/// `n = 0` gives 1.
pub(crate) fn ryser(cols: &[Vec<C64>]) -> C64 {
    let n = cols.len();
    match n {
        0 => return C64::new(1.0, 0.0),
        1 => return cols[0][0],
        2 => return cols[0][0] * cols[1][1] + cols[1][0] * cols[0][1],
        _ => {}
    }
    let steps: u64 = 1u64 << n; // k in 1..steps
    let chunk: u64 = 1u64 << CHUNK_LOG2.min(n as u32);
    let chunks = steps / chunk;
    let eval = |c: u64| ryser_chunk(cols, c * chunk, (c + 1) * chunk);
    let partials: Vec<C64> = if n >= 16 {
        (0..chunks).into_par_iter().map(eval).collect()
    } else {
        (0..chunks).map(eval).collect()
    };
    let mut total = Kahan::default();
    for p in partials {
        total.add(p);
    }
    let sum = total.value();
    if n % 2 == 1 {
        -sum
    } else {
        sum
    }
}

// Signed contributions for Gray-code steps k in [start, end), skipping the
// empty subset at k = 0.
fn ryser_chunk(cols: &[Vec<C64>], start: u64, end: u64) -> C64 {
    let n = cols.len();
    let first = start.max(1);
    let mut gray = (first - 1) ^ ((first - 1) >> 1);
    let mut row_sums = vec![C64::new(0.0, 0.0); n];
    for (j, col) in cols.iter().enumerate() {
        if gray >> j & 1 == 1 {
            for (r, &x) in row_sums.iter_mut().zip(col) {
                *r += x;
            }
        }
    }
    let mut acc = Kahan::default();
    for k in first..end {
        let j = k.trailing_zeros() as usize;
        gray ^= 1 << j;
        if gray >> j & 1 == 1 {
            for (r, &x) in row_sums.iter_mut().zip(&cols[j]) {
                *r += x;
            }
        } else {
            for (r, &x) in row_sums.iter_mut().zip(&cols[j]) {
                *r -= x;
            }
        }
        let prod = row_sums.iter().fold(C64::new(1.0, 0.0), |p, &r| p * r);
        if gray.count_ones() % 2 == 1 {
            acc.add(-prod);
        } else {
            acc.add(prod);
        }
    }
    acc.value()
}

/// Kahan-compensated complex accumulator.
#[derive(Default, Clone, Copy)]
pub(crate) struct Kahan {
    sum: C64,
    comp: C64,
}

impl Kahan {
    pub(crate) fn add(&mut self, x: C64) {
        self.sum.re = kahan_step(self.sum.re, &mut self.comp.re, x.re);
        self.sum.im = kahan_step(self.sum.im, &mut self.comp.im, x.im);
    }

    pub(crate) fn value(&self) -> C64 {
        self.sum
    }
}

fn kahan_step(sum: f64, comp: &mut f64, x: f64) -> f64 {
    let y = x - *comp;
    let t = sum + y;
    *comp = (t - sum) - y;
    t
}

/// The `n x n` matrix `U_{S',S}`: row `i` of `u` repeated `s_out[i]` times,
/// then column `j` repeated `s_in[j]` times, both in ascending mode order.
pub fn submatrix(u: &ComplexMatrix, s_out: &Occupation, s_in: &Occupation) -> Result<ComplexMatrix> {
    let m = u.rows();
    if !u.is_square() {
        return Err(Error::Shape(format!("expected a square matrix, got {}x{}", m, u.cols())));
    }
    if s_out.modes() != m || s_in.modes() != m {
        return Err(Error::input(format!(
            "occupations over {} and {} modes do not match a {m}-mode interferometer",
            s_out.modes(),
            s_in.modes()
        )));
    }
    if s_out.bosons() != s_in.bosons() {
        return Err(Error::input(format!(
            "output holds {} bosons but input holds {}",
            s_out.bosons(),
            s_in.bosons()
        )));
    }
    let n = s_in.bosons();
    if n == 0 {
        return Ok(ComplexMatrix::from_dmatrix_unchecked(nalgebra::DMatrix::zeros(0, 0)));
    }
    let rows = s_out.canonical_word();
    let cols = s_in.canonical_word();
    let entries = rows
        .letters()
        .iter()
        .flat_map(|&i| cols.letters().iter().map(move |&j| u.get(i, j)))
        .collect();
    ComplexMatrix::from_row_major(n, n, entries)
}

// Column-major copy of `U_{S',S}` for the Ryser kernel, skipping the
// ComplexMatrix round trip on the hot path.
pub(crate) fn submatrix_columns(u: &ComplexMatrix, out_word: &[usize], in_word: &[usize]) -> Vec<Vec<C64>> {
    in_word
        .iter()
        .map(|&j| out_word.iter().map(|&i| u.get(i, j)).collect())
        .collect()
}

/// Entrywise `|A_ij|^2` (stored with zero imaginary part).
pub fn abs_squared(a: &ComplexMatrix) -> ComplexMatrix {
    ComplexMatrix::from_dmatrix_unchecked(a.as_dmatrix().map(|z| C64::new(z.norm_sqr(), 0.0)))
}
