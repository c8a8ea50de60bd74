//! The explicit bijection between permutations satisfying `DES_h` and
//! decreasing skew tableaux whose consecutive rows share exactly `h`
//! columns.
//!
//! Reading from the bottom, row `i` of the tableau is the `i`-th
//! descending run of the permutation. Column alignment is fixed bottom-up:
//! the bottom row starts at the first column and each row above starts so
//! that exactly `h` columns are shared with the row below. The inverse map
//! concatenates the rows bottom to top.

use crate::error::{Error, Result};
use crate::perm::{DesMethod, Permutation};
use crate::shape::{Composition, SkewTableau};

/// Maps a `DES_h` permutation to its tableau.
///
/// The `DES_h` property is checked rather than trusted, because the map is
/// only well defined on that domain. A permutation with a single
/// descending run maps to a one-row tableau for any `h`.
pub fn perm_to_tableau(p: &Permutation, h: usize) -> Result<SkewTableau> {
    if h < 1 {
        return Err(Error::OverlapTooSmall);
    }
    let d = p.descent_count();
    if !p.satisfies_des_h(d, h, DesMethod::Pattern)? {
        return Err(Error::NotDesH { h });
    }
    let runs = p.descending_runs();
    let k = runs.len();
    if k >= 2 {
        if let Some(index) = runs.iter().position(|r| r.len() < h) {
            return Err(Error::RunTooShort {
                index: index + 1,
                len: runs[index].len(),
                h,
            });
        }
    }

    // Row lengths top to bottom are the run lengths in reverse.
    let parts: Vec<usize> = runs.iter().rev().map(|r| r.len()).collect();
    let shape = Composition::new(parts)?.shape(h)?;
    let rows: Vec<Vec<usize>> = runs.into_iter().rev().collect();
    let tableau = SkewTableau::new(shape, rows)?;
    debug_assert!(tableau.is_valid(), "image of {p} is not a valid tableau");
    Ok(tableau)
}

/// Maps a tableau whose consecutive rows share exactly `h` columns back to
/// its permutation: rows concatenated bottom to top.
///
/// The result has `N - k` descents and satisfies `DES_h`.
pub fn tableau_to_perm(t: &SkewTableau, h: usize) -> Result<Permutation> {
    if h < 1 {
        return Err(Error::OverlapTooSmall);
    }
    let shape = t.shape();
    for i in 0..shape.rows() - 1 {
        if shape.overlap(i) != h as i64 {
            return Err(Error::OverlapMismatch {
                row: i + 1,
                next: i + 2,
                expected: h,
                found: shape.overlap(i).max(0) as usize,
            });
        }
    }
    if !t.is_valid() {
        return Err(Error::InvalidTableau);
    }
    let word: Vec<usize> = t.rows().iter().rev().flatten().copied().collect();
    Permutation::new(word)
}
