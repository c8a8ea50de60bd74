//! Integer partitions, skew shapes, the composition encoding of
//! overlap-`h` shapes, exhaustive tableau generation, and the determinant
//! formula for tableau counts.
//!
//! Tableaux here are *decreasing*: values fall strictly left to right
//! along rows and top to bottom along columns. The complement map
//! `v -> N + 1 - v` turns them into the classical increasing kind, so all
//! counts are convention-independent; the generator is tested against
//! that symmetry.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{det_exact, expect_integer, BigInt, ExactMatrix, Factorials, Rational};

use num_traits::{Signed, Zero};

/// Exhaustive tableau generation is factorial-time in the cell count;
/// shapes above this many cells are rejected unless the caller raises the
/// limit explicitly.
pub const DEFAULT_CELL_LIMIT: usize = 14;

/// Weakly decreasing sequence of positive parts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerPartition {
    parts: Vec<usize>,
}

impl IntegerPartition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        let decreasing = parts.windows(2).all(|p| p[0] >= p[1]);
        let positive = parts.iter().all(|&p| p >= 1);
        if !decreasing || !positive {
            return Err(Error::NotAPartition);
        }
        Ok(IntegerPartition { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }
}

/// A skew shape: outer partition with an inner partition removed from the
/// top left. The inner sequence is stored zero-padded to the number of
/// rows, which keeps the determinant indexing free of bounds cases.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkewShape {
    outer: Vec<usize>,
    inner: Vec<usize>,
}

impl SkewShape {
    pub fn new(outer: IntegerPartition, inner: &[usize]) -> Result<Self> {
        Self::from_parts(outer.parts(), inner)
    }

    /// Validates `inner[i] <= outer[i]`, weak monotonicity of both
    /// sequences, and at least one cell.
    pub fn from_parts(outer: &[usize], inner: &[usize]) -> Result<Self> {
        let outer_ok =
            !outer.is_empty() && outer.windows(2).all(|p| p[0] >= p[1]) && outer.iter().all(|&p| p >= 1);
        if !outer_ok {
            return Err(Error::NotAPartition);
        }
        if inner.len() > outer.len() {
            return Err(Error::InnerNotContained);
        }
        let mut padded = inner.to_vec();
        padded.resize(outer.len(), 0);
        if !padded.windows(2).all(|p| p[0] >= p[1]) {
            return Err(Error::NotAPartition);
        }
        if padded.iter().zip(outer).any(|(&m, &l)| m > l) {
            return Err(Error::InnerNotContained);
        }
        let shape = SkewShape {
            outer: outer.to_vec(),
            inner: padded,
        };
        if shape.cells() == 0 {
            return Err(Error::EmptyShape);
        }
        Ok(shape)
    }

    pub fn outer(&self) -> &[usize] {
        &self.outer
    }

    /// Inner parts, zero-padded to `rows()` entries.
    pub fn inner(&self) -> &[usize] {
        &self.inner
    }

    pub fn rows(&self) -> usize {
        self.outer.len()
    }

    pub fn cells(&self) -> usize {
        self.outer
            .iter()
            .zip(&self.inner)
            .map(|(&l, &m)| l - m)
            .sum()
    }

    /// Length of row `i` (0-based from the top).
    pub fn row_len(&self, i: usize) -> usize {
        self.outer[i] - self.inner[i]
    }

    /// Number of columns shared by rows `i` and `i + 1`; negative when the
    /// rows do not even touch.
    pub fn overlap(&self, i: usize) -> i64 {
        self.outer[i + 1] as i64 - self.inner[i] as i64
    }

    /// True if every pair of consecutive rows shares at least one column.
    pub fn is_connected(&self) -> bool {
        (0..self.rows().saturating_sub(1)).all(|i| self.overlap(i) >= 1)
    }

    /// The row-gap sequence `a_i = outer_i - inner_i`, defined when every
    /// pair of consecutive rows shares exactly `h` columns and the bottom
    /// row starts at the first column.
    pub fn composition(&self, h: usize) -> Result<Composition> {
        let k = self.rows();
        for i in 0..k - 1 {
            if self.overlap(i) != h as i64 {
                return Err(Error::OverlapMismatch {
                    row: i + 1,
                    next: i + 2,
                    expected: h,
                    found: self.overlap(i).max(0) as usize,
                });
            }
        }
        if self.inner[k - 1] != 0 {
            return Err(Error::OverlapMismatch {
                row: k,
                next: k,
                expected: h,
                found: self.inner[k - 1],
            });
        }
        Composition::new((0..k).map(|i| self.row_len(i)).collect())
    }
}

impl std::fmt::Display for SkewShape {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let join = |parts: &[usize]| {
            parts
                .iter()
                .map(|p| p.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        write!(f, "λ=[{}] mu=[{}]", join(&self.outer), join(&self.inner))
    }
}

/// Row-gap sequence `(a_1, ..., a_k)`, top row first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Composition {
    parts: Vec<usize>,
}

impl Composition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::EmptyComposition);
        }
        if let Some(index) = parts.iter().position(|&p| p == 0) {
            return Err(Error::PartTooSmall {
                index: index + 1,
                part: 0,
                min: 1,
                h: 0,
            });
        }
        Ok(Composition { parts })
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

    pub fn sum(&self) -> usize {
        self.parts.iter().sum()
    }

    /// The skew shape whose rows have these lengths and whose consecutive
    /// rows share exactly `h` columns.
    ///
    /// With `k` rows and 1-based indices: `outer_k = a_k`,
    /// `outer_i = a_i + outer_{i+1} - h`, `inner_i = outer_{i+1} - h`,
    /// `inner_k = 0`. For `k >= 2` every part must be at least
    /// `max(h, 1)` or the partition inequalities break; a single row has
    /// no neighbouring row, so any positive length is accepted there.
    pub fn shape(&self, h: usize) -> Result<SkewShape> {
        let k = self.parts.len();
        let min = if k == 1 { 1 } else { h.max(1) };
        for (idx, &a) in self.parts.iter().enumerate() {
            if a < min {
                return Err(Error::PartTooSmall {
                    index: idx + 1,
                    part: a,
                    min,
                    h,
                });
            }
        }
        let mut outer = vec![0usize; k];
        let mut inner = vec![0usize; k];
        outer[k - 1] = self.parts[k - 1];
        for i in (0..k - 1).rev() {
            outer[i] = self.parts[i] + outer[i + 1] - h;
            inner[i] = outer[i + 1] - h;
        }
        SkewShape::from_parts(&outer, &inner)
    }
}

impl std::fmt::Display for Composition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let body = self
            .parts
            .iter()
            .map(|p| p.to_string())
            .collect::<Vec<_>>()
            .join(",");
        write!(f, "({body})")
    }
}

/// All compositions of `total` into `parts` parts, each at least
/// `min_part`, in lexicographic order.
pub fn compositions(
    total: usize,
    parts: usize,
    min_part: usize,
) -> impl Iterator<Item = Composition> {
    CompositionIter::new(total, parts, min_part)
}

struct CompositionIter {
    total: usize,
    min_part: usize,
    current: Option<Vec<usize>>,
}

impl CompositionIter {
    fn new(total: usize, parts: usize, min_part: usize) -> Self {
        let min_part = min_part.max(1);
        let current = if parts >= 1 && total >= parts * min_part {
            let mut first = vec![min_part; parts];
            first[parts - 1] = total - min_part * (parts - 1);
            Some(first)
        } else {
            None
        };
        CompositionIter {
            total,
            min_part,
            current,
        }
    }
}

impl Iterator for CompositionIter {
    type Item = Composition;

    fn next(&mut self) -> Option<Composition> {
        let current = self.current.take()?;
        let k = current.len();
        // Advance: bump the rightmost bumpable position, reset everything
        // to its right to the minimum, and let the last part absorb the rest.
        let mut next = current.clone();
        let mut advanced = false;
        for j in (0..k.saturating_sub(1)).rev() {
            let prefix: usize = next[..=j].iter().sum::<usize>() + 1;
            let tail_min = self.min_part * (k - 1 - j);
            if prefix + tail_min <= self.total {
                next[j] += 1;
                for item in next.iter_mut().take(k - 1).skip(j + 1) {
                    *item = self.min_part;
                }
                let used: usize = next[..k - 1].iter().sum();
                next[k - 1] = self.total - used;
                advanced = true;
                break;
            }
        }
        self.current = advanced.then_some(next);
        Some(Composition { parts: current })
    }
}

/// A filling of a skew shape. Construction only checks dimensions;
/// use [`SkewTableau::is_valid`] for the decreasing-tableau property.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkewTableau {
    shape: SkewShape,
    rows: Vec<Vec<usize>>,
}

impl SkewTableau {
    pub fn new(shape: SkewShape, rows: Vec<Vec<usize>>) -> Result<Self> {
        if rows.len() != shape.rows() {
            return Err(Error::InvalidTableau);
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != shape.row_len(i) {
                return Err(Error::InvalidTableau);
            }
        }
        Ok(SkewTableau { shape, rows })
    }

    pub fn shape(&self) -> &SkewShape {
        &self.shape
    }

    /// Row values top to bottom, each row left to right.
    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn cells(&self) -> usize {
        self.shape.cells()
    }

    /// Value at row `i`, absolute column `col` (both 0-based), if that
    /// cell belongs to the shape.
    pub fn value_at(&self, i: usize, col: usize) -> Option<usize> {
        if i >= self.shape.rows() {
            return None;
        }
        let start = self.shape.inner()[i];
        let end = self.shape.outer()[i];
        (start..end).contains(&col).then(|| self.rows[i][col - start])
    }

    /// Bijective filling with 1..=N, strictly decreasing along rows and
    /// columns.
    pub fn is_valid(&self) -> bool {
        let n = self.cells();
        let mut seen = vec![false; n];
        for row in &self.rows {
            for &v in row {
                if v == 0 || v > n || seen[v - 1] {
                    return false;
                }
                seen[v - 1] = true;
            }
            if !row.windows(2).all(|p| p[0] > p[1]) {
                return false;
            }
        }
        for i in 0..self.shape.rows().saturating_sub(1) {
            let lo = self.shape.inner()[i].max(self.shape.inner()[i + 1]);
            let hi = self.shape.outer()[i].min(self.shape.outer()[i + 1]);
            for col in lo..hi {
                let above = self.value_at(i, col).unwrap();
                let below = self.value_at(i + 1, col).unwrap();
                if above <= below {
                    return false;
                }
            }
        }
        true
    }

    /// The complemented filling `v -> N + 1 - v`, which is increasing
    /// along rows and columns exactly when `self` is valid.
    pub fn complement(&self) -> SkewTableau {
        let n = self.cells();
        SkewTableau {
            shape: self.shape.clone(),
            rows: self
                .rows
                .iter()
                .map(|row| row.iter().map(|&v| n + 1 - v).collect())
                .collect(),
        }
    }
}

impl std::fmt::Display for SkewTableau {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for (i, row) in self.rows.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            for _ in 0..self.shape.inner()[i] {
                write!(f, "   .")?;
            }
            for v in row {
                write!(f, "{v:4}")?;
            }
        }
        Ok(())
    }
}

/// The determinant matrix for the tableau count of a skew shape: entry
/// `(i, j)` is `1/(outer_i - inner_j - i + j)!`, or zero when that
/// argument is negative.
pub fn aitken_matrix(shape: &SkewShape) -> ExactMatrix {
    let mut factorials = Factorials::new();
    let outer = shape.outer();
    let inner = shape.inner();
    ExactMatrix::from_fn(shape.rows(), |i, j| {
        let argument = outer[i] as i64 - inner[j] as i64 - i as i64 + j as i64;
        if argument < 0 {
            Rational::zero()
        } else {
            factorials.inverse(argument as usize)
        }
    })
}

/// Number of decreasing tableaux on the shape: `N! * det`.
///
/// The product is checked to be a nonnegative integer; anything else
/// signals a bug in the matrix construction, so it panics.
pub fn aitken_count(shape: &SkewShape) -> BigInt {
    let determinant = det_exact(&aitken_matrix(shape));
    let scaled = Rational::from(Factorials::new().get(shape.cells())) * determinant;
    let count = expect_integer(&scaled, "tableau count");
    assert!(
        !count.is_negative(),
        "tableau count of {shape} came out negative"
    );
    count
}

/// Every decreasing tableau on the shape, exactly once.
pub fn generate_tableaux(shape: &SkewShape) -> Result<Vec<SkewTableau>> {
    generate_tableaux_with_limit(shape, DEFAULT_CELL_LIMIT)
}

pub fn generate_tableaux_with_limit(
    shape: &SkewShape,
    cell_limit: usize,
) -> Result<Vec<SkewTableau>> {
    let mut out = Vec::new();
    for_each_filling(shape, cell_limit, |rows| {
        out.push(SkewTableau {
            shape: shape.clone(),
            rows: rows.to_vec(),
        });
    })?;
    Ok(out)
}

/// Number of decreasing tableaux by exhaustive generation, without
/// materializing them.
pub fn count_tableaux(shape: &SkewShape, cell_limit: usize) -> Result<u64> {
    let mut count = 0u64;
    for_each_filling(shape, cell_limit, |_| count += 1)?;
    Ok(count)
}

/// Backtracking core: places values `N, N-1, ..., 1`. Values decrease
/// along rows and columns, so each row fills left to right and a cell is
/// placeable once the cell above it (if any) is filled.
fn for_each_filling(
    shape: &SkewShape,
    cell_limit: usize,
    mut visit: impl FnMut(&[Vec<usize>]),
) -> Result<()> {
    let n = shape.cells();
    if n > cell_limit {
        return Err(Error::CellLimit {
            cells: n,
            limit: cell_limit,
        });
    }
    let k = shape.rows();
    let mut rows: Vec<Vec<usize>> = (0..k)
        .map(|i| Vec::with_capacity(shape.row_len(i)))
        .collect();
    place(shape, &mut rows, n, &mut visit);
    Ok(())
}

fn place(
    shape: &SkewShape,
    rows: &mut Vec<Vec<usize>>,
    value: usize,
    visit: &mut impl FnMut(&[Vec<usize>]),
) {
    if value == 0 {
        visit(rows);
        return;
    }
    for i in 0..shape.rows() {
        if rows[i].len() == shape.row_len(i) {
            continue;
        }
        let col = shape.inner()[i] + rows[i].len();
        if i > 0 {
            let above_start = shape.inner()[i - 1];
            let above_end = shape.outer()[i - 1];
            let above_exists = (above_start..above_end).contains(&col);
            let above_filled = above_exists && col - above_start < rows[i - 1].len();
            if above_exists && !above_filled {
                continue;
            }
        }
        rows[i].push(value);
        place(shape, rows, value - 1, visit);
        rows[i].pop();
    }
}
