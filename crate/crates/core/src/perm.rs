//! Permutations and the brute-force side of every count: descents,
//! descending runs, pattern involvement, minimality, and the overlap-`h`
//! descent property (`DES_h`).
//!
//! Positions in the public API are 1-based, matching the usual convention
//! for descent statistics. A descent of `w` is a position `i` with
//! `w(i) > w(i+1)`.

use rayon::prelude::*;
use std::collections::BTreeSet;

use crate::error::{Error, Result};

/// Scans of `S_n` are factorial-time; anything above this length is
/// rejected unless the caller raises the limit explicitly.
pub const DEFAULT_ORACLE_LIMIT: usize = 10;

/// A permutation of `{1, ..., n}`, stored as its one-line word.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    word: Vec<usize>,
}

/// How to decide the `DES_h` property.
///
/// `Definition` deletes elements and counts descents; `Pattern` inspects
/// the window around each ascent. The two must agree everywhere, which is
/// one of the tested invariants of this crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DesMethod {
    Definition,
    Pattern,
}

impl Permutation {
    /// Validates that `word` is a bijection on `{1..=n}`.
    pub fn new(word: Vec<usize>) -> Result<Self> {
        let n = word.len();
        if n == 0 {
            return Err(Error::NotAPermutation { len: 0 });
        }
        let mut seen = vec![false; n];
        for &v in &word {
            if v == 0 || v > n || seen[v - 1] {
                return Err(Error::NotAPermutation { len: n });
            }
            seen[v - 1] = true;
        }
        Ok(Permutation { word })
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty() // never true by construction
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    /// 1-based positions `i` with `w(i) > w(i+1)`, in increasing order.
    pub fn descents(&self) -> Vec<usize> {
        (1..self.len())
            .filter(|&i| self.word[i - 1] > self.word[i])
            .collect()
    }

    pub fn descent_count(&self) -> usize {
        descent_count(&self.word)
    }

    /// 1-based positions `i` with `w(i) < w(i+1)`.
    pub fn ascents(&self) -> Vec<usize> {
        (1..self.len())
            .filter(|&i| self.word[i - 1] < self.word[i])
            .collect()
    }

    /// The maximal strictly decreasing factors, left to right.
    ///
    /// There are always `#ascents + 1` of them and their concatenation is
    /// the word itself.
    pub fn descending_runs(&self) -> Vec<Vec<usize>> {
        let mut runs = vec![vec![self.word[0]]];
        for pair in self.word.windows(2) {
            if pair[0] > pair[1] {
                runs.last_mut().unwrap().push(pair[1]);
            } else {
                runs.push(vec![pair[1]]);
            }
        }
        runs
    }

    /// The unique permutation of `{1..=|keep|}` order-isomorphic to the
    /// subsequence at the given 1-based positions (treated as a set).
    pub fn standardize(&self, keep: &[usize]) -> Result<Permutation> {
        if keep.is_empty() {
            return Err(Error::EmptySelection);
        }
        let positions: BTreeSet<usize> = keep.iter().copied().collect();
        for &p in &positions {
            if p == 0 || p > self.len() {
                return Err(Error::PositionOutOfBounds {
                    position: p,
                    len: self.len(),
                });
            }
        }
        let values: Vec<usize> = positions.iter().map(|&p| self.word[p - 1]).collect();
        Ok(Permutation {
            word: standardize_values(&values),
        })
    }

    /// Pattern involvement: true iff some subsequence of `self` is
    /// order-isomorphic to `pattern`. Naive backtracking search; fine at
    /// the lengths this crate works with.
    pub fn involves(&self, pattern: &Permutation) -> Result<bool> {
        if pattern.len() > self.len() {
            return Err(Error::PatternTooLong {
                pattern: pattern.len(),
                host: self.len(),
            });
        }
        let mut chosen = Vec::with_capacity(pattern.len());
        Ok(involvement_search(
            &self.word,
            &pattern.word,
            &mut chosen,
            0,
        ))
    }

    /// True iff the permutation has exactly `d` descents and every ascent
    /// `i` lies in `2..=n-2` with the window `w(i-1) w(i) w(i+1) w(i+2)`
    /// standardizing to `2143` or `3142`.
    ///
    /// Equivalently: the permutation has `d` descents and deleting any one
    /// entry leaves exactly `d - 1` of them.
    pub fn is_d_minimal(&self, d: usize) -> bool {
        if self.descent_count() != d {
            return false;
        }
        let n = self.len();
        self.ascents().into_iter().all(|i| {
            if i < 2 || i + 2 > n {
                return false;
            }
            let window = self
                .standardize(&[i - 1, i, i + 1, i + 2])
                .expect("window positions are in bounds");
            window.word() == [2, 1, 4, 3] || window.word() == [3, 1, 4, 2]
        })
    }

    /// The `DES_h` property: the permutation has exactly `d` descents and,
    /// for every `i <= h - 1`, deleting any `i` of its entries removes
    /// exactly `i` descents.
    ///
    /// Deletions that would empty the word are outside the domain of
    /// permutations and are not considered. `h = 1` imposes nothing beyond
    /// the descent count; `h = 2` is minimality.
    pub fn satisfies_des_h(&self, d: usize, h: usize, method: DesMethod) -> Result<bool> {
        if h < 1 {
            return Err(Error::OverlapTooSmall);
        }
        Ok(match method {
            DesMethod::Definition => des_h_by_definition(&self.word, d, h),
            DesMethod::Pattern => des_h_by_pattern(&self.word, d, h),
        })
    }

    /// All permutations of `{1..=n}` in lexicographic order.
    pub fn all(n: usize) -> impl Iterator<Item = Permutation> {
        let first = if n == 0 { None } else { Some((1..=n).collect()) };
        AllPermutations { next: first }
    }
}

impl std::fmt::Display for Permutation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut first = true;
        for v in &self.word {
            if !first {
                write!(f, " ")?;
            }
            write!(f, "{v}")?;
            first = false;
        }
        Ok(())
    }
}

struct AllPermutations {
    next: Option<Vec<usize>>,
}

impl Iterator for AllPermutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let current = self.next.take()?;
        let mut word = current.clone();
        self.next = next_lexicographic(&mut word).then_some(word);
        Some(Permutation { word: current })
    }
}

/// Advances `word` to its lexicographic successor; false when it was the
/// last one.
fn next_lexicographic(word: &mut [usize]) -> bool {
    let n = word.len();
    if n < 2 {
        return false;
    }
    let Some(i) = (0..n - 1).rev().find(|&i| word[i] < word[i + 1]) else {
        return false;
    };
    let j = (i + 1..n).rev().find(|&j| word[j] > word[i]).unwrap();
    word.swap(i, j);
    word[i + 1..].reverse();
    true
}

fn standardize_values(values: &[usize]) -> Vec<usize> {
    values
        .iter()
        .map(|&v| 1 + values.iter().filter(|&&u| u < v).count())
        .collect()
}

fn involvement_search(
    host: &[usize],
    pattern: &[usize],
    chosen: &mut Vec<usize>,
    start: usize,
) -> bool {
    let t = chosen.len();
    if t == pattern.len() {
        return true;
    }
    for pos in start..=host.len() - (pattern.len() - t) {
        let v = host[pos];
        let compatible = (0..t).all(|s| (pattern[s] < pattern[t]) == (chosen[s] < v));
        if compatible {
            chosen.push(v);
            if involvement_search(host, pattern, chosen, pos + 1) {
                return true;
            }
            chosen.pop();
        }
    }
    false
}

pub(crate) fn descent_count(word: &[usize]) -> usize {
    word.windows(2).filter(|p| p[0] > p[1]).count()
}

/// Descents of the word with masked positions removed; renaming is
/// irrelevant because descents only depend on relative order.
fn descent_count_after_deletion(word: &[usize], deleted: &[bool]) -> usize {
    let mut count = 0;
    let mut prev: Option<usize> = None;
    for (idx, &v) in word.iter().enumerate() {
        if deleted[idx] {
            continue;
        }
        if let Some(p) = prev {
            if p > v {
                count += 1;
            }
        }
        prev = Some(v);
    }
    count
}

/// True iff every deletion of `remaining` more positions (chosen from
/// `start..`) leaves a word with exactly `target` descents.
fn all_deletions_hit_target(
    word: &[usize],
    deleted: &mut [bool],
    start: usize,
    remaining: usize,
    target: usize,
) -> bool {
    if remaining == 0 {
        return descent_count_after_deletion(word, deleted) == target;
    }
    for pos in start..=word.len() - remaining {
        deleted[pos] = true;
        let ok = all_deletions_hit_target(word, deleted, pos + 1, remaining - 1, target);
        deleted[pos] = false;
        if !ok {
            return false;
        }
    }
    true
}

pub(crate) fn des_h_by_definition(word: &[usize], d: usize, h: usize) -> bool {
    let n = word.len();
    if descent_count(word) != d {
        return false;
    }
    let mut deleted = vec![false; n];
    for i in 1..h {
        if i + 1 > n {
            break; // deleting i elements would not leave a permutation
        }
        if d < i {
            return false;
        }
        if !all_deletions_hit_target(word, &mut deleted, 0, i, d - i) {
            return false;
        }
    }
    true
}

pub(crate) fn des_h_by_pattern(word: &[usize], d: usize, h: usize) -> bool {
    let n = word.len();
    if descent_count(word) != d {
        return false;
    }
    // Each ascent must be the middle of two adjacent strictly decreasing
    // windows of length h that compare componentwise.
    for j in 0..n - 1 {
        if word[j] >= word[j + 1] {
            continue;
        }
        if j + 1 < h || j + h > n - 1 {
            return false;
        }
        let left = &word[j + 1 - h..=j];
        let right = &word[j + 1..=j + h];
        let decreasing =
            |w: &[usize]| w.windows(2).all(|p| p[0] > p[1]);
        if !decreasing(left) || !decreasing(right) {
            return false;
        }
        if !left.iter().zip(right).all(|(a, b)| a < b) {
            return false;
        }
    }
    true
}

/// Number of permutations of length `n` whose descent count is exactly the
/// index, among those satisfying `DES_h`, by exhaustive scan of `S_n`.
///
/// The scan is partitioned over the first entry and run in parallel.
pub fn des_h_histogram(n: usize, h: usize, limit: usize) -> Result<Vec<u64>> {
    if h < 1 {
        return Err(Error::OverlapTooSmall);
    }
    if n > limit {
        return Err(Error::OracleLimit { n, limit });
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let histogram = (1..=n)
        .into_par_iter()
        .map(|first| {
            let mut local = vec![0u64; n];
            let mut buffer = Vec::with_capacity(n);
            buffer.push(first);
            let mut remaining: Vec<usize> = (1..=n).filter(|&v| v != first).collect();
            scan_words(&mut buffer, &mut remaining, &mut |word| {
                let d = descent_count(word);
                if des_h_by_definition(word, d, h) {
                    local[d] += 1;
                }
            });
            local
        })
        .reduce(
            || vec![0u64; n],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
                a
            },
        );
    Ok(histogram)
}

/// Number of permutations of length `n` with exactly `d` descents
/// satisfying `DES_h`, by exhaustive scan of `S_n`.
pub fn brute_force_count(n: usize, d: usize, h: usize) -> Result<u64> {
    brute_force_count_with_limit(n, d, h, DEFAULT_ORACLE_LIMIT)
}

pub fn brute_force_count_with_limit(n: usize, d: usize, h: usize, limit: usize) -> Result<u64> {
    let histogram = des_h_histogram(n, h, limit)?;
    Ok(histogram.get(d).copied().unwrap_or(0))
}

fn scan_words(
    buffer: &mut Vec<usize>,
    remaining: &mut Vec<usize>,
    visit: &mut impl FnMut(&[usize]),
) {
    if remaining.is_empty() {
        visit(buffer);
        return;
    }
    for idx in 0..remaining.len() {
        let v = remaining.remove(idx);
        buffer.push(v);
        scan_words(buffer, remaining, visit);
        buffer.pop();
        remaining.insert(idx, v);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(word: &[usize]) -> Permutation {
        Permutation::new(word.to_vec()).unwrap()
    }

    /// The 11-descent minimal permutation used as the running example.
    pub(crate) fn eleven_descent_example() -> Permutation {
        perm(&[14, 12, 9, 3, 13, 5, 15, 10, 6, 2, 1, 11, 8, 7, 4])
    }

    #[test]
    fn rejects_non_permutations() {
        assert!(Permutation::new(vec![]).is_err());
        assert!(Permutation::new(vec![1, 1]).is_err());
        assert!(Permutation::new(vec![2, 3]).is_err());
        assert!(Permutation::new(vec![0, 1]).is_err());
    }

    #[test]
    fn descents_of_examples() {
        assert_eq!(eleven_descent_example().descents().len(), 11);
        assert_eq!(perm(&[1, 2, 3]).descents(), Vec::<usize>::new());
        assert_eq!(perm(&[3, 2, 1]).descents(), vec![1, 2]);
    }

    #[test]
    fn descending_runs_examples() {
        let lengths: Vec<usize> = eleven_descent_example()
            .descending_runs()
            .iter()
            .map(|r| r.len())
            .collect();
        assert_eq!(lengths, vec![4, 2, 5, 4]);

        assert_eq!(
            perm(&[1, 2, 3]).descending_runs(),
            vec![vec![1], vec![2], vec![3]]
        );
        assert_eq!(perm(&[3, 2, 1]).descending_runs(), vec![vec![3, 2, 1]]);
    }

    #[test]
    fn runs_count_is_ascents_plus_one() {
        for n in 1..=6 {
            for p in Permutation::all(n) {
                assert_eq!(p.descending_runs().len(), p.ascents().len() + 1);
            }
        }
    }

    #[test]
    fn standardize_examples() {
        let p = perm(&[3, 1, 4, 2]);
        assert_eq!(p.standardize(&[1, 3]).unwrap().word(), &[1, 2]);
        assert_eq!(p.standardize(&[1, 2, 3, 4]).unwrap().word(), &[3, 1, 4, 2]);

        let q = perm(&[14, 12, 9, 3, 13, 5, 15, 10, 6, 2, 1, 11, 8, 7, 4]);
        assert_eq!(q.standardize(&[2, 3, 4]).unwrap().word(), &[3, 2, 1]);

        assert_eq!(p.standardize(&[]), Err(Error::EmptySelection));
        assert!(matches!(
            p.standardize(&[5]),
            Err(Error::PositionOutOfBounds { .. })
        ));
    }

    #[test]
    fn involvement_examples() {
        let host = perm(&[3, 1, 4, 2]);
        assert!(host.involves(&perm(&[2, 1])).unwrap());
        assert!(!perm(&[1, 2, 3]).involves(&perm(&[2, 1])).unwrap());
        let p = perm(&[2, 1, 4, 3]);
        assert!(p.involves(&p.clone()).unwrap());
        assert!(matches!(
            perm(&[1]).involves(&perm(&[1, 2])),
            Err(Error::PatternTooLong { .. })
        ));
    }

    #[test]
    fn minimality_examples() {
        assert!(perm(&[2, 1]).is_d_minimal(1));
        assert!(eleven_descent_example().is_d_minimal(11));
        assert!(!perm(&[1, 2]).is_d_minimal(1));
    }

    #[test]
    fn des_h_examples() {
        // h = 1 asks nothing beyond the descent count.
        for p in Permutation::all(4) {
            let d = p.descent_count();
            assert!(p.satisfies_des_h(d, 1, DesMethod::Definition).unwrap());
            assert!(p.satisfies_des_h(d, 1, DesMethod::Pattern).unwrap());
        }

        let sigma = eleven_descent_example();
        assert!(sigma.satisfies_des_h(11, 2, DesMethod::Definition).unwrap());
        assert!(sigma.satisfies_des_h(11, 2, DesMethod::Pattern).unwrap());

        // Deleting the 3 from 2 1 3 leaves 2 1 with one descent, not zero.
        let p = perm(&[2, 1, 3]);
        assert!(!p.satisfies_des_h(1, 2, DesMethod::Definition).unwrap());
        assert!(!p.satisfies_des_h(1, 2, DesMethod::Pattern).unwrap());

        assert_eq!(
            perm(&[1]).satisfies_des_h(0, 0, DesMethod::Definition),
            Err(Error::OverlapTooSmall)
        );
    }

    #[test]
    fn minimality_is_des_2_and_deletion_oracle() {
        for n in 1..=7 {
            for p in Permutation::all(n) {
                let d = p.descent_count();
                let minimal = p.is_d_minimal(d);
                let by_def = p.satisfies_des_h(d, 2, DesMethod::Definition).unwrap();
                let by_pat = p.satisfies_des_h(d, 2, DesMethod::Pattern).unwrap();
                assert_eq!(minimal, by_def, "definition mismatch at {p}");
                assert_eq!(minimal, by_pat, "pattern mismatch at {p}");

                // Independent oracle: every single-entry deletion loses a descent.
                // At n = 1 no deletion leaves a permutation, so it holds vacuously.
                let by_deletion = n < 2
                    || (1..=n).all(|pos| {
                        let keep: Vec<usize> = (1..=n).filter(|&q| q != pos).collect();
                        let rest = p.standardize(&keep).unwrap();
                        d >= 1 && rest.descent_count() == d - 1
                    });
                assert_eq!(minimal, by_deletion, "deletion oracle mismatch at {p}");
            }
        }
    }

    #[test]
    fn des_methods_agree_up_to_h3() {
        for n in 1..=6 {
            for p in Permutation::all(n) {
                let d = p.descent_count();
                for h in 1..=3 {
                    assert_eq!(
                        p.satisfies_des_h(d, h, DesMethod::Definition).unwrap(),
                        p.satisfies_des_h(d, h, DesMethod::Pattern).unwrap(),
                        "methods disagree at {p}, h={h}"
                    );
                }
            }
        }
    }

    #[test]
    fn brute_force_examples() {
        assert_eq!(brute_force_count(6, 4, 2).unwrap(), 32);
        assert_eq!(brute_force_count(6, 3, 2).unwrap(), 5);
        assert_eq!(brute_force_count(3, 1, 1).unwrap(), 4);
    }

    #[test]
    fn brute_force_respects_limit() {
        assert_eq!(
            brute_force_count(11, 3, 2),
            Err(Error::OracleLimit { n: 11, limit: 10 })
        );
        assert!(brute_force_count_with_limit(5, 2, 2, 4).is_err());
    }

    #[test]
    fn descent_histogram_sums_to_factorial() {
        for n in 1..=7 {
            let hist = des_h_histogram(n, 1, DEFAULT_ORACLE_LIMIT).unwrap();
            let total: u64 = hist.iter().sum();
            let factorial: u64 = (1..=n as u64).product();
            assert_eq!(total, factorial);
        }
    }

    #[test]
    fn lexicographic_enumeration_is_complete_and_sorted() {
        let all: Vec<Permutation> = Permutation::all(4).collect();
        assert_eq!(all.len(), 24);
        for pair in all.windows(2) {
            assert!(pair[0].word() < pair[1].word());
        }
        assert_eq!(all[0].word(), &[1, 2, 3, 4]);
        assert_eq!(all[23].word(), &[4, 3, 2, 1]);
    }
}
