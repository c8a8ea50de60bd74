//! Exact arithmetic substrate: arbitrary-precision integers, rationals,
//! factorials, and exact determinants.
//!
//! Every count produced by this crate is an exact integer obtained as
//! `N! * det(M)` for a matrix `M` of small rationals, so the determinant
//! must be computed without rounding. Elimination runs over `Rational`
//! pivots; an integer-scaled fast path could be slotted in behind
//! [`det_exact`] later without touching callers.

use num_traits::{One, Zero};

pub use num_bigint::BigInt;

/// Exact rational number. Always reduced, denominator positive.
pub type Rational = num_rational::BigRational;

/// Computes `n!` directly.
///
/// For repeated evaluation inside a sweep, prefer a [`Factorials`] table
/// owned by the computation context.
pub fn factorial(n: usize) -> BigInt {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= i;
    }
    acc
}

/// Memoized factorial table.
///
/// The cache is an explicit value owned by each computation context rather
/// than shared global state, so parallel sweeps need no coordination: each
/// worker owns its own table.
#[derive(Debug, Clone, Default)]
pub struct Factorials {
    cache: Vec<BigInt>,
}

impl Factorials {
    pub fn new() -> Self {
        Factorials {
            cache: vec![BigInt::one()],
        }
    }

    /// `n!`, extending the cache as needed.
    pub fn get(&mut self, n: usize) -> BigInt {
        if self.cache.is_empty() {
            self.cache.push(BigInt::one());
        }
        while self.cache.len() <= n {
            let next = self.cache.last().unwrap() * self.cache.len();
            self.cache.push(next);
        }
        self.cache[n].clone()
    }

    /// `1/n!` as a rational.
    pub fn inverse(&mut self, n: usize) -> Rational {
        Rational::new(BigInt::one(), self.get(n))
    }
}

/// Square matrix of exact rationals, stored row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    order: usize,
    entries: Vec<Rational>,
}

impl ExactMatrix {
    /// Builds an `order x order` matrix from an entry function over
    /// zero-based `(row, col)` indices.
    pub fn from_fn(order: usize, mut entry: impl FnMut(usize, usize) -> Rational) -> Self {
        assert!(order >= 1, "matrix order must be at least 1");
        let mut entries = Vec::with_capacity(order * order);
        for i in 0..order {
            for j in 0..order {
                entries.push(entry(i, j));
            }
        }
        ExactMatrix { order, entries }
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let order = rows.len();
        assert!(order >= 1, "matrix order must be at least 1");
        assert!(
            rows.iter().all(|r| r.len() == order),
            "matrix must be square"
        );
        ExactMatrix {
            order,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn identity(order: usize) -> Self {
        Self::from_fn(order, |i, j| {
            if i == j {
                Rational::one()
            } else {
                Rational::zero()
            }
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn at(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.order + j]
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.order, |i, j| self.at(j, i).clone())
    }

    /// Returns a copy with row `i` multiplied by `c`.
    pub fn scale_row(&self, i: usize, c: &Rational) -> Self {
        Self::from_fn(self.order, |r, j| {
            if r == i {
                self.at(r, j) * c
            } else {
                self.at(r, j).clone()
            }
        })
    }
}

impl std::fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for i in 0..self.order {
            for j in 0..self.order {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.at(i, j))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Exact determinant.
///
/// Cofactor expansion for order <= 3, Gaussian elimination with rational
/// pivots beyond that, with row swaps tracked by sign.
pub fn det_exact(m: &ExactMatrix) -> Rational {
    let n = m.order();
    match n {
        1 => m.at(0, 0).clone(),
        2 => m.at(0, 0) * m.at(1, 1) - m.at(0, 1) * m.at(1, 0),
        3 => {
            let a = m.at(0, 0) * (m.at(1, 1) * m.at(2, 2) - m.at(1, 2) * m.at(2, 1));
            let b = m.at(0, 1) * (m.at(1, 0) * m.at(2, 2) - m.at(1, 2) * m.at(2, 0));
            let c = m.at(0, 2) * (m.at(1, 0) * m.at(2, 1) - m.at(1, 1) * m.at(2, 0));
            a - b + c
        }
        _ => det_by_elimination(m),
    }
}

fn det_by_elimination(m: &ExactMatrix) -> Rational {
    let n = m.order();
    let mut a: Vec<Vec<Rational>> = (0..n)
        .map(|i| (0..n).map(|j| m.at(i, j).clone()).collect())
        .collect();
    let mut sign_flip = false;

    for col in 0..n {
        let pivot_row = match (col..n).find(|&r| !a[r][col].is_zero()) {
            Some(r) => r,
            None => return Rational::zero(),
        };
        if pivot_row != col {
            a.swap(pivot_row, col);
            sign_flip = !sign_flip;
        }
        let (pivot_rows, rest) = a.split_at_mut(col + 1);
        let pivot_row = &pivot_rows[col];
        for target in rest.iter_mut() {
            if target[col].is_zero() {
                continue;
            }
            let factor = &target[col] / &pivot_row[col];
            for (j, pivot_value) in pivot_row.iter().enumerate().skip(col) {
                let sub = &factor * pivot_value;
                target[j] -= sub;
            }
        }
    }

    let mut det = Rational::one();
    for (i, row) in a.iter().enumerate() {
        det *= &row[i];
    }
    if sign_flip {
        -det
    } else {
        det
    }
}

/// Converts a rational known to be integral into a `BigInt`.
///
/// Panics if the value has a nontrivial denominator; such a failure means
/// a formula produced a non-integer where a count was expected, which is
/// an implementation bug, not a recoverable condition.
pub fn expect_integer(value: &Rational, context: &str) -> BigInt {
    assert!(
        value.denom().is_one(),
        "{context}: expected an integer, got {value}"
    );
    value.numer().clone()
}

/// Convenience constructor: the rational `num/den`.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorial_small_values() {
        assert_eq!(factorial(0), BigInt::from(1));
        assert_eq!(factorial(1), BigInt::from(1));
        assert_eq!(factorial(6), BigInt::from(720));
    }

    #[test]
    fn factorial_recurrence() {
        let mut table = Factorials::new();
        for n in 1..=40 {
            assert_eq!(table.get(n), table.get(n - 1) * BigInt::from(n));
        }
    }

    #[test]
    fn factorial_sixty_has_headroom() {
        // 60! computed independently with bc.
        let expected = "8320987112741390144276341183223364380754172606361245952449277696409600000000000000";
        assert_eq!(factorial(60).to_string(), expected);
        assert_eq!(Factorials::new().get(60).to_string(), expected);
    }

    #[test]
    fn det_identity() {
        assert_eq!(det_exact(&ExactMatrix::identity(3)), Rational::one());
    }

    #[test]
    fn det_two_by_two_by_hand() {
        // This is the composition matrix of (4,2) at overlap 2.
        let m = ExactMatrix::from_rows(vec![
            vec![ratio(1, 24), ratio(1, 120)],
            vec![ratio(1, 1), ratio(1, 2)],
        ]);
        assert_eq!(det_exact(&m), ratio(1, 80));
    }

    #[test]
    fn det_equal_rows_is_zero() {
        let m = ExactMatrix::from_rows(vec![
            vec![ratio(1, 2), ratio(3, 5), ratio(1, 7)],
            vec![ratio(1, 3), ratio(2, 9), ratio(4, 11)],
            vec![ratio(1, 2), ratio(3, 5), ratio(1, 7)],
        ]);
        assert_eq!(det_exact(&m), Rational::zero());
    }

    #[test]
    fn det_needs_row_swap() {
        // Zero pivot in the top-left forces a swap; the swapped matrix is
        // upper triangular with unit diagonal, so the determinant is -1.
        let m = ExactMatrix::from_rows(vec![
            vec![ratio(0, 1), ratio(1, 1), ratio(0, 1), ratio(0, 1)],
            vec![ratio(1, 1), ratio(0, 1), ratio(0, 1), ratio(0, 1)],
            vec![ratio(0, 1), ratio(0, 1), ratio(1, 1), ratio(5, 7)],
            vec![ratio(0, 1), ratio(0, 1), ratio(0, 1), ratio(1, 1)],
        ]);
        assert_eq!(det_exact(&m), ratio(-1, 1));
    }

    #[test]
    fn det_upper_triangular_is_diagonal_product() {
        let m = ExactMatrix::from_fn(5, |i, j| {
            if i <= j {
                ratio((i + j + 1) as i64, (j + 2) as i64)
            } else {
                Rational::zero()
            }
        });
        let product: Rational = (0..5).map(|i| m.at(i, i).clone()).product();
        assert_eq!(det_exact(&m), product);
    }

    #[test]
    fn expect_integer_accepts_whole_values() {
        assert_eq!(expect_integer(&ratio(42, 1), "test"), BigInt::from(42));
    }

    #[test]
    #[should_panic(expected = "expected an integer")]
    fn expect_integer_rejects_fractions() {
        expect_integer(&ratio(1, 2), "test");
    }
}
