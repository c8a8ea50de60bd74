//! Acceptance suite: every headline number is recomputed by at least two
//! independent routes and compared exactly. Each test prints one pass/fail
//! line (visible with `--nocapture`); all equalities are in exact integer
//! arithmetic with zero tolerance.

use std::time::Instant;

use num_traits::One;
use rayon::prelude::*;

use minperm::{
    aitken_count, brute_force_count, catalan_det, closed_formula, compositions,
    count_by_determinants, count_tableaux, des_h_histogram, determinant_summands, factorial,
    generate_tableaux, perm_to_tableau, stirling_surjections, tableau_to_perm, unit_overlap_det,
    BigInt, Composition, DesMethod, DetRoute, Factorials, Permutation, Rational, SkewShape,
    SkewTableau,
};

fn criterion(number: u32, name: &str, body: impl FnOnce() -> Result<(), String>) {
    let start = Instant::now();
    match body() {
        Ok(()) => println!(
            "criterion {number} ({name}): PASS [{:.2}s]",
            start.elapsed().as_secs_f64()
        ),
        Err(message) => {
            println!("criterion {number} ({name}): FAIL - {message}");
            panic!("criterion {number} ({name}) failed: {message}");
        }
    }
}

fn expect_eq<T: PartialEq + std::fmt::Display>(label: &str, got: T, want: T) -> Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("{label}: got {got}, want {want}"))
    }
}

const TABLE_K3: [(usize, u64); 7] = [
    (3, 5),
    (4, 84),
    (5, 686),
    (6, 3936),
    (7, 18387),
    (8, 75372),
    (9, 283052),
];

#[test]
fn criterion_01_three_row_table() {
    criterion(1, "three-extra-row table, d = 3..9", || {
        for (d, expected) in TABLE_K3 {
            let want = BigInt::from(expected);
            expect_eq(
                &format!("determinant sum at d={d}"),
                count_by_determinants(d + 3, 3, 2).value,
                want.clone(),
            )?;
            expect_eq(
                &format!("closed formula at d={d}"),
                closed_formula(d, 3).unwrap().value,
                want,
            )?;
        }
        Ok(())
    });
}

#[test]
fn criterion_02_thirty_two_permutations_of_length_six() {
    criterion(2, "length-6 example: 9 + 14 + 9 = 32", || {
        let shapes = [
            (SkewShape::from_parts(&[4, 2], &[]).unwrap(), 9u64),
            (SkewShape::from_parts(&[4, 3], &[1]).unwrap(), 14),
            (SkewShape::from_parts(&[4, 4], &[2]).unwrap(), 9),
        ];
        let mut total = 0u64;
        for (shape, expected) in &shapes {
            expect_eq(
                &format!("determinant count of {shape}"),
                aitken_count(shape),
                BigInt::from(*expected),
            )?;
            expect_eq(
                &format!("generated count of {shape}"),
                count_tableaux(shape, 14).unwrap(),
                *expected,
            )?;
            total += *expected;
        }
        expect_eq("shape total", total, 32)?;
        expect_eq("scan of S_6", brute_force_count(6, 4, 2).unwrap(), 32)
    });
}

#[test]
fn criterion_03_one_and_two_extra_rows() {
    criterion(3, "closed forms for one and two extra rows, d = 2..12", || {
        for d in 2..=12usize {
            expect_eq(
                &format!("single row at d={d}"),
                count_by_determinants(d + 1, 1, 2).value,
                BigInt::one(),
            )?;
            let db = BigInt::from(d);
            let want = num_traits::pow(BigInt::from(2), d + 2) - (&db + 1) * (&db + 2) - 2;
            expect_eq(
                &format!("two rows at d={d}"),
                count_by_determinants(d + 2, 2, 2).value,
                want,
            )?;
        }
        Ok(())
    });
}

#[test]
fn criterion_04_catalan_numbers() {
    criterion(4, "Catalan numbers via the band determinant, d = 1..6", || {
        let expected = [1u64, 2, 5, 14, 42, 132];
        for (i, &catalan) in expected.iter().enumerate() {
            let d = i + 1;
            let want = BigInt::from(catalan);
            expect_eq(&format!("band determinant at d={d}"), catalan_det(d), want.clone())?;
            expect_eq(
                &format!("composition sweep at d={d}"),
                count_by_determinants(2 * d, d, 2).value,
                want.clone(),
            )?;
            let rectangle = SkewShape::from_parts(&vec![2; d], &[]).unwrap();
            expect_eq(
                &format!("rectangle tableaux at d={d}"),
                BigInt::from(count_tableaux(&rectangle, 12).unwrap()),
                want,
            )?;
        }
        Ok(())
    });
}

#[test]
fn criterion_05_eulerian_numbers() {
    criterion(5, "Eulerian numbers for n <= 8", || {
        for n in 1..=8usize {
            let histogram = des_h_histogram(n, 1, 8).unwrap();
            let mut row_sum = BigInt::from(0);
            for k in 1..=n {
                let d = n - k;
                let by_det = count_by_determinants(n, k, 1).value;
                expect_eq(
                    &format!("n={n}, d={d}"),
                    by_det.clone(),
                    BigInt::from(histogram[d]),
                )?;
                row_sum += by_det;
            }
            expect_eq(&format!("row sum at n={n}"), row_sum, factorial(n))?;
            for d in 0..n {
                expect_eq(
                    &format!("symmetry at n={n}, d={d}"),
                    histogram[d],
                    histogram[n - 1 - d],
                )?;
            }
        }
        Ok(())
    });
}

#[test]
fn criterion_06_surjections() {
    criterion(6, "surjection counts for n <= 8", || {
        for n in 1..=8usize {
            for k in 1..=n {
                let want = stirling_surjections(n, k);
                expect_eq(
                    &format!("determinant sweep at n={n}, k={k}"),
                    count_by_determinants(n, k, 0).value,
                    want.clone(),
                )?;
                expect_eq(
                    &format!("direct scan at n={n}, k={k}"),
                    count_surjections_directly(n, k),
                    want,
                )?;
            }
        }
        Ok(())
    });
}

/// Walks all k^n functions and counts the surjective ones.
fn count_surjections_directly(n: usize, k: usize) -> BigInt {
    fn walk(remaining: usize, image: &mut Vec<usize>, count: &mut u64) {
        if remaining == 0 {
            if image.iter().all(|&c| c > 0) {
                *count += 1;
            }
            return;
        }
        for box_index in 0..image.len() {
            image[box_index] += 1;
            walk(remaining - 1, image, count);
            image[box_index] -= 1;
        }
    }
    let mut count = 0;
    walk(n, &mut vec![0usize; k], &mut count);
    BigInt::from(count)
}

#[test]
fn criterion_07_bijection_roundtrips() {
    criterion(7, "bijection roundtrips, n <= 8, h in 1..3", || {
        // Permutation side.
        for n in 1..=8usize {
            for p in Permutation::all(n) {
                let d = p.descent_count();
                for h in 1..=3usize {
                    if !p.satisfies_des_h(d, h, DesMethod::Definition).unwrap() {
                        continue;
                    }
                    let t = perm_to_tableau(&p, h).map_err(|e| format!("{p}, h={h}: {e}"))?;
                    let back = tableau_to_perm(&t, h).map_err(|e| format!("{p}, h={h}: {e}"))?;
                    if back != p {
                        return Err(format!("roundtrip of {p} at h={h} gave {back}"));
                    }
                }
            }
        }

        // Tableau side, over all composition shapes with at most 10 cells.
        for h in 1..=3usize {
            for k in 1..=10usize {
                let min = if k == 1 { 1 } else { h };
                if k * min > 10 {
                    continue;
                }
                for cells in k * min..=10 {
                    for a in compositions(cells, k, min) {
                        let shape = a.shape(h).unwrap();
                        for t in generate_tableaux(&shape).unwrap() {
                            let p = tableau_to_perm(&t, h)
                                .map_err(|e| format!("{shape}, h={h}: {e}"))?;
                            let back = perm_to_tableau(&p, h)
                                .map_err(|e| format!("{shape}, h={h}: {e}"))?;
                            if back != t {
                                return Err(format!("tableau roundtrip failed on {shape}, h={h}"));
                            }
                        }
                    }
                }
            }
        }

        // The printed 15-cell instance.
        let sigma = Permutation::new(vec![14, 12, 9, 3, 13, 5, 15, 10, 6, 2, 1, 11, 8, 7, 4])
            .unwrap();
        let t = perm_to_tableau(&sigma, 2).unwrap();
        let expected = SkewTableau::new(
            SkewShape::from_parts(&[9, 7, 4, 4], &[5, 2, 2, 0]).unwrap(),
            vec![
                vec![11, 8, 7, 4],
                vec![15, 10, 6, 2, 1],
                vec![13, 5],
                vec![14, 12, 9, 3],
            ],
        )
        .unwrap();
        if t != expected {
            return Err("15-cell instance does not map as printed".into());
        }
        expect_eq("15-cell inverse", tableau_to_perm(&t, 2).unwrap(), sigma)
    });
}

#[test]
fn criterion_08_cubic_closed_form_erratum() {
    criterion(8, "three-row closed form: correct tail is 5d^2 + 6d + 1", || {
        // The tail ending 33/4 d^2 + 6d - 8 cannot be right: it is not an
        // integer at d = 3, and where it is an integer it still disagrees
        // with the determinant sum.
        let wrong_at_3 = cubic_variant_with_wrong_tail(3);
        if wrong_at_3.denom().is_one() {
            return Err(format!(
                "variant tail unexpectedly integral at d=3: {wrong_at_3}"
            ));
        }
        expect_eq(
            "variant value at d=3",
            wrong_at_3,
            Rational::new(BigInt::from(101), BigInt::from(4)),
        )?;
        let wrong_at_4 = cubic_variant_with_wrong_tail(4);
        if wrong_at_4 == Rational::from(BigInt::from(84)) {
            return Err("variant agrees at d=4, expected disagreement".into());
        }

        // The tail used by closed_formula matches the determinant sum
        // everywhere in the tested range.
        for d in 3..=12usize {
            expect_eq(
                &format!("closed form at d={d}"),
                closed_formula(d, 3).unwrap().value,
                count_by_determinants(d + 3, 3, 2).value,
            )?;
        }
        Ok(())
    });
}

/// The erroneous variant: `3^(d+3) - (d^2+4d+7) 2^(d+2)
/// + d^4/2 + 5d^3/2 + 33d^2/4 + 6d - 8`.
fn cubic_variant_with_wrong_tail(d: usize) -> Rational {
    let db = BigInt::from(d);
    let d2 = &db * &db;
    let d3 = &d2 * &db;
    let d4 = &d3 * &db;
    let integral = num_traits::pow(BigInt::from(3), d + 3)
        - (&d2 + &db * 4u32 + BigInt::from(7)) * num_traits::pow(BigInt::from(2), d + 2)
        + &db * 6u32
        - BigInt::from(8);
    Rational::from(integral)
        + Rational::new(&d4 + &d3 * 5u32, BigInt::from(2))
        + Rational::new(d2 * 33u32, BigInt::from(4))
}

#[test]
fn criterion_09_unit_overlap_det_routes() {
    criterion(9, "unit-overlap determinant: three routes agree", || {
        let mut tuples = Vec::new();
        for k in 1..=6usize {
            let mut parts = vec![1usize; k];
            loop {
                tuples.push(parts.clone());
                if !advance_odometer(&mut parts, 5) {
                    break;
                }
            }
        }
        let failure = tuples.par_iter().find_map_any(|parts| {
            let a = Composition::new(parts.clone()).unwrap();
            let by_elimination = unit_overlap_det(&a, DetRoute::Elimination);
            let by_recursion = unit_overlap_det(&a, DetRoute::Recursion);
            let by_blocks = unit_overlap_det(&a, DetRoute::LinearPartitions);
            (by_elimination != by_recursion || by_elimination != by_blocks).then(|| {
                format!(
                    "{a}: elimination {by_elimination}, recursion {by_recursion}, blocks {by_blocks}"
                )
            })
        });
        failure.map_or(Ok(()), Err)
    });
}

/// Steps a vector of parts through `{1..=max}^k`; false after the last one.
fn advance_odometer(parts: &mut [usize], max: usize) -> bool {
    for p in parts.iter_mut() {
        if *p < max {
            *p += 1;
            return true;
        }
        *p = 1;
    }
    false
}

#[test]
fn criterion_10_summands_are_tableau_counts() {
    criterion(10, "every summand is the tableau count of its shape", || {
        let mut factorials = Factorials::new();
        for h in 0..=2usize {
            for n in 1..=9usize {
                for k in 1..=n {
                    let summands = determinant_summands(n, k, h);
                    let sweep_size = summands.len() as u64;
                    for (a, summand) in summands {
                        let shape = a.shape(h).unwrap();
                        if summand != aitken_count(&shape) {
                            return Err(format!(
                                "summand for {a} (h={h}) is {summand}, not the tableau count"
                            ));
                        }
                        if summand < BigInt::from(0) {
                            return Err(format!("summand for {a} (h={h}) is negative"));
                        }
                    }
                    // The sweep covers the whole composition space; a
                    // single row is unconstrained by the overlap.
                    let min = if k == 1 { 1 } else { h.max(1) };
                    let expected = if n >= k * min {
                        binomial(&mut factorials, n - k * min + k - 1, k - 1)
                    } else {
                        BigInt::from(0)
                    };
                    expect_eq(
                        &format!("sweep size at n={n}, k={k}, h={h}"),
                        BigInt::from(sweep_size),
                        expected,
                    )?;
                }
            }
        }
        Ok(())
    });
}

fn binomial(factorials: &mut Factorials, n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let value = Rational::from(factorials.get(n))
        / Rational::from(factorials.get(k))
        / Rational::from(factorials.get(n - k));
    value.numer().clone()
}
