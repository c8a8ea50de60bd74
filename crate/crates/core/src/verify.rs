//! Runnable invariant suites: the cross-checks between every pair of
//! routes to the same number, packaged so the command line can run them
//! and report failures with a witness.

use std::time::{Duration, Instant};

use num_traits::Zero;

use crate::bijection::{perm_to_tableau, tableau_to_perm};
use crate::count::{
    catalan_det, closed_formula, count_by_determinants, determinant_summands, stirling_surjections,
    unit_overlap_det, DetRoute,
};
use crate::exact::{det_exact, factorial, ratio, BigInt, ExactMatrix, Rational};
use crate::perm::{des_h_histogram, DesMethod, Permutation};
use crate::shape::{aitken_count, compositions, count_tableaux};

/// Size class for a verification run. The limits bound the length of the
/// permutations scanned exhaustively.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Small,
    Standard,
}

impl Suite {
    /// Largest `n` for `S_n` scans.
    fn scan_limit(self) -> usize {
        match self {
            Suite::Small => 7,
            Suite::Standard => 9,
        }
    }

    /// Deletion-based checks grow much faster than plain scans; cap them
    /// a little lower for the small suite.
    fn deletion_limit(self) -> usize {
        match self {
            Suite::Small => 7,
            Suite::Standard => 8,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Suite::Small => "small",
            Suite::Standard => "standard",
        }
    }
}

impl std::str::FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "small" => Ok(Suite::Small),
            "standard" => Ok(Suite::Standard),
            other => Err(format!("unknown suite `{other}` (use small or standard)")),
        }
    }
}

/// Outcome of a single named invariant check.
#[derive(Debug, Clone)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    /// The first failing instance, when there is one.
    pub witness: Option<String>,
    pub duration: Duration,
}

fn run_check(name: &'static str, body: impl FnOnce() -> Option<String>) -> Check {
    let start = Instant::now();
    let witness = body();
    Check {
        name,
        passed: witness.is_none(),
        witness,
        duration: start.elapsed(),
    }
}

/// Runs every invariant check at the suite's size limits.
pub fn run_suite(suite: Suite) -> Vec<Check> {
    vec![
        run_check("factorial_recurrence", factorial_recurrence),
        run_check("det_transpose_invariance", det_transpose_invariance),
        run_check("det_triangular_product", det_triangular_product),
        run_check("det_row_scaling", det_row_scaling),
        run_check("runs_equal_ascents_plus_one", move || {
            runs_equal_ascents_plus_one(suite.scan_limit().min(8))
        }),
        run_check("minimality_matches_des_2", move || {
            minimality_matches_des_2(suite.deletion_limit())
        }),
        run_check("des_methods_agree", move || {
            des_methods_agree(suite.deletion_limit())
        }),
        run_check("descent_histogram_row_sums", move || {
            descent_histogram_row_sums(suite.scan_limit().min(8))
        }),
        run_check("shape_composition_roundtrip", shape_composition_roundtrip),
        run_check("tableau_generation_matches_determinant", || {
            tableau_generation_matches_determinant(12)
        }),
        run_check("bijection_roundtrip", move || {
            bijection_roundtrip(suite.deletion_limit())
        }),
        run_check("tableau_side_roundtrip", || tableau_side_roundtrip(10)),
        run_check("cardinality_transport", move || {
            cardinality_transport(suite.deletion_limit())
        }),
        run_check("oracle_agreement_overlap_2", move || {
            oracle_agreement_overlap_2(suite.scan_limit())
        }),
        run_check("oracle_agreement_overlap_1", move || {
            oracle_agreement_overlap_1(suite.scan_limit().min(8))
        }),
        run_check("surjection_agreement", move || {
            surjection_agreement(suite.deletion_limit())
        }),
        run_check("summands_match_tableau_counts", move || {
            summands_match_tableau_counts(suite.scan_limit())
        }),
        run_check("unit_overlap_det_routes_agree", unit_overlap_det_routes_agree),
        run_check("closed_formula_matches_determinants", || {
            closed_formula_matches_determinants(12)
        }),
        run_check("catalan_agreement", catalan_agreement),
    ]
}

fn factorial_recurrence() -> Option<String> {
    let mut table = crate::exact::Factorials::new();
    for n in 1..=60 {
        if table.get(n) != table.get(n - 1) * BigInt::from(n) {
            return Some(format!("recurrence fails at n={n}"));
        }
    }
    None
}

/// Deterministic sample matrices from a tiny linear congruential stream.
fn sample_matrices() -> Vec<ExactMatrix> {
    let mut state = 0x2545f4914f6cdd1du64;
    let mut next = move || {
        state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        state >> 33
    };
    let mut out = Vec::new();
    for order in 1..=5 {
        for _ in 0..4 {
            out.push(ExactMatrix::from_fn(order, |_, _| {
                let num = (next() % 19) as i64 - 9;
                let den = (next() % 7) as i64 + 1;
                ratio(num, den)
            }));
        }
    }
    out
}

fn det_transpose_invariance() -> Option<String> {
    for m in sample_matrices() {
        if det_exact(&m) != det_exact(&m.transpose()) {
            return Some(format!("det differs from transposed det for\n{m}"));
        }
    }
    None
}

fn det_triangular_product() -> Option<String> {
    for order in 1..=6usize {
        let m = ExactMatrix::from_fn(order, |i, j| {
            if i <= j {
                ratio((i + 2 * j + 1) as i64, (i + j + 2) as i64)
            } else {
                Rational::zero()
            }
        });
        let diagonal: Rational = (0..order).map(|i| m.at(i, i).clone()).product();
        if det_exact(&m) != diagonal {
            return Some(format!("triangular det mismatch at order {order}"));
        }
    }
    None
}

fn det_row_scaling() -> Option<String> {
    let factors = [ratio(3, 2), ratio(-7, 5), Rational::zero(), ratio(11, 1)];
    for m in sample_matrices() {
        let base = det_exact(&m);
        for (row, c) in factors.iter().enumerate().take(m.order()) {
            let scaled = det_exact(&m.scale_row(row, c));
            if scaled != &base * c {
                return Some(format!("scaling row {row} by {c} broke the determinant"));
            }
        }
    }
    None
}

fn runs_equal_ascents_plus_one(n_max: usize) -> Option<String> {
    for n in 1..=n_max {
        for p in Permutation::all(n) {
            if p.descending_runs().len() != p.ascents().len() + 1 {
                return Some(format!("run count wrong for {p}"));
            }
        }
    }
    None
}

fn minimality_matches_des_2(n_max: usize) -> Option<String> {
    for n in 1..=n_max {
        for p in Permutation::all(n) {
            let d = p.descent_count();
            let minimal = p.is_d_minimal(d);
            let by_def = p.satisfies_des_h(d, 2, DesMethod::Definition).unwrap();
            let by_pat = p.satisfies_des_h(d, 2, DesMethod::Pattern).unwrap();
            let by_deletion = n < 2
                || (1..=n).all(|pos| {
                    let keep: Vec<usize> = (1..=n).filter(|&q| q != pos).collect();
                    d >= 1 && p.standardize(&keep).unwrap().descent_count() == d - 1
                });
            if minimal != by_def || minimal != by_pat || minimal != by_deletion {
                return Some(format!(
                    "{p}: minimal={minimal}, definition={by_def}, pattern={by_pat}, deletion={by_deletion}"
                ));
            }
        }
    }
    None
}

fn des_methods_agree(n_max: usize) -> Option<String> {
    for n in 1..=n_max {
        for p in Permutation::all(n) {
            let d = p.descent_count();
            for h in 1..=3 {
                let by_def = p.satisfies_des_h(d, h, DesMethod::Definition).unwrap();
                let by_pat = p.satisfies_des_h(d, h, DesMethod::Pattern).unwrap();
                if by_def != by_pat {
                    return Some(format!("{p}: h={h}, definition={by_def}, pattern={by_pat}"));
                }
            }
        }
    }
    None
}

fn descent_histogram_row_sums(n_max: usize) -> Option<String> {
    for n in 1..=n_max {
        let histogram = des_h_histogram(n, 1, n_max).unwrap();
        let total: u64 = histogram.iter().sum();
        let expected: u64 = (1..=n as u64).product();
        if total != expected {
            return Some(format!("histogram for n={n} sums to {total}, not {n}!"));
        }
    }
    None
}

fn shape_composition_roundtrip() -> Option<String> {
    for h in 0..=3usize {
        for k in 1..=4usize {
            let min = if k == 1 { 1 } else { h.max(1) };
            for total in k * min..=12 {
                for a in compositions(total, k, min) {
                    let s = match a.shape(h) {
                        Ok(s) => s,
                        Err(e) => return Some(format!("{a} rejected for h={h}: {e}")),
                    };
                    for i in 0..k - 1 {
                        if s.overlap(i) != h as i64 {
                            return Some(format!("{a}, h={h}: overlap {} at row {i}", s.overlap(i)));
                        }
                    }
                    if h >= 1 && !s.is_connected() {
                        return Some(format!("{a}, h={h}: disconnected shape {s}"));
                    }
                    match s.composition(h) {
                        Ok(back) if back == a => {}
                        other => return Some(format!("{a}, h={h}: roundtrip gave {other:?}")),
                    }
                }
            }
        }
    }
    None
}

fn tableau_generation_matches_determinant(cell_max: usize) -> Option<String> {
    for h in 0..=3usize {
        for k in 1..=4usize {
            let min = if k == 1 { 1 } else { h.max(1) };
            for total in k * min..=cell_max {
                for a in compositions(total, k, min) {
                    let s = a.shape(h).unwrap();
                    let generated = count_tableaux(&s, cell_max).unwrap();
                    if BigInt::from(generated) != aitken_count(&s) {
                        return Some(format!(
                            "{s}: generated {generated}, determinant {}",
                            aitken_count(&s)
                        ));
                    }
                }
            }
        }
    }
    None
}

fn bijection_roundtrip(n_max: usize) -> Option<String> {
    for n in 1..=n_max {
        for p in Permutation::all(n) {
            let d = p.descent_count();
            for h in 1..=3 {
                if !p.satisfies_des_h(d, h, DesMethod::Pattern).unwrap() {
                    continue;
                }
                let t = match perm_to_tableau(&p, h) {
                    Ok(t) => t,
                    Err(e) => return Some(format!("{p}, h={h}: map rejected, {e}")),
                };
                if !t.is_valid() {
                    return Some(format!("{p}, h={h}: image is not a valid tableau"));
                }
                match tableau_to_perm(&t, h) {
                    Ok(back) if back == p => {}
                    other => return Some(format!("{p}, h={h}: roundtrip gave {other:?}")),
                }
            }
        }
    }
    None
}

fn tableau_side_roundtrip(cell_max: usize) -> Option<String> {
    for h in 1..=3usize {
        for k in 1..=4usize {
            let min = if k == 1 { 1 } else { h };
            for total in k * min..=cell_max {
                for a in compositions(total, k, min) {
                    let s = a.shape(h).unwrap();
                    let tableaux = match crate::shape::generate_tableaux(&s) {
                        Ok(t) => t,
                        Err(e) => return Some(format!("{s}: generation failed, {e}")),
                    };
                    for t in tableaux {
                        let p = match tableau_to_perm(&t, h) {
                            Ok(p) => p,
                            Err(e) => return Some(format!("{s}, h={h}: read-off failed, {e}")),
                        };
                        match perm_to_tableau(&p, h) {
                            Ok(back) if back == t => {}
                            other => {
                                return Some(format!("{s}, h={h}: roundtrip gave {other:?}"))
                            }
                        }
                    }
                }
            }
        }
    }
    None
}

fn cardinality_transport(n_max: usize) -> Option<String> {
    for h in 1..=3usize {
        for n in 1..=n_max {
            let histogram = des_h_histogram(n, h, n_max).unwrap();
            for (d, &brute) in histogram.iter().enumerate() {
                let k = n - d;
                if k == 0 {
                    continue;
                }
                let min = if k == 1 { 1 } else { h };
                let mut tableaux = 0u64;
                if n >= k * min {
                    for a in compositions(n, k, min) {
                        tableaux += count_tableaux(&a.shape(h).unwrap(), n).unwrap();
                    }
                }
                if brute != tableaux {
                    return Some(format!(
                        "n={n}, d={d}, h={h}: scan found {brute}, tableaux {tableaux}"
                    ));
                }
            }
        }
    }
    None
}

fn oracle_agreement_overlap_2(n_max: usize) -> Option<String> {
    for n in 2..=n_max {
        let histogram = des_h_histogram(n, 2, n_max).unwrap();
        for k in 1..n {
            let d = n - k;
            let by_det = count_by_determinants(n, k, 2).value;
            let brute = BigInt::from(histogram[d]);
            if by_det != brute {
                return Some(format!("n={n}, k={k}: determinants {by_det}, scan {brute}"));
            }
        }
    }
    None
}

fn oracle_agreement_overlap_1(n_max: usize) -> Option<String> {
    for n in 1..=n_max {
        let histogram = des_h_histogram(n, 1, n_max).unwrap();
        let mut total = BigInt::zero();
        for k in 1..=n {
            let d = n - k;
            let value = count_by_determinants(n, k, 1).value;
            if value != BigInt::from(histogram[d]) {
                return Some(format!(
                    "n={n}, k={k}: determinants {value}, scan {}",
                    histogram[d]
                ));
            }
            let mirrored = count_by_determinants(n, n + 1 - k, 1).value;
            if value != mirrored {
                return Some(format!("n={n}, k={k}: symmetry broken ({value} vs {mirrored})"));
            }
            total += value;
        }
        if total != factorial(n) {
            return Some(format!("n={n}: row sum {total} is not {n}!"));
        }
    }
    None
}

fn surjection_agreement(n_max: usize) -> Option<String> {
    for n in 1..=n_max {
        for k in 1..=n {
            let by_det = count_by_determinants(n, k, 0).value;
            let by_stirling = stirling_surjections(n, k);
            let by_scan = BigInt::from(count_surjections_directly(n, k));
            let by_multinomial = multinomial_sum(n, k);
            if by_det != by_stirling || by_det != by_scan || by_det != by_multinomial {
                return Some(format!(
                    "n={n}, k={k}: determinants {by_det}, stirling {by_stirling}, scan {by_scan}, multinomial {by_multinomial}"
                ));
            }
        }
    }
    None
}

/// Walks all k^n functions and counts the surjective ones.
fn count_surjections_directly(n: usize, k: usize) -> u64 {
    let mut image = vec![0usize; k];
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
    walk(n, &mut image, &mut count);
    count
}

/// Sum of multinomial coefficients over compositions of `n` into `k`
/// positive parts.
fn multinomial_sum(n: usize, k: usize) -> BigInt {
    let mut total = BigInt::zero();
    for a in compositions(n, k, 1) {
        let mut term = Rational::from(factorial(n));
        for &part in a.parts() {
            term /= Rational::from(factorial(part));
        }
        total += crate::exact::expect_integer(&term, "multinomial coefficient");
    }
    total
}

fn summands_match_tableau_counts(n_max: usize) -> Option<String> {
    for h in 0..=2usize {
        for k in 1..=n_max {
            let min = if k == 1 { 1 } else { h.max(1) };
            for n in k * min..=n_max {
                for (a, summand) in determinant_summands(n, k, h) {
                    let direct = aitken_count(&a.shape(h).unwrap());
                    if summand != direct {
                        return Some(format!(
                            "{a}, h={h}: summand {summand}, tableau count {direct}"
                        ));
                    }
                }
            }
        }
    }
    None
}

fn unit_overlap_det_routes_agree() -> Option<String> {
    use rayon::prelude::*;

    let mut tuples = Vec::new();
    for k in 1..=6usize {
        // Odometer walk through {1..=5}^k.
        let mut parts = vec![1usize; k];
        loop {
            tuples.push(parts.clone());
            let mut advanced = false;
            for p in parts.iter_mut() {
                if *p < 5 {
                    *p += 1;
                    advanced = true;
                    break;
                }
                *p = 1;
            }
            if !advanced {
                break;
            }
        }
    }
    tuples.par_iter().find_map_any(|parts| {
        let a = crate::shape::Composition::new(parts.clone()).unwrap();
        let by_det = unit_overlap_det(&a, DetRoute::Elimination);
        let by_rec = unit_overlap_det(&a, DetRoute::Recursion);
        let by_lp = unit_overlap_det(&a, DetRoute::LinearPartitions);
        (by_det != by_rec || by_det != by_lp).then(|| {
            format!("{a}: elimination {by_det}, recursion {by_rec}, linear partitions {by_lp}")
        })
    })
}

fn closed_formula_matches_determinants(d_max: usize) -> Option<String> {
    for k in 1..=3usize {
        for d in k..=d_max {
            let closed = closed_formula(d, k).unwrap().value;
            let by_det = count_by_determinants(d + k, k, 2).value;
            if closed != by_det {
                return Some(format!("closed_formula(d={d}, k={k})={closed}, determinants {by_det}"));
            }
        }
    }
    None
}

fn catalan_agreement() -> Option<String> {
    for d in 1..=8usize {
        let band = catalan_det(d);
        let swept = count_by_determinants(2 * d, d, 2).value;
        if band != swept {
            return Some(format!("d={d}: band {band}, sweep {swept}"));
        }
        if 2 * d <= 12 {
            let rectangle = crate::shape::SkewShape::from_parts(&vec![2; d], &[]).unwrap();
            let generated = count_tableaux(&rectangle, 12).unwrap();
            if BigInt::from(generated) != band {
                return Some(format!("d={d}: band {band}, rectangle tableaux {generated}"));
            }
        }
    }
    None
}
