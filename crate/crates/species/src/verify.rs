//! Cross-validation suites between the series machinery and the
//! enumeration oracle.
//!
//! Every check here compares two computations that share as little code as
//! possible: symbolic cycle indices against explicit orbit partitioning,
//! table entries against classical recurrences evaluated locally, closed
//! forms against their defining products. A check never trusts the thing it
//! is checking. The suites back the `species verify` subcommand and the
//! integration tests.

use std::collections::BTreeMap;

use num::{BigInt, BigUint, One, Zero};

use crate::expr::{Atom, SpeciesExpr};
use crate::kernel::{atom_cycle_index, cycle_index, egf_counts, tgf_counts};
use crate::oracle::perm::{conjugacy_class_size, Permutation};
use crate::oracle::twosort::{enumerate_two_sort, functions, two_sort_orbits, two_sort_transport};
use crate::oracle::{
    self, enumerate, orbit_report, transport_on, Side, Structure,
};
use crate::rational::{binomial, factorial, frac, rat, Rational};
use crate::series::{Caps, Monomial, TruncatedSeries, VarId};
use crate::twosort::{
    family_rows, four_series, fun_cycle_index, weighted_components, CountTable, EnrichmentSpec,
    Family, FourSeries,
};

/// Outcome of one named check.
#[derive(Clone, Debug)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub details: String,
}

/// Knobs for the verification suites.
#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    /// Largest ambient set offered to the enumeration oracle. Individual
    /// checks clamp further where enumeration cost demands it.
    pub max_n: usize,
    /// Deliberately corrupt one comparison to demonstrate that failures are
    /// detected and reported with a witness.
    pub inject_failure: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { max_n: 5, inject_failure: false }
    }
}

fn run_check(
    out: &mut Vec<CheckResult>,
    name: impl Into<String>,
    body: impl FnOnce() -> Result<String, String>,
) {
    let (passed, details) = match body() {
        Ok(details) => (true, details),
        Err(details) => (false, details),
    };
    out.push(CheckResult { name: name.into(), passed, details });
}

// ---------------------------------------------------------------------------
// Local reference combinatorics, deliberately computed from first-principles
// recurrences rather than through any series code.

fn stirling2(n: usize, k: usize) -> BigUint {
    let mut row = vec![BigUint::one()];
    for m in 1..=n {
        let mut next = vec![BigUint::zero(); m + 1];
        for (j, slot) in next.iter_mut().enumerate().skip(1) {
            let from_smaller = row.get(j - 1).cloned().unwrap_or_else(BigUint::zero);
            let same = row.get(j).cloned().unwrap_or_else(BigUint::zero);
            *slot = from_smaller + same * BigUint::from(j);
        }
        row = next;
    }
    row.get(k).cloned().unwrap_or_else(BigUint::zero)
}

/// Unsigned first-kind Stirling numbers: permutations of `n` with `k` cycles.
fn stirling1(n: usize, k: usize) -> BigUint {
    let mut row = vec![BigUint::one()];
    for m in 1..=n {
        let mut next = vec![BigUint::zero(); m + 1];
        for (j, slot) in next.iter_mut().enumerate() {
            let from_smaller = if j >= 1 { row.get(j - 1).cloned() } else { None };
            let same = row.get(j).cloned().unwrap_or_else(BigUint::zero);
            *slot = from_smaller.unwrap_or_else(BigUint::zero) + same * BigUint::from(m - 1);
        }
        row = next;
    }
    row.get(k).cloned().unwrap_or_else(BigUint::zero)
}

/// Lah numbers: partitions of `n` into `k` nonempty linearly ordered blocks.
fn lah(n: usize, k: usize) -> BigUint {
    let mut row = vec![BigUint::one()];
    for m in 1..=n {
        let mut next = vec![BigUint::zero(); m + 1];
        for (j, slot) in next.iter_mut().enumerate() {
            let from_smaller = if j >= 1 { row.get(j - 1).cloned() } else { None };
            let same = row.get(j).cloned().unwrap_or_else(BigUint::zero);
            *slot =
                from_smaller.unwrap_or_else(BigUint::zero) + same * BigUint::from(m - 1 + j);
        }
        row = next;
    }
    row.get(k).cloned().unwrap_or_else(BigUint::zero)
}

/// Partitions of `n` into exactly `k` parts.
fn partitions_exact(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    // p(n, k) = p(n-1, k-1) + p(n-k, k), p(0, 0) = 1.
    let mut table = vec![vec![BigUint::zero(); k + 1]; n + 1];
    table[0][0] = BigUint::one();
    for m in 1..=n {
        for j in 1..=k.min(m) {
            let a = table[m - 1][j - 1].clone();
            let b = if m >= j { table[m - j][j].clone() } else { BigUint::zero() };
            table[m][j] = a + b;
        }
    }
    table[n][k].clone()
}

fn partitions_at_most(n: usize, k: usize) -> BigUint {
    (0..=k).map(|j| partitions_exact(n, j)).sum()
}

/// `k (k-1) ... (k-n+1)`, zero once the factors run out.
fn falling(k: usize, n: usize) -> BigUint {
    if n > k {
        return BigUint::zero();
    }
    let mut acc = BigUint::one();
    for i in 0..n {
        acc *= BigUint::from(k - i);
    }
    acc
}

/// `k (k+1) ... (k+n-1)`; empty product for `n = 0`.
fn rising(k: usize, n: usize) -> BigUint {
    let mut acc = BigUint::one();
    for i in 0..n {
        acc *= BigUint::from(k + i);
    }
    acc
}

fn indicator(cond: bool) -> BigUint {
    if cond {
        BigUint::one()
    } else {
        BigUint::zero()
    }
}

fn power(k: usize, n: usize) -> BigUint {
    if n == 0 {
        return BigUint::one();
    }
    BigUint::from(k).pow(n as u32)
}

// ---------------------------------------------------------------------------
// Kernel suite.

fn kernel_agreement_expressions() -> Vec<SpeciesExpr> {
    let mut out: Vec<SpeciesExpr> = Atom::catalog()
        .into_iter()
        .filter(|a| !matches!(a, Atom::Graph))
        .map(SpeciesExpr::from)
        .collect();
    out.push(SpeciesExpr::compose(
        SpeciesExpr::from(Atom::Set),
        SpeciesExpr::from(Atom::Cycle),
    ));
    out.push(SpeciesExpr::product(
        SpeciesExpr::from(Atom::Set),
        SpeciesExpr::from(Atom::Set),
    ));
    out.push(SpeciesExpr::compose(
        SpeciesExpr::from(Atom::Set),
        SpeciesExpr::weight("y", SpeciesExpr::from(Atom::Cycle)),
    ));
    out.push(SpeciesExpr::compose(
        SpeciesExpr::from(Atom::Set),
        SpeciesExpr::weight("y", SpeciesExpr::from(Atom::NonEmptySet)),
    ));
    out
}

/// Cross-checks of the symbolic side against enumeration, plus internal
/// identities of the cycle-index calculus.
pub fn kernel_suite(opts: &VerifyOptions) -> Vec<CheckResult> {
    let mut out = Vec::new();
    let max_n = opts.max_n;

    for e in kernel_agreement_expressions() {
        let name = format!("kernel/index-agreement/{e}");
        run_check(&mut out, name, || {
            let from_oracle =
                oracle::cycle_index_from_oracle(&e, max_n).map_err(|err| err.to_string())?;
            let from_kernel = cycle_index(&e, max_n as u32).map_err(|err| err.to_string())?;
            if from_oracle != from_kernel.0 {
                return Err(format!(
                    "indices disagree: enumeration gives {from_oracle}, calculus gives {}",
                    from_kernel.0
                ));
            }
            Ok(format!("cycle indices equal through degree {max_n}"))
        });
    }

    run_check(&mut out, "kernel/count-agreement", || {
        let mut compared = 0;
        for atom in Atom::catalog() {
            if matches!(atom, Atom::Graph) {
                continue;
            }
            let e = SpeciesExpr::from(atom);
            let labeled = egf_counts(&e, max_n).map_err(|err| err.to_string())?;
            let types = tgf_counts(&e, max_n).map_err(|err| err.to_string())?;
            for n in 0..=max_n {
                let report = orbit_report(&e, n).map_err(|err| err.to_string())?;
                if labeled[n] != rat(report.labeled_count as i64) {
                    return Err(format!(
                        "{e} at n={n}: series counts {} labeled structures, enumeration finds {}",
                        labeled[n], report.labeled_count
                    ));
                }
                if types[n] != rat(report.orbit_count as i64) {
                    return Err(format!(
                        "{e} at n={n}: series counts {} types, enumeration finds {}",
                        types[n], report.orbit_count
                    ));
                }
                compared += 1;
            }
        }
        Ok(format!("{compared} (expression, size) pairs agree on both counts"))
    });

    run_check(&mut out, "kernel/graph-orbits", || {
        let frozen: [u64; 7] = [1, 1, 2, 4, 11, 34, 156];
        let e = SpeciesExpr::from(Atom::Graph);
        let limit = max_n.min(oracle::MAX_POINTS_GRAPH);
        for (n, &expected_orbits) in frozen.iter().enumerate().take(limit + 1) {
            let report = orbit_report(&e, n).map_err(|err| err.to_string())?;
            if report.labeled_count != 1u64 << (n.saturating_sub(1) * n / 2) {
                return Err(format!(
                    "labeled graphs on {n} vertices: found {}, expected 2^C({n},2)",
                    report.labeled_count
                ));
            }
            if report.orbit_count != expected_orbits {
                return Err(format!(
                    "graph types on {n} vertices: found {}, expected {}",
                    report.orbit_count, expected_orbits
                ));
            }
        }
        Ok(format!("labeled and unlabeled graph counts agree for n <= {limit}"))
    });

    run_check(&mut out, "kernel/burnside", || {
        let mut verified = 0;
        for atom in Atom::catalog() {
            let e = SpeciesExpr::from(atom);
            let limit = if e.contains_graph() {
                max_n.min(oracle::MAX_POINTS_GRAPH)
            } else {
                max_n
            };
            for n in 0..=limit {
                let report = orbit_report(&e, n).map_err(|err| err.to_string())?;
                let mut total = BigInt::zero();
                for (parts, fix) in &report.fix_counts {
                    total += conjugacy_class_size(n, parts) * BigInt::from(*fix);
                }
                if total != BigInt::from(report.orbit_count) * factorial(n) {
                    return Err(format!(
                        "{e} at n={n}: fixed-point sum {total} != orbits * n!"
                    ));
                }
                verified += 1;
            }
        }
        Ok(format!("orbit count times n! equals the fixed-point sum in {verified} cases"))
    });

    run_check(&mut out, "kernel/fix-is-class-function", || {
        let limit = max_n.min(5);
        for atom in [Atom::Cycle, Atom::Partition, Atom::Permutation] {
            let e = SpeciesExpr::from(atom);
            for n in 0..=limit {
                let structs = enumerate(&e, n).map_err(|err| err.to_string())?;
                let mut by_type: BTreeMap<Vec<usize>, u64> = BTreeMap::new();
                for sigma in Permutation::all(n) {
                    let fix = structs
                        .iter()
                        .filter(|s| transport_on(&e, &sigma, s) == **s)
                        .count() as u64;
                    match by_type.get(&sigma.cycle_type()) {
                        None => {
                            by_type.insert(sigma.cycle_type(), fix);
                        }
                        Some(&prior) if prior != fix => {
                            return Err(format!(
                                "{e} at n={n}: two permutations of type {:?} fix {prior} and {fix} structures",
                                sigma.cycle_type()
                            ));
                        }
                        Some(_) => {}
                    }
                }
            }
        }
        Ok(format!("fixed-point counts constant on conjugacy classes for n <= {limit}"))
    });

    run_check(&mut out, "kernel/index-operations", || {
        let cap = max_n as u32;
        let ze = atom_cycle_index(&Atom::Set, cap).map_err(|e| e.to_string())?;
        let zl = atom_cycle_index(&Atom::Linear, cap).map_err(|e| e.to_string())?;
        let sum = cycle_index(
            &SpeciesExpr::sum(SpeciesExpr::from(Atom::Set), SpeciesExpr::from(Atom::Linear)),
            cap,
        )
        .map_err(|e| e.to_string())?;
        if sum.0 != &ze.0 + &zl.0 {
            return Err("index of a sum is not the sum of indices".to_string());
        }
        let product = cycle_index(
            &SpeciesExpr::product(SpeciesExpr::from(Atom::Set), SpeciesExpr::from(Atom::Linear)),
            cap,
        )
        .map_err(|e| e.to_string())?;
        if product.0 != &ze.0 * &zl.0 {
            return Err("index of a product is not the product of indices".to_string());
        }
        Ok("sum and product of species map to sum and product of indices".to_string())
    });

    run_check(&mut out, "kernel/product-convolution", || {
        // Labeled counts of F * G satisfy the binomial convolution, with the
        // factors' counts taken from closed forms.
        let count_of = |atom: &Atom, n: usize| -> BigUint {
            match atom {
                Atom::Set => BigUint::one(),
                Atom::Linear => factorial(n).to_biguint().unwrap(),
                Atom::Singleton => indicator(n == 1),
                _ => unreachable!(),
            }
        };
        let atoms = [Atom::Set, Atom::Linear, Atom::Singleton];
        let limit = max_n.min(8);
        for f in &atoms {
            for g in &atoms {
                let e = SpeciesExpr::product(SpeciesExpr::from(f.clone()), SpeciesExpr::from(g.clone()));
                let counts = egf_counts(&e, limit).map_err(|err| err.to_string())?;
                for (n, count) in counts.iter().enumerate() {
                    let expected: BigUint = (0..=n)
                        .map(|j| binomial(n, j) * count_of(f, j) * count_of(g, n - j))
                        .sum();
                    if *count != Rational::from(BigInt::from(expected.clone())) {
                        return Err(format!(
                            "{e} at n={n}: series gives {count}, convolution gives {expected}"
                        ));
                    }
                }
            }
        }
        Ok(format!("binomial convolution holds for 9 atom pairs, n <= {limit}"))
    });

    run_check(&mut out, "kernel/types-collapse", || {
        // Within one size, linear orders have one type, as do sets; cyclic
        // orders too. The type series of E, L coincide; E+, L+, C coincide.
        let limit = max_n;
        let te = tgf_counts(&SpeciesExpr::from(Atom::Set), limit).map_err(|e| e.to_string())?;
        let tl = tgf_counts(&SpeciesExpr::from(Atom::Linear), limit).map_err(|e| e.to_string())?;
        if te != tl {
            return Err("type series of E and L differ".to_string());
        }
        let tep = tgf_counts(&SpeciesExpr::from(Atom::NonEmptySet), limit).map_err(|e| e.to_string())?;
        let tlp = tgf_counts(&SpeciesExpr::from(Atom::NonEmptyLinear), limit).map_err(|e| e.to_string())?;
        let tc = tgf_counts(&SpeciesExpr::from(Atom::Cycle), limit).map_err(|e| e.to_string())?;
        if tep != tlp || tep != tc {
            return Err("type series of E+, L+, C differ".to_string());
        }
        Ok(format!("one type per size through degree {limit} in both groups"))
    });

    run_check(&mut out, "kernel/permutation-factorization", || {
        let cap = max_n.max(8) as u32;
        let zs = atom_cycle_index(&Atom::Permutation, cap).map_err(|e| e.to_string())?;
        let zd = atom_cycle_index(&Atom::Derangement, cap).map_err(|e| e.to_string())?;
        let ze = atom_cycle_index(&Atom::Set, cap).map_err(|e| e.to_string())?;
        if zs.0 != &zd.0 * &ze.0 {
            return Err("permutation index does not factor through derangements and sets".to_string());
        }
        Ok(format!("permutations factor as derangements times fixed-point sets at degree {cap}"))
    });

    run_check(&mut out, "kernel/derangement-formula", || {
        let limit = max_n.max(8);
        let counts =
            egf_counts(&SpeciesExpr::from(Atom::Derangement), limit).map_err(|e| e.to_string())?;
        for (n, count) in counts.iter().enumerate() {
            let formula: Rational = (0..=n)
                .map(|j| {
                    let sign = if j % 2 == 0 { rat(1) } else { rat(-1) };
                    sign * Rational::from(factorial(n) / factorial(j))
                })
                .sum();
            if *count != formula {
                return Err(format!(
                    "derangements at n={n}: series gives {count}, alternating sum gives {formula}"
                ));
            }
        }
        Ok(format!("alternating-sum formula matches for n <= {limit}"))
    });

    run_check(&mut out, "kernel/block-count-marks", || {
        let limit = max_n.min(6);
        let e = SpeciesExpr::compose(
            SpeciesExpr::from(Atom::Set),
            SpeciesExpr::weight("y", SpeciesExpr::from(Atom::NonEmptySet)),
        );
        let rows = crate::kernel::egf_coeffs(&e, limit).map_err(|err| err.to_string())?;
        for (n, row) in rows.iter().enumerate() {
            for k in 0..=n {
                let m = Monomial::var(VarId::mark("y"), k as u32);
                let got = row.coeff(&m).map_err(|err| err.to_string())?;
                let expected = Rational::from(BigInt::from(stirling2(n, k)));
                if got != expected {
                    return Err(format!(
                        "partitions of {n} into {k} blocks: series gives {got}, recurrence gives {expected}"
                    ));
                }
            }
        }
        Ok(format!("mark coefficients match second-kind Stirling numbers for n <= {limit}"))
    });

    run_check(&mut out, "kernel/cycle-count-marks", || {
        let limit = max_n.min(6);
        let e = SpeciesExpr::compose(
            SpeciesExpr::from(Atom::Set),
            SpeciesExpr::weight("y", SpeciesExpr::from(Atom::Cycle)),
        );
        let rows = crate::kernel::egf_coeffs(&e, limit).map_err(|err| err.to_string())?;
        for (n, row) in rows.iter().enumerate() {
            for k in 0..=n {
                let m = Monomial::var(VarId::mark("y"), k as u32);
                let got = row.coeff(&m).map_err(|err| err.to_string())?;
                let expected = Rational::from(BigInt::from(stirling1(n, k)));
                if got != expected {
                    return Err(format!(
                        "permutations of {n} with {k} cycles: series gives {got}, recurrence gives {expected}"
                    ));
                }
            }
        }
        Ok(format!("mark coefficients match first-kind Stirling numbers for n <= {limit}"))
    });

    if opts.inject_failure {
        run_check(&mut out, "kernel/self-test-corruption", || {
            // Corrupt the derangement index by one term and insist the
            // enumeration side notices. This check is supposed to fail.
            let e = SpeciesExpr::from(Atom::Derangement);
            let from_oracle =
                oracle::cycle_index_from_oracle(&e, 3).map_err(|err| err.to_string())?;
            let from_kernel = cycle_index(&e, 3).map_err(|err| err.to_string())?;
            let corruption = TruncatedSeries::term(
                Monomial::var(VarId::X(1), 3),
                frac(1, 6),
                from_kernel.0.caps(),
            );
            let corrupted = &from_kernel.0 + &corruption;
            if from_oracle != corrupted {
                return Err(format!(
                    "corrupted index detected: enumeration gives {from_oracle}, corrupted calculus gives {corrupted}"
                ));
            }
            Ok("corruption went unnoticed".to_string())
        });
    }

    out
}

// ---------------------------------------------------------------------------
// Two-sort suite.

type ClosedForm = fn(usize, usize) -> BigUint;

/// The four closed forms of one table row, as functions of `(n, k)`.
fn closed_forms(row: &str) -> (ClosedForm, ClosedForm, ClosedForm, ClosedForm) {
    fn surjective_compositions(n: usize, k: usize) -> BigUint {
        if k > n {
            return BigUint::zero();
        }
        if n == 0 {
            return indicator(k == 0);
        }
        binomial(n - 1, n - k)
    }
    fn multisets(n: usize, k: usize) -> BigUint {
        if n == 0 {
            return BigUint::one();
        }
        if k == 0 {
            return BigUint::zero();
        }
        binomial(n + k - 1, n)
    }
    match row {
        "X" => (
            |n, k| indicator(n == k) * factorial(n).to_biguint().unwrap(),
            |n, k| indicator(n == k),
            |n, k| indicator(n == k),
            |n, k| indicator(n == k),
        ),
        "1+X" => (
            |n, k| falling(k, n),
            |n, k| binomial(k, n),
            |n, k| indicator(n <= k),
            |n, k| indicator(n <= k),
        ),
        "E+" => (
            |n, k| stirling2(n, k) * factorial(k).to_biguint().unwrap(),
            surjective_compositions,
            stirling2,
            partitions_exact,
        ),
        "E" => (
            |n, k| power(k, n),
            multisets,
            |n, k| (0..=k).map(|j| stirling2(n, j)).sum(),
            partitions_at_most,
        ),
        "L+" => (
            |n, k| lah(n, k) * factorial(k).to_biguint().unwrap(),
            surjective_compositions,
            lah,
            partitions_exact,
        ),
        "L" => (
            |n, k| rising(k, n),
            multisets,
            |n, k| (0..=k).map(|j| lah(n, j)).sum(),
            partitions_at_most,
        ),
        "C" => (
            |n, k| stirling1(n, k) * factorial(k).to_biguint().unwrap(),
            surjective_compositions,
            stirling1,
            partitions_exact,
        ),
        _ => unreachable!("unknown table row"),
    }
}

fn compare_table(
    row: &str,
    which: &str,
    table: &CountTable,
    expected: ClosedForm,
) -> Result<(), String> {
    for (n, table_row) in table.iter().enumerate() {
        for (k, got) in table_row.iter().enumerate() {
            let want = expected(n, k);
            if *got != want {
                return Err(format!(
                    "row {row}, {which} at n={n}, k={k}: table gives {got}, closed form gives {want}"
                ));
            }
        }
    }
    Ok(())
}

fn entrywise_le(a: &CountTable, b: &CountTable) -> Result<(), (usize, usize)> {
    for (n, (ra, rb)) in a.iter().zip(b).enumerate() {
        for (k, (va, vb)) in ra.iter().zip(rb).enumerate() {
            if va > vb {
                return Err((n, k));
            }
        }
    }
    Ok(())
}

/// Checks of the two-sort counting tables: against the oracle, against
/// classical closed forms, and against the structural identities tying the
/// rows together.
pub fn twosort_suite(opts: &VerifyOptions) -> Vec<CheckResult> {
    let mut out = Vec::new();

    run_check(&mut out, "twosort/oracle-agreement", || {
        let n_max = opts.max_n.min(4);
        let k_max = 4usize;
        let mut compared = 0;
        for (name, expr) in family_rows(Family::TwentyTwo) {
            let r = EnrichmentSpec::new(expr);
            let fs = four_series(&r, n_max, k_max).map_err(|e| e.to_string())?;
            for n in 0..=n_max {
                for k in 0..=k_max {
                    let orbits = two_sort_orbits(&r.expr, n, k).map_err(|e| e.to_string())?;
                    let got = [
                        ("labeled", &fs.labeled[n][k], orbits.labeled),
                        ("types_x", &fs.types_x[n][k], orbits.types_x),
                        ("types_y", &fs.types_y[n][k], orbits.types_y),
                        ("types_both", &fs.types_both[n][k], orbits.types_both),
                    ];
                    for (which, series_count, oracle_count) in got {
                        if *series_count != BigUint::from(oracle_count) {
                            return Err(format!(
                                "row {name}, {which} at n={n}, k={k}: series gives {series_count}, enumeration gives {oracle_count}"
                            ));
                        }
                    }
                    compared += 1;
                }
            }
        }
        Ok(format!("{compared} (row, n, k) cells agree with enumerated orbits"))
    });

    run_check(&mut out, "twosort/burnside-two-sorts", || {
        let cases = [
            (EnrichmentSpec::from(Atom::Set), 3usize, 2usize),
            (EnrichmentSpec::from(Atom::NonEmptySet), 3, 3),
            (EnrichmentSpec::from(Atom::Linear), 2, 2),
        ];
        for (r, n, k) in cases {
            let structs = enumerate_two_sort(&r.expr, n, k).map_err(|e| e.to_string())?;
            let mut total = BigInt::zero();
            for sigma in Permutation::all(n) {
                for tau in Permutation::all(k) {
                    total += BigInt::from(
                        structs
                            .iter()
                            .filter(|s| two_sort_transport(&r.expr, &sigma, &tau, s) == **s)
                            .count(),
                    );
                }
            }
            let orbits = two_sort_orbits(&r.expr, n, k).map_err(|e| e.to_string())?;
            if total != BigInt::from(orbits.types_both) * factorial(n) * factorial(k) {
                return Err(format!(
                    "{} at n={n}, k={k}: fixed-point double sum {total} != orbits * n! k!",
                    r.expr
                ));
            }
        }
        Ok("double fixed-point sum equals orbit count times n! k! in 3 cases".to_string())
    });

    run_check(&mut out, "twosort/closed-forms", || {
        let n_max = 6usize;
        let k_max = 6usize;
        for (name, expr) in family_rows(Family::TwentyTwo) {
            let fs = four_series(&EnrichmentSpec::new(expr), n_max, k_max)
                .map_err(|e| e.to_string())?;
            let (labeled, types_x, types_y, types_both) = closed_forms(name);
            compare_table(name, "labeled", &fs.labeled, labeled)?;
            compare_table(name, "types_x", &fs.types_x, types_x)?;
            compare_table(name, "types_y", &fs.types_y, types_y)?;
            compare_table(name, "types_both", &fs.types_both, types_both)?;
        }
        Ok(format!("28 closed forms match through n, k <= {n_max}"))
    });

    run_check(&mut out, "twosort/sum-multiplicativity", || {
        let pairs = [
            (Atom::Singleton, Atom::NonEmptySet),
            (Atom::NonEmptySet, Atom::NonEmptyLinear),
        ];
        for (a, b) in pairs {
            let za = fun_cycle_index(&EnrichmentSpec::from(a.clone()), 5, 5)
                .map_err(|e| e.to_string())?;
            let zb = fun_cycle_index(&EnrichmentSpec::from(b.clone()), 5, 5)
                .map_err(|e| e.to_string())?;
            let sum = EnrichmentSpec::new(SpeciesExpr::sum(
                SpeciesExpr::from(a.clone()),
                SpeciesExpr::from(b.clone()),
            ));
            let zc = fun_cycle_index(&sum, 5, 5).map_err(|e| e.to_string())?;
            if zc.0 != &za.0 * &zb.0 {
                return Err(format!(
                    "index of {} is not the product of the summands' indices",
                    sum.expr
                ));
            }
        }
        Ok("enrichment sums multiply the two-sort indices (2 pairs)".to_string())
    });

    run_check(&mut out, "twosort/empty-fibre-factorization", || {
        // For R = R+ + 1 the index factors as Fun[R] = Fun[R+] * E(y), and
        // on tables: allowing empty fibres is a binomial transform over the
        // codomain (labeled sorts) or a prefix sum (unlabeled codomain).
        let n_max = 6usize;
        let k_max = 6usize;
        let pairs: [(&str, SpeciesExpr, &str, SpeciesExpr); 3] = [
            (
                "E",
                SpeciesExpr::from(Atom::Set),
                "E+",
                SpeciesExpr::from(Atom::NonEmptySet),
            ),
            (
                "L",
                SpeciesExpr::from(Atom::Linear),
                "L+",
                SpeciesExpr::from(Atom::NonEmptyLinear),
            ),
            (
                "1+X",
                SpeciesExpr::sum(SpeciesExpr::from(Atom::One), SpeciesExpr::from(Atom::Singleton)),
                "X",
                SpeciesExpr::from(Atom::Singleton),
            ),
        ];
        for (full_name, full, positive_name, positive) in pairs {
            // Index level.
            let z_full = fun_cycle_index(&EnrichmentSpec::new(full.clone()), 5, 5)
                .map_err(|e| e.to_string())?;
            let z_pos = fun_cycle_index(&EnrichmentSpec::new(positive.clone()), 5, 5)
                .map_err(|e| e.to_string())?;
            let z_one = fun_cycle_index(&EnrichmentSpec::from(Atom::One), 5, 5)
                .map_err(|e| e.to_string())?;
            if z_full.0 != &z_pos.0 * &z_one.0 {
                return Err(format!(
                    "index of {full_name}-enriched functions does not factor through {positive_name}"
                ));
            }
            // Table level.
            let t_full = four_series(&EnrichmentSpec::new(full), n_max, k_max)
                .map_err(|e| e.to_string())?;
            let t_pos = four_series(&EnrichmentSpec::new(positive), n_max, k_max)
                .map_err(|e| e.to_string())?;
            for n in 0..=n_max {
                for k in 0..=k_max {
                    let binom: BigUint =
                        (0..=k).map(|j| binomial(k, j) * t_pos.labeled[n][j].clone()).sum();
                    if t_full.labeled[n][k] != binom {
                        return Err(format!(
                            "labeled {full_name} at n={n}, k={k}: {} != binomial transform {binom}",
                            t_full.labeled[n][k]
                        ));
                    }
                    let binom_x: BigUint =
                        (0..=k).map(|j| binomial(k, j) * t_pos.types_x[n][j].clone()).sum();
                    if t_full.types_x[n][k] != binom_x {
                        return Err(format!(
                            "types_x {full_name} at n={n}, k={k}: {} != binomial transform {binom_x}",
                            t_full.types_x[n][k]
                        ));
                    }
                    let prefix_y: BigUint = (0..=k).map(|j| t_pos.types_y[n][j].clone()).sum();
                    if t_full.types_y[n][k] != prefix_y {
                        return Err(format!(
                            "types_y {full_name} at n={n}, k={k}: {} != prefix sum {prefix_y}",
                            t_full.types_y[n][k]
                        ));
                    }
                    let prefix_both: BigUint =
                        (0..=k).map(|j| t_pos.types_both[n][j].clone()).sum();
                    if t_full.types_both[n][k] != prefix_both {
                        return Err(format!(
                            "types_both {full_name} at n={n}, k={k}: {} != prefix sum {prefix_both}",
                            t_full.types_both[n][k]
                        ));
                    }
                }
            }
        }
        Ok("3 row pairs factor at the index level and transform at the table level".to_string())
    });

    run_check(&mut out, "twosort/partition-product-identity", || {
        let caps = Caps { x: 12, y: 12, mark: 0 };
        let one = TruncatedSeries::one(caps);
        let x1 = TruncatedSeries::x(1, caps);
        let y1 = TruncatedSeries::y(1, caps);
        let mut lhs = TruncatedSeries::one(caps);
        for k in 1..=12u32 {
            let factor = &one - &(&y1 * &x1.pow(k));
            lhs = &lhs * &factor.inv().map_err(|e| e.to_string())?;
        }
        let mut exponent = TruncatedSeries::zero(caps);
        for k in 1..=12u32 {
            let xk = x1.pow(k);
            let tail = (&one - &xk).inv().map_err(|e| e.to_string())?;
            let term = &(&y1.pow(k) * &xk) * &tail;
            exponent = &exponent + &term.scale(&frac(1, k as i64));
        }
        let rhs = exponent.exp().map_err(|e| e.to_string())?;
        if lhs != rhs {
            return Err("product and exponential sides disagree within the (12, 12) window".to_string());
        }
        Ok("product over part sizes equals its exponential form to degree (12, 12)".to_string())
    });

    run_check(&mut out, "twosort/component-marks", || {
        let limit = opts.max_n.min(6);
        let enrichments = [
            ("X", EnrichmentSpec::from(Atom::Singleton)),
            ("E+", EnrichmentSpec::from(Atom::NonEmptySet)),
            ("L+", EnrichmentSpec::from(Atom::NonEmptyLinear)),
            ("C", EnrichmentSpec::from(Atom::Cycle)),
        ];
        let spot_rows: [(&str, [u64; 4]); 4] = [
            ("X", [0, 0, 0, 1]),
            ("E+", [0, 1, 3, 1]),
            ("L+", [0, 6, 6, 1]),
            ("C", [0, 2, 3, 1]),
        ];
        for (name, r) in &enrichments {
            let rows = weighted_components(r, limit).map_err(|e| e.to_string())?;
            let spot = spot_rows
                .iter()
                .find(|(spot_name, _)| spot_name == name)
                .map(|(_, row)| row)
                .expect("spot row exists");
            for (k, want) in spot.iter().enumerate() {
                let m = Monomial::var(VarId::mark("y"), k as u32);
                let got = rows[3].coeff(&m).map_err(|e| e.to_string())?;
                if got != rat(*want as i64) {
                    return Err(format!(
                        "components of {name} at n=3, k={k}: routes agree on {got} but expected {want}"
                    ));
                }
            }
        }
        Ok(format!(
            "table and mark routes agree for 4 enrichments to n = {limit}, spot rows at n = 3 match"
        ))
    });

    run_check(&mut out, "twosort/monotonicity", || {
        let n_max = 5usize;
        let k_max = 5usize;
        for (name, expr) in family_rows(Family::TwentyTwo) {
            let fs = four_series(&EnrichmentSpec::new(expr), n_max, k_max)
                .map_err(|e| e.to_string())?;
            let FourSeries { labeled, types_x, types_y, types_both } = &fs;
            for (coarser, finer, relation) in [
                (types_x, labeled, "types_x <= labeled"),
                (types_y, labeled, "types_y <= labeled"),
                (types_both, types_x, "types_both <= types_x"),
                (types_both, types_y, "types_both <= types_y"),
            ] {
                if let Err((n, k)) = entrywise_le(coarser, finer) {
                    return Err(format!(
                        "row {name}: {relation} fails at n={n}, k={k}"
                    ));
                }
            }
        }
        Ok(format!("quotient counts are entrywise monotone for all rows, n, k <= {n_max}"))
    });

    out
}

// ---------------------------------------------------------------------------
// Naturality suite.

/// The explicit bijection from linear orders to `1 + X * L` structures:
/// an empty order maps to the left summand; a nonempty order splits into
/// its first point and the rest.
fn unfold_order(s: &Structure) -> Structure {
    let Structure::Order(v) = s else {
        unreachable!("unfolding applies to linear orders");
    };
    if v.is_empty() {
        Structure::Tagged(Side::Left, Box::new(Structure::Set(Default::default())))
    } else {
        Structure::Tagged(
            Side::Right,
            Box::new(Structure::Pair(
                Box::new(Structure::Set([v[0]].into())),
                Box::new(Structure::Order(v[1..].to_vec())),
            )),
        )
    }
}

/// The explicit encoding of a plain function as a set-enriched fibre
/// structure.
fn function_as_fibres(values: &[usize], k: usize) -> Structure {
    Structure::Fibres(
        (1..=k)
            .map(|v| {
                let fibre: std::collections::BTreeSet<usize> = (1..=values.len())
                    .filter(|&i| values[i - 1] == v)
                    .collect();
                (fibre.clone(), Structure::Set(fibre), v)
            })
            .collect(),
    )
}

/// Functor-law and naturality checks: the oracle's transports satisfy the
/// functor laws, and the classical structural bijections commute with
/// relabeling.
pub fn naturality_suite(opts: &VerifyOptions) -> Vec<CheckResult> {
    let mut out = Vec::new();

    let mut law_exprs: Vec<SpeciesExpr> =
        Atom::catalog().into_iter().map(SpeciesExpr::from).collect();
    law_exprs.push(SpeciesExpr::compose(
        SpeciesExpr::from(Atom::Set),
        SpeciesExpr::from(Atom::Cycle),
    ));
    law_exprs.push(SpeciesExpr::product(
        SpeciesExpr::from(Atom::Set),
        SpeciesExpr::from(Atom::Linear),
    ));
    law_exprs.push(SpeciesExpr::compose(
        SpeciesExpr::from(Atom::Set),
        SpeciesExpr::weight("y", SpeciesExpr::from(Atom::NonEmptySet)),
    ));

    for e in law_exprs {
        let name = format!("naturality/functor-laws/{e}");
        run_check(&mut out, name, || {
            let n = opts.max_n.min(5);
            let trials = 100;
            let report = oracle::functoriality_check(&e, n, trials, 0x5EED)
                .map_err(|err| err.to_string())?;
            if !report.passed() {
                return Err(report.failures.join("; "));
            }
            Ok(format!(
                "identity, composition and bijectivity hold on {} structures over {trials} seeded trials",
                report.structures
            ))
        });
    }

    run_check(&mut out, "naturality/order-unfolding", || {
        let limit = opts.max_n.min(4);
        let orders = SpeciesExpr::from(Atom::Linear);
        let unfolded = SpeciesExpr::sum(
            SpeciesExpr::from(Atom::One),
            SpeciesExpr::product(SpeciesExpr::from(Atom::Singleton), SpeciesExpr::from(Atom::Linear)),
        );
        for n in 0..=limit {
            let structs = enumerate(&orders, n).map_err(|e| e.to_string())?;
            for sigma in Permutation::all(n) {
                for s in &structs {
                    let lhs = unfold_order(&transport_on(&orders, &sigma, s));
                    let rhs = transport_on(&unfolded, &sigma, &unfold_order(s));
                    if lhs != rhs {
                        return Err(format!(
                            "unfolding is not natural at n={n}: order {s:?} under {sigma:?} gives {lhs:?} one way and {rhs:?} the other"
                        ));
                    }
                }
            }
        }
        Ok(format!(
            "first-point decomposition commutes with every relabeling for n <= {limit}"
        ))
    });

    run_check(&mut out, "naturality/function-fibres", || {
        let n_limit = opts.max_n.min(4);
        let k_limit = 3usize;
        let set = SpeciesExpr::from(Atom::Set);
        for n in 0..=n_limit {
            for k in 0..=k_limit {
                for values in functions(n, k) {
                    for sigma in Permutation::all(n) {
                        let sigma_inv = sigma.inverse();
                        for tau in Permutation::all(k) {
                            // Transport of the plain function...
                            let moved: Vec<usize> = (1..=n)
                                .map(|i| tau.apply(values[sigma_inv.apply(i) - 1]))
                                .collect();
                            let lhs = function_as_fibres(&moved, k);
                            // ...matches transport of its fibre encoding.
                            let rhs = two_sort_transport(
                                &set,
                                &sigma,
                                &tau,
                                &function_as_fibres(&values, k),
                            );
                            if lhs != rhs {
                                return Err(format!(
                                    "fibre encoding is not natural at n={n}, k={k} for {values:?}"
                                ));
                            }
                        }
                    }
                }
            }
        }
        Ok(format!(
            "fibre encoding commutes with all relabeling pairs for n <= {n_limit}, k <= {k_limit}"
        ))
    });

    out
}

/// All three suites, in order.
pub fn run_all(opts: &VerifyOptions) -> Vec<CheckResult> {
    let mut out = kernel_suite(opts);
    out.extend(twosort_suite(opts));
    out.extend(naturality_suite(opts));
    out
}
