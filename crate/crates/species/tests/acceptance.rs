//! Acceptance gate: ten end-to-end checks, one test and one PASS/FAIL line
//! each (visible with `--nocapture`). Expected values come from direct
//! recurrences implemented locally in this file, from closed-form series,
//! and from the brute-force enumeration oracle — never from the code under
//! test.

use std::collections::BTreeMap;
use std::panic::{catch_unwind, resume_unwind, AssertUnwindSafe};

use num::BigUint;
use species::kernel::{cycle_index, egf_counts, tgf_counts};
use species::oracle::{
    cycle_index_from_oracle, enumerate, functoriality_check, orbit_report, structure_weight,
};
use species::rational::{factorial, frac, rat};
use species::twosort::{
    twelvefold_table, weighted_components, EnrichmentSpec, Family, TableRow,
};
use species::verify::{naturality_suite, VerifyOptions};
use species::{Atom, Caps, Monomial, Rational, SpeciesExpr, TruncatedSeries, VarId};

fn criterion(number: u32, label: &str, body: impl FnOnce()) {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(()) => println!("PASS criterion {number:02}: {label}"),
        Err(cause) => {
            println!("FAIL criterion {number:02}: {label}");
            resume_unwind(cause);
        }
    }
}

// ---------------------------------------------------------------------------
// Reference arithmetic, by direct recurrence.
// ---------------------------------------------------------------------------

fn fact(n: usize) -> u64 {
    (1..=n as u64).product()
}

fn binom(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let mut row = vec![0u64; n + 1];
    row[0] = 1;
    for _ in 0..n {
        for j in (1..=n).rev() {
            row[j] += row[j - 1];
        }
    }
    row[k]
}

fn power(k: usize, n: usize) -> u64 {
    (k as u64).pow(n as u32)
}

fn falling(k: usize, n: usize) -> u64 {
    if n > k {
        return 0;
    }
    ((k - n + 1)..=k).map(|v| v as u64).product()
}

fn rising(k: usize, n: usize) -> u64 {
    if n == 0 {
        return 1;
    }
    (k..k + n).map(|v| v as u64).product::<u64>()
}

/// S(n,k) by S(n,k) = k S(n-1,k) + S(n-1,k-1).
fn stirling2(n: usize, k: usize) -> u64 {
    let mut row = vec![0u64; k + 1];
    row[0] = 1;
    for _ in 1..=n {
        for j in (1..=k).rev() {
            row[j] = j as u64 * row[j] + row[j - 1];
        }
        row[0] = 0;
    }
    row[k]
}

/// Unsigned c(n,k) by c(n,k) = (n-1) c(n-1,k) + c(n-1,k-1).
fn stirling1(n: usize, k: usize) -> u64 {
    let mut row = vec![0u64; k + 1];
    row[0] = 1;
    for m in 1..=n {
        for j in (1..=k).rev() {
            row[j] = (m as u64 - 1) * row[j] + row[j - 1];
        }
        row[0] = 0;
    }
    row[k]
}

/// L(n,k) by L(n,k) = L(n-1,k-1) + (n-1+k) L(n-1,k).
fn lah(n: usize, k: usize) -> u64 {
    let mut row = vec![0u64; k + 1];
    row[0] = 1;
    for m in 1..=n {
        for j in (1..=k).rev() {
            row[j] = row[j - 1] + (m as u64 - 1 + j as u64) * row[j];
        }
        row[0] = 0;
    }
    row[k]
}

/// Partitions of n into exactly k parts: p(n,k) = p(n-1,k-1) + p(n-k,k).
fn p_exact(n: usize, k: usize) -> u64 {
    if n == 0 && k == 0 {
        return 1;
    }
    if n == 0 || k == 0 || k > n {
        return 0;
    }
    p_exact(n - 1, k - 1) + p_exact(n - k, k)
}

fn p_atmost(n: usize, k: usize) -> u64 {
    (0..=k).map(|j| p_exact(n, j)).sum()
}

/// Compositions of n into exactly k positive parts.
fn compositions(n: usize, k: usize) -> u64 {
    if n == 0 {
        return u64::from(k == 0);
    }
    if k == 0 {
        return 0;
    }
    binom(n - 1, k - 1)
}

/// Multisets of size n over k colors.
fn multisets(n: usize, k: usize) -> u64 {
    if n == 0 {
        return 1;
    }
    if k == 0 {
        return 0;
    }
    binom(n + k - 1, n)
}

fn eq(n: usize, k: usize) -> u64 {
    u64::from(n == k)
}

fn le(n: usize, k: usize) -> u64 {
    u64::from(n <= k)
}

type Form = fn(usize, usize) -> u64;

/// The four closed forms (labeled, types_x, types_y, types_both) per row.
fn closed_forms(row: &str) -> (Form, Form, Form, Form) {
    match row {
        "X" => (
            (|n, k| fact(n) * eq(n, k)) as Form,
            eq as Form,
            eq as Form,
            eq as Form,
        ),
        "1+X" => (
            (|n, k| falling(k, n)) as Form,
            (|n, k| binom(k, n)) as Form,
            le as Form,
            le as Form,
        ),
        "E+" => (
            (|n, k| fact(k) * stirling2(n, k)) as Form,
            compositions as Form,
            stirling2 as Form,
            p_exact as Form,
        ),
        "E" => (
            (|n, k| power(k, n)) as Form,
            multisets as Form,
            (|n, k| (0..=k).map(|j| stirling2(n, j)).sum()) as Form,
            p_atmost as Form,
        ),
        "L+" => (
            (|n, k| fact(k) * lah(n, k)) as Form,
            compositions as Form,
            lah as Form,
            p_exact as Form,
        ),
        "L" => (
            (|n, k| rising(k, n)) as Form,
            multisets as Form,
            (|n, k| (0..=k).map(|j| lah(n, j)).sum()) as Form,
            p_atmost as Form,
        ),
        "C" => (
            (|n, k| fact(k) * stirling1(n, k)) as Form,
            compositions as Form,
            stirling1 as Form,
            p_exact as Form,
        ),
        other => panic!("no closed forms for row {other}"),
    }
}

fn assert_table_matches(row: &str, table_name: &str, got: &[Vec<BigUint>], form: Form) {
    for (n, counts) in got.iter().enumerate() {
        for (k, v) in counts.iter().enumerate() {
            let want = BigUint::from(form(n, k));
            assert_eq!(
                *v, want,
                "row {row}, table {table_name}, n={n}, k={k}: got {v}, want {want}"
            );
        }
    }
}

fn check_rows_against_closed_forms(rows: &[TableRow]) {
    for row in rows {
        let (labeled, types_x, types_y, types_both) = closed_forms(&row.r);
        assert_table_matches(&row.r, "labeled", &row.series.labeled, labeled);
        assert_table_matches(&row.r, "types_x", &row.series.types_x, types_x);
        assert_table_matches(&row.r, "types_y", &row.series.types_y, types_y);
        assert_table_matches(&row.r, "types_both", &row.series.types_both, types_both);
    }
}

fn x1pow(e: u32) -> Monomial {
    Monomial::var(VarId::X(1), e)
}

// ---------------------------------------------------------------------------
// The ten criteria.
// ---------------------------------------------------------------------------

#[test]
fn acceptance_01_twelvefold_closed_forms() {
    criterion(1, "twelvefold tables equal direct recurrences for n,k <= 6", || {
        let rows = twelvefold_table(6, 6, Family::Twelve).unwrap();
        let names: Vec<&str> = rows.iter().map(|r| r.r.as_str()).collect();
        assert_eq!(names, ["1+X", "E+", "E"]);
        check_rows_against_closed_forms(&rows);
    });
}

#[test]
fn acceptance_02_spot_values() {
    criterion(2, "pair/singleton/list indices and the 27/10/5 function counts", || {
        // Z of the two-element-set species: (x1^2 + x2)/2.
        let z = cycle_index(&SpeciesExpr::from(Atom::SetOfSize(2)), 2).unwrap().0;
        assert_eq!(z.num_terms(), 2);
        assert_eq!(z.coeff(&x1pow(2)).unwrap(), frac(1, 2));
        assert_eq!(z.coeff(&Monomial::var(VarId::X(2), 1)).unwrap(), frac(1, 2));

        // Z of the singleton species: exactly x1.
        let z = cycle_index(&SpeciesExpr::from(Atom::Singleton), 5).unwrap().0;
        assert_eq!(z.num_terms(), 1);
        assert_eq!(z.coeff(&x1pow(1)).unwrap(), rat(1));

        // Z of linear orders: the geometric window 1 + x1 + x1^2 + ...
        let z = cycle_index(&SpeciesExpr::from(Atom::Linear), 6).unwrap().0;
        assert_eq!(z.num_terms(), 7);
        for e in 0..=6 {
            assert_eq!(z.coeff(&x1pow(e)).unwrap(), rat(1), "x1^{e}");
        }

        // Unlabeled pairs drawn from singletons-or-doubletons: x^2 + x^3 + x^4.
        let inner = SpeciesExpr::sum(
            SpeciesExpr::from(Atom::Singleton),
            SpeciesExpr::product(
                SpeciesExpr::from(Atom::Singleton),
                SpeciesExpr::from(Atom::Singleton),
            ),
        );
        let e2_of = SpeciesExpr::compose(SpeciesExpr::from(Atom::SetOfSize(2)), inner);
        let tgf = tgf_counts(&e2_of, 5).unwrap();
        let expected: Vec<Rational> = [0, 0, 1, 1, 1, 0].iter().map(|&v| rat(v)).collect();
        assert_eq!(tgf, expected);

        // Functions from 3 points to 3 points: 27 labeled, 10 up to domain
        // relabeling, 5 up to codomain relabeling.
        let phi = species::twosort::four_series(&EnrichmentSpec::from(Atom::Set), 3, 3).unwrap();
        assert_eq!(phi.labeled[3][3], BigUint::from(27u32));
        assert_eq!(phi.types_x[3][3], BigUint::from(10u32));
        assert_eq!(phi.types_y[3][3], BigUint::from(5u32));
    });
}

#[test]
fn acceptance_03_series_windows_to_degree_10() {
    criterion(3, "labeled and unlabeled count windows to degree 10 for all seven rows", || {
        let n_max = 10;
        let one_plus_x =
            SpeciesExpr::sum(SpeciesExpr::from(Atom::One), SpeciesExpr::from(Atom::Singleton));
        let rows: Vec<(SpeciesExpr, Vec<u64>, Vec<u64>)> = vec![
            (
                SpeciesExpr::from(Atom::Singleton),
                (0..=n_max).map(|n| u64::from(n == 1)).collect(),
                (0..=n_max).map(|n| u64::from(n == 1)).collect(),
            ),
            (
                one_plus_x,
                (0..=n_max).map(|n| u64::from(n <= 1)).collect(),
                (0..=n_max).map(|n| u64::from(n <= 1)).collect(),
            ),
            (
                SpeciesExpr::from(Atom::NonEmptySet),
                (0..=n_max).map(|n| u64::from(n >= 1)).collect(),
                (0..=n_max).map(|n| u64::from(n >= 1)).collect(),
            ),
            (
                SpeciesExpr::from(Atom::Set),
                vec![1; n_max + 1],
                vec![1; n_max + 1],
            ),
            (
                SpeciesExpr::from(Atom::NonEmptyLinear),
                (0..=n_max).map(|n| if n == 0 { 0 } else { fact(n) }).collect(),
                (0..=n_max).map(|n| u64::from(n >= 1)).collect(),
            ),
            (
                SpeciesExpr::from(Atom::Linear),
                (0..=n_max).map(fact).collect(),
                vec![1; n_max + 1],
            ),
            (
                SpeciesExpr::from(Atom::Cycle),
                (0..=n_max).map(|n| if n == 0 { 0 } else { fact(n - 1) }).collect(),
                (0..=n_max).map(|n| u64::from(n >= 1)).collect(),
            ),
        ];
        for (expr, labeled, unlabeled) in &rows {
            let egf = egf_counts(expr, n_max).unwrap();
            let tgf = tgf_counts(expr, n_max).unwrap();
            let want_egf: Vec<Rational> = labeled.iter().map(|&v| rat(v as i64)).collect();
            let want_tgf: Vec<Rational> = unlabeled.iter().map(|&v| rat(v as i64)).collect();
            assert_eq!(egf, want_egf, "labeled counts for {expr}");
            assert_eq!(tgf, want_tgf, "unlabeled counts for {expr}");
        }

        // Type equalities across rows: sets ~ lists, and the three
        // one-type-per-size rows agree.
        let tgf_of = |a: Atom| tgf_counts(&SpeciesExpr::from(a), n_max).unwrap();
        assert_eq!(tgf_of(Atom::Set), tgf_of(Atom::Linear));
        assert_eq!(tgf_of(Atom::NonEmptySet), tgf_of(Atom::NonEmptyLinear));
        assert_eq!(tgf_of(Atom::NonEmptySet), tgf_of(Atom::Cycle));
    });
}

#[test]
fn acceptance_04_twentytwofold_to_degree_8() {
    criterion(4, "all four tables for the seven-row family match recurrences at 8x8", || {
        let rows = twelvefold_table(8, 8, Family::TwentyTwo).unwrap();
        let names: Vec<&str> = rows.iter().map(|r| r.r.as_str()).collect();
        assert_eq!(names, ["X", "1+X", "E+", "E", "L+", "L", "C"]);
        check_rows_against_closed_forms(&rows);

        let by_name: BTreeMap<&str, &TableRow> =
            rows.iter().map(|r| (r.r.as_str(), r)).collect();

        // Empty-fibre factorization: a row with empty fibres allowed is its
        // nonempty-fibre variant times a free set of unused codomain points.
        // Labeled and types_x transform binomially in k; types_y and
        // types_both are prefix sums in k.
        for (full, plus) in [("E", "E+"), ("L", "L+"), ("1+X", "X")] {
            let full_row = by_name[full];
            let plus_row = by_name[plus];
            let views = [
                ("labeled", &full_row.series.labeled, &plus_row.series.labeled, true),
                ("types_x", &full_row.series.types_x, &plus_row.series.types_x, true),
                ("types_y", &full_row.series.types_y, &plus_row.series.types_y, false),
                ("types_both", &full_row.series.types_both, &plus_row.series.types_both, false),
            ];
            for (table_name, full_t, plus_t, binomial) in views {
                for (n, full_counts) in full_t.iter().enumerate() {
                    for (k, got) in full_counts.iter().enumerate() {
                        let want: BigUint = (0..=k)
                            .map(|j| {
                                if binomial {
                                    BigUint::from(binom(k, j)) * &plus_t[n][j]
                                } else {
                                    plus_t[n][j].clone()
                                }
                            })
                            .sum();
                        assert_eq!(
                            *got, want,
                            "{table_name} factorization, {full} vs {plus}, n={n} k={k}"
                        );
                    }
                }
            }
        }

        // The three nonempty-fibre rows share their unlabeled-domain tables:
        // once points in a fibre lose their labels, orders and cycles on the
        // fibre collapse to its size.
        for alias in ["L+", "C"] {
            assert_eq!(
                by_name[alias].series.types_x, by_name["E+"].series.types_x,
                "types_x of {alias} vs E+"
            );
            assert_eq!(
                by_name[alias].series.types_both, by_name["E+"].series.types_both,
                "types_both of {alias} vs E+"
            );
        }
    });
}

#[test]
fn acceptance_05_oracle_equivalence() {
    criterion(5, "enumeration oracle and series calculus agree for n <= 6", || {
        let mut exprs: Vec<SpeciesExpr> = Atom::catalog()
            .into_iter()
            .filter(|a| *a != Atom::Graph)
            .map(SpeciesExpr::from)
            .collect();
        exprs.push(SpeciesExpr::compose(
            SpeciesExpr::from(Atom::Set),
            SpeciesExpr::from(Atom::NonEmptySet),
        ));
        exprs.push(SpeciesExpr::compose(
            SpeciesExpr::from(Atom::Linear),
            SpeciesExpr::from(Atom::NonEmptySet),
        ));
        exprs.push(SpeciesExpr::compose(
            SpeciesExpr::from(Atom::Set),
            SpeciesExpr::from(Atom::Cycle),
        ));
        exprs.push(SpeciesExpr::product(
            SpeciesExpr::from(Atom::Set),
            SpeciesExpr::from(Atom::Set),
        ));
        exprs.push(SpeciesExpr::compose(
            SpeciesExpr::from(Atom::Set),
            SpeciesExpr::weight("y", SpeciesExpr::from(Atom::NonEmptySet)),
        ));
        exprs.push(SpeciesExpr::compose(
            SpeciesExpr::from(Atom::Set),
            SpeciesExpr::weight("y", SpeciesExpr::from(Atom::Cycle)),
        ));

        for expr in &exprs {
            let from_oracle = cycle_index_from_oracle(expr, 6).unwrap();
            let from_kernel = cycle_index(expr, 6).unwrap().0;
            assert_eq!(from_oracle, from_kernel, "cycle index of {expr}");

            if !expr.contains_weight() {
                let egf = egf_counts(expr, 6).unwrap();
                let tgf = tgf_counts(expr, 6).unwrap();
                for n in 0..=6usize {
                    let report = orbit_report(expr, n).unwrap();
                    assert_eq!(
                        rat(report.labeled_count as i64),
                        egf[n],
                        "labeled count of {expr} at n={n}"
                    );
                    assert_eq!(
                        rat(report.orbit_count as i64),
                        tgf[n],
                        "orbit count of {expr} at n={n}"
                    );
                }
            }
        }

        // Graphs have no closed cycle index here; the oracle itself is the
        // authority, and its orbit counts must be stable across runs.
        let expected_graph_orbits: [u64; 7] = [1, 1, 2, 4, 11, 34, 156];
        for run in 0..2 {
            for (n, want) in expected_graph_orbits.iter().enumerate() {
                let report = orbit_report(&SpeciesExpr::from(Atom::Graph), n).unwrap();
                let edge_pairs = n.saturating_sub(1) * n / 2;
                assert_eq!(report.labeled_count, 1u64 << edge_pairs, "labeled graphs, n={n}");
                assert_eq!(report.orbit_count, *want, "graph orbits, n={n}, run {run}");
            }
        }
    });
}

#[test]
fn acceptance_06_partition_product_identity() {
    criterion(6, "both expansions of the partition product agree to degree 12", || {
        let caps = Caps { x: 12, y: 12, mark: 0 };
        let one = TruncatedSeries::one(caps);
        let y1 = TruncatedSeries::y(1, caps);

        // Product side: one geometric factor per part size.
        let mut lhs = one.clone();
        for k in 1..=12u32 {
            let xk = TruncatedSeries::term(x1pow(k), rat(1), caps);
            let factor = (&one - &(&y1 * &xk)).inv().unwrap();
            lhs = &lhs * &factor;
        }

        // Exponential side: exp of the part-size sum.
        let mut exponent = TruncatedSeries::zero(caps);
        for k in 1..=12u32 {
            let xk = TruncatedSeries::term(x1pow(k), rat(1), caps);
            let yk = TruncatedSeries::term(Monomial::var(VarId::Y(1), k), frac(1, k as i64), caps);
            let geometric = (&one - &xk).inv().unwrap();
            exponent = &exponent + &(&(&yk * &xk) * &geometric);
        }
        let rhs = exponent.exp().unwrap();

        assert_eq!(lhs, rhs);

        // Ground truth anchors: the coefficient of y^j x^n counts partitions
        // of n into exactly j parts.
        for (n, j) in [(6u32, 3u32), (8, 2), (12, 5), (12, 12), (5, 0)] {
            let m = Monomial::from_pairs([(VarId::X(1), n), (VarId::Y(1), j)]);
            assert_eq!(
                lhs.coeff(&m).unwrap(),
                rat(p_exact(n as usize, j as usize) as i64),
                "partitions of {n} into {j} parts"
            );
        }
    });
}

#[test]
fn acceptance_07_plethysm_consistency() {
    criterion(7, "permutations factor as sets of cycles in all three views", || {
        let e_of_c = SpeciesExpr::compose(
            SpeciesExpr::from(Atom::Set),
            SpeciesExpr::from(Atom::Cycle),
        );

        // Z of E(C) is the product of geometric factors, one per variable.
        let caps = Caps::uniform(10);
        let one = TruncatedSeries::one(caps);
        let mut product = one.clone();
        for k in 1..=10u32 {
            let xk = TruncatedSeries::term(Monomial::var(VarId::X(k), 1), rat(1), caps);
            product = &product * &(&one - &xk).inv().unwrap();
        }
        let z_e_of_c = cycle_index(&e_of_c, 10).unwrap().0;
        assert_eq!(z_e_of_c, product);

        // It also equals the oracle's cycle index of the permutation atom.
        let z_perm_oracle = cycle_index_from_oracle(&SpeciesExpr::from(Atom::Permutation), 6).unwrap();
        let z_e_of_c_small = cycle_index(&e_of_c, 6).unwrap().0;
        assert_eq!(z_perm_oracle, z_e_of_c_small);

        // And permutations factor as derangements times sets.
        let z_s = cycle_index(&SpeciesExpr::from(Atom::Permutation), 10).unwrap().0;
        let z_e = cycle_index(&SpeciesExpr::from(Atom::Set), 10).unwrap().0;
        let z_der = cycle_index(&SpeciesExpr::from(Atom::Derangement), 10).unwrap().0;
        assert_eq!(z_s, &z_e * &z_der);
    });
}

#[test]
fn acceptance_08_derangement_series() {
    criterion(8, "derangement counts match the alternating sum and the oracle", || {
        let egf = egf_counts(&SpeciesExpr::from(Atom::Derangement), 8).unwrap();
        for (n, count) in egf.iter().enumerate() {
            let alternating: Rational = (0..=n)
                .map(|j| {
                    let sign = if j % 2 == 0 { 1 } else { -1 };
                    Rational::new(rat(sign).numer().clone(), factorial(j))
                })
                .sum();
            let want = Rational::from(factorial(n)) * alternating;
            assert_eq!(*count, want, "n={n}");
        }
        for (n, count) in egf.iter().take(7).enumerate() {
            let structs = enumerate(&SpeciesExpr::from(Atom::Derangement), n).unwrap();
            assert_eq!(&rat(structs.len() as i64), count, "oracle count at n={n}");
        }
    });
}

#[test]
fn acceptance_09_functoriality_and_naturality() {
    criterion(9, "random transport trials and both naturality squares pass", || {
        for atom in Atom::catalog() {
            let expr = SpeciesExpr::from(atom.clone());
            for n in 0..=5usize {
                let report = functoriality_check(&expr, n, 100, 0xACCE97).unwrap();
                assert!(
                    report.passed(),
                    "transport laws for {expr} at n={n}: {:?}",
                    report.failures
                );
            }
        }

        let results = naturality_suite(&VerifyOptions { max_n: 5, inject_failure: false });
        assert!(!results.is_empty());
        for check in &results {
            assert!(check.passed, "{}: {}", check.name, check.details);
        }
        let names: Vec<&str> = results.iter().map(|c| c.name.as_str()).collect();
        assert!(names.contains(&"naturality/order-unfolding"), "{names:?}");
        assert!(names.contains(&"naturality/function-fibres"), "{names:?}");
    });
}

#[test]
fn acceptance_10_component_count_marks() {
    criterion(10, "component-count polynomials agree across routes and with the oracle", || {
        let mark = VarId::mark("y");
        let cases: [(Atom, [u64; 4]); 4] = [
            (Atom::Singleton, [0, 0, 0, 1]),
            (Atom::NonEmptySet, [0, 1, 3, 1]),
            (Atom::NonEmptyLinear, [0, 6, 6, 1]),
            (Atom::Cycle, [0, 2, 3, 1]),
        ];
        for (atom, row3) in &cases {
            let rc = SpeciesExpr::from(atom.clone());
            // weighted_components itself recomputes via two routes and
            // errors on any disagreement.
            let rows = weighted_components(&EnrichmentSpec::new(rc.clone()), 6).unwrap();
            assert_eq!(rows.len(), 7);

            // Oracle tally: enumerate structures of E(y*rc) and bucket by
            // the number of marked components.
            let marked = SpeciesExpr::compose(
                SpeciesExpr::from(Atom::Set),
                SpeciesExpr::weight("y", rc.clone()),
            );
            for (n, row) in rows.iter().enumerate() {
                let mut tally = vec![0u64; n + 1];
                for s in enumerate(&marked, n).unwrap() {
                    let blocks = structure_weight(&marked, &s).exponent_of(&mark) as usize;
                    tally[blocks] += 1;
                }
                for (k, &count) in tally.iter().enumerate() {
                    let got = row.coeff(&Monomial::var(mark.clone(), k as u32)).unwrap();
                    assert_eq!(
                        got,
                        rat(count as i64),
                        "components of {rc} at n={n}, k={k}"
                    );
                }
            }

            // Frozen spot row at n = 3.
            for (k, want) in row3.iter().enumerate() {
                let got = rows[3].coeff(&Monomial::var(mark.clone(), k as u32)).unwrap();
                assert_eq!(got, rat(*want as i64), "row 3 of {rc}, k={k}");
            }
        }
    });
}
