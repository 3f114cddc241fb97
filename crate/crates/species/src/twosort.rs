//! Counting functions between two label sorts with enriched fibres.
//!
//! Fix a species `R` with at least one structure on some finite set. An
//! `R`-enriched function from an `n`-point domain to a `k`-point codomain is
//! a function together with an `R`-structure on each of its fibres. The
//! cycle index of this two-sort species lives in the variables `x1, x2, ...`
//! (domain) and `y1, y2, ...` (codomain):
//!
//! ```text
//! Z(x; y) = exp( sum_{k >= 1} (y_k / k) * Z_R(x_k, x_2k, x_3k, ...) )
//! ```
//!
//! Substituting away the higher variables in each sort independently yields
//! four counting series at once — both sorts labeled, domain unlabeled,
//! codomain unlabeled, or both unlabeled — which is where the classical
//! twelvefold way (and its larger cousins) comes from: each choice of `R`
//! from a catalog row gives one row of the table, and the four
//! specializations give its columns.

use num::{BigUint, Signed, Zero};
use thiserror::Error;

use crate::expr::{Atom, SpeciesExpr};
use crate::kernel::{cycle_index, egf_coeffs, KernelError};
use crate::rational::{factorial, frac, Rational};
use crate::series::{Assignment, Caps, Monomial, SeriesError, TruncatedSeries, VarId};

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum TwoSortError {
    #[error("table entry at n={n}, k={k} is not a nonnegative integer: {value}")]
    NonIntegerEntry { n: usize, k: usize, value: String },
    #[error("weighted enrichments have no plain counting table")]
    WeightedEnrichment,
    #[error("component series disagree at n={n}: table route gives {table_route}, weighted route gives {weighted_route}")]
    ComponentsMismatch {
        n: usize,
        table_route: String,
        weighted_route: String,
    },
    #[error(transparent)]
    Kernel(#[from] KernelError),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// The fibre enrichment: any species expression. A type of its own mostly
/// to keep call sites honest about which argument is the enrichment.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EnrichmentSpec {
    pub expr: SpeciesExpr,
}

impl EnrichmentSpec {
    pub fn new(expr: SpeciesExpr) -> Self {
        EnrichmentSpec { expr }
    }
}

impl From<SpeciesExpr> for EnrichmentSpec {
    fn from(expr: SpeciesExpr) -> Self {
        EnrichmentSpec { expr }
    }
}

impl From<Atom> for EnrichmentSpec {
    fn from(atom: Atom) -> Self {
        EnrichmentSpec { expr: SpeciesExpr::from(atom) }
    }
}

/// A two-sort cycle index, in `x` variables (domain sort) and `y` variables
/// (codomain sort).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TwoSortCycleIndex(pub TruncatedSeries);

/// The cycle index of `R`-enriched functions, truncated at degree `cap_x`
/// in the domain variables and `cap_y` in the codomain variables.
///
/// Each codomain cycle of length `k` carries, independently, one orbit of
/// fibres; summing over cycles and exponentiating gives
/// `exp(sum_k (y_k/k) Z_R(x_k, x_2k, ...))`.
pub fn fun_cycle_index(
    r: &EnrichmentSpec,
    cap_x: u32,
    cap_y: u32,
) -> Result<TwoSortCycleIndex, TwoSortError> {
    let zr = cycle_index(&r.expr, cap_x)?;
    let base = zr.0.with_y_cap(cap_y);
    let caps = base.caps();
    let mut exponent = TruncatedSeries::zero(caps);
    for k in 1..=cap_y {
        let stretched = base.stretch(k)?;
        let y_factor = TruncatedSeries::y(k, caps).scale(&frac(1, k as i64));
        exponent = &exponent + &(&y_factor * &stretched);
    }
    Ok(TwoSortCycleIndex(exponent.exp()?))
}

/// A table of exact nonnegative counts, indexed `[n][k]`.
pub type CountTable = Vec<Vec<BigUint>>;

/// The four counting tables of one enrichment, indexed `[n][k]` by domain
/// and codomain size.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FourSeries {
    /// Both sorts labeled.
    pub labeled: CountTable,
    /// Domain unlabeled, codomain labeled.
    pub types_x: CountTable,
    /// Domain labeled, codomain unlabeled.
    pub types_y: CountTable,
    /// Both sorts unlabeled.
    pub types_both: CountTable,
}

fn specialize(z: &TruncatedSeries, collapse_x: bool, collapse_y: bool) -> TruncatedSeries {
    let caps = z.caps();
    let mut assign = Assignment::new();
    if collapse_x {
        for i in 1..=caps.x {
            assign.insert(VarId::X(i), TruncatedSeries::x(1, caps).pow(i));
        }
    } else {
        assign.insert(VarId::X(1), TruncatedSeries::x(1, caps));
    }
    if collapse_y {
        for j in 1..=caps.y {
            assign.insert(VarId::Y(j), TruncatedSeries::y(1, caps).pow(j));
        }
    } else {
        assign.insert(VarId::Y(1), TruncatedSeries::y(1, caps));
    }
    z.substitute(&assign)
}

fn entry_to_count(value: &Rational, n: usize, k: usize) -> Result<BigUint, TwoSortError> {
    if !value.is_integer() || value.is_negative() {
        return Err(TwoSortError::NonIntegerEntry {
            n,
            k,
            value: value.to_string(),
        });
    }
    Ok(value
        .to_integer()
        .to_biguint()
        .expect("nonnegative integer converts"))
}

fn extract_table(
    series: &TruncatedSeries,
    n_max: usize,
    k_max: usize,
    scale_n: bool,
    scale_k: bool,
) -> Result<CountTable, TwoSortError> {
    let mut table = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let mut row = Vec::with_capacity(k_max + 1);
        for k in 0..=k_max {
            let m = Monomial::from_pairs([(VarId::X(1), n as u32), (VarId::Y(1), k as u32)]);
            let mut value = series.coeff(&m)?;
            if scale_n {
                value *= Rational::from(factorial(n));
            }
            if scale_k {
                value *= Rational::from(factorial(k));
            }
            row.push(entry_to_count(&value, n, k)?);
        }
        table.push(row);
    }
    Ok(table)
}

/// Compute all four counting tables for the enrichment up to domain size
/// `n_max` and codomain size `k_max`. Fails on weighted enrichments, whose
/// counts are polynomials rather than numbers.
pub fn four_series(
    r: &EnrichmentSpec,
    n_max: usize,
    k_max: usize,
) -> Result<FourSeries, TwoSortError> {
    if r.expr.contains_weight() {
        return Err(TwoSortError::WeightedEnrichment);
    }
    let z = fun_cycle_index(r, n_max as u32, k_max as u32)?;
    Ok(FourSeries {
        labeled: extract_table(&specialize(&z.0, false, false), n_max, k_max, true, true)?,
        types_x: extract_table(&specialize(&z.0, true, false), n_max, k_max, false, true)?,
        types_y: extract_table(&specialize(&z.0, false, true), n_max, k_max, true, false)?,
        types_both: extract_table(&specialize(&z.0, true, true), n_max, k_max, false, false)?,
    })
}

/// Which catalog of enrichment rows a table should carry.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Family {
    /// The classical three rows: fibres of size at most one (`1+X`),
    /// nonempty fibres (`E+`), and unconstrained fibres (`E`).
    Twelve,
    /// Adds the singleton row `X` and the ordered-fibre rows `L+`, `L`.
    Twenty,
    /// Adds the cyclically-ordered fibre row `C`.
    TwentyTwo,
}

/// The enrichment rows of a family, in display order.
pub fn family_rows(family: Family) -> Vec<(&'static str, SpeciesExpr)> {
    let x = || SpeciesExpr::from(Atom::Singleton);
    let one_plus_x = || SpeciesExpr::sum(SpeciesExpr::from(Atom::One), x());
    let mut rows: Vec<(&'static str, SpeciesExpr)> = Vec::new();
    if family != Family::Twelve {
        rows.push(("X", x()));
    }
    rows.push(("1+X", one_plus_x()));
    rows.push(("E+", SpeciesExpr::from(Atom::NonEmptySet)));
    rows.push(("E", SpeciesExpr::from(Atom::Set)));
    if family != Family::Twelve {
        rows.push(("L+", SpeciesExpr::from(Atom::NonEmptyLinear)));
        rows.push(("L", SpeciesExpr::from(Atom::Linear)));
    }
    if family == Family::TwentyTwo {
        rows.push(("C", SpeciesExpr::from(Atom::Cycle)));
    }
    rows
}

/// One table row: the enrichment's display name and its four counting tables.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TableRow {
    pub r: String,
    pub series: FourSeries,
}

/// The full counting table of a family, every row's four series computed up
/// to `(n_max, k_max)`.
pub fn twelvefold_table(
    n_max: usize,
    k_max: usize,
    family: Family,
) -> Result<Vec<TableRow>, TwoSortError> {
    family_rows(family)
        .into_iter()
        .map(|(name, expr)| {
            Ok(TableRow {
                r: name.to_string(),
                series: four_series(&EnrichmentSpec::new(expr), n_max, k_max)?,
            })
        })
        .collect()
}

/// Counting series of `E(y * R)`-structures by number of components, computed
/// two independent ways and cross-checked term by term:
///
/// - from the `types_y` table of `R`-enriched functions, reading row `n`
///   as the polynomial `sum_k count[n][k] y^k` (a codomain point is a
///   component slot, and unlabeling the codomain forgets which is which);
/// - from the labeled counting series of the one-sort species `E(y R)`,
///   where the mark `y` ticks once per component.
///
/// Returns one mark polynomial per size `n`, or the first disagreement as
/// an error. The enrichment must have no structure on the empty set.
pub fn weighted_components(
    rc: &EnrichmentSpec,
    n_max: usize,
) -> Result<Vec<TruncatedSeries>, TwoSortError> {
    if rc.expr.contains_weight() {
        return Err(TwoSortError::WeightedEnrichment);
    }
    let z_rc = cycle_index(&rc.expr, n_max as u32)?;
    if !z_rc.0.constant_term().is_zero() {
        return Err(TwoSortError::Kernel(KernelError::ComposeInnerConstant));
    }

    let tables = four_series(rc, n_max, n_max)?;
    let caps = Caps::uniform(n_max as u32);
    let y = VarId::mark("y");
    let table_route: Vec<TruncatedSeries> = (0..=n_max)
        .map(|n| {
            let mut poly = TruncatedSeries::zero(caps);
            for (k, count) in tables.types_y[n].iter().enumerate() {
                if count.is_zero() {
                    continue;
                }
                let coeff = Rational::from(num::BigInt::from(count.clone()));
                let m = Monomial::var(y.clone(), k as u32);
                poly = &poly + &TruncatedSeries::term(m, coeff, caps);
            }
            poly
        })
        .collect();

    let weighted = SpeciesExpr::compose(
        SpeciesExpr::from(Atom::Set),
        SpeciesExpr::weight("y", rc.expr.clone()),
    );
    let weighted_route = egf_coeffs(&weighted, n_max)?;

    for n in 0..=n_max {
        if table_route[n] != weighted_route[n] {
            return Err(TwoSortError::ComponentsMismatch {
                n,
                table_route: table_route[n].to_string(),
                weighted_route: weighted_route[n].to_string(),
            });
        }
    }
    Ok(table_route)
}
