//! Cycle indices of species expressions, and the counting series they carry.
//!
//! The cycle index of a species is a series in the variables `x1, x2, ...`
//! (plus marks, for weighted species) whose coefficient structure records,
//! for every cycle type of relabeling permutation, how many structures that
//! relabeling fixes. Sums, products and substitution of species translate to
//! addition, multiplication and plethystic substitution of their indices;
//! the two counting specializations fall out by substituting for the `x`
//! variables:
//!
//! - exponential generating function: `x1 -> x`, all other `x_i -> 0`;
//! - unlabeled (isomorphism-type) generating function: `x_i -> x^i`.
//!
//! Everything is computed exactly, truncated at a caller-chosen degree.

use num::Zero;
use thiserror::Error;

use crate::expr::{Atom, SpeciesExpr};
use crate::rational::{factorial, frac, rat, Rational};
use crate::series::{Assignment, Caps, SeriesError, TruncatedSeries, VarId};

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum KernelError {
    #[error("the graph species has no product-form cycle index; only the enumeration side handles it")]
    GraphUnsupported,
    #[error("substitution requires an inner species with zero constant term (no structure on the empty set)")]
    ComposeInnerConstant,
    #[error("restriction of a weighted expression is not supported")]
    RestrictWeighted,
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// A cycle-index series, truncated at the caps of the underlying series.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CycleIndex(pub TruncatedSeries);

/// `sum_{k=1..cap} x_k / k`, the exponent of the set species' index.
fn power_sum(cap: u32) -> TruncatedSeries {
    let caps = Caps::uniform(cap);
    let mut acc = TruncatedSeries::zero(caps);
    for k in 1..=cap {
        acc = &acc + &TruncatedSeries::x(k, caps).scale(&frac(1, k as i64));
    }
    acc
}

/// The cycle index of a single atom, truncated at total degree `cap`.
pub fn atom_cycle_index(atom: &Atom, cap: u32) -> Result<CycleIndex, KernelError> {
    let caps = Caps::uniform(cap);
    let series = match atom {
        Atom::Zero => TruncatedSeries::zero(caps),
        Atom::One => TruncatedSeries::one(caps),
        Atom::Singleton => TruncatedSeries::x(1, caps),
        // Z_E = exp(sum x_k / k): one structure per set, fixed by every
        // relabeling, one x_k per k-cycle.
        Atom::Set => power_sum(cap).exp()?,
        Atom::NonEmptySet => &power_sum(cap).exp()? - &TruncatedSeries::one(caps),
        Atom::SetOfSize(size) => {
            let z = power_sum(cap).exp()?;
            z.homogeneous_x(*size as u32)
        }
        Atom::OddSet => {
            let z = power_sum(cap).exp()?;
            let mut acc = TruncatedSeries::zero(caps);
            let mut n = 1;
            while n <= cap {
                acc = &acc + &z.homogeneous_x(n);
                n += 2;
            }
            acc
        }
        // Z_L = 1 / (1 - x1): only the identity fixes a linear order.
        Atom::Linear => (&TruncatedSeries::one(caps) - &TruncatedSeries::x(1, caps)).inv()?,
        Atom::NonEmptyLinear => {
            let l = (&TruncatedSeries::one(caps) - &TruncatedSeries::x(1, caps)).inv()?;
            &TruncatedSeries::x(1, caps) * &l
        }
        // Z_C = sum_k (phi(k)/k) * sum_m x_k^m / m: a rotation by n/k fixes
        // a cyclic order exactly when its cycle type is k^(n/k), and phi(k)
        // of the n rotations have order k.
        Atom::Cycle => {
            let mut acc = TruncatedSeries::zero(caps);
            for k in 1..=cap {
                let phi_over_k = frac(crate::rational::euler_phi(k) as i64, k as i64);
                let mut log_term = TruncatedSeries::zero(caps);
                let mut m = 1;
                while k * m <= cap {
                    let xkm = TruncatedSeries::x(k, caps).pow(m);
                    log_term = &log_term + &xkm.scale(&frac(1, m as i64));
                    m += 1;
                }
                acc = &acc + &log_term.scale(&phi_over_k);
            }
            acc
        }
        // A permutation is a set of cycles.
        Atom::Permutation => {
            let zc = atom_cycle_index(&Atom::Cycle, cap)?;
            let ze = atom_cycle_index(&Atom::Set, cap)?;
            plethysm(&ze, &zc, cap)?.0
        }
        // Der * E = S as species (every permutation is a derangement on the
        // non-fixed points times a set of fixed points), so Z_Der = Z_S / Z_E.
        Atom::Derangement => {
            let zs = atom_cycle_index(&Atom::Permutation, cap)?;
            let ze = atom_cycle_index(&Atom::Set, cap)?;
            &zs.0 * &ze.0.inv()?
        }
        Atom::Partition => {
            let ze = atom_cycle_index(&Atom::Set, cap)?;
            let zep = atom_cycle_index(&Atom::NonEmptySet, cap)?;
            plethysm(&ze, &zep, cap)?.0
        }
        Atom::Ballot => {
            let zl = atom_cycle_index(&Atom::Linear, cap)?;
            let zep = atom_cycle_index(&Atom::NonEmptySet, cap)?;
            plethysm(&zl, &zep, cap)?.0
        }
        Atom::Graph => return Err(KernelError::GraphUnsupported),
    };
    Ok(CycleIndex(series))
}

/// Plethystic substitution: each `x_k` in the outer index is replaced by the
/// inner index with all variable subscripts (and mark exponents) scaled by
/// `k`. Requires the inner index to have zero constant term.
pub fn plethysm(
    outer: &CycleIndex,
    inner: &CycleIndex,
    cap: u32,
) -> Result<CycleIndex, KernelError> {
    if !inner.0.constant_term().is_zero() {
        return Err(KernelError::ComposeInnerConstant);
    }
    let caps = Caps::min(
        Caps::min(outer.0.caps(), inner.0.caps()),
        Caps::uniform(cap),
    );
    let zf = outer.0.truncate(caps);
    let zg = inner.0.truncate(caps);
    let mut assignment = Assignment::new();
    for k in 1..=caps.x {
        assignment.insert(VarId::X(k), zg.stretch(k)?);
    }
    for mark in zf.mark_vars() {
        let identity = TruncatedSeries::term(
            crate::series::Monomial::var(mark.clone(), 1),
            rat(1),
            caps,
        );
        assignment.insert(mark, identity);
    }
    Ok(CycleIndex(zf.substitute(&assignment)))
}

/// The cycle index of an arbitrary expression, truncated at degree `cap`.
pub fn cycle_index(e: &SpeciesExpr, cap: u32) -> Result<CycleIndex, KernelError> {
    match e {
        SpeciesExpr::Atom(a) => atom_cycle_index(a, cap),
        SpeciesExpr::Sum(f, g) => {
            let zf = cycle_index(f, cap)?;
            let zg = cycle_index(g, cap)?;
            Ok(CycleIndex(&zf.0 + &zg.0))
        }
        SpeciesExpr::Product(f, g) => {
            let zf = cycle_index(f, cap)?;
            let zg = cycle_index(g, cap)?;
            Ok(CycleIndex(&zf.0 * &zg.0))
        }
        SpeciesExpr::Compose(f, g) => {
            let zf = cycle_index(f, cap)?;
            let zg = cycle_index(g, cap)?;
            plethysm(&zf, &zg, cap)
        }
        // Weighting marks every structure on a nonempty set: the constant
        // term stays, everything else picks up one power of the mark.
        SpeciesExpr::Weight(mark, inner) => {
            let z = cycle_index(inner, cap)?;
            let caps = z.0.caps();
            let constant = TruncatedSeries::constant(z.0.constant_term(), caps);
            let marked = &TruncatedSeries::mark(mark, caps) * &z.0.positive_part();
            Ok(CycleIndex(&constant + &marked))
        }
        SpeciesExpr::Restrict(inner, size) => {
            if inner.contains_weight() {
                return Err(KernelError::RestrictWeighted);
            }
            let z = cycle_index(inner, cap)?;
            Ok(CycleIndex(z.0.homogeneous_x(*size as u32)))
        }
    }
}

/// Labeled counting series: entry `n` is `n!` times the coefficient of
/// `x1^n` after killing `x2, x3, ...`. For weighted species each entry is a
/// polynomial in the marks; otherwise it is a constant series.
pub fn egf_coeffs(e: &SpeciesExpr, n_max: usize) -> Result<Vec<TruncatedSeries>, KernelError> {
    let z = cycle_index(e, n_max as u32)?;
    let caps = z.0.caps();
    let mut assignment = Assignment::new();
    assignment.insert(VarId::X(1), TruncatedSeries::x(1, caps));
    for mark in z.0.mark_vars() {
        let identity =
            TruncatedSeries::term(crate::series::Monomial::var(mark.clone(), 1), rat(1), caps);
        assignment.insert(mark, identity);
    }
    let specialized = z.0.substitute(&assignment);
    collect_by_x_degree(&specialized, n_max, true)
}

/// Unlabeled counting series: entry `n` is the coefficient of `x^n` after
/// `x_i -> x^i` (counting isomorphism types / orbits).
pub fn tgf_coeffs(e: &SpeciesExpr, n_max: usize) -> Result<Vec<TruncatedSeries>, KernelError> {
    let z = cycle_index(e, n_max as u32)?;
    let caps = z.0.caps();
    let mut assignment = Assignment::new();
    for i in 1..=caps.x {
        assignment.insert(VarId::X(i), TruncatedSeries::x(1, caps).pow(i));
    }
    for mark in z.0.mark_vars() {
        let identity =
            TruncatedSeries::term(crate::series::Monomial::var(mark.clone(), 1), rat(1), caps);
        assignment.insert(mark, identity);
    }
    let specialized = z.0.substitute(&assignment);
    collect_by_x_degree(&specialized, n_max, false)
}

/// Bucket the terms of a series in `x1` (and marks) by `x1`-degree,
/// optionally scaling bucket `n` by `n!`. Each bucket keeps only its mark
/// part, so unweighted series yield constant entries.
fn collect_by_x_degree(
    series: &TruncatedSeries,
    n_max: usize,
    scale_by_factorial: bool,
) -> Result<Vec<TruncatedSeries>, KernelError> {
    let caps = series.caps();
    let mut out = vec![TruncatedSeries::zero(caps); n_max + 1];
    for (monomial, coeff) in series.terms() {
        let n = monomial.degrees().x as usize;
        if n > n_max {
            continue;
        }
        let scaled = if scale_by_factorial {
            coeff * Rational::from(factorial(n))
        } else {
            coeff.clone()
        };
        let contribution = TruncatedSeries::term(monomial.marks_only(), scaled, caps);
        out[n] = &out[n] + &contribution;
    }
    Ok(out)
}

/// Convenience: the entries of [`egf_coeffs`] as exact rationals, for
/// unweighted expressions. Panics if an entry involves marks.
pub fn egf_counts(e: &SpeciesExpr, n_max: usize) -> Result<Vec<Rational>, KernelError> {
    Ok(egf_coeffs(e, n_max)?
        .iter()
        .map(|s| s.as_constant().expect("weighted expression has non-constant counts"))
        .collect())
}

/// Convenience: the entries of [`tgf_coeffs`] as exact rationals, for
/// unweighted expressions. Panics if an entry involves marks.
pub fn tgf_counts(e: &SpeciesExpr, n_max: usize) -> Result<Vec<Rational>, KernelError> {
    Ok(tgf_coeffs(e, n_max)?
        .iter()
        .map(|s| s.as_constant().expect("weighted expression has non-constant counts"))
        .collect())
}
