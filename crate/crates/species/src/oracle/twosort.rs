//! Enumeration oracle for enriched functions between two label sorts.
//!
//! A structure here is a function from an `n`-point domain to a `k`-point
//! codomain together with an enrichment structure on each fibre (including
//! the empty fibres, which is why the enrichment must have structures on the
//! empty set for non-surjective functions to count). Relabeling acts on both
//! sorts independently, which yields four orbit counts: none, domain only,
//! codomain only, or both quotiented away.

use std::collections::BTreeSet;
use std::collections::HashMap;

use itertools::Itertools;

use crate::expr::SpeciesExpr;

use super::perm::Permutation;
use super::{
    check_compose_inners, enumerate_on, transport_on, OracleError, Structure,
};

/// Largest domain or codomain the two-sort enumeration will accept.
pub const MAX_TWO_SORT_POINTS: usize = 6;

fn check_two_sort_size(n: usize, k: usize) -> Result<(), OracleError> {
    for size in [n, k] {
        if size > MAX_TWO_SORT_POINTS {
            return Err(OracleError::TooManyPoints {
                n: size,
                max: MAX_TWO_SORT_POINTS,
            });
        }
    }
    Ok(())
}

/// Every function `{1..n} -> {1..k}` as an image list (`values[i-1]` is the
/// image of `i`). `n = 0` has exactly one (empty) function even when `k = 0`.
pub(crate) fn functions(n: usize, k: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    if k == 0 {
        return Vec::new();
    }
    let mut out = Vec::with_capacity(k.pow(n as u32));
    let mut current = vec![1usize; n];
    loop {
        out.push(current.clone());
        // Odometer increment in base k.
        let mut pos = 0;
        loop {
            if pos == n {
                return out;
            }
            if current[pos] < k {
                current[pos] += 1;
                break;
            }
            current[pos] = 1;
            pos += 1;
        }
    }
}

/// All functions from `{1..n}` to `{1..k}` with each fibre carrying an
/// enrichment structure, encoded as `Structure::Fibres`.
pub fn enumerate_two_sort(
    r: &SpeciesExpr,
    n: usize,
    k: usize,
) -> Result<Vec<Structure>, OracleError> {
    check_two_sort_size(n, k)?;
    check_compose_inners(r)?;
    let mut out = Vec::new();
    for values in functions(n, k) {
        let fibres: Vec<BTreeSet<usize>> = (1..=k)
            .map(|v| {
                (1..=n)
                    .filter(|&i| values[i - 1] == v)
                    .collect::<BTreeSet<usize>>()
            })
            .collect();
        let choices: Vec<Vec<Structure>> = fibres.iter().map(|b| enumerate_on(r, b)).collect();
        if choices.iter().any(|c| c.is_empty()) {
            continue;
        }
        // For k = 0 the product over zero fibres yields exactly one empty
        // selection: the empty function with no fibres at all.
        for chosen in choices.iter().multi_cartesian_product() {
            out.push(Structure::Fibres(
                fibres
                    .iter()
                    .cloned()
                    .zip(chosen.iter().map(|s| (*s).clone()))
                    .zip(1..=k)
                    .map(|((b, s), v)| (b, s, v))
                    .collect(),
            ));
        }
    }
    Ok(out)
}

/// Transport along a pair of permutations: `sigma` relabels the domain,
/// `tau` relabels the codomain.
pub fn two_sort_transport(
    r: &SpeciesExpr,
    sigma: &Permutation,
    tau: &Permutation,
    s: &Structure,
) -> Structure {
    let Structure::Fibres(fibres) = s else {
        unreachable!("two-sort transport applies to fibre structures");
    };
    let mut moved: Vec<(BTreeSet<usize>, Structure, usize)> = fibres
        .iter()
        .map(|(b, t, v)| {
            (
                b.iter().map(|&x| sigma.apply(x)).collect(),
                transport_on(r, sigma, t),
                tau.apply(*v),
            )
        })
        .collect();
    moved.sort_by_key(|&(_, _, v)| v);
    Structure::Fibres(moved)
}

/// Structure and orbit counts for enriched functions `{1..n} -> {1..k}`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct TwoSortOrbits {
    pub labeled: u64,
    /// Orbits under relabeling the domain only.
    pub types_x: u64,
    /// Orbits under relabeling the codomain only.
    pub types_y: u64,
    /// Orbits under relabeling both sorts.
    pub types_both: u64,
}

fn generator_pairs(n: usize, k: usize, move_x: bool, move_y: bool) -> Vec<(Permutation, Permutation)> {
    let mut gens = Vec::new();
    if move_x && n >= 2 {
        gens.push((Permutation::transposition(n, 1, 2), Permutation::identity(k)));
        gens.push((Permutation::rotation(n), Permutation::identity(k)));
    }
    if move_y && k >= 2 {
        gens.push((Permutation::identity(n), Permutation::transposition(k, 1, 2)));
        gens.push((Permutation::identity(n), Permutation::rotation(k)));
    }
    gens
}

fn orbit_count_under(
    r: &SpeciesExpr,
    structs: &[Structure],
    generators: &[(Permutation, Permutation)],
) -> u64 {
    if structs.is_empty() {
        return 0;
    }
    let index: HashMap<&Structure, usize> =
        structs.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let mut seen = vec![false; structs.len()];
    let mut orbits = 0;
    for start in 0..structs.len() {
        if seen[start] {
            continue;
        }
        orbits += 1;
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(i) = stack.pop() {
            for (sigma, tau) in generators {
                let moved = two_sort_transport(r, sigma, tau, &structs[i]);
                let j = *index
                    .get(&moved)
                    .expect("two-sort transport left the enumerated structure set");
                if !seen[j] {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
    }
    orbits
}

/// Count enriched functions and their orbits under the four relabeling
/// regimes, by explicit orbit partitioning.
pub fn two_sort_orbits(r: &SpeciesExpr, n: usize, k: usize) -> Result<TwoSortOrbits, OracleError> {
    let structs = enumerate_two_sort(r, n, k)?;
    Ok(TwoSortOrbits {
        labeled: structs.len() as u64,
        types_x: orbit_count_under(r, &structs, &generator_pairs(n, k, true, false)),
        types_y: orbit_count_under(r, &structs, &generator_pairs(n, k, false, true)),
        types_both: orbit_count_under(r, &structs, &generator_pairs(n, k, true, true)),
    })
}

/// Number of enriched functions fixed by the pair `(sigma, tau)`.
pub fn two_sort_fix_count(
    r: &SpeciesExpr,
    sigma: &Permutation,
    tau: &Permutation,
) -> Result<u64, OracleError> {
    let structs = enumerate_two_sort(r, sigma.n(), tau.n())?;
    Ok(structs
        .iter()
        .filter(|s| two_sort_transport(r, sigma, tau, s) == **s)
        .count() as u64)
}
