//! Brute-force ground truth: explicit labeled structures with transport.
//!
//! Everything in this module works by exhaustive enumeration, so it is only
//! usable on very small label sets, but it makes no use of the series
//! machinery at all. That independence is the point: the series side and
//! this side are implemented from different definitions, and the test suites
//! insist that they agree.
//!
//! Structures carry their labels explicitly (1-based), transport is defined
//! structurally per constructor, and orbit counts are obtained by actually
//! partitioning the structure list under a generating set of permutations —
//! not by Burnside's lemma, which is instead verified against the partition.

pub mod perm;
pub mod twosort;

use std::collections::BTreeMap;
use std::collections::BTreeSet;
use std::collections::HashMap;
use std::sync::OnceLock;

use itertools::Itertools;
use num::BigInt;
use rand::rngs::StdRng;
use rand::SeedableRng;
use thiserror::Error;

use crate::expr::{Atom, SpeciesExpr};
use crate::rational::{factorial, Rational};
use crate::series::{Caps, Monomial, TruncatedSeries};
use perm::{conjugacy_class_size, cycle_type_monomial, integer_partitions, Permutation};

/// Largest ambient set enumeration will accept.
pub const MAX_POINTS: usize = 8;
/// Tighter bound when a graph atom is present (2^C(n,2) grows too fast).
pub const MAX_POINTS_GRAPH: usize = 6;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("{n} points exceeds the enumeration bound of {max}")]
    TooManyPoints { n: usize, max: usize },
    #[error("substitution requires an inner species with no structure on the empty set")]
    ComposeInnerNonempty,
    #[error("structure is labeled by {found:?}, not by 1..={n}")]
    LabelMismatch { found: Vec<usize>, n: usize },
}

/// Which summand of a sum a structure came from.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Side {
    Left,
    Right,
}

/// A concrete labeled structure. Each variant is kept in a canonical form so
/// that equality of values is equality of structures:
///
/// - `Cycle` starts at its least label;
/// - `Mapping` pairs are sorted by domain point;
/// - `Graph` edges are stored as `(a, b)` with `a < b`;
/// - `Partitioned` blocks are sorted by least element, and the outer
///   structure lives on the virtual labels `1..=k` where `k` is the number
///   of blocks;
/// - `Fibres` entries are sorted by the codomain point they sit over.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Structure {
    /// A bare label set (sets, the empty structure, singletons, ...).
    Set(BTreeSet<usize>),
    /// A linear order, first to last.
    Order(Vec<usize>),
    /// An oriented cycle, rotated to start at its least label.
    Cycle(Vec<usize>),
    /// A self-map given by its graph, sorted by domain point.
    Mapping(Vec<(usize, usize)>),
    /// A simple graph on the labels.
    Graph {
        vertices: BTreeSet<usize>,
        edges: BTreeSet<(usize, usize)>,
    },
    /// A structure from one side of a sum.
    Tagged(Side, Box<Structure>),
    /// A structure from each factor of a product.
    Pair(Box<Structure>, Box<Structure>),
    /// A substitution structure: inner structures on the blocks of a
    /// partition, and an outer structure on the blocks themselves
    /// (represented on virtual labels `1..=k`, block `i` being the one with
    /// the `i`-th smallest minimum).
    Partitioned {
        blocks: Vec<(BTreeSet<usize>, Structure)>,
        outer: Box<Structure>,
    },
    /// A two-sort structure: for each codomain point, the fibre over it and
    /// an enrichment structure on that fibre.
    Fibres(Vec<(BTreeSet<usize>, Structure, usize)>),
}

impl Structure {
    /// The label set this structure lives on.
    pub fn labels(&self) -> BTreeSet<usize> {
        match self {
            Structure::Set(s) => s.clone(),
            Structure::Order(v) | Structure::Cycle(v) => v.iter().copied().collect(),
            Structure::Mapping(pairs) => pairs.iter().map(|&(u, _)| u).collect(),
            Structure::Graph { vertices, .. } => vertices.clone(),
            Structure::Tagged(_, inner) => inner.labels(),
            Structure::Pair(a, b) => a.labels().union(&b.labels()).copied().collect(),
            Structure::Partitioned { blocks, .. } => {
                blocks.iter().flat_map(|(b, _)| b.iter().copied()).collect()
            }
            Structure::Fibres(fibres) => {
                fibres.iter().flat_map(|(b, _, _)| b.iter().copied()).collect()
            }
        }
    }
}

/// `Par = E(E+)`: the substitution shape partition structures are stored in.
fn partition_as_compose() -> &'static SpeciesExpr {
    static PAR: OnceLock<SpeciesExpr> = OnceLock::new();
    PAR.get_or_init(|| {
        SpeciesExpr::compose(SpeciesExpr::from(Atom::Set), SpeciesExpr::from(Atom::NonEmptySet))
    })
}

/// `Bal = L(E+)`: the substitution shape ballot structures are stored in.
fn ballot_as_compose() -> &'static SpeciesExpr {
    static BAL: OnceLock<SpeciesExpr> = OnceLock::new();
    BAL.get_or_init(|| {
        SpeciesExpr::compose(SpeciesExpr::from(Atom::Linear), SpeciesExpr::from(Atom::NonEmptySet))
    })
}

fn enumeration_bound(e: &SpeciesExpr) -> usize {
    if e.contains_graph() {
        MAX_POINTS_GRAPH
    } else {
        MAX_POINTS
    }
}

pub(crate) fn check_size(e: &SpeciesExpr, n: usize) -> Result<(), OracleError> {
    let max = enumeration_bound(e);
    if n > max {
        return Err(OracleError::TooManyPoints { n, max });
    }
    Ok(())
}

/// Every `Compose` node needs an inner species with empty `G[emptyset]`;
/// otherwise a structure could place infinitely many blocks.
pub(crate) fn check_compose_inners(e: &SpeciesExpr) -> Result<(), OracleError> {
    match e {
        SpeciesExpr::Atom(_) => Ok(()),
        SpeciesExpr::Sum(a, b) | SpeciesExpr::Product(a, b) => {
            check_compose_inners(a)?;
            check_compose_inners(b)
        }
        SpeciesExpr::Compose(f, g) => {
            check_compose_inners(f)?;
            check_compose_inners(g)?;
            if !enumerate_on(g, &BTreeSet::new()).is_empty() {
                return Err(OracleError::ComposeInnerNonempty);
            }
            Ok(())
        }
        SpeciesExpr::Weight(_, inner) => check_compose_inners(inner),
        SpeciesExpr::Restrict(inner, _) => check_compose_inners(inner),
    }
}

/// All structures of the species on the ambient set `{1, ..., n}`.
pub fn enumerate(e: &SpeciesExpr, n: usize) -> Result<Vec<Structure>, OracleError> {
    check_size(e, n)?;
    check_compose_inners(e)?;
    let labels: BTreeSet<usize> = (1..=n).collect();
    Ok(enumerate_on(e, &labels))
}

/// All set partitions of `labels`, each given as blocks sorted by least
/// element. The empty set has exactly one partition: no blocks.
fn set_partitions(labels: &BTreeSet<usize>) -> Vec<Vec<BTreeSet<usize>>> {
    let elems: Vec<usize> = labels.iter().copied().collect();
    let mut out = Vec::new();
    let mut blocks: Vec<BTreeSet<usize>> = Vec::new();
    fn go(elems: &[usize], pos: usize, blocks: &mut Vec<BTreeSet<usize>>, out: &mut Vec<Vec<BTreeSet<usize>>>) {
        if pos == elems.len() {
            out.push(blocks.clone());
            return;
        }
        let x = elems[pos];
        for i in 0..blocks.len() {
            blocks[i].insert(x);
            go(elems, pos + 1, blocks, out);
            blocks[i].remove(&x);
        }
        blocks.push(BTreeSet::from([x]));
        go(elems, pos + 1, blocks, out);
        blocks.pop();
    }
    go(&elems, 0, &mut blocks, &mut out);
    // Inserting each element into the earliest-created block orders blocks
    // by least element automatically, since elems is ascending.
    out
}

pub(crate) fn enumerate_on(e: &SpeciesExpr, labels: &BTreeSet<usize>) -> Vec<Structure> {
    match e {
        SpeciesExpr::Atom(a) => enumerate_atom(a, labels),
        SpeciesExpr::Sum(f, g) => {
            let mut out: Vec<Structure> = enumerate_on(f, labels)
                .into_iter()
                .map(|s| Structure::Tagged(Side::Left, Box::new(s)))
                .collect();
            out.extend(
                enumerate_on(g, labels)
                    .into_iter()
                    .map(|s| Structure::Tagged(Side::Right, Box::new(s))),
            );
            out
        }
        SpeciesExpr::Product(f, g) => {
            let elems: Vec<usize> = labels.iter().copied().collect();
            let mut out = Vec::new();
            // Every ordered decomposition into two disjoint label sets.
            for mask in 0..(1u32 << elems.len()) {
                let left: BTreeSet<usize> = elems
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask & (1 << i) != 0)
                    .map(|(_, &x)| x)
                    .collect();
                let right: BTreeSet<usize> = elems.iter().copied().filter(|x| !left.contains(x)).collect();
                let lefts = enumerate_on(f, &left);
                if lefts.is_empty() {
                    continue;
                }
                let rights = enumerate_on(g, &right);
                for l in &lefts {
                    for r in &rights {
                        out.push(Structure::Pair(Box::new(l.clone()), Box::new(r.clone())));
                    }
                }
            }
            out
        }
        SpeciesExpr::Compose(f, g) => {
            let mut out = Vec::new();
            for blocks in set_partitions(labels) {
                let k = blocks.len();
                let virtual_labels: BTreeSet<usize> = (1..=k).collect();
                let outers = enumerate_on(f, &virtual_labels);
                if outers.is_empty() {
                    continue;
                }
                let inner_choices: Vec<Vec<Structure>> =
                    blocks.iter().map(|b| enumerate_on(g, b)).collect();
                if inner_choices.iter().any(|c| c.is_empty()) {
                    continue;
                }
                // Note multi_cartesian_product over zero factors (k = 0)
                // yields exactly one empty selection, which is right: the
                // empty partition carries one structure per outer structure
                // on the empty set.
                for inners in inner_choices.iter().multi_cartesian_product() {
                    for outer in &outers {
                        out.push(Structure::Partitioned {
                            blocks: blocks
                                .iter()
                                .cloned()
                                .zip(inners.iter().map(|s| (*s).clone()))
                                .collect(),
                            outer: Box::new(outer.clone()),
                        });
                    }
                }
            }
            out
        }
        SpeciesExpr::Weight(_, inner) => enumerate_on(inner, labels),
        SpeciesExpr::Restrict(inner, size) => {
            if labels.len() == *size {
                enumerate_on(inner, labels)
            } else {
                Vec::new()
            }
        }
    }
}

fn enumerate_atom(a: &Atom, labels: &BTreeSet<usize>) -> Vec<Structure> {
    let n = labels.len();
    let elems: Vec<usize> = labels.iter().copied().collect();
    match a {
        Atom::Zero => Vec::new(),
        Atom::One => {
            if n == 0 {
                vec![Structure::Set(BTreeSet::new())]
            } else {
                Vec::new()
            }
        }
        Atom::Singleton => {
            if n == 1 {
                vec![Structure::Set(labels.clone())]
            } else {
                Vec::new()
            }
        }
        Atom::Set => vec![Structure::Set(labels.clone())],
        Atom::NonEmptySet => {
            if n > 0 {
                vec![Structure::Set(labels.clone())]
            } else {
                Vec::new()
            }
        }
        Atom::SetOfSize(size) => {
            if n == *size {
                vec![Structure::Set(labels.clone())]
            } else {
                Vec::new()
            }
        }
        Atom::OddSet => {
            if n % 2 == 1 {
                vec![Structure::Set(labels.clone())]
            } else {
                Vec::new()
            }
        }
        Atom::Linear => elems
            .iter()
            .copied()
            .permutations(n)
            .map(Structure::Order)
            .collect(),
        Atom::NonEmptyLinear => {
            if n == 0 {
                Vec::new()
            } else {
                enumerate_atom(&Atom::Linear, labels)
            }
        }
        Atom::Cycle => {
            if n == 0 {
                return Vec::new();
            }
            // Canonical form: least label first, then any arrangement of the
            // rest. Each cyclic order appears exactly once.
            let first = elems[0];
            elems[1..]
                .iter()
                .copied()
                .permutations(n - 1)
                .map(|rest| {
                    let mut cycle = vec![first];
                    cycle.extend(rest);
                    Structure::Cycle(cycle)
                })
                .collect()
        }
        Atom::Permutation => elems
            .iter()
            .copied()
            .permutations(n)
            .map(|values| Structure::Mapping(elems.iter().copied().zip(values).collect()))
            .collect(),
        Atom::Derangement => enumerate_atom(&Atom::Permutation, labels)
            .into_iter()
            .filter(|s| match s {
                Structure::Mapping(pairs) => pairs.iter().all(|&(u, v)| u != v),
                _ => unreachable!(),
            })
            .collect(),
        Atom::Partition => enumerate_on(partition_as_compose(), labels),
        Atom::Ballot => enumerate_on(ballot_as_compose(), labels),
        Atom::Graph => {
            let all_edges: Vec<(usize, usize)> = elems.iter().copied().tuple_combinations().collect();
            (0..(1u64 << all_edges.len()))
                .map(|mask| {
                    let edges: BTreeSet<(usize, usize)> = all_edges
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| mask & (1 << i) != 0)
                        .map(|(_, &e)| e)
                        .collect();
                    Structure::Graph { vertices: labels.clone(), edges }
                })
                .collect()
        }
    }
}

fn apply_to_set(sigma: &Permutation, set: &BTreeSet<usize>) -> BTreeSet<usize> {
    set.iter().map(|&x| sigma.apply(x)).collect()
}

/// Rotate a nonempty cycle so its least label comes first.
fn canonical_cycle(mut cycle: Vec<usize>) -> Vec<usize> {
    let min_pos = cycle
        .iter()
        .enumerate()
        .min_by_key(|&(_, &x)| x)
        .map(|(i, _)| i)
        .unwrap();
    cycle.rotate_left(min_pos);
    cycle
}

/// Transport a structure along a permutation of the ambient set `1..=n`.
pub fn transport(e: &SpeciesExpr, sigma: &Permutation, s: &Structure) -> Result<Structure, OracleError> {
    let found = s.labels();
    let expected: BTreeSet<usize> = (1..=sigma.n()).collect();
    if found != expected {
        return Err(OracleError::LabelMismatch {
            found: found.into_iter().collect(),
            n: sigma.n(),
        });
    }
    Ok(transport_on(e, sigma, s))
}

pub(crate) fn transport_on(e: &SpeciesExpr, sigma: &Permutation, s: &Structure) -> Structure {
    match (e, s) {
        (SpeciesExpr::Atom(a), _) => transport_atom(a, sigma, s),
        (SpeciesExpr::Sum(f, g), Structure::Tagged(side, inner)) => {
            let branch = match side {
                Side::Left => f,
                Side::Right => g,
            };
            Structure::Tagged(*side, Box::new(transport_on(branch, sigma, inner)))
        }
        (SpeciesExpr::Product(f, g), Structure::Pair(a, b)) => Structure::Pair(
            Box::new(transport_on(f, sigma, a)),
            Box::new(transport_on(g, sigma, b)),
        ),
        (SpeciesExpr::Compose(f, g), Structure::Partitioned { blocks, outer }) => {
            transport_partitioned(f, g, sigma, blocks, outer)
        }
        (SpeciesExpr::Weight(_, inner), _) => transport_on(inner, sigma, s),
        (SpeciesExpr::Restrict(inner, _), _) => transport_on(inner, sigma, s),
        _ => unreachable!("structure shape does not match the species expression"),
    }
}

/// Transport for substitution structures: relabel each block and its inner
/// structure, reorder blocks by least element, and transport the outer
/// structure along the induced permutation of block indices.
fn transport_partitioned(
    f: &SpeciesExpr,
    g: &SpeciesExpr,
    sigma: &Permutation,
    blocks: &[(BTreeSet<usize>, Structure)],
    outer: &Structure,
) -> Structure {
    let k = blocks.len();
    let moved: Vec<(BTreeSet<usize>, Structure)> = blocks
        .iter()
        .map(|(b, t)| (apply_to_set(sigma, b), transport_on(g, sigma, t)))
        .collect();
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by_key(|&i| *moved[i].0.first().expect("blocks are nonempty"));
    // Old block i lands at position pi(i) in the canonical ordering.
    let mut pi_images = vec![0; k];
    for (new_pos, &old_i) in order.iter().enumerate() {
        pi_images[old_i] = new_pos + 1;
    }
    let pi = Permutation::from_images(pi_images);
    let new_outer = transport_on(f, &pi, outer);
    Structure::Partitioned {
        blocks: order.into_iter().map(|i| moved[i].clone()).collect(),
        outer: Box::new(new_outer),
    }
}

fn transport_atom(a: &Atom, sigma: &Permutation, s: &Structure) -> Structure {
    match (a, s) {
        (
            Atom::One
            | Atom::Singleton
            | Atom::Set
            | Atom::NonEmptySet
            | Atom::SetOfSize(_)
            | Atom::OddSet,
            Structure::Set(set),
        ) => Structure::Set(apply_to_set(sigma, set)),
        (Atom::Linear | Atom::NonEmptyLinear, Structure::Order(v)) => {
            Structure::Order(v.iter().map(|&x| sigma.apply(x)).collect())
        }
        (Atom::Cycle, Structure::Cycle(v)) => {
            Structure::Cycle(canonical_cycle(v.iter().map(|&x| sigma.apply(x)).collect()))
        }
        // A self-map transports by conjugation: f becomes sigma . f . sigma^-1.
        (Atom::Permutation | Atom::Derangement, Structure::Mapping(pairs)) => {
            let mut moved: Vec<(usize, usize)> = pairs
                .iter()
                .map(|&(u, v)| (sigma.apply(u), sigma.apply(v)))
                .collect();
            moved.sort_unstable();
            Structure::Mapping(moved)
        }
        (Atom::Partition, _) => transport_on(partition_as_compose(), sigma, s),
        (Atom::Ballot, _) => transport_on(ballot_as_compose(), sigma, s),
        (Atom::Graph, Structure::Graph { vertices, edges }) => {
            let moved_edges: BTreeSet<(usize, usize)> = edges
                .iter()
                .map(|&(u, v)| {
                    let (a, b) = (sigma.apply(u), sigma.apply(v));
                    (a.min(b), a.max(b))
                })
                .collect();
            Structure::Graph {
                vertices: apply_to_set(sigma, vertices),
                edges: moved_edges,
            }
        }
        _ => unreachable!("structure shape does not match the atom"),
    }
}

/// The weight monomial of a structure: the product, over all `Weight` nodes
/// enclosing it, of the node's mark raised to the count of weighted
/// sub-structures on nonempty label sets. A weighted structure on the empty
/// set keeps weight one so that weighting never disturbs the constant term.
pub fn structure_weight(e: &SpeciesExpr, s: &Structure) -> Monomial {
    match (e, s) {
        (SpeciesExpr::Atom(_), _) => Monomial::one(),
        (SpeciesExpr::Sum(f, g), Structure::Tagged(side, inner)) => match side {
            Side::Left => structure_weight(f, inner),
            Side::Right => structure_weight(g, inner),
        },
        (SpeciesExpr::Product(f, g), Structure::Pair(a, b)) => {
            structure_weight(f, a).mul(&structure_weight(g, b))
        }
        (SpeciesExpr::Compose(f, g), Structure::Partitioned { blocks, outer }) => {
            let mut w = structure_weight(f, outer);
            for (_, inner) in blocks {
                w = w.mul(&structure_weight(g, inner));
            }
            w
        }
        (SpeciesExpr::Weight(mark, inner), _) => {
            let base = structure_weight(inner, s);
            if s.labels().is_empty() {
                base
            } else {
                base.mul(&Monomial::var(crate::series::VarId::mark(mark), 1))
            }
        }
        (SpeciesExpr::Restrict(inner, _), _) => structure_weight(inner, s),
        _ => unreachable!("structure shape does not match the species expression"),
    }
}

/// Number of structures on `1..=n` fixed by `sigma`.
pub fn fix_count(e: &SpeciesExpr, sigma: &Permutation) -> Result<u64, OracleError> {
    let structs = enumerate(e, sigma.n())?;
    Ok(structs
        .iter()
        .filter(|s| transport_on(e, sigma, s) == **s)
        .count() as u64)
}

/// Orbit decomposition of the structures on `1..=n` under relabeling.
///
/// `fix_counts` maps each cycle type (parts ascending) to the number of
/// structures fixed by a representative of that type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitReport {
    pub n: usize,
    pub labeled_count: u64,
    pub orbit_count: u64,
    pub fix_counts: BTreeMap<Vec<usize>, u64>,
}

/// Group the indices of `structs` into orbits under the symmetric group,
/// generated by one transposition and one full rotation (which together
/// generate all of S_n for n >= 2).
fn orbit_partition(e: &SpeciesExpr, structs: &[Structure], n: usize) -> Vec<Vec<usize>> {
    if structs.is_empty() {
        return Vec::new();
    }
    let generators: Vec<Permutation> = if n >= 2 {
        vec![Permutation::transposition(n, 1, 2), Permutation::rotation(n)]
    } else {
        Vec::new()
    };
    let index: HashMap<&Structure, usize> =
        structs.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let mut seen = vec![false; structs.len()];
    let mut orbits = Vec::new();
    for start in 0..structs.len() {
        if seen[start] {
            continue;
        }
        let mut orbit = Vec::new();
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(i) = stack.pop() {
            orbit.push(i);
            for sigma in &generators {
                let moved = transport_on(e, sigma, &structs[i]);
                let j = *index
                    .get(&moved)
                    .expect("transport left the enumerated structure set");
                if !seen[j] {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        orbit.sort_unstable();
        orbits.push(orbit);
    }
    orbits
}

/// Count structures and orbits on `1..=n`, recording the fixed-point count
/// of each cycle type along the way. The orbit count comes from explicit
/// partitioning; the function panics if it disagrees with Burnside's lemma
/// applied to the recorded fixed-point counts, so every successful call has
/// already cross-validated the two.
pub fn orbit_report(e: &SpeciesExpr, n: usize) -> Result<OrbitReport, OracleError> {
    let structs = enumerate(e, n)?;
    let mut fix_counts = BTreeMap::new();
    let mut burnside_sum = BigInt::from(0);
    for parts in integer_partitions(n) {
        let sigma = Permutation::of_cycle_type(&parts);
        let fix = structs
            .iter()
            .filter(|s| transport_on(e, &sigma, s) == **s)
            .count() as u64;
        burnside_sum += conjugacy_class_size(n, &parts) * BigInt::from(fix);
        fix_counts.insert(parts, fix);
    }
    let orbits = orbit_partition(e, &structs, n);
    let orbit_count = orbits.len() as u64;
    assert_eq!(
        BigInt::from(orbit_count) * factorial(n),
        burnside_sum,
        "orbit partition disagrees with Burnside's lemma for {e} on {n} points"
    );
    Ok(OrbitReport {
        n,
        labeled_count: structs.len() as u64,
        orbit_count,
        fix_counts,
    })
}

/// The cycle index computed entirely from enumerated structures:
/// sum over n and over cycle types of
/// `(class size / n!) * (total weight of fixed structures) * x_type`.
///
/// For weighted species the coefficient of each `x` monomial is a polynomial
/// in the marks; for plain species it is rational.
pub fn cycle_index_from_oracle(
    e: &SpeciesExpr,
    n_max: usize,
) -> Result<TruncatedSeries, OracleError> {
    let caps = Caps::uniform(n_max as u32);
    let mut acc = TruncatedSeries::zero(caps);
    for n in 0..=n_max {
        let structs = enumerate(e, n)?;
        let n_factorial = Rational::from(factorial(n));
        for parts in integer_partitions(n) {
            let sigma = Permutation::of_cycle_type(&parts);
            let mut fixed_weight = TruncatedSeries::zero(caps);
            for s in &structs {
                if transport_on(e, &sigma, s) == *s {
                    let w = TruncatedSeries::term(structure_weight(e, s), Rational::from(BigInt::from(1)), caps);
                    fixed_weight = &fixed_weight + &w;
                }
            }
            if fixed_weight.is_zero() {
                continue;
            }
            let scale = Rational::from(conjugacy_class_size(n, &parts)) / &n_factorial;
            let marker = TruncatedSeries::term(cycle_type_monomial(&parts), scale, caps);
            acc = &acc + &(&fixed_weight * &marker);
        }
    }
    Ok(acc)
}

/// Outcome of randomized functor-law checks.
#[derive(Clone, Debug)]
pub struct FunctorialityReport {
    pub structures: usize,
    pub trials: usize,
    pub failures: Vec<String>,
}

impl FunctorialityReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

const MAX_RECORDED_FAILURES: usize = 5;

/// Check the functor laws for the species on `1..=n`:
/// identity transport is the identity, transport along a composite equals
/// the composite of transports, and every transport permutes the structure
/// set. Permutation pairs are drawn from a seeded generator so failures are
/// reproducible.
pub fn functoriality_check(
    e: &SpeciesExpr,
    n: usize,
    trials: usize,
    seed: u64,
) -> Result<FunctorialityReport, OracleError> {
    let structs = enumerate(e, n)?;
    let plain = |sigma: &Permutation, s: &Structure| transport_on(e, sigma, s);
    Ok(functoriality_check_with(e, &structs, n, trials, seed, &plain))
}

/// The law checks themselves, with transport injectable so the test suite
/// can confirm a broken transport is actually caught.
fn functoriality_check_with(
    _e: &SpeciesExpr,
    structs: &[Structure],
    n: usize,
    trials: usize,
    seed: u64,
    transport_fn: &dyn Fn(&Permutation, &Structure) -> Structure,
) -> FunctorialityReport {
    let mut failures = Vec::new();
    let record = |msg: String, failures: &mut Vec<String>| {
        if failures.len() < MAX_RECORDED_FAILURES {
            failures.push(msg);
        }
    };

    let identity = Permutation::identity(n);
    for s in structs {
        let moved = transport_fn(&identity, s);
        if moved != *s {
            record(
                format!("identity transport moved {s:?} to {moved:?}"),
                &mut failures,
            );
        }
    }

    let original: BTreeSet<&Structure> = structs.iter().collect();
    let mut rng = StdRng::seed_from_u64(seed);
    for _ in 0..trials {
        let sigma = Permutation::random(n, &mut rng);
        let tau = Permutation::random(n, &mut rng);
        let tau_sigma = tau.compose(&sigma);
        let mut image = BTreeSet::new();
        for s in structs {
            let via_sigma = transport_fn(&sigma, s);
            let composite = transport_fn(&tau_sigma, s);
            let stepwise = transport_fn(&tau, &via_sigma);
            if composite != stepwise {
                record(
                    format!(
                        "composition law failed for {s:?} under sigma={sigma:?}, tau={tau:?}: \
                         composite gave {composite:?}, stepwise gave {stepwise:?}"
                    ),
                    &mut failures,
                );
            }
            image.insert(via_sigma);
        }
        if image.iter().collect::<BTreeSet<_>>() != original {
            record(
                format!("transport along {sigma:?} is not a bijection on the structure set"),
                &mut failures,
            );
        }
        if !failures.is_empty() && failures.len() >= MAX_RECORDED_FAILURES {
            break;
        }
    }

    FunctorialityReport {
        structures: structs.len(),
        trials,
        failures,
    }
}
