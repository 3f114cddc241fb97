//! Species expressions: the atom catalog and the operator tree.
//!
//! An expression denotes a class of labeled structures closed under
//! relabeling. Atoms name the stock structure families (sets, linear orders,
//! cycles, permutations, set partitions, simple graphs, ...); operators
//! combine them by disjoint union, partitional product, substitution of
//! nonempty structures into positions, attachment of a counting weight, and
//! restriction to one structure size.

use std::fmt;
use std::ops::{Add, Mul};

/// One member of the built-in structure catalog.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Atom {
    /// No structures on any label set.
    Zero,
    /// A single structure on the empty label set, none elsewhere.
    One,
    /// A single structure on each one-element label set.
    Singleton,
    /// Finite sets: one structure on every label set.
    Set,
    /// Sets of size at least one.
    NonEmptySet,
    /// Sets of one fixed size.
    SetOfSize(usize),
    /// Sets of odd size.
    OddSet,
    /// Linear orders.
    Linear,
    /// Linear orders on at least one label.
    NonEmptyLinear,
    /// Cyclic orders on at least one label.
    Cycle,
    /// Permutations (self-bijections of the label set).
    Permutation,
    /// Permutations without fixed points.
    Derangement,
    /// Set partitions into nonempty blocks.
    Partition,
    /// Ballot sequences: linearly ordered set partitions.
    Ballot,
    /// Simple graphs on the label set.
    Graph,
}

impl Atom {
    /// The surface name used by the expression language.
    pub fn name(&self) -> String {
        match self {
            Atom::Zero => "0".into(),
            Atom::One => "1".into(),
            Atom::Singleton => "X".into(),
            Atom::Set => "E".into(),
            Atom::NonEmptySet => "E+".into(),
            Atom::SetOfSize(n) => format!("E_{n}"),
            Atom::OddSet => "Eodd".into(),
            Atom::Linear => "L".into(),
            Atom::NonEmptyLinear => "L+".into(),
            Atom::Cycle => "C".into(),
            Atom::Permutation => "S".into(),
            Atom::Derangement => "Der".into(),
            Atom::Partition => "Par".into(),
            Atom::Ballot => "Bal".into(),
            Atom::Graph => "G".into(),
        }
    }

    /// Every catalog entry, with one representative size for the sized family.
    pub fn catalog() -> Vec<Atom> {
        vec![
            Atom::Zero,
            Atom::One,
            Atom::Singleton,
            Atom::Set,
            Atom::NonEmptySet,
            Atom::SetOfSize(2),
            Atom::SetOfSize(3),
            Atom::OddSet,
            Atom::Linear,
            Atom::NonEmptyLinear,
            Atom::Cycle,
            Atom::Permutation,
            Atom::Derangement,
            Atom::Partition,
            Atom::Ballot,
            Atom::Graph,
        ]
    }
}

/// An expression built from atoms and the five structure operators.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SpeciesExpr {
    Atom(Atom),
    /// Disjoint union: a structure is a tagged structure of either summand.
    Sum(Box<SpeciesExpr>, Box<SpeciesExpr>),
    /// Partitional product: split the labels, one structure on each part.
    Product(Box<SpeciesExpr>, Box<SpeciesExpr>),
    /// Substitution: an outer structure on blocks of inner structures.
    /// The inner expression must have no structure on the empty set.
    Compose(Box<SpeciesExpr>, Box<SpeciesExpr>),
    /// Multiply the counting weight of every structure on a nonempty label
    /// set by the named mark.
    Weight(String, Box<SpeciesExpr>),
    /// Keep only the structures on label sets of exactly the given size.
    Restrict(Box<SpeciesExpr>, usize),
}

impl SpeciesExpr {
    pub fn sum(a: SpeciesExpr, b: SpeciesExpr) -> Self {
        SpeciesExpr::Sum(Box::new(a), Box::new(b))
    }

    pub fn product(a: SpeciesExpr, b: SpeciesExpr) -> Self {
        SpeciesExpr::Product(Box::new(a), Box::new(b))
    }

    pub fn compose(outer: SpeciesExpr, inner: SpeciesExpr) -> Self {
        SpeciesExpr::Compose(Box::new(outer), Box::new(inner))
    }

    pub fn weight(mark: &str, inner: SpeciesExpr) -> Self {
        SpeciesExpr::Weight(mark.to_string(), Box::new(inner))
    }

    pub fn restrict(inner: SpeciesExpr, size: usize) -> Self {
        SpeciesExpr::Restrict(Box::new(inner), size)
    }

    pub fn contains_graph(&self) -> bool {
        match self {
            SpeciesExpr::Atom(a) => *a == Atom::Graph,
            SpeciesExpr::Sum(a, b)
            | SpeciesExpr::Product(a, b)
            | SpeciesExpr::Compose(a, b) => a.contains_graph() || b.contains_graph(),
            SpeciesExpr::Weight(_, e) | SpeciesExpr::Restrict(e, _) => e.contains_graph(),
        }
    }

    pub fn contains_weight(&self) -> bool {
        match self {
            SpeciesExpr::Atom(_) => false,
            SpeciesExpr::Sum(a, b)
            | SpeciesExpr::Product(a, b)
            | SpeciesExpr::Compose(a, b) => a.contains_weight() || b.contains_weight(),
            SpeciesExpr::Weight(_, _) => true,
            SpeciesExpr::Restrict(e, _) => e.contains_weight(),
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            SpeciesExpr::Sum(_, _) => 0,
            SpeciesExpr::Product(_, _) => 1,
            _ => 2,
        }
    }

    fn fmt_at(&self, f: &mut fmt::Formatter<'_>, min_prec: u8) -> fmt::Result {
        let prec = self.precedence();
        if prec < min_prec {
            write!(f, "(")?;
        }
        match self {
            SpeciesExpr::Atom(a) => write!(f, "{}", a.name())?,
            SpeciesExpr::Sum(a, b) => {
                a.fmt_at(f, 0)?;
                write!(f, " + ")?;
                b.fmt_at(f, 0)?;
            }
            SpeciesExpr::Product(a, b) => {
                a.fmt_at(f, 1)?;
                write!(f, " * ")?;
                b.fmt_at(f, 2)?;
            }
            SpeciesExpr::Compose(outer, inner) => {
                // Only atom-headed composition exists in the surface grammar;
                // composite outers are API-only and print with parentheses.
                match outer.as_ref() {
                    SpeciesExpr::Atom(a) => write!(f, "{}", a.name())?,
                    other => {
                        write!(f, "(")?;
                        other.fmt_at(f, 0)?;
                        write!(f, ")")?;
                    }
                }
                write!(f, "(")?;
                inner.fmt_at(f, 0)?;
                write!(f, ")")?;
            }
            SpeciesExpr::Weight(mark, inner) => {
                write!(f, "{mark}*")?;
                inner.fmt_at(f, 2)?;
            }
            SpeciesExpr::Restrict(inner, n) => {
                // API-only form with no surface syntax.
                write!(f, "[")?;
                inner.fmt_at(f, 0)?;
                write!(f, "]_{n}")?;
            }
        }
        if prec < min_prec {
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl From<Atom> for SpeciesExpr {
    fn from(a: Atom) -> Self {
        SpeciesExpr::Atom(a)
    }
}

impl Add for SpeciesExpr {
    type Output = SpeciesExpr;
    fn add(self, rhs: SpeciesExpr) -> SpeciesExpr {
        SpeciesExpr::sum(self, rhs)
    }
}

impl Mul for SpeciesExpr {
    type Output = SpeciesExpr;
    fn mul(self, rhs: SpeciesExpr) -> SpeciesExpr {
        SpeciesExpr::product(self, rhs)
    }
}

impl fmt::Display for SpeciesExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_at(f, 0)
    }
}
