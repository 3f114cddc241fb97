//! Exact truncated power series in the cycle-index variable families.
//!
//! A [`TruncatedSeries`] is a finite sum of monomials in three variable
//! families with exact [`Rational`] coefficients:
//!
//! * `x1, x2, x3, ...` — the variable `xi` carries weighted degree `i`,
//! * `y1, y2, y3, ...` — the variable `yj` carries weighted degree `j`,
//! * named weight marks (`y`, `y2`, ...) — each mark carries mark-degree 1
//!   per exponent unit and no x/y degree.
//!
//! Every series owns a set of [`Caps`], one bound per family. Coefficients
//! below the caps are exact; terms that would exceed any cap are silently
//! discarded, both at construction and inside every operation. Binary
//! operations return the componentwise minimum of the operand caps, so a
//! result never claims more precision than its inputs support.
//!
//! Invariants maintained throughout:
//!
//! * stored coefficients are nonzero (an absent monomial means zero),
//! * every stored monomial respects all three caps,
//! * coefficients are in lowest terms with positive denominators.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{BigInt, One, Signed, Zero};
use thiserror::Error;

use crate::rational::Rational;

/// One variable: a member of the x-family, the y-family, or a named weight mark.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum VarId {
    /// `xi` with `i >= 1`; weighted degree `i`.
    X(u32),
    /// `yj` with `j >= 1`; weighted degree `j`.
    Y(u32),
    /// A named weight mark; mark-degree 1 per exponent unit.
    Mark(String),
}

impl VarId {
    /// Mark variable with the given name.
    pub fn mark(name: &str) -> Self {
        VarId::Mark(name.to_string())
    }

    /// Weighted degree contributed by one exponent unit of this variable,
    /// split by family as `(x, y, mark)`.
    fn unit_degree(&self) -> Degrees {
        match self {
            VarId::X(i) => Degrees { x: *i, y: 0, mark: 0 },
            VarId::Y(j) => Degrees { x: 0, y: *j, mark: 0 },
            VarId::Mark(_) => Degrees { x: 0, y: 0, mark: 1 },
        }
    }
}

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VarId::X(i) => write!(f, "x{i}"),
            VarId::Y(j) => write!(f, "y{j}"),
            VarId::Mark(name) => write!(f, "{name}"),
        }
    }
}

/// Weighted degree of a monomial, split by variable family.
#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Degrees {
    pub x: u32,
    pub y: u32,
    pub mark: u32,
}

impl Degrees {
    fn total(self) -> u64 {
        self.x as u64 + self.y as u64 + self.mark as u64
    }

    fn scaled(self, k: u32) -> Self {
        Degrees {
            x: self.x.saturating_mul(k),
            y: self.y.saturating_mul(k),
            mark: self.mark.saturating_mul(k),
        }
    }
}

impl Add for Degrees {
    type Output = Degrees;
    fn add(self, rhs: Degrees) -> Degrees {
        Degrees {
            x: self.x.saturating_add(rhs.x),
            y: self.y.saturating_add(rhs.y),
            mark: self.mark.saturating_add(rhs.mark),
        }
    }
}

/// Truncation bounds, one per variable family.
///
/// A monomial is admitted when its x-weighted degree is at most `x`, its
/// y-weighted degree at most `y`, and its mark-degree at most `mark`.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub struct Caps {
    pub x: u32,
    pub y: u32,
    pub mark: u32,
}

impl Caps {
    /// The same bound for all three families.
    pub fn uniform(n: u32) -> Self {
        Caps { x: n, y: n, mark: n }
    }

    /// Componentwise minimum; the caps carried by binary-operation results.
    pub fn min(a: Caps, b: Caps) -> Caps {
        Caps {
            x: a.x.min(b.x),
            y: a.y.min(b.y),
            mark: a.mark.min(b.mark),
        }
    }

    /// Whether a monomial of the given degrees fits under these caps.
    pub fn admits(&self, d: Degrees) -> bool {
        d.x <= self.x && d.y <= self.y && d.mark <= self.mark
    }
}

impl Default for Caps {
    fn default() -> Self {
        Caps::uniform(10)
    }
}

/// A product of variable powers in canonical form: factors sorted by
/// variable, no zero exponents, degrees cached per family.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Monomial {
    vars: Vec<(VarId, u32)>,
    deg: Degrees,
}

impl Monomial {
    /// The empty product.
    pub fn one() -> Self {
        Monomial { vars: Vec::new(), deg: Degrees::default() }
    }

    /// A single variable power `v^e`.
    pub fn var(v: VarId, e: u32) -> Self {
        if e == 0 {
            return Monomial::one();
        }
        let deg = v.unit_degree().scaled(e);
        Monomial { vars: vec![(v, e)], deg }
    }

    /// Build from arbitrary `(variable, exponent)` pairs, merging duplicates
    /// and dropping zero exponents.
    pub fn from_pairs<I: IntoIterator<Item = (VarId, u32)>>(pairs: I) -> Self {
        let mut map: BTreeMap<VarId, u32> = BTreeMap::new();
        for (v, e) in pairs {
            if e > 0 {
                *map.entry(v).or_insert(0) += e;
            }
        }
        let mut deg = Degrees::default();
        let vars: Vec<_> = map.into_iter().collect();
        for (v, e) in &vars {
            deg = deg + v.unit_degree().scaled(*e);
        }
        Monomial { vars, deg }
    }

    pub fn is_one(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn degrees(&self) -> Degrees {
        self.deg
    }

    pub fn iter(&self) -> impl Iterator<Item = &(VarId, u32)> {
        self.vars.iter()
    }

    pub fn exponent_of(&self, v: &VarId) -> u32 {
        self.vars
            .iter()
            .find(|(w, _)| w == v)
            .map(|(_, e)| *e)
            .unwrap_or(0)
    }

    /// Product of two monomials (exponents add).
    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial::from_pairs(
            self.vars.iter().cloned().chain(other.vars.iter().cloned()),
        )
    }

    /// `self^k` (exponents scale by `k`).
    pub fn pow(&self, k: u32) -> Monomial {
        if k == 0 {
            return Monomial::one();
        }
        let vars: Vec<_> = self.vars.iter().map(|(v, e)| (v.clone(), e * k)).collect();
        let deg = self.deg.scaled(k);
        Monomial { vars, deg }
    }

    /// Reindex `xi -> x(k*i)` and `yj -> y(k*j)`, and raise each weight mark
    /// to its `k`-th power. This is the monomial layer of series stretching.
    fn stretch(&self, k: u32) -> Monomial {
        let vars: Vec<_> = self
            .vars
            .iter()
            .map(|(v, e)| match v {
                VarId::X(i) => (VarId::X(i * k), *e),
                VarId::Y(j) => (VarId::Y(j * k), *e),
                VarId::Mark(m) => (VarId::Mark(m.clone()), e * k),
            })
            .collect();
        let deg = self.deg.scaled(k);
        Monomial { vars, deg }
    }

    /// The mark-only part of this monomial (x/y factors removed).
    pub fn marks_only(&self) -> Monomial {
        Monomial::from_pairs(
            self.vars
                .iter()
                .filter(|(v, _)| matches!(v, VarId::Mark(_)))
                .cloned(),
        )
    }
}

impl Ord for Monomial {
    /// Graded order: total weighted degree first, then lexicographic on the
    /// canonical factor list. This makes map iteration (and printing)
    /// deterministic and degree-sorted.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.deg.total(), &self.vars).cmp(&(other.deg.total(), &other.vars))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (v, e) in &self.vars {
            if !first {
                write!(f, " ")?;
            }
            first = false;
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Rejected inputs for series operations.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum SeriesError {
    #[error("exponential requires a zero constant term")]
    ExpNonzeroConstant,
    #[error("logarithm requires constant term 1")]
    LogConstantNotOne,
    #[error("inverse requires a nonzero constant term")]
    InvZeroConstant,
    #[error("stretch requires a single variable family, found both x and y")]
    StretchMixedFamilies,
    #[error("coefficient of `{0}` lies beyond the series caps")]
    CoeffBeyondCaps(String),
}

/// Map from variables to replacement series, for [`TruncatedSeries::substitute`].
/// Unassigned variables are sent to zero.
pub type Assignment = BTreeMap<VarId, TruncatedSeries>;

/// A truncated multivariate power series with exact rational coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TruncatedSeries {
    terms: BTreeMap<Monomial, Rational>,
    caps: Caps,
}

impl TruncatedSeries {
    pub fn zero(caps: Caps) -> Self {
        TruncatedSeries { terms: BTreeMap::new(), caps }
    }

    pub fn one(caps: Caps) -> Self {
        Self::constant(Rational::one(), caps)
    }

    pub fn constant(c: Rational, caps: Caps) -> Self {
        Self::term(Monomial::one(), c, caps)
    }

    /// The single-term series `c * m`, dropped if `m` exceeds `caps` or `c` is zero.
    pub fn term(m: Monomial, c: Rational, caps: Caps) -> Self {
        let mut s = Self::zero(caps);
        s.insert_add(m, c);
        s
    }

    /// The variable `xi`.
    pub fn x(i: u32, caps: Caps) -> Self {
        Self::term(Monomial::var(VarId::X(i), 1), Rational::one(), caps)
    }

    /// The variable `yj`.
    pub fn y(j: u32, caps: Caps) -> Self {
        Self::term(Monomial::var(VarId::Y(j), 1), Rational::one(), caps)
    }

    /// The weight mark with the given name.
    pub fn mark(name: &str, caps: Caps) -> Self {
        Self::term(Monomial::var(VarId::mark(name), 1), Rational::one(), caps)
    }

    pub fn caps(&self) -> Caps {
        self.caps
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Iterate stored terms in graded order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// The coefficient of `m`, or an error if `m` lies beyond the caps
    /// (where the series carries no information).
    pub fn coeff(&self, m: &Monomial) -> Result<Rational, SeriesError> {
        if !self.caps.admits(m.degrees()) {
            return Err(SeriesError::CoeffBeyondCaps(m.to_string()));
        }
        Ok(self.terms.get(m).cloned().unwrap_or_else(Rational::zero))
    }

    /// The coefficient of the empty monomial.
    pub fn constant_term(&self) -> Rational {
        self.terms
            .get(&Monomial::one())
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// `Some(c)` when the series is the constant `c`, marks included in "not constant".
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 if self.terms.contains_key(&Monomial::one()) => Some(self.constant_term()),
            _ => None,
        }
    }

    fn insert_add(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() || !self.caps.admits(m.degrees()) {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Tighten the caps to `Caps::min(self.caps, caps)`, dropping newly
    /// out-of-range terms.
    pub fn truncate(&self, caps: Caps) -> Self {
        let caps = Caps::min(self.caps, caps);
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| caps.admits(m.degrees()))
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        TruncatedSeries { terms, caps }
    }

    /// Raise the y-family cap. Sound only when the series involves no
    /// y-family variable, so that every y-coefficient really is zero rather
    /// than unknown; used when embedding one-sort indices into two-sort ones.
    pub(crate) fn with_y_cap(&self, cap_y: u32) -> Self {
        debug_assert!(
            self.terms.keys().all(|m| m.degrees().y == 0),
            "cannot widen the y window of a series with y terms"
        );
        let mut s = self.clone();
        s.caps.y = cap_y;
        s
    }

    /// Multiply every coefficient by `c`.
    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.caps);
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, x)| (m.clone(), x * c))
            .collect();
        TruncatedSeries { terms, caps: self.caps }
    }

    /// `self^k` by repeated multiplication.
    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.caps);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Drop the constant term.
    pub fn positive_part(&self) -> Self {
        let mut s = self.clone();
        s.terms.remove(&Monomial::one());
        s
    }

    /// Keep exactly the terms of x-weighted degree `n`.
    pub fn homogeneous_x(&self, n: u32) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.degrees().x == n)
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        TruncatedSeries { terms, caps: self.caps }
    }

    /// All weight-mark variables appearing in the series.
    pub fn mark_vars(&self) -> BTreeSet<VarId> {
        let mut out = BTreeSet::new();
        for m in self.terms.keys() {
            for (v, _) in m.iter() {
                if matches!(v, VarId::Mark(_)) {
                    out.insert(v.clone());
                }
            }
        }
        out
    }

    fn has_family(&self, want_x: bool) -> bool {
        self.terms.keys().any(|m| {
            let d = m.degrees();
            if want_x {
                d.x > 0
            } else {
                d.y > 0
            }
        })
    }

    /// Exponential `sum f^k / k!`, accumulated until every term of `f^k`
    /// exceeds the caps. Requires a zero constant term, which guarantees
    /// termination: `f^k` has total weighted degree at least `k`.
    pub fn exp(&self) -> Result<Self, SeriesError> {
        if !self.constant_term().is_zero() {
            return Err(SeriesError::ExpNonzeroConstant);
        }
        let mut acc = Self::one(self.caps);
        let mut power = Self::one(self.caps);
        let mut kfact = BigInt::one();
        let bound = self.caps.x as u64 + self.caps.y as u64 + self.caps.mark as u64;
        for k in 1..=bound.max(1) {
            power = &power * self;
            if power.is_zero() {
                break;
            }
            kfact *= k;
            acc = &acc + &power.scale(&Rational::new(BigInt::one(), kfact.clone()));
        }
        Ok(acc)
    }

    /// Logarithm `sum (-1)^(k+1) (f-1)^k / k`. Requires constant term 1.
    pub fn log(&self) -> Result<Self, SeriesError> {
        if !self.constant_term().is_one() {
            return Err(SeriesError::LogConstantNotOne);
        }
        let g = self - &Self::one(self.caps);
        let mut acc = Self::zero(self.caps);
        let mut power = Self::one(self.caps);
        let bound = self.caps.x as u64 + self.caps.y as u64 + self.caps.mark as u64;
        for k in 1..=bound.max(1) {
            power = &power * &g;
            if power.is_zero() {
                break;
            }
            let c = Rational::new(
                if k % 2 == 1 { BigInt::one() } else { -BigInt::one() },
                BigInt::from(k),
            );
            acc = &acc + &power.scale(&c);
        }
        Ok(acc)
    }

    /// Multiplicative inverse via the geometric series: with `f = c(1 + u)`,
    /// `1/f = (1/c) sum (-u)^k`. Requires a nonzero constant term.
    pub fn inv(&self) -> Result<Self, SeriesError> {
        let c = self.constant_term();
        if c.is_zero() {
            return Err(SeriesError::InvZeroConstant);
        }
        let neg_u = {
            let normalized = self.scale(&c.recip());
            &Self::one(self.caps) - &normalized
        };
        let mut acc = Self::one(self.caps);
        let mut power = Self::one(self.caps);
        let bound = self.caps.x as u64 + self.caps.y as u64 + self.caps.mark as u64;
        for _ in 1..=bound.max(1) {
            power = &power * &neg_u;
            if power.is_zero() {
                break;
            }
            acc = &acc + &power;
        }
        Ok(acc.scale(&c.recip()))
    }

    /// Substitute `xi -> x(k*i)`, `yj -> y(k*j)`, and raise every weight mark
    /// to its `k`-th power. Rejects series mixing the x and y families, where
    /// a single reindexing scale is ambiguous in the calling conventions.
    pub fn stretch(&self, k: u32) -> Result<Self, SeriesError> {
        assert!(k >= 1, "stretch scale must be positive");
        if self.has_family(true) && self.has_family(false) {
            return Err(SeriesError::StretchMixedFamilies);
        }
        let mut out = Self::zero(self.caps);
        for (m, c) in &self.terms {
            out.insert_add(m.stretch(k), c.clone());
        }
        Ok(out)
    }

    /// Simultaneous substitution: every variable with an entry in `assign`
    /// is replaced by its series, and every monomial containing an
    /// unassigned variable is dropped (unassigned variables map to zero).
    ///
    /// The result carries `self.caps` lowered to the caps of every assigned
    /// series that is actually used. Replacement powers are truncated as
    /// they are formed, so substitution never fabricates terms above caps;
    /// if a replacement series has a nonzero constant term, low-degree
    /// contributions from beyond-cap terms of `self` are silently absent,
    /// as with any truncation.
    pub fn substitute(&self, assign: &Assignment) -> Self {
        let mut caps = self.caps;
        for m in self.terms.keys() {
            for (v, _) in m.iter() {
                if let Some(g) = assign.get(v) {
                    caps = Caps::min(caps, g.caps());
                }
            }
        }
        // Powers of each replacement series, grown on demand.
        let mut powers: BTreeMap<&VarId, Vec<TruncatedSeries>> = BTreeMap::new();
        let mut out = Self::zero(caps);
        'terms: for (m, c) in &self.terms {
            let mut prod = Self::constant(c.clone(), caps);
            for (v, e) in m.iter() {
                let Some(g) = assign.get(v) else { continue 'terms };
                let pow_list = powers
                    .entry(v)
                    .or_insert_with(|| vec![Self::one(caps), g.truncate(caps)]);
                while pow_list.len() <= *e as usize {
                    let next = pow_list.last().unwrap() * &pow_list[1];
                    pow_list.push(next);
                }
                prod = &prod * &pow_list[*e as usize];
                if prod.is_zero() {
                    continue 'terms;
                }
            }
            out = &out + &prod;
        }
        out
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let caps = Caps::min(self.caps, rhs.caps);
        let mut out = TruncatedSeries::zero(caps);
        for (m, c) in &self.terms {
            out.insert_add(m.clone(), c.clone());
        }
        for (m, c) in &rhs.terms {
            out.insert_add(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn sub(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        self + &(-rhs)
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        self.scale(&-Rational::one())
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let caps = Caps::min(self.caps, rhs.caps);
        let mut out = TruncatedSeries::zero(caps);
        for (ma, ca) in &self.terms {
            if !caps.admits(ma.degrees()) {
                continue;
            }
            for (mb, cb) in &rhs.terms {
                // Cheap degree check before any bignum work.
                if !caps.admits(ma.degrees() + mb.degrees()) {
                    continue;
                }
                out.insert_add(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            let negative = c.is_negative();
            let abs = c.abs();
            if first {
                if negative {
                    write!(f, "-")?;
                }
                first = false;
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs} {m}")?;
            }
        }
        Ok(())
    }
}
