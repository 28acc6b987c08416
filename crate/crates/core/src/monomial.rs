//! Monomials over a named variable table, with lcm/gcd/quotient arithmetic
//! and the polarization sets that turn degree identities into set
//! cardinalities.
//!
//! Exponents are stored densely (one `u32` per variable of the table). A zero
//! entry means the variable is absent, so the unit monomial is the all-zero
//! vector.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::error::{Error, Result, MAX_EXPONENT};

/// Upper bound on the number of variables; supports are tracked as `u64`
/// bitmasks.
pub const MAX_VARIABLES: usize = 64;

/// Ordered list of distinct variable names. Index `i` is variable `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VariableTable {
    names: Vec<String>,
}

impl VariableTable {
    pub fn new<I, S>(names: I) -> Result<Arc<Self>>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.len() > MAX_VARIABLES {
            return Err(Error::InvalidVariables(format!(
                "{} variables exceeds the limit of {MAX_VARIABLES}",
                names.len()
            )));
        }
        for (i, name) in names.iter().enumerate() {
            if !is_valid_name(name) {
                return Err(Error::InvalidVariables(format!("`{name}` is not a valid variable name")));
            }
            if names[..i].contains(name) {
                return Err(Error::InvalidVariables(format!("`{name}` is listed twice")));
            }
        }
        Ok(Arc::new(VariableTable { names }))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, index: usize) -> &str {
        &self.names[index]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

pub(crate) fn is_valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// A monomial `x_1^{e_1} ... x_n^{e_n}` attached to a variable table.
#[derive(Clone)]
pub struct Monomial {
    ring: Arc<VariableTable>,
    exps: Box<[u32]>,
}

impl Monomial {
    pub fn one(ring: &Arc<VariableTable>) -> Self {
        Monomial {
            ring: Arc::clone(ring),
            exps: vec![0; ring.len()].into_boxed_slice(),
        }
    }

    pub fn var(ring: &Arc<VariableTable>, index: usize) -> Result<Self> {
        Self::from_pairs(ring, &[(index, 1)])
    }

    /// Builds a monomial from a dense exponent vector (length must match the
    /// table).
    pub fn from_exponents(ring: &Arc<VariableTable>, exps: Vec<u32>) -> Result<Self> {
        if exps.len() != ring.len() {
            return Err(Error::InvalidArgument(format!(
                "exponent vector has length {}, table has {} variables",
                exps.len(),
                ring.len()
            )));
        }
        if let Some(&e) = exps.iter().find(|&&e| e > MAX_EXPONENT) {
            return Err(Error::ExponentTooLarge {
                value: e as u64,
                max: MAX_EXPONENT,
            });
        }
        Ok(Monomial {
            ring: Arc::clone(ring),
            exps: exps.into_boxed_slice(),
        })
    }

    /// Builds a monomial from sparse `(variable index, exponent)` pairs.
    /// Repeated indices multiply.
    pub fn from_pairs(ring: &Arc<VariableTable>, pairs: &[(usize, u32)]) -> Result<Self> {
        let mut exps = vec![0u64; ring.len()];
        for &(i, e) in pairs {
            if i >= ring.len() {
                return Err(Error::InvalidArgument(format!(
                    "variable index {i} out of range for {} variables",
                    ring.len()
                )));
            }
            exps[i] += e as u64;
        }
        if let Some(&e) = exps.iter().find(|&&e| e > MAX_EXPONENT as u64) {
            return Err(Error::ExponentTooLarge {
                value: e,
                max: MAX_EXPONENT,
            });
        }
        Self::from_exponents(ring, exps.into_iter().map(|e| e as u32).collect())
    }

    pub(crate) fn from_raw(ring: &Arc<VariableTable>, exps: Box<[u32]>) -> Self {
        debug_assert_eq!(exps.len(), ring.len());
        Monomial {
            ring: Arc::clone(ring),
            exps,
        }
    }

    pub fn ring(&self) -> &Arc<VariableTable> {
        &self.ring
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn exponent(&self, index: usize) -> u32 {
        self.exps[index]
    }

    /// Sparse view: `(variable index, exponent)` for every present variable.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| (i, e))
    }

    pub fn degree(&self) -> u64 {
        self.exps.iter().map(|&e| e as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    /// Bitmask of the variables that divide this monomial.
    pub fn support(&self) -> u64 {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .fold(0u64, |acc, (i, _)| acc | (1u64 << i))
    }

    pub fn same_ring(&self, other: &Monomial) -> bool {
        Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring
    }

    fn check_ring(&self, other: &Monomial) -> Result<()> {
        if self.same_ring(other) {
            Ok(())
        } else {
            Err(Error::MismatchedRings)
        }
    }

    /// `self | other`, coordinatewise `<=`.
    pub fn divides(&self, other: &Monomial) -> bool {
        self.same_ring(other) && divides_exps(&self.exps, &other.exps)
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.support() & other.support() == 0
    }

    pub fn lcm(&self, other: &Monomial) -> Result<Monomial> {
        self.check_ring(other)?;
        Ok(self.zip_with(other, u32::max))
    }

    pub fn gcd(&self, other: &Monomial) -> Result<Monomial> {
        self.check_ring(other)?;
        Ok(self.zip_with(other, u32::min))
    }

    pub fn mul(&self, other: &Monomial) -> Result<Monomial> {
        self.check_ring(other)?;
        let mut out = Vec::with_capacity(self.exps.len());
        for (&a, &b) in self.exps.iter().zip(other.exps.iter()) {
            let s = a as u64 + b as u64;
            if s > MAX_EXPONENT as u64 {
                return Err(Error::ExponentTooLarge {
                    value: s,
                    max: MAX_EXPONENT,
                });
            }
            out.push(s as u32);
        }
        Ok(Monomial::from_raw(&self.ring, out.into_boxed_slice()))
    }

    /// Exact division `self / divisor`; errors unless `divisor | self`.
    pub fn quotient(&self, divisor: &Monomial) -> Result<Monomial> {
        self.check_ring(divisor)?;
        if !divides_exps(&divisor.exps, &self.exps) {
            return Err(Error::NotDivisible {
                dividend: self.to_string(),
                divisor: divisor.to_string(),
            });
        }
        Ok(self.zip_with(divisor, |a, b| a - b))
    }

    /// Keeps only the variables in `mask`, setting every other variable to 1.
    pub fn restrict(&self, mask: u64) -> Monomial {
        let exps = self
            .exps
            .iter()
            .enumerate()
            .map(|(i, &e)| if mask >> i & 1 == 1 { e } else { 0 })
            .collect();
        Monomial::from_raw(&self.ring, exps)
    }

    fn zip_with(&self, other: &Monomial, f: impl Fn(u32, u32) -> u32) -> Monomial {
        let exps = self
            .exps
            .iter()
            .zip(other.exps.iter())
            .map(|(&a, &b)| f(a, b))
            .collect();
        Monomial::from_raw(&self.ring, exps)
    }

    /// Graded-lexicographic order used for canonical generator lists: lower
    /// total degree first, then larger exponent on the lowest-index variable
    /// first.
    pub fn grlex_cmp(&self, other: &Monomial) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.exps.cmp(&self.exps))
    }
}

pub(crate) fn divides_exps(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

/// lcm of a family; the empty family gives the unit monomial.
pub fn lcm_all<'a>(ring: &Arc<VariableTable>, monomials: impl IntoIterator<Item = &'a Monomial>) -> Result<Monomial> {
    monomials
        .into_iter()
        .try_fold(Monomial::one(ring), |acc, m| acc.lcm(m))
}

/// gcd of a nonempty family.
pub fn gcd_all<'a>(monomials: impl IntoIterator<Item = &'a Monomial>) -> Result<Monomial> {
    let mut it = monomials.into_iter();
    let first = it
        .next()
        .ok_or_else(|| Error::InvalidArgument("gcd of an empty family".into()))?
        .clone();
    it.try_fold(first, |acc, m| acc.gcd(m))
}

impl PartialEq for Monomial {
    fn eq(&self, other: &Self) -> bool {
        self.exps == other.exps && self.same_ring(other)
    }
}

impl Eq for Monomial {}

impl Hash for Monomial {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.exps.hash(state);
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        if self.same_ring(other) {
            self.exps.cmp(&other.exps)
        } else {
            self.ring
                .names
                .cmp(&other.ring.names)
                .then_with(|| self.exps.cmp(&other.exps))
        }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let mut first = true;
        for (i, e) in self.pairs() {
            if !first {
                f.write_str("*")?;
            }
            first = false;
            f.write_str(self.ring.name(i))?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Monomial({self})")
    }
}

/// The polarization set of a monomial: one label `(variable, slot)` per unit
/// of degree, with `slot` running from 1 to the variable's exponent.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct PolarSet {
    pub labels: BTreeSet<(usize, u32)>,
}

impl PolarSet {
    pub fn of(m: &Monomial) -> Self {
        let labels = m
            .pairs()
            .flat_map(|(i, e)| (1..=e).map(move |s| (i, s)))
            .collect();
        PolarSet { labels }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn union(&self, other: &PolarSet) -> PolarSet {
        PolarSet {
            labels: self.labels.union(&other.labels).copied().collect(),
        }
    }

    pub fn intersection(&self, other: &PolarSet) -> PolarSet {
        PolarSet {
            labels: self.labels.intersection(&other.labels).copied().collect(),
        }
    }

    pub fn difference(&self, other: &PolarSet) -> PolarSet {
        PolarSet {
            labels: self.labels.difference(&other.labels).copied().collect(),
        }
    }

    /// Labels rendered as `a_1`, `a_2`, ... using the given table.
    pub fn label_names(&self, ring: &VariableTable) -> Vec<String> {
        self.labels
            .iter()
            .map(|&(i, s)| format!("{}_{s}", ring.name(i)))
            .collect()
    }
}
