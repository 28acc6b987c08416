use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::monomial::{Monomial, PolarSet, VariableTable};

/// A monomial ideal stored by its minimal generators in canonical
/// graded-lex order. Two ideals over the same table are equal iff their
/// generator lists are equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    ring: Arc<VariableTable>,
    gens: Vec<Monomial>,
}

impl MonomialIdeal {
    /// Drops every monomial divisible by another one in the list, removes
    /// duplicates and sorts canonically.
    pub fn minimalize(ring: &Arc<VariableTable>, raw: impl IntoIterator<Item = Monomial>) -> Result<Self> {
        let mut gens: Vec<Monomial> = raw.into_iter().collect();
        if gens.is_empty() {
            return Err(Error::EmptyIdeal);
        }
        for g in &gens {
            if !(Arc::ptr_eq(g.ring(), ring) || **g.ring() == **ring) {
                return Err(Error::MismatchedRings);
            }
            if g.is_one() {
                return Err(Error::UnitGenerator);
            }
        }
        gens.sort_by(|a, b| a.grlex_cmp(b));
        gens.dedup();
        // a divisor always has degree <= its multiple, so only earlier
        // entries can make a later one redundant
        let mut kept: Vec<Monomial> = Vec::with_capacity(gens.len());
        for g in gens {
            if !kept.iter().any(|k| k.divides(&g)) {
                kept.push(g);
            }
        }
        Ok(MonomialIdeal {
            ring: Arc::clone(ring),
            gens: kept,
        })
    }

    /// Like [`minimalize`](Self::minimalize) but also reports the inputs that
    /// were redundant.
    pub fn minimalize_reporting(
        ring: &Arc<VariableTable>,
        raw: Vec<Monomial>,
    ) -> Result<(Self, Vec<Monomial>)> {
        let ideal = Self::minimalize(ring, raw.iter().cloned())?;
        let mut seen: Vec<&Monomial> = Vec::new();
        let mut dropped = Vec::new();
        for m in &raw {
            if ideal.gens.contains(m) && !seen.contains(&m) {
                seen.push(m);
            } else {
                dropped.push(m.clone());
            }
        }
        Ok((ideal, dropped))
    }

    pub fn ring(&self) -> &Arc<VariableTable> {
        &self.ring
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn generator(&self, index: usize) -> &Monomial {
        &self.gens[index]
    }

    /// Number of minimal generators.
    pub fn len(&self) -> usize {
        self.gens.len()
    }

    /// Always false; kept for API symmetry with `len`.
    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    /// Union of generator supports.
    pub fn support(&self) -> u64 {
        self.gens.iter().fold(0, |acc, g| acc | g.support())
    }

    /// The ideal generated by the generators at `indices` (already minimal,
    /// since any subset of a minimal generating set is minimal).
    pub fn sub_ideal(&self, indices: &[usize]) -> Result<Self> {
        Self::minimalize(&self.ring, indices.iter().map(|&i| self.gens[i].clone()))
    }

    /// The ideal with generator `index` removed.
    pub fn without(&self, index: usize) -> Result<Self> {
        let rest: Vec<usize> = (0..self.len()).filter(|&i| i != index).collect();
        self.sub_ideal(&rest)
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }

    pub fn polar_sets(&self) -> Vec<PolarSet> {
        self.gens.iter().map(PolarSet::of).collect()
    }

    /// Same generators over a permuted copy of the table; `perm[i]` is the
    /// new position of variable `i`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        let n = self.ring.len();
        if perm.len() != n {
            return Err(Error::InvalidArgument("permutation length mismatch".into()));
        }
        let mut names = vec![String::new(); n];
        for (i, &p) in perm.iter().enumerate() {
            names[p] = self.ring.name(i).to_string();
        }
        let ring = VariableTable::new(names)?;
        let gens = self.gens.iter().map(|g| {
            let mut exps = vec![0; n];
            for (i, e) in g.pairs() {
                exps[perm[i]] = e;
            }
            Monomial::from_exponents(&ring, exps)
        });
        Self::minimalize(&ring, gens.collect::<Result<Vec<_>>>()?)
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MonomialIdeal({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(names: &str) -> Arc<VariableTable> {
        VariableTable::new(names.chars().map(|c| c.to_string())).unwrap()
    }

    fn mono(r: &Arc<VariableTable>, exps: &[u32]) -> Monomial {
        Monomial::from_exponents(r, exps.to_vec()).unwrap()
    }

    #[test]
    fn drops_multiples() {
        let r = ring("xy");
        let m = MonomialIdeal::minimalize(&r, [mono(&r, &[2, 0]), mono(&r, &[3, 0]), mono(&r, &[0, 1])]).unwrap();
        assert_eq!(m.to_string(), "y, x^2");
    }

    #[test]
    fn already_minimal() {
        let r = ring("ab");
        let m = MonomialIdeal::minimalize(&r, [mono(&r, &[2, 0]), mono(&r, &[0, 3]), mono(&r, &[1, 1])]).unwrap();
        assert_eq!(m.len(), 3);
    }

    #[test]
    fn dedupes() {
        let r = ring("x");
        let m = MonomialIdeal::minimalize(&r, [mono(&r, &[1]), mono(&r, &[1])]).unwrap();
        assert_eq!(m.len(), 1);
    }

    #[test]
    fn rejects_empty_and_unit() {
        let r = ring("x");
        assert_eq!(MonomialIdeal::minimalize(&r, []).unwrap_err(), Error::EmptyIdeal);
        assert_eq!(
            MonomialIdeal::minimalize(&r, [Monomial::one(&r)]).unwrap_err(),
            Error::UnitGenerator
        );
    }

    #[test]
    fn reports_dropped() {
        let r = ring("xy");
        let raw = vec![mono(&r, &[2, 0]), mono(&r, &[3, 0]), mono(&r, &[2, 0])];
        let (m, dropped) = MonomialIdeal::minimalize_reporting(&r, raw).unwrap();
        assert_eq!(m.len(), 1);
        assert_eq!(dropped.len(), 2);
    }

    #[test]
    fn relabel_keeps_shape() {
        let r = ring("xyz");
        let m = MonomialIdeal::minimalize(&r, [mono(&r, &[2, 1, 0]), mono(&r, &[0, 0, 3])]).unwrap();
        let p = m.relabel(&[2, 0, 1]).unwrap();
        assert_eq!(p.ring().names(), ["y", "z", "x"]);
        assert_eq!(p.to_string(), "y*x^2, z^3");
    }
}
