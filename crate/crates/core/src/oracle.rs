//! Independent multiplicity oracle.
//!
//! For a monomial ideal of height `c`, the minimal primes of maximal
//! dimension are the variable sets of size `c` meeting every generator. The
//! multiplicity is the sum over those primes of the length of the localized
//! quotient, which here is a count of standard monomials after setting the
//! variables outside the prime to 1.
//!
//! Nothing in this module uses the Taylor resolution or the codimension
//! search of [`crate::invariants`]; covers are found by plain subset
//! enumeration so the two multiplicity paths stay independent.

use crate::error::{Error, Result};
use crate::ideal::MonomialIdeal;
use crate::monomial::Monomial;

/// Upper bound on the lattice box scanned by [`colength`].
pub const COLENGTH_CAP: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverContribution {
    /// Variable indices, ascending.
    pub cover: Vec<usize>,
    pub colength: u64,
}

fn support_vars(m: &MonomialIdeal) -> Vec<usize> {
    let s = m.support();
    (0..64).filter(|&i| s >> i & 1 == 1).collect()
}

fn covers_all(m: &MonomialIdeal, mask: u64) -> bool {
    m.generators().iter().all(|g| g.support() & mask != 0)
}

/// All `k`-subsets of `pool`, as bitmasks, in lexicographic order of index
/// tuples.
fn subsets_of_size(pool: &[usize], k: usize) -> Vec<u64> {
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    if k > pool.len() {
        return out;
    }
    loop {
        out.push(idx.iter().fold(0u64, |acc, &i| acc | 1 << pool[i]));
        // advance the rightmost index that can still move
        let mut i = k;
        while i > 0 && idx[i - 1] == pool.len() - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return out;
        }
        i -= 1;
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Every variable set of minimum size that meets each generator's support.
pub fn minimal_covers(m: &MonomialIdeal) -> Vec<Vec<usize>> {
    let pool = support_vars(m);
    for k in 1..=pool.len() {
        let found: Vec<u64> = subsets_of_size(&pool, k)
            .into_iter()
            .filter(|&s| covers_all(m, s))
            .collect();
        if !found.is_empty() {
            return found.into_iter().map(mask_to_vec).collect();
        }
    }
    unreachable!("the full support always covers a nonempty ideal")
}

fn mask_to_vec(mask: u64) -> Vec<usize> {
    (0..64).filter(|&i| mask >> i & 1 == 1).collect()
}

/// Number of monomials in the cover variables outside the ideal obtained by
/// setting all other variables to 1.
pub fn colength(m: &MonomialIdeal, cover: &[usize]) -> Result<u64> {
    let n = m.ring().len();
    if let Some(&bad) = cover.iter().find(|&&v| v >= n) {
        return Err(Error::InvalidArgument(format!("variable index {bad} out of range")));
    }
    let mask = cover.iter().fold(0u64, |acc, &v| acc | 1 << v);
    if !covers_all(m, mask) {
        return Err(Error::InvalidArgument("variable set does not meet every generator".into()));
    }
    let min_size = minimal_covers(m).first().map_or(0, Vec::len);
    if mask.count_ones() as usize != min_size {
        return Err(Error::InvalidArgument(format!(
            "variable set has size {}, minimal covers have size {min_size}",
            mask.count_ones()
        )));
    }
    let vars = mask_to_vec(mask);
    let restricted = MonomialIdeal::minimalize(m.ring(), m.generators().iter().map(|g| g.restrict(mask)))?;
    let gens: Vec<Vec<u32>> = restricted
        .generators()
        .iter()
        .map(|g| vars.iter().map(|&v| g.exponent(v)).collect())
        .collect();

    let mut bounds = Vec::with_capacity(vars.len());
    for (k, &v) in vars.iter().enumerate() {
        let pure = gens
            .iter()
            .filter(|g| g.iter().enumerate().all(|(j, &e)| j == k || e == 0))
            .map(|g| g[k])
            .min();
        if pure.is_none() {
            return Err(Error::Internal(format!(
                "no pure power of {} after restriction; quotient is not Artinian",
                m.ring().name(v)
            )));
        }
        bounds.push(gens.iter().map(|g| g[k]).max().unwrap_or(0) as u64);
    }
    let volume = bounds.iter().try_fold(1u64, |acc, &b| acc.checked_mul(b));
    match volume {
        Some(v) if v <= COLENGTH_CAP => {}
        _ => {
            return Err(Error::ResourceCap(format!(
                "standard-monomial box exceeds {COLENGTH_CAP} points"
            )))
        }
    }

    let mut point = vec![0u32; vars.len()];
    let mut count = 0u64;
    loop {
        let inside = gens
            .iter()
            .any(|g| g.iter().zip(&point).all(|(&ge, &pe)| ge <= pe));
        if !inside {
            count += 1;
        }
        let mut k = 0;
        loop {
            if k == point.len() {
                return Ok(count);
            }
            point[k] += 1;
            if (point[k] as u64) < bounds[k] {
                break;
            }
            point[k] = 0;
            k += 1;
        }
    }
}

pub fn contributions(m: &MonomialIdeal) -> Result<Vec<CoverContribution>> {
    minimal_covers(m)
        .into_iter()
        .map(|cover| {
            let colength = colength(m, &cover)?;
            Ok(CoverContribution { cover, colength })
        })
        .collect()
}

/// Sum of colengths over all minimal covers.
pub fn multiplicity_associativity(m: &MonomialIdeal) -> Result<u64> {
    contributions(m)?
        .iter()
        .try_fold(0u64, |acc, c| acc.checked_add(c.colength))
        .ok_or_else(|| Error::ResourceCap("multiplicity overflows 64 bits".into()))
}

/// Monomial-level helper for callers that only have generators at hand.
pub fn colength_of_generators(
    ring: &std::sync::Arc<crate::monomial::VariableTable>,
    gens: Vec<Monomial>,
    cover: &[usize],
) -> Result<u64> {
    colength(&MonomialIdeal::minimalize(ring, gens)?, cover)
}
