//! The Taylor resolution of `S/M` and the multiplicity engine built on it.
//!
//! Faces are subsets of the generator list encoded as bitmasks (bit `i` is
//! generator `i`). The multidegree of a face is the lcm of its members, its
//! homological degree is its size. The engine never needs the resolution to
//! be minimal: the alternating power sums of face degrees vanish below the
//! codimension and give `(-1)^c c! e(S/M)` at the codimension.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{internal, Error, Result};
use crate::ideal::MonomialIdeal;
use crate::invariants;
use crate::monomial::Monomial;

/// Largest generator count for which the full subset complex is built.
pub const MAX_TAYLOR_GENERATORS: usize = 20;

fn check_size(m: &MonomialIdeal) -> Result<()> {
    if m.len() > MAX_TAYLOR_GENERATORS {
        Err(Error::ResolutionTooLarge {
            generators: m.len(),
            max: MAX_TAYLOR_GENERATORS,
        })
    } else {
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TaylorFace {
    pub members: u32,
    pub mdeg: Monomial,
}

impl TaylorFace {
    pub fn hdeg(&self) -> usize {
        self.members.count_ones() as usize
    }
}

/// One summand of the differential of a face.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DifferentialTerm {
    pub target: u32,
    pub sign: i8,
    pub coeff: Monomial,
}

#[derive(Debug, Clone)]
pub struct TaylorResolution {
    ideal: MonomialIdeal,
    /// Ordered by homological degree, then bitmask.
    faces: Vec<TaylorFace>,
    /// `position[mask]` is the index of that face in `faces`.
    position: Vec<u32>,
}

impl TaylorResolution {
    pub fn new(m: &MonomialIdeal) -> Result<Self> {
        check_size(m)?;
        let q = m.len();
        let total = 1usize << q;
        // mdeg(mask) = lcm(mdeg(mask minus its lowest bit), that generator)
        let mut mdegs: Vec<Monomial> = Vec::with_capacity(total);
        mdegs.push(Monomial::one(m.ring()));
        for mask in 1..total {
            let low = mask.trailing_zeros() as usize;
            let prev = &mdegs[mask & (mask - 1)];
            mdegs.push(prev.lcm(m.generator(low))?);
        }
        let mut order: Vec<u32> = (0..total as u32).collect();
        order.sort_by_key(|&mask| (mask.count_ones(), mask));
        let mut position = vec![0u32; total];
        for (i, &mask) in order.iter().enumerate() {
            position[mask as usize] = i as u32;
        }
        let mut slots: Vec<Option<Monomial>> = mdegs.into_iter().map(Some).collect();
        let faces = order
            .iter()
            .map(|&mask| TaylorFace {
                members: mask,
                mdeg: slots[mask as usize].take().expect("each mask visited once"),
            })
            .collect();
        Ok(TaylorResolution {
            ideal: m.clone(),
            faces,
            position,
        })
    }

    pub fn ideal(&self) -> &MonomialIdeal {
        &self.ideal
    }

    pub fn faces(&self) -> &[TaylorFace] {
        &self.faces
    }

    pub fn face(&self, members: u32) -> Option<&TaylorFace> {
        self.position
            .get(members as usize)
            .map(|&p| &self.faces[p as usize])
    }

    /// Rank of the free module in homological degree `s`.
    pub fn rank(&self, s: usize) -> usize {
        self.faces.iter().filter(|f| f.hdeg() == s).count()
    }

    pub fn ranks(&self) -> Vec<usize> {
        let mut ranks = vec![0; self.ideal.len() + 1];
        for f in &self.faces {
            ranks[f.hdeg()] += 1;
        }
        ranks
    }

    /// Sign and monomial coefficient of the summand of `d(face)` obtained by
    /// removing the member at 1-based `position` (members in increasing
    /// index order).
    pub fn differential_coefficient(&self, members: u32, position: usize) -> Result<(i8, Monomial)> {
        let face = self
            .face(members)
            .ok_or_else(|| Error::InvalidArgument(format!("face {members:#b} is not in the resolution")))?;
        let hdeg = face.hdeg();
        if position == 0 || position > hdeg {
            return Err(Error::InvalidArgument(format!(
                "position {position} out of range for a face of size {hdeg}"
            )));
        }
        let removed = nth_member(members, position - 1);
        let facet = self.face(members & !(1 << removed)).expect("sub-face exists");
        let sign = if position % 2 == 1 { 1 } else { -1 };
        Ok((sign, face.mdeg.quotient(&facet.mdeg)?))
    }

    /// All summands of `d(face)`; empty for the empty face.
    pub fn differential(&self, members: u32) -> Result<Vec<DifferentialTerm>> {
        let hdeg = members.count_ones() as usize;
        (1..=hdeg)
            .map(|j| {
                let (sign, coeff) = self.differential_coefficient(members, j)?;
                let removed = nth_member(members, j - 1);
                Ok(DifferentialTerm {
                    target: members & !(1 << removed),
                    sign,
                    coeff,
                })
            })
            .collect()
    }
}

fn nth_member(members: u32, n: usize) -> u32 {
    let mut bits = members;
    for _ in 0..n {
        bits &= bits - 1;
    }
    bits.trailing_zeros()
}

/// `deg(mdeg(face))` for every bitmask, computed by a depth-first walk that
/// keeps one lcm buffer per depth.
pub fn face_degrees(m: &MonomialIdeal) -> Result<Vec<u64>> {
    check_size(m)?;
    let q = m.len();
    let n = m.ring().len();
    let gens: Vec<&[u32]> = m.generators().iter().map(|g| g.exponents()).collect();
    let mut degrees = vec![0u64; 1 << q];
    let mut stack: Vec<Vec<u32>> = vec![vec![0; n]; q + 1];
    walk(&gens, 0, 0, 0, 0, &mut stack, &mut degrees);
    Ok(degrees)
}

fn walk(
    gens: &[&[u32]],
    start: usize,
    depth: usize,
    mask: usize,
    degree: u64,
    stack: &mut [Vec<u32>],
    degrees: &mut [u64],
) {
    degrees[mask] = degree;
    for i in start..gens.len() {
        let (lower, upper) = stack.split_at_mut(depth + 1);
        let cur = &lower[depth];
        let next = &mut upper[0];
        let mut d = degree;
        for ((slot, &c), &g) in next.iter_mut().zip(cur.iter()).zip(gens[i].iter()) {
            if g > c {
                d += (g - c) as u64;
                *slot = g;
            } else {
                *slot = c;
            }
        }
        walk(gens, i + 1, depth + 1, mask | 1 << i, d, stack, degrees);
    }
}

/// Counts of faces by homological degree and total multidegree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeProfile {
    /// `counts[i][d]` = number of faces of size `i` whose lcm has degree `d`.
    pub counts: Vec<BTreeMap<u64, u64>>,
}

impl DegreeProfile {
    pub fn of(m: &MonomialIdeal) -> Result<Self> {
        let degrees = face_degrees(m)?;
        let mut counts = vec![BTreeMap::new(); m.len() + 1];
        for (mask, &d) in degrees.iter().enumerate() {
            *counts[mask.count_ones() as usize].entry(d).or_insert(0u64) += 1;
        }
        Ok(DegreeProfile { counts })
    }

    /// `sum_{i>=1} (-1)^i sum_j deg_{ij}^k`.
    pub fn power_sum(&self, k: u32) -> BigInt {
        let mut total = BigInt::zero();
        for (i, layer) in self.counts.iter().enumerate().skip(1) {
            let mut s = BigInt::zero();
            for (&d, &count) in layer {
                s += BigInt::from(d).pow(k) * count;
            }
            if i % 2 == 1 {
                total -= s;
            } else {
                total += s;
            }
        }
        total
    }

    /// Same sum with the `i = 0` face included; its degree is 0, so it only
    /// contributes (as `0^0 = 1`) when `k = 0`.
    pub fn power_sum_with_origin(&self, k: u32) -> BigInt {
        let origin = if k == 0 { BigInt::one() } else { BigInt::zero() };
        self.power_sum(k) + origin
    }
}

/// Alternating power sum over homological degrees `1..=q` of the Taylor
/// resolution.
pub fn ps_power_sum(m: &MonomialIdeal, k: u32) -> Result<BigInt> {
    Ok(DegreeProfile::of(m)?.power_sum(k))
}

/// [`ps_power_sum`] including the `i = 0` term; equals 0 at `k = 0`.
pub fn ps_power_sum_with_origin(m: &MonomialIdeal, k: u32) -> Result<BigInt> {
    Ok(DegreeProfile::of(m)?.power_sum_with_origin(k))
}

/// Multiplicity of `S/M` from the power sum at `k = codim(M)`.
pub fn multiplicity_ps(m: &MonomialIdeal) -> Result<u64> {
    let c = invariants::codim(m);
    let profile = DegreeProfile::of(m)?;
    multiplicity_from_power_sum(&profile.power_sum(c as u32), c)
}

pub(crate) fn multiplicity_from_power_sum(sum: &BigInt, c: usize) -> Result<u64> {
    let factorial: BigInt = (1..=c as u64).map(BigInt::from).product();
    let signed = if c % 2 == 1 { -sum.clone() } else { sum.clone() };
    if !(&signed % &factorial).is_zero() {
        return internal(format!("power sum {sum} is not divisible by {c}!"));
    }
    let e = signed / factorial;
    if !e.is_positive() {
        return internal(format!("power sum {sum} gives nonpositive multiplicity {e}"));
    }
    e.to_u64()
        .ok_or_else(|| Error::ResourceCap(format!("multiplicity {e} does not fit in 64 bits")))
}

/// Whether no differential coefficient of the Taylor resolution is a unit.
/// A facet's lcm always divides the face's lcm, so equal degrees mean equal
/// multidegrees.
pub fn is_taylor_minimal(m: &MonomialIdeal) -> Result<bool> {
    let degrees = face_degrees(m)?;
    for (mask, &d) in degrees.iter().enumerate() {
        let mut bits = mask;
        while bits != 0 {
            let low = bits & bits.wrapping_neg();
            bits ^= low;
            if degrees[mask ^ low] == d {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Multigraded Betti numbers `beta_{i, l}` keyed by homological degree and
/// multidegree.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BettiTable {
    pub entries: BTreeMap<(usize, Monomial), u64>,
}

impl BettiTable {
    pub fn add(&mut self, hdeg: usize, mdeg: Monomial, count: u64) {
        if count > 0 {
            *self.entries.entry((hdeg, mdeg)).or_insert(0) += count;
        }
    }

    pub fn get(&self, hdeg: usize, mdeg: &Monomial) -> u64 {
        self.entries
            .get(&(hdeg, mdeg.clone()))
            .copied()
            .unwrap_or(0)
    }

    /// Total Betti number in homological degree `i`.
    pub fn total(&self, hdeg: usize) -> u64 {
        self.entries
            .iter()
            .filter(|((i, _), _)| *i == hdeg)
            .map(|(_, &c)| c)
            .sum()
    }

    /// Graded view: `(i, total degree) -> count`.
    pub fn graded(&self) -> BTreeMap<(usize, u64), u64> {
        let mut out = BTreeMap::new();
        for ((i, m), &c) in &self.entries {
            *out.entry((*i, m.degree())).or_insert(0) += c;
        }
        out
    }

    pub fn max_hdeg(&self) -> usize {
        self.entries.keys().map(|(i, _)| *i).max().unwrap_or(0)
    }
}

/// Betti table of a dominant ideal, read off its (then minimal) Taylor
/// resolution.
pub fn betti_table(m: &MonomialIdeal) -> Result<BettiTable> {
    if !invariants::is_dominant(m) {
        return Err(Error::Unsupported(
            "Betti numbers are only available for dominant ideals".into(),
        ));
    }
    let res = TaylorResolution::new(m)?;
    let mut table = BettiTable::default();
    for f in res.faces() {
        table.add(f.hdeg(), f.mdeg.clone(), 1);
    }
    Ok(table)
}

/// `max(deg(mdeg) - hdeg)` over all faces of a dominant ideal.
pub fn regularity_dominant(m: &MonomialIdeal) -> Result<u64> {
    if !invariants::is_dominant(m) {
        return Err(Error::Unsupported(
            "regularity is only available for dominant ideals".into(),
        ));
    }
    let degrees = face_degrees(m)?;
    Ok(degrees
        .iter()
        .enumerate()
        .map(|(mask, &d)| d - mask.count_ones() as u64)
        .max()
        .unwrap_or(0))
}
