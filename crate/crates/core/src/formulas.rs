//! Closed-form multiplicities (and one regularity formula), each guarded by
//! a check of the hypothesis it needs.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use crate::error::{hypothesis, internal, Error, Result};
use crate::ideal::MonomialIdeal;
use crate::invariants::{self, pairwise_coprime};
use crate::monomial::{gcd_all, Monomial};

/// Largest free part enumerated by the structural formula.
pub const MAX_FREE_PART: usize = 30;

pub(crate) fn checked_product(factors: impl IntoIterator<Item = u64>) -> Result<u64> {
    factors
        .into_iter()
        .try_fold(1u64, |acc, f| acc.checked_mul(f))
        .ok_or_else(|| Error::ResourceCap("product of degrees overflows 64 bits".into()))
}

/// Degree of the gcd of all generators, for ideals of codimension 1.
pub fn e_codim1(m: &MonomialIdeal) -> Result<u64> {
    let c = invariants::codim(m);
    if c != 1 {
        return hypothesis(format!("codimension is {c}, not 1"));
    }
    Ok(gcd_all(m.generators())?.degree())
}

/// Product of generator degrees, for complete intersections.
pub fn e_complete_intersection(m: &MonomialIdeal) -> Result<u64> {
    if !invariants::is_complete_intersection(m) {
        return hypothesis("generators are not pairwise coprime");
    }
    checked_product(m.generators().iter().map(Monomial::degree))
}

/// Block structure of a stem ideal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StemStructure {
    /// Generator indices per block, blocks ordered by size descending then
    /// by smallest member.
    pub blocks: Vec<Vec<usize>>,
    /// gcd of each block.
    pub stems: Vec<Monomial>,
    /// Cumulative block ends: `0 = i_0 < i_1 < ... < i_c = q`.
    pub boundaries: Vec<usize>,
}

impl StemStructure {
    pub fn codim(&self) -> usize {
        self.stems.len()
    }

    /// Generator indices in block order.
    pub fn order(&self) -> Vec<usize> {
        self.blocks.iter().flatten().copied().collect()
    }
}

/// Connected components of the "shares a variable" graph on generators.
pub(crate) fn sharing_components(m: &MonomialIdeal) -> Vec<Vec<usize>> {
    let q = m.len();
    let supports: Vec<u64> = m.generators().iter().map(|g| g.support()).collect();
    let mut parent: Vec<usize> = (0..q).collect();
    fn root(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for i in 0..q {
        for j in i + 1..q {
            if supports[i] & supports[j] != 0 {
                let (a, b) = (root(&mut parent, i), root(&mut parent, j));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let mut comps: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; q];
    for i in 0..q {
        let r = root(&mut parent, i);
        if slot[r] == usize::MAX {
            slot[r] = comps.len();
            comps.push(Vec::new());
        }
        comps[slot[r]].push(i);
    }
    comps
}

/// Recognizes stem ideals. Returns `None` for ideals that are not dominant
/// or whose sharing components have a unit gcd.
pub fn detect_stem(m: &MonomialIdeal) -> Option<StemStructure> {
    if !invariants::is_dominant(m) {
        return None;
    }
    let mut blocks = sharing_components(m);
    blocks.sort_by(|a, b| b.len().cmp(&a.len()).then(a[0].cmp(&b[0])));
    let stems: Vec<Monomial> = blocks
        .iter()
        .map(|b| gcd_all(b.iter().map(|&i| m.generator(i))).expect("nonempty block"))
        .collect();
    if stems.iter().any(Monomial::is_one) {
        return None;
    }
    let mut boundaries = vec![0];
    for b in &blocks {
        boundaries.push(boundaries.last().unwrap() + b.len());
    }
    Some(StemStructure {
        blocks,
        stems,
        boundaries,
    })
}

/// Product of stem degrees.
pub fn e_stem(m: &MonomialIdeal) -> Result<u64> {
    match detect_stem(m) {
        Some(s) => checked_product(s.stems.iter().map(Monomial::degree)),
        None => hypothesis("not a stem ideal"),
    }
}

/// Data attached to a quadratic dominant ideal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticDominantData {
    /// Generators coprime to every other generator.
    pub isolated: Vec<usize>,
    /// Variables dividing at least two generators.
    pub shared_vars: Vec<usize>,
}

impl QuadraticDominantData {
    pub fn k(&self) -> usize {
        self.shared_vars.len()
    }
}

pub fn quadratic_dominant_data(m: &MonomialIdeal) -> Result<QuadraticDominantData> {
    if let Some(g) = m.generators().iter().find(|g| g.degree() != 2) {
        return hypothesis(format!("generator {g} is not quadratic"));
    }
    if !invariants::is_dominant(m) {
        return hypothesis("ideal is not dominant");
    }
    let supports: Vec<u64> = m.generators().iter().map(|g| g.support()).collect();
    let isolated: Vec<usize> = (0..m.len())
        .filter(|&i| (0..m.len()).all(|j| j == i || supports[i] & supports[j] == 0))
        .collect();
    let shared_vars: Vec<usize> = (0..m.ring().len())
        .filter(|&v| supports.iter().filter(|&&s| s >> v & 1 == 1).count() >= 2)
        .collect();
    let shared_mask = shared_vars.iter().fold(0u64, |a, &v| a | 1 << v);
    // the isolated generators and the per-shared-variable groups partition G
    for (i, &s) in supports.iter().enumerate() {
        let hits = (s & shared_mask).count_ones();
        let expected = if isolated.contains(&i) { 0 } else { 1 };
        if hits != expected {
            return internal(format!(
                "generator {} meets {hits} shared variables",
                m.generator(i)
            ));
        }
    }
    Ok(QuadraticDominantData {
        isolated,
        shared_vars,
    })
}

/// `2^{#U}` for quadratic dominant ideals.
pub fn e_quadratic_dominant(m: &MonomialIdeal) -> Result<u64> {
    let data = quadratic_dominant_data(m)?;
    check_quadratic_codim(m, &data)?;
    1u64.checked_shl(data.isolated.len() as u32)
        .filter(|_| data.isolated.len() < 64)
        .ok_or_else(|| Error::ResourceCap("2^#U overflows 64 bits".into()))
}

/// `#U + k` for quadratic dominant ideals.
pub fn reg_quadratic_dominant(m: &MonomialIdeal) -> Result<u64> {
    let data = quadratic_dominant_data(m)?;
    check_quadratic_codim(m, &data)?;
    Ok((data.isolated.len() + data.k()) as u64)
}

fn check_quadratic_codim(m: &MonomialIdeal, data: &QuadraticDominantData) -> Result<()> {
    let c = invariants::codim(m);
    let reg = data.isolated.len() + data.k();
    if reg != c {
        return internal(format!("#U + k = {reg} but codim = {c}"));
    }
    Ok(())
}

/// Partition of the generators into a free part and a complete
/// intersection part, by generator index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CiSplit {
    pub free: Vec<usize>,
    pub ci: Vec<usize>,
}

/// Lexicographically first pairwise-coprime set of `codim(M)` generators.
pub fn find_ci_split(m: &MonomialIdeal) -> Option<CiSplit> {
    let c = invariants::codim(m);
    let supports: Vec<u64> = m.generators().iter().map(|g| g.support()).collect();
    let mut chosen = Vec::with_capacity(c);
    if !first_coprime_subset(&supports, c, 0, 0, &mut chosen) {
        return None;
    }
    let free = (0..m.len()).filter(|i| !chosen.contains(i)).collect();
    Some(CiSplit { free, ci: chosen })
}

fn first_coprime_subset(supports: &[u64], k: usize, start: usize, used: u64, chosen: &mut Vec<usize>) -> bool {
    if chosen.len() == k {
        return true;
    }
    for i in start..supports.len() {
        if supports.len() - i < k - chosen.len() {
            break;
        }
        if supports[i] & used == 0 {
            chosen.push(i);
            if first_coprime_subset(supports, k, i + 1, used | supports[i], chosen) {
                return true;
            }
            chosen.pop();
        }
    }
    false
}

/// Validates the hypotheses shared by the structural formula and the
/// structural decomposition.
pub(crate) fn check_split(m: &MonomialIdeal, split: &CiSplit) -> Result<()> {
    let q = m.len();
    let mut seen = vec![false; q];
    for &i in split.free.iter().chain(&split.ci) {
        if i >= q || seen[i] {
            return Err(Error::InvalidArgument(
                "split must list every generator index exactly once".into(),
            ));
        }
        seen[i] = true;
    }
    if seen.iter().any(|s| !s) {
        return Err(Error::InvalidArgument("split does not cover every generator".into()));
    }
    if split.ci.is_empty() {
        return hypothesis("complete intersection part is empty");
    }
    if split.free.len() > MAX_FREE_PART {
        return Err(Error::ResourceCap(format!(
            "free part of {} generators exceeds the cap of {MAX_FREE_PART}",
            split.free.len()
        )));
    }
    if !invariants::is_dominant(m) {
        return hypothesis("ideal is not dominant");
    }
    if !pairwise_coprime(split.ci.iter().map(|&i| m.generator(i).support())) {
        return hypothesis("complete intersection part is not pairwise coprime");
    }
    let c = invariants::codim(m);
    if c != split.ci.len() {
        return hypothesis(format!(
            "codimension {c} differs from the size {} of the complete intersection part",
            split.ci.len()
        ));
    }
    Ok(())
}

/// Alternating sum over subsets of the free part of products of quotient
/// degrees `deg(lcm(mbar, h_i) / mbar)`.
pub fn e_structural(m: &MonomialIdeal, split: &CiSplit) -> Result<u64> {
    check_split(m, split)?;
    let n = m.ring().len();
    let free: Vec<&[u32]> = split.free.iter().map(|&i| m.generator(i).exponents()).collect();
    let ci: Vec<&[u32]> = split.ci.iter().map(|&i| m.generator(i).exponents()).collect();
    let mut total = BigInt::from(0);
    let mut lcm = vec![0u32; n];
    structural_walk(&free, &ci, 0, 0, &mut lcm, &mut total);
    if !total.is_positive() {
        return internal(format!("structural sum is {total}"));
    }
    total
        .to_u64()
        .ok_or_else(|| Error::ResourceCap("multiplicity overflows 64 bits".into()))
}

fn structural_walk(free: &[&[u32]], ci: &[&[u32]], start: usize, size: usize, lcm: &mut Vec<u32>, total: &mut BigInt) {
    let product: BigInt = ci
        .iter()
        .map(|h| {
            h.iter()
                .zip(lcm.iter())
                .map(|(&he, &le)| he.saturating_sub(le) as u64)
                .sum::<u64>()
        })
        .map(BigInt::from)
        .product();
    if size.is_multiple_of(2) {
        *total += product;
    } else {
        *total -= product;
    }
    for i in start..free.len() {
        let saved = lcm.clone();
        for (l, &e) in lcm.iter_mut().zip(free[i]) {
            *l = (*l).max(e);
        }
        structural_walk(free, ci, i + 1, size + 1, lcm, total);
        *lcm = saved;
    }
}

/// Multiplicity of an almost complete intersection `(m_1, ..., m_q, m)`:
/// `prod deg(m_i) - prod deg(m_i / gcd(m_i, m))`.
pub fn e_aci(m: &MonomialIdeal) -> Result<u64> {
    let Some(t) = invariants::is_almost_complete_intersection(m) else {
        return hypothesis("not an almost complete intersection");
    };
    let extra = m.generator(t);
    let ci: Vec<&Monomial> = (0..m.len()).filter(|&i| i != t).map(|i| m.generator(i)).collect();
    let full = checked_product(ci.iter().map(|g| g.degree()))?;
    let reduced = checked_product(
        ci.iter()
            .map(|g| Ok(g.quotient(&g.gcd(extra)?)?.degree()))
            .collect::<Result<Vec<u64>>>()?,
    )?;
    match full.checked_sub(reduced) {
        Some(e) if e >= 1 => Ok(e),
        _ => internal(format!("almost complete intersection formula gives {full} - {reduced}")),
    }
}

/// For a non-dominant almost complete intersection, the smallest index `i`
/// of a complete-intersection generator whose removal leaves a dominant
/// almost complete intersection with the same extra generator.
pub fn aci_dominant_witness(m: &MonomialIdeal) -> Result<usize> {
    let Some(t) = invariants::is_almost_complete_intersection(m) else {
        return hypothesis("not an almost complete intersection");
    };
    if invariants::is_dominant(m) {
        return hypothesis("ideal is already dominant");
    }
    for i in (0..m.len()).filter(|&i| i != t) {
        let reduced = m.without(i)?;
        let reduced_size = reduced.len();
        if reduced_size >= 2
            && invariants::is_dominant(&reduced)
            && invariants::codim(&reduced) == reduced_size - 1
        {
            return Ok(i);
        }
    }
    internal("no complete-intersection generator yields a dominant almost complete intersection")
}
