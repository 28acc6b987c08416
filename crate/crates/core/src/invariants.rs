//! Codimension, dominance and the complete-intersection family of
//! predicates.

use crate::ideal::MonomialIdeal;

/// Summary of the structural hypotheses an ideal satisfies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassificationReport {
    pub codim: usize,
    pub is_dominant: bool,
    /// One entry per generator: a variable in which it is dominant.
    pub dominant_witness: Vec<Option<usize>>,
    pub is_ci: bool,
    /// Index of the generator that is not part of the complete intersection.
    pub aci_witness: Option<usize>,
    pub is_codim1: bool,
}

pub fn classify(m: &MonomialIdeal) -> ClassificationReport {
    let codim = codim(m);
    let (is_dominant, dominant_witness) = dominance(m);
    let is_ci = is_complete_intersection(m);
    ClassificationReport {
        codim,
        is_dominant,
        dominant_witness,
        is_ci,
        aci_witness: aci_witness_with_codim(m, codim),
        is_codim1: codim == 1,
    }
}

/// Height of the ideal: the fewest variables meeting every generator.
pub fn codim(m: &MonomialIdeal) -> usize {
    min_hitting_set(m.generators().iter().map(|g| g.support()).collect())
}

/// Exact minimum hitting set of a family of nonempty bitmasks.
pub(crate) fn min_hitting_set(sets: Vec<u64>) -> usize {
    let sets = reduce_family(sets);
    if sets.is_empty() {
        return 0;
    }
    let mut best = greedy_cover(&sets);
    branch(&sets, 0, &mut best);
    best
}

/// Drops duplicates and supersets: hitting the smaller set hits the larger.
fn reduce_family(mut sets: Vec<u64>) -> Vec<u64> {
    sets.sort_by_key(|s| (s.count_ones(), *s));
    sets.dedup();
    let mut kept: Vec<u64> = Vec::with_capacity(sets.len());
    for s in sets {
        if !kept.iter().any(|&k| k & !s == 0) {
            kept.push(s);
        }
    }
    kept
}

fn greedy_cover(sets: &[u64]) -> usize {
    let mut remaining = sets.to_vec();
    let mut count = 0;
    while !remaining.is_empty() {
        let all = remaining.iter().fold(0u64, |a, &s| a | s);
        let var = (0..64)
            .filter(|v| all >> v & 1 == 1)
            .max_by_key(|&v| (remaining.iter().filter(|&&s| s >> v & 1 == 1).count(), std::cmp::Reverse(v)))
            .expect("nonempty sets");
        remaining.retain(|&s| s >> var & 1 == 0);
        count += 1;
    }
    count
}

/// Lower bound: a family of pairwise disjoint sets needs one variable each.
fn disjoint_packing(sets: &[u64]) -> usize {
    let mut used = 0u64;
    let mut count = 0;
    for &s in sets {
        if s & used == 0 {
            used |= s;
            count += 1;
        }
    }
    count
}

fn branch(sets: &[u64], chosen: usize, best: &mut usize) {
    if sets.is_empty() {
        *best = (*best).min(chosen);
        return;
    }
    if chosen + disjoint_packing(sets) >= *best {
        return;
    }
    // sets are kept sorted by size, so the first one has the fewest branches
    let pivot = sets[0];
    let mut bits = pivot;
    while bits != 0 {
        let v = bits.trailing_zeros();
        bits &= bits - 1;
        let rest: Vec<u64> = sets.iter().copied().filter(|s| s >> v & 1 == 0).collect();
        branch(&rest, chosen + 1, best);
    }
}

/// Whether every generator is dominant, plus one dominant variable per
/// generator when it exists (the lowest-index one).
pub fn dominance(m: &MonomialIdeal) -> (bool, Vec<Option<usize>>) {
    let gens = m.generators();
    let n = m.ring().len();
    let witnesses: Vec<Option<usize>> = (0..gens.len())
        .map(|i| {
            (0..n).find(|&x| {
                let e = gens[i].exponent(x);
                e > 0
                    && gens
                        .iter()
                        .enumerate()
                        .all(|(j, g)| j == i || g.exponent(x) < e)
            })
        })
        .collect();
    (witnesses.iter().all(Option::is_some), witnesses)
}

pub fn is_dominant(m: &MonomialIdeal) -> bool {
    dominance(m).0
}

pub fn is_generator_dominant(m: &MonomialIdeal, index: usize) -> bool {
    dominance(m).1[index].is_some()
}

/// Pairwise coprime generators.
pub fn is_complete_intersection(m: &MonomialIdeal) -> bool {
    pairwise_coprime(m.generators().iter().map(|g| g.support()))
}

pub(crate) fn pairwise_coprime(supports: impl IntoIterator<Item = u64>) -> bool {
    let mut seen = 0u64;
    for s in supports {
        if s & seen != 0 {
            return false;
        }
        seen |= s;
    }
    true
}

/// Smallest index `t` such that the other generators form a complete
/// intersection of size `codim(M)`.
pub fn is_almost_complete_intersection(m: &MonomialIdeal) -> Option<usize> {
    aci_witness_with_codim(m, codim(m))
}

fn aci_witness_with_codim(m: &MonomialIdeal, codim: usize) -> Option<usize> {
    let q = m.len();
    if q < 2 || codim != q - 1 {
        return None;
    }
    let supports: Vec<u64> = m.generators().iter().map(|g| g.support()).collect();
    (0..q).find(|&t| {
        pairwise_coprime(
            supports
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != t)
                .map(|(_, &s)| s),
        )
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_ideal;

    fn ideal(s: &str) -> MonomialIdeal {
        parse_ideal(s).unwrap()
    }

    /// Brute-force codim: smallest k with a covering k-subset of variables.
    fn codim_brute(m: &MonomialIdeal) -> usize {
        let n = m.ring().len();
        let sups: Vec<u64> = m.generators().iter().map(|g| g.support()).collect();
        (0..=n)
            .find(|&k| {
                (0u64..1 << n)
                    .filter(|s| s.count_ones() as usize == k)
                    .any(|s| sups.iter().all(|g| g & s != 0))
            })
            .unwrap()
    }

    #[test]
    fn codim_examples() {
        assert_eq!(codim(&ideal("a^3*c, a*b*e^3, a^2*b^2, c^2, d^2*e^2")), 3);
        assert_eq!(codim(&ideal("x^7")), 1);
        assert_eq!(codim(&ideal("a^2*b*c, b^3*c, c^4, d^2*e^2, d*e*f, d*g^2")), 2);
    }

    #[test]
    fn codim_matches_brute_force() {
        for s in [
            "a*b, b*c, c*d, d*e, e*a",
            "a*b*c, d*e*f, a*d, b*e, c*f",
            "x1*x2, x3*x4, x5*x6, x1*x3*x5, x2*x4*x6",
            "a, b*c, c*d, d*e*f, f*g, g*a",
        ] {
            let m = ideal(s);
            assert_eq!(codim(&m), codim_brute(&m), "{s}");
        }
    }

    #[test]
    fn dominance_examples() {
        let (d, w) = dominance(&ideal("a^2, b^3, a*b"));
        assert!(!d);
        assert_eq!(w.iter().filter(|x| x.is_none()).count(), 1);

        let m = ideal("a^2*b, a*b^3*c, b*c^2");
        let (d, w) = dominance(&m);
        assert!(d);
        let named: Vec<(String, String)> = m
            .generators()
            .iter()
            .zip(&w)
            .map(|(g, x)| (g.to_string(), m.ring().name(x.unwrap()).to_string()))
            .collect();
        assert!(named.contains(&("a^2*b".into(), "a".into())));
        assert!(named.contains(&("a*b^3*c".into(), "b".into())));
        assert!(named.contains(&("b*c^2".into(), "c".into())));

        assert!(is_dominant(&ideal("x^5")));
    }

    #[test]
    fn ci_examples() {
        assert!(is_complete_intersection(&ideal("x^2, y^3")));
        assert!(!is_complete_intersection(&ideal("a^2, b^3, a*b")));
        assert!(is_complete_intersection(&ideal("a^2*b^2, c^2, d^2*e^2")));
    }

    #[test]
    fn aci_examples() {
        let m = ideal("x^2, y^3, x*y");
        let t = is_almost_complete_intersection(&m).unwrap();
        assert_eq!(m.generator(t).to_string(), "x*y");
        assert_eq!(is_almost_complete_intersection(&ideal("x^2, y^3")), None);
        assert_eq!(is_almost_complete_intersection(&ideal("a^2*b*c, b^3*c, c^4")), None);
        assert_eq!(is_almost_complete_intersection(&ideal("x^4")), None);
    }

    #[test]
    fn report_consistency() {
        let r = classify(&ideal("a^2*b^2, c^2, d^2*e^2"));
        assert!(r.is_ci);
        assert_eq!(r.codim, 3);
        assert!(!r.is_codim1);
        let r = classify(&ideal("x^2*y, x*y^2"));
        assert!(r.is_codim1);
        assert_eq!(r.aci_witness, Some(0));
    }
}
