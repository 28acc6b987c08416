//! Splitting a dominant ideal along one generator, and along the free part
//! of a complete-intersection split.

use rayon::prelude::*;

use crate::error::{hypothesis, internal, Error, Result};
use crate::formulas::{check_split, checked_product, CiSplit};
use crate::ideal::MonomialIdeal;
use crate::invariants::{self, pairwise_coprime};
use crate::monomial::{lcm_all, Monomial};
use crate::taylor::{betti_table, multiplicity_ps, BettiTable};

/// `M = (m_1) + M_1` with `M_{m_1}` the colon of `M_1` by the pivot.
#[derive(Debug, Clone)]
pub struct ThirdDecomposition {
    pub pivot: usize,
    /// The other generators.
    pub m1: MonomialIdeal,
    /// `lcm(m_1, m_j) / m_1` for every other generator, before minimalization.
    pub quotients: Vec<Monomial>,
    pub mm1: MonomialIdeal,
}

pub fn third_decomposition(m: &MonomialIdeal, pivot: usize) -> Result<ThirdDecomposition> {
    if pivot >= m.len() {
        return Err(Error::InvalidArgument(format!(
            "pivot {pivot} out of range for {} generators",
            m.len()
        )));
    }
    if m.len() < 2 {
        return hypothesis("decomposition needs at least two generators");
    }
    if !invariants::is_generator_dominant(m, pivot) {
        return hypothesis(format!("pivot {} is not dominant", m.generator(pivot)));
    }
    let p = m.generator(pivot);
    let quotients = m
        .generators()
        .iter()
        .enumerate()
        .filter(|&(j, _)| j != pivot)
        .map(|(_, g)| p.lcm(g)?.quotient(p))
        .collect::<Result<Vec<_>>>()?;
    if quotients.iter().any(Monomial::is_one) {
        return internal("a generator divides the pivot");
    }
    Ok(ThirdDecomposition {
        pivot,
        m1: m.without(pivot)?,
        mm1: MonomialIdeal::minimalize(m.ring(), quotients.iter().cloned())?,
        quotients,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RecurrenceCase {
    /// `codim(M_{m_1}) = c`: `e(M) = e(M_1) - e(M_{m_1})`.
    Difference,
    /// `codim(M_{m_1}) > c`: `e(M) = e(M_1)`.
    Inherit,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Recurrence {
    pub case: RecurrenceCase,
    pub e_m1: u64,
    pub e_mm1: Option<u64>,
    pub value: u64,
}

pub fn recurrence_detail(m: &MonomialIdeal, pivot: usize) -> Result<Recurrence> {
    let d = third_decomposition(m, pivot)?;
    let c = invariants::codim(m);
    let c1 = invariants::codim(&d.m1);
    if c1 != c {
        return hypothesis(format!(
            "recurrence inapplicable: codim of the remaining generators is {c1}, codim of the ideal is {c}"
        ));
    }
    let e_m1 = multiplicity_ps(&d.m1)?;
    let cm = invariants::codim(&d.mm1);
    if cm > c {
        return Ok(Recurrence {
            case: RecurrenceCase::Inherit,
            e_m1,
            e_mm1: None,
            value: e_m1,
        });
    }
    if cm < c {
        return internal(format!("colon ideal has codim {cm} below {c}"));
    }
    let e_mm1 = multiplicity_ps(&d.mm1)?;
    match e_m1.checked_sub(e_mm1) {
        Some(value) if value >= 1 => Ok(Recurrence {
            case: RecurrenceCase::Difference,
            e_m1,
            e_mm1: Some(e_mm1),
            value,
        }),
        _ => internal(format!("recurrence gives {e_m1} - {e_mm1}")),
    }
}

/// `e(S/M)` from the multiplicities of `M_1` and `M_{m_1}`.
pub fn multiplicity_recurrence(m: &MonomialIdeal, pivot: usize) -> Result<u64> {
    recurrence_detail(m, pivot).map(|r| r.value)
}

/// One summand indexed by a subset of the free part.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionTerm {
    /// Subset size.
    pub j: usize,
    /// Subset as a bitmask over positions in `split.free`.
    pub subset: u64,
    /// lcm of the subset.
    pub mbar: Monomial,
    /// `lcm(mbar, h_i) / mbar` for every CI generator `h_i`, units kept.
    pub quotients: Vec<Monomial>,
    /// The quotients after minimalization; `None` when one of them is 1.
    pub ideal: Option<MonomialIdeal>,
}

impl DecompositionTerm {
    /// Product of the quotient degrees.
    pub fn multiplicity(&self) -> Result<u64> {
        checked_product(self.quotients.iter().map(Monomial::degree))
    }
}

pub fn structural_terms(m: &MonomialIdeal, split: &CiSplit) -> Result<Vec<DecompositionTerm>> {
    check_split(m, split)?;
    let d = split.free.len();
    let mut masks: Vec<u64> = (0..1u64 << d).collect();
    masks.sort_by_key(|&s| (s.count_ones(), s));
    masks
        .into_par_iter()
        .map(|subset| {
            let members = (0..d).filter(|&i| subset >> i & 1 == 1).map(|i| m.generator(split.free[i]));
            let mbar = lcm_all(m.ring(), members)?;
            let quotients = split
                .ci
                .iter()
                .map(|&i| mbar.lcm(m.generator(i))?.quotient(&mbar))
                .collect::<Result<Vec<_>>>()?;
            if !pairwise_coprime(quotients.iter().map(Monomial::support)) {
                return internal("lcm quotients of the complete intersection are not coprime");
            }
            let ideal = if quotients.iter().any(Monomial::is_one) {
                None
            } else {
                Some(MonomialIdeal::minimalize(m.ring(), quotients.iter().cloned())?)
            };
            Ok(DecompositionTerm {
                j: subset.count_ones() as usize,
                subset,
                mbar,
                quotients,
                ideal,
            })
        })
        .collect()
}

/// Betti table of `S/M` assembled from the Koszul tables of the term
/// ideals, shifted by `j` homologically and by `mbar` multidegree-wise.
pub fn betti_decomposition(m: &MonomialIdeal, split: &CiSplit) -> Result<BettiTable> {
    let terms = structural_terms(m, split)?;
    let mut table = BettiTable::default();
    for term in &terms {
        let Some(ideal) = &term.ideal else {
            return internal(format!("term at {} has a unit quotient", term.mbar));
        };
        for ((i, l), &count) in &betti_table(ideal)?.entries {
            table.add(i + term.j, l.mul(&term.mbar)?, count);
        }
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formulas::{e_stem, e_structural, find_ci_split};
    use crate::parse::parse_ideal;

    fn ideal(s: &str) -> MonomialIdeal {
        parse_ideal(s).unwrap()
    }

    fn index_of(m: &MonomialIdeal, g: &str) -> usize {
        m.generators().iter().position(|x| x.to_string() == g).unwrap()
    }

    #[test]
    fn third_decomposition_examples() {
        let m = ideal("a^2*b, a*b^3*c, b*c^2");
        let d = third_decomposition(&m, index_of(&m, "a^2*b")).unwrap();
        assert_eq!(d.m1, ideal_in(&m, "a*b^3*c, b*c^2"));
        assert_eq!(d.mm1, ideal_in(&m, "b^2*c, c^2"));

        let m = ideal("x^2, y^3");
        let d = third_decomposition(&m, index_of(&m, "x^2")).unwrap();
        assert_eq!(d.m1.to_string(), "y^3");
        assert_eq!(d.mm1.to_string(), "y^3");

        let m = ideal("x^3, x^2*y");
        let d = third_decomposition(&m, index_of(&m, "x^3")).unwrap();
        assert_eq!(d.mm1.to_string(), "y");

        let m = ideal("a^2, b^3, a*b");
        assert!(matches!(third_decomposition(&m, index_of(&m, "a*b")), Err(Error::Hypothesis(_))));
    }

    fn example_5_5() -> MonomialIdeal {
        let vars: Vec<String> = "abcde".chars().map(String::from).collect();
        crate::parse::parse_ideal_with("a^3*c, a*b*e^3, a^2*b^2, c^2, d^2*e^2", Some(&vars))
            .unwrap()
            .ideal
    }

    fn ideal_in(m: &MonomialIdeal, s: &str) -> MonomialIdeal {
        let vars = m.ring().names().to_vec();
        crate::parse::parse_ideal_with(s, Some(&vars)).unwrap().ideal
    }

    #[test]
    fn recurrence_examples() {
        let m = ideal("a^2*b*c, b^3*c, c^4, d^2*e^2, d*e*f, d*g^2");
        let r = recurrence_detail(&m, index_of(&m, "a^2*b*c")).unwrap();
        assert_eq!(r.case, RecurrenceCase::Inherit);
        assert_eq!(r.value, 1);
        assert_eq!(r.value, e_stem(&m).unwrap());

        let m = ideal("x^2, y^3");
        assert!(matches!(multiplicity_recurrence(&m, 0), Err(Error::Hypothesis(_))));

        let m = ideal("x^2*y, x*y^2, z");
        assert!(multiplicity_recurrence(&m, index_of(&m, "z")).is_err());
        let r = recurrence_detail(&m, index_of(&m, "x^2*y")).unwrap();
        assert_eq!(r.case, RecurrenceCase::Difference);
        assert_eq!((r.e_m1, r.e_mm1, r.value), (3, Some(1), 2));
        assert_eq!(r.value, multiplicity_ps(&m).unwrap());
    }

    #[test]
    fn structural_terms_example() {
        let m = example_5_5();
        let split = find_ci_split(&m).unwrap();
        let terms = structural_terms(&m, &split).unwrap();
        let shape: Vec<(usize, String)> = terms.iter().map(|t| (t.j, t.mbar.to_string())).collect();
        assert_eq!(
            shape,
            [
                (0, "1".to_string()),
                (1, "a^3*c".to_string()),
                (1, "a*b*e^3".to_string()),
                (2, "a^3*b*c*e^3".to_string()),
            ]
        );
        let mut q: Vec<String> = terms[1].ideal.as_ref().unwrap().generators().iter().map(ToString::to_string).collect();
        q.sort();
        assert_eq!(q, ["b^2", "c", "d^2*e^2"]);
        let es: Vec<u64> = terms.iter().map(|t| t.multiplicity().unwrap()).collect();
        assert_eq!(es, [32, 8, 8, 2]);
        assert_eq!(e_structural(&m, &split).unwrap(), 18);
    }

    #[test]
    fn betti_decomposition_example() {
        let m = example_5_5();
        let split = find_ci_split(&m).unwrap();
        let table = betti_decomposition(&m, &split).unwrap();
        assert_eq!(table.total(0), 1);
        assert_eq!(table.total(1), 5);
        for g in m.generators() {
            assert_eq!(table.get(1, g), 1);
        }
        assert_eq!(table, betti_table(&m).unwrap());

        let ci = ideal("x^2, y^3");
        let split = CiSplit { free: vec![], ci: vec![0, 1] };
        assert_eq!(betti_decomposition(&ci, &split).unwrap(), betti_table(&ci).unwrap());
    }
}
