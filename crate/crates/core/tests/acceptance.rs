//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails. All comparisons are exact.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use multmon::decomposition::{betti_decomposition, structural_terms};
use multmon::formulas::{self, find_ci_split};
use multmon::ideal::MonomialIdeal;
use multmon::monomial::{gcd_all, lcm_all, Monomial, PolarSet};
use multmon::random::{self, Shape};
use multmon::taylor::{self, is_taylor_minimal, TaylorResolution};
use multmon::{invariants, oracle, parse_ideal_with};

type Outcome = Result<String, String>;
type Criterion<'a> = (usize, &'a str, Box<dyn Fn() -> Outcome + 'a>);

fn ideal(text: &str, vars: &str) -> MonomialIdeal {
    let vars: Vec<String> = vars.chars().map(String::from).collect();
    parse_ideal_with(text, Some(&vars)).unwrap().ideal
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Median wall time of `runs` calls.
fn timed<T>(runs: usize, mut f: impl FnMut() -> T) -> (T, Duration) {
    let mut times = Vec::with_capacity(runs);
    let mut last = None;
    for _ in 0..runs {
        let t = Instant::now();
        last = Some(f());
        times.push(t.elapsed());
    }
    times.sort();
    (last.unwrap(), times[runs / 2])
}

fn engine(m: &MonomialIdeal) -> Result<u64, String> {
    taylor::multiplicity_ps(m).map_err(|e| format!("engine on ({m}): {e}"))
}

fn criterion_1() -> Outcome {
    let m = ideal("a^3*c, a*b*e^3, a^2*b^2, c^2, d^2*e^2", "abcde");
    let split = find_ci_split(&m).ok_or("no split")?;
    let terms = structural_terms(&m, &split).map_err(|e| e.to_string())?;
    let expansion: Vec<(usize, u64)> = terms.iter().map(|t| (t.j, t.multiplicity().unwrap())).collect();
    ensure(expansion == [(0, 32), (1, 8), (1, 8), (2, 2)], || format!("expansion {expansion:?}"))?;

    let limit = Duration::from_millis(10);
    let (s, ts) = timed(5, || formulas::e_structural(&m, &split));
    let (p, tp) = timed(5, || taylor::multiplicity_ps(&m));
    let (o, to) = timed(5, || oracle::multiplicity_associativity(&m));
    let values = (s.map_err(|e| e.to_string())?, p.map_err(|e| e.to_string())?, o.map_err(|e| e.to_string())?);
    ensure(values == (18, 18, 18), || format!("values {values:?}"))?;
    ensure(ts < limit && tp < limit && to < limit, || format!("times {ts:?} {tp:?} {to:?}"))?;
    Ok(format!("32-8-8+2 = 18 by structural/ps/oracle in {ts:?}/{tp:?}/{to:?}"))
}

fn criterion_2() -> Outcome {
    let m = ideal("a^2*b*c, b^3*c, c^4, d^2*e^2, d*e*f, d*g^2", "abcdefg");
    let s = formulas::detect_stem(&m).ok_or("not detected as stem")?;
    let mut stems: Vec<String> = s.stems.iter().map(ToString::to_string).collect();
    stems.sort();
    ensure(stems == ["c", "d"], || format!("stems {stems:?}"))?;
    let e = formulas::e_stem(&m).map_err(|e| e.to_string())?;
    let p = engine(&m)?;
    let o = oracle::multiplicity_associativity(&m).map_err(|e| e.to_string())?;
    ensure((e, p, o) == (1, 1, 1), || format!("values {:?}", (e, p, o)))?;
    Ok("stems {c, d}, e = 1 by stem/ps/oracle".into())
}

fn criterion_3() -> Outcome {
    let m1 = ideal("a^2, b^3, a*b", "ab");
    let m2 = ideal("a^2*b, a*b^3*c, b*c^2", "abc");
    ensure(!invariants::is_dominant(&m1), || "first ideal reported dominant".into())?;
    let (dom, witnesses) = invariants::dominance(&m2);
    ensure(dom, || "second ideal reported non-dominant".into())?;
    let mut names: Vec<&str> = witnesses.iter().map(|w| m2.ring().name(w.unwrap())).collect();
    names.sort();
    ensure(names == ["a", "b", "c"], || format!("witnesses {names:?}"))?;
    let t1 = is_taylor_minimal(&m1).map_err(|e| e.to_string())?;
    let t2 = is_taylor_minimal(&m2).map_err(|e| e.to_string())?;
    ensure(!t1 && t2, || format!("minimality {t1} {t2}"))?;
    Ok("non-dominant/dominant with witnesses {a, b, c}; Taylor minimality agrees".into())
}

const SHAPE_4: Shape = Shape::new(10, 6, 4);

fn random_ideals(seed: u64, count: usize, shape: Shape) -> Vec<MonomialIdeal> {
    let mut rng = random::rng(seed);
    (0..count).map(|_| random::ideal(&mut rng, shape)).collect()
}

fn criterion_4(ideals: &[MonomialIdeal]) -> Outcome {
    let start = Instant::now();
    let mut checked = 0;
    for m in ideals {
        let c = invariants::codim(m) as u32;
        for k in 1..c {
            let s = taylor::ps_power_sum(m, k).map_err(|e| e.to_string())?;
            ensure(s == 0.into(), || format!("k={k} sum {s} for ({m})"))?;
            checked += 1;
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(60), || format!("took {elapsed:?}"))?;
    Ok(format!("{} ideals, {checked} vanishing sums, {elapsed:?}", ideals.len()))
}

fn criterion_5(ideals: &[MonomialIdeal]) -> Outcome {
    for m in ideals {
        let p = engine(m)?;
        let o = oracle::multiplicity_associativity(m).map_err(|e| e.to_string())?;
        ensure(p == o, || format!("({m}): ps {p}, oracle {o}"))?;
    }
    Ok(format!("{} ideals agree", ideals.len()))
}

fn criterion_6() -> Outcome {
    let mut rng = random::rng(6);
    for _ in 0..500 {
        let m = random::codim1_ideal(&mut rng, Shape::new(10, 6, 4));
        let e = formulas::e_codim1(&m).map_err(|e| format!("({m}): {e}"))?;
        ensure(e == engine(&m)?, || format!("codim1 ({m}): {e}"))?;
    }
    for _ in 0..500 {
        let m = random::complete_intersection(&mut rng, Shape::new(6, 8, 4));
        let e = formulas::e_complete_intersection(&m).map_err(|e| format!("({m}): {e}"))?;
        ensure(e == engine(&m)?, || format!("ci ({m}): {e}"))?;
    }
    Ok("500 codim-1 and 500 complete intersections".into())
}

fn criterion_7() -> Outcome {
    let mut rng = random::rng(7);
    let mut max_blocks = 0;
    for _ in 0..300 {
        let m = random::stem_ideal(&mut rng, 4, 4, 3);
        let s = formulas::detect_stem(&m).ok_or_else(|| format!("({m}) not a stem ideal"))?;
        max_blocks = max_blocks.max(s.blocks.len());
        let e = formulas::e_stem(&m).map_err(|e| e.to_string())?;
        ensure(e == engine(&m)?, || format!("({m}): stem {e}"))?;
    }
    Ok(format!("300 stem ideals, up to {max_blocks} blocks"))
}

fn criterion_8() -> Outcome {
    let mut rng = random::rng(8);
    for _ in 0..300 {
        let m = random::quadratic_dominant(&mut rng, 8, 8);
        let data = formulas::quadratic_dominant_data(&m).map_err(|e| format!("({m}): {e}"))?;
        let e = formulas::e_quadratic_dominant(&m).map_err(|e| e.to_string())?;
        ensure(e == 1 << data.isolated.len(), || format!("({m}): e {e}"))?;
        ensure(e == engine(&m)?, || format!("({m}): e {e} vs engine"))?;
        let reg = formulas::reg_quadratic_dominant(&m).map_err(|e| e.to_string())?;
        ensure(reg == (data.isolated.len() + data.k()) as u64, || format!("({m}): reg {reg}"))?;
        let c = invariants::codim(&m) as u64;
        let t = taylor::regularity_dominant(&m).map_err(|e| e.to_string())?;
        ensure(reg == c && reg == t, || format!("({m}): reg {reg}, codim {c}, taylor {t}"))?;
    }
    Ok("300 quadratic dominant ideals".into())
}

fn criterion_9() -> Outcome {
    let mut rng = random::rng(9);
    let mut free_total = 0;
    for _ in 0..300 {
        let (m, split) = random::dominant_with_split(&mut rng, 3, 5, 7, 3);
        free_total += split.free.len();
        let e = formulas::e_structural(&m, &split).map_err(|e| format!("({m}): {e}"))?;
        ensure(e == engine(&m)?, || format!("({m}): structural {e}"))?;
        let assembled = betti_decomposition(&m, &split).map_err(|e| e.to_string())?;
        let direct = taylor::betti_table(&m).map_err(|e| e.to_string())?;
        ensure(assembled == direct, || format!("({m}): Betti tables differ"))?;
    }
    Ok(format!("300 dominant ideals with a split ({free_total} free generators in total)"))
}

fn criterion_10() -> Outcome {
    let mut rng = random::rng(10);
    let mut non_dominant = 0;
    for i in 0..300 {
        let dominant = i % 2 == 0;
        let m = random::almost_complete_intersection(&mut rng, 4, 7, 3, dominant);
        let e = formulas::e_aci(&m).map_err(|e| format!("({m}): {e}"))?;
        ensure(e == engine(&m)?, || format!("({m}): aci {e}"))?;
        if !invariants::is_dominant(&m) {
            non_dominant += 1;
            let w = formulas::aci_dominant_witness(&m).map_err(|e| format!("({m}): {e}"))?;
            let reduced = m.without(w).map_err(|e| e.to_string())?;
            ensure(
                invariants::is_dominant(&reduced) && invariants::codim(&reduced) + 1 == reduced.len(),
                || format!("({m}): witness {w} does not give a dominant ACI"),
            )?;
        }
    }
    ensure(non_dominant >= 50, || format!("only {non_dominant} non-dominant"))?;
    Ok(format!("300 ACIs, {non_dominant} non-dominant with witnesses"))
}

fn criterion_11() -> Outcome {
    let mut rng = random::rng(11);
    let mut pairs = 0usize;
    for _ in 0..100 {
        let m = random::ideal(&mut rng, Shape::new(6, 5, 4));
        let res = TaylorResolution::new(&m).map_err(|e| e.to_string())?;
        for face in res.faces().iter().filter(|f| f.hdeg() >= 2) {
            let mut acc: BTreeMap<(u32, Monomial), i64> = BTreeMap::new();
            for t1 in res.differential(face.members).map_err(|e| e.to_string())? {
                for t2 in res.differential(t1.target).map_err(|e| e.to_string())? {
                    let coeff = t1.coeff.mul(&t2.coeff).map_err(|e| e.to_string())?;
                    *acc.entry((t2.target, coeff)).or_insert(0) += (t1.sign * t2.sign) as i64;
                    pairs += 1;
                }
            }
            if let Some(((target, coeff), v)) = acc.iter().find(|(_, &v)| v != 0) {
                return Err(format!("({m}): d(d({:b})) has {v}*{coeff} at {target:b}", face.members));
            }
        }
    }
    Ok(format!("100 ideals, {pairs} composable pairs cancel"))
}

fn criterion_12() -> Outcome {
    let mut rng = random::rng(12);
    for _ in 0..500 {
        let tuple = random::monomial_tuple(&mut rng, 5, 6, 4);
        let ring = tuple[0].ring().clone();
        let sets: Vec<PolarSet> = tuple.iter().map(PolarSet::of).collect();
        let union = sets.iter().fold(PolarSet::default(), |a, s| a.union(s));
        let inter = sets[1..].iter().fold(sets[0].clone(), |a, s| a.intersection(s));
        let lcm = lcm_all(&ring, &tuple).map_err(|e| e.to_string())?;
        let gcd = gcd_all(&tuple).map_err(|e| e.to_string())?;
        let rest = lcm_all(&ring, &tuple[1..]).map_err(|e| e.to_string())?;
        let rest_union = sets[1..].iter().fold(PolarSet::default(), |a, s| a.union(s));
        let quotient = lcm.quotient(&rest).map_err(|e| e.to_string())?;
        let show = || tuple.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ");
        ensure(lcm.degree() == union.len() as u64, || format!("lcm identity on {}", show()))?;
        ensure(gcd.degree() == inter.len() as u64, || format!("gcd identity on {}", show()))?;
        ensure(quotient.degree() == sets[0].difference(&rest_union).len() as u64, || {
            format!("quotient identity on {}", show())
        })?;
    }
    Ok("500 tuples, all three identities".into())
}

fn main() -> ExitCode {
    let ideals = random_ideals(4, 1000, SHAPE_4);
    let criteria: Vec<Criterion> = vec![
        (1, "structural example, three methods", Box::new(criterion_1)),
        (2, "stem example", Box::new(criterion_2)),
        (3, "dominance examples", Box::new(criterion_3)),
        (4, "power-sum vanishing", Box::new(|| criterion_4(&ideals))),
        (5, "engine equals oracle", Box::new(|| criterion_5(&ideals))),
        (6, "codim-1 and complete intersections", Box::new(criterion_6)),
        (7, "stem ideals", Box::new(criterion_7)),
        (8, "quadratic dominant ideals", Box::new(criterion_8)),
        (9, "structural formula and Betti assembly", Box::new(criterion_9)),
        (10, "almost complete intersections", Box::new(criterion_10)),
        (11, "d^2 = 0", Box::new(criterion_11)),
        (12, "polar set identities", Box::new(criterion_12)),
    ];
    let mut failed = 0;
    for (n, name, run) in &criteria {
        match run() {
            Ok(detail) => println!("criterion {n:>2} PASS  {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("criterion {n:>2} FAIL  {name}: {why}");
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
