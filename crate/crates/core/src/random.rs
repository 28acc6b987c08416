//! Seeded generators for the ideal families the closed forms apply to.
//!
//! Every generator takes a caller-supplied RNG so runs are reproducible from
//! a single seed. Families that are built by rejection give up after a fixed
//! number of attempts and panic, which only happens on parameter choices
//! that make the family empty.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::formulas::{detect_stem, find_ci_split, CiSplit};
use crate::ideal::MonomialIdeal;
use crate::invariants;
use crate::monomial::{Monomial, VariableTable};

const MAX_ATTEMPTS: usize = 100_000;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Variable names `a, b, c, ...`, switching to `x1, x2, ...` past 26.
pub fn ring(n: usize) -> Arc<VariableTable> {
    let names: Vec<String> = if n <= 26 {
        (0..n).map(|i| ((b'a' + i as u8) as char).to_string()).collect()
    } else {
        (1..=n).map(|i| format!("x{i}")).collect()
    };
    VariableTable::new(names).expect("generated names are valid")
}

#[derive(Debug, Clone, Copy)]
pub struct Shape {
    pub max_gens: usize,
    pub max_vars: usize,
    pub max_exp: u32,
}

impl Shape {
    pub const fn new(max_gens: usize, max_vars: usize, max_exp: u32) -> Self {
        Shape { max_gens, max_vars, max_exp }
    }
}

fn exps_to_monomial(ring: &Arc<VariableTable>, exps: Vec<u32>) -> Monomial {
    Monomial::from_exponents(ring, exps).expect("exponents are in range")
}

/// Random monomial whose exponents are drawn from `0..=max_exp`; may be 1.
pub fn monomial<R: Rng>(rng: &mut R, ring: &Arc<VariableTable>, max_exp: u32) -> Monomial {
    let exps = (0..ring.len()).map(|_| rng.gen_range(0..=max_exp)).collect();
    exps_to_monomial(ring, exps)
}

fn nonunit_monomial<R: Rng>(rng: &mut R, ring: &Arc<VariableTable>, max_exp: u32) -> Monomial {
    loop {
        let m = monomial(rng, ring, max_exp);
        if !m.is_one() {
            return m;
        }
    }
}

/// Random monomial supported on `vars`, with every listed variable present.
fn monomial_on<R: Rng>(rng: &mut R, ring: &Arc<VariableTable>, vars: &[usize], max_exp: u32) -> Monomial {
    let mut exps = vec![0; ring.len()];
    for &v in vars {
        exps[v] = rng.gen_range(1..=max_exp);
    }
    exps_to_monomial(ring, exps)
}

/// Tuple of `1..=max_len` monomials (units allowed) in a common ring.
pub fn monomial_tuple<R: Rng>(rng: &mut R, max_len: usize, max_vars: usize, max_exp: u32) -> Vec<Monomial> {
    let ring = ring(rng.gen_range(1..=max_vars));
    let r = rng.gen_range(1..=max_len);
    (0..r).map(|_| monomial(rng, &ring, max_exp)).collect()
}

/// Random nonunit monomial where each variable is present with
/// probability `density`.
fn sparse_monomial<R: Rng>(rng: &mut R, ring: &Arc<VariableTable>, max_exp: u32, density: f64) -> Monomial {
    loop {
        let exps: Vec<u32> = (0..ring.len())
            .map(|_| if rng.gen_bool(density) { rng.gen_range(1..=max_exp) } else { 0 })
            .collect();
        if exps.iter().any(|&e| e > 0) {
            return exps_to_monomial(ring, exps);
        }
    }
}

/// Unconstrained ideal: up to `max_gens` random nonunit monomials,
/// minimalized. Supports are sparse so that higher codimensions are common.
pub fn ideal<R: Rng>(rng: &mut R, shape: Shape) -> MonomialIdeal {
    let ring = ring(rng.gen_range(1..=shape.max_vars));
    let q = rng.gen_range(1..=shape.max_gens);
    let density = rng.gen_range(0.2..0.7);
    let raw: Vec<Monomial> = (0..q)
        .map(|_| sparse_monomial(rng, &ring, shape.max_exp, density))
        .collect();
    MonomialIdeal::minimalize(&ring, raw).expect("nonempty nonunit input")
}

/// Codimension one: every generator is a multiple of a common nonunit
/// monomial.
pub fn codim1_ideal<R: Rng>(rng: &mut R, shape: Shape) -> MonomialIdeal {
    let ring = ring(rng.gen_range(1..=shape.max_vars));
    let common = nonunit_monomial(rng, &ring, shape.max_exp.min(2));
    let q = rng.gen_range(1..=shape.max_gens);
    let raw: Vec<Monomial> = (0..q)
        .map(|_| common.mul(&monomial(rng, &ring, shape.max_exp)).expect("same ring"))
        .collect();
    MonomialIdeal::minimalize(&ring, raw).expect("nonempty nonunit input")
}

/// Splits a shuffled variable list into `parts` nonempty runs.
fn partition<R: Rng>(rng: &mut R, vars: &mut [usize], parts: usize) -> Vec<Vec<usize>> {
    vars.shuffle(rng);
    let mut cuts: Vec<usize> = (1..vars.len()).collect();
    cuts.shuffle(rng);
    let mut cuts: Vec<usize> = cuts.into_iter().take(parts - 1).collect();
    cuts.sort_unstable();
    let mut out = Vec::with_capacity(parts);
    let mut start = 0;
    for c in cuts.into_iter().chain(std::iter::once(vars.len())) {
        out.push(vars[start..c].to_vec());
        start = c;
    }
    out
}

/// Complete intersection: generators on disjoint variable blocks.
pub fn complete_intersection<R: Rng>(rng: &mut R, shape: Shape) -> MonomialIdeal {
    let n = rng.gen_range(1..=shape.max_vars);
    let ring = ring(n);
    let q = rng.gen_range(1..=shape.max_gens.min(n));
    let mut pool: Vec<usize> = (0..n).collect();
    pool.shuffle(rng);
    let used = rng.gen_range(q..=n);
    let mut vars: Vec<usize> = pool[..used].to_vec();
    let raw: Vec<Monomial> = partition(rng, &mut vars, q)
        .iter()
        .map(|block| monomial_on(rng, &ring, block, shape.max_exp))
        .collect();
    MonomialIdeal::minimalize(&ring, raw).expect("nonempty nonunit input")
}

/// Stem ideal with at most `max_blocks` blocks of at most `max_block_size`
/// generators. Each block shares a stem variable; generators may also share
/// a second block variable and carry a private variable that keeps them
/// dominant.
pub fn stem_ideal<R: Rng>(rng: &mut R, max_blocks: usize, max_block_size: usize, max_exp: u32) -> MonomialIdeal {
    for _ in 0..MAX_ATTEMPTS {
        let blocks = rng.gen_range(1..=max_blocks);
        let sizes: Vec<usize> = (0..blocks).map(|_| rng.gen_range(1..=max_block_size)).collect();
        let n: usize = sizes.iter().map(|s| s + 2).sum();
        let ring = ring(n);
        let mut raw = Vec::new();
        let mut next = 0;
        for &size in &sizes {
            let (stem, shared) = (next, next + 1);
            next += 2;
            let stem_exp = rng.gen_range(1..=max_exp);
            for _ in 0..size {
                let mut exps = vec![0u32; n];
                exps[stem] = stem_exp + rng.gen_range(0..=1);
                exps[shared] = rng.gen_range(0..=max_exp);
                // occasionally leave dominance to the stem or shared variable
                if size == 1 || rng.gen_bool(0.8) {
                    exps[next] = rng.gen_range(1..=max_exp);
                }
                next += 1;
                raw.push(exps_to_monomial(&ring, exps));
            }
        }
        raw.shuffle(rng);
        let m = MonomialIdeal::minimalize(&ring, raw).expect("nonempty nonunit input");
        if detect_stem(&m).is_some() {
            return m;
        }
    }
    panic!("no stem ideal found within the attempt budget")
}

/// Quadratic dominant ideal on at most `max_vars` variables.
pub fn quadratic_dominant<R: Rng>(rng: &mut R, max_gens: usize, max_vars: usize) -> MonomialIdeal {
    for _ in 0..MAX_ATTEMPTS {
        let n = rng.gen_range(2..=max_vars.max(2));
        let ring = ring(n);
        let q = rng.gen_range(1..=max_gens);
        let raw: Vec<Monomial> = (0..q)
            .map(|_| {
                let mut exps = vec![0u32; n];
                exps[rng.gen_range(0..n)] += 1;
                exps[rng.gen_range(0..n)] += 1;
                exps_to_monomial(&ring, exps)
            })
            .collect();
        let m = MonomialIdeal::minimalize(&ring, raw).expect("nonempty nonunit input");
        if invariants::is_dominant(&m) {
            return m;
        }
    }
    panic!("no quadratic dominant ideal found within the attempt budget")
}

/// Dominant ideal together with a complete-intersection split: a complete
/// intersection on disjoint blocks plus up to `max_free` extra generators.
/// Each extra generator exceeds one complete-intersection generator in one
/// of its variables and stays at or below the others elsewhere, the shape
/// that keeps both sides dominant; candidates are still filtered.
pub fn dominant_with_split<R: Rng>(rng: &mut R, max_ci: usize, max_free: usize, max_vars: usize, max_exp: u32) -> (MonomialIdeal, CiSplit) {
    let target = rng.gen_range(0..=max_free);
    for attempt in 0..MAX_ATTEMPTS {
        // fall back to fewer free generators if the target keeps failing
        let d = target.saturating_sub(attempt / 2000);
        let n = rng.gen_range(1..=max_vars);
        let ring = ring(n);
        let c = rng.gen_range(1..=max_ci.min(n));
        let mut vars: Vec<usize> = (0..n).collect();
        let blocks = partition(rng, &mut vars, c);
        let ci: Vec<Vec<u32>> = blocks
            .iter()
            .map(|block| {
                let k = rng.gen_range(1..=block.len());
                monomial_on(rng, &ring, &block[..k], max_exp).exponents().to_vec()
            })
            .collect();
        let mut raw: Vec<Monomial> = ci.iter().map(|e| exps_to_monomial(&ring, e.clone())).collect();
        for _ in 0..d {
            let owner = &ci[rng.gen_range(0..c)];
            let spikes: Vec<usize> = (0..n).filter(|&v| owner[v] > 0).collect();
            let spike = *spikes.choose(rng).expect("nonunit generator");
            let exps: Vec<u32> = (0..n)
                .map(|v| {
                    if v == spike {
                        owner[v] + rng.gen_range(1..=2)
                    } else {
                        let cap = ci.iter().map(|g| g[v]).max().unwrap_or(0).max(1);
                        if rng.gen_bool(0.5) { rng.gen_range(0..=cap) } else { 0 }
                    }
                })
                .collect();
            raw.push(exps_to_monomial(&ring, exps));
        }
        let expected = raw.len();
        let m = MonomialIdeal::minimalize(&ring, raw).expect("nonempty nonunit input");
        if m.len() != expected || !invariants::is_dominant(&m) {
            continue;
        }
        if let Some(split) = find_ci_split(&m) {
            return (m, split);
        }
    }
    panic!("no dominant ideal with a split found within the attempt budget")
}

/// Almost complete intersection `(m_1, ..., m_q, m)`. With `dominant` false
/// the extra generator is bounded by the complete-intersection exponents in
/// every variable, so no variable can witness its dominance.
pub fn almost_complete_intersection<R: Rng>(rng: &mut R, max_ci: usize, max_vars: usize, max_exp: u32, dominant: bool) -> MonomialIdeal {
    for _ in 0..MAX_ATTEMPTS {
        let n = rng.gen_range(2..=max_vars.max(2));
        let ring = ring(n);
        let q = rng.gen_range(1..=max_ci.min(n));
        let mut vars: Vec<usize> = (0..n).collect();
        let blocks = partition(rng, &mut vars, q);
        let ci: Vec<Monomial> = blocks
            .iter()
            .map(|block| {
                let k = rng.gen_range(1..=block.len());
                monomial_on(rng, &ring, &block[..k], max_exp.max(2))
            })
            .collect();
        let extra = if dominant {
            nonunit_monomial(rng, &ring, max_exp)
        } else {
            let exps = (0..n)
                .map(|v| {
                    let cap = ci.iter().map(|g| g.exponent(v)).max().unwrap_or(0);
                    rng.gen_range(0..=cap)
                })
                .collect();
            exps_to_monomial(&ring, exps)
        };
        if extra.is_one() {
            continue;
        }
        let mut raw = ci;
        raw.push(extra);
        let expected = raw.len();
        let m = MonomialIdeal::minimalize(&ring, raw).expect("nonempty nonunit input");
        if m.len() != expected || invariants::is_almost_complete_intersection(&m).is_none() {
            continue;
        }
        if invariants::is_dominant(&m) == dominant {
            return m;
        }
    }
    panic!("no almost complete intersection found within the attempt budget")
}
