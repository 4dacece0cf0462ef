//! Named verification suites shared by the CLI and the acceptance tests.
//!
//! Each suite runs a list of checks and reports one line per check. With no
//! overrides a suite runs its default desk-scale instances; `preset`, `n` and
//! `d` replace them with a single instance.

use crate::combinatorics::{binomial, Monomial, Perm, Word};
use crate::double::{divided_form_witness, Double, DoubleElement, GeneratorSet, Route, Variant};
use crate::invariants::permute;
use crate::quiver::desuper::{desuper_suite, Desuper};
use crate::quiver::schiver::{orientation_check, Schiver};
use crate::quiver::Quiver;
use crate::schur::{closed_form_double_product, Mode, SchurAlgebra};
use crate::schurweyl::{check_commutation, commutant_dimension, commutant_table, faithfulness_rank, TensorSpace, Truncation};
use crate::superalgebra::{place_permutation_word, preset, word_product, SuperAlgebra};
use crate::{Error, Exec, LinComb, Result};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::time::Instant;

pub const DEFAULT_SEED: u64 = 20_240_601;

pub const SUITES: &[&str] = &[
    "signs",
    "phi",
    "associativity",
    "polynomial",
    "green",
    "schurweyl",
    "truncation",
    "symmetric",
    "integrality",
    "generation",
    "desuper",
];

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub preset: Option<String>,
    pub n: Option<usize>,
    pub d: Option<usize>,
    pub seed: u64,
    pub exec: Exec,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { preset: None, n: None, d: None, seed: DEFAULT_SEED, exec: Exec::Parallel }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
    /// Not serialized, so reports stay byte-identical across runs.
    #[serde(skip)]
    pub millis: u128,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn millis(&self) -> u128 {
        self.checks.iter().map(|c| c.millis).sum()
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

struct Runner {
    checks: Vec<Check>,
}

impl Runner {
    fn new() -> Self {
        Runner { checks: Vec::new() }
    }

    fn run(&mut self, name: impl Into<String>, f: impl FnOnce() -> Result<String>) {
        let t = Instant::now();
        let (pass, detail) = match f() {
            Ok(s) => (true, s),
            Err(e) => (false, format!("{}: {e}", e.kind())),
        };
        self.checks.push(Check { name: name.into(), pass, detail, millis: t.elapsed().as_millis() });
    }

    fn finish(self, suite: &str) -> SuiteReport {
        SuiteReport { suite: suite.into(), checks: self.checks }
    }
}

fn fail(msg: impl Into<String>) -> Error {
    Error::Verification(msg.into())
}

/// Runs one named suite, or every suite for `"all"`.
pub fn run_suite(name: &str, cfg: &SuiteConfig) -> Result<Vec<SuiteReport>> {
    if name == "all" {
        return SUITES.iter().map(|s| run_one(s, cfg)).collect();
    }
    Ok(vec![run_one(name, cfg)?])
}

fn run_one(name: &str, cfg: &SuiteConfig) -> Result<SuiteReport> {
    match name {
        "signs" => signs(cfg),
        "phi" | "tfund" => phi(cfg),
        "associativity" => associativity(cfg),
        "polynomial" => polynomial(cfg),
        "green" => green(cfg),
        "schurweyl" => schurweyl(cfg),
        "truncation" => truncation(cfg),
        "symmetric" => symmetric(cfg),
        "integrality" => integrality(cfg),
        "generation" => generation(cfg),
        "desuper" => desuper(cfg),
        _ => Err(Error::Precondition(format!("unknown suite {name}; known: {}, all", SUITES.join(", ")))),
    }
}

/// Default instances, or the single override instance.
fn instances(cfg: &SuiteConfig, defaults: &[(&str, usize, usize)], n0: usize, d0: usize) -> Vec<(String, usize, usize)> {
    match &cfg.preset {
        Some(p) => vec![(p.clone(), cfg.n.unwrap_or(n0), cfg.d.unwrap_or(d0))],
        None => defaults
            .iter()
            .filter(|(_, n, d)| cfg.n.is_none_or(|m| m == *n) && cfg.d.is_none_or(|e| e == *d))
            .map(|&(p, n, d)| (p.to_string(), n, d))
            .collect(),
    }
}

fn all_words(letters: usize, d: usize) -> Vec<Word> {
    let mut out = vec![Word::new()];
    for _ in 0..d {
        out = out
            .into_iter()
            .flat_map(|w| {
                (0..letters as u16).map(move |l| {
                    let mut x = w.clone();
                    x.push(l);
                    x
                })
            })
            .collect();
    }
    out
}

fn quiver_of(name: &str) -> Result<Quiver> {
    let l = name
        .strip_prefix("zigzag-a")
        .or_else(|| name.strip_prefix("pq-a"))
        .and_then(|l| l.parse().ok())
        .ok_or_else(|| Error::Precondition(format!("{name} is not a type-A quiver preset (zigzag-a<L> or pq-a<L>)")))?;
    Quiver::type_a(l)
}

fn signs(cfg: &SuiteConfig) -> Result<SuiteReport> {
    let mut r = Runner::new();
    let odd = [false, true, true];
    let max_d = cfg.d.unwrap_or(4);
    for d in 1..=max_d {
        r.run(format!("right action d={d}"), || {
            let perms = Perm::all(d);
            let words = all_words(odd.len(), d);
            cfg.exec.try_for_range(words.len(), |i| {
                let v = &words[i];
                for g in &perms {
                    let (s1, vg) = place_permutation_word(v, &odd, g);
                    for h in &perms {
                        let (s2, vgh) = place_permutation_word(&vg, &odd, h);
                        let (s3, w) = place_permutation_word(v, &odd, &g.compose(h));
                        if s1 * s2 != s3 || vgh != w {
                            return Err(fail(format!("(v^g)^h ≠ v^(gh) for v={v:?}")));
                        }
                    }
                }
                Ok(())
            })?;
            Ok(format!("{} words × {}² permutations", words.len(), perms.len()))
        });
    }
    let algs: Vec<(String, usize)> = match &cfg.preset {
        Some(p) => vec![(p.clone(), max_d)],
        None => vec![("exterior".into(), max_d), ("pq-a2".into(), max_d.min(3)), ("zigzag-a2".into(), max_d.min(2))],
    };
    for (name, top) in algs {
        let a = preset(&name)?;
        for d in 1..=top {
            r.run(format!("automorphism {name} d={d}"), || automorphism_law(&a, d, cfg.exec));
        }
    }
    Ok(r.finish("signs"))
}

fn automorphism_law(a: &SuperAlgebra, d: usize, exec: Exec) -> Result<String> {
    let odd = a.odd_mask();
    let perms = Perm::all(d);
    let words = all_words(a.dim(), d);
    exec.try_for_range(words.len(), |i| {
        let x = &words[i];
        for y in &words {
            let xy = word_product(a, x, y);
            for g in &perms {
                let (sx, xg) = place_permutation_word(x, &odd, g);
                let (sy, yg) = place_permutation_word(y, &odd, g);
                if permute(&xy, &odd, g) != word_product(a, &xg, &yg).scaled(sx * sy) {
                    return Err(fail(format!("(xy)^g ≠ x^g y^g for x={x:?}, y={y:?}")));
                }
            }
        }
        Ok(())
    })?;
    Ok(format!("{} word pairs × {} permutations", words.len() * words.len(), perms.len()))
}

fn random_pairs(dim: usize, count: usize, rng: &mut ChaCha8Rng) -> Vec<(usize, usize)> {
    let mut all: Vec<(usize, usize)> = (0..dim).flat_map(|i| (0..dim).map(move |j| (i, j))).collect();
    if all.len() > count {
        all.shuffle(rng);
        all.truncate(count);
    }
    all
}

/// Sampled pairs for `d ≥ 3`.
const RANDOM_PAIRS: usize = 2000;

fn phi(cfg: &SuiteConfig) -> Result<SuiteReport> {
    let mut r = Runner::new();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let defaults: Vec<(&str, usize, usize)> =
        ["trivial", "dual", "pq-a2"].iter().flat_map(|&p| (1..=3).map(move |d| (p, 1, d))).collect();
    for (p, n, d) in instances(cfg, &defaults, 1, 2) {
        r.run(format!("phi {p} n={n} d={d}"), || {
            let a = preset(&p)?;
            let x = Double::new(&a, n, d, cfg.exec)?;
            let mut hit = vec![false; x.target().dim()];
            for &(k, s) in x.phi() {
                if s.abs() != 1 || std::mem::replace(&mut hit[k], true) {
                    return Err(fail("φ is not a signed basis bijection"));
                }
            }
            if x.dim() != x.target().dim() {
                return Err(fail(format!("dim 'D = {} but dim Inv^d T = {}", x.dim(), x.target().dim())));
            }
            let (pairs, how) = if d <= 2 { (x.all_pairs(), "all") } else { (random_pairs(x.dim(), RANDOM_PAIRS, &mut rng), "random") };
            x.check_multiplicative(&pairs, cfg.exec)?;
            Ok(format!("dim {}, {} {how} pairs multiplicative", x.dim(), pairs.len()))
        });
    }
    Ok(r.finish("phi"))
}

/// Plain products of all basis pairs by the Sweedler route.
fn sweedler_table(x: &Double, variant: Variant, exec: Exec) -> Result<Vec<DoubleElement>> {
    exec.map_range(x.dim() * x.dim(), |k| x.product(k / x.dim(), k % x.dim(), variant, Route::Sweedler)).into_iter().collect()
}

fn table_mul(table: &[DoubleElement], dim: usize, x: &DoubleElement, y: &DoubleElement) -> DoubleElement {
    let mut out = LinComb::new();
    for (&i, &a) in x.iter() {
        for (&j, &b) in y.iter() {
            out.add_scaled(&table[i * dim + j], a * b);
        }
    }
    out
}

/// Random triples for `d ≥ 3`.
const RANDOM_TRIPLES: usize = 10_000;

fn associativity(cfg: &SuiteConfig) -> Result<SuiteReport> {
    let mut r = Runner::new();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let defaults = [("trivial", 1, 2), ("dual", 1, 2), ("pq-a2", 1, 2), ("trivial", 1, 3), ("dual", 1, 3), ("pq-a2", 1, 3)];
    for (p, n, d) in instances(cfg, &defaults, 1, 2) {
        r.run(format!("associativity {p} n={n} d={d}"), || {
            let x = Double::new(&preset(&p)?, n, d, cfg.exec)?;
            let dim = x.dim();
            let table = sweedler_table(&x, Variant::Plain, cfg.exec)?;
            let triples: Vec<(usize, usize, usize)> = if d <= 2 || dim.pow(3) <= RANDOM_TRIPLES {
                (0..dim.pow(3)).map(|t| (t / (dim * dim), (t / dim) % dim, t % dim)).collect()
            } else {
                (0..RANDOM_TRIPLES).map(|_| (rng.gen_range(0..dim), rng.gen_range(0..dim), rng.gen_range(0..dim))).collect()
            };
            cfg.exec.try_for_range(triples.len(), |t| {
                let (i, j, k) = triples[t];
                let (ei, ek) = (LinComb::term(i, 1), LinComb::term(k, 1));
                let l = table_mul(&table, dim, &table[i * dim + j], &ek);
                let rr = table_mul(&table, dim, &ei, &table[j * dim + k]);
                if l != rr {
                    return Err(fail(format!("(xy)z ≠ x(yz) on ({}, {}, {})", x.label_name(i), x.label_name(j), x.label_name(k))));
                }
                Ok(())
            })?;
            Ok(format!("dim {dim}, {} triples", triples.len()))
        });
    }
    Ok(r.finish("associativity"))
}

fn polynomial(cfg: &SuiteConfig) -> Result<SuiteReport> {
    let mut r = Runner::new();
    let top = cfg.d.unwrap_or(5);
    for d in 1..=top {
        r.run(format!("truncated polynomials d={d}"), || {
            let x = Double::new(&preset("trivial")?, 1, d, cfg.exec)?;
            if x.dim() != d + 1 {
                return Err(fail(format!("dim D^{d} 𝒪 = {}, expected {}", x.dim(), d + 1)));
            }
            let z = |e: usize| x.idx(&Monomial::from_letters(&vec![0; d - e]), &Monomial::from_letters(&vec![0; e]));
            for e in 0..=d {
                for f in 0..=d {
                    for route in [Route::Sweedler, Route::Transport] {
                        let plain = x.product(z(e), z(f), Variant::Plain, route)?;
                        let divided = x.product(z(e), z(f), Variant::Divided, route)?;
                        let (wp, wd) = if e + f <= d {
                            (LinComb::term(z(e + f), 1), LinComb::term(z(e + f), binomial((e + f) as u64, e as u64) as i64))
                        } else {
                            (LinComb::new(), LinComb::new())
                        };
                        if plain != wp || divided != wd {
                            return Err(fail(format!("z^{e} z^{f} wrong ({route:?}): {plain:?}, {divided:?}")));
                        }
                    }
                }
            }
            Ok(format!("{} products", (d + 1) * (d + 1)))
        });
    }
    Ok(r.finish("polynomial"))
}

const SCHUR_INSTANCES: [(&str, usize, usize); 12] = [
    ("trivial", 1, 1),
    ("trivial", 1, 2),
    ("trivial", 2, 1),
    ("trivial", 2, 2),
    ("pq-a2", 1, 1),
    ("pq-a2", 1, 2),
    ("pq-a2", 2, 1),
    ("pq-a2", 2, 2),
    ("zigzag-a2", 1, 1),
    ("zigzag-a2", 1, 2),
    ("zigzag-a2", 2, 1),
    ("zigzag-a2", 2, 2),
];

fn green(cfg: &SuiteConfig) -> Result<SuiteReport> {
    let mut r = Runner::new();
    for (p, n, d) in instances(cfg, &SCHUR_INSTANCES, 2, 2) {
        r.run(format!("green {p} n={n} d={d}"), || {
            let s = SchurAlgebra::new(&preset(&p)?, n, d, Mode::Formula, cfg.exec)?;
            let pairs = s.verify_against_oracle(cfg.exec, cfg.seed)?;
            Ok(format!("dim {}, {pairs} pairs match the oracle", s.dim()))
        });
    }
    if cfg.preset.is_none() && cfg.n.is_none_or(|n| n == 2) && cfg.d.is_none_or(|d| d == 2) {
        r.run("commutant table trivial n=2 d=2", || {
            let a = preset("trivial")?;
            let s = SchurAlgebra::new(&a, 2, 2, Mode::Formula, cfg.exec)?;
            let t = commutant_table(&s, &TensorSpace::new(&a, 2, 2))?;
            if t.as_slice() != s.table() {
                return Err(fail("commutant multiplication table differs from the formula table"));
            }
            Ok(format!("{} products agree", t.len()))
        });
    }
    Ok(r.finish("green"))
}

fn schurweyl(cfg: &SuiteConfig) -> Result<SuiteReport> {
    let mut r = Runner::new();
    let mut defaults = SCHUR_INSTANCES.to_vec();
    defaults.push(("trivial", 3, 2));
    for (p, n, d) in instances(cfg, &defaults, 2, 2) {
        r.run(format!("schur-weyl {p} n={n} d={d}"), || {
            let a = preset(&p)?;
            let s = SchurAlgebra::new(&a, n, d, Mode::Formula, cfg.exec)?;
            let ts = TensorSpace::new(&a, n, d);
            check_commutation(&s, &ts, cfg.exec)?;
            let c = commutant_dimension(&a, n, d);
            let rank = faithfulness_rank(&s, &ts, cfg.exec);
            if c != s.dim() || rank != s.dim() {
                return Err(fail(format!("dim S = {}, commutant {c}, rank of action {rank}", s.dim())));
            }
            Ok(format!("commutant dim {c} = dim S, action faithful"))
        });
    }
    Ok(r.finish("schurweyl"))
}

fn truncation(cfg: &SuiteConfig) -> Result<SuiteReport> {
    let mut r = Runner::new();
    let defaults = [
        ("trivial", 1, 1),
        ("trivial", 2, 1),
        ("trivial", 2, 2),
        ("trivial", 3, 2),
        ("trivial", 3, 3),
        ("zigzag-a2", 1, 1),
        ("zigzag-a2", 2, 1),
        ("zigzag-a2", 2, 2),
    ];
    for (p, n, d) in instances(cfg, &defaults, 2, 2) {
        r.run(format!("truncation {p} n={n} d={d}"), || {
            let s = SchurAlgebra::new(&preset(&p)?, n, d, Mode::Formula, cfg.exec)?;
            let rep = Truncation::new(&s)?.check(None, cfg.exec)?;
            if !rep.lattice_equal {
                return Err(fail("φ(W) differs from ξ_ω S ξ_ω"));
            }
            if !rep.bimodule_onto || rep.bimodule_rank != rep.tensor_dim {
                return Err(fail(format!("S ξ_ω has rank {} but V^⊗d has dim {}", rep.bimodule_rank, rep.tensor_dim)));
            }
            Ok(format!("{} pairs, {} basis elements, S ξ_ω ≅ V^⊗d (rank {})", rep.pairs_checked, rep.basis_checked, rep.tensor_dim))
        });
    }
    Ok(r.finish("truncation"))
}

/// Triples sampled for associativity of the form.
const FORM_TRIPLES: usize = 500;

fn symmetric(cfg: &SuiteConfig) -> Result<SuiteReport> {
    let mut r = Runner::new();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for (p, n, d) in instances(cfg, &[("trivial", 2, 2), ("pq-a2", 2, 2)], 2, 2) {
        r.run(format!("form {p} n={n} d={d}"), || {
            let x = Double::new(&preset(&p)?, n, d, cfg.exec)?;
            let f = x.symmetric_form(cfg.exec)?;
            let dim = x.dim();
            for _ in 0..FORM_TRIPLES {
                let (i, j, k) = (rng.gen_range(0..dim), rng.gen_range(0..dim), rng.gen_range(0..dim));
                let (ei, ek) = (LinComb::term(i, 1), LinComb::term(k, 1));
                let l = x.mul(&x.product(i, j, Variant::Plain, Route::Transport)?, &ek, Variant::Plain)?;
                let rr = x.mul(&ei, &x.product(j, k, Variant::Plain, Route::Transport)?, Variant::Plain)?;
                let ev = |y: &DoubleElement| y.iter().map(|(&m, &c)| c * f.functional[m]).sum::<i64>();
                if ev(&l) != ev(&rr) {
                    return Err(fail(format!("F((xy)z) ≠ F(x(yz)) on ({i}, {j}, {k})")));
                }
            }
            if !f.is_unimodular() {
                return Err(fail(format!("Gram determinant {}", f.determinant())));
            }
            for q in [2, 3, 5] {
                if !f.nondegenerate_mod(q) {
                    return Err(fail(format!("form degenerate mod {q}")));
                }
            }
            Ok(format!("dim {dim}, symmetric, det {}, nondegenerate mod 2, 3, 5", f.determinant()))
        });
    }
    if cfg.preset.is_none() {
        r.run("divided witness trivial n=1 d=2 mod 2", || {
            let x = Double::new(&preset("trivial")?, 1, 2, cfg.exec)?;
            let dets = divided_form_witness(&x, 2)?;
            if dets.iter().any(|&v| v != 0) {
                return Err(fail("some functional gives a nondegenerate form on 'D over 𝔽_2"));
            }
            Ok(format!("all {} functionals degenerate over 𝔽_2", dets.len()))
        });
    }
    Ok(r.finish("symmetric"))
}

fn integrality(cfg: &SuiteConfig) -> Result<SuiteReport> {
    let mut r = Runner::new();
    for (p, n, d) in instances(cfg, &SCHUR_INSTANCES, 2, 2) {
        r.run(format!("divided constants {p} n={n} d={d}"), || {
            let s = SchurAlgebra::new(&preset(&p)?, n, d, Mode::Formula, cfg.exec)?;
            Ok(format!("{} constants integral", s.check_divided_integrality()?))
        });
    }
    let doubles: Vec<(&str, usize, usize)> = ["trivial", "dual", "pq-a2"].iter().flat_map(|&p| (1..=3).map(move |d| (p, 1, d))).collect();
    for (p, n, d) in instances(cfg, &doubles, 1, 2) {
        r.run(format!("divided double {p} n={n} d={d}"), || {
            let x = Double::new(&preset(&p)?, n, d, cfg.exec)?;
            let target = x.target().check_divided_integrality()?;
            sweedler_table(&x, Variant::Divided, cfg.exec)?;
            cfg.exec.try_for_range(x.dim() * x.dim(), |k| closed_form_double_product(&x, k / x.dim(), k % x.dim(), Variant::Divided).map(|_| ()))?;
            Ok(format!("{} target constants, {} divided products integral", target, x.dim() * x.dim()))
        });
    }
    Ok(r.finish("integrality"))
}

fn generation(cfg: &SuiteConfig) -> Result<SuiteReport> {
    let mut r = Runner::new();
    for (p, n, d) in instances(cfg, &[("trivial", 2, 2), ("pq-a2", 2, 2)], 2, 2) {
        let x = match Double::new(&preset(&p)?, n, d, cfg.exec) {
            Ok(x) => x,
            Err(e) => {
                r.run(format!("double {p} n={n} d={d}"), || Err(e));
                continue;
            }
        };
        let sets: &[GeneratorSet] = if n >= d {
            &[GeneratorSet::Basic, GeneratorSet::Corner, GeneratorSet::Truncated]
        } else {
            &[GeneratorSet::Basic, GeneratorSet::Corner]
        };
        for &set in sets {
            r.run(format!("generation {set:?} {p} n={n} d={d}"), || {
                let g = x.generation_check(set)?;
                if !g.holds {
                    return Err(fail(format!("closure rank {} vs {}; missing {:?}", g.rank, g.target_rank, g.missing)));
                }
                Ok(format!("{} generators, closure = D lattice (rank {})", g.generators, g.rank))
            });
        }
    }
    let quivers: Vec<(String, usize, usize)> = match &cfg.preset {
        Some(p) if quiver_of(p).is_ok() => vec![(p.clone(), cfg.n.unwrap_or(2), cfg.d.unwrap_or(2))],
        Some(_) => vec![],
        None => vec![("zigzag-a2".into(), 2, 2)],
    };
    for (p, n, d) in quivers {
        let q = quiver_of(&p)?;
        r.run(format!("quiver generation {p} n={n} d={d}"), || {
            let sc = Schiver::new(&q, n, d, cfg.exec)?;
            let pairs = sc.check_transport(1, cfg.exec)?;
            let rep = sc.generation_check(cfg.exec)?;
            if rep.degree_zero != rep.degree_zero_expected {
                return Err(fail(format!("degree-zero part has dim {}, expected {}", rep.degree_zero, rep.degree_zero_expected)));
            }
            if !rep.superized_holds || !rep.desuperized_holds {
                return Err(fail(format!(
                    "superized closure {} (rank {}), desuperized closure {} (rank {})",
                    rep.superized_holds, rep.superized_rank, rep.desuperized_holds, rep.desuperized_rank
                )));
            }
            Ok(format!(
                "dim S = {}, dim D = {}, {pairs} transport pairs, {} i^λ maps, both closures equal D",
                rep.schur_dim, rep.double_dim, rep.i_lambda_count
            ))
        });
        r.run(format!("orientation {p} n={n} d={d}"), || {
            if !orientation_check(&q, n, d, cfg.exec)? {
                return Err(fail("D_Q and D_Q^op give different lattices"));
            }
            Ok("D_Q = D_Q^op inside S^Z".into())
        });
    }
    Ok(r.finish("generation"))
}

fn desuper(cfg: &SuiteConfig) -> Result<SuiteReport> {
    let mut r = Runner::new();
    let name = cfg.preset.clone().unwrap_or_else(|| "zigzag-a2".into());
    let q = quiver_of(&name)?;
    let ds: Vec<usize> = match cfg.d {
        Some(d) => vec![d],
        None => vec![2, 3],
    };
    for d in ds {
        r.run(format!("sigma {name} d={d}"), || {
            let z = q.zigzag()?;
            let (e0, e1) = q.adapted_idempotents(&z)?;
            let ds = Desuper::new(&z, &e0, &e1, d)?;
            let relations = ds.check_relations()?;
            let pairs = ds.check_homomorphism(if d <= 2 { 1 } else { 997 }, cfg.exec)?;
            let blocks = ds.block_determinants()?.len();
            Ok(format!("{relations} relations, {pairs} products, {blocks} unimodular blocks"))
        });
    }
    let (n, d) = (cfg.n.unwrap_or(2), cfg.d.unwrap_or(2).min(2));
    r.run(format!("psi {name} n={n} d={d}"), || {
        let rep = desuper_suite(&q, 2, n, d, cfg.exec)?;
        Ok(format!(
            "{} module checks, {} product pairs, rank {} = dim S",
            rep.module_checks, rep.psi_pairs, rep.psi_rank
        ))
    });
    Ok(r.finish("desuper"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(preset: &str, n: usize, d: usize) -> SuiteConfig {
        SuiteConfig { preset: Some(preset.into()), n: Some(n), d: Some(d), seed: DEFAULT_SEED, exec: Exec::Sequential }
    }

    #[test]
    fn small_instances_pass() {
        for (suite, p, n, d) in [
            ("signs", "exterior", 1, 3),
            ("phi", "pq-a2", 1, 2),
            ("associativity", "dual", 1, 2),
            ("polynomial", "trivial", 1, 3),
            ("green", "pq-a2", 1, 2),
            ("schurweyl", "trivial", 2, 2),
            ("truncation", "trivial", 2, 2),
            ("symmetric", "trivial", 1, 2),
            ("integrality", "dual", 1, 2),
            ("generation", "trivial", 1, 2),
            ("desuper", "zigzag-a2", 1, 2),
        ] {
            for rep in run_suite(suite, &small(p, n, d)).unwrap() {
                assert!(rep.passed(), "{suite}: {:?}", rep.failures().collect::<Vec<_>>());
                assert!(!rep.checks.is_empty());
            }
        }
    }

    #[test]
    fn violations_are_reported() {
        let rep = &run_suite("truncation", &small("trivial", 1, 2)).unwrap()[0];
        assert!(!rep.passed());
        assert!(rep.checks[0].detail.starts_with("precondition"), "{}", rep.checks[0].detail);
        assert!(run_suite("nope", &SuiteConfig::default()).is_err());
        assert!(run_suite("desuper", &small("trivial", 1, 2)).is_err());
    }

    #[test]
    fn reports_are_deterministic() {
        let cfg = small("pq-a2", 1, 3);
        let a = serde_json::to_string(&run_suite("tfund", &cfg).unwrap()).unwrap();
        let b = serde_json::to_string(&run_suite("phi", &SuiteConfig { exec: Exec::Parallel, ..cfg }).unwrap()).unwrap();
        assert_eq!(a, b);
    }
}
