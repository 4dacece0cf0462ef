//! Desuperization: the isomorphism `σ: W^{|A|}_d → |W^A_d|` for an adapted
//! pair of idempotents, alternating colored permutation modules and the
//! transported isomorphism `ψ: |S^A(n,d)| → End_{W^{|A|}_d}(M^{|A|}(n,d))`.

use super::check_adapted_pair;
use crate::combinatorics::{shortest_coset_reps, split_right_coset, ColoredWeight, Perm, Side, Weight, Word};
use crate::lattice::{determinant, rank_rational};
use crate::Int;
use crate::schur::SchurAlgebra;
use crate::schurweyl::{ColoredModules, TensorSpace, Wreath, WreathElement};
use crate::superalgebra::{Label, SuperAlgebra};
use crate::{Error, Exec, LinComb, Result};
use std::collections::HashMap;

/// `|A|`: the same algebra with every basis element even.
pub fn underlying(a: &SuperAlgebra) -> Result<SuperAlgebra> {
    let labels: Vec<Label> = a.labels().iter().map(|l| Label { name: l.name.clone(), parity: 0, degree: l.degree }).collect();
    SuperAlgebra::build(&format!("|{}|", a.name()), labels, a.unit().clone(), |i, j| a.product(i, j).clone(), a.meta().clone())
}

fn tensor_of(parts: &[LinComb<usize>]) -> LinComb<Word> {
    let mut acc = LinComb::term(Word::new(), 1);
    for p in parts {
        let mut out = LinComb::new();
        for (w, a) in acc.iter() {
            for (&l, &b) in p.iter() {
                let mut w2 = w.clone();
                w2.push(l as u16);
                out.add_term(w2, a * b);
            }
        }
        acc = out;
    }
    acc
}

pub struct Desuper {
    a: SuperAlgebra,
    e: [LinComb<usize>; 2],
    d: usize,
    pub signed: Wreath,
    pub untwisted: Wreath,
    tau: Vec<WreathElement>,
}

impl Desuper {
    pub fn new(a: &SuperAlgebra, e0: &LinComb<usize>, e1: &LinComb<usize>, d: usize) -> Result<Self> {
        check_adapted_pair(a, e0, e1)?;
        let plain = underlying(a)?;
        let mut ds = Desuper {
            a: a.clone(),
            e: [e0.clone(), e1.clone()],
            d,
            signed: Wreath::new(a, d),
            untwisted: Wreath::new(&plain, d),
            tau: Vec::new(),
        };
        ds.tau = (0..d.saturating_sub(1)).map(|r| ds.sigma_tau(r)).collect();
        Ok(ds)
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// `σ(x[t]) = Σ_ε (−1)^{(ε_1+⋯+ε_{t−1}) x̄} e^{ε_1}⊗⋯⊗e^{ε_{t−1}}⊗x⊗1⊗⋯⊗1`.
    pub fn sigma_slot(&self, x: usize, t: usize) -> WreathElement {
        let odd = self.a.is_odd(x);
        let mut out = LinComb::new();
        for mask in 0u32..(1 << t) {
            let mut parts = Vec::with_capacity(self.d);
            for a in 0..t {
                parts.push(self.e[((mask >> a) & 1) as usize].clone());
            }
            parts.push(LinComb::term(x, 1));
            parts.extend((t + 1..self.d).map(|_| self.a.unit().clone()));
            let sign = if odd && mask.count_ones() % 2 == 1 { -1 } else { 1 };
            out.add_scaled(&self.signed.algebra_element(&tensor_of(&parts)), sign);
        }
        out
    }

    /// `σ(τ_r) = τ_r (e^{00}[r] + e^{01}[r] + e^{10}[r] − e^{11}[r])`.
    pub fn sigma_tau(&self, r: usize) -> WreathElement {
        let mut x = LinComb::new();
        for (u, v) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
            let parts: Vec<LinComb<usize>> = (0..self.d)
                .map(|a| if a == r { self.e[u].clone() } else if a == r + 1 { self.e[v].clone() } else { self.a.unit().clone() })
                .collect();
            x.add_scaled(&tensor_of(&parts), if (u, v) == (1, 1) { -1 } else { 1 });
        }
        let g = self.signed.group(&Perm::transposition(self.d, r));
        self.signed.mul(&g, &self.signed.algebra_element(&x))
    }

    /// `σ((x_1⊗⋯⊗x_d) g) = σ(x_1[1])⋯σ(x_d[d]) σ(τ_{r_1})⋯σ(τ_{r_k})`.
    pub fn sigma_basis(&self, x: &Word, g: &Perm) -> WreathElement {
        let mut acc = self.signed.unit();
        for (t, &l) in x.iter().enumerate() {
            acc = self.signed.mul(&acc, &self.sigma_slot(l as usize, t));
        }
        for r in g.reduced_word() {
            acc = self.signed.mul(&acc, &self.tau[r]);
        }
        acc
    }

    pub fn sigma(&self, w: &WreathElement) -> WreathElement {
        let mut out = LinComb::new();
        for ((x, g), &c) in w.iter() {
            out.add_scaled(&self.sigma_basis(x, g), c);
        }
        out
    }

    /// The defining relations of the untwisted wreath product, pushed
    /// through `σ`. Returns the number of relations checked.
    pub fn check_relations(&self) -> Result<usize> {
        let w = &self.signed;
        let dim = self.a.dim();
        let fail = |m: String| Err(Error::Verification(format!("σ relation fails: {m}")));
        let mut count = 0;
        let slots: Vec<Vec<WreathElement>> = (0..self.d).map(|t| (0..dim).map(|x| self.sigma_slot(x, t)).collect()).collect();
        let lin = |t: usize, y: &LinComb<usize>| -> WreathElement {
            let mut out = LinComb::new();
            for (&k, &c) in y.iter() {
                out.add_scaled(&slots[t][k], c);
            }
            out
        };
        for t in 0..self.d {
            if lin(t, self.a.unit()) != w.unit() {
                return fail(format!("σ(1[{}]) ≠ 1", t + 1));
            }
            count += 1;
            for x in 0..dim {
                for y in 0..dim {
                    if w.mul(&slots[t][x], &slots[t][y]) != lin(t, self.a.product(x, y)) {
                        return fail(format!("σ(x[{t}])σ(y[{t}]) for {}, {}", self.a.label(x), self.a.label(y)));
                    }
                    count += 1;
                    for s in 0..self.d {
                        if s != t {
                            if w.mul(&slots[t][x], &slots[s][y]) != w.mul(&slots[s][y], &slots[t][x]) {
                                return fail(format!("σ(x[{}]) and σ(y[{}]) do not commute", t + 1, s + 1));
                            }
                            count += 1;
                        }
                    }
                }
            }
        }
        for r in 0..self.tau.len() {
            let tr = &self.tau[r];
            if w.mul(tr, tr) != w.unit() {
                return fail(format!("σ(τ_{})² ≠ 1", r + 1));
            }
            count += 1;
            for s in 0..self.tau.len() {
                let ts = &self.tau[s];
                let ok = if s == r + 1 {
                    w.mul(&w.mul(tr, ts), tr) == w.mul(&w.mul(ts, tr), ts)
                } else if s > r + 1 {
                    w.mul(tr, ts) == w.mul(ts, tr)
                } else {
                    true
                };
                if !ok {
                    return fail(format!("braid relation for τ_{}, τ_{}", r + 1, s + 1));
                }
                count += 1;
            }
            let g = Perm::transposition(self.d, r);
            for t in 0..self.d {
                for x in 0..dim {
                    if w.mul(tr, &slots[t][x]) != w.mul(&slots[g.image(t)][x], tr) {
                        return fail(format!("τ_{} x[{}] ≠ x[τ(t)] τ_{}", r + 1, t + 1, r + 1));
                    }
                    count += 1;
                }
            }
        }
        Ok(count)
    }

    /// `σ(uv) = σ(u)σ(v)` on basis pairs; every `step`-th pair when sampling.
    pub fn check_homomorphism(&self, step: usize, exec: Exec) -> Result<usize> {
        let basis = self.untwisted.basis();
        let pairs: Vec<(usize, usize)> =
            (0..basis.len()).flat_map(|i| (0..basis.len()).map(move |j| (i, j))).step_by(step.max(1)).collect();
        let images: Vec<WreathElement> = exec.map_range(basis.len(), |i| self.sigma_basis(&basis[i].0, &basis[i].1));
        exec.try_for_range(pairs.len(), |k| {
            let (i, j) = pairs[k];
            let uv = self.untwisted.mul(&LinComb::term(basis[i].clone(), 1), &LinComb::term(basis[j].clone(), 1));
            if self.sigma(&uv) != self.signed.mul(&images[i], &images[j]) {
                return Err(Error::Verification(format!("σ is not multiplicative on basis pair ({i}, {j})")));
            }
            Ok(())
        })?;
        Ok(pairs.len())
    }

    /// `σ` restricted to `A^{⊗d} ⊗ g` for every `g`: stays in the block and has
    /// determinant `±1`. Returns the determinants.
    pub fn block_determinants(&self) -> Result<Vec<(Perm, Int)>> {
        let words: Vec<Word> = {
            let b = self.untwisted.basis();
            let id = Perm::identity(self.d);
            b.into_iter().filter(|(_, g)| *g == id).map(|(w, _)| w).collect()
        };
        let pos: HashMap<&Word, usize> = words.iter().enumerate().map(|(i, w)| (w, i)).collect();
        let mut out = Vec::new();
        for g in Perm::all(self.d) {
            let mut m = vec![vec![Int::from(0); words.len()]; words.len()];
            for (i, x) in words.iter().enumerate() {
                for ((y, h), &c) in self.sigma_basis(x, &g).iter() {
                    if *h != g {
                        return Err(Error::Verification("σ leaves the block A^{⊗d} ⊗ g".into()));
                    }
                    m[i][pos[y]] = Int::from(c);
                }
            }
            let det = determinant(m);
            if det != Int::from(1) && det != Int::from(-1) {
                return Err(Error::Verification(format!("σ on block {:?} has determinant {det}", g.images())));
            }
            out.push((g, det));
        }
        Ok(out)
    }
}

/// `M^{|A|}_𝝀 = alt_𝝀 ⊗ e_𝝀 W^{|A|}_d`, basis `m_𝝀 (b_1⊗⋯⊗b_d) g` with `b_a`
/// in the color of the block of `a` and `g ∈ ^𝝀𝒟`.
pub struct AlternatingModule {
    pub lam: ColoredWeight,
    flat: Weight,
    block_color: Vec<usize>,
    zeta: Vec<i8>,
    color: Vec<usize>,
    basis: Vec<(Word, Perm)>,
    index: HashMap<(Word, Perm), usize>,
}

impl AlternatingModule {
    /// `color[b]` is the `i` with `e_i b = b`; `zeta[i] = ±1`.
    pub fn new(lam: &ColoredWeight, color: &[usize], zeta: &[i8]) -> Self {
        let flat = lam.flat();
        let block_color: Vec<usize> = flat.sequence().iter().map(|&blk| blk % lam.colors).collect();
        let mut words = vec![Word::new()];
        for &c in &block_color {
            words = words
                .into_iter()
                .flat_map(|w| {
                    (0..color.len()).filter(move |&b| color[b] == c).map(move |b| {
                        let mut w2 = w.clone();
                        w2.push(b as u16);
                        w2
                    })
                })
                .collect();
        }
        let reps = shortest_coset_reps(&flat, Side::Left).representatives;
        let basis: Vec<(Word, Perm)> = words.iter().flat_map(|w| reps.iter().map(move |g| (w.clone(), g.clone()))).collect();
        let index = basis.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();
        AlternatingModule { lam: lam.clone(), flat, block_color, zeta: zeta.to_vec(), color: color.to_vec(), basis, index }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[(Word, Perm)] {
        &self.basis
    }

    /// `ε_𝝀(u)` for `u ∈ 𝔖_𝝀`: `ζ_i` per inversion inside a block of color `i`.
    pub fn epsilon(&self, u: &Perm) -> i64 {
        let seq = self.flat.sequence();
        let mut s = 1;
        for a in 0..u.degree() {
            for c in a + 1..u.degree() {
                if u.image(a) > u.image(c) {
                    debug_assert_eq!(seq[a], seq[c]);
                    s *= self.zeta[self.block_color[a]] as i64;
                }
            }
        }
        s
    }

    /// `m_𝝀 (x k)`: write `k = u·rep`, then `m x u = ε(u) m e_𝝀 x^u`.
    pub fn generator_times(&self, x: &Word, k: &Perm) -> LinComb<usize> {
        let (u, rep) = split_right_coset(&self.flat, k);
        let xu: Word = (0..x.len()).map(|a| x[u.image(a)]).collect();
        if (0..xu.len()).any(|a| self.color[xu[a] as usize] != self.block_color[a]) {
            return LinComb::new();
        }
        LinComb::term(self.index[&(xu, rep)], self.epsilon(&u))
    }

    pub fn generator_action(&self, w: &WreathElement) -> LinComb<usize> {
        let mut out = LinComb::new();
        for ((x, k), &c) in w.iter() {
            out.add_scaled(&self.generator_times(x, k), c);
        }
        out
    }

    /// `(m_𝝀 b g) · w` in the untwisted wreath product `wr`.
    pub fn act(&self, wr: &Wreath, i: usize, w: &WreathElement) -> LinComb<usize> {
        self.generator_action(&wr.mul(&LinComb::term(self.basis[i].clone(), 1), w))
    }

    /// Grading of the basis vector from that of `A`.
    pub fn degree(&self, a: &SuperAlgebra, i: usize) -> Option<i32> {
        self.basis[i].0.iter().map(|&b| a.degree(b as usize)).sum()
    }
}

/// `M^{|A|}(n,d)` with its identification `m_𝝀 b g ↦ v_𝝀 σ(b g)` in `V^{⊗d}`
/// and the transported left action `ψ`.
pub struct Psi {
    pub ds: Desuper,
    pub colored: ColoredModules,
    pub modules: Vec<AlternatingModule>,
    offsets: Vec<usize>,
    /// global basis index ↦ (tensor basis index, sign)
    to_tensor: Vec<(usize, i64)>,
    from_tensor: HashMap<usize, (usize, i64)>,
}

/// Sparse square matrix stored by columns.
pub type Endo = Vec<Vec<(usize, i64)>>;

pub fn compose(a: &Endo, b: &Endo) -> Endo {
    b.iter()
        .map(|col| {
            let mut acc: LinComb<usize> = LinComb::new();
            for &(m, y) in col {
                for &(k, x) in &a[m] {
                    acc.add_term(k, x * y);
                }
            }
            acc.iter().map(|(&k, &c)| (k, c)).collect()
        })
        .collect()
}

pub fn endo_add(acc: &mut Endo, b: &Endo, c: i64) {
    for (col, bc) in acc.iter_mut().zip(b) {
        let mut l: LinComb<usize> = LinComb::from_pairs(col.iter().copied());
        for &(k, x) in bc {
            l.add_term(k, c * x);
        }
        *col = l.iter().map(|(&k, &v)| (k, v)).collect();
    }
}

pub fn flatten(m: &Endo) -> Vec<(usize, i64)> {
    let n = m.len();
    let mut v: Vec<(usize, i64)> = m.iter().enumerate().flat_map(|(j, col)| col.iter().map(move |&(k, c)| (j * n + k, c))).collect();
    v.sort_unstable();
    v
}

impl Psi {
    /// `idempotents` refine `(e^0, e^1)`; `zeta[i] = 1` iff `e_i ≤ e^0`.
    pub fn new(a: &SuperAlgebra, idempotents: Vec<LinComb<usize>>, zeta: Vec<i8>, n: usize, d: usize) -> Result<Self> {
        let mut e = [LinComb::new(), LinComb::new()];
        for (x, &z) in idempotents.iter().zip(&zeta) {
            e[(z < 0) as usize].add_scaled(x, 1);
        }
        let ds = Desuper::new(a, &e[0], &e[1], d)?;
        let colored = ColoredModules::new(a, idempotents.clone(), n, d)?;
        let color: Vec<usize> = (0..a.dim())
            .map(|b| (0..idempotents.len()).find(|&i| a.mul(&idempotents[i], &LinComb::term(b, 1)) == LinComb::term(b, 1)).expect("checked"))
            .collect();
        let mut modules = Vec::new();
        let mut offsets = Vec::new();
        let mut to_tensor = Vec::new();
        let mut from_tensor = HashMap::new();
        for lam in colored.weights() {
            let m = AlternatingModule::new(&lam, &color, &zeta);
            let v = colored.standard_vector(&lam);
            offsets.push(to_tensor.len());
            for (b, g) in m.basis() {
                let img = colored.ts.act_wreath(&v, &ds.sigma_basis(b, g));
                match colored.ts.coords(&img).as_slice() {
                    [(k, s)] if s.abs() == 1 && !from_tensor.contains_key(k) => {
                        from_tensor.insert(*k, (to_tensor.len(), *s));
                        to_tensor.push((*k, *s));
                    }
                    _ => return Err(Error::Verification(format!("m_𝝀 b g ↦ v_𝝀 σ(b g) is not basis to basis for {:?}", lam.entries))),
                }
            }
            modules.push(m);
        }
        if to_tensor.len() != colored.ts.dim() {
            return Err(Error::Verification("M^{|A|}(n,d) does not exhaust V^{⊗d}".into()));
        }
        Ok(Psi { ds, colored, modules, offsets, to_tensor, from_tensor })
    }

    pub fn dim(&self) -> usize {
        self.to_tensor.len()
    }

    pub fn ts(&self) -> &TensorSpace {
        &self.colored.ts
    }

    pub fn offset(&self, k: usize) -> usize {
        self.offsets[k]
    }

    pub fn module_index(&self, lam: &ColoredWeight) -> Option<usize> {
        self.modules.iter().position(|m| &m.lam == lam)
    }

    /// `Φ(m w) = Φ(m) σ(w)` for every basis vector and generator `w` of `W^{|A|}_d`.
    pub fn check_module_maps(&self, exec: Exec) -> Result<usize> {
        let gens = self.ds.untwisted.generators();
        let sig: Vec<WreathElement> = gens.iter().map(|g| self.ds.sigma(g)).collect();
        let ts = self.ts();
        let jobs: Vec<(usize, usize)> =
            self.modules.iter().enumerate().flat_map(|(k, m)| (0..m.dim()).map(move |i| (k, i))).collect();
        exec.try_for_range(jobs.len(), |t| {
            let (k, i) = jobs[t];
            let m = &self.modules[k];
            let (tk, ts_sign) = self.to_tensor[self.offsets[k] + i];
            for (g, sg) in gens.iter().zip(&sig) {
                let lhs = m.act(&self.ds.untwisted, i, g);
                let mut want = LinComb::new();
                for (&j, &c) in lhs.iter() {
                    let (tj, s) = self.to_tensor[self.offsets[k] + j];
                    want.add_term(tj, c * s);
                }
                let got = ts.act_wreath(&ts.basis_vector(tk), sg).scaled(ts_sign);
                let got = LinComb::from_pairs(ts.coords(&got));
                if got != want {
                    return Err(Error::Verification(format!("alternating module map is not W-linear on {:?}, vector {i}", m.lam.entries)));
                }
            }
            Ok(())
        })?;
        Ok(jobs.len() * gens.len())
    }

    /// Matrix of `ψ(ξ_i)` on the basis of `M^{|A|}(n,d)`.
    pub fn psi_basis(&self, s: &SchurAlgebra, i: usize) -> Endo {
        let ts = self.ts();
        let x = s.xi_expand(i);
        self.to_tensor
            .iter()
            .map(|&(k, sg)| {
                let img = ts.act_matrix_tensor(&x, &ts.basis_vector(k));
                let mut col: Vec<(usize, i64)> = ts
                    .coords(&img)
                    .into_iter()
                    .map(|(j, c)| {
                        let (row, s2) = self.from_tensor[&j];
                        (row, c * sg * s2)
                    })
                    .collect();
                col.sort_unstable();
                col
            })
            .collect()
    }

    /// `ψ(y)` from the cached `ψ(ξ_i)`.
    pub fn psi(&self, y: &LinComb<usize>, cache: &[Endo]) -> Endo {
        let mut out: Endo = vec![Vec::new(); self.dim()];
        for (&i, &c) in y.iter() {
            endo_add(&mut out, &cache[i], c);
        }
        out
    }

    /// `ψ(ξ_i)` commutes with `W^{|A|}_d` on the module generators.
    pub fn check_w_linear(&self, m: &Endo) -> Result<()> {
        let gens = self.ds.untwisted.generators();
        for (k, module) in self.modules.iter().enumerate() {
            for i in 0..module.dim() {
                let col = self.offsets[k] + i;
                for g in &gens {
                    // ψ(v w) vs ψ(v) w
                    let vw = module.act(&self.ds.untwisted, i, g);
                    let mut lhs: LinComb<usize> = LinComb::new();
                    for (&j, &c) in vw.iter() {
                        for &(r, x) in &m[self.offsets[k] + j] {
                            lhs.add_term(r, c * x);
                        }
                    }
                    let mut rhs: LinComb<usize> = LinComb::new();
                    for &(r, x) in &m[col] {
                        let (kk, ii) = self.locate(r);
                        for (&j, &c) in self.modules[kk].act(&self.ds.untwisted, ii, g).iter() {
                            rhs.add_term(self.offsets[kk] + j, c * x);
                        }
                    }
                    if lhs != rhs {
                        return Err(Error::Verification("ψ(y) is not W^{|A|}-linear".into()));
                    }
                }
            }
        }
        Ok(())
    }

    /// Global index ↦ (module, local index).
    pub fn locate(&self, g: usize) -> (usize, usize) {
        let k = self.offsets.partition_point(|&o| o <= g) - 1;
        (k, g - self.offsets[k])
    }

    /// Rank of `{ψ(ξ_i)}`; equals `dim S` when `ψ` is injective.
    pub fn rank(&self, cache: &[Endo]) -> usize {
        let rows: Vec<Vec<(usize, i64)>> = cache.iter().map(flatten).collect();
        rank_rational(&rows, self.dim() * self.dim())
    }
}

#[derive(Clone, Debug, Default)]
pub struct DesuperReport {
    pub relations: usize,
    pub pairs: usize,
    pub blocks: usize,
    pub module_checks: usize,
    pub psi_pairs: usize,
    pub psi_rank: usize,
    pub schur_dim: usize,
}

/// Everything for `Z_Q` with the bipartition idempotents: relations and
/// blockwise bijectivity of `σ` for `d`, the alternating module maps and `ψ`
/// multiplicative and injective for `S^Z(n, d_psi)`.
pub fn desuper_suite(q: &super::Quiver, d: usize, n: usize, d_psi: usize, exec: Exec) -> Result<DesuperReport> {
    let z = q.zigzag()?;
    let zeta = q.bipartition_signs()?;
    let (e0, e1) = q.adapted_idempotents(&z)?;
    let ds = Desuper::new(&z, &e0, &e1, d)?;
    let relations = ds.check_relations()?;
    let step = if d <= 2 { 1 } else { 997 };
    let pairs = ds.check_homomorphism(step, exec)?;
    let blocks = ds.block_determinants()?.len();
    let idem: Vec<LinComb<usize>> = (0..q.vertices()).map(|i| LinComb::term(z.index_of(&format!("e{}", i + 1)).expect("vertex"), 1)).collect();
    let psi = Psi::new(&z, idem, zeta, n, d_psi)?;
    let module_checks = psi.check_module_maps(exec)?;
    let s = SchurAlgebra::new(&z, n, d_psi, crate::schur::Mode::Formula, exec)?;
    let cache: Vec<Endo> = exec.map_range(s.dim(), |i| psi.psi_basis(&s, i));
    let psi_rank = psi.rank(&cache);
    let chosen: Vec<(usize, usize)> = (0..s.dim()).flat_map(|i| (0..s.dim()).map(move |j| (i, j))).step_by(37).collect();
    exec.try_for_range(chosen.len(), |t| {
        let (i, j) = chosen[t];
        if psi.psi(s.product(i, j), &cache) != compose(&cache[i], &cache[j]) {
            return Err(Error::Verification(format!("ψ is not multiplicative on ({}, {})", s.label(i), s.label(j))));
        }
        Ok(())
    })?;
    for i in (0..s.dim()).step_by(29) {
        psi.check_w_linear(&cache[i])?;
    }
    if psi_rank != s.dim() {
        return Err(Error::Verification(format!("ψ has rank {psi_rank}, expected {}", s.dim())));
    }
    Ok(DesuperReport { relations, pairs, blocks, module_checks, psi_pairs: chosen.len(), psi_rank, schur_dim: s.dim() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::Quiver;

    fn za2(d: usize) -> (SuperAlgebra, Desuper) {
        let q = Quiver::type_a(2).unwrap();
        let z = q.zigzag().unwrap();
        let (e0, e1) = q.adapted_idempotents(&z).unwrap();
        let ds = Desuper::new(&z, &e0, &e1, d).unwrap();
        (z, ds)
    }

    #[test]
    fn first_slot_is_fixed() {
        let (z, ds) = za2(3);
        for x in 0..z.dim() {
            assert_eq!(ds.sigma_slot(x, 0), ds.signed.slot(x, 0));
        }
    }

    #[test]
    fn relations_and_blocks() {
        for d in [2, 3] {
            let (_, ds) = za2(d);
            assert!(ds.check_relations().unwrap() > 0);
            assert_eq!(ds.block_determinants().unwrap().len(), (1..=d).product::<usize>());
        }
        let (_, ds) = za2(2);
        assert_eq!(ds.check_homomorphism(1, Exec::Sequential).unwrap(), 72 * 72);
    }

    #[test]
    fn purely_even_is_identity_on_generators() {
        let o = crate::superalgebra::preset("dual").unwrap();
        let ds = Desuper::new(&o, o.unit(), &LinComb::new(), 3).unwrap();
        for r in 0..2 {
            assert_eq!(ds.sigma_tau(r), ds.signed.group(&Perm::transposition(3, r)));
        }
    }

    #[test]
    fn signed_wreath_differs_without_sigma() {
        // odd x, y in distinct slots anticommute in W^A but commute in W^{|A|}
        let (z, ds) = za2(2);
        let a = z.index_of("a12").unwrap();
        let l = ds.signed.mul(&ds.signed.slot(a, 0), &ds.signed.slot(a, 1));
        let r = ds.signed.mul(&ds.signed.slot(a, 1), &ds.signed.slot(a, 0));
        assert_ne!(l, r);
    }

    #[test]
    fn epsilon_signs() {
        let lam = ColoredWeight { n: 1, colors: 2, entries: vec![0, 3] };
        let m = AlternatingModule::new(&lam, &[0, 1, 0, 1, 0, 1], &[1, -1]);
        for g in Perm::all(3) {
            assert_eq!(m.epsilon(&g), if g.length() % 2 == 0 { 1 } else { -1 });
        }
        let lam = ColoredWeight { n: 3, colors: 2, entries: vec![1, 0, 0, 1, 1, 0] };
        let m = AlternatingModule::new(&lam, &[0, 1, 0, 1, 0, 1], &[1, -1]);
        assert_eq!(m.epsilon(&Perm::identity(3)), 1);
    }

    #[test]
    fn psi_small() {
        let q = Quiver::type_a(2).unwrap();
        let r = desuper_suite(&q, 2, 1, 2, Exec::Sequential).unwrap();
        assert_eq!(r.psi_rank, r.schur_dim);
        assert!(r.module_checks > 0);
    }
}
