//! The schiver double `D_Q(n,d) ⊆ S^Z(n,d)` and its generation by the degree
//! zero part together with the maps `𝚒^𝝀`, in superized and desuperized form.

use super::desuper::{compose, endo_add, flatten, Endo, Psi};
use super::Quiver;
use crate::combinatorics::{binomial, enumerate_colored_weights, enumerate_weights, ColoredWeight, Weight, Word};
use crate::double::{subalgebra_closure, Double};
use crate::invariants::shuffle;
use crate::lattice::{sparse_from_i64, Lattice};
use crate::schur::{tensor_power, Mode, SchurAlgebra};
use crate::{Error, Exec, LinComb, Result};
use std::collections::VecDeque;

pub struct Schiver {
    pub q: Quiver,
    pub n: usize,
    pub d: usize,
    pub s: SchurAlgebra,
    pub psi: Psi,
    pub dbl: Double,
    /// `S^{T_{P_Q}}(n,d)` basis ↦ coordinates in `S^Z(n,d)`
    transport: Vec<LinComb<usize>>,
    cache: Vec<Endo>,
    /// `(j, k)` with `z = e_j z e_k`, per basis element of `Z`
    ends: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, Default)]
pub struct SchiverReport {
    pub schur_dim: usize,
    pub double_dim: usize,
    pub degree_zero: usize,
    pub degree_zero_expected: usize,
    pub i_lambda_count: usize,
    pub claims_checked: usize,
    pub superized_rank: usize,
    pub superized_holds: bool,
    pub desuperized_rank: usize,
    pub desuperized_products: usize,
    pub desuperized_holds: bool,
}

impl Schiver {
    pub fn new(q: &Quiver, n: usize, d: usize, exec: Exec) -> Result<Self> {
        let zeta = q.bipartition_signs()?;
        let p = q.path_algebra()?;
        let (t, z, map) = q.trivext_zigzag_iso()?;
        let letter_map = map.as_signed_bijection().ok_or_else(|| Error::Verification("T_P → Z is not a basis bijection".into()))?;
        let dbl = Double::new(&p, n, d, exec)?;
        if dbl.target().algebra().fingerprint() != t.fingerprint() {
            return Err(Error::Verification("double target is not built on T_{P_Q}".into()));
        }
        let s = SchurAlgebra::new(&z, n, d, Mode::Formula, exec)?;
        let (tsh, zsh) = (dbl.target().shape(), s.shape());
        let transport = exec
            .map_range(dbl.target().dim(), |i| {
                let words = dbl.target().xi_expand(i).map_terms(|w| {
                    let mut sign = 1;
                    let mapped: Word = w
                        .iter()
                        .map(|&l| {
                            let (b, r, c) = tsh.decode(l);
                            let (b2, sg) = letter_map[b];
                            sign *= sg;
                            zsh.encode(b2, r, c)
                        })
                        .collect();
                    Some((mapped, sign))
                });
                s.coordinates(&words)
            })
            .into_iter()
            .collect::<Result<Vec<_>>>()?;
        let idem: Vec<LinComb<usize>> = (0..q.vertices()).map(|i| LinComb::term(z.index_of(&format!("e{}", i + 1)).expect("vertex"), 1)).collect();
        let ends = (0..z.dim())
            .map(|b| {
                let x = LinComb::term(b, 1);
                let j = (0..idem.len()).find(|&j| z.mul(&idem[j], &x) == x).expect("left vertex");
                let k = (0..idem.len()).find(|&k| z.mul(&x, &idem[k]) == x).expect("right vertex");
                (j, k)
            })
            .collect();
        let psi = Psi::new(&z, idem, zeta, n, d)?;
        let cache = exec.map_range(s.dim(), |i| psi.psi_basis(&s, i));
        Ok(Schiver { q: q.clone(), n, d, s, psi, dbl, transport, cache, ends })
    }

    pub fn transport(&self, y: &LinComb<usize>) -> LinComb<usize> {
        let mut out = LinComb::new();
        for (&i, &c) in y.iter() {
            out.add_scaled(&self.transport[i], c);
        }
        out
    }

    /// The transport `S^{T_{P_Q}}(n,d) → S^Z(n,d)` is multiplicative on every
    /// `step`-th basis pair.
    pub fn check_transport(&self, step: usize, exec: Exec) -> Result<usize> {
        let t = self.dbl.target();
        let pairs: Vec<(usize, usize)> = (0..t.dim()).flat_map(|i| (0..t.dim()).map(move |j| (i, j))).step_by(step.max(1)).collect();
        exec.try_for_range(pairs.len(), |k| {
            let (i, j) = pairs[k];
            if self.transport(t.product(i, j)) != self.s.mul(&self.transport[i], &self.transport[j]) {
                return Err(Error::Verification(format!("transport T_P → Z not multiplicative on ({i}, {j})")));
            }
            Ok(())
        })?;
        Ok(pairs.len())
    }

    /// `D_Q(n,d)` inside `S^Z(n,d)`: `ξ_𝐂 ⊗ x^𝐃 = 𝐃! φ(ξ_𝐂 ⊗ x^{(𝐃)})`.
    pub fn double_in_schur(&self) -> Vec<LinComb<usize>> {
        self.dbl.phi().iter().enumerate().map(|(i, &(k, sg))| self.transport[k].scaled(sg * self.dbl.scale(i))).collect()
    }

    /// Basis indices of `S^Z(n,d)^0`.
    pub fn degree_zero(&self) -> Vec<usize> {
        let z = self.s.algebra();
        let sh = self.s.shape();
        (0..self.s.dim())
            .filter(|&i| self.s.basis()[i].0.iter().all(|&l| z.degree(sh.decode(l).0) == Some(0)))
            .collect()
    }

    /// `Σ_{(d_1,…,d_l)} Π dim S(n, d_i)`.
    pub fn degree_zero_expected(&self) -> usize {
        let m = (self.n * self.n) as u64;
        enumerate_weights(self.q.vertices(), self.d)
            .iter()
            .map(|w| w.0.iter().map(|&k| binomial(m + k as u64 - 1, k as u64) as usize).product::<usize>())
            .sum()
    }

    /// `𝚒^𝝀(z)` for a basis element `z = e_j z e_k` and `𝝀 ∈ Λ([1,n−1]×I, d−1)`:
    /// `m_{𝝀̂^k} ↦ m_{𝝀̂^j} z[1]`, other summands to zero.
    pub fn i_lambda(&self, lam: &ColoredWeight, z: usize) -> Result<Endo> {
        let (j, k) = self.ends[z];
        let missing = || Error::Precondition(format!("no colored weight {:?}", lam.entries));
        let src = self.psi.module_index(&lam.hat(k)).ok_or_else(missing)?;
        let dst = self.psi.module_index(&lam.hat(j)).ok_or_else(missing)?;
        let wr = &self.psi.ds.untwisted;
        let zslot = wr.slot(z, 0);
        let mut out: Endo = vec![Vec::new(); self.psi.dim()];
        let (so, dm) = (self.psi.offset(src), &self.psi.modules[dst]);
        for (i, bg) in self.psi.modules[src].basis().iter().enumerate() {
            let img = dm.generator_action(&wr.mul(&zslot, &LinComb::term(bg.clone(), 1)));
            out[so + i] = img.iter().map(|(&r, &c)| (self.psi.offset(dst) + r, c)).collect();
        }
        Ok(out)
    }

    pub fn lambdas(&self) -> Vec<ColoredWeight> {
        if self.n == 1 {
            return vec![ColoredWeight { n: 0, colors: self.q.vertices(), entries: Vec::new() }];
        }
        enumerate_colored_weights(self.n - 1, self.q.vertices(), self.d - 1)
    }

    /// `Λ(n−1, d−1)`; with `n = d = 1` just the empty weight.
    fn short_weights(&self) -> Vec<Weight> {
        if self.n == 1 {
            return vec![Weight(Vec::new())];
        }
        enumerate_weights(self.n - 1, self.d - 1)
    }

    /// `ξ^z_{11} * E_{22}^{⊗λ_1} * ⋯ * E_{nn}^{⊗λ_{n−1}}` in `S^Z(n,d)`.
    pub fn superized_generator(&self, z: usize, lambda: &[usize]) -> Result<LinComb<usize>> {
        let sh = self.s.shape();
        let za = self.s.algebra();
        let odd = self.s.odd_mask();
        let mut acc = LinComb::term(Word::from_slice(&[sh.encode(z, 0, 0)]), 1);
        for (r, &k) in lambda.iter().enumerate() {
            let e: LinComb<u16> = LinComb::from_pairs(za.unit().iter().map(|(&b, &c)| (sh.encode(b, r + 1, r + 1), c)));
            acc = shuffle(&acc, &tensor_power(&e, k), odd);
        }
        self.s.coordinates(&acc)
    }

    /// `ψ(ξ^z_{11} * E^{⊗λ}) = Σ_{π(𝝀) = λ} 𝚒^𝝀(z)` for all basis `z` and `λ`.
    pub fn check_claim(&self) -> Result<usize> {
        let mut count = 0;
        for lambda in self.short_weights() {
            for z in 0..self.s.algebra().dim() {
                let x = self.superized_generator(z, &lambda.0)?;
                let lhs = self.psi.psi(&x, &self.cache);
                let mut rhs: Endo = vec![Vec::new(); self.psi.dim()];
                for lam in self.lambdas().into_iter().filter(|l| l.pi() == lambda) {
                    endo_add(&mut rhs, &self.i_lambda(&lam, z)?, 1);
                }
                if lhs != rhs {
                    return Err(Error::Verification(format!(
                        "ψ(ξ^{}_11 * E^{:?}) differs from the sum of 𝚒^𝝀",
                        self.s.algebra().label(z),
                        lambda.0
                    )));
                }
                count += 1;
            }
        }
        Ok(count)
    }

    /// `𝚒^𝝀` is multiplicative on basis pairs and raises degree by `deg z`.
    pub fn check_i_lambda(&self) -> Result<usize> {
        let za = self.s.algebra();
        let mut count = 0;
        for lam in self.lambdas() {
            let maps: Vec<Endo> = (0..za.dim()).map(|z| self.i_lambda(&lam, z)).collect::<Result<_>>()?;
            for x in 0..za.dim() {
                for y in 0..za.dim() {
                    let mut want: Endo = vec![Vec::new(); self.psi.dim()];
                    for (&k, &c) in za.product(x, y).iter() {
                        endo_add(&mut want, &maps[k], c);
                    }
                    if compose(&maps[x], &maps[y]) != want {
                        return Err(Error::Verification(format!("𝚒^𝝀 not multiplicative on {}, {}", za.label(x), za.label(y))));
                    }
                    count += 1;
                }
                let shift = za.degree(x).unwrap_or(0);
                for (col, entries) in maps[x].iter().enumerate() {
                    let dc = self.global_degree(col);
                    if entries.iter().any(|&(r, _)| self.global_degree(r) != dc + shift) {
                        return Err(Error::Verification(format!("𝚒^𝝀({}) is not homogeneous", za.label(x))));
                    }
                }
            }
        }
        Ok(count)
    }

    fn global_degree(&self, g: usize) -> i32 {
        let (k, i) = self.psi.locate(g);
        self.psi.modules[k].degree(self.s.algebra(), i).unwrap_or(0)
    }

    pub fn psi_of(&self, y: &LinComb<usize>) -> Endo {
        self.psi.psi(y, &self.cache)
    }

    /// Closure of `|S^Z|^0 ∪ ⋃ 𝚒^𝝀(Z)` under products, compared with `ψ(D_Q(n,d))`,
    /// and the superized closure inside `S^Z(n,d)`.
    pub fn generation_check(&self, exec: Exec) -> Result<SchiverReport> {
        if self.n < self.d {
            return Err(Error::Precondition(format!("generation needs n ≥ d, got n = {}, d = {}", self.n, self.d)));
        }
        let zero = self.degree_zero();
        let za = self.s.algebra();
        let double = self.double_in_schur();
        let row = |x: &LinComb<usize>| sparse_from_i64(x.iter().map(|(&k, &c)| (k, c)));
        let target = Lattice::from_rows(self.s.dim(), double.iter().map(row));

        // superized: degree zero basis and ξ^z_{11} * E^{⊗λ}
        let mut gens: Vec<LinComb<usize>> = zero.iter().map(|&i| LinComb::term(i, 1)).collect();
        for lambda in self.short_weights() {
            for z in 0..za.dim() {
                gens.push(self.superized_generator(z, &lambda.0)?);
            }
        }
        let sup = subalgebra_closure(&self.s, &gens)?;

        // desuperized: matrices on M^{|Z|}(n,d)
        let big = self.psi.dim();
        let mut dgens: Vec<Endo> = zero.iter().map(|&i| self.cache[i].clone()).collect();
        let mut i_count = 0;
        for lam in self.lambdas() {
            for z in 0..za.dim() {
                dgens.push(self.i_lambda(&lam, z)?);
                i_count += 1;
            }
        }
        let flat_row = |m: &Endo| sparse_from_i64(flatten(m));
        let mut lattice = Lattice::new(big * big);
        let mut queue: VecDeque<Endo> = VecDeque::new();
        for g in &dgens {
            if lattice.insert(flat_row(g)) {
                queue.push_back(g.clone());
            }
        }
        let mut products = 0;
        while let Some(w) = queue.pop_front() {
            let prods: Vec<Endo> = exec.map_range(dgens.len(), |g| compose(&dgens[g], &w));
            products += prods.len();
            for p in prods {
                if p.iter().all(|c| c.is_empty()) {
                    continue;
                }
                if lattice.insert(flat_row(&p)) {
                    queue.push_back(p);
                }
            }
        }
        let dtarget = Lattice::from_rows(big * big, exec.map_range(double.len(), |i| flat_row(&self.psi_of(&double[i]))));
        Ok(SchiverReport {
            schur_dim: self.s.dim(),
            double_dim: double.len(),
            degree_zero: zero.len(),
            degree_zero_expected: self.degree_zero_expected(),
            i_lambda_count: i_count,
            claims_checked: self.check_claim()?,
            superized_rank: sup.lattice.rank(),
            superized_holds: sup.lattice == target,
            desuperized_rank: lattice.rank(),
            desuperized_products: products,
            desuperized_holds: lattice == dtarget,
        })
    }
}

/// `D_Q(n,d)` and `D_{Q^op}(n,d)` give the same lattice in `S^Z(n,d)`.
pub fn orientation_check(q: &Quiver, n: usize, d: usize, exec: Exec) -> Result<bool> {
    let lattice_of = |q: &Quiver| -> Result<(String, Lattice)> {
        let p = q.path_algebra()?;
        let (_, z, map) = q.trivext_zigzag_iso()?;
        let letter_map = map.as_signed_bijection().ok_or_else(|| Error::Verification("not a basis bijection".into()))?;
        let dbl = Double::new(&p, n, d, exec)?;
        let s = SchurAlgebra::new(&z, n, d, Mode::Formula, exec)?;
        let (tsh, zsh) = (dbl.target().shape(), s.shape());
        let mut rows = Vec::new();
        for (i, &(k, sg)) in dbl.phi().iter().enumerate() {
            let words = dbl.target().xi_expand(k).map_terms(|w| {
                let mut sign = sg * dbl.scale(i);
                let mapped: Word = w
                    .iter()
                    .map(|&l| {
                        let (b, r, c) = tsh.decode(l);
                        let (b2, s2) = letter_map[b];
                        sign *= s2;
                        zsh.encode(b2, r, c)
                    })
                    .collect();
                Some((mapped, sign))
            });
            let y = s.coordinates(&words)?;
            rows.push(sparse_from_i64(y.iter().map(|(&i, &c)| (i, c))));
        }
        Ok((z.fingerprint().to_string(), Lattice::from_rows(s.dim(), rows)))
    };
    let (fa, la) = lattice_of(q)?;
    let (fb, lb) = lattice_of(&q.reversed())?;
    if fa != fb {
        return Err(Error::Verification("the two orientations give different zigzag algebras".into()));
    }
    Ok(la == lb)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a2_degree_one() {
        let q = Quiver::type_a(2).unwrap();
        let sc = Schiver::new(&q, 1, 1, Exec::Sequential).unwrap();
        assert_eq!(sc.check_transport(1, Exec::Sequential).unwrap(), 36);
        let r = sc.generation_check(Exec::Sequential).unwrap();
        assert!(r.superized_holds && r.desuperized_holds, "{r:?}");
        assert_eq!(r.degree_zero, r.degree_zero_expected);
    }

    #[test]
    fn a2_n2_d1() {
        let q = Quiver::type_a(2).unwrap();
        let sc = Schiver::new(&q, 2, 1, Exec::Sequential).unwrap();
        sc.check_i_lambda().unwrap();
        let r = sc.generation_check(Exec::Sequential).unwrap();
        assert!(r.superized_holds && r.desuperized_holds, "{r:?}");
        assert_eq!(r.degree_zero, 8);
    }

    #[test]
    fn a2_n2_d2() {
        let q = Quiver::type_a(2).unwrap();
        let sc = Schiver::new(&q, 2, 2, Exec::Parallel).unwrap();
        let r = sc.generation_check(Exec::Parallel).unwrap();
        assert!(r.superized_holds && r.desuperized_holds, "{r:?}");
        assert_eq!(r.degree_zero, r.degree_zero_expected);
        assert_eq!(r.schur_dim, 292);
        // D_Q is a proper full-rank sublattice, so lattice equality is not vacuous
        let rows = sc.double_in_schur().iter().map(|x| sparse_from_i64(x.iter().map(|(&k, &c)| (k, c)))).collect::<Vec<_>>();
        let d = Lattice::from_rows(sc.s.dim(), rows);
        assert_eq!(d.rank(), sc.s.dim());
        assert!(d.saturation_index() > crate::Int::from(1));
    }

    #[test]
    fn orientation_independent() {
        assert!(orientation_check(&Quiver::type_a(2).unwrap(), 2, 2, Exec::Parallel).unwrap());
    }

    #[test]
    fn needs_bipartite() {
        let tri = Quiver::new(3, vec![(0, 1), (1, 2), (2, 0)]).unwrap();
        assert!(Schiver::new(&tri, 1, 1, Exec::Sequential).is_err());
    }
}
