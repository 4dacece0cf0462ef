//! Turner doubles `D^d X` and `'D^d X` for `X = M_n(A)`.
//!
//! A basis label is a pair `(𝐂, 𝐃)` with `𝐂 ∈ M^B(n,e)`, `𝐃 ∈ M^B(n,f)`,
//! `e + f = d`, standing for `ξ_𝐂 ⊗ x^𝐃` (plain) or `ξ_𝐂 ⊗ x^{(𝐃)}`
//! (divided). Products are computed two ways: from the Sweedler formula
//! with the structure constants of `S^A(n,e)`, and by transport along
//! `φ: 'D^d X → Inv^d T_X = S^{T_A}(n,d)`.

use crate::combinatorics::{enumerate_weights, Monomial, Weight, Word};
use crate::invariants::{odd_count, orbit_sum, shuffle};
use crate::lattice::{determinant, rank_mod_p, sparse_from_i64, Lattice, SparseRow};
use crate::schur::{coproduct_xi, dual_products, label_of, tensor_power, Mode, SchurAlgebra};
use crate::superalgebra::{trivext_index, trivial_extension, SuperAlgebra};
use crate::{Error, Exec, Int, LinComb, Result};
use num_traits::{One, Signed, Zero};
use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    Plain,
    Divided,
}

impl FromStr for Variant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "plain" => Ok(Variant::Plain),
            "divided" => Ok(Variant::Divided),
            _ => Err(Error::Precondition(format!("unknown variant {s}; use plain or divided"))),
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Plain => "plain",
            Variant::Divided => "divided",
        })
    }
}

/// Which computation produces a product.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Route {
    /// Sweedler formula with Schur structure constants.
    Sweedler,
    /// Transport along `φ` into `S^{T_A}(n,d)`.
    Transport,
}

/// A label `(𝐂, 𝐃)` with `|𝐂| = e`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DoubleLabel {
    pub c: Monomial,
    pub d: Monomial,
}

/// `(𝐗, 𝐘) ↦ ±(𝐗', 𝐘')` restricted to a single label and a variant.
pub type DoubleElement = LinComb<usize>;

/// For each `(i, k)`, the `(j, f)` with `f = f^k_{ij} ≠ 0`, and symmetrically.
struct Reverse {
    by_left: HashMap<(usize, usize), Vec<(usize, i64)>>,
    by_right: HashMap<(usize, usize), Vec<(usize, i64)>>,
}

impl Reverse {
    fn new(s: &SchurAlgebra) -> Self {
        let mut by_left: HashMap<(usize, usize), Vec<(usize, i64)>> = HashMap::new();
        let mut by_right: HashMap<(usize, usize), Vec<(usize, i64)>> = HashMap::new();
        for i in 0..s.dim() {
            for j in 0..s.dim() {
                for (&k, &f) in s.product(i, j).iter() {
                    by_left.entry((i, k)).or_default().push((j, f));
                    by_right.entry((j, k)).or_default().push((i, f));
                }
            }
        }
        Reverse { by_left, by_right }
    }
}

pub struct Double {
    a: SuperAlgebra,
    n: usize,
    d: usize,
    inv: Vec<SchurAlgebra>,
    reverse: Vec<Reverse>,
    labels: Vec<DoubleLabel>,
    index: HashMap<DoubleLabel, usize>,
    /// `S^{T_A}(n,d)`
    target: SchurAlgebra,
    phi: Vec<(usize, i64)>,
    phi_inv: Vec<(usize, i64)>,
}

impl fmt::Debug for Double {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "D^{}({},{}) dim {}", self.a.name(), self.n, self.d, self.dim())
    }
}

impl Double {
    /// Builds the double together with `φ`; fails if `φ` is not a signed
    /// bijection of bases.
    pub fn new(a: &SuperAlgebra, n: usize, d: usize, exec: Exec) -> Result<Self> {
        let inv: Vec<SchurAlgebra> =
            (0..=d).map(|e| SchurAlgebra::new(a, n, e, Mode::Formula, exec)).collect::<Result<_>>()?;
        let reverse = inv.iter().map(Reverse::new).collect();
        let mut labels = Vec::new();
        for f in 0..=d {
            for c in inv[d - f].basis() {
                for dd in inv[f].basis() {
                    labels.push(DoubleLabel { c: c.clone(), d: dd.clone() });
                }
            }
        }
        let index = labels.iter().cloned().enumerate().map(|(i, l)| (l, i)).collect();
        let t = trivial_extension(a)?;
        let target = SchurAlgebra::new(&t, n, d, Mode::Formula, exec)?;
        let mut dbl = Double {
            a: a.clone(),
            n,
            d,
            inv,
            reverse,
            labels,
            index,
            target,
            phi: Vec::new(),
            phi_inv: Vec::new(),
        };
        let phi: Vec<Result<(usize, i64)>> = exec.map_range(dbl.dim(), |i| dbl.phi_of(i));
        dbl.phi = phi.into_iter().collect::<Result<_>>()?;
        let mut inv_map = vec![(usize::MAX, 0); dbl.target.dim()];
        for (i, &(t, s)) in dbl.phi.iter().enumerate() {
            if inv_map[t].0 != usize::MAX {
                return Err(Error::Verification(format!("φ is not injective at {}", dbl.label_name(i))));
            }
            inv_map[t] = (i, s);
        }
        if dbl.dim() != dbl.target.dim() {
            return Err(Error::Verification(format!("φ: {} labels onto {} basis elements", dbl.dim(), dbl.target.dim())));
        }
        dbl.phi_inv = inv_map;
        Ok(dbl)
    }

    pub fn algebra(&self) -> &SuperAlgebra {
        &self.a
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[DoubleLabel] {
        &self.labels
    }

    pub fn index_of(&self, l: &DoubleLabel) -> Option<usize> {
        self.index.get(l).copied()
    }

    /// `S^A(n,e)`.
    pub fn inv(&self, e: usize) -> &SchurAlgebra {
        &self.inv[e]
    }

    /// `S^{T_A}(n,d)`, the codomain of `φ`.
    pub fn target(&self) -> &SchurAlgebra {
        &self.target
    }

    pub fn odd_mask(&self) -> &[bool] {
        self.inv[0].odd_mask()
    }

    fn bar(&self, m: &Monomial) -> u8 {
        (odd_count(m.word(), self.odd_mask()) % 2) as u8
    }

    pub fn parity(&self, i: usize) -> u8 {
        let l = &self.labels[i];
        (self.bar(&l.c) + self.bar(&l.d)) % 2
    }

    pub fn label_name(&self, i: usize) -> String {
        let l = &self.labels[i];
        let name = |m: u16| self.inv[0].letter_name(m);
        format!("ξ{{{}}}⊗x{{{}}}", label_of(&l.c, name), label_of(&l.d, name))
    }

    pub(crate) fn idx(&self, c: &Monomial, d: &Monomial) -> usize {
        self.index[&DoubleLabel { c: c.clone(), d: d.clone() }]
    }

    pub(crate) fn inv_idx(&self, m: &Monomial) -> usize {
        self.inv[m.degree()].index_of(m).expect("label of a Schur basis")
    }

    /// Letters of `M_n(A)` and of `M_n(A)*` as letters of `M_n(T_A)`:
    /// `ξ^b_{r,s} ↦ ξ^b_{r,s}` and `x^b_{r,s} ↦ ξ^{b*}_{s,r}`.
    fn to_target(&self, l: u16, dual: bool) -> u16 {
        let (b, r, s) = self.inv[0].shape().decode(l);
        let sh = self.target.shape();
        if dual {
            sh.encode(trivext_index(&self.a, b, true), s, r)
        } else {
            sh.encode(trivext_index(&self.a, b, false), r, s)
        }
    }

    fn map_tensor(&self, t: &LinComb<Word>, dual: bool) -> LinComb<Word> {
        t.map_terms(|w| Some((w.iter().map(|&l| self.to_target(l, dual)).collect(), 1)))
    }

    /// `φ(ξ_𝐂 ⊗ x^{(𝐃)}) = ξ_𝐂 * κ(x^{(𝐃)})`, with `κ(x^{(𝐃)}) = (−1)^{k(k−1)/2} ξ*_𝐃`
    /// where `k` is the number of odd letters of `𝐃`.
    fn phi_of(&self, i: usize) -> Result<(usize, i64)> {
        let l = &self.labels[i];
        let odd = self.odd_mask();
        let xc = self.map_tensor(&orbit_sum(&l.c, odd)?, false);
        let xd = self.map_tensor(&orbit_sum(&l.d, odd)?, true);
        let k = odd_count(l.d.word(), odd);
        let sk = if (k * (k.saturating_sub(1)) / 2) % 2 == 0 { 1 } else { -1 };
        let prod = if l.d.degree() == 0 {
            xc
        } else if l.c.degree() == 0 {
            xd
        } else {
            shuffle(&xc, &xd, self.target.odd_mask())
        };
        let coords = self.target.coordinates(&prod)?;
        let first = coords.iter().next().map(|(&t, &s)| (t, s));
        match first {
            Some((t, s)) if coords.len() == 1 && s.abs() == 1 => Ok((t, s * sk)),
            _ => Err(Error::Verification(format!("φ({}) is not a signed basis element", self.label_name(i)))),
        }
    }

    /// `φ` as a signed permutation: label `i ↦ (basis index, sign)`.
    pub fn phi(&self) -> &[(usize, i64)] {
        &self.phi
    }

    pub fn phi_apply(&self, x: &DoubleElement) -> LinComb<usize> {
        x.map_terms(|&i| Some(self.phi[i]))
    }

    pub fn phi_inverse(&self, y: &LinComb<usize>) -> DoubleElement {
        y.map_terms(|&t| Some(self.phi_inv[t]))
    }

    /// `𝐃!` for the label's dual part: `ξ_𝐂 ⊗ x^𝐃 = 𝐃! ξ_𝐂 ⊗ x^{(𝐃)}`.
    pub fn scale(&self, i: usize) -> i64 {
        self.labels[i].d.factorial() as i64
    }

    /// Plain coordinates to divided ones.
    pub fn plain_to_divided(&self, x: &DoubleElement) -> DoubleElement {
        x.map_terms(|&i| Some((i, self.scale(i))))
    }

    /// Divided coordinates to plain ones, when integral.
    pub fn divided_to_plain(&self, x: &DoubleElement) -> Result<DoubleElement> {
        let mut out = LinComb::new();
        for (&i, &c) in x.iter() {
            let s = self.scale(i);
            if c % s != 0 {
                return Err(Error::NonIntegral(format!("{c}/{s} on {}", self.label_name(i))));
            }
            out.add_term(i, c / s);
        }
        Ok(out)
    }

    /// Product of basis elements `i` and `j`.
    pub fn product(&self, i: usize, j: usize, variant: Variant, route: Route) -> Result<DoubleElement> {
        match (route, variant) {
            (Route::Sweedler, Variant::Plain) => Ok(self.sweedler(i, j)),
            (Route::Sweedler, Variant::Divided) => {
                let p = self.sweedler(i, j);
                let den = self.scale(i) * self.scale(j);
                let mut out = LinComb::new();
                for (&k, &c) in p.iter() {
                    let num = c * self.scale(k);
                    if num % den != 0 {
                        return Err(Error::NonIntegral(format!(
                            "{num}/{den} in {}·{}",
                            self.label_name(i),
                            self.label_name(j)
                        )));
                    }
                    out.add_term(k, num / den);
                }
                Ok(out)
            }
            (Route::Transport, Variant::Divided) => Ok(self.transport(i, j)),
            (Route::Transport, Variant::Plain) => {
                let p = self.transport(i, j).scaled(self.scale(i) * self.scale(j));
                self.divided_to_plain(&p)
            }
        }
    }

    pub fn mul(&self, x: &DoubleElement, y: &DoubleElement, variant: Variant) -> Result<DoubleElement> {
        let mut out = LinComb::new();
        for (&i, &a) in x.iter() {
            for (&j, &b) in y.iter() {
                out.add_scaled(&self.product(i, j, variant, Route::Transport)?, a * b);
            }
        }
        Ok(out)
    }

    fn transport(&self, i: usize, j: usize) -> DoubleElement {
        let (ti, si) = self.phi[i];
        let (tj, sj) = self.phi[j];
        self.phi_inverse(self.target.product(ti, tj)).scaled(si * sj)
    }

    /// `(ξ⊗x)(η⊗y) = Σ (−1)^{ξ̄₁(ξ̄₂+η̄+x̄) + η̄₁x̄} ξ₂η₁ ⊗ (x·η₂)(ξ₁·y)`
    /// in the plain basis.
    fn sweedler(&self, i: usize, j: usize) -> DoubleElement {
        let (p, q) = (&self.labels[i], &self.labels[j]);
        let odd = self.odd_mask();
        let (fd, ff) = (p.d.degree(), q.d.degree());
        let mut out = LinComb::new();
        if p.c.degree() < ff || q.c.degree() < fd {
            return out;
        }
        let (dk, fk) = (self.inv_idx(&p.d), self.inv_idx(&q.d));
        let xb = self.bar(&p.d) as usize;
        let eb = self.bar(&q.c) as usize;
        for (c1, c2, ec) in coproduct_xi(&p.c, odd) {
            if c1.degree() != ff || ec == 0 {
                continue;
            }
            // ξ₁·y = Σ f^𝐅_{𝐅'𝐂₁} x^{𝐅'}
            let Some(right) = self.reverse[ff].by_right.get(&(self.inv_idx(&c1), fk)) else {
                continue;
            };
            let (c1b, c2b) = (self.bar(&c1) as usize, self.bar(&c2) as usize);
            for (e1, e2, ee) in coproduct_xi(&q.c, odd) {
                if e2.degree() != fd || ee == 0 {
                    continue;
                }
                // x·η₂ = Σ f^𝐃_{𝐄₂𝐃'} x^{𝐃'}
                let Some(left) = self.reverse[fd].by_left.get(&(self.inv_idx(&e2), dk)) else {
                    continue;
                };
                let e1b = self.bar(&e1) as usize;
                let s = c1b * (c2b + eb + xb) + e1b * xb;
                let sign = if s % 2 == 0 { 1 } else { -1 };
                let g = self.inv[c2.degree()].product(self.inv_idx(&c2), self.inv_idx(&e1));
                if g.is_zero() {
                    continue;
                }
                let base = sign * ec * ee;
                for &(dp, f1) in left {
                    let dpm = &self.inv[fd].basis()[dp];
                    for &(fp, f2) in right {
                        let fpm = &self.inv[ff].basis()[fp];
                        let (h, plain, _) = dual_products(dpm, fpm, odd);
                        if plain == 0 {
                            continue;
                        }
                        let k = base * f1 * f2 * plain;
                        for (&gi, &gc) in g.iter() {
                            let gm = &self.inv[c2.degree()].basis()[gi];
                            out.add_term(self.idx(gm, &h), k * gc);
                        }
                    }
                }
            }
        }
        out
    }

    /// `x^𝐃·ξ_𝐄 = Σ f^𝐃_{𝐄𝐃'} x^{𝐃'}` as `(𝐃', f)` pairs.
    pub(crate) fn dual_left(&self, e: &Monomial, d: &Monomial) -> &[(usize, i64)] {
        self.reverse[d.degree()].by_left.get(&(self.inv_idx(e), self.inv_idx(d))).map_or(&[], |v| v.as_slice())
    }

    /// `ξ_𝐂·x^𝐅 = Σ f^𝐅_{𝐅'𝐂} x^{𝐅'}` as `(𝐅', f)` pairs.
    pub(crate) fn dual_right(&self, c: &Monomial, f: &Monomial) -> &[(usize, i64)] {
        self.reverse[f.degree()].by_right.get(&(self.inv_idx(c), self.inv_idx(f))).map_or(&[], |v| v.as_slice())
    }

    /// Checks `φ(ab) = φ(a)φ(b)` (with the Sweedler product on the left)
    /// over the given pairs, in the divided variant.
    pub fn check_multiplicative(&self, pairs: &[(usize, usize)], exec: Exec) -> Result<()> {
        exec.try_for_range(pairs.len(), |k| {
            let (i, j) = pairs[k];
            let s = self.product(i, j, Variant::Divided, Route::Sweedler)?;
            let t = self.transport(i, j);
            if s != t {
                return Err(Error::Verification(format!(
                    "φ is not multiplicative on ({}, {}): {:?} vs {:?}",
                    self.label_name(i),
                    self.label_name(j),
                    s,
                    t
                )));
            }
            Ok(())
        })
    }

    pub fn all_pairs(&self) -> Vec<(usize, usize)> {
        (0..self.dim()).flat_map(|i| (0..self.dim()).map(move |j| (i, j))).collect()
    }

    /// The lattice `φ(D^d X) ⊂ S^{T_A}(n,d)` spanned by `𝐃! φ(ξ_𝐂 ⊗ x^{(𝐃)})`.
    pub fn plain_lattice(&self) -> Lattice {
        Lattice::from_rows(
            self.target.dim(),
            (0..self.dim()).map(|i| sparse_from_i64([(self.phi[i].0, self.phi[i].1 * self.scale(i))])),
        )
    }

    /// Turner degree `|𝐂|_1 + 2|𝐃|_0 + |𝐃|_1`; requires `A_1 A_1 = 0`.
    pub fn turner_degree(&self, i: usize) -> Result<usize> {
        if !self.a.odd_square_zero() {
            return Err(Error::Precondition(format!("{}: odd part does not square to zero", self.a.name())));
        }
        let odd = self.odd_mask();
        let l = &self.labels[i];
        let c1 = odd_count(l.c.word(), odd);
        let d1 = odd_count(l.d.word(), odd);
        Ok(c1 + 2 * (l.d.degree() - d1) + d1)
    }

    /// `F(ξ_𝐂 ⊗ x^𝐃)`: zero unless `𝐂 = ∅`, then the coefficient of `ξ_𝐃` in `1^{⊗d}`.
    pub fn functional(&self) -> Result<Vec<i64>> {
        let one = self.inv[self.d].unit()?;
        Ok(self
            .labels
            .iter()
            .map(|l| if l.c.degree() == 0 { one.get(&self.inv_idx(&l.d)) } else { 0 })
            .collect())
    }

    /// `(ξ_𝐂⊗x^𝐃, ξ_𝐄⊗x^𝐅) = ⟨ξ_𝐂, x^𝐅⟩⟨x^𝐃, ξ_𝐄⟩ = δ_{𝐂𝐅} δ_{𝐃𝐄}`.
    pub fn pairing(&self, i: usize, j: usize) -> i64 {
        let (p, q) = (&self.labels[i], &self.labels[j]);
        (p.c == q.d && p.d == q.c) as i64
    }

    /// Gram matrix `F(tu)` over the plain basis.
    pub fn gram(&self, exec: Exec) -> Result<Vec<Vec<i64>>> {
        let f = self.functional()?;
        let rows: Vec<Result<Vec<i64>>> = exec.map_range(self.dim(), |i| {
            (0..self.dim())
                .map(|j| {
                    let p = self.product(i, j, Variant::Plain, Route::Transport)?;
                    Ok(p.iter().map(|(&k, &c)| c * f[k]).sum())
                })
                .collect()
        });
        rows.into_iter().collect()
    }

    /// Compares `F(tu)` with the pairing on every basis pair.
    pub fn symmetric_form(&self, exec: Exec) -> Result<SymmetricForm> {
        let gram = self.gram(exec)?;
        for (i, row) in gram.iter().enumerate() {
            for (j, &g) in row.iter().enumerate() {
                if g != self.pairing(i, j) || g != gram[j][i] {
                    return Err(Error::Verification(format!(
                        "form on ({}, {}) is {g}, expected {}",
                        self.label_name(i),
                        self.label_name(j),
                        self.pairing(i, j)
                    )));
                }
            }
        }
        Ok(SymmetricForm { functional: self.functional()?, gram })
    }

    /// Generators of `D^d X` inside `S^{T_A}(n,d)`.
    pub fn generators(&self, set: GeneratorSet) -> Result<Vec<LinComb<usize>>> {
        let s = &self.target;
        let d = self.d;
        if d == 0 {
            return s.unit().map(|u| vec![u]);
        }
        let sh = s.shape();
        let t_odd = |y: usize| s.algebra().is_odd(y);
        let even_a: Vec<usize> = (0..self.a.dim()).filter(|&b| !self.a.is_odd(b)).collect();
        let mut out = Vec::new();
        // S^{A_0}(n,d) = Inv^d M_n(A_0)
        let even_letters: Vec<u16> = (0..sh.len() as u16)
            .filter(|&l| {
                let (y, _, _) = sh.decode(l);
                let (b, dual) = crate::superalgebra::trivext_split(&self.a, y);
                !dual && even_a.contains(&b)
            })
            .collect();
        for (i, m) in s.basis().iter().enumerate() {
            if m.word().iter().all(|l| even_letters.contains(l)) {
                out.push(LinComb::term(i, 1));
            }
        }
        let mut one = LinComb::new();
        for r in 0..self.n {
            for (&b, &u) in self.a.unit().iter() {
                one.add_term(sh.encode(trivext_index(&self.a, b, false), r, r), u);
            }
        }
        let odd = s.odd_mask();
        let star = |x: &LinComb<Word>, y: &LinComb<Word>| -> LinComb<Word> {
            if x.keys().next().is_some_and(|w| w.is_empty()) {
                y.scaled(x.get(&Word::new()))
            } else if y.keys().next().is_some_and(|w| w.is_empty()) {
                x.scaled(y.get(&Word::new()))
            } else {
                shuffle(x, y, odd)
            }
        };
        let letter = |l: u16| LinComb::term(Word::from_slice(&[l]), 1);
        match set {
            GeneratorSet::Basic => {
                // 1^{⊗(d−1)} * t for t in a basis of Y = M_n(A_1) ⊕ M_n(A)*
                let rest = tensor_power(&one, d - 1);
                for l in 0..sh.len() as u16 {
                    let (y, _, _) = sh.decode(l);
                    if t_odd(y) || trivext_split_dual(&self.a, y) {
                        out.push(s.coordinates(&star(&letter(l), &rest))?);
                    }
                }
            }
            GeneratorSet::Corner => {
                let rest = tensor_power(&one, d - 1);
                for y in 0..s.algebra().dim() {
                    out.push(s.coordinates(&star(&letter(sh.encode(y, 0, 0)), &rest))?);
                }
            }
            GeneratorSet::Truncated => {
                if self.n < d {
                    return Err(Error::Precondition(format!("n = {} < d = {d}", self.n)));
                }
                for lam in enumerate_weights(self.n - 1, d - 1) {
                    let mut rest = LinComb::term(Word::new(), 1);
                    for (r, &k) in lam.0.iter().enumerate() {
                        if k > 0 {
                            let e = diagonal(&self.a, sh, r + 1);
                            rest = star(&rest, &tensor_power(&e, k));
                        }
                    }
                    for y in 0..s.algebra().dim() {
                        out.push(s.coordinates(&star(&letter(sh.encode(y, 0, 0)), &rest))?);
                    }
                }
            }
        }
        Ok(out)
    }

    /// ℤ-span of the subalgebra generated by `gens`, compared with `φ(D^d X)`.
    pub fn generation_check(&self, set: GeneratorSet) -> Result<GenerationReport> {
        let gens = self.generators(set)?;
        let closure = subalgebra_closure(&self.target, &gens)?;
        let target = self.plain_lattice();
        let missing = (0..self.dim())
            .find(|&i| !closure.lattice.contains(&sparse_from_i64([(self.phi[i].0, self.phi[i].1 * self.scale(i))])));
        let inside = target.contains_lattice(&closure.lattice);
        Ok(GenerationReport {
            generators: gens.len(),
            rank: closure.lattice.rank(),
            target_rank: target.rank(),
            products: closure.products,
            holds: missing.is_none() && inside,
            missing: missing.map(|i| self.label_name(i)),
            certificate: closure.certificate,
        })
    }
}

fn trivext_split_dual(a: &SuperAlgebra, y: usize) -> bool {
    crate::superalgebra::trivext_split(a, y).1
}

/// `E_{r,r} = Σ_b u_b ξ^b_{r,r}` in `M_n(T_A)` letters.
fn diagonal(a: &SuperAlgebra, sh: crate::combinatorics::MatrixShape, r: usize) -> LinComb<u16> {
    a.unit().map_terms(|&b| Some((sh.encode(trivext_index(a, b, false), r, r), 1)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GeneratorSet {
    /// `Inv^d X_0` and `1^{⊗(d−1)} * Y`.
    Basic,
    /// `S^{A_0}(n,d)` and `ξ^y_{11} * 1^{⊗(d−1)}`, `y` in a basis of `T_A`.
    Corner,
    /// `S^{A_0}(n,d)` and `ξ^y_{11} * E_{22}^{⊗λ_2} * ⋯ * E_{nn}^{⊗λ_n}`; needs `n ≥ d`.
    Truncated,
}

#[derive(Clone, Debug)]
pub struct SymmetricForm {
    pub functional: Vec<i64>,
    pub gram: Vec<Vec<i64>>,
}

impl SymmetricForm {
    pub fn determinant(&self) -> Int {
        determinant(self.gram.iter().map(|r| r.iter().map(|&x| Int::from(x)).collect()).collect())
    }

    pub fn is_unimodular(&self) -> bool {
        self.determinant().abs().is_one()
    }

    pub fn nondegenerate_mod(&self, p: i64) -> bool {
        let rows: Vec<Vec<(usize, i64)>> =
            self.gram.iter().map(|r| r.iter().enumerate().filter(|x| *x.1 != 0).map(|(j, &x)| (j, x)).collect()).collect();
        rank_mod_p(&rows, p) == self.gram.len()
    }
}

#[derive(Clone, Debug)]
pub struct GenerationReport {
    pub generators: usize,
    pub rank: usize,
    pub target_rank: usize,
    pub products: usize,
    pub holds: bool,
    /// A basis vector of the target lattice outside the closure.
    pub missing: Option<String>,
    /// Generator words whose products enlarged the closure, in order.
    pub certificate: Vec<Vec<usize>>,
}

pub struct Closure {
    pub lattice: Lattice,
    pub products: usize,
    pub certificate: Vec<Vec<usize>>,
}

/// ℤ-span of all products of `gens` (words of length ≥ 1).
pub fn subalgebra_closure(s: &SchurAlgebra, gens: &[LinComb<usize>]) -> Result<Closure> {
    let mut lattice = Lattice::new(s.dim());
    let mut queue: VecDeque<(LinComb<usize>, Vec<usize>)> = VecDeque::new();
    let mut certificate = Vec::new();
    let mut products = 0;
    let to_row = |x: &LinComb<usize>| -> SparseRow { sparse_from_i64(x.iter().map(|(&k, &c)| (k, c))) };
    for (g, x) in gens.iter().enumerate() {
        if lattice.insert(to_row(x)) {
            queue.push_back((x.clone(), vec![g]));
            certificate.push(vec![g]);
        }
    }
    while let Some((w, word)) = queue.pop_front() {
        for (g, x) in gens.iter().enumerate() {
            let p = s.mul(&w, x);
            products += 1;
            if p.is_zero() {
                continue;
            }
            if lattice.insert(to_row(&p)) {
                let mut wd = word.clone();
                wd.push(g);
                certificate.push(wd.clone());
                queue.push_back((p, wd));
            }
        }
    }
    Ok(Closure { lattice, products, certificate })
}

/// `'D^𝒪(1,2)` contrast: every functional `F` on the divided double gives a
/// degenerate form `F(tu)` over `𝔽_p`. Returns the Gram determinants (mod `p`)
/// of all `p^{dim}` functionals.
pub fn divided_form_witness(dbl: &Double, p: i64) -> Result<Vec<i64>> {
    let dim = dbl.dim();
    let mut table = vec![vec![LinComb::new(); dim]; dim];
    for (i, row) in table.iter_mut().enumerate() {
        for (j, e) in row.iter_mut().enumerate() {
            *e = dbl.product(i, j, Variant::Divided, Route::Transport)?;
        }
    }
    let total = (p as u64).pow(dim as u32);
    let mut dets = Vec::with_capacity(total as usize);
    for code in 0..total {
        let mut f = vec![0i64; dim];
        let mut c = code;
        for x in f.iter_mut() {
            *x = (c % p as u64) as i64;
            c /= p as u64;
        }
        let gram: Vec<Vec<Int>> = table
            .iter()
            .map(|row| row.iter().map(|e| Int::from(e.iter().map(|(&k, &v)| v * f[k]).sum::<i64>())).collect())
            .collect();
        let det = determinant(gram) % Int::from(p);
        let det: i64 = if det < Int::zero() { det + Int::from(p) } else { det }.try_into().expect("small");
        dets.push(det);
    }
    Ok(dets)
}

/// `ξ_λ` and `E_{rr}` helpers are in [`SchurAlgebra`]; this is the weight list
/// used by generator sets.
pub fn weights(n: usize, d: usize) -> Vec<Weight> {
    enumerate_weights(n, d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::superalgebra::preset;

    fn dbl(name: &str, n: usize, d: usize) -> Double {
        Double::new(&preset(name).unwrap(), n, d, Exec::Sequential).unwrap()
    }

    #[test]
    fn dimensions() {
        assert_eq!(dbl("trivial", 1, 3).dim(), 4);
        assert_eq!(dbl("pq-a2", 1, 2).dim(), 19);
        assert_eq!(dbl("pq-a2", 2, 2).dim(), 292);
    }

    #[test]
    fn routes_agree() {
        for (name, n, d) in [("trivial", 1, 3), ("dual", 1, 2), ("pq-a2", 1, 2), ("exterior", 1, 2), ("trivial", 2, 2)] {
            let x = dbl(name, n, d);
            x.check_multiplicative(&x.all_pairs(), Exec::Sequential).unwrap();
            for (i, j) in x.all_pairs() {
                assert_eq!(
                    x.product(i, j, Variant::Plain, Route::Sweedler).unwrap(),
                    x.product(i, j, Variant::Plain, Route::Transport).unwrap()
                );
            }
        }
    }

    #[test]
    fn degree_one_is_trivial_extension() {
        let a = preset("pq-a2").unwrap();
        let x = Double::new(&a, 1, 1, Exec::Sequential).unwrap();
        let t = trivial_extension(&a).unwrap();
        assert_eq!(x.dim(), t.dim());
        for i in 0..x.dim() {
            for j in 0..x.dim() {
                let (ti, si) = x.phi()[i];
                let (tj, sj) = x.phi()[j];
                let p = x.phi_apply(&x.product(i, j, Variant::Plain, Route::Sweedler).unwrap());
                let q = t.product(ti, tj).scaled(si * sj);
                assert_eq!(p, q);
            }
        }
    }

    #[test]
    fn truncated_polynomials() {
        // D^d 𝒪: z^e z^f = z^{e+f}
        let d = 4;
        let x = dbl("trivial", 1, d);
        let z = |e: usize| x.idx(&Monomial::from_letters(&vec![0; d - e]), &Monomial::from_letters(&vec![0; e]));
        for e in 0..=d {
            for f in 0..=d {
                let p = x.product(z(e), z(f), Variant::Plain, Route::Sweedler).unwrap();
                let want = if e + f <= d { LinComb::term(z(e + f), 1) } else { LinComb::new() };
                assert_eq!(p, want);
                let q = x.product(z(e), z(f), Variant::Divided, Route::Transport).unwrap();
                let c = crate::combinatorics::binomial((e + f) as u64, e as u64) as i64;
                let want = if e + f <= d { LinComb::term(z(e + f), c) } else { LinComb::new() };
                assert_eq!(q, want);
            }
        }
    }

    #[test]
    fn regular_actions() {
        let x = dbl("pq-a2", 1, 2);
        for i in 0..x.dim() {
            for j in 0..x.dim() {
                let (p, q) = (&x.labels()[i], &x.labels()[j]);
                let prod = x.product(i, j, Variant::Plain, Route::Sweedler).unwrap();
                // D^{0,d} is an ideal killed by D^{e,f} with e ≠ d
                if p.c.degree() == 0 && q.c.degree() < x.d() || q.c.degree() == 0 && p.c.degree() < x.d() {
                    assert!(prod.is_zero());
                }
                if p.d.degree() == 0 && q.c.degree() == 0 {
                    // (ξ⊗1)(1⊗x) = 1⊗(ξ·x)
                    let xi = x.inv_idx(&p.c);
                    let mut want = LinComb::new();
                    if let Some(v) = x.reverse[x.d()].by_right.get(&(xi, x.inv_idx(&q.d))) {
                        for &(g, f) in v {
                            want.add_term(x.idx(&Monomial::empty(), &x.inv(x.d()).basis()[g]), f);
                        }
                    }
                    assert_eq!(prod, want);
                }
            }
        }
    }

    #[test]
    fn symmetric_and_unimodular() {
        for (name, n) in [("trivial", 1), ("dual", 1), ("pq-a2", 1)] {
            let x = dbl(name, n, 2);
            let f = x.symmetric_form(Exec::Sequential).unwrap();
            assert!(f.is_unimodular());
            for p in [2, 3, 5] {
                assert!(f.nondegenerate_mod(p));
            }
        }
    }

    #[test]
    fn turner_grading_is_additive() {
        let x = dbl("pq-a2", 1, 2);
        for (i, j) in x.all_pairs() {
            let di = x.turner_degree(i).unwrap() + x.turner_degree(j).unwrap();
            for &k in x.product(i, j, Variant::Plain, Route::Sweedler).unwrap().keys() {
                assert_eq!(x.turner_degree(k).unwrap(), di);
            }
        }
        let y = dbl("zigzag-a2", 1, 1);
        assert!(y.turner_degree(0).is_err());
    }

    #[test]
    fn generation() {
        for (name, n, d) in [("trivial", 1, 2), ("pq-a2", 1, 2), ("trivial", 2, 2), ("dual", 1, 2)] {
            let x = dbl(name, n, d);
            for set in [GeneratorSet::Basic, GeneratorSet::Corner] {
                let r = x.generation_check(set).unwrap();
                assert!(r.holds, "{name} {n} {d} {set:?}: {:?}", r.missing);
            }
        }
        let x = dbl("trivial", 2, 2);
        assert!(x.generation_check(GeneratorSet::Truncated).unwrap().holds);
        // 𝒪, d = 2: generators 1⊗1 and 1*y
        assert_eq!(dbl("trivial", 1, 2).generators(GeneratorSet::Basic).unwrap().len(), 2);
    }

    #[test]
    fn divided_double_is_not_symmetric_mod_two() {
        let x = dbl("trivial", 1, 2);
        let dets = divided_form_witness(&x, 2).unwrap();
        assert_eq!(dets.len(), 8);
        assert!(dets.iter().all(|&d| d == 0));
        assert!(divided_form_witness(&x, 3).unwrap().iter().any(|&d| d != 0));
    }
}
