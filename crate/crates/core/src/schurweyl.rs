//! Wreath products `W^A_d`, tensor space `V^{⊗d}` with `V = A^{⊕n}`, and the
//! double centralizer with `S^A(n,d)`.
//!
//! A letter of `V` is `v^b_r`, encoded as `r·|B| + b`. Letters of `M_n(A)`
//! use [`MatrixShape`]. `V` is a right `A`-module and `M_n(A)` acts on the
//! left as matrices on columns.

use crate::combinatorics::{
    enumerate_colored_weights, shortest_coset_reps, ColoredWeight, MatrixShape, Perm, Side, Weight, Word,
};
use crate::invariants::shuffle;
use crate::lattice::{integer_kernel, rank_rational, sparse_from_i64, Lattice};
use crate::schur::SchurAlgebra;
use crate::superalgebra::{place_permutation_word, word_product, SuperAlgebra};
use crate::{Error, Exec, LinComb, Result};
use num_traits::{One, Signed, ToPrimitive};
use std::collections::{BTreeSet, HashMap};

/// `Σ` over pairs `a < c` of `first_c · second_a`, as a sign.
fn cross_sign(first: &[u8], second: &[u8]) -> i64 {
    let mut p = 0u32;
    let mut seen = 0u32;
    for c in 0..first.len() {
        if c > 0 {
            seen += second[c - 1] as u32;
        }
        if first[c] == 1 {
            p += seen;
        }
    }
    if p % 2 == 0 {
        1
    } else {
        -1
    }
}

pub type WreathElement = LinComb<(Word, Perm)>;

/// `W^A_d = A^{⊗d} ⋊ 𝕜𝔖_d`, basis `(b_1⊗⋯⊗b_d) g`.
#[derive(Clone, Debug)]
pub struct Wreath {
    a: SuperAlgebra,
    d: usize,
}

impl Wreath {
    pub fn new(a: &SuperAlgebra, d: usize) -> Self {
        Wreath { a: a.clone(), d }
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn basis(&self) -> Vec<(Word, Perm)> {
        let words = all_words(self.a.dim(), self.d);
        let perms = Perm::all(self.d);
        words.iter().flat_map(|w| perms.iter().map(move |g| (w.clone(), g.clone()))).collect()
    }

    pub fn dim(&self) -> usize {
        self.a.dim().pow(self.d as u32) * (1..=self.d).product::<usize>()
    }

    fn unit_word(&self) -> LinComb<Word> {
        let mut acc = LinComb::term(Word::new(), 1);
        for _ in 0..self.d {
            acc = append_letter(&acc, self.a.unit());
        }
        acc
    }

    pub fn unit(&self) -> WreathElement {
        self.unit_word().map_terms(|w| Some(((w.clone(), Perm::identity(self.d)), 1)))
    }

    pub fn group(&self, g: &Perm) -> WreathElement {
        self.unit_word().map_terms(|w| Some(((w.clone(), g.clone()), 1)))
    }

    /// `x[c]` for a basis element `x` of `A`.
    pub fn slot(&self, x: usize, c: usize) -> WreathElement {
        let mut acc = LinComb::term(Word::new(), 1);
        for a in 0..self.d {
            acc = if a == c { append_letter(&acc, &LinComb::term(x, 1)) } else { append_letter(&acc, self.a.unit()) };
        }
        acc.map_terms(|w| Some(((w.clone(), Perm::identity(self.d)), 1)))
    }

    pub fn algebra_element(&self, x: &LinComb<Word>) -> WreathElement {
        x.map_terms(|w| Some(((w.clone(), Perm::identity(self.d)), 1)))
    }

    /// `(x g)(y h) = x · y^{g⁻¹} · gh`, using `g⁻¹ y g = y^g`.
    pub fn mul(&self, x: &WreathElement, y: &WreathElement) -> WreathElement {
        let odd = self.a.odd_mask();
        let mut out = LinComb::new();
        for ((xw, g), a) in x.iter() {
            let gi = g.inverse();
            for ((yw, h), b) in y.iter() {
                let (s, yg) = place_permutation_word(yw, &odd, &gi);
                let gh = g.compose(h);
                for (w, c) in word_product(&self.a, xw, &yg).iter() {
                    out.add_term((w.clone(), gh.clone()), a * b * s * c);
                }
            }
        }
        out
    }

    /// Generators `x[c]` (`x` in the basis) and adjacent transpositions.
    pub fn generators(&self) -> Vec<WreathElement> {
        let mut g = Vec::new();
        for c in 0..self.d {
            for x in 0..self.a.dim() {
                g.push(self.slot(x, c));
            }
        }
        for r in 0..self.d.saturating_sub(1) {
            g.push(self.group(&Perm::transposition(self.d, r)));
        }
        g
    }
}

fn append_letter(acc: &LinComb<Word>, x: &LinComb<usize>) -> LinComb<Word> {
    let mut out = LinComb::new();
    for (w, a) in acc.iter() {
        for (&l, &b) in x.iter() {
            let mut w2 = w.clone();
            w2.push(l as u16);
            out.add_term(w2, a * b);
        }
    }
    out
}

fn all_words(letters: usize, d: usize) -> Vec<Word> {
    let mut out = vec![Word::new()];
    for _ in 0..d {
        out = out
            .into_iter()
            .flat_map(|w| {
                (0..letters as u16).map(move |l| {
                    let mut w2 = w.clone();
                    w2.push(l);
                    w2
                })
            })
            .collect();
    }
    out
}

/// `Tens^d V` with its right `W^A_d`-action and left `Tens^d M_n(A)`-action.
#[derive(Clone, Debug)]
pub struct TensorSpace {
    a: SuperAlgebra,
    n: usize,
    d: usize,
    odd: Vec<bool>,
}

impl TensorSpace {
    pub fn new(a: &SuperAlgebra, n: usize, d: usize) -> Self {
        let odd = (0..n * a.dim()).map(|l| a.is_odd(l % a.dim())).collect();
        TensorSpace { a: a.clone(), n, d, odd }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn letters(&self) -> usize {
        self.n * self.a.dim()
    }

    pub fn dim(&self) -> usize {
        self.letters().pow(self.d as u32)
    }

    /// `v^b_r`
    pub fn letter(&self, r: usize, b: usize) -> u16 {
        (r * self.a.dim() + b) as u16
    }

    pub fn split(&self, l: u16) -> (usize, usize) {
        (l as usize / self.a.dim(), l as usize % self.a.dim())
    }

    pub fn odd_mask(&self) -> &[bool] {
        &self.odd
    }

    pub fn index(&self, w: &[u16]) -> usize {
        w.iter().fold(0, |acc, &l| acc * self.letters() + l as usize)
    }

    pub fn word(&self, mut i: usize) -> Word {
        let mut w = Word::from_elem(0, self.d);
        for a in (0..self.d).rev() {
            w[a] = (i % self.letters()) as u16;
            i /= self.letters();
        }
        w
    }

    pub fn basis_vector(&self, i: usize) -> LinComb<Word> {
        LinComb::term(self.word(i), 1)
    }

    fn par(&self, w: &[u16]) -> Vec<u8> {
        w.iter().map(|&l| self.odd[l as usize] as u8).collect()
    }

    /// `v^x_r = v_r · x`.
    pub fn v(&self, r: usize, x: &LinComb<usize>) -> LinComb<usize> {
        x.map_terms(|&b| Some((self.letter(r, b) as usize, 1)))
    }

    /// `v_𝐫 = v_{r_1} ⊗ ⋯ ⊗ v_{r_d}`.
    pub fn v_seq(&self, seq: &[usize]) -> LinComb<Word> {
        let mut acc = LinComb::term(Word::new(), 1);
        for &r in seq {
            acc = append_letter(&acc, &self.v(r, self.a.unit()));
        }
        acc
    }

    /// `v_λ = v_1^{⊗λ_1} ⊗ ⋯ ⊗ v_n^{⊗λ_n}`.
    pub fn v_weight(&self, lambda: &Weight) -> LinComb<Word> {
        self.v_seq(&lambda.sequence())
    }

    /// `v · (x_1⊗⋯⊗x_d)` with the sign of moving each `x_j` past `v_i`, `i > j`.
    pub fn act_algebra(&self, v: &LinComb<Word>, x: &LinComb<Word>) -> LinComb<Word> {
        let aodd = self.a.odd_mask();
        let mut out = LinComb::new();
        for (u, c) in v.iter() {
            let pu = self.par(u);
            for (xw, e) in x.iter() {
                let px: Vec<u8> = xw.iter().map(|&l| aodd[l as usize] as u8).collect();
                let sign = cross_sign(&pu, &px);
                let mut acc = LinComb::term(Word::new(), sign * c * e);
                for a in 0..self.d {
                    let (r, b) = self.split(u[a]);
                    let prod = self.a.product(b, xw[a] as usize).map_terms(|&k| Some((self.letter(r, k) as usize, 1)));
                    acc = append_letter(&acc, &prod);
                }
                out.add_scaled(&acc, 1);
            }
        }
        out
    }

    /// `v g = v^g`, the signed right place permutation.
    pub fn act_perm(&self, v: &LinComb<Word>, g: &Perm) -> LinComb<Word> {
        let mut out = LinComb::new();
        for (u, c) in v.iter() {
            let (s, w) = place_permutation_word(u, &self.odd, g);
            out.add_term(w, s * c);
        }
        out
    }

    pub fn act_wreath(&self, v: &LinComb<Word>, w: &WreathElement) -> LinComb<Word> {
        let mut out = LinComb::new();
        for ((x, g), c) in w.iter() {
            let y = self.act_algebra(v, &LinComb::term(x.clone(), 1));
            out.add_scaled(&self.act_perm(&y, g), *c);
        }
        out
    }

    /// `(m_1⊗⋯⊗m_d)(u_1⊗⋯⊗u_d) = ± m_1u_1 ⊗ ⋯ ⊗ m_du_d`, sign from moving
    /// each `m_j` past `u_i`, `i < j`.
    pub fn act_matrix_tensor(&self, t: &LinComb<Word>, v: &LinComb<Word>) -> LinComb<Word> {
        let sh = MatrixShape { labels: self.a.dim(), n: self.n };
        let aodd = self.a.odd_mask();
        let mut out = LinComb::new();
        for (m, c) in t.iter() {
            let pm: Vec<u8> = m.iter().map(|&l| aodd[sh.decode(l).0] as u8).collect();
            'terms: for (u, e) in v.iter() {
                let pu = self.par(u);
                let sign = cross_sign(&pm, &pu);
                let mut acc = LinComb::term(Word::new(), sign * c * e);
                for a in 0..self.d {
                    let (b1, r, s) = sh.decode(m[a]);
                    let (t2, b2) = self.split(u[a]);
                    if s != t2 {
                        continue 'terms;
                    }
                    let prod = self.a.product(b1, b2).map_terms(|&k| Some((self.letter(r, k) as usize, 1)));
                    acc = append_letter(&acc, &prod);
                }
                out.add_scaled(&acc, 1);
            }
        }
        out
    }

    /// Left action of `x ∈ S^A(n,d)`.
    pub fn act_schur(&self, s: &SchurAlgebra, x: &LinComb<usize>, v: &LinComb<Word>) -> LinComb<Word> {
        let mut out = LinComb::new();
        for (&i, &c) in x.iter() {
            out.add_scaled(&self.act_matrix_tensor(&s.xi_expand(i), v), c);
        }
        out
    }

    /// Coordinates in the word basis.
    pub fn coords(&self, v: &LinComb<Word>) -> Vec<(usize, i64)> {
        v.iter().map(|(w, &c)| (self.index(w), c)).collect()
    }

    /// Matrix of `ξ_i` on `V^{⊗d}`, flattened as `k·N + j` for `ξ_i e_j = Σ c e_k`.
    pub fn action_matrix(&self, s: &SchurAlgebra, i: usize) -> Vec<(usize, i64)> {
        let n = self.dim();
        let x = s.xi_expand(i);
        let mut out = Vec::new();
        for j in 0..n {
            for (k, c) in self.coords(&self.act_matrix_tensor(&x, &self.basis_vector(j))) {
                out.push((k * n + j, c));
            }
        }
        out
    }

    /// Matrix of a right action on the basis: `e_j ↦ Σ c e_k` as `(j, k, c)`.
    fn right_matrix(&self, f: impl Fn(&LinComb<Word>) -> LinComb<Word>) -> Vec<Vec<(usize, i64)>> {
        (0..self.dim()).map(|j| self.coords(&f(&self.basis_vector(j)))).collect()
    }
}

/// `dim End_{W^A_d}(V^{⊗d})`.
///
/// `V^{⊗d}` is free over `A^{⊗d}` on the `v_𝐫`, so an `A^{⊗d}`-linear map is
/// given by arbitrary images `M(v_𝐫)`; commuting with `𝔖_d` then reads
/// `M(v_{𝐫 s}) = M(v_𝐫) s` for adjacent transpositions `s`.
pub fn commutant_dimension(a: &SuperAlgebra, n: usize, d: usize) -> usize {
    let ts = TensorSpace::new(a, n, d);
    let big = ts.dim();
    let seqs = all_words(n, d);
    let seq_index: HashMap<Word, usize> = seqs.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
    let mut rows = Vec::new();
    for r in 0..d.saturating_sub(1) {
        let s = Perm::transposition(d, r);
        let p = ts.right_matrix(|v| ts.act_perm(v, &s));
        for (ri, seq) in seqs.iter().enumerate() {
            let moved: Word = (0..d).map(|a| seq[s.image(a)]).collect();
            let rs = seq_index[&moved];
            // X[rs][k] − Σ_j X[r][j] P[j→k] = 0
            let mut eqs: Vec<Vec<(usize, i64)>> = (0..big).map(|k| vec![(rs * big + k, 1)]).collect();
            for (j, row) in p.iter().enumerate() {
                for &(k, c) in row {
                    eqs[k].push((ri * big + j, -c));
                }
            }
            rows.extend(eqs);
        }
    }
    seqs.len() * big - rank_rational(&rows, seqs.len() * big)
}

/// `dim End_{W^A_d}(V^{⊗d})` by solving `M ρ(w) = ρ(w) M` for all
/// generators `w` with `N²` unknowns; for small `N` only.
pub fn commutant_dimension_direct(a: &SuperAlgebra, n: usize, d: usize) -> usize {
    let ts = TensorSpace::new(a, n, d);
    let w = Wreath::new(a, d);
    let big = ts.dim();
    let mut rows = Vec::new();
    for g in w.generators() {
        let r = ts.right_matrix(|v| ts.act_wreath(v, &g));
        // unknown M[k][j] at k·N + j; M(e_j w) = M(e_j) w
        for j in 0..big {
            let mut eqs: Vec<Vec<(usize, i64)>> = vec![Vec::new(); big];
            for &(j2, c) in &r[j] {
                for (k, eq) in eqs.iter_mut().enumerate() {
                    eq.push((k * big + j2, c));
                }
            }
            for (k1, row) in r.iter().enumerate() {
                for &(k, c) in row {
                    eqs[k].push((k1 * big + j, -c));
                }
            }
            rows.extend(eqs.into_iter().filter(|e| !e.is_empty()));
        }
    }
    big * big - rank_rational(&rows, big * big)
}

/// Rank of `{ρ(ξ_𝐂)}` inside `End(V^{⊗d})`; faithful iff it equals `dim S`.
pub fn faithfulness_rank(s: &SchurAlgebra, ts: &TensorSpace, exec: Exec) -> usize {
    let rows = exec.map_range(s.dim(), |i| ts.action_matrix(s, i));
    rank_rational(&rows, ts.dim() * ts.dim())
}

/// Checks `(ξ v) w = ξ (v w)` for every basis `ξ`, basis `v` and generator `w`.
pub fn check_commutation(s: &SchurAlgebra, ts: &TensorSpace, exec: Exec) -> Result<()> {
    let w = Wreath::new(s.algebra(), ts.d());
    let gens = w.generators();
    exec.try_for_range(s.dim(), |i| {
        let x = LinComb::term(i, 1);
        for j in 0..ts.dim() {
            let v = ts.basis_vector(j);
            for g in &gens {
                let l = ts.act_wreath(&ts.act_schur(s, &x, &v), g);
                let r = ts.act_schur(s, &x, &ts.act_wreath(&v, g));
                if l != r {
                    return Err(Error::Verification(format!("{} does not commute with W on {j}", s.label(i))));
                }
            }
        }
        Ok(())
    })
}

/// Multiplication table of `S^A(n,d)` read off from the action on `V^{⊗d}`:
/// `ρ(ξ_𝐂)ρ(ξ_𝐃)` written in the `ρ(ξ_𝐄)`.
pub fn commutant_table(s: &SchurAlgebra, ts: &TensorSpace) -> Result<Vec<LinComb<usize>>> {
    let big = ts.dim();
    let mats: Vec<Vec<Vec<(usize, i64)>>> = (0..s.dim())
        .map(|i| {
            let x = s.xi_expand(i);
            (0..big).map(|j| ts.coords(&ts.act_matrix_tensor(&x, &ts.basis_vector(j)))).collect()
        })
        .collect();
    let mut out = Vec::with_capacity(s.dim() * s.dim());
    for a in &mats {
        for b in &mats {
            // (AB)[k][j] = Σ_m A[k][m] B[m][j]
            let mut prod: HashMap<usize, i64> = HashMap::new();
            for (j, col) in b.iter().enumerate() {
                for &(m, y) in col {
                    for &(k, x) in &a[m] {
                        *prod.entry(k * big + j).or_insert(0) += x * y;
                    }
                }
            }
            prod.retain(|_, c| *c != 0);
            out.push(express(&mats, big, &prod)?);
        }
    }
    Ok(out)
}

/// Writes a matrix as an integer combination of the given matrices.
fn express(mats: &[Vec<Vec<(usize, i64)>>], big: usize, target: &HashMap<usize, i64>) -> Result<LinComb<usize>> {
    let m = mats.len();
    let mut entries: BTreeSet<usize> = target.keys().copied().collect();
    for mat in mats {
        for (j, col) in mat.iter().enumerate() {
            entries.extend(col.iter().map(|&(k, _)| k * big + j));
        }
    }
    let pos: HashMap<usize, usize> = entries.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let mut rows: Vec<Vec<(usize, i64)>> = vec![Vec::new(); entries.len()];
    for (i, mat) in mats.iter().enumerate() {
        for (j, col) in mat.iter().enumerate() {
            for &(k, c) in col {
                rows[pos[&(k * big + j)]].push((i, c));
            }
        }
    }
    for (e, &c) in target {
        rows[pos[e]].push((m, -c));
    }
    let ker = integer_kernel(&rows, m + 1);
    let sol = ker.iter().find(|v| !v[m].is_zero_int());
    match sol {
        Some(v) if v[m].abs().is_one() => {
            let s = v[m].to_i64().expect("unit");
            Ok(LinComb::from_pairs((0..m).map(|i| (i, v[i].to_i64().expect("small") * s))))
        }
        _ => Err(Error::Verification("product is not an integral combination of the basis action".into())),
    }
}

trait IsZeroInt {
    fn is_zero_int(&self) -> bool;
}

impl IsZeroInt for crate::Int {
    fn is_zero_int(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
}

/// `ω = ε_1 + ⋯ + ε_d ∈ Λ(n,d)`.
pub fn omega(n: usize, d: usize) -> Result<Weight> {
    if d > n {
        return Err(Error::Precondition(format!("truncation needs d ≤ n, got d = {d}, n = {n}")));
    }
    Ok(Weight((0..n).map(|r| (r < d) as usize).collect()))
}

/// The map `W^A_d → ξ_ω S^A(n,d) ξ_ω`,
/// `(x_1⊗⋯⊗x_d)g ↦ ξ^{x_1}_{1,g⁻¹1} * ⋯ * ξ^{x_d}_{d,g⁻¹d}`.
pub struct Truncation<'a> {
    pub s: &'a SchurAlgebra,
    pub ts: TensorSpace,
    pub wreath: Wreath,
    pub omega: Weight,
}

#[derive(Clone, Debug, Default)]
pub struct TruncationReport {
    pub pairs_checked: usize,
    pub basis_checked: usize,
    pub lattice_equal: bool,
    pub bimodule_rank: usize,
    pub tensor_dim: usize,
    pub bimodule_onto: bool,
}

impl<'a> Truncation<'a> {
    pub fn new(s: &'a SchurAlgebra) -> Result<Self> {
        let omega = omega(s.n(), s.d())?;
        Ok(Truncation { s, ts: TensorSpace::new(s.algebra(), s.n(), s.d()), wreath: Wreath::new(s.algebra(), s.d()), omega })
    }

    pub fn phi_basis(&self, x: &Word, g: &Perm) -> Result<LinComb<usize>> {
        let sh = self.s.shape();
        let gi = g.inverse();
        let odd = self.s.odd_mask();
        let mut acc: Option<LinComb<Word>> = None;
        for a in 0..self.s.d() {
            let l = LinComb::term(Word::from_slice(&[sh.encode(x[a] as usize, a, gi.image(a))]), 1);
            acc = Some(match acc {
                None => l,
                Some(t) => shuffle(&t, &l, odd),
            });
        }
        self.s.coordinates(&acc.unwrap_or_else(|| LinComb::term(Word::new(), 1)))
    }

    pub fn phi(&self, w: &WreathElement) -> Result<LinComb<usize>> {
        let mut out = LinComb::new();
        for ((x, g), &c) in w.iter() {
            out.add_scaled(&self.phi_basis(x, g)?, c);
        }
        Ok(out)
    }

    pub fn v_omega(&self) -> LinComb<Word> {
        self.ts.v_weight(&self.omega)
    }

    /// Multiplicativity on the given basis pairs, `φ(w)v_ω = v_ω w` on the
    /// whole basis, lattice equality `φ(W) = ξ_ω S ξ_ω`, and the bimodule map
    /// `S ξ_ω → V^{⊗d}`.
    pub fn check(&self, pairs: Option<usize>, exec: Exec) -> Result<TruncationReport> {
        let basis = self.wreath.basis();
        let images: Vec<LinComb<usize>> =
            exec.map_range(basis.len(), |i| self.phi_basis(&basis[i].0, &basis[i].1)).into_iter().collect::<Result<_>>()?;
        let vo = self.v_omega();
        exec.try_for_range(basis.len(), |i| {
            let w = LinComb::term(basis[i].clone(), 1);
            if self.ts.act_schur(self.s, &images[i], &vo) != self.ts.act_wreath(&vo, &w) {
                return Err(Error::Verification(format!("φ(w)v_ω ≠ v_ω w for basis element {i}")));
            }
            Ok(())
        })?;
        let all: Vec<(usize, usize)> = (0..basis.len()).flat_map(|i| (0..basis.len()).map(move |j| (i, j))).collect();
        let step = match pairs {
            Some(p) if p < all.len() => all.len() / p.max(1),
            _ => 1,
        };
        let chosen: Vec<(usize, usize)> = all.into_iter().step_by(step.max(1)).collect();
        exec.try_for_range(chosen.len(), |k| {
            let (i, j) = chosen[k];
            let w = self.wreath.mul(&LinComb::term(basis[i].clone(), 1), &LinComb::term(basis[j].clone(), 1));
            if self.phi(&w)? != self.s.mul(&images[i], &images[j]) {
                return Err(Error::Verification(format!("φ is not multiplicative on ({i}, {j})")));
            }
            Ok(())
        })?;
        let xo = self.s.idempotent(&self.omega)?;
        let row = |x: &LinComb<usize>| sparse_from_i64(x.iter().map(|(&k, &c)| (k, c)));
        let image = Lattice::from_rows(self.s.dim(), images.iter().map(row));
        let corner = Lattice::from_rows(
            self.s.dim(),
            (0..self.s.dim()).map(|i| row(&self.s.mul(&self.s.mul(&xo, &LinComb::term(i, 1)), &xo))),
        );
        // S ξ_ω → V^{⊗d}, s ξ_ω ↦ s v_ω
        let left: Vec<LinComb<usize>> = (0..self.s.dim()).map(|i| self.s.mul(&LinComb::term(i, 1), &xo)).collect();
        let source = Lattice::from_rows(self.s.dim(), left.iter().map(row));
        let targets: Vec<Vec<(usize, i64)>> =
            left.iter().map(|y| self.ts.coords(&self.ts.act_schur(self.s, y, &vo))).collect();
        let onto = Lattice::from_rows(self.ts.dim(), targets.iter().map(|t| sparse_from_i64(t.iter().copied())));
        let full = Lattice::from_rows(self.ts.dim(), (0..self.ts.dim()).map(|i| sparse_from_i64([(i, 1)])));
        let injective = source.rank() == onto.rank();
        // right W-compatibility on generators
        for y in &left {
            for g in self.wreath.generators() {
                let l = self.ts.act_schur(self.s, &self.s.mul(y, &self.phi(&g)?), &vo);
                let r = self.ts.act_wreath(&self.ts.act_schur(self.s, y, &vo), &g);
                if l != r {
                    return Err(Error::Verification("S ξ_ω → V^{⊗d} is not W-linear".into()));
                }
            }
        }
        Ok(TruncationReport {
            pairs_checked: chosen.len(),
            basis_checked: basis.len(),
            lattice_equal: image == corner,
            bimodule_rank: source.rank(),
            tensor_dim: self.ts.dim(),
            bimodule_onto: injective && onto == full,
        })
    }
}

/// Colored permutation modules `M^A_𝝀` for orthogonal idempotents
/// `e_1 + ⋯ + e_l = 1`, compared with the summands `Tens^𝝀 V`.
pub struct ColoredModules {
    pub ts: TensorSpace,
    idempotents: Vec<LinComb<usize>>,
    /// color `i` of each basis element, with `e_i b = b`
    color: Vec<usize>,
}

impl ColoredModules {
    pub fn new(a: &SuperAlgebra, idempotents: Vec<LinComb<usize>>, n: usize, d: usize) -> Result<Self> {
        let bad = |m: String| Err(Error::Precondition(format!("idempotent axioms: {m}")));
        let mut sum = LinComb::new();
        for (i, e) in idempotents.iter().enumerate() {
            sum.add_scaled(e, 1);
            for (j, f) in idempotents.iter().enumerate() {
                let p = a.mul(e, f);
                if (i == j && &p != e) || (i != j && !p.is_zero()) {
                    return bad(format!("e_{} e_{} is wrong", i + 1, j + 1));
                }
            }
        }
        if &sum != a.unit() {
            return bad("the idempotents do not sum to 1".into());
        }
        let mut color = Vec::with_capacity(a.dim());
        for b in 0..a.dim() {
            let x = LinComb::term(b, 1);
            let cs: Vec<usize> = (0..idempotents.len()).filter(|&i| a.mul(&idempotents[i], &x) == x).collect();
            if cs.len() != 1 {
                return bad(format!("basis element {} is not in a single e_i A", a.label(b)));
            }
            color.push(cs[0]);
        }
        Ok(ColoredModules { ts: TensorSpace::new(a, n, d), idempotents, color })
    }

    pub fn colors(&self) -> usize {
        self.idempotents.len()
    }

    pub fn weights(&self) -> Vec<ColoredWeight> {
        enumerate_colored_weights(self.ts.n(), self.colors(), self.ts.d())
    }

    fn color_count(&self, i: usize) -> usize {
        self.color.iter().filter(|&&c| c == i).count()
    }

    /// `|𝔖_d : 𝔖_𝝀| · Π_i (dim e_iA)^{Σ_r λ^{(i)}_r}`.
    pub fn expected_dim(&self, lam: &ColoredWeight) -> usize {
        let mut dim = lam.flat().coset_count() as usize;
        for i in 0..self.colors() {
            let k: usize = (0..lam.n).map(|r| lam.get(r, i)).sum();
            dim *= self.color_count(i).pow(k as u32);
        }
        dim
    }

    fn of_type(&self, w: &[u16], lam: &ColoredWeight) -> bool {
        let mut counts = vec![0usize; lam.entries.len()];
        for &l in w {
            let (r, b) = self.ts.split(l);
            counts[r * self.colors() + self.color[b]] += 1;
        }
        counts == lam.entries
    }

    /// Word basis of `Tens^𝝀 V`.
    pub fn tensor_basis(&self, lam: &ColoredWeight) -> Vec<usize> {
        (0..self.ts.dim()).filter(|&i| self.of_type(&self.ts.word(i), lam)).collect()
    }

    /// `v_𝝀`, built from the `v_{r,i} = v_r^{e_i}`.
    pub fn standard_vector(&self, lam: &ColoredWeight) -> LinComb<Word> {
        let mut acc = LinComb::term(Word::new(), 1);
        for r in 0..lam.n {
            for i in 0..self.colors() {
                for _ in 0..lam.get(r, i) {
                    acc = append_letter(&acc, &self.ts.v(r, &self.idempotents[i]));
                }
            }
        }
        acc
    }

    /// Basis `m_𝝀 (b_1⊗⋯⊗b_d) g` of `M^A_𝝀`, with `b_a` of the color of the
    /// block containing `a` and `g ∈ ^𝝀𝒟`.
    pub fn module_basis(&self, lam: &ColoredWeight) -> Vec<(Word, Perm)> {
        let flat = lam.flat();
        let block_color: Vec<usize> = flat.sequence().iter().map(|&blk| blk % self.colors()).collect();
        let mut words = vec![Word::new()];
        for &c in &block_color {
            words = words
                .into_iter()
                .flat_map(|w| {
                    (0..self.color.len()).filter(move |&b| self.color[b] == c).map(move |b| {
                        let mut w2 = w.clone();
                        w2.push(b as u16);
                        w2
                    })
                })
                .collect();
        }
        let reps = shortest_coset_reps(&flat, Side::Left).representatives;
        words.iter().flat_map(|w| reps.iter().map(move |g| (w.clone(), g.clone()))).collect()
    }

    /// `m_𝝀 b g ↦ v_𝝀 b g`; checks it sends the module basis bijectively to
    /// `± ` the word basis of `Tens^𝝀 V` and returns the signed images.
    pub fn identification(&self, lam: &ColoredWeight) -> Result<Vec<(usize, i64)>> {
        let v = self.standard_vector(lam);
        let mut out = Vec::new();
        let mut seen = BTreeSet::new();
        for (b, g) in self.module_basis(lam) {
            let img = self.ts.act_perm(&self.ts.act_algebra(&v, &LinComb::term(b, 1)), &g);
            let c = self.ts.coords(&img);
            match c.as_slice() {
                [(k, s)] if s.abs() == 1 && self.of_type(&self.ts.word(*k), lam) && seen.insert(*k) => out.push((*k, *s)),
                _ => return Err(Error::Verification(format!("m_𝝀 b g does not map to a basis vector for 𝝀 = {:?}", lam.entries))),
            }
        }
        if out.len() != self.tensor_basis(lam).len() {
            return Err(Error::Verification(format!("identification for {:?} is not onto", lam.entries)));
        }
        Ok(out)
    }

    /// `Tens^𝝀 V` is stable under the generators of `W^A_d`.
    pub fn check_submodule(&self, lam: &ColoredWeight) -> Result<()> {
        let w = Wreath::new(&self.ts.a, self.ts.d());
        for i in self.tensor_basis(lam) {
            for g in w.generators() {
                let img = self.ts.act_wreath(&self.ts.basis_vector(i), &g);
                if img.keys().any(|u| !self.of_type(u, lam)) {
                    return Err(Error::Verification(format!("Tens^𝝀 V not W-stable for {:?}", lam.entries)));
                }
            }
        }
        Ok(())
    }

    /// Matrix of `ξ_i` on `⊕ M^A_𝝀` through the identifications, as
    /// `(row, column, coefficient)` over the concatenated module bases.
    pub fn transported_action(&self, s: &SchurAlgebra, i: usize) -> Result<Vec<(usize, usize, i64)>> {
        let mut to_module: HashMap<usize, (usize, i64)> = HashMap::new();
        let mut from_module: Vec<(usize, i64)> = Vec::new();
        for lam in self.weights() {
            for (k, sg) in self.identification(&lam)? {
                to_module.insert(k, (from_module.len(), sg));
                from_module.push((k, sg));
            }
        }
        let x = s.xi_expand(i);
        let mut out = Vec::new();
        for (col, &(k, sg)) in from_module.iter().enumerate() {
            let img = self.ts.act_matrix_tensor(&x, &self.ts.basis_vector(k));
            for (j, c) in self.ts.coords(&img) {
                let (row, s2) = to_module[&j];
                out.push((row, col, c * sg * s2));
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::schur::Mode;
    use crate::superalgebra::{integers, preset};

    fn schur(name: &str, n: usize, d: usize) -> SchurAlgebra {
        SchurAlgebra::new(&preset(name).unwrap(), n, d, Mode::Formula, Exec::Sequential).unwrap()
    }

    #[test]
    fn wreath_relations() {
        for name in ["dual", "zigzag-a2"] {
            let a = preset(name).unwrap();
            let w = Wreath::new(&a, 3);
            let odd = a.odd_mask();
            for g in Perm::all(3) {
                for c in 0..3 {
                    for x in 0..a.dim() {
                        let l = w.mul(&w.group(&g), &w.slot(x, c));
                        let r = w.mul(&w.slot(x, g.image(c)), &w.group(&g));
                        assert_eq!(l, r);
                    }
                }
                // g⁻¹ (x_1⊗x_2⊗x_3) g = (x_1⊗x_2⊗x_3)^g
                for word in all_words(a.dim(), 3).iter().step_by(7) {
                    let x = w.algebra_element(&LinComb::term(word.clone(), 1));
                    let l = w.mul(&w.mul(&w.group(&g.inverse()), &x), &w.group(&g));
                    let (s, wg) = place_permutation_word(word, &odd, &g);
                    assert_eq!(l, w.algebra_element(&LinComb::term(wg, s)));
                }
            }
            for x in 0..a.dim() {
                for y in 0..a.dim() {
                    let l = w.mul(&w.slot(x, 0), &w.slot(y, 1));
                    let r = w.mul(&w.slot(y, 1), &w.slot(x, 0));
                    let s = if a.is_odd(x) && a.is_odd(y) { -1 } else { 1 };
                    assert_eq!(l, r.scaled(s));
                }
            }
        }
    }

    #[test]
    fn wreath_is_associative() {
        let a = preset("zigzag-a2").unwrap();
        let w = Wreath::new(&a, 2);
        let b = w.basis();
        for i in (0..b.len()).step_by(5) {
            for j in (0..b.len()).step_by(3) {
                for k in (0..b.len()).step_by(7) {
                    let (x, y, z) = (LinComb::term(b[i].clone(), 1), LinComb::term(b[j].clone(), 1), LinComb::term(b[k].clone(), 1));
                    assert_eq!(w.mul(&w.mul(&x, &y), &z), w.mul(&x, &w.mul(&y, &z)));
                }
            }
        }
    }

    #[test]
    fn tensor_space_is_a_module() {
        let a = preset("zigzag-a2").unwrap();
        let ts = TensorSpace::new(&a, 2, 2);
        let w = Wreath::new(&a, 2);
        let b = w.basis();
        for v in (0..ts.dim()).step_by(11) {
            let v = ts.basis_vector(v);
            assert_eq!(ts.act_wreath(&v, &w.unit()), v);
            for i in (0..b.len()).step_by(5) {
                for j in (0..b.len()).step_by(7) {
                    let (x, y) = (LinComb::term(b[i].clone(), 1), LinComb::term(b[j].clone(), 1));
                    assert_eq!(ts.act_wreath(&ts.act_wreath(&v, &x), &y), ts.act_wreath(&v, &w.mul(&x, &y)));
                }
            }
        }
        // v_𝐫 g = v_{𝐫g}
        let g = Perm::transposition(2, 0);
        assert_eq!(ts.act_perm(&ts.v_seq(&[0, 1]), &g), ts.v_seq(&[1, 0]));
    }

    #[test]
    fn schur_action_commutes_and_projects() {
        for (name, n, d) in [("trivial", 2, 2), ("zigzag-a2", 2, 1), ("dual", 2, 2), ("zigzag-a2", 1, 2)] {
            let s = schur(name, n, d);
            let ts = TensorSpace::new(s.algebra(), n, d);
            check_commutation(&s, &ts, Exec::Sequential).unwrap();
            let one = s.unit().unwrap();
            for j in 0..ts.dim() {
                assert_eq!(ts.act_schur(&s, &one, &ts.basis_vector(j)), ts.basis_vector(j));
            }
            for l in s.weights() {
                let x = s.idempotent(&l).unwrap();
                for m in s.weights() {
                    let v = ts.act_schur(&s, &x, &ts.v_weight(&m));
                    if l == m {
                        assert_eq!(v, ts.v_weight(&l));
                    } else {
                        assert!(v.is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn commutant_dimensions() {
        assert_eq!(commutant_dimension(&integers(), 2, 2), 10);
        assert_eq!(commutant_dimension_direct(&integers(), 2, 2), 10);
        assert_eq!(commutant_dimension(&integers(), 3, 2), 45);
        assert_eq!(commutant_dimension_direct(&integers(), 3, 2), 45);
        let z = preset("zigzag-a2").unwrap();
        assert_eq!(commutant_dimension(&z, 2, 1), 4 * z.dim());
        assert_eq!(commutant_dimension_direct(&z, 1, 2), schur("zigzag-a2", 1, 2).dim());
        assert_eq!(commutant_dimension(&z, 1, 2), schur("zigzag-a2", 1, 2).dim());
        let e = preset("exterior").unwrap();
        assert_eq!(commutant_dimension(&e, 2, 2), commutant_dimension_direct(&e, 2, 2));
    }

    #[test]
    fn faithful() {
        for (name, n, d) in [("trivial", 2, 2), ("trivial", 3, 2), ("zigzag-a2", 1, 2), ("dual", 2, 2)] {
            let s = schur(name, n, d);
            let ts = TensorSpace::new(s.algebra(), n, d);
            assert_eq!(faithfulness_rank(&s, &ts, Exec::Sequential), s.dim());
        }
    }

    #[test]
    fn classical_table_from_commutant() {
        let s = schur("trivial", 2, 2);
        let ts = TensorSpace::new(s.algebra(), 2, 2);
        assert_eq!(commutant_table(&s, &ts).unwrap(), s.table());
        let s = schur("dual", 1, 2);
        let ts = TensorSpace::new(s.algebra(), 1, 2);
        assert_eq!(commutant_table(&s, &ts).unwrap(), s.table());
    }

    #[test]
    fn truncation() {
        for (name, n, d) in [("trivial", 2, 2), ("trivial", 3, 3), ("zigzag-a2", 2, 2), ("dual", 2, 2)] {
            let s = schur(name, n, d);
            let t = Truncation::new(&s).unwrap();
            let r = t.check(Some(400), Exec::Sequential).unwrap();
            assert!(r.lattice_equal && r.bimodule_onto, "{name} {n} {d}: {r:?}");
            assert_eq!(r.bimodule_rank, r.tensor_dim);
            // identity ↦ ξ_ω
            let id = t.phi(&t.wreath.unit()).unwrap();
            assert_eq!(id, s.idempotent(&t.omega).unwrap());
        }
        assert!(Truncation::new(&schur("trivial", 1, 2)).is_err());
    }

    #[test]
    fn colored_modules() {
        let z = preset("zigzag-a2").unwrap();
        let e = |name: &str| LinComb::term(z.index_of(name).unwrap(), 1);
        let cm = ColoredModules::new(&z, vec![e("e1"), e("e2")], 2, 2).unwrap();
        let mut total = 0;
        for lam in cm.weights() {
            let basis = cm.tensor_basis(&lam);
            assert_eq!(basis.len(), cm.expected_dim(&lam));
            assert_eq!(cm.module_basis(&lam).len(), basis.len());
            cm.identification(&lam).unwrap();
            cm.check_submodule(&lam).unwrap();
            total += basis.len();
        }
        assert_eq!(total, cm.ts.dim());
        // one color: M^A_λ ≅ Tens^λ V
        let one = ColoredModules::new(&z, vec![z.unit().clone()], 2, 2).unwrap();
        for lam in one.weights() {
            assert_eq!(one.expected_dim(&lam), lam.flat().coset_count() as usize * z.dim().pow(2));
            one.identification(&lam).unwrap();
        }
        let t = preset("dual").unwrap();
        let cm = ColoredModules::new(&t, vec![t.unit().clone()], 2, 3).unwrap();
        for lam in cm.weights() {
            cm.identification(&lam).unwrap();
        }
        assert!(ColoredModules::new(&z, vec![e("e1")], 2, 2).is_err());
    }

    #[test]
    fn transported_action_is_faithful() {
        let z = preset("zigzag-a2").unwrap();
        let e = |name: &str| LinComb::term(z.index_of(name).unwrap(), 1);
        let cm = ColoredModules::new(&z, vec![e("e1"), e("e2")], 1, 2).unwrap();
        let s = schur("zigzag-a2", 1, 2);
        let big = cm.ts.dim();
        let rows: Vec<Vec<(usize, i64)>> = (0..s.dim())
            .map(|i| cm.transported_action(&s, i).unwrap().into_iter().map(|(r, c, x)| (r * big + c, x)).collect())
            .collect();
        assert_eq!(rank_rational(&rows, big * big), s.dim());
    }
}
