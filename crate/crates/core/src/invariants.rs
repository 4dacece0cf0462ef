//! Tensor, invariant and divided-power (co)algebras on a superspace.
//!
//! A superspace is described only by its parity mask `odd[l]` over letters
//! `0..odd.len()`. Tensors are [`LinComb`]s of words; invariant elements are
//! [`LinComb`]s of multisets in the orbit-sum basis
//! `x_1^{⊗c_1} * ⋯ * x_k^{⊗c_k}`, letters taken in increasing order.

use crate::combinatorics::{
    enumerate_multisets, odd_inversion_parity, shortest_coset_reps, Monomial, Perm, Side, Weight, Word,
};
use crate::superalgebra::{place_permutation_word, word_koszul_sign, word_product, SuperAlgebra};
use crate::{Error, LinComb, Result};
use std::collections::BTreeMap;

/// Sign of a word inside the orbit sum of its multiset: `(−1)^{odd inversions}`.
pub fn word_sign(word: &[u16], odd: &[bool]) -> i64 {
    if odd_inversion_parity(word, |l| odd[l as usize]) {
        -1
    } else {
        1
    }
}

/// Parity of a multiset or word: number of odd letters mod 2.
pub fn parity(word: &[u16], odd: &[bool]) -> u8 {
    (word.iter().filter(|&&l| odd[l as usize]).count() % 2) as u8
}

/// Number of odd letters.
pub fn odd_count(word: &[u16], odd: &[bool]) -> usize {
    word.iter().filter(|&&l| odd[l as usize]).count()
}

/// The orbit-sum basis element `x_1^{⊗c_1} * ⋯ * x_k^{⊗c_k}` expanded.
pub fn orbit_sum(c: &Monomial, odd: &[bool]) -> Result<LinComb<Word>> {
    if !c.is_admissible(|l| odd[l as usize]) {
        return Err(Error::OddRepeated(c.to_string()));
    }
    Ok(LinComb::from_pairs(c.orbit().into_iter().map(|w| {
        let s = word_sign(&w, odd);
        (w, s)
    })))
}

/// Signed place permutation on a tensor.
pub fn permute(t: &LinComb<Word>, odd: &[bool], g: &Perm) -> LinComb<Word> {
    t.map_terms(|w| {
        let (s, w2) = place_permutation_word(w, odd, g);
        Some((w2, s))
    })
}

/// The shuffle product `s * t` of homogeneous tensors of degrees `d` and `e`.
pub fn shuffle(s: &LinComb<Word>, t: &LinComb<Word>, odd: &[bool]) -> LinComb<Word> {
    let (Some(d), Some(e)) = (s.keys().next().map(|w| w.len()), t.keys().next().map(|w| w.len())) else {
        return LinComb::new();
    };
    let reps = shortest_coset_reps(&Weight(vec![d, e]), Side::Left).representatives;
    let mut out = LinComb::new();
    for (v, a) in s.iter() {
        for (w, b) in t.iter() {
            debug_assert!(v.len() == d && w.len() == e);
            let mut cat = v.clone();
            cat.extend_from_slice(w);
            for g in &reps {
                let (sg, x) = place_permutation_word(&cat, odd, g);
                out.add_term(x, a * b * sg);
            }
        }
    }
    out
}

/// Deconcatenation coproduct, grouped by the degree of the left factor.
pub fn coproduct(t: &LinComb<Word>) -> BTreeMap<usize, LinComb<(Word, Word)>> {
    let mut out: BTreeMap<usize, LinComb<(Word, Word)>> = BTreeMap::new();
    for (w, c) in t.iter() {
        for e in 0..=w.len() {
            out.entry(e)
                .or_default()
                .add_term((Word::from_slice(&w[..e]), Word::from_slice(&w[e..])), *c);
        }
    }
    out
}

/// Invariance under all place permutations, tested on adjacent transpositions.
pub fn is_invariant(t: &LinComb<Word>, odd: &[bool]) -> bool {
    let Some(d) = t.keys().next().map(|w| w.len()) else { return true };
    (0..d.saturating_sub(1)).all(|r| permute(t, odd, &Perm::transposition(d, r)) == *t)
}

/// Coordinates of an invariant tensor in the orbit-sum basis.
///
/// The orbit sum of `c` has coefficient `+1` on the sorted word of `c`, so the
/// coordinate is read there; the full tensor is then rebuilt and compared.
pub fn coordinates(t: &LinComb<Word>, odd: &[bool]) -> Result<LinComb<Monomial>> {
    let mut coords = LinComb::new();
    for (w, c) in t.iter() {
        if w.windows(2).all(|p| p[0] <= p[1]) {
            let m = Monomial(w.clone());
            if !m.is_admissible(|l| odd[l as usize]) {
                return Err(Error::Verification(format!("invariant tensor has a repeated odd letter in {m}")));
            }
            coords.add_term(m, *c);
        }
    }
    let rebuilt = expand(&coords, odd)?;
    if rebuilt != *t {
        return Err(Error::Verification("tensor is not place-permutation invariant".into()));
    }
    Ok(coords)
}

/// Expands orbit-sum coordinates into a tensor.
pub fn expand(coords: &LinComb<Monomial>, odd: &[bool]) -> Result<LinComb<Word>> {
    let mut out = LinComb::new();
    for (m, c) in coords.iter() {
        out.add_scaled(&orbit_sum(m, odd)?, *c);
    }
    Ok(out)
}

/// `κ` on the divided-power basis: `x_1^{(c_1)}⋯x_k^{(c_k)} ↦ x_1^{⊗c_1} * ⋯`.
pub fn kappa(divided: &LinComb<Monomial>, odd: &[bool]) -> Result<LinComb<Word>> {
    expand(divided, odd)
}

/// `κ` on an ordinary monomial `x_1^{c_1}⋯x_k^{c_k} = 𝐜!·x^{(𝐜)}`.
pub fn kappa_monomial(c: &Monomial, odd: &[bool]) -> Result<LinComb<Word>> {
    Ok(orbit_sum(c, odd)?.scaled(c.factorial() as i64))
}

/// Product of two divided-power monomials in `'Sym V`:
/// `x^{(𝐜)}x^{(𝐝)} = ±(𝐜+𝐝 choose 𝐝) x^{(𝐜+𝐝)}`, the sign from reordering odd
/// letters, zero if an odd letter repeats.
pub fn divided_product(c: &Monomial, d: &Monomial, odd: &[bool]) -> LinComb<Monomial> {
    let s = c.add(d);
    if !s.is_admissible(|l| odd[l as usize]) {
        return LinComb::new();
    }
    let mut cat: Word = c.0.clone();
    cat.extend_from_slice(&d.0);
    let sign = word_sign(&cat, odd);
    let coeff = s.binomial(d) as i64;
    LinComb::term(s, sign * coeff)
}

/// `⟨β_1⊗⋯⊗β_d, v_1⊗⋯⊗v_d⟩` with the sign `Σ_{a<c} β̄_c v̄_a`; dual letters
/// are identified with the letters they are dual to.
pub fn pairing(beta: &LinComb<Word>, v: &LinComb<Word>, odd: &[bool]) -> i64 {
    let mut total = 0;
    for (w, c) in beta.iter() {
        let x = v.get(w);
        if x != 0 {
            total += c * x * word_koszul_sign(w, w, odd);
        }
    }
    total
}

/// One block `(Inv^e U) * (Inv^{d−e} W)` of a direct sum decomposition.
#[derive(Clone, Debug)]
pub struct DirectSumTerm {
    pub e: usize,
    pub left: Monomial,
    pub right: Monomial,
    pub target: Monomial,
    pub sign: i64,
}

/// `Inv^d V = ⊕_e (Inv^e U) * (Inv^{d−e} W)` for `V = U ⊕ W` split by `in_u`.
///
/// Each product of basis elements is a signed basis element; the map is
/// checked to be a bijection onto the orbit-sum basis of `Inv^d V`.
pub fn invariants_of_direct_sum(odd: &[bool], in_u: &[bool], d: usize) -> Result<Vec<DirectSumTerm>> {
    let all = enumerate_multisets(odd, d);
    let mut hit: BTreeMap<Monomial, usize> = BTreeMap::new();
    let mut out = Vec::new();
    for e in 0..=d {
        let us: Vec<Monomial> = enumerate_multisets(odd, e)
            .into_iter()
            .filter(|m| m.word().iter().all(|&l| in_u[l as usize]))
            .collect();
        let ws: Vec<Monomial> = enumerate_multisets(odd, d - e)
            .into_iter()
            .filter(|m| m.word().iter().all(|&l| !in_u[l as usize]))
            .collect();
        for u in &us {
            let su = orbit_sum(u, odd)?;
            for w in &ws {
                let prod = if e == 0 {
                    orbit_sum(w, odd)?
                } else if e == d {
                    su.clone()
                } else {
                    shuffle(&su, &orbit_sum(w, odd)?, odd)
                };
                let coords = coordinates(&prod, odd)?;
                if coords.len() != 1 {
                    return Err(Error::Verification(format!("{u} * {w} is not a basis vector")));
                }
                let (m, &s) = coords.iter().next().unwrap();
                if s.abs() != 1 {
                    return Err(Error::Verification(format!("{u} * {w} has coefficient {s}")));
                }
                *hit.entry(m.clone()).or_default() += 1;
                out.push(DirectSumTerm { e, left: u.clone(), right: w.clone(), target: m.clone(), sign: s });
            }
        }
    }
    if hit.len() != all.len() || hit.values().any(|&k| k != 1) {
        return Err(Error::Verification("direct sum decomposition is not a bijection".into()));
    }
    Ok(out)
}

/// Product of two orbit-sum basis elements of `Inv^d A` by full tensor
/// expansion in `A^{⊗d}`; the result is checked to be invariant.
pub fn inv_product_oracle(alg: &SuperAlgebra, c: &Monomial, d: &Monomial) -> Result<LinComb<Monomial>> {
    let odd = alg.odd_mask();
    if c.degree() != d.degree() {
        return Err(Error::DegreeMismatch { left: c.degree(), right: d.degree() });
    }
    let x = orbit_sum(c, &odd)?;
    let y = orbit_sum(d, &odd)?;
    let mut prod = LinComb::new();
    for (v, a) in x.iter() {
        for (w, b) in y.iter() {
            prod.add_scaled(&word_product(alg, v, w), a * b);
        }
    }
    coordinates(&prod, &odd)
}
