use super::{Carrier, SuperAlgebra};
use crate::combinatorics::{Perm, Word};
use crate::{Error, LinComb, Result};

/// `(−1)^{Σ_{a<c} first_c · second_a}`, the sign produced when the letters of
/// `second` move left past the later letters of `first`.
pub fn koszul_sign(first: &[u8], second: &[u8]) -> i64 {
    let mut p = 0u32;
    let mut seen = 0u32;
    for c in 0..first.len() {
        if c > 0 {
            seen += second[c - 1] as u32;
        }
        p += first[c] as u32 * seen;
    }
    if p % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `(−1)^{[g; v]}` where `[g; v] = Σ_{a<c, g⁻¹a > g⁻¹c} v̄_a v̄_c`.
pub fn place_sign(g: &Perm, parities: &[u8]) -> i64 {
    let inv = g.inverse();
    let d = parities.len();
    let mut p = 0u32;
    for a in 0..d {
        if parities[a] == 0 {
            continue;
        }
        for c in a + 1..d {
            if parities[c] == 1 && inv.image(a) > inv.image(c) {
                p += 1;
            }
        }
    }
    if p % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `(v_1 ⊗ … ⊗ v_d)^g = (−1)^{[g;v]} v_{g1} ⊗ … ⊗ v_{gd}` on a single word.
pub fn place_permutation_word(word: &[u16], odd: &[bool], g: &Perm) -> (i64, Word) {
    let par: Vec<u8> = word.iter().map(|&l| odd[l as usize] as u8).collect();
    let s = place_sign(g, &par);
    (s, (0..word.len()).map(|a| word[g.image(a)]).collect())
}

/// Koszul sign for the componentwise product of two words.
pub fn word_koszul_sign(v: &[u16], w: &[u16], odd: &[bool]) -> i64 {
    let pv: Vec<u8> = v.iter().map(|&l| odd[l as usize] as u8).collect();
    let pw: Vec<u8> = w.iter().map(|&l| odd[l as usize] as u8).collect();
    koszul_sign(&pv, &pw)
}

/// An element of `V^{⊗d}` for a superspace with basis given by `odd`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorElement {
    pub carrier: Carrier,
    pub degree: usize,
    pub coeffs: LinComb<Word>,
}

impl TensorElement {
    pub fn word(alg: &SuperAlgebra, letters: &[usize]) -> Self {
        TensorElement {
            carrier: alg.carrier(),
            degree: letters.len(),
            coeffs: LinComb::term(letters.iter().map(|&l| l as u16).collect(), 1),
        }
    }

    pub fn zero(alg: &SuperAlgebra, degree: usize) -> Self {
        TensorElement { carrier: alg.carrier(), degree, coeffs: LinComb::new() }
    }
}

/// Signed place permutation extended linearly.
pub fn place_permutation(alg: &SuperAlgebra, v: &TensorElement, g: &Perm) -> Result<TensorElement> {
    if g.degree() != v.degree {
        return Err(Error::DegreeMismatch { left: v.degree, right: g.degree() });
    }
    let odd = alg.odd_mask();
    let coeffs = v.coeffs.map_terms(|w| {
        let (s, w2) = place_permutation_word(w, &odd, g);
        Some((w2, s))
    });
    Ok(TensorElement { carrier: v.carrier.clone(), degree: v.degree, coeffs })
}

/// Product of two basis words in `A^{⊗d}` with the Koszul sign.
pub fn word_product(alg: &SuperAlgebra, v: &[u16], w: &[u16]) -> LinComb<Word> {
    let odd = alg.odd_mask();
    let sign = word_koszul_sign(v, w, &odd);
    let mut acc: Vec<(Word, i64)> = vec![(Word::new(), sign)];
    for a in 0..v.len() {
        let p = alg.product(v[a] as usize, w[a] as usize);
        if p.is_zero() {
            return LinComb::new();
        }
        let mut next = Vec::with_capacity(acc.len() * p.len());
        for (pre, c) in &acc {
            for (&b, &k) in p.iter() {
                let mut x = pre.clone();
                x.push(b as u16);
                next.push((x, c * k));
            }
        }
        acc = next;
    }
    LinComb::from_pairs(acc)
}

/// The product of `Tens^d A`.
pub fn tensor_power_product(alg: &SuperAlgebra, x: &TensorElement, y: &TensorElement) -> Result<TensorElement> {
    if x.degree != y.degree {
        return Err(Error::DegreeMismatch { left: x.degree, right: y.degree });
    }
    for e in [x, y] {
        if e.carrier != alg.carrier() {
            return Err(Error::CarrierMismatch { expected: alg.carrier().to_string(), found: e.carrier.to_string() });
        }
    }
    let mut out = LinComb::new();
    for (v, a) in x.coeffs.iter() {
        for (w, b) in y.coeffs.iter() {
            out.add_scaled(&word_product(alg, v, w), a * b);
        }
    }
    Ok(TensorElement { carrier: alg.carrier(), degree: x.degree, coeffs: out })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::superalgebra::preset;

    #[test]
    fn koszul_examples() {
        assert_eq!(koszul_sign(&[0, 0, 0], &[0, 0, 0]), 1);
        assert_eq!(koszul_sign(&[0, 1], &[1, 0]), -1);
        assert_eq!(koszul_sign(&[1, 0], &[0, 1]), 1);
    }

    #[test]
    fn odd_square_vanishes_under_symmetrization() {
        let g = Perm::transposition(2, 0);
        assert_eq!(place_sign(&g, &[1, 1]), -1);
        assert_eq!(place_sign(&g, &[1, 0]), 1);
    }

    #[test]
    fn unit_crossing_example() {
        let a = preset("exterior").unwrap();
        let (one, e) = (a.index_of("1").unwrap(), a.index_of("e").unwrap());
        // x = e, y = e: (1⊗e)(e⊗1) = −(e⊗e)
        let x = TensorElement::word(&a, &[one, e]);
        let y = TensorElement::word(&a, &[e, one]);
        let p = tensor_power_product(&a, &x, &y).unwrap();
        assert_eq!(p.coeffs, LinComb::term(Word::from_slice(&[e as u16, e as u16]), -1));
        let d1 = tensor_power_product(&a, &TensorElement::word(&a, &[e]), &TensorElement::word(&a, &[one])).unwrap();
        assert_eq!(d1.coeffs, LinComb::term(Word::from_slice(&[e as u16]), 1));
        assert!(tensor_power_product(&a, &x, &TensorElement::word(&a, &[e])).is_err());
    }

    #[test]
    fn place_identity() {
        let a = preset("exterior").unwrap();
        let v = TensorElement::word(&a, &[1, 0, 1]);
        assert_eq!(place_permutation(&a, &v, &Perm::identity(3)).unwrap(), v);
    }
}
