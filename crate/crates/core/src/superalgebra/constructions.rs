use super::{Label, SuperAlgebra};
use crate::combinatorics::MatrixShape;
use crate::{Error, LinComb, Result};
use std::collections::BTreeMap;

/// Index of `b` (or `b*` when `dual`) in the basis `[B0, B0*, B1, B1*]` of `T_A`.
pub fn trivext_index(a: &SuperAlgebra, i: usize, dual: bool) -> usize {
    let e = a.even_count();
    let o = a.dim() - e;
    match (i < e, dual) {
        (true, false) => i,
        (true, true) => e + i,
        (false, false) => 2 * e + (i - e),
        (false, true) => 2 * e + o + (i - e),
    }
}

/// Inverse of [`trivext_index`].
pub fn trivext_split(a: &SuperAlgebra, t: usize) -> (usize, bool) {
    let e = a.even_count();
    let o = a.dim() - e;
    if t < e {
        (t, false)
    } else if t < 2 * e {
        (t - e, true)
    } else if t < 2 * e + o {
        (t - e, false)
    } else {
        (t - e - o, true)
    }
}

/// `T_A = A ⊕ A*` with `(a,α)(b,β) = (ab, a·β + α·b)`.
///
/// When `A` is graded, `deg b* = 2 − deg b`.
pub fn trivial_extension(a: &SuperAlgebra) -> Result<SuperAlgebra> {
    let dim = a.dim();
    let mut labels = vec![None; 2 * dim];
    for i in 0..dim {
        let l = a.labels()[i].clone();
        labels[trivext_index(a, i, false)] = Some(l.clone());
        labels[trivext_index(a, i, true)] = Some(Label {
            name: format!("{}*", l.name),
            parity: l.parity,
            degree: l.degree.map(|d| 2 - d),
        });
    }
    let labels: Vec<Label> = labels.into_iter().map(|l| l.expect("all slots filled")).collect();
    let unit = a.unit().map_terms(|&i| Some((trivext_index(a, i, false), 1)));
    let product = |s: usize, t: usize| {
        let (i, di) = trivext_split(a, s);
        let (j, dj) = trivext_split(a, t);
        match (di, dj) {
            (false, false) => a.product(i, j).map_terms(|&k| Some((trivext_index(a, k, false), 1))),
            (true, true) => LinComb::new(),
            // i · j*  =  Σ_b κ^j_{b,i} b*
            (false, true) => LinComb::from_pairs((0..dim).map(|b| (trivext_index(a, b, true), a.kappa(j, b, i)))),
            // i* · j  =  Σ_b κ^i_{j,b} b*
            (true, false) => LinComb::from_pairs((0..dim).map(|b| (trivext_index(a, b, true), a.kappa(i, j, b)))),
        }
    };
    let mut meta = BTreeMap::new();
    meta.insert("construction".into(), format!("trivial extension of {}", a.name()));
    SuperAlgebra::build(&format!("T({})", a.name()), labels, unit, product, meta)
}

/// `M_n(A)` with basis `ξ^b_{r,s}` ordered by label, row, column.
pub fn matrix_superalgebra(a: &SuperAlgebra, n: usize) -> Result<SuperAlgebra> {
    if n == 0 {
        return Err(Error::Precondition("n must be positive".into()));
    }
    let sh = MatrixShape { labels: a.dim(), n };
    let mut labels = Vec::with_capacity(sh.len());
    for l in 0..sh.len() {
        let (b, r, s) = sh.decode(l as u16);
        let src = &a.labels()[b];
        labels.push(Label { name: format!("{}[{},{}]", src.name, r + 1, s + 1), parity: src.parity, degree: src.degree });
    }
    let mut unit = LinComb::new();
    for r in 0..n {
        for (&b, &c) in a.unit().iter() {
            unit.add_term(sh.encode(b, r, r) as usize, c);
        }
    }
    let product = |x: usize, y: usize| {
        let (b1, r, s) = sh.decode(x as u16);
        let (b2, t, u) = sh.decode(y as u16);
        if s != t {
            return LinComb::new();
        }
        a.product(b1, b2).map_terms(|&b| Some((sh.encode(b, r, u) as usize, 1)))
    };
    let mut meta = BTreeMap::new();
    meta.insert("construction".into(), format!("M_{n}({})", a.name()));
    SuperAlgebra::build(&format!("M{n}({})", a.name()), labels, unit, product, meta)
}

/// A linear map between superalgebras given on basis vectors.
#[derive(Clone, Debug)]
pub struct AlgebraMap {
    pub source: String,
    pub target: String,
    pub images: Vec<LinComb<usize>>,
}

impl AlgebraMap {
    pub fn apply(&self, x: &LinComb<usize>) -> LinComb<usize> {
        let mut out = LinComb::new();
        for (&i, &c) in x.iter() {
            out.add_scaled(&self.images[i], c);
        }
        out
    }

    /// Checks parity, unit and multiplicativity on all basis pairs.
    pub fn verify_homomorphism(&self, src: &SuperAlgebra, tgt: &SuperAlgebra) -> Result<()> {
        if self.images.len() != src.dim() {
            return Err(Error::Verification("map has the wrong number of images".into()));
        }
        for (i, im) in self.images.iter().enumerate() {
            if im.keys().any(|&k| tgt.parity(k) != src.parity(i)) {
                return Err(Error::Verification(format!("image of {} is not of the same parity", src.label(i))));
            }
        }
        if self.apply(src.unit()) != *tgt.unit() {
            return Err(Error::Verification("unit is not preserved".into()));
        }
        for i in 0..src.dim() {
            for j in 0..src.dim() {
                let l = self.apply(src.product(i, j));
                let r = tgt.mul(&self.images[i], &self.images[j]);
                if l != r {
                    return Err(Error::Verification(format!(
                        "map is not multiplicative on ({}, {})",
                        src.label(i),
                        src.label(j)
                    )));
                }
            }
        }
        Ok(())
    }

    /// If the map sends basis vectors bijectively to `± basis`, the target
    /// index and sign for each source index.
    pub fn as_signed_bijection(&self) -> Option<Vec<(usize, i64)>> {
        let mut seen = vec![false; self.images.len()];
        let mut out = Vec::with_capacity(self.images.len());
        for im in &self.images {
            if im.len() != 1 {
                return None;
            }
            let (&k, &c) = im.iter().next().unwrap();
            if c.abs() != 1 || k >= seen.len() || std::mem::replace(&mut seen[k], true) {
                return None;
            }
            out.push((k, c));
        }
        Some(out)
    }

    /// Checks that degrees are preserved (both algebras graded).
    pub fn preserves_grading(&self, src: &SuperAlgebra, tgt: &SuperAlgebra) -> bool {
        self.images.iter().enumerate().all(|(i, im)| im.keys().all(|&k| tgt.degree(k) == src.degree(i)))
    }
}

/// The isomorphism `M_n(T_A) → T_{M_n(A)}`,
/// `ξ^b_{r,s} ↦ ξ^b_{r,s}`, `ξ^{b*}_{r,s} ↦ (ξ^b_{s,r})*`.
///
/// Returns `(M_n(T_A), T_{M_n(A)}, map)`; the map is checked before returning.
pub fn matrix_trivext_iso(a: &SuperAlgebra, n: usize) -> Result<(SuperAlgebra, SuperAlgebra, AlgebraMap)> {
    let ta = trivial_extension(a)?;
    let mta = matrix_superalgebra(&ta, n)?;
    let ma = matrix_superalgebra(a, n)?;
    let tma = trivial_extension(&ma)?;
    let sh_t = MatrixShape { labels: ta.dim(), n };
    let sh = MatrixShape { labels: a.dim(), n };
    let images = (0..mta.dim())
        .map(|x| {
            let (t, r, s) = sh_t.decode(x as u16);
            let (b, dual) = trivext_split(a, t);
            let idx = if dual {
                trivext_index(&ma, sh.encode(b, s, r) as usize, true)
            } else {
                trivext_index(&ma, sh.encode(b, r, s) as usize, false)
            };
            LinComb::term(idx, 1)
        })
        .collect();
    let map = AlgebraMap { source: mta.fingerprint().to_string(), target: tma.fingerprint().to_string(), images };
    map.verify_homomorphism(&mta, &tma)?;
    Ok((mta, tma, map))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::superalgebra::preset;

    #[test]
    fn trivial_extension_of_integers() {
        let o = preset("trivial").unwrap();
        let t = trivial_extension(&o).unwrap();
        assert_eq!(t.dim(), 2);
        let y = t.index_of("1*").unwrap();
        assert!(t.product(y, y).is_zero());
        assert_eq!(*t.product(0, y), LinComb::term(y, 1));
    }

    #[test]
    fn trivial_extension_grading_of_path_algebra() {
        let p = preset("pq-a2").unwrap();
        let t = trivial_extension(&p).unwrap();
        let gr = t.graded_rank().unwrap();
        assert_eq!(gr, [(0, 2), (1, 2), (2, 2)].into_iter().collect());
    }

    #[test]
    fn matrix_units() {
        let o = preset("trivial").unwrap();
        let m = matrix_superalgebra(&o, 2).unwrap();
        assert_eq!(m.dim(), 4);
        let (e12, e21, e11) = (m.index_of("1[1,2]").unwrap(), m.index_of("1[2,1]").unwrap(), m.index_of("1[1,1]").unwrap());
        assert_eq!(*m.product(e12, e21), LinComb::term(e11, 1));
        assert_eq!(m.unit().len(), 2);
    }

    #[test]
    fn constructions_are_associative() {
        // construction runs the full axiom check
        let o = preset("trivial").unwrap();
        trivial_extension(&matrix_superalgebra(&o, 2).unwrap()).unwrap();
        matrix_superalgebra(&preset("zigzag-a2").unwrap(), 2).unwrap();
    }

    #[test]
    fn trivext_iso_is_a_basis_bijection() {
        for (name, n) in [("trivial", 1), ("trivial", 2), ("pq-a2", 2), ("dual", 2)] {
            let a = preset(name).unwrap();
            let (_, _, map) = matrix_trivext_iso(&a, n).unwrap();
            assert!(map.as_signed_bijection().is_some());
        }
        let o = preset("trivial").unwrap();
        let (mta, tma, map) = matrix_trivext_iso(&o, 1).unwrap();
        assert!(map.images.iter().enumerate().all(|(i, im)| *im == LinComb::term(i, 1)));
        assert_eq!(mta.dim(), tma.dim());
    }

    #[test]
    fn trivext_iso_sends_dual_entry_to_transposed_dual() {
        let o = preset("trivial").unwrap();
        let (mta, tma, map) = matrix_trivext_iso(&o, 2).unwrap();
        let src = mta.index_of("1*[1,2]").unwrap();
        let tgt = tma.index_of("1[2,1]*").unwrap();
        assert_eq!(map.images[src], LinComb::term(tgt, 1));
    }
}
