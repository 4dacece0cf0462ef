//! Quivers, their path algebras `P_Q` and zigzag algebras, the isomorphism
//! `T_{P_Q} ≅ Z`, adapted idempotents, desuperization, alternating modules
//! and the schiver double.

pub mod desuper;
pub mod schiver;

use crate::superalgebra::{trivext_split, trivial_extension, AlgebraMap, Label, SuperAlgebra};
use crate::{Error, LinComb, Result};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, VecDeque};

/// Wire format `{ "vertices": l, "edges": [[s, t], …] }` with 1-based vertices.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct QuiverFile {
    pub vertices: usize,
    pub edges: Vec<[usize; 2]>,
}

/// A connected quiver without loops or multiple edges; vertices are 0-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    vertices: usize,
    /// `(source, target)` pairs.
    edges: Vec<(usize, usize)>,
}

impl Quiver {
    pub fn new(vertices: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        if vertices == 0 {
            return Err(Error::Quiver("no vertices".into()));
        }
        let mut seen = std::collections::BTreeSet::new();
        for &(s, t) in &edges {
            if s >= vertices || t >= vertices {
                return Err(Error::Quiver(format!("edge ({}, {}) leaves the vertex set", s + 1, t + 1)));
            }
            if s == t {
                return Err(Error::Quiver(format!("loop at vertex {}", s + 1)));
            }
            if !seen.insert((s.min(t), s.max(t))) {
                return Err(Error::Quiver(format!("multiple edges between {} and {}", s + 1, t + 1)));
            }
        }
        let q = Quiver { vertices, edges };
        if q.components() != 1 {
            return Err(Error::Quiver("underlying graph is not connected".into()));
        }
        Ok(q)
    }

    pub fn from_file(f: &QuiverFile) -> Result<Self> {
        let edges = f
            .edges
            .iter()
            .map(|&[s, t]| {
                if s == 0 || t == 0 {
                    Err(Error::Quiver("vertices are numbered from 1".into()))
                } else {
                    Ok((s - 1, t - 1))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Quiver::new(f.vertices, edges)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Self::from_file(&serde_json::from_str(s)?)
    }

    /// `1 → 2 → … → l`.
    pub fn type_a(l: usize) -> Result<Self> {
        Quiver::new(l, (1..l).map(|i| (i - 1, i)).collect())
    }

    pub fn reversed(&self) -> Self {
        Quiver { vertices: self.vertices, edges: self.edges.iter().map(|&(s, t)| (t, s)).collect() }
    }

    pub fn vertices(&self) -> usize {
        self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, i: usize) -> Vec<usize> {
        let mut v: Vec<usize> = self
            .edges
            .iter()
            .filter_map(|&(s, t)| if s == i { Some(t) } else if t == i { Some(s) } else { None })
            .collect();
        v.sort_unstable();
        v
    }

    fn components(&self) -> usize {
        let mut comp = vec![usize::MAX; self.vertices];
        let mut count = 0;
        for start in 0..self.vertices {
            if comp[start] != usize::MAX {
                continue;
            }
            let mut q = VecDeque::from([start]);
            comp[start] = count;
            while let Some(v) = q.pop_front() {
                for w in self.neighbors(v) {
                    if comp[w] == usize::MAX {
                        comp[w] = count;
                        q.push_back(w);
                    }
                }
            }
            count += 1;
        }
        count
    }

    /// BFS 2-colouring with vertex 1 assigned `+1`; error on an odd cycle.
    pub fn bipartition_signs(&self) -> Result<Vec<i8>> {
        let mut z = vec![0i8; self.vertices];
        z[0] = 1;
        let mut q = VecDeque::from([0]);
        while let Some(v) = q.pop_front() {
            for w in self.neighbors(v) {
                if z[w] == 0 {
                    z[w] = -z[v];
                    q.push_back(w);
                } else if z[w] == z[v] {
                    return Err(Error::Quiver(format!(
                        "odd cycle through vertices {} and {}; desuperization needs a bipartite graph",
                        v + 1,
                        w + 1
                    )));
                }
            }
        }
        Ok(z)
    }

    fn edge_name(s: usize, t: usize) -> String {
        format!("b{}to{}", s + 1, t + 1)
    }

    /// `P_Q`: vertices even in degree 0, arrows odd in degree 1, all paths of
    /// length two zero. An arrow `β` from `j` to `i` satisfies `β = e_i β e_j`.
    pub fn path_algebra(&self) -> Result<SuperAlgebra> {
        let l = self.vertices;
        let mut labels: Vec<Label> =
            (0..l).map(|i| Label { name: format!("e{}", i + 1), parity: 0, degree: Some(0) }).collect();
        for &(s, t) in &self.edges {
            labels.push(Label { name: Self::edge_name(s, t), parity: 1, degree: Some(1) });
        }
        let unit = LinComb::from_pairs((0..l).map(|i| (i, 1)));
        let edges = self.edges.clone();
        let product = |x: usize, y: usize| -> LinComb<usize> {
            match (x < l, y < l) {
                (true, true) => {
                    if x == y {
                        LinComb::term(x, 1)
                    } else {
                        LinComb::new()
                    }
                }
                (true, false) => {
                    let (_, t) = edges[y - l];
                    if t == x {
                        LinComb::term(y, 1)
                    } else {
                        LinComb::new()
                    }
                }
                (false, true) => {
                    let (s, _) = edges[x - l];
                    if s == y {
                        LinComb::term(x, 1)
                    } else {
                        LinComb::new()
                    }
                }
                (false, false) => LinComb::new(),
            }
        };
        let mut meta = BTreeMap::new();
        meta.insert("quiver".into(), self.describe());
        SuperAlgebra::build(&format!("P({})", self.describe()), labels, unit, product, meta)
    }

    pub fn describe(&self) -> String {
        let e: Vec<String> = self.edges.iter().map(|&(s, t)| format!("{}>{}", s + 1, t + 1)).collect();
        format!("{}:{}", self.vertices, e.join(","))
    }

    /// Ordered list of zigzag arrows `a^{i,j}` (from `j` to `i`) as `(i, j)`.
    pub fn zigzag_arrows(&self) -> Vec<(usize, usize)> {
        let mut v = Vec::new();
        for i in 0..self.vertices {
            for j in self.neighbors(i) {
                v.push((i, j));
            }
        }
        v
    }

    /// The zigzag algebra with basis `e_i`, `c_i`, `a^{i,j}`, graded by path length.
    pub fn zigzag(&self) -> Result<SuperAlgebra> {
        let l = self.vertices;
        let arrows = self.zigzag_arrows();
        let mut labels: Vec<Label> =
            (0..l).map(|i| Label { name: format!("e{}", i + 1), parity: 0, degree: Some(0) }).collect();
        labels.extend((0..l).map(|i| Label { name: format!("c{}", i + 1), parity: 0, degree: Some(2) }));
        labels.extend(
            arrows.iter().map(|&(i, j)| Label { name: format!("a{}{}", i + 1, j + 1), parity: 1, degree: Some(1) }),
        );
        // (left vertex, right vertex) of each basis element: x = e_left x e_right
        let ends = |x: usize| -> (usize, usize) {
            if x < l {
                (x, x)
            } else if x < 2 * l {
                (x - l, x - l)
            } else {
                arrows[x - 2 * l]
            }
        };
        let product = |x: usize, y: usize| -> LinComb<usize> {
            let ((xl, xr), (yl, yr)) = (ends(x), ends(y));
            if xr != yl {
                return LinComb::new();
            }
            if x < l {
                return LinComb::term(y, 1);
            }
            if y < l {
                return LinComb::term(x, 1);
            }
            // both of positive length
            if x >= 2 * l && y >= 2 * l && xl == yr {
                return LinComb::term(l + xl, 1);
            }
            LinComb::new()
        };
        let mut meta = BTreeMap::new();
        meta.insert("quiver".into(), self.describe());
        for i in 0..l {
            if let Some(&j) = self.neighbors(i).first() {
                meta.insert(format!("c_neighbor.{}", i + 1), format!("{}", j + 1));
            }
        }
        let name = format!("Z({})", self.describe());
        let z = SuperAlgebra::build(&name, labels, LinComb::from_pairs((0..l).map(|i| (i, 1))), product, meta)?;
        self.check_zigzag_relations(&z)?;
        Ok(z)
    }

    /// Length-three paths vanish, non-cycles of length two vanish and all
    /// `a^{i,j} a^{j,i}` agree for fixed `i`.
    pub fn check_zigzag_relations(&self, z: &SuperAlgebra) -> Result<()> {
        let l = self.vertices;
        let arrows = self.zigzag_arrows();
        let a = |i: usize, j: usize| 2 * l + arrows.iter().position(|&p| p == (i, j)).expect("arrow exists");
        for &(i, j) in &arrows {
            for &(k, m) in &arrows {
                let p = z.product(a(i, j), a(k, m));
                if j != k {
                    if !p.is_zero() {
                        return Err(Error::Quiver("product of non-composable arrows is nonzero".into()));
                    }
                } else if i != m {
                    if !p.is_zero() {
                        return Err(Error::Quiver(format!("non-cycle path a{}{}a{}{} is nonzero", i + 1, j + 1, k + 1, m + 1)));
                    }
                } else if *p != LinComb::term(l + i, 1) {
                    return Err(Error::Quiver(format!("cycle at {} differs from c{}", i + 1, i + 1)));
                }
                for &(u, v) in &arrows {
                    if !z.mul(p, &LinComb::term(a(u, v), 1)).is_zero() {
                        return Err(Error::Quiver("a path of length three is nonzero".into()));
                    }
                }
            }
        }
        Ok(())
    }

    /// The isomorphism `T_{P_Q} → Z` with `e_i ↦ e_i`, `e_i* ↦ c^{(i)}`,
    /// `β ↦ a^{i,j}`, `β* ↦ a^{j,i}` for `β` from `j` to `i`. Verified.
    pub fn trivext_zigzag_iso(&self) -> Result<(SuperAlgebra, SuperAlgebra, AlgebraMap)> {
        let p = self.path_algebra()?;
        let t = trivial_extension(&p)?;
        let z = self.zigzag()?;
        let l = self.vertices;
        let arrows = self.zigzag_arrows();
        let a = |i: usize, j: usize| 2 * l + arrows.iter().position(|&x| x == (i, j)).expect("arrow exists");
        let images = (0..t.dim())
            .map(|x| {
                let (b, dual) = trivext_split(&p, x);
                let img = if b < l {
                    if dual {
                        l + b
                    } else {
                        b
                    }
                } else {
                    let (s, tt) = self.edges[b - l];
                    if dual {
                        a(s, tt)
                    } else {
                        a(tt, s)
                    }
                };
                LinComb::term(img, 1)
            })
            .collect();
        let map = AlgebraMap { source: t.fingerprint().into(), target: z.fingerprint().into(), images };
        map.verify_homomorphism(&t, &z)?;
        if map.as_signed_bijection().is_none() || !map.preserves_grading(&t, &z) {
            return Err(Error::Verification("T_P → Z is not a graded basis bijection".into()));
        }
        Ok((t, z, map))
    }

    /// `(e^0, e^1)` from the bipartition signs, as elements of `Z`.
    pub fn adapted_idempotents(&self, z: &SuperAlgebra) -> Result<(LinComb<usize>, LinComb<usize>)> {
        let zeta = self.bipartition_signs()?;
        let e0 = LinComb::from_pairs((0..self.vertices).filter(|&i| zeta[i] == 1).map(|i| (z.index_of(&format!("e{}", i + 1)).unwrap(), 1)));
        let e1 = LinComb::from_pairs((0..self.vertices).filter(|&i| zeta[i] == -1).map(|i| (z.index_of(&format!("e{}", i + 1)).unwrap(), 1)));
        Ok((e0, e1))
    }
}

/// Checks that `(e^0, e^1)` is an adapted pair: orthogonal idempotents summing
/// to 1 with `A_0 = e^0Ae^0 ⊕ e^1Ae^1` and `A_1 = e^0Ae^1 ⊕ e^1Ae^0`.
///
/// For every basis element `b`, the four corners `e^ε b e^δ` must lie in the
/// right parity and add back to `b`.
pub fn check_adapted_pair(a: &SuperAlgebra, e0: &LinComb<usize>, e1: &LinComb<usize>) -> Result<()> {
    if &(e0 + e1) != a.unit() {
        return Err(Error::Precondition("e^0 + e^1 is not the unit".into()));
    }
    if a.mul(e0, e0) != *e0 || a.mul(e1, e1) != *e1 || !a.mul(e0, e1).is_zero() || !a.mul(e1, e0).is_zero() {
        return Err(Error::Precondition("e^0, e^1 are not orthogonal idempotents".into()));
    }
    let es = [e0, e1];
    for b in 0..a.dim() {
        let x = LinComb::term(b, 1);
        for (u, eu) in es.iter().enumerate() {
            for (v, ev) in es.iter().enumerate() {
                let corner = a.mul(&a.mul(eu, &x), ev);
                let want_odd = u != v;
                if corner.keys().any(|&k| a.is_odd(k) != want_odd) {
                    return Err(Error::Precondition(format!(
                        "not adapted: e^{u} {} e^{v} has a component of the wrong parity",
                        a.label(b)
                    )));
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(Quiver::new(2, vec![(0, 0)]).is_err());
        assert!(Quiver::new(2, vec![(0, 1), (1, 0)]).is_err());
        assert!(Quiver::new(3, vec![(0, 1)]).is_err());
        assert!(Quiver::from_json(r#"{"vertices":3,"edges":[[1,2],[3,2]]}"#).is_ok());
    }

    #[test]
    fn odd_cycle_is_rejected_for_signs() {
        let tri = Quiver::new(3, vec![(0, 1), (1, 2), (2, 0)]).unwrap();
        assert!(matches!(tri.bipartition_signs(), Err(Error::Quiver(_))));
        assert_eq!(Quiver::type_a(3).unwrap().bipartition_signs().unwrap(), vec![1, -1, 1]);
    }

    #[test]
    fn ltz_for_small_quivers() {
        for q in [Quiver::type_a(1).unwrap(), Quiver::type_a(2).unwrap(), Quiver::type_a(3).unwrap(), Quiver::type_a(3).unwrap().reversed()] {
            q.trivext_zigzag_iso().unwrap();
        }
        let star = Quiver::new(4, vec![(0, 1), (2, 1), (1, 3)]).unwrap();
        star.trivext_zigzag_iso().unwrap();
    }

    #[test]
    fn zigzag_cycle_product() {
        let z = Quiver::type_a(2).unwrap().zigzag().unwrap();
        let (a12, a21) = (z.index_of("a12").unwrap(), z.index_of("a21").unwrap());
        assert_eq!(*z.product(a12, a21), LinComb::term(z.index_of("c1").unwrap(), 1));
        assert_eq!(z.meta().get("c_neighbor.1").map(String::as_str), Some("2"));
    }

    #[test]
    fn adapted_pairs() {
        let q = Quiver::type_a(2).unwrap();
        let z = q.zigzag().unwrap();
        let (e0, e1) = q.adapted_idempotents(&z).unwrap();
        check_adapted_pair(&z, &e0, &e1).unwrap();
        let o = crate::superalgebra::preset("dual").unwrap();
        check_adapted_pair(&o, o.unit(), &LinComb::new()).unwrap();
        // an odd element in a one-block decomposition is not adapted
        let ext = crate::superalgebra::preset("exterior").unwrap();
        assert!(check_adapted_pair(&ext, ext.unit(), &LinComb::new()).is_err());
    }
}
