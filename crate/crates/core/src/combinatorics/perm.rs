use smallvec::SmallVec;
use std::fmt;

/// A permutation of `[0, d)` stored one-line: `images[a] = g(a)`.
///
/// Composition is `(g * h)(a) = g(h(a))`. On sequences and tensor words the
/// right place action is `(s^g)_a = s_{g(a)}`, so `(s^g)^h = s^{gh}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Perm(SmallVec<[u8; 8]>);

impl Perm {
    pub fn identity(d: usize) -> Self {
        Perm((0..d as u8).collect())
    }

    /// Builds from 0-based images; returns `None` unless a bijection.
    pub fn from_images(images: &[usize]) -> Option<Self> {
        let d = images.len();
        let mut seen = vec![false; d];
        for &i in images {
            if i >= d || seen[i] {
                return None;
            }
            seen[i] = true;
        }
        Some(Perm(images.iter().map(|&i| i as u8).collect()))
    }

    /// Adjacent transposition swapping `r` and `r + 1`.
    pub fn transposition(d: usize, r: usize) -> Self {
        let mut p = Self::identity(d);
        p.0.swap(r, r + 1);
        p
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn image(&self, a: usize) -> usize {
        self.0[a] as usize
    }

    pub fn images(&self) -> Vec<usize> {
        self.0.iter().map(|&i| i as usize).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(a, &i)| a == i as usize)
    }

    /// `self * other`, i.e. apply `other` first.
    pub fn compose(&self, other: &Perm) -> Perm {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        Perm(other.0.iter().map(|&a| self.0[a as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv: SmallVec<[u8; 8]> = SmallVec::from_elem(0, self.degree());
        for (a, &i) in self.0.iter().enumerate() {
            inv[i as usize] = a as u8;
        }
        Perm(inv)
    }

    /// Coxeter length, the number of inversions.
    pub fn length(&self) -> usize {
        let d = self.degree();
        let mut n = 0;
        for a in 0..d {
            for c in a + 1..d {
                if self.0[a] > self.0[c] {
                    n += 1;
                }
            }
        }
        n
    }

    /// Indices `r` with `self = s_{r_1} * s_{r_2} * ... ` reduced.
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut g = self.clone();
        let mut rec = Vec::new();
        'outer: loop {
            for a in 0..g.degree().saturating_sub(1) {
                if g.0[a] > g.0[a + 1] {
                    rec.push(a);
                    g.0.swap(a, a + 1);
                    continue 'outer;
                }
            }
            break;
        }
        rec.reverse();
        rec
    }

    /// Right place action on a sequence: `(s^g)_a = s_{g(a)}`.
    pub fn act<T: Clone>(&self, s: &[T]) -> Vec<T> {
        assert_eq!(s.len(), self.degree());
        self.0.iter().map(|&i| s[i as usize].clone()).collect()
    }

    /// All of `S_d` in lexicographic order of one-line notation.
    pub fn all(d: usize) -> Vec<Perm> {
        let mut out = Vec::new();
        let mut cur: Vec<usize> = (0..d).collect();
        loop {
            out.push(Perm(cur.iter().map(|&i| i as u8).collect()));
            // next permutation
            let mut i = d;
            while i > 1 && cur[i - 2] >= cur[i - 1] {
                i -= 1;
            }
            if i <= 1 {
                break;
            }
            let mut j = d - 1;
            while cur[j] <= cur[i - 2] {
                j -= 1;
            }
            cur.swap(i - 2, j);
            cur[i - 1..].reverse();
        }
        out
    }

    /// Places `parts` side by side as an element of the Young subgroup.
    pub fn juxtapose(parts: &[Perm]) -> Perm {
        let mut v: SmallVec<[u8; 8]> = SmallVec::new();
        let mut off = 0u8;
        for p in parts {
            v.extend(p.0.iter().map(|&i| i + off));
            off += p.degree() as u8;
        }
        Perm(v)
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, i) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", i + 1)?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn composition_applies_right_factor_first() {
        let g = Perm::from_images(&[1, 2, 0]).unwrap();
        let h = Perm::transposition(3, 0);
        let gh = g.compose(&h);
        for a in 0..3 {
            assert_eq!(gh.image(a), g.image(h.image(a)));
        }
    }

    #[test]
    fn right_action_law() {
        let s = ['a', 'b', 'c', 'd'];
        for g in Perm::all(4) {
            for h in Perm::all(4).iter().step_by(5) {
                assert_eq!(h.act(&g.act(&s)), g.compose(h).act(&s));
            }
        }
    }

    #[test]
    fn reduced_word_multiplies_back() {
        for g in Perm::all(4) {
            let w = g.reduced_word();
            assert_eq!(w.len(), g.length());
            let mut p = Perm::identity(4);
            for &r in &w {
                p = p.compose(&Perm::transposition(4, r));
            }
            assert_eq!(p, g);
        }
    }

    #[test]
    fn all_counts() {
        assert_eq!(Perm::all(0).len(), 1);
        assert_eq!(Perm::all(4).len(), 24);
        assert_eq!(Perm::all(3).iter().map(|g| g.length()).sum::<usize>(), 9);
    }

    #[test]
    fn display_is_one_based() {
        assert_eq!(Perm::transposition(2, 0).to_string(), "[2 1]");
    }
}
