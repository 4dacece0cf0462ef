use super::{MatrixWeight, Perm};
use serde::{Deserialize, Serialize};
use smallvec::SmallVec;
use std::fmt;

/// A word of basis indices; letters are `u16` indices into some basis.
pub type Word = SmallVec<[u16; 8]>;

pub fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r = 1u64;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

/// A finite multiset of letters stored as a non-decreasing word.
///
/// This single representation serves for exponent tuples `𝐜 ∈ M^B_d`,
/// matrix tuples `𝐂 ∈ M^B(n,d)` (letters `b·n² + r·n + s`) and monomials.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default, Serialize, Deserialize)]
pub struct Monomial(pub Word);

impl Monomial {
    pub fn empty() -> Self {
        Monomial(Word::new())
    }

    pub fn from_letters(letters: &[u16]) -> Self {
        let mut w: Word = letters.iter().copied().collect();
        w.sort_unstable();
        Monomial(w)
    }

    pub fn letter(l: u16) -> Self {
        Monomial(smallvec::smallvec![l])
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn word(&self) -> &[u16] {
        &self.0
    }

    /// `(letter, multiplicity)` pairs in increasing letter order.
    pub fn counts(&self) -> SmallVec<[(u16, u8); 8]> {
        let mut out: SmallVec<[(u16, u8); 8]> = SmallVec::new();
        for &l in &self.0 {
            match out.last_mut() {
                Some((x, c)) if *x == l => *c += 1,
                _ => out.push((l, 1)),
            }
        }
        out
    }

    pub fn count(&self, l: u16) -> usize {
        self.0.iter().filter(|&&x| x == l).count()
    }

    /// `𝐂! = ∏ c_b!`.
    pub fn factorial(&self) -> u64 {
        self.counts().iter().map(|&(_, c)| factorial(c as usize)).product()
    }

    /// `∏ binom(c_b, d_b)`, zero unless `other ≤ self` entrywise.
    pub fn binomial(&self, other: &Monomial) -> u64 {
        let mut r = 1u64;
        for (l, c) in other.counts() {
            r *= binomial(self.count(l) as u64, c as u64);
            if r == 0 {
                return 0;
            }
        }
        r
    }

    pub fn add(&self, other: &Monomial) -> Monomial {
        let mut w = Word::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() || j < other.0.len() {
            if j == other.0.len() || (i < self.0.len() && self.0[i] <= other.0[j]) {
                w.push(self.0[i]);
                i += 1;
            } else {
                w.push(other.0[j]);
                j += 1;
            }
        }
        Monomial(w)
    }

    /// `self − other`, or `None` unless `other ≤ self`.
    pub fn sub(&self, other: &Monomial) -> Option<Monomial> {
        let mut w = Word::new();
        let mut j = 0;
        for &l in &self.0 {
            if j < other.0.len() && other.0[j] == l {
                j += 1;
            } else {
                if j < other.0.len() && other.0[j] < l {
                    return None;
                }
                w.push(l);
            }
        }
        if j == other.0.len() {
            Some(Monomial(w))
        } else {
            None
        }
    }

    /// All sub-multisets of the given size, in lex order.
    pub fn sub_multisets(&self, size: usize) -> Vec<Monomial> {
        let counts = self.counts();
        let mut out = Vec::new();
        let mut cur = Word::new();
        submulti(&counts, 0, size, &mut cur, &mut out);
        out
    }

    /// True if no odd letter repeats.
    pub fn is_admissible(&self, odd: impl Fn(u16) -> bool) -> bool {
        self.counts().iter().all(|&(l, c)| c <= 1 || !odd(l))
    }

    /// All distinct rearrangements, lexicographically ascending.
    pub fn orbit(&self) -> Vec<Word> {
        let mut cur: Vec<u16> = self.0.to_vec();
        let mut out = vec![Word::from_slice(&cur)];
        let d = cur.len();
        loop {
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
            out.push(Word::from_slice(&cur));
        }
        out
    }

    pub fn orbit_size(&self) -> u64 {
        factorial(self.degree()) / self.factorial()
    }

    /// Image under a letter map, re-sorted.
    pub fn map(&self, f: impl Fn(u16) -> u16) -> Monomial {
        Monomial::from_letters(&self.0.iter().map(|&l| f(l)).collect::<Vec<_>>())
    }
}

fn submulti(counts: &[(u16, u8)], i: usize, left: usize, cur: &mut Word, out: &mut Vec<Monomial>) {
    if left == 0 {
        out.push(Monomial(cur.clone()));
        return;
    }
    if i == counts.len() {
        return;
    }
    let rest: usize = counts[i + 1..].iter().map(|&(_, c)| c as usize).sum();
    let (l, c) = counts[i];
    let hi = (c as usize).min(left);
    let lo = left.saturating_sub(rest);
    for take in (lo..=hi).rev() {
        for _ in 0..take {
            cur.push(l);
        }
        submulti(counts, i + 1, left - take, cur, out);
        for _ in 0..take {
            cur.pop();
        }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, (l, c)) in self.counts().iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            if *c == 1 {
                write!(f, "{l}")?;
            } else {
                write!(f, "{l}^{c}")?;
            }
        }
        write!(f, "}}")
    }
}

/// All multisets of size `d` over letters `0..odd.len()` with odd letters at
/// most once, lexicographically ascending as sorted words.
pub fn enumerate_multisets(odd: &[bool], d: usize) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut cur = Word::new();
    multisets(odd, 0, d, &mut cur, &mut out);
    out
}

fn multisets(odd: &[bool], start: usize, left: usize, cur: &mut Word, out: &mut Vec<Monomial>) {
    if left == 0 {
        out.push(Monomial(cur.clone()));
        return;
    }
    for l in start..odd.len() {
        cur.push(l as u16);
        let next = if odd[l] { l + 1 } else { l };
        multisets(odd, next, left - 1, cur, out);
        cur.pop();
    }
}

/// Index arithmetic for the basis `ξ^b_{r,s}` of `M_n(A)`, ordered by
/// label, then row, then column.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MatrixShape {
    pub labels: usize,
    pub n: usize,
}

impl MatrixShape {
    pub fn len(&self) -> usize {
        self.labels * self.n * self.n
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn encode(&self, b: usize, r: usize, s: usize) -> u16 {
        (b * self.n * self.n + r * self.n + s) as u16
    }

    pub fn decode(&self, l: u16) -> (usize, usize, usize) {
        let l = l as usize;
        let nn = self.n * self.n;
        (l / nn, (l % nn) / self.n, l % self.n)
    }
}

/// `𝐂 ∈ M^B(n,d)`: one `n × n` matrix per label, stored as a multiset of
/// triples `(b, r, s)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct MatrixTuple {
    pub shape: MatrixShape,
    pub mono: Monomial,
}

impl MatrixTuple {
    pub fn matrix(&self, b: usize) -> MatrixWeight {
        let n = self.shape.n;
        let mut entries = vec![0; n * n];
        for &l in self.mono.word() {
            let (bb, r, s) = self.shape.decode(l);
            if bb == b {
                entries[r * n + s] += 1;
            }
        }
        MatrixWeight { n, entries }
    }

    /// The sum over all labels, `Σ_b C^b`.
    pub fn total(&self) -> MatrixWeight {
        let n = self.shape.n;
        let mut entries = vec![0; n * n];
        for &l in self.mono.word() {
            let (_, r, s) = self.shape.decode(l);
            entries[r * n + s] += 1;
        }
        MatrixWeight { n, entries }
    }

    /// Canonical triple sequence `(𝐫⁰, 𝐛⁰, 𝐬⁰)`.
    pub fn canonical_triples(&self) -> Vec<(usize, usize, usize)> {
        self.mono.word().iter().map(|&l| self.shape.decode(l)).collect()
    }

    /// The `S_d`-orbit of the canonical sequence, without repetition.
    pub fn orbit(&self) -> Vec<Word> {
        self.mono.orbit()
    }
}

/// `M^B(n,d)` in canonical order, for labels with the given parities.
pub fn enumerate_matrix_tuples(odd_labels: &[bool], n: usize, d: usize) -> Vec<MatrixTuple> {
    let shape = MatrixShape { labels: odd_labels.len(), n };
    let odd: Vec<bool> = (0..shape.len()).map(|l| odd_labels[l / (n * n)]).collect();
    enumerate_multisets(&odd, d)
        .into_iter()
        .map(|mono| MatrixTuple { shape, mono })
        .collect()
}

/// `(𝐂!, (𝐂 choose 𝐃))`.
pub fn matrix_factorial_binomial(c: &Monomial, d: &Monomial) -> (u64, u64) {
    (c.factorial(), c.binomial(d))
}

/// Sign `(−1)^{inversions among odd letters}` of a rearranged word.
pub fn odd_inversion_parity(word: &[u16], odd: impl Fn(u16) -> bool) -> bool {
    let mut p = false;
    for a in 0..word.len() {
        if !odd(word[a]) {
            continue;
        }
        for c in a + 1..word.len() {
            if odd(word[c]) && word[a] > word[c] {
                p = !p;
            }
        }
    }
    p
}

/// Applies `g` to a word by plain (unsigned) place permutation.
pub fn permute_word(word: &[u16], g: &Perm) -> Word {
    (0..word.len()).map(|a| word[g.image(a)]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn matrix_tuple_counts() {
        assert_eq!(enumerate_matrix_tuples(&[false], 2, 2).len(), 10);
        assert!(enumerate_matrix_tuples(&[true], 1, 2).is_empty());
        assert_eq!(enumerate_matrix_tuples(&[false, true], 1, 1).len(), 2);
    }

    #[test]
    fn orbit_sizes() {
        let single = Monomial::from_letters(&[3, 3, 3]);
        assert_eq!(single.orbit().len(), 1);
        assert_eq!(Monomial::from_letters(&[1, 2]).orbit().len(), 2);
        for d in 0..=4 {
            for m in enumerate_multisets(&[false, false, true, true], d) {
                let orb = m.orbit();
                assert_eq!(orb.len() as u64, m.orbit_size());
                let set: std::collections::BTreeSet<_> = orb.iter().cloned().collect();
                assert_eq!(set.len(), orb.len());
                assert_eq!(orb[0].as_slice(), m.word());
            }
        }
    }

    #[test]
    fn factorial_binomial_examples() {
        let c = Monomial::from_letters(&[0, 1, 2]);
        assert_eq!(matrix_factorial_binomial(&c, &Monomial::empty()).0, 1);
        let two = Monomial::from_letters(&[5, 5]);
        assert_eq!(two.binomial(&Monomial::letter(5)), 2);
        assert_eq!(Monomial::letter(5).binomial(&two), 0);
    }

    #[test]
    fn shape_roundtrip() {
        let sh = MatrixShape { labels: 3, n: 2 };
        for l in 0..sh.len() as u16 {
            let (b, r, s) = sh.decode(l);
            assert_eq!(sh.encode(b, r, s), l);
        }
    }

    #[test]
    fn sub_multisets_partition() {
        let c = Monomial::from_letters(&[0, 0, 1, 2, 2]);
        let mut total = 0;
        for k in 0..=5 {
            for d in c.sub_multisets(k) {
                assert_eq!(d.degree(), k);
                let e = c.sub(&d).unwrap();
                assert_eq!(d.add(&e), c);
                total += 1;
            }
        }
        assert_eq!(total, 3 * 2 * 3);
    }

    fn small_mono() -> impl Strategy<Value = Monomial> {
        proptest::collection::vec(0u16..4, 0..4).prop_map(|v| Monomial::from_letters(&v))
    }

    proptest! {
        #[test]
        fn binomial_factorial_identity(c in small_mono(), d in small_mono()) {
            let s = c.add(&d);
            prop_assert_eq!(s.binomial(&d) * c.factorial() * d.factorial(), s.factorial());
        }
    }
}
