//! Sparse integer linear combinations.
//!
//! Coefficients are `i64`. Every build profile keeps overflow checks on, so
//! an overflow aborts loudly instead of wrapping. Lattice reductions, where
//! entries genuinely grow, switch to [`crate::Int`].

use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinComb<K: Ord> {
    terms: BTreeMap<K, i64>,
}

impl<K: Ord> Default for LinComb<K> {
    fn default() -> Self {
        LinComb { terms: BTreeMap::new() }
    }
}

impl<K: Ord + Clone> LinComb<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn term(k: K, c: i64) -> Self {
        let mut s = Self::new();
        s.add_term(k, c);
        s
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (K, i64)>) -> Self {
        let mut s = Self::new();
        for (k, c) in pairs {
            s.add_term(k, c);
        }
        s
    }

    pub fn add_term(&mut self, k: K, c: i64) {
        if c == 0 {
            return;
        }
        match self.terms.entry(k) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let v = *e.get() + c;
                if v == 0 {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &LinComb<K>, c: i64) {
        if c == 0 {
            return;
        }
        for (k, v) in &other.terms {
            self.add_term(k.clone(), v * c);
        }
    }

    pub fn scaled(&self, c: i64) -> Self {
        if c == 0 {
            return Self::new();
        }
        LinComb { terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect() }
    }

    pub fn get(&self, k: &K) -> i64 {
        self.terms.get(k).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &i64)> {
        self.terms.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.terms.keys()
    }

    /// Relabels terms; `f` returns the new key and a sign/scale, or `None` to drop.
    pub fn map_terms<L: Ord + Clone>(&self, mut f: impl FnMut(&K) -> Option<(L, i64)>) -> LinComb<L> {
        let mut out = LinComb::new();
        for (k, v) in &self.terms {
            if let Some((l, s)) = f(k) {
                out.add_term(l, v * s);
            }
        }
        out
    }

    /// Coefficients reduced into `[0, p)`, zeros dropped.
    pub fn reduce_mod(&self, p: i64) -> Self {
        Self::from_pairs(self.terms.iter().map(|(k, v)| (k.clone(), v.rem_euclid(p))))
    }

    /// True if every coefficient is divisible by `m`.
    pub fn divisible_by(&self, m: i64) -> bool {
        self.terms.values().all(|v| v % m == 0)
    }

    pub fn divided(&self, m: i64) -> Option<Self> {
        if !self.divisible_by(m) {
            return None;
        }
        Some(LinComb { terms: self.terms.iter().map(|(k, v)| (k.clone(), v / m)).collect() })
    }
}

impl<K: Ord + Clone> std::ops::Add for &LinComb<K> {
    type Output = LinComb<K>;
    fn add(self, rhs: &LinComb<K>) -> LinComb<K> {
        let mut out = self.clone();
        out.add_scaled(rhs, 1);
        out
    }
}

impl<K: Ord + Clone> std::ops::Sub for &LinComb<K> {
    type Output = LinComb<K>;
    fn sub(self, rhs: &LinComb<K>) -> LinComb<K> {
        let mut out = self.clone();
        out.add_scaled(rhs, -1);
        out
    }
}

impl<K: Ord + fmt::Debug> fmt::Debug for LinComb<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (k, v)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{v}·{k:?}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cancellation_drops_keys() {
        let mut a = LinComb::term(1u32, 3);
        a.add_term(1, -3);
        assert!(a.is_zero());
        a.add_term(2, 0);
        assert!(a.is_zero());
    }

    #[test]
    fn arithmetic() {
        let a = LinComb::from_pairs([(1u32, 2), (2, 1)]);
        let b = LinComb::from_pairs([(2u32, -1), (3, 4)]);
        let s = &a + &b;
        assert_eq!(s, LinComb::from_pairs([(1, 2), (3, 4)]));
        assert_eq!(&s - &b, a);
        assert_eq!(a.reduce_mod(2), LinComb::term(2, 1));
    }
}
