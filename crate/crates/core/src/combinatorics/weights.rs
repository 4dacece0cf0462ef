use serde::{Deserialize, Serialize};

/// A composition `(λ_1, …, λ_n)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct Weight(pub Vec<usize>);

impl Weight {
    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    /// `Ω^λ_s` as a half-open range of 0-based positions.
    pub fn block(&self, s: usize) -> std::ops::Range<usize> {
        let start: usize = self.0[..s].iter().sum();
        start..start + self.0[s]
    }

    /// The sequence `1^{λ_1} 2^{λ_2} …` (0-based letters).
    pub fn sequence(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(s, &m)| std::iter::repeat(s).take(m))
            .collect()
    }

    /// `|S_d : S_λ|`.
    pub fn coset_count(&self) -> u64 {
        let mut r = super::factorial(self.size());
        for &m in &self.0 {
            r /= super::factorial(m);
        }
        r
    }

    /// Weight of a sequence over `[0, n)`.
    pub fn of_sequence(seq: &[usize], n: usize) -> Weight {
        let mut w = vec![0; n];
        for &s in seq {
            w[s] += 1;
        }
        Weight(w)
    }
}

/// All compositions of `d` into `n` parts, lexicographically descending.
pub fn enumerate_weights(n: usize, d: usize) -> Vec<Weight> {
    assert!(n >= 1, "n must be positive");
    let mut out = Vec::new();
    let mut cur = vec![0; n];
    fill(&mut cur, 0, d, &mut out);
    out
}

fn fill(cur: &mut Vec<usize>, i: usize, rest: usize, out: &mut Vec<Weight>) {
    if i + 1 == cur.len() {
        cur[i] = rest;
        out.push(Weight(cur.clone()));
        return;
    }
    for v in (0..=rest).rev() {
        cur[i] = v;
        fill(cur, i + 1, rest - v, out);
    }
}

/// A composition indexed by `[0,n) × [0,l)` in lexicographic order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct ColoredWeight {
    pub n: usize,
    pub colors: usize,
    /// Row-major: entry `(r, i)` at `r * colors + i`.
    pub entries: Vec<usize>,
}

impl ColoredWeight {
    pub fn get(&self, r: usize, i: usize) -> usize {
        self.entries[r * self.colors + i]
    }

    pub fn size(&self) -> usize {
        self.entries.iter().sum()
    }

    /// Row sums `π(𝝀)`.
    pub fn pi(&self) -> Weight {
        Weight(
            (0..self.n)
                .map(|r| (0..self.colors).map(|i| self.get(r, i)).sum())
                .collect(),
        )
    }

    /// The flat composition over `[0,n)×[0,l)`; its blocks are the `Ω` sets.
    pub fn flat(&self) -> Weight {
        Weight(self.entries.clone())
    }

    /// Prepends a row holding a single `1` in color `k`.
    pub fn hat(&self, k: usize) -> ColoredWeight {
        let mut entries = vec![0; self.colors];
        entries[k] = 1;
        entries.extend_from_slice(&self.entries);
        ColoredWeight { n: self.n + 1, colors: self.colors, entries }
    }
}

pub fn enumerate_colored_weights(n: usize, colors: usize, d: usize) -> Vec<ColoredWeight> {
    enumerate_weights(n * colors, d)
        .into_iter()
        .map(|w| ColoredWeight { n, colors, entries: w.0 })
        .collect()
}

/// An `n × n` matrix of non-negative integers.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct MatrixWeight {
    pub n: usize,
    pub entries: Vec<usize>,
}

impl MatrixWeight {
    pub fn get(&self, r: usize, s: usize) -> usize {
        self.entries[r * self.n + s]
    }

    pub fn size(&self) -> usize {
        self.entries.iter().sum()
    }

    /// Row sums.
    pub fn alpha(&self) -> Weight {
        Weight((0..self.n).map(|r| (0..self.n).map(|s| self.get(r, s)).sum()).collect())
    }

    /// Column sums.
    pub fn beta(&self) -> Weight {
        Weight((0..self.n).map(|s| (0..self.n).map(|r| self.get(r, s)).sum()).collect())
    }

    pub fn diagonal(w: &Weight) -> MatrixWeight {
        let n = w.n();
        let mut entries = vec![0; n * n];
        for r in 0..n {
            entries[r * n + r] = w.0[r];
        }
        MatrixWeight { n, entries }
    }

    /// All matrices with the given row and column sums.
    pub fn with_margins(mu: &Weight, lambda: &Weight) -> Vec<MatrixWeight> {
        let n = mu.n();
        assert_eq!(n, lambda.n());
        let mut out = Vec::new();
        let mut entries = vec![0; n * n];
        let mut col_left = lambda.0.clone();
        margins(0, 0, n, &mu.0, &mut col_left, mu.0.first().copied().unwrap_or(0), &mut entries, &mut out);
        out
    }
}

#[allow(clippy::too_many_arguments)]
fn margins(
    r: usize,
    s: usize,
    n: usize,
    mu: &[usize],
    col_left: &mut [usize],
    row_left: usize,
    entries: &mut [usize],
    out: &mut Vec<MatrixWeight>,
) {
    if r == n {
        if col_left.iter().all(|&c| c == 0) {
            out.push(MatrixWeight { n, entries: entries.to_vec() });
        }
        return;
    }
    if s + 1 == n {
        if row_left > col_left[s] {
            return;
        }
        entries[r * n + s] = row_left;
        col_left[s] -= row_left;
        let next_row = if r + 1 < n { mu[r + 1] } else { 0 };
        margins(r + 1, 0, n, mu, col_left, next_row, entries, out);
        col_left[s] += row_left;
        return;
    }
    for v in 0..=row_left.min(col_left[s]) {
        entries[r * n + s] = v;
        col_left[s] -= v;
        margins(r, s + 1, n, mu, col_left, row_left - v, entries, out);
        col_left[s] += v;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights_small() {
        let w = enumerate_weights(2, 2);
        assert_eq!(w, vec![Weight(vec![2, 0]), Weight(vec![1, 1]), Weight(vec![0, 2])]);
        assert_eq!(enumerate_weights(4, 0), vec![Weight(vec![0; 4])]);
        assert_eq!(enumerate_weights(3, 2).len(), 6);
    }

    #[test]
    fn weight_counts_match_stars_and_bars() {
        for n in 1..5 {
            for d in 0..5 {
                let expect = super::super::binomial((n + d - 1) as u64, d as u64);
                assert_eq!(enumerate_weights(n, d).len() as u64, expect);
            }
        }
    }

    #[test]
    fn margins_enumeration() {
        let mu = Weight(vec![1, 1]);
        let all = MatrixWeight::with_margins(&mu, &mu);
        assert_eq!(all.len(), 2);
        for m in &all {
            assert_eq!(m.alpha(), mu);
            assert_eq!(m.beta(), mu);
        }
    }

    #[test]
    fn hat_prepends_row() {
        let w = ColoredWeight { n: 1, colors: 2, entries: vec![0, 1] };
        let h = w.hat(0);
        assert_eq!(h.entries, vec![1, 0, 0, 1]);
        assert_eq!(h.pi(), Weight(vec![1, 1]));
    }
}
