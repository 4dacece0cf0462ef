use super::{enumerate_weights, MatrixWeight, Perm, Weight};

/// Which side the Young subgroup sits on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// Right cosets `S_λ g`, representatives `^λ𝒟`.
    Left,
    /// Left cosets `g S_λ`, representatives `𝒟^λ`.
    Right,
}

#[derive(Clone, Debug)]
pub struct CosetData {
    pub lambda: Weight,
    pub side: Side,
    pub representatives: Vec<Perm>,
}

/// The permutation in `^λ𝒟` whose sequence `r^λ g` equals `seq`.
///
/// Position `a` is sent to the next unused slot of block `Ω^λ_{seq_a}`.
pub fn coset_rep_of_sequence(lambda: &Weight, seq: &[usize]) -> Perm {
    let mut next: Vec<usize> = (0..lambda.n()).map(|s| lambda.block(s).start).collect();
    let images: Vec<usize> = seq
        .iter()
        .map(|&s| {
            let i = next[s];
            next[s] += 1;
            i
        })
        .collect();
    Perm::from_images(&images).expect("sequence does not have weight λ")
}

/// `r^λ g`: the block of `g(a)` for each position `a`.
pub fn sequence_of(lambda: &Weight, g: &Perm) -> Vec<usize> {
    g.act(&lambda.sequence())
}

/// Shortest representatives, in the order of their sequences (lex ascending).
pub fn shortest_coset_reps(lambda: &Weight, side: Side) -> CosetData {
    let mut seqs = Vec::new();
    let mut cur = Vec::with_capacity(lambda.size());
    let mut left = lambda.0.clone();
    sequences(&mut left, lambda.size(), &mut cur, &mut seqs);
    let reps = seqs
        .iter()
        .map(|s| {
            let g = coset_rep_of_sequence(lambda, s);
            match side {
                Side::Left => g,
                Side::Right => g.inverse(),
            }
        })
        .collect();
    CosetData { lambda: lambda.clone(), side, representatives: reps }
}

fn sequences(left: &mut [usize], d: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if cur.len() == d {
        out.push(cur.clone());
        return;
    }
    for s in 0..left.len() {
        if left[s] > 0 {
            left[s] -= 1;
            cur.push(s);
            sequences(left, d, cur, out);
            cur.pop();
            left[s] += 1;
        }
    }
}

/// Writes `g = k · rep` with `k ∈ S_λ` and `rep ∈ ^λ𝒟`.
pub fn split_right_coset(lambda: &Weight, g: &Perm) -> (Perm, Perm) {
    let rep = coset_rep_of_sequence(lambda, &sequence_of(lambda, g));
    let k = g.compose(&rep.inverse());
    (k, rep)
}

/// The double coset representative `g(C) ∈ ^μ𝒟^λ` with `μ = α(C)`, `λ = β(C)`.
pub fn double_coset_rep(c: &MatrixWeight) -> Perm {
    let n = c.n;
    let lambda = c.beta();
    let mu = c.alpha();
    let mut next: Vec<usize> = (0..n).map(|r| mu.block(r).start).collect();
    let mut images = vec![0; c.size()];
    for s in 0..n {
        let mut pos = lambda.block(s).start;
        for r in 0..n {
            for _ in 0..c.get(r, s) {
                images[pos] = next[r];
                next[r] += 1;
                pos += 1;
            }
        }
    }
    Perm::from_images(&images).expect("margins are consistent")
}

/// `g(C) · (g_1, …, g_n)` with `g_s` acting on `Ω^λ_s`.
pub fn ldj_product(c: &MatrixWeight, parts: &[Perm]) -> Perm {
    double_coset_rep(c).compose(&Perm::juxtapose(parts))
}

/// All `(μ, λ)` pairs of weights for fixed `n, d`.
pub fn weight_pairs(n: usize, d: usize) -> Vec<(Weight, Weight)> {
    let ws = enumerate_weights(n, d);
    let mut out = Vec::new();
    for mu in &ws {
        for la in &ws {
            out.push((mu.clone(), la.clone()));
        }
    }
    out
}
