use super::{matrix_superalgebra, Label, SuperAlgebra};
use crate::quiver::Quiver;
use crate::{Error, LinComb, Result};
use std::collections::BTreeMap;

pub fn preset_names() -> &'static [&'static str] {
    &["trivial", "dual", "exterior", "matrix<N>", "pq-a<L>", "pq-a<L>-rev", "zigzag-a<L>"]
}

fn lab(name: &str, parity: u8, degree: Option<i32>) -> Label {
    Label { name: name.into(), parity, degree }
}

/// The ring of integers as a purely even algebra in degree 0.
pub fn integers() -> SuperAlgebra {
    SuperAlgebra::build("O", vec![lab("1", 0, Some(0))], LinComb::term(0, 1), |_, _| LinComb::term(0, 1), BTreeMap::new())
        .expect("valid")
}

/// `𝒪[ε]/(ε²)` with `ε` of the given parity.
fn square_zero(name: &str, odd: bool) -> SuperAlgebra {
    let labels = vec![lab("1", 0, None), lab("e", odd as u8, None)];
    SuperAlgebra::build(
        name,
        labels,
        LinComb::term(0, 1),
        |i, j| match (i, j) {
            (0, k) | (k, 0) => LinComb::term(k, 1),
            _ => LinComb::new(),
        },
        BTreeMap::new(),
    )
    .expect("valid")
}

/// Shipped presets by name.
pub fn preset(name: &str) -> Result<SuperAlgebra> {
    let unknown = || Error::Presentation(format!("unknown preset {name}; known: {}", preset_names().join(", ")));
    match name {
        "trivial" => Ok(integers()),
        "dual" => Ok(square_zero("O[e] even", false)),
        "exterior" => Ok(square_zero("O[e] odd", true)),
        _ => {
            if let Some(n) = name.strip_prefix("matrix") {
                let n: usize = n.parse().map_err(|_| unknown())?;
                return matrix_superalgebra(&integers(), n);
            }
            if let Some(rest) = name.strip_prefix("pq-a") {
                let (l, rev) = match rest.strip_suffix("-rev") {
                    Some(l) => (l, true),
                    None => (rest, false),
                };
                let l: usize = l.parse().map_err(|_| unknown())?;
                let q = if rev { Quiver::type_a(l)?.reversed() } else { Quiver::type_a(l)? };
                return q.path_algebra();
            }
            if let Some(l) = name.strip_prefix("zigzag-a") {
                let l: usize = l.parse().map_err(|_| unknown())?;
                return Quiver::type_a(l)?.zigzag();
            }
            Err(unknown())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets_build() {
        for n in ["trivial", "dual", "exterior", "matrix3", "pq-a2", "pq-a3-rev", "zigzag-a1", "zigzag-a3"] {
            preset(n).unwrap();
        }
        assert!(preset("nope").is_err());
    }

    #[test]
    fn zigzag_ranks() {
        let z1 = preset("zigzag-a1").unwrap();
        assert_eq!(z1.graded_rank().unwrap(), [(0, 1), (2, 1)].into_iter().collect());
        let z2 = preset("zigzag-a2").unwrap();
        assert_eq!(z2.graded_rank().unwrap(), [(0, 2), (1, 2), (2, 2)].into_iter().collect());
    }
}
