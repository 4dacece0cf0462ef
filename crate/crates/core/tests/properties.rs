use proptest::prelude::*;
use std::sync::OnceLock;
use turner_core::combinatorics::{Perm, Word};
use turner_core::double::{Double, Route, Variant};
use turner_core::lattice::{sparse_from_i64, Lattice};
use turner_core::schur::{Mode, SchurAlgebra};
use turner_core::schurweyl::Wreath;
use turner_core::superalgebra::{place_permutation_word, preset, word_product, SuperAlgebra};
use turner_core::{Exec, LinComb};

fn perm(d: usize) -> impl Strategy<Value = Perm> {
    Just((0..d).collect::<Vec<usize>>()).prop_shuffle().prop_map(|v| Perm::from_images(&v).unwrap())
}

fn word(letters: u16, d: usize) -> impl Strategy<Value = Word> {
    proptest::collection::vec(0..letters, d).prop_map(|v| v.into_iter().collect())
}

fn zigzag() -> &'static SuperAlgebra {
    static Z: OnceLock<SuperAlgebra> = OnceLock::new();
    Z.get_or_init(|| preset("zigzag-a2").unwrap())
}

fn schur() -> &'static SchurAlgebra {
    static S: OnceLock<SchurAlgebra> = OnceLock::new();
    S.get_or_init(|| SchurAlgebra::new(zigzag(), 2, 2, Mode::Formula, Exec::Parallel).unwrap())
}

fn double() -> &'static Double {
    static D: OnceLock<Double> = OnceLock::new();
    D.get_or_init(|| Double::new(&preset("pq-a2").unwrap(), 1, 3, Exec::Parallel).unwrap())
}

fn mul_words(a: &SuperAlgebra, x: &LinComb<Word>, y: &LinComb<Word>) -> LinComb<Word> {
    let mut out = LinComb::new();
    for (u, &c) in x.iter() {
        for (v, &e) in y.iter() {
            out.add_scaled(&word_product(a, u, v), c * e);
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn place_action_is_a_right_action((v, g, h) in (1usize..=6).prop_flat_map(|d| (word(4, d), perm(d), perm(d)))) {
        let odd = [false, true, false, true];
        let (s1, vg) = place_permutation_word(&v, &odd, &g);
        let (s2, vgh) = place_permutation_word(&vg, &odd, &h);
        let (s3, w) = place_permutation_word(&v, &odd, &g.compose(&h));
        prop_assert_eq!(s1 * s2, s3);
        prop_assert_eq!(vgh, w);
    }

    #[test]
    fn tensor_power_is_associative((x, y, z) in (1usize..=4).prop_flat_map(|d| (word(6, d), word(6, d), word(6, d)))) {
        let a = zigzag();
        let t = |w: &Word| LinComb::term(w.clone(), 1);
        let l = mul_words(a, &mul_words(a, &t(&x), &t(&y)), &t(&z));
        let r = mul_words(a, &t(&x), &mul_words(a, &t(&y), &t(&z)));
        prop_assert_eq!(l, r);
    }

    #[test]
    fn schur_table_is_associative(i in 0usize..292, j in 0usize..292, k in 0usize..292) {
        let s = schur();
        let (ei, ek) = (LinComb::term(i, 1), LinComb::term(k, 1));
        prop_assert_eq!(s.mul(&s.mul(&ei, &LinComb::term(j, 1)), &ek), s.mul(&ei, s.product(j, k)));
    }

    #[test]
    fn double_routes_agree(i in 0usize..44, j in 0usize..44) {
        let x = double();
        for v in [Variant::Plain, Variant::Divided] {
            prop_assert_eq!(x.product(i, j, v, Route::Sweedler).unwrap(), x.product(i, j, v, Route::Transport).unwrap());
        }
    }

    #[test]
    fn wreath_is_associative(i in 0usize..72, j in 0usize..72, k in 0usize..72) {
        let w = Wreath::new(zigzag(), 2);
        let b = w.basis();
        let t = |n: usize| LinComb::term(b[n].clone(), 1);
        prop_assert_eq!(w.mul(&w.mul(&t(i), &t(j)), &t(k)), w.mul(&t(i), &w.mul(&t(j), &t(k))));
    }

    #[test]
    fn lattice_ignores_row_order(rows in proptest::collection::vec(proptest::collection::vec(-4i64..5, 4), 1..6)) {
        let mk = |rs: &[Vec<i64>]| Lattice::from_rows(4, rs.iter().map(|r| sparse_from_i64(r.iter().copied().enumerate())));
        let mut rev = rows.clone();
        rev.reverse();
        let (a, b) = (mk(&rows), mk(&rev));
        prop_assert_eq!(a.smith_invariants(), b.smith_invariants());
        prop_assert!(a == b);
        for r in &rows {
            prop_assert!(a.contains(&sparse_from_i64(r.iter().copied().enumerate())));
        }
    }
}
