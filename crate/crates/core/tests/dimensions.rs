//! Frozen sizes, each cross-checked against an independent count.

#[test]
fn frozen_dimensions() {
    use turner_core::double::Double;
    use turner_core::schur::{Mode, SchurAlgebra};
    use turner_core::schurweyl::commutant_dimension_direct;
    use turner_core::superalgebra::preset;
    use turner_core::Exec;

    let o = preset("trivial").unwrap();
    for d in 1..=5 {
        // D^d 𝒪 has basis z^0, ..., z^d
        assert_eq!(Double::new(&o, 1, d, Exec::Sequential).unwrap().dim(), d + 1);
    }
    // classical S(n,d) has dim binom(n²+d-1, d)
    for (n, d, want) in [(2, 2, 10), (3, 2, 45), (2, 3, 20)] {
        assert_eq!(SchurAlgebra::new(&o, n, d, Mode::Formula, Exec::Sequential).unwrap().dim(), want);
    }
    let z = preset("zigzag-a2").unwrap();
    let s = SchurAlgebra::new(&z, 2, 2, Mode::Formula, Exec::Sequential).unwrap();
    assert_eq!(s.dim(), 292);
    assert_eq!(commutant_dimension_direct(&z, 1, 2), SchurAlgebra::new(&z, 1, 2, Mode::Formula, Exec::Sequential).unwrap().dim());
}
