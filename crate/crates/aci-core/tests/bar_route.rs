use aci_core::graded::{sample_general_family, GradedQuotientRing, RingFamily};
use aci_core::resolution::{
    minimal_syzygy_betti, residue_betti_by_bar, BettiTable, GradedModulePresentation,
    ResolutionError,
};
use aci_core::PrimeField;

fn field() -> PrimeField {
    PrimeField::new(32003).unwrap()
}

fn engine(ring: &GradedQuotientRing, max_i: usize) -> BettiTable {
    let k = GradedModulePresentation::residue_field(ring);
    minimal_syzygy_betti(ring, &k, max_i, 3 * max_i).unwrap()
}

fn assert_same(bar: &BettiTable, eng: &BettiTable, max_i: usize, what: &str) {
    for i in 0..=max_i {
        for j in 0..=3 * max_i {
            assert_eq!(bar.get(i, j), eng.get(i, j), "{what} at ({i},{j})\nbar\n{}\nengine\n{}", bar.to_text(), eng.to_text());
        }
    }
}

#[test]
fn bar_route_matches_engine_on_small_families() {
    for n in 3..=4 {
        let fam = RingFamily::tilde(n, field(), n + 2).unwrap();
        for (name, ring) in [("R", &fam.r), ("A", &fam.a), ("P", &fam.p)] {
            let max_i = 5;
            if ring.h(1) < n {
                assert!(matches!(residue_betti_by_bar(ring, max_i), Err(ResolutionError::LinearRelations { .. })));
                continue;
            }
            let bar = residue_betti_by_bar(ring, max_i).unwrap();
            assert_same(&bar, &engine(ring, max_i), max_i, &format!("{name} n={n}"));
        }
    }
}

#[test]
fn bar_route_matches_engine_on_random_families() {
    for seed in 0..2 {
        let fam = sample_general_family(4, field(), seed, 6).unwrap();
        for ring in [&fam.r, &fam.a] {
            let bar = residue_betti_by_bar(ring, 4).unwrap();
            assert_same(&bar, &engine(ring, 4), 4, &format!("seed {seed}"));
        }
    }
}

#[test]
fn bar_route_matches_engine_at_five_variables() {
    let fam = RingFamily::tilde(5, field(), 7).unwrap();
    for ring in [&fam.r, &fam.a] {
        let bar = residue_betti_by_bar(ring, 4).unwrap();
        assert_same(&bar, &engine(ring, 4), 4, "n=5");
    }
}

#[test]
fn bar_route_matches_poincare_formulas() {
    use aci_core::series::{poincare_k_over_a, poincare_k_over_r};
    use num_bigint::BigInt;
    // n = 7 runs in the acceptance suite
    for n in 5..=6 {
        let fam = RingFamily::tilde(n, field(), n + 2).unwrap();
        let max_i = 6;
        let max_j = 3 * max_i;
        for (ring, s) in [
            (&fam.r, poincare_k_over_r(n, max_i, max_j).unwrap()),
            (&fam.a, poincare_k_over_a(n, max_i, max_j).unwrap()),
        ] {
            let t = residue_betti_by_bar(ring, max_i).unwrap();
            for i in 0..=max_i {
                for j in 0..=max_j {
                    assert_eq!(BigInt::from(t.get(i, j)), s.get(i, j), "n={n} ({i},{j})");
                }
            }
        }
    }
}
