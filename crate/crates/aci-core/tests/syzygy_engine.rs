use aci_core::graded::RingFamily;
use aci_core::resolution::{
    betti_over_complete_intersection, koszul_betti, minimal_syzygy_betti, BettiTable,
    GradedModulePresentation, ModulePieces,
};
use aci_core::series::{poincare_k_over_a, poincare_k_over_r};
use aci_core::PrimeField;
use num_bigint::BigInt;

fn field() -> PrimeField {
    PrimeField::new(32003).unwrap()
}

fn entries(t: &BettiTable) -> Vec<((usize, usize), u64)> {
    t.entries().collect()
}

#[test]
fn residue_field_over_polynomial_ring() {
    let fam = RingFamily::tilde(4, field(), 6).unwrap();
    let k = GradedModulePresentation::residue_field(&fam.q);
    let t = minimal_syzygy_betti(&fam.q, &k, 5, 6).unwrap();
    assert_eq!(entries(&t), vec![((0, 0), 1), ((1, 1), 4), ((2, 2), 6), ((3, 3), 4), ((4, 4), 1)]);
}

#[test]
fn quotients_over_polynomial_ring_match_koszul() {
    for n in 3..=4 {
        let fam = RingFamily::tilde(n, field(), n + 3).unwrap();
        for ring in [&fam.r, &fam.a] {
            let m = GradedModulePresentation::quotient(&fam.q, ring.generators()).unwrap();
            let t = minimal_syzygy_betti(&fam.q, &m, n, n + 3).unwrap();
            assert_eq!(entries(&t), entries(&koszul_betti(ring, n).unwrap()), "n={n}");
        }
    }
}

fn compare_with_series(t: &BettiTable, s: &aci_core::series::BiSeries, max_i: usize, max_j: usize) {
    for i in 0..=max_i {
        for j in 0..=max_j {
            assert_eq!(BigInt::from(t.get(i, j)), s.get(i, j), "({i},{j})");
        }
    }
}

#[test]
fn residue_field_over_r_and_a() {
    for n in 4..=5 {
        let fam = RingFamily::tilde(n, field(), n + 2).unwrap();
        let (mi, mj) = (4, 12);
        let t = minimal_syzygy_betti(&fam.r, &GradedModulePresentation::residue_field(&fam.r), mi, mj).unwrap();
        println!("k over R n={n}\n{}", t.to_text());
        compare_with_series(&t, &poincare_k_over_r(n, mi, mj).unwrap(), mi, mj);
        let t = minimal_syzygy_betti(&fam.a, &GradedModulePresentation::residue_field(&fam.a), mi, mj).unwrap();
        println!("k over A n={n}\n{}", t.to_text());
        compare_with_series(&t, &poincare_k_over_a(n, mi, mj).unwrap(), mi, mj);
    }
}

#[test]
fn a_and_r_over_p_match_transfer() {
    let n = 5;
    let fam = RingFamily::tilde(n, field(), n + 2).unwrap();
    let factors: Vec<_> = (0..n).map(|k| fam.quadrics.linear_factors(k)).collect();
    for ring in [&fam.a, &fam.r] {
        let m = GradedModulePresentation::quotient(&fam.p, ring.generators()).unwrap();
        let t = minimal_syzygy_betti(&fam.p, &m, 5, 12).unwrap();
        let tr = betti_over_complete_intersection(&ModulePieces::from_ring(ring), &factors, 5, "P").unwrap();
        assert_eq!(entries(&t), entries(&tr));
    }
}
