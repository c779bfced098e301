use aci_core::ff_linalg::PrimeField;
use aci_core::graded::{sample_general_family, RingFamily};
use aci_core::resolution::{
    betti_over_complete_intersection, complex_homology_betti, divided_power_complex,
    minimal_syzygy_betti, BettiTable, GradedModulePresentation, ModulePieces, WedgeSign,
};

fn field() -> PrimeField {
    PrimeField::new(32003).unwrap()
}

fn tate_table(fam: &RingFamily, quadrics: usize, m: &ModulePieces, max_i: usize) -> BettiTable {
    let factors: Vec<_> = (0..quadrics).map(|k| fam.quadrics.linear_factors(k)).collect();
    let cx = divided_power_complex(fam.field, fam.n, &factors, max_i + 2, WedgeSign::Exterior);
    complex_homology_betti(&cx, m, max_i, "S")
}

fn transferred(fam: &RingFamily, quadrics: usize, m: &ModulePieces, max_i: usize) -> BettiTable {
    let factors: Vec<_> = (0..quadrics).map(|k| fam.quadrics.linear_factors(k)).collect();
    betti_over_complete_intersection(m, &factors, max_i, "S").unwrap()
}

fn same_entries(x: &BettiTable, y: &BettiTable) {
    let a: Vec<_> = x.entries().collect();
    let b: Vec<_> = y.entries().collect();
    assert_eq!(a, b, "\n{}\n{}", x.to_text(), y.to_text());
}

#[test]
fn agrees_with_tate_complex() {
    for n in 3..=5 {
        let fam = RingFamily::tilde(n, field(), RingFamily::default_cutoff(n)).unwrap();
        for ring in [&fam.r, &fam.a] {
            let m = ModulePieces::from_ring(ring);
            for c in [1, n] {
                let max_i = 5;
                same_entries(&transferred(&fam, c, &m, max_i), &tate_table(&fam, c, &m, max_i));
            }
        }
    }
    let fam = sample_general_family(4, field(), 3, RingFamily::default_cutoff(4)).unwrap();
    let m = ModulePieces::from_ring(&fam.a);
    same_entries(&transferred(&fam, 4, &m, 6), &tate_table(&fam, 4, &m, 6));
}

#[test]
fn agrees_with_syzygy_engine() {
    let fam = RingFamily::tilde(4, field(), RingFamily::default_cutoff(4)).unwrap();
    let m = ModulePieces::from_ring(&fam.r);
    let t = transferred(&fam, 4, &m, 5);
    let pres = GradedModulePresentation::quotient(&fam.p, &fam.r.generators()[4..]).unwrap();
    let e = minimal_syzygy_betti(&fam.p, &pres, 5, t.max_j()).unwrap();
    same_entries(&t, &e);
}

#[test]
fn transferred_differential_squares_to_zero() {
    use aci_core::resolution::{KoszulRetract, TransferredComplex};
    for n in 3..=5 {
        let fam = RingFamily::tilde(n, field(), RingFamily::default_cutoff(n)).unwrap();
        let factors: Vec<_> = (0..n).map(|k| fam.quadrics.linear_factors(k)).collect();
        for ring in [&fam.r, &fam.a] {
            let retract = KoszulRetract::new(&ModulePieces::from_ring(ring)).unwrap();
            let tc = TransferredComplex::new(&retract, &factors, 7);
            assert_eq!(tc.check_square_zero(), Ok(()));
        }
    }
}

#[test]
fn quotients_of_the_complete_intersection() {
    use aci_core::graded::{Form, GradedQuotientRing};
    let f = field();
    for n in [3usize, 4] {
        let fam = RingFamily::tilde(n, f, RingFamily::default_cutoff(n)).unwrap();
        let table = fam.p.table().clone();
        let base: Vec<Form> = (0..n).map(|k| fam.quadric(k)).collect();
        let mono = |e: Vec<u8>| Form::from_terms(f, &table, &[(e, 1)]).unwrap();
        let mut x1 = vec![0u8; n];
        x1[0] = 1;
        let mut x12 = vec![0u8; n];
        x12[0] = 1;
        x12[1] = 1;
        let mut x2sq = vec![0u8; n];
        x2sq[1] = 2;
        let mut x3cube = vec![0u8; n];
        x3cube[2] = 3;
        for extra in [vec![mono(x1.clone())], vec![mono(x12.clone())], vec![mono(x2sq.clone()), mono(x3cube.clone())], vec![mono(x12.clone()), mono(x3cube.clone())]] {
            let mut gens = base.clone();
            gens.extend(extra);
            let ring = GradedQuotientRing::build(f, table.clone(), gens, fam.cutoff).unwrap();
            let m = ModulePieces::from_ring(&ring);
            same_entries(&transferred(&fam, n, &m, 6), &tate_table(&fam, n, &m, 6));
            same_entries(&transferred(&fam, 1, &m, 6), &tate_table(&fam, 1, &m, 6));
        }
    }
}
