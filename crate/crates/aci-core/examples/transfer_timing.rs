use std::time::Instant;
use aci_core::ff_linalg::PrimeField;
use aci_core::graded::RingFamily;
use aci_core::resolution::{KoszulRetract, ModulePieces, TransferredComplex};

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let n: usize = args[1].parse().unwrap();
    let max_i: usize = args[2].parse().unwrap();
    let f = PrimeField::new(32003).unwrap();
    let fam = RingFamily::tilde(n, f, RingFamily::default_cutoff(n)).unwrap();
    let factors: Vec<_> = (0..n).map(|k| fam.quadrics.linear_factors(k)).collect();
    for (name, ring) in [("A", &fam.a), ("R", &fam.r)] {
        let t = Instant::now();
        let r = KoszulRetract::new(&ModulePieces::from_ring(ring)).unwrap();
        let t1 = t.elapsed();
        let tc = TransferredComplex::new(&r, &factors, max_i);
        let t2 = t.elapsed();
        let tb = tc.betti("P");
        println!("{name}: retract {t1:.1?} transfer {t2:.1?} betti {:.1?}\n{}", t.elapsed(), tb.to_text());
    }
}
