use std::time::Instant;

use aci_core::graded::RingFamily;
use aci_core::resolution::residue_betti_by_bar;
use aci_core::PrimeField;

fn main() {
    env_logger::init();
    let args: Vec<String> = std::env::args().collect();
    let n: usize = args.get(1).map_or(6, |s| s.parse().unwrap());
    let which = args.get(2).map_or("a", |s| s.as_str());
    let max_i: usize = args.get(3).map_or(6, |s| s.parse().unwrap());
    let fam = RingFamily::tilde(n, PrimeField::new(32003).unwrap(), n + 2).unwrap();
    let ring = if which == "r" { &fam.r } else { &fam.a };
    let t0 = Instant::now();
    let t = residue_betti_by_bar(ring, max_i).unwrap();
    println!("{}\n{:.1?}", t.to_text(), t0.elapsed());
}
