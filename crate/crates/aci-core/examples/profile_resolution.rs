//! Times one resolution: `profile_resolution <n> <ring: r|a> <module: k|ring-over-p> <max_i> <max_j>`.
use std::time::Instant;

use aci_core::graded::RingFamily;
use aci_core::resolution::{minimal_syzygy_betti, GradedModulePresentation};
use aci_core::PrimeField;

fn main() {
    env_logger::init();
    let args: Vec<String> = std::env::args().collect();
    let n: usize = args[1].parse().unwrap();
    let max_i: usize = args[4].parse().unwrap();
    let max_j: usize = args[5].parse().unwrap();
    let fam = RingFamily::tilde(n, PrimeField::new(32003).unwrap(), n + 2).unwrap();
    let ring = if args[2] == "r" { &fam.r } else { &fam.a };
    let clock = Instant::now();
    let t = if args[3] == "k" {
        minimal_syzygy_betti(ring, &GradedModulePresentation::residue_field(ring), max_i, max_j)
    } else {
        let m = GradedModulePresentation::quotient(&fam.p, ring.generators()).unwrap();
        minimal_syzygy_betti(&fam.p, &m, max_i, max_j)
    }
    .unwrap();
    println!("{}\n{:.1?}", t.to_text(), clock.elapsed());
}
