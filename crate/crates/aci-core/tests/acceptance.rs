//! Acceptance criteria, one line each. `cargo test --test acceptance -- 9 10`
//! runs a subset.

use std::collections::{BTreeMap, BTreeSet};
use std::process::ExitCode;
use std::rc::Rc;
use std::time::Instant;

use aci_core::ff_linalg::RowEchelon;
use aci_core::graded::{build_ring, ell, GradedQuotientRing, RingFamily, Variant};
use aci_core::harness::{
    betti_table_to_series, build_family, compare_tables, residue_betti, series_to_table, CompareMode,
    ExperimentConfig, ResidueRoute,
};
use aci_core::resolution::{
    betti_over_complete_intersection, build_hypersurface_resolution, euler_check, golod_hypothesis_check,
    koszul_betti, minimal_syzygy_betti, BettiTable, GolodMode, GradedModulePresentation, ModulePieces,
};
use aci_core::series::{
    binomial_usize, gamma, poincare_k_over_a, poincare_k_over_r, rate_of_series, rho, tilde_betti_tables_q,
    BiSeries,
};
use aci_core::{PrimeField, PrimeFieldMatrix};
use num_bigint::BigInt;
use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

mod common;
use common::P;

/// Criteria that cannot hold as written; they still print FAIL.
const KNOWN_FAILURES: &[u32] = &[1];

/// Seed of the "one accepted sample" runs.
const SAMPLE: u64 = 1;

type Outcome = Result<String, String>;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
enum Which {
    R,
    A,
}

type Key = (usize, Option<u64>);

struct Ctx {
    field: PrimeField,
    families: BTreeMap<Key, Rc<RingFamily>>,
    over_q: BTreeMap<(Key, Which), BettiTable>,
    over_p: BTreeMap<(Key, Which), BettiTable>,
    residue: BTreeMap<(Key, Which), (BettiTable, ResidueRoute)>,
    /// Every table computed here, with h_S and h_M for the alternating identity.
    computed: Vec<(String, BettiTable, Vec<u64>, Vec<u64>)>,
}

fn label(key: Key) -> String {
    match key.1 {
        None => format!("n={} tilde", key.0),
        Some(s) => format!("n={} seed {s}", key.0),
    }
}

fn u64s(v: &[usize]) -> Vec<u64> {
    v.iter().map(|&x| x as u64).collect()
}

fn pick(fam: &RingFamily, w: Which) -> &GradedQuotientRing {
    match w {
        Which::R => &fam.r,
        Which::A => &fam.a,
    }
}

impl Ctx {
    fn family(&mut self, key: Key) -> Result<Rc<RingFamily>, String> {
        if let Some(f) = self.families.get(&key) {
            return Ok(f.clone());
        }
        let fam = match key.1 {
            None => RingFamily::tilde(key.0, self.field, RingFamily::default_cutoff(key.0)).map_err(|e| e.to_string())?,
            Some(seed) => {
                let mut cfg = ExperimentConfig::new(key.0, Variant::Random { seed }).map_err(|e| e.to_string())?;
                cfg.prime = P;
                build_family(&cfg).map_err(|e| e.to_string())?.family
            }
        };
        let fam = Rc::new(fam);
        self.families.insert(key, fam.clone());
        Ok(fam)
    }

    fn over_q(&mut self, key: Key, w: Which) -> Result<BettiTable, String> {
        if let Some(t) = self.over_q.get(&(key, w)) {
            return Ok(t.clone());
        }
        let fam = self.family(key)?;
        let ring = pick(&fam, w);
        let t = koszul_betti(ring, key.0).map_err(|e| e.to_string())?;
        let h_m = u64s(&ring.hilbert());
        let h_s = (0..h_m.len()).map(|d| binomial_usize(key.0 + d - 1, d) as u64).collect();
        self.computed.push((format!("{w:?} over Q, {}", label(key)), t.clone(), h_s, h_m));
        self.over_q.insert((key, w), t.clone());
        Ok(t)
    }

    fn over_p(&mut self, key: Key, w: Which) -> Result<BettiTable, String> {
        if let Some(t) = self.over_p.get(&(key, w)) {
            return Ok(t.clone());
        }
        let fam = self.family(key)?;
        let ring = pick(&fam, w);
        let n = key.0;
        let factors: Vec<_> = (0..n).map(|k| fam.quadrics.linear_factors(k)).collect();
        let t = betti_over_complete_intersection(&ModulePieces::from_ring(ring), &factors, n.min(6), "P")
            .map_err(|e| e.to_string())?;
        let h_m = u64s(&ring.hilbert());
        let h_s = (0..h_m.len()).map(|d| binomial_usize(n, d) as u64).collect();
        self.computed.push((format!("{w:?} over P, {}", label(key)), t.clone(), h_s, h_m));
        self.over_p.insert((key, w), t.clone());
        Ok(t)
    }

    fn residue(&mut self, key: Key, w: Which, route: ResidueRoute) -> Result<(BettiTable, ResidueRoute), String> {
        if let Some(t) = self.residue.get(&(key, w)) {
            return Ok(t.clone());
        }
        let fam = self.family(key)?;
        let ring = pick(&fam, w);
        let (t, route) = residue_betti(ring, 6, 24, route).map_err(|e| e.to_string())?;
        let h_s = u64s(&ring.hilbert());
        let mut h_m = vec![0; h_s.len()];
        h_m[0] = 1;
        self.computed.push((format!("k over {w:?}, {}", label(key)), t.clone(), h_s, h_m));
        self.residue.insert((key, w), (t.clone(), route));
        Ok((t, route))
    }
}

fn check(ok: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn entries(t: &BettiTable) -> Vec<((usize, usize), u64)> {
    t.entries().collect()
}

fn both(n: usize) -> [Key; 2] {
    [(n, None), (n, Some(SAMPLE))]
}

fn sequences() -> Outcome {
    let r: Vec<BigInt> = rho(6, 6).values;
    let g: Vec<BigInt> = gamma(6, 4).values;
    let want_r: Vec<BigInt> = [0, 0, 14, 105, 132, 70, 14].map(BigInt::from).to_vec();
    let want_g: Vec<BigInt> = [0, 14, 85, 132].map(BigInt::from).to_vec();
    check(r == want_r, || format!("rho(6,6) = {r:?}"))?;
    let g3 = gamma(6, 3).values;
    check(g == want_g, || {
        format!("rho(6,6) matches; gamma(6,4) = {g:?} (k = 0..=4, gamma_4 = gamma_2 by symmetry); gamma(6,3) = {g3:?}")
    })?;
    Ok("rho(6,6) and gamma(6,4) match".into())
}

fn three_variables(cx: &mut Ctx) -> Outcome {
    let r = cx.over_q((3, None), Which::R)?;
    let a = cx.over_q((3, None), Which::A)?;
    let want_r = vec![((0, 0), 1), ((1, 2), 4), ((2, 3), 2), ((2, 4), 3), ((3, 5), 2)];
    let want_a = vec![((0, 0), 1), ((1, 1), 2), ((1, 2), 1), ((2, 2), 1), ((2, 3), 2), ((3, 4), 1)];
    check(entries(&r) == want_r, || format!("R: {:?}", entries(&r)))?;
    check(entries(&a) == want_a, || format!("A: {:?}", entries(&a)))?;
    Ok("R and A tables exact".into())
}

fn binom(n: usize, k: isize) -> usize {
    if k < 0 {
        0
    } else {
        binomial_usize(n, k as usize)
    }
}

fn hilbert(cx: &mut Ctx) -> Outcome {
    for n in 2..=8 {
        let fam = cx.family((n, None))?;
        for d in 0..=n + 2 {
            let di = d as isize;
            let hr = binom(n, di).saturating_sub(binom(n, di - 2));
            let ha = binom(n, di).min(binom(n, di + 2));
            check(fam.r.h(d) == hr, || format!("n={n}: h_R({d}) = {} != {hr}", fam.r.h(d)))?;
            check(fam.a.h(d) == ha, || format!("n={n}: h_A({d}) = {} != {ha}", fam.a.h(d)))?;
            let ha2 = if d >= 2 { fam.a.h(d - 2) } else { 0 };
            check(fam.p.h(d) == fam.r.h(d) + ha2, || format!("n={n}: Hilb_P - t^2 Hilb_A != Hilb_R in degree {d}"))?;
        }
    }
    Ok("n = 2..=8 through degree n+2".into())
}

fn level_type(cx: &mut Ctx) -> Outcome {
    let mut types = Vec::new();
    for (n, c) in [(4, 5), (5, 5), (6, 14), (7, 14)] {
        for key in both(n) {
            let fam = cx.family(key)?;
            let s = fam.r.socle().map_err(|e| e.to_string())?;
            let want = BTreeMap::from([(n - ell(n) - 1, c)]);
            check(s == want, || format!("{}: socle {s:?}, want {want:?}", label(key)))?;
        }
        types.push(c);
    }
    Ok(format!("types {types:?}, tilde and seed {SAMPLE}"))
}

fn even_tables(cx: &mut Ctx) -> Outcome {
    for n in [4, 6] {
        let (pr, pa) = tilde_betti_tables_q(n);
        let r = cx.over_q((n, None), Which::R)?;
        let a = cx.over_q((n, None), Which::A)?;
        check(entries(&r) == entries(&pr), || format!("n={n} R: {:?} vs {:?}", entries(&r), entries(&pr)))?;
        check(entries(&a) == entries(&pa), || format!("n={n} A: {:?} vs {:?}", entries(&a), entries(&pa)))?;
    }
    Ok("n = 4, 6 full tables".into())
}

fn odd_tables(cx: &mut Ctx) -> Outcome {
    let mut corners = Vec::new();
    for n in [5, 7] {
        let l = ell(n);
        let (pr, pa) = tilde_betti_tables_q(n);
        let r = cx.over_q((n, None), Which::R)?;
        let a = cx.over_q((n, None), Which::A)?;
        check(entries(&r) == entries(&pr), || format!("n={n} R: {:?} vs {:?}", entries(&r), entries(&pr)))?;
        check(entries(&a) == entries(&pa), || format!("n={n} A: {:?} vs {:?}", entries(&a), entries(&pa)))?;
        let cr = rho(n - 1, l + 1).get(l + 1) + binomial_usize(n, l);
        let ca = gamma(n - 1, l).get(l) + binomial_usize(n - 1, l - 1);
        let (gr, ga) = (BigInt::from(r.get(l + 1, 2 * l + 2)), BigInt::from(a.get(l, 2 * l)));
        check(gr == cr, || format!("n={n}: R corner {gr} != {cr}"))?;
        check(ga == ca, || format!("n={n}: A corner {ga} != {ca}"))?;
        corners.push(format!("n={n}: {cr}, {ca}"));
    }
    Ok(format!("corners {}", corners.join("; ")))
}

fn two_strands(cx: &mut Ctx) -> Outcome {
    for n in 4..=7 {
        let l = ell(n);
        for key in both(n) {
            let a = cx.over_p(key, Which::A)?;
            let r = cx.over_p(key, Which::R)?;
            let off_a: Vec<_> = entries(&a).into_iter().filter(|&((i, j), _)| (i, j) != (0, 0) && j != i + l).collect();
            let off_r: Vec<_> = entries(&r)
                .into_iter()
                .filter(|&((i, j), _)| (i, j) != (0, 0) && (i, j) != (1, 2) && j != i + l + 1)
                .collect();
            check(off_a.is_empty() && off_r.is_empty(), || format!("{}: off-strand A {off_a:?}, R {off_r:?}", label(key)))?;
            let ra = a.regularity().map_err(|e| e.to_string())?.value;
            let rr = r.regularity().map_err(|e| e.to_string())?.value;
            check(ra == l as i64 && rr == l as i64 + 1, || format!("{}: reg_P A = {ra}, reg_P R = {rr}", label(key)))?;
        }
    }
    Ok(format!("n = 4..=7, tilde and seed {SAMPLE}, i <= min(n, 6)"))
}

fn golod(cx: &mut Ctx) -> Outcome {
    for n in 4..=7 {
        let l = ell(n);
        let r = cx.over_p((n, None), Which::R)?;
        let rep = golod_hypothesis_check(&r, GolodMode::BandWithException { b: l + 1, i0: 1, j0: 2 })
            .map_err(|e| e.to_string())?;
        check(rep.passed(), || format!("n={n} R: {:?}", rep.violations))?;
        if n >= 6 {
            let a = cx.over_p((n, None), Which::A)?;
            let rep = golod_hypothesis_check(&a, GolodMode::Band { b: l }).map_err(|e| e.to_string())?;
            check(rep.passed(), || format!("n={n} A: {:?}", rep.violations))?;
        }
    }
    Ok("mode II on R for n = 4..=7, mode I on A for n = 6, 7".into())
}

fn series_table(n: usize, w: Which, t: &BettiTable) -> Result<BettiTable, String> {
    let s = match w {
        Which::R => poincare_k_over_r(n, t.max_i(), t.max_j()),
        Which::A => poincare_k_over_a(n, t.max_i(), t.max_j()),
    }
    .map_err(|e| e.to_string())?;
    series_to_table(&s, "self").map_err(|e| e.to_string())
}

fn poincare(cx: &mut Ctx) -> Outcome {
    let mut routes = Vec::new();
    for n in 4..=6 {
        for key in both(n) {
            for w in [Which::R, Which::A] {
                // the syzygy engine cannot reach i = 6 for k over A at n = 6
                let route = if n == 6 && w == Which::A { ResidueRoute::Bar } else { ResidueRoute::Engine };
                let (t, route) = cx.residue(key, w, route)?;
                check(t.max_i() == 6, || format!("{}: window i <= {}", label(key), t.max_i()))?;
                let c = compare_tables(&t, &series_table(n, w, &t)?, CompareMode::Equal).map_err(|e| e.to_string())?;
                check(c.passed(), || format!("{} k over {w:?}: {:?}", label(key), c.violations))?;
                if route == ResidueRoute::Bar {
                    routes.push(format!("{w:?} {}", label(key)));
                }
            }
        }
    }
    Ok(format!("i <= 6, j <= 24; syzygy engine except bar route for {}", routes.join(", ")))
}

fn rates(cx: &mut Ctx) -> Outcome {
    let mut out = Vec::new();
    for n in [6, 7] {
        let l = ell(n);
        for (w, witness, tau, rate) in
            [(Which::A, 2, l + 1, Ratio::from_integer(l as i64)), (Which::R, 3, l + 3, Ratio::new(l as i64 + 2, 2))]
        {
            let (t, route) = cx.residue((n, None), w, ResidueRoute::Bar)?;
            let rep = rate_of_series(&betti_table_to_series(&t), 2..=6).map_err(|e| e.to_string())?;
            let got_tau = rep.taus.iter().find(|&&(i, _)| i == witness).map(|&(_, t)| t);
            check(got_tau == Some(tau), || format!("n={n} {w:?}: tau_{witness} = {got_tau:?}, want {tau}"))?;
            check(rep.rate == rate && rep.witness == witness && !rep.j_truncated, || {
                format!("n={n} {w:?}: rate {} at i = {}, want {rate} at {witness}", rep.rate, rep.witness)
            })?;
            out.push(format!("n={n} {w:?} {rate} ({route:?})"));
        }
    }
    Ok(out.join(", "))
}

fn generators(cx: &mut Ctx) -> Outcome {
    for n in [6, 7] {
        for key in both(n) {
            let fam = cx.family(key)?;
            let g = fam.a.minimal_generator_degrees();
            let want = BTreeMap::from([(2, n), (ell(n) + 1, 14)]);
            check(g.counts == want && g.certified, || format!("{}: {:?} (certified {})", label(key), g.counts, g.certified))?;
        }
    }
    Ok(format!("{{2: n, l+1: 14}} for n = 6, 7, tilde and seed {SAMPLE}"))
}

fn upper_bound(cx: &mut Ctx) -> Outcome {
    for n in [5, 7] {
        let l = ell(n);
        let (cr, c22) = if n == 5 { (20, 5) } else { (14, 14) };
        let tr = cx.over_q((n, None), Which::R)?;
        let ta = cx.over_q((n, None), Which::A)?;
        for seed in 1..=3 {
            let key = (n, Some(seed));
            for (w, tilde) in [(Which::R, &tr), (Which::A, &ta)] {
                let t = cx.over_q(key, w)?;
                let c = compare_tables(&t, tilde, CompareMode::UpperBound).map_err(|e| e.to_string())?;
                check(c.passed(), || format!("{} {w:?}: {:?}", label(key), c.violations))?;
            }
            let r = cx.over_q(key, Which::R)?;
            check(r.get(2, l + 3) == cr, || format!("{}: beta_(2,{}) = {}", label(key), l + 3, r.get(2, l + 3)))?;
            check(r.get(n, n + l + 2) == c22, || format!("{}: beta_({n},{}) = {}", label(key), n + l + 2, r.get(n, n + l + 2)))?;
        }
    }
    Ok("seeds 1..=3 at n = 5, 7".into())
}

fn random_low_rank(rng: &mut ChaCha8Rng) -> Vec<Vec<u32>> {
    let (r, c) = (rng.gen_range(1..=40), rng.gen_range(1..=40));
    let inner = rng.gen_range(0..=r.max(c));
    let b: Vec<Vec<u64>> = (0..r).map(|_| (0..inner).map(|_| rng.gen_range(0..P as u64)).collect()).collect();
    let m: Vec<Vec<u64>> = (0..inner).map(|_| (0..c).map(|_| rng.gen_range(0..P as u64)).collect()).collect();
    (0..r)
        .map(|i| (0..c).map(|j| ((0..inner).map(|k| b[i][k] * m[k][j] % P as u64).sum::<u64>() % P as u64) as u32).collect())
        .collect()
}

fn properties(cx: &mut Ctx) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let field = cx.field;

    for trial in 0..100 {
        let rows = random_low_rank(&mut rng);
        let m = PrimeFieldMatrix::from_data(field, rows.len(), rows[0].len(), rows.iter().flatten().copied().collect());
        let rank = common::oracle_rank(&rows);
        let mut sparse = RowEchelon::new(field, m.cols());
        sparse.insert_u32_rows(m.data(), m.rows());
        let kernel = m.kernel_basis();
        check(m.rank() == rank && sparse.rank() == rank && m.transpose().rank() == rank, || format!("rank, trial {trial}"))?;
        check(kernel.len() == m.cols() - rank, || format!("kernel size, trial {trial}"))?;
        check(kernel.iter().all(|v| m.mul_vec(v).unwrap().iter().all(|&x| x == 0)), || format!("kernel, trial {trial}"))?;
        check(kernel.is_empty() || common::oracle_rank(&kernel) == kernel.len(), || format!("kernel rank, trial {trial}"))?;
    }

    for trial in 0..10 {
        let n = rng.gen_range(2..=3);
        let forms = (0..rng.gen_range(1..=3))
            .map(|_| {
                let terms = (0..rng.gen_range(1..=4))
                    .map(|_| ((0..n).map(|_| rng.gen_range(0..=2u8)).collect(), rng.gen_range(1..P as i64)))
                    .collect();
                (rng.gen_range(2..=3), terms)
            })
            .collect();
        let top = 3 * n + 1;
        let ring = build_ring(n, field, &common::artinian_generators(n, forms), top).map_err(|e| e.to_string())?;
        let q = build_ring(n, field, &[], top).map_err(|e| e.to_string())?;
        let k = koszul_betti(&ring, n).map_err(|e| e.to_string())?;
        let pres = GradedModulePresentation::quotient(&q, ring.generators()).map_err(|e| e.to_string())?;
        let e = minimal_syzygy_betti(&q, &pres, n, top - 1).map_err(|e| e.to_string())?;
        check(entries(&k) == entries(&e), || format!("module {trial}: {:?} vs {:?}", entries(&k), entries(&e)))?;
        let h_m = u64s(&ring.hilbert());
        let h_s = (0..h_m.len()).map(|d| binomial_usize(n + d - 1, d) as u64).collect();
        cx.computed.push((format!("random module {trial}"), k, h_s, h_m));
    }

    for n in 2..=7 {
        for key in [(n, None), (n, Some(SAMPLE))] {
            if n < 4 && key.1.is_some() {
                continue;
            }
            let fam = cx.family(key)?;
            let res = build_hypersurface_resolution(&fam.p1, &fam.quadric(0), n + 2).map_err(|e| e.to_string())?;
            res.check_square_zero(&fam.p1).map_err(|e| format!("{}: {e:?}", label(key)))?;
        }
    }

    let mut degrees = 0;
    for (what, t, h_s, h_m) in &cx.computed {
        degrees += euler_check(t, h_s, h_m).map_err(|e| format!("{what}: {e}"))? + 1;
    }

    for trial in 0..100 {
        let (imax, jmax) = (rng.gen_range(0..5), rng.gen_range(0..7));
        let mut s = BiSeries::zero(imax, jmax);
        for i in 0..=imax {
            for j in 0..=jmax {
                s.set(i, j, BigInt::from(rng.gen_range(-20i64..=20)));
            }
        }
        s.set(0, 0, BigInt::from(if rng.gen() { 1 } else { -1 }));
        let inv = s.reciprocal().map_err(|e| e.to_string())?;
        check(s.mul(&inv).unwrap() == BiSeries::one(imax, jmax), || format!("reciprocal, trial {trial}"))?;
        check(inv.reciprocal().unwrap() == s, || format!("double reciprocal, trial {trial}"))?;
    }

    Ok(format!(
        "100 rank/kernel trials, 10 modules, d^2 = 0 for n <= 7, Euler on {} tables ({degrees} degrees), 100 reciprocals",
        cx.computed.len()
    ))
}

type Criterion = (u32, &'static str, fn(&mut Ctx) -> Outcome);

const CRITERIA: &[Criterion] = &[
    (1, "sequence golden values", |_| sequences()),
    (2, "three-variable tables", three_variables),
    (3, "Hilbert functions", hilbert),
    (4, "level and type of R", level_type),
    (5, "even-n tables over Q", even_tables),
    (6, "odd-n tables over Q", odd_tables),
    (7, "two strands over P", two_strands),
    (8, "Golod band conditions", golod),
    (9, "Poincare series of k", poincare),
    (10, "rate witnesses", rates),
    (11, "generator degrees of G", generators),
    (12, "upper bound by the tilde ring", upper_bound),
    (13, "property suites", properties),
];

fn main() -> ExitCode {
    let wanted: BTreeSet<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut cx = Ctx {
        field: PrimeField::new(P).unwrap(),
        families: BTreeMap::new(),
        over_q: BTreeMap::new(),
        over_p: BTreeMap::new(),
        residue: BTreeMap::new(),
        computed: Vec::new(),
    };
    let mut unexpected = Vec::new();
    let total = Instant::now();
    for &(id, title, run) in CRITERIA {
        if !wanted.is_empty() && !wanted.contains(&id) {
            continue;
        }
        let t0 = Instant::now();
        let out = run(&mut cx);
        let secs = t0.elapsed().as_secs_f64();
        let known = KNOWN_FAILURES.contains(&id);
        let (status, detail) = match &out {
            Ok(d) => ("PASS", d.clone()),
            Err(d) if known => ("FAIL", format!("{d} [known]")),
            Err(d) => ("FAIL", d.clone()),
        };
        println!("criterion {id:>2}  {status}  {title:<30} {secs:>7.1}s  {detail}");
        if out.is_err() && !known {
            unexpected.push(id);
        }
    }
    println!("total {:.1}s", total.elapsed().as_secs_f64());
    if unexpected.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("unexpected failures: {unexpected:?}");
        ExitCode::FAILURE
    }
}
