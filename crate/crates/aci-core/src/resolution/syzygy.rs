use std::sync::OnceLock;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{BettiTable, ResolutionError};
use crate::ff_linalg::{reduce_slice_with, Echelon, PrimeField, RowEchelon};
use crate::graded::{Form, GradedQuotientRing};

/// A graded module S^{gens}/⟨relations⟩ over a quotient ring S. Generators
/// are given by their degrees; a relation of degree d is a coordinate vector
/// in F_d, the degree-d piece of the free module, laid out generator by
/// generator over the standard monomials of S_{d − e_g}.
#[derive(Clone, Debug)]
pub struct GradedModulePresentation {
    gen_degrees: Vec<usize>,
    relations: Vec<(usize, Vec<u32>)>,
}

impl GradedModulePresentation {
    /// Generators must be listed in non-decreasing degree.
    pub fn new(gen_degrees: Vec<usize>, relations: Vec<(usize, Vec<u32>)>) -> Self {
        assert!(gen_degrees.windows(2).all(|w| w[0] <= w[1]), "generator degrees must be sorted");
        GradedModulePresentation { gen_degrees, relations }
    }

    pub fn free(gen_degrees: Vec<usize>) -> Self {
        Self::new(gen_degrees, Vec::new())
    }

    /// k = S/(x_1..x_n).
    pub fn residue_field(ring: &GradedQuotientRing) -> Self {
        let n = ring.n();
        let rels = (0..n)
            .map(|k| {
                let mut f = Form::zero(ring.table(), 1);
                f.coeffs[k] = 1;
                (1, ring.reduce_form(&f).expect("degree 1 within cutoff"))
            })
            .filter(|(_, v)| v.iter().any(|&x| x != 0))
            .collect();
        Self::new(vec![0], rels)
    }

    /// S/(ideal), the ideal given by forms over the ambient polynomial ring.
    pub fn quotient(ring: &GradedQuotientRing, ideal: &[Form]) -> Result<Self, ResolutionError> {
        let mut rels = Vec::new();
        for g in ideal {
            if g.degree > ring.cutoff() {
                if ring.vanishes_at_cutoff() {
                    continue;
                }
                return Err(ResolutionError::WindowOverflow { cutoff: ring.cutoff() });
            }
            let v = ring.reduce_form(g).map_err(|_| ResolutionError::WindowOverflow { cutoff: ring.cutoff() })?;
            if v.iter().any(|&x| x != 0) {
                rels.push((g.degree, v));
            }
        }
        Ok(Self::new(vec![0], rels))
    }

    pub fn gen_degrees(&self) -> &[usize] {
        &self.gen_degrees
    }

    pub fn relations(&self) -> &[(usize, Vec<u32>)] {
        &self.relations
    }
}

/// Limits for [`minimal_syzygy_betti_with`].
#[derive(Clone, Copy, Debug)]
pub struct SyzygyOptions {
    /// Largest dense matrix the engine may allocate, in bytes.
    pub memory_limit: usize,
}

impl Default for SyzygyOptions {
    fn default() -> Self {
        SyzygyOptions { memory_limit: 3 << 30 }
    }
}

/// Products of standard monomials: `table(s, t)` is the h(s) × (h(t)·h(s+t))
/// matrix whose entry [μ, (λ, ν)] is the ν-coordinate of λ·μ.
struct ProductTables<'a> {
    ring: &'a GradedQuotientRing,
    top: usize,
    cache: Vec<Vec<OnceLock<Vec<f64>>>>,
}

impl<'a> ProductTables<'a> {
    fn new(ring: &'a GradedQuotientRing, top: usize) -> Self {
        let cache = (0..=top).map(|_| (0..=top).map(|_| OnceLock::new()).collect()).collect();
        ProductTables { ring, top, cache }
    }

    fn h(&self, d: usize) -> usize {
        if d > self.ring.cutoff() {
            assert!(self.ring.vanishes_at_cutoff(), "degree {d} beyond the ring cutoff");
            0
        } else {
            self.ring.h(d)
        }
    }

    fn table(&self, s: usize, t: usize) -> &[f64] {
        assert!(s + t <= self.top);
        self.cache[s][t].get_or_init(|| {
            let (hs, ht, hst) = (self.h(s), self.h(t), self.h(s + t));
            let mut out = vec![0.0; hs * ht * hst];
            if hst == 0 {
                return out;
            }
            let tab = self.ring.table();
            let std_s = self.ring.standard_monomials(s);
            let std_t = self.ring.standard_monomials(t);
            for (mu, &ms) in std_s.iter().enumerate() {
                for (lam, &mt) in std_t.iter().enumerate() {
                    let prod = tab.product(t, mt, s, ms);
                    let nf = self.ring.normal_form(s + t, prod);
                    let row = &mut out[mu * ht * hst + lam * hst..mu * ht * hst + (lam + 1) * hst];
                    for (o, v) in row.iter_mut().zip(nf) {
                        *o = v as f64;
                    }
                }
            }
            out
        })
    }
}

/// A free module with sorted generator degrees and its per-degree layout.
struct FreeModule {
    degrees: Vec<usize>,
}

impl FreeModule {
    /// Offsets of each generator block in F_d (length gens + 1).
    fn offsets(&self, pt: &ProductTables, d: usize) -> Vec<usize> {
        let mut off = Vec::with_capacity(self.degrees.len() + 1);
        let mut acc = 0;
        off.push(0);
        for &e in &self.degrees {
            if e <= d {
                acc += pt.h(d - e);
            }
            off.push(acc);
        }
        off
    }

    fn dim(&self, pt: &ProductTables, d: usize) -> usize {
        *self.offsets(pt, d).last().unwrap()
    }
}

/// Writes λ·w for every w in `ws` (all of degree e, elements of the free
/// module `fm`) and every standard monomial λ of degree t into `out`, one
/// row per (w, λ) in that order, each of width dim F_{e+t}.
fn multiply_rows(
    pt: &ProductTables,
    fm: &FreeModule,
    ws: &[&[u32]],
    e: usize,
    t: usize,
    out: &mut Vec<f64>,
    p: f64,
) {
    let d = e + t;
    let off_e = fm.offsets(pt, e);
    let off_d = fm.offsets(pt, d);
    let width = off_d[fm.degrees.len()];
    let ht = pt.h(t);
    let nw = ws.len();
    let start = out.len();
    out.resize(start + nw * ht * width, 0.0);
    let mut wbuf: Vec<f64> = Vec::new();
    let mut res: Vec<f64> = Vec::new();
    for (g, &eg) in fm.degrees.iter().enumerate() {
        if eg > e {
            break;
        }
        let s = e - eg;
        let hs = off_e[g + 1] - off_e[g];
        let hst = off_d[g + 1] - off_d[g];
        if hs == 0 || hst == 0 {
            continue;
        }
        wbuf.clear();
        let mut any = false;
        for w in ws {
            let seg = &w[off_e[g]..off_e[g + 1]];
            any |= seg.iter().any(|&x| x != 0);
            wbuf.extend(seg.iter().map(|&x| x as f64));
        }
        if !any {
            continue;
        }
        let tab = pt.table(s, t);
        let cols = ht * hst;
        res.clear();
        res.resize(nw * cols, 0.0);
        unsafe {
            matrixmultiply::dgemm(
                nw,
                hs,
                cols,
                1.0,
                wbuf.as_ptr(),
                hs as isize,
                1,
                tab.as_ptr(),
                cols as isize,
                1,
                0.0,
                res.as_mut_ptr(),
                cols as isize,
                1,
            );
        }
        reduce_slice_with(&mut res, p, 1.0 / p);
        for wi in 0..nw {
            for lam in 0..ht {
                let row = start + (wi * ht + lam) * width;
                out[row + off_d[g]..row + off_d[g + 1]]
                    .copy_from_slice(&res[wi * cols + lam * hst..wi * cols + (lam + 1) * hst]);
            }
        }
    }
}

/// Echelon form of (m·N)_d, spanned by λ·w over generators w of degree
/// < d. With a target (the known dim N_d) random combinations Σ r_λ λ·w are
/// inserted first; every such row lies in (m·N)_d, so reaching the target
/// certifies equality. Only when they fall short are the individual
/// products added, stopping as soon as the target is met.
#[allow(clippy::too_many_arguments)]
fn multiples_echelon(
    pt: &ProductTables,
    field: PrimeField,
    fm: &FreeModule,
    gens: &[(usize, Vec<u32>)],
    d: usize,
    target: Option<usize>,
    limit: usize,
    seed: u64,
) -> Result<RowEchelon, ResolutionError> {
    let width = fm.dim(pt, d);
    let p = field.p() as f64;
    let mut ech = RowEchelon::new(field, width);
    let bound = target.unwrap_or(width);
    check_memory(bound, width, limit)?;
    if bound == 0 {
        return Ok(ech);
    }
    let mut degs: Vec<usize> = gens.iter().map(|g| g.0).filter(|&e| e < d && pt.h(d - e) > 0).collect();
    degs.sort_unstable();
    degs.dedup();
    let count: usize = gens.iter().filter(|g| degs.contains(&g.0)).count();
    if count == 0 {
        return Ok(ech);
    }
    let mut buf: Vec<f64> = Vec::new();
    if target.is_some() {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let per_gen = (bound + 32).div_ceil(count);
        for &e in degs.iter().rev() {
            let t = d - e;
            let ht = pt.h(t);
            let k = per_gen.min(ht);
            if k == ht {
                continue;
            }
            let group: Vec<&[u32]> = gens.iter().filter(|g| g.0 == e).map(|g| g.1.as_slice()).collect();
            let per = (1024 / ht).max(1);
            let mut rows: Vec<f64> = Vec::new();
            let mut coef = vec![0.0f64; k * ht];
            for chunk in group.chunks(per) {
                buf.clear();
                multiply_rows(pt, fm, chunk, e, t, &mut buf, p);
                rows.clear();
                rows.resize(chunk.len() * k * width, 0.0);
                for w in 0..chunk.len() {
                    for c in coef.iter_mut() {
                        *c = rng.gen_range(0..field.p()) as f64;
                    }
                    unsafe {
                        matrixmultiply::dgemm(
                            k,
                            ht,
                            width,
                            1.0,
                            coef.as_ptr(),
                            ht as isize,
                            1,
                            buf.as_ptr().add(w * ht * width),
                            width as isize,
                            1,
                            0.0,
                            rows.as_mut_ptr().add(w * k * width),
                            width as isize,
                            1,
                        );
                    }
                }
                reduce_slice_with(&mut rows, p, 1.0 / p);
                ech.insert_rows(&mut rows, chunk.len() * k);
                if ech.rank() >= bound {
                    return Ok(ech);
                }
            }
        }
    }
    // products λ·w themselves, generators of the highest degree first
    for &e in degs.iter().rev() {
        let t = d - e;
        let ht = pt.h(t);
        let group: Vec<&[u32]> = gens.iter().filter(|g| g.0 == e).map(|g| g.1.as_slice()).collect();
        let per = (512 / ht).max(1);
        for chunk in group.chunks(per) {
            buf.clear();
            multiply_rows(pt, fm, chunk, e, t, &mut buf, p);
            let nrows = chunk.len() * ht;
            ech.insert_rows(&mut buf, nrows);
            if ech.rank() >= bound {
                return Ok(ech);
            }
        }
    }
    Ok(ech)
}

fn check_memory(rows: usize, cols: usize, limit: usize) -> Result<(), ResolutionError> {
    let bytes = rows.saturating_mul(cols).saturating_mul(8);
    if bytes > limit {
        return Err(ResolutionError::ResourceLimit { rows, cols, bytes, limit });
    }
    Ok(())
}

/// β^S_{i,j}(M) for i ≤ max_i and j ≤ max_j by iterated minimal syzygies.
pub fn minimal_syzygy_betti(
    ring: &GradedQuotientRing,
    module: &GradedModulePresentation,
    max_i: usize,
    max_j: usize,
) -> Result<BettiTable, ResolutionError> {
    minimal_syzygy_betti_with(ring, module, max_i, max_j, SyzygyOptions::default())
}

pub fn minimal_syzygy_betti_with(
    ring: &GradedQuotientRing,
    module: &GradedModulePresentation,
    max_i: usize,
    max_j: usize,
    opts: SyzygyOptions,
) -> Result<BettiTable, ResolutionError> {
    let field = ring.field();
    let artinian = ring.vanishes_at_cutoff();
    if !artinian && max_j > ring.cutoff() {
        return Err(ResolutionError::WindowOverflow { cutoff: ring.cutoff() });
    }
    let pt = ProductTables::new(ring, max_j);
    let ring_top = if artinian { ring.top_degree().unwrap_or(0) } else { usize::MAX };

    let mut table = BettiTable::new(ring_label(ring), max_i, max_j);
    let f0 = FreeModule { degrees: module.gen_degrees.clone() };
    for &e in &f0.degrees {
        if e <= max_j {
            table.add(0, e, 1);
        }
    }
    for (deg, v) in &module.relations {
        if v.len() != f0.dim(&pt, *deg) {
            return Err(ResolutionError::BadRelation { degree: *deg });
        }
        let off = f0.offsets(&pt, *deg);
        for (g, &eg) in f0.degrees.iter().enumerate() {
            if eg == *deg && v[off[g]..off[g + 1]].iter().any(|&x| x != 0) {
                return Err(ResolutionError::NonMinimal { step: 0, degree: *deg });
            }
        }
    }
    if max_i == 0 {
        return Ok(table);
    }

    // Step 0: minimal generators of the relation submodule N_0 ⊆ F_0.
    let mut fm = f0;
    let mut gens: Vec<(usize, Vec<u32>)> = Vec::new();
    let mut dim_n: Vec<usize> = vec![0; max_j + 1];
    let top_of = |fm: &FreeModule| fm.degrees.iter().copied().max().map(|e| e.saturating_add(ring_top));
    for d in 0..=max_j {
        if top_of(&fm).is_some_and(|t| d > t) {
            break;
        }
        let width = fm.dim(&pt, d);
        if width == 0 {
            continue;
        }
        let mut ech = multiples_echelon(&pt, field, &fm, &gens, d, None, opts.memory_limit, 0)?;
        for (deg, v) in module.relations.iter().filter(|r| r.0 == d) {
            if ech.insert_u32_rows(v, 1)[0] {
                gens.push((*deg, v.clone()));
                table.add(1, d, 1);
            }
        }
        dim_n[d] = ech.rank();
    }

    for i in 1..max_i {
        // F_i has one generator per minimal generator of N_{i−1}.
        let images = std::mem::take(&mut gens);
        let prev = fm;
        fm = FreeModule { degrees: images.iter().map(|g| g.0).collect() };
        let last = i + 1 == max_i;
        let mut new_dim = vec![0usize; max_j + 1];
        for d in 0..=max_j {
            if top_of(&fm).is_none_or(|t| d > t) {
                break;
            }
            let width = fm.dim(&pt, d);
            let target = width.checked_sub(dim_n[d]).ok_or(ResolutionError::Inexact {
                step: i,
                degree: d,
            })?;
            new_dim[d] = target;
            if target == 0 {
                continue;
            }
            let clock = Instant::now();
            let seed = ((i as u64) << 32) | d as u64;
            let ech = multiples_echelon(&pt, field, &fm, &gens, d, Some(target), opts.memory_limit, seed)?;
            let missing = target - ech.rank();
            log::debug!(
                "step {i} degree {d}: dim F = {width}, dim N = {target}, multiples {} ({:.1?}), new {missing}",
                ech.rank(),
                clock.elapsed()
            );
            if missing == 0 {
                continue;
            }
            table.add(i + 1, d, missing as u64);
            // the generators themselves are only needed for multiples in
            // later degrees of this step or for the next step
            let final_degree = d == max_j || top_of(&fm).is_some_and(|t| d >= t);
            if last && final_degree {
                continue;
            }
            let clock = Instant::now();
            let found = kernel_on_free_columns(&pt, field, &prev, &fm, &images, &ech, d, opts.memory_limit)?;
            log::debug!("step {i} degree {d}: kernel ({:.1?})", clock.elapsed());
            if found.len() != missing {
                return Err(ResolutionError::Inexact { step: i, degree: d });
            }
            let off = fm.offsets(&pt, d);
            for v in found {
                for (g, &eg) in fm.degrees.iter().enumerate() {
                    if eg == d && v[off[g]..off[g + 1]].iter().any(|&x| x != 0) {
                        return Err(ResolutionError::NonMinimal { step: i, degree: d });
                    }
                }
                gens.push((d, v));
            }
        }
        dim_n = new_dim;
    }
    Ok(table)
}

/// Kernel of φ: F_{i,d} → F_{i−1,d} restricted to the span of the columns
/// that are free in `ech`, lifted back into F_{i,d}.
#[allow(clippy::too_many_arguments)]
fn kernel_on_free_columns(
    pt: &ProductTables,
    field: PrimeField,
    prev: &FreeModule,
    fm: &FreeModule,
    images: &[(usize, Vec<u32>)],
    ech: &RowEchelon,
    d: usize,
    limit: usize,
) -> Result<Vec<Vec<u32>>, ResolutionError> {
    let free = ech.free_columns();
    let nc = free.len();
    let tgt = prev.dim(pt, d);
    check_memory(nc, nc, limit)?;
    if tgt.saturating_mul(nc).saturating_mul(4) > limit {
        return Err(ResolutionError::ResourceLimit { rows: tgt, cols: nc, bytes: tgt * nc * 4, limit });
    }
    let off = fm.offsets(pt, d);
    let p = field.p() as f64;
    // transposed images: row r of `tr` is coordinate r of φ(e_c) over c
    let mut tr = vec![0u32; tgt * nc];
    let mut c0 = 0;
    let mut g = 0;
    while c0 < nc {
        while off[g + 1] <= free[c0] {
            g += 1;
        }
        // all free columns in generator block g, taken together
        let mut c1 = c0;
        while c1 < nc && free[c1] < off[g + 1] {
            c1 += 1;
        }
        let e = fm.degrees[g];
        let t = d - e;
        let mut rows = Vec::new();
        multiply_rows(pt, prev, &[images[g].1.as_slice()], e, t, &mut rows, p);
        for (k, &c) in free[c0..c1].iter().enumerate() {
            let lam = c - off[g];
            let src = &rows[lam * tgt..(lam + 1) * tgt];
            for (r, &x) in src.iter().enumerate() {
                tr[r * nc + c0 + k] = x as u32;
            }
        }
        c0 = c1;
    }
    let mut kech = Echelon::new(field, nc);
    const BATCH: usize = 512;
    let mut r0 = 0;
    while r0 < tgt && !kech.is_full() {
        let r1 = (r0 + BATCH).min(tgt);
        kech.insert_u32_rows(&tr[r0 * nc..r1 * nc], r1 - r0);
        r0 = r1;
    }
    drop(tr);
    let width = fm.dim(pt, d);
    Ok(kech
        .kernel_vectors()
        .into_iter()
        .map(|y| {
            let mut v = vec![0u32; width];
            for (k, &c) in free.iter().enumerate() {
                v[c] = y[k];
            }
            v
        })
        .collect())
}

fn ring_label(ring: &GradedQuotientRing) -> String {
    format!("S({} generators)", ring.generators().len())
}
