//! Betti numbers of the residue field of a quotient ring through the bar
//! construction on its Koszul homology.
//!
//! For M = Q/I the Koszul complex X = Λ ⊗ M is a graded-commutative dg
//! algebra and P^M_k(t, u) = (1 + tu)^n · Hilb Tor^X(k, k). The retract
//! (i, p, h) of X onto H = H(X) carries the product over to an A∞ structure
//! on H: for a word w of basis elements,
//!
//!   J(x) = i x,   J(w) = Σ_{w = uv} (−1)^{|J(u)|} h(J(u) · J(v)),
//!   b(w) = Σ_{w = uv} (−1)^{|J(u)|} p(J(u) · J(v)),
//!
//! and Tor^X(k, k) is the homology of the bar construction on H̄ whose
//! differential applies b to consecutive letters. Each letter has bar degree
//! at least 2, so words stay short in the homological range of interest.

use std::collections::HashMap;

use super::pieces::ModulePieces;
use super::transfer::KoszulRetract;
use super::{BettiTable, ResolutionError, SyzygyOptions};
use crate::ff_linalg::{PrimeField, PrimeFieldMatrix, RowEchelon};
use crate::graded::GradedQuotientRing;
use crate::series::binomial_usize;

/// Bidegree (i, a) of Λ^i ⊗ M_a; internal degree i + a.
type Bideg = (usize, usize);

const BATCH: usize = 256;

/// The Koszul dg algebra of a ring together with its retract.
struct KoszulAlgebra {
    field: PrimeField,
    n: usize,
    top: usize,
    r: KoszulRetract,
    /// prod[a][b]: row s·h_b + t holds the product of basis elements s ∈ M_a
    /// and t ∈ M_b in M_{a+b}.
    prod: Vec<Vec<PrimeFieldMatrix>>,
}

impl KoszulAlgebra {
    fn new(ring: &GradedQuotientRing) -> Result<Self, ResolutionError> {
        if !ring.vanishes_at_cutoff() {
            return Err(ResolutionError::WindowOverflow { cutoff: ring.cutoff() });
        }
        if ring.h(1) < ring.n() {
            return Err(ResolutionError::LinearRelations { count: ring.n() - ring.h(1) });
        }
        let m = ModulePieces::from_ring(ring);
        let r = KoszulRetract::new(&m)?;
        let field = ring.field();
        let top = m.top();
        let table = ring.table();
        let mut prod = Vec::with_capacity(top + 1);
        for a in 0..=top {
            let mut row = Vec::with_capacity(top + 1);
            for b in 0..=top {
                let (ha, hb) = (ring.h(a), ring.h(b));
                let hc = if a + b <= top { ring.h(a + b) } else { 0 };
                let mut t = PrimeFieldMatrix::zeros(field, ha * hb, hc);
                if hc > 0 {
                    for (s, &ls) in ring.standard_monomials(a).iter().enumerate() {
                        for (u, &lu) in ring.standard_monomials(b).iter().enumerate() {
                            let nf = ring.normal_form(a + b, table.product(a, ls, b, lu));
                            for (q, &v) in nf.iter().enumerate() {
                                if v != 0 {
                                    t.set(s * hb + u, q, v);
                                }
                            }
                        }
                    }
                }
                row.push(t);
            }
            prod.push(row);
        }
        Ok(KoszulAlgebra { field, n: m.n(), top, r, prod })
    }

    fn h(&self, a: usize) -> usize {
        self.r.m.dim(a).unwrap_or(0)
    }

    fn dim_x(&self, (i, a): Bideg) -> usize {
        if i > self.n || a > self.top {
            0
        } else {
            self.r.subsets[i].len() * self.h(a)
        }
    }

    fn dim_h(&self, (i, a): Bideg) -> usize {
        self.r.homology_dim(i, a)
    }

    /// All products u·v for rows u of `us` ⊂ X_{b1} and v of `vs` ⊂ X_{b2};
    /// row u·|vs| + v of the result.
    fn product(&self, us: &PrimeFieldMatrix, b1: Bideg, vs: &PrimeFieldMatrix, b2: Bideg) -> PrimeFieldMatrix {
        let f = self.field;
        let out_deg = (b1.0 + b2.0, b1.1 + b2.1);
        let w = self.dim_x(out_deg);
        let (nu, nv) = (us.rows(), vs.rows());
        if w == 0 || nu == 0 || nv == 0 {
            return PrimeFieldMatrix::zeros(f, nu * nv, w);
        }
        if nv > nu {
            // u·v = (−1)^{i1·i2} v·u; multiply on the side with fewer rows
            let swapped = self.product(vs, b2, us, b1);
            let neg = b1.0 * b2.0 % 2 == 1;
            return PrimeFieldMatrix::from_fn(f, nu * nv, w, |row, c| {
                let x = swapped.get((row % nv) * nu + row / nv, c);
                if neg { f.neg(x) } else { x }
            });
        }
        let mut out = vec![0u32; nu * nv * w];
        for vr in 0..nv {
            let rm = self.right_multiplication(vs.row(vr), b1, b2);
            let img = us.mul(&rm).expect("shape");
            for ur in 0..nu {
                out[(ur * nv + vr) * w..(ur * nv + vr + 1) * w].copy_from_slice(img.row(ur));
            }
        }
        PrimeFieldMatrix::from_data(f, nu * nv, w, out)
    }

    /// Matrix of x ↦ x·v from X_{b1} to X_{b1+b2}, acting on row vectors.
    fn right_multiplication(&self, v: &[u32], (i1, a1): Bideg, (i2, a2): Bideg) -> PrimeFieldMatrix {
        let f = self.field;
        let (i, a) = (i1 + i2, a1 + a2);
        let (h1, h2, h) = (self.h(a1), self.h(a2), self.h(a));
        let mut rm = PrimeFieldMatrix::zeros(f, self.dim_x((i1, a1)), self.dim_x((i, a)));
        let prod = &self.prod[a1][a2];
        for (ti, t) in self.r.subsets[i2].iter().enumerate() {
            for tm in 0..h2 {
                let c = v[ti * h2 + tm];
                if c == 0 {
                    continue;
                }
                for (si, s) in self.r.subsets[i1].iter().enumerate() {
                    if s.iter().any(|x| t.contains(x)) {
                        continue;
                    }
                    // e_S ∧ e_T = (−1)^{#(x ∈ S, y ∈ T, x > y)} e_{S ∪ T}
                    let inversions: usize = s.iter().map(|x| t.iter().filter(|&y| y < x).count()).sum();
                    let mut u: Vec<u8> = s.iter().chain(t.iter()).copied().collect();
                    u.sort_unstable();
                    let ui = self.r.index[i][&u];
                    let c = if inversions % 2 == 1 { f.neg(c) } else { c };
                    for sm in 0..h1 {
                        let row = si * h1 + sm;
                        for (q, &pv) in prod.row(sm * h2 + tm).iter().enumerate() {
                            if pv != 0 {
                                let col = ui * h + q;
                                rm.set(row, col, f.add(rm.get(row, col), f.mul(c, pv)));
                            }
                        }
                    }
                }
            }
        }
        rm
    }

    fn homotopy(&self, rows: &PrimeFieldMatrix, (i, a): Bideg) -> PrimeFieldMatrix {
        if i >= self.n || a == 0 || rows.rows() == 0 {
            return PrimeFieldMatrix::zeros(self.field, rows.rows(), self.dim_x((i + 1, a.wrapping_sub(1))));
        }
        rows.mul(&self.r.pieces[i][a].homotopy_t).expect("shape")
    }

    fn project(&self, rows: &PrimeFieldMatrix, (i, a): Bideg) -> PrimeFieldMatrix {
        if self.dim_x((i, a)) == 0 {
            return PrimeFieldMatrix::zeros(self.field, rows.rows(), 0);
        }
        rows.mul(&self.r.pieces[i][a].proj_t).expect("shape")
    }
}

/// Memoized J and b on words of letter bidegrees.
struct Transferred<'a> {
    alg: &'a KoszulAlgebra,
    j: HashMap<Vec<Bideg>, PrimeFieldMatrix>,
    b: HashMap<Vec<Bideg>, Option<PrimeFieldMatrix>>,
}

/// Bidegree of J(w) in X.
fn j_degree(shape: &[Bideg]) -> Option<Bideg> {
    let k = shape.len();
    let i: usize = shape.iter().map(|x| x.0).sum::<usize>() + k - 1;
    let a = shape.iter().map(|x| x.1).sum::<usize>().checked_sub(k - 1)?;
    Some((i, a))
}

/// Bidegree of b(w) in H.
fn b_degree(shape: &[Bideg]) -> Option<Bideg> {
    let k = shape.len();
    let i: usize = shape.iter().map(|x| x.0).sum::<usize>() + k - 2;
    let a = shape.iter().map(|x| x.1).sum::<usize>().checked_sub(k - 2)?;
    Some((i, a))
}

impl<'a> Transferred<'a> {
    fn new(alg: &'a KoszulAlgebra) -> Self {
        Transferred { alg, j: HashMap::new(), b: HashMap::new() }
    }

    /// Σ over splittings of (−1)^{|J(u)|} J(u)·J(v), in X at b_degree(shape).
    fn split_products(&mut self, shape: &[Bideg]) -> PrimeFieldMatrix {
        let alg = self.alg;
        let f = alg.field;
        let rows: usize = shape.iter().map(|&d| alg.dim_h(d)).product();
        let Some(deg) = b_degree(shape) else {
            return PrimeFieldMatrix::zeros(f, rows, 0);
        };
        let w = alg.dim_x(deg);
        let mut acc = vec![0u32; rows * w];
        if w == 0 {
            return PrimeFieldMatrix::zeros(f, rows, 0);
        }
        for r in 1..shape.len() {
            let (left, right) = shape.split_at(r);
            let (Some(dl), Some(dr)) = (j_degree(left), j_degree(right)) else { continue };
            if alg.dim_x(dl) == 0 || alg.dim_x(dr) == 0 {
                continue;
            }
            let jl = self.j_of(left);
            let jr = self.j_of(right);
            let pr = alg.product(&jl, dl, &jr, dr);
            let neg = dl.0 % 2 == 1;
            for (x, &y) in acc.iter_mut().zip(pr.data()) {
                *x = if neg { f.sub(*x, y) } else { f.add(*x, y) };
            }
        }
        PrimeFieldMatrix::from_data(f, rows, w, acc)
    }

    fn j_of(&mut self, shape: &[Bideg]) -> PrimeFieldMatrix {
        if let Some(m) = self.j.get(shape) {
            return m.clone();
        }
        let alg = self.alg;
        let m = if shape.len() == 1 {
            let (i, a) = shape[0];
            alg.r.pieces[i][a].reps.clone()
        } else {
            let s = self.split_products(shape);
            match b_degree(shape) {
                Some(deg) if s.cols() > 0 => alg.homotopy(&s, deg),
                _ => PrimeFieldMatrix::zeros(alg.field, s.rows(), 0),
            }
        };
        self.j.insert(shape.to_vec(), m.clone());
        m
    }

    /// b on a word of length ≥ 2; `None` when it vanishes identically.
    fn b_of(&mut self, shape: &[Bideg]) -> Option<PrimeFieldMatrix> {
        if let Some(m) = self.b.get(shape) {
            return m.clone();
        }
        let alg = self.alg;
        let out = b_degree(shape).filter(|&d| alg.dim_h(d) > 0).and_then(|deg| {
            let s = self.split_products(shape);
            let m = alg.project(&s, deg);
            (!m.is_zero()).then_some(m)
        });
        self.b.insert(shape.to_vec(), out.clone());
        out
    }
}

/// Words of letter bidegrees with given bar degree and internal degree, with
/// the offset of each block in the basis.
struct BarPiece {
    shapes: Vec<(Vec<Bideg>, usize)>,
    dim: usize,
    index: HashMap<Vec<Bideg>, usize>,
}

fn bar_piece(alg: &KoszulAlgebra, letters: &[Bideg], t: usize, j: usize) -> BarPiece {
    fn rec(
        letters: &[Bideg],
        t: usize,
        j: usize,
        cur: &mut Vec<Bideg>,
        out: &mut Vec<Vec<Bideg>>,
    ) {
        if t == 0 {
            if j == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for &l in letters {
            if l.0 < t && l.0 + l.1 <= j {
                cur.push(l);
                rec(letters, t - l.0 - 1, j - l.0 - l.1, cur, out);
                cur.pop();
            }
        }
    }
    let mut words = Vec::new();
    rec(letters, t, j, &mut Vec::new(), &mut words);
    let mut shapes = Vec::new();
    let mut index = HashMap::new();
    let mut dim = 0;
    for w in words {
        let size: usize = w.iter().map(|&d| alg.dim_h(d)).product();
        index.insert(w.clone(), dim);
        shapes.push((w, dim));
        dim += size;
    }
    BarPiece { shapes, dim, index }
}

/// Rank of the bar differential from `src` to `tgt`.
fn bar_rank(
    tr: &mut Transferred,
    src: &BarPiece,
    tgt: &BarPiece,
    limit: usize,
) -> Result<usize, ResolutionError> {
    let alg = tr.alg;
    let f = alg.field;
    if src.dim == 0 || tgt.dim == 0 {
        return Ok(0);
    }
    // rows of the chosen orientation, as sparse (column, value) lists
    let by_source = tgt.dim <= src.dim;
    let (nrows, width) = if by_source { (src.dim, tgt.dim) } else { (tgt.dim, src.dim) };
    let bytes = width.saturating_mul(width.min(nrows)).saturating_mul(8);
    if bytes > limit {
        return Err(ResolutionError::ResourceLimit { rows: nrows, cols: width, bytes, limit });
    }
    let mut rows: Vec<Vec<(u32, u32)>> = vec![Vec::new(); nrows];
    for (shape, off) in &src.shapes {
        let dims: Vec<usize> = shape.iter().map(|&d| alg.dim_h(d)).collect();
        let mut bar_sign = 0usize;
        for r in 0..shape.len() {
            for k in 2..=shape.len() - r {
                let seg = &shape[r..r + k];
                let Some(bm) = tr.b_of(seg) else { continue };
                let out = b_degree(seg).expect("nonzero b has a degree");
                let mut tshape = shape[..r].to_vec();
                tshape.push(out);
                tshape.extend_from_slice(&shape[r + k..]);
                let toff = tgt.index[&tshape];
                let left: usize = dims[..r].iter().product();
                let mid: usize = dims[r..r + k].iter().product();
                let right: usize = dims[r + k..].iter().product();
                let hout = alg.dim_h(out);
                let neg = bar_sign % 2 == 1;
                for l in 0..left {
                    for m in 0..mid {
                        let brow = bm.row(m);
                        for (q, &v) in brow.iter().enumerate() {
                            if v == 0 {
                                continue;
                            }
                            let v = if neg { f.neg(v) } else { v };
                            for rr in 0..right {
                                let s = off + (l * mid + m) * right + rr;
                                let t = toff + (l * hout + q) * right + rr;
                                if by_source {
                                    rows[s].push((t as u32, v));
                                } else {
                                    rows[t].push((s as u32, v));
                                }
                            }
                        }
                    }
                }
            }
            bar_sign += shape[r].0 + 1;
        }
    }
    let mut ech = RowEchelon::new(f, width);
    let mut buf = vec![0f64; BATCH * width];
    let mut start = 0;
    while start < nrows && !ech.is_full() {
        let end = (start + BATCH).min(nrows);
        let nb = end - start;
        buf[..nb * width].iter_mut().for_each(|x| *x = 0.0);
        for (k, row) in rows[start..end].iter_mut().enumerate() {
            for &(c, v) in row.iter() {
                let x = &mut buf[k * width + c as usize];
                *x = f.add(*x as u32, v) as f64;
            }
            *row = Vec::new();
        }
        ech.insert_rows(&mut buf[..nb * width], nb);
        start = end;
    }
    Ok(ech.rank())
}

/// dim Tor^X_{t}(k, k)_j for bar degree t ≤ max_t, keyed by (t, j).
fn bar_homology(
    alg: &KoszulAlgebra,
    max_t: usize,
    limit: usize,
) -> Result<HashMap<(usize, usize), u64>, ResolutionError> {
    let mut letters: Vec<Bideg> = Vec::new();
    for i in 1..=alg.n.min(max_t) {
        for a in 0..=alg.top {
            if alg.dim_h((i, a)) > 0 && i < max_t + 1 {
                letters.push((i, a));
            }
        }
    }
    // internal degree of a word is at most (top + 1)·t / 2 + t
    let max_j = (max_t + 1) * (alg.top + alg.n + 1);
    let mut tr = Transferred::new(alg);
    let mut out = HashMap::new();
    out.insert((0, 0), 1);
    for j in 1..=max_j {
        let pieces: Vec<BarPiece> = (0..=max_t + 1).map(|t| bar_piece(alg, &letters, t, j)).collect();
        if pieces.iter().all(|p| p.dim == 0) {
            continue;
        }
        let mut ranks = vec![0usize; max_t + 2];
        for t in 1..=max_t + 1 {
            ranks[t] = bar_rank(&mut tr, &pieces[t], &pieces[t - 1], limit)?;
            log::debug!(
                "bar degree {t}, internal {j}: {} -> {}, rank {}",
                pieces[t].dim,
                pieces[t - 1].dim,
                ranks[t]
            );
        }
        for t in 1..=max_t {
            let v = pieces[t].dim - ranks[t] - ranks[t + 1];
            if v > 0 {
                out.insert((t, j), v as u64);
            }
        }
    }
    Ok(out)
}

/// β^M_{i,j}(k) for i ≤ max_i, where M is an Artinian quotient ring, from
/// the bar construction on its Koszul homology.
pub fn residue_betti_by_bar(ring: &GradedQuotientRing, max_i: usize) -> Result<BettiTable, ResolutionError> {
    residue_betti_by_bar_with(ring, max_i, &SyzygyOptions::default())
}

pub fn residue_betti_by_bar_with(
    ring: &GradedQuotientRing,
    max_i: usize,
    opts: &SyzygyOptions,
) -> Result<BettiTable, ResolutionError> {
    let alg = KoszulAlgebra::new(ring)?;
    let tor = bar_homology(&alg, max_i, opts.memory_limit)?;
    let n = alg.n;
    let max_j = tor.keys().map(|&(t, j)| j + (max_i - t)).max().unwrap_or(0).max(max_i);
    let mut table = BettiTable::new("self", max_i, max_j);
    for (&(t, j), &v) in &tor {
        for k in 0..=n.min(max_i - t) {
            table.add(t + k, j + k, v * binomial_usize(n, k) as u64);
        }
    }
    Ok(table)
}
