//! Tor over a complete intersection of quadrics by homotopy transfer.
//!
//! For S = k[x]/(f_1..f_c) with f_k = Σ_j c_{kj} x_j a regular sequence and an
//! S-module M, Tor^S(M, k) is the homology of M ⊗ Λ ⊗ k⟨Y_1..Y_c⟩ with
//! differential ∂ ⊗ 1 + Σ_k Z_k ⊗ t_k, where ∂ is the Koszul differential,
//! Z_k = z_k ∧ (z_k = Σ_j c_{kj} E_j) and t_k lowers Y_k. A strong deformation
//! retract (i, p, h) of (M ⊗ Λ, ∂) onto H = Tor^Q(M, k) carries the
//! perturbation over to H ⊗ k⟨Y⟩ with differential
//! Σ_γ Φ_γ ⊗ t^γ,  Φ_γ = Σ_{orderings of γ} (−1)^{|γ|−1} p Z h Z ⋯ h Z i,
//! which is far smaller than the Tate complex tensored with M.

use std::collections::HashMap;

use super::complex::lex_subsets;
use super::pieces::ModulePieces;
use super::{BettiTable, ResolutionError};
use crate::ff_linalg::{Echelon, PrimeField, PrimeFieldMatrix};
use crate::graded::monomial_basis;

/// Data of the retract in one bidegree (Λ^i ⊗ M_a).
#[derive(Clone, Debug)]
pub(super) struct Piece {
    /// Cycle representatives of H_{i,a}, one per row.
    pub(super) reps: PrimeFieldMatrix,
    /// p as a dim_x × dim_h matrix acting on row vectors.
    pub(super) proj_t: PrimeFieldMatrix,
    /// h as a dim_x × dim_x(i+1, a−1) matrix acting on row vectors.
    pub(super) homotopy_t: PrimeFieldMatrix,
}

/// A strong deformation retract of the Koszul complex K ⊗ M onto its
/// homology, built bidegree by bidegree.
#[derive(Clone, Debug)]
pub struct KoszulRetract {
    field: PrimeField,
    n: usize,
    pub(super) m: ModulePieces,
    pub(super) subsets: Vec<Vec<Vec<u8>>>,
    pub(super) index: Vec<HashMap<Vec<u8>, usize>>,
    pub(super) pieces: Vec<Vec<Piece>>,
}

/// Dense matrix of ∂ : Λ^i ⊗ M_a → Λ^{i−1} ⊗ M_{a+1} (target × source).
pub(super) fn koszul_matrix(
    field: PrimeField,
    m: &ModulePieces,
    subsets: &[Vec<Vec<u8>>],
    index: &[HashMap<Vec<u8>, usize>],
    i: usize,
    a: usize,
) -> PrimeFieldMatrix {
    let ma = m.dim(a).unwrap_or(0);
    let mb = m.dim(a + 1).unwrap_or(0);
    let rows = if i == 0 { 0 } else { subsets[i - 1].len() * mb };
    let mut d = PrimeFieldMatrix::zeros(field, rows, subsets[i].len() * ma);
    if i == 0 || ma == 0 || mb == 0 {
        return d;
    }
    for (col, b) in subsets[i].iter().enumerate() {
        for t in 0..b.len() {
            let mut rest = b.clone();
            let v = rest.remove(t) as usize;
            let row = index[i - 1][&rest];
            let x = m.action(a, v).expect("action known");
            let neg = t % 2 == 0;
            for r in 0..mb {
                for s in 0..ma {
                    let e = x.get(r, s);
                    if e != 0 {
                        d.set(row * mb + r, col * ma + s, if neg { field.neg(e) } else { e });
                    }
                }
            }
        }
    }
    d
}

/// Inverse of a square matrix; panics if it is singular.
fn inverse(t: &PrimeFieldMatrix) -> PrimeFieldMatrix {
    let f = t.field();
    let n = t.rows();
    let aug = PrimeFieldMatrix::from_fn(f, n, 2 * n, |r, c| {
        if c < n {
            t.get(r, c)
        } else if c - n == r {
            1
        } else {
            0
        }
    });
    let e = aug.echelon();
    assert_eq!(e.rank(), n, "basis change is singular");
    let rows = e.sorted_rows();
    PrimeFieldMatrix::from_fn(f, n, n, |r, c| rows[r][n + c] as u32)
}

impl KoszulRetract {
    /// Build the retract for a module whose pieces are all known.
    pub fn new(m: &ModulePieces) -> Result<Self, ResolutionError> {
        if !m.is_complete() {
            return Err(ResolutionError::WindowOverflow { cutoff: m.top() });
        }
        let field = m.field();
        let n = m.n();
        let top = m.top();
        let subsets: Vec<Vec<Vec<u8>>> = (0..=n).map(|k| lex_subsets(n, k)).collect();
        let index: Vec<HashMap<Vec<u8>, usize>> = subsets
            .iter()
            .map(|b| b.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect())
            .collect();
        // ∂ out of every bidegree and the columns on which it is injective
        let mut diff = vec![Vec::new(); n + 1];
        let mut lift_cols = vec![Vec::new(); n + 1];
        for i in 0..=n {
            for a in 0..=top {
                let d = koszul_matrix(field, m, &subsets, &index, i, a);
                lift_cols[i].push(if d.rows() == 0 { Vec::new() } else { d.column_span_pivots() });
                diff[i].push(d);
            }
        }
        let mut pieces = vec![Vec::new(); n + 1];
        for i in 0..=n {
            for a in 0..=top {
                let dim_x = subsets[i].len() * m.dim(a).unwrap_or(0);
                // boundaries ∂(e_s) for the lifting columns s one step up
                let (bounds, up_cols, up_dim): (Vec<Vec<u32>>, &[usize], usize) = if i < n && a > 0 {
                    let d = &diff[i + 1][a - 1];
                    let cols = &lift_cols[i + 1][a - 1];
                    (cols.iter().map(|&s| d.column(s)).collect(), cols, d.cols())
                } else {
                    (Vec::new(), &[], if i < n && a > 0 { diff[i + 1][a - 1].cols() } else { 0 })
                };
                let kernel = if diff[i][a].rows() == 0 {
                    (0..dim_x)
                        .map(|s| {
                            let mut v = vec![0u32; dim_x];
                            v[s] = 1;
                            v
                        })
                        .collect()
                } else {
                    diff[i][a].kernel_basis()
                };
                let mut ech = Echelon::new(field, dim_x);
                for b in &bounds {
                    ech.insert_u32_rows(b, 1);
                }
                let reps: Vec<Vec<u32>> =
                    kernel.into_iter().filter(|z| ech.insert_u32_rows(z, 1)[0]).collect();
                let own = &lift_cols[i][a];
                let r_in = bounds.len();
                let dim_h = reps.len();
                assert_eq!(r_in + dim_h + own.len(), dim_x, "retract dimensions");
                // columns: boundaries, cycle representatives, lifting unit vectors
                let mut t = PrimeFieldMatrix::zeros(field, dim_x, dim_x);
                for (c, v) in bounds.iter().chain(reps.iter()).enumerate() {
                    for (r, &x) in v.iter().enumerate() {
                        t.set(r, c, x);
                    }
                }
                for (k, &s) in own.iter().enumerate() {
                    t.set(s, r_in + dim_h + k, 1);
                }
                let tinv = if dim_x == 0 { t.clone() } else { inverse(&t) };
                let proj_t = PrimeFieldMatrix::from_fn(field, dim_x, dim_h, |x, hh| tinv.get(r_in + hh, x));
                let mut homotopy_t = PrimeFieldMatrix::zeros(field, dim_x, up_dim);
                for (k, &s) in up_cols.iter().enumerate() {
                    for x in 0..dim_x {
                        homotopy_t.set(x, s, tinv.get(k, x));
                    }
                }
                let reps = PrimeFieldMatrix::from_fn(field, dim_h, dim_x, |r, c| reps[r][c]);
                pieces[i].push(Piece { reps, proj_t, homotopy_t });
            }
        }
        Ok(KoszulRetract { field, n, m: m.clone(), subsets, index, pieces })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Highest module degree.
    pub fn top(&self) -> usize {
        self.m.top()
    }

    /// dim H_{i,a} = β^Q_{i,i+a}(M).
    pub fn homology_dim(&self, i: usize, a: usize) -> usize {
        self.pieces.get(i).and_then(|p| p.get(a)).map_or(0, |p| p.reps.rows())
    }

    /// Rows of `v` (vectors in Λ^i ⊗ M_a) multiplied by z ∧ with
    /// z = Σ_j ℓ_j E_j, `forms[j]` the coefficients of ℓ_j.
    fn wedge(&self, forms: &[Vec<u32>], i: usize, a: usize, v: &PrimeFieldMatrix) -> PrimeFieldMatrix {
        let f = self.field;
        let ma = self.m.dim(a).unwrap_or(0);
        let mb = self.m.dim(a + 1).unwrap_or(0);
        let width = if i < self.n { self.subsets[i + 1].len() * mb } else { 0 };
        let mut out = PrimeFieldMatrix::zeros(f, v.rows(), width);
        if width == 0 || ma == 0 {
            return out;
        }
        // ℓ_j acting M_a → M_{a+1}, transposed for row vectors
        let lt: Vec<Option<PrimeFieldMatrix>> = forms
            .iter()
            .map(|c| {
                if c.iter().all(|&x| x == 0) {
                    return None;
                }
                let mut l = PrimeFieldMatrix::zeros(f, ma, mb);
                for (k, &ck) in c.iter().enumerate() {
                    if ck == 0 {
                        continue;
                    }
                    let x = self.m.action(a, k).expect("action known");
                    for r in 0..mb {
                        for s in 0..ma {
                            let e = x.get(r, s);
                            if e != 0 {
                                l.set(s, r, f.add(l.get(s, r), f.mul(ck, e)));
                            }
                        }
                    }
                }
                Some(l)
            })
            .collect();
        for (bi, b) in self.subsets[i].iter().enumerate() {
            let block = PrimeFieldMatrix::from_fn(f, v.rows(), ma, |r, s| v.get(r, bi * ma + s));
            if block.is_zero() {
                continue;
            }
            for j in 0..self.n as u8 {
                if b.contains(&j) {
                    continue;
                }
                let Some(l) = &lt[j as usize] else { continue };
                let below = b.iter().filter(|&&x| x < j).count();
                let mut bigger = b.clone();
                bigger.insert(below, j);
                let ti = self.index[i + 1][&bigger];
                let img = block.mul(l).expect("shape");
                for r in 0..v.rows() {
                    for s in 0..mb {
                        let y = img.get(r, s);
                        if y == 0 {
                            continue;
                        }
                        let y = if below % 2 == 1 { f.neg(y) } else { y };
                        let c = ti * mb + s;
                        out.set(r, c, f.add(out.get(r, c), y));
                    }
                }
            }
        }
        out
    }
}

/// H ⊗ k⟨Y_1..Y_c⟩ with the transferred differential.
#[derive(Clone, Debug)]
pub struct TransferredComplex {
    field: PrimeField,
    c: usize,
    /// dim H_{i,a}.
    hdims: Vec<Vec<usize>>,
    /// Φ_γ on H_{i,a}, keyed by (γ, i, a); row r is the image of basis
    /// vector r in H_{i+2|γ|−1, a+1}.
    phi: HashMap<(Vec<u8>, usize, usize), PrimeFieldMatrix>,
    max_i: usize,
}

impl TransferredComplex {
    /// Transfer the Tate differential for the quadrics with linear factors
    /// `factors[k][j]` (f_k = Σ_j c_{kj} x_j) onto H ⊗ k⟨Y⟩, far enough to
    /// compute Tor_i for i ≤ max_i.
    pub fn new(retract: &KoszulRetract, factors: &[Vec<Vec<u32>>], max_i: usize) -> Self {
        let n = retract.n;
        let top = retract.top();
        let c = factors.len();
        let hdims: Vec<Vec<usize>> =
            (0..=n).map(|i| (0..=top).map(|a| retract.homology_dim(i, a)).collect()).collect();
        let mut phi = HashMap::new();
        // V_γ on H_{i,a}: images in Λ^{i+2m−1} ⊗ M_{a+1}, one row per basis vector
        let mut prev: HashMap<(Vec<u8>, usize, usize), PrimeFieldMatrix> = HashMap::new();
        for m in 1..=max_i.div_ceil(2) {
            let mut cur: HashMap<(Vec<u8>, usize, usize), PrimeFieldMatrix> = HashMap::new();
            for gamma in monomial_basis(c, m) {
                for i in 0..=n {
                    // the source sits in total degree i + 2|α| ≤ max_i + 1 with α ≥ γ
                    if i + 2 * m > max_i + 1 || i + 2 * m - 1 > n {
                        continue;
                    }
                    for a in 0..top {
                        if hdims[i][a] == 0 {
                            continue;
                        }
                        let mut acc: Option<PrimeFieldMatrix> = None;
                        for k in 0..c {
                            if gamma[k] == 0 {
                                continue;
                            }
                            let img = if m == 1 {
                                let reps = &retract.pieces[i][a].reps;
                                retract.wedge(&factors[k], i, a, reps)
                            } else {
                                let mut lower = gamma.clone();
                                lower[k] -= 1;
                                let Some(v) = prev.get(&(lower, i, a)) else { continue };
                                // v lies in bidegree (i + 2m − 3, a + 1)
                                let hv = v.mul(&retract.pieces[i + 2 * m - 3][a + 1].homotopy_t).expect("shape");
                                retract.wedge(&factors[k], i + 2 * m - 2, a, &hv)
                            };
                            acc = Some(match acc {
                                None => img,
                                Some(s) => add(&s, &img),
                            });
                        }
                        let Some(v) = acc else { continue };
                        let target = &retract.pieces[i + 2 * m - 1][a + 1];
                        let mut image = v.mul(&target.proj_t).expect("shape");
                        if m % 2 == 0 {
                            image = negate(&image);
                        }
                        if !image.is_zero() {
                            phi.insert((gamma.clone(), i, a), image);
                        }
                        cur.insert((gamma.clone(), i, a), v);
                    }
                }
            }
            prev = cur;
        }
        TransferredComplex { field: retract.field, c, hdims, phi, max_i }
    }

    fn hdim(&self, i: usize, a: usize) -> usize {
        self.hdims.get(i).and_then(|r| r.get(a)).copied().unwrap_or(0)
    }

    /// Basis blocks of (H ⊗ k⟨Y⟩)_i in row a: (homological degree of the H
    /// factor, α, offset).
    fn blocks(&self, i: usize, a: usize) -> (Vec<(usize, Vec<u8>, usize)>, usize) {
        let mut out = Vec::new();
        let mut off = 0;
        for u in 0..=i / 2 {
            let hi = i - 2 * u;
            let d = self.hdim(hi, a);
            if d == 0 || (self.c == 0 && u > 0) {
                continue;
            }
            for alpha in monomial_basis(self.c, u) {
                out.push((hi, alpha, off));
                off += d;
            }
        }
        (out, off)
    }

    /// Matrix of the differential (H ⊗ k⟨Y⟩)_{i, row a} → (…)_{i−1, row a+1},
    /// one row per source basis vector.
    pub fn differential(&self, i: usize, a: usize) -> PrimeFieldMatrix {
        let f = self.field;
        let (src, ns) = self.blocks(i, a);
        let (tgt, nt) = if i == 0 { (Vec::new(), 0) } else { self.blocks(i - 1, a + 1) };
        let mut d = PrimeFieldMatrix::zeros(f, ns, nt);
        if ns == 0 || nt == 0 {
            return d;
        }
        let tindex: HashMap<(usize, &[u8]), usize> =
            tgt.iter().map(|(hi, al, off)| ((*hi, al.as_slice()), *off)).collect();
        for (hi, alpha, off) in &src {
            // γ ≤ α, γ ≠ 0
            let u = alpha.iter().map(|&x| x as usize).sum::<usize>();
            for m in 1..=u {
                for gamma in monomial_basis(self.c, m) {
                    if gamma.iter().zip(alpha).any(|(g, a)| g > a) {
                        continue;
                    }
                    let Some(mat) = self.phi.get(&(gamma.clone(), *hi, a)) else { continue };
                    let rest: Vec<u8> = alpha.iter().zip(&gamma).map(|(x, g)| x - g).collect();
                    let th = hi + 2 * m - 1;
                    let toff = tindex[&(th, rest.as_slice())];
                    for r in 0..mat.rows() {
                        for s in 0..mat.cols() {
                            let y = mat.get(r, s);
                            if y != 0 {
                                d.set(off + r, toff + s, y);
                            }
                        }
                    }
                }
            }
        }
        d
    }

    /// Number of nonzero blocks Φ_γ with |γ| = m.
    pub fn nonzero_terms(&self, m: usize) -> usize {
        self.phi.keys().filter(|(g, _, _)| g.iter().map(|&x| x as usize).sum::<usize>() == m).count()
    }

    /// Checks d ∘ d = 0 through total degree max_i + 1; returns the first
    /// failing (i, a).
    pub fn check_square_zero(&self) -> Result<(), (usize, usize)> {
        let amax = self.hdims[0].len() - 1;
        for i in 2..=self.max_i + 1 {
            for a in 0..amax.saturating_sub(1) {
                let d1 = self.differential(i, a);
                let d2 = self.differential(i - 1, a + 1);
                if d1.rows() == 0 || d2.cols() == 0 {
                    continue;
                }
                if !d1.mul(&d2).expect("shape").is_zero() {
                    return Err((i, a));
                }
            }
        }
        Ok(())
    }

    /// β_{i,i+a} for i ≤ max_i, every row a.
    pub fn betti(&self, base: &str) -> BettiTable {
        let amax = self.hdims[0].len() - 1;
        let mut table = BettiTable::new(base, self.max_i, self.max_i + amax);
        let mut ranks: HashMap<(usize, usize), usize> = HashMap::new();
        let mut rank = |i: usize, a: usize| -> usize {
            *ranks.entry((i, a)).or_insert_with(|| self.differential(i, a).rank())
        };
        for i in 0..=self.max_i {
            for a in 0..=amax {
                let dim = self.blocks(i, a).1;
                if dim == 0 {
                    continue;
                }
                let out = if i >= 1 && a < amax { rank(i, a) } else { 0 };
                let inc = if a >= 1 { rank(i + 1, a - 1) } else { 0 };
                table.set(i, i + a, (dim - out - inc) as u64);
            }
        }
        table
    }
}

fn add(x: &PrimeFieldMatrix, y: &PrimeFieldMatrix) -> PrimeFieldMatrix {
    let f = x.field();
    PrimeFieldMatrix::from_fn(f, x.rows(), x.cols(), |r, c| f.add(x.get(r, c), y.get(r, c)))
}

fn negate(x: &PrimeFieldMatrix) -> PrimeFieldMatrix {
    let f = x.field();
    PrimeFieldMatrix::from_fn(f, x.rows(), x.cols(), |r, c| f.neg(x.get(r, c)))
}

/// β^S(M) for S = Q/(f_1..f_c), f_k quadrics forming a regular sequence
/// with linear factors `factors[k]`, and M an S-module whose pieces are all
/// known.
pub fn betti_over_complete_intersection(
    m: &ModulePieces,
    factors: &[Vec<Vec<u32>>],
    max_i: usize,
    base: &str,
) -> Result<BettiTable, ResolutionError> {
    let retract = KoszulRetract::new(m)?;
    Ok(TransferredComplex::new(&retract, factors, max_i).betti(base))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::RingFamily;

    fn identity(f: PrimeField, n: usize) -> PrimeFieldMatrix {
        PrimeFieldMatrix::identity(f, n)
    }

    #[test]
    fn retract_identities() {
        let f = PrimeField::new(32003).unwrap();
        let fam = RingFamily::tilde(4, f, RingFamily::default_cutoff(4)).unwrap();
        let m = ModulePieces::from_ring(&fam.a);
        let r = KoszulRetract::new(&m).unwrap();
        let n = r.n;
        let top = r.top();
        let d = |i: usize, a: usize| koszul_matrix(f, &m, &r.subsets, &r.index, i, a);
        for i in 0..=n {
            for a in 0..=top {
                let pc = &r.pieces[i][a];
                let dim_x = pc.proj_t.rows();
                if dim_x == 0 {
                    continue;
                }
                // p i = 1
                assert_eq!(pc.reps.mul(&pc.proj_t).unwrap(), identity(f, pc.reps.rows()));
                // row vectors: x ↦ x·h^T·∂^T + x·∂^T·h^T must equal x − x·p^T·i^T
                let mut lhs = PrimeFieldMatrix::zeros(f, dim_x, dim_x);
                if i < n && a > 0 {
                    let up = pc.homotopy_t.mul(&d(i + 1, a - 1).transpose()).unwrap();
                    lhs = add(&lhs, &up);
                    // h ∘ h = 0
                    let hh = pc.homotopy_t.mul(&r.pieces[i + 1][a - 1].homotopy_t).unwrap();
                    assert!(hh.is_zero());
                }
                if i > 0 && a < top {
                    let down = d(i, a).transpose().mul(&r.pieces[i - 1][a + 1].homotopy_t).unwrap();
                    lhs = add(&lhs, &down);
                }
                let ip = pc.proj_t.mul(&pc.reps).unwrap();
                let rhs = add(&identity(f, dim_x), &negate(&ip));
                assert_eq!(lhs, rhs, "bidegree ({i}, {a})");
            }
        }
    }
}
