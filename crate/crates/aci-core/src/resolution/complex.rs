use std::collections::HashMap;

use super::pieces::ModulePieces;
use super::BettiTable;
use crate::ff_linalg::{Echelon, PrimeField, PrimeFieldMatrix};

/// One entry of a differential: the linear form Σ c_k x_k at (row, col).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearEntry {
    pub row: usize,
    pub col: usize,
    pub form: Vec<(usize, u32)>,
}

/// A complex of free modules C_i = S(−i)^{r_i} whose differentials have
/// linear entries, truncated after `len() − 1`.
#[derive(Clone, Debug)]
pub struct LinearComplex {
    field: PrimeField,
    n: usize,
    ranks: Vec<usize>,
    /// `diffs[i]`: C_i → C_{i−1}; `diffs[0]` is empty.
    diffs: Vec<Vec<LinearEntry>>,
    finite: bool,
}

impl LinearComplex {
    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of homological degrees held.
    pub fn len(&self) -> usize {
        self.ranks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ranks.is_empty()
    }

    /// True if every module beyond the last one held is zero.
    pub fn is_finite(&self) -> bool {
        self.finite
    }

    pub fn rank(&self, i: usize) -> usize {
        self.ranks.get(i).copied().unwrap_or(0)
    }

    pub fn differential(&self, i: usize) -> &[LinearEntry] {
        &self.diffs[i]
    }

    /// Image of `v` ∈ C_i ⊗ M_a under ∂_i ⊗ M, in C_{i−1} ⊗ M_{a+1}.
    pub fn apply(&self, i: usize, m: &ModulePieces, a: usize, v: &[u32]) -> Vec<u32> {
        let f = self.field;
        let ma = m.dim(a).expect("source piece known");
        let mb = m.dim(a + 1).expect("target piece known");
        let mut out = vec![0u32; self.rank(i - 1) * mb];
        if mb == 0 {
            return out;
        }
        for e in &self.diffs[i] {
            let src = &v[e.col * ma..(e.col + 1) * ma];
            if src.iter().all(|&x| x == 0) {
                continue;
            }
            for &(k, c) in &e.form {
                let y = m.action(a, k).expect("action known").mul_vec(src).expect("shape");
                let dst = &mut out[e.row * mb..(e.row + 1) * mb];
                for (o, yv) in dst.iter_mut().zip(y) {
                    *o = f.add(*o, f.mul(c, yv));
                }
            }
        }
        out
    }

    /// Rank of ∂_i ⊗ M from C_i ⊗ M_a to C_{i−1} ⊗ M_{a+1}.
    pub fn tensored_rank(&self, i: usize, m: &ModulePieces, a: usize) -> usize {
        if i == 0 || i >= self.len() {
            return 0;
        }
        let (Some(ma), Some(mb)) = (m.dim(a), m.dim(a + 1)) else {
            panic!("module piece {} unknown", a + 1);
        };
        let src = self.rank(i) * ma;
        let tgt = self.rank(i - 1) * mb;
        if src == 0 || tgt == 0 {
            return 0;
        }
        let f = self.field;
        // entry blocks Σ c_k X_k : M_a → M_{a+1}
        let blocks: Vec<PrimeFieldMatrix> = self.diffs[i]
            .iter()
            .map(|e| {
                let mut b = PrimeFieldMatrix::zeros(f, mb, ma);
                for &(k, c) in &e.form {
                    let x = m.action(a, k).expect("action known");
                    for r in 0..mb {
                        for s in 0..ma {
                            let v = x.get(r, s);
                            if v != 0 {
                                b.set(r, s, f.add(b.get(r, s), f.mul(c, v)));
                            }
                        }
                    }
                }
                b
            })
            .collect();
        // Rows of the smaller-width orientation: images of source vectors
        // when the target is narrower, coordinate functionals otherwise.
        let by_col = tgt <= src;
        let (major_n, major_dim, minor_dim, width) =
            if by_col { (self.rank(i), ma, mb, tgt) } else { (self.rank(i - 1), mb, ma, src) };
        let mut groups: Vec<Vec<usize>> = vec![Vec::new(); major_n];
        for (idx, e) in self.diffs[i].iter().enumerate() {
            groups[if by_col { e.col } else { e.row }].push(idx);
        }
        let mut ech = Echelon::new(f, width);
        const BATCH: usize = 256;
        let mut buf: Vec<f64> = Vec::with_capacity(BATCH * width);
        let mut nrows = 0;
        for (major, group) in groups.iter().enumerate() {
            if group.is_empty() {
                continue;
            }
            for mu in 0..major_dim {
                let start = buf.len();
                buf.resize(start + width, 0.0);
                for &idx in group {
                    let e = &self.diffs[i][idx];
                    let minor = if by_col { e.row } else { e.col };
                    let seg = &mut buf[start + minor * minor_dim..start + (minor + 1) * minor_dim];
                    let b = &blocks[idx];
                    for (t, x) in seg.iter_mut().enumerate() {
                        let v = if by_col { b.get(t, mu) } else { b.get(mu, t) };
                        if v != 0 {
                            *x = f.add(*x as u32, v) as f64;
                        }
                    }
                }
                nrows += 1;
                if nrows == BATCH {
                    ech.insert_rows(&mut buf, nrows);
                    buf.clear();
                    nrows = 0;
                    if ech.is_full() {
                        return ech.rank();
                    }
                }
            }
            let _ = major;
        }
        if nrows > 0 {
            ech.insert_rows(&mut buf, nrows);
        }
        ech.rank()
    }
}

/// Strictly increasing index tuples of length k from 0..n, lexicographic.
pub fn lex_subsets(n: usize, k: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(n: usize, k: usize, start: usize, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for j in start..n {
            if n - j < k - cur.len() {
                break;
            }
            cur.push(j as u8);
            rec(n, k, j + 1, cur, out);
            cur.pop();
        }
    }
    rec(n, k, 0, &mut cur, &mut out);
    out
}

/// Koszul part of the boundary: ∂(E_B) = Σ_t (−1)^t x_{b_t} E_{B∖b_t}
/// with t counted from 1.
fn koszul_terms(b: &[u8]) -> Vec<(i64, usize, Vec<u8>)> {
    (0..b.len())
        .map(|t| {
            let sign = if (t + 1) % 2 == 0 { 1 } else { -1 };
            let mut rest = b.to_vec();
            let v = rest.remove(t);
            (sign, v as usize, rest)
        })
        .collect()
}

/// The Koszul complex on x_1..x_n.
pub fn koszul_complex(field: PrimeField, n: usize) -> LinearComplex {
    let bases: Vec<Vec<Vec<u8>>> = (0..=n).map(|k| lex_subsets(n, k)).collect();
    let index: Vec<HashMap<Vec<u8>, usize>> = bases
        .iter()
        .map(|b| b.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect())
        .collect();
    let mut diffs = vec![Vec::new()];
    for i in 1..=n {
        let mut ent = Vec::new();
        for (col, b) in bases[i].iter().enumerate() {
            for (sign, v, rest) in koszul_terms(b) {
                ent.push(LinearEntry { row: index[i - 1][&rest], col, form: vec![(v, field.from_i64(sign))] });
            }
        }
        diffs.push(ent);
    }
    LinearComplex { field, n, ranks: bases.iter().map(Vec::len).collect(), diffs, finite: true }
}

/// Sign of z ∧ E_B at the new index j.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WedgeSign {
    /// (−1)^{#{b ∈ B : b < j}}, the exterior-algebra sign.
    Exterior,
    /// (−1)^k with k the smallest position such that j > b_k (0 if none),
    /// read word for word from the construction; kept to show it fails
    /// ∂² = 0 once B has two entries below j.
    SmallestPosition,
}

fn wedge_sign(rule: WedgeSign, b: &[u8], j: u8) -> i64 {
    let k = match rule {
        WedgeSign::Exterior => b.iter().filter(|&&x| x < j).count(),
        WedgeSign::SmallestPosition => b.iter().position(|&x| j > x).map_or(0, |p| p + 1),
    };
    if k % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Complex K ⊗ k⟨Y_1..Y_c⟩ resolving k over S/(f_1..f_c) for a regular
/// sequence of quadrics f_k = Σ_j c_{kj} x_j. `factors[k][j]` holds the
/// coefficients of the linear form c_{kj}.
///
/// Basis of C_i: Y^(α) E_B with |B| + 2|α| = i, ordered by |α|, then α
/// (graded lex), then B (lex). The boundary is
/// ∂(Y^(α) E_B) = Y^(α) ∂^K(E_B) + Σ_k Y^(α−e_k) z_k ∧ E_B,
/// z_k = Σ_j c_{kj} E_j.
pub fn divided_power_complex(
    field: PrimeField,
    n: usize,
    factors: &[Vec<Vec<u32>>],
    max_i: usize,
    rule: WedgeSign,
) -> LinearComplex {
    let c = factors.len();
    let subsets: Vec<Vec<Vec<u8>>> = (0..=n).map(|k| lex_subsets(n, k)).collect();
    let mut bases: Vec<Vec<(Vec<u8>, Vec<u8>)>> = Vec::new();
    for i in 0..=max_i {
        let mut b = Vec::new();
        for u in 0..=i / 2 {
            let k = i - 2 * u;
            if k > n || (c == 0 && u > 0) {
                continue;
            }
            for alpha in crate::graded::monomial_basis(c, u) {
                for s in &subsets[k] {
                    b.push((alpha.clone(), s.clone()));
                }
            }
        }
        bases.push(b);
    }
    let index: Vec<HashMap<(Vec<u8>, Vec<u8>), usize>> = bases
        .iter()
        .map(|b| b.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect())
        .collect();
    let mut diffs = vec![Vec::new()];
    for i in 1..=max_i {
        let mut ent = Vec::new();
        for (col, (alpha, b)) in bases[i].iter().enumerate() {
            for (sign, v, rest) in koszul_terms(b) {
                let row = index[i - 1][&(alpha.clone(), rest)];
                ent.push(LinearEntry { row, col, form: vec![(v, field.from_i64(sign))] });
            }
            for k in 0..c {
                if alpha[k] == 0 {
                    continue;
                }
                let mut lower = alpha.clone();
                lower[k] -= 1;
                for j in 0..n as u8 {
                    if b.contains(&j) {
                        continue;
                    }
                    let sign = wedge_sign(rule, b, j);
                    let form: Vec<(usize, u32)> = factors[k][j as usize]
                        .iter()
                        .enumerate()
                        .filter(|(_, &x)| x != 0)
                        .map(|(v, &x)| (v, if sign < 0 { field.neg(x) } else { x }))
                        .collect();
                    if form.is_empty() {
                        continue;
                    }
                    let mut bigger = b.clone();
                    let pos = bigger.iter().position(|&x| x > j).unwrap_or(bigger.len());
                    bigger.insert(pos, j);
                    let row = index[i - 1][&(lower.clone(), bigger)];
                    ent.push(LinearEntry { row, col, form });
                }
            }
        }
        diffs.push(ent);
    }
    let finite = c == 0 && max_i >= n;
    LinearComplex { field, n, ranks: bases.iter().map(Vec::len).collect(), diffs, finite }
}

/// β_{i,j} = dim H_i(C ⊗ M)_j for i ≤ max_i, computed strand by strand.
///
/// The table covers every j with j − i within the known pieces of M; it is
/// marked complete when both C and M are finite and fully covered.
pub fn complex_homology_betti(
    cx: &LinearComplex,
    m: &ModulePieces,
    max_i: usize,
    base: &str,
) -> BettiTable {
    assert!(cx.len() > max_i + 1 || cx.is_finite(), "complex too short for max_i");
    let amax = if m.is_complete() { m.top() } else { m.top().saturating_sub(1) };
    let max_j = if m.is_complete() { max_i + amax } else { amax };
    let mut table = BettiTable::new(base, max_i, max_j);
    let mut ranks: HashMap<(usize, usize), usize> = HashMap::new();
    let mut rank = |i: usize, a: usize| -> usize {
        *ranks.entry((i, a)).or_insert_with(|| cx.tensored_rank(i, m, a))
    };
    for i in 0..=max_i {
        for a in 0..=amax {
            if !m.is_complete() && i + a > max_j {
                continue;
            }
            let dim = cx.rank(i) * m.dim(a).unwrap_or(0);
            if dim == 0 {
                continue;
            }
            let out = if i >= 1 { rank(i, a) } else { 0 };
            let inc = if a >= 1 { rank(i + 1, a - 1) } else { 0 };
            let b = dim - out - inc;
            table.set(i, i + a, b as u64);
        }
    }
    if m.is_complete() && cx.is_finite() && max_i + 1 >= cx.len() {
        table.mark_complete();
    }
    table
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subsets_in_lex_order() {
        assert_eq!(lex_subsets(4, 2).len(), 6);
        assert_eq!(lex_subsets(3, 2), vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
        assert_eq!(lex_subsets(3, 0), vec![Vec::<u8>::new()]);
    }

    #[test]
    fn koszul_resolves_residue_field() {
        let f = PrimeField::new(32003).unwrap();
        let cx = koszul_complex(f, 3);
        let k = ModulePieces::residue_field(f, 3);
        let t = complex_homology_betti(&cx, &k, 3, "Q");
        for i in 0..=3 {
            assert_eq!(t.get(i, i), [1, 3, 3, 1][i]);
        }
        assert_eq!(t.entries().count(), 4);
    }

    #[test]
    fn wedge_signs() {
        assert_eq!(wedge_sign(WedgeSign::Exterior, &[1, 4], 6), 1);
        assert_eq!(wedge_sign(WedgeSign::SmallestPosition, &[1, 4], 6), -1);
        assert_eq!(wedge_sign(WedgeSign::SmallestPosition, &[1, 4], 0), 1);
        assert_eq!(wedge_sign(WedgeSign::Exterior, &[1, 4], 2), -1);
    }
}
