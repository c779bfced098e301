use std::collections::HashMap;

use super::complex::{
    complex_homology_betti, divided_power_complex, koszul_complex, LinearComplex, LinearEntry,
    WedgeSign,
};
use super::pieces::ModulePieces;
use super::{BettiTable, ResolutionError};
use crate::ff_linalg::PrimeField;
use crate::graded::{Form, GradedQuotientRing, MonomialTable};

/// Linear forms c_j with f = Σ_j c_j x_j and c_j involving only x_i, i ≤ j;
/// `out[j]` holds the coefficients of c_j.
pub fn linear_factors(table: &MonomialTable, f: &Form) -> Vec<Vec<u32>> {
    assert_eq!(f.degree, 2, "linear factors are taken of quadrics");
    let n = table.n();
    let mut out = vec![vec![0u32; n]; n];
    for (nu, c) in f.terms() {
        let m = table.monomial(2, nu);
        let mut vars = m.iter().enumerate().flat_map(|(v, &e)| std::iter::repeat_n(v, e as usize));
        let i = vars.next().expect("quadric monomial");
        let j = vars.next().expect("quadric monomial");
        out[j][i] = c;
    }
    out
}

/// The minimal free resolution F of k over P_[1] = Q/(f_1):
/// F_i = K_i ⊕ K_{i−2}(−2) ⊕ ⋯ with boundary built from ∂^K and
/// ζ(E_B) = z ∧ E_B, z = Σ_j c_j E_j.
#[derive(Clone, Debug)]
pub struct HypersurfaceResolution {
    factors: Vec<Vec<u32>>,
    complex: LinearComplex,
    rule: WedgeSign,
}

/// Rank against target dimension of one differential in the surjectivity test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SurjectivityStep {
    pub i: usize,
    pub rank: usize,
    pub target_dim: usize,
}

impl SurjectivityStep {
    pub fn is_surjective(&self) -> bool {
        self.rank == self.target_dim
    }
}

impl HypersurfaceResolution {
    pub fn complex(&self) -> &LinearComplex {
        &self.complex
    }

    pub fn n(&self) -> usize {
        self.complex.n()
    }

    /// Coefficients of c_j over x_1..x_n.
    pub fn factors(&self) -> &[Vec<u32>] {
        &self.factors
    }

    pub fn sign_rule(&self) -> WedgeSign {
        self.rule
    }

    pub fn rank(&self, i: usize) -> usize {
        self.complex.rank(i)
    }

    pub fn max_i(&self) -> usize {
        self.complex.len() - 1
    }

    /// Rank of d_{i+1} ⊗ R from F_{i+1} ⊗ R_{a−1} onto F_i ⊗ R_a for
    /// i = 0..=max_i, where a = ℓ + 2. Every step is surjective exactly when
    /// Tor_i^{P_[1]}(R, k)_{i+ℓ+2} = 0 throughout.
    pub fn top_degree_surjectivity(
        &self,
        r: &GradedQuotientRing,
        ell: usize,
        max_i: usize,
    ) -> Result<Vec<SurjectivityStep>, ResolutionError> {
        let a = ell + 2;
        if r.cutoff() < a {
            return Err(ResolutionError::WindowOverflow { cutoff: r.cutoff() });
        }
        if max_i + 1 > self.max_i() {
            return Err(ResolutionError::ResolutionTooShort { have: self.max_i(), need: max_i + 1 });
        }
        let m = ModulePieces::from_ring_through(r, a);
        let target = r.h(a);
        Ok((0..=max_i)
            .map(|i| SurjectivityStep {
                i,
                rank: self.complex.tensored_rank(i + 1, &m, a - 1),
                target_dim: self.rank(i) * target,
            })
            .collect())
    }

    /// Checks ∂_i ∘ ∂_{i+1} = 0 after tensoring with P_[1] in every
    /// internal degree whose pieces are known; returns the first failing
    /// (i, internal degree).
    pub fn check_square_zero(&self, p1: &GradedQuotientRing) -> Result<(), (usize, usize)> {
        square_zero(&self.complex, p1)
    }
}

/// ∂_{i−1} ∘ ∂_i = 0 over the ring S: every entry of the composite is a
/// quadratic form, whose multiplication map S_a → S_{a+2} must vanish for
/// every a with S_{a+2} known. Returns the first failing (i, i + a).
pub fn square_zero(cx: &LinearComplex, ring: &GradedQuotientRing) -> Result<(), (usize, usize)> {
    let f = cx.field();
    let table = ring.table();
    let mut checked: HashMap<Vec<u32>, Option<usize>> = HashMap::new();
    for i in 2..cx.len() {
        let mut by_col: Vec<Vec<&LinearEntry>> = vec![Vec::new(); cx.rank(i - 1)];
        for e in cx.differential(i - 1) {
            by_col[e.col].push(e);
        }
        let mut composite: HashMap<(usize, usize), Vec<u32>> = HashMap::new();
        for e in cx.differential(i) {
            for e2 in &by_col[e.row] {
                let q = composite
                    .entry((e2.row, e.col))
                    .or_insert_with(|| vec![0; table.count(2)]);
                for &(k1, c1) in &e.form {
                    for &(k2, c2) in &e2.form {
                        let m = table.product(1, k1, 1, k2);
                        q[m] = f.add(q[m], f.mul(c1, c2));
                    }
                }
            }
        }
        for q in composite.into_values() {
            if q.iter().all(|&x| x == 0) {
                continue;
            }
            let bad = checked.entry(q.clone()).or_insert_with(|| {
                let form = Form { degree: 2, coeffs: q };
                (0..=ring.cutoff().saturating_sub(2)).find(|&a| {
                    !ring.multiplication_matrix(&form, a).expect("within cutoff").is_zero()
                })
            });
            if let Some(a) = *bad {
                return Err((i, i + a));
            }
        }
    }
    Ok(())
}

/// Assemble F through homological degree `max_i` from f_1 given over the
/// monomial table of P_[1]; uses the exterior sign for z ∧ E_B.
pub fn build_hypersurface_resolution(
    p1: &GradedQuotientRing,
    f1: &Form,
    max_i: usize,
) -> Result<HypersurfaceResolution, ResolutionError> {
    build_hypersurface_resolution_with(p1.field(), p1.table(), f1, max_i, WedgeSign::Exterior)
}

pub fn build_hypersurface_resolution_with(
    field: PrimeField,
    table: &MonomialTable,
    f1: &Form,
    max_i: usize,
    rule: WedgeSign,
) -> Result<HypersurfaceResolution, ResolutionError> {
    if f1.degree != 2 {
        return Err(ResolutionError::NotQuadric(f1.degree));
    }
    if f1.is_zero() {
        return Err(ResolutionError::ZeroHypersurface);
    }
    let factors = linear_factors(table, f1);
    let complex = divided_power_complex(field, table.n(), std::slice::from_ref(&factors), max_i, rule);
    Ok(HypersurfaceResolution { factors, complex, rule })
}

/// β^{P_[1]}(M) through homological degree `max_i` as the homology of F ⊗ M.
pub fn betti_over_hypersurface(
    res: &HypersurfaceResolution,
    m: &GradedQuotientRing,
    max_i: usize,
) -> Result<BettiTable, ResolutionError> {
    if max_i + 1 > res.max_i() {
        return Err(ResolutionError::ResolutionTooShort { have: res.max_i(), need: max_i + 1 });
    }
    Ok(complex_homology_betti(&res.complex, &ModulePieces::from_ring(m), max_i, "P1"))
}

/// β^Q(M) = dim H_i(K ⊗ M)_j for the ring M viewed as a Q-module.
pub fn koszul_betti(m: &GradedQuotientRing, max_i: usize) -> Result<BettiTable, ResolutionError> {
    if !m.vanishes_at_cutoff() {
        return Err(ResolutionError::WindowOverflow { cutoff: m.cutoff() });
    }
    Ok(koszul_betti_pieces(&ModulePieces::from_ring(m), max_i))
}

/// Koszul homology for a module given by its pieces.
pub fn koszul_betti_pieces(m: &ModulePieces, max_i: usize) -> BettiTable {
    let cx = koszul_complex(m.field(), m.n());
    complex_homology_betti(&cx, m, max_i.min(m.n()), "Q")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::RingFamily;

    #[test]
    fn factors_recombine() {
        let f = PrimeField::new(32003).unwrap();
        let fam = RingFamily::tilde(3, f, 5).unwrap();
        let c = linear_factors(fam.p.table(), &fam.quadric(3));
        // (x1+x2+x3)^2: c_1 = x1, c_2 = 2x1 + x2, c_3 = 2x1 + 2x2 + x3
        assert_eq!(c, vec![vec![1, 0, 0], vec![2, 1, 0], vec![2, 2, 1]]);
    }

    #[test]
    fn ranks_follow_binomial_sums() {
        let f = PrimeField::new(32003).unwrap();
        let fam = RingFamily::tilde(3, f, 5).unwrap();
        let res = build_hypersurface_resolution(&fam.p1, &fam.quadric(0), 6).unwrap();
        let want = [1, 3, 4, 4, 4, 4, 4];
        for (i, w) in want.iter().enumerate() {
            assert_eq!(res.rank(i), *w);
        }
    }
}
