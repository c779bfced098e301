use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::monomial::MonomialTable;
use super::ring::{Form, GradedQuotientRing};
use super::GradedError;
use crate::ff_linalg::{Echelon, PrimeField};
use crate::series::hilbert::{hilb_r_value, hilb_a_value};

/// Number of draws before a random family is declared non-generic.
pub const SAMPLE_RETRY_BOUND: usize = 16;

/// Pieces of the hypersurface ring Q/(f1) are kept only up to this degree;
/// the ring is not Artinian and its pieces grow quickly.
pub const HYPERSURFACE_CUTOFF_CAP: usize = 4;

/// ℓ = ⌊(n−2)/2⌋.
pub fn ell(n: usize) -> usize {
    n.saturating_sub(2) / 2
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Variant {
    Tilde,
    Random { seed: u64 },
}

impl Variant {
    pub fn label(&self) -> &'static str {
        match self {
            Variant::Tilde => "tilde",
            Variant::Random { .. } => "random",
        }
    }

    pub fn seed(&self) -> Option<u64> {
        match self {
            Variant::Tilde => None,
            Variant::Random { seed } => Some(*seed),
        }
    }
}

/// n+1 quadrics f_k = Σ_{i≤j} a[k][i][j] x_i x_j (0-based indices).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadricSet {
    pub n: usize,
    pub a: Vec<Vec<Vec<u32>>>,
}

impl QuadricSet {
    fn empty(n: usize) -> Self {
        QuadricSet { n, a: vec![vec![vec![0; n]; n]; n + 1] }
    }

    /// x_1², …, x_n², (x_1 + ⋯ + x_n)².
    pub fn tilde(n: usize, field: PrimeField) -> Self {
        let mut q = Self::empty(n);
        for i in 0..n {
            q.a[i][i][i] = 1;
            q.a[n][i][i] = 1;
            for j in (i + 1)..n {
                q.a[n][i][j] = 2 % field.p();
            }
        }
        q
    }

    pub fn random(n: usize, field: PrimeField, rng: &mut impl Rng) -> Self {
        let mut q = Self::empty(n);
        for k in 0..=n {
            for i in 0..n {
                for j in i..n {
                    q.a[k][i][j] = rng.gen_range(0..field.p());
                }
            }
        }
        q
    }

    /// The k-th quadric (0-based, k ≤ n) as a form.
    pub fn form(&self, k: usize, table: &MonomialTable) -> Form {
        let mut f = Form::zero(table, 2);
        for i in 0..self.n {
            for j in i..self.n {
                let c = self.a[k][i][j];
                if c == 0 {
                    continue;
                }
                let mut m = vec![0u8; self.n];
                m[i] += 1;
                m[j] += 1;
                f.coeffs[table.index_of(&m).expect("quadric monomial")] = c;
            }
        }
        f
    }

    /// Linear forms c_j = Σ_{i≤j} a[k][i][j] x_i with f_k = Σ_j c_j x_j, each
    /// given by its coefficient vector over x_1..x_n.
    pub fn linear_factors(&self, k: usize) -> Vec<Vec<u32>> {
        (0..self.n)
            .map(|j| (0..self.n).map(|i| if i <= j { self.a[k][i][j] } else { 0 }).collect())
            .collect()
    }
}

/// The rings Q, P_[1] = Q/(f1), P = Q/(f1..fn), R = Q/(f1..f_{n+1}) and
/// A = Q/(J : I) built from one set of quadrics.
#[derive(Debug)]
pub struct RingFamily {
    pub n: usize,
    pub field: PrimeField,
    pub variant: Variant,
    pub quadrics: QuadricSet,
    pub cutoff: usize,
    /// Draws needed before the genericity checks passed (1 for tilde).
    pub attempts: usize,
    pub q: GradedQuotientRing,
    pub p1: GradedQuotientRing,
    pub p: GradedQuotientRing,
    pub r: GradedQuotientRing,
    pub a: GradedQuotientRing,
}

impl RingFamily {
    pub fn ell(&self) -> usize {
        ell(self.n)
    }

    pub fn default_cutoff(n: usize) -> usize {
        n + 2
    }

    pub fn tilde(n: usize, field: PrimeField, cutoff: usize) -> Result<Self, GradedError> {
        check_prime(n, field)?;
        let q = QuadricSet::tilde(n, field);
        Self::from_quadrics(field, q, cutoff, Variant::Tilde, 1)
    }

    /// Build all five rings from given quadrics and run the genericity
    /// checks: h_R must match the closed form and f_{n+1} must have maximal
    /// rank on P.
    pub fn from_quadrics(
        field: PrimeField,
        quadrics: QuadricSet,
        cutoff: usize,
        variant: Variant,
        attempts: usize,
    ) -> Result<Self, GradedError> {
        let n = quadrics.n;
        if cutoff < 2 {
            return Err(GradedError::CutoffTooSmall { generator_degree: 2, cutoff });
        }
        let table = Arc::new(MonomialTable::new(n, cutoff));
        let forms: Vec<Form> = (0..=n).map(|k| quadrics.form(k, &table)).collect();
        let p = GradedQuotientRing::build(field, table.clone(), forms[..n].to_vec(), cutoff)
            ?;
        let r = GradedQuotientRing::build(field, table.clone(), forms.clone(), cutoff)
            ?;
        for d in 0..=cutoff {
            let expect = hilb_r_value(n, d);
            if r.h(d) != expect {
                return Err(GradedError::GenericityFailure {
                    attempts,
                    reason: format!("h_R({d}) = {} but the closed form gives {expect}", r.h(d)),
                });
            }
        }
        if !p.is_maximal_rank_element(&forms[n]) {
            return Err(GradedError::GenericityFailure {
                attempts,
                reason: "f_{n+1} is not a maximal rank element of P".into(),
            });
        }
        let a = colon_ideal_ring(&p, &forms[..n], &forms[n])?;
        let q = GradedQuotientRing::build(field, table.clone(), Vec::new(), cutoff)?;
        let c1 = cutoff.min(HYPERSURFACE_CUTOFF_CAP);
        let t1 = Arc::new(MonomialTable::new(n, c1));
        let f1 = quadrics.form(0, &t1);
        let p1 = GradedQuotientRing::build(field, t1, vec![f1], c1)?;
        Ok(RingFamily { n, field, variant, quadrics, cutoff, attempts, q, p1, p, r, a })
    }

    /// The k-th quadric (0-based) as a form over the family's monomial table.
    pub fn quadric(&self, k: usize) -> Form {
        self.quadrics.form(k, self.p.table())
    }

    /// Closed-form check of h_A, used by callers that need the Gorenstein
    /// ring to be the expected one.
    pub fn a_matches_closed_form(&self) -> bool {
        (0..=self.cutoff).all(|d| self.a.h(d) == hilb_a_value(self.n, d))
    }
}

fn check_prime(n: usize, field: PrimeField) -> Result<(), GradedError> {
    if (field.p() as usize) <= n {
        return Err(GradedError::PrimeTooSmall { p: field.p(), n });
    }
    if n < 2 {
        return Err(GradedError::TooFewVariables(n));
    }
    Ok(())
}

/// Draw quadrics from a seeded generator until the genericity checks pass,
/// at most [`SAMPLE_RETRY_BOUND`] times.
pub fn sample_general_family(
    n: usize,
    field: PrimeField,
    seed: u64,
    cutoff: usize,
) -> Result<RingFamily, GradedError> {
    sample_general_family_with(n, field, seed, cutoff, |_| Ok(()))
}

/// As [`sample_general_family`], with a further acceptance test applied to
/// each draw that passes the built-in checks; `Err(reason)` rejects it.
pub fn sample_general_family_with(
    n: usize,
    field: PrimeField,
    seed: u64,
    cutoff: usize,
    accept: impl Fn(&RingFamily) -> Result<(), String>,
) -> Result<RingFamily, GradedError> {
    check_prime(n, field)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut last_reason = String::new();
    for attempt in 1..=SAMPLE_RETRY_BOUND {
        let q = QuadricSet::random(n, field, &mut rng);
        match RingFamily::from_quadrics(field, q, cutoff, Variant::Random { seed }, attempt) {
            Ok(f) => match accept(&f) {
                Ok(()) => return Ok(f),
                Err(reason) => last_reason = reason,
            },
            Err(GradedError::GenericityFailure { reason, .. }) => last_reason = reason,
            Err(e) => return Err(e),
        }
    }
    Err(GradedError::GenericityFailure { attempts: SAMPLE_RETRY_BOUND, reason: last_reason })
}

/// A = Q/G with G = J + (preimage of ann_P(f)); `p` must be Q/J with J
/// generated by `j_gens`.
pub fn colon_ideal_ring(
    p: &GradedQuotientRing,
    j_gens: &[Form],
    f: &Form,
) -> Result<GradedQuotientRing, GradedError> {
    let field = p.field();
    let cutoff = p.cutoff();
    let mut gens: Vec<Form> = j_gens.to_vec();
    let mut prev: Vec<Vec<u32>> = Vec::new();
    for d in 0..=cutoff {
        let hd = p.h(d);
        let ann: Vec<Vec<u32>> = if d + f.degree > cutoff || p.h(d + f.degree) == 0 {
            if d + f.degree > cutoff && !p.vanishes_at_cutoff() {
                return Err(GradedError::DegreeOutOfRange { degree: d + f.degree, cutoff });
            }
            (0..hd).map(|i| unit(hd, i)).collect()
        } else {
            p.annihilator_piece(f, d)?
        };
        if hd == 0 {
            prev = ann;
            continue;
        }
        let mut ech = Echelon::new(field, hd);
        if d > 0 && !prev.is_empty() {
            let mut rows: Vec<u32> = Vec::new();
            let mut nrows = 0;
            for m in p.var_matrices(d - 1) {
                for v in &prev {
                    rows.extend(m.mul_vec(v).expect("shape"));
                    nrows += 1;
                }
            }
            ech.insert_u32_rows(&rows, nrows);
        }
        for v in &ann {
            if ech.insert_u32_rows(v, 1)[0] {
                gens.push(p.lift(d, v));
            }
        }
        prev = ann;
    }
    GradedQuotientRing::build(field, p.table().clone(), gens, cutoff)
}

fn unit(n: usize, i: usize) -> Vec<u32> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}
