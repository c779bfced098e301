use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};

use super::monomial::{degree, Monomial, MonomialTable};
use super::GradedError;
use crate::ff_linalg::{reduce_slice_with, Echelon, PrimeField, PrimeFieldMatrix};

/// A homogeneous polynomial, stored as coefficients over the graded-lex
/// monomial basis of its degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Form {
    pub degree: usize,
    pub coeffs: Vec<u32>,
}

impl Form {
    pub fn zero(table: &MonomialTable, degree: usize) -> Self {
        Form { degree, coeffs: vec![0; table.count(degree)] }
    }

    /// Collect terms into a form; all exponent vectors must share one degree.
    pub fn from_terms(
        field: PrimeField,
        table: &MonomialTable,
        terms: &[(Monomial, i64)],
    ) -> Result<Self, GradedError> {
        let Some((first, _)) = terms.first() else {
            return Err(GradedError::EmptyPolynomial);
        };
        let d = degree(first);
        if d > table.max_degree() {
            return Err(GradedError::DegreeOutOfRange { degree: d, cutoff: table.max_degree() });
        }
        let mut f = Form::zero(table, d);
        for (m, c) in terms {
            if m.len() != table.n() {
                return Err(GradedError::WrongVariableCount { expected: table.n(), got: m.len() });
            }
            if degree(m) != d {
                return Err(GradedError::Inhomogeneous);
            }
            let i = table.index_of(m).expect("monomial within table range");
            f.coeffs[i] = field.add(f.coeffs[i], field.from_i64(*c));
        }
        Ok(f)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.coeffs.iter().enumerate().filter(|(_, &c)| c != 0).map(|(i, &c)| (i, c))
    }
}

#[derive(Clone, Debug)]
enum NormalForms {
    /// Every monomial is standard.
    Identity,
    /// Row ν holds the coordinates of monomial ν in the standard basis.
    Dense(PrimeFieldMatrix),
}

#[derive(Clone, Debug)]
struct Piece {
    standard: Vec<usize>,
    nf: NormalForms,
}

/// How a degree piece was obtained; both routes give identical bases.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PieceMethod {
    /// Row-reduce all monomial multiples of the generators.
    Macaulay,
    /// Present degree d as V ⊗ S_{d−1} modulo Koszul relations and lifted
    /// degree-d generators.
    Cokernel,
}

/// A polynomial ring modulo a homogeneous ideal, stored degree by degree up
/// to a cutoff as standard monomials plus normal forms of all monomials.
#[derive(Debug)]
pub struct GradedQuotientRing {
    field: PrimeField,
    table: Arc<MonomialTable>,
    generators: Vec<Form>,
    cutoff: usize,
    pieces: Vec<Piece>,
    var_mult: Vec<OnceLock<Vec<PrimeFieldMatrix>>>,
}

/// Minimal generator counts of a defining ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorDegrees {
    pub counts: BTreeMap<usize, usize>,
    /// False when the ring has not vanished by the cutoff, so generators in
    /// higher degrees cannot be excluded.
    pub certified: bool,
}

/// Build Q/(generators) through degree `cutoff`, generators given as
/// (exponent vector, coefficient) term lists.
pub fn build_ring(
    n: usize,
    field: PrimeField,
    generators: &[Vec<(Monomial, i64)>],
    cutoff: usize,
) -> Result<GradedQuotientRing, GradedError> {
    let table = Arc::new(MonomialTable::new(n, cutoff));
    let forms = generators
        .iter()
        .map(|g| Form::from_terms(field, &table, g))
        .collect::<Result<Vec<_>, _>>()?;
    GradedQuotientRing::build(field, table, forms, cutoff)
}

impl GradedQuotientRing {
    pub fn build(
        field: PrimeField,
        table: Arc<MonomialTable>,
        generators: Vec<Form>,
        cutoff: usize,
    ) -> Result<Self, GradedError> {
        Self::build_with(field, table, generators, cutoff, None)
    }

    /// As [`build`](Self::build), forcing one construction route (used to
    /// cross-check the two routes).
    pub fn build_with(
        field: PrimeField,
        table: Arc<MonomialTable>,
        generators: Vec<Form>,
        cutoff: usize,
        force: Option<PieceMethod>,
    ) -> Result<Self, GradedError> {
        if table.max_degree() < cutoff {
            return Err(GradedError::DegreeOutOfRange { degree: cutoff, cutoff: table.max_degree() });
        }
        if let Some(g) = generators.iter().find(|g| g.degree > cutoff) {
            return Err(GradedError::CutoffTooSmall { generator_degree: g.degree, cutoff });
        }
        let generators: Vec<Form> = generators.into_iter().filter(|g| !g.is_zero()).collect();
        let mut ring = GradedQuotientRing {
            field,
            table,
            generators,
            cutoff,
            pieces: Vec::with_capacity(cutoff + 1),
            var_mult: (0..cutoff).map(|_| OnceLock::new()).collect(),
        };
        for d in 0..=cutoff {
            let piece = ring.build_piece(d, force);
            ring.pieces.push(piece);
        }
        Ok(ring)
    }

    fn build_piece(&self, d: usize, force: Option<PieceMethod>) -> Piece {
        let count = self.table.count(d);
        if self.generators.is_empty() {
            return Piece { standard: (0..count).collect(), nf: NormalForms::Identity };
        }
        if d > 0 && self.pieces[d - 1].standard.is_empty() {
            return Piece {
                standard: Vec::new(),
                nf: NormalForms::Dense(PrimeFieldMatrix::zeros(self.field, count, 0)),
            };
        }
        if d == 0 || !self.generators.iter().any(|g| g.degree <= d) {
            let nf = PrimeFieldMatrix::identity(self.field, count);
            return Piece { standard: (0..count).collect(), nf: NormalForms::Dense(nf) };
        }
        let method = force.unwrap_or_else(|| self.cheaper_method(d));
        match method {
            PieceMethod::Macaulay => self.macaulay_piece(d),
            PieceMethod::Cokernel => self.cokernel_piece(d),
        }
    }

    fn cheaper_method(&self, d: usize) -> PieceMethod {
        let n = self.n() as f64;
        let count = self.table.count(d) as f64;
        let rows_m: f64 = self
            .generators
            .iter()
            .filter(|g| g.degree <= d)
            .map(|g| self.table.count(d - g.degree) as f64)
            .sum();
        let cost_m = rows_m * count * rows_m.min(count);
        let w = n * self.h(d - 1) as f64;
        let hm2 = if d >= 2 { self.h(d - 2) as f64 } else { 0.0 };
        let ngen = self.generators.iter().filter(|g| g.degree == d).count() as f64;
        let rows_k = n * (n - 1.0) / 2.0 * hm2 + ngen;
        let cost_k = rows_k * w * rows_k.min(w) + count * w * w;
        if cost_k <= cost_m {
            PieceMethod::Cokernel
        } else {
            PieceMethod::Macaulay
        }
    }

    fn macaulay_piece(&self, d: usize) -> Piece {
        let count = self.table.count(d);
        let mut ech = Echelon::new(self.field, count);
        const BATCH: usize = 512;
        let mut buf: Vec<f64> = Vec::with_capacity(BATCH * count);
        let mut nrows = 0;
        for g in self.generators.iter().filter(|g| g.degree <= d) {
            let e = d - g.degree;
            for m in 0..self.table.count(e) {
                let start = buf.len();
                buf.resize(start + count, 0.0);
                for (nu, c) in g.terms() {
                    let pos = self.table.product(e, m, g.degree, nu);
                    buf[start + pos] = c as f64;
                }
                nrows += 1;
                if nrows == BATCH {
                    ech.insert_rows(&mut buf, nrows);
                    buf.clear();
                    nrows = 0;
                }
            }
        }
        if nrows > 0 {
            ech.insert_rows(&mut buf, nrows);
        }
        let standard = ech.free_columns();
        let h = standard.len();
        let mut pos_in_std = vec![usize::MAX; count];
        for (s, &c) in standard.iter().enumerate() {
            pos_in_std[c] = s;
        }
        let p = self.field.p();
        let mut nf = PrimeFieldMatrix::zeros(self.field, count, h);
        for nu in 0..count {
            if pos_in_std[nu] != usize::MAX {
                nf.set(nu, pos_in_std[nu], 1);
            } else {
                let row = ech.row_for_pivot(nu).expect("non-standard monomial is a pivot");
                for (s, &c) in standard.iter().enumerate() {
                    let x = row[c] as u32;
                    if x != 0 {
                        nf.set(nu, s, p - x);
                    }
                }
            }
        }
        Piece { standard, nf: NormalForms::Dense(nf) }
    }

    fn cokernel_piece(&self, d: usize) -> Piece {
        let n = self.n();
        let count = self.table.count(d);
        let hm1 = self.h(d - 1);
        let w = n * hm1;
        let mut ech = Echelon::new(self.field, w);

        let mut rel: Vec<f64> = Vec::new();
        let mut nrel = 0;
        if d >= 2 {
            for &lam in &self.pieces[d - 2].standard {
                for j in 0..n {
                    let mj = self.table.times_var(d - 2, lam, j);
                    for k in (j + 1)..n {
                        let mk = self.table.times_var(d - 2, lam, k);
                        let start = rel.len();
                        rel.resize(start + w, 0.0);
                        let row = &mut rel[start..];
                        self.write_nf(d - 1, mj, &mut row[k * hm1..(k + 1) * hm1], false);
                        self.write_nf(d - 1, mk, &mut row[j * hm1..(j + 1) * hm1], true);
                        nrel += 1;
                    }
                }
            }
        }
        for g in self.generators.iter().filter(|g| g.degree == d) {
            let start = rel.len();
            rel.resize(start + w, 0.0);
            for (nu, c) in g.terms() {
                let (k, q) = self.table.split_first(d, nu);
                self.add_scaled_nf(d - 1, q, c, &mut rel[start + k * hm1..start + (k + 1) * hm1]);
            }
            nrel += 1;
        }
        ech.insert_rows(&mut rel, nrel);
        drop(rel);

        // image of every degree-d monomial in W / relations
        let free = ech.free_columns();
        let h = free.len();
        let mut img = vec![0.0f64; count * w];
        for nu in 0..count {
            let (k, q) = self.table.split_first(d, nu);
            self.write_nf(d - 1, q, &mut img[nu * w + k * hm1..nu * w + (k + 1) * hm1], false);
        }
        ech.reduce_rows(&mut img, count);
        let mut coords = vec![0.0f64; count * h];
        for nu in 0..count {
            for (s, &c) in free.iter().enumerate() {
                coords[nu * h + s] = img[nu * w + c];
            }
        }
        drop(img);

        // greedy choice of standard monomials, smallest monomial first
        let mut sel = Echelon::new(self.field, h);
        let mut rev = Vec::with_capacity(count * h);
        for nu in (0..count).rev() {
            rev.extend_from_slice(&coords[nu * h..(nu + 1) * h]);
        }
        let flags = sel.insert_rows(&mut rev, count);
        let mut standard: Vec<usize> =
            flags.iter().enumerate().filter(|(_, &f)| f).map(|(i, _)| count - 1 - i).collect();
        standard.sort_unstable();
        debug_assert_eq!(standard.len(), h);

        // coordinates with respect to the chosen monomials: coords · B^{-1}
        let mut aug = vec![0.0f64; h * 2 * h];
        for (r, &lam) in standard.iter().enumerate() {
            aug[r * 2 * h..r * 2 * h + h].copy_from_slice(&coords[lam * h..(lam + 1) * h]);
            aug[r * 2 * h + h + r] = 1.0;
        }
        let mut inv_ech = Echelon::new(self.field, 2 * h);
        inv_ech.insert_rows(&mut aug, h);
        let mut binv = vec![0.0f64; h * h];
        for (r, row) in inv_ech.sorted_rows().into_iter().enumerate() {
            binv[r * h..(r + 1) * h].copy_from_slice(&row[h..]);
        }
        let mut out = vec![0.0f64; count * h];
        if h > 0 {
            unsafe {
                matrixmultiply::dgemm(
                    count,
                    h,
                    h,
                    1.0,
                    coords.as_ptr(),
                    h as isize,
                    1,
                    binv.as_ptr(),
                    h as isize,
                    1,
                    0.0,
                    out.as_mut_ptr(),
                    h as isize,
                    1,
                );
            }
        }
        let p = self.field.p() as f64;
        reduce_slice_with(&mut out, p, 1.0 / p);
        let nf = PrimeFieldMatrix::from_data(
            self.field,
            count,
            h,
            out.into_iter().map(|x| x as u32).collect(),
        );
        Piece { standard, nf: NormalForms::Dense(nf) }
    }

    fn write_nf(&self, d: usize, mono: usize, dst: &mut [f64], negate: bool) {
        let p = self.field.p();
        match &self.pieces[d].nf {
            NormalForms::Identity => {
                dst[mono] = if negate { (p - 1) as f64 } else { 1.0 };
            }
            NormalForms::Dense(m) => {
                for (x, &v) in dst.iter_mut().zip(m.row(mono)) {
                    *x = if negate && v != 0 { (p - v) as f64 } else { v as f64 };
                }
            }
        }
    }

    fn add_scaled_nf(&self, d: usize, mono: usize, c: u32, dst: &mut [f64]) {
        let f = self.field;
        match &self.pieces[d].nf {
            NormalForms::Identity => {
                dst[mono] = f.add(dst[mono] as u32, c) as f64;
            }
            NormalForms::Dense(m) => {
                for (x, &v) in dst.iter_mut().zip(m.row(mono)) {
                    *x = f.add(*x as u32, f.mul(c, v)) as f64;
                }
            }
        }
    }

    pub fn n(&self) -> usize {
        self.table.n()
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn table(&self) -> &Arc<MonomialTable> {
        &self.table
    }

    pub fn generators(&self) -> &[Form] {
        &self.generators
    }

    /// dim of the degree-d piece; degrees above the cutoff are an error
    /// unless the ring already vanished at the cutoff.
    pub fn h(&self, d: usize) -> usize {
        match self.pieces.get(d) {
            Some(p) => p.standard.len(),
            None => {
                assert!(
                    self.vanishes_at_cutoff(),
                    "degree {d} beyond cutoff {} of a ring that has not vanished",
                    self.cutoff
                );
                0
            }
        }
    }

    pub fn checked_h(&self, d: usize) -> Result<usize, GradedError> {
        if d > self.cutoff && !self.vanishes_at_cutoff() {
            return Err(GradedError::DegreeOutOfRange { degree: d, cutoff: self.cutoff });
        }
        Ok(self.h(d))
    }

    pub fn hilbert(&self) -> Vec<usize> {
        (0..=self.cutoff).map(|d| self.h(d)).collect()
    }

    pub fn vanishes_at_cutoff(&self) -> bool {
        self.pieces.last().is_some_and(|p| p.standard.is_empty())
    }

    /// Largest degree with a nonzero piece (within the cutoff).
    pub fn top_degree(&self) -> Option<usize> {
        (0..=self.cutoff).rev().find(|&d| self.h(d) > 0)
    }

    /// Standard monomials of degree d, as indices into the degree-d basis.
    pub fn standard_monomials(&self, d: usize) -> &[usize] {
        &self.pieces[d].standard
    }

    /// Coordinates of the monomial with index `mono` of degree d.
    pub fn normal_form(&self, d: usize, mono: usize) -> Vec<u32> {
        match &self.pieces[d].nf {
            NormalForms::Identity => {
                let mut v = vec![0; self.table.count(d)];
                v[mono] = 1;
                v
            }
            NormalForms::Dense(m) => m.row(mono).to_vec(),
        }
    }

    /// Coordinates of a form in the standard basis of its degree.
    pub fn reduce_form(&self, f: &Form) -> Result<Vec<u32>, GradedError> {
        self.check_degree(f.degree)?;
        let fld = self.field;
        let mut out = vec![0u32; self.h(f.degree)];
        for (nu, c) in f.terms() {
            match &self.pieces[f.degree].nf {
                NormalForms::Identity => out[nu] = fld.add(out[nu], c),
                NormalForms::Dense(m) => {
                    for (o, &v) in out.iter_mut().zip(m.row(nu)) {
                        *o = fld.add(*o, fld.mul(c, v));
                    }
                }
            }
        }
        Ok(out)
    }

    /// Lift coordinates over the standard basis back to a form.
    pub fn lift(&self, d: usize, coords: &[u32]) -> Form {
        let mut f = Form::zero(&self.table, d);
        for (s, &c) in self.pieces[d].standard.iter().zip(coords) {
            f.coeffs[*s] = c;
        }
        f
    }

    fn check_degree(&self, d: usize) -> Result<(), GradedError> {
        if d > self.cutoff {
            Err(GradedError::DegreeOutOfRange { degree: d, cutoff: self.cutoff })
        } else {
            Ok(())
        }
    }

    /// Multiplication by x_k as a map S_d → S_{d+1} (h(d+1) × h(d)).
    pub fn var_matrix(&self, d: usize, k: usize) -> &PrimeFieldMatrix {
        &self.var_matrices(d)[k]
    }

    pub fn var_matrices(&self, d: usize) -> &[PrimeFieldMatrix] {
        assert!(d < self.cutoff, "multiplication from degree {d} needs cutoff > {d}");
        self.var_mult[d].get_or_init(|| {
            let hs = self.h(d);
            let ht = self.h(d + 1);
            (0..self.n())
                .map(|k| {
                    let mut m = PrimeFieldMatrix::zeros(self.field, ht, hs);
                    if ht == 0 {
                        return m;
                    }
                    for (s, &lam) in self.pieces[d].standard.iter().enumerate() {
                        let mu = self.table.times_var(d, lam, k);
                        let col = self.normal_form(d + 1, mu);
                        for (t, &v) in col.iter().enumerate() {
                            if v != 0 {
                                m.set(t, s, v);
                            }
                        }
                    }
                    m
                })
                .collect()
        })
    }

    /// Matrix of multiplication by `f` from degree d to degree d + deg f.
    pub fn multiplication_matrix(&self, f: &Form, d: usize) -> Result<PrimeFieldMatrix, GradedError> {
        let e = f.degree;
        self.check_degree(d + e)?;
        let fld = self.field;
        let hs = self.h(d);
        let ht = self.h(d + e);
        let mut m = PrimeFieldMatrix::zeros(fld, ht, hs);
        for (s, &lam) in self.pieces[d].standard.iter().enumerate() {
            let mut col = vec![0u32; ht];
            for (nu, c) in f.terms() {
                let mu = self.table.product(d, lam, e, nu);
                for (o, v) in col.iter_mut().zip(self.normal_form(d + e, mu)) {
                    *o = fld.add(*o, fld.mul(c, v));
                }
            }
            for (t, &v) in col.iter().enumerate() {
                if v != 0 {
                    m.set(t, s, v);
                }
            }
        }
        Ok(m)
    }

    /// True iff multiplication by `f` has maximal rank in every degree d with
    /// d + deg f ≤ cutoff.
    pub fn is_maximal_rank_element(&self, f: &Form) -> bool {
        (0..=self.cutoff.saturating_sub(f.degree)).all(|d| {
            let m = self.multiplication_matrix(f, d).expect("degree within cutoff");
            m.rank() == self.h(d).min(self.h(d + f.degree))
        })
    }

    /// Kernel of multiplication by `f` on S_d, as coordinate vectors.
    pub fn annihilator_piece(&self, f: &Form, d: usize) -> Result<Vec<Vec<u32>>, GradedError> {
        let m = self.multiplication_matrix(f, d)?;
        Ok(m.kernel_basis())
    }

    /// Dimensions of the socle by degree (only nonzero degrees are listed).
    pub fn socle(&self) -> Result<BTreeMap<usize, usize>, GradedError> {
        if !self.vanishes_at_cutoff() {
            return Err(GradedError::TruncatedSocle { cutoff: self.cutoff });
        }
        let mut out = BTreeMap::new();
        for d in 0..=self.cutoff {
            let hs = self.h(d);
            if hs == 0 {
                continue;
            }
            let dim = if d == self.cutoff || self.h(d + 1) == 0 {
                hs
            } else {
                let mats = self.var_matrices(d);
                let ht = self.h(d + 1);
                let mut stacked = Vec::with_capacity(self.n() * ht * hs);
                for m in mats {
                    stacked.extend_from_slice(m.data());
                }
                let big = PrimeFieldMatrix::from_data(self.field, self.n() * ht, hs, stacked);
                hs - big.rank()
            };
            if dim > 0 {
                out.insert(d, dim);
            }
        }
        Ok(out)
    }

    /// Minimal generator counts of the defining ideal by degree:
    /// dim I_d − dim (m·I)_d.
    pub fn minimal_generator_degrees(&self) -> GeneratorDegrees {
        let mut counts = BTreeMap::new();
        let certified = self.vanishes_at_cutoff();
        if self.generators.is_empty() {
            return GeneratorDegrees { counts, certified: true };
        }
        let n = self.n();
        for d in 1..=self.cutoff {
            let hm1 = self.h(d - 1);
            if hm1 == 0 {
                break;
            }
            let w = n * hm1;
            let mut rank = 0;
            if d >= 2 {
                let mut ech = Echelon::new(self.field, w);
                let mut rel: Vec<f64> = Vec::new();
                let mut nrel = 0;
                for &lam in &self.pieces[d - 2].standard {
                    for j in 0..n {
                        let mj = self.table.times_var(d - 2, lam, j);
                        for k in (j + 1)..n {
                            let mk = self.table.times_var(d - 2, lam, k);
                            let start = rel.len();
                            rel.resize(start + w, 0.0);
                            let row = &mut rel[start..];
                            self.write_nf(d - 1, mj, &mut row[k * hm1..(k + 1) * hm1], false);
                            self.write_nf(d - 1, mk, &mut row[j * hm1..(j + 1) * hm1], true);
                            nrel += 1;
                        }
                    }
                }
                ech.insert_rows(&mut rel, nrel);
                rank = ech.rank();
            }
            let c = w - rank - self.h(d);
            if c > 0 {
                counts.insert(d, c);
            }
        }
        GeneratorDegrees { counts, certified }
    }
}
