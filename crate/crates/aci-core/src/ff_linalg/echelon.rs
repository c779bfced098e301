//! Incremental reduced row echelon form over GF(p).
//!
//! Rows are held as `f64` so that the bulk of the elimination runs through a
//! dense matrix product. Entries are always reduced into `[0, p)` between
//! products; inner dimensions are chunked so every partial sum stays below
//! 2^53 and the floating-point arithmetic is exact.

use super::PrimeField;

const BLOCK: usize = 192;
const EXACT_LIMIT: f64 = 9_007_199_254_740_992.0; // 2^53

/// A subspace of GF(p)^cols kept in reduced row echelon form.
///
/// Pivots are always chosen as the leftmost nonzero entry of a reduced
/// incoming row, so the pivot set is the lexicographically first column basis
/// of the row space, independent of insertion order.
#[derive(Clone, Debug)]
pub struct Echelon {
    field: PrimeField,
    cols: usize,
    data: Vec<f64>,
    pivots: Vec<usize>,
    row_of_col: Vec<usize>,
    kc: usize,
    p: f64,
    inv_p: f64,
}

impl Echelon {
    pub fn new(field: PrimeField, cols: usize) -> Self {
        let p = field.p() as f64;
        let kc = chunk_depth(p);
        Echelon {
            field,
            cols,
            data: Vec::new(),
            pivots: Vec::new(),
            row_of_col: vec![usize::MAX; cols],
            kc,
            p,
            inv_p: 1.0 / p,
        }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_full(&self) -> bool {
        self.pivots.len() == self.cols
    }

    /// Pivot column of each stored row, in storage order.
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.row_of_col[col] != usize::MAX
    }

    /// Stored row whose pivot is `col`, if any.
    pub fn row_for_pivot(&self, col: usize) -> Option<&[f64]> {
        let r = self.row_of_col[col];
        (r != usize::MAX).then(|| self.row(r))
    }

    pub fn row(&self, k: usize) -> &[f64] {
        &self.data[k * self.cols..(k + 1) * self.cols]
    }

    /// Pivot columns in increasing order.
    pub fn sorted_pivots(&self) -> Vec<usize> {
        let mut v = self.pivots.clone();
        v.sort_unstable();
        v
    }

    /// Rows sorted by pivot column: the canonical reduced row echelon form.
    pub fn sorted_rows(&self) -> Vec<&[f64]> {
        let mut idx: Vec<usize> = (0..self.rank()).collect();
        idx.sort_unstable_by_key(|&k| self.pivots[k]);
        idx.into_iter().map(|k| self.row(k)).collect()
    }

    /// Non-pivot columns in increasing order.
    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.cols).filter(|&c| !self.is_pivot(c)).collect()
    }

    /// Insert rows given as reduced `u32` entries; returns, per row, whether it
    /// enlarged the span.
    pub fn insert_u32_rows(&mut self, rows: &[u32], nrows: usize) -> Vec<bool> {
        debug_assert_eq!(rows.len(), nrows * self.cols);
        let mut buf: Vec<f64> = rows.iter().map(|&x| x as f64).collect();
        self.insert_rows(&mut buf, nrows)
    }

    /// Insert `nrows` rows (row-major, entries in `[0, p)`); the buffer is used
    /// as scratch. Returns the independence flag of every row, in order.
    pub fn insert_rows(&mut self, rows: &mut [f64], nrows: usize) -> Vec<bool> {
        let c = self.cols;
        debug_assert_eq!(rows.len(), nrows * c);
        let mut flags = Vec::with_capacity(nrows);
        if c == 0 {
            flags.resize(nrows, false);
            return flags;
        }
        let mut start = 0;
        while start < nrows {
            if self.is_full() {
                flags.resize(nrows, false);
                break;
            }
            let end = (start + BLOCK).min(nrows);
            let block = &mut rows[start * c..end * c];
            flags.extend(self.insert_block(block, end - start));
            start = end;
        }
        flags
    }

    /// Reduce `v` modulo the stored span (zeroes every pivot coordinate).
    pub fn reduce_vec(&self, v: &mut [f64]) {
        self.reduce_against_basis(v, 1);
    }

    /// Reduce each of `nrows` rows in `rows` modulo the stored span.
    pub fn reduce_rows(&self, rows: &mut [f64], nrows: usize) {
        self.reduce_against_basis(rows, nrows);
    }

    fn reduce_against_basis(&self, b: &mut [f64], nb: usize) {
        let c = self.cols;
        let r = self.rank();
        if r == 0 || nb == 0 {
            return;
        }
        let mut g = vec![0.0f64; nb * r];
        for i in 0..nb {
            let row = &b[i * c..(i + 1) * c];
            let gi = &mut g[i * r..(i + 1) * r];
            for (k, &pc) in self.pivots.iter().enumerate() {
                gi[k] = row[pc];
            }
        }
        let mut k0 = 0;
        while k0 < r {
            let k1 = (k0 + self.kc).min(r);
            // b <- b - g[:, k0..k1] * data[k0..k1, :]
            unsafe {
                matrixmultiply::dgemm(
                    nb,
                    k1 - k0,
                    c,
                    -1.0,
                    g.as_ptr().add(k0),
                    r as isize,
                    1,
                    self.data.as_ptr().add(k0 * c),
                    c as isize,
                    1,
                    1.0,
                    b.as_mut_ptr(),
                    c as isize,
                    1,
                );
            }
            self.reduce_slice(b);
            k0 = k1;
        }
    }

    fn insert_block(&mut self, b: &mut [f64], nb: usize) -> Vec<bool> {
        let c = self.cols;
        self.reduce_against_basis(b, nb);

        let mut flags = vec![false; nb];
        let mut new_rows: Vec<usize> = Vec::new();
        let mut new_piv: Vec<usize> = Vec::new();
        for t in 0..nb {
            let (before, after) = b.split_at_mut(t * c);
            let rowt = &mut after[..c];
            let mut touched = false;
            for (s_idx, &s) in new_rows.iter().enumerate() {
                let coef = rowt[new_piv[s_idx]];
                if coef != 0.0 {
                    axpy(rowt, self.p - coef, &before[s * c..(s + 1) * c]);
                    touched = true;
                }
            }
            if touched {
                self.reduce_slice(rowt);
            }
            let Some(q) = rowt.iter().position(|&x| x != 0.0) else {
                continue;
            };
            let inv = self.field.inv(rowt[q] as u32) as f64;
            if inv != 1.0 {
                for x in rowt.iter_mut() {
                    *x *= inv;
                }
                self.reduce_slice(rowt);
            }
            for &s in &new_rows {
                let rows = &mut before[s * c..(s + 1) * c];
                let coef = rows[q];
                if coef != 0.0 {
                    axpy(rows, self.p - coef, rowt);
                    self.reduce_slice(rows);
                }
            }
            flags[t] = true;
            new_rows.push(t);
            new_piv.push(q);
        }
        if new_rows.is_empty() {
            return flags;
        }

        let nn = new_rows.len();
        let mut nbuf = Vec::with_capacity(nn * c);
        for &s in &new_rows {
            nbuf.extend_from_slice(&b[s * c..(s + 1) * c]);
        }
        let r = self.rank();
        if r > 0 {
            let mut h = vec![0.0f64; r * nn];
            for k in 0..r {
                let row = &self.data[k * c..(k + 1) * c];
                for (j, &q) in new_piv.iter().enumerate() {
                    h[k * nn + j] = row[q];
                }
            }
            let mut k0 = 0;
            while k0 < nn {
                let k1 = (k0 + self.kc).min(nn);
                unsafe {
                    matrixmultiply::dgemm(
                        r,
                        k1 - k0,
                        c,
                        -1.0,
                        h.as_ptr().add(k0),
                        nn as isize,
                        1,
                        nbuf.as_ptr().add(k0 * c),
                        c as isize,
                        1,
                        1.0,
                        self.data.as_mut_ptr(),
                        c as isize,
                        1,
                    );
                }
                let p = self.p;
                let inv_p = self.inv_p;
                reduce_slice_with(&mut self.data, p, inv_p);
                k0 = k1;
            }
        }
        for (j, &q) in new_piv.iter().enumerate() {
            self.row_of_col[q] = self.pivots.len() + j;
        }
        self.pivots.extend_from_slice(&new_piv);
        self.data.extend_from_slice(&nbuf);
        flags
    }

    #[inline]
    fn reduce_slice(&self, v: &mut [f64]) {
        reduce_slice_with(v, self.p, self.inv_p);
    }

    /// Kernel of the linear map whose matrix has the stored rows as its row
    /// space: one vector per free column `f`, with a 1 at `f`, minus the
    /// column entries at pivot positions, zero elsewhere.
    pub fn kernel_vectors(&self) -> Vec<Vec<u32>> {
        let free = self.free_columns();
        let p = self.field.p();
        free.iter()
            .map(|&f| {
                let mut v = vec![0u32; self.cols];
                v[f] = 1;
                for (k, &pc) in self.pivots.iter().enumerate() {
                    let x = self.data[k * self.cols + f] as u32;
                    if x != 0 {
                        v[pc] = p - x;
                    }
                }
                v
            })
            .collect()
    }
}

#[inline]
fn axpy(dst: &mut [f64], a: f64, src: &[f64]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d += a * s;
    }
}

/// Largest number of products of reduced entries that can be summed onto a
/// reduced entry while staying exact and within range of [`reduce_slice_with`].
pub(crate) fn chunk_depth(p: f64) -> usize {
    let pm1 = p - 1.0;
    let limit = EXACT_LIMIT.min(p * 1_125_899_906_842_624.0); // p·2^50
    (((limit - 2.0 * p) / (pm1 * pm1).max(1.0)).floor() as usize).max(1)
}

/// Reduce every entry into [0, p). Entries must be integers of absolute
/// value below 2^53; the quotient is rounded with the 1.5·2^52 trick, which
/// vectorizes where `floor` would not.
#[inline]
pub(crate) fn reduce_slice_with(v: &mut [f64], p: f64, inv_p: f64) {
    const ROUND: f64 = 6_755_399_441_055_744.0;
    for x in v.iter_mut() {
        let q = (*x * inv_p + ROUND) - ROUND;
        let mut y = *x - q * p;
        y += if y < 0.0 { p } else { 0.0 };
        y -= if y >= p { p } else { 0.0 };
        *x = y;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pivots_do_not_depend_on_insertion_order() {
        let f = PrimeField::new(7).unwrap();
        let rows = [[0u32, 1, 1], [1, 1, 0], [1, 2, 1]];
        let mut a = Echelon::new(f, 3);
        let mut flat: Vec<u32> = rows.iter().flatten().copied().collect();
        a.insert_u32_rows(&flat, 3);
        flat = rows.iter().rev().flatten().copied().collect();
        let mut b = Echelon::new(f, 3);
        b.insert_u32_rows(&flat, 3);
        assert_eq!(a.sorted_pivots(), vec![0, 1]);
        assert_eq!(a.sorted_pivots(), b.sorted_pivots());
        assert_eq!(a.sorted_rows(), b.sorted_rows());
    }

    #[test]
    fn large_values_reduce_exactly() {
        let p = 32003.0;
        let mut v = vec![-4.0e15, 4.0e15, -1.0, p, 2.0 * p - 1.0];
        let expect: Vec<f64> = v
            .iter()
            .map(|&x: &f64| ((x as i64).rem_euclid(32003)) as f64)
            .collect();
        reduce_slice_with(&mut v, p, 1.0 / p);
        assert_eq!(v, expect);
    }
}
