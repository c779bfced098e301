//! Row echelon form for rank and pivot queries only.
//!
//! Rows are stored in the blocks they were inserted with. Each block is
//! reduced against all earlier blocks and internally reduced, but earlier
//! blocks are never rewritten, which halves the work of keeping a fully
//! reduced form.

use super::echelon::{chunk_depth, reduce_slice_with};
use super::PrimeField;

const BLOCK: usize = 256;

#[derive(Clone, Debug)]
struct Block {
    data: Vec<f64>,
    pivots: Vec<usize>,
}

/// A subspace of GF(p)^cols in (non-reduced) row echelon form.
///
/// Incoming rows are reduced to zero at every existing pivot and the
/// leftmost remaining entry becomes a new pivot, so the pivot set is the set
/// of leading positions of the row space, independent of insertion order.
#[derive(Clone, Debug)]
pub struct RowEchelon {
    field: PrimeField,
    cols: usize,
    blocks: Vec<Block>,
    is_pivot: Vec<bool>,
    rank: usize,
    kc: usize,
    p: f64,
    inv_p: f64,
}

impl RowEchelon {
    pub fn new(field: PrimeField, cols: usize) -> Self {
        let p = field.p() as f64;
        RowEchelon {
            field,
            cols,
            blocks: Vec::new(),
            is_pivot: vec![false; cols],
            rank: 0,
            kc: chunk_depth(p),
            p,
            inv_p: 1.0 / p,
        }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_full(&self) -> bool {
        self.rank == self.cols
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.is_pivot[col]
    }

    /// Non-pivot columns in increasing order.
    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.cols).filter(|&c| !self.is_pivot[c]).collect()
    }

    /// Pivot columns in increasing order.
    pub fn sorted_pivots(&self) -> Vec<usize> {
        (0..self.cols).filter(|&c| self.is_pivot[c]).collect()
    }

    pub fn insert_u32_rows(&mut self, rows: &[u32], nrows: usize) -> Vec<bool> {
        let mut buf: Vec<f64> = rows.iter().map(|&x| x as f64).collect();
        self.insert_rows(&mut buf, nrows)
    }

    /// Insert `nrows` rows with entries in [0, p); the buffer is scratch.
    /// Returns, per row, whether it enlarged the span.
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
            flags.extend(self.insert_block(&mut rows[start * c..end * c], end - start));
            start = end;
        }
        flags
    }

    /// Zero the pivot coordinates of every row of `b` (left reduced).
    fn reduce_against_blocks(&self, b: &mut [f64], nb: usize) {
        let c = self.cols;
        let mut depth = 0;
        let mut g: Vec<f64> = Vec::new();
        for blk in &self.blocks {
            let r = blk.pivots.len();
            if depth + r > self.kc {
                reduce_slice_with(b, self.p, self.inv_p);
                depth = 0;
            }
            g.clear();
            g.resize(nb * r, 0.0);
            for i in 0..nb {
                let row = &b[i * c..(i + 1) * c];
                for (k, &pc) in blk.pivots.iter().enumerate() {
                    g[i * r + k] = row[pc];
                }
            }
            reduce_slice_with(&mut g, self.p, self.inv_p);
            if g.iter().all(|&x| x == 0.0) {
                continue;
            }
            unsafe {
                matrixmultiply::dgemm(
                    nb,
                    r,
                    c,
                    -1.0,
                    g.as_ptr(),
                    r as isize,
                    1,
                    blk.data.as_ptr(),
                    c as isize,
                    1,
                    1.0,
                    b.as_mut_ptr(),
                    c as isize,
                    1,
                );
            }
            depth += r;
        }
        reduce_slice_with(b, self.p, self.inv_p);
    }

    fn insert_block(&mut self, b: &mut [f64], nb: usize) -> Vec<bool> {
        let c = self.cols;
        self.reduce_against_blocks(b, nb);
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
                    let a = self.p - coef;
                    for (d, x) in rowt.iter_mut().zip(&before[s * c..(s + 1) * c]) {
                        *d += a * x;
                    }
                    touched = true;
                }
            }
            if touched {
                reduce_slice_with(rowt, self.p, self.inv_p);
            }
            let Some(q) = rowt.iter().position(|&x| x != 0.0) else {
                continue;
            };
            let inv = self.field.inv(rowt[q] as u32) as f64;
            if inv != 1.0 {
                for x in rowt.iter_mut() {
                    *x *= inv;
                }
                reduce_slice_with(rowt, self.p, self.inv_p);
            }
            // keep the block internally reduced so later rows see zeros at
            // every pivot of this block
            for &s in &new_rows {
                let rows = &mut before[s * c..(s + 1) * c];
                let coef = rows[q];
                if coef != 0.0 {
                    let a = self.p - coef;
                    for (d, x) in rows.iter_mut().zip(rowt.iter()) {
                        *d += a * x;
                    }
                    reduce_slice_with(rows, self.p, self.inv_p);
                }
            }
            flags[t] = true;
            new_rows.push(t);
            new_piv.push(q);
        }
        if new_rows.is_empty() {
            return flags;
        }
        let mut data = Vec::with_capacity(new_rows.len() * c);
        for &s in &new_rows {
            data.extend_from_slice(&b[s * c..(s + 1) * c]);
        }
        for &q in &new_piv {
            self.is_pivot[q] = true;
        }
        self.rank += new_piv.len();
        self.blocks.push(Block { data, pivots: new_piv });
        flags
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff_linalg::Echelon;

    #[test]
    fn agrees_with_reduced_form() {
        let f = PrimeField::new(101).unwrap();
        let mut state = 7u64;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((state >> 33) % 101) as u32
        };
        for &(rows, cols, rank) in &[(300usize, 200usize, 150usize), (600, 90, 90), (50, 400, 50)] {
            // rank-limited product of random factors
            let a: Vec<u32> = (0..rows * rank).map(|_| next()).collect();
            let b: Vec<u32> = (0..rank * cols).map(|_| next()).collect();
            let mut m = vec![0u32; rows * cols];
            for i in 0..rows {
                for k in 0..rank {
                    let x = a[i * rank + k];
                    for j in 0..cols {
                        m[i * cols + j] = (m[i * cols + j] + x * b[k * cols + j]) % 101;
                    }
                }
            }
            let mut re = RowEchelon::new(f, cols);
            let flags = re.insert_u32_rows(&m, rows);
            let mut e = Echelon::new(f, cols);
            let flags2 = e.insert_u32_rows(&m, rows);
            assert_eq!(re.rank(), e.rank());
            assert_eq!(re.sorted_pivots(), e.sorted_pivots());
            assert_eq!(flags, flags2);
        }
    }
}
