use super::{Echelon, LinalgError, PrimeField};

/// Dense row-major matrix over GF(p).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeFieldMatrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl PrimeFieldMatrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        PrimeFieldMatrix { field, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1 % field.p();
        }
        m
    }

    /// Build from signed integer rows, reducing every entry mod p.
    pub fn from_rows(field: PrimeField, rows: &[Vec<i64>]) -> Result<Self, LinalgError> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(LinalgError::Ragged);
        }
        let data = rows.iter().flatten().map(|&x| field.from_i64(x)).collect();
        Ok(PrimeFieldMatrix { field, rows: rows.len(), cols, data })
    }

    /// Wrap a row-major buffer whose entries are already reduced.
    pub fn from_data(field: PrimeField, rows: usize, cols: usize, data: Vec<u32>) -> Self {
        assert_eq!(data.len(), rows * cols, "buffer size does not match shape");
        debug_assert!(data.iter().all(|&x| x < field.p()));
        PrimeFieldMatrix { field, rows, cols, data }
    }

    pub fn from_fn(
        field: PrimeField,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> u32,
    ) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j) % field.p());
            }
        }
        PrimeFieldMatrix { field, rows, cols, data }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[u32] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v % self.field.p();
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.field, self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn mul_vec(&self, v: &[u32]) -> Result<Vec<u32>, LinalgError> {
        if v.len() != self.cols {
            return Err(LinalgError::Shape { left: (self.rows, self.cols), right: (v.len(), 1) });
        }
        let p = self.field.p() as u64;
        Ok((0..self.rows)
            .map(|i| {
                let s = self.row(i).iter().zip(v).fold(0u64, |acc, (&a, &b)| {
                    (acc + a as u64 * b as u64) % p
                });
                s as u32
            })
            .collect())
    }

    pub fn mul(&self, other: &Self) -> Result<Self, LinalgError> {
        if self.cols != other.rows || self.field != other.field {
            return Err(LinalgError::Shape {
                left: (self.rows, self.cols),
                right: (other.rows, other.cols),
            });
        }
        let p = self.field.p() as u64;
        // products summed before a reduction is needed
        let depth = (u64::MAX / ((p - 1) * (p - 1)).max(1) - 1).max(1);
        let mut out = Self::zeros(self.field, self.rows, other.cols);
        let mut acc = vec![0u64; other.cols];
        for i in 0..self.rows {
            acc.iter_mut().for_each(|x| *x = 0);
            let mut pending = 0;
            for k in 0..self.cols {
                let a = self.get(i, k) as u64;
                if a == 0 {
                    continue;
                }
                if pending == depth {
                    acc.iter_mut().for_each(|x| *x %= p);
                    pending = 0;
                }
                for (x, &b) in acc.iter_mut().zip(other.row(k)) {
                    *x += a * b as u64;
                }
                pending += 1;
            }
            acc.iter_mut().for_each(|x| *x %= p);
            for j in 0..other.cols {
                out.data[i * other.cols + j] = acc[j] as u32;
            }
        }
        Ok(out)
    }

    /// Reduced row echelon form of the row space.
    pub fn echelon(&self) -> Echelon {
        let mut e = Echelon::new(self.field, self.cols);
        e.insert_u32_rows(&self.data, self.rows);
        e
    }

    /// Canonical reduced row echelon form, zero rows dropped.
    pub fn rref(&self) -> PrimeFieldMatrix {
        let e = self.echelon();
        let rows = e.sorted_rows();
        let data = rows.iter().flat_map(|r| r.iter().map(|&x| x as u32)).collect();
        PrimeFieldMatrix { field: self.field, rows: rows.len(), cols: self.cols, data }
    }

    pub fn rank(&self) -> usize {
        if self.rows <= self.cols {
            self.echelon().rank()
        } else {
            self.transpose().echelon().rank()
        }
    }

    /// Basis of the null space { v : M v = 0 }, one vector per free column in
    /// increasing order; the vector for free column f has a 1 at f and is
    /// supported on f and pivot columns to its left.
    pub fn kernel_basis(&self) -> Vec<Vec<u32>> {
        self.echelon().kernel_vectors()
    }

    /// Lexicographically first maximal set of independent columns.
    pub fn column_span_pivots(&self) -> Vec<usize> {
        self.echelon().sorted_pivots()
    }

    /// Some solution of M x = b, or `None` when the system is inconsistent.
    pub fn solve(&self, b: &[u32]) -> Result<Option<Vec<u32>>, LinalgError> {
        if b.len() != self.rows {
            return Err(LinalgError::Shape { left: (self.rows, self.cols), right: (b.len(), 1) });
        }
        let aug = Self::from_fn(self.field, self.rows, self.cols + 1, |i, j| {
            if j < self.cols {
                self.get(i, j)
            } else {
                b[i]
            }
        });
        let e = aug.echelon();
        if e.is_pivot(self.cols) {
            return Ok(None);
        }
        let mut x = vec![0u32; self.cols];
        for (k, &pc) in e.pivots().iter().enumerate() {
            x[pc] = e.row(k)[self.cols] as u32;
        }
        Ok(Some(x))
    }
}
