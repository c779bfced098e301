use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::SeriesError;

/// Bivariate power series Σ c_{ij} t^i u^j truncated to i ≤ imax, j ≤ jmax.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiSeries {
    imax: usize,
    jmax: usize,
    c: Vec<BigInt>,
}

impl BiSeries {
    pub fn zero(imax: usize, jmax: usize) -> Self {
        BiSeries { imax, jmax, c: vec![BigInt::zero(); (imax + 1) * (jmax + 1)] }
    }

    pub fn one(imax: usize, jmax: usize) -> Self {
        Self::monomial(imax, jmax, 0, 0, BigInt::one())
    }

    /// c · t^i u^j (zero if outside the window).
    pub fn monomial(imax: usize, jmax: usize, i: usize, j: usize, c: BigInt) -> Self {
        let mut s = Self::zero(imax, jmax);
        if i <= imax && j <= jmax {
            s.set(i, j, c);
        }
        s
    }

    /// Σ_k h_k (s·t·u)^k with s = ±1: the substitution z ↦ ±tu into a
    /// univariate polynomial.
    pub fn from_tu_polynomial(imax: usize, jmax: usize, h: &[BigInt], negate: bool) -> Self {
        let mut s = Self::zero(imax, jmax);
        for (k, hk) in h.iter().enumerate() {
            if k > imax || k > jmax {
                break;
            }
            let v = if negate && k % 2 == 1 { -hk.clone() } else { hk.clone() };
            s.set(k, k, v);
        }
        s
    }

    pub fn imax(&self) -> usize {
        self.imax
    }

    pub fn jmax(&self) -> usize {
        self.jmax
    }

    #[inline]
    fn idx(&self, i: usize, j: usize) -> usize {
        i * (self.jmax + 1) + j
    }

    pub fn get(&self, i: usize, j: usize) -> BigInt {
        if i > self.imax || j > self.jmax {
            return BigInt::zero();
        }
        self.c[self.idx(i, j)].clone()
    }

    pub fn coeff(&self, i: usize, j: usize) -> &BigInt {
        &self.c[self.idx(i, j)]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        let k = self.idx(i, j);
        self.c[k] = v;
    }

    /// Nonzero coefficients (i, j, c) in lexicographic order.
    pub fn terms(&self) -> Vec<(usize, usize, BigInt)> {
        let mut out = Vec::new();
        for i in 0..=self.imax {
            for j in 0..=self.jmax {
                let v = self.coeff(i, j);
                if !v.is_zero() {
                    out.push((i, j, v.clone()));
                }
            }
        }
        out
    }

    pub fn is_nonnegative(&self) -> bool {
        self.c.iter().all(|x| !x.is_negative())
    }

    fn check_window(&self, other: &Self) -> Result<(), SeriesError> {
        if self.imax != other.imax || self.jmax != other.jmax {
            return Err(SeriesError::WindowMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_window(other)?;
        let c = self.c.iter().zip(&other.c).map(|(a, b)| a + b).collect();
        Ok(BiSeries { imax: self.imax, jmax: self.jmax, c })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_window(other)?;
        let c = self.c.iter().zip(&other.c).map(|(a, b)| a - b).collect();
        Ok(BiSeries { imax: self.imax, jmax: self.jmax, c })
    }

    pub fn neg(&self) -> Self {
        BiSeries { imax: self.imax, jmax: self.jmax, c: self.c.iter().map(|a| -a).collect() }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        BiSeries { imax: self.imax, jmax: self.jmax, c: self.c.iter().map(|a| a * k).collect() }
    }

    /// Truncated product.
    pub fn mul(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_window(other)?;
        let mut out = Self::zero(self.imax, self.jmax);
        let lhs = self.terms();
        let rhs = other.terms();
        for (i1, j1, a) in &lhs {
            for (i2, j2, b) in &rhs {
                let (i, j) = (i1 + i2, j1 + j2);
                if i <= self.imax && j <= self.jmax {
                    let k = out.idx(i, j);
                    out.c[k] += a * b;
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> Result<Self, SeriesError> {
        let mut r = Self::one(self.imax, self.jmax);
        for _ in 0..e {
            r = r.mul(self)?;
        }
        Ok(r)
    }

    /// Multiplicative inverse within the window; needs c_00 = ±1.
    pub fn reciprocal(&self) -> Result<Self, SeriesError> {
        let c00 = self.get(0, 0);
        if !(c00.is_one() || (-&c00).is_one()) {
            return Err(SeriesError::NotInvertible(c00));
        }
        let terms: Vec<(usize, usize, BigInt)> =
            self.terms().into_iter().filter(|(i, j, _)| *i != 0 || *j != 0).collect();
        let mut inv = Self::zero(self.imax, self.jmax);
        for i in 0..=self.imax {
            for j in 0..=self.jmax {
                let mut acc = if i == 0 && j == 0 { BigInt::one() } else { BigInt::zero() };
                for (a, b, s) in &terms {
                    if *a <= i && *b <= j {
                        acc -= s * inv.coeff(i - a, j - b);
                    }
                }
                // c00 = ±1 is its own inverse
                let v = acc * &c00;
                inv.set(i, j, v);
            }
        }
        Ok(inv)
    }

    /// Exact division by t^k: all coefficients with i < k must vanish. The
    /// result keeps the window; the top k rows become unknown and are
    /// reported as zero, so callers should build inputs with k extra rows.
    pub fn div_t_power(&self, k: usize) -> Result<Self, SeriesError> {
        for i in 0..k.min(self.imax + 1) {
            for j in 0..=self.jmax {
                if !self.coeff(i, j).is_zero() {
                    return Err(SeriesError::NotDivisible { power: k });
                }
            }
        }
        let mut out = Self::zero(self.imax, self.jmax);
        for i in k..=self.imax {
            for j in 0..=self.jmax {
                out.set(i - k, j, self.get(i, j));
            }
        }
        Ok(out)
    }

    /// Same coefficients in a smaller window.
    pub fn truncate(&self, imax: usize, jmax: usize) -> Self {
        let mut out = Self::zero(imax, jmax);
        for i in 0..=imax.min(self.imax) {
            for j in 0..=jmax.min(self.jmax) {
                out.set(i, j, self.get(i, j));
            }
        }
        out
    }

    /// Re-embed into a larger window (new coefficients are zero).
    pub fn widen(&self, imax: usize, jmax: usize) -> Self {
        let mut out = Self::zero(imax, jmax);
        for (i, j, c) in self.terms() {
            if i <= imax && j <= jmax {
                out.set(i, j, c);
            }
        }
        out
    }

    /// Largest j with c_{ij} ≠ 0.
    pub fn top_degree(&self, i: usize) -> Option<usize> {
        (0..=self.jmax).rev().find(|&j| !self.get(i, j).is_zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn geometric_series() {
        let one_minus_tu = BiSeries::one(5, 5)
            .sub(&BiSeries::monomial(5, 5, 1, 1, BigInt::one()))
            .unwrap();
        let inv = one_minus_tu.reciprocal().unwrap();
        for i in 0..=5 {
            for j in 0..=5 {
                let want = if i == j { BigInt::one() } else { BigInt::zero() };
                assert_eq!(inv.get(i, j), want);
            }
        }
    }

    #[test]
    fn not_invertible() {
        let two = BiSeries::monomial(2, 2, 0, 0, BigInt::from(2));
        assert!(two.reciprocal().is_err());
    }

    #[test]
    fn divide_by_t() {
        let s = BiSeries::monomial(3, 3, 2, 1, BigInt::from(5));
        assert_eq!(s.div_t_power(2).unwrap().get(0, 1), BigInt::from(5));
        assert!(s.div_t_power(3).is_err());
    }
}
