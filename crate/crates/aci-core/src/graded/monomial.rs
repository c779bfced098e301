use std::collections::HashMap;

/// Exponent vector of a monomial in `n` variables.
pub type Monomial = Vec<u8>;

/// All monomials of degree `d` in `n` variables, graded-lexicographic order
/// (x1^d first, xn^d last).
pub fn monomial_basis(n: usize, d: usize) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut cur = vec![0u8; n];
    fill(&mut out, &mut cur, 0, d);
    out
}

fn fill(out: &mut Vec<Monomial>, cur: &mut Monomial, var: usize, left: usize) {
    let n = cur.len();
    if n == 0 {
        if left == 0 {
            out.push(Vec::new());
        }
        return;
    }
    if var == n - 1 {
        cur[var] = left as u8;
        out.push(cur.clone());
        cur[var] = 0;
        return;
    }
    for e in (0..=left).rev() {
        cur[var] = e as u8;
        fill(out, cur, var + 1, left - e);
    }
    cur[var] = 0;
}

pub fn degree(m: &[u8]) -> usize {
    m.iter().map(|&e| e as usize).sum()
}

/// Monomial bases of degrees `0..=max_degree` with index lookup and
/// multiplication-by-variable tables.
#[derive(Debug)]
pub struct MonomialTable {
    n: usize,
    bases: Vec<Vec<Monomial>>,
    index: Vec<HashMap<Monomial, usize>>,
    times_var: Vec<Vec<u32>>,
}

impl MonomialTable {
    pub fn new(n: usize, max_degree: usize) -> Self {
        let bases: Vec<Vec<Monomial>> = (0..=max_degree).map(|d| monomial_basis(n, d)).collect();
        let index: Vec<HashMap<Monomial, usize>> = bases
            .iter()
            .map(|b| b.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect())
            .collect();
        let mut times_var = Vec::with_capacity(max_degree);
        for d in 0..max_degree {
            let mut t = Vec::with_capacity(bases[d].len() * n);
            for m in &bases[d] {
                let mut mm = m.clone();
                for k in 0..n {
                    mm[k] += 1;
                    t.push(index[d + 1][&mm] as u32);
                    mm[k] -= 1;
                }
            }
            times_var.push(t);
        }
        MonomialTable { n, bases, index, times_var }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn max_degree(&self) -> usize {
        self.bases.len() - 1
    }

    pub fn count(&self, d: usize) -> usize {
        self.bases[d].len()
    }

    pub fn basis(&self, d: usize) -> &[Monomial] {
        &self.bases[d]
    }

    pub fn monomial(&self, d: usize, idx: usize) -> &Monomial {
        &self.bases[d][idx]
    }

    pub fn index_of(&self, m: &[u8]) -> Option<usize> {
        let d = degree(m);
        self.index.get(d)?.get(m).copied()
    }

    /// Index of x_k · m in degree d+1, where m is the `idx`-th monomial of degree d.
    #[inline]
    pub fn times_var(&self, d: usize, idx: usize, k: usize) -> usize {
        self.times_var[d][idx * self.n + k] as usize
    }

    /// Index of the product of two monomials given by degree and index.
    pub fn product(&self, d1: usize, i1: usize, d2: usize, i2: usize) -> usize {
        let a = &self.bases[d1][i1];
        let b = &self.bases[d2][i2];
        let m: Monomial = a.iter().zip(b).map(|(x, y)| x + y).collect();
        self.index[d1 + d2][&m]
    }

    /// First variable dividing the monomial and the index of the quotient in
    /// degree d−1 (d ≥ 1).
    pub fn split_first(&self, d: usize, idx: usize) -> (usize, usize) {
        let m = &self.bases[d][idx];
        let k = m.iter().position(|&e| e > 0).expect("degree-0 monomial has no variable");
        let mut q = m.clone();
        q[k] -= 1;
        (k, self.index[d - 1][&q])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_variable_quadrics() {
        assert_eq!(monomial_basis(2, 2), vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
    }

    #[test]
    fn sizes() {
        assert_eq!(monomial_basis(7, 0), vec![vec![0u8; 7]]);
        assert_eq!(monomial_basis(4, 3).len(), 20);
    }

    #[test]
    fn table_lookups() {
        let t = MonomialTable::new(3, 3);
        let i = t.index_of(&[1, 0, 1]).unwrap();
        let j = t.times_var(2, i, 1);
        assert_eq!(t.monomial(3, j), &vec![1, 1, 1]);
        assert_eq!(t.split_first(2, i), (0, t.index_of(&[0, 0, 1]).unwrap()));
    }
}
