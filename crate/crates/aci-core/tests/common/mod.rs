#![allow(dead_code)]

use aci_core::graded::Monomial;

pub const P: u32 = 32003;

/// Plain Gauss-Jordan over u64, kept separate from the library code.
pub fn oracle_rank(rows: &[Vec<u32>]) -> usize {
    let p = P as u64;
    let mut m: Vec<Vec<u64>> = rows.iter().map(|r| r.iter().map(|&x| x as u64 % p).collect()).collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..m.len()).find(|&r| m[r][c] != 0) else { continue };
        m.swap(rank, piv);
        let mut inv = 1u64;
        let (mut b, mut e) = (m[rank][c], p - 2);
        while e > 0 {
            if e & 1 == 1 {
                inv = inv * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        for x in m[rank].iter_mut() {
            *x = *x * inv % p;
        }
        let pivot_row = m[rank].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != rank && row[c] != 0 {
                let f = row[c];
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x = (*x + p - f * y % p) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// A form as (degree, terms).
pub type RawForm = (usize, Vec<(Vec<u8>, i64)>);

/// (x_i^3) plus the given forms, each exponent vector trimmed or padded to
/// the form's degree.
pub fn artinian_generators(n: usize, forms: Vec<RawForm>) -> Vec<Vec<(Monomial, i64)>> {
    let mut gens: Vec<Vec<(Monomial, i64)>> = (0..n)
        .map(|k| {
            let mut m = vec![0u8; n];
            m[k] = 3;
            vec![(m, 1)]
        })
        .collect();
    for (deg, terms) in forms {
        let f = terms
            .into_iter()
            .map(|(mut m, c)| {
                let mut total: usize = m.iter().map(|&e| e as usize).sum();
                let mut k = 0;
                while total > deg {
                    if m[k % n] > 0 {
                        m[k % n] -= 1;
                        total -= 1;
                    }
                    k += 1;
                }
                m[n - 1] += (deg - total) as u8;
                (m, c)
            })
            .collect();
        gens.push(f);
    }
    gens
}
