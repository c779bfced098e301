use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::combinatorics::binomial;
use crate::graded::ell;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SequenceName {
    Rho,
    Gamma,
}

/// Values of ρ_k(n) or γ_k(n) for k = 0, 1, ….
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequenceTable {
    pub name: SequenceName,
    pub n: usize,
    pub values: Vec<BigInt>,
}

impl SequenceTable {
    /// The k-th value, zero past the end of the table.
    pub fn get(&self, k: usize) -> BigInt {
        self.values.get(k).cloned().unwrap_or_default()
    }
}

fn sign(e: i64) -> BigInt {
    if e.rem_euclid(2) == 0 {
        BigInt::from(1)
    } else {
        BigInt::from(-1)
    }
}

/// ρ_0(n) = 0 and
/// ρ_k = Σ_{i<k} (−1)^{i+k+1} C(n+k−i−1, n−1) ρ_i + Σ_{i≤ℓ} (−1)^{i+k+1} C(n+k+ℓ−2i, n−1) C(n+1, i).
pub fn rho(n: usize, k_max: usize) -> SequenceTable {
    let l = ell(n) as i64;
    let ni = n as i64;
    let mut values: Vec<BigInt> = vec![BigInt::zero()];
    for k in 1..=k_max as i64 {
        let mut acc = BigInt::zero();
        for i in 0..k {
            acc += sign(i + k + 1) * binomial(ni + k - i - 1, ni - 1) * &values[i as usize];
        }
        for i in 0..=l {
            acc += sign(i + k + 1) * binomial(ni + k + l - 2 * i, ni - 1) * binomial(ni + 1, i);
        }
        values.push(acc);
    }
    values.truncate(k_max + 1);
    SequenceTable { name: SequenceName::Rho, n, values }
}

/// γ_0(n) = [n = 2], the recurrence
/// γ_k = (−1)^k C(n, k+ℓ+2) − Σ_{i<k} (−1)^{i+k} C(n−1+k−i, n−1) γ_i − Σ_{i<ℓ} (−1)^{i+k} C(n−1+ℓ+k−2i, n−1) C(n, i)
/// for 1 ≤ k ≤ ℓ+1, and γ_k = γ_{n−k} beyond. Values stop at k = min(k_max, n).
pub fn gamma(n: usize, k_max: usize) -> SequenceTable {
    let l = ell(n) as i64;
    let ni = n as i64;
    let mut values: Vec<BigInt> = vec![BigInt::from(u8::from(n == 2))];
    for k in 1..=ni {
        let v = if k <= l + 1 {
            let mut acc = sign(k) * binomial(ni, k + l + 2);
            for i in 0..k {
                acc -= sign(i + k) * binomial(ni - 1 + k - i, ni - 1) * &values[i as usize];
            }
            for i in 0..l {
                acc -= sign(i + k) * binomial(ni - 1 + l + k - 2 * i, ni - 1) * binomial(ni, i);
            }
            acc
        } else {
            values[(ni - k) as usize].clone()
        };
        values.push(v);
    }
    values.truncate(k_max.min(n) + 1);
    SequenceTable { name: SequenceName::Gamma, n, values }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::catalan;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn rho_six() {
        assert_eq!(rho(6, 6).values, ints(&[0, 0, 14, 105, 132, 70, 14]));
    }

    #[test]
    fn rho_one_vanishes_for_even_n() {
        for n in (4..=12).step_by(2) {
            assert_eq!(rho(n, 1).values, ints(&[0, 0]), "n={n}");
        }
    }

    #[test]
    fn gamma_six() {
        assert_eq!(gamma(6, 3).values, ints(&[0, 14, 85, 132]));
        assert_eq!(gamma(6, 6).values, ints(&[0, 14, 85, 132, 85, 14, 0]));
    }

    #[test]
    fn gamma_base_and_symmetry() {
        assert_eq!(gamma(2, 0).values, ints(&[1]));
        for n in 3..=12 {
            let g = gamma(n, n);
            assert_eq!(g.values[0], BigInt::zero());
            for k in 1..=n {
                assert_eq!(g.values[k], g.values[n - k], "n={n} k={k}");
            }
        }
    }

    #[test]
    fn gamma_one_is_catalan_for_even_n_from_six() {
        for n in (6..=12).step_by(2) {
            assert_eq!(gamma(n, 1).values[1], catalan(ell(n) + 2), "n={n}");
        }
    }
}
