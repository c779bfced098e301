use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::combinatorics::binomial;
use super::sequences::{gamma, rho};
use crate::graded::ell;
use crate::resolution::BettiTable;

fn to_u64(v: BigInt) -> u64 {
    v.to_u64().expect("closed-form Betti number is a nonnegative 64-bit integer")
}

/// β^Q of R and A for even n from the binomial/ρ/γ closed forms.
fn even_tables(n: usize) -> (BettiTable, BettiTable) {
    let l = ell(n);
    let ni = n as i64;
    let rho = rho(n, n);
    let gamma = gamma(n, n);
    let mut r = BettiTable::new("Q", n, n + l + 1);
    let mut a = BettiTable::new("Q", n, n + l);
    for i in 0..=l {
        r.add(i, 2 * i, to_u64(binomial(ni + 1, i as i64)));
    }
    for i in 0..=n {
        r.add(i, i + l + 1, to_u64(rho.get(i)));
        a.add(i, i + l, to_u64(gamma.get(i)));
    }
    for i in 0..l {
        a.add(i, 2 * i, to_u64(binomial(ni, i as i64)));
    }
    for i in (l + 3)..=n {
        a.add(i, 2 * i - 2, to_u64(binomial(ni, i as i64)));
    }
    r.mark_complete();
    a.mark_complete();
    (r, a)
}

/// β_{i,j} = T_{i,j} + T_{i−1,j−2}.
fn shifted_sum(t: &BettiTable) -> BettiTable {
    let mut out = BettiTable::new("Q", t.max_i() + 1, t.max_j() + 2);
    for ((i, j), v) in t.entries() {
        out.add(i, j, v);
        out.add(i + 1, j + 2, v);
    }
    out.mark_complete();
    out
}

/// Predicted Betti tables of the tilde rings R and A over Q. For odd n they
/// come from the tables of the (n−1)-variable rings via the hypersurface
/// x_1² (or its general replacement), which doubles each entry along (1, 2).
pub fn tilde_betti_tables_q(n: usize) -> (BettiTable, BettiTable) {
    assert!(n >= 2, "need at least two variables");
    if n.is_multiple_of(2) {
        even_tables(n)
    } else {
        let (r, a) = even_tables(n - 1);
        (shifted_sum(&r), shifted_sum(&a))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_variables() {
        let (r, a) = tilde_betti_tables_q(3);
        let rw: Vec<((usize, usize), u64)> = vec![((0, 0), 1), ((1, 2), 4), ((2, 3), 2), ((2, 4), 3), ((3, 5), 2)];
        assert_eq!(r.entries().collect::<Vec<_>>(), rw);
        let aw: Vec<((usize, usize), u64)> =
            vec![((0, 0), 1), ((1, 1), 2), ((1, 2), 1), ((2, 2), 1), ((2, 3), 2), ((3, 4), 1)];
        assert_eq!(a.entries().collect::<Vec<_>>(), aw);
    }

    #[test]
    fn seven_variables_corner() {
        let (r, _) = tilde_betti_tables_q(7);
        let row3: Vec<u64> = (2..=7).map(|i| r.get(i, i + 3)).collect();
        assert_eq!(row3, vec![14, 105 + 21, 132, 70, 14, 0]);
        let row4: Vec<u64> = (2..=7).map(|i| r.get(i, i + 4)).collect();
        assert_eq!(row4, vec![0, 14, 105, 132, 70, 14]);
    }

    #[test]
    fn six_variables_quadratic_strand() {
        let (r, _) = tilde_betti_tables_q(6);
        for i in 0..=2 {
            assert_eq!(r.get(i, 2 * i), to_u64(binomial(7, i as i64)));
        }
    }

    #[test]
    fn alternating_sums_vanish() {
        // Σ (−1)^i β_{i,j} = coefficient of t^j in Hilb_M(t)(1−t)^n
        for n in 2..=10 {
            let (r, a) = tilde_betti_tables_q(n);
            let hr = crate::series::hilb_r(n);
            let ha = crate::series::hilb_a(n);
            for (t, h) in [(&r, hr), (&a, ha)] {
                for j in 0..=t.max_j() + 1 {
                    let mut lhs = BigInt::from(0);
                    for i in 0..=t.max_i() {
                        let v = BigInt::from(t.get(i, j));
                        lhs += if i % 2 == 0 { v } else { -v };
                    }
                    let mut rhs = BigInt::from(0);
                    for (d, c) in h.iter().enumerate() {
                        if d <= j {
                            let k = (j - d) as i64;
                            let s = if k % 2 == 0 { 1 } else { -1 };
                            rhs += c * binomial(n as i64, k) * s;
                        }
                    }
                    assert_eq!(lhs, rhs, "n={n} j={j}");
                }
            }
        }
    }
}
