use num_bigint::BigInt;

use super::combinatorics::binomial_usize;

/// h_R(i) = max{C(n,i) − C(n,i−2), 0}.
pub fn hilb_r_value(n: usize, i: usize) -> usize {
    let below = if i >= 2 { binomial_usize(n, i - 2) } else { 0 };
    binomial_usize(n, i).saturating_sub(below)
}

/// h_A(i) = min{C(n,i), C(n,i+2)}.
pub fn hilb_a_value(n: usize, i: usize) -> usize {
    binomial_usize(n, i).min(binomial_usize(n, i + 2))
}

/// h_P(i) = C(n,i) for the complete intersection of n quadrics.
pub fn hilb_p_value(n: usize, i: usize) -> usize {
    binomial_usize(n, i)
}

fn collect(n: usize, f: impl Fn(usize, usize) -> usize) -> Vec<BigInt> {
    let mut v: Vec<BigInt> = (0..=n).map(|i| BigInt::from(f(n, i))).collect();
    while v.len() > 1 && v.last().is_some_and(|c| *c == BigInt::from(0)) {
        v.pop();
    }
    v
}

/// Coefficients of Hilb_R(z), lowest degree first, without trailing zeros.
pub fn hilb_r(n: usize) -> Vec<BigInt> {
    collect(n, hilb_r_value)
}

pub fn hilb_a(n: usize) -> Vec<BigInt> {
    collect(n, hilb_a_value)
}

/// (1+z)^n.
pub fn hilb_p(n: usize) -> Vec<BigInt> {
    collect(n, hilb_p_value)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn closed_forms() {
        assert_eq!(hilb_r(4), ints(&[1, 4, 5]));
        assert_eq!(hilb_r(2), ints(&[1, 2]));
        assert_eq!(hilb_r(6), ints(&[1, 6, 14, 14]));
        assert_eq!(hilb_a(3), ints(&[1, 1]));
        assert_eq!(hilb_a(6), ints(&[1, 6, 15, 6, 1]));
    }

    #[test]
    fn additivity() {
        for n in 2..=12 {
            for i in 0..=n + 2 {
                let shifted = if i >= 2 { hilb_a_value(n, i - 2) } else { 0 };
                assert_eq!(hilb_r_value(n, i) + shifted, hilb_p_value(n, i), "n={n} i={i}");
            }
        }
    }
}
