use num_bigint::BigInt;
use num_traits::{One, Zero};

/// C(n, k) as an arbitrary-precision integer; zero when k < 0 or k > n.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if n < 0 || k < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// C(n, k) for small arguments; zero outside 0 ≤ k ≤ n.
pub fn binomial_usize(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    usize::try_from(acc).expect("binomial overflows usize")
}

/// The m-th Catalan number C(2m, m)/(m+1).
pub fn catalan(m: usize) -> BigInt {
    binomial(2 * m as i64, m as i64) / BigInt::from(m + 1)
}
