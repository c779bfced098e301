use num_bigint::BigInt;
use num_traits::One;

use super::biseries::BiSeries;
use super::hilbert::{hilb_a, hilb_r};
use super::SeriesError;
use crate::graded::ell;

/// Default truncation (I_max, J_max) for Poincaré series.
pub const DEFAULT_SERIES_WINDOW: (usize, usize) = (8, 24);

fn sign(e: usize) -> BigInt {
    if e.is_multiple_of(2) {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

/// (1 − tu)^n.
fn one_minus_tu_pow(n: usize, imax: usize, jmax: usize) -> Result<BiSeries, SeriesError> {
    let base = BiSeries::one(imax, jmax).sub(&BiSeries::monomial(imax, jmax, 1, 1, BigInt::one()))?;
    base.pow(n as u32)
}

/// (1 − tu)^{−n}: the Poincaré series of k over a complete intersection of n
/// quadrics, (1+tu)^n/(1−t²u²)^n.
pub fn koszul_series(n: usize, imax: usize, jmax: usize) -> Result<BiSeries, SeriesError> {
    one_minus_tu_pow(n, imax, jmax)?.reciprocal()
}

fn require_nonnegative(s: BiSeries) -> Result<BiSeries, SeriesError> {
    if let Some((i, j, c)) = s.terms().into_iter().find(|(_, _, c)| c < &BigInt::from(0)) {
        return Err(SeriesError::NegativeCoefficient { i, j, value: c });
    }
    Ok(s)
}

/// Expansion of (−t)^e / D where D = (−t)^e · D' with D'(0,0) = ±1. `denominator`
/// builds D in a given window; it is evaluated with e extra t-rows so the
/// division by t^e stays exact on the requested window.
fn expand_quotient(
    e: usize,
    imax: usize,
    jmax: usize,
    denominator: impl Fn(usize, usize) -> Result<BiSeries, SeriesError>,
) -> Result<BiSeries, SeriesError> {
    let d = denominator(imax + e, jmax)?;
    let reduced = d.div_t_power(e)?.truncate(imax, jmax);
    Ok(reduced.reciprocal()?.scale(&sign(e)))
}

/// (−t)^{ℓ−1} / (Hilb_A(−tu) + (1−tu)^n((−t)^{ℓ−1} − 1)), n ≥ 4.
pub fn poincare_k_over_a(n: usize, imax: usize, jmax: usize) -> Result<BiSeries, SeriesError> {
    if n < 4 {
        return Err(SeriesError::TooFewVariables { n, min: 4 });
    }
    let e = ell(n) - 1;
    let h = hilb_a(n);
    let s = expand_quotient(e, imax, jmax, |im, jm| {
        let ha = BiSeries::from_tu_polynomial(im, jm, &h, true);
        let power = BiSeries::monomial(im, jm, e, 0, sign(e)).sub(&BiSeries::one(im, jm))?;
        ha.add(&one_minus_tu_pow(n, im, jm)?.mul(&power)?)
    })?;
    require_nonnegative(s)
}

/// (−t)^ℓ / (Hilb_R(−tu) + (1−tu)^n((−t)^ℓ − 1)(1 − t²u²)), n ≥ 2.
pub fn poincare_k_over_r(n: usize, imax: usize, jmax: usize) -> Result<BiSeries, SeriesError> {
    if n < 2 {
        return Err(SeriesError::TooFewVariables { n, min: 2 });
    }
    let e = ell(n);
    let h = hilb_r(n);
    let s = expand_quotient(e, imax, jmax, |im, jm| {
        let hr = BiSeries::from_tu_polynomial(im, jm, &h, true);
        let power = BiSeries::monomial(im, jm, e, 0, sign(e)).sub(&BiSeries::one(im, jm))?;
        let quad = BiSeries::one(im, jm).sub(&BiSeries::monomial(im, jm, 2, 2, BigInt::one()))?;
        hr.add(&one_minus_tu_pow(n, im, jm)?.mul(&power)?.mul(&quad)?)
    })?;
    require_nonnegative(s)
}

/// P_k^P / (1 − t(P_M^P − 1)); equality holds exactly when P → M is Golod.
pub fn golod_compose(p_k_over_p: &BiSeries, p_m_over_p: &BiSeries) -> Result<BiSeries, SeriesError> {
    let (im, jm) = (p_k_over_p.imax(), p_k_over_p.jmax());
    if p_m_over_p.imax() != im || p_m_over_p.jmax() != jm {
        return Err(SeriesError::WindowMismatch);
    }
    if !p_m_over_p.get(0, 0).is_one() {
        return Err(SeriesError::ConstantTermNotOne);
    }
    let shifted = p_m_over_p
        .sub(&BiSeries::one(im, jm))?
        .mul(&BiSeries::monomial(im, jm, 1, 0, BigInt::one()))?;
    let denom = BiSeries::one(im, jm).sub(&shifted)?;
    p_k_over_p.mul(&denom.reciprocal()?)
}

/// 1 + u^ℓ Σ_{i≥1} (a_i + b_i u)(tu)^i, with `a[0]` = a_1 and `b[0]` = b_1.
pub fn two_strand_poincare(
    a: &[BigInt],
    b: &[BigInt],
    l: usize,
    imax: usize,
    jmax: usize,
) -> BiSeries {
    let mut s = BiSeries::one(imax, jmax);
    for i in 1..=imax {
        if let Some(ai) = a.get(i - 1) {
            if i + l <= jmax {
                s.set(i, i + l, s.get(i, i + l) + ai);
            }
        }
        if let Some(bi) = b.get(i - 1) {
            if i + l < jmax {
                s.set(i, i + l + 1, s.get(i, i + l + 1) + bi);
            }
        }
    }
    s
}

/// P_A^P = 1 + ((1−tu)^n − Hilb_A(−tu)) / ((−1)^{ℓ+1} t^ℓ (1−tu)^n), valid when
/// A has an ℓ-linear resolution over P.
pub fn linear_strand_a_over_p(n: usize, imax: usize, jmax: usize) -> Result<BiSeries, SeriesError> {
    let l = ell(n);
    let h = hilb_a(n);
    let (im, jm) = (imax + l, jmax);
    let num = one_minus_tu_pow(n, im, jm)?.sub(&BiSeries::from_tu_polynomial(im, jm, &h, true))?;
    let num = num.div_t_power(l)?.truncate(imax, jmax).scale(&sign(l + 1));
    let body = num.mul(&koszul_series(n, imax, jmax)?)?;
    body.add(&BiSeries::one(imax, jmax))
}

/// P_R^P = 1 + t u² P_A^P.
pub fn r_over_p_from_a(p_a_over_p: &BiSeries) -> Result<BiSeries, SeriesError> {
    let (im, jm) = (p_a_over_p.imax(), p_a_over_p.jmax());
    let shift = BiSeries::monomial(im, jm, 1, 2, BigInt::one());
    BiSeries::one(im, jm).add(&shift.mul(p_a_over_p)?)
}

/// Hilb_M(−tu) / ((−t)^a Hilb_S(−tu)): the Poincaré series of an a-linear module.
pub fn a_linear_poincare(
    hilb_m: &[BigInt],
    hilb_s: &[BigInt],
    a: usize,
    imax: usize,
    jmax: usize,
) -> Result<BiSeries, SeriesError> {
    let (im, jm) = (imax + a, jmax);
    let hm = BiSeries::from_tu_polynomial(im, jm, hilb_m, true);
    let hs = BiSeries::from_tu_polynomial(im, jm, hilb_s, true);
    let q = hm.mul(&hs.reciprocal()?)?;
    Ok(q.div_t_power(a)?.truncate(imax, jmax).scale(&sign(a)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn koszul_series_coefficients() {
        let s = koszul_series(3, 4, 4).unwrap();
        assert_eq!(s.get(2, 2), BigInt::from(6));
        assert_eq!(s.get(2, 3), BigInt::from(0));
    }

    #[test]
    fn embedding_dimension() {
        let a = poincare_k_over_a(6, 4, 12).unwrap();
        assert_eq!(a.get(1, 1), BigInt::from(6));
        let r = poincare_k_over_r(2, 5, 5).unwrap();
        assert_eq!(r.get(1, 1), BigInt::from(2));
        // k over k[x,y]/m² has Betti numbers 2^i in degree i
        for i in 0..=5 {
            assert_eq!(r.get(i, i), BigInt::from(1u64 << i));
        }
    }

    #[test]
    fn golod_identity_input() {
        let pk = koszul_series(4, 5, 8).unwrap();
        let one = BiSeries::one(5, 8);
        assert_eq!(golod_compose(&pk, &one).unwrap(), pk);
    }
}
