use num_rational::Ratio;

use super::biseries::BiSeries;
use super::SeriesError;

/// Windowed rate of a series: max over the range of (τ_i − 1)/(i − 1), where
/// τ_i is the top internal degree in homological degree i. Only a lower
/// bound for the supremum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RateReport {
    pub rate: Ratio<i64>,
    /// First index attaining the maximum.
    pub witness: usize,
    /// (i, τ_i) for every i in range with a nonzero coefficient.
    pub taus: Vec<(usize, usize)>,
    /// Some τ_i sits on the j-boundary, so it may be larger outside the window.
    pub j_truncated: bool,
}

pub fn rate_of_series(
    s: &BiSeries,
    i_range: std::ops::RangeInclusive<usize>,
) -> Result<RateReport, SeriesError> {
    let lo = (*i_range.start()).max(2);
    let hi = (*i_range.end()).min(s.imax());
    if lo > hi {
        return Err(SeriesError::EmptyRange);
    }
    let mut best: Option<(Ratio<i64>, usize)> = None;
    let mut taus = Vec::new();
    let mut j_truncated = false;
    for i in lo..=hi {
        let Some(tau) = s.top_degree(i) else { continue };
        taus.push((i, tau));
        j_truncated |= tau == s.jmax();
        let r = Ratio::new(tau as i64 - 1, i as i64 - 1);
        if best.as_ref().is_none_or(|(b, _)| r > *b) {
            best = Some((r, i));
        }
    }
    let (rate, witness) = best.ok_or(SeriesError::EmptyRange)?;
    Ok(RateReport { rate, witness, taus, j_truncated })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::koszul_series;

    #[test]
    fn koszul_rate_is_one() {
        let s = koszul_series(4, 6, 12).unwrap();
        let r = rate_of_series(&s, 2..=6).unwrap();
        assert_eq!(r.rate, Ratio::from_integer(1));
        assert!(r.taus.iter().all(|&(i, t)| i == t));
    }

    #[test]
    fn empty_range() {
        let s = BiSeries::one(3, 3);
        assert!(rate_of_series(&s, 2..=3).is_err());
    }
}
