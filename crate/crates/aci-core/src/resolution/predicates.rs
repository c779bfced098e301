//! Decidable predicates on Betti tables: the vanishing patterns used to get
//! Golod maps, the single-entry recurrence from Hilbert data, and the
//! alternating-sum identity.

use super::{BettiTable, ResolutionError};

/// Vanishing pattern checked by [`golod_hypothesis_check`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GolodMode {
    /// β_{i,j} = 0 when j − i < b or j − i ≥ 2b, for i ≥ 1.
    Band { b: usize },
    /// β_{i,j} = 0 when j − i < b except at (i₀, j₀), where it is 1, and
    /// β_{i,j} = 0 when j − i ≥ b + j₀ − i₀. Needs b ≥ j₀ − i₀ ≥ 1, i₀ odd.
    BandWithException { b: usize, i0: usize, j0: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GolodViolation {
    pub i: usize,
    pub j: usize,
    pub beta: u64,
    pub reason: &'static str,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GolodReport {
    pub mode: GolodMode,
    /// Homological degrees inspected, 1..=max_i.
    pub max_i: usize,
    pub violations: Vec<GolodViolation>,
}

impl GolodReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Fewest homological degrees a table must cover for the check to mean
/// anything.
pub const GOLOD_MIN_STEPS: usize = 3;

/// Check a table over a complete intersection against `mode` for every
/// 1 ≤ i ≤ max_i of its window.
pub fn golod_hypothesis_check(
    t: &BettiTable,
    mode: GolodMode,
) -> Result<GolodReport, ResolutionError> {
    if t.max_i() < GOLOD_MIN_STEPS {
        return Err(ResolutionError::WindowTooSmall { max_i: t.max_i(), need: GOLOD_MIN_STEPS });
    }
    let mut violations = Vec::new();
    let mut flag = |i: usize, j: usize, beta: u64, reason: &'static str| {
        violations.push(GolodViolation { i, j, beta, reason });
    };
    match mode {
        GolodMode::Band { b } => {
            for ((i, j), v) in t.entries().filter(|&((i, _), _)| i >= 1) {
                let a = j as i64 - i as i64;
                if a < b as i64 {
                    flag(i, j, v, "j - i below b");
                } else if a >= 2 * b as i64 {
                    flag(i, j, v, "j - i at least 2b");
                }
            }
        }
        GolodMode::BandWithException { b, i0, j0 } => {
            let shift = j0 as i64 - i0 as i64;
            if shift < 1 || shift > b as i64 {
                flag(i0, j0, t.get(i0, j0), "needs b >= j0 - i0 >= 1");
            }
            if i0 % 2 == 0 {
                flag(i0, j0, t.get(i0, j0), "i0 must be odd");
            }
            if t.get(i0, j0) != 1 {
                flag(i0, j0, t.get(i0, j0), "exceptional entry must be 1");
            }
            for ((i, j), v) in t.entries().filter(|&((i, _), _)| i >= 1) {
                let a = j as i64 - i as i64;
                if a < b as i64 && (i, j) != (i0, j0) {
                    flag(i, j, v, "j - i below b");
                } else if a >= b as i64 + shift {
                    flag(i, j, v, "j - i at least b + j0 - i0");
                }
            }
        }
    }
    Ok(GolodReport { mode, max_i: t.max_i(), violations })
}

/// β_{k,k+a}^S(M) from the alternating identity in degree d = k + a:
///
/// Σ_i (−1)^i Σ_j β_{i,j} h_S(d − j) = h_M(d),
///
/// solved for the one unknown entry. Every other β_{i,j} with j ≤ d is read
/// from `known`; `h_s` and `h_m` must reach degree d.
pub fn betti_from_hilbert_strand(
    h_s: &[u64],
    h_m: &[u64],
    known: &BettiTable,
    k: usize,
    a: usize,
) -> Result<u64, ResolutionError> {
    let d = k + a;
    let short = h_s.len().min(h_m.len());
    if short <= d {
        return Err(ResolutionError::WindowOverflow { cutoff: short.saturating_sub(1) });
    }
    let mut rest = h_m[d] as i128;
    for ((i, j), v) in known.entries() {
        if j > d || (i, j) == (k, d) {
            continue;
        }
        let term = v as i128 * h_s[d - j] as i128;
        rest -= if i % 2 == 0 { term } else { -term };
    }
    let value = if k.is_multiple_of(2) { rest } else { -rest };
    u64::try_from(value).map_err(|_| ResolutionError::InconsistentStrands { k, a, value })
}

/// Degrees d in which the alternating identity is fully determined by the
/// table: all of them up to max_j for a complete table, otherwise those with
/// d ≤ max_i as well (entries of higher homological degree sit at j ≥ i).
pub fn euler_window(t: &BettiTable) -> usize {
    if t.is_complete() {
        t.max_j()
    } else {
        t.max_i().min(t.max_j())
    }
}

/// Check the alternating identity of `t` against h_S and h_M in every
/// degree of [`euler_window`] covered by both Hilbert functions; returns the
/// number of degrees checked.
pub fn euler_check(t: &BettiTable, h_s: &[u64], h_m: &[u64]) -> Result<usize, ResolutionError> {
    let top = euler_window(t).min(h_s.len().min(h_m.len()).saturating_sub(1));
    for d in 0..=top {
        let mut lhs = 0i128;
        for ((i, j), v) in t.entries() {
            if j > d {
                continue;
            }
            let term = v as i128 * h_s[d - j] as i128;
            lhs += if i % 2 == 0 { term } else { -term };
        }
        if lhs != h_m[d] as i128 {
            return Err(ResolutionError::EulerMismatch { degree: d, lhs, rhs: h_m[d] });
        }
    }
    Ok(top + 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(max_i: usize, max_j: usize, e: &[(usize, usize, u64)]) -> BettiTable {
        let mut t = BettiTable::new("P", max_i, max_j);
        for &(i, j, v) in e {
            t.set(i, j, v);
        }
        t
    }

    #[test]
    fn exceptional_mode_rejects_linear_entry() {
        let t = table(4, 8, &[(0, 0, 1), (1, 2, 1), (2, 2, 1)]);
        let mode = GolodMode::BandWithException { b: 2, i0: 1, j0: 2 };
        let r = golod_hypothesis_check(&t, mode).unwrap();
        assert!(!r.passed());
        assert_eq!((r.violations[0].i, r.violations[0].j), (2, 2));
    }

    #[test]
    fn exceptional_mode_needs_the_exception() {
        let mode = GolodMode::BandWithException { b: 2, i0: 1, j0: 2 };
        let ok = table(4, 9, &[(0, 0, 1), (1, 2, 1), (2, 4, 3), (3, 5, 4)]);
        assert!(golod_hypothesis_check(&ok, mode).unwrap().passed());
        let missing = table(4, 9, &[(0, 0, 1), (2, 4, 3)]);
        let long = table(4, 9, &[(0, 0, 1), (1, 2, 1), (2, 5, 3)]);
        assert!(!golod_hypothesis_check(&long, mode).unwrap().passed());
        assert!(!golod_hypothesis_check(&missing, mode).unwrap().passed());
        let even = GolodMode::BandWithException { b: 2, i0: 2, j0: 3 };
        assert!(!golod_hypothesis_check(&table(4, 9, &[(2, 3, 1)]), even).unwrap().passed());
    }

    #[test]
    fn band_mode_bounds() {
        let mode = GolodMode::Band { b: 2 };
        assert!(golod_hypothesis_check(&table(3, 9, &[(0, 0, 1), (1, 3, 5), (3, 6, 2)]), mode)
            .unwrap()
            .passed());
        let high = golod_hypothesis_check(&table(3, 9, &[(1, 5, 1)]), mode).unwrap();
        assert_eq!(high.violations.len(), 1);
        assert!(matches!(
            golod_hypothesis_check(&table(2, 9, &[]), mode),
            Err(ResolutionError::WindowTooSmall { .. })
        ));
    }

    #[test]
    fn recurrence_for_cyclic_module() {
        // k over k[x]: β_{0,0} = 1, β_{1,1} = 1
        let h_s = [1u64; 4];
        let h_m = [1u64, 0, 0, 0];
        let t = table(1, 1, &[(0, 0, 1), (1, 1, 1)]);
        assert_eq!(betti_from_hilbert_strand(&h_s, &h_m, &t, 0, 0).unwrap(), 1);
        assert_eq!(betti_from_hilbert_strand(&h_s, &h_m, &t, 1, 0).unwrap(), 1);
        assert_eq!(euler_check(&t, &h_s, &h_m).unwrap(), 2);
        let bad = table(1, 1, &[(0, 0, 1)]);
        assert!(euler_check(&bad, &h_s, &h_m).is_err());
        assert!(matches!(
            betti_from_hilbert_strand(&h_s, &[1, 2, 0, 0], &t, 1, 0),
            Err(ResolutionError::InconsistentStrands { .. })
        ));
    }
}
