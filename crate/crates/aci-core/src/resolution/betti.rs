use std::collections::BTreeMap;
use std::fmt;

use super::ResolutionError;

/// Graded Betti numbers β_{i,j} of a module over a base ring, known on the
/// window i ≤ max_i, j ≤ max_j.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiTable {
    pub base: String,
    entries: BTreeMap<(usize, usize), u64>,
    max_i: usize,
    max_j: usize,
    /// The window contains the whole resolution (finite and fully computed).
    complete: bool,
}

/// max{j − i : β_{i,j} ≠ 0}; `window_limited` means the value is only a
/// lower bound because it is attained on the window boundary.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Regularity {
    pub value: i64,
    pub window_limited: bool,
}

impl fmt::Display for Regularity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.window_limited {
            write!(f, ">= {}", self.value)
        } else {
            write!(f, "{}", self.value)
        }
    }
}

impl BettiTable {
    pub fn new(base: impl Into<String>, max_i: usize, max_j: usize) -> Self {
        BettiTable { base: base.into(), entries: BTreeMap::new(), max_i, max_j, complete: false }
    }

    pub fn base(&self) -> &str {
        &self.base
    }

    pub fn set_base(&mut self, base: impl Into<String>) {
        self.base = base.into();
    }

    pub fn max_i(&self) -> usize {
        self.max_i
    }

    pub fn max_j(&self) -> usize {
        self.max_j
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn mark_complete(&mut self) {
        self.complete = true;
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    /// Store β_{i,j}; zero removes the entry.
    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        if v == 0 {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), v);
        }
    }

    pub fn add(&mut self, i: usize, j: usize, v: u64) {
        let cur = self.get(i, j);
        self.set(i, j, cur + v);
    }

    /// Nonzero entries ((i, j), β) in order.
    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), u64)> + '_ {
        self.entries.iter().map(|(&k, &v)| (k, v))
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Σ_j β_{i,j}.
    pub fn total(&self, i: usize) -> u64 {
        self.entries.range((i, 0)..=(i, usize::MAX)).map(|(_, &v)| v).sum()
    }

    /// Entries with j − i = a, as (i, β).
    pub fn strand(&self, a: i64) -> Vec<(usize, u64)> {
        self.entries()
            .filter(|((i, j), _)| *j as i64 - *i as i64 == a)
            .map(|((i, _), v)| (i, v))
            .collect()
    }

    /// The distinct values j − i over nonzero entries.
    pub fn strands(&self) -> Vec<i64> {
        let mut s: Vec<i64> = self.entries().map(|((i, j), _)| j as i64 - i as i64).collect();
        s.sort_unstable();
        s.dedup();
        s
    }

    pub fn regularity(&self) -> Result<Regularity, ResolutionError> {
        let value = self
            .entries()
            .map(|((i, j), _)| j as i64 - i as i64)
            .max()
            .ok_or(ResolutionError::EmptyTable)?;
        let window_limited = !self.complete
            && self.entries().any(|((i, j), _)| {
                j as i64 - i as i64 == value && (i == self.max_i || j == self.max_j)
            });
        Ok(Regularity { value, window_limited })
    }

    /// Same data restricted to a smaller window.
    pub fn restrict(&self, max_i: usize, max_j: usize) -> BettiTable {
        let mut t = BettiTable::new(self.base.clone(), max_i, max_j);
        for ((i, j), v) in self.entries() {
            if i <= max_i && j <= max_j {
                t.set(i, j, v);
            }
        }
        t.complete = self.complete && max_i >= self.max_i && max_j >= self.max_j;
        t
    }

    /// Text layout: rows are j − i, columns are i.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let cols = self.max_i + 1;
        let header: Vec<String> = (0..cols).map(|i| i.to_string()).collect();
        let cells: Vec<Vec<String>> = match (self.strands().first(), self.strands().last()) {
            (Some(&lo), Some(&hi)) => (lo..=hi)
                .map(|a| {
                    (0..cols)
                        .map(|i| {
                            let j = i as i64 + a;
                            let v = if j < 0 { 0 } else { self.get(i, j as usize) };
                            if v == 0 { "-".to_string() } else { v.to_string() }
                        })
                        .collect()
                })
                .collect(),
            _ => Vec::new(),
        };
        let width = header
            .iter()
            .chain(cells.iter().flatten())
            .map(String::len)
            .max()
            .unwrap_or(1);
        let lo = self.strands().first().copied().unwrap_or(0);
        let label_w = cells.len().max(1).to_string().len().max(lo.to_string().len()) + 1;
        out.push_str(&format!("{:>label_w$} |", self.base));
        for h in &header {
            out.push_str(&format!(" {h:>width$}"));
        }
        out.push('\n');
        for (r, row) in cells.iter().enumerate() {
            out.push_str(&format!("{:>label_w$} |", lo + r as i64));
            for c in row {
                out.push_str(&format!(" {c:>width$}"));
            }
            out.push('\n');
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn regularity_and_boundary() {
        let mut t = BettiTable::new("Q", 3, 5);
        assert!(t.regularity().is_err());
        t.set(0, 0, 1);
        t.set(1, 2, 4);
        assert_eq!(t.regularity().unwrap(), Regularity { value: 1, window_limited: false });
        t.set(3, 5, 2);
        assert_eq!(t.regularity().unwrap(), Regularity { value: 2, window_limited: true });
        t.mark_complete();
        assert!(!t.regularity().unwrap().window_limited);
    }

    #[test]
    fn zero_entries_are_not_stored() {
        let mut t = BettiTable::new("Q", 2, 2);
        t.set(1, 1, 0);
        assert!(t.is_empty());
    }
}
