//! Betti table documents and entrywise comparison.

use serde::{Deserialize, Serialize};

use super::HarnessError;
use crate::graded::Variant;
use crate::resolution::BettiTable;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Text,
    Json,
}

/// Where a table came from, carried in its JSON document.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TableMeta {
    pub n: usize,
    pub prime: u32,
    pub variant: Variant,
}

#[derive(Serialize, Deserialize)]
struct WindowDoc {
    max_i: usize,
    max_j: usize,
}

#[derive(Serialize, Deserialize)]
struct EntryDoc {
    i: usize,
    j: usize,
    beta: String,
}

#[derive(Serialize, Deserialize)]
struct TableDoc {
    base: String,
    n: usize,
    prime: u32,
    variant: String,
    seed: Option<u64>,
    window: WindowDoc,
    entries: Vec<EntryDoc>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    complete: bool,
}

/// Text (rows j − i, columns i) or JSON form of a table.
pub fn emit_betti_table(t: &BettiTable, meta: &TableMeta, format: OutputFormat) -> String {
    match format {
        OutputFormat::Text => t.to_text(),
        OutputFormat::Json => {
            let doc = TableDoc {
                base: t.base.clone(),
                n: meta.n,
                prime: meta.prime,
                variant: meta.variant.label().to_string(),
                seed: meta.variant.seed(),
                window: WindowDoc { max_i: t.max_i(), max_j: t.max_j() },
                entries: t.entries().map(|((i, j), v)| EntryDoc { i, j, beta: v.to_string() }).collect(),
                complete: t.is_complete(),
            };
            serde_json::to_string_pretty(&doc).expect("table document serializes")
        }
    }
}

/// Inverse of the JSON form of [`emit_betti_table`].
pub fn parse_betti_json(s: &str) -> Result<(BettiTable, TableMeta), HarnessError> {
    let doc: TableDoc = serde_json::from_str(s).map_err(|e| HarnessError::Document(e.to_string()))?;
    let variant = match (doc.variant.as_str(), doc.seed) {
        ("tilde", None) => Variant::Tilde,
        ("random", Some(seed)) => Variant::Random { seed },
        (v, s) => return Err(HarnessError::Document(format!("unknown variant {v} with seed {s:?}"))),
    };
    let mut t = BettiTable::new(doc.base, doc.window.max_i, doc.window.max_j);
    for e in doc.entries {
        let v: u64 = e.beta.parse().map_err(|_| HarnessError::Document(format!("bad beta {:?}", e.beta)))?;
        if e.i > t.max_i() || e.j > t.max_j() {
            return Err(HarnessError::Document(format!("entry ({}, {}) outside the window", e.i, e.j)));
        }
        t.set(e.i, e.j, v);
    }
    if doc.complete {
        t.mark_complete();
    }
    Ok((t, TableMeta { n: doc.n, prime: doc.prime, variant }))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CompareMode {
    Equal,
    UpperBound,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableViolation {
    pub i: usize,
    pub j: usize,
    pub computed: u64,
    pub predicted: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableComparison {
    pub mode: CompareMode,
    /// Window compared; a complete table does not limit it.
    pub max_i: usize,
    pub max_j: usize,
    pub violations: Vec<TableViolation>,
}

impl TableComparison {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Entrywise comparison on the common window. Errors when neither table has
/// an entry there.
pub fn compare_tables(
    computed: &BettiTable,
    predicted: &BettiTable,
    mode: CompareMode,
) -> Result<TableComparison, HarnessError> {
    let bound = |t: &BettiTable| (!t.is_complete()).then_some((t.max_i(), t.max_j()));
    let (max_i, max_j) = match (bound(computed), bound(predicted)) {
        (Some((a, b)), Some((c, d))) => (a.min(c), b.min(d)),
        (Some(w), None) | (None, Some(w)) => w,
        (None, None) => (computed.max_i().max(predicted.max_i()), computed.max_j().max(predicted.max_j())),
    };
    let inside = |&((i, j), _): &((usize, usize), u64)| i <= max_i && j <= max_j;
    let mut keys: Vec<(usize, usize)> =
        computed.entries().chain(predicted.entries()).filter(inside).map(|(k, _)| k).collect();
    if keys.is_empty() {
        return Err(HarnessError::DisjointWindows);
    }
    keys.sort_unstable();
    keys.dedup();
    let violations = keys
        .into_iter()
        .filter_map(|(i, j)| {
            let (c, p) = (computed.get(i, j), predicted.get(i, j));
            let bad = match mode {
                CompareMode::Equal => c != p,
                CompareMode::UpperBound => c > p,
            };
            bad.then_some(TableViolation { i, j, computed: c, predicted: p })
        })
        .collect();
    Ok(TableComparison { mode, max_i, max_j, violations })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> BettiTable {
        let mut t = BettiTable::new("Q", 3, 5);
        t.set(0, 0, 1);
        t.set(1, 2, 4);
        t.set(2, 3, 2);
        t.set(2, 4, 3);
        t.set(3, 5, 2);
        t
    }

    #[test]
    fn json_round_trip() {
        let meta = TableMeta { n: 3, prime: 32003, variant: Variant::Random { seed: 9 } };
        for complete in [false, true] {
            let mut t = sample();
            if complete {
                t.mark_complete();
            }
            let doc = emit_betti_table(&t, &meta, OutputFormat::Json);
            assert_eq!(parse_betti_json(&doc).unwrap(), (t, meta));
        }
        assert!(emit_betti_table(&sample(), &meta, OutputFormat::Json).contains("\"beta\": \"4\""));
    }

    #[test]
    fn empty_table_text_is_header_only() {
        let t = BettiTable::new("Q", 2, 2);
        let s = emit_betti_table(&t, &TableMeta { n: 2, prime: 5, variant: Variant::Tilde }, OutputFormat::Text);
        assert_eq!(s.lines().count(), 1);
    }

    #[test]
    fn comparison_modes() {
        let t = sample();
        assert!(compare_tables(&t, &t, CompareMode::Equal).unwrap().passed());
        let mut smaller = sample();
        smaller.set(2, 4, 1);
        smaller.set(3, 5, 0);
        assert!(compare_tables(&smaller, &t, CompareMode::UpperBound).unwrap().passed());
        let r = compare_tables(&t, &smaller, CompareMode::UpperBound).unwrap();
        let at: Vec<_> = r.violations.iter().map(|v| (v.i, v.j)).collect();
        assert_eq!(at, vec![(2, 4), (3, 5)]);
        assert_eq!(compare_tables(&t, &smaller, CompareMode::Equal).unwrap().violations.len(), 2);
    }

    #[test]
    fn window_is_the_common_part() {
        let t = sample();
        let mut short = t.restrict(1, 5);
        short.set(1, 3, 7);
        // entries beyond i = 1 are outside the common window
        let r = compare_tables(&short, &t, CompareMode::Equal).unwrap();
        assert_eq!((r.max_i, r.max_j), (1, 5));
        assert_eq!(r.violations, vec![TableViolation { i: 1, j: 3, computed: 7, predicted: 0 }]);
        let empty = BettiTable::new("Q", 0, 0);
        assert!(matches!(compare_tables(&empty, &BettiTable::new("Q", 0, 0), CompareMode::Equal), Err(HarnessError::DisjointWindows)));
    }
}
