use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::checks::{CheckId, REGISTRY};
use super::tables::OutputFormat;
use super::HarnessError;
use crate::graded::{RingFamily, Variant};
use crate::PrimeField;

/// How the Betti numbers of k over R and A are computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ResidueRoute {
    /// Bar construction unless the ring has linear relations.
    Auto,
    /// Iterated minimal syzygies.
    Engine,
    /// Bar construction on Koszul homology.
    Bar,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Windows {
    /// Ring pieces are built through this degree.
    pub cutoff: usize,
    pub max_i_q: usize,
    pub max_i_p1: usize,
    pub max_i_p: usize,
    pub max_i_residue: usize,
    /// Truncation (i, j) of the Poincaré series.
    pub series: (usize, usize),
}

impl Windows {
    pub fn for_n(n: usize) -> Self {
        let residue = 6;
        Windows {
            cutoff: RingFamily::default_cutoff(n),
            max_i_q: n,
            max_i_p1: n,
            max_i_p: n.min(6),
            max_i_residue: residue,
            series: (residue, 4 * residue),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub n: usize,
    pub prime: u32,
    pub variant: Variant,
    pub windows: Windows,
    pub residue_route: ResidueRoute,
    pub checks: BTreeSet<CheckId>,
    pub format: OutputFormat,
}

impl ExperimentConfig {
    /// Every applicable check with default windows and the default prime.
    pub fn new(n: usize, variant: Variant) -> Result<Self, HarnessError> {
        let prime = PrimeField::default_from_env()?.p();
        Ok(ExperimentConfig {
            n,
            prime,
            variant,
            windows: Windows::for_n(n),
            residue_route: ResidueRoute::Auto,
            checks: REGISTRY.iter().map(|c| c.id).collect(),
            format: OutputFormat::Text,
        })
    }

    pub fn with_checks(mut self, checks: impl IntoIterator<Item = CheckId>) -> Self {
        self.checks = checks.into_iter().collect();
        self
    }

    pub fn validate(&self) -> Result<(), HarnessError> {
        let w = &self.windows;
        let bad = |m: String| Err(HarnessError::Config(m));
        if self.n < 2 {
            return bad(format!("need n >= 2, got {}", self.n));
        }
        let field = PrimeField::new(self.prime)?;
        if field.p() as usize <= self.n {
            return bad(format!("prime {} must exceed n = {}", self.prime, self.n));
        }
        // R vanishes from degree n − ℓ and A from n − 1; P from n + 1
        if w.cutoff < self.n + 1 {
            return bad(format!("cutoff {} must be at least n + 1 = {}", w.cutoff, self.n + 1));
        }
        if w.series.0 < w.max_i_residue {
            return bad(format!("series window i <= {} is below the resolution window {}", w.series.0, w.max_i_residue));
        }
        if w.series.1 < 2 * w.max_i_residue + 2 {
            return bad(format!("series window j <= {} cannot hold i <= {}", w.series.1, w.max_i_residue));
        }
        if w.max_i_p == 0 || w.max_i_q == 0 {
            return bad("resolution windows must be positive".into());
        }
        Ok(())
    }
}
