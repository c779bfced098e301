use std::cell::RefCell;
use std::collections::BTreeMap;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use serde_json::{json, Value};

use super::checks::{ClaimKind, REGISTRY};
use super::config::{ExperimentConfig, ResidueRoute};
use super::report::{CheckResult, CheckStatus, VerificationReport};
use super::HarnessError;
use crate::graded::{sample_general_family_with, GradedQuotientRing, RingFamily, Variant};
use crate::resolution::{
    betti_over_complete_intersection, betti_over_hypersurface, build_hypersurface_resolution,
    koszul_betti, minimal_syzygy_betti, residue_betti_by_bar, BettiTable, GradedModulePresentation,
    HypersurfaceResolution, ModulePieces, ResolutionError, SurjectivityStep,
};
use crate::series::{BiSeries, SeriesError};
use crate::PrimeField;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub(super) enum Base {
    Q,
    P1,
    P,
    /// k as a module over the ring itself.
    Residue,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub(super) enum Ring {
    R,
    A,
}

/// A family with the hypersurface resolution over P_[1] and its
/// top-degree surjectivity data.
pub struct BuiltFamily {
    pub family: RingFamily,
    pub hypersurface: HypersurfaceResolution,
    pub steps: Vec<SurjectivityStep>,
}

fn hypersurface_data(
    fam: &RingFamily,
    length: usize,
) -> Result<(HypersurfaceResolution, Vec<SurjectivityStep>), ResolutionError> {
    let f1 = fam.quadrics.form(0, fam.p1.table());
    let res = build_hypersurface_resolution(&fam.p1, &f1, length)?;
    let steps = res.top_degree_surjectivity(&fam.r, fam.ell(), fam.n + 2)?;
    Ok((res, steps))
}

/// Build the family of `cfg`. Random draws are re-sampled until the
/// hypersurface steps are onto as well, within the sampling bound.
pub fn build_family(cfg: &ExperimentConfig) -> Result<BuiltFamily, HarnessError> {
    cfg.validate()?;
    let field = PrimeField::new(cfg.prime)?;
    let length = (cfg.n + 3).max(cfg.windows.max_i_p1 + 1);
    match cfg.variant {
        Variant::Tilde => {
            let family = RingFamily::tilde(cfg.n, field, cfg.windows.cutoff)?;
            let (hypersurface, steps) = hypersurface_data(&family, length)?;
            Ok(BuiltFamily { family, hypersurface, steps })
        }
        Variant::Random { seed } => {
            let kept = RefCell::new(None);
            let family = sample_general_family_with(cfg.n, field, seed, cfg.windows.cutoff, |fam| {
                let (res, steps) = hypersurface_data(fam, length).map_err(|e| e.to_string())?;
                if let Some(s) = steps.iter().find(|s| !s.is_surjective()) {
                    return Err(format!("d_{} is not onto in degree {}", s.i + 1, fam.ell() + 2));
                }
                *kept.borrow_mut() = Some((res, steps));
                Ok(())
            })?;
            let (hypersurface, steps) = kept.into_inner().expect("accepted draw stored its resolution");
            Ok(BuiltFamily { family, hypersurface, steps })
        }
    }
}

/// β of k over `ring` for i ≤ max_i, j ≤ max_j, and the route used.
pub fn residue_betti(
    ring: &GradedQuotientRing,
    max_i: usize,
    max_j: usize,
    route: ResidueRoute,
) -> Result<(BettiTable, ResidueRoute), ResolutionError> {
    let route = match route {
        ResidueRoute::Auto if ring.h(1) == ring.n() => ResidueRoute::Bar,
        ResidueRoute::Auto => ResidueRoute::Engine,
        r => r,
    };
    let t = match route {
        ResidueRoute::Bar => residue_betti_by_bar(ring, max_i)?.restrict(max_i, max_j),
        _ => minimal_syzygy_betti(ring, &GradedModulePresentation::residue_field(ring), max_i, max_j)?,
    };
    let mut t = t;
    t.set_base("self");
    Ok((t, route))
}

/// The table as a truncated series Σ β_{i,j} t^i u^j.
pub fn betti_table_to_series(t: &BettiTable) -> BiSeries {
    let mut s = BiSeries::zero(t.max_i(), t.max_j());
    for ((i, j), v) in t.entries() {
        s.set(i, j, BigInt::from(v));
    }
    s
}

/// Coefficients of a series as a table; fails on a negative coefficient.
pub fn series_to_table(s: &BiSeries, base: &str) -> Result<BettiTable, SeriesError> {
    let mut t = BettiTable::new(base, s.imax(), s.jmax());
    for (i, j, c) in s.terms() {
        if c.is_negative() {
            return Err(SeriesError::NegativeCoefficient { i, j, value: c });
        }
        t.set(i, j, c.to_u64().expect("coefficient fits in 64 bits"));
    }
    Ok(t)
}

pub(super) fn table_value(t: &BettiTable) -> Value {
    let entries: Vec<Value> = t.entries().map(|((i, j), v)| json!([i, j, v.to_string()])).collect();
    json!({"base": t.base, "max_i": t.max_i(), "max_j": t.max_j(), "complete": t.is_complete(), "entries": entries})
}

pub(super) struct Context<'a> {
    cfg: &'a ExperimentConfig,
    pub(super) fam: RingFamily,
    hyper: HypersurfaceResolution,
    pub(super) steps: Vec<SurjectivityStep>,
    tables: BTreeMap<(Base, Ring), BettiTable>,
    routes: BTreeMap<Ring, ResidueRoute>,
}

impl Context<'_> {
    pub(super) fn n(&self) -> usize {
        self.fam.n
    }

    pub(super) fn ell(&self) -> usize {
        self.fam.ell()
    }

    pub(super) fn ring(&self, r: Ring) -> &GradedQuotientRing {
        match r {
            Ring::R => &self.fam.r,
            Ring::A => &self.fam.a,
        }
    }

    pub(super) fn route(&self, r: Ring) -> ResidueRoute {
        self.routes.get(&r).copied().unwrap_or(self.cfg.residue_route)
    }

    pub(super) fn table(&mut self, base: Base, r: Ring) -> Result<BettiTable, HarnessError> {
        if let Some(t) = self.tables.get(&(base, r)) {
            return Ok(t.clone());
        }
        let w = &self.cfg.windows;
        let ring = self.ring(r);
        let t = match base {
            Base::Q => koszul_betti(ring, w.max_i_q)?,
            Base::P1 => betti_over_hypersurface(&self.hyper, ring, w.max_i_p1)?,
            Base::P => {
                let factors: Vec<_> = (0..self.fam.n).map(|k| self.fam.quadrics.linear_factors(k)).collect();
                betti_over_complete_intersection(&ModulePieces::from_ring(ring), &factors, w.max_i_p, "P")?
            }
            Base::Residue => {
                let (t, route) = residue_betti(ring, w.max_i_residue, w.series.1, self.cfg.residue_route)?;
                self.routes.insert(r, route);
                t
            }
        };
        self.tables.insert((base, r), t.clone());
        Ok(t)
    }

    pub(super) fn computed_tables(&self) -> Vec<((Base, Ring), BettiTable)> {
        self.tables.iter().map(|(k, t)| (*k, t.clone())).collect()
    }
}

fn limited(e: &HarnessError) -> bool {
    matches!(
        e,
        HarnessError::Resolution(
            ResolutionError::ResourceLimit { .. }
                | ResolutionError::WindowOverflow { .. }
                | ResolutionError::ResolutionTooShort { .. }
                | ResolutionError::WindowTooSmall { .. }
        ) | HarnessError::Graded(crate::graded::GradedError::TruncatedSocle { .. })
    )
}

/// Build the family and run every selected, applicable check in registry
/// order. Only construction errors are returned; check errors are recorded.
pub fn run_suite(cfg: &ExperimentConfig) -> Result<VerificationReport, HarnessError> {
    let start = Instant::now();
    let built = build_family(cfg)?;
    let construction_time = start.elapsed();
    let attempts = built.family.attempts;
    let mut ctx = Context {
        cfg,
        fam: built.family,
        hyper: built.hypersurface,
        steps: built.steps,
        tables: BTreeMap::new(),
        routes: BTreeMap::new(),
    };
    let mut checks = Vec::new();
    for spec in REGISTRY {
        if !cfg.checks.contains(&spec.id) || !(spec.applies)(cfg.n, cfg.variant) {
            continue;
        }
        let t0 = Instant::now();
        let outcome = (spec.run)(&mut ctx);
        let elapsed = t0.elapsed();
        log::info!("{} finished in {elapsed:.2?}", spec.id.name());
        let (status, computed, predicted, detail) = match outcome {
            Ok(o) => (o.status, o.computed, o.predicted, o.detail),
            Err(e) => {
                let status = if limited(&e) || spec.kind == ClaimKind::Observation {
                    CheckStatus::WindowLimited
                } else {
                    CheckStatus::Fail
                };
                (status, Value::Null, Value::Null, e.to_string())
            }
        };
        checks.push(CheckResult {
            id: spec.id,
            claim: spec.claim.to_string(),
            kind: spec.kind,
            status,
            computed,
            predicted,
            detail,
            elapsed,
        });
    }
    Ok(VerificationReport { config: cfg.clone(), attempts, checks, construction_time })
}
