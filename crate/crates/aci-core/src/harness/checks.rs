use std::collections::BTreeMap;
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::report::CheckStatus;
use super::suite::{series_to_table, table_value, Base, Context, Ring};
use super::tables::{compare_tables, CompareMode, TableComparison};
use super::HarnessError;
use crate::graded::Variant;
use crate::resolution::{euler_check, golod_hypothesis_check, BettiTable, GolodMode, ResolutionError};
use crate::series::{
    binomial_usize, catalan, hilb_a_value, hilb_p_value, hilb_r_value, linear_strand_a_over_p,
    poincare_k_over_a, poincare_k_over_r, r_over_p_from_a, rate_of_series, tilde_betti_tables_q,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckId {
    Hilbert,
    SmallTables,
    Socle,
    GeneratorDegrees,
    BettiOverQ,
    HypersurfaceRegular,
    BettiOverP1,
    TwoStrandsOverP,
    GolodA,
    GolodR,
    PoincareR,
    PoincareA,
    RateA,
    RateR,
    UpperBound,
    KnownEntries,
    GhostTerms,
    Euler,
}

impl CheckId {
    pub fn name(self) -> &'static str {
        match self {
            CheckId::Hilbert => "hilbert",
            CheckId::SmallTables => "small-tables",
            CheckId::Socle => "socle",
            CheckId::GeneratorDegrees => "generator-degrees",
            CheckId::BettiOverQ => "betti-over-q",
            CheckId::HypersurfaceRegular => "hypersurface-regular",
            CheckId::BettiOverP1 => "betti-over-p1",
            CheckId::TwoStrandsOverP => "two-strands-over-p",
            CheckId::GolodA => "golod-a",
            CheckId::GolodR => "golod-r",
            CheckId::PoincareR => "poincare-r",
            CheckId::PoincareA => "poincare-a",
            CheckId::RateA => "rate-a",
            CheckId::RateR => "rate-r",
            CheckId::UpperBound => "upper-bound",
            CheckId::KnownEntries => "known-entries",
            CheckId::GhostTerms => "ghost-terms",
            CheckId::Euler => "euler",
        }
    }
}

impl FromStr for CheckId {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        REGISTRY
            .iter()
            .map(|c| c.id)
            .find(|id| id.name() == s)
            .ok_or_else(|| HarnessError::Config(format!("unknown check {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ClaimKind {
    /// A proved statement about the rings.
    Theorem,
    /// Recorded for information only; never fails.
    Observation,
    /// An identity every computed table must satisfy.
    Invariant,
}

pub(super) struct Outcome {
    pub status: CheckStatus,
    pub computed: Value,
    pub predicted: Value,
    pub detail: String,
}

fn verdict(ok: bool, computed: Value, predicted: Value, detail: impl Into<String>) -> Outcome {
    let status = if ok { CheckStatus::Pass } else { CheckStatus::Fail };
    Outcome { status, computed, predicted, detail: detail.into() }
}

type Executor = fn(&mut Context) -> Result<Outcome, HarnessError>;

pub struct CheckSpec {
    pub id: CheckId,
    pub claim: &'static str,
    pub kind: ClaimKind,
    /// Whether the check applies to (n, variant).
    pub applies: fn(usize, Variant) -> bool,
    pub(super) run: Executor,
}

fn is_tilde(v: Variant) -> bool {
    v == Variant::Tilde
}

/// All checks in the order they run.
pub const REGISTRY: &[CheckSpec] = &[
    CheckSpec {
        id: CheckId::Hilbert,
        claim: "h_R, h_A, h_P match the binomial closed forms and Hilb_R = Hilb_P - t^2 Hilb_A",
        kind: ClaimKind::Theorem,
        applies: |n, _| n >= 2,
        run: hilbert,
    },
    CheckSpec {
        id: CheckId::SmallTables,
        claim: "three-variable Betti tables of R and A over Q; A is k[x]/(x^2)",
        kind: ClaimKind::Theorem,
        applies: |n, _| n == 3,
        run: small_tables,
    },
    CheckSpec {
        id: CheckId::Socle,
        claim: "R is level with socle in degree n-l-1 of dimension C_{l+2}; A has one-dimensional socle in degree n-2",
        kind: ClaimKind::Theorem,
        applies: |n, _| n >= 3,
        run: socle,
    },
    CheckSpec {
        id: CheckId::GeneratorDegrees,
        claim: "G is minimally generated by n quadrics and C_{l+2} forms of degree l+1",
        kind: ClaimKind::Theorem,
        applies: |n, _| n >= 4,
        run: generator_degrees,
    },
    CheckSpec {
        id: CheckId::BettiOverQ,
        claim: "Betti tables of R and A over Q equal the rho/gamma closed-form tables",
        kind: ClaimKind::Theorem,
        applies: |n, v| n >= 3 && (is_tilde(v) || n % 2 == 0),
        run: betti_over_q,
    },
    CheckSpec {
        id: CheckId::HypersurfaceRegular,
        claim: "d_{i+1} of the resolution over P_[1] is onto in degree l+2 after tensoring with R (reg_{P_[1]} R <= l+1)",
        kind: ClaimKind::Theorem,
        applies: |n, _| n >= 3,
        run: hypersurface_regular,
    },
    CheckSpec {
        id: CheckId::BettiOverP1,
        claim: "for odd n the tables of R and A over P_[1] are the (n-1)-variable tables over Q",
        kind: ClaimKind::Theorem,
        applies: |n, v| n >= 3 && n % 2 == 1 && is_tilde(v),
        run: betti_over_p1,
    },
    CheckSpec {
        id: CheckId::TwoStrandsOverP,
        claim: "A has an l-linear resolution over P and R = t u^2 shift of it plus (1,2); reg_P A = l, reg_P R = l+1",
        kind: ClaimKind::Theorem,
        applies: |n, _| n >= 4,
        run: two_strands,
    },
    CheckSpec {
        id: CheckId::GolodA,
        claim: "Betti table of A over P satisfies the band condition with b = l",
        kind: ClaimKind::Theorem,
        applies: |n, _| n >= 6,
        run: golod_a,
    },
    CheckSpec {
        id: CheckId::GolodR,
        claim: "Betti table of R over P satisfies the band condition with b = l+1 and exception (1,2)",
        kind: ClaimKind::Theorem,
        applies: |n, _| n >= 4,
        run: golod_r,
    },
    CheckSpec {
        id: CheckId::PoincareR,
        claim: "P^R_k = (-t)^l / (Hilb_R(-tu) + (1-tu)^n ((-t)^l - 1)(1 - t^2u^2))",
        kind: ClaimKind::Theorem,
        applies: |n, _| n >= 4,
        run: poincare_r,
    },
    CheckSpec {
        id: CheckId::PoincareA,
        claim: "P^A_k = (-t)^{l-1} / (Hilb_A(-tu) + (1-tu)^n ((-t)^{l-1} - 1))",
        kind: ClaimKind::Theorem,
        applies: |n, _| n >= 4,
        run: poincare_a,
    },
    CheckSpec {
        id: CheckId::RateA,
        claim: "rate(A) = l, attained at i = 2 with tau_2 = l+1",
        kind: ClaimKind::Theorem,
        applies: |n, _| n >= 4,
        run: rate_a,
    },
    CheckSpec {
        id: CheckId::RateR,
        claim: "rate(R) = l/2 + 1, attained at i = 3 with tau_3 = l+3",
        kind: ClaimKind::Theorem,
        applies: |n, _| n >= 4,
        run: rate_r,
    },
    CheckSpec {
        id: CheckId::UpperBound,
        claim: "for odd n, Betti numbers of R and A over Q are bounded entrywise by those of the tilde rings",
        kind: ClaimKind::Theorem,
        applies: |n, _| n >= 3 && n % 2 == 1,
        run: upper_bound,
    },
    CheckSpec {
        id: CheckId::KnownEntries,
        claim: "for odd n: beta_{2,l+3}(R) = C_{l+2} (+15 if n = 5), beta_{n,n+l+2}(R) = C_{l+2}, beta_{n,n+l+1}(R) = beta_{2,l+4}(R) = 0",
        kind: ClaimKind::Theorem,
        applies: |n, _| n >= 5 && n % 2 == 1,
        run: known_entries,
    },
    CheckSpec {
        id: CheckId::GhostTerms,
        claim: "strands l+1 and l+2 of R over Q have no ghost terms: beta_{i,i+l+2} and beta_{i+1,i+l+2} are never both nonzero",
        kind: ClaimKind::Observation,
        applies: |n, v| n >= 5 && n % 2 == 1 && !is_tilde(v),
        run: ghost_terms,
    },
    CheckSpec {
        id: CheckId::Euler,
        claim: "sum_i (-1)^i sum_j beta_{i,j} h_S(d-j) = h_M(d) for every computed table",
        kind: ClaimKind::Invariant,
        applies: |_, _| true,
        run: euler,
    },
];

fn catalan_usize(m: usize) -> usize {
    catalan(m).to_usize().expect("small Catalan number")
}

fn comparison_value(c: &TableComparison) -> Value {
    serde_json::to_value(c).expect("comparison serializes")
}

fn comparison_detail(name: &str, c: &TableComparison) -> String {
    if c.passed() {
        String::new()
    } else {
        let at: Vec<String> = c.violations.iter().map(|v| format!("({},{}): {} vs {}", v.i, v.j, v.computed, v.predicted)).collect();
        format!("{name}: {}", at.join(", "))
    }
}

fn hilbert(ctx: &mut Context) -> Result<Outcome, HarnessError> {
    let n = ctx.n();
    let c = ctx.fam.cutoff;
    let closed = |f: fn(usize, usize) -> usize| (0..=c).map(|d| f(n, d)).collect::<Vec<_>>();
    let (hr, ha, hp) = (ctx.fam.r.hilbert(), ctx.fam.a.hilbert(), ctx.fam.p.hilbert());
    let (pr, pa, pp) = (closed(hilb_r_value), closed(hilb_a_value), closed(hilb_p_value));
    let identity = (0..=c).all(|d| hr[d] as i64 == hp[d] as i64 - if d >= 2 { ha[d - 2] as i64 } else { 0 });
    let ok = hr == pr && ha == pa && hp == pp && identity;
    let detail = if identity { "" } else { "Hilb_R != Hilb_P - t^2 Hilb_A" };
    Ok(verdict(ok, json!({"R": hr, "A": ha, "P": hp}), json!({"R": pr, "A": pa, "P": pp}), detail))
}

fn small_tables(ctx: &mut Context) -> Result<Outcome, HarnessError> {
    let r = ctx.table(Base::Q, Ring::R)?;
    let a = ctx.table(Base::Q, Ring::A)?;
    let want_r: Vec<((usize, usize), u64)> = vec![((0, 0), 1), ((1, 2), 4), ((2, 3), 2), ((2, 4), 3), ((3, 5), 2)];
    let want_a: Vec<((usize, usize), u64)> =
        vec![((0, 0), 1), ((1, 1), 2), ((1, 2), 1), ((2, 2), 1), ((2, 3), 2), ((3, 4), 1)];
    let mut ha = ctx.fam.a.hilbert();
    while ha.last() == Some(&0) {
        ha.pop();
    }
    let got_r: Vec<_> = r.entries().collect();
    let got_a: Vec<_> = a.entries().collect();
    let ok = got_r == want_r && got_a == want_a && ha == [1, 1];
    let detail = if ha == [1, 1] { "h_A = (1, 1): A is k[x]/(x^2)".to_string() } else { format!("h_A = {ha:?}") };
    Ok(verdict(
        ok,
        json!({"R": got_r, "A": got_a, "h_A": ha}),
        json!({"R": want_r, "A": want_a, "h_A": [1, 1]}),
        detail,
    ))
}

fn socle(ctx: &mut Context) -> Result<Outcome, HarnessError> {
    let (n, l) = (ctx.n(), ctx.ell());
    let sr = ctx.fam.r.socle()?;
    let sa = ctx.fam.a.socle()?;
    let want_r = BTreeMap::from([(n - l - 1, catalan_usize(l + 2))]);
    let want_a = BTreeMap::from([(n - 2, 1)]);
    Ok(verdict(
        sr == want_r && sa == want_a,
        json!({"R": sr, "A": sa}),
        json!({"R": want_r, "A": want_a}),
        format!("type(R) = {}", sr.values().sum::<usize>()),
    ))
}

fn generator_degrees(ctx: &mut Context) -> Result<Outcome, HarnessError> {
    let (n, l) = (ctx.n(), ctx.ell());
    let g = ctx.fam.a.minimal_generator_degrees();
    let mut want = BTreeMap::from([(2, n)]);
    *want.entry(l + 1).or_insert(0) += catalan_usize(l + 2);
    let mut out = verdict(g.counts == want, json!(g.counts), json!(want), "");
    if !g.certified && out.status == CheckStatus::Pass {
        out.status = CheckStatus::WindowLimited;
        out.detail = "A does not vanish at the cutoff".into();
    }
    Ok(out)
}

fn betti_over_q(ctx: &mut Context) -> Result<Outcome, HarnessError> {
    let (pr, pa) = tilde_betti_tables_q(ctx.n());
    compare_pair(ctx, Base::Q, [pr, pa], CompareMode::Equal)
}

/// Compare the R and A tables over `base` against predictions.
fn compare_pair(
    ctx: &mut Context,
    base: Base,
    predicted: [BettiTable; 2],
    mode: CompareMode,
) -> Result<Outcome, HarnessError> {
    let r = ctx.table(base, Ring::R)?;
    let a = ctx.table(base, Ring::A)?;
    let cr = compare_tables(&r, &predicted[0], mode)?;
    let ca = compare_tables(&a, &predicted[1], mode)?;
    let detail = [comparison_detail("R", &cr), comparison_detail("A", &ca)]
        .into_iter()
        .filter(|s| !s.is_empty())
        .collect::<Vec<_>>()
        .join("\n");
    Ok(verdict(
        cr.passed() && ca.passed(),
        json!({"R": table_value(&r), "A": table_value(&a), "comparison": {"R": comparison_value(&cr), "A": comparison_value(&ca)}}),
        json!({"R": table_value(&predicted[0]), "A": table_value(&predicted[1])}),
        detail,
    ))
}

fn hypersurface_regular(ctx: &mut Context) -> Result<Outcome, HarnessError> {
    let steps: Vec<Value> = ctx.steps.iter().map(|s| json!({"i": s.i, "rank": s.rank, "target": s.target_dim})).collect();
    let bad: Vec<usize> = ctx.steps.iter().filter(|s| !s.is_surjective()).map(|s| s.i).collect();
    let detail = if bad.is_empty() {
        format!("onto for i = 0..={}", ctx.steps.len().saturating_sub(1))
    } else {
        format!("not onto at i = {bad:?}")
    };
    Ok(verdict(bad.is_empty(), json!(steps), json!("every step onto"), detail))
}

fn betti_over_p1(ctx: &mut Context) -> Result<Outcome, HarnessError> {
    let (pr, pa) = tilde_betti_tables_q(ctx.n() - 1);
    compare_pair(ctx, Base::P1, [pr, pa], CompareMode::Equal)
}

fn two_strands(ctx: &mut Context) -> Result<Outcome, HarnessError> {
    let (n, l) = (ctx.n(), ctx.ell());
    let a = ctx.table(Base::P, Ring::A)?;
    let r = ctx.table(Base::P, Ring::R)?;
    let off_a: Vec<(usize, usize)> =
        a.entries().map(|(k, _)| k).filter(|&(i, j)| (i, j) != (0, 0) && j != i + l).collect();
    let off_r: Vec<(usize, usize)> = r
        .entries()
        .map(|(k, _)| k)
        .filter(|&(i, j)| (i, j) != (0, 0) && (i, j) != (1, 2) && j != i + l + 1)
        .collect();
    let reg_a = a.regularity()?.value;
    let reg_r = r.regularity()?.value;
    let (mi, mj) = (a.max_i(), a.max_i() + l + 2);
    let sa = linear_strand_a_over_p(n, mi, mj)?;
    let sr = r_over_p_from_a(&sa)?;
    let ca = compare_tables(&a, &series_to_table(&sa, "P")?, CompareMode::Equal)?;
    let cr = compare_tables(&r, &series_to_table(&sr, "P")?, CompareMode::Equal)?;
    let ok = off_a.is_empty() && off_r.is_empty() && reg_a == l as i64 && reg_r == l as i64 + 1 && ca.passed() && cr.passed();
    let mut detail = vec![format!("reg_P A = {reg_a}, reg_P R = {reg_r}")];
    if !off_a.is_empty() || !off_r.is_empty() {
        detail.push(format!("off-strand entries: A {off_a:?}, R {off_r:?}"));
    }
    detail.extend([comparison_detail("A vs series", &ca), comparison_detail("R vs series", &cr)].into_iter().filter(|s| !s.is_empty()));
    Ok(verdict(
        ok,
        json!({"A": table_value(&a), "R": table_value(&r), "reg_A": reg_a, "reg_R": reg_r}),
        json!({"A": table_value(&series_to_table(&sa, "P")?), "R": table_value(&series_to_table(&sr, "P")?), "reg_A": l, "reg_R": l + 1}),
        detail.join("\n"),
    ))
}

fn golod(ctx: &mut Context, ring: Ring, mode: GolodMode) -> Result<Outcome, HarnessError> {
    let t = ctx.table(Base::P, ring)?;
    let rep = match golod_hypothesis_check(&t, mode) {
        Ok(r) => r,
        Err(ResolutionError::WindowTooSmall { max_i, need }) => {
            return Ok(Outcome {
                status: CheckStatus::WindowLimited,
                computed: table_value(&t),
                predicted: json!(format!("{mode:?}")),
                detail: format!("window i <= {max_i}, need {need}"),
            })
        }
        Err(e) => return Err(e.into()),
    };
    let v: Vec<Value> = rep.violations.iter().map(|v| json!({"i": v.i, "j": v.j, "beta": v.beta, "reason": v.reason})).collect();
    let detail = format!("{mode:?} on i <= {}", rep.max_i);
    Ok(verdict(rep.passed(), json!({"violations": v}), json!(format!("{mode:?}")), detail))
}

fn golod_a(ctx: &mut Context) -> Result<Outcome, HarnessError> {
    let b = ctx.ell();
    golod(ctx, Ring::A, GolodMode::Band { b })
}

fn golod_r(ctx: &mut Context) -> Result<Outcome, HarnessError> {
    let b = ctx.ell() + 1;
    golod(ctx, Ring::R, GolodMode::BandWithException { b, i0: 1, j0: 2 })
}

fn poincare(ctx: &mut Context, ring: Ring) -> Result<Outcome, HarnessError> {
    let n = ctx.n();
    let t = ctx.table(Base::Residue, ring)?;
    let (mi, mj) = (t.max_i(), t.max_j());
    let s = match ring {
        Ring::R => poincare_k_over_r(n, mi, mj)?,
        Ring::A => poincare_k_over_a(n, mi, mj)?,
    };
    let predicted = series_to_table(&s, "self")?;
    let c = compare_tables(&t, &predicted, CompareMode::Equal)?;
    let route = ctx.route(ring);
    Ok(verdict(
        c.passed(),
        json!({"table": table_value(&t), "comparison": comparison_value(&c), "route": route}),
        json!(table_value(&predicted)),
        [format!("computed by the {route:?} route on i <= {mi}, j <= {mj}"), comparison_detail("table vs series", &c)]
            .into_iter()
            .filter(|s| !s.is_empty())
            .collect::<Vec<_>>()
            .join("\n"),
    ))
}

fn poincare_r(ctx: &mut Context) -> Result<Outcome, HarnessError> {
    poincare(ctx, Ring::R)
}

fn poincare_a(ctx: &mut Context) -> Result<Outcome, HarnessError> {
    poincare(ctx, Ring::A)
}

fn rate(ctx: &mut Context, ring: Ring, witness: usize, tau: usize, rate: Ratio<i64>) -> Result<Outcome, HarnessError> {
    let t = ctx.table(Base::Residue, ring)?;
    let s = super::suite::betti_table_to_series(&t);
    let rep = rate_of_series(&s, 2..=t.max_i())?;
    let got_tau = rep.taus.iter().find(|&&(i, _)| i == witness).map(|&(_, v)| v);
    let ok = rep.rate == rate && rep.witness == witness && got_tau == Some(tau);
    let mut out = verdict(
        ok,
        json!({"rate": rep.rate.to_string(), "witness": rep.witness, "taus": rep.taus}),
        json!({"rate": rate.to_string(), "witness": witness, "tau": tau}),
        format!("windowed over 2 <= i <= {}", t.max_i()),
    );
    if rep.j_truncated && !ok {
        out.status = CheckStatus::WindowLimited;
    }
    Ok(out)
}

fn rate_a(ctx: &mut Context) -> Result<Outcome, HarnessError> {
    let l = ctx.ell();
    rate(ctx, Ring::A, 2, l + 1, Ratio::from_integer(l as i64))
}

fn rate_r(ctx: &mut Context) -> Result<Outcome, HarnessError> {
    let l = ctx.ell();
    rate(ctx, Ring::R, 3, l + 3, Ratio::new(l as i64 + 2, 2))
}

fn upper_bound(ctx: &mut Context) -> Result<Outcome, HarnessError> {
    let (pr, pa) = tilde_betti_tables_q(ctx.n());
    compare_pair(ctx, Base::Q, [pr, pa], CompareMode::UpperBound)
}

fn known_entries(ctx: &mut Context) -> Result<Outcome, HarnessError> {
    let (n, l) = (ctx.n(), ctx.ell());
    let r = ctx.table(Base::Q, Ring::R)?;
    let c = catalan_usize(l + 2) as u64;
    let extra = if n == 5 { binomial_usize(6, 2) as u64 } else { 0 };
    let want = [((2, l + 3), c + extra), ((n, n + l + 2), c), ((n, n + l + 1), 0), ((2, l + 4), 0)];
    let got: Vec<Value> = want.iter().map(|&((i, j), _)| json!([i, j, r.get(i, j)])).collect();
    let pred: Vec<Value> = want.iter().map(|&((i, j), v)| json!([i, j, v])).collect();
    let ok = want.iter().all(|&((i, j), v)| r.get(i, j) == v);
    Ok(verdict(ok, json!(got), json!(pred), ""))
}

fn ghost_terms(ctx: &mut Context) -> Result<Outcome, HarnessError> {
    let l = ctx.ell();
    let r = ctx.table(Base::Q, Ring::R)?;
    let (tr, _) = tilde_betti_tables_q(ctx.n());
    // (i, j, beta_{i,j}, beta_{i+1,j}) with j = i + l + 2
    let ghosts: Vec<(usize, usize, u64, u64)> = (0..r.max_i())
        .map(|i| (i, i + l + 2))
        .filter(|&(i, j)| r.get(i, j) != 0 && r.get(i + 1, j) != 0)
        .map(|(i, j)| (i, j, r.get(i, j), r.get(i + 1, j)))
        .collect();
    let detail = if ghosts.is_empty() {
        "no ghost terms".to_string()
    } else {
        format!("ghost terms at {ghosts:?}")
    };
    Ok(Outcome {
        status: CheckStatus::Pass,
        computed: json!({"table": table_value(&r), "ghosts": ghosts}),
        predicted: json!(table_value(&tr)),
        detail,
    })
}

fn euler(ctx: &mut Context) -> Result<Outcome, HarnessError> {
    let n = ctx.n();
    let mut checked = Vec::new();
    let mut failures = Vec::new();
    for ((base, ring), t) in ctx.computed_tables() {
        let len = t.max_j() + 1;
        let h_ring = ctx.ring(ring).hilbert();
        let h_m: Vec<u64> = match base {
            Base::Residue => (0..len).map(|d| u64::from(d == 0)).collect(),
            _ => (0..len).map(|d| h_ring.get(d).copied().unwrap_or(0) as u64).collect(),
        };
        let h_s: Vec<u64> = (0..len)
            .map(|d| {
                let v = match base {
                    Base::Q => binomial_usize(n + d - 1, d),
                    Base::P1 => binomial_usize(n + d - 1, d) - if d >= 2 { binomial_usize(n + d - 3, d - 2) } else { 0 },
                    Base::P => hilb_p_value(n, d),
                    Base::Residue => h_ring.get(d).copied().unwrap_or(0),
                };
                v as u64
            })
            .collect();
        let label = format!("{ring:?} over {base:?}");
        match euler_check(&t, &h_s, &h_m) {
            Ok(k) => checked.push(json!({"table": label, "degrees": k})),
            Err(e) => failures.push(format!("{label}: {e}")),
        }
    }
    Ok(verdict(failures.is_empty(), json!(checked), json!("identity holds"), failures.join("\n")))
}
