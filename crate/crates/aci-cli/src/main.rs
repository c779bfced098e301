use std::error::Error;
use std::path::PathBuf;
use std::process::ExitCode;

use aci_core::graded::{sample_general_family, RingFamily, Variant};
use aci_core::harness::{
    betti_table_to_series, compare_tables, emit_betti_table, residue_betti, run_suite,
    series_to_table, CheckId,
    CompareMode, ExperimentConfig, OutputFormat, ResidueRoute, TableMeta, Windows,
};
use aci_core::resolution::{
    betti_over_complete_intersection, betti_over_hypersurface, build_hypersurface_resolution,
    complex_homology_betti, koszul_betti, BettiTable, ModulePieces,
};
use aci_core::series::{
    catalan, gamma, poincare_k_over_a, poincare_k_over_r, rate_of_series, rho, BiSeries,
};
use aci_core::PrimeField;
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "aci", about = "Rings defined by n+1 general quadrics: invariants and checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct FamilyArgs {
    /// Number of variables.
    #[arg(long)]
    n: usize,
    #[arg(long, value_enum, default_value = "tilde")]
    variant: VariantArg,
    /// Seed for the random variant.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Prime modulus; defaults to ACI_DEFAULT_PRIME or 32003.
    #[arg(long)]
    prime: Option<u32>,
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    Tilde,
    Random,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModuleArg {
    R,
    A,
    K,
}

#[derive(Clone, Copy, ValueEnum)]
enum BaseArg {
    Q,
    P1,
    P,
    #[value(name = "self")]
    SelfRing,
}

#[derive(Clone, Copy, ValueEnum)]
enum RingArg {
    R,
    A,
}

#[derive(Clone, Copy, ValueEnum)]
enum RouteArg {
    Auto,
    Engine,
    Bar,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum SequenceArg {
    Rho,
    Gamma,
    Catalan,
}

#[derive(Subcommand)]
enum Command {
    /// Hilbert functions of R, A and P.
    Hilbert(FamilyArgs),
    /// Betti table of R, A or k over Q, P_[1], P or the ring itself.
    Betti {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, value_enum)]
        module: ModuleArg,
        #[arg(long, value_enum)]
        base: BaseArg,
        /// Ring whose residue field is resolved when the base is `self`.
        #[arg(long, value_enum, default_value = "r")]
        ring: RingArg,
        #[arg(long)]
        max_i: Option<usize>,
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
        #[arg(long, value_enum, default_value = "auto")]
        route: RouteArg,
    },
    /// Closed-form Poincaré series of k against the computed table.
    Poincare {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, value_enum)]
        ring: RingArg,
        #[arg(long, default_value_t = 6)]
        max_i: usize,
        #[arg(long)]
        max_j: Option<usize>,
        #[arg(long, value_enum, default_value = "auto")]
        route: RouteArg,
    },
    /// Top degrees τ_i of the resolution of k and the windowed rate.
    Rate {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, value_enum)]
        ring: RingArg,
        #[arg(long, default_value_t = 6)]
        max_i: usize,
        #[arg(long, value_enum, default_value = "auto")]
        route: RouteArg,
    },
    /// Run the verification suite.
    Verify {
        #[command(flatten)]
        family: FamilyArgs,
        /// Write the JSON report here.
        #[arg(long)]
        json: Option<PathBuf>,
        /// Comma-separated check names; all applicable checks by default.
        #[arg(long, value_delimiter = ',')]
        checks: Vec<String>,
        #[arg(long)]
        max_i_residue: Option<usize>,
        #[arg(long, value_enum, default_value = "auto")]
        route: RouteArg,
    },
    /// Values of ρ_k(n), γ_k(n) or the Catalan numbers.
    Sequences {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum)]
        which: SequenceArg,
        #[arg(long)]
        upto: usize,
    },
}

type Result<T> = std::result::Result<T, Box<dyn Error>>;

impl FamilyArgs {
    fn variant(&self) -> Variant {
        match self.variant {
            VariantArg::Tilde => Variant::Tilde,
            VariantArg::Random => Variant::Random { seed: self.seed },
        }
    }

    fn field(&self) -> Result<PrimeField> {
        Ok(match self.prime {
            Some(p) => PrimeField::new(p)?,
            None => PrimeField::default_from_env()?,
        })
    }

    fn meta(&self) -> Result<TableMeta> {
        Ok(TableMeta { n: self.n, prime: self.field()?.p(), variant: self.variant() })
    }

    fn build(&self) -> Result<RingFamily> {
        let field = self.field()?;
        let cutoff = RingFamily::default_cutoff(self.n);
        Ok(match self.variant() {
            Variant::Tilde => RingFamily::tilde(self.n, field, cutoff)?,
            Variant::Random { seed } => sample_general_family(self.n, field, seed, cutoff)?,
        })
    }
}

fn route(r: RouteArg) -> ResidueRoute {
    match r {
        RouteArg::Auto => ResidueRoute::Auto,
        RouteArg::Engine => ResidueRoute::Engine,
        RouteArg::Bar => ResidueRoute::Bar,
    }
}

fn pick(fam: &RingFamily, r: RingArg) -> &aci_core::graded::GradedQuotientRing {
    match r {
        RingArg::R => &fam.r,
        RingArg::A => &fam.a,
    }
}

fn trimmed(mut h: Vec<usize>) -> Vec<usize> {
    while h.len() > 1 && h.last() == Some(&0) {
        h.pop();
    }
    h
}

fn hilbert(args: &FamilyArgs) -> Result<()> {
    let fam = args.build()?;
    println!("h_R = {:?}", trimmed(fam.r.hilbert()));
    println!("h_A = {:?}", trimmed(fam.a.hilbert()));
    println!("h_P = {:?}", trimmed(fam.p.hilbert()));
    Ok(())
}

fn betti(
    args: &FamilyArgs,
    module: ModuleArg,
    base: BaseArg,
    ring: RingArg,
    max_i: Option<usize>,
    route_arg: RouteArg,
) -> Result<BettiTable> {
    let fam = args.build()?;
    let n = fam.n;
    let windows = Windows::for_n(n);
    let m = match module {
        ModuleArg::R => Some(&fam.r),
        ModuleArg::A => Some(&fam.a),
        ModuleArg::K => None,
    };
    let t = match (base, m) {
        (BaseArg::Q, Some(m)) => koszul_betti(m, max_i.unwrap_or(windows.max_i_q))?,
        (BaseArg::Q, None) => {
            let mut t = BettiTable::new("Q", n, n);
            for i in 0..=n {
                t.set(i, i, aci_core::series::binomial_usize(n, i) as u64);
            }
            t.mark_complete();
            t
        }
        (BaseArg::P1, m) => {
            let max_i = max_i.unwrap_or(windows.max_i_p1);
            let f1 = fam.quadrics.form(0, fam.p1.table());
            let res = build_hypersurface_resolution(&fam.p1, &f1, max_i + 2)?;
            match m {
                Some(m) => betti_over_hypersurface(&res, m, max_i)?,
                None => complex_homology_betti(
                    res.complex(),
                    &ModulePieces::residue_field(fam.field, n),
                    max_i,
                    "P1",
                ),
            }
        }
        (BaseArg::P, Some(m)) => {
            let factors: Vec<_> = (0..n).map(|k| fam.quadrics.linear_factors(k)).collect();
            betti_over_complete_intersection(
                &ModulePieces::from_ring(m),
                &factors,
                max_i.unwrap_or(windows.max_i_p),
                "P",
            )?
        }
        (BaseArg::P, None) => {
            let max_i = max_i.unwrap_or(windows.max_i_residue);
            residue_betti(&fam.p, max_i, 4 * max_i, route(route_arg))?.0
        }
        (BaseArg::SelfRing, _) => {
            let max_i = max_i.unwrap_or(windows.max_i_residue);
            residue_betti(pick(&fam, ring), max_i, 4 * max_i, route(route_arg))?.0
        }
    };
    Ok(t)
}

fn series_for(n: usize, ring: RingArg, max_i: usize, max_j: usize) -> Result<BiSeries> {
    Ok(match ring {
        RingArg::R => poincare_k_over_r(n, max_i, max_j)?,
        RingArg::A => poincare_k_over_a(n, max_i, max_j)?,
    })
}

fn poincare(args: &FamilyArgs, ring: RingArg, max_i: usize, max_j: Option<usize>, r: RouteArg) -> Result<bool> {
    let fam = args.build()?;
    let max_j = max_j.unwrap_or(4 * max_i);
    let (t, used) = residue_betti(pick(&fam, ring), max_i, max_j, route(r))?;
    let s = series_for(fam.n, ring, max_i, max_j)?;
    println!("closed form, i <= {max_i}, j <= {max_j}:");
    for i in 0..=max_i {
        let row: Vec<String> =
            (0..=max_j).filter(|&j| s.get(i, j) != 0.into()).map(|j| format!("{}u^{j}", s.get(i, j))).collect();
        println!("  t^{i}: {}", row.join(" + "));
    }
    println!("computed ({used:?} route):\n{}", t.to_text());
    let predicted = series_to_table(&s, "self")?;
    let c = compare_tables(&t, &predicted, CompareMode::Equal)?;
    if c.passed() {
        println!("no differences");
    } else {
        for v in &c.violations {
            println!("  ({}, {}): computed {} closed form {}", v.i, v.j, v.computed, v.predicted);
        }
    }
    Ok(c.passed())
}

fn rate(args: &FamilyArgs, ring: RingArg, max_i: usize, r: RouteArg) -> Result<()> {
    let fam = args.build()?;
    let (t, used) = residue_betti(pick(&fam, ring), max_i, 4 * max_i, route(r))?;
    let rep = rate_of_series(&betti_table_to_series(&t), 2..=max_i)?;
    println!("computed ({used:?} route):");
    for (i, tau) in &rep.taus {
        println!("  tau_{i} = {tau}");
    }
    println!("windowed rate = {} at i = {}", rep.rate, rep.witness);
    let s = series_for(fam.n, ring, max_i, 4 * max_i)?;
    let srep = rate_of_series(&s, 2..=max_i)?;
    println!("closed form: windowed rate = {} at i = {}", srep.rate, srep.witness);
    Ok(())
}

fn verify(
    args: &FamilyArgs,
    json: Option<&PathBuf>,
    checks: &[String],
    max_i_residue: Option<usize>,
    r: RouteArg,
) -> Result<bool> {
    let mut cfg = ExperimentConfig::new(args.n, args.variant())?;
    cfg.prime = args.field()?.p();
    cfg.residue_route = route(r);
    if let Some(m) = max_i_residue {
        cfg.windows.max_i_residue = m;
        cfg.windows.series = (m, 4 * m);
    }
    if !checks.is_empty() {
        let ids = checks.iter().map(|s| s.parse::<CheckId>()).collect::<std::result::Result<Vec<_>, _>>()?;
        cfg = cfg.with_checks(ids);
    }
    let report = run_suite(&cfg)?;
    print!("{}", report.to_text());
    if let Some(path) = json {
        std::fs::write(path, report.to_json())?;
    }
    Ok(!report.failed())
}

fn sequences(n: usize, which: SequenceArg, upto: usize) {
    let values: Vec<String> = match which {
        SequenceArg::Rho => rho(n, upto).values.iter().map(ToString::to_string).collect(),
        SequenceArg::Gamma => gamma(n, upto).values.iter().map(ToString::to_string).collect(),
        SequenceArg::Catalan => (0..=upto).map(|m| catalan(m).to_string()).collect(),
    };
    println!("{}", values.join(", "));
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Hilbert(f) => hilbert(&f).map(|_| true),
        Command::Betti { family, module, base, ring, max_i, format, route } => {
            let t = betti(&family, module, base, ring, max_i, route)?;
            let format = match format {
                FormatArg::Text => OutputFormat::Text,
                FormatArg::Json => OutputFormat::Json,
            };
            println!("{}", emit_betti_table(&t, &family.meta()?, format).trim_end());
            Ok(true)
        }
        Command::Poincare { family, ring, max_i, max_j, route } => poincare(&family, ring, max_i, max_j, route),
        Command::Rate { family, ring, max_i, route } => rate(&family, ring, max_i, route).map(|_| true),
        Command::Verify { family, json, checks, max_i_residue, route } => {
            verify(&family, json.as_ref(), &checks, max_i_residue, route)
        }
        Command::Sequences { n, which, upto } => {
            sequences(n, which, upto);
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    env_logger::init();
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
