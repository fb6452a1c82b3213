//! Command-line driver: lists the graded algebras and runs certificates on
//! them, producing reports in JSON or text.

use std::fmt::Write as _;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use holocert::catalog::{self, CatalogEntry, CatalogFamily, E7_27_NODE};
use holocert::holonomy::{lemma1_center_witness, lemma1_ideal_witness, SpotCheck};
use holocert::structure::{structure_report, CheckOutcome, Dims};
use holocert::{
    algebra, holonomy_span_jets, lemma1_certify, lemma2_certify, theorem_certify, Certificate, CertifyOptions,
    GradedLieAlgebra, Lemma2Options, ModelChart, Rational, Scalar, Series, SeriesLabel,
};

/// Exit status when every certificate passed.
pub const EXIT_PASS: i32 = 0;
/// Exit status when a certificate failed.
pub const EXIT_FAIL: i32 = 1;
/// Exit status for invalid configurations and internal errors.
pub const EXIT_USAGE: i32 = 2;

/// Smallest jet order accepted for the jet checks.
pub const MIN_JET_ORDER: usize = holocert::jetweyl::MIN_SPAN_ORDER;

/// Truncation order of the seeded curvature-identity check.
pub const IDENTITY_ORDER: usize = 3;

/// Top degree of the random one-form in the curvature-identity check.
pub const IDENTITY_DEGREE: usize = 2;

#[derive(Debug, Parser)]
#[command(name = "holocert", version, about = "Exact holonomy certificates for |1|-graded simple Lie algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the graded algebras and their classification rows.
    List(ListArgs),
    /// Run certificates on one algebra or on all graded nodes of a label.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct ListArgs {
    #[arg(long)]
    pub series: Option<Series>,
    #[arg(long)]
    pub rank: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub series: Series,
    /// Required for A-D; implied for E6 and E7.
    #[arg(long)]
    pub rank: Option<usize>,
    /// A 1-based node, `all`, or `27dim` for E7.
    #[arg(long, default_value = "all")]
    pub node: NodeSpec,
    /// Comma-separated subset of structure, lemma1, lemma2, theorem, jets, or `all`.
    #[arg(long, default_value = "all")]
    pub checks: CheckSet,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long, default_value_t = 8)]
    pub jet_order: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads for span enumeration; 0 or no value uses every core.
    #[arg(long, num_args = 0..=1, default_missing_value = "0")]
    pub parallel: Option<usize>,
    /// Run the theorem and jet checks on E6 and E7.
    #[arg(long)]
    pub allow_slow: bool,
    #[arg(long, value_enum, default_value_t = Exactness::ExactRational)]
    pub exactness: Exactness,
    /// Record wall-clock times; without it every time is 0 and reruns are
    /// byte-identical.
    #[arg(long)]
    pub timing: bool,
    /// Generate every candidate instead of stopping at the target dimension.
    #[arg(long)]
    pub exhaustive: bool,
    /// Shift one structure constant before running, so that checks fail.
    #[arg(long, hide = true)]
    pub negative_control: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Exactness {
    ExactRational,
    /// Double precision, for profiling only; never certifies.
    Float,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NodeSpec {
    All,
    Node(usize),
    Dim27,
}

impl FromStr for NodeSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "all" => Ok(NodeSpec::All),
            "27dim" => Ok(NodeSpec::Dim27),
            n => n
                .parse()
                .map(NodeSpec::Node)
                .map_err(|_| format!("node must be an integer, 'all' or '27dim', got '{n}'")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Check {
    Structure,
    Lemma1,
    Lemma2,
    Theorem,
    Jets,
}

impl Check {
    pub const ALL: [Check; 5] = [Check::Structure, Check::Lemma1, Check::Lemma2, Check::Theorem, Check::Jets];

    fn slow_on_exceptional(self) -> bool {
        matches!(self, Check::Theorem | Check::Jets)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckSet(pub Vec<Check>);

impl FromStr for CheckSet {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut out = Vec::new();
        for part in s.split(',').map(str::trim) {
            match part {
                "all" => out.extend(Check::ALL),
                "structure" => out.push(Check::Structure),
                "lemma1" => out.push(Check::Lemma1),
                "lemma2" => out.push(Check::Lemma2),
                "theorem" => out.push(Check::Theorem),
                "jets" => out.push(Check::Jets),
                other => return Err(format!("unknown check '{other}'")),
            }
        }
        out.sort();
        out.dedup();
        Ok(CheckSet(out))
    }
}

/// Configuration echoed into the report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    pub series: Series,
    pub rank: usize,
    pub nodes: Vec<usize>,
    pub checks: Vec<Check>,
    pub exactness: Exactness,
    pub jet_order: usize,
    pub seed: u64,
    /// Worker threads, 0 for all cores, absent for sequential runs.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parallel: Option<usize>,
    pub exhaustive: bool,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub negative_control: bool,
}

/// A non-span witness, such as the centre and ideal witnesses of Lemma 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessCheck {
    pub check: String,
    pub description: String,
    pub value: String,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraReport {
    pub series: Series,
    pub rank: usize,
    pub node: usize,
    pub row: CatalogEntry,
    pub dims: Dims,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub structure: Vec<CheckOutcome>,
    pub certificates: Vec<Certificate>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub witnesses: Vec<WitnessCheck>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub spot_checks: Vec<SpotCheck>,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub tool: String,
    pub version: String,
    pub config: RunConfig,
    pub algebras: Vec<AlgebraReport>,
    /// `false` in float mode, where nothing is certified.
    pub certified: bool,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ungraded {
    pub series: Series,
    pub note: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ListReport {
    pub families: Vec<CatalogFamily>,
    pub entries: Vec<CatalogEntry>,
    pub ungraded: Vec<Ungraded>,
    /// No node of E8, F4 or G2 gives a |1|-grading.
    pub complete: bool,
}

/// Errors that map to [`EXIT_USAGE`].
#[derive(Debug, PartialEq, Eq)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<holocert::Error> for UsageError {
    fn from(e: holocert::Error) -> Self {
        UsageError(e.to_string())
    }
}

const NO_GRADING: &str = "no |1|-grading";

pub fn cmd_list(args: &ListArgs) -> Result<ListReport, UsageError> {
    let complete = catalog::completeness().iter().all(|(_, none)| *none);
    let mut families = catalog::families();
    let mut entries = Vec::new();
    let mut ungraded: Vec<Ungraded> = catalog::completeness()
        .into_iter()
        .filter(|(_, none)| *none)
        .map(|(series, _)| Ungraded {
            series,
            note: NO_GRADING.into(),
        })
        .collect();
    if let Some(series) = args.series {
        families.retain(|f| f.series == series);
        ungraded.retain(|u| u.series == series);
        let rank = args.rank.or(series.fixed_rank());
        if let (Some(rank), true) = (rank, ungraded.is_empty()) {
            entries = catalog::entries_for(SeriesLabel::new(series, rank)?)?;
        }
    } else if args.rank.is_some() {
        return Err(UsageError("--rank needs --series".into()));
    }
    Ok(ListReport {
        families,
        entries,
        ungraded,
        complete,
    })
}

/// Validates the arguments of `verify` into a [`RunConfig`].
pub fn resolve(args: &VerifyArgs) -> Result<RunConfig, UsageError> {
    let series = args.series;
    let rank = match (args.rank, series.fixed_rank()) {
        (Some(r), _) => r,
        (None, Some(r)) => r,
        (None, None) => return Err(UsageError(format!("--rank is required for series {series}"))),
    };
    let label = SeriesLabel::new(series, rank)?;
    let graded: Vec<usize> = catalog::entries_for(label)?.iter().map(|e| e.node).collect();
    let nodes = match args.node {
        NodeSpec::All => graded,
        NodeSpec::Dim27 if series == Series::E7 => vec![E7_27_NODE],
        NodeSpec::Dim27 => return Err(UsageError("'27dim' only names a node of E7".into())),
        NodeSpec::Node(n) => {
            catalog::entry(label, n)?;
            vec![n]
        }
    };
    let checks = args.checks.0.clone();
    if checks.is_empty() {
        return Err(UsageError("no checks selected".into()));
    }
    if checks.contains(&Check::Jets) && args.jet_order < MIN_JET_ORDER {
        return Err(UsageError(format!(
            "--jet-order must be at least {MIN_JET_ORDER} for the jet checks, got {}",
            args.jet_order
        )));
    }
    let exceptional = matches!(series, Series::E6 | Series::E7);
    if exceptional && !args.allow_slow {
        if let Some(c) = checks.iter().find(|c| c.slow_on_exceptional()) {
            return Err(UsageError(format!("{c:?} on {series} is slow; pass --allow-slow")));
        }
    }
    Ok(RunConfig {
        series,
        rank,
        nodes,
        checks,
        exactness: args.exactness,
        jet_order: args.jet_order,
        seed: args.seed,
        parallel: args.parallel,
        exhaustive: args.exhaustive,
        negative_control: args.negative_control,
    })
}

/// Progress sink for long runs.
pub trait Progress {
    fn finished(&mut self, node: usize, cert: &Certificate);
}

impl Progress for () {
    fn finished(&mut self, _: usize, _: &Certificate) {}
}

/// Runs every requested check. `timing` keeps the measured times.
pub fn cmd_verify(cfg: &RunConfig, timing: bool, progress: &mut (dyn Progress + Send)) -> Result<Report, UsageError> {
    let mut run = move || -> Result<Vec<AlgebraReport>, UsageError> {
        cfg.nodes
            .iter()
            .map(|&node| {
                let mut alg = algebra(cfg.series, cfg.rank, node)?;
                if cfg.negative_control {
                    alg = corrupt(&alg);
                }
                match cfg.exactness {
                    Exactness::ExactRational => verify_algebra::<Rational>(&alg, cfg, progress),
                    Exactness::Float => verify_algebra::<f64>(&alg, cfg, progress),
                }
            })
            .collect()
    };
    let mut algebras = match cfg.parallel {
        Some(threads) => rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| UsageError(e.to_string()))?
            .install(run)?,
        None => run()?,
    };
    if !timing {
        for a in &mut algebras {
            for c in &mut a.certificates {
                c.elapsed_us = 0;
            }
        }
    }
    let pass = algebras.iter().all(|a| a.pass);
    Ok(Report {
        tool: "holocert".into(),
        version: env!("CARGO_PKG_VERSION").into(),
        config: cfg.clone(),
        algebras,
        certified: cfg.exactness == Exactness::ExactRational,
        pass,
    })
}

/// `[h_1, x] += x` for the first basis vector `x` of `g_-1`.
pub fn corrupt(alg: &GradedLieAlgebra) -> GradedLieAlgebra {
    let x = alg.indices_of_grade(-1)[0];
    alg.with_corrupted_constant(0, x, x, 1)
}

fn verify_algebra<S: Scalar>(
    alg: &GradedLieAlgebra,
    cfg: &RunConfig,
    progress: &mut (dyn Progress + Send),
) -> Result<AlgebraReport, UsageError> {
    let label = SeriesLabel::new(cfg.series, cfg.rank)?;
    let node = alg.node();
    let opts = CertifyOptions {
        early_exit: !cfg.exhaustive,
        parallel: cfg.parallel.is_some(),
    };
    let mut out = AlgebraReport {
        series: cfg.series,
        rank: cfg.rank,
        node,
        row: catalog::entry(label, node)?,
        dims: Dims::of(alg),
        structure: Vec::new(),
        certificates: Vec::new(),
        witnesses: Vec::new(),
        spot_checks: Vec::new(),
        pass: true,
    };
    let mut push = |out: &mut AlgebraReport, c: Certificate| {
        progress.finished(node, &c);
        out.certificates.push(c);
    };
    for &check in &cfg.checks {
        match check {
            Check::Structure => out.structure = structure_report(alg).checks,
            Check::Lemma1 => {
                for symmetric in [true, false] {
                    push(&mut out, lemma1_certify::<S>(alg, symmetric, opts).certificate);
                }
                let center = lemma1_center_witness::<S>(alg)?;
                out.witnesses.push(WitnessCheck {
                    check: "lemma1-center".into(),
                    description: format!(
                        "B(dP(X{}, X{}), E) with P(X{}) = Z{}",
                        center.x + 1,
                        center.y + 1,
                        center.x + 1,
                        center.y + 1
                    ),
                    value: scalar_string(&center.value),
                    pass: center.pass(),
                });
                for ideal in alg.simple_ideals::<S>() {
                    let w = lemma1_ideal_witness(alg, &ideal)?;
                    out.witnesses.push(WitnessCheck {
                        check: "lemma1-ideal".into(),
                        description: format!("ideal on nodes {:?}, beta = alpha_{}", ideal.nodes, w.beta),
                        value: format!("e_beta {}, e_-beta {}", scalar_string(&w.plus), scalar_string(&w.minus)),
                        pass: w.pass(),
                    });
                }
            }
            Check::Lemma2 => {
                let n = alg.dim_of_grade(-1);
                for symmetric in [true, false] {
                    let lopts = Lemma2Options {
                        certify: opts,
                        ..Lemma2Options::default()
                    };
                    let r = lemma2_certify::<S>(n, symmetric, lopts)?;
                    out.spot_checks.extend(r.spot_checks);
                    push(&mut out, r.certificate);
                }
            }
            Check::Theorem => {
                for exact in [true, false] {
                    push(&mut out, theorem_certify::<S>(alg, exact, opts).certificate);
                }
            }
            Check::Jets => {
                let chart = ModelChart::<S>::new(alg, IDENTITY_ORDER)?;
                let upsilon = chart.random_upsilon(cfg.seed, 0, IDENTITY_DEGREE)?;
                let identity = chart.check_curvature_identity(&upsilon)?;
                out.witnesses.push(WitnessCheck {
                    check: "jets-curvature-identity".into(),
                    description: format!(
                        "R = dP for random one-form, seed {}, compared to order {}",
                        cfg.seed, identity.compared_order
                    ),
                    value: format!("{} mismatches", identity.mismatches.len()),
                    pass: identity.pass(),
                });
                for exact in [true, false] {
                    push(&mut out, holonomy_span_jets::<S>(alg, exact, cfg.jet_order, opts)?.certificate);
                }
            }
        }
    }
    out.pass = out.structure.iter().all(CheckOutcome::pass)
        && out.certificates.iter().all(|c| c.pass)
        && out.witnesses.iter().all(|w| w.pass)
        && out.spot_checks.iter().all(|s| s.ok);
    Ok(out)
}

fn scalar_string<S: Scalar>(s: &S) -> String {
    format!("{s}")
}

pub fn render_list(r: &ListReport) -> String {
    let mut s = String::new();
    for f in &r.families {
        let _ = writeln!(
            s,
            "{:<3} rank {:<5} node {:<9} {:<20} g0 = {:<20} g-1 = {:<14} dim {}",
            f.series.to_string(),
            f.ranks,
            f.nodes,
            f.algebra,
            f.g0,
            f.g_minus,
            f.dim_minus
        );
    }
    for e in &r.entries {
        let _ = writeln!(
            s,
            "{} node {}: {}, g0 = {}, g-1 = {} (dim {})",
            display_label(e.series, e.rank),
            e.node,
            e.algebra,
            e.g0,
            e.g_minus,
            e.dim_minus
        );
    }
    for u in &r.ungraded {
        let _ = writeln!(s, "{}: {}", u.series, u.note);
    }
    let _ = writeln!(s, "complete: {}", r.complete);
    s
}

pub fn render_report(r: &Report) -> String {
    let mut s = String::new();
    for a in &r.algebras {
        let d = &a.dims;
        let _ = writeln!(
            s,
            "{} node {}  {}  g0 = {}  g-1 = {}",
            display_label(a.series, a.rank),
            a.node,
            a.row.algebra,
            a.row.g0,
            a.row.g_minus
        );
        let _ = writeln!(
            s,
            "  dims g {} g-1 {} g0 {} g0ss {} ideals {:?}",
            d.g, d.g_minus, d.g0, d.g0_ss, d.ideals
        );
        for c in &a.structure {
            let _ = writeln!(s, "  [{}] structure {} ({} cases)", mark(c.pass()), c.name, c.cases);
        }
        for c in &a.certificates {
            let _ = write!(
                s,
                "  [{}] {} {}/{} {} ({} witnesses, {} generators)",
                mark(c.pass),
                c.check,
                c.achieved_dim,
                c.target_dim,
                c.target,
                c.witnesses.len(),
                c.generators_consumed
            );
            if let Some(x) = c.cross_check {
                let _ = write!(s, " cross-check {x}");
            }
            if c.elapsed_us > 0 {
                let _ = write!(s, " {:.3}s", c.elapsed_us as f64 / 1e6);
            }
            s.push('\n');
        }
        for w in &a.witnesses {
            let _ = writeln!(s, "  [{}] {} {}: {}", mark(w.pass), w.check, w.description, w.value);
        }
        if !a.spot_checks.is_empty() {
            let ok = a.spot_checks.iter().filter(|c| c.ok).count();
            let _ = writeln!(s, "  spot checks {ok}/{}", a.spot_checks.len());
        }
    }
    if !r.certified {
        let _ = writeln!(s, "float mode: nothing certified");
    }
    let _ = writeln!(s, "overall: {}", if r.pass { "PASS" } else { "FAIL" });
    s
}

fn display_label(series: Series, rank: usize) -> String {
    SeriesLabel { series, rank }.to_string()
}

fn mark(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "FAIL"
    }
}

/// Exit status for a finished report.
pub fn exit_code(r: &Report) -> i32 {
    if r.pass {
        EXIT_PASS
    } else {
        EXIT_FAIL
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn node_specs() {
        assert_eq!("all".parse::<NodeSpec>(), Ok(NodeSpec::All));
        assert_eq!("27dim".parse::<NodeSpec>(), Ok(NodeSpec::Dim27));
        assert_eq!("3".parse::<NodeSpec>(), Ok(NodeSpec::Node(3)));
        assert!("x".parse::<NodeSpec>().is_err());
    }

    #[test]
    fn check_sets() {
        let c: CheckSet = "theorem, lemma1,lemma1".parse().unwrap();
        assert_eq!(c.0, vec![Check::Lemma1, Check::Theorem]);
        assert_eq!("all".parse::<CheckSet>().unwrap().0, Check::ALL.to_vec());
        assert!("lemma3".parse::<CheckSet>().is_err());
    }

    #[test]
    fn report_round_trip() {
        let cli = Cli::parse_from(["holocert", "verify", "--series", "B", "--rank", "2", "--checks", "structure,lemma1"]);
        let Command::Verify(args) = cli.command else {
            unreachable!()
        };
        let cfg = resolve(&args).unwrap();
        assert_eq!(cfg.nodes, vec![1]);
        let r = cmd_verify(&cfg, false, &mut ()).unwrap();
        assert!(r.pass);
        let back: Report = serde_json::from_str(&serde_json::to_string(&r).unwrap()).unwrap();
        assert_eq!(back, r);
        assert_eq!(exit_code(&r), EXIT_PASS);
    }

    #[test]
    fn slow_targets_need_opt_in() {
        let cli = Cli::parse_from(["holocert", "verify", "--series", "E7", "--checks", "jets"]);
        let Command::Verify(args) = cli.command else {
            unreachable!()
        };
        assert!(resolve(&args).is_err());
    }
}
