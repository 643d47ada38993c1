use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use toric_crn::linalg::{int_rat, Integer, IntegerMatrix};
use toric_crn::multistat::{extreme_rays, multistat_analyze, MultistatOutcome, DEFAULT_TOLERANCE};
use toric_crn::network::{stoichiometric_matrix, RateAssignment, ReactionNetwork};
use toric_crn::phospho::PhosphoSystem;
use toric_crn::text::{
    network_section, parse_network, parse_rates, render_report, AnalysisReport, MultistatSection,
    MultistatVerdict, NetworkSection, PhosphoSection, RaysSection, ToricSection, ToricStatus,
};
use toric_crn::toric::{toric_analyze, AnalyzeOptions};

const EXIT_INPUT: u8 = 1;

#[derive(Parser, Debug)]
#[command(name = "crn", version, about = "Toric steady states and multistationarity of mass-action networks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Output {
    /// Print the JSON report instead of a text summary.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check Conditions 1-3 and parametrize the positive steady states.
    Analyze {
        network: PathBuf,
        /// Rate file (same as --rates).
        rates_file: Option<PathBuf>,
        #[arg(long, conflicts_with_all = ["rates_file", "unit_rates"])]
        rates: Option<PathBuf>,
        /// Set every rate constant to 1.
        #[arg(long)]
        unit_rates: bool,
        /// Search multipliers x^a * f_i with |a| up to this degree.
        #[arg(long, default_value_t = 0)]
        enlarge_bound: u32,
        #[command(flatten)]
        out: Output,
    },
    /// Analyze the n-site phosphorylation system in closed form.
    Phospho {
        #[arg(value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
        #[arg(long, conflicts_with = "unit_rates", required_unless_present = "unit_rates")]
        rates: Option<PathBuf>,
        #[arg(long)]
        unit_rates: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Decide the capacity for multistationarity and build a witness.
    Multistat {
        network: PathBuf,
        /// Rates at which the partition is computed; two seeded random draws otherwise.
        #[arg(long)]
        rates: Option<PathBuf>,
        /// Integer matrix Z (one row per species); the conservation basis by default.
        #[arg(long = "Z", value_name = "PATH")]
        z: Option<PathBuf>,
        /// Relative tolerance for the witness residuals.
        #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
        tol: f64,
        /// Seed for the probe rate draws.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: Output,
    },
    /// Extreme rays of the steady-state flux cone.
    Rays {
        network: PathBuf,
        #[command(flatten)]
        out: Output,
    },
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn load_network(path: &Path) -> Result<ReactionNetwork> {
    parse_network(&read(path)?).with_context(|| format!("in {}", path.display()))
}

fn load_rates(path: &Path) -> Result<RateAssignment> {
    parse_rates(&read(path)?).with_context(|| format!("in {}", path.display()))
}

/// Whitespace- or comma-separated integers, one matrix row per line.
fn parse_integer_matrix(text: &str) -> Result<IntegerMatrix> {
    let mut rows: Vec<Vec<Integer>> = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let row = line
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<Integer>().with_context(|| format!("line {}: bad integer {t:?}", i + 1)))
            .collect::<Result<Vec<_>>>()?;
        if let Some(first) = rows.first() {
            if first.len() != row.len() {
                bail!("line {}: expected {} entries, found {}", i + 1, first.len(), row.len());
            }
        }
        rows.push(row);
    }
    let cols = rows.first().map_or(0, Vec::len);
    Ok(IntegerMatrix::from_rows(rows, cols))
}

/// Exit status as a function of the report alone.
fn exit_code(report: &AnalysisReport) -> u8 {
    if let Some(m) = &report.results.multistat {
        return match m.verdict {
            MultistatVerdict::Witness => 0,
            MultistatVerdict::NotToric => 2,
            MultistatVerdict::NoCapacity => 3,
            MultistatVerdict::Degenerate => 4,
        };
    }
    if let Some(t) = &report.results.toric {
        return match t.status {
            ToricStatus::Toric => 0,
            ToricStatus::Failed => 2,
        };
    }
    0
}

fn run(cli: Cli) -> Result<(AnalysisReport, bool)> {
    let mut report = AnalysisReport::default();
    let json = match cli.command {
        Command::Analyze {
            network,
            rates_file,
            rates,
            unit_rates,
            enlarge_bound,
            out,
        } => {
            let net = load_network(&network)?;
            let rates = match rates.or(rates_file) {
                Some(p) => load_rates(&p)?,
                None if unit_rates => RateAssignment::unit(&net),
                None => bail!("a rate file or --unit-rates is required"),
            };
            let opts = AnalyzeOptions {
                search_bound: enlarge_bound,
                ..Default::default()
            };
            let analysis = toric_analyze(&net, &rates, &opts)?;
            report.results.network = Some(network_section(&net));
            report.results.toric = Some(analysis.section());
            out.json
        }
        Command::Phospho {
            n,
            rates,
            unit_rates: _,
            out,
        } => {
            let n = n as usize;
            let sys = match rates {
                Some(p) => PhosphoSystem::new(n, load_rates(&p)?)?,
                None => PhosphoSystem::unit(n)?,
            };
            let t = [int_rat(2), int_rat(3), int_rat(5)];
            report.results.network = Some(network_section(&sys.net));
            report.results.phospho = Some(sys.section(&t));
            out.json
        }
        Command::Multistat {
            network,
            rates,
            z,
            tol,
            seed,
            out,
        } => {
            let net = load_network(&network)?;
            let z = match z {
                Some(p) => Some(parse_integer_matrix(&read(&p)?).with_context(|| format!("in {}", p.display()))?),
                None => None,
            };
            let (analysis, note) = match rates {
                Some(p) => (multistat_analyze(&net, &[load_rates(&p)?], z.as_ref(), tol)?, None),
                None => {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    let probes = [RateAssignment::random(&net, &mut rng), RateAssignment::random(&net, &mut rng)];
                    let generic = multistat_analyze(&net, &probes, z.as_ref(), tol)?;
                    match generic.outcome {
                        // Condition 1 can hold on a subvariety of rate space only
                        // (the triangle needs k31 = k32); unit rates lie on many such.
                        MultistatOutcome::NotToric(ref why) => {
                            let unit = multistat_analyze(&net, &[RateAssignment::unit(&net)], z.as_ref(), tol)?;
                            if matches!(unit.outcome, MultistatOutcome::NotToric(_)) {
                                (generic, None)
                            } else {
                                let note = format!(
                                    "not toric at random rates ({why}); result holds on the rate constants where the unit-rate partition persists"
                                );
                                (unit, Some(note))
                            }
                        }
                        _ => (generic, None),
                    }
                }
            };
            let mut section = analysis.section();
            if let Some(note) = note {
                section.reason = Some(match section.reason {
                    Some(r) => format!("{r}; {note}"),
                    None => note,
                });
            }
            report.results.network = Some(network_section(&net));
            report.results.rays = Some(analysis.cone.section());
            report.results.multistat = Some(section);
            out.json
        }
        Command::Rays { network, out } => {
            let net = load_network(&network)?;
            report.results.rays = Some(extreme_rays(&stoichiometric_matrix(&net)).section());
            out.json
        }
    };
    Ok((report, json))
}

fn plain_network(out: &mut String, n: &NetworkSection) {
    let _ = writeln!(
        out,
        "network: {} species, {} complexes, {} reactions, {} linkage classes",
        n.species.len(),
        n.complexes.len(),
        n.reactions,
        n.linkage_classes
    );
    let _ = writeln!(
        out,
        "dim S = {}, deficiency = {}{}, regular = {}",
        n.dim_s,
        n.deficiency,
        if n.formula_valid { "" } else { " (formula not valid)" },
        n.regular
    );
}

fn blocks(p: &[Vec<usize>]) -> String {
    let parts: Vec<String> = p
        .iter()
        .map(|b| format!("{{{}}}", b.iter().map(usize::to_string).collect::<Vec<_>>().join(",")))
        .collect();
    parts.join(" ")
}

fn plain_toric(out: &mut String, t: &ToricSection) {
    match t.status {
        ToricStatus::Toric => {
            let _ = writeln!(out, "toric: yes");
        }
        ToricStatus::Failed => {
            let _ = writeln!(out, "toric: no ({})", t.reason.as_deref().unwrap_or("unknown"));
        }
    }
    for m in &t.multipliers {
        let _ = writeln!(out, "multiplier: x^{:?} * f{}", m.alpha, m.equation);
    }
    if !t.partition.is_empty() {
        let _ = writeln!(out, "partition: {}", blocks(&t.partition));
    }
    for b in &t.binomials {
        let _ = writeln!(out, "binomial: ({})x^{:?} - ({})x^{:?}", b.c1, b.e1, b.c2, b.e2);
    }
    if let Some(p) = &t.parametrization {
        let _ = writeln!(out, "parametrization: w = {}", p.w);
        for row in &p.a {
            let _ = writeln!(out, "  A row: [{}]", row.join(", "));
        }
        if let Some(x) = &p.x_tilde {
            let _ = writeln!(out, "  x~ = ({})", x.join(", "));
        }
        if let Some(x) = &p.x_tilde_float {
            let _ = writeln!(
                out,
                "  x~ ~ {:?} (relative residual {:e})",
                x,
                p.max_relative_residual.unwrap_or(0.0)
            );
        }
    }
}

fn plain_phospho(out: &mut String, p: &PhosphoSection) {
    let _ = writeln!(out, "{}-site phosphorylation", p.n);
    out.push_str(&p.network);
    let _ = writeln!(out, "partition: {}", blocks(&p.partition));
    let _ = writeln!(out, "D = {}", p.d);
    for d in &p.determinants {
        let _ = writeln!(out, "D{} = {}", d.index, d.value);
    }
    let _ = writeln!(out, "x~ = ({})", p.x_tilde.join(", "));
    let _ = writeln!(out, "x(t) at t = ({}): ({})", p.sample_t.join(", "), p.sample_x.join(", "));
}

fn plain_rays(out: &mut String, r: &RaysSection) {
    let _ = writeln!(out, "extreme rays: {}{}", r.rays.len(), if r.degenerate { " (degenerate)" } else { "" });
    for ray in &r.rays {
        let _ = writeln!(out, "  ({})", ray.join(", "));
    }
}

fn plain_multistat(out: &mut String, m: &MultistatSection) {
    match m.verdict {
        MultistatVerdict::Witness => {
            let _ = writeln!(out, "multistationarity: possible");
        }
        MultistatVerdict::NoCapacity => {
            let _ = writeln!(out, "multistationarity: no capacity");
        }
        MultistatVerdict::Degenerate => {
            let _ = writeln!(out, "multistationarity: degenerate cone");
        }
        MultistatVerdict::NotToric => {
            let _ = writeln!(out, "multistationarity: not decided, system is not toric");
        }
    }
    if let Some(reason) = &m.reason {
        let _ = writeln!(out, "  {reason}");
    }
    if let Some(w) = &m.witness {
        let signs: String = w.omega.iter().map(ToString::to_string).collect();
        let _ = writeln!(out, "  orthant: {signs}");
        let _ = writeln!(out, "  x1 = {:?}", w.x1);
        let _ = writeln!(out, "  x2 = {:?}", w.x2);
        let _ = writeln!(out, "  k  = {:?}", w.k);
    }
    if let Some(v) = &m.verification {
        let _ = writeln!(
            out,
            "  verification: {} (residuals {:e}, {:e})",
            if v.passed { "passed" } else { "FAILED" },
            v.residual_x1,
            v.residual_x2
        );
    }
}

fn plain(report: &AnalysisReport) -> String {
    let mut out = String::new();
    let r = &report.results;
    if let Some(n) = &r.network {
        plain_network(&mut out, n);
    }
    if let Some(t) = &r.toric {
        plain_toric(&mut out, t);
    }
    if let Some(p) = &r.phospho {
        plain_phospho(&mut out, p);
    }
    if let Some(rays) = &r.rays {
        plain_rays(&mut out, rays);
    }
    if let Some(m) = &r.multistat {
        plain_multistat(&mut out, m);
    }
    out
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_INPUT)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok((report, json)) => {
            if json {
                println!("{}", render_report(&report));
            } else {
                print!("{}", plain(&report));
            }
            ExitCode::from(exit_code(&report))
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}
