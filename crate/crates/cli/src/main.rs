//! Command-line front end for the partition laboratory.
//!
//! One subcommand per operation; all randomized runs are reproducible
//! from `--seed`. Exit status 0 on success, 1 when a verification run
//! finds violations, 2 on usage errors (including unparsable input).

use std::fmt::Write as _;
use std::io::BufRead;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use semilab::expr::{format_rational as fmt_rat, parse_real};
use semilab::group::{
    find_covers, verify_cover_bounds, verify_group, FiniteGroup, DEFAULT_ORDER_BOUND,
};
use semilab::hamel::HamelReal;
use semilab::interval::parse_union;
use semilab::leading::{classify_leading, verify_leading, Kappa};
use semilab::mult::{
    atom_product, enumerate_closed_generator_unions, is_mult_closed, is_triple_mult_closed,
    mult_classify, verify_mult, Atom, PosRealExp,
};
use semilab::partition::{classify, same_ray, split_below_top, verify_hamel,
    verify_partition_sample};
use semilab::report::Report;
use semilab::sumset::{
    cantor_stage, even_sum_halfline, is_additively_closed, is_triple_closed, minkowski_sum,
    n_fold, verify_sumset,
};
use semilab::SampleConfig;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Records,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "semilab",
    about = "Exact-arithmetic laboratory for additive semigroup partitions of the real line",
    version
)]
struct Cli {
    /// Seed for every randomized run.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Sample count per property.
    #[arg(long, global = true, default_value_t = 1000)]
    count: u64,
    /// Largest piece index drawn by the samplers.
    #[arg(long, global = true, default_value_t = 8)]
    max_index: u32,
    /// Largest number of terms per sampled real.
    #[arg(long, global = true, default_value_t = 6)]
    max_terms: u32,
    /// Largest point string length drawn.
    #[arg(long, global = true, default_value_t = 6)]
    max_point_len: u32,
    /// Bound on sampled numerators and denominators.
    #[arg(long, global = true, default_value_t = 50)]
    coeff_bound: u32,
    /// Bound on finite group orders.
    #[arg(long, global = true, default_value_t = DEFAULT_ORDER_BOUND)]
    group_bound: usize,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Label symbolic reals by their additive partition piece.
    Classify {
        #[arg(allow_hyphen_values = true)]
        exprs: Vec<String>,
    },
    /// Split a nonzero real into below-top and top-piece parts.
    Split {
        #[arg(allow_hyphen_values = true)]
        exprs: Vec<String>,
    },
    /// Label reals by the kappa-piece leading-coordinate decomposition.
    Prop11 {
        /// Piece cap: a positive integer or "all".
        #[arg(long, default_value = "3")]
        kappa: String,
        #[arg(allow_hyphen_values = true)]
        exprs: Vec<String>,
    },
    /// Decide whether two reals lie on the same positive rational ray.
    Ray {
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(allow_hyphen_values = true)]
        y: String,
    },
    /// Minkowski sum of two interval unions.
    Sumset { a: String, b: String },
    /// n-fold sum (n)A of an interval union.
    Nfold { n: u32, a: String },
    /// Certified halfline threshold of the even-sum union of A.
    Halfline { a: String },
    /// 2-fold and 3-fold additive closure of an interval union.
    Closed { a: String },
    /// Self-sum of the stage-n Cantor approximant.
    CantorSum { n: u32 },
    /// Product of two multiplicative atoms.
    Atoms { a: String, b: String },
    /// The ten generator unions closed under multiplication.
    Enum10,
    /// Classify the positive real exp(EXPR) multiplicatively.
    Multclassify {
        #[arg(allow_hyphen_values = true)]
        exprs: Vec<String>,
    },
    /// List all subgroups of a finite abelian group.
    Subgroups { group: String },
    /// List the minimal essentially disjoint covers of a group.
    Covers { group: String },
    /// Verify the counting inequalities on every cover of a group.
    Bounds { group: String },
    /// Run the property suite of a module (or "all").
    Verify { module: String },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(status) => status,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn sample_config(cli: &Cli) -> SampleConfig {
    SampleConfig {
        seed: cli.seed,
        count: cli.count,
        max_terms: cli.max_terms,
        max_index: cli.max_index,
        max_point_len: cli.max_point_len,
        coeff_bound: cli.coeff_bound,
    }
}

/// Expression arguments, or stdin lines when none are given.
fn gather_inputs(exprs: &[String]) -> Result<Vec<String>, String> {
    if !exprs.is_empty() {
        return Ok(exprs.to_vec());
    }
    let mut lines = Vec::new();
    for line in std::io::stdin().lock().lines() {
        let line = line.map_err(|e| e.to_string())?;
        if !line.trim().is_empty() {
            lines.push(line);
        }
    }
    Ok(lines)
}

fn parse_reals(exprs: &[String]) -> Result<Vec<HamelReal>, String> {
    gather_inputs(exprs)?
        .iter()
        .map(|src| parse_real(src).map_err(|e| format!("{src:?}: {e}")))
        .collect()
}

fn run(cli: &Cli) -> Result<ExitCode, String> {
    match &cli.command {
        Command::Classify { exprs } => {
            for x in parse_reals(exprs)? {
                println!("{}", classify(&x));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Split { exprs } => {
            for x in parse_reals(exprs)? {
                match split_below_top(&x) {
                    None => return Err("split needs a nonzero real".into()),
                    Some((d, e)) => {
                        println!("d {d}");
                        println!("e {e}");
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Prop11 { kappa, exprs } => {
            let kappa = parse_kappa(kappa)?;
            for x in parse_reals(exprs)? {
                println!("{}", classify_leading(&x, kappa));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Ray { x, y } => {
            let x = parse_real(x).map_err(|e| e.to_string())?;
            let y = parse_real(y).map_err(|e| e.to_string())?;
            println!("{}", same_ray(&x, &y));
            Ok(ExitCode::SUCCESS)
        }
        Command::Sumset { a, b } => {
            let a = parse_union(a).map_err(|e| e.to_string())?;
            let b = parse_union(b).map_err(|e| e.to_string())?;
            println!("{}", minkowski_sum(&a, &b));
            Ok(ExitCode::SUCCESS)
        }
        Command::Nfold { n, a } => {
            if *n == 0 {
                return Err("n must be at least 1".into());
            }
            let a = parse_union(a).map_err(|e| e.to_string())?;
            println!("{}", n_fold(&a, *n));
            Ok(ExitCode::SUCCESS)
        }
        Command::Halfline { a } => {
            let a = parse_union(a).map_err(|e| e.to_string())?;
            let res = even_sum_halfline(&a).map_err(|e| e.to_string())?;
            println!("t={} certified={}", fmt_rat(&res.threshold), res.certified);
            Ok(ExitCode::SUCCESS)
        }
        Command::Closed { a } => {
            let a = parse_union(a).map_err(|e| e.to_string())?;
            println!(
                "add2={} add3={}",
                is_additively_closed(&a),
                is_triple_closed(&a)
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::CantorSum { n } => {
            let stage = cantor_stage(*n);
            println!("{}", minkowski_sum(&stage, &stage));
            Ok(ExitCode::SUCCESS)
        }
        Command::Atoms { a, b } => {
            let a = Atom::parse(a).map_err(|e| e.to_string())?;
            let b = Atom::parse(b).map_err(|e| e.to_string())?;
            println!("{}", atom_product(a, b));
            Ok(ExitCode::SUCCESS)
        }
        Command::Enum10 => {
            for s in enumerate_closed_generator_unions() {
                let atoms = s.atoms().map(Atom::interval).collect::<Vec<_>>();
                let union = semilab::IntervalUnion::normalize(atoms);
                debug_assert!(is_mult_closed(s) && is_triple_mult_closed(s));
                println!("{s} = {union}");
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Multclassify { exprs } => {
            for x in parse_reals(exprs)? {
                println!("{}", mult_classify(&PosRealExp::new(x)));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Subgroups { group } => {
            let g = FiniteGroup::parse(group, cli.group_bound).map_err(|e| e.to_string())?;
            for h in g.subgroups() {
                println!("order={} {}", h.order(), h.describe(&g));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Covers { group } => {
            let g = FiniteGroup::parse(group, cli.group_bound).map_err(|e| e.to_string())?;
            let covers = find_covers(&g, false);
            if covers.is_empty() {
                println!("no covers");
            }
            for cover in covers {
                println!("{}", cover.describe(&g));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Bounds { group } => {
            let g = FiniteGroup::parse(group, cli.group_bound).map_err(|e| e.to_string())?;
            let covers = find_covers(&g, false);
            if covers.is_empty() {
                println!("no covers");
                return Ok(ExitCode::SUCCESS);
            }
            let mut all_ok = true;
            for cover in covers {
                let b = verify_cover_bounds(&g, &cover).map_err(|e| e.to_string())?;
                all_ok &= b.ok();
                println!("{b}");
            }
            Ok(if all_ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Verify { module } => {
            let cfg = sample_config(cli);
            let reports = run_verify(module, &cfg, cli.group_bound)?;
            let mut all_ok = true;
            for report in &reports {
                all_ok &= report.ok();
                print_report(report, cli.format);
            }
            Ok(if all_ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
    }
}

fn parse_kappa(src: &str) -> Result<Kappa, String> {
    if src == "all" {
        return Ok(Kappa::All);
    }
    let k: u32 = src
        .parse()
        .map_err(|_| format!("kappa must be a positive integer or \"all\", got {src:?}"))?;
    Kappa::new_finite(k).map_err(|e| e.to_string())
}

fn run_verify(
    module: &str,
    cfg: &SampleConfig,
    group_bound: usize,
) -> Result<Vec<Report>, String> {
    let kappas: Vec<u32> = (1..=8).collect();
    let one = |r: Report| Ok(vec![r]);
    match module {
        "hamel" => one(verify_hamel(cfg)),
        "partition" => one(verify_partition_sample(cfg)),
        "leading" => one(verify_leading(cfg, &kappas)),
        "sumset" => one(verify_sumset(cfg)),
        "mult" => one(verify_mult(cfg)),
        "group" => one(verify_group(group_bound)),
        "all" => Ok(vec![
            verify_hamel(cfg),
            verify_partition_sample(cfg),
            verify_leading(cfg, &kappas),
            verify_sumset(cfg),
            verify_mult(cfg),
            verify_group(group_bound),
        ]),
        other => Err(format!(
            "unknown module {other:?}; expected hamel, partition, leading, sumset, mult, group or all"
        )),
    }
}

fn print_report(report: &Report, format: Format) {
    match format {
        Format::Records => print!("{report}"),
        Format::Text => {
            println!(
                "module {}: {} checks, {} violations{}",
                report.module,
                report.checks,
                report.violations.len(),
                if report.ok() { "" } else { " [FAIL]" }
            );
            for c in &report.label_counts {
                let mut line = format!("  {}", c.tag);
                if let Some(a) = c.alpha {
                    let _ = write!(line, " alpha={a}");
                }
                if let Some(k) = c.k {
                    let _ = write!(line, " k={k}");
                }
                println!("{line}: {}", c.n);
            }
            for v in &report.violations {
                println!(
                    "  violation {}: x={} y={} expected={} got={}",
                    v.kind, v.x, v.y, v.expected, v.got
                );
            }
        }
        Format::Json => {
            let value = serde_json::json!({
                "module": report.module,
                "ok": report.ok(),
                "checks": report.checks,
                "label_counts": report.label_counts.iter().map(|c| {
                    serde_json::json!({
                        "tag": c.tag, "alpha": c.alpha, "k": c.k, "n": c.n
                    })
                }).collect::<Vec<_>>(),
                "check_counts": report.check_counts.iter().map(|(name, n)| {
                    serde_json::json!({ "name": name, "n": n })
                }).collect::<Vec<_>>(),
                "violations": report.violations.iter().map(|v| {
                    serde_json::json!({
                        "kind": v.kind, "x": v.x, "y": v.y,
                        "expected": v.expected, "got": v.got
                    })
                }).collect::<Vec<_>>(),
            });
            println!("{value}");
        }
    }
}

