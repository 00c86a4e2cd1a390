//! Command-line front end. [`run`] takes the arguments and output streams so
//! tests can drive it in-process.

use std::collections::BTreeSet;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use coxcay::autgamma::pointwise_stabilizer;
use coxcay::cayley::ExportFormat;
use coxcay::classifier::{classify, find_good_separating_set, good_separating_set_for_side, verify_good_sep};
use coxcay::localaction::{count_coset_configurations, parse_configuration, star_condition_violations, synthesize};
use coxcay::oracle::enumerate_ball_autos;
use coxcay::{CayleyBall, Coxeter, DefiningGraph, Limits};

#[derive(Parser)]
#[command(name = "coxcay", version, about = "Automorphisms of Cayley graphs of Coxeter groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether the automorphism group of the Cayley graph is discrete.
    Classify { file: PathBuf },
    /// Print a ball of the Cayley graph.
    Ball {
        file: PathBuf,
        #[arg(long)]
        radius: usize,
        /// Center as a space-separated word; the identity by default.
        #[arg(long)]
        center: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// List the weight-preserving symmetries of the defining graph.
    Autgamma {
        file: PathBuf,
        /// Comma-separated vertices to fix pointwise.
        #[arg(long)]
        fix: Option<String>,
    },
    /// Find a good separating set, if there is one.
    Goodsep { file: PathBuf },
    /// Build the ball automorphism realizing a configuration.
    Synth {
        file: PathBuf,
        #[arg(long)]
        radius: usize,
        #[arg(long)]
        config: PathBuf,
    },
    /// Enumerate every automorphism of a ball by brute force.
    Oracle {
        file: PathBuf,
        #[arg(long)]
        radius: usize,
        #[arg(long)]
        fix_center: bool,
    },
    /// Count the distinct automorphisms coming from coset configurations.
    CountConfigs {
        file: PathBuf,
        /// Comma-separated vertices of the side.
        #[arg(long)]
        gamma1: String,
        #[arg(long)]
        radius: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Dot,
}

/// Failure of a subcommand on valid arguments. Exit code 1.
struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn load_graph(path: &Path, limits: &Limits) -> Result<DefiningGraph, Failure> {
    DefiningGraph::parse_with_max_weight(&read(path)?, limits.max_weight)
        .map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn group(g: DefiningGraph, limits: &Limits) -> Arc<Coxeter> {
    Arc::new(Coxeter::with_limits(g, *limits))
}

fn ball(group: &Arc<Coxeter>, radius: usize) -> Result<Arc<CayleyBall>, Failure> {
    Ok(Arc::new(CayleyBall::around_identity(group.clone(), radius)?))
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("json value") + "\n"
}

fn execute(command: Command, limits: &Limits) -> Result<String, Failure> {
    match command {
        Command::Classify { file } => {
            let g = load_graph(&file, limits)?;
            Ok(pretty(&classify(&g).to_json(&g)))
        }
        Command::Ball {
            file,
            radius,
            center,
            format,
        } => {
            let grp = group(load_graph(&file, limits)?, limits);
            let center = match center {
                Some(word) => grp.parse_element(&word)?,
                None => grp.parse_element("")?,
            };
            let b = CayleyBall::build(grp, radius, center)?;
            Ok(match format {
                Format::Json => b.export(ExportFormat::Json) + "\n",
                Format::Dot => b.export(ExportFormat::Dot),
            })
        }
        Command::Autgamma { file, fix } => {
            let g = load_graph(&file, limits)?;
            let fixed = match &fix {
                Some(list) => g.parse_vertex_list(list)?,
                None => Default::default(),
            };
            let autos = pointwise_stabilizer(&g, &fixed);
            Ok(pretty(&json!({
                "fix": g.format_set(&fixed),
                "order": autos.len(),
                "automorphisms": autos.iter().map(|a| a.to_json(&g)).collect::<Vec<_>>(),
            })))
        }
        Command::Goodsep { file } => {
            let g = load_graph(&file, limits)?;
            let found = find_good_separating_set(&g).map(|gs| {
                json!({
                    "S": g.format_set(&gs.separating),
                    "gamma1": g.format_set(&gs.side),
                    "alpha": gs.alpha.to_json(&g),
                    "verified": verify_good_sep(&g, &gs.separating, &gs.side, &gs.alpha),
                })
            });
            Ok(pretty(&json!({ "good_separating_set": found })))
        }
        Command::Synth { file, radius, config } => {
            let grp = group(load_graph(&file, limits)?, limits);
            let b = ball(&grp, radius)?;
            let text = read(&config)?;
            let cfg = parse_configuration(b.clone(), &text).map_err(|e| Failure(format!("{}: {e}", config.display())))?;
            let violations = star_condition_violations(&cfg);
            if !violations.is_empty() {
                let edges: Vec<String> = violations
                    .iter()
                    .map(|&(u, v)| format!("{{{}, {}}}", show(&b, u), show(&b, v)))
                    .collect();
                return Err(Failure(format!(
                    "configuration violates the star condition on {} edge(s): {}",
                    edges.len(),
                    edges.join(" ")
                )));
            }
            let alpha = synthesize(&cfg)?;
            let mut doc = alpha.to_json();
            doc["radius"] = json!(radius);
            doc["vertices"] = json!(b.len());
            Ok(pretty(&doc))
        }
        Command::Oracle {
            file,
            radius,
            fix_center,
        } => {
            let grp = group(load_graph(&file, limits)?, limits);
            let b = ball(&grp, radius)?;
            let fix = if fix_center { BTreeSet::from([0]) } else { BTreeSet::new() };
            let autos = enumerate_ball_autos(&b, &fix)?;
            Ok(pretty(&json!({
                "radius": radius,
                "vertices": b.len(),
                "fix_center": fix_center,
                "count": autos.len(),
                "automorphisms": autos.iter().map(|a| a.to_json()["map"].clone()).collect::<Vec<_>>(),
            })))
        }
        Command::CountConfigs { file, gamma1, radius } => {
            let g = load_graph(&file, limits)?;
            let side = g.parse_vertex_list(&gamma1)?;
            let gs = good_separating_set_for_side(&g, &side).ok_or_else(|| {
                Failure(format!("{:?} is not the side of a good separating set", g.format_set(&side)))
            })?;
            let grp = group(g.clone(), limits);
            let b = ball(&grp, radius)?;
            let count = count_coset_configurations(&b, &gs.side, &gs.alpha)?;
            let mut doc = count.to_json(&grp);
            doc["S"] = json!(g.format_set(&gs.separating));
            doc["gamma1"] = json!(g.format_set(&gs.side));
            doc["nu"] = gs.alpha.to_json(&g);
            doc["radius"] = json!(radius);
            Ok(pretty(&doc))
        }
    }
}

fn show(b: &CayleyBall, v: usize) -> String {
    let name = b.name(v);
    if name.is_empty() {
        "ε".into()
    } else {
        name
    }
}

/// Runs the command line `args` (program name first) and returns the exit
/// code: 0 on success, 1 when the command fails, 2 on a usage error.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(cli.command, &Limits::from_env()) {
        Ok(text) => {
            let _ = out.write_all(text.as_bytes());
            0
        }
        Err(Failure(message)) => {
            let _ = writeln!(err, "error: {message}");
            1
        }
    }
}
