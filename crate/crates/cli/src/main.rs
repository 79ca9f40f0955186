//! `schubert`: root systems, Weyl groups, Hasse diagrams, Chow rings,
//! correspondences and the F4 verification pipeline from the command line.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use schubert_core::correspondence::RingSpec;
use schubert_core::f4pipeline;
use schubert_core::hasse::{build_hasse, build_pieri_diagram};
use schubert_core::{ChowElement, ChowRing, Correspondence, Error, F4Pipeline, FlagVariety, ParabolicSubset, RootSystem, WeylGroup};

#[derive(Parser)]
#[command(name = "schubert", version, about = "Schubert calculus on G/P from Cartan data")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Eps {
    #[value(name = "1")]
    Plus,
    #[value(name = "-1")]
    Minus,
    Both,
}

#[derive(Args, Clone)]
struct Space {
    /// Cartan type, e.g. F4, B3, G2.
    #[arg(long = "type", default_value = "F4")]
    type_name: String,
    /// Nodes of the parabolic, Bourbaki labels, e.g. `2,3,4`; `-` for none.
    #[arg(long, default_value = "-", allow_hyphen_values = true)]
    theta: String,
}

#[derive(Subcommand)]
enum Command {
    /// List the positive roots in the simple-root basis.
    Roots {
        #[arg(long = "type", default_value = "F4")]
        type_name: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Weyl group data.
    Weyl {
        #[command(subcommand)]
        command: WeylCommand,
    },
    /// Hasse diagram of W^theta, or the Chevalley-weighted diagram.
    Hasse {
        #[command(flatten)]
        space: Space,
        #[arg(long, value_enum, default_value = "dot")]
        format: Format,
        /// Weight edges by multiplication with the divisor.
        #[arg(long)]
        pieri: bool,
        /// Point edges towards higher codimension.
        #[arg(long)]
        by_codim: bool,
    },
    /// Chow ring operations.
    Chow {
        #[command(subcommand)]
        command: ChowCommand,
    },
    /// Correspondence operations on JSON files.
    Corr {
        #[command(subcommand)]
        command: CorrCommand,
    },
    /// Run a verification pipeline.
    Verify {
        #[command(subcommand)]
        command: VerifyCommand,
    },
}

#[derive(Subcommand)]
enum WeylCommand {
    Order {
        #[arg(long = "type", default_value = "F4")]
        type_name: String,
    },
    Longest {
        #[command(flatten)]
        space: Space,
    },
    /// Minimal coset representatives W^theta.
    Cosets {
        #[command(flatten)]
        space: Space,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

#[derive(Subcommand)]
enum ChowCommand {
    Basis {
        #[command(flatten)]
        space: Space,
        #[arg(long)]
        codim: Option<usize>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Product of two elements, e.g. `h1^4` `h1^4`.
    Mult {
        #[command(flatten)]
        space: Space,
        x: String,
        y: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Products of the divisor with every basis class.
    Table {
        #[command(flatten)]
        space: Space,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Canonical polynomial lift of a class.
    GiambelliLift {
        #[command(flatten)]
        space: Space,
        class: String,
    },
}

#[derive(Subcommand)]
enum CorrCommand {
    /// `B o A` for correspondence files A and B.
    Compose {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, default_value_t = 0)]
        r#mod: i64,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    Transpose {
        a: PathBuf,
        #[arg(long, default_value_t = 0)]
        r#mod: i64,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    Diagonal {
        #[command(flatten)]
        space: Space,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
}

#[derive(Subcommand)]
enum VerifyCommand {
    /// Decomposition of the motives of G/P1 and G/P4 for F4.
    F4 {
        #[arg(long, value_enum, default_value = "both", allow_hyphen_values = true)]
        eps: Eps,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Also write the JSON report here.
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Include timings in text output.
        #[arg(long)]
        timings: bool,
    },
}

enum Failure {
    Usage(String),
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::UnknownType(_)
            | Error::Parse(_)
            | Error::NodeOutOfRange { .. }
            | Error::CodimOutOfRange { .. }
            | Error::InvalidCartan(_) => Failure::Usage(e.to_string()),
            other => Failure::Verification(other.to_string()),
        }
    }
}

type Outcome = Result<String, Failure>;

fn group(type_name: &str) -> Result<Arc<WeylGroup>, Failure> {
    Ok(Arc::new(WeylGroup::named(type_name)?))
}

fn theta(space: &Space, rank: usize) -> Result<ParabolicSubset, Failure> {
    Ok(ParabolicSubset::parse(&space.theta, rank)?)
}

/// Labeled rings for the two F4 maximal parabolics of interest, plain
/// rings otherwise.
fn ring(space: &Space) -> Result<Arc<ChowRing>, Failure> {
    let g = group(&space.type_name)?;
    let th = theta(space, g.rank())?;
    ring_from_spec(&RingSpec { type_name: g.root_system().name().unwrap_or("custom").to_string(), theta: th.labels() })
}

fn ring_from_spec(spec: &RingSpec) -> Result<Arc<ChowRing>, Failure> {
    if spec.type_name == "F4" && (spec.theta == [2, 3, 4] || spec.theta == [1, 2, 3]) {
        let (x1, x4) = f4pipeline::build_labeled_rings()?;
        return Ok(if spec.theta == [2, 3, 4] { x1 } else { x4 });
    }
    let g = group(&spec.type_name)?;
    let th = ParabolicSubset::new(spec.theta.iter().map(|&l| l.wrapping_sub(1)));
    if let Some(bad) = th.iter().find(|&i| i >= g.rank()) {
        return Err(Failure::Usage(format!("theta node {} out of range", bad.wrapping_add(1))));
    }
    Ok(Arc::new(ChowRing::new(Arc::new(FlagVariety::new(g)), th)?))
}

fn json(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

fn no_dot(format: Format) -> Result<(), Failure> {
    if format == Format::Dot {
        Err(Failure::Usage("dot output is only available for `hasse`".into()))
    } else {
        Ok(())
    }
}

fn roots(type_name: &str, format: Format) -> Outcome {
    no_dot(format)?;
    let rs = RootSystem::named(type_name)?;
    Ok(match format {
        Format::Json => json(&serde_json::json!(rs.positive_roots().iter().map(|r| r.0.clone()).collect::<Vec<_>>())),
        _ => {
            let mut out = String::new();
            for r in rs.positive_roots() {
                writeln!(out, "{r} height {}", r.height()).unwrap();
            }
            writeln!(out, "{} positive roots", rs.positive_roots().len()).unwrap();
            out
        }
    })
}

fn weyl(cmd: &WeylCommand) -> Outcome {
    match cmd {
        WeylCommand::Order { type_name } => Ok(format!("{}\n", group(type_name)?.order())),
        WeylCommand::Longest { space } => {
            let g = group(&space.type_name)?;
            let w = g.longest_element(&match space.theta.as_str() {
                "-" => ParabolicSubset::full(g.rank()),
                _ => theta(space, g.rank())?,
            });
            Ok(format!("{} (length {})\n", g.word_string(&w), w.length()))
        }
        WeylCommand::Cosets { space, format } => {
            no_dot(*format)?;
            let g = group(&space.type_name)?;
            let reps = g.minimal_coset_reps(&theta(space, g.rank())?);
            Ok(match format {
                Format::Json => json(&serde_json::json!(reps
                    .iter()
                    .map(|w| serde_json::json!({"word": g.compact_word(w), "length": w.length()}))
                    .collect::<Vec<_>>())),
                _ => reps.iter().map(|w| format!("{} {}\n", w.length(), g.word_string(w))).collect(),
            })
        }
    }
}

fn hasse(space: &Space, format: Format, pieri: bool, by_codim: bool) -> Outcome {
    if pieri {
        let d = build_pieri_diagram(&*ring(space)?, None)?;
        return Ok(match format {
            Format::Json => json(&d.to_json()),
            Format::Dot => d.to_dot(by_codim),
            Format::Text => d.edges.iter().map(|&(s, t, m)| format!("{} -> {} x{m}\n", d.word(s), d.word(t))).collect(),
        });
    }
    let g = group(&space.type_name)?;
    let h = build_hasse(&g, &theta(space, g.rank())?);
    Ok(match format {
        Format::Json => json(&h.to_json()),
        Format::Dot => h.to_dot(by_codim),
        Format::Text => h.edges.iter().map(|&(s, t, i)| format!("{} -> {} [{}]\n", h.word(s), h.word(t), i + 1)).collect(),
    })
}

fn element_json(r: &ChowRing, x: &ChowElement) -> serde_json::Value {
    let mut terms: Vec<(usize, i64)> = x.terms().collect();
    terms.sort_by_key(|&(k, _)| (r.codim(k), r.label(k)));
    serde_json::json!(terms.iter().map(|&(k, c)| serde_json::json!({"class": r.label(k), "coeff": c})).collect::<Vec<_>>())
}

fn chow(cmd: &ChowCommand) -> Outcome {
    match cmd {
        ChowCommand::Basis { space, codim, format } => {
            no_dot(*format)?;
            let r = ring(space)?;
            let codims: Vec<usize> = match codim {
                Some(c) => vec![*c],
                None => (0..=r.dim()).collect(),
            };
            let mut rows = Vec::new();
            for c in codims {
                for &k in r.basis(c)? {
                    rows.push((c, r.label(k), r.group().compact_word(&r.class(k).min_rep), r.group().compact_word(&r.class(k).rep)));
                }
            }
            Ok(match format {
                Format::Json => json(&serde_json::json!(rows
                    .iter()
                    .map(|(c, l, v, w)| serde_json::json!({"codim": c, "class": l, "min_rep": v, "rep": w}))
                    .collect::<Vec<_>>())),
                _ => rows.iter().map(|(c, l, v, w)| format!("{c:>3} {l:<8} {v} | {w}\n")).collect(),
            })
        }
        ChowCommand::Mult { space, x, y, format } => {
            no_dot(*format)?;
            let r = ring(space)?;
            let p = r.multiply(&r.parse_element(x)?, &r.parse_element(y)?)?;
            Ok(match format {
                Format::Json => json(&serde_json::json!({"lhs": x, "rhs": y, "product": element_json(&r, &p)})),
                _ => format!("{}\n", r.format(&p)),
            })
        }
        ChowCommand::Table { space, format } => {
            no_dot(*format)?;
            let r = ring(space)?;
            let node = (0..r.group().rank())
                .find(|&i| !r.theta().contains(i))
                .ok_or_else(|| Failure::Usage("theta contains every node".into()))?;
            let h = r.divisor_index(node)?;
            let mut rows = Vec::new();
            for k in 0..r.rank() {
                let p = r.chevalley_mult(node, &ChowElement::basis(k))?;
                if !p.is_zero() {
                    rows.push((r.label(h), r.label(k), p));
                }
            }
            Ok(match format {
                Format::Json => json(&serde_json::json!(rows
                    .iter()
                    .map(|(a, b, p)| serde_json::json!({"lhs": a, "rhs": b, "product": element_json(&r, p)}))
                    .collect::<Vec<_>>())),
                _ => {
                    let width = rows.iter().map(|(a, b, _)| a.len() + b.len() + 1).max().unwrap_or(0);
                    rows.iter().map(|(a, b, p)| format!("{:<width$} = {}\n", format!("{a}*{b}"), r.format(p))).collect()
                }
            })
        }
        ChowCommand::GiambelliLift { space, class } => {
            let r = ring(space)?;
            let k = r.find_label(class).ok_or_else(|| Failure::Usage(format!("unknown class `{class}`")))?;
            Ok(format!("{}\n", r.giambelli_lift(k)?))
        }
    }
}

fn read_correspondence(path: &PathBuf) -> Result<Correspondence, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    let value: serde_json::Value = serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    let spec = |key: &str| -> Result<RingSpec, Failure> {
        serde_json::from_value(value[key].clone()).map_err(|e| Failure::Usage(format!("{}: {key}: {e}", path.display())))
    };
    let source = ring_from_spec(&spec("source")?)?;
    let target = ring_from_spec(&spec("target")?)?;
    Ok(Correspondence::from_json(&value, source, target)?)
}

fn emit_correspondence(c: &Correspondence, format: Format) -> Outcome {
    no_dot(format)?;
    Ok(match format {
        Format::Json => json(&c.to_json()),
        _ => format!("{}\n", c.format()),
    })
}

fn corr(cmd: &CorrCommand) -> Outcome {
    match cmd {
        CorrCommand::Compose { a, b, r#mod, format } => {
            let (a, b) = (read_correspondence(a)?, read_correspondence(b)?);
            emit_correspondence(&b.compose(&a)?.mod_reduce(*r#mod), *format)
        }
        CorrCommand::Transpose { a, r#mod, format } => {
            emit_correspondence(&read_correspondence(a)?.transpose().mod_reduce(*r#mod), *format)
        }
        CorrCommand::Diagonal { space, format } => emit_correspondence(&Correspondence::diagonal(&ring(space)?), *format),
    }
}

fn verify(cmd: &VerifyCommand) -> Result<(String, bool), Failure> {
    let VerifyCommand::F4 { eps, format, report, jobs, timings } = cmd;
    no_dot(*format)?;
    let eps: Vec<i64> = match eps {
        Eps::Plus => vec![1],
        Eps::Minus => vec![-1],
        Eps::Both => f4pipeline::EPSILONS.to_vec(),
    };
    let pipeline = F4Pipeline::new()?;
    let result = pipeline.run_with_jobs(&eps, (*jobs).max(1));
    if let Some(path) = report {
        std::fs::write(path, json(&result.to_json())).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    }
    let out = match format {
        Format::Json => json(&result.to_json()),
        _ => result.to_text(*timings),
    };
    Ok((out, result.passed()))
}

fn run(cli: Cli) -> Result<(String, bool), Failure> {
    let ok = |s: String| (s, true);
    match &cli.command {
        Command::Roots { type_name, format } => roots(type_name, *format).map(ok),
        Command::Weyl { command } => weyl(command).map(ok),
        Command::Hasse { space, format, pieri, by_codim } => hasse(space, *format, *pieri, *by_codim).map(ok),
        Command::Chow { command } => chow(command).map(ok),
        Command::Corr { command } => corr(command).map(ok),
        Command::Verify { command } => verify(command),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((out, passed)) => {
            print!("{out}");
            if passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Verification(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
