use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use flagcert::blowup::{blow_up, density_trend, erdos_check, theorem2_reduction_demo, BlowupSpec, ErdosVerdict};
use flagcert::certificate::{expression_report, max_density_bound, parse_certificate, verify, Certificate};
use flagcert::flag::{enumerate_flags, pair_density_table, FlagType};
use flagcert::graph::{enumerate_free_graphs, write_graph6, ForbiddenFamily, Graph, Hosts};
use flagcert::linalg::{approx, parse_rational};
use flagcert::sdp::{parse_solver_blocks, round_solution, RoundingOutcome, RoundingPolicy, SdpProblem};

#[derive(Parser)]
#[command(name = "flagcert", version, about = "Exact flag-algebra certificates for density bounds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Family {
    /// Forbidden graphs, comma-separated keywords (k3, c4, ...) or graph6.
    #[arg(long, default_value = "k3")]
    forbid: String,
}

#[derive(Subcommand)]
enum Command {
    /// List the admissible graphs on L vertices, one graph6 per line.
    Enumerate {
        #[arg(long)]
        order: usize,
        #[command(flatten)]
        family: Family,
    },
    /// List the admissible flags of a type.
    Flags {
        /// sigma0, sigma1, sigma2, or a graph6 type graph.
        #[arg(long = "type")]
        ty: String,
        #[arg(long)]
        m: usize,
        #[command(flatten)]
        family: Family,
    },
    /// Pair-density tables of one type over every host.
    Tables {
        #[arg(long = "type")]
        ty: String,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        order: usize,
        #[command(flatten)]
        family: Family,
    },
    /// Symbolic per-host expressions of a certificate.
    Expressions { certificate: PathBuf },
    /// Verify a certificate exactly.
    Verify {
        certificate: PathBuf,
        /// Print only the machine-readable report, as JSON.
        #[arg(long)]
        json: bool,
        /// Annotate values with decimals.
        #[arg(long)]
        approx: bool,
    },
    /// The trivial bound max_H d_A(H).
    Bound {
        #[arg(long)]
        order: usize,
        #[command(flatten)]
        family: Family,
        #[arg(long)]
        target: String,
    },
    /// Blow up a base graph and print it in graph6.
    Blowup {
        #[command(flatten)]
        spec: BlowupArgs,
    },
    /// Compare the pentagon count of a triangle-free graph with (n/5)^5.
    ErdosCheck {
        #[arg(long)]
        graph: String,
        /// Also walk through the blow-up argument.
        #[arg(long)]
        explain: bool,
    },
    /// Induced densities of a target in uniform blow-ups.
    Trend {
        #[arg(long)]
        base: String,
        #[arg(long, default_value = "c5")]
        target: String,
        #[arg(long = "max")]
        n_max: usize,
    },
    /// Write the SDP for a certificate's types in SDPA sparse format.
    EmitSdp {
        certificate: PathBuf,
        /// Write exact coefficients to this file.
        #[arg(long)]
        exact: Option<PathBuf>,
    },
    /// Round solver matrices into an exact certificate.
    Round {
        /// Certificate supplying flag lists, target and claimed bound.
        skeleton: PathBuf,
        /// Solver matrices, one block per type, blank-line separated.
        matrices: PathBuf,
        #[arg(long, value_delimiter = ',', default_value = "625,2500,12500,62500")]
        denominators: Vec<u64>,
        /// Rational μ added as μI when a rounding is not PSD.
        #[arg(long)]
        boost: Option<String>,
        /// Fall back to per-entry rounding with this maximum denominator.
        #[arg(long)]
        fallback: Option<u64>,
        /// Override the claimed bound of the skeleton.
        #[arg(long)]
        claim: Option<String>,
        /// Write the certificate here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct BlowupArgs {
    #[arg(long)]
    base: String,
    #[arg(long, conflicts_with = "factors")]
    factor: Option<usize>,
    #[arg(long, value_delimiter = ',')]
    factors: Option<Vec<usize>>,
}

impl BlowupArgs {
    fn spec(&self) -> Result<BlowupSpec> {
        let base = graph(&self.base)?;
        Ok(match (&self.factors, self.factor) {
            (Some(f), _) => BlowupSpec::new(base, f.clone())?,
            (None, Some(n)) => BlowupSpec::uniform(base, n)?,
            (None, None) => bail!("give --factor or --factors"),
        })
    }
}

fn graph(spec: &str) -> Result<Graph> {
    Graph::from_spec(spec).with_context(|| format!("graph {spec:?}"))
}

fn family(f: &Family) -> Result<ForbiddenFamily> {
    let members = f.forbid.split(',').map(graph).collect::<Result<Vec<_>>>()?;
    ForbiddenFamily::new(members).context("--forbid")
}

fn flag_type(spec: &str) -> Result<FlagType> {
    let ty = match spec {
        "sigma0" => FlagType::three_vertex(0),
        "sigma1" => FlagType::three_vertex(1),
        "sigma2" => FlagType::three_vertex(2),
        other => FlagType::new(graph(other)?),
    };
    ty.context("--type")
}

fn load(path: &Path) -> Result<Certificate> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_certificate(&text).with_context(|| path.display().to_string())
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Enumerate { order, family: f } => {
            for g in enumerate_free_graphs(order, &family(&f)?)? {
                println!("{}", write_graph6(&g));
            }
        }
        Command::Flags { ty, m, family: f } => {
            let basis = enumerate_flags(&flag_type(&ty)?, m, &family(&f)?)?;
            for (i, fl) in basis.flags().iter().enumerate() {
                let labels: Vec<String> = fl.labels().iter().map(|v| (v + 1).to_string()).collect();
                println!("{}\t{}\t{}", i + 1, write_graph6(fl.graph()), labels.join(","));
            }
        }
        Command::Tables { ty, m, order, family: f } => {
            let basis = enumerate_flags(&flag_type(&ty)?, m, &family(&f)?)?;
            let hosts = Hosts::enumerate(order, &family(&f)?)?;
            for (i, h) in hosts.graphs().iter().enumerate() {
                let t = pair_density_table(&basis, h)?;
                println!("host {} {}", i + 1, write_graph6(h));
                for line in t.to_text().lines() {
                    println!("@t\t{}\t{}", i + 1, line.replace(' ', "\t"));
                }
            }
        }
        Command::Expressions { certificate } => {
            print!("{}", expression_report(&load(&certificate)?)?);
        }
        Command::Verify { certificate, json, approx } => {
            let report = verify(&load(&certificate)?)?;
            if json {
                println!("{}", report.to_json_string());
            } else {
                print!("{}", report.render(approx));
            }
            return Ok(report.passed);
        }
        Command::Bound { order, family: f, target } => {
            let b = max_density_bound(order, &family(&f)?, &graph(&target)?)?;
            println!("max_H d_A(H) = {b}");
            println!("@bound\t{b}");
        }
        Command::Blowup { spec } => {
            println!("{}", write_graph6(&blow_up(&spec.spec()?)?));
        }
        Command::ErdosCheck { graph: g, explain } => {
            let g = graph(&g)?;
            let check = erdos_check(&g)?;
            if explain {
                print!("{}", theorem2_reduction_demo(&g)?);
            } else {
                println!("{check}");
            }
            return Ok(check.verdict != ErdosVerdict::Violation);
        }
        Command::Trend { base, target, n_max } => {
            for (n, d) in density_trend(&graph(&base)?, &graph(&target)?, n_max)? {
                println!("{n}\t{d}\t{:.6}", approx(&d));
            }
        }
        Command::EmitSdp { certificate, exact } => {
            let problem = SdpProblem::from_certificate(&load(&certificate)?)?;
            print!("{}", problem.to_sdpa());
            if let Some(path) = exact {
                fs::write(&path, problem.exact_sidecar())
                    .with_context(|| format!("writing {}", path.display()))?;
            }
        }
        Command::Round {
            skeleton,
            matrices,
            denominators,
            boost,
            fallback,
            claim,
            out,
        } => {
            let mut cert = load(&skeleton)?;
            if let Some(c) = claim {
                cert.claimed_bound = parse_rational(&c).context("--claim")?;
            }
            let text = fs::read_to_string(&matrices)
                .with_context(|| format!("reading {}", matrices.display()))?;
            let blocks = parse_solver_blocks(&text)?;
            let policy = RoundingPolicy {
                denominators,
                diagonal_boost: boost
                    .map(|b| parse_rational(&b))
                    .transpose()
                    .context("--boost")?,
                fallback_max_denominator: fallback,
            };
            match round_solution(&blocks, &policy, &cert)? {
                RoundingOutcome::Certified { certificate, report, attempts } => {
                    let json = certificate.to_json();
                    match out {
                        Some(path) => {
                            fs::write(&path, json).with_context(|| format!("writing {}", path.display()))?
                        }
                        None => print!("{json}"),
                    }
                    let last = attempts.last().map(|a| a.label.as_str()).unwrap_or("");
                    eprintln!("certified bound {} with rounding {last}", report.bound);
                }
                RoundingOutcome::Failed(f) => {
                    for a in &f.attempts {
                        println!(
                            "@attempt\t{}\t{}\t{}",
                            a.label,
                            if a.psd { "psd" } else { "not-psd" },
                            a.bound
                        );
                    }
                    if let Some(b) = &f.best_bound {
                        println!("@best\t{b}");
                    }
                    if let Some((block, w)) = &f.witness {
                        let v: Vec<String> = w.vector.iter().map(|x| x.to_string()).collect();
                        println!("@witness\t{}\t{}\t{}", block + 1, v.join(","), w.value);
                    }
                    println!("no rounding verified");
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
