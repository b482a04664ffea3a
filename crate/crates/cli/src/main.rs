//! `skewring`: decide commutativity of antisymmetric group-ring elements and
//! run the verification suites.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand};

use skewring_core::classify::Classifier;
use skewring_core::group::{
    parse_cayley_table, realize_text, subgroup_closure, FiniteGroup, Subgroup, DEFAULT_COSET_LIMIT,
};
use skewring_core::groupring::is_skew_commutative;
use skewring_core::harness::audit::{audit_commutative_instance, AuditError};
use skewring_core::harness::census::census;
use skewring_core::harness::groups::named_presentation;
use skewring_core::harness::paper::verify_paper;
use skewring_core::harness::report::{emit_census, emit_paper, Format};
use skewring_core::orient::{enumerate_kernels, quotient_rank, Orientation};
use skewring_core::ring::{CoeffRing, RingClass};

const EXIT_NEGATIVE: u8 = 3;
const EXIT_USAGE: u8 = 1;
const EXIT_INPUT: u8 = 2;

#[derive(Parser)]
#[command(name = "skewring", version, about = "Commutativity of antisymmetric elements in oriented group rings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct GroupArgs {
    /// Presentation text, a file holding a presentation or Cayley table, or a
    /// name such as Q8, D4, S3, G[16,8]
    #[arg(long)]
    group: String,

    /// Maximum number of live cosets during enumeration
    #[arg(long, default_value_t = DEFAULT_COSET_LIMIT)]
    coset_limit: usize,
}

#[derive(clap::Args)]
struct InstanceArgs {
    #[command(flatten)]
    group: GroupArgs,

    /// Comma-separated words generating the kernel, e.g. "a^2, a*b"
    #[arg(long)]
    kernel: String,
}

#[derive(clap::Args)]
struct OutputArgs {
    #[arg(long, default_value = "plain", value_parser = parse_format)]
    format: Format,

    /// Write the report here instead of standard output
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Decide commutativity by brute force (exit 0 commutative, 3 not)
    Check {
        #[command(flatten)]
        instance: InstanceArgs,
        #[arg(long, default_value = "z", value_parser = parse_ring)]
        ring: CoeffRing,
    },
    /// List every index-2 subgroup
    Kernels {
        #[command(flatten)]
        group: GroupArgs,
    },
    /// Name the matching case of the classification
    Classify {
        #[command(flatten)]
        instance: InstanceArgs,
        #[arg(long, value_parser = parse_ring_class)]
        ringclass: RingClass,
    },
    /// Reproduce the published kernel partitions
    VerifyPaper {
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Compare brute force with the classifier over a family of groups
    Census {
        #[arg(long, default_value_t = 2)]
        max_rank: u32,
        #[arg(long, default_value = "z,z/4,z/8", value_parser = parse_ring_list)]
        rings: RingList,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Check necessary conditions on a commutative instance
    Audit {
        #[command(flatten)]
        instance: InstanceArgs,
        #[arg(long, default_value = "z", value_parser = parse_ring)]
        ring: CoeffRing,
    },
}

#[derive(Clone)]
struct RingList(Vec<CoeffRing>);

fn parse_format(s: &str) -> Result<Format, String> {
    s.parse()
}

fn parse_ring(s: &str) -> Result<CoeffRing, String> {
    s.parse().map_err(|e: skewring_core::ring::RingError| e.to_string())
}

fn parse_ring_class(s: &str) -> Result<RingClass, String> {
    s.parse()
}

fn parse_ring_list(s: &str) -> Result<RingList, String> {
    let rings = s
        .split(',')
        .filter(|t| !t.trim().is_empty())
        .map(parse_ring)
        .collect::<Result<Vec<_>, _>>()?;
    if rings.is_empty() {
        return Err("no rings given".into());
    }
    Ok(RingList(rings))
}

/// An error with the exit code it maps to.
struct Failure {
    code: u8,
    error: anyhow::Error,
}

trait OrExit<T> {
    fn or_exit(self, code: u8) -> Result<T, Failure>;
}

impl<T, E: Into<anyhow::Error>> OrExit<T> for Result<T, E> {
    fn or_exit(self, code: u8) -> Result<T, Failure> {
        self.map_err(|e| Failure {
            code,
            error: e.into(),
        })
    }
}

fn load_group(args: &GroupArgs) -> anyhow::Result<FiniteGroup> {
    let spec = args.group.trim();
    if let Some(p) = named_presentation(spec) {
        return realize_text(p, args.coset_limit).with_context(|| format!("realizing {spec}"));
    }
    let path = Path::new(spec);
    if !spec.starts_with('<') && path.is_file() {
        let text = fs::read_to_string(path).with_context(|| format!("reading {spec}"))?;
        let first = text
            .lines()
            .map(str::trim)
            .find(|l| !l.is_empty() && !l.starts_with('#'))
            .unwrap_or("");
        return if first.starts_with("order") {
            parse_cayley_table(&text).with_context(|| format!("reading Cayley table {spec}"))
        } else {
            realize_text(&text, args.coset_limit).with_context(|| format!("realizing {spec}"))
        };
    }
    if spec.starts_with('<') {
        return realize_text(spec, args.coset_limit).context("realizing presentation");
    }
    Err(anyhow!("{spec:?} is not a presentation, a readable file, or a known group name"))
}

fn load_instance(args: &InstanceArgs) -> anyhow::Result<(Arc<FiniteGroup>, Subgroup)> {
    let g = load_group(&args.group)?;
    let seeds = g
        .parse_elements(&args.kernel)
        .with_context(|| format!("parsing kernel {:?}", args.kernel))?;
    let n = subgroup_closure(&g, &seeds);
    if n.len() * 2 != g.order() {
        return Err(anyhow!(
            "kernel {} has order {} in a group of order {}; it must have index 2",
            n.label(&g),
            n.len(),
            g.order()
        ));
    }
    Ok((Arc::new(g), n))
}

fn write_output(output: &OutputArgs, text: &str) -> Result<(), Failure> {
    match &output.out {
        Some(path) => fs::write(path, text)
            .with_context(|| format!("writing {}", path.display()))
            .or_exit(EXIT_INPUT),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Check { instance, ring } => {
            let (g, n) = load_instance(&instance).or_exit(EXIT_INPUT)?;
            let o = Orientation::new(g.clone(), n.clone()).or_exit(EXIT_INPUT)?;
            let verdict = is_skew_commutative(&o, ring).or_exit(EXIT_INPUT)?;
            println!("group order {}, kernel {}, ring {}", g.order(), n.label(&g), ring);
            match verdict.witness() {
                None => {
                    println!("commutative");
                    Ok(0)
                }
                Some(w) => {
                    println!("not commutative");
                    println!("witness: {}", w.summary());
                    Ok(EXIT_NEGATIVE)
                }
            }
        }
        Command::Kernels { group } => {
            let g = load_group(&group).or_exit(EXIT_INPUT)?;
            let ks = enumerate_kernels(&g);
            println!(
                "group order {}, quotient rank {}, {} kernels",
                g.order(),
                quotient_rank(&g),
                ks.len()
            );
            for k in &ks {
                println!("{}", k.label(&g));
            }
            Ok(0)
        }
        Command::Classify {
            instance,
            ringclass,
        } => {
            let (g, n) = load_instance(&instance).or_exit(EXIT_INPUT)?;
            if g.is_abelian() {
                println!("abelian group (predict: commutative)");
                return Ok(0);
            }
            let classifier = Classifier::new().or_exit(EXIT_INPUT)?;
            match classifier.classify(&g, &n, ringclass).or_exit(EXIT_INPUT)? {
                Some(case) => println!("{case}"),
                None => println!("no case (predict: not commutative)"),
            }
            Ok(0)
        }
        Command::VerifyPaper { output } => {
            let classifier = Classifier::new().or_exit(EXIT_INPUT)?;
            let report = verify_paper(&classifier).or_exit(EXIT_INPUT)?;
            write_output(&output, &emit_paper(&report, output.format))?;
            Ok(if report.passed() { 0 } else { EXIT_NEGATIVE })
        }
        Command::Census {
            max_rank,
            rings,
            output,
        } => {
            let classifier = Classifier::new().or_exit(EXIT_INPUT)?;
            let report = census(max_rank, &rings.0, &classifier).or_exit(EXIT_INPUT)?;
            write_output(&output, &emit_census(&report, output.format))?;
            Ok(if report.passed() { 0 } else { EXIT_NEGATIVE })
        }
        Command::Audit { instance, ring } => {
            let (g, n) = load_instance(&instance).or_exit(EXIT_INPUT)?;
            let findings = match audit_commutative_instance(&g, &n, ring) {
                Ok(f) => f,
                Err(e @ (AuditError::Abelian | AuditError::NotCommutative)) => {
                    return Err(Failure {
                        code: EXIT_INPUT,
                        error: anyhow!("audit precondition failed: {e}"),
                    })
                }
                Err(e) => return Err(e).or_exit(EXIT_INPUT),
            };
            for f in &findings {
                println!(
                    "{:<28} {:<8} {}",
                    f.assertion.as_str(),
                    if f.violated { "VIOLATED" } else { "ok" },
                    f.detail
                );
            }
            Ok(if findings.iter().any(|f| f.violated) {
                EXIT_NEGATIVE
            } else {
                0
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {:#}", f.error);
            ExitCode::from(f.code)
        }
    }
}
