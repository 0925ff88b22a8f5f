use std::io::{Read, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use schouten_core::{
    parse_class, parse_pv, BracketKind, ClassWord, CohClass, Error, Gauge, Heisenberg, PolyVector,
    Rational, TransferTable,
};
use serde::Serialize;

mod selfcheck;

#[derive(Parser, Debug)]
#[command(
    name = "schouten",
    version,
    about = "Schouten brackets, Heisenberg cohomology and L-infinity transfer"
)]
struct Cli {
    /// Parameter `a` of the Euler field D_a, as an exact rational.
    #[arg(long, global = true, default_value = "0", value_parser = parse_rational)]
    a: Rational,

    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Route every bracket through the superfunction implementation.
    #[arg(long, global = true)]
    oracle: bool,

    /// Tie-break used when solving d_x A + d_y B = h.
    #[arg(long, global = true, value_enum, default_value_t = GaugeArg::X)]
    gauge: GaugeArg,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum GaugeArg {
    X,
    Y,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Schouten bracket [A, B].
    Bracket {
        #[arg(value_name = "A")]
        lhs: String,
        #[arg(value_name = "B")]
        rhs: String,
    },
    /// Chevalley-Eilenberg differential [z*dx^dy, A].
    Delta {
        #[arg(value_name = "A")]
        cochain: String,
    },
    /// Whether A is a cocycle.
    Cocycle {
        #[arg(value_name = "A")]
        cochain: String,
    },
    /// Class and primitive of a cocycle.
    Cohom {
        #[arg(value_name = "A")]
        cochain: String,
    },
    /// Induced bracket d2 on two classes.
    D2 { c1: String, c2: String },
    /// Homotopy correction phi2 on two classes.
    Phi2 { c1: String, c2: String },
    /// One step of the transfer recursion on K + 1 classes.
    Formality {
        #[arg(long)]
        order: usize,
        #[arg(required = true)]
        classes: Vec<String>,
    },
    /// Randomized consistency checks.
    Selfcheck {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        samples: usize,
    },
}

fn parse_rational(s: &str) -> Result<Rational, String> {
    s.trim()
        .parse()
        .map_err(|_| format!("expected a rational such as 1/2, got {s:?}"))
}

enum Failure {
    Domain(String),
    Parse(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(p) => Failure::Parse(p.to_string()),
            other => Failure::Domain(other.to_string()),
        }
    }
}

/// Replaces a `-` argument by standard input, read at most once.
struct Inputs {
    stdin: Option<String>,
}

impl Inputs {
    fn resolve(&mut self, arg: &str) -> Result<String, Failure> {
        if arg != "-" {
            return Ok(arg.to_string());
        }
        if self.stdin.is_none() {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| Failure::Domain(format!("reading stdin: {e}")))?;
            self.stdin = Some(buf);
        }
        Ok(self.stdin.clone().unwrap_or_default())
    }

    fn pv(&mut self, arg: &str) -> Result<PolyVector, Failure> {
        let src = self.resolve(arg)?;
        parse_pv(&src).map_err(|e| Failure::Parse(e.to_string()))
    }

    fn class(&mut self, arg: &str) -> Result<CohClass, Failure> {
        Ok(parse_class(&self.resolve(arg)?)?)
    }
}

fn emit<T: Serialize>(json: bool, value: &T, text: impl FnOnce() -> String) -> String {
    if json {
        serde_json::to_string(value).expect("values serialize")
    } else {
        text()
    }
}

fn run(cli: Cli) -> Result<String, Failure> {
    let ctx = Heisenberg::new(cli.a.clone())
        .with_gauge(match cli.gauge {
            GaugeArg::X => Gauge::X,
            GaugeArg::Y => Gauge::Y,
        })
        .with_bracket(if cli.oracle {
            BracketKind::Oracle
        } else {
            BracketKind::Closed
        });
    let mut inputs = Inputs { stdin: None };
    let json = cli.json;

    Ok(match cli.command {
        Command::Bracket { lhs, rhs } => {
            let v = ctx.bracket(&inputs.pv(&lhs)?, &inputs.pv(&rhs)?)?;
            emit(json, &v, || v.to_string())
        }
        Command::Delta { cochain } => {
            let v = ctx.delta(&inputs.pv(&cochain)?)?;
            emit(json, &v, || v.to_string())
        }
        Command::Cocycle { cochain } => {
            let c = ctx.is_cocycle(&inputs.pv(&cochain)?)?;
            emit(json, &serde_json::json!({ "cocycle": c }), || c.to_string())
        }
        Command::Cohom { cochain } => {
            let nf = ctx.normal_form(&inputs.pv(&cochain)?)?;
            emit(json, &nf, || {
                format!("class: {}\nprimitive: {}", nf.class, nf.primitive)
            })
        }
        Command::D2 { c1, c2 } => {
            let (c1, c2) = (inputs.class(&c1)?, inputs.class(&c2)?);
            let c = TransferTable::new(ctx).d2(&c1, &c2)?;
            emit(json, &c, || c.to_string())
        }
        Command::Phi2 { c1, c2 } => {
            let (c1, c2) = (inputs.class(&c1)?, inputs.class(&c2)?);
            let v = TransferTable::new(ctx).phi2(&c1, &c2)?;
            emit(json, &v, || v.to_string())
        }
        Command::Formality { order, classes } => {
            let entries = classes
                .iter()
                .map(|c| inputs.class(c))
                .collect::<Result<Vec<_>, _>>()?;
            let report = TransferTable::new(ctx).formality_step(order, &ClassWord::new(entries))?;
            emit(json, &report, || {
                let d = match &report.d_value {
                    schouten_core::DValue::Zero => "0".to_string(),
                    schouten_core::DValue::Class(c) => c.to_string(),
                    schouten_core::DValue::Raw(r) => format!("raw {r}"),
                };
                let normal = match &report.normal {
                    Some(n) => format!("class: {}\nprimitive: {}", n.class, n.primitive),
                    None => "class: none\nprimitive: none".to_string(),
                };
                format!(
                    "residual: {}\ntarget degree: {}\ncocycle: {}\n{}\nd: {}\nphi: {}\nz-constant part: {}\nobstructed: {}",
                    report.residual,
                    report.target_degree,
                    report.is_cocycle,
                    normal,
                    d,
                    report.phi_value,
                    report.z_constant_part(),
                    report.obstructed()
                )
            })
        }
        Command::Selfcheck { seed, samples } => {
            let results = selfcheck::run(&ctx, seed, samples);
            let failed = results.iter().filter(|r| !r.passed).count();
            let out = emit(json, &results, || {
                results
                    .iter()
                    .map(|r| {
                        let mark = if r.passed { "ok  " } else { "FAIL" };
                        format!("{mark} {} ({} samples)", r.name, r.samples)
                    })
                    .collect::<Vec<_>>()
                    .join("\n")
            });
            if failed > 0 {
                print_out(&out);
                return Err(Failure::Domain(format!(
                    "selfcheck: {failed} checks failed"
                )));
            }
            out
        }
    })
}

/// Writes to stdout, treating a closed pipe as success.
fn print_out(out: &str) {
    let mut stdout = std::io::stdout().lock();
    if let Err(e) = writeln!(stdout, "{out}").and_then(|_| stdout.flush()) {
        if e.kind() != std::io::ErrorKind::BrokenPipe {
            eprintln!("error: writing output: {e}");
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print_out(&out);
            ExitCode::SUCCESS
        }
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Parse(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
