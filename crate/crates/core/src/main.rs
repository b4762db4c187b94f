use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use num_bigint::BigInt;
use serde_json::json;

use stabforge::charge::{compare_on_basis, exp_charge, CentralCharge};
use stabforge::cohomology::{GradedClass, ProductSpace};
use stabforge::gaussian::{format_rational, parse_rational, Rational};
use stabforge::lattice::{effective_support_constant, even_point_lattice, identity_gram, restrict_charge};
use stabforge::orbifold::run_tower;
use stabforge::riemann_roch::FiberInclusionSpec;
use stabforge::scenario::{emit_verification_matrix, run_scenario, Scenario};
use stabforge::{Error, Result};

#[derive(Parser)]
#[command(name = "stabforge", version, about = "Exact central charges, descent and crepant-resolution audits on products of curves")]
struct Cli {
    /// Worker threads for parallel checks.
    #[arg(long, env = "STABFORGE_THREADS", global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario file.
    Run {
        file: PathBuf,
        #[arg(long)]
        json: bool,
        /// Also write the JSON report here.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Drop timing fields (byte-identical reruns).
        #[arg(long)]
        no_timings: bool,
    },
    /// Run the bundled verification suite.
    Matrix {
        /// Keep only scenarios with this tag (induction, kummer, cy-even, cy-odd, ch, restriction).
        #[arg(long)]
        only: Option<String>,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        no_timings: bool,
    },
    /// Audit the Cynk-Hulek resolution tower.
    ChTower {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        depth: usize,
        /// Write the full JSON report here.
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Restrict Z_k^{w,b} on E^k to the fiber over the last factors.
    Restrict {
        #[arg(long, default_value_t = 2)]
        k: usize,
        /// Number of trailing factors kept in the fiber.
        #[arg(long, default_value_t = 1)]
        fiber: usize,
        #[arg(long, default_value = "1")]
        w: String,
        #[arg(long, default_value = "0")]
        b: String,
        /// Saturate the image lattice.
        #[arg(long)]
        saturate: bool,
        #[arg(long)]
        json: bool,
    },
    /// Effective support constant of Z_1^{w,b} on (r, d) with the identity gram matrix.
    Support {
        #[arg(long, default_value = "1")]
        w: String,
        #[arg(long, default_value = "0")]
        b: String,
        /// Classes as r,d pairs separated by ';', e.g. "1,0;0,1".
        #[arg(long, default_value = "1,0;0,1;1,1;1,-1;2,1")]
        classes: String,
        #[arg(long)]
        json: bool,
    },
}

fn rational(flag: &str, s: &str) -> Result<Rational> {
    parse_rational(s).map_err(|e| Error::Parse(format!("--{flag}: {e}")))
}

fn write(path: &PathBuf, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Run {
            file,
            json,
            out,
            no_timings,
        } => {
            let scenario = Scenario::from_file(&file)?;
            let mut report = run_scenario(&scenario)?;
            if no_timings {
                report = report.without_timings();
            }
            if let Some(p) = &out {
                write(p, &report.to_json())?;
            }
            if json {
                println!("{}", report.to_json());
            } else {
                print!("{}", report.render_text());
            }
            Ok(report.pass)
        }
        Command::Matrix { only, json, no_timings } => {
            let mut m = emit_verification_matrix(only.as_deref())?;
            if no_timings {
                m = m.without_timings();
            }
            if json {
                println!("{}", m.to_json());
            } else {
                print!("{}", m.render_text());
            }
            Ok(m.pass)
        }
        Command::ChTower { m, depth, report, json } => {
            let t = run_tower(m, depth)?;
            let text = serde_json::to_string_pretty(&t).expect("tower serializes");
            if let Some(p) = &report {
                write(p, &text)?;
            }
            if json {
                println!("{text}");
            } else {
                for a in &t.audits {
                    println!(
                        "X{} -> X{}: BKR {}/{} {} | claims {}/{} | strata {}",
                        a.from,
                        a.to,
                        a.bkr.computed,
                        a.bkr.bound,
                        if a.bkr.pass { "ok" } else { "FAIL" },
                        a.claims.iter().filter(|c| c.agree).count(),
                        a.claims.len(),
                        a.families.len()
                    );
                }
                for s in &t.stages {
                    let sigs: Vec<String> = s
                        .strata
                        .iter()
                        .map(|x| format!("{} {}", x.labels.join("/"), x.signature.diag_string()))
                        .collect();
                    println!("X{}: {}", s.n, sigs.join(", "));
                }
                if let Some(e) = t.equality {
                    println!("k+2 equality from k = 2: {e}");
                }
                println!("{}", if t.pass { "ALL PASS" } else { "FAILED" });
            }
            Ok(t.pass)
        }
        Command::Restrict {
            k,
            fiber,
            w,
            b,
            saturate,
            json,
        } => {
            if fiber == 0 || fiber >= k {
                return Err(Error::Domain(format!("need 1 ≤ fiber < k, got fiber = {fiber}, k = {k}")));
            }
            let (w, b) = (rational("w", &w)?, rational("b", &b)?);
            let ambient = ProductSpace::elliptic(k).shared();
            let collapsed: Vec<usize> = (fiber..k).collect();
            let spec = FiberInclusionSpec::new(&ambient, &collapsed)?;
            let charge = CentralCharge::Kernel(exp_charge(&ambient, &w, &b)?);
            let r = restrict_charge(&charge, &spec, &even_point_lattice(&spec.base), saturate)?;
            let base = exp_charge(&spec.base, &w, &b)?;
            let mismatch = compare_on_basis(&spec.base.basis(), &spec.base, |v| r.charge.evaluate(v), |v| base.evaluate(v))?;
            if json {
                let out = json!({
                    "kernel": r.charge.kernel.to_json(),
                    "matches_base": mismatch.is_none(),
                    "witness": mismatch,
                    "lambda0": r.lambda0,
                });
                println!("{}", serde_json::to_string_pretty(&out).expect("serializes"));
            } else {
                println!("Z_0 kernel: {}", r.charge.kernel);
                println!("Z_0 = Z_{fiber}: {}", mismatch.is_none());
                println!("Λ_0 rank {} with basis:", r.lambda0.rank());
                for col in r.lambda0.columns() {
                    let terms: Vec<String> = col
                        .iter()
                        .zip(&r.lambda0.target)
                        .filter(|(x, _)| **x != BigInt::from(0))
                        .map(|(x, t)| format!("{x}·{t}"))
                        .collect();
                    println!("  {}", terms.join(" + "));
                }
            }
            Ok(mismatch.is_none())
        }
        Command::Support { w, b, classes, json } => {
            let (w, b) = (rational("w", &w)?, rational("b", &b)?);
            let space = ProductSpace::elliptic(1).shared();
            let basis = vec![GradedClass::unit(&space), GradedClass::top(&space)];
            let coords = classes
                .split(';')
                .map(|c| {
                    c.split(',')
                        .map(|x| x.trim().parse::<BigInt>().map_err(|e| Error::Parse(format!("--classes: {x:?}: {e}"))))
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            let charge = CentralCharge::Kernel(exp_charge(&space, &w, &b)?);
            let r = effective_support_constant(&charge, &basis, &identity_gram(2), &coords)?;
            if json {
                println!("{}", serde_json::to_string_pretty(&r).expect("serializes"));
            } else {
                match &r.c_squared {
                    stabforge::lattice::SupportConstant::Finite(c) => println!("C² = {}", format_rational(c)),
                    stabforge::lattice::SupportConstant::Infinite => println!("C = infinite"),
                }
                if let Some(wit) = &r.witness {
                    println!("witness (r,d) = ({})", wit.join(","));
                }
            }
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
