use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use suzuki::genfile::{parse_matrix, GeneratorFile};
use suzuki::lasvegas::DEFAULT_EPSILON;
use suzuki::linalg::MatGroup;
use suzuki::membership::{monitor, Membership};
use suzuki::recog::{self, Report, Witness};
use suzuki::szstd::{Decoy, Sz};
use suzuki::{experiments, selftest, Error, Field, Mat4};

const EXIT_NO: u8 = 1;
const EXIT_BUDGET: u8 = 2;
const EXIT_USAGE: u8 = 3;

#[derive(Parser)]
#[command(name = "suzuki", version, about = "Constructive recognition of Sz(q) in dimension 4")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Write a generating set: the standard generators, a random conjugate, or a decoy.
    Gen {
        #[arg(long)]
        m: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, conflicts_with = "decoy")]
        conjugate: bool,
        /// stabiliser, torus-normaliser, subfield, hall-plus or hall-minus
        #[arg(long)]
        decoy: Option<Decoy>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decide whether a generator file generates Sz(q) (or a conjugate).
    Recognise {
        #[arg(long = "in")]
        input: PathBuf,
        /// Test for the standard copy instead of any conjugate.
        #[arg(long)]
        standard: bool,
    },
    /// Write a target matrix as a straight-line program in the generators.
    Membership {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        target: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_EPSILON)]
        epsilon: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Find a matrix conjugating the generated group onto the standard copy.
    Conjugate {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_EPSILON)]
        epsilon: f64,
    },
    /// Count vanishing determinants over random solver instances.
    CheckConjecture {
        #[arg(long, value_delimiter = ',', default_values_t = [1, 2, 3])]
        m: Vec<u32>,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Verify the counting identities of Sz(8) by enumeration.
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Time recognition, conjugation and stabiliser computation.
    Bench {
        #[arg(long, value_delimiter = ',', default_values_t = [1, 2, 3])]
        m: Vec<u32>,
        #[arg(long, default_value_t = 5)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_EPSILON)]
        epsilon: f64,
    },
}

fn exit_for(e: &Error) -> u8 {
    match e {
        Error::BudgetExhausted(_) => EXIT_BUDGET,
        Error::NotInGroup => EXIT_NO,
        _ => EXIT_USAGE,
    }
}

// Write errors (a closed pipe, say) are ignored.
fn print_json(v: &Value) {
    let _ = writeln!(std::io::stdout().lock(), "{}", serde_json::to_string_pretty(v).expect("serialisable"));
}

fn emit(text: &str, out: Option<&Path>) -> suzuki::Result<()> {
    match out {
        Some(p) => std::fs::write(p, text)?,
        None => {
            let _ = std::io::stdout().lock().write_all(text.as_bytes());
        }
    }
    Ok(())
}

fn check_epsilon(eps: f64) -> suzuki::Result<()> {
    if eps > 0.0 && eps < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("epsilon must lie in (0, 1), got {eps}")))
    }
}

fn load(path: &Path) -> suzuki::Result<(Sz, Vec<Mat4>)> {
    let file = GeneratorFile::read(path)?;
    Ok((Sz::new(file.m)?, file.gens))
}

fn report_json(r: &Report, f: &Field) -> Value {
    let witness = match &r.witness {
        None => Value::Null,
        Some(Witness::Generator(i)) => json!({ "generator": i }),
        Some(Witness::SubfieldDegree(d)) => json!({ "subfield_degree": d }),
        Some(Witness::Commutator(c)) => json!({ "commutator": c.to_hex_line(f) }),
    };
    json!({
        "verdict": if r.verdict { "yes" } else { "no" },
        "tag": r.tag,
        "witness": witness,
    })
}

fn run(cmd: Cmd) -> suzuki::Result<u8> {
    match cmd {
        Cmd::Gen { m, seed, conjugate, decoy, out } => {
            let sz = Sz::new(m)?;
            let f = sz.field();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let gens = match decoy {
                Some(kind) => sz.decoy_generators(kind, &mut rng)?,
                None if conjugate => {
                    let h = Mat4::random_invertible(f, &mut rng);
                    sz.generators().iter().map(|g| g.conj(&h, f)).collect()
                }
                None => sz.generators(),
            };
            emit(&GeneratorFile { m, gens }.to_text(f), out.as_deref())?;
            Ok(0)
        }
        Cmd::Recognise { input, standard } => {
            let (sz, gens) = load(&input)?;
            let start = Instant::now();
            let r = if standard {
                recog::recognise_standard(&sz, &gens)?
            } else {
                recog::recognise_conjugate(&sz, &gens)?
            };
            let mut v = report_json(&r, sz.field());
            v["mode"] = json!(if standard { "standard" } else { "conjugate" });
            v["ms"] = json!(start.elapsed().as_secs_f64() * 1e3);
            print_json(&v);
            Ok(if r.verdict { 0 } else { EXIT_NO })
        }
        Cmd::Membership { input, target, seed, epsilon, out } => {
            check_epsilon(epsilon)?;
            let (sz, gens) = load(&input)?;
            let f = sz.field();
            let g = parse_matrix(&std::fs::read_to_string(&target)?, f)?;
            if !sz.is_member(&g) {
                eprintln!("target is not in Sz({})", f.q());
                return Ok(EXIT_NO);
            }
            let mut mem = Membership::new(&sz, &gens, seed, epsilon)?;
            let slp = mem.element_to_slp(&g)?.to_slp();
            let verified = slp.evaluate(&MatGroup(f), &gens)? == g;
            emit(&format!("{slp}# verified: {verified}\n"), out.as_deref())?;
            Ok(if verified { 0 } else { EXIT_USAGE })
        }
        Cmd::Conjugate { input, seed, epsilon } => {
            check_epsilon(epsilon)?;
            let (sz, gens) = load(&input)?;
            let f = sz.field();
            let start = Instant::now();
            let r = recog::recognise_conjugate(&sz, &gens)?;
            if !r.verdict {
                let mut v = report_json(&r, f);
                v["found"] = json!(false);
                print_json(&v);
                return Ok(EXIT_NO);
            }
            let g = recog::find_conjugator(&sz, &gens, seed, epsilon)?;
            let verified = gens.iter().all(|x| sz.is_member(&x.conj(&g, f)));
            print_json(&json!({
                "found": true,
                "conjugator": g.to_hex_line(f),
                "verified": verified,
                "ms": start.elapsed().as_secs_f64() * 1e3,
            }));
            Ok(if verified { 0 } else { EXIT_USAGE })
        }
        Cmd::CheckConjecture { m, trials, seed } => {
            let reports = m
                .iter()
                .map(|&m| experiments::check_conjecture(m, trials, seed))
                .collect::<suzuki::Result<Vec<_>>>()?;
            let violations: u64 = reports.iter().map(|r| r.violations).sum();
            print_json(&json!({
                "fields": reports,
                "total_instances": reports.iter().map(|r| r.instances).sum::<u64>(),
                "total_violations": violations,
                "monitor": monitor(),
            }));
            Ok(if violations == 0 { 0 } else { EXIT_NO })
        }
        Cmd::Selftest { seed } => {
            let checks = selftest::run(seed)?;
            for c in &checks {
                let mark = if c.pass { "pass" } else { "FAIL" };
                let _ = writeln!(std::io::stdout().lock(), "{mark}  {}: expected {}, observed {}", c.name, c.expected, c.observed);
            }
            Ok(if checks.iter().all(|c| c.pass) { 0 } else { EXIT_NO })
        }
        Cmd::Bench { m, trials, seed, epsilon } => {
            check_epsilon(epsilon)?;
            let mut rows = Vec::new();
            for m in m {
                rows.extend(experiments::bench(m, trials, seed, epsilon)?);
            }
            print_json(&serde_json::to_value(rows).expect("serialisable"));
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(EXIT_USAGE);
        }
    };
    match run(cli.cmd) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_for(&e))
        }
    }
}
