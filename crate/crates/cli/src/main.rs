//! `bier`: command-line access to Bier spheres and the checks around them.
//!
//! Exit codes: 0 success, 1 usage or input error, 2 a verified statement
//! failed, 3 an oracle ran out of budget before deciding.

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use bier_core::bier::{alexander_dual, bier, check_sphere, BierSphere};
use bier_core::buchstaber::{buchstaber_of_bier, s_p_oracle, OracleOutcome, DEFAULT_NODE_BUDGET};
use bier_core::chordal::{classify_chordal_bier, is_chordal, realize_stacked};
use bier_core::coloring::{
    chi_bier_bounds, chromatic_number, min_colorable_classifier, recognize_min_chromatic_type,
    suspension_structure,
};
use bier_core::complex::SimplicialComplex;
use bier_core::error::Error;
use bier_core::fixtures;
use bier_core::io::{bier_to_json, complex_to_dot, complex_to_json, parse_complex, Loaded};
use bier_core::verify::{verify_theorem, Status, TheoremId, VerifyOptions};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "bier", version, about = "Bier spheres of simplicial complexes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
    Off,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Of {
    K,
    Dual,
    Bier,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FixtureName {
    Gamma3,
    Gamma4,
    G4,
    Gamma5,
    Gamma6,
    Km,
    Skeleton,
    Simplex,
}

#[derive(Subcommand)]
enum Command {
    /// Alexander dual K^∨.
    Dual {
        /// JSON file, `-` for stdin, or inline JSON.
        #[arg(default_value = "-")]
        input: String,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// The Bier sphere Bier(K).
    Build {
        #[arg(default_value = "-")]
        input: String,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// f-vector and Euler characteristic.
    Fvector {
        #[arg(default_value = "-")]
        input: String,
        #[arg(long, value_enum, default_value = "k")]
        of: Of,
    },
    /// Chromatic number with an optimal coloring.
    Chi {
        #[arg(default_value = "-")]
        input: String,
        #[arg(long, value_enum, default_value = "bier")]
        of: Of,
    },
    /// Buchstaber number of Bier(K) with the certificate map.
    Buchstaber {
        #[arg(default_value = "-")]
        input: String,
        /// 0 for integer maps, or a prime.
        #[arg(long, default_value_t = 0)]
        p: u64,
        /// Also run the exhaustive search (p = 2 or 3; p = 0 searches over ℤ_2).
        #[arg(long)]
        oracle: bool,
        #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
        budget: u64,
    },
    /// Chordality of Bier(K), optionally with a stacked realization.
    Chordal {
        #[arg(default_value = "-")]
        input: String,
        /// Write the realization in OFF-like format to this path (`-` for stdout).
        #[arg(long)]
        realize: Option<String>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Exact stacked-polytope realization of a chordal Bier(K).
    Realize {
        #[arg(default_value = "-")]
        input: String,
        /// `off` or `json`.
        #[arg(long, value_enum, default_value = "off")]
        format: Format,
    },
    /// Chromatic, chordal and Buchstaber data of Bier(K) in one report.
    Classify {
        #[arg(default_value = "-")]
        input: String,
    },
    /// Print a named complex.
    Fixtures {
        #[arg(long, value_enum)]
        name: FixtureName,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        k: Option<usize>,
    },
    /// Check a statement over every complex on [m].
    Verify {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        theorem: TheoremId,
        #[arg(long)]
        up_to_iso: bool,
        #[arg(long)]
        jobs: Option<usize>,
        /// Check a seeded uniform sample of this many complexes.
        #[arg(long)]
        sample: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Check every complex at m = 6 instead of a 10^5 sample.
        #[arg(long)]
        full: bool,
        #[arg(long)]
        oracle: bool,
        #[arg(long, default_value_t = 2)]
        p: u64,
        #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
        budget: u64,
        #[arg(long)]
        report: Option<PathBuf>,
    },
}

enum Failure {
    Usage(String),
    Core(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

type CmdResult = Result<u8, Failure>;

fn read_input(input: &str) -> Result<Loaded, Failure> {
    let text = if input.trim_start().starts_with('{') {
        input.to_string()
    } else if input == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::Usage(format!("stdin: {e}")))?;
        s
    } else {
        fs::read_to_string(input).map_err(|e| Failure::Usage(format!("{input}: {e}")))?
    };
    let loaded = parse_complex(&text)?;
    for d in &loaded.dropped {
        eprintln!("warning: generator {d} is contained in another facet and was dropped");
    }
    Ok(loaded)
}

fn read_base(input: &str) -> Result<SimplicialComplex, Failure> {
    let k = read_input(input)?.complex;
    if k.ground() != bier_core::vertex_set::VertexSet::range(k.m()) {
        return Err(Error::NonStandardGround(k.ground()).into());
    }
    Ok(k)
}

/// Write to stdout; a closed pipe downstream is not an error.
fn emit(text: &str) {
    let _ = io::stdout().lock().write_all(text.as_bytes());
}

fn print_json(v: &Value) {
    emit(&format!("{v}\n"));
}

fn print_pretty(v: &Value) {
    emit(&format!(
        "{}\n",
        serde_json::to_string_pretty(v).expect("values serialize")
    ));
}

fn emit_complex(k: &SimplicialComplex, base_m: Option<usize>, format: Format) -> CmdResult {
    match format {
        Format::Json => print_json(&complex_to_json(k)),
        Format::Dot => emit(&complex_to_dot(k, base_m)),
        Format::Off => {
            return Err(Failure::Usage(
                "OFF output needs coordinates; use `chordal --realize`".into(),
            ))
        }
    }
    Ok(0)
}

fn pick(k: &SimplicialComplex, of: Of) -> Result<(SimplicialComplex, Option<BierSphere>), Failure> {
    Ok(match of {
        Of::K => (k.clone(), None),
        Of::Dual => (alexander_dual(k)?, None),
        Of::Bier => {
            let b = bier(k)?;
            (b.complex().clone(), Some(b))
        }
    })
}

fn to_value<T: serde::Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("values serialize")
}

fn run(cli: Cli) -> CmdResult {
    match cli.command {
        Command::Dual { input, format } => {
            let k = read_input(&input)?.complex;
            emit_complex(&alexander_dual(&k)?, None, format)
        }
        Command::Build { input, format } => {
            let k = read_base(&input)?;
            let b = bier(&k)?;
            match format {
                Format::Json => {
                    print_json(&bier_to_json(&b));
                    Ok(0)
                }
                _ => emit_complex(b.complex(), Some(b.m()), format),
            }
        }
        Command::Fvector { input, of } => {
            let k = read_base(&input)?;
            let (c, _) = pick(&k, of)?;
            let f = c.f_vector();
            print_json(&json!({
                "f_vector": f.trimmed(),
                "dim": c.dim(),
                "euler_characteristic": f.euler_characteristic(),
            }));
            Ok(0)
        }
        Command::Chi { input, of } => {
            let k = read_base(&input)?;
            let (c, b) = pick(&k, of)?;
            let (chi, coloring) = chromatic_number(&c)?;
            let mut out = json!({ "chi": chi, "coloring": to_value(&coloring.assignment) });
            if b.is_some() {
                let bounds = chi_bier_bounds(&k)?;
                out["bounds"] = json!({ "lower": bounds.lower, "upper": bounds.upper });
            }
            print_json(&out);
            Ok(0)
        }
        Command::Buchstaber {
            input,
            p,
            oracle,
            budget,
        } => {
            let k = read_base(&input)?;
            let r = buchstaber_of_bier(&k, p)?;
            let mut out = to_value(&r);
            let mut code = 0;
            if oracle {
                let q = if p == 0 { 2 } else { p };
                let b = bier(&k)?;
                let o = s_p_oracle(b.complex(), q, budget)?;
                if let OracleOutcome::Skipped { .. } = o {
                    code = 3;
                } else if o.exact_value() != Some(r.value) {
                    code = 2;
                }
                out["oracle"] = to_value(&o);
            }
            print_pretty(&out);
            Ok(code)
        }
        Command::Chordal {
            input,
            realize,
            format,
        } => {
            let k = read_base(&input)?;
            let b = bier(&k)?;
            let class = classify_chordal_bier(&k)?;
            let graph = is_chordal(b.complex())?;
            let real = if realize.is_some() || format == Format::Off {
                Some(realize_stacked(&k)?)
            } else {
                None
            };
            if let (Some(path), Some(r)) = (&realize, &real) {
                if path == "-" {
                    emit(&r.to_off());
                    return Ok(0);
                }
                fs::write(path, r.to_off()).map_err(|e| Failure::Usage(format!("{path}: {e}")))?;
            }
            match format {
                Format::Off => emit(&real.expect("built above").to_off()),
                Format::Dot => emit(&complex_to_dot(b.complex(), Some(b.m()))),
                Format::Json => {
                    let mut out = json!({
                        "classification": to_value(&class),
                        "skeleton": to_value(&graph),
                    });
                    if let Some(r) = &real {
                        out["realization"] = r.to_json();
                    }
                    print_pretty(&out);
                }
            }
            Ok(0)
        }
        Command::Realize { input, format } => {
            let r = realize_stacked(&read_base(&input)?)?;
            match format {
                Format::Off => emit(&r.to_off()),
                Format::Json => print_pretty(&r.to_json()),
                Format::Dot => emit(&complex_to_dot(&r.complex(), Some(r.m))),
            }
            Ok(0)
        }
        Command::Classify { input } => {
            let k = read_base(&input)?;
            let b = bier(&k)?;
            let (chi, _) = chromatic_number(b.complex())?;
            let bounds = chi_bier_bounds(&k)?;
            let classifier = if b.m() >= 3 {
                to_value(&min_colorable_classifier(&k)?)
            } else {
                Value::Null
            };
            let buch = buchstaber_of_bier(&k, 0)?;
            let out = json!({
                "m": b.m(),
                "f_vector": b.complex().f_vector().trimmed(),
                "sphere": to_value(&check_sphere(&b)),
                "chi_bier": chi,
                "chi_bounds": { "lower": bounds.lower, "upper": bounds.upper },
                "min_colorable": classifier,
                "chromatic_type": to_value(&recognize_min_chromatic_type(&b)),
                "suspension": to_value(&suspension_structure(&b)),
                "chordal": to_value(&classify_chordal_bier(&k)?),
                "buchstaber": buch.value,
            });
            print_pretty(&out);
            Ok(0)
        }
        Command::Fixtures { name, m, k } => {
            let three = |c: SimplicialComplex| {
                if m == 3 {
                    Ok(c)
                } else {
                    Err(Failure::Usage(format!(
                        "this fixture lives on [3], got --m {m}"
                    )))
                }
            };
            let c = match name {
                FixtureName::Gamma3 => three(fixtures::gamma3())?,
                FixtureName::Gamma4 => three(fixtures::gamma4())?,
                FixtureName::G4 => three(fixtures::g4())?,
                FixtureName::Gamma5 => three(fixtures::gamma5())?,
                FixtureName::Gamma6 => three(fixtures::gamma6())?,
                FixtureName::Km => fixtures::km(m)?,
                FixtureName::Skeleton => fixtures::skeleton(
                    m,
                    k.ok_or_else(|| Failure::Usage("skeleton needs --k".into()))?,
                )?,
                FixtureName::Simplex => {
                    fixtures::simplex_face(m, k.unwrap_or(m.saturating_sub(1)))?
                }
            };
            print_json(&complex_to_json(&c));
            Ok(0)
        }
        Command::Verify {
            m,
            theorem,
            up_to_iso,
            jobs,
            sample,
            seed,
            full,
            oracle,
            p,
            budget,
            report,
        } => {
            let opts = VerifyOptions {
                up_to_iso,
                jobs,
                sample,
                seed,
                full,
                oracle,
                p,
                budget,
            };
            let start = std::time::Instant::now();
            let r = verify_theorem(theorem, m, &opts)?;
            let text = serde_json::to_string_pretty(&r).expect("reports serialize");
            if let Some(path) = report {
                fs::write(&path, format!("{text}\n"))
                    .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
            }
            emit(&format!("{text}\n"));
            eprintln!(
                "{} m={m}: {:?}, {} checked in {:.2?}",
                theorem.name(),
                r.status,
                r.checked,
                start.elapsed()
            );
            Ok(match r.status {
                Status::Pass => 0,
                Status::Fail => 2,
                Status::Skipped => 3,
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            let _ = e.print();
            return ExitCode::from(1);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Core(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
