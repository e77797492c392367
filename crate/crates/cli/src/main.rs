use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use rdpinv::cache::Cache;
use rdpinv::classify::{rdp_type, section_type, ValuationProfile};
use rdpinv::congruence::{KeyCase, KEY_CASES};
use rdpinv::distpoly::standard_coords;
use rdpinv::envres::{versal_coeffs, EType};
use rdpinv::poly::{Polynomial, VarTable};
use rdpinv::rootsys::{Family, RootSystemSpec};
use rdpinv::verify::{self, Report};

#[derive(Parser)]
#[command(name = "rdpinv", version, about = "Invariants and versal deformations of rational double points")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Directory for expanded rule sets, created on demand.
    #[arg(long, global = true, env = "CACHE_DIR")]
    cache_dir: Option<PathBuf>,
    /// Worker threads; defaults to the available parallelism.
    #[arg(long, global = true)]
    jobs: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Print the standard coordinates of a root system, e.g. `--type E6`.
    Invariants {
        #[arg(long = "type")]
        spec: RootSystemSpec,
    },
    /// Check computed data against the shipped reference data.
    Verify {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(verify::TARGETS))]
        target: String,
    },
    /// Key constants of the restricted polynomials.
    Congruence {
        #[arg(long, conflicts_with = "all", required_unless_present = "all")]
        case: Option<KeyCase>,
        #[arg(long)]
        all: bool,
    },
    /// Classify a surface germ (polynomial file) or bound a section type (JSON profile file).
    Classify {
        file: PathBuf,
        #[arg(long, default_value_t = 12)]
        jet_order: u32,
    },
}

/// Outcome of a command: the rendered output and whether every check passed.
struct Outcome {
    text: String,
    json: Value,
    pass: bool,
}

enum Failure {
    Input(String),
    Compute(String),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cache = cli.cache_dir.as_ref().map(Cache::new);
    let jobs = cli.jobs.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    let result = match cli.command {
        Command::Invariants { spec } => invariants(&spec, cache.as_ref()),
        Command::Verify { target } => verify_target(&target, cache.as_ref(), jobs),
        Command::Congruence { case, .. } => {
            let cases: Vec<KeyCase> = case.map_or_else(|| KEY_CASES.to_vec(), |c| vec![c]);
            Ok(congruence(&cases, cache.as_ref(), jobs))
        }
        Command::Classify { file, jet_order } => classify(&file, jet_order),
    };
    match result {
        Ok(out) => {
            let body = match cli.format {
                Format::Text => out.text,
                Format::Json => serde_json::to_string_pretty(&out.json).expect("json"),
            };
            // A closed pipe downstream is not an error of ours.
            let _ = writeln!(std::io::stdout().lock(), "{body}");
            if out.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Compute(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn invariants(spec: &RootSystemSpec, cache: Option<&Cache>) -> Result<Outcome, Failure> {
    let coords: Vec<(String, Polynomial)> = if spec.family() == Family::E && spec.rank() >= 6 {
        let t: EType = spec.to_string().parse().map_err(|e| Failure::Input(format!("{e}")))?;
        versal_coeffs(t, cache).map_err(|e| Failure::Compute(e.to_string()))?.into_iter().collect()
    } else {
        standard_coords(spec).map_err(|e| Failure::Input(e.to_string()))?
    };
    let text = coords.iter().map(|(n, p)| format!("{n} = {p}")).collect::<Vec<_>>().join("\n");
    let json = json!({
        "type": spec.to_string(),
        "coordinates": coords.iter().map(|(n, p)| json!({"name": n, "polynomial": p.to_json_value()})).collect::<Vec<_>>(),
    });
    Ok(Outcome { text, json, pass: true })
}

fn report_outcome(rep: Report) -> Outcome {
    let json = serde_json::to_value(&rep).expect("json");
    let json = json!({"target": json["target"], "pass": rep.all_pass(), "rows": json["rows"]});
    Outcome { text: rep.to_string(), json, pass: rep.all_pass() }
}

fn verify_target(target: &str, cache: Option<&Cache>, jobs: usize) -> Result<Outcome, Failure> {
    let rep = verify::run(target, cache, jobs).map_err(|e| Failure::Input(e.to_string()))?;
    Ok(report_outcome(rep))
}

fn congruence(cases: &[KeyCase], cache: Option<&Cache>, jobs: usize) -> Outcome {
    let rep = verify::congruence(cases, cache, jobs);
    let mut out = report_outcome(rep.clone());
    out.text = rep
        .rows
        .iter()
        .map(|r| format!("{}  {}  {}", r.label, r.detail, if r.pass { "PASS" } else { "FAIL" }))
        .collect::<Vec<_>>()
        .join("\n");
    out
}

fn classify(file: &PathBuf, jet: u32) -> Result<Outcome, Failure> {
    let text = std::fs::read_to_string(file).map_err(|e| Failure::Input(format!("{}: {e}", file.display())))?;
    let doc: Option<Value> = serde_json::from_str(&text).ok();
    if let Some(doc) = doc.as_ref().filter(|d| d.get("valuations").is_some()) {
        let profile: ValuationProfile =
            serde_json::from_value(doc.clone()).map_err(|e| Failure::Input(format!("profile: {e}")))?;
        let bound = section_type(&profile).map_err(|e| Failure::Input(e.to_string()))?;
        let json = serde_json::to_value(&bound).expect("json");
        let json =
            json!({"type": profile.spec.to_string(), "bound": json, "column": bound.column().map(|c| format!("{c}"))});
        return Ok(Outcome { text: bound.to_string(), json, pass: true });
    }
    let f = match doc {
        Some(_) => Polynomial::from_json(&text),
        None => parse_germ(&text),
    }
    .map_err(|e| Failure::Input(e.to_string()))?;
    let names: Vec<&str> = f.vars().names().iter().map(String::as_str).collect();
    let coords: [&str; 3] = match names.as_slice() {
        [a, b, c] => [a, b, c],
        _ => return Err(Failure::Input(format!("expected three variables, found {}", names.len()))),
    };
    match rdp_type(&f, coords, jet) {
        Ok(t) => {
            let nf = t.normal_form();
            Ok(Outcome {
                text: format!("{t} (normal form {nf})"),
                json: json!({"type": t.to_string(), "normal_form": nf}),
                pass: true,
            })
        }
        Err(e) => Err(Failure::Compute(e.to_string())),
    }
}

/// Parses a germ written in free text; its variables are the identifiers it
/// uses, padded to three with unused names.
fn parse_germ(text: &str) -> Result<Polynomial, rdpinv::poly::PolyError> {
    let mut names: Vec<String> = Vec::new();
    let mut cur = String::new();
    for ch in text.chars().chain(std::iter::once(' ')) {
        if ch.is_ascii_alphabetic() || (!cur.is_empty() && (ch.is_ascii_alphanumeric() || ch == '_')) {
            cur.push(ch);
        } else if !cur.is_empty() {
            if !names.contains(&cur) {
                names.push(std::mem::take(&mut cur));
            }
            cur.clear();
        }
    }
    for pad in ["x", "y", "z", "u", "v", "w"] {
        if names.len() >= 3 {
            break;
        }
        if !names.iter().any(|n| n == pad) {
            names.push(pad.to_string());
        }
    }
    let decl: Vec<(&str, u32)> = names.iter().map(|n| (n.as_str(), 1)).collect();
    Polynomial::parse(text, &VarTable::new(&decl)?)
}
