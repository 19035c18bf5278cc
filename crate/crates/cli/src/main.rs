use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use com_varchenko::constructions::{
    cycle_om, full_cube, ideals_com, k4_subdivision_topes, random_com, ranking_com, RandomBudget,
};
use com_varchenko::varchenko::{
    build_signed, build_unsigned, build_unsigned_from_topes, closed_form_det_with_order, evaluation_check,
    ElementOrder, VarchenkoMatrix, VerifyOptions,
};
use com_varchenko::{verify, Error, FinitePoset, GroundSet, SignSystem, SignVector};
use serde_json::json;

/// Largest matrix whose determinant `det` expands without `--force`.
const DET_LIMIT: usize = 16;

#[derive(Parser, Debug)]
#[command(name = "comvar", version, about = "Signed Varchenko matrices of complexes of oriented matroids")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Construction such as cycle:4, cube:3, ideals:poset.json, ranking:poset.json[:a,b,c], k4sub, random:7
    #[arg(long, global = true, conflicts_with = "input")]
    construct: Option<String>,

    /// System file {"ground_set": [...], "covectors": [...]}
    #[arg(long, global = true)]
    input: Option<PathBuf>,

    /// Use x[e] for both x[e]+ and x[e]-
    #[arg(long, global = true)]
    unsigned: bool,

    /// Linear order of the ground set, e.g. e3,e1,e2
    #[arg(long, global = true)]
    order: Option<String>,

    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,

    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// Seed for random constructions and evaluation points
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Lift the size guard of `det`
    #[arg(long, global = true)]
    force: bool,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
enum Command {
    /// Axiom report
    Check,
    /// List the topes
    Topes,
    /// The Varchenko matrix
    Matrix,
    /// Expanded determinant
    Det,
    /// Closed-form determinant
    Formula,
    /// Check the factor chain, blocks, Möbius sums and the closed form
    Verify,
    /// Print the constructed system
    Construct,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Json,
    Text,
}

/// Exit status 2 with a message.
struct InputError(String);

impl From<Error> for InputError {
    fn from(e: Error) -> Self {
        InputError(e.to_string())
    }
}

impl From<std::io::Error> for InputError {
    fn from(e: std::io::Error) -> Self {
        InputError(e.to_string())
    }
}

enum Source {
    System(SignSystem),
    /// A bare tope list, which only supports the unsigned matrix.
    Topes(GroundSet, Vec<SignVector>),
}

struct Outcome {
    text: String,
    ok: bool,
}

fn read(path: &str) -> Result<String, InputError> {
    fs::read_to_string(path).map_err(|e| InputError(format!("{path}: {e}")))
}

fn construct(spec: &str, seed: u64) -> Result<Source, InputError> {
    let (kind, arg) = spec.split_once(':').unwrap_or((spec, ""));
    let number = |default: Option<u64>| -> Result<u64, InputError> {
        if arg.is_empty() {
            return default.ok_or_else(|| InputError(format!("{spec}: missing size")));
        }
        arg.parse().map_err(|_| InputError(format!("{spec}: expected a number")))
    };
    let poset = |path: &str| -> Result<FinitePoset, InputError> { Ok(FinitePoset::from_json(&read(path)?)?) };
    Ok(Source::System(match kind {
        "cycle" => cycle_om(number(None)? as usize)?,
        "cube" => {
            let n = number(None)? as usize;
            if n > 10 {
                return Err(InputError(format!("cube:{n} exceeds 10 elements")));
            }
            full_cube(n)
        }
        "ideals" if !arg.is_empty() => ideals_com(&poset(arg)?)?,
        "ranking" if !arg.is_empty() => {
            let (path, l0) = match arg.rsplit_once(':') {
                Some((p, l)) if l.contains(',') || !l.ends_with(".json") => (p, Some(l)),
                _ => (arg, None),
            };
            let p = poset(path)?;
            let l0 = l0
                .map(|l| l.split(',').map(|s| p.index_of(s.trim())).collect::<Result<Vec<_>, _>>())
                .transpose()?;
            ranking_com(&p, l0.as_deref())?
        }
        "k4sub" => {
            let (g, t) = k4_subdivision_topes();
            return Ok(Source::Topes(g, t));
        }
        "random" => random_com(number(Some(seed))?, RandomBudget::default())?,
        _ => return Err(InputError(format!("unknown construction {spec}"))),
    }))
}

fn load(cli: &Cli) -> Result<Source, InputError> {
    match (&cli.construct, &cli.input) {
        (Some(spec), _) => construct(spec, cli.seed),
        (None, Some(path)) => {
            let text = read(&path.to_string_lossy())?;
            Ok(Source::System(SignSystem::from_json(&text)?))
        }
        (None, None) => Err(InputError("one of --construct or --input is required".into())),
    }
}

fn order_for(cli: &Cli, ground: &GroundSet) -> Result<ElementOrder, InputError> {
    match &cli.order {
        Some(text) => Ok(ElementOrder::parse(ground, text)?),
        None => Ok(ElementOrder::natural(ground.len())),
    }
}

fn pretty(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).expect("plain data")
}

fn needs_system(source: &Source, command: Command) -> Result<&SignSystem, InputError> {
    match source {
        Source::System(s) => Ok(s),
        Source::Topes(..) => Err(InputError(format!(
            "{command:?} needs covectors; this input only lists topes"
        ).to_lowercase())),
    }
}

fn matrix_of(cli: &Cli, source: &Source) -> Result<VarchenkoMatrix, InputError> {
    Ok(match source {
        Source::System(s) if cli.unsigned => build_unsigned(s)?,
        Source::System(s) => build_signed(s)?,
        Source::Topes(g, t) => build_unsigned_from_topes(g.clone(), t.clone())?,
    })
}

fn mark(b: bool) -> &'static str {
    if b {
        "✓"
    } else {
        "✗"
    }
}

fn run(cli: &Cli) -> Result<Outcome, InputError> {
    let source = load(cli)?;
    let json = cli.format == Format::Json;
    let ok = |text: String| Ok(Outcome { text, ok: true });
    match cli.command {
        Command::Construct => match &source {
            Source::System(s) => ok(s.to_json()),
            Source::Topes(g, t) => ok(pretty(&json!({
                "ground_set": g.names(),
                "topes": t.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
            }))),
        },
        Command::Topes => {
            let topes: Vec<String> = match &source {
                Source::System(s) => s.topes().iter().map(|t| t.to_string()).collect(),
                Source::Topes(_, t) => t.iter().map(|t| t.to_string()).collect(),
            };
            ok(if json { pretty(&json!(topes)) } else { topes.join("\n") })
        }
        Command::Check => {
            let s = needs_system(&source, cli.command)?;
            let r = s.check_axioms();
            let text = if json {
                pretty(&serde_json::to_value(r.to_json(s.ground()))?)
            } else {
                let mut t = format!(
                    "COM {}\nOM {}\nsimple {}\nface symmetry {}\nstrong elimination {}\ncomposition {}\nzero vector {}",
                    mark(r.is_com()),
                    mark(r.is_om()),
                    mark(r.simple),
                    mark(r.face_symmetry),
                    mark(r.strong_elimination),
                    mark(r.composition),
                    mark(r.contains_zero),
                );
                for w in &r.witnesses {
                    t.push_str(&format!("\nwitness: {}", w.describe(s.ground())));
                }
                t
            };
            Ok(Outcome { text, ok: r.is_com() })
        }
        Command::Matrix => {
            let v = matrix_of(cli, &source)?;
            if json {
                return ok(v.to_json());
            }
            let mut t = String::new();
            for (label, row) in v.matrix.row_labels().iter().zip(v.matrix.rows()) {
                let cells: Vec<String> = row.iter().map(|p| p.to_string_with(&v.ground)).collect();
                t.push_str(&format!("{label}\t{}\n", cells.join("\t")));
            }
            ok(t.trim_end().to_string())
        }
        Command::Det => {
            let v = matrix_of(cli, &source)?;
            if v.len() > DET_LIMIT && !cli.force {
                return Err(InputError(format!(
                    "{} topes exceed the determinant limit of {DET_LIMIT}; pass --force",
                    v.len()
                )));
            }
            let det = v.det()?.to_string_with(&v.ground);
            ok(if json { pretty(&json!({ "det": det, "topes": v.len() })) } else { det })
        }
        Command::Formula => {
            let s = needs_system(&source, cli.command)?;
            s.require_simple_com()?;
            let order = order_for(cli, s.ground())?;
            let f = closed_form_det_with_order(s, !cli.unsigned, &order)?.to_string_with(s.ground());
            ok(if json { pretty(&json!({ "formula": f })) } else { f })
        }
        Command::Verify => {
            let s = needs_system(&source, cli.command)?;
            let order = order_for(cli, s.ground())?;
            let opts = VerifyOptions { signed: !cli.unsigned, order: Some(order), ..Default::default() };
            let r = verify(s, &opts)?;
            let mut all = r.all_hold();
            let mut eval = None;
            if let Some(det) = &r.det_symbolic {
                let e = evaluation_check(&r.matrix, det, cli.seed, 20)?;
                all &= e;
                eval = Some(e);
            }
            let report = r.to_json();
            let text = if json {
                let mut v = serde_json::to_value(&report)?;
                v["evaluationHolds"] = json!(eval);
                v["allHold"] = json!(all);
                pretty(&v)
            } else {
                let mut t = format!(
                    "topes {}\nformula {}\ndeterminant via {}\nchain {}\nfactor identity {}\nblock identities {}\nblocks {}\ncrucial sums {}\n",
                    report.topes,
                    report.formula,
                    serde_json::to_value(report.det_method)?.as_str().unwrap_or_default(),
                    mark(report.chain_holds),
                    mark(report.lemma_fac_holds),
                    mark(report.lemma_fac1_holds),
                    mark(report.blocks_hold),
                    mark(report.crucial_holds.unwrap_or(true)),
                );
                if let Some(e) = eval {
                    t.push_str(&format!("evaluation {}\n", mark(e)));
                }
                t.push_str(&format!("match {}", mark(report.matches)));
                t
            };
            Ok(Outcome { text, ok: all })
        }
    }
}

impl From<serde_json::Error> for InputError {
    fn from(e: serde_json::Error) -> Self {
        InputError(e.to_string())
    }
}

fn emit(cli: &Cli, text: &str) -> std::io::Result<()> {
    match &cli.output {
        Some(path) => fs::write(path, format!("{text}\n")),
        None => writeln!(std::io::stdout().lock(), "{text}"),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            if let Err(e) = emit(&cli, &out.text) {
                eprintln!("comvar: {e}");
                return ExitCode::from(2);
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(InputError(msg)) => {
            eprintln!("comvar: {msg}");
            ExitCode::from(2)
        }
    }
}
