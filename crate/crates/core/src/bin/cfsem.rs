use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use cfsem::dot::{export_dot, DotScope};
use cfsem::io::{self, sets_value, set_value, QueryResultDocument};
use cfsem::oracle::{check_all, check_theorem, generate_random, RandomModelSpec, Theorem, TheoremReport, Verdict};
use cfsem::{
    display_set, Aggregator, ArgSet, Config, Error, Formability, Framework, NPKind, Semantics, VariantPolicy,
    DEFAULT_LIMIT,
};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

const NEGATIVE: u8 = 1;
const INVALID: u8 = 2;
const USAGE: u8 = 3;

#[derive(Parser)]
#[command(name = "cfsem", version, about = "Coalition formability semantics for capacity-weighted argumentation frameworks")]
struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,
    /// Largest framework enumerated exhaustively.
    #[arg(long, global = true, default_value_t = DEFAULT_LIMIT)]
    limit: usize,
    /// Override the variant policy stored in the file.
    #[arg(long, global = true, value_enum)]
    variant_policy: Option<PolicyArg>,
    /// Report wall-clock time (stderr, or `timingMs` with --json).
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum PolicyArg {
    Strict,
    Persist,
}

#[derive(Clone, Copy, ValueEnum)]
enum SetKind {
    ConflictEliminable,
    CAdmissible,
    CPreferred,
}

#[derive(Clone, Copy, ValueEnum)]
enum NpKindArg {
    ConflictFree,
    Admissible,
    Preferred,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormKind {
    #[value(name = "W")]
    W,
    #[value(name = "M")]
    M,
    #[value(name = "WS")]
    Ws,
    #[value(name = "S")]
    S,
}

#[derive(Clone, Copy, ValueEnum)]
enum AggregatorArg {
    Max,
    Sum,
    ExplicitOnly,
}

#[derive(Subcommand)]
enum Command {
    /// Check coherence and the strength axioms.
    Validate { file: PathBuf },
    /// Enumerate conflict-eliminable, c-admissible or c-preferred sets.
    Semantics {
        file: PathBuf,
        #[arg(long, value_enum)]
        kind: SetKind,
    },
    /// Show the intrinsic arguments and view of a coalition.
    View {
        file: PathBuf,
        /// Comma-separated argument ids.
        #[arg(long)]
        set: String,
    },
    /// Decide whether S2 is profitable for S1.
    Profit {
        file: PathBuf,
        #[arg(long)]
        s1: String,
        #[arg(long)]
        s2: String,
    },
    /// List the partners acceptable to a coalition.
    Formability {
        file: PathBuf,
        #[arg(long, value_enum)]
        kind: FormKind,
        #[arg(long)]
        set: String,
    },
    /// Enumerate semantics of the group-attack framework in a file.
    Np {
        file: PathBuf,
        #[arg(long, value_enum)]
        kind: NpKindArg,
    },
    /// Check a proved property on a framework (or `all`).
    Check {
        file: PathBuf,
        #[arg(long)]
        theorem: String,
    },
    /// Graphviz rendering of the framework or of a coalition's view.
    ExportDot {
        file: PathBuf,
        #[arg(long)]
        view: Option<String>,
    },
    /// Write a seeded random framework.
    Random {
        #[arg(long = "args")]
        arguments: usize,
        #[arg(long)]
        density: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "max")]
        aggregator: AggregatorArg,
        #[arg(short = 'o', long)]
        output: PathBuf,
    },
}

struct Outcome {
    query: Value,
    result: Value,
    text: String,
    diagnostics: Vec<String>,
    code: u8,
}

impl Outcome {
    fn new(query: Value, result: Value, text: String) -> Self {
        Self { query, result, text, diagnostics: Vec::new(), code: 0 }
    }

    fn negative_unless(mut self, ok: bool) -> Self {
        if !ok {
            self.code = NEGATIVE;
        }
        self
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse { .. } | Error::Validation(_) | Error::MissingVariantStrength { .. } => INVALID,
        _ => USAGE,
    }
}

fn load(cli: &Cli, file: &PathBuf) -> cfsem::Result<Framework> {
    let fw = io::load_unchecked(file)?;
    let fw = match cli.variant_policy {
        Some(PolicyArg::Strict) => fw.with_variant_policy(VariantPolicy::Strict),
        Some(PolicyArg::Persist) => fw.with_variant_policy(VariantPolicy::Persist),
        None => fw,
    };
    fw.validated()
}

fn semantics<'a>(cli: &Cli, fw: &'a Framework) -> Semantics<'a> {
    Semantics::with_config(fw, Config { enumeration_limit: cli.limit, ..Config::default() })
}

fn ids(list: &str) -> Vec<&str> {
    list.split(',').map(str::trim).filter(|s| !s.is_empty()).collect()
}

fn set_arg(fw: &Framework, list: &str) -> cfsem::Result<ArgSet> {
    fw.set_of_ids(&ids(list))
}

fn lines(sets: &[ArgSet]) -> String {
    sets.iter().map(|s| display_set(s) + "\n").collect()
}

fn file_str(file: &Path) -> String {
    file.display().to_string()
}

fn report_text(r: &TheoremReport) -> String {
    format!("{r}\n")
}

fn run(cli: &Cli) -> cfsem::Result<Outcome> {
    Ok(match &cli.command {
        Command::Validate { file } => {
            let fw = io::load_unchecked(file)?;
            let report = fw.validate_axioms();
            let query = json!({"command": "validate", "file": file_str(file)});
            let text = if report.ok { format!("ok: {} arguments\n", fw.len()) } else { format!("{report}\n") };
            let mut out = Outcome::new(query, serde_json::to_value(&report).expect("report serialises"), text);
            if !report.ok {
                out.diagnostics = report.violations.iter().map(|v| v.to_string()).collect();
                out.code = INVALID;
            }
            out
        }
        Command::Semantics { file, kind } => {
            let fw = load(cli, file)?;
            let sem = semantics(cli, &fw);
            let (name, sets) = match kind {
                SetKind::ConflictEliminable => ("conflict-eliminable", sem.conflict_eliminable_sets()?),
                SetKind::CAdmissible => ("c-admissible", sem.c_admissible_sets()?),
                SetKind::CPreferred => ("c-preferred", sem.c_preferred_sets()?),
            };
            let query = json!({"command": "semantics", "file": file_str(file), "kind": name});
            Outcome::new(query, sets_value(&sets), lines(&sets))
        }
        Command::View { file, set } => {
            let fw = load(cli, file)?;
            let s1 = set_arg(&fw, set)?;
            let view = semantics(cli, &fw).view(&s1)?;
            let query = json!({"command": "view", "file": file_str(file), "set": set_value(&s1)});
            let edges: Vec<Value> = view
                .attacks
                .iter()
                .map(|e| json!({"from": set_value(&e.attackers), "to": [e.target.id, e.target.capacity], "strength": e.strength}))
                .collect();
            let result = json!({
                "intrinsic": set_value(&view.intrinsic.members),
                "arguments": set_value(&view.arguments),
                "attacks": edges,
            });
            let mut text = format!("intrinsic {}\narguments {}\n", view.intrinsic, display_set(&view.arguments));
            for e in &view.attacks {
                text.push_str(&format!("attack {e}\n"));
            }
            let mut out = Outcome::new(query, result, text);
            out.diagnostics = view.diagnostics.clone();
            out
        }
        Command::Profit { file, s1, s2 } => {
            let fw = load(cli, file)?;
            let (a, b) = (set_arg(&fw, s1)?, set_arg(&fw, s2)?);
            let v = semantics(cli, &fw).profitable(&a, &b)?;
            let query = json!({"command": "profit", "file": file_str(file), "s1": set_value(&a), "s2": set_value(&b)});
            let text = format!(
                "{} {} {}\nlarger set: {}\nbetter state: {}\nfewer attackers: {} ({} -> {})\n",
                display_set(&a),
                if v.holds { "⊴" } else { "⋬" },
                display_set(&b),
                v.larger_set,
                v.better_state,
                v.fewer_attackers,
                v.attacker_counts.0,
                v.attacker_counts.1
            );
            Outcome::new(query, serde_json::to_value(v).expect("verdict serialises"), text).negative_unless(v.holds)
        }
        Command::Formability { file, kind, set } => {
            let fw = load(cli, file)?;
            let s1 = set_arg(&fw, set)?;
            let kind = match kind {
                FormKind::W => Formability::W,
                FormKind::M => Formability::M,
                FormKind::Ws => Formability::WS,
                FormKind::S => Formability::S,
            };
            let r = semantics(cli, &fw).formability(kind, &s1)?;
            let query = json!({"command": "formability", "file": file_str(file), "kind": kind.to_string(), "set": set_value(&s1)});
            Outcome::new(query, sets_value(&r.partners), lines(&r.partners))
        }
        Command::Np { file, kind } => {
            let np = io::load_np(file)?;
            let kind = match kind {
                NpKindArg::ConflictFree => NPKind::ConflictFree,
                NpKindArg::Admissible => NPKind::Admissible,
                NpKindArg::Preferred => NPKind::Preferred,
            };
            let sets = np.semantics(kind, cli.limit)?;
            let query = json!({"command": "np", "file": file_str(file), "kind": kind.to_string()});
            let text = sets.iter().map(|s| format!("{{{}}}\n", s.iter().cloned().collect::<Vec<_>>().join(","))).collect();
            Outcome::new(query, json!(sets), text)
        }
        Command::Check { file, theorem } => {
            let fw = load(cli, file)?;
            let name = file.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
            let reports = if theorem.eq_ignore_ascii_case("all") {
                check_all(&fw, &name)?
            } else {
                vec![check_theorem(&fw, theorem.parse::<Theorem>()?)?.named(&name)]
            };
            let failed = reports.iter().any(|r| r.verdict == Verdict::Fail);
            let query = json!({"command": "check", "file": file_str(file), "theorem": theorem});
            let text = reports.iter().map(report_text).collect();
            Outcome::new(query, serde_json::to_value(&reports).expect("reports serialise"), text).negative_unless(!failed)
        }
        Command::ExportDot { file, view } => {
            let fw = load(cli, file)?;
            let scope = match view {
                Some(list) => DotScope::ViewOf(set_arg(&fw, list)?),
                None => DotScope::Whole,
            };
            let dot = export_dot(&fw, &scope)?;
            let query = json!({"command": "export-dot", "file": file_str(file), "view": view});
            Outcome::new(query, Value::String(dot.clone()), dot)
        }
        Command::Random { arguments, density, seed, aggregator, output } => {
            let aggregator = match aggregator {
                AggregatorArg::Max => Aggregator::Max,
                AggregatorArg::Sum => Aggregator::Sum,
                AggregatorArg::ExplicitOnly => Aggregator::ExplicitOnly,
            };
            let spec = RandomModelSpec::new(*arguments, *density, *seed).with_aggregator(aggregator);
            let fw = generate_random(&spec);
            io::save(&fw, output)?;
            let query = json!({"command": "random", "spec": spec});
            let text = format!("wrote {} arguments to {}\n", fw.len(), output.display());
            Outcome::new(query, json!({"file": output.display().to_string(), "arguments": fw.len()}), text)
        }
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let start = Instant::now();
    let out = match run(&cli) {
        Ok(out) => out,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(exit_code(&e));
        }
    };
    let elapsed = start.elapsed().as_secs_f64() * 1000.0;
    for d in &out.diagnostics {
        eprintln!("{d}");
    }
    if cli.json {
        let mut doc = QueryResultDocument::new(out.query, out.result);
        doc.diagnostics = out.diagnostics;
        if cli.timing {
            doc.timing_ms = Some(elapsed);
        }
        print!("{}", doc.to_json());
    } else {
        print!("{}", out.text);
        if cli.timing {
            eprintln!("time: {elapsed:.3} ms");
        }
    }
    ExitCode::from(out.code)
}
