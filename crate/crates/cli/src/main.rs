use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use qpa_core::classify::{is_hierarchical, is_structurally_simple, reduce_dfa_intersection};
use qpa_core::dot::{extended_graph_dot, support_graph_dot};
use qpa_core::format::{parse_automaton, parse_dfa, write_automaton};
use qpa_core::lasso::{lasso_acceptance_probability, simulate_runs};
use qpa_core::prob::parse_prob;
use qpa_core::qualitative::{decide, Mode, Problem};
use qpa_core::supportgraph::{
    build_extended_support_graph, build_support_graph, is_sharp_acyclic, replay,
    synthesize_limit_word, Border, SelfLoops,
};
use qpa_core::{Answer, Automaton, Budgets, Error, LassoWord, Verdict};

mod report;

use report::{render_prob, render_witness, Report};

#[derive(Parser)]
#[command(
    name = "qpa",
    version,
    about = "Qualitative analysis of probabilistic automata on infinite words"
)]
struct Cli {
    #[command(flatten)]
    opts: Opts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct Opts {
    /// Print one JSON object per report.
    #[arg(long, global = true)]
    json: bool,
    /// Add a decimal rendering next to every rational.
    #[arg(long, global = true)]
    approx: bool,
    #[arg(long, global = true, value_name = "N")]
    monoid_budget: Option<usize>,
    #[arg(long, global = true, value_name = "N")]
    subset_budget: Option<usize>,
    /// Element budget of the extended support graph.
    #[arg(long, global = true, value_name = "N")]
    path_cap: Option<usize>,
}

impl Opts {
    fn budgets(&self) -> Budgets {
        let mut b = Budgets::default();
        if let Some(m) = self.monoid_budget {
            b.monoid = m;
        }
        if let Some(s) = self.subset_budget {
            b.subsets = s;
        }
        if let Some(p) = self.path_cap {
            b.extended = p;
        }
        b
    }
}

#[derive(Subcommand)]
enum Command {
    /// Decide a qualitative problem.
    Decide {
        #[arg(long, value_enum)]
        problem: ProblemArg,
        #[arg(long, value_enum, default_value = "simple")]
        mode: ModeArg,
        file: PathBuf,
    },
    /// Report structural properties.
    Classify { file: PathBuf },
    /// Exact acceptance probability of a lasso word.
    Lasso {
        #[arg(long, default_value = "")]
        prefix: String,
        #[arg(long)]
        period: String,
        file: PathBuf,
    },
    /// Monte Carlo estimate for a lasso word.
    Simulate {
        #[arg(long, default_value = "")]
        prefix: String,
        #[arg(long)]
        period: String,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        file: PathBuf,
    },
    /// Export a support graph in DOT.
    Graph {
        #[arg(value_enum)]
        kind: GraphKind,
        #[arg(long)]
        dot: PathBuf,
        file: PathBuf,
    },
    /// Build the almost-sure instance for a DFA intersection.
    Reduce {
        #[arg(required = true)]
        dfas: Vec<PathBuf>,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Find a word putting mass at least 1 - eps into a target set.
    Synthesize {
        #[arg(long)]
        target: String,
        #[arg(long, default_value = "1/100")]
        eps: String,
        file: PathBuf,
    },
    /// Replay a word with borders from a set of states.
    Replay {
        #[arg(long)]
        from: String,
        #[arg(long)]
        word: String,
        /// Borders such as "(1,2) (5,6)".
        #[arg(long, default_value = "")]
        borders: String,
        file: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ProblemArg {
    Positive,
    Almost,
    Limit,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Simple,
    General,
    Lasso,
    StructSimple,
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphKind {
    Support,
    Extended,
}

impl ProblemArg {
    fn name(self) -> &'static str {
        match self {
            ProblemArg::Positive => "positive",
            ProblemArg::Almost => "almost",
            ProblemArg::Limit => "limit",
        }
    }
}

impl ModeArg {
    fn name(self) -> &'static str {
        match self {
            ModeArg::Simple => "simple",
            ModeArg::General => "general",
            ModeArg::Lasso => "lasso",
            ModeArg::StructSimple => "struct-simple",
        }
    }
}

const EXIT_YES: u8 = 0;
const EXIT_NO: u8 = 1;
const EXIT_UNDECIDABLE: u8 = 2;
const EXIT_BUDGET: u8 = 3;
const EXIT_INPUT: u8 = 4;

/// Exit code for a library error.
fn error_code(e: &Error) -> u8 {
    match e {
        Error::Budget { .. } | Error::PumpingExhausted { .. } => EXIT_BUDGET,
        Error::NotStructurallySimple => EXIT_UNDECIDABLE,
        _ => EXIT_INPUT,
    }
}

fn error_answer(code: u8) -> &'static str {
    match code {
        EXIT_BUDGET => "budget_exceeded",
        EXIT_UNDECIDABLE => "undecidable_in_general",
        _ => "input_error",
    }
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure {
            code: error_code(&e),
            message: e.to_string(),
        }
    }
}

fn input_error(message: String) -> Failure {
    Failure {
        code: EXIT_INPUT,
        message,
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| input_error(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<Automaton, Failure> {
    parse_automaton(&read(path)?).map_err(|e| input_error(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| input_error(format!("{}: {e}", path.display())))
}

fn lasso_word(a: &Automaton, prefix: &str, period: &str) -> Result<LassoWord, Failure> {
    Ok(LassoWord::new(
        a.parse_word(prefix)?,
        a.parse_word(period)?,
    )?)
}

fn parse_borders(s: &str) -> Result<Vec<Border>, Failure> {
    let bad = || input_error(format!("malformed borders `{s}`"));
    let cleaned: String = s
        .chars()
        .map(|c| if "(),".contains(c) { ' ' } else { c })
        .collect();
    let nums = cleaned
        .split_whitespace()
        .map(|t| t.parse::<usize>().map_err(|_| bad()))
        .collect::<Result<Vec<_>, _>>()?;
    if nums.len() % 2 != 0 {
        return Err(bad());
    }
    Ok(nums.chunks(2).map(|p| Border::new(p[0], p[1])).collect())
}

fn path_str(p: &Path) -> String {
    p.display().to_string()
}

fn verdict_code(v: &Verdict) -> u8 {
    match v.answer {
        Answer::Yes => EXIT_YES,
        Answer::No => EXIT_NO,
        Answer::UndecidableInGeneral => EXIT_UNDECIDABLE,
    }
}

fn run(command: &Command, opts: Opts, report: &mut Report) -> Result<u8, Failure> {
    let budgets = opts.budgets();
    match command {
        Command::Decide {
            problem,
            mode,
            file,
        } => {
            report.query = json!({
                "command": "decide",
                "problem": problem.name(),
                "mode": mode.name(),
                "file": path_str(file),
            });
            let a = load(file)?;
            let p = match problem {
                ProblemArg::Positive => Problem::Positive,
                ProblemArg::Almost => Problem::Almost,
                ProblemArg::Limit => Problem::Limit,
            };
            let m = match mode {
                ModeArg::Simple => Mode::Simple,
                ModeArg::General => Mode::General,
                ModeArg::Lasso => Mode::Lasso,
                ModeArg::StructSimple => Mode::StructSimple,
            };
            let v = decide(&a, p, m, &budgets)?;
            report.answer = json!(v.answer.as_str());
            report.witness = v
                .witness
                .as_ref()
                .map(|w| render_witness(&a, w, opts.approx))
                .unwrap_or(Value::Null);
            report.diagnostics = Some(v.diagnostics.clone());
            Ok(verdict_code(&v))
        }
        Command::Classify { file } => {
            report.query = json!({ "command": "classify", "file": path_str(file) });
            let a = load(file)?;
            let mut code = EXIT_YES;
            let mut over = |e: Error| -> Result<Value, Failure> {
                match e {
                    Error::Budget { .. } => {
                        code = EXIT_BUDGET;
                        Ok(json!("budget_exceeded"))
                    }
                    other => Err(other.into()),
                }
            };
            let yes_no = |b: bool| json!(if b { "yes" } else { "no" });
            let acyclic = match is_sharp_acyclic(&a, SelfLoops::Ignore, &budgets) {
                Ok(b) => yes_no(b),
                Err(e) => over(e)?,
            };
            let hier = is_hierarchical(&a);
            let mut witness = serde_json::Map::new();
            if let Some(w) = &hier.witness {
                witness.insert("hierarchical".into(), render_witness(&a, w, opts.approx));
            }
            let simple = match is_structurally_simple(&a, &budgets) {
                Ok(v) => {
                    if let Some(w) = &v.witness {
                        witness.insert(
                            "structurally_simple".into(),
                            render_witness(&a, w, opts.approx),
                        );
                    }
                    json!(v.answer.as_str())
                }
                Err(e) => over(e)?,
            };
            report.answer = json!({
                "deterministic": yes_no(a.is_deterministic()),
                "sharp_acyclic": acyclic,
                "hierarchical": hier.answer.as_str(),
                "structurally_simple": simple,
            });
            report.witness = Value::Object(witness);
            Ok(code)
        }
        Command::Lasso {
            prefix,
            period,
            file,
        } => {
            report.query = json!({
                "command": "lasso",
                "prefix": prefix,
                "period": period,
                "file": path_str(file),
            });
            let a = load(file)?;
            let w = lasso_word(&a, prefix, period)?;
            let p = lasso_acceptance_probability(&a, &w)?;
            report.answer = json!({
                "probability": render_prob(&p, opts.approx),
                "almost_sure": p == qpa_core::prob::one(),
                "positive": p > qpa_core::prob::zero(),
            });
            report.witness =
                json!({ "prefix": a.render_word(&w.prefix), "period": a.render_word(&w.period) });
            Ok(EXIT_YES)
        }
        Command::Simulate {
            prefix,
            period,
            samples,
            seed,
            file,
        } => {
            report.query = json!({
                "command": "simulate",
                "prefix": prefix,
                "period": period,
                "samples": samples,
                "seed": seed,
                "file": path_str(file),
            });
            let a = load(file)?;
            let w = lasso_word(&a, prefix, period)?;
            let est = simulate_runs(&a, &w, *samples, *seed)?;
            report.answer = json!({
                "accept_fraction": est.accept_fraction,
                "half_width_95": est.half_width_95,
            });
            Ok(EXIT_YES)
        }
        Command::Graph { kind, dot, file } => {
            let name = match kind {
                GraphKind::Support => "support",
                GraphKind::Extended => "extended",
            };
            report.query = json!({
                "command": "graph",
                "kind": name,
                "dot": path_str(dot),
                "file": path_str(file),
            });
            let a = load(file)?;
            let (text, nodes, edges) = match kind {
                GraphKind::Support => {
                    let g = build_support_graph(&a, &budgets)?;
                    (support_graph_dot(&a, &g), g.nodes.len(), g.edges.len())
                }
                GraphKind::Extended => {
                    let g = build_extended_support_graph(
                        &a,
                        &[a.initial_support()],
                        false,
                        budgets.extended,
                    )?;
                    let edges = g.edges();
                    let mut nodes: Vec<_> = edges.iter().flat_map(|&(l, r, _)| [l, r]).collect();
                    nodes.sort();
                    nodes.dedup();
                    (extended_graph_dot(&a, &g), nodes.len(), edges.len())
                }
            };
            write(dot, &text)?;
            report.answer = json!({ "nodes": nodes, "edges": edges });
            Ok(EXIT_YES)
        }
        Command::Reduce { dfas, output } => {
            report.query = json!({
                "command": "reduce",
                "dfas": dfas.iter().map(|p| path_str(p)).collect::<Vec<_>>(),
                "output": path_str(output),
            });
            let parsed = dfas
                .iter()
                .map(|p| {
                    parse_dfa(&read(p)?).map_err(|e| input_error(format!("{}: {e}", p.display())))
                })
                .collect::<Result<Vec<_>, _>>()?;
            let a = reduce_dfa_intersection(&parsed)?;
            write(output, &write_automaton(&a))?;
            report.answer = json!({ "states": a.num_states(), "letters": a.num_letters() });
            Ok(EXIT_YES)
        }
        Command::Synthesize { target, eps, file } => {
            report.query = json!({
                "command": "synthesize",
                "target": target,
                "eps": eps,
                "file": path_str(file),
            });
            let a = load(file)?;
            let t = a.parse_states(target)?;
            let e = parse_prob(eps)
                .filter(|e| *e > qpa_core::prob::zero() && *e < qpa_core::prob::one())
                .ok_or_else(|| {
                    input_error(format!("eps must be a rational in (0,1), got `{eps}`"))
                })?;
            let s = synthesize_limit_word(&a, t, &e, &budgets)?;
            report.answer = json!("yes");
            report.witness = json!({
                "word": a.render_word(&s.word),
                "length": s.word.len(),
                "target": a.render_set(t),
                "probability": render_prob(&s.probability, opts.approx),
                "pumping": s.pumping,
            });
            Ok(EXIT_YES)
        }
        Command::Replay {
            from,
            word,
            borders,
            file,
        } => {
            report.query = json!({
                "command": "replay",
                "from": from,
                "word": word,
                "borders": borders,
                "file": path_str(file),
            });
            let a = load(file)?;
            let org = a.parse_states(from)?;
            let w = a.parse_word(word)?;
            let bs = parse_borders(borders)?;
            let dest = replay(&a, org, &w, &bs)?;
            report.answer = json!(a.render_set(dest));
            Ok(EXIT_YES)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut report = Report::new(&cli.opts.budgets());
    let code = match run(&cli.command, cli.opts, &mut report) {
        Ok(code) => code,
        Err(f) => {
            report.answer = json!(error_answer(f.code));
            report.error = Some(f.message.clone());
            if !cli.opts.json {
                eprintln!("error: {}", f.message);
            }
            f.code
        }
    };
    if cli.opts.json {
        println!("{}", report.to_json());
    } else {
        print!("{}", report.to_text());
    }
    ExitCode::from(code)
}
