use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, ValueEnum};

use priolog::answerset::{AnswerSetReport, EnumerationGuard};
use priolog::semantics::{wfs, wfs_pr, wfs_star, Engine, SemanticsTrace};
use priolog::{load_program, LiteralSet, Program};

use crate::report::{set_line, sorted_literals, trace_entries, Report, TraceEntry};

const EXIT_LOAD: u8 = 1;
const EXIT_TOO_LARGE: u8 = 2;
const EXIT_USAGE: u8 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SemanticsArg {
    /// Classical well-founded conclusions.
    Wfs,
    /// Strengthened well-founded conclusions.
    WfsStar,
    /// Prioritized well-founded conclusions.
    WfsPr,
    /// Enumerate all answer sets.
    Answer,
    /// Enumerate priority-preserving answer sets.
    PpAnswer,
    /// Run wfs, wfs-star and wfs-pr and check the inclusion chain.
    Diff,
}

impl SemanticsArg {
    fn label(self) -> &'static str {
        match self {
            SemanticsArg::Wfs => "wfs",
            SemanticsArg::WfsStar => "wfs-star",
            SemanticsArg::WfsPr => "wfs-pr",
            SemanticsArg::Answer => "answer",
            SemanticsArg::PpAnswer => "pp-answer",
            SemanticsArg::Diff => "diff",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum EngineArg {
    Declarative,
    Incremental,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Text,
    Json,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    /// Program file (`.lp`).
    pub file: PathBuf,

    /// Semantics to compute.
    #[arg(long, short, value_enum)]
    pub semantics: SemanticsArg,

    /// Fixpoint engine; only meaningful with `--semantics wfs-pr`.
    #[arg(long, value_enum)]
    pub engine: Option<EngineArg>,

    /// Let an established strong negation satisfy the matching weak one.
    #[arg(long)]
    pub coherence: bool,

    /// Print the iteration sequence before the conclusions.
    #[arg(long)]
    pub trace: bool,

    /// Output format.
    #[arg(long, value_enum, default_value = "text")]
    pub format: FormatArg,

    /// Enumeration guard for the answer set modes.
    #[arg(long, default_value_t = 20)]
    pub max_atoms: usize,
}

fn usage_error(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(EXIT_USAGE)
}

pub fn solve(args: &SolveArgs) -> ExitCode {
    if args.engine.is_some() && args.semantics != SemanticsArg::WfsPr {
        return usage_error("--engine applies only to --semantics wfs-pr");
    }
    if args.coherence
        && !matches!(args.semantics, SemanticsArg::WfsPr | SemanticsArg::Diff)
    {
        return usage_error("--coherence applies only to --semantics wfs-pr or diff");
    }
    if args.trace
        && !matches!(
            args.semantics,
            SemanticsArg::Wfs | SemanticsArg::WfsStar | SemanticsArg::WfsPr
        )
    {
        return usage_error("--trace applies only to the well-founded semantics modes");
    }

    let source = match std::fs::read_to_string(&args.file) {
        Ok(s) => s,
        Err(err) => {
            eprintln!("error: cannot read {}: {err}", args.file.display());
            return ExitCode::from(EXIT_LOAD);
        }
    };
    let program = match load_program(&source) {
        Ok(p) => p,
        Err(err) => {
            eprintln!("error: {}: {err}", args.file.display());
            return ExitCode::from(EXIT_LOAD);
        }
    };

    match args.semantics {
        SemanticsArg::Wfs => {
            let trace = wfs(&program);
            emit_conclusions(args, &program, trace)
        }
        SemanticsArg::WfsStar => {
            let trace = wfs_star(&program);
            emit_conclusions(args, &program, trace)
        }
        SemanticsArg::WfsPr => {
            let engine = match args.engine.unwrap_or(EngineArg::Declarative) {
                EngineArg::Declarative => Engine::Declarative,
                EngineArg::Incremental => Engine::Incremental,
            };
            let trace = wfs_pr(&program, engine, args.coherence);
            emit_conclusions(args, &program, trace)
        }
        SemanticsArg::Answer | SemanticsArg::PpAnswer => emit_answer_sets(args, &program),
        SemanticsArg::Diff => emit_diff(args, &program),
    }
}

fn emit(args: &SolveArgs, report: &Report, text: &str) -> ExitCode {
    match args.format {
        FormatArg::Text => print!("{text}"),
        FormatArg::Json => {
            println!("{}", serde_json::to_string_pretty(report).expect("report serializes"))
        }
    }
    ExitCode::SUCCESS
}

fn emit_conclusions(args: &SolveArgs, program: &Program, trace: SemanticsTrace) -> ExitCode {
    let entries = args.trace.then(|| trace_entries(program, &trace));
    let mut text = String::new();
    if let Some(entries) = &entries {
        text.push_str(&render_trace(entries));
    }
    for lit in sorted_literals(trace.final_set()) {
        text.push_str(&lit);
        text.push('\n');
    }

    let report = Report {
        semantics: args.semantics.label().to_string(),
        conclusions: sorted_literals(trace.final_set()),
        trace: entries,
        answer_sets: None,
        priority_preserving: None,
        diff: None,
    };
    emit(args, &report, &text)
}

fn render_trace(entries: &[TraceEntry]) -> String {
    let mut out = String::new();
    for entry in entries {
        out.push_str(&format!("S{} = {{{}}}\n", entry.step, entry.conclusions.join(", ")));
        for rule in &entry.new_safe_rules {
            out.push_str(&format!("  safe: {rule}\n"));
        }
    }
    out
}

fn intersection(sets: &[LiteralSet]) -> Vec<String> {
    match sets.split_first() {
        None => Vec::new(),
        Some((first, rest)) => {
            let common: LiteralSet = first
                .iter()
                .filter(|l| rest.iter().all(|s| s.contains(l)))
                .cloned()
                .collect();
            sorted_literals(&common)
        }
    }
}

fn emit_answer_sets(args: &SolveArgs, program: &Program) -> ExitCode {
    let guard = EnumerationGuard { max_atoms: args.max_atoms };
    let analysis = match AnswerSetReport::analyze(program, &guard) {
        Ok(a) => a,
        Err(err) => {
            eprintln!("error: {err}");
            return ExitCode::from(EXIT_TOO_LARGE);
        }
    };

    let preserving: Vec<LiteralSet> = analysis.preserving_sets().cloned().collect();
    let reported: &[LiteralSet] = match args.semantics {
        SemanticsArg::PpAnswer => &preserving,
        _ => &analysis.answer_sets,
    };

    let mut text = String::new();
    for set in reported {
        text.push_str(&set_line(set));
        text.push('\n');
    }

    let report = Report {
        semantics: args.semantics.label().to_string(),
        conclusions: intersection(reported),
        trace: None,
        answer_sets: Some(analysis.answer_sets.iter().map(sorted_literals).collect()),
        priority_preserving: Some(preserving.iter().map(sorted_literals).collect()),
        diff: None,
    };
    emit(args, &report, &text)
}

fn emit_diff(args: &SolveArgs, program: &Program) -> ExitCode {
    let wfs_set = wfs(program).final_set().clone();
    let star_set = wfs_star(program).final_set().clone();
    let pr_set = wfs_pr(program, Engine::Declarative, args.coherence).final_set().clone();

    let inclusions_ok = wfs_set.is_subset(&star_set) && star_set.is_subset(&pr_set);
    let mut text = String::new();
    text.push_str(&format!("wfs      = {}\n", set_line(&wfs_set)));
    text.push_str(&format!("wfs-star = {}\n", set_line(&star_set)));
    text.push_str(&format!("wfs-pr   = {}\n", set_line(&pr_set)));
    text.push_str(&format!("inclusions: {}\n", if inclusions_ok { "ok" } else { "VIOLATED" }));

    let report = Report {
        semantics: "diff".to_string(),
        conclusions: sorted_literals(&pr_set),
        trace: None,
        answer_sets: None,
        priority_preserving: None,
        diff: Some(crate::report::DiffReport {
            wfs: sorted_literals(&wfs_set),
            wfs_star: sorted_literals(&star_set),
            wfs_pr: sorted_literals(&pr_set),
            inclusions_ok,
        }),
    };

    let code = emit(args, &report, &text);
    if !inclusions_ok {
        eprintln!(
            "internal error: the well-founded inclusion chain is violated; this is an engine bug"
        );
        return ExitCode::from(EXIT_LOAD);
    }
    code
}
