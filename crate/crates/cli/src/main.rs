//! `lambek`: command-line front end for the lambek-core library.
//!
//! Exit status: 0 affirmative, 1 definite negative, 2 indeterminate
//! (budget, fuel or bound ran out), 3 input error.

mod out;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context as _, Result};
use clap::builder::{PossibleValuesParser, TypedValueParser};
use clap::{Parser, Subcommand, ValueEnum};

use lambek::algebra::{
    builtin, eval_sequent, find_countermodel, library_models, parse_model, valuations,
    FinBiclosedPoset, Valuation, BUILTIN_NAMES, DEFAULT_SEED,
};
use lambek::corpus::{parse_corpus, run_corpus, RunConfig};
use lambek::dialectica::check_laws;
use lambek::ill::{embed_formula, embed_term, ill_typecheck, preservation_report, IllJudgment};
use lambek::rewrite::{normalize_in, Mode, RewriteError};
use lambek::sequent::{check_derivation, prove, Derivation, ProveOutcome, SearchBudget};
use lambek::syntax::sexp::{
    formula_to_sexp, judgment_to_sexp, sequent_to_sexp, term_to_sexp, Sexp,
};
use lambek::syntax::{
    parse_formula, parse_judgment, parse_sequent, parse_term, CalculusLevel, Context, Judgment,
    Sequent,
};
use lambek::typing::{elaborate, typecheck};
use lambek::Exec;

use out::{Format, Out};

#[derive(Parser, Debug)]
#[command(name = "lambek", version, about = "Lambek calculus workbench")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,

    /// Calculus: l, lbang, lkappa or lbangkappa.
    #[arg(long, global = true, default_value = "l", value_parser = level_parser())]
    level: CalculusLevel,

    /// Proof-search node budget.
    #[arg(long, global = true)]
    budget: Option<usize>,

    /// Rewrite-step fuel.
    #[arg(long, global = true, default_value_t = 10_000)]
    fuel: usize,

    /// Model file, or builtin:NAME.
    #[arg(long, global = true)]
    model: Option<String>,

    /// Bound on the dialectica carrier and on sampled objects.
    #[arg(long, global = true, default_value_t = 2)]
    bound: usize,

    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,

    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,

    /// Run batch work on one thread.
    #[arg(long, global = true)]
    sequential: bool,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Parse a formula, sequent, term or judgment and print it back.
    Parse {
        text: String,
        #[arg(long = "as", value_enum, default_value = "auto")]
        kind: Syntax,
    },
    /// Check a derivation file (s-expression).
    Check { file: PathBuf },
    /// Search for a cut-free derivation.
    Prove {
        sequent: String,
        /// Print the derivation as an s-expression.
        #[arg(long)]
        sexp: bool,
    },
    /// Infer the type of `ctx |- term`.
    Typecheck {
        judgment: String,
        /// Also print the elaborated derivation.
        #[arg(long)]
        derivation: bool,
    },
    /// Normalize a well-typed term.
    Normalize {
        judgment: String,
        /// Print one line per rewrite step.
        #[arg(long)]
        trace: bool,
        /// Run with multiset contexts (unrestricted copy of promotions).
        #[arg(long)]
        ill: bool,
    },
    /// Translate a judgment into ILL and check type and reduction preservation.
    Embed { judgment: String },
    /// Evaluate a sequent in a finite biclosed poset.
    Eval {
        sequent: String,
        /// Comma-separated `atom=element`; all (or sampled) valuations if absent.
        #[arg(long)]
        valuation: Option<String>,
        #[arg(long, default_value_t = 500)]
        samples: usize,
    },
    /// Search the model library (or --model) for a falsifying valuation.
    Countermodel {
        sequent: String,
        #[arg(long, default_value_t = 500)]
        samples: usize,
    },
    /// Run the dialectica law suite over a host model.
    Laws {
        #[arg(long, default_value_t = 50)]
        samples: usize,
    },
    /// Run a corpus file.
    Corpus { file: PathBuf },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Syntax {
    Auto,
    Formula,
    Sequent,
    Term,
    Judgment,
}

fn level_parser() -> impl TypedValueParser<Value = CalculusLevel> {
    PossibleValuesParser::new(["l", "lbang", "lkappa", "lbangkappa"])
        .map(|s| CalculusLevel::from_name(&s).expect("listed level"))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Status {
    Yes = 0,
    No = 1,
    Unknown = 2,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 3 } else { 0 });
        }
    };
    let mut out = Out::new(cli.format);
    let res = run(&cli, &mut out);
    print!("{}", out.finish());
    match res {
        Ok(s) => ExitCode::from(s as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(3)
        }
    }
}

fn run(cli: &Cli, out: &mut Out) -> Result<Status> {
    match &cli.cmd {
        Cmd::Parse { text, kind } => cmd_parse(text, *kind, out),
        Cmd::Check { file } => cmd_check(cli, file, out),
        Cmd::Prove { sequent, sexp } => cmd_prove(cli, sequent, *sexp, out),
        Cmd::Typecheck {
            judgment,
            derivation,
        } => cmd_typecheck(cli, judgment, *derivation, out),
        Cmd::Normalize {
            judgment,
            trace,
            ill,
        } => cmd_normalize(cli, judgment, *trace, *ill, out),
        Cmd::Embed { judgment } => cmd_embed(cli, judgment, out),
        Cmd::Eval {
            sequent,
            valuation,
            samples,
        } => cmd_eval(cli, sequent, valuation.as_deref(), *samples, out),
        Cmd::Countermodel { sequent, samples } => cmd_countermodel(cli, sequent, *samples, out),
        Cmd::Laws { samples } => cmd_laws(cli, *samples, out),
        Cmd::Corpus { file } => cmd_corpus(cli, file, out),
    }
}

fn exec(cli: &Cli) -> Exec {
    if cli.sequential {
        Exec::Sequential
    } else {
        Exec::Parallel
    }
}

fn budget(cli: &Cli) -> SearchBudget {
    let mut b = SearchBudget::default();
    if let Some(n) = cli.budget {
        b.max_visited = n;
    }
    b
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn load_model(spec: &str) -> Result<FinBiclosedPoset> {
    if let Some(name) = spec.strip_prefix("builtin:") {
        return builtin(name).ok_or_else(|| {
            anyhow!(
                "unknown builtin model `{name}` (available: {})",
                BUILTIN_NAMES.join(", ")
            )
        });
    }
    let text = read(Path::new(spec))?;
    parse_model(&text).with_context(|| format!("bad model file {spec}"))
}

fn sequent_at(text: &str, level: CalculusLevel) -> Result<Sequent> {
    let s = parse_sequent(text).map_err(|e| anyhow!("bad sequent: {e}"))?;
    if !s.legal_at(level) {
        bail!("sequent `{s}` uses a modality not available at level {level}");
    }
    Ok(s)
}

/// `ctx |- t`, or a bare closed term.
fn judgment(text: &str) -> Result<Judgment> {
    if text.contains("|-") {
        parse_judgment(text).map_err(|e| anyhow!("bad judgment: {e}"))
    } else {
        let term = parse_term(text).map_err(|e| anyhow!("bad term: {e}"))?;
        Ok(Judgment {
            context: vec![],
            term,
        })
    }
}

fn render_context(ctx: &Context) -> String {
    ctx.iter()
        .map(|(x, a)| format!("{x}:{a}"))
        .collect::<Vec<_>>()
        .join(", ")
}

fn render_judgment(j: &Judgment) -> String {
    if j.context.is_empty() {
        format!("|- {}", j.term)
    } else {
        format!("{} |- {}", render_context(&j.context), j.term)
    }
}

fn render_valuation(m: &FinBiclosedPoset, v: &Valuation) -> String {
    v.iter()
        .map(|(a, &e)| format!("{a}={}", m.names[e]))
        .collect::<Vec<_>>()
        .join(",")
}

fn cmd_parse(text: &str, kind: Syntax, out: &mut Out) -> Result<Status> {
    let kind = match kind {
        Syntax::Auto if text.contains("|-") && text.contains(':') => Syntax::Judgment,
        Syntax::Auto if text.contains("|-") => {
            if parse_sequent(text).is_ok() {
                Syntax::Sequent
            } else {
                Syntax::Judgment
            }
        }
        Syntax::Auto => match (parse_formula(text), parse_term(text)) {
            (Ok(_), _) => Syntax::Formula,
            (Err(_), Ok(_)) => Syntax::Term,
            (Err(e), Err(_)) => bail!("neither a formula nor a term: {e}"),
        },
        k => k,
    };
    let (name, rendered, sexp) = match kind {
        Syntax::Formula => {
            let f = parse_formula(text).map_err(|e| anyhow!("bad formula: {e}"))?;
            ("formula", f.to_string(), formula_to_sexp(&f))
        }
        Syntax::Sequent => {
            let s = parse_sequent(text).map_err(|e| anyhow!("bad sequent: {e}"))?;
            ("sequent", s.to_string(), sequent_to_sexp(&s))
        }
        Syntax::Term => {
            let t = parse_term(text).map_err(|e| anyhow!("bad term: {e}"))?;
            ("term", t.to_string(), term_to_sexp(&t))
        }
        Syntax::Judgment | Syntax::Auto => {
            let j = parse_judgment(text).map_err(|e| anyhow!("bad judgment: {e}"))?;
            let ctx = j
                .context
                .iter()
                .map(|(x, a)| Sexp::list(vec![Sexp::atom(x), formula_to_sexp(a)]))
                .collect();
            let sexp = Sexp::list(vec![
                Sexp::atom("judge"),
                Sexp::atom(":ctx"),
                Sexp::list(ctx),
                Sexp::atom(":term"),
                term_to_sexp(&j.term),
            ]);
            ("judgment", render_judgment(&j), sexp)
        }
    };
    out.text(format!("{name}: {rendered}"));
    out.text(format!("sexp: {sexp}"));
    out.record(&[
        ("kind", name.into()),
        ("render", rendered),
        ("sexp", sexp.to_string()),
    ]);
    Ok(Status::Yes)
}

fn cmd_check(cli: &Cli, file: &Path, out: &mut Out) -> Result<Status> {
    let text = read(file)?;
    let sexp = Sexp::parse(&text).map_err(|e| anyhow!("{}: {e}", file.display()))?;
    let d = Derivation::from_sexp(&sexp).map_err(|e| anyhow!("{}: {e}", file.display()))?;
    match check_derivation(&d, cli.level) {
        Ok(s) => {
            out.text(format!(
                "valid at {}: {s} ({} rules, {} cuts)",
                cli.level,
                d.size(),
                d.count_cuts()
            ));
            out.record(&[
                ("result", "valid".into()),
                ("level", cli.level.to_string()),
                ("sequent", s.to_string()),
                ("size", d.size().to_string()),
                ("cuts", d.count_cuts().to_string()),
            ]);
            Ok(Status::Yes)
        }
        Err(e) => {
            out.text(format!("invalid at {}: {e}", cli.level));
            out.record(&[
                ("result", "invalid".into()),
                ("level", cli.level.to_string()),
                ("error", e.to_string()),
            ]);
            Ok(Status::No)
        }
    }
}

fn cmd_prove(cli: &Cli, text: &str, sexp: bool, out: &mut Out) -> Result<Status> {
    let s = sequent_at(text, cli.level)?;
    let b = budget(cli);
    let (label, status) = match prove(&s, cli.level, b) {
        ProveOutcome::Found(d) => {
            out.text(format!("provable at {}: {s}", cli.level));
            out.text(if sexp { d.to_sexp().to_string() } else { d.to_string() });
            out.record(&[
                ("result", "provable".into()),
                ("level", cli.level.to_string()),
                ("sequent", s.to_string()),
                ("derivation", d.to_sexp().to_string()),
            ]);
            return Ok(Status::Yes);
        }
        ProveOutcome::NotProvable => ("not-provable", Status::No),
        ProveOutcome::BudgetExceeded => ("budget-exceeded", Status::Unknown),
    };
    match status {
        Status::No => out.text(format!("not provable at {}: {s}", cli.level)),
        _ => out.text(format!(
            "undecided at {}: {s} (budget of {} nodes exceeded)",
            cli.level, b.max_visited
        )),
    }
    out.record(&[
        ("result", label.into()),
        ("level", cli.level.to_string()),
        ("sequent", s.to_string()),
    ]);
    Ok(status)
}

fn cmd_typecheck(cli: &Cli, text: &str, derivation: bool, out: &mut Out) -> Result<Status> {
    let j = judgment(text)?;
    match typecheck(&j.context, &j.term, cli.level) {
        Ok(ty) => {
            out.text(format!("{} : {ty}", render_judgment(&j)));
            if derivation {
                let d = elaborate(&j.context, &j.term, cli.level)
                    .map_err(|e| anyhow!("elaboration failed: {e}"))?;
                out.text(d.to_string());
            }
            out.record(&[
                ("result", "typed".into()),
                ("type", ty.to_string()),
                ("judgment", judgment_to_sexp(&j.context, &j.term, &ty).to_string()),
            ]);
            Ok(Status::Yes)
        }
        Err(e) => {
            out.text(format!("ill-typed at {}: {e}", cli.level));
            out.record(&[
                ("result", "ill-typed".into()),
                ("kind", format!("{:?}", e.kind)),
                ("location", lambek::syntax::render_path(&e.location)),
                ("detail", e.detail.clone()),
            ]);
            Ok(Status::No)
        }
    }
}

fn cmd_normalize(cli: &Cli, text: &str, trace: bool, ill: bool, out: &mut Out) -> Result<Status> {
    let j = judgment(text)?;
    let ty = typecheck(&j.context, &j.term, cli.level)
        .map_err(|e| anyhow!("term is not well typed at {}: {e}", cli.level))?;
    let mode = if ill { Mode::Ill } else { Mode::Lambek };
    let mut lines = Vec::new();
    let res = normalize_in(&j.term, cli.fuel, mode, Some(&mut lines));
    if trace {
        for l in &lines {
            out.text(l.to_string());
            out.record(&[
                ("step", l.rule.to_string()),
                ("path", lambek::syntax::render_path(&l.path)),
                ("term", term_to_sexp(&l.term).to_string()),
            ]);
        }
    }
    match res {
        Ok(n) => {
            out.text(format!("{} : {ty}  ({} steps)", n.term, n.steps));
            out.record(&[
                ("result", "normal".into()),
                ("term", n.term.to_string()),
                ("steps", n.steps.to_string()),
                ("type", ty.to_string()),
            ]);
            Ok(Status::Yes)
        }
        Err(RewriteError::FuelExhausted { steps, term }) => {
            out.text(format!("fuel exhausted after {steps} steps: {term}"));
            out.record(&[
                ("result", "fuel-exhausted".into()),
                ("steps", steps.to_string()),
                ("term", term.to_string()),
            ]);
            Ok(Status::Unknown)
        }
        Err(e) => bail!("rewrite failed: {e}"),
    }
}

fn cmd_embed(cli: &Cli, text: &str, out: &mut Out) -> Result<Status> {
    let j = judgment(text)?;
    let ty = typecheck(&j.context, &j.term, cli.level)
        .map_err(|e| anyhow!("term is not well typed at {}: {e}", cli.level))?;
    let ij = IllJudgment {
        context: j
            .context
            .iter()
            .map(|(x, a)| (x.clone(), embed_formula(a)))
            .collect(),
        term: embed_term(&j.term),
        ty: embed_formula(&ty),
    };
    let ctx: Vec<String> = ij.context.iter().map(|(x, a)| format!("{x}:{a}")).collect();
    out.text(format!("{} |- {} : {}", ctx.join(", "), ij.term, ij.ty));
    let typed = ill_typecheck(&ij);
    let report = preservation_report(&[(j.context.clone(), j.term.clone(), cli.level)], Exec::Sequential);
    let entry = &report.entries[0];
    match &typed {
        Ok(()) => out.text("ILL typing: ok"),
        Err(e) => out.text(format!("ILL typing: FAILED: {e}")),
    }
    for s in &entry.steps {
        let target = s.target_steps.map_or("unreached".to_string(), |n| n.to_string());
        out.text(format!(
            "  {} @ {} -> {} ILL steps{}",
            s.redex.rule,
            lambek::syntax::render_path(&s.redex.path),
            target,
            if s.ok() { "" } else { "  FAILED" }
        ));
        out.record(&[
            ("step", s.redex.rule.to_string()),
            ("path", lambek::syntax::render_path(&s.redex.path)),
            ("target_steps", target),
            ("ok", s.ok().to_string()),
        ]);
    }
    let ok = typed.is_ok() && report.ok();
    out.record(&[
        ("result", if ok { "preserved" } else { "not-preserved" }.into()),
        ("context", ctx.join(", ")),
        ("term", ij.term.to_string()),
        ("type", ij.ty.to_string()),
        ("steps", entry.steps.len().to_string()),
    ]);
    out.text(if ok { "preserved" } else { "not preserved" });
    Ok(if ok { Status::Yes } else { Status::No })
}

fn parse_valuation(m: &FinBiclosedPoset, text: &str) -> Result<Valuation> {
    let mut v = Valuation::new();
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (a, e) = part
            .split_once('=')
            .ok_or_else(|| anyhow!("valuation entry `{part}` is not atom=element"))?;
        let idx = m
            .index_of(e.trim())
            .or_else(|| e.trim().parse::<usize>().ok().filter(|&i| i < m.len()))
            .ok_or_else(|| anyhow!("model {} has no element `{}`", m.label, e.trim()))?;
        v.insert(a.trim().to_string(), idx);
    }
    Ok(v)
}

fn cmd_eval(
    cli: &Cli,
    text: &str,
    valuation: Option<&str>,
    samples: usize,
    out: &mut Out,
) -> Result<Status> {
    let s = sequent_at(text, cli.level)?;
    let m = load_model(cli.model.as_deref().unwrap_or("builtin:two"))?;
    let atoms: Vec<String> = s.atoms().into_iter().collect();
    let vals = match valuation {
        Some(t) => {
            let v = parse_valuation(&m, t)?;
            if let Some(a) = atoms.iter().find(|a| !v.contains_key(*a)) {
                bail!("valuation leaves atom `{a}` unassigned");
            }
            vec![v]
        }
        None => valuations(&m, &atoms, samples, cli.seed),
    };
    let mut falsified = None;
    for v in &vals {
        let holds = eval_sequent(&m, v, &s).map_err(|e| anyhow!("cannot evaluate in {}: {e}", m.label))?;
        if !holds {
            falsified = Some(v);
            break;
        }
    }
    match falsified {
        None => {
            out.text(format!("holds in {} under {} valuation(s): {s}", m.label, vals.len()));
            out.record(&[
                ("result", "holds".into()),
                ("model", m.label.clone()),
                ("valuations", vals.len().to_string()),
            ]);
            Ok(Status::Yes)
        }
        Some(v) => {
            out.text(format!("fails in {} under {}: {s}", m.label, render_valuation(&m, v)));
            out.record(&[
                ("result", "fails".into()),
                ("model", m.label.clone()),
                ("valuation", render_valuation(&m, v)),
            ]);
            Ok(Status::No)
        }
    }
}

fn cmd_countermodel(cli: &Cli, text: &str, samples: usize, out: &mut Out) -> Result<Status> {
    let s = sequent_at(text, cli.level)?;
    let own;
    let models: &[FinBiclosedPoset] = match &cli.model {
        Some(spec) => {
            own = [load_model(spec)?];
            &own
        }
        None => library_models(),
    };
    match find_countermodel(&s, cli.level, models, samples, cli.seed) {
        Some(c) => {
            let v = render_valuation(&c.model, &c.valuation);
            out.text(format!("countermodel: {} with {v}", c.model.label));
            out.record(&[
                ("result", "countermodel".into()),
                ("model", c.model.label.clone()),
                ("valuation", v),
            ]);
            Ok(Status::No)
        }
        None => {
            out.text(format!("no countermodel among {} model(s)", models.len()));
            out.record(&[
                ("result", "none".into()),
                ("models", models.len().to_string()),
            ]);
            Ok(Status::Yes)
        }
    }
}

fn cmd_laws(cli: &Cli, samples: usize, out: &mut Out) -> Result<Status> {
    let m = load_model(cli.model.as_deref().unwrap_or("builtin:two"))?;
    let report = check_laws(&m, samples, cli.bound, cli.seed, exec(cli));
    out.text(report.to_string());
    out.raw_machine(&report.machine());
    let definite = report
        .results
        .iter()
        .any(|r| r.failed > 0 || r.order_sensitive > 0);
    Ok(if report.ok() {
        Status::Yes
    } else if definite {
        Status::No
    } else {
        Status::Unknown
    })
}

fn cmd_corpus(cli: &Cli, file: &Path, out: &mut Out) -> Result<Status> {
    let text = read(file)?;
    let entries = parse_corpus(&text).map_err(|e| anyhow!("{}: {e}", file.display()))?;
    let cfg = RunConfig {
        budget: budget(cli),
        fuel: cli.fuel,
    };
    let report = run_corpus(&entries, &cfg, exec(cli));
    out.text(report.to_string());
    out.raw_machine(&report.machine());
    Ok(if report.failed() > 0 {
        Status::No
    } else if report.indeterminate() > 0 {
        Status::Unknown
    } else {
        Status::Yes
    })
}
