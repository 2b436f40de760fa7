//! Command-line front end for the `agfuzz` library.

mod demo;
mod parse;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use agfuzz::algebra::{check_law, enumerate_crisp, find_left_identity, Law};
use agfuzz::catalog::{catalog_up_to, classify_structure, Catalog, EnumOptions};
use agfuzz::ideals::{check_classic, cross_validate, Verdict};
use agfuzz::lab::{self, GradeGrid, LabConfig, Mode, SearchOutcome, SearchTarget, TheoremId};
use agfuzz::{FuzzySubset, Grade, Groupoid, IdealKind, KParam};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

pub use parse::{parse_fuzzy_file, parse_groupoid_file};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("unassigned: {0}")]
    Unassigned(String),
    #[error("{path}: {msg}")]
    Io { path: String, msg: String },
    #[error(transparent)]
    Core(#[from] agfuzz::Error),
    #[error("{0}")]
    Usage(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Exhaustive,
    Sample,
}

#[derive(Debug, Parser)]
#[command(name = "agfuzz", version, about = "Fuzzy ideals of finite AG-groupoids")]
pub struct RunConfig {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Cap on |grid|^n for exhaustive enumeration.
    #[arg(long, env = "AGFUZZ_BUDGET", default_value_t = 10_000_000, global = true)]
    pub budget: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GroupoidArg {
    /// Groupoid table file.
    #[arg(long = "g", value_name = "FILE")]
    pub groupoid: PathBuf,
}

#[derive(Debug, Args)]
pub struct LabArgs {
    #[arg(long, default_value = "0")]
    pub k: String,
    /// Comma-separated grades, must include 0 and 1.
    #[arg(long, default_value = "0,1/4,1/2,3/4,1")]
    pub grid: String,
    #[arg(long, value_enum, default_value_t = ModeArg::Exhaustive)]
    pub mode: ModeArg,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Number of samples in sample mode.
    #[arg(long, default_value_t = 500)]
    pub count: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the left invertive, medial, paramedial and related laws.
    CheckLaws(GroupoidArg),
    /// Laws, identity, regularity and crisp ideal counts.
    Classify(GroupoidArg),
    /// List the crisp ideals of one kind.
    Ideals {
        kind: String,
        #[command(flatten)]
        g: GroupoidArg,
    },
    /// Decide whether a fuzzy subset is an (∈,∈∨q_k)-fuzzy ideal.
    FuzzyCheck {
        kind: String,
        #[command(flatten)]
        g: GroupoidArg,
        /// Fuzzy subset file.
        #[arg(long = "f", value_name = "FILE")]
        fuzzy: PathBuf,
        #[arg(long, default_value = "0")]
        k: String,
    },
    /// Level sets of a fuzzy subset as a step function of t.
    LevelSets {
        #[command(flatten)]
        g: GroupoidArg,
        #[arg(long = "f", value_name = "FILE")]
        fuzzy: PathBuf,
    },
    /// Check one registry theorem on a groupoid.
    Theorem {
        id: String,
        #[command(flatten)]
        g: GroupoidArg,
        #[command(flatten)]
        lab: LabArgs,
    },
    /// Search the catalog for a counterexample (converse directions).
    SearchCounterexample {
        id: String,
        /// Scan all AG-groupoids up to this order.
        #[arg(long, default_value_t = 3)]
        max_order: usize,
        /// Scan isomorphism class representatives only.
        #[arg(long)]
        iso: bool,
        #[command(flatten)]
        lab: LabArgs,
    },
    /// Enumerate AG-groupoids of order n.
    Enumerate {
        n: usize,
        #[arg(long)]
        iso: bool,
        /// Keep only groupoids with a left identity.
        #[arg(long)]
        ident: bool,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        /// Required for order 5.
        #[arg(long)]
        long_running: bool,
        /// Write the catalog file here instead of printing it.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Replay both worked examples.
    DemoPaper,
}

/// What a command produced.
#[derive(Debug, Clone)]
pub struct Report {
    pub pass: bool,
    pub text: String,
    pub json: Value,
}

impl Report {
    fn new(pass: bool, text: String, mut json: Value) -> Self {
        if let Value::Object(m) = &mut json {
            m.insert("pass".into(), Value::Bool(pass));
        }
        Report { pass, text, json }
    }

    pub fn exit_code(&self) -> i32 {
        if self.pass {
            0
        } else {
            1
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => {
                let mut s = self.text.clone();
                if !s.ends_with('\n') {
                    s.push('\n');
                }
                s.push_str(if self.pass { "PASS\n" } else { "FAIL\n" });
                s
            }
            Format::Json => serde_json::to_string_pretty(&self.json).expect("json values serialize") + "\n",
        }
    }
}

/// Renders an error the way `main` prints it.
pub fn render_error(err: &CliError, format: Format) -> String {
    match format {
        Format::Text => format!("error: {err}\n"),
        Format::Json => serde_json::to_string_pretty(&json!({ "error": err.to_string(), "pass": false })).expect("json") + "\n",
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io { path: path.display().to_string(), msg: e.to_string() })
}

fn load_groupoid(arg: &GroupoidArg) -> Result<Groupoid, CliError> {
    let g = parse_groupoid_file(&read(&arg.groupoid)?)?;
    let name = arg.groupoid.file_name().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    Ok(g.with_name(name))
}

fn load_fuzzy(path: &Path, g: &Groupoid) -> Result<FuzzySubset, CliError> {
    parse_fuzzy_file(&read(path)?, g)
}

fn parse_kind(s: &str) -> Result<IdealKind, CliError> {
    s.parse().map_err(|_| CliError::Usage(format!("unknown ideal kind `{s}`")))
}

fn lab_config(args: &LabArgs, budget: u64) -> Result<LabConfig, CliError> {
    let k: KParam = args.k.parse()?;
    let grid: GradeGrid = args.grid.parse()?;
    let mode = match args.mode {
        ModeArg::Exhaustive => Mode::Exhaustive,
        ModeArg::Sample => {
            if args.count == 0 {
                return Err(CliError::Usage("--count must be at least 1".into()));
            }
            Mode::Sample { seed: args.seed, count: args.count }
        }
    };
    Ok(LabConfig { grid, k, mode, budget: budget as u128, ..LabConfig::default() })
}

/// Exact decimal when the grade has one, `p/q` otherwise.
pub fn show_grade(g: Grade) -> String {
    let r = g.ratio();
    let mut d = *r.denom();
    while d % 2 == 0 {
        d /= 2;
    }
    while d % 5 == 0 {
        d /= 5;
    }
    if d != 1 {
        return g.to_string();
    }
    let (mut p, mut q, mut digits) = (*r.numer(), *r.denom(), 0);
    while q != 1 {
        p *= 10;
        digits += 1;
        let c = gcd(p, q);
        p /= c;
        q /= c;
    }
    if digits == 0 {
        return p.to_string();
    }
    let s = format!("{:0>width$}", p, width = digits + 1);
    let (int, frac) = s.split_at(s.len() - digits);
    format!("{int}.{frac}")
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn names(g: &Groupoid, els: &[usize]) -> Vec<String> {
    els.iter().map(|&e| g.element_name(e).to_string()).collect()
}

fn set_names(g: &Groupoid, s: agfuzz::ElementSet) -> Vec<String> {
    s.iter().map(|e| g.element_name(e).to_string()).collect()
}

fn verdict_json(g: &Groupoid, v: &Verdict) -> Value {
    json!({
        "holds": v.holds,
        "witness": v.witness.as_ref().map(|w| json!({
            "clause": w.clause,
            "elements": names(g, &w.elements),
            "heights": w.thresholds.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
        })),
    })
}

fn verdict_text(g: &Groupoid, v: &Verdict) -> String {
    match &v.witness {
        None => "yes".into(),
        Some(w) => {
            let mut s = format!("no ({} fails at ({})", w.clause, names(g, &w.elements).join(","));
            if !w.thresholds.is_empty() {
                let ts: Vec<String> = w.thresholds.iter().map(|t| t.to_string()).collect();
                let _ = write!(s, ", t = {}", ts.join(","));
            }
            s.push(')');
            s
        }
    }
}

pub fn run_command(cfg: &RunConfig) -> Result<Report, CliError> {
    match &cfg.command {
        Command::CheckLaws(arg) => check_laws(&load_groupoid(arg)?),
        Command::Classify(arg) => classify(&load_groupoid(arg)?),
        Command::Ideals { kind, g } => ideals(&load_groupoid(g)?, parse_kind(kind)?),
        Command::FuzzyCheck { kind, g, fuzzy, k } => {
            let g = load_groupoid(g)?;
            let f = load_fuzzy(fuzzy, &g)?;
            fuzzy_check(&g, &f, parse_kind(kind)?, k.parse()?)
        }
        Command::LevelSets { g, fuzzy } => {
            let g = load_groupoid(g)?;
            let f = load_fuzzy(fuzzy, &g)?;
            Ok(level_sets(&g, &f))
        }
        Command::Theorem { id, g, lab } => {
            let id: TheoremId = id.parse().map_err(|_| CliError::Usage(format!("unknown theorem `{id}`")))?;
            theorem(&load_groupoid(g)?, id, &lab_config(lab, cfg.budget)?)
        }
        Command::SearchCounterexample { id, max_order, iso, lab } => {
            let target: SearchTarget = id.parse().map_err(|_| CliError::Usage(format!("unknown search target `{id}`")))?;
            let opts = EnumOptions { up_to_iso: *iso, ..EnumOptions::default() };
            let slice = catalog_up_to(*max_order, &opts)?;
            search(target, id, &slice, &lab_config(lab, cfg.budget)?)
        }
        Command::Enumerate { n, iso, ident, workers, long_running, out } => {
            let opts = EnumOptions { up_to_iso: *iso, require_left_identity: *ident, workers: *workers, long_running: *long_running };
            enumerate(*n, &opts, out.as_deref())
        }
        Command::DemoPaper => Ok(demo::demo_paper()),
    }
}

fn check_laws(g: &Groupoid) -> Result<Report, CliError> {
    let identity = find_left_identity(g).identity;
    let mut text = String::new();
    let mut laws = vec![];
    let mut holds = |law: Law| {
        let r = check_law(g, law);
        let w = r.witness.as_ref().map(|w| names(g, w));
        let _ = match &w {
            None => writeln!(text, "{}: holds", law.as_str()),
            Some(w) => writeln!(text, "{}: fails at ({})", law.as_str(), w.join(",")),
        };
        laws.push(json!({ "law": law.as_str(), "holds": r.holds, "witness": w }));
        r.holds
    };
    let results: Vec<(Law, bool)> = Law::ALL.iter().map(|&l| (l, holds(l))).collect();
    let ok = |law| results.iter().any(|&(l, h)| l == law && h);
    let pass = ok(Law::LeftInvertive) && ok(Law::Medial) && (identity.is_none() || (ok(Law::Paramedial) && ok(Law::LeftIdentityLaw4)));
    let _ = writeln!(text, "left identity: {}", identity.map_or("none", |e| g.element_name(e)));
    let json = json!({
        "command": "check-laws",
        "groupoid": g.name(),
        "laws": laws,
        "left_identity": identity.map(|e| g.element_name(e)),
    });
    Ok(Report::new(pass, text, json))
}

fn classify(g: &Groupoid) -> Result<Report, CliError> {
    let p = classify_structure(g)?;
    let mut text = String::new();
    let yn = |b: bool| if b { "yes" } else { "no" };
    let _ = writeln!(text, "order: {}", p.order);
    let _ = writeln!(text, "left identity: {}", p.left_identity.map_or("none", |e| g.element_name(e)));
    for (name, v) in [
        ("medial", p.medial),
        ("paramedial", p.paramedial),
        ("law4", p.law4),
        ("commutative", p.commutative),
        ("associative", p.associative),
        ("regular", p.regularity.regular),
        ("intra-regular", p.regularity.intra_regular),
        ("weakly regular", p.regularity.weakly_regular),
    ] {
        let _ = writeln!(text, "{name}: {}", yn(v));
    }
    for (kind, c) in &p.ideal_counts {
        let _ = writeln!(text, "{kind}s: {c}");
    }
    let mut json = serde_json::to_value(&p).expect("profile serializes");
    if let Value::Object(m) = &mut json {
        m.insert("command".into(), json!("classify"));
        m.insert("groupoid".into(), json!(g.name()));
    }
    Ok(Report::new(true, text, json))
}

fn ideals(g: &Groupoid, kind: IdealKind) -> Result<Report, CliError> {
    let found = enumerate_crisp(g, kind)?;
    let mut text = format!("{} {kind}s\n", found.len());
    for s in &found {
        let _ = writeln!(text, "{}", g.show_set(*s));
    }
    let json = json!({
        "command": "ideals",
        "groupoid": g.name(),
        "kind": kind.as_str(),
        "count": found.len(),
        "ideals": found.iter().map(|s| set_names(g, *s)).collect::<Vec<_>>(),
    });
    Ok(Report::new(true, text, json))
}

fn fuzzy_check(g: &Groupoid, f: &FuzzySubset, kind: IdealKind, k: KParam) -> Result<Report, CliError> {
    let a = cross_validate(g, f, kind, k)?;
    let classic = match check_classic(g, f, kind) {
        Ok(v) => Some(v),
        Err(agfuzz::Error::UnsupportedKind(_)) => None,
        Err(e) => return Err(e.into()),
    };
    let mut text = String::new();
    let _ = writeln!(text, "(∈,∈∨q_k) fuzzy {kind}, k = {k}");
    let _ = writeln!(text, "inequality form: {}", verdict_text(g, &a.inequality));
    let _ = writeln!(text, "quantifier form: {}", verdict_text(g, &a.quantifier));
    let _ = writeln!(text, "forms agree: {}", if a.agree { "yes" } else { "NO" });
    if let Some(c) = &classic {
        let _ = writeln!(text, "fuzzy {kind} (no cap): {}", verdict_text(g, c));
    }
    let json = json!({
        "command": "fuzzy-check",
        "groupoid": g.name(),
        "kind": kind.as_str(),
        "k": k,
        "inequality": verdict_json(g, &a.inequality),
        "quantifier": verdict_json(g, &a.quantifier),
        "agree": a.agree,
        "classic": classic.as_ref().map(|c| verdict_json(g, c)),
    });
    Ok(Report::new(a.agree && a.inequality.holds, text, json))
}

pub(crate) fn show_level_set(g: &Groupoid, s: agfuzz::ElementSet) -> String {
    if s == g.carrier() {
        "S".into()
    } else if s.is_empty() {
        "∅".into()
    } else {
        g.show_set(s)
    }
}

fn level_sets(g: &Groupoid, f: &FuzzySubset) -> Report {
    let pieces = f.level_pieces();
    let mut text = String::new();
    for p in &pieces {
        let _ = writeln!(text, "t in ({}, {}]: {}", show_grade(p.lo), show_grade(p.hi), show_level_set(g, p.set));
    }
    let json = json!({
        "command": "level-sets",
        "groupoid": g.name(),
        "pieces": pieces.iter().map(|p| json!({
            "lo": show_grade(p.lo),
            "hi": show_grade(p.hi),
            "set": set_names(g, p.set),
        })).collect::<Vec<_>>(),
    });
    Report::new(true, text, json)
}

fn theorem(g: &Groupoid, id: TheoremId, cfg: &LabConfig) -> Result<Report, CliError> {
    let report = lab::verify_theorem(g, id, cfg)?;
    let mut json = serde_json::to_value(&report).expect("report serializes");
    if let Value::Object(m) = &mut json {
        m.insert("command".into(), json!("theorem"));
    }
    Ok(Report::new(report.status == lab::Status::Holds, report.to_string(), json))
}

fn search(target: SearchTarget, label: &str, slice: &[Groupoid], cfg: &LabConfig) -> Result<Report, CliError> {
    let outcome = lab::search_counterexample(target, slice, cfg)?;
    let text = match &outcome {
        SearchOutcome::Found(r) => {
            let replay = if r.replay()? { "reproduces" } else { "DOES NOT reproduce" };
            format!("{r}replay: {replay}\n")
        }
        SearchOutcome::Exhausted { groupoids, instances } => {
            format!("exhausted: {groupoids} groupoids, {instances} instances, nothing found\n")
        }
    };
    let json = json!({
        "command": "search-counterexample",
        "target": label,
        "slice_size": slice.len(),
        "outcome": outcome,
    });
    Ok(Report::new(true, text, json))
}

fn enumerate(n: usize, opts: &EnumOptions, out: Option<&Path>) -> Result<Report, CliError> {
    let cat = Catalog::build(n, opts)?;
    let text = match out {
        Some(path) => {
            cat.save(path)?;
            format!("wrote {} AG-groupoids of order {n} to {}\n", cat.entries.len(), path.display())
        }
        None => cat.render(),
    };
    let json = json!({
        "command": "enumerate",
        "order": n,
        "up_to_iso": opts.up_to_iso,
        "require_left_identity": opts.require_left_identity,
        "count": cat.entries.len(),
        "tables": cat.entries.iter().map(|e| e.table.clone()).collect::<Vec<_>>(),
    });
    Ok(Report::new(true, text, json))
}
