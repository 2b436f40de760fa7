use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::expr::{is, implies, var, Conclusion, Notion, Outcome};
use super::registry::{theorem, Check, Property, Source, TheoremId};
use super::{enumerate_fuzzy, sample_fuzzy, GradeGrid, Mode, DEFAULT_BUDGET};
use crate::algebra::{enumerate_crisp, regularity_profile, Groupoid, IdealKind, RegularityProfile};
use crate::error::{Error, Result};
use crate::fuzzy::{FuzzySubset, KParam, Relation};
use crate::set::ElementSet;

/// Every report carries this caveat about its populations.
pub const POPULATION_NOTE: &str =
    "populations are grid-valued subsets only; a pass under-approximates the statement over all of [0,1]";

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LabConfig {
    pub grid: GradeGrid,
    pub k: KParam,
    pub mode: Mode,
    /// Cap on `|grid|^n` for exhaustive enumeration.
    pub budget: u128,
    /// Cap on operand tuples per check; tuples are visited in a fixed
    /// order so truncation is deterministic.
    pub tuple_cap: u64,
}

impl Default for LabConfig {
    fn default() -> Self {
        LabConfig { grid: GradeGrid::default(), k: KParam::zero(), mode: Mode::Exhaustive, budget: DEFAULT_BUDGET, tuple_cap: 2_000_000 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Holds,
    Violated,
    HypothesisNotMet,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Holds => "holds",
            Status::Violated => "violated",
            Status::HypothesisNotMet => "hypothesis not met",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ViolationKind {
    /// A concrete operand tuple breaks the conclusion.
    Instance,
    /// The conclusion holds on every tuple although the groupoid lacks the
    /// property it is supposed to characterize.
    Characterization,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CounterexampleReport {
    pub theorem: TheoremId,
    pub check: String,
    pub kind: ViolationKind,
    pub groupoid: Groupoid,
    pub k: KParam,
    pub grid: GradeGrid,
    pub operands: Vec<FuzzySubset>,
    pub conclusion: Conclusion,
    pub outcome: Outcome,
}

impl CounterexampleReport {
    /// Re-evaluates the stored data; true when the violation reproduces
    /// exactly.
    pub fn replay(&self) -> Result<bool> {
        match self.kind {
            ViolationKind::Instance => {
                let again = self.conclusion.eval(&self.groupoid, &self.operands, self.k)?;
                Ok(!again.holds && again == self.outcome)
            }
            ViolationKind::Characterization => {
                let t = theorem(self.theorem, self.k);
                let Some(check) = t.checks.iter().find(|c| c.label == self.check) else {
                    return Ok(false);
                };
                let Some(props) = &check.characterizes else {
                    return Ok(false);
                };
                let profile = regularity_profile(&self.groupoid);
                if props.iter().all(|p| p.holds(&profile)) {
                    return Ok(false);
                }
                let cfg = LabConfig { grid: self.grid.clone(), k: self.k, ..LabConfig::default() };
                let run = run_check(&self.groupoid, self.theorem, check, &cfg, &mut Populations::default())?;
                Ok(run.failure.is_none() && !run.capped)
            }
        }
    }
}

impl fmt::Display for CounterexampleReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = &self.groupoid;
        writeln!(f, "counterexample to {} {} on {}", self.theorem, self.check, g.name().unwrap_or("groupoid"))?;
        writeln!(f, "  conclusion: {}", self.conclusion)?;
        writeln!(f, "  k = {}", self.k)?;
        for (i, op) in self.operands.iter().enumerate() {
            let name = ["f", "g", "h", "m"].get(i).copied().unwrap_or("v");
            writeln!(f, "  {name} = {}", op.show())?;
        }
        if let Some(e) = self.outcome.element {
            write!(f, "  at {}", g.element_name(e))?;
            if let (Some(l), Some(r)) = (self.outcome.lhs, self.outcome.rhs) {
                write!(f, ": lhs {l}, rhs {r}")?;
            }
            writeln!(f)?;
        }
        if !self.outcome.detail.is_empty() {
            writeln!(f, "  {}", self.outcome.detail)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub label: String,
    pub pinned: bool,
    pub conclusion: String,
    pub holds: bool,
    /// Operand tuples evaluated.
    pub instances: u64,
    /// True when the tuple cap stopped the scan early.
    pub capped: bool,
    pub counterexample: Option<CounterexampleReport>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionResult {
    pub property: Property,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PopulationSize {
    pub source: String,
    pub size: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TheoremReport {
    pub id: TheoremId,
    pub citation: &'static str,
    pub groupoid: String,
    pub k: KParam,
    pub grid: GradeGrid,
    pub mode: Mode,
    pub side_conditions: Vec<ConditionResult>,
    pub status: Status,
    pub populations: Vec<PopulationSize>,
    pub checks: Vec<CheckResult>,
    pub note: &'static str,
}

impl TheoremReport {
    pub fn check(&self, label: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.label == label)
    }

    /// First failing pinned check's counterexample.
    pub fn counterexample(&self) -> Option<&CounterexampleReport> {
        self.checks.iter().filter(|c| c.pinned).find_map(|c| c.counterexample.as_ref())
    }
}

impl fmt::Display for TheoremReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}: {}", self.id, self.citation)?;
        writeln!(f, "groupoid {}, k = {}, grid {}", self.groupoid, self.k, self.grid)?;
        for c in &self.side_conditions {
            writeln!(f, "  side condition {}: {}", c.property, if c.holds { "yes" } else { "no" })?;
        }
        for p in &self.populations {
            writeln!(f, "  population {}: {}", p.source, p.size)?;
        }
        for c in &self.checks {
            let verdict = if c.holds { "holds" } else { "FAILS" };
            let pin = if c.pinned { "" } else { " (not pinned)" };
            let cap = if c.capped { " [capped]" } else { "" };
            writeln!(f, "  {} {}{}: {} over {} tuples{}", c.label, c.conclusion, pin, verdict, c.instances, cap)?;
            if let Some(cx) = &c.counterexample {
                for line in cx.to_string().lines() {
                    writeln!(f, "    {line}")?;
                }
            }
        }
        writeln!(f, "status: {}", self.status)?;
        write!(f, "note: {}", self.note)
    }
}

/// Materialized operand populations, shared between checks of one theorem.
#[derive(Default)]
struct Populations {
    base: Option<Vec<FuzzySubset>>,
    cached: Vec<(Source, Vec<FuzzySubset>)>,
}

impl Populations {
    fn base(&mut self, g: &Groupoid, cfg: &LabConfig) -> Result<&[FuzzySubset]> {
        if self.base.is_none() {
            self.base = Some(match cfg.mode {
                Mode::Exhaustive => enumerate_fuzzy(g, &cfg.grid, cfg.budget)?.collect(),
                Mode::Sample { seed, count } => sample_fuzzy(g, &cfg.grid, seed, count).collect(),
            });
        }
        Ok(self.base.as_deref().expect("just filled"))
    }

    fn get(&mut self, g: &Groupoid, src: &Source, cfg: &LabConfig) -> Result<usize> {
        if let Some(i) = self.cached.iter().position(|(s, _)| s == src) {
            return Ok(i);
        }
        let members = match src {
            Source::Crisp(None) => ElementSet::nonempty_subsets(g.order()).into_iter().map(|a| FuzzySubset::characteristic(g, a)).collect(),
            Source::Crisp(Some(kind)) => enumerate_crisp(g, *kind)?.into_iter().map(|a| FuzzySubset::characteristic(g, a)).collect(),
            Source::Fuzzy(notions) => {
                let mut kept = vec![];
                for f in self.base(g, cfg)? {
                    let mut ok = true;
                    for n in notions {
                        if !n.eval(g, f, cfg.k)?.0 {
                            ok = false;
                            break;
                        }
                    }
                    if ok {
                        kept.push(f.clone());
                    }
                }
                kept
            }
        };
        self.cached.push((src.clone(), members));
        Ok(self.cached.len() - 1)
    }
}

struct CheckRun {
    instances: u64,
    capped: bool,
    failure: Option<(Vec<FuzzySubset>, Outcome)>,
}

/// Visits operand tuples in lexicographic index order, pruning on the
/// `≤` constraints, until the first failure or the cap.
fn run_check(g: &Groupoid, _id: TheoremId, check: &Check, cfg: &LabConfig, pops: &mut Populations) -> Result<CheckRun> {
    let idx: Vec<usize> = check.operands.iter().map(|s| pops.get(g, s, cfg)).collect::<Result<_>>()?;
    let lists: Vec<&[FuzzySubset]> = idx.iter().map(|&i| pops.cached[i].1.as_slice()).collect();
    let mut run = CheckRun { instances: 0, capped: false, failure: None };
    if lists.iter().any(|l| l.is_empty()) {
        return Ok(run);
    }
    let arity = lists.len();
    let mut tuple: Vec<FuzzySubset> = Vec::with_capacity(arity);
    let mut pos = vec![0usize; arity];
    let mut depth = 0;
    loop {
        if depth == arity {
            if run.instances >= cfg.tuple_cap {
                run.capped = true;
                return Ok(run);
            }
            run.instances += 1;
            let out = check.conclusion.eval(g, &tuple, cfg.k)?;
            if !out.holds {
                run.failure = Some((tuple.clone(), out));
                return Ok(run);
            }
            depth -= 1;
            tuple.pop();
            pos[depth] += 1;
            continue;
        }
        if pos[depth] >= lists[depth].len() {
            if depth == 0 {
                return Ok(run);
            }
            pos[depth] = 0;
            depth -= 1;
            tuple.pop();
            pos[depth] += 1;
            continue;
        }
        let cand = &lists[depth][pos[depth]];
        let fits = check.constraints.iter().all(|&(a, b)| {
            if a.max(b) != depth {
                return true;
            }
            let (x, y) = if a == depth { (cand, &tuple[b]) } else { (&tuple[a], cand) };
            x.is_subset(y)
        });
        if fits {
            tuple.push(cand.clone());
            depth += 1;
        } else {
            pos[depth] += 1;
        }
    }
}

fn describe_missing(g: &Groupoid, profile: &RegularityProfile, props: &[Property]) -> String {
    let mut parts = vec![];
    for p in props {
        let missing = match p {
            Property::Regular => profile.regular_witnesses.iter().position(Option::is_none),
            Property::IntraRegular => profile.intra_regular_witnesses.iter().position(Option::is_none),
            Property::WeaklyRegular => profile.weakly_regular_witnesses.iter().position(Option::is_none),
            Property::LeftIdentity => None,
        };
        if !p.holds(profile) {
            match missing {
                Some(e) => parts.push(format!("not {p}: {} has no witness", g.element_name(e))),
                None => parts.push(format!("not {p}")),
            }
        }
    }
    parts.join("; ")
}

fn evaluate_check(
    g: &Groupoid,
    id: TheoremId,
    check: &Check,
    cfg: &LabConfig,
    profile: &RegularityProfile,
    pops: &mut Populations,
) -> Result<CheckResult> {
    let run = run_check(g, id, check, cfg, pops)?;
    let report = |kind, operands, outcome| CounterexampleReport {
        theorem: id,
        check: check.label.clone(),
        kind,
        groupoid: g.clone(),
        k: cfg.k,
        grid: cfg.grid.clone(),
        operands,
        conclusion: check.conclusion.clone(),
        outcome,
    };
    let counterexample = match (&check.characterizes, run.failure) {
        (None, failure) => failure.map(|(ops, out)| report(ViolationKind::Instance, ops, out)),
        (Some(props), failure) => {
            let has = props.iter().all(|p| p.holds(profile));
            match (has, failure) {
                (true, Some((ops, out))) => Some(report(ViolationKind::Instance, ops, out)),
                (false, None) if !run.capped => {
                    let detail = format!("conclusion holds on every instance but {}", describe_missing(g, profile, props));
                    Some(report(
                        ViolationKind::Characterization,
                        vec![],
                        Outcome { holds: false, element: None, lhs: None, rhs: None, detail },
                    ))
                }
                _ => None,
            }
        }
    };
    Ok(CheckResult {
        label: check.label.clone(),
        pinned: check.pinned,
        conclusion: check.conclusion.to_string(),
        holds: counterexample.is_none(),
        instances: run.instances,
        capped: run.capped,
        counterexample,
    })
}

/// Checks every conclusion variant of `id` on `g`.
///
/// Side conditions are established first; when one fails the report says
/// so and no populations are built.
pub fn verify_theorem(g: &Groupoid, id: TheoremId, cfg: &LabConfig) -> Result<TheoremReport> {
    let t = theorem(id, cfg.k);
    let profile = regularity_profile(g);
    let side_conditions: Vec<ConditionResult> =
        t.side_conditions.iter().map(|&p| ConditionResult { property: p, holds: p.holds(&profile) }).collect();
    let mut report = TheoremReport {
        id,
        citation: t.citation,
        groupoid: g.name().unwrap_or("groupoid").to_string(),
        k: cfg.k,
        grid: cfg.grid.clone(),
        mode: cfg.mode,
        side_conditions,
        status: Status::HypothesisNotMet,
        populations: vec![],
        checks: vec![],
        note: POPULATION_NOTE,
    };
    if report.side_conditions.iter().any(|c| !c.holds) {
        return Ok(report);
    }
    let mut pops = Populations::default();
    for check in &t.checks {
        report.checks.push(evaluate_check(g, id, check, cfg, &profile, &mut pops)?);
    }
    report.populations = pops.cached.iter().map(|(s, m)| PopulationSize { source: s.to_string(), size: m.len() }).collect();
    let violated = report.checks.iter().any(|c| c.pinned && !c.holds);
    report.status = if violated { Status::Violated } else { Status::Holds };
    Ok(report)
}

/// What [`search_counterexample`] looks for.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchTarget {
    /// Groupoids that meet the ambient side conditions (weakly regular,
    /// left identity) but lack the structural one, where the conclusion
    /// fails. For theorems without a structural condition this is a plain
    /// search for a forward counterexample.
    Converse(TheoremId),
    /// A subset that is not a fuzzy bi-ideal, shown to fail the `(∈,∈)`
    /// form as well.
    T31Converse,
    /// A `(∈,∈∨q_k)`-fuzzy left ideal that is not a fuzzy left ideal.
    ClassicVsKGap,
}

impl FromStr for SearchTarget {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "t3.1-converse" | "t3.1" => Ok(SearchTarget::T31Converse),
            "classic-vs-k-gap" | "classic-vs-k gap" | "gap" => Ok(SearchTarget::ClassicVsKGap),
            _ => s.parse().map(SearchTarget::Converse),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchOutcome {
    Found(Box<CounterexampleReport>),
    /// Nothing found; sizes of what was scanned.
    Exhausted { groupoids: usize, instances: u64 },
}

impl SearchOutcome {
    pub fn found(&self) -> Option<&CounterexampleReport> {
        match self {
            SearchOutcome::Found(r) => Some(r),
            SearchOutcome::Exhausted { .. } => None,
        }
    }
}

fn ambient(p: Property) -> bool {
    matches!(p, Property::WeaklyRegular | Property::LeftIdentity)
}

pub fn search_counterexample(target: SearchTarget, slice: &[Groupoid], cfg: &LabConfig) -> Result<SearchOutcome> {
    let (id, checks, needs, avoid): (TheoremId, Vec<Check>, Vec<Property>, Vec<Property>) = match target {
        SearchTarget::Converse(id) => {
            let t = theorem(id, cfg.k);
            let needs: Vec<Property> = t.side_conditions.iter().copied().filter(|&p| ambient(p)).collect();
            let avoid: Vec<Property> = t.side_conditions.iter().copied().filter(|&p| !ambient(p)).collect();
            (id, t.checks.into_iter().filter(|c| c.pinned).collect(), needs, avoid)
        }
        SearchTarget::T31Converse => {
            let c = Check {
                label: "T3.1-converse".into(),
                pinned: true,
                operands: vec![Source::Fuzzy(vec![])],
                constraints: vec![],
                conclusion: implies(
                    Conclusion::Not(Box::new(is(var(0), Notion::Classic(IdealKind::BiIdeal)))),
                    is(var(0), Notion::Quantifier(IdealKind::BiIdeal, Relation::In, Relation::In)),
                ),
                characterizes: None,
            };
            (TheoremId::T31InIn, vec![c], vec![], vec![])
        }
        SearchTarget::ClassicVsKGap => {
            let kind = IdealKind::LeftIdeal;
            let c = Check {
                label: "classic-vs-k-gap".into(),
                pinned: true,
                operands: vec![Source::Fuzzy(vec![Notion::ThresholdK(kind)])],
                constraints: vec![],
                conclusion: is(var(0), Notion::Classic(kind)),
                characterizes: None,
            };
            (TheoremId::ThLrK, vec![c], vec![], vec![])
        }
    };
    let mut groupoids = 0;
    let mut instances = 0;
    for g in slice {
        let profile = regularity_profile(g);
        if !needs.iter().all(|p| p.holds(&profile)) || (!avoid.is_empty() && avoid.iter().all(|p| p.holds(&profile))) {
            continue;
        }
        groupoids += 1;
        let mut pops = Populations::default();
        for check in &checks {
            let run = run_check(g, id, check, cfg, &mut pops)?;
            instances += run.instances;
            if let Some((operands, outcome)) = run.failure {
                return Ok(SearchOutcome::Found(Box::new(CounterexampleReport {
                    theorem: id,
                    check: check.label.clone(),
                    kind: ViolationKind::Instance,
                    groupoid: g.clone(),
                    k: cfg.k,
                    grid: cfg.grid.clone(),
                    operands,
                    conclusion: check.conclusion.clone(),
                    outcome,
                })));
            }
        }
    }
    Ok(SearchOutcome::Exhausted { groupoids, instances })
}
