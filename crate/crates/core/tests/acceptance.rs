//! Acceptance suite: one line per criterion, nonzero exit on any failure.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use agfuzz::algebra::{check_law, find_left_identity, is_crisp, regularity_profile, Law};
use agfuzz::catalog::{catalog_up_to, enumerate_ag_groupoids, EnumOptions};
use agfuzz::fixtures::{s5, s5_f, s6, S6_WEAK_WITNESSES};
use agfuzz::ideals::{check_classic, check_threshold_k, cross_validate};
use agfuzz::lab::{
    enumerate_fuzzy, sample_fuzzy, search_counterexample, theorem, verify_theorem, GradeGrid, LabConfig, Mode, SearchOutcome,
    SearchTarget, Status, TheoremId, TheoremReport, DEFAULT_BUDGET,
};
use agfuzz::{ElementSet, FuzzySubset, Grade, Groupoid, IdealKind, KParam};

type Outcome = Result<String, String>;
type Criterion = (&'static str, &'static str, Duration, fn() -> Outcome);

const SAMPLES: usize = 500;
const SEED: u64 = 2024;

fn k(p: i64, q: i64) -> KParam {
    KParam::from_frac(p, q).unwrap()
}

fn gr(s: &str) -> Grade {
    s.parse().unwrap()
}

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn err(e: agfuzz::Error) -> String {
    e.to_string()
}

fn labelled(max: usize) -> Vec<Groupoid> {
    catalog_up_to(max, &EnumOptions::default()).expect("small orders enumerate")
}

fn set_of(g: &Groupoid, names: &[&str]) -> ElementSet {
    names.iter().map(|n| g.index_of(n).expect("fixture name")).collect()
}

fn fixtures_reproduce() -> Outcome {
    let g = s5();
    ensure(check_law(&g, Law::LeftInvertive).holds, "S5 left invertive")?;
    ensure(check_law(&g, Law::Medial).holds, "S5 medial")?;
    ensure(find_left_identity(&g).identity == g.index_of("d"), "S5 identity d")?;
    for names in [&["a"][..], &["a", "b"][..]] {
        ensure(is_crisp(&g, set_of(&g, names), IdealKind::BiIdeal), format!("{names:?} bi-ideal"))?;
    }
    let f = s5_f();
    ensure(f.grades() == [gr("0.8"), gr("0.7"), gr("0.3"), gr("0.3"), gr("0.3")], "f grades")?;
    let expected = [
        (gr("0"), gr("0.3"), g.carrier()),
        (gr("0.3"), gr("0.7"), set_of(&g, &["a", "b"])),
        (gr("0.7"), gr("0.8"), set_of(&g, &["a"])),
        (gr("0.8"), gr("1"), ElementSet::default()),
    ];
    let pieces: Vec<_> = f.level_pieces().iter().map(|p| (p.lo, p.hi, p.set)).collect();
    ensure(pieces == expected, format!("level sets {pieces:?}"))?;
    ensure(check_classic(&g, &f, IdealKind::BiIdeal).map_err(err)?.holds, "f fuzzy bi-ideal")?;
    let a = cross_validate(&g, &f, IdealKind::BiIdeal, KParam::zero()).map_err(err)?;
    ensure(a.agree && a.quantifier.holds, "f (∈,∈∨q) bi-ideal")?;

    let h = s6();
    ensure(check_law(&h, Law::LeftInvertive).holds, "S6 left invertive")?;
    ensure(find_left_identity(&h).identity == h.index_of("6"), "S6 identity 6")?;
    for (a, x, y) in S6_WEAK_WITNESSES {
        let [a, x, y] = [a, x, y].map(|n| h.index_of(n).unwrap());
        ensure(h.mul(h.mul(a, x), h.mul(a, y)) == a, format!("witness for {}", h.element_name(a)))?;
    }
    ensure(regularity_profile(&h).weakly_regular, "S6 weakly regular")?;
    Ok("S5 laws, identity, bi-ideals, level sets, verdicts; S6 identity and six witnesses".into())
}

/// The population shared by criteria 2 and 3: every grid subset on the
/// order ≤ 2 catalog and seeded draws on the fixtures.
fn populations() -> Vec<(Groupoid, Vec<FuzzySubset>, Mode)> {
    let grid = GradeGrid::default();
    let mut out = vec![];
    for g in labelled(2) {
        let all = enumerate_fuzzy(&g, &grid, DEFAULT_BUDGET).unwrap().collect();
        out.push((g, all, Mode::Exhaustive));
    }
    for g in [s5(), s6()] {
        let drawn = sample_fuzzy(&g, &grid, SEED, SAMPLES).collect();
        out.push((g, drawn, Mode::Sample { seed: SEED, count: SAMPLES }));
    }
    out
}

fn ks() -> [KParam; 3] {
    [KParam::zero(), k(1, 5), k(1, 2)]
}

fn dual_form_agreement() -> Outcome {
    let mut checked = 0u64;
    let mut holding = 0u64;
    for (g, pop, _) in populations() {
        for kk in ks() {
            for f in &pop {
                for kind in IdealKind::ALL {
                    let a = cross_validate(&g, f, kind, kk).map_err(err)?;
                    if !a.agree {
                        return Err(format!("{kind} on {:?} f = {} k = {kk}", g.name(), f.show()));
                    }
                    checked += 1;
                    holding += a.inequality.holds as u64;
                }
            }
        }
    }
    Ok(format!("{checked} comparisons ({holding} holding), 0 discrepancies"))
}

fn all_uncapped(r: &TheoremReport) -> bool {
    r.checks.iter().all(|c| !c.capped)
}

fn level_and_inin() -> Outcome {
    let mut instances = 0;
    for (g, _, mode) in populations() {
        for kk in ks() {
            let cfg = LabConfig { grid: GradeGrid::default(), k: kk, mode, ..LabConfig::default() };
            for id in [TheoremId::T21Level, TheoremId::T31InIn] {
                let r = verify_theorem(&g, id, &cfg).map_err(err)?;
                if r.status != Status::Holds || !all_uncapped(&r) {
                    let why = r.counterexample().map(|c| c.to_string()).unwrap_or_else(|| r.status.to_string());
                    return Err(format!("{id} on {:?}: {why}", g.name()));
                }
                instances += r.checks.iter().map(|c| c.instances).sum::<u64>();
            }
        }
    }
    Ok(format!("T2.1 and T3.1 over {instances} instances, 0 discrepancies"))
}

fn inclusion_theorems() -> Outcome {
    use TheoremId::*;
    let ids = [
        P42Mono,
        P43Meet,
        L42OneSided,
        P44IdemSub,
        P45SandwichSub,
        S3Support,
        S3Construct,
        LemGenBiBi,
        LemQuasiBi,
        LemIdealInterior,
        LemKCombinators,
        LemCharK,
    ];
    let catalog = labelled(3);
    let slice: Vec<&Groupoid> = catalog
        .iter()
        .filter(|g| {
            let p = regularity_profile(g);
            p.weakly_regular && p.left_identity.is_some()
        })
        .collect();
    let mut instances = 0u64;
    let mut runs = 0;
    for kk in [KParam::zero(), k(1, 5)] {
        let cfg = LabConfig { grid: GradeGrid::halves(), k: kk, ..LabConfig::default() };
        for id in ids {
            let on_slice = matches!(id, LemGenBiBi | LemQuasiBi | LemIdealInterior);
            let targets: Vec<&Groupoid> = if on_slice { slice.clone() } else { catalog.iter().collect() };
            for g in targets {
                let r = verify_theorem(g, id, &cfg).map_err(err)?;
                if r.status == Status::Violated {
                    return Err(format!("{}", r.counterexample().expect("violations carry a report")));
                }
                if !all_uncapped(&r) {
                    return Err(format!("{id} on {:?} hit the tuple cap", g.name()));
                }
                runs += 1;
                instances += r.checks.iter().filter(|c| c.pinned).map(|c| c.instances).sum::<u64>();
            }
        }
    }
    Ok(format!("{runs} theorem runs on {} groupoids ({} in the slice), {instances} instances, 0 violations", catalog.len(), slice.len()))
}

fn regularity_characterizations() -> Outcome {
    let g = s6();
    // brute-force regularity, independent of the library profile
    let regular = g.elements().all(|a| g.elements().any(|x| g.mul(g.mul(a, x), a) == a));
    let weak = g.elements().all(|a| g.elements().any(|x| g.elements().any(|y| g.mul(g.mul(a, x), g.mul(a, y)) == a)));
    let intra = g.elements().all(|a| {
        let a2 = g.mul(a, a);
        g.elements().any(|x| g.elements().any(|y| g.mul(g.mul(x, a2), y) == a))
    });
    let ident = g.elements().any(|e| g.elements().all(|x| g.mul(e, x) == x));
    ensure(regular && weak && intra && ident, "S6 side conditions by brute force")?;

    let wanted: [(TheoremId, &[&str]); 9] = [
        (TheoremId::Th22, &["(ii)"]),
        (TheoremId::Th24, &["(ii)", "(iii)", "(iv)"]),
        (TheoremId::Th25, &["(ii)"]),
        (TheoremId::Th26, &["(ii)", "(iii)", "(iv)"]),
        (TheoremId::Th28, &["(ii)", "(iii)", "(iv)", "(v)", "(vi)"]),
        (TheoremId::ThFinal, &["(ixv)"]),
        (TheoremId::T43SandwichEq, &["truncated"]),
        (TheoremId::T44IIdemEq, &["truncated"]),
        (TheoremId::T44IiMeetEq, &["meet"]),
    ];
    let mut instances = 0u64;
    for kk in [KParam::zero(), k(1, 5)] {
        let cfg = LabConfig { grid: GradeGrid::halves(), k: kk, ..LabConfig::default() };
        for (id, labels) in wanted {
            let r = verify_theorem(&g, id, &cfg).map_err(err)?;
            ensure(r.status != Status::HypothesisNotMet, format!("{id}: hypothesis not met"))?;
            for label in labels {
                let c = r.check(label).ok_or_else(|| format!("{id} has no check {label}"))?;
                if !c.holds || c.capped {
                    let why = c.counterexample.as_ref().map(|x| x.to_string()).unwrap_or_else(|| "capped".into());
                    return Err(format!("{id} {label} at k = {kk}: {why}"));
                }
                instances += c.instances;
            }
        }
    }
    // literal T4.4(i): f ∘_k f = f fails at the constant 1
    let kk = KParam::zero();
    let t = theorem(TheoremId::T44IIdemEq, kk);
    let literal = t.checks.iter().find(|c| c.label == "literal").ok_or("no literal check")?;
    let one = FuzzySubset::one(&g);
    ensure(check_threshold_k(&g, &one, IdealKind::BiIdeal, kk).map_err(err)?.holds, "constant 1 is a bi-ideal")?;
    let o = literal.conclusion.eval(&g, &[one], kk).map_err(err)?;
    ensure(!o.holds, "literal T4.4(i) unexpectedly holds at constant 1")?;
    Ok(format!(
        "{instances} instances hold; literal T4.4(i) fails at f = 1 (lhs {}, rhs {})",
        o.lhs.map(|x| x.to_string()).unwrap_or_default(),
        o.rhs.map(|x| x.to_string()).unwrap_or_default()
    ))
}

fn crisp_theorems() -> Outcome {
    let catalog = labelled(3);
    let cfg = LabConfig { grid: GradeGrid::halves(), ..LabConfig::default() };
    let mut scanned = 0;
    let mut reports = vec![];
    for g in &catalog {
        for id in [TheoremId::CrispTh1, TheoremId::CrispTh2, TheoremId::CrispTh3] {
            let r = verify_theorem(g, id, &cfg).map_err(err)?;
            if r.status == Status::HypothesisNotMet {
                continue;
            }
            scanned += 1;
            let c = r.check("(ii)").ok_or("missing (ii)")?;
            if c.capped {
                return Err(format!("{id} on {:?} capped", g.name()));
            }
            if let Some(cx) = &c.counterexample {
                if !cx.replay().map_err(err)? {
                    return Err(format!("discrepancy does not replay:\n{cx}"));
                }
                reports.push(cx.clone());
            }
        }
    }
    for r in &reports {
        print!("    replayable discrepancy for adjudication:\n{}", indent(&r.to_string()));
    }
    Ok(format!("{scanned} (groupoid, theorem) pairs in the slice, {} discrepancies (all replayable)", reports.len()))
}

fn indent(s: &str) -> String {
    s.lines().map(|l| format!("      {l}\n")).collect()
}

fn brute_force(n: usize) -> BTreeSet<Vec<usize>> {
    let cells = n * n;
    let mut out = BTreeSet::new();
    for code in 0..n.pow(cells as u32) {
        let mut c = code;
        let mut t = vec![0; cells];
        for cell in t.iter_mut().rev() {
            *cell = c % n;
            c /= n;
        }
        let m = |a: usize, b: usize| t[a * n + b];
        if (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| m(m(a, b), c) == m(m(c, b), a)))) {
            out.insert(t.clone());
        }
    }
    out
}

fn orbit(n: usize, t: &[usize]) -> BTreeSet<Vec<usize>> {
    let mut perms: Vec<Vec<usize>> = vec![vec![]];
    for i in 0..n {
        perms = perms
            .into_iter()
            .flat_map(|p| {
                (0..=i).map(move |pos| {
                    let mut q = p.clone();
                    q.insert(pos, i);
                    q
                })
            })
            .collect();
    }
    perms
        .iter()
        .map(|p| {
            let mut r = vec![0; n * n];
            for x in 0..n {
                for y in 0..n {
                    r[p[x] * n + p[y]] = p[t[x * n + y]];
                }
            }
            r
        })
        .collect()
}

fn catalog_correctness() -> Outcome {
    let opts = |iso, workers| EnumOptions { up_to_iso: iso, workers, ..EnumOptions::default() };
    let tables = |gs: Vec<Groupoid>| gs.into_iter().map(|g| g.table().to_vec()).collect::<Vec<_>>();
    let mut summary = vec![];
    for n in [2, 3] {
        let oracle = brute_force(n);
        let got = tables(enumerate_ag_groupoids(n, &opts(false, 1)).map_err(err)?);
        let as_set: BTreeSet<_> = got.iter().cloned().collect();
        ensure(as_set.len() == got.len() && as_set == oracle, format!("order {n}: {} vs oracle {}", got.len(), oracle.len()))?;
        summary.push(format!("n={n}: {}", got.len()));
    }
    for n in [2, 3, 4] {
        let reps = tables(enumerate_ag_groupoids(n, &opts(true, 1)).map_err(err)?);
        let full = tables(enumerate_ag_groupoids(n, &opts(false, 1)).map_err(err)?);
        let mut expanded: Vec<Vec<usize>> = reps.iter().flat_map(|r| orbit(n, r)).collect();
        let mut full_sorted = full.clone();
        expanded.sort();
        full_sorted.sort();
        ensure(expanded == full_sorted, format!("order {n}: iso classes do not expand to the labelled list"))?;
        for iso in [false, true] {
            let one = enumerate_ag_groupoids(n, &opts(iso, 1)).map_err(err)?;
            let eight = enumerate_ag_groupoids(n, &opts(iso, 8)).map_err(err)?;
            ensure(one == eight, format!("order {n} iso={iso}: 1 and 8 workers differ"))?;
        }
        summary.push(format!("n={n} iso {}", reps.len()));
    }
    Ok(format!("{}; expansion and 1/8-worker identity checked", summary.join(", ")))
}

fn gap_witness() -> Outcome {
    let slice = labelled(3);
    for kk in [KParam::zero(), k(1, 5)] {
        let cfg = LabConfig { grid: GradeGrid::default(), k: kk, ..LabConfig::default() };
        if let SearchOutcome::Found(r) = search_counterexample(SearchTarget::ClassicVsKGap, &slice, &cfg).map_err(err)? {
            let g = &r.groupoid;
            let f = &r.operands[0];
            let kth = check_threshold_k(g, f, IdealKind::LeftIdeal, r.k).map_err(err)?.holds;
            let classic = check_classic(g, f, IdealKind::LeftIdeal).map_err(err)?.holds;
            ensure(kth && !classic && r.replay().map_err(err)?, "witness does not re-verify")?;
            return Ok(format!("{} table {:?}, f = {}, k = {}", g.name().unwrap_or("?"), g.table(), f.show(), r.k));
        }
    }
    Err("search space exhausted without a gap witness".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("1", "fixtures reproduce", Duration::from_secs(1), fixtures_reproduce),
        ("2", "dual-form agreement", Duration::from_secs(120), dual_form_agreement),
        ("3", "level-set and (∈,∈) equivalences", Duration::from_secs(600), level_and_inin),
        ("4", "inclusion theorems on order ≤ 3", Duration::from_secs(300), inclusion_theorems),
        ("5", "regularity characterizations on S6", Duration::from_secs(600), regularity_characterizations),
        ("6", "crisp theorems on order ≤ 3", Duration::from_secs(600), crisp_theorems),
        ("7", "catalog correctness", Duration::from_secs(60), catalog_correctness),
        ("8", "gap witness", Duration::from_secs(600), gap_witness),
    ];
    let mut failed = 0;
    for (id, name, limit, run) in criteria {
        let start = Instant::now();
        let result = run();
        let took = start.elapsed();
        let result = match result {
            Ok(detail) if took > limit => Err(format!("{detail}; took {took:.2?}, limit {limit:?}")),
            other => other,
        };
        match result {
            Ok(detail) => println!("PASS {id} {name} ({took:.2?}): {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL {id} {name} ({took:.2?}): {why}");
            }
        }
    }
    println!("{} of 8 criteria passed", 8 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
