//! Fuzzy ideal predicates in two independent forms.
//!
//! The inequality form compares grades directly, e.g. a left ideal needs
//! `f(xy) ≥ min(f(y), θ)`. The quantifier form evaluates implications
//! between fuzzy-point relations, e.g. `y_t ∈ f ⟹ (xy)_t ∈∨q_k f`, over
//! every height `t ∈ (0, 1]`.
//!
//! Each relation used here is a step function of the height that is constant
//! on every interval `(b_i, b_{i+1}]` between consecutive breakpoints, where
//! the breakpoints are the grades involved, `θ`, `1 - f(x)` and `1 - k - f(x)`.
//! Testing the right end of every such interval therefore decides the universally quantified statement exactly. Heights
//! are indexed in increasing order, so `t ∧ r` is the smaller index and each
//! per-element relation becomes a 128-bit mask over the heights.

use serde::{Deserialize, Serialize};

use crate::algebra::{Groupoid, IdealKind};
use crate::error::{Error, Result};
use crate::fuzzy::{conv_product, meet, FuzzySubset, Grade, KParam, Relation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Form {
    /// Inequalities with the cap `θ`.
    Inequality,
    /// Fuzzy-point implications.
    Quantifier,
}

/// One violated clause instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    /// Which defining clause failed, e.g. `"left"` or `"gen-bi"`.
    pub clause: &'static str,
    pub elements: Vec<usize>,
    /// Point heights `t` (and `r`) for quantifier witnesses.
    pub thresholds: Vec<Grade>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub holds: bool,
    pub witness: Option<Witness>,
    pub form: Form,
}

impl Verdict {
    fn pass(form: Form) -> Self {
        Verdict { holds: true, witness: None, form }
    }

    fn fail(form: Form, w: Witness) -> Self {
        Verdict { holds: false, witness: Some(w), form }
    }
}

/// The clauses that make up each kind.
fn clauses(kind: IdealKind) -> &'static [Clause] {
    use Clause::*;
    match kind {
        IdealKind::Subgroupoid => &[Sub],
        IdealKind::LeftIdeal => &[Left],
        IdealKind::RightIdeal => &[Right],
        IdealKind::TwoSidedIdeal => &[Left, Right],
        IdealKind::BiIdeal => &[Sub, GenBi],
        IdealKind::GeneralizedBiIdeal => &[GenBi],
        IdealKind::InteriorIdeal => &[Sub, Interior],
        IdealKind::QuasiIdeal => &[Quasi],
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Clause {
    /// f(xy) ≥ f(x) ∧ f(y)
    Sub,
    /// f(xy) ≥ f(y)
    Left,
    /// f(xy) ≥ f(x)
    Right,
    /// f((xy)z) ≥ f(x) ∧ f(z)
    GenBi,
    /// f((xy)z) ≥ f(y)
    Interior,
    /// f(x) ≥ (f∘1)(x) ∧ (1∘f)(x)
    Quasi,
}

impl Clause {
    fn name(self) -> &'static str {
        match self {
            Clause::Sub => "subgroupoid",
            Clause::Left => "left",
            Clause::Right => "right",
            Clause::GenBi => "gen-bi",
            Clause::Interior => "interior",
            Clause::Quasi => "quasi",
        }
    }

    fn from_name(s: &str) -> Option<Clause> {
        [Clause::Sub, Clause::Left, Clause::Right, Clause::GenBi, Clause::Interior, Clause::Quasi]
            .into_iter()
            .find(|c| c.name() == s)
    }

    fn arity(self) -> usize {
        match self {
            Clause::Quasi => 1,
            Clause::Sub | Clause::Left | Clause::Right => 2,
            Clause::GenBi | Clause::Interior => 3,
        }
    }
}

fn check_len(g: &Groupoid, f: &FuzzySubset) -> Result<()> {
    if f.len() != g.order() {
        return Err(Error::MismatchedCarrier(f.len(), g.order()));
    }
    Ok(())
}

/// `(f∘1) ∩ (1∘f)`.
fn quasi_hull(g: &Groupoid, f: &FuzzySubset) -> FuzzySubset {
    let one = FuzzySubset::one(g);
    let left = conv_product(g, f, &one).expect("same carrier");
    let right = conv_product(g, &one, f).expect("same carrier");
    meet(&left, &right).expect("same carrier")
}

/// Evaluates one inequality clause instance with cap `cap`; true when it holds.
fn inequality_instance(g: &Groupoid, f: &FuzzySubset, clause: Clause, args: &[usize], cap: Grade, hull: Option<&FuzzySubset>) -> bool {
    let m = |a, b| g.mul(a, b);
    let (lhs, rhs) = match (clause, args) {
        (Clause::Sub, &[x, y]) => (f.at(m(x, y)), f.at(x).min(f.at(y))),
        (Clause::Left, &[x, y]) => (f.at(m(x, y)), f.at(y)),
        (Clause::Right, &[x, y]) => (f.at(m(x, y)), f.at(x)),
        (Clause::GenBi, &[x, y, z]) => (f.at(m(m(x, y), z)), f.at(x).min(f.at(z))),
        (Clause::Interior, &[x, y, z]) => (f.at(m(m(x, y), z)), f.at(y)),
        (Clause::Quasi, &[x]) => {
            let h = match hull {
                Some(h) => h.at(x),
                None => quasi_hull(g, f).at(x),
            };
            (f.at(x), h)
        }
        _ => unreachable!("clause arity"),
    };
    lhs >= rhs.min(cap)
}

fn for_each_args(n: usize, arity: usize, mut visit: impl FnMut(&[usize]) -> bool) -> Option<Vec<usize>> {
    let mut args = vec![0usize; arity];
    loop {
        if !visit(&args) {
            return Some(args);
        }
        let mut pos = arity;
        loop {
            if pos == 0 {
                return None;
            }
            pos -= 1;
            args[pos] += 1;
            if args[pos] < n {
                break;
            }
            args[pos] = 0;
        }
    }
}

fn check_inequalities(g: &Groupoid, f: &FuzzySubset, kind: IdealKind, cap: Grade) -> Result<Verdict> {
    check_len(g, f)?;
    let hull = (kind == IdealKind::QuasiIdeal).then(|| quasi_hull(g, f));
    for &clause in clauses(kind) {
        let failed = for_each_args(g.order(), clause.arity(), |args| {
            inequality_instance(g, f, clause, args, cap, hull.as_ref())
        });
        if let Some(elements) = failed {
            return Ok(Verdict::fail(Form::Inequality, Witness { clause: clause.name(), elements, thresholds: vec![] }));
        }
    }
    Ok(Verdict::pass(Form::Inequality))
}

/// The plain fuzzy notions: `f(xy) ≥ f(x) ∧ f(y)` and friends, without a cap.
/// Quasi and interior ideals are only available through
/// [`check_unthresholded`].
pub fn check_classic(g: &Groupoid, f: &FuzzySubset, kind: IdealKind) -> Result<Verdict> {
    match kind {
        IdealKind::QuasiIdeal | IdealKind::InteriorIdeal => Err(Error::UnsupportedKind(kind.as_str())),
        _ => check_inequalities(g, f, kind, Grade::ONE),
    }
}

/// The capped inequalities with the cap removed (`θ` replaced by 1), for
/// every kind.
pub fn check_unthresholded(g: &Groupoid, f: &FuzzySubset, kind: IdealKind) -> Result<Verdict> {
    check_inequalities(g, f, kind, Grade::ONE)
}

/// The `(∈, ∈∨q_k)` notions in inequality form, capped at `θ = (1-k)/2`.
pub fn check_threshold_k(g: &Groupoid, f: &FuzzySubset, kind: IdealKind, k: KParam) -> Result<Verdict> {
    check_inequalities(g, f, kind, k.theta())
}

/// Re-evaluates an inequality witness; true when the clause is violated.
pub fn inequality_witness_violates(g: &Groupoid, f: &FuzzySubset, w: &Witness, cap: Grade) -> bool {
    match Clause::from_name(w.clause) {
        Some(c) if c.arity() == w.elements.len() => !inequality_instance(g, f, c, &w.elements, cap, None),
        _ => false,
    }
}

/// The finite set of heights that decides every relation used for `f`.
pub fn critical_heights(sets: &[&FuzzySubset], ks: &[KParam]) -> Vec<Grade> {
    use num_rational::Ratio;
    use num_traits::{One, Zero};
    let mut raw: Vec<Ratio<i64>> = vec![Ratio::one()];
    for k in ks {
        raw.push(k.theta().ratio());
    }
    for f in sets {
        for g in f.grades() {
            let v = g.ratio();
            raw.push(v);
            raw.push(Ratio::one() - v);
            for k in ks {
                raw.push(Ratio::one() - k.k() - v);
            }
        }
    }
    raw.retain(|r| *r > Ratio::zero() && *r <= Ratio::one());
    raw.sort();
    raw.dedup();
    raw.into_iter().map(|r| Grade::from_ratio(r).expect("height in (0,1]")).collect()
}

/// Per-element masks of the heights at which a relation holds.
struct Masks {
    hyp: Vec<u128>,
    con: Vec<u128>,
}

fn relation_masks(f: &FuzzySubset, heights: &[Grade], rel: Relation) -> Vec<u128> {
    f.grades()
        .iter()
        .map(|&fx| {
            heights
                .iter()
                .enumerate()
                .filter(|(_, &t)| rel.holds(fx, t))
                .fold(0u128, |m, (i, _)| m | 1u128 << i)
        })
        .collect()
}

/// Bits `≤ i`.
fn up_to(i: u32) -> u128 {
    if i >= 127 {
        u128::MAX
    } else {
        (1u128 << (i + 1)) - 1
    }
}

/// Indices `min(i, j)` over `i ∈ a`, `j ∈ b`.
fn min_pairs(a: u128, b: u128) -> u128 {
    if a == 0 || b == 0 {
        return 0;
    }
    let top_a = 127 - a.leading_zeros();
    let top_b = 127 - b.leading_zeros();
    (a & up_to(top_b)) | (b & up_to(top_a))
}

/// Recovers a pair `(t, r)` with `min(t, r)` at index `m`.
fn pair_for_min(a: u128, b: u128, m: u32) -> (u32, u32) {
    if a >> m & 1 == 1 {
        (m, 127 - b.leading_zeros())
    } else {
        (127 - a.leading_zeros(), m)
    }
}

/// Decides the `(alpha, beta)` form of `kind` over all heights in `(0, 1]`.
///
/// `k` enters the set of critical heights; any `q_k` inside `beta` carries
/// its own parameter, which is included as well.
pub fn check_quantifier(
    g: &Groupoid,
    f: &FuzzySubset,
    kind: IdealKind,
    alpha: Relation,
    beta: Relation,
    k: KParam,
) -> Result<Verdict> {
    check_len(g, f)?;
    if !matches!(alpha, Relation::In | Relation::Q | Relation::InOrQ) {
        return Err(Error::BadHypothesisRelation(match alpha {
            Relation::InAndQ | Relation::InAndQk(_) => "∈∧q",
            _ => "q_k",
        }));
    }
    let hull = (kind == IdealKind::QuasiIdeal).then(|| quasi_hull(g, f));
    let mut ks = vec![k];
    ks.extend(beta.k());
    let mut sets = vec![f];
    sets.extend(hull.as_ref());
    let heights = critical_heights(&sets, &ks);
    if heights.len() > 128 {
        return Err(Error::TooManyThresholds(heights.len()));
    }
    let masks = Masks {
        hyp: relation_masks(hull.as_ref().unwrap_or(f), &heights, alpha),
        con: relation_masks(f, &heights, beta),
    };
    let own_hyp = relation_masks(f, &heights, alpha);
    let n = g.order();
    let m = |a, b| g.mul(a, b);
    for &clause in clauses(kind) {
        let found = for_each_args(n, clause.arity(), |args| {
            let (needed, target) = match (clause, args) {
                (Clause::Sub, &[x, y]) => (min_pairs(own_hyp[x], own_hyp[y]), m(x, y)),
                (Clause::GenBi, &[x, y, z]) => (min_pairs(own_hyp[x], own_hyp[z]), m(m(x, y), z)),
                (Clause::Left, &[x, y]) => (own_hyp[y], m(x, y)),
                (Clause::Right, &[x, y]) => (own_hyp[x], m(x, y)),
                (Clause::Interior, &[x, y, z]) => (own_hyp[y], m(m(x, y), z)),
                (Clause::Quasi, &[x]) => (masks.hyp[x], x),
                _ => unreachable!("clause arity"),
            };
            needed & !masks.con[target] == 0
        });
        if let Some(elements) = found {
            let target_bad = |needed: u128, target: usize| needed & !masks.con[target];
            let thresholds = match (clause, elements.as_slice()) {
                (Clause::Sub, &[x, y]) | (Clause::GenBi, &[x, _, y]) => {
                    let target = if clause == Clause::Sub { m(x, y) } else { m(m(x, elements[1]), y) };
                    let bad = target_bad(min_pairs(own_hyp[x], own_hyp[y]), target);
                    let idx = bad.trailing_zeros();
                    let (t, r) = pair_for_min(own_hyp[x], own_hyp[y], idx);
                    vec![heights[t as usize], heights[r as usize]]
                }
                (Clause::Left, &[x, y]) => vec![heights[target_bad(own_hyp[y], m(x, y)).trailing_zeros() as usize]],
                (Clause::Right, &[x, y]) => vec![heights[target_bad(own_hyp[x], m(x, y)).trailing_zeros() as usize]],
                (Clause::Interior, &[x, y, z]) => {
                    vec![heights[target_bad(own_hyp[y], m(m(x, y), z)).trailing_zeros() as usize]]
                }
                (Clause::Quasi, &[x]) => vec![heights[target_bad(masks.hyp[x], x).trailing_zeros() as usize]],
                _ => unreachable!(),
            };
            return Ok(Verdict::fail(Form::Quantifier, Witness { clause: clause.name(), elements, thresholds }));
        }
    }
    Ok(Verdict::pass(Form::Quantifier))
}

/// Re-evaluates a quantifier witness directly from the point relations;
/// true when the implication is violated at the stored heights.
pub fn quantifier_witness_violates(g: &Groupoid, f: &FuzzySubset, w: &Witness, alpha: Relation, beta: Relation) -> bool {
    let m = |a, b| g.mul(a, b);
    let hyp = |x: usize, t: Grade| alpha.holds(f.at(x), t);
    match (Clause::from_name(w.clause), w.elements.as_slice(), w.thresholds.as_slice()) {
        (Some(Clause::Sub), &[x, y], &[t, r]) => hyp(x, t) && hyp(y, r) && !beta.holds(f.at(m(x, y)), t.min(r)),
        (Some(Clause::GenBi), &[x, y, z], &[t, r]) => {
            hyp(x, t) && hyp(z, r) && !beta.holds(f.at(m(m(x, y), z)), t.min(r))
        }
        (Some(Clause::Left), &[x, y], &[t]) => hyp(y, t) && !beta.holds(f.at(m(x, y)), t),
        (Some(Clause::Right), &[x, y], &[t]) => hyp(x, t) && !beta.holds(f.at(m(x, y)), t),
        (Some(Clause::Interior), &[x, y, z], &[t]) => hyp(y, t) && !beta.holds(f.at(m(m(x, y), z)), t),
        (Some(Clause::Quasi), &[x], &[t]) => {
            let h = quasi_hull(g, f);
            alpha.holds(h.at(x), t) && !beta.holds(f.at(x), t)
        }
        _ => false,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Agreement {
    pub kind: IdealKind,
    pub k: KParam,
    pub quantifier: Verdict,
    pub inequality: Verdict,
    pub agree: bool,
}

/// Runs the `(∈, ∈∨q_k)` quantifier form and the capped inequalities side
/// by side.
pub fn cross_validate(g: &Groupoid, f: &FuzzySubset, kind: IdealKind, k: KParam) -> Result<Agreement> {
    let quantifier = check_quantifier(g, f, kind, Relation::In, Relation::InOrQk(k), k)?;
    let inequality = check_threshold_k(g, f, kind, k)?;
    let agree = quantifier.holds == inequality.holds;
    Ok(Agreement { kind, k, quantifier, inequality, agree })
}
