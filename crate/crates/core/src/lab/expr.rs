//! Small expression language for theorem conclusions.
//!
//! Operands are numbered; `Var(0)` prints as `f`, `Var(1)` as `g` and so on.
//! Crisp operands are passed as characteristic functions and recovered with
//! [`SetExpr::Support`].

use std::fmt;

use serde::{Serialize, Serializer};

use crate::algebra::{is_crisp, subset_product, Groupoid, IdealKind};
use crate::error::Result;
use crate::fuzzy::{self, FuzzySubset, Grade, KParam, Relation};
use crate::ideals;
use crate::set::ElementSet;

const NAMES: [&str; 4] = ["f", "g", "h", "m"];

fn var_name(i: usize) -> String {
    NAMES.get(i).map_or_else(|| format!("v{i}"), |s| s.to_string())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Var(usize),
    /// The constant subset 1.
    One,
    /// `f_k`, capping at `θ`.
    Trunc(Box<Expr>),
    Meet(Box<Expr>, Box<Expr>),
    Join(Box<Expr>, Box<Expr>),
    Prod(Box<Expr>, Box<Expr>),
    MeetK(Box<Expr>, Box<Expr>),
    JoinK(Box<Expr>, Box<Expr>),
    ProdK(Box<Expr>, Box<Expr>),
    /// Characteristic function of a crisp set.
    Char(SetExpr),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SetExpr {
    /// The carrier `S`.
    All,
    /// Support of an operand.
    Support(usize),
    Inter(Box<SetExpr>, Box<SetExpr>),
    Union(Box<SetExpr>, Box<SetExpr>),
    /// Complex product `AB`.
    Product(Box<SetExpr>, Box<SetExpr>),
}

pub fn var(i: usize) -> Expr {
    Expr::Var(i)
}

pub fn trunc(e: Expr) -> Expr {
    Expr::Trunc(Box::new(e))
}

macro_rules! binary {
    ($($fn:ident => $variant:ident),*) => {
        $(pub fn $fn(a: Expr, b: Expr) -> Expr {
            Expr::$variant(Box::new(a), Box::new(b))
        })*
    };
}

binary!(meet => Meet, join => Join, prod => Prod, meet_k => MeetK, join_k => JoinK, prod_k => ProdK);

pub fn set(i: usize) -> SetExpr {
    SetExpr::Support(i)
}

pub fn inter(a: SetExpr, b: SetExpr) -> SetExpr {
    SetExpr::Inter(Box::new(a), Box::new(b))
}

pub fn union(a: SetExpr, b: SetExpr) -> SetExpr {
    SetExpr::Union(Box::new(a), Box::new(b))
}

pub fn product(a: SetExpr, b: SetExpr) -> SetExpr {
    SetExpr::Product(Box::new(a), Box::new(b))
}

impl Expr {
    pub fn eval(&self, g: &Groupoid, ops: &[FuzzySubset], k: KParam) -> Result<FuzzySubset> {
        let bin = |a: &Expr, b: &Expr| -> Result<(FuzzySubset, FuzzySubset)> { Ok((a.eval(g, ops, k)?, b.eval(g, ops, k)?)) };
        Ok(match self {
            Expr::Var(i) => ops[*i].clone(),
            Expr::One => FuzzySubset::one(g),
            Expr::Trunc(e) => fuzzy::truncate_k(&e.eval(g, ops, k)?, k),
            Expr::Meet(a, b) => {
                let (x, y) = bin(a, b)?;
                fuzzy::meet(&x, &y)?
            }
            Expr::Join(a, b) => {
                let (x, y) = bin(a, b)?;
                fuzzy::join(&x, &y)?
            }
            Expr::Prod(a, b) => {
                let (x, y) = bin(a, b)?;
                fuzzy::conv_product(g, &x, &y)?
            }
            Expr::MeetK(a, b) => {
                let (x, y) = bin(a, b)?;
                fuzzy::meet_k(&x, &y, k)?
            }
            Expr::JoinK(a, b) => {
                let (x, y) = bin(a, b)?;
                fuzzy::join_k(&x, &y, k)?
            }
            Expr::ProdK(a, b) => {
                let (x, y) = bin(a, b)?;
                fuzzy::product_k(g, &x, &y, k)?
            }
            Expr::Char(s) => FuzzySubset::characteristic(g, s.eval(g, ops)),
        })
    }
}

impl SetExpr {
    pub fn eval(&self, g: &Groupoid, ops: &[FuzzySubset]) -> ElementSet {
        match self {
            SetExpr::All => g.carrier(),
            SetExpr::Support(i) => ops[*i].support(),
            SetExpr::Inter(a, b) => a.eval(g, ops).intersection(b.eval(g, ops)),
            SetExpr::Union(a, b) => a.eval(g, ops).union(b.eval(g, ops)),
            SetExpr::Product(a, b) => subset_product(g, a.eval(g, ops), b.eval(g, ops)),
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let op = |f: &mut fmt::Formatter<'_>, a: &Expr, sym: &str, b: &Expr| write!(f, "({a} {sym} {b})");
        match self {
            Expr::Var(i) => write!(f, "{}", var_name(*i)),
            Expr::One => write!(f, "1"),
            Expr::Trunc(e) => write!(f, "{e}_k"),
            Expr::Meet(a, b) => op(f, a, "∧", b),
            Expr::Join(a, b) => op(f, a, "∨", b),
            Expr::Prod(a, b) => op(f, a, "∘", b),
            Expr::MeetK(a, b) => op(f, a, "∧_k", b),
            Expr::JoinK(a, b) => op(f, a, "∨_k", b),
            Expr::ProdK(a, b) => op(f, a, "∘_k", b),
            Expr::Char(s) => write!(f, "C[{s}]"),
        }
    }
}

impl fmt::Display for SetExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SetExpr::All => write!(f, "S"),
            SetExpr::Support(i) => write!(f, "{}", var_name(*i).to_uppercase()),
            SetExpr::Inter(a, b) => write!(f, "({a} ∩ {b})"),
            SetExpr::Union(a, b) => write!(f, "({a} ∪ {b})"),
            SetExpr::Product(a, b) => write!(f, "({a}{b})"),
        }
    }
}

/// A property of a single fuzzy subset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Notion {
    /// Capped inequalities at `θ`.
    ThresholdK(IdealKind),
    /// Uncapped inequalities.
    Classic(IdealKind),
    /// `(α, β)` quantifier form.
    Quantifier(IdealKind, Relation, Relation),
    /// Every nonempty level set is a crisp ideal of the kind.
    LevelSets(IdealKind),
    /// The support is a crisp ideal of the kind.
    SupportIs(IdealKind),
    NonZero,
    /// Every nonzero grade is at least 1/2.
    HalfOnSupport,
}

impl fmt::Display for Notion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Notion::ThresholdK(kind) => write!(f, "(∈,∈∨q_k) {kind}"),
            Notion::Classic(kind) => write!(f, "fuzzy {kind}"),
            Notion::Quantifier(kind, a, b) => write!(f, "({a},{b}) {kind}"),
            Notion::LevelSets(kind) => write!(f, "level sets are {kind}s"),
            Notion::SupportIs(kind) => write!(f, "support is a {kind}"),
            Notion::NonZero => write!(f, "nonzero"),
            Notion::HalfOnSupport => write!(f, "grades ≥ 1/2 on support"),
        }
    }
}

impl Notion {
    /// Decides the notion; on failure returns the first offending element
    /// (if the failure is local) and a short description.
    pub fn eval(&self, g: &Groupoid, f: &FuzzySubset, k: KParam) -> Result<(bool, Option<usize>, String)> {
        let from_verdict = |v: ideals::Verdict| {
            let detail = v
                .witness
                .as_ref()
                .map(|w| {
                    let els: Vec<&str> = w.elements.iter().map(|&e| g.element_name(e)).collect();
                    let ts: Vec<String> = w.thresholds.iter().map(|t| t.to_string()).collect();
                    if ts.is_empty() {
                        format!("{} clause fails at ({})", w.clause, els.join(","))
                    } else {
                        format!("{} clause fails at ({}) with heights ({})", w.clause, els.join(","), ts.join(","))
                    }
                })
                .unwrap_or_default();
            (v.holds, v.witness.and_then(|w| w.elements.first().copied()), detail)
        };
        Ok(match self {
            Notion::ThresholdK(kind) => from_verdict(ideals::check_threshold_k(g, f, *kind, k)?),
            Notion::Classic(kind) => from_verdict(ideals::check_unthresholded(g, f, *kind)?),
            Notion::Quantifier(kind, a, b) => from_verdict(ideals::check_quantifier(g, f, *kind, *a, *b, k)?),
            Notion::LevelSets(kind) => {
                for t in f.distinct_grades().into_iter().filter(|t| !t.is_zero()) {
                    let level = f.level_set(t)?;
                    if !is_crisp(g, level, *kind) {
                        return Ok((false, None, format!("level set at {t} is {}", g.show_set(level))));
                    }
                }
                (true, None, String::new())
            }
            Notion::SupportIs(kind) => {
                let s = f.support();
                let ok = is_crisp(g, s, *kind);
                (ok, None, if ok { String::new() } else { format!("support {} is not a {kind}", g.show_set(s)) })
            }
            Notion::NonZero => (!f.is_zero(), None, String::new()),
            Notion::HalfOnSupport => {
                let bad = (0..f.len()).find(|&x| !f.at(x).is_zero() && f.at(x) < Grade::HALF);
                (bad.is_none(), bad, String::new())
            }
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Cmp {
    Eq,
    Le,
    Ge,
}

impl Cmp {
    fn holds(self, a: Grade, b: Grade) -> bool {
        match self {
            Cmp::Eq => a == b,
            Cmp::Le => a <= b,
            Cmp::Ge => a >= b,
        }
    }

    fn symbol(self) -> &'static str {
        match self {
            Cmp::Eq => "=",
            Cmp::Le => "≤",
            Cmp::Ge => "≥",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Conclusion {
    /// Pointwise comparison of two fuzzy subsets.
    Compare(Expr, Cmp, Expr),
    Is(Expr, Notion),
    Iff(Box<Conclusion>, Box<Conclusion>),
    Implies(Box<Conclusion>, Box<Conclusion>),
    All(Vec<Conclusion>),
    Not(Box<Conclusion>),
    SetEq(SetExpr, SetExpr),
}

pub fn compare(a: Expr, cmp: Cmp, b: Expr) -> Conclusion {
    Conclusion::Compare(a, cmp, b)
}

pub fn is(e: Expr, n: Notion) -> Conclusion {
    Conclusion::Is(e, n)
}

pub fn iff(a: Conclusion, b: Conclusion) -> Conclusion {
    Conclusion::Iff(Box::new(a), Box::new(b))
}

pub fn implies(a: Conclusion, b: Conclusion) -> Conclusion {
    Conclusion::Implies(Box::new(a), Box::new(b))
}

impl fmt::Display for Conclusion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Conclusion::Compare(a, c, b) => write!(f, "{a} {} {b}", c.symbol()),
            Conclusion::Is(e, n) => write!(f, "{e} is {n}"),
            Conclusion::Iff(a, b) => write!(f, "[{a}] ⟺ [{b}]"),
            Conclusion::Implies(a, b) => write!(f, "[{a}] ⟹ [{b}]"),
            Conclusion::All(cs) => {
                let parts: Vec<String> = cs.iter().map(|c| format!("[{c}]")).collect();
                write!(f, "{}", parts.join(" and "))
            }
            Conclusion::Not(c) => write!(f, "not [{c}]"),
            Conclusion::SetEq(a, b) => write!(f, "{a} = {b}"),
        }
    }
}

impl Serialize for Conclusion {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Result of evaluating a conclusion on one operand tuple.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Outcome {
    pub holds: bool,
    /// Element where the two sides differ, for local failures.
    pub element: Option<usize>,
    pub lhs: Option<Grade>,
    pub rhs: Option<Grade>,
    pub detail: String,
}

impl Outcome {
    fn pass() -> Self {
        Outcome { holds: true, element: None, lhs: None, rhs: None, detail: String::new() }
    }

    fn fail(element: Option<usize>, detail: String) -> Self {
        Outcome { holds: false, element, lhs: None, rhs: None, detail }
    }
}

impl Conclusion {
    pub fn eval(&self, g: &Groupoid, ops: &[FuzzySubset], k: KParam) -> Result<Outcome> {
        match self {
            Conclusion::Compare(a, cmp, b) => {
                let (x, y) = (a.eval(g, ops, k)?, b.eval(g, ops, k)?);
                Ok(match (0..x.len()).find(|&e| !cmp.holds(x.at(e), y.at(e))) {
                    None => Outcome::pass(),
                    Some(e) => Outcome {
                        holds: false,
                        element: Some(e),
                        lhs: Some(x.at(e)),
                        rhs: Some(y.at(e)),
                        detail: format!("at {}: {} vs {}", g.element_name(e), x.at(e), y.at(e)),
                    },
                })
            }
            Conclusion::Is(e, n) => {
                let v = e.eval(g, ops, k)?;
                let (holds, element, detail) = n.eval(g, &v, k)?;
                Ok(if holds { Outcome::pass() } else { Outcome::fail(element, detail) })
            }
            Conclusion::Iff(a, b) => {
                let (x, y) = (a.eval(g, ops, k)?, b.eval(g, ops, k)?);
                Ok(match (x.holds, y.holds) {
                    (true, true) | (false, false) => Outcome::pass(),
                    (true, false) => Outcome::fail(y.element, format!("left side holds, right side fails: {}", y.detail)),
                    (false, true) => Outcome::fail(x.element, format!("right side holds, left side fails: {}", x.detail)),
                })
            }
            Conclusion::Implies(a, b) => {
                if !a.eval(g, ops, k)?.holds {
                    return Ok(Outcome::pass());
                }
                b.eval(g, ops, k)
            }
            Conclusion::All(cs) => {
                for c in cs {
                    let o = c.eval(g, ops, k)?;
                    if !o.holds {
                        return Ok(o);
                    }
                }
                Ok(Outcome::pass())
            }
            Conclusion::Not(c) => {
                let inner = c.eval(g, ops, k)?;
                Ok(if inner.holds { Outcome::fail(None, format!("{c} holds")) } else { Outcome::pass() })
            }
            Conclusion::SetEq(a, b) => {
                let (x, y) = (a.eval(g, ops), b.eval(g, ops));
                if x == y {
                    return Ok(Outcome::pass());
                }
                let e = g.elements().find(|&e| x.contains(e) != y.contains(e));
                Ok(Outcome::fail(e, format!("{} vs {}", g.show_set(x), g.show_set(y))))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn display() {
        let e = prod_k(prod_k(var(0), Expr::One), var(0));
        assert_eq!(e.to_string(), "((f ∘_k 1) ∘_k f)");
        assert_eq!(compare(trunc(var(0)), Cmp::Eq, e).to_string(), "f_k = ((f ∘_k 1) ∘_k f)");
        assert_eq!(inter(set(0), product(set(1), SetExpr::All)).to_string(), "(F ∩ (GS))");
    }

    #[test]
    fn constant_one_sandwich() {
        let s6 = fixtures::s6();
        let one = FuzzySubset::one(&s6);
        let k = KParam::zero();
        let lhs = prod_k(var(0), var(0));
        let literal = compare(lhs.clone(), Cmp::Eq, var(0)).eval(&s6, std::slice::from_ref(&one), k).unwrap();
        assert!(!literal.holds);
        assert_eq!(literal.lhs, Some(Grade::HALF));
        assert_eq!(literal.rhs, Some(Grade::ONE));
        assert!(compare(lhs, Cmp::Eq, trunc(var(0))).eval(&s6, &[one], k).unwrap().holds);
    }

    #[test]
    fn set_products_match_characteristic_products() {
        let s5 = fixtures::s5();
        let sets = ElementSet::nonempty_subsets(5);
        for &a in sets.iter().step_by(3) {
            for &b in sets.iter().step_by(5) {
                let ops = [FuzzySubset::characteristic(&s5, a), FuzzySubset::characteristic(&s5, b)];
                let c = compare(prod(var(0), var(1)), Cmp::Eq, Expr::Char(product(set(0), set(1))));
                assert!(c.eval(&s5, &ops, KParam::zero()).unwrap().holds);
            }
        }
    }
}
