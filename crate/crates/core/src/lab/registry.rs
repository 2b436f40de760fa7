use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use super::expr::*;
use crate::algebra::{IdealKind, RegularityProfile};
use crate::error::{Error, Result};
use crate::fuzzy::{KParam, Relation};

use IdealKind::*;

macro_rules! theorem_ids {
    ($($variant:ident => $name:literal),* $(,)?) => {
        #[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub enum TheoremId {
            $($variant),*
        }

        impl TheoremId {
            pub const ALL: &'static [TheoremId] = &[$(TheoremId::$variant),*];

            pub fn as_str(self) -> &'static str {
                match self {
                    $(TheoremId::$variant => $name),*
                }
            }
        }
    };
}

theorem_ids! {
    T21Level => "T2.1-level",
    T31InIn => "T3.1-inin",
    S3Support => "S3-support",
    S3Construct => "S3-construct",
    P42Mono => "P4.2-mono",
    P43Meet => "P4.3-meet",
    L42OneSided => "L4.2-onesided",
    P44IdemSub => "P4.4-idem-sub",
    P45SandwichSub => "P4.5-sandwich-sub",
    T43SandwichEq => "T4.3-sandwich-eq",
    L44ProdBi => "L4.4-prod-bi",
    T44IIdemEq => "T4.4-i-idem-eq",
    T44IiMeetEq => "T4.4-ii-meet-eq",
    Th5Subgroupoid => "TH5-subgroupoid",
    ThLrK => "TH-LR-k",
    Th10ProdIdeal => "TH10-prod-ideal",
    LemGenBiBi => "LEM-genbi-bi",
    LemQuasiBi => "LEM-quasi-bi",
    LemIdealInterior => "LEM-ideal-interior",
    LemKCombinators => "LEM-k-combinators",
    LemCharK => "LEM-char-k",
    Th22 => "TH22",
    Th23 => "TH23",
    Th24 => "TH24",
    Th25 => "TH25",
    Th26 => "TH26",
    Th27 => "TH27",
    Th28 => "TH28",
    ThFinal => "TH-final",
    CrispTh1 => "CRISP-th1",
    CrispTh2 => "CRISP-th2",
    CrispTh3 => "CRISP-th3",
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TheoremId {
    type Err = Error;

    /// Full id, or the part before the first `-` when only one id has it.
    fn from_str(s: &str) -> Result<Self> {
        if let Some(id) = TheoremId::ALL.iter().copied().find(|id| id.as_str().eq_ignore_ascii_case(s)) {
            return Ok(id);
        }
        let short: Vec<TheoremId> =
            TheoremId::ALL.iter().copied().filter(|id| id.as_str().split('-').next().is_some_and(|p| p.eq_ignore_ascii_case(s))).collect();
        match short[..] {
            [id] => Ok(id),
            _ => Err(Error::UnknownName { what: "theorem", name: s.to_string() }),
        }
    }
}

impl Serialize for TheoremId {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

/// Structural side conditions on the groupoid.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Property {
    LeftIdentity,
    WeaklyRegular,
    Regular,
    IntraRegular,
}

impl Property {
    pub fn as_str(self) -> &'static str {
        match self {
            Property::LeftIdentity => "left identity",
            Property::WeaklyRegular => "weakly regular",
            Property::Regular => "regular",
            Property::IntraRegular => "intra-regular",
        }
    }

    pub fn holds(self, p: &RegularityProfile) -> bool {
        match self {
            Property::LeftIdentity => p.left_identity.is_some(),
            Property::WeaklyRegular => p.weakly_regular,
            Property::Regular => p.regular,
            Property::IntraRegular => p.intra_regular,
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Where an operand is drawn from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Source {
    /// Grid-valued subsets satisfying every listed notion.
    Fuzzy(Vec<Notion>),
    /// Characteristic functions of the nonempty subsets (`None`) or of the
    /// crisp ideals of a kind.
    Crisp(Option<IdealKind>),
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Source::Fuzzy(ns) if ns.is_empty() => write!(f, "all grid subsets"),
            Source::Fuzzy(ns) => {
                let parts: Vec<String> = ns.iter().map(|n| n.to_string()).collect();
                write!(f, "grid subsets: {}", parts.join(", "))
            }
            Source::Crisp(None) => write!(f, "nonempty crisp subsets"),
            Source::Crisp(Some(kind)) => write!(f, "crisp {kind}s"),
        }
    }
}

/// One conclusion checked over a population of operand tuples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub label: String,
    /// Whether acceptance depends on this check.
    pub pinned: bool,
    pub operands: Vec<Source>,
    /// Pairs `(i, j)` with operand `i ≤` operand `j` pointwise.
    pub constraints: Vec<(usize, usize)>,
    pub conclusion: Conclusion,
    /// When set, "the conclusion holds on every tuple" must coincide with
    /// the groupoid having all these properties.
    pub characterizes: Option<Vec<Property>>,
}

impl Check {
    fn new(label: impl Into<String>, operands: Vec<Source>, conclusion: Conclusion) -> Self {
        Check { label: label.into(), pinned: true, operands, constraints: vec![], conclusion, characterizes: None }
    }

    fn unpinned(mut self) -> Self {
        self.pinned = false;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Theorem {
    pub id: TheoremId,
    pub citation: &'static str,
    pub side_conditions: Vec<Property>,
    pub checks: Vec<Check>,
}

fn any() -> Source {
    Source::Fuzzy(vec![])
}

fn tk(kind: IdealKind) -> Source {
    Source::Fuzzy(vec![Notion::ThresholdK(kind)])
}

fn crisp(kind: IdealKind) -> Source {
    Source::Crisp(Some(kind))
}

fn short(kind: IdealKind) -> &'static str {
    match kind {
        Subgroupoid => "subgroupoid",
        LeftIdeal => "left",
        RightIdeal => "right",
        TwoSidedIdeal => "ideal",
        BiIdeal => "bi",
        GeneralizedBiIdeal => "gen-bi",
        InteriorIdeal => "interior",
        QuasiIdeal => "quasi",
    }
}

pub fn registry(k: KParam) -> Vec<Theorem> {
    TheoremId::ALL.iter().map(|&id| theorem(id, k)).collect()
}

/// The registry entry for `id`; relations that mention `q_k` use `k`.
pub fn theorem(id: TheoremId, k: KParam) -> Theorem {
    use Property::*;
    use TheoremId::*;
    let f = || var(0);
    let g = || var(1);
    let h = || var(2);
    let ink = Relation::InOrQk(k);
    let (citation, sides, checks): (&'static str, Vec<Property>, Vec<Check>) = match id {
        T21Level => (
            "f is a fuzzy bi-ideal iff every nonempty level set is a bi-ideal",
            vec![],
            vec![Check::new("equivalence", vec![any()], iff(is(f(), Notion::Classic(BiIdeal)), is(f(), Notion::LevelSets(BiIdeal))))],
        ),
        T31InIn => (
            "f is a fuzzy bi-ideal iff f is an (∈,∈)-fuzzy bi-ideal",
            vec![],
            vec![Check::new(
                "equivalence",
                vec![any()],
                iff(is(f(), Notion::Classic(BiIdeal)), is(f(), Notion::Quantifier(BiIdeal, Relation::In, Relation::In))),
            )],
        ),
        S3Support => {
            let mut checks = vec![];
            for alpha in [Relation::In, Relation::Q, Relation::InOrQ] {
                for beta in [Relation::In, Relation::Q, Relation::InOrQ, Relation::InAndQ] {
                    checks.push(Check::new(
                        format!("({alpha},{beta})"),
                        vec![Source::Fuzzy(vec![Notion::Quantifier(BiIdeal, alpha, beta), Notion::NonZero])],
                        is(f(), Notion::SupportIs(BiIdeal)),
                    ));
                }
            }
            ("the support of a nonzero (α,β)-fuzzy bi-ideal is a bi-ideal", vec![], checks)
        }
        S3Construct => {
            let src = || Source::Fuzzy(vec![Notion::SupportIs(BiIdeal), Notion::HalfOnSupport]);
            (
                "f vanishing off a bi-ideal and at least 1/2 on it is a (q,∈∨q)- and (∈,∈∨q)-fuzzy bi-ideal",
                vec![],
                vec![
                    Check::new("(q,∈∨q)", vec![src()], is(f(), Notion::Quantifier(BiIdeal, Relation::Q, Relation::InOrQ))),
                    Check::new("(∈,∈∨q)", vec![src()], is(f(), Notion::Quantifier(BiIdeal, Relation::In, Relation::InOrQ))),
                ],
            )
        }
        P42Mono => {
            let mut c = Check::new("monotone", vec![any(), any(), any(), any()], compare(prod_k(f(), g()), Cmp::Le, prod_k(h(), var(3))));
            c.constraints = vec![(0, 2), (1, 3)];
            ("f ⊆ h and g ⊆ m imply f ∘_k g ⊆ h ∘_k m", vec![], vec![c])
        }
        P43Meet => (
            "the ∧_k of two (∈,∈∨q_k)-fuzzy bi-ideals is one",
            vec![],
            vec![Check::new("meet", vec![tk(BiIdeal), tk(BiIdeal)], is(meet_k(f(), g()), Notion::ThresholdK(BiIdeal)))],
        ),
        L42OneSided => (
            "every one-sided (∈,∈∨q_k)-fuzzy ideal is an (∈,∈∨q_k)-fuzzy bi-ideal",
            vec![],
            vec![
                Check::new("left", vec![tk(LeftIdeal)], is(f(), Notion::ThresholdK(BiIdeal))),
                Check::new("right", vec![tk(RightIdeal)], is(f(), Notion::ThresholdK(BiIdeal))),
            ],
        ),
        P44IdemSub => (
            "f ∘_k f ⊆ f for every (∈,∈∨q_k)-fuzzy bi-ideal f",
            vec![],
            vec![Check::new("inclusion", vec![tk(BiIdeal)], compare(prod_k(f(), f()), Cmp::Le, f()))],
        ),
        P45SandwichSub => (
            "(f ∘_k 1) ∘_k f ⊆ f for every (∈,∈∨q_k)-fuzzy bi-ideal f",
            vec![],
            vec![Check::new("inclusion", vec![tk(BiIdeal)], compare(prod_k(prod_k(f(), Expr::One), f()), Cmp::Le, f()))],
        ),
        T43SandwichEq => {
            let lhs = || prod_k(prod_k(f(), Expr::One), f());
            (
                "regular with left identity: (f ∘_k 1) ∘_k f = f for every (∈,∈∨q_k)-fuzzy bi-ideal f",
                vec![Regular, LeftIdentity],
                vec![
                    Check::new("literal", vec![tk(BiIdeal)], compare(lhs(), Cmp::Eq, f())).unpinned(),
                    Check::new("truncated", vec![tk(BiIdeal)], compare(lhs(), Cmp::Eq, trunc(f()))),
                ],
            )
        }
        L44ProdBi => (
            "regular with left identity: f ∘_k g is an (∈,∈∨q_k)-fuzzy bi-ideal for bi-ideals f, g",
            vec![Regular, LeftIdentity],
            vec![Check::new("product", vec![tk(BiIdeal), tk(BiIdeal)], is(prod_k(f(), g()), Notion::ThresholdK(BiIdeal)))],
        ),
        T44IIdemEq => (
            "regular and intra-regular with left identity: f ∘_k f = f for every (∈,∈∨q_k)-fuzzy bi-ideal f",
            vec![Regular, IntraRegular, LeftIdentity],
            vec![
                Check::new("literal", vec![tk(BiIdeal)], compare(prod_k(f(), f()), Cmp::Eq, f())).unpinned(),
                Check::new("truncated", vec![tk(BiIdeal)], compare(prod_k(f(), f()), Cmp::Eq, trunc(f()))),
            ],
        ),
        T44IiMeetEq => (
            "regular and intra-regular with left identity: f ∧_k g = (f ∘_k g) ∧_k (g ∘_k f) for bi-ideals f, g",
            vec![Regular, IntraRegular, LeftIdentity],
            vec![Check::new(
                "meet",
                vec![tk(BiIdeal), tk(BiIdeal)],
                compare(meet_k(f(), g()), Cmp::Eq, meet_k(prod_k(f(), g()), prod_k(g(), f()))),
            )],
        ),
        Th5Subgroupoid => (
            "f is an (∈,∈∨q_k)-fuzzy subgroupoid iff f(xy) ≥ min(f(x), f(y), θ)",
            vec![],
            vec![Check::new(
                "equivalence",
                vec![any()],
                iff(is(f(), Notion::Quantifier(Subgroupoid, Relation::In, ink)), is(f(), Notion::ThresholdK(Subgroupoid))),
            )],
        ),
        ThLrK => {
            let mut checks = vec![];
            for kind in [LeftIdeal, RightIdeal] {
                checks.push(Check::new(
                    format!("{} equivalence", short(kind)),
                    vec![any()],
                    iff(is(f(), Notion::Quantifier(kind, Relation::In, ink)), is(f(), Notion::ThresholdK(kind))),
                ));
                checks.push(Check::new(
                    format!("{} (∈,∈) implies (∈,∈∨q_k)", short(kind)),
                    vec![any()],
                    implies(is(f(), Notion::Quantifier(kind, Relation::In, Relation::In)), is(f(), Notion::Quantifier(kind, Relation::In, ink))),
                ));
            }
            ("f is an (∈,∈∨q_k)-fuzzy left (right) ideal iff f(xy) ≥ min(f(y), θ) (min(f(x), θ))", vec![], checks)
        }
        Th10ProdIdeal => (
            "weakly regular with left identity: f ∘ g is an (∈,∈∨q_k)-fuzzy ideal for left f and right g",
            vec![WeaklyRegular, LeftIdentity],
            vec![Check::new("product", vec![tk(LeftIdeal), tk(RightIdeal)], is(prod(f(), g()), Notion::ThresholdK(TwoSidedIdeal)))],
        ),
        LemGenBiBi => (
            "weakly regular with left identity: every (∈,∈∨q_k)-fuzzy generalized bi-ideal is a bi-ideal",
            vec![WeaklyRegular, LeftIdentity],
            vec![Check::new("gen-bi", vec![tk(GeneralizedBiIdeal)], is(f(), Notion::ThresholdK(BiIdeal)))],
        ),
        LemQuasiBi => (
            "weakly regular with left identity: every (∈,∈∨q_k)-fuzzy quasi-ideal is a bi-ideal",
            vec![WeaklyRegular, LeftIdentity],
            vec![Check::new("quasi", vec![tk(QuasiIdeal)], is(f(), Notion::ThresholdK(BiIdeal)))],
        ),
        LemIdealInterior => (
            "every (∈,∈∨q_k)-fuzzy ideal is an (∈,∈∨q_k)-fuzzy interior ideal",
            vec![],
            vec![Check::new("ideal", vec![tk(TwoSidedIdeal)], is(f(), Notion::ThresholdK(InteriorIdeal)))],
        ),
        LemKCombinators => (
            "f ∧_k g = f_k ∧ g_k, f ∨_k g = f_k ∨ g_k, f ∘_k g = f_k ∘ g_k",
            vec![],
            vec![
                Check::new("meet", vec![any(), any()], compare(meet_k(f(), g()), Cmp::Eq, meet(trunc(f()), trunc(g())))),
                Check::new("join", vec![any(), any()], compare(join_k(f(), g()), Cmp::Eq, join(trunc(f()), trunc(g())))),
                Check::new("product", vec![any(), any()], compare(prod_k(f(), g()), Cmp::Eq, prod(trunc(f()), trunc(g())))),
            ],
        ),
        LemCharK => {
            let pair = || vec![Source::Crisp(None), Source::Crisp(None)];
            let c = |s: SetExpr| Expr::Char(s);
            let mut checks = vec![
                Check::new("meet", pair(), compare(meet_k(f(), g()), Cmp::Eq, trunc(c(inter(set(0), set(1)))))),
                Check::new("join", pair(), compare(join_k(f(), g()), Cmp::Eq, trunc(c(union(set(0), set(1)))))),
                Check::new("product", pair(), compare(prod_k(f(), g()), Cmp::Eq, trunc(c(product(set(0), set(1)))))),
                Check::new(
                    "literal",
                    pair(),
                    Conclusion::All(vec![
                        compare(meet_k(f(), g()), Cmp::Eq, c(inter(set(0), set(1)))),
                        compare(join_k(f(), g()), Cmp::Eq, c(union(set(0), set(1)))),
                        compare(prod_k(f(), g()), Cmp::Eq, c(product(set(0), set(1)))),
                    ]),
                )
                .unpinned(),
            ];
            for kind in [LeftIdeal, RightIdeal, QuasiIdeal] {
                checks.push(Check::new(
                    format!("{} characteristic", short(kind)),
                    vec![Source::Crisp(None)],
                    iff(is(f(), Notion::SupportIs(kind)), is(trunc(f()), Notion::ThresholdK(kind))),
                ));
            }
            for kind in [LeftIdeal, RightIdeal] {
                checks.push(Check::new(
                    format!("{} truncation is classic", short(kind)),
                    vec![tk(kind)],
                    is(trunc(f()), Notion::Classic(kind)),
                ));
            }
            ("characteristic functions: (C_A ∧_k C_B) = (C_{A∩B})_k and friends; (C_L)_k is a k-ideal iff L is an ideal", vec![], checks)
        }
        Th22 => (
            "regular (weakly regular, left identity): f ∧_k g = f ∘_k g for right f and left g",
            vec![WeaklyRegular, LeftIdentity, Regular],
            vec![Check::new("(ii)", vec![tk(RightIdeal), tk(LeftIdeal)], compare(meet_k(f(), g()), Cmp::Eq, prod_k(f(), g())))],
        ),
        Th23 => {
            let checks = [("(ii)", GeneralizedBiIdeal), ("(iii)", BiIdeal), ("(iv)", QuasiIdeal)]
                .into_iter()
                .map(|(label, mid)| {
                    Check::new(
                        label,
                        vec![tk(RightIdeal), tk(mid), tk(LeftIdeal)],
                        compare(meet_k(meet_k(f(), g()), h()), Cmp::Le, prod_k(prod_k(f(), g()), h())),
                    )
                })
                .collect();
            (
                "regular (weakly regular, left identity): (f ∧_k g) ∧_k h ≤ (f ∘_k g) ∘_k h for right f, left h",
                vec![WeaklyRegular, LeftIdentity, Regular],
                checks,
            )
        }
        Th24 => {
            let checks = [("(ii)", GeneralizedBiIdeal), ("(iii)", BiIdeal), ("(iv)", QuasiIdeal)]
                .into_iter()
                .map(|(label, kind)| Check::new(label, vec![tk(kind)], compare(trunc(f()), Cmp::Eq, prod_k(prod_k(f(), Expr::One), f()))))
                .collect();
            ("regular (weakly regular, left identity): f_k = (f ∘_k 1) ∘_k f", vec![WeaklyRegular, LeftIdentity, Regular], checks)
        }
        Th25 => {
            let cases = [
                ("(ii)", QuasiIdeal, TwoSidedIdeal),
                ("(iii)", QuasiIdeal, InteriorIdeal),
                ("(iv)", BiIdeal, TwoSidedIdeal),
                ("(v)", QuasiIdeal, InteriorIdeal),
                ("(vi)", GeneralizedBiIdeal, TwoSidedIdeal),
                ("(vii)", GeneralizedBiIdeal, InteriorIdeal),
            ];
            let checks = cases
                .into_iter()
                .map(|(label, a, b)| {
                    Check::new(label, vec![tk(a), tk(b)], compare(meet_k(f(), g()), Cmp::Eq, prod_k(prod_k(f(), g()), f())))
                })
                .collect();
            ("regular (weakly regular, left identity): f ∧_k g = (f ∘_k g) ∘_k f", vec![WeaklyRegular, LeftIdentity, Regular], checks)
        }
        Th26 => {
            let checks = [("(ii)", QuasiIdeal), ("(iii)", BiIdeal), ("(iv)", GeneralizedBiIdeal)]
                .into_iter()
                .map(|(label, kind)| Check::new(label, vec![tk(kind), tk(LeftIdeal)], compare(meet_k(f(), g()), Cmp::Le, prod_k(f(), g()))))
                .collect();
            ("regular (weakly regular, left identity): f ∧_k g ≤ f ∘_k g for left g", vec![WeaklyRegular, LeftIdentity, Regular], checks)
        }
        Th27 => (
            "intra-regular (weakly regular, left identity): f ∧_k g ≤ f ∘_k g for left f and right g",
            vec![WeaklyRegular, LeftIdentity, IntraRegular],
            vec![Check::new("(ii)", vec![tk(LeftIdeal), tk(RightIdeal)], compare(meet_k(f(), g()), Cmp::Le, prod_k(f(), g())))],
        ),
        Th28 => {
            let mut checks: Vec<Check> = [("(ii)", QuasiIdeal), ("(iii)", BiIdeal)]
                .into_iter()
                .map(|(label, kind)| Check::new(label, vec![tk(kind)], compare(prod_k(f(), f()), Cmp::Eq, trunc(f()))))
                .collect();
            for (label, a, b) in [("(iv)", QuasiIdeal, QuasiIdeal), ("(v)", QuasiIdeal, BiIdeal), ("(vi)", BiIdeal, BiIdeal)] {
                checks.push(Check::new(label, vec![tk(a), tk(b)], compare(prod_k(f(), g()), Cmp::Ge, meet_k(f(), g()))));
            }
            (
                "regular and intra-regular (weakly regular, left identity): f ∘_k f = f_k; f ∘_k g ≥ f ∧_k g",
                vec![WeaklyRegular, LeftIdentity, Regular, IntraRegular],
                checks,
            )
        }
        ThFinal => {
            let cases = [
                ("(ii)", RightIdeal, LeftIdeal),
                ("(iii)", RightIdeal, QuasiIdeal),
                ("(iv)", RightIdeal, BiIdeal),
                ("(v)", RightIdeal, GeneralizedBiIdeal),
                ("(vi)", LeftIdeal, QuasiIdeal),
                ("(vii)", LeftIdeal, BiIdeal),
                ("(viii)", LeftIdeal, GeneralizedBiIdeal),
                ("(ix)", QuasiIdeal, QuasiIdeal),
                ("(x)", QuasiIdeal, BiIdeal),
                ("(xi)", QuasiIdeal, GeneralizedBiIdeal),
                ("(xii)", BiIdeal, BiIdeal),
                ("(xiii)", BiIdeal, GeneralizedBiIdeal),
                ("(ixv)", GeneralizedBiIdeal, GeneralizedBiIdeal),
            ];
            let checks = cases
                .into_iter()
                .map(|(label, a, b)| {
                    Check::new(label, vec![tk(a), tk(b)], compare(meet(prod_k(f(), g()), prod_k(g(), f())), Cmp::Ge, meet_k(f(), g())))
                })
                .collect();
            (
                "regular and intra-regular (weakly regular, left identity): (f ∘_k g) ∧ (g ∘_k f) ≥ f ∧_k g",
                vec![WeaklyRegular, LeftIdentity, Regular, IntraRegular],
                checks,
            )
        }
        CrispTh1 => {
            let mut ii = Check::new("(ii)", vec![crisp(RightIdeal), crisp(LeftIdeal)], Conclusion::SetEq(inter(set(0), set(1)), product(set(0), set(1))));
            ii.characterizes = Some(vec![Regular]);
            let mut iii = Check::new("(iii) (AS)A", vec![crisp(QuasiIdeal)], Conclusion::SetEq(product(product(set(0), SetExpr::All), set(0)), set(0))).unpinned();
            iii.characterizes = Some(vec![Regular]);
            let mut iii_alt = Check::new("(iii) A(SA)", vec![crisp(QuasiIdeal)], Conclusion::SetEq(product(set(0), product(SetExpr::All, set(0))), set(0))).unpinned();
            iii_alt.characterizes = Some(vec![Regular]);
            (
                "weakly regular with left identity: regular iff R ∩ L = RL for all right R, left L",
                vec![WeaklyRegular, LeftIdentity],
                vec![ii, iii, iii_alt],
            )
        }
        CrispTh2 => {
            let mut ii = Check::new("(ii)", vec![crisp(RightIdeal), crisp(LeftIdeal)], Conclusion::SetEq(inter(set(0), set(1)), product(set(1), set(0))));
            ii.characterizes = Some(vec![IntraRegular]);
            ("weakly regular with left identity: intra-regular iff R ∩ L = LR for all right R, left L", vec![WeaklyRegular, LeftIdentity], vec![ii])
        }
        CrispTh3 => {
            let mut ii = Check::new("(ii)", vec![crisp(QuasiIdeal)], Conclusion::SetEq(product(set(0), set(0)), set(0)));
            ii.characterizes = Some(vec![Regular, IntraRegular]);
            (
                "weakly regular with left identity: regular and intra-regular iff every quasi-ideal is idempotent",
                vec![WeaklyRegular, LeftIdentity],
                vec![ii],
            )
        }
    };
    Theorem { id, citation, side_conditions: sides, checks }
}
