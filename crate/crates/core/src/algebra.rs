//! Finite groupoids given by a Cayley table: law checks, complex products,
//! crisp ideals and regularity.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::set::ElementSet;

/// Largest supported carrier size; element sets are 64-bit masks.
pub const MAX_ORDER: usize = 64;

/// Default cap on the order accepted by [`enumerate_crisp`].
pub const DEFAULT_CRISP_LIMIT: usize = 12;

/// A finite magma. Entry `(i, j)` of the table is the index of `i·j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Groupoid {
    order: usize,
    table: Vec<usize>,
    names: Vec<String>,
    name: Option<String>,
}

impl Groupoid {
    /// Validates a row-major table. Names default to the decimal indices.
    pub fn new(order: usize, table: Vec<usize>, names: Option<Vec<String>>) -> Result<Self> {
        if order == 0 {
            return Err(Error::EmptyCarrier);
        }
        if order > MAX_ORDER {
            return Err(Error::OrderTooLarge { order, limit: MAX_ORDER });
        }
        if table.len() != order * order {
            return Err(Error::TableShape { expected: order * order, found: table.len() });
        }
        if let Some(pos) = table.iter().position(|&v| v >= order) {
            return Err(Error::EntryOutOfRange { row: pos / order, col: pos % order, value: table[pos] });
        }
        let names = match names {
            Some(names) => {
                if names.len() != order {
                    return Err(Error::NameCount { expected: order, found: names.len() });
                }
                for (i, a) in names.iter().enumerate() {
                    if names[..i].contains(a) {
                        return Err(Error::DuplicateName(a.clone()));
                    }
                }
                names
            }
            None => (0..order).map(|i| i.to_string()).collect(),
        };
        Ok(Groupoid { order, table, names, name: None })
    }

    /// Builds from nested rows, as in a printed multiplication table.
    pub fn from_rows(rows: &[Vec<usize>], names: Option<Vec<String>>) -> Result<Self> {
        let n = rows.len();
        if let Some(r) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::TableShape { expected: n * n, found: n * (n - 1) + r.len() });
        }
        Self::new(n, rows.concat(), names)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn element_name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    pub fn carrier(&self) -> ElementSet {
        ElementSet::full(self.order)
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    /// Renders a set with element names, e.g. `{a, b}`.
    pub fn show_set(&self, set: ElementSet) -> String {
        let items: Vec<&str> = set.iter().map(|i| self.element_name(i)).collect();
        format!("{{{}}}", items.join(", "))
    }
}

/// The identities checked by [`check_law`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Law {
    /// (ab)c = (cb)a
    LeftInvertive,
    /// (ab)(cd) = (ac)(bd)
    Medial,
    /// (ab)(cd) = (db)(ca)
    Paramedial,
    /// a(bc) = b(ac)
    LeftIdentityLaw4,
    Commutative,
    Associative,
}

impl Law {
    pub const ALL: [Law; 6] = [
        Law::LeftInvertive,
        Law::Medial,
        Law::Paramedial,
        Law::LeftIdentityLaw4,
        Law::Commutative,
        Law::Associative,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Law::LeftInvertive => "left-invertive",
            Law::Medial => "medial",
            Law::Paramedial => "paramedial",
            Law::LeftIdentityLaw4 => "left-identity-law4",
            Law::Commutative => "commutative",
            Law::Associative => "associative",
        }
    }

    pub fn arity(self) -> usize {
        match self {
            Law::Commutative => 2,
            Law::LeftInvertive | Law::LeftIdentityLaw4 | Law::Associative => 3,
            Law::Medial | Law::Paramedial => 4,
        }
    }

    /// Evaluates both sides of the identity at `args` (length = arity).
    pub fn sides(self, g: &Groupoid, args: &[usize]) -> (usize, usize) {
        let m = |a, b| g.mul(a, b);
        match (self, args) {
            (Law::LeftInvertive, &[a, b, c]) => (m(m(a, b), c), m(m(c, b), a)),
            (Law::Medial, &[a, b, c, d]) => (m(m(a, b), m(c, d)), m(m(a, c), m(b, d))),
            (Law::Paramedial, &[a, b, c, d]) => (m(m(a, b), m(c, d)), m(m(d, b), m(c, a))),
            (Law::LeftIdentityLaw4, &[a, b, c]) => (m(a, m(b, c)), m(b, m(a, c))),
            (Law::Commutative, &[a, b]) => (m(a, b), m(b, a)),
            (Law::Associative, &[a, b, c]) => (m(m(a, b), c), m(a, m(b, c))),
            _ => panic!("{} expects {} arguments, got {}", self.as_str(), self.arity(), args.len()),
        }
    }
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Law {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Law::ALL
            .into_iter()
            .find(|l| l.as_str() == s)
            .ok_or_else(|| Error::UnknownName { what: "law", name: s.to_string() })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LawReport {
    pub law: Law,
    pub holds: bool,
    pub witness: Option<Vec<usize>>,
}

impl LawReport {
    /// True when the stored witness really violates the law.
    pub fn witness_violates(&self, g: &Groupoid) -> bool {
        match &self.witness {
            Some(w) => {
                let (l, r) = self.law.sides(g, w);
                l != r
            }
            None => false,
        }
    }
}

/// Exhaustive check; the witness is the lexicographically first violation.
pub fn check_law(g: &Groupoid, law: Law) -> LawReport {
    let n = g.order();
    let arity = law.arity();
    let mut args = vec![0usize; arity];
    loop {
        let (l, r) = law.sides(g, &args);
        if l != r {
            return LawReport { law, holds: false, witness: Some(args) };
        }
        // odometer, last position fastest
        let mut pos = arity;
        loop {
            if pos == 0 {
                return LawReport { law, holds: true, witness: None };
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

pub fn is_ag_groupoid(g: &Groupoid) -> bool {
    check_law(g, Law::LeftInvertive).holds
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentitySearch {
    /// Smallest index whose row is the identity row.
    pub identity: Option<usize>,
    /// Every such index; more than one only happens outside AG-groupoids.
    pub candidates: Vec<usize>,
}

impl IdentitySearch {
    pub fn is_unique(&self) -> bool {
        self.candidates.len() <= 1
    }
}

pub fn find_left_identity(g: &Groupoid) -> IdentitySearch {
    let candidates: Vec<usize> = g
        .elements()
        .filter(|&e| g.elements().all(|x| g.mul(e, x) == x))
        .collect();
    IdentitySearch { identity: candidates.first().copied(), candidates }
}

pub fn find_right_identity(g: &Groupoid) -> Option<usize> {
    g.elements().find(|&e| g.elements().all(|x| g.mul(x, e) == x))
}

/// The complex product `AB = {ab : a ∈ A, b ∈ B}`.
pub fn subset_product(g: &Groupoid, a: ElementSet, b: ElementSet) -> ElementSet {
    let mut out = ElementSet::empty();
    for x in a.iter() {
        for y in b.iter() {
            out.insert(g.mul(x, y));
        }
    }
    out
}

/// The crisp ideal notions. Shared with the fuzzy predicates, which use the
/// same names.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum IdealKind {
    Subgroupoid,
    LeftIdeal,
    RightIdeal,
    TwoSidedIdeal,
    BiIdeal,
    GeneralizedBiIdeal,
    QuasiIdeal,
    InteriorIdeal,
}

impl IdealKind {
    pub const ALL: [IdealKind; 8] = [
        IdealKind::Subgroupoid,
        IdealKind::LeftIdeal,
        IdealKind::RightIdeal,
        IdealKind::TwoSidedIdeal,
        IdealKind::BiIdeal,
        IdealKind::GeneralizedBiIdeal,
        IdealKind::QuasiIdeal,
        IdealKind::InteriorIdeal,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            IdealKind::Subgroupoid => "subgroupoid",
            IdealKind::LeftIdeal => "left-ideal",
            IdealKind::RightIdeal => "right-ideal",
            IdealKind::TwoSidedIdeal => "two-sided-ideal",
            IdealKind::BiIdeal => "bi-ideal",
            IdealKind::GeneralizedBiIdeal => "generalized-bi-ideal",
            IdealKind::QuasiIdeal => "quasi-ideal",
            IdealKind::InteriorIdeal => "interior-ideal",
        }
    }
}

impl fmt::Display for IdealKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for IdealKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        IdealKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .or(match s {
                "sub" | "ag-subgroupoid" => Some(IdealKind::Subgroupoid),
                "left" => Some(IdealKind::LeftIdeal),
                "right" => Some(IdealKind::RightIdeal),
                "ideal" | "two-sided" => Some(IdealKind::TwoSidedIdeal),
                "bi" => Some(IdealKind::BiIdeal),
                "genbi" | "generalized-bi" => Some(IdealKind::GeneralizedBiIdeal),
                "quasi" => Some(IdealKind::QuasiIdeal),
                "interior" => Some(IdealKind::InteriorIdeal),
                _ => None,
            })
            .ok_or_else(|| Error::UnknownName { what: "ideal kind", name: s.to_string() })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrispIdealProfile {
    pub subset: ElementSet,
    pub nonempty: bool,
    pub subgroupoid: bool,
    pub left_ideal: bool,
    pub right_ideal: bool,
    pub two_sided_ideal: bool,
    pub bi_ideal: bool,
    pub generalized_bi_ideal: bool,
    pub interior_ideal: bool,
    pub quasi_ideal: bool,
}

impl CrispIdealProfile {
    pub fn flag(&self, kind: IdealKind) -> bool {
        match kind {
            IdealKind::Subgroupoid => self.subgroupoid,
            IdealKind::LeftIdeal => self.left_ideal,
            IdealKind::RightIdeal => self.right_ideal,
            IdealKind::TwoSidedIdeal => self.two_sided_ideal,
            IdealKind::BiIdeal => self.bi_ideal,
            IdealKind::GeneralizedBiIdeal => self.generalized_bi_ideal,
            IdealKind::QuasiIdeal => self.quasi_ideal,
            IdealKind::InteriorIdeal => self.interior_ideal,
        }
    }
}

/// Every flag requires a nonempty subset. Quasi-ideal means `SA ∩ AS ⊆ A`.
pub fn crisp_profile(g: &Groupoid, a: ElementSet) -> CrispIdealProfile {
    let s = g.carrier();
    let nonempty = !a.is_empty();
    let prod = |x, y| subset_product(g, x, y);
    let sa = prod(s, a);
    let as_ = prod(a, s);
    let subgroupoid = nonempty && prod(a, a).is_subset(a);
    let left_ideal = nonempty && sa.is_subset(a);
    let right_ideal = nonempty && as_.is_subset(a);
    let generalized_bi_ideal = nonempty && prod(as_, a).is_subset(a);
    CrispIdealProfile {
        subset: a,
        nonempty,
        subgroupoid,
        left_ideal,
        right_ideal,
        two_sided_ideal: left_ideal && right_ideal,
        bi_ideal: subgroupoid && generalized_bi_ideal,
        generalized_bi_ideal,
        interior_ideal: subgroupoid && prod(sa, s).is_subset(a),
        quasi_ideal: nonempty && sa.intersection(as_).is_subset(a),
    }
}

pub fn is_crisp(g: &Groupoid, a: ElementSet, kind: IdealKind) -> bool {
    crisp_profile(g, a).flag(kind)
}

/// All nonempty subsets of the given kind, ordered by size then lexicographically.
pub fn enumerate_crisp(g: &Groupoid, kind: IdealKind) -> Result<Vec<ElementSet>> {
    enumerate_crisp_with_limit(g, kind, DEFAULT_CRISP_LIMIT)
}

pub fn enumerate_crisp_with_limit(g: &Groupoid, kind: IdealKind, limit: usize) -> Result<Vec<ElementSet>> {
    if g.order() > limit {
        return Err(Error::OrderTooLarge { order: g.order(), limit });
    }
    Ok(ElementSet::nonempty_subsets(g.order())
        .into_iter()
        .filter(|&a| is_crisp(g, a, kind))
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegularityProfile {
    pub regular: bool,
    /// `x` with `a = (ax)a`, per element.
    pub regular_witnesses: Vec<Option<usize>>,
    pub intra_regular: bool,
    /// `(x, y)` with `a = (x a²) y`, per element.
    pub intra_regular_witnesses: Vec<Option<(usize, usize)>>,
    pub weakly_regular: bool,
    /// `(x, y)` with `a = (ax)(ay)`, per element.
    pub weakly_regular_witnesses: Vec<Option<(usize, usize)>>,
    pub left_identity: Option<usize>,
}

impl RegularityProfile {
    /// Re-evaluates every stored witness against the table.
    pub fn witnesses_verify(&self, g: &Groupoid) -> bool {
        g.elements().all(|a| {
            self.regular_witnesses[a].is_none_or(|x| is_regular_witness(g, a, x))
                && self.intra_regular_witnesses[a].is_none_or(|(x, y)| is_intra_regular_witness(g, a, x, y))
                && self.weakly_regular_witnesses[a].is_none_or(|(x, y)| is_weakly_regular_witness(g, a, x, y))
        })
    }
}

pub fn is_regular_witness(g: &Groupoid, a: usize, x: usize) -> bool {
    g.mul(g.mul(a, x), a) == a
}

pub fn is_intra_regular_witness(g: &Groupoid, a: usize, x: usize, y: usize) -> bool {
    g.mul(g.mul(x, g.mul(a, a)), y) == a
}

pub fn is_weakly_regular_witness(g: &Groupoid, a: usize, x: usize, y: usize) -> bool {
    g.mul(g.mul(a, x), g.mul(a, y)) == a
}

/// Every `(x, y)` with `a = (ax)(ay)`, lexicographically.
pub fn weakly_regular_witnesses(g: &Groupoid, a: usize) -> Vec<(usize, usize)> {
    let n = g.order();
    (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .filter(|&(x, y)| is_weakly_regular_witness(g, a, x, y))
        .collect()
}

fn first_pair(n: usize, pred: impl Fn(usize, usize) -> bool) -> Option<(usize, usize)> {
    (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).find(|&(x, y)| pred(x, y))
}

pub fn regularity_profile(g: &Groupoid) -> RegularityProfile {
    let n = g.order();
    let regular_witnesses: Vec<_> =
        g.elements().map(|a| g.elements().find(|&x| is_regular_witness(g, a, x))).collect();
    let intra_regular_witnesses: Vec<_> = g
        .elements()
        .map(|a| first_pair(n, |x, y| is_intra_regular_witness(g, a, x, y)))
        .collect();
    let weakly_regular_witnesses: Vec<_> = g
        .elements()
        .map(|a| first_pair(n, |x, y| is_weakly_regular_witness(g, a, x, y)))
        .collect();
    RegularityProfile {
        regular: regular_witnesses.iter().all(Option::is_some),
        intra_regular: intra_regular_witnesses.iter().all(Option::is_some),
        weakly_regular: weakly_regular_witnesses.iter().all(Option::is_some),
        regular_witnesses,
        intra_regular_witnesses,
        weakly_regular_witnesses,
        left_identity: find_left_identity(g).identity,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn set(g: &Groupoid, names: &[&str]) -> ElementSet {
        names.iter().map(|n| g.index_of(n).unwrap()).collect()
    }

    fn left_zero() -> Groupoid {
        Groupoid::from_rows(&[vec![0, 0], vec![1, 1]], None).unwrap()
    }

    fn z2() -> Groupoid {
        Groupoid::from_rows(&[vec![0, 1], vec![1, 0]], None).unwrap()
    }

    #[test]
    fn build_rejects_bad_input() {
        let err = Groupoid::from_rows(&[vec![0, 5], vec![1, 0]], None).unwrap_err();
        assert_eq!(err.to_string(), "out-of-range entry at (0,1)");
        let err = Groupoid::new(2, vec![0, 1, 1, 0], Some(vec!["a".into(), "a".into()])).unwrap_err();
        assert!(matches!(err, Error::DuplicateName(_)));
        assert!(Groupoid::new(0, vec![], None).is_err());
        let g = Groupoid::new(1, vec![0], None).unwrap();
        assert_eq!(g.order(), 1);
    }

    #[test]
    fn law_witnesses() {
        let lz = left_zero();
        let r = check_law(&lz, Law::LeftInvertive);
        assert!(!r.holds);
        assert_eq!(r.witness, Some(vec![0, 0, 1]));
        assert!(r.witness_violates(&lz));
        assert!(check_law(&z2(), Law::LeftInvertive).holds);
        let s5 = fixtures::s5();
        assert!(check_law(&s5, Law::Medial).holds);
        let s6 = fixtures::s6();
        assert!(check_law(&s6, Law::LeftInvertive).holds);
    }

    #[test]
    fn identities() {
        assert_eq!(find_left_identity(&fixtures::s5()).identity, Some(3));
        let s6 = fixtures::s6();
        let e = find_left_identity(&s6).identity.unwrap();
        assert_eq!(s6.element_name(e), "6");
        assert_eq!(find_left_identity(&left_zero()).identity, None);
        // right-zero magma: every row is the identity row
        let rz = Groupoid::from_rows(&[vec![0, 1], vec![0, 1]], None).unwrap();
        let search = find_left_identity(&rz);
        assert_eq!(search.identity, Some(0));
        assert!(!search.is_unique());
    }

    #[test]
    fn products() {
        let s5 = fixtures::s5();
        assert_eq!(subset_product(&s5, set(&s5, &["a"]), set(&s5, &["a", "b"])), set(&s5, &["a"]));
        assert!(subset_product(&s5, ElementSet::empty(), s5.carrier()).is_empty());
        let s6 = fixtures::s6();
        assert_eq!(subset_product(&s6, set(&s6, &["1"]), set(&s6, &["2"])), set(&s6, &["1"]));
    }

    #[test]
    fn crisp_examples() {
        let s5 = fixtures::s5();
        assert!(crisp_profile(&s5, set(&s5, &["a"])).bi_ideal);
        assert!(crisp_profile(&s5, set(&s5, &["a", "b"])).bi_ideal);
        assert!(!crisp_profile(&s5, set(&s5, &["c"])).subgroupoid);
        let all = crisp_profile(&s5, s5.carrier());
        assert!(IdealKind::ALL.iter().all(|&k| all.flag(k)));
        let empty = crisp_profile(&s5, ElementSet::empty());
        assert!(IdealKind::ALL.iter().all(|&k| !empty.flag(k)));
    }

    #[test]
    fn crisp_enumeration() {
        let s5 = fixtures::s5();
        let bis = enumerate_crisp(&s5, IdealKind::BiIdeal).unwrap();
        assert!(bis.contains(&set(&s5, &["a"])));
        assert!(bis.contains(&set(&s5, &["a", "b"])));
        assert!(bis.contains(&s5.carrier()));
        let trivial = Groupoid::new(1, vec![0], None).unwrap();
        for kind in IdealKind::ALL {
            assert_eq!(enumerate_crisp(&trivial, kind).unwrap(), vec![ElementSet::full(1)]);
        }
        let big = Groupoid::new(13, vec![0; 169], None).unwrap();
        assert!(enumerate_crisp(&big, IdealKind::BiIdeal).is_err());
    }

    #[test]
    fn regularity() {
        let s6 = fixtures::s6();
        let p = regularity_profile(&s6);
        assert!(p.weakly_regular && p.regular && p.intra_regular);
        assert!(p.witnesses_verify(&s6));
        let one = s6.index_of("1").unwrap();
        let (two, three) = (s6.index_of("2").unwrap(), s6.index_of("3").unwrap());
        assert!(weakly_regular_witnesses(&s6, one).contains(&(two, three)));
        let p5 = regularity_profile(&fixtures::s5());
        assert!(p5.weakly_regular);
        let trivial = Groupoid::new(1, vec![0], None).unwrap();
        let pt = regularity_profile(&trivial);
        assert!(pt.regular && pt.intra_regular && pt.weakly_regular);
    }
}
