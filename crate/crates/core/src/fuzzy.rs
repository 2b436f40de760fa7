//! Fuzzy subsets of a finite groupoid with exact rational grades.
//!
//! Every operator here is order-theoretic (min, max, sup of mins, and the
//! cap at `θ = (1-k)/2`), so grades never leave the rationals and ties at the
//! threshold are decided exactly.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::Groupoid;
use crate::error::{Error, Result};
use crate::set::ElementSet;

/// A membership value `p/q` in `[0, 1]`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct Grade(Ratio<i64>);

impl Grade {
    pub const ZERO: Grade = Grade(Ratio::new_raw(0, 1));
    pub const ONE: Grade = Grade(Ratio::new_raw(1, 1));
    pub const HALF: Grade = Grade(Ratio::new_raw(1, 2));

    pub fn new(numer: i64, denom: i64) -> Result<Self> {
        if denom == 0 {
            return Err(Error::BadGrade(format!("{numer}/{denom}")));
        }
        Self::from_ratio(Ratio::new(numer, denom))
    }

    pub fn from_ratio(r: Ratio<i64>) -> Result<Self> {
        if r < Ratio::zero() || r > Ratio::one() {
            return Err(Error::GradeOutOfRange(render(r)));
        }
        Ok(Grade(r))
    }

    pub fn ratio(self) -> Ratio<i64> {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0.is_zero()
    }

    /// `1 - self`.
    pub fn complement(self) -> Grade {
        Grade(Ratio::one() - self.0)
    }

    pub fn to_f64(self) -> f64 {
        *self.0.numer() as f64 / *self.0.denom() as f64
    }
}

fn render(r: Ratio<i64>) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p/q`, an integer, or a finite decimal. Decimals are read as exact
/// decimal fractions, so `0.3` is exactly `3/10`.
pub fn parse_ratio(s: &str) -> Result<Ratio<i64>> {
    let s = s.trim();
    let bad = || Error::BadGrade(s.to_string());
    if let Some((p, q)) = s.split_once('/') {
        let p: i64 = p.trim().parse().map_err(|_| bad())?;
        let q: i64 = q.trim().parse().map_err(|_| bad())?;
        if q == 0 {
            return Err(bad());
        }
        return Ok(Ratio::new(p, q));
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let mut numer: i64 = 0;
    for c in int_part.chars().chain(frac_part.chars()) {
        numer = numer
            .checked_mul(10)
            .and_then(|v| v.checked_add(c as i64 - '0' as i64))
            .ok_or_else(bad)?;
    }
    let denom = 10i64.checked_pow(frac_part.len() as u32).ok_or_else(bad)?;
    let r = Ratio::new(numer, denom);
    Ok(if neg { -r } else { r })
}

impl FromStr for Grade {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Grade::from_ratio(parse_ratio(s)?)
    }
}

impl fmt::Display for Grade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(self.0))
    }
}

impl fmt::Debug for Grade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl From<Grade> for String {
    fn from(g: Grade) -> String {
        g.to_string()
    }
}

impl TryFrom<String> for Grade {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

/// The parameter `k ∈ [0, 1)` of the `q_k` relation, with its threshold
/// `θ = (1-k)/2 ∈ (0, 1/2]`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct KParam {
    k: Ratio<i64>,
    theta: Grade,
}

impl KParam {
    pub fn new(k: Ratio<i64>) -> Result<Self> {
        if k < Ratio::zero() || k >= Ratio::one() {
            return Err(Error::BadK(render(k)));
        }
        let theta = Grade((Ratio::one() - k) / 2);
        Ok(KParam { k, theta })
    }

    pub fn zero() -> Self {
        KParam::new(Ratio::zero()).unwrap()
    }

    pub fn from_frac(p: i64, q: i64) -> Result<Self> {
        if q == 0 {
            return Err(Error::BadK(format!("{p}/{q}")));
        }
        KParam::new(Ratio::new(p, q))
    }

    pub fn k(self) -> Ratio<i64> {
        self.k
    }

    pub fn theta(self) -> Grade {
        self.theta
    }
}

impl FromStr for KParam {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        KParam::new(parse_ratio(s)?)
    }
}

impl fmt::Display for KParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(self.k))
    }
}

impl fmt::Debug for KParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "k={} (θ={})", render(self.k), self.theta)
    }
}

impl From<KParam> for String {
    fn from(k: KParam) -> String {
        k.to_string()
    }
}

impl TryFrom<String> for KParam {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

/// A map `S → [0, 1]`, indexed by element.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FuzzySubset {
    grades: Vec<Grade>,
}

impl FuzzySubset {
    pub fn from_grades(grades: impl IntoIterator<Item = Grade>) -> Self {
        FuzzySubset { grades: grades.into_iter().collect() }
    }

    /// Checks that the length matches the carrier.
    pub fn on(g: &Groupoid, grades: Vec<Grade>) -> Result<Self> {
        if grades.len() != g.order() {
            return Err(Error::MismatchedCarrier(grades.len(), g.order()));
        }
        Ok(FuzzySubset { grades })
    }

    pub fn constant(g: &Groupoid, c: Grade) -> Self {
        FuzzySubset { grades: vec![c; g.order()] }
    }

    pub fn zero(g: &Groupoid) -> Self {
        Self::constant(g, Grade::ZERO)
    }

    pub fn one(g: &Groupoid) -> Self {
        Self::constant(g, Grade::ONE)
    }

    /// The characteristic function `C_A`.
    pub fn characteristic(g: &Groupoid, a: ElementSet) -> Self {
        FuzzySubset {
            grades: g.elements().map(|x| if a.contains(x) { Grade::ONE } else { Grade::ZERO }).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.grades.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grades.is_empty()
    }

    pub fn grades(&self) -> &[Grade] {
        &self.grades
    }

    #[inline]
    pub fn at(&self, x: usize) -> Grade {
        self.grades[x]
    }

    /// Pointwise `≤`, i.e. `self ⊆ other`.
    pub fn is_subset(&self, other: &FuzzySubset) -> bool {
        self.grades.len() == other.grades.len() && self.grades.iter().zip(&other.grades).all(|(a, b)| a <= b)
    }

    pub fn is_zero(&self) -> bool {
        self.grades.iter().all(|g| g.is_zero())
    }

    /// Distinct grades in increasing order.
    pub fn distinct_grades(&self) -> Vec<Grade> {
        let mut v = self.grades.clone();
        v.sort();
        v.dedup();
        v
    }

    /// The level subset `{x : f(x) ≥ t}` for `t ∈ (0, 1]`.
    pub fn level_set(&self, t: Grade) -> Result<ElementSet> {
        if t.is_zero() {
            return Err(Error::NonPositiveLevel(t.to_string()));
        }
        Ok(self.grades.iter().enumerate().filter(|(_, &g)| g >= t).map(|(i, _)| i).collect())
    }

    /// `{x : f(x) > 0}`.
    pub fn support(&self) -> ElementSet {
        self.grades.iter().enumerate().filter(|(_, g)| !g.is_zero()).map(|(i, _)| i).collect()
    }

    /// The level sets as a step function of `t ∈ (0, 1]`: consecutive
    /// half-open intervals `(lo, hi]` covering `(0, 1]`, each with the
    /// level set shared by all of its points.
    pub fn level_pieces(&self) -> Vec<LevelPiece> {
        let mut cuts: Vec<Grade> = self.distinct_grades().into_iter().filter(|g| !g.is_zero()).collect();
        if cuts.last() != Some(&Grade::ONE) {
            cuts.push(Grade::ONE);
        }
        let mut lo = Grade::ZERO;
        cuts.into_iter()
            .map(|hi| {
                let piece = LevelPiece { lo, hi, set: self.level_set(hi).expect("hi > 0") };
                lo = hi;
                piece
            })
            .collect()
    }

    pub fn show(&self) -> String {
        let parts: Vec<String> = self.grades.iter().map(|g| g.to_string()).collect();
        format!("({})", parts.join(", "))
    }
}

impl fmt::Debug for FuzzySubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.show())
    }
}

/// `f_t = set` for every `t` in `(lo, hi]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LevelPiece {
    pub lo: Grade,
    pub hi: Grade,
    pub set: ElementSet,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PointwiseOp {
    Meet,
    Join,
}

fn same_len(f: &FuzzySubset, g: &FuzzySubset) -> Result<()> {
    if f.len() != g.len() {
        return Err(Error::MismatchedCarrier(f.len(), g.len()));
    }
    Ok(())
}

pub fn pointwise(f: &FuzzySubset, g: &FuzzySubset, op: PointwiseOp) -> Result<FuzzySubset> {
    same_len(f, g)?;
    let pick = match op {
        PointwiseOp::Meet => std::cmp::min::<Grade>,
        PointwiseOp::Join => std::cmp::max::<Grade>,
    };
    Ok(FuzzySubset { grades: f.grades.iter().zip(&g.grades).map(|(&a, &b)| pick(a, b)).collect() })
}

pub fn meet(f: &FuzzySubset, g: &FuzzySubset) -> Result<FuzzySubset> {
    pointwise(f, g, PointwiseOp::Meet)
}

pub fn join(f: &FuzzySubset, g: &FuzzySubset) -> Result<FuzzySubset> {
    pointwise(f, g, PointwiseOp::Join)
}

/// Sup-min convolution: `(f∘g)(a) = max_{bc = a} min(f(b), g(c))`, and 0
/// where `a` has no factorization.
pub fn conv_product(s: &Groupoid, f: &FuzzySubset, g: &FuzzySubset) -> Result<FuzzySubset> {
    same_len(f, g)?;
    if f.len() != s.order() {
        return Err(Error::MismatchedCarrier(f.len(), s.order()));
    }
    let mut out = vec![Grade::ZERO; s.order()];
    for b in s.elements() {
        let fb = f.grades[b];
        if fb.is_zero() {
            continue;
        }
        for c in s.elements() {
            let v = fb.min(g.grades[c]);
            let a = s.mul(b, c);
            if v > out[a] {
                out[a] = v;
            }
        }
    }
    Ok(FuzzySubset { grades: out })
}

/// `f_k(x) = min(f(x), θ)`.
pub fn truncate_k(f: &FuzzySubset, k: KParam) -> FuzzySubset {
    let theta = k.theta();
    FuzzySubset { grades: f.grades.iter().map(|&g| g.min(theta)).collect() }
}

pub fn meet_k(f: &FuzzySubset, g: &FuzzySubset, k: KParam) -> Result<FuzzySubset> {
    Ok(truncate_k(&meet(f, g)?, k))
}

pub fn join_k(f: &FuzzySubset, g: &FuzzySubset, k: KParam) -> Result<FuzzySubset> {
    Ok(truncate_k(&join(f, g)?, k))
}

pub fn product_k(s: &Groupoid, f: &FuzzySubset, g: &FuzzySubset, k: KParam) -> Result<FuzzySubset> {
    Ok(truncate_k(&conv_product(s, f, g)?, k))
}

/// A fuzzy point `x_t` with `t ∈ (0, 1]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FuzzyPoint {
    pub element: usize,
    pub t: Grade,
}

impl FuzzyPoint {
    pub fn new(element: usize, t: Grade) -> Result<Self> {
        if t.is_zero() {
            return Err(Error::NonPositiveLevel(t.to_string()));
        }
        Ok(FuzzyPoint { element, t })
    }
}

/// Relations between a fuzzy point and a fuzzy subset.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Relation {
    /// `f(x) ≥ t`
    In,
    /// `f(x) + t > 1`
    Q,
    /// `f(x) + t + k > 1`
    Qk(KParam),
    InOrQ,
    InOrQk(KParam),
    InAndQ,
    InAndQk(KParam),
}

impl Relation {
    /// Decides the relation for a point of height `t` against grade `fx`.
    pub fn holds(self, fx: Grade, t: Grade) -> bool {
        let belongs = || fx >= t;
        let quasi = |k: Ratio<i64>| fx.0 + t.0 + k > Ratio::one();
        match self {
            Relation::In => belongs(),
            Relation::Q => quasi(Ratio::zero()),
            Relation::Qk(k) => quasi(k.k()),
            Relation::InOrQ => belongs() || quasi(Ratio::zero()),
            Relation::InOrQk(k) => belongs() || quasi(k.k()),
            Relation::InAndQ => belongs() && quasi(Ratio::zero()),
            Relation::InAndQk(k) => belongs() && quasi(k.k()),
        }
    }

    pub fn k(self) -> Option<KParam> {
        match self {
            Relation::Qk(k) | Relation::InOrQk(k) | Relation::InAndQk(k) => Some(k),
            _ => None,
        }
    }

    pub fn label(self) -> String {
        match self {
            Relation::In => "∈".into(),
            Relation::Q => "q".into(),
            Relation::Qk(k) => format!("q_{k}"),
            Relation::InOrQ => "∈∨q".into(),
            Relation::InOrQk(k) => format!("∈∨q_{k}"),
            Relation::InAndQ => "∈∧q".into(),
            Relation::InAndQk(k) => format!("∈∧q_{k}"),
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// `x_t rel f`, or its negation when `negated` is set.
pub fn point_relation(f: &FuzzySubset, p: FuzzyPoint, rel: Relation, negated: bool) -> bool {
    rel.holds(f.at(p.element), p.t) != negated
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use proptest::prelude::*;

    fn gr(s: &str) -> Grade {
        s.parse().unwrap()
    }

    fn subset(v: &[&str]) -> FuzzySubset {
        FuzzySubset::from_grades(v.iter().map(|s| gr(s)))
    }

    #[test]
    fn parse_and_render() {
        assert_eq!(gr("0.8"), Grade::new(4, 5).unwrap());
        assert_eq!(gr("3/10").to_string(), "3/10");
        assert_eq!(gr("1").to_string(), "1");
        assert_eq!(gr(".5"), Grade::HALF);
        assert!(matches!("3/2".parse::<Grade>(), Err(Error::GradeOutOfRange(_))));
        assert!("-0.1".parse::<Grade>().is_err());
        assert!("abc".parse::<Grade>().is_err());
        assert!("1/0".parse::<Grade>().is_err());
        assert!("1".parse::<KParam>().is_err());
        assert_eq!("1/5".parse::<KParam>().unwrap().theta(), gr("2/5"));
        assert_eq!(KParam::zero().theta(), Grade::HALF);
    }

    #[test]
    fn pointwise_examples() {
        let s5 = fixtures::s5();
        let f = fixtures::s5_f();
        assert_eq!(meet(&f, &f).unwrap(), f);
        assert_eq!(meet(&f, &FuzzySubset::one(&s5)).unwrap(), f);
        assert_eq!(join(&f, &FuzzySubset::zero(&s5)).unwrap(), f);
        let cab = FuzzySubset::characteristic(&s5, [0, 1].into_iter().collect());
        assert_eq!(meet(&f, &cab).unwrap(), subset(&["0.8", "0.7", "0", "0", "0"]));
        assert!(meet(&f, &subset(&["1"])).is_err());
    }

    #[test]
    fn product_examples() {
        let s5 = fixtures::s5();
        let ca = FuzzySubset::characteristic(&s5, ElementSet::singleton(0));
        let cab = FuzzySubset::characteristic(&s5, [0, 1].into_iter().collect());
        assert_eq!(conv_product(&s5, &ca, &cab).unwrap(), ca);
        let f = fixtures::s5_f();
        let zero = FuzzySubset::zero(&s5);
        assert_eq!(conv_product(&s5, &f, &zero).unwrap(), zero);
        let s6 = fixtures::s6();
        let c1 = FuzzySubset::characteristic(&s6, ElementSet::singleton(0));
        let c2 = FuzzySubset::characteristic(&s6, ElementSet::singleton(1));
        assert_eq!(conv_product(&s6, &c1, &c2).unwrap(), c1);
    }

    #[test]
    fn truncation_examples() {
        let s5 = fixtures::s5();
        let k0 = KParam::zero();
        assert_eq!(truncate_k(&FuzzySubset::one(&s5), k0), FuzzySubset::constant(&s5, Grade::HALF));
        assert_eq!(truncate_k(&fixtures::s5_f(), k0), subset(&["1/2", "1/2", "3/10", "3/10", "3/10"]));
        let low = subset(&["0.1", "0.5", "0"]);
        assert_eq!(truncate_k(&low, k0), low);
        let f = fixtures::s5_f();
        assert_eq!(meet_k(&f, &f, k0).unwrap(), truncate_k(&f, k0));
    }

    #[test]
    fn level_sets() {
        let f = fixtures::s5_f();
        assert_eq!(f.level_set(Grade::HALF).unwrap(), [0, 1].into_iter().collect());
        assert_eq!(f.level_set(gr("0.75")).unwrap(), ElementSet::singleton(0));
        assert!(f.level_set(Grade::ZERO).is_err());
        assert!(FuzzySubset::zero(&fixtures::s5()).support().is_empty());
        let s5 = fixtures::s5();
        let cab = FuzzySubset::characteristic(&s5, [0, 1].into_iter().collect());
        for t in ["0.01", "1/2", "1"] {
            assert_eq!(cab.level_set(gr(t)).unwrap(), [0, 1].into_iter().collect());
        }
        assert_eq!(FuzzySubset::characteristic(&s5, ElementSet::empty()), FuzzySubset::zero(&s5));
        assert_eq!(FuzzySubset::characteristic(&s5, s5.carrier()), FuzzySubset::one(&s5));
    }

    #[test]
    fn level_pieces() {
        let s5 = fixtures::s5();
        let pieces = fixtures::s5_f().level_pieces();
        let shown: Vec<(String, String, String)> =
            pieces.iter().map(|p| (p.lo.to_string(), p.hi.to_string(), s5.show_set(p.set))).collect();
        let expected = [("0", "3/10", "{a, b, c, d, e}"), ("3/10", "7/10", "{a, b}"), ("7/10", "4/5", "{a}"), ("4/5", "1", "{}")];
        let expected: Vec<(String, String, String)> =
            expected.iter().map(|(a, b, c)| (a.to_string(), b.to_string(), c.to_string())).collect();
        assert_eq!(shown, expected);
        let one = FuzzySubset::one(&s5).level_pieces();
        assert_eq!(one.len(), 1);
        assert_eq!(one[0].set, s5.carrier());
        let zero = FuzzySubset::zero(&s5).level_pieces();
        assert_eq!(zero.len(), 1);
        assert!(zero[0].set.is_empty());
    }

    #[test]
    fn point_relations() {
        let f = fixtures::s5_f();
        let p = FuzzyPoint::new(0, gr("0.3")).unwrap();
        assert!(point_relation(&f, p, Relation::In, false));
        assert!(point_relation(&f, p, Relation::Q, false));
        assert!(!point_relation(&f, p, Relation::Q, true));
        // boundary f(x) = t
        for t in ["0.3", "1/2", "0.7"] {
            let h = FuzzySubset::from_grades([gr(t)]);
            let p = FuzzyPoint::new(0, gr(t)).unwrap();
            assert!(point_relation(&h, p, Relation::In, false));
            assert_eq!(point_relation(&h, p, Relation::Q, false), gr(t) > Grade::HALF);
        }
        let h = FuzzySubset::from_grades([gr("0.3")]);
        let k = KParam::from_frac(1, 5).unwrap();
        let p = FuzzyPoint::new(0, gr("0.7")).unwrap();
        assert!(point_relation(&h, p, Relation::Qk(k), false));
        assert!(!point_relation(&h, p, Relation::Q, false));
        assert!(FuzzyPoint::new(0, Grade::ZERO).is_err());
    }

    fn grade_strategy() -> impl Strategy<Value = Grade> {
        (0i64..=12).prop_map(|p| Grade::new(p, 12).unwrap())
    }

    fn subset_strategy(n: usize) -> impl Strategy<Value = FuzzySubset> {
        proptest::collection::vec(grade_strategy(), n).prop_map(FuzzySubset::from_grades)
    }

    proptest! {
        #[test]
        fn product_is_monotone(f in subset_strategy(5), g in subset_strategy(5), df in subset_strategy(5), dg in subset_strategy(5)) {
            let s5 = fixtures::s5();
            let h = join(&f, &df).unwrap();
            let m = join(&g, &dg).unwrap();
            let k = KParam::zero();
            prop_assert!(product_k(&s5, &f, &g, k).unwrap().is_subset(&product_k(&s5, &h, &m, k).unwrap()));
        }

        #[test]
        fn product_traversal_independent(f in subset_strategy(6), g in subset_strategy(6)) {
            let s6 = fixtures::s6();
            let fast = conv_product(&s6, &f, &g).unwrap();
            // reverse traversal, no zero-skip
            let mut slow = vec![Grade::ZERO; 6];
            for b in (0..6).rev() {
                for c in (0..6).rev() {
                    let a = s6.mul(b, c);
                    slow[a] = slow[a].max(f.at(b).min(g.at(c)));
                }
            }
            prop_assert_eq!(fast, FuzzySubset::from_grades(slow));
        }

        #[test]
        fn level_sets_antitone(f in subset_strategy(5), a in 1i64..=12, b in 1i64..=12) {
            let (lo, hi) = (a.min(b), a.max(b));
            let lo = Grade::new(lo, 12).unwrap();
            let hi = Grade::new(hi, 12).unwrap();
            prop_assert!(f.level_set(hi).unwrap().is_subset(f.level_set(lo).unwrap()));
            prop_assert!(f.level_set(lo).unwrap().is_subset(f.support()));
        }

        #[test]
        fn decimal_parse_is_exact(p in 0i64..=1000) {
            let s = format!("{}.{:03}", p / 1000, p % 1000);
            prop_assert_eq!(s.parse::<Grade>().unwrap(), Grade::new(p, 1000).unwrap());
        }
    }
}
