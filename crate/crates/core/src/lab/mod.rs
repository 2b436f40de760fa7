//! Executable theorem checks over finite populations of fuzzy subsets.

pub mod expr;
mod registry;
mod verify;

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{Groupoid, IdealKind};
use crate::error::{Error, Result};
use crate::fuzzy::{FuzzySubset, Grade, KParam};
use crate::ideals::check_threshold_k;

pub use registry::{registry, theorem, Check, Property, Source, Theorem, TheoremId};
pub use verify::{
    search_counterexample, verify_theorem, CheckResult, CounterexampleReport, LabConfig, SearchOutcome, SearchTarget, Status,
    TheoremReport, ViolationKind,
};

/// Default cap on `|grid|^n` for exhaustive enumeration.
pub const DEFAULT_BUDGET: u128 = 10_000_000;

/// Sorted, distinct grades containing 0 and 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradeGrid(Vec<Grade>);

impl GradeGrid {
    pub fn new(mut grades: Vec<Grade>) -> Result<Self> {
        grades.sort();
        grades.dedup();
        if grades.first() != Some(&Grade::ZERO) || grades.last() != Some(&Grade::ONE) {
            return Err(Error::BadGrid);
        }
        Ok(GradeGrid(grades))
    }

    /// `{0, 1/2, 1}`.
    pub fn halves() -> Self {
        GradeGrid(vec![Grade::ZERO, Grade::HALF, Grade::ONE])
    }

    pub fn grades(&self) -> &[Grade] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl Default for GradeGrid {
    /// `{0, 1/4, 1/2, 3/4, 1}`.
    fn default() -> Self {
        GradeGrid((0..=4).map(|i| Grade::new(i, 4).expect("quarter")).collect())
    }
}

impl FromStr for GradeGrid {
    type Err = Error;

    /// Comma-separated grades, e.g. `0,1/2,1`.
    fn from_str(s: &str) -> Result<Self> {
        let grades = s.split(',').map(|t| t.trim().parse()).collect::<Result<Vec<Grade>>>()?;
        GradeGrid::new(grades)
    }
}

impl fmt::Display for GradeGrid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|g| g.to_string()).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// How a population of fuzzy subsets is drawn.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    /// Every grid-valued subset.
    Exhaustive,
    /// `count` seeded draws.
    Sample { seed: u64, count: usize },
}

/// All of `grid^n` in lexicographic order, element 0 most significant.
pub struct FuzzyEnumeration {
    grid: Vec<Grade>,
    digits: Vec<usize>,
    done: bool,
}

impl Iterator for FuzzyEnumeration {
    type Item = FuzzySubset;

    fn next(&mut self) -> Option<FuzzySubset> {
        if self.done {
            return None;
        }
        let out = FuzzySubset::from_grades(self.digits.iter().map(|&d| self.grid[d]));
        let mut pos = self.digits.len();
        loop {
            if pos == 0 {
                self.done = true;
                break;
            }
            pos -= 1;
            self.digits[pos] += 1;
            if self.digits[pos] < self.grid.len() {
                break;
            }
            self.digits[pos] = 0;
        }
        Some(out)
    }
}

pub fn enumerate_fuzzy(g: &Groupoid, grid: &GradeGrid, budget: u128) -> Result<FuzzyEnumeration> {
    let needed = (grid.len() as u128).checked_pow(g.order() as u32).unwrap_or(u128::MAX);
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    Ok(FuzzyEnumeration { grid: grid.0.clone(), digits: vec![0; g.order()], done: false })
}

/// Deterministic draws of grid-valued subsets.
pub fn sample_fuzzy(g: &Groupoid, grid: &GradeGrid, seed: u64, count: usize) -> impl Iterator<Item = FuzzySubset> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let grid = grid.0.clone();
    let n = g.order();
    (0..count).map(move |_| FuzzySubset::from_grades((0..n).map(|_| grid[rng.gen_range(0..grid.len())]).collect::<Vec<_>>()))
}

/// Keeps the subsets that are `(∈, ∈∨q_k)`-fuzzy ideals of `kind`.
pub fn hypothesis_filter<'a>(
    g: &'a Groupoid,
    stream: impl Iterator<Item = FuzzySubset> + 'a,
    kind: IdealKind,
    k: KParam,
) -> impl Iterator<Item = FuzzySubset> + 'a {
    stream.filter(move |f| check_threshold_k(g, f, kind, k).map(|v| v.holds).unwrap_or(false))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::enumerate_crisp;
    use crate::fixtures;
    use crate::fuzzy::truncate_k;
    use crate::set::ElementSet;

    fn trivial(n: usize) -> Groupoid {
        Groupoid::new(n, vec![0; n * n], None).unwrap()
    }

    #[test]
    fn enumeration_counts() {
        let grid = GradeGrid::default();
        assert_eq!(enumerate_fuzzy(&trivial(1), &grid, DEFAULT_BUDGET).unwrap().count(), 5);
        assert_eq!(enumerate_fuzzy(&trivial(2), &grid, DEFAULT_BUDGET).unwrap().count(), 25);
        assert_eq!(enumerate_fuzzy(&fixtures::s6(), &GradeGrid::halves(), DEFAULT_BUDGET).unwrap().count(), 729);
        assert!(matches!(
            enumerate_fuzzy(&fixtures::s6(), &grid, 1000),
            Err(Error::BudgetExceeded { needed: 15625, budget: 1000 })
        ));
    }

    #[test]
    fn enumeration_is_lexicographic() {
        let all: Vec<FuzzySubset> = enumerate_fuzzy(&trivial(3), &GradeGrid::halves(), DEFAULT_BUDGET).unwrap().collect();
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert!(all[0].is_zero());
    }

    #[test]
    fn grid_validation() {
        assert_eq!("1, 0, 1/2".parse::<GradeGrid>().unwrap(), GradeGrid::halves());
        assert!(matches!("0,1/2".parse::<GradeGrid>(), Err(Error::BadGrid)));
        assert_eq!(GradeGrid::default().to_string(), "{0, 1/4, 1/2, 3/4, 1}");
    }

    #[test]
    fn sampling_is_reproducible() {
        let s5 = fixtures::s5();
        let grid = GradeGrid::default();
        let a: Vec<_> = sample_fuzzy(&s5, &grid, 7, 3).collect();
        let b: Vec<_> = sample_fuzzy(&s5, &grid, 7, 3).collect();
        assert_eq!(a, b);
        let c: Vec<_> = sample_fuzzy(&s5, &grid, 8, 100).collect();
        let d: Vec<_> = sample_fuzzy(&s5, &grid, 7, 100).collect();
        assert_ne!(c, d);
        assert!(d.iter().all(|f| f.grades().iter().all(|x| grid.grades().contains(x))));
    }

    #[test]
    fn filter_examples() {
        let s5 = fixtures::s5();
        let k = KParam::zero();
        let constants: Vec<_> = GradeGrid::default().grades().iter().map(|&c| FuzzySubset::constant(&s5, c)).collect();
        let kept = hypothesis_filter(&s5, constants.clone().into_iter(), IdealKind::LeftIdeal, k).count();
        assert_eq!(kept, constants.len());
        let chars = enumerate_crisp(&s5, IdealKind::LeftIdeal)
            .unwrap()
            .into_iter()
            .map(|l| truncate_k(&FuzzySubset::characteristic(&s5, l), k))
            .collect::<Vec<_>>();
        assert_eq!(hypothesis_filter(&s5, chars.clone().into_iter(), IdealKind::LeftIdeal, k).count(), chars.len());
        let c = FuzzySubset::characteristic(&s5, ElementSet::singleton(2));
        assert_eq!(hypothesis_filter(&s5, std::iter::once(c), IdealKind::Subgroupoid, k).count(), 0);
    }
}
