//! The two worked examples: a 5-element AG-groupoid with left identity `d`
//! carrying the fuzzy subset (0.8, 0.7, 0.3, 0.3, 0.3), and a 6-element
//! weakly regular AG-groupoid with left identity `6`.

use crate::algebra::Groupoid;
use crate::fuzzy::{FuzzySubset, Grade};

pub fn s5() -> Groupoid {
    // rows a..e
    let rows = [
        [0, 0, 0, 0, 0],
        [0, 1, 1, 1, 1],
        [0, 1, 3, 4, 2],
        [0, 1, 2, 3, 4],
        [0, 1, 4, 2, 3],
    ];
    let rows: Vec<Vec<usize>> = rows.iter().map(|r| r.to_vec()).collect();
    let names = ["a", "b", "c", "d", "e"].iter().map(|s| s.to_string()).collect();
    Groupoid::from_rows(&rows, Some(names)).expect("fixture table is valid").with_name("S5")
}

/// f(a)=0.8, f(b)=0.7, f(c)=f(d)=f(e)=0.3.
pub fn s5_f() -> FuzzySubset {
    FuzzySubset::from_grades(
        [(4, 5), (7, 10), (3, 10), (3, 10), (3, 10)]
            .iter()
            .map(|&(p, q)| Grade::new(p, q).expect("fixture grade")),
    )
}

pub fn s6() -> Groupoid {
    // element i+1 is stored at index i
    let printed = [
        [6, 1, 2, 3, 4, 5],
        [5, 6, 1, 2, 3, 4],
        [4, 5, 6, 1, 2, 3],
        [3, 4, 5, 6, 1, 2],
        [2, 3, 4, 5, 6, 1],
        [1, 2, 3, 4, 5, 6],
    ];
    let rows: Vec<Vec<usize>> = printed.iter().map(|r| r.iter().map(|v| v - 1).collect()).collect();
    let names = (1..=6).map(|i| i.to_string()).collect();
    Groupoid::from_rows(&rows, Some(names)).expect("fixture table is valid").with_name("S6")
}

/// The six weak-regularity equations `(a·x)(a·y) = a` listed for S6, by name.
pub const S6_WEAK_WITNESSES: [(&str, &str, &str); 6] = [
    ("1", "2", "3"),
    ("2", "4", "6"),
    ("3", "6", "3"),
    ("4", "2", "6"),
    ("5", "4", "3"),
    ("6", "6", "6"),
];
