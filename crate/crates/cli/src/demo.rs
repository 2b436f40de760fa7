//! `demo-paper`: both worked examples replayed from the shipped fixture files.

use std::fmt::Write as _;

use agfuzz::algebra::{check_law, find_left_identity, is_crisp, regularity_profile, Law};
use agfuzz::fixtures::S6_WEAK_WITNESSES;
use agfuzz::ideals::{check_classic, cross_validate};
use agfuzz::{ElementSet, Groupoid, IdealKind, KParam};
use serde_json::json;

use crate::{parse_fuzzy_file, parse_groupoid_file, show_grade, show_level_set, Report};

const S5: &str = include_str!("../../../fixtures/s5");
const S6: &str = include_str!("../../../fixtures/s6");
const S5_F: &str = include_str!("../../../fixtures/s5_f");

struct Facts {
    rows: Vec<(String, String, bool)>,
}

impl Facts {
    fn add(&mut self, example: &str, fact: impl Into<String>, ok: bool) {
        self.rows.push((example.to_string(), fact.into(), ok));
    }
}

fn set_of(g: &Groupoid, names: &[&str]) -> ElementSet {
    names.iter().map(|n| g.index_of(n).expect("fixture name")).collect()
}

fn five_element(facts: &mut Facts) {
    const EX: &str = "S5";
    let g = parse_groupoid_file(S5).expect("shipped fixture parses").with_name("s5");
    let id = find_left_identity(&g);
    facts.add(EX, "left identity is d", id.identity == g.index_of("d") && id.is_unique());
    for law in [Law::LeftInvertive, Law::Medial, Law::Paramedial, Law::LeftIdentityLaw4] {
        facts.add(EX, format!("{law} law holds"), check_law(&g, law).holds);
    }
    for names in [&["a"][..], &["a", "b"][..]] {
        let s = set_of(&g, names);
        facts.add(EX, format!("{} is a bi-ideal", g.show_set(s)), is_crisp(&g, s, IdealKind::BiIdeal));
    }

    let f = parse_fuzzy_file(S5_F, &g).expect("shipped fixture parses");
    let expected: [(&str, &str, &[&str]); 4] = [
        ("0", "0.3", &["a", "b", "c", "d", "e"]),
        ("0.3", "0.7", &["a", "b"]),
        ("0.7", "0.8", &["a"]),
        ("0.8", "1", &[]),
    ];
    let pieces = f.level_pieces();
    let listing_ok = pieces.len() == expected.len()
        && pieces.iter().zip(&expected).all(|(p, (lo, hi, names))| {
            show_grade(p.lo) == *lo && show_grade(p.hi) == *hi && p.set == set_of(&g, names)
        });
    let listing: Vec<String> =
        pieces.iter().map(|p| format!("{}/({},{}]", show_level_set(&g, p.set), show_grade(p.lo), show_grade(p.hi))).collect();
    facts.add(EX, format!("level sets of f: {}", listing.join(", ")), listing_ok);
    let all_bi = pieces.iter().filter(|p| !p.set.is_empty()).all(|p| is_crisp(&g, p.set, IdealKind::BiIdeal));
    facts.add(EX, "every nonempty level set of f is a bi-ideal", all_bi);
    let classic = check_classic(&g, &f, IdealKind::BiIdeal).map(|v| v.holds).unwrap_or(false);
    facts.add(EX, "f is a fuzzy bi-ideal", classic);
    let a = cross_validate(&g, &f, IdealKind::BiIdeal, KParam::zero()).expect("order 5 fits");
    facts.add(EX, "f is an (∈,∈∨q)-fuzzy bi-ideal (both forms)", a.agree && a.inequality.holds);
}

fn six_element(facts: &mut Facts) {
    const EX: &str = "S6";
    let g = parse_groupoid_file(S6).expect("shipped fixture parses").with_name("s6");
    facts.add(EX, "left invertive law holds", check_law(&g, Law::LeftInvertive).holds);
    let id = find_left_identity(&g);
    facts.add(EX, "left identity is 6", id.identity == g.index_of("6") && id.is_unique());
    for (a, x, y) in S6_WEAK_WITNESSES {
        let [a, x, y] = [a, x, y].map(|n| g.index_of(n).expect("fixture name"));
        let lhs = g.mul(g.mul(a, x), g.mul(a, y));
        let fact = format!(
            "({}·{})({}·{}) = {}",
            g.element_name(a),
            g.element_name(x),
            g.element_name(a),
            g.element_name(y),
            g.element_name(a)
        );
        facts.add(EX, fact, lhs == a);
    }
    facts.add(EX, "weakly regular", regularity_profile(&g).weakly_regular);
}

pub fn demo_paper() -> Report {
    let mut facts = Facts { rows: vec![] };
    five_element(&mut facts);
    six_element(&mut facts);
    let mut text = String::new();
    for (ex, fact, ok) in &facts.rows {
        let _ = writeln!(text, "[{}] {ex}: {fact}", if *ok { "ok" } else { "MISSING" });
    }
    let pass = facts.rows.iter().all(|r| r.2);
    let json = json!({
        "command": "demo-paper",
        "facts": facts.rows.iter().map(|(ex, fact, ok)| json!({ "example": ex, "fact": fact, "reproduced": ok })).collect::<Vec<_>>(),
    });
    Report::new(pass, text, json)
}
