//! Enumeration and storage of small AG-groupoids.
//!
//! Tables are filled row-major. After each assignment every left-invertive
//! instance `(ab)c = (cb)a` whose four cells are already known is checked,
//! so dead branches are cut as early as possible. Isomorphism classes are
//! represented by their canonical table: the lexicographically least
//! flattened table over all relabelings.

use std::fmt::Write as _;
use std::path::Path;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use itertools::Itertools;
use serde::Serialize;

use crate::algebra::{check_law, crisp_profile, find_left_identity, regularity_profile, Groupoid, IdealKind, Law, RegularityProfile};
use crate::error::{Error, Result};
use crate::set::ElementSet;

/// Largest order enumerated without the long-running flag.
pub const EXHAUSTIVE_LIMIT: usize = 4;
/// Largest order enumerated at all.
pub const HARD_LIMIT: usize = 5;

const UNSET: usize = usize::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct EnumOptions {
    pub require_left_identity: bool,
    pub up_to_iso: bool,
    /// Threads used for the first-row split; 0 or 1 runs inline.
    pub workers: usize,
    /// Permits order 5.
    pub long_running: bool,
}

impl Default for EnumOptions {
    fn default() -> Self {
        EnumOptions { require_left_identity: false, up_to_iso: false, workers: 1, long_running: false }
    }
}

/// Checks the left-invertive instances that use cell `(i, j)` and whose
/// other cells are already assigned.
fn consistent_at(n: usize, t: &[usize], i: usize, j: usize) -> bool {
    let v = |a: usize, b: usize| t[a * n + b];
    let check = |a: usize, b: usize, c: usize| {
        let ab = v(a, b);
        let cb = v(c, b);
        if ab == UNSET || cb == UNSET {
            return true;
        }
        let (l, r) = (v(ab, c), v(cb, a));
        l == UNSET || r == UNSET || l == r
    };
    for x in 0..n {
        // (i j) as ab or cb
        if !check(i, j, x) || !check(x, j, i) {
            return false;
        }
        for y in 0..n {
            // (i j) as (ab)c with ab = i, c = j, or as (cb)a with cb = i, a = j
            if v(x, y) == i && (!check(x, y, j) || !check(j, y, x)) {
                return false;
            }
        }
    }
    true
}

fn search(n: usize, t: &mut Vec<usize>, cell: usize, out: &mut Vec<Vec<usize>>) {
    if cell == n * n {
        out.push(t.clone());
        return;
    }
    let (i, j) = (cell / n, cell % n);
    for v in 0..n {
        t[cell] = v;
        if consistent_at(n, t, i, j) {
            search(n, t, cell + 1, out);
        }
    }
    t[cell] = UNSET;
}

/// Relabels `t` by `perm` (old index to new index).
fn relabel(n: usize, t: &[usize], perm: &[usize]) -> Vec<usize> {
    let mut out = vec![0; n * n];
    for i in 0..n {
        for j in 0..n {
            out[perm[i] * n + perm[j]] = perm[t[i * n + j]];
        }
    }
    out
}

fn canonical_table(n: usize, t: &[usize]) -> Vec<usize> {
    let mut best = t.to_vec();
    for perm in (0..n).permutations(n) {
        let cand = relabel(n, t, &perm);
        if cand < best {
            best = cand;
        }
    }
    best
}

/// Least flattened table over all relabelings of `g`.
pub fn canonical_form(g: &Groupoid) -> Vec<usize> {
    canonical_table(g.order(), g.table())
}

/// All distinct relabelings of a table.
pub fn relabelings(n: usize, t: &[usize]) -> Vec<Vec<usize>> {
    (0..n).permutations(n).map(|p| relabel(n, t, &p)).sorted().dedup().collect()
}

fn raw_tables(n: usize, opts: &EnumOptions) -> Vec<Vec<usize>> {
    // Each first-row assignment is an independent branch.
    let mut prefixes = vec![];
    let mut t = vec![UNSET; n * n];
    collect_prefixes(n, &mut t, 0, &mut prefixes);
    let run_branch = |prefix: &Vec<usize>| {
        let mut t = prefix.clone();
        let mut out = vec![];
        search(n, &mut t, n, &mut out);
        if opts.up_to_iso {
            out.retain(|t| canonical_table(n, t) == *t);
        }
        out
    };
    let workers = opts.workers.max(1).min(prefixes.len().max(1));
    if workers == 1 {
        return prefixes.iter().flat_map(run_branch).collect();
    }
    let next = AtomicUsize::new(0);
    let results: Mutex<Vec<Option<Vec<Vec<usize>>>>> = Mutex::new(vec![None; prefixes.len()]);
    std::thread::scope(|s| {
        for _ in 0..workers {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= prefixes.len() {
                    break;
                }
                let found = run_branch(&prefixes[i]);
                results.lock().expect("worker panicked")[i] = Some(found);
            });
        }
    });
    results.into_inner().expect("worker panicked").into_iter().flat_map(|r| r.expect("branch done")).collect()
}

fn collect_prefixes(n: usize, t: &mut Vec<usize>, cell: usize, out: &mut Vec<Vec<usize>>) {
    if cell == n {
        out.push(t.clone());
        return;
    }
    for v in 0..n {
        t[cell] = v;
        if consistent_at(n, t, 0, cell) {
            collect_prefixes(n, t, cell + 1, out);
        }
    }
    t[cell] = UNSET;
}

/// Every AG-groupoid of order `n`, in a fixed order independent of the
/// worker count. Entries are named `AG<n>-<index>`.
pub fn enumerate_ag_groupoids(n: usize, opts: &EnumOptions) -> Result<Vec<Groupoid>> {
    if n == 0 {
        return Err(Error::EmptyCarrier);
    }
    if n > HARD_LIMIT {
        return Err(Error::OrderTooLarge { order: n, limit: HARD_LIMIT });
    }
    if n > EXHAUSTIVE_LIMIT && !opts.long_running {
        return Err(Error::NeedsLongRunning(n));
    }
    let mut out = vec![];
    for t in raw_tables(n, opts) {
        let g = Groupoid::new(n, t, None)?;
        if opts.require_left_identity && find_left_identity(&g).identity.is_none() {
            continue;
        }
        let idx = out.len();
        out.push(g.with_name(format!("AG{n}-{idx}")));
    }
    Ok(out)
}

/// Every AG-groupoid of order `1..=max`, concatenated in order.
pub fn catalog_up_to(max: usize, opts: &EnumOptions) -> Result<Vec<Groupoid>> {
    let mut all = vec![];
    for n in 1..=max {
        all.extend(enumerate_ag_groupoids(n, opts)?);
    }
    Ok(all)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructureProfile {
    pub order: usize,
    pub left_identity: Option<usize>,
    pub medial: bool,
    pub paramedial: bool,
    pub law4: bool,
    pub commutative: bool,
    pub associative: bool,
    pub regularity: RegularityProfile,
    /// Number of crisp ideals of each kind, in [`IdealKind::ALL`] order.
    pub ideal_counts: Vec<(IdealKind, usize)>,
}

impl StructureProfile {
    pub fn ideal_count(&self, kind: IdealKind) -> usize {
        self.ideal_counts.iter().find(|(k, _)| *k == kind).map_or(0, |&(_, c)| c)
    }

    /// `key=value` pairs as written to catalog files.
    fn flags(&self) -> Vec<(String, String)> {
        let b = |x: bool| if x { "1" } else { "0" }.to_string();
        let mut out = vec![
            ("ident".to_string(), self.left_identity.map_or("-".to_string(), |e| e.to_string())),
            ("medial".into(), b(self.medial)),
            ("paramedial".into(), b(self.paramedial)),
            ("law4".into(), b(self.law4)),
            ("commutative".into(), b(self.commutative)),
            ("associative".into(), b(self.associative)),
            ("regular".into(), b(self.regularity.regular)),
            ("intra-regular".into(), b(self.regularity.intra_regular)),
            ("weakly-regular".into(), b(self.regularity.weakly_regular)),
        ];
        for (kind, c) in &self.ideal_counts {
            out.push((kind.as_str().to_string(), c.to_string()));
        }
        out
    }
}

pub fn classify_structure(g: &Groupoid) -> Result<StructureProfile> {
    let holds = |law| check_law(g, law).holds;
    let mut counts = vec![0usize; IdealKind::ALL.len()];
    if g.order() > crate::algebra::DEFAULT_CRISP_LIMIT {
        return Err(Error::OrderTooLarge { order: g.order(), limit: crate::algebra::DEFAULT_CRISP_LIMIT });
    }
    for a in ElementSet::nonempty_subsets(g.order()) {
        let p = crisp_profile(g, a);
        for (i, &kind) in IdealKind::ALL.iter().enumerate() {
            counts[i] += p.flag(kind) as usize;
        }
    }
    Ok(StructureProfile {
        order: g.order(),
        left_identity: find_left_identity(g).identity,
        medial: holds(Law::Medial),
        paramedial: holds(Law::Paramedial),
        law4: holds(Law::LeftIdentityLaw4),
        commutative: holds(Law::Commutative),
        associative: holds(Law::Associative),
        regularity: regularity_profile(g),
        ideal_counts: IdealKind::ALL.iter().copied().zip(counts).collect(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CatalogEntry {
    pub table: Vec<usize>,
    pub profile: StructureProfile,
}

impl CatalogEntry {
    pub fn groupoid(&self) -> Groupoid {
        Groupoid::new(self.profile.order, self.table.clone(), None).expect("validated on construction")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Catalog {
    pub order: usize,
    pub up_to_iso: bool,
    pub require_left_identity: bool,
    pub entries: Vec<CatalogEntry>,
}

const MAGIC: &str = "agcat";
const VERSION: &str = "1";

impl Catalog {
    pub fn build(n: usize, opts: &EnumOptions) -> Result<Self> {
        let entries = enumerate_ag_groupoids(n, opts)?
            .into_iter()
            .map(|g| Ok(CatalogEntry { profile: classify_structure(&g)?, table: g.table().to_vec() }))
            .collect::<Result<_>>()?;
        Ok(Catalog { order: n, up_to_iso: opts.up_to_iso, require_left_identity: opts.require_left_identity, entries })
    }

    pub fn groupoids(&self) -> Vec<Groupoid> {
        self.entries.iter().enumerate().map(|(i, e)| e.groupoid().with_name(format!("AG{}-{i}", self.order))).collect()
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        let b = |x: bool| x as u8;
        let _ = writeln!(s, "{MAGIC} {VERSION} n={} iso={} ident={}", self.order, b(self.up_to_iso), b(self.require_left_identity));
        for e in &self.entries {
            let cells = e.table.iter().map(|c| c.to_string()).join(" ");
            let flags = e.profile.flags().into_iter().map(|(k, v)| format!("{k}={v}")).join(" ");
            let _ = writeln!(s, "{cells} | {flags}");
        }
        let _ = writeln!(s, "count={}", self.entries.len());
        s
    }

    pub fn parse(text: &str) -> Result<Self> {
        let err = |line: usize, msg: String| Error::CatalogFormat { line, msg };
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty());
        let (hline, header) = lines.next().ok_or_else(|| err(1, "missing header".into()))?;
        let words: Vec<&str> = header.split_whitespace().collect();
        if words.len() != 5 || words[0] != MAGIC || words[1] != VERSION {
            return Err(err(hline, format!("expected header `{MAGIC} {VERSION} n=<n> iso=<0|1> ident=<0|1>`")));
        }
        let field = |w: &str, key: &str| -> Result<usize> {
            w.strip_prefix(key)
                .and_then(|v| v.strip_prefix('='))
                .and_then(|v| v.parse().ok())
                .ok_or_else(|| err(hline, format!("bad header field `{w}`")))
        };
        let order = field(words[2], "n")?;
        let up_to_iso = field(words[3], "iso")? == 1;
        let require_left_identity = field(words[4], "ident")? == 1;
        if order == 0 || order > crate::algebra::DEFAULT_CRISP_LIMIT {
            return Err(err(hline, format!("unsupported order {order}")));
        }
        let mut entries = vec![];
        let mut count = None;
        for (no, line) in lines {
            if count.is_some() {
                return Err(err(no, "content after count line".into()));
            }
            if let Some(c) = line.strip_prefix("count=") {
                count = Some(c.parse::<usize>().map_err(|_| err(no, format!("bad count `{c}`")))?);
                continue;
            }
            entries.push(parse_entry(no, line, order, up_to_iso, require_left_identity)?);
        }
        let last = text.lines().count();
        let expected = count.ok_or_else(|| err(last, "missing count line".into()))?;
        if expected != entries.len() {
            return Err(Error::ChecksumMismatch { expected, found: entries.len() });
        }
        Ok(Catalog { order, up_to_iso, require_left_identity, entries })
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.render())?;
        Ok(())
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Catalog::parse(&std::fs::read_to_string(path)?)
    }
}

fn parse_entry(no: usize, line: &str, n: usize, iso: bool, ident: bool) -> Result<CatalogEntry> {
    let err = |msg: String| Error::CatalogFormat { line: no, msg };
    let (cells, flags) = line.split_once('|').ok_or_else(|| err("missing `|`".into()))?;
    let table = cells
        .split_whitespace()
        .map(|c| c.parse::<usize>().map_err(|_| err(format!("bad entry `{c}`"))))
        .collect::<Result<Vec<_>>>()?;
    if table.len() != n * n {
        return Err(err(format!("expected {} entries, found {}", n * n, table.len())));
    }
    let g = Groupoid::new(n, table.clone(), None).map_err(|e| err(e.to_string()))?;
    let li = check_law(&g, Law::LeftInvertive);
    if !li.holds {
        let w = li.witness.unwrap_or_default();
        return Err(err(format!("table is not left invertive at {w:?}")));
    }
    if iso && canonical_table(n, &table) != table {
        return Err(err("table is not in canonical form".into()));
    }
    let profile = classify_structure(&g)?;
    if ident && profile.left_identity.is_none() {
        return Err(err("table has no left identity".into()));
    }
    let stored: Vec<(&str, &str)> = flags
        .split_whitespace()
        .map(|kv| kv.split_once('=').ok_or_else(|| err(format!("bad flag `{kv}`"))))
        .collect::<Result<_>>()?;
    let actual = profile.flags();
    if stored.len() != actual.len() || stored.iter().zip(&actual).any(|((k, v), (ak, av))| k != ak || v != av) {
        let bad = stored.iter().zip(&actual).find(|((k, v), (ak, av))| k != ak || v != av);
        let what = bad.map_or("flag list length".to_string(), |((k, _), _)| format!("flag `{k}`"));
        return Err(err(format!("{what} disagrees with the table")));
    }
    Ok(CatalogEntry { table, profile })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    /// Checks every left-invertive instance whose cells are all assigned.
    fn consistent(n: usize, t: &[usize]) -> bool {
        for a in 0..n {
            for b in 0..n {
                let ab = t[a * n + b];
                if ab == UNSET {
                    continue;
                }
                for c in 0..n {
                    let cb = t[c * n + b];
                    if cb == UNSET {
                        continue;
                    }
                    let (l, r) = (t[ab * n + c], t[cb * n + a]);
                    if l != UNSET && r != UNSET && l != r {
                        return false;
                    }
                }
            }
        }
        true
    }

    #[test]
    fn incremental_check_matches_full_check() {
        // random partial tables of order 3
        let n = 3;
        let mut state = 12345u64;
        for _ in 0..2000 {
            let mut t = vec![UNSET; n * n];
            let filled = (state % 10) as usize;
            for slot in t.iter_mut().take(filled) {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                *slot = (state >> 33) as usize % n;
            }
            if filled == 0 || !consistent(n, &{
                let mut p = t.clone();
                p[filled - 1] = UNSET;
                p
            }) {
                continue;
            }
            let (i, j) = ((filled - 1) / n, (filled - 1) % n);
            assert_eq!(consistent_at(n, &t, i, j), consistent(n, &t), "{t:?}");
        }
    }

    #[test]
    fn order_one() {
        let all = enumerate_ag_groupoids(1, &EnumOptions::default()).unwrap();
        assert_eq!(all.len(), 1);
        assert_eq!(canonical_form(&all[0]), vec![0]);
        let p = classify_structure(&all[0]).unwrap();
        assert!(p.medial && p.paramedial && p.law4 && p.commutative && p.associative);
        assert!(p.regularity.regular && p.regularity.intra_regular && p.regularity.weakly_regular);
        assert_eq!(p.left_identity, Some(0));
        assert!(p.ideal_counts.iter().all(|&(_, c)| c == 1));
    }

    #[test]
    fn limits() {
        assert!(matches!(enumerate_ag_groupoids(5, &EnumOptions::default()), Err(Error::NeedsLongRunning(5))));
        let opts = EnumOptions { long_running: true, ..EnumOptions::default() };
        assert!(matches!(enumerate_ag_groupoids(6, &opts), Err(Error::OrderTooLarge { .. })));
    }

    #[test]
    fn canonical_form_of_fixture_relabelings() {
        let s5 = fixtures::s5();
        let c = canonical_form(&s5);
        for perm in (0..5).permutations(5) {
            let t = relabel(5, s5.table(), &perm);
            assert_eq!(canonical_table(5, &t), c);
        }
        assert_eq!(canonical_table(5, &c), c);
    }

    #[test]
    fn fixture_profiles() {
        let p6 = classify_structure(&fixtures::s6()).unwrap();
        assert_eq!(p6.left_identity, Some(5));
        assert!(p6.regularity.weakly_regular);
        let p5 = classify_structure(&fixtures::s5()).unwrap();
        assert_eq!(p5.left_identity, Some(3));
        assert!(p5.medial && p5.paramedial && p5.law4);
    }

    #[test]
    fn render_parse_round_trip() {
        let cat = Catalog::build(2, &EnumOptions::default()).unwrap();
        assert_eq!(Catalog::parse(&cat.render()).unwrap(), cat);
        let empty = Catalog::parse("agcat 1 n=3 iso=1 ident=0\ncount=0\n").unwrap();
        assert!(empty.entries.is_empty());
    }

    #[test]
    fn parse_errors() {
        let cat = Catalog::build(2, &EnumOptions::default()).unwrap();
        let text = cat.render();
        let short = text.replace(&format!("count={}", cat.entries.len()), "count=99");
        assert!(matches!(Catalog::parse(&short), Err(Error::ChecksumMismatch { expected: 99, .. })));
        // left zero band: x y = x
        let bad = "agcat 1 n=2 iso=0 ident=0\n0 0 1 1 | ident=-\ncount=1\n";
        match Catalog::parse(bad) {
            Err(Error::CatalogFormat { line: 2, msg }) => assert!(msg.contains("left invertive"), "{msg}"),
            other => panic!("{other:?}"),
        }
        let tampered = text.replacen("medial=1", "medial=0", 1);
        assert!(matches!(Catalog::parse(&tampered), Err(Error::CatalogFormat { line: 2, .. })));
        assert!(matches!(Catalog::parse("agcat 2 n=2 iso=0 ident=0\ncount=0"), Err(Error::CatalogFormat { line: 1, .. })));
    }
}
