//! Groupoid and fuzzy-subset text files.
//!
//! Groupoid file: `#` comment lines, then `n [name1 ... namen]`, then `n`
//! rows of `n` entries. Entries are element names when names are given and
//! indices otherwise.
//!
//! Fuzzy file: `#` comment lines and one `name grade` line per element;
//! grades are exact decimals or fractions `p/q`.

use agfuzz::{FuzzySubset, Grade, Groupoid};

use crate::CliError;

fn data_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_err(line: usize, msg: impl Into<String>) -> CliError {
    CliError::Parse { line, msg: msg.into() }
}

pub fn parse_groupoid_file(text: &str) -> Result<Groupoid, CliError> {
    let mut lines = data_lines(text);
    let (hline, header) = lines.next().ok_or_else(|| parse_err(1, "empty groupoid file"))?;
    let mut words = header.split_whitespace();
    let n: usize = words
        .next()
        .and_then(|w| w.parse().ok())
        .filter(|&n| n > 0)
        .ok_or_else(|| parse_err(hline, "first line must start with the order n ≥ 1"))?;
    let names: Vec<String> = words.map(str::to_string).collect();
    if !names.is_empty() && names.len() != n {
        return Err(parse_err(hline, format!("expected {n} element names, found {}", names.len())));
    }
    let mut table = Vec::with_capacity(n * n);
    let mut rows = 0;
    for (no, line) in lines {
        if rows == n {
            return Err(parse_err(no, format!("more than {n} rows")));
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.len() != n {
            return Err(parse_err(no, format!("expected {n} entries, found {}", tokens.len())));
        }
        for (col, tok) in tokens.iter().enumerate() {
            let value = if names.is_empty() {
                tok.parse::<usize>().ok().filter(|&v| v < n)
            } else {
                names.iter().position(|nm| nm == tok)
            };
            let value = value.ok_or_else(|| parse_err(no, format!("unknown element `{tok}` in column {}", col + 1)))?;
            table.push(value);
        }
        rows += 1;
    }
    if rows != n {
        return Err(parse_err(text.lines().count().max(1), format!("expected {n} rows, found {rows}")));
    }
    Ok(Groupoid::new(n, table, (!names.is_empty()).then_some(names))?)
}

pub fn parse_fuzzy_file(text: &str, g: &Groupoid) -> Result<FuzzySubset, CliError> {
    let mut grades: Vec<Option<Grade>> = vec![None; g.order()];
    for (no, line) in data_lines(text) {
        let mut words = line.split_whitespace();
        let (Some(name), Some(value), None) = (words.next(), words.next(), words.next()) else {
            return Err(parse_err(no, "expected `name grade`"));
        };
        let x = g.index_of(name).ok_or_else(|| parse_err(no, format!("unknown element `{name}`")))?;
        if grades[x].is_some() {
            return Err(parse_err(no, format!("duplicate element `{name}`")));
        }
        let grade: Grade = value.parse().map_err(|e: agfuzz::Error| parse_err(no, e.to_string()))?;
        grades[x] = Some(grade);
    }
    let missing: Vec<&str> = (0..g.order()).filter(|&x| grades[x].is_none()).map(|x| g.element_name(x)).collect();
    if !missing.is_empty() {
        return Err(CliError::Unassigned(missing.join(", ")));
    }
    Ok(FuzzySubset::from_grades(grades.into_iter().flatten()))
}
