use std::fs;
use std::path::Path;

use super::FiniteGroup;
use crate::error::{Error, Result};

/// Parses the Cayley-table text format: the order `n`, then `n` element
/// names, then `n` rows of `n` indices where row `a` lists `a * b`.
pub fn parse_table_file(spec: &str, text: &str) -> Result<FiniteGroup> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let bad = |why: String| Error::InvalidTable(why);
    let n: usize = lines
        .next()
        .ok_or_else(|| bad("missing order line".into()))?
        .trim()
        .parse()
        .map_err(|_| bad("order line is not an integer".into()))?;
    let names: Vec<String> = lines
        .next()
        .ok_or_else(|| bad("missing names line".into()))?
        .split_whitespace()
        .map(str::to_string)
        .collect();
    if names.len() != n {
        return Err(bad(format!("expected {n} names, found {}", names.len())));
    }
    let mut table = Vec::with_capacity(n * n);
    for row in 0..n {
        let line = lines.next().ok_or_else(|| bad(format!("missing row {row}")))?;
        let entries: Vec<usize> = line
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| bad(format!("bad entry `{t}` in row {row}"))))
            .collect::<Result<_>>()?;
        if entries.len() != n {
            return Err(bad(format!("row {row} has {} entries", entries.len())));
        }
        table.extend(entries);
    }
    if lines.next().is_some() {
        return Err(bad("trailing data after the table".into()));
    }
    FiniteGroup::from_table(spec, names, table, Vec::new())
}

pub fn load_table_file(path: impl AsRef<Path>) -> Result<FiniteGroup> {
    let path = path.as_ref();
    let text = fs::read_to_string(path)?;
    parse_table_file(&format!("file:{}", path.display()), &text)
}

/// Serializes a group in the Cayley-table format. Names containing
/// whitespace are joined with underscores so the names line stays
/// tokenizable.
pub fn write_table_file(group: &FiniteGroup) -> String {
    let n = group.order();
    let mut out = format!("{n}\n");
    let names: Vec<String> = group.names().iter().map(|s| s.split_whitespace().collect::<Vec<_>>().join("_")).collect();
    out.push_str(&names.join(" "));
    out.push('\n');
    for a in 0..n {
        let row: Vec<String> = (0..n).map(|b| group.mul(a, b).to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}
