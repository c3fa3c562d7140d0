//! Canonical-element tables transcribed as data, and their comparison with
//! freshly enumerated orbit sets.

use std::collections::BTreeSet;

use serde::Serialize;

use canonical_enum::{canonical_set, CanonicalSet, Mode};
use lattice_core::{grassmannian_target, LatticeElement, Target};

use crate::CliError;

/// One cell: the entries of a row restricted to support size `support_size`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoldenCell {
    pub n: usize,
    /// Row target (symmetric table only).
    pub target: Option<Target>,
    pub support_size: usize,
    pub entries: Vec<&'static str>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoldenTable {
    pub mode: Mode,
    /// Every `n` covered by the table, including rows that must be empty.
    pub ns: Vec<usize>,
    pub cells: Vec<GoldenCell>,
}

impl GoldenTable {
    /// Copy with one entry deleted.
    pub fn without(&self, entry: &str) -> GoldenTable {
        let mut t = self.clone();
        for c in &mut t.cells {
            c.entries.retain(|e| *e != entry);
        }
        t
    }
}

fn cell(n: usize, target: Option<Target>, support_size: usize, entries: &[&'static str]) -> GoldenCell {
    GoldenCell { n, target, support_size, entries: entries.to_vec() }
}

fn gr(k: usize, n: usize) -> Option<Target> {
    Some(Target::Grassmannian { k, n })
}

/// Canonical elements of SU(4) and SU(5) up to symmetry.
pub fn table1() -> GoldenTable {
    GoldenTable {
        mode: Mode::Plain,
        ns: vec![4, 5],
        cells: vec![
            cell(4, None, 3, &["H1+2H2+H3", "3H1+H2+H3"]),
            cell(4, None, 2, &["2H1+H2", "H1+H3"]),
            cell(4, None, 1, &["4H1", "2H2"]),
            cell(5, None, 4, &["H1+H2+H3+H4"]),
            cell(5, None, 3, &["H1+H2+4H3", "H1+3H2+H3", "2H1+H2+2H3", "3H1+2H2+H3", "5H1+H2+H3"]),
            cell(5, None, 2, &["H1+2H2", "3H1+H2", "H1+H4"]),
            cell(5, None, 1, &["5H1"]),
        ],
    }
}

/// Symmetric canonical elements for n <= 5 up to symmetry, by Grassmannian.
pub fn table2() -> GoldenTable {
    GoldenTable {
        mode: Mode::Symmetric,
        ns: vec![2, 3, 4, 5],
        cells: vec![
            cell(3, gr(1, 3), 2, &["H1+H2", "4H1+H2"]),
            cell(3, gr(1, 3), 1, &["3H1"]),
            cell(4, gr(2, 4), 3, &["3H1+H2+H3"]),
            cell(4, gr(2, 4), 2, &["2H1+H2", "H1+H3"]),
            cell(5, gr(1, 5), 4, &["4H1+2H2+H3+H4"]),
            cell(5, gr(1, 5), 3, &["H1+H2+4H3"]),
            cell(5, gr(1, 5), 2, &["H1+2H2", "H1+7H2", "3H1+H2", "H1+6H4"]),
            cell(5, gr(1, 5), 1, &["5H1"]),
            cell(5, gr(2, 5), 4, &["H1+H2+H3+H4", "2H1+3H2+H3+H4", "H1+H2+H3+6H4"]),
            cell(
                5,
                gr(2, 5),
                3,
                &["H1+H2+9H3", "H1+3H2+H3", "H1+8H2+H3", "2H1+H2+2H3", "3H1+H2+5H3", "3H1+2H2+H3", "5H1+H2+H3"],
            ),
            cell(5, gr(2, 5), 2, &["4H1+3H2", "8H1+H2", "H1+H4"]),
        ],
    }
}

/// Parses a sum such as `3H1+H2+5H3` into an element of rank `n`.
pub fn parse_h_sum(n: usize, s: &str) -> Result<LatticeElement, CliError> {
    let bad = || CliError::Usage(format!("cannot parse {s:?} as a sum of H_i"));
    let mut coeffs = vec![0i64; n.saturating_sub(1)];
    for term in s.split('+') {
        let (k, i) = term.trim().split_once('H').ok_or_else(bad)?;
        let k: i64 = if k.is_empty() { 1 } else { k.parse().map_err(|_| bad())? };
        let i: usize = i.parse().map_err(|_| bad())?;
        if i == 0 || i >= n {
            return Err(bad());
        }
        coeffs[i - 1] += k;
    }
    LatticeElement::new(n, coeffs).map_err(|e| CliError::Usage(e.to_string()))
}

#[derive(Clone, Debug, Serialize)]
pub struct CellReport {
    pub label: String,
    pub passed: bool,
    pub problems: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TableReport {
    pub cells: Vec<CellReport>,
}

impl TableReport {
    pub fn passed(&self) -> bool {
        self.cells.iter().all(|c| c.passed)
    }
}

fn cell_label(c: &GoldenCell) -> String {
    match c.target {
        Some(t) => format!("{t} |I|={}", c.support_size),
        None => format!("SU({}) |I|={}", c.n, c.support_size),
    }
}

/// Compares `table` with the enumerated orbit sets: every entry must be a
/// canonical element with the cell's support size (and target), no orbit may
/// be listed twice, and every enumerated orbit must be listed.
pub fn check_table(table: &GoldenTable) -> Result<TableReport, CliError> {
    let mut cells = Vec::new();
    for &n in &table.ns {
        let set = canonical_set(n, table.mode).map_err(|e| CliError::Usage(e.to_string()))?;
        let mut seen: BTreeSet<LatticeElement> = BTreeSet::new();
        for c in table.cells.iter().filter(|c| c.n == n) {
            let problems = check_cell(&set, c, &mut seen)?;
            cells.push(CellReport { label: cell_label(c), passed: problems.is_empty(), problems });
        }
        let missing: Vec<String> = set
            .orbits
            .iter()
            .filter(|o| !seen.contains(&o.representative))
            .map(|o| {
                let names: Vec<String> = o.members.iter().map(|m| m.to_string()).collect();
                format!("missing orbit {{{}}} (|I|={})", names.join(", "), o.support.len())
            })
            .collect();
        cells.push(CellReport {
            label: format!("SU({n}) coverage ({} orbits)", set.orbits.len()),
            passed: missing.is_empty(),
            problems: missing,
        });
    }
    Ok(TableReport { cells })
}

fn check_cell(
    set: &CanonicalSet,
    c: &GoldenCell,
    seen: &mut BTreeSet<LatticeElement>,
) -> Result<Vec<String>, CliError> {
    let mut problems = Vec::new();
    for entry in &c.entries {
        let xi = parse_h_sum(c.n, entry)?;
        let Some(orbit) = set.orbit_of(&xi) else {
            problems.push(format!("{entry} is not in the enumerated set"));
            continue;
        };
        if xi.support().len() != c.support_size {
            problems.push(format!("{entry} has |I| = {}", xi.support().len()));
        }
        if let Some(t) = c.target {
            let got = grassmannian_target(&xi).map_err(|e| CliError::Usage(e.to_string()))?;
            if got != t {
                problems.push(format!("{entry} has target {got}"));
            }
        }
        if !seen.insert(orbit.representative.clone()) {
            problems.push(format!("{entry} repeats the orbit of {}", orbit.representative));
        }
    }
    Ok(problems)
}
