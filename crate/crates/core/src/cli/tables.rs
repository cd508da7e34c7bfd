//! Reproduction of the printed tables: every cell is recomputed (by formula
//! or by exhaustive search) and compared with the printed value.

use std::collections::HashMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::arcs::certificate::{parse_certificates, verify_certificate, SearchMode};
use crate::arcs::ArcKind;
use crate::bounds::{self, KnownValues};
use crate::search::{self, SearchConfig, SearchResult};

/// Embedded witness fixtures, by table name.
pub const FIXTURES: [(&str, &str); 5] = [
    ("table1", include_str!("../../data/fixtures/table1.json")),
    ("table2", include_str!("../../data/fixtures/table2.json")),
    ("table4", include_str!("../../data/fixtures/table4.json")),
    ("table5", include_str!("../../data/fixtures/table5.json")),
    ("examples", include_str!("../../data/fixtures/examples.json")),
];

pub fn fixture(name: &str) -> Option<&'static str> {
    FIXTURES.iter().find(|(n, _)| *n == name).map(|(_, text)| *text)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TableName {
    Table1,
    Table2,
    Table3,
    Table4,
    Table5,
    Table6,
}

impl TableName {
    pub const ALL: [TableName; 6] = [
        TableName::Table1,
        TableName::Table2,
        TableName::Table3,
        TableName::Table4,
        TableName::Table5,
        TableName::Table6,
    ];

    pub fn source(self) -> &'static str {
        match self {
            TableName::Table1 => "table1",
            TableName::Table2 => "table2",
            TableName::Table3 => "table3",
            TableName::Table4 => "table4",
            TableName::Table5 => "table5",
            TableName::Table6 => "table6",
        }
    }

    pub fn default_rows(self, known: &KnownValues) -> Vec<u32> {
        known.rows_of(self.source())
    }

    fn columns(self) -> &'static [&'static str] {
        match self {
            TableName::Table1 => &["m_prime", "m", "m_g", "witness"],
            TableName::Table2 => &["ball_sqrt2", "ball_sqrt3", "t_prop", "t", "witness"],
            TableName::Table3 => &["ball_sqrt2", "ball_sqrt3", "t_prop", "t"],
            TableName::Table4 => &["ceil_t0", "t_v", "t", "witness"],
            TableName::Table5 => &["ceil_t1", "ceil_t2", "t_g", "witness"],
            TableName::Table6 => &["ceil_t1", "ceil_t2"],
        }
    }

    /// The searched column the witness fixture must realise.
    fn witness_quantity(self) -> Option<&'static str> {
        match self {
            TableName::Table1 => Some("m_g"),
            TableName::Table2 => Some("t"),
            TableName::Table4 => Some("t_v"),
            TableName::Table5 => Some("t_g"),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CellStatus {
    Match,
    Mismatch,
    /// Disagrees with print in a way recorded in the known-discrepancy list.
    KnownDiscrepancy,
    Unprinted,
    /// Taken from the literature rather than recomputed.
    Reference,
    /// A search that stopped on its budget.
    Incomplete,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Cell {
    pub column: String,
    pub value: Option<u32>,
    pub printed: Option<u32>,
    pub status: CellStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Cell {
    fn display(&self) -> String {
        let v = self.value.map_or("-".to_string(), |v| v.to_string());
        let p = self.printed.map_or("-".to_string(), |v| v.to_string());
        match self.status {
            CellStatus::Match => v,
            CellStatus::Mismatch => format!("{v} !={p}"),
            CellStatus::KnownDiscrepancy => format!("{v} ~{p}"),
            CellStatus::Unprinted => format!("{v} ?"),
            CellStatus::Reference => format!("{v} ref"),
            CellStatus::Incomplete => format!(">={v}").replace(">=-", "-"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Row {
    pub q: u32,
    pub cells: Vec<Cell>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Table {
    pub table: TableName,
    pub columns: Vec<String>,
    pub rows: Vec<Row>,
    #[serde(skip)]
    searches: Vec<(String, SearchResult)>,
}

impl Table {
    pub fn cells(&self) -> impl Iterator<Item = (u32, &Cell)> {
        self.rows.iter().flat_map(|r| r.cells.iter().map(move |c| (r.q, c)))
    }

    pub fn cell(&self, q: u32, column: &str) -> Option<&Cell> {
        self.cells().find(|(rq, c)| *rq == q && c.column == column).map(|(_, c)| c)
    }

    pub fn mismatches(&self) -> usize {
        self.cells().filter(|(_, c)| c.status == CellStatus::Mismatch).count()
    }

    pub fn budget_exhausted(&self) -> bool {
        self.cells().any(|(_, c)| c.status == CellStatus::Incomplete)
    }

    pub fn searches(&self) -> impl Iterator<Item = &SearchResult> {
        self.searches.iter().map(|(_, r)| r)
    }

    /// Certificate bundles of every search run, as (file name, JSON).
    pub fn bundles(&self) -> Vec<(String, String)> {
        self.searches
            .iter()
            .map(|(name, r)| (name.clone(), r.bundle_json()))
            .collect()
    }

    pub fn render_text(&self) -> String {
        let mut grid = vec![std::iter::once("q".to_string()).chain(self.columns.iter().cloned()).collect::<Vec<_>>()];
        for row in &self.rows {
            grid.push(
                std::iter::once(row.q.to_string())
                    .chain(row.cells.iter().map(Cell::display))
                    .collect(),
            );
        }
        let widths: Vec<usize> = (0..grid[0].len())
            .map(|i| grid.iter().map(|r| r[i].len()).max().unwrap_or(0))
            .collect();
        let mut s = format!("{}\n", self.table.source());
        for line in &grid {
            let cols: Vec<String> = line.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect();
            s += cols.join("  ").trim_end();
            s.push('\n');
        }
        for (q, c) in self.cells() {
            if let Some(note) = &c.note {
                if !matches!(c.status, CellStatus::Match | CellStatus::Reference) || c.column == "witness" {
                    let _ = writeln!(s, "# q={q} {}: {note}", c.column);
                }
            }
        }
        let _ = writeln!(s, "# {} mismatch(es)", self.mismatches());
        s
    }

    pub fn render_csv(&self) -> String {
        let mut s = String::from("q");
        for c in &self.columns {
            let _ = write!(s, ",{c},{c}_printed,{c}_status");
        }
        s.push('\n');
        let opt = |v: Option<u32>| v.map_or(String::new(), |v| v.to_string());
        for row in &self.rows {
            s += &row.q.to_string();
            for c in &row.cells {
                let status = serde_json::to_value(c.status).expect("status serializes");
                let _ = write!(
                    s,
                    ",{},{},{}",
                    opt(c.value),
                    opt(c.printed),
                    status.as_str().unwrap_or_default()
                );
            }
            s.push('\n');
        }
        s
    }

    pub fn render_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("tables serialize") + "\n"
    }
}

fn compare(
    known: &KnownValues,
    table: TableName,
    q: u32,
    column: &str,
    value: Option<u32>,
) -> Cell {
    let printed = known.get_from(table.source(), q, column);
    let (status, note) = match (value, printed) {
        (None, _) => (CellStatus::Unprinted, Some("not defined for this q".to_string())),
        (Some(_), None) => (CellStatus::Unprinted, None),
        (Some(v), Some(p)) if v == p => (CellStatus::Match, None),
        (Some(v), Some(p)) => match known.discrepancy(table.source(), q, column) {
            Some(d) if d.printed == p && d.computed == v => {
                (CellStatus::KnownDiscrepancy, Some(d.note.clone()))
            }
            _ => (CellStatus::Mismatch, None),
        },
    };
    Cell {
        column: column.to_string(),
        value,
        printed,
        status,
        note,
    }
}

struct Searcher<'a> {
    template: &'a SearchConfig,
    done: HashMap<(u32, ArcKind, SearchMode), SearchResult>,
    order: Vec<(String, SearchResult)>,
}

impl Searcher<'_> {
    fn get(&mut self, table: TableName, q: u32, kind: ArcKind, mode: SearchMode) -> Result<&SearchResult, String> {
        let key = (q, kind, mode);
        if !self.done.contains_key(&key) {
            let mut cfg = self.template.clone();
            cfg.q = q;
            cfg.kind = kind;
            cfg.mode = mode;
            let result = search::run(&cfg).map_err(|e| format!("{} q={q}: {e}", table.source()))?;
            let file = format!("{}_q{q}_{kind}_{mode}.json", table.source());
            self.order.push((file, result.clone()));
            self.done.insert(key, result);
        }
        Ok(&self.done[&key])
    }
}

fn search_cell(
    known: &KnownValues,
    table: TableName,
    q: u32,
    column: &str,
    result: &SearchResult,
) -> Cell {
    let mut cell = compare(known, table, q, column, result.answer.map(|a| a as u32));
    if !result.exhaustive {
        cell.status = CellStatus::Incomplete;
    }
    cell.note = Some(format!(
        "{} nodes{}",
        result.nodes_explored,
        cell.note.map_or(String::new(), |n| format!("; {n}"))
    ));
    cell
}

fn witness_cell(known: &KnownValues, table: TableName, q: u32) -> Cell {
    let quantity = table.witness_quantity().expect("table has witnesses");
    let printed = known.get_from(table.source(), q, quantity);
    let certs = fixture(table.source())
        .map(|text| parse_certificates(text).expect("embedded fixtures parse"))
        .unwrap_or_default();
    let mine: Vec<_> = certs
        .iter()
        .filter(|c| c.field.p.pow(c.field.r) == q)
        .collect();
    let mut cell = Cell {
        column: "witness".to_string(),
        value: None,
        printed,
        status: CellStatus::Unprinted,
        note: Some("no printed example".to_string()),
    };
    for cert in mine {
        let report = match verify_certificate(cert) {
            Ok(r) => r,
            Err(e) => {
                cell.status = CellStatus::Mismatch;
                cell.note = Some(e.to_string());
                return cell;
            }
        };
        cell.value = Some(report.k as u32);
        let size_ok = printed.is_none_or(|p| p as usize == report.k);
        if report.passed() && size_ok {
            cell.status = CellStatus::Match;
            cell.note = Some(format!(
                "printed {} {}-set verified, {} three-secants",
                report.kind,
                report.k,
                report.recomputed_three_secants.map_or("-".into(), |t| t.to_string())
            ));
        } else {
            cell.status = CellStatus::Mismatch;
            let mut problems = report.problems.clone();
            if !size_ok {
                problems.push(format!("size {} differs from the printed {quantity}", report.k));
            }
            cell.note = Some(problems.join("; "));
            return cell;
        }
    }
    cell
}

/// Recomputes `table` for the orders `qs`. Searches use `template` for
/// everything except q, kind and mode.
pub fn reproduce(
    table: TableName,
    qs: &[u32],
    template: &SearchConfig,
    known: &KnownValues,
) -> Result<Table, String> {
    let mut searcher = Searcher {
        template,
        done: HashMap::new(),
        order: Vec::new(),
    };
    let mut rows = Vec::new();
    for &q in qs {
        let mut cells = Vec::new();
        for &column in table.columns() {
            let cell = match column {
                "m_prime" => {
                    let r = bounds::reference_m2_prime(q, known);
                    Cell {
                        column: column.to_string(),
                        value: r.as_ref().map(|s| s.value),
                        printed: known.get_from(table.source(), q, column),
                        status: CellStatus::Reference,
                        note: r.map(|s| s.source),
                    }
                }
                "m" => compare(known, table, q, column, Some(search::max_bound(q, ArcKind::Arc, known).0 as u32)),
                "ball_sqrt2" => compare(known, table, q, column, Some(bounds::ball_sqrt2(q))),
                "ball_sqrt3" => {
                    let v = bounds::lower_t_ball(q).map_err(|e| e.to_string())?.1;
                    let mut cell = compare(known, table, q, column, v);
                    if v.is_none() && cell.printed.is_none() {
                        cell.status = CellStatus::Match;
                        cell.note = None;
                    }
                    cell
                }
                "t_prop" => compare(known, table, q, column, Some(bounds::lower_t_prop(q))),
                "ceil_t0" => compare(known, table, q, column, Some(bounds::lower_tv(q).map_err(|e| e.to_string())?)),
                "ceil_t1" | "ceil_t2" => {
                    let g = bounds::lower_tg(q).map_err(|e| e.to_string())?;
                    let v = if column == "ceil_t1" { g.ceil_t1 } else { g.ceil_t2 };
                    compare(known, table, q, column, Some(v))
                }
                "t" if table == TableName::Table3 => {
                    let printed = known.get_from(table.source(), q, column);
                    Cell {
                        column: column.to_string(),
                        value: printed,
                        printed,
                        status: CellStatus::Reference,
                        note: None,
                    }
                }
                "t" | "t_v" | "t_g" | "m_g" => {
                    let (kind, mode) = match column {
                        "t" => (ArcKind::Arc, SearchMode::MinComplete),
                        "t_v" => (ArcKind::Veronesian, SearchMode::MinComplete),
                        "t_g" => (ArcKind::Generalized, SearchMode::MinComplete),
                        _ => (ArcKind::Generalized, SearchMode::Max),
                    };
                    let result = searcher.get(table, q, kind, mode)?;
                    search_cell(known, table, q, column, result)
                }
                "witness" => witness_cell(known, table, q),
                other => unreachable!("unknown column {other}"),
            };
            cells.push(cell);
        }
        rows.push(Row { q, cells });
    }
    Ok(Table {
        table,
        columns: table.columns().iter().map(|c| c.to_string()).collect(),
        rows,
        searches: searcher.order,
    })
}
