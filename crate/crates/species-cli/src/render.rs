//! Output formatting: coefficient lines, and text/CSV/JSON table renderers.
//!
//! All three table formats emit rows in the family's fixed order and walk
//! each counting table in row-major `(n, k)` order, so output is
//! deterministic and diff-stable.

use serde::{Deserialize, Serialize};
use species::twosort::{CountTable, TableRow};
use species::TruncatedSeries;

/// Join per-degree coefficients into a single display line.
///
/// Unweighted expressions give plain integers ("1, 0, 1, 2, 9, 44");
/// weighted ones keep their marks ("0, y, y^2 + y, ...").
pub fn series_line(entries: &[TruncatedSeries]) -> String {
    entries
        .iter()
        .map(|s| s.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

/// JSON document: `{ "rows": [ ... ] }` with integer entries throughout.
#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
pub struct TableDoc {
    pub rows: Vec<RowDoc>,
}

/// One enrichment row with its four tables, each indexed `[n][k]`.
#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
pub struct RowDoc {
    pub r: String,
    pub labeled: Vec<Vec<u64>>,
    pub types_x: Vec<Vec<u64>>,
    pub types_y: Vec<Vec<u64>>,
    pub types_both: Vec<Vec<u64>>,
}

fn grid(table: &CountTable) -> Result<Vec<Vec<u64>>, String> {
    table
        .iter()
        .map(|row| {
            row.iter()
                .map(|v| {
                    u64::try_from(v).map_err(|_| format!("table entry {v} exceeds 64 bits"))
                })
                .collect()
        })
        .collect()
}

/// Convert computed rows into the JSON document shape.
pub fn table_doc(rows: &[TableRow]) -> Result<TableDoc, String> {
    let rows = rows
        .iter()
        .map(|row| {
            Ok(RowDoc {
                r: row.r.clone(),
                labeled: grid(&row.series.labeled)?,
                types_x: grid(&row.series.types_x)?,
                types_y: grid(&row.series.types_y)?,
                types_both: grid(&row.series.types_both)?,
            })
        })
        .collect::<Result<Vec<_>, String>>()?;
    Ok(TableDoc { rows })
}

/// Canonical JSON text: fixed key order, two-space indent, no floats.
/// Parsing this output and re-rendering reproduces it byte for byte.
pub fn render_json(doc: &TableDoc) -> String {
    // Serialization of these plain structs cannot fail.
    serde_json::to_string_pretty(doc).expect("table document serializes")
}

fn table_views(row: &TableRow) -> [(&'static str, &CountTable); 4] {
    [
        ("labeled", &row.series.labeled),
        ("types_x", &row.series.types_x),
        ("types_y", &row.series.types_y),
        ("types_both", &row.series.types_both),
    ]
}

/// CSV with one count per line: `r,table,n,k,count`.
pub fn render_csv(rows: &[TableRow]) -> String {
    let mut out = String::from("r,table,n,k,count\n");
    for row in rows {
        for (table_name, table) in table_views(row) {
            for (n, counts) in table.iter().enumerate() {
                for (k, v) in counts.iter().enumerate() {
                    out.push_str(&format!("{},{table_name},{n},{k},{v}\n", row.r));
                }
            }
        }
    }
    out
}

fn render_block(name: &str, table: &CountTable) -> String {
    let k_cols = table.first().map_or(0, Vec::len);
    let mut col_width = vec![0usize; k_cols];
    for (k, width) in col_width.iter_mut().enumerate() {
        *width = format!("k={k}").len();
        for counts in table {
            *width = (*width).max(counts[k].to_string().len());
        }
    }
    let label_width = format!("n={}", table.len().saturating_sub(1)).len();

    let mut out = format!("  {name}:\n");
    let mut header = format!("    {:>label_width$}", "");
    for (k, width) in col_width.iter().enumerate() {
        header.push_str(&format!("  {:>width$}", format!("k={k}")));
    }
    out.push_str(header.trim_end());
    out.push('\n');
    for (n, counts) in table.iter().enumerate() {
        let mut line = format!("    {:>label_width$}", format!("n={n}"));
        for (k, v) in counts.iter().enumerate() {
            line.push_str(&format!("  {:>width$}", v.to_string(), width = col_width[k]));
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

/// Human-readable tables: one four-quadrant block per enrichment row.
pub fn render_text(rows: &[TableRow]) -> String {
    let mut out = String::new();
    for (i, row) in rows.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        out.push_str(&format!("R = {}\n", row.r));
        for (table_name, table) in table_views(row) {
            out.push_str(&render_block(table_name, table));
        }
    }
    out
}
