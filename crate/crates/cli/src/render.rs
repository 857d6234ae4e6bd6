//! Plain-text tables.

use serde_json::Value;

use crate::request::{C1Spec, Record, Request, SurfaceSpec};

pub fn cell(v: &Value) -> String {
    match v {
        Value::Null => "-".to_string(),
        Value::String(s) => s.clone(),
        Value::Array(items) => format!("[{}]", items.iter().map(cell).collect::<Vec<_>>().join(", ")),
        Value::Object(m) => m.iter().map(|(k, v)| format!("{k}={}", cell(v))).collect::<Vec<_>>().join(" "),
        other => other.to_string(),
    }
}

/// Left-aligned columns separated by two spaces; the header is the union of
/// keys in order of first appearance.
pub fn table(rows: &[Vec<(String, String)>]) -> String {
    let mut headers: Vec<String> = Vec::new();
    for row in rows {
        for (k, _) in row {
            if !headers.contains(k) {
                headers.push(k.clone());
            }
        }
    }
    let grid: Vec<Vec<String>> = rows
        .iter()
        .map(|row| {
            headers
                .iter()
                .map(|h| row.iter().find(|(k, _)| k == h).map_or_else(String::new, |(_, v)| v.clone()))
                .collect()
        })
        .collect();
    let widths: Vec<usize> = headers
        .iter()
        .enumerate()
        .map(|(i, h)| grid.iter().map(|r| r[i].chars().count()).chain([h.chars().count()]).max().unwrap_or(0))
        .collect();
    let line = |cells: &[String]| {
        let padded: Vec<String> =
            cells.iter().zip(&widths).map(|(c, w)| format!("{c}{}", " ".repeat(w - c.chars().count()))).collect();
        padded.join("  ").trim_end().to_string()
    };
    let mut out = vec![line(&headers)];
    out.extend(grid.iter().map(|r| line(r)));
    out.join("\n") + "\n"
}

pub fn input_cells(req: &Request) -> Vec<(String, String)> {
    let mut cells = vec![(
        "surface".to_string(),
        match req.surface {
            SurfaceSpec::Fe { e } => format!("F_{e}"),
            SurfaceSpec::P2 => "P2".to_string(),
        },
    )];
    if let Some(r) = req.rank {
        cells.push(("r".into(), r.to_string()));
    }
    let c1 = match &req.c1 {
        C1Spec::Pair([k, l]) => format!("{k}E{l:+}F"),
        C1Spec::Single(d) => format!("{d}H"),
    };
    cells.push((if req.cmd == "lb" { "D" } else { "c1" }.to_string(), c1));
    if let Some(ch2) = &req.ch2 {
        cells.push(("ch2".into(), ch2.clone()));
    }
    cells
}

/// One row for the request; fields holding lists of objects get their own table.
pub fn record(req: &Request, rec: &Record) -> String {
    let mut row = input_cells(req);
    let mut nested = Vec::new();
    for (k, v) in &rec.0 {
        match v {
            Value::Array(items) if items.iter().all(Value::is_object) && !items.is_empty() => nested.push((k, items)),
            _ => row.push((k.clone(), cell(v))),
        }
    }
    let mut out = table(&[row]);
    for (name, items) in nested {
        out.push('\n');
        out.push_str(&format!("{name}:\n"));
        let rows: Vec<Vec<(String, String)>> = items
            .iter()
            .map(|it| it.as_object().into_iter().flatten().map(|(k, v)| (k.clone(), cell(v))).collect())
            .collect();
        out.push_str(&table(&rows));
    }
    out
}
