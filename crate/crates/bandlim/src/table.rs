//! Result tables and their CSV and JSON encodings.

use std::fmt::Write as _;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Num {
    Int(i64),
    Float(f64),
}

impl From<f64> for Num {
    fn from(x: f64) -> Self {
        Num::Float(x)
    }
}

impl From<u32> for Num {
    fn from(x: u32) -> Self {
        Num::Int(i64::from(x))
    }
}

impl From<u64> for Num {
    fn from(x: u64) -> Self {
        Num::Int(x as i64)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Row {
    pub quantity: String,
    pub params: Vec<(&'static str, Num)>,
    pub value: f64,
    pub budget: Option<f64>,
    pub bound: Option<f64>,
    pub verdict: Option<String>,
    pub note: Option<String>,
}

impl Row {
    pub fn new(quantity: impl Into<String>, value: f64, budget: Option<f64>) -> Self {
        Self { quantity: quantity.into(), params: Vec::new(), value, budget, bound: None, verdict: None, note: None }
    }

    pub fn param(mut self, name: &'static str, v: impl Into<Num>) -> Self {
        self.params.push((name, v.into()));
        self
    }

    pub fn bound(mut self, bound: f64) -> Self {
        self.bound = Some(bound);
        self
    }

    pub fn verdict(mut self, v: impl Into<String>) -> Self {
        self.verdict = Some(v.into());
        self
    }

    pub fn pass(self, ok: bool) -> Self {
        self.verdict(if ok { "PASS" } else { "FAIL" })
    }

    pub fn note(mut self, n: impl Into<String>) -> Self {
        self.note = Some(n.into());
        self
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Table {
    pub rows: Vec<Row>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// 17 significant digits, enough to round-trip any `f64`.
pub fn fmt_float(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x.is_infinite() {
        if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        }
    } else {
        format!("{x:.16e}")
    }
}

fn fmt_num(n: Num) -> String {
    match n {
        Num::Int(i) => i.to_string(),
        Num::Float(x) => fmt_float(x),
    }
}

fn json_num(n: Num) -> String {
    match n {
        Num::Float(x) if !x.is_finite() => "null".into(),
        n => fmt_num(n),
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn json_str(s: &str) -> String {
    serde_json::to_string(s).expect("strings serialize")
}

impl Table {
    pub fn push(&mut self, row: Row) {
        self.rows.push(row);
    }

    pub fn has_failures(&self) -> bool {
        self.rows.iter().any(|r| r.verdict.as_deref() == Some("FAIL"))
    }

    fn param_names(&self) -> Vec<&'static str> {
        let mut names = Vec::new();
        for r in &self.rows {
            for (n, _) in &r.params {
                if !names.contains(n) {
                    names.push(*n);
                }
            }
        }
        names
    }

    pub fn columns(&self) -> Vec<&'static str> {
        let mut cols = vec!["quantity"];
        cols.extend(self.param_names());
        cols.extend(["value", "budget", "bound", "verdict", "note"]);
        cols
    }

    /// Cells of a row in column order; `None` for an empty cell.
    fn cells(&self, row: &Row, params: &[&'static str]) -> Vec<(Option<String>, bool)> {
        let mut out = vec![(Some(row.quantity.clone()), true)];
        for p in params {
            out.push((row.params.iter().find(|(n, _)| n == p).map(|(_, v)| fmt_num(*v)), false));
        }
        out.push((Some(fmt_float(row.value)), false));
        out.push((row.budget.map(fmt_float), false));
        out.push((row.bound.map(fmt_float), false));
        out.push((row.verdict.clone(), true));
        out.push((row.note.clone(), true));
        out
    }

    pub fn to_csv(&self) -> String {
        let params = self.param_names();
        let mut out = self.columns().join(",");
        out.push('\n');
        for row in &self.rows {
            let line: Vec<String> = self.cells(row, &params).into_iter().map(|(c, _)| csv_field(&c.unwrap_or_default())).collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        let params = self.param_names();
        let cols = self.columns();
        let mut out = String::from("{\"columns\":[");
        out.push_str(&cols.iter().map(|c| json_str(c)).collect::<Vec<_>>().join(","));
        out.push_str("],\"rows\":[");
        for (i, row) in self.rows.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            out.push_str("\n{");
            let mut first = true;
            let mut put = |k: &str, v: String| {
                if !first {
                    out.push(',');
                }
                first = false;
                let _ = write!(out, "{}:{}", json_str(k), v);
            };
            put("quantity", json_str(&row.quantity));
            for p in &params {
                let v = row.params.iter().find(|(n, _)| n == p).map_or("null".into(), |(_, v)| json_num(*v));
                put(p, v);
            }
            put("value", json_num(Num::Float(row.value)));
            put("budget", row.budget.map_or("null".into(), |b| json_num(Num::Float(b))));
            put("bound", row.bound.map_or("null".into(), |b| json_num(Num::Float(b))));
            put("verdict", row.verdict.as_deref().map_or("null".into(), json_str));
            put("note", row.note.as_deref().map_or("null".into(), json_str));
            out.push('}');
        }
        out.push_str("\n]}\n");
        out
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
        }
    }
}
