//! Rendering of command results as JSON, CSV or standalone LaTeX.

use serde_json::Value;
use vdecomp_core::{Field, Matrix, VPolynomial};

use crate::config::OutputFormat;

#[derive(Clone, Debug)]
pub enum Cell {
    Text(String),
    /// A multicomposition in text form, `2,1|1`.
    Shape(String),
    Poly(VPolynomial),
    Int(u64),
    Bool(bool),
}

impl Cell {
    fn plain(&self) -> String {
        match self {
            Cell::Text(s) | Cell::Shape(s) => s.clone(),
            Cell::Poly(p) => p.to_text(),
            Cell::Int(i) => i.to_string(),
            Cell::Bool(b) => b.to_string(),
        }
    }

    fn latex(&self) -> String {
        match self {
            Cell::Text(s) => escape_latex(s),
            Cell::Shape(s) => {
                let comps: Vec<String> = s
                    .split('|')
                    .map(|c| if c.is_empty() { "\\emptyset".to_string() } else { format!("({c})") })
                    .collect();
                format!("$({})$", comps.join(",\\,"))
            }
            Cell::Poly(p) => format!("${}$", poly_latex(p)),
            Cell::Int(i) => i.to_string(),
            Cell::Bool(b) => if *b { "pass" } else { "fail" }.to_string(),
        }
    }
}

fn poly_latex(p: &VPolynomial) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let terms: Vec<String> = p
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(i, &c)| {
            let coeff = if c == 1 && i > 0 { String::new() } else { c.to_string() };
            match i {
                0 => coeff,
                1 => format!("{coeff}v"),
                _ => format!("{coeff}v^{{{i}}}"),
            }
        })
        .collect();
    terms.join("+")
}

fn escape_latex(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for ch in s.chars() {
        match ch {
            '\\' => out.push_str("\\textbackslash{}"),
            '&' | '%' | '$' | '#' | '_' | '{' | '}' => {
                out.push('\\');
                out.push(ch);
            }
            '^' => out.push_str("\\^{}"),
            '~' => out.push_str("\\~{}"),
            '|' => out.push_str("\\textbar{}"),
            _ => out.push(ch),
        }
    }
    out
}

#[derive(Clone, Debug, Default)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

/// A command result in all three output forms.
#[derive(Clone, Debug)]
pub struct Artifact {
    pub title: String,
    pub json: Value,
    pub table: Table,
}

impl Artifact {
    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Json => {
                let mut s = serde_json::to_string_pretty(&self.json).expect("serialisable");
                s.push('\n');
                s
            }
            OutputFormat::Csv => self.csv(),
            OutputFormat::Latex => self.latex(),
        }
    }

    fn csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.table.header).expect("in-memory write");
        for row in &self.table.rows {
            w.write_record(row.iter().map(Cell::plain)).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
    }

    fn latex(&self) -> String {
        let cols = self.table.header.len().max(1);
        let mut s = String::new();
        s.push_str("\\documentclass{article}\n\\usepackage{amssymb}\n\\begin{document}\n");
        s.push_str(&format!("\\section*{{{}}}\n", escape_latex(&self.title)));
        s.push_str(&format!("\\begin{{tabular}}{{l|{}}}\n", "c".repeat(cols - 1)));
        let head: Vec<String> = self.table.header.iter().map(|h| header_latex(h)).collect();
        s.push_str(&format!("{} \\\\\n\\hline\n", head.join(" & ")));
        for row in &self.table.rows {
            let cells: Vec<String> = row.iter().map(Cell::latex).collect();
            s.push_str(&format!("{} \\\\\n", cells.join(" & ")));
        }
        s.push_str("\\end{tabular}\n\\end{document}\n");
        s
    }
}

fn header_latex(h: &str) -> String {
    if h.contains('|') || h.chars().all(|c| c.is_ascii_digit() || c == ',') && !h.is_empty() {
        Cell::Shape(h.to_string()).latex()
    } else {
        escape_latex(h)
    }
}

/// Exact entries as strings.
pub fn matrix_json<K: Field>(m: &Matrix<K>) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| Value::Array(m.row(i).iter().map(|x| Value::String(x.to_string())).collect()))
            .collect(),
    )
}
