//! Regeneration of the reference tables and text/json/csv rendering.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::Serialize;

use crate::tame::{tame_solve, TameProblem};
use crate::wild::{minor_gcd_report, table1_column, Convention, GcdReport, WildProblem};
use crate::{Error, IntPoly, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Text,
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            _ => Err(Error::Parse(format!("unknown format {s:?}"))),
        }
    }
}

/// Parameters of the Table 1 twin/tame comparison.
pub const TABLE1_L: [usize; 2] = [1, 3];

/// Rows of Table 2 (`m = 2`) and Table 3 (`m = 3`), twin case.
pub const TABLE2_L: [&[usize]; 7] = [
    &[1, 1],
    &[1, 2],
    &[2, 2],
    &[1, 3],
    &[1, 4],
    &[2, 3],
    &[3, 3],
];
pub const TABLE3_L: [&[usize]; 3] = [&[1, 1, 1], &[1, 1, 2], &[2, 2, 2]];

/// Table 3 rows whose quotients are not printed in the reference table.
const TABLE3_ELIDED: [&[usize]; 1] = [&[2, 2, 2]];

#[derive(Clone, Debug, Serialize)]
pub struct Table1 {
    pub schema: u32,
    pub l: Vec<usize>,
    /// Tame denominator `b_i` for `l0 = 0`.
    pub b: Vec<IntPoly>,
    /// Twin denominator `(L!/i!) tau_i`.
    pub twin: Vec<IntPoly>,
}

#[derive(Clone, Debug, Serialize)]
pub struct MinorTableRow {
    #[serde(flatten)]
    pub report: GcdReport,
    /// Quotients recomputed here but not printed in the reference table.
    pub derived: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct MinorTable {
    pub schema: u32,
    pub table: u8,
    pub rows: Vec<MinorTableRow>,
}

/// Tame (`l0 = 0`) and twin denominators side by side for any `l`.
pub fn twin_table(l: &[usize]) -> Result<Table1> {
    let tame = tame_solve(&TameProblem::new(0, l.to_vec())?, None)?;
    Ok(Table1 {
        schema: 1,
        l: l.to_vec(),
        b: tame.normalized,
        twin: table1_column(l)?,
    })
}

pub fn table1() -> Result<Table1> {
    twin_table(&TABLE1_L)
}

/// Table 2 or 3 recomputed in the given convention.
pub fn minor_table(which: u8, convention: Convention) -> Result<MinorTable> {
    let cases: &[&[usize]] = match which {
        2 => &TABLE2_L,
        3 => &TABLE3_L,
        _ => return Err(Error::InvalidProblem(format!("no minor table {which}"))),
    };
    let rows = cases
        .iter()
        .map(|l| {
            let report = minor_gcd_report(&WildProblem::twin(l.to_vec(), convention)?)?;
            Ok(MinorTableRow {
                report,
                derived: which == 3 && TABLE3_ELIDED.contains(l),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(MinorTable {
        schema: 1,
        table: which,
        rows,
    })
}

pub fn csv_field(s: &str) -> String {
    format!("\"{}\"", s.replace('"', "\"\""))
}

fn tuple(l: &[usize]) -> String {
    let parts: Vec<String> = l.iter().map(usize::to_string).collect();
    format!("({})", parts.join(", "))
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report values serialize");
    s.push('\n');
    s
}

pub fn render_table1(t: &Table1, format: Format) -> String {
    let mut out = String::new();
    match format {
        Format::Json => return to_json(t),
        Format::Csv => {
            out.push_str("i,b,twin\n");
            for (i, (b, w)) in t.b.iter().zip(&t.twin).enumerate() {
                let _ = writeln!(
                    out,
                    "{i},{},{}",
                    csv_field(&b.to_string()),
                    csv_field(&w.to_string())
                );
            }
        }
        Format::Text => {
            let _ = writeln!(out, "l = {}", tuple(&t.l));
            for (i, (b, w)) in t.b.iter().zip(&t.twin).enumerate() {
                let _ = writeln!(out, "  i = {i}");
                let _ = writeln!(out, "    b    = {}", b.factored_string());
                let _ = writeln!(out, "    twin = {}", w.factored_string());
            }
        }
    }
    out
}

/// One gcd report in the chosen format; text lists `V[i]/gcd` per row.
pub fn render_gcd_report(r: &GcdReport, format: Format) -> String {
    match format {
        Format::Json => to_json(r),
        Format::Csv => {
            let mut out = String::from("l,nu,convention,i,gcd,quotient,source\n");
            push_csv_rows(&mut out, r, false);
            out
        }
        Format::Text => {
            let mut out = String::new();
            push_text_rows(&mut out, r, false);
            out
        }
    }
}

fn push_csv_rows(out: &mut String, r: &GcdReport, derived: bool) {
    let l = csv_field(
        &r.l.iter()
            .map(usize::to_string)
            .collect::<Vec<_>>()
            .join(" "),
    );
    let nu = csv_field(
        &r.nu
            .iter()
            .map(usize::to_string)
            .collect::<Vec<_>>()
            .join(" "),
    );
    let marker = if derived { "DERIVED" } else { "" };
    for (i, q) in r.quotients.iter().enumerate() {
        let _ = writeln!(
            out,
            "{l},{nu},{},{i},{},{},{marker}",
            r.convention,
            csv_field(&r.gcd.to_string()),
            csv_field(&q.to_string())
        );
    }
}

fn push_text_rows(out: &mut String, r: &GcdReport, derived: bool) {
    let _ = write!(out, "l = {}", tuple(&r.l));
    if r.nu != r.l {
        let _ = write!(out, ", nu = {}", tuple(&r.nu));
    }
    let _ = writeln!(out, " [{}]", r.convention);
    let _ = writeln!(out, "  gcd = {}", r.gcd_factored);
    let marker = if derived { " [DERIVED]" } else { "" };
    let twin = r.nu == r.l;
    for (i, q) in r.quotients.iter().enumerate() {
        let label = if twin {
            format!("V[{i}]")
        } else {
            format!("cols {:?}", r.columns[i])
        };
        let _ = writeln!(out, "  {label}/gcd = {}{marker}", q.factored_string());
    }
}

pub fn render_minor_table(t: &MinorTable, format: Format) -> String {
    let mut out = String::new();
    match format {
        Format::Json => return to_json(t),
        Format::Csv => {
            out.push_str("l,nu,convention,i,gcd,quotient,source\n");
            for row in &t.rows {
                push_csv_rows(&mut out, &row.report, row.derived);
            }
        }
        Format::Text => {
            let _ = writeln!(out, "Table {}", t.table);
            for row in &t.rows {
                push_text_rows(&mut out, &row.report, row.derived);
            }
        }
    }
    out
}
