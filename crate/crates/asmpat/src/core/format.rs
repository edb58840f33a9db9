use crate::core::asm::Asm;
use crate::core::pattern::PatternMatrix;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// "asm-grid" text format: n lines of n characters from {+,-,0},
/// newline-terminated.
pub fn to_grid(a: &Asm) -> String {
    let mut out = String::with_capacity(a.n() * (a.n() + 1));
    for i in 0..a.n() {
        for j in 0..a.n() {
            out.push(match a.get(i, j) {
                1 => '+',
                -1 => '-',
                _ => '0',
            });
        }
        out.push('\n');
    }
    out
}

fn grid_rows(text: &str) -> Result<Vec<Vec<i64>>> {
    let lines: Vec<&str> = text.lines().filter(|l| !l.is_empty()).collect();
    if lines.is_empty() {
        return Err(Error::Parse("empty grid".into()));
    }
    let width = lines[0].len();
    let mut rows = Vec::with_capacity(lines.len());
    for (i, line) in lines.iter().enumerate() {
        if line.len() != width {
            return Err(Error::Parse(format!(
                "ragged grid: line {} has {} characters, expected {}",
                i + 1,
                line.len(),
                width
            )));
        }
        let mut row = Vec::with_capacity(width);
        for (j, c) in line.chars().enumerate() {
            row.push(match c {
                '+' => 1,
                '-' => -1,
                '0' => 0,
                other => {
                    return Err(Error::Parse(format!(
                        "bad grid character {:?} at line {}, column {}",
                        other,
                        i + 1,
                        j + 1
                    )))
                }
            });
        }
        rows.push(row);
    }
    Ok(rows)
}

pub fn parse_grid(text: &str) -> Result<Asm> {
    Asm::from_rows(&grid_rows(text)?)
}

/// Parses a grid as a pattern; rectangular and unconstrained beyond the
/// {-1,0,1} alphabet.
pub fn parse_grid_pattern(text: &str) -> Result<PatternMatrix> {
    PatternMatrix::from_rows(&grid_rows(text)?)
}

#[derive(Serialize, Deserialize)]
struct AsmJson {
    n: usize,
    rows: Vec<Vec<i64>>,
}

pub fn to_json(a: &Asm) -> String {
    let doc = AsmJson {
        n: a.n(),
        rows: a.rows_vec(),
    };
    serde_json::to_string(&doc).expect("serializing plain integers cannot fail")
}

pub fn parse_json(text: &str) -> Result<Asm> {
    let doc: AsmJson =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("bad ASM json: {e}")))?;
    if doc.rows.len() != doc.n {
        return Err(Error::Parse(format!(
            "json declares n = {} but has {} rows",
            doc.n,
            doc.rows.len()
        )));
    }
    Asm::from_rows(&doc.rows)
}
