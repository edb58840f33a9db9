use crate::core::asm::Asm;
use crate::error::{Error, Result};

/// The monotone triangle of an ASM: row i is the set of columns whose
/// partial sum over the first i matrix rows equals 1. Row i has i elements,
/// consecutive rows interlace, and the last row is all of 1..n.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MonotoneTriangle {
    rows: Vec<Vec<usize>>,
}

impl MonotoneTriangle {
    pub fn new(rows: Vec<Vec<usize>>) -> Result<MonotoneTriangle> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::Parse("empty triangle".into()));
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != i + 1 {
                return Err(Error::Parse(format!(
                    "triangle row {} has {} entries, expected {}",
                    i + 1,
                    row.len(),
                    i + 1
                )));
            }
            if !row.windows(2).all(|w| w[0] < w[1]) {
                return Err(Error::Parse(format!("triangle row {} not increasing", i + 1)));
            }
            if row[0] < 1 || *row.last().unwrap() > n {
                return Err(Error::Parse(format!("triangle row {} out of range", i + 1)));
            }
        }
        let t = MonotoneTriangle { rows };
        if let Some(msg) = t.interlacing_violation() {
            return Err(Error::Parse(msg));
        }
        Ok(t)
    }

    /// Rows as 1-based column sets.
    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    /// Interlacing is equivalent to all partial row sums of the difference
    /// of consecutive indicator vectors lying in {0, 1}.
    fn interlacing_violation(&self) -> Option<String> {
        let n = self.n();
        if self.rows[n - 1] != (1..=n).collect::<Vec<_>>() {
            return Some("last triangle row must be 1..n".into());
        }
        let mut prev = vec![false; n];
        for (i, row) in self.rows.iter().enumerate() {
            let mut cur = vec![false; n];
            for &c in row {
                cur[c - 1] = true;
            }
            let mut s = 0i32;
            for j in 0..n {
                s += cur[j] as i32 - prev[j] as i32;
                if s < 0 || s > 1 {
                    return Some(format!("rows {} and {} do not interlace", i, i + 1));
                }
            }
            prev = cur;
        }
        None
    }

    pub fn from_asm(a: &Asm) -> MonotoneTriangle {
        let n = a.n();
        let mut rows = Vec::with_capacity(n);
        let mut sums = vec![0i32; n];
        for i in 0..n {
            for j in 0..n {
                sums[j] += a.get(i, j) as i32;
            }
            rows.push(
                (1..=n)
                    .filter(|&c| sums[c - 1] == 1)
                    .collect::<Vec<usize>>(),
            );
        }
        MonotoneTriangle { rows }
    }

    pub fn to_asm(&self) -> Asm {
        let n = self.n();
        let mut entries = vec![0i8; n * n];
        let mut prev = vec![0i8; n];
        for (i, row) in self.rows.iter().enumerate() {
            let mut cur = vec![0i8; n];
            for &c in row {
                cur[c - 1] = 1;
            }
            for j in 0..n {
                entries[i * n + j] = cur[j] - prev[j];
            }
            prev = cur;
        }
        Asm::from_entries_unchecked(n, entries)
    }
}
