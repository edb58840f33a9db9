use crate::core::asm::Asm;
use crate::core::perm::Permutation;
use crate::error::{Error, Result};

/// How a pattern is matched against a host matrix.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum ContainmentMode {
    /// Every nonzero pattern entry must match exactly.
    Classical,
    /// The pattern's -1s are replaced by 0 first, then matched classically.
    Ones,
    /// The selected submatrix equals the pattern entrywise, zeros included.
    Identical,
}

impl ContainmentMode {
    pub fn parse(s: &str) -> Result<ContainmentMode> {
        match s {
            "classical" => Ok(ContainmentMode::Classical),
            "ones" => Ok(ContainmentMode::Ones),
            "identical" => Ok(ContainmentMode::Identical),
            _ => Err(Error::Parse(format!("unknown containment mode {s:?}"))),
        }
    }
}

impl std::fmt::Display for ContainmentMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            ContainmentMode::Classical => "classical",
            ContainmentMode::Ones => "ones",
            ContainmentMode::Identical => "identical",
        };
        write!(f, "{s}")
    }
}

/// A rectangular {-1,0,1} matrix used as a pattern: a permutation matrix,
/// word matrix, ASM, or any other such matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PatternMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<i8>,
}

impl PatternMatrix {
    pub fn from_rows(rows: &[Vec<i64>]) -> Result<PatternMatrix> {
        let m = rows.len();
        if m == 0 || rows[0].is_empty() {
            return Err(Error::EmptyPattern);
        }
        let q = rows[0].len();
        let mut entries = Vec::with_capacity(m * q);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != q {
                return Err(Error::Parse(format!(
                    "ragged pattern: row {} has {} entries, expected {}",
                    i + 1,
                    row.len(),
                    q
                )));
            }
            for (j, &v) in row.iter().enumerate() {
                if !(-1..=1).contains(&v) {
                    return Err(Error::BadEntry {
                        row: i + 1,
                        col: j + 1,
                        value: v,
                    });
                }
                entries.push(v as i8);
            }
        }
        Ok(PatternMatrix {
            rows: m,
            cols: q,
            entries,
        })
    }

    pub fn from_asm(a: &Asm) -> PatternMatrix {
        PatternMatrix {
            rows: a.n(),
            cols: a.n(),
            entries: a.entries().to_vec(),
        }
    }

    pub fn from_permutation(p: &Permutation) -> PatternMatrix {
        PatternMatrix::from_asm(&p.matrix())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Entry at 0-based (row, col).
    #[inline]
    pub fn get(&self, row: usize, col: usize) -> i8 {
        self.entries[row * self.cols + col]
    }

    /// Replaces every -1 with 0, keeping the 1s in place. Idempotent.
    pub fn chi(&self) -> PatternMatrix {
        PatternMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|&e| e.max(0)).collect(),
        }
    }

    pub fn has_negative_ones(&self) -> bool {
        self.entries.iter().any(|&e| e == -1)
    }

    pub fn transpose(&self) -> PatternMatrix {
        let mut entries = vec![0i8; self.entries.len()];
        for i in 0..self.rows {
            for j in 0..self.cols {
                entries[j * self.rows + i] = self.get(i, j);
            }
        }
        PatternMatrix {
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    /// Rotation by 180 degrees.
    pub fn rot180(&self) -> PatternMatrix {
        PatternMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().rev().copied().collect(),
        }
    }
}

impl std::fmt::Debug for PatternMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "Pattern {}x{}:", self.rows, self.cols)?;
        for i in 0..self.rows {
            for j in 0..self.cols {
                let c = match self.get(i, j) {
                    1 => '+',
                    -1 => '-',
                    _ => '0',
                };
                write!(f, "{c}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// The chi map on ASMs: every -1 replaced by 0, yielding a 0-1 pattern.
pub fn chi(a: &Asm) -> PatternMatrix {
    PatternMatrix::from_asm(a).chi()
}

/// The |w| x max(w) matrix of a word, 1 at (i, w_i). Rows are positions,
/// columns are values.
pub fn word_to_pattern(word: &[usize]) -> Result<PatternMatrix> {
    if word.is_empty() {
        return Err(Error::EmptyWord);
    }
    let cols = *word.iter().max().unwrap();
    if word.iter().any(|&w| w == 0) {
        return Err(Error::Parse("word letters must be positive".into()));
    }
    let rows = word.len();
    let mut entries = vec![0i8; rows * cols];
    for (i, &w) in word.iter().enumerate() {
        entries[i * cols + (w - 1)] = 1;
    }
    Ok(PatternMatrix {
        rows,
        cols,
        entries,
    })
}

/// Parses a word from digits, e.g. "1231".
pub fn parse_word(s: &str) -> Result<Vec<usize>> {
    s.chars()
        .map(|c| {
            c.to_digit(10)
                .filter(|&d| d >= 1)
                .map(|d| d as usize)
                .ok_or_else(|| Error::Parse(format!("bad word digit {c:?} in {s:?}")))
        })
        .collect()
}
