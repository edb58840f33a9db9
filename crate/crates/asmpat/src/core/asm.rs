use crate::error::{Error, Result};

/// An alternating sign matrix: square over {-1, 0, 1}, every row and column
/// sums to 1, and the nonzero entries of every row and column alternate in
/// sign. Immutable after construction.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Asm {
    n: usize,
    entries: Vec<i8>,
}

impl Asm {
    /// Builds an ASM from row data, rejecting anything that is not square,
    /// not over {-1,0,1}, or not alternating.
    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Asm> {
        let entries = check_shape(rows)?;
        let n = rows.len();
        if let Some(reason) = axiom_violation(n, &entries) {
            return Err(Error::NotAsm(reason));
        }
        Ok(Asm { n, entries })
    }

    /// Wraps entries the caller has already proved valid (generator output).
    pub(crate) fn from_entries_unchecked(n: usize, entries: Vec<i8>) -> Asm {
        debug_assert!(axiom_violation(n, &entries).is_none());
        Asm { n, entries }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Entry at 0-based (row, col).
    #[inline]
    pub fn get(&self, row: usize, col: usize) -> i8 {
        self.entries[row * self.n + col]
    }

    #[inline]
    pub fn entries(&self) -> &[i8] {
        &self.entries
    }

    pub fn row(&self, row: usize) -> &[i8] {
        &self.entries[row * self.n..(row + 1) * self.n]
    }

    /// Count and 1-based positions of the -1 entries, row-major order.
    pub fn negative_ones(&self) -> (usize, Vec<(usize, usize)>) {
        let mut positions = Vec::new();
        for i in 0..self.n {
            for j in 0..self.n {
                if self.get(i, j) == -1 {
                    positions.push((i + 1, j + 1));
                }
            }
        }
        (positions.len(), positions)
    }

    pub fn count_negative_ones(&self) -> usize {
        self.entries.iter().filter(|&&e| e == -1).count()
    }

    /// 1-based positions of the 1 entries, row-major order.
    pub fn one_positions(&self) -> Vec<(usize, usize)> {
        let mut positions = Vec::new();
        for i in 0..self.n {
            for j in 0..self.n {
                if self.get(i, j) == 1 {
                    positions.push((i + 1, j + 1));
                }
            }
        }
        positions
    }

    pub fn is_permutation_matrix(&self) -> bool {
        self.entries.iter().all(|&e| e >= 0)
    }

    pub fn rows_vec(&self) -> Vec<Vec<i64>> {
        (0..self.n)
            .map(|i| self.row(i).iter().map(|&e| e as i64).collect())
            .collect()
    }
}

impl std::fmt::Debug for Asm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "Asm {}x{}:", self.n, self.n)?;
        for i in 0..self.n {
            for j in 0..self.n {
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

/// True iff the square {-1,0,1} matrix satisfies all three ASM axioms.
/// Non-square input or entries outside the alphabet are shape errors,
/// distinct from a plain `false`.
pub fn validate_asm(rows: &[Vec<i64>]) -> Result<bool> {
    let entries = check_shape(rows)?;
    Ok(axiom_violation(rows.len(), &entries).is_none())
}

fn check_shape(rows: &[Vec<i64>]) -> Result<Vec<i8>> {
    let n = rows.len();
    for (i, row) in rows.iter().enumerate() {
        if row.len() != n {
            return Err(Error::NotSquare {
                rows: n,
                cols: row.len(),
            });
        }
        for (j, &v) in row.iter().enumerate() {
            if !(-1..=1).contains(&v) {
                return Err(Error::BadEntry {
                    row: i + 1,
                    col: j + 1,
                    value: v,
                });
            }
        }
    }
    Ok(rows.iter().flatten().map(|&v| v as i8).collect())
}

/// Checks row/column sums and sign alternation. A line alternates with sum 1
/// exactly when all its partial sums are 0 or 1 and the total is 1.
fn axiom_violation(n: usize, entries: &[i8]) -> Option<String> {
    if n == 0 {
        return Some("empty matrix".into());
    }
    for i in 0..n {
        let mut sum = 0i32;
        for j in 0..n {
            sum += entries[i * n + j] as i32;
            if sum < 0 || sum > 1 {
                return Some(format!("row {} has partial sum {} at column {}", i + 1, sum, j + 1));
            }
        }
        if sum != 1 {
            return Some(format!("row {} sums to {}", i + 1, sum));
        }
    }
    for j in 0..n {
        let mut sum = 0i32;
        for i in 0..n {
            sum += entries[i * n + j] as i32;
            if sum < 0 || sum > 1 {
                return Some(format!("column {} has partial sum {} at row {}", j + 1, sum, i + 1));
            }
        }
        if sum != 1 {
            return Some(format!("column {} sums to {}", j + 1, sum));
        }
    }
    None
}
