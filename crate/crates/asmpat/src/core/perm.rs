use crate::core::asm::Asm;
use crate::error::{Error, Result};

/// A permutation in one-line notation. Row `i` of its matrix carries the 1
/// in column `pi(i)` (positions are rows, values are columns).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Permutation> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in &images {
            if v < 1 || v > n || seen[v - 1] {
                return Err(Error::BadPermutation {
                    n,
                    reason: format!("value {v} out of range or repeated"),
                });
            }
            seen[v - 1] = true;
        }
        Ok(Permutation { images })
    }

    /// Parses one-line notation made of the digits 1..9, e.g. "2143".
    pub fn parse(s: &str) -> Result<Permutation> {
        let images: Vec<usize> = s
            .chars()
            .map(|c| {
                c.to_digit(10)
                    .filter(|&d| d >= 1)
                    .map(|d| d as usize)
                    .ok_or_else(|| Error::Parse(format!("bad permutation digit {c:?} in {s:?}")))
            })
            .collect::<Result<_>>()?;
        Permutation::new(images)
    }

    pub fn identity(n: usize) -> Permutation {
        Permutation {
            images: (1..=n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    /// pi(i) for 1-based i.
    pub fn image(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn inverse(&self) -> Permutation {
        let n = self.len();
        let mut inv = vec![0; n];
        for (i, &v) in self.images.iter().enumerate() {
            inv[v - 1] = i + 1;
        }
        Permutation { images: inv }
    }

    /// The permutation matrix as an ASM (only meaningful for n >= 1).
    pub fn matrix(&self) -> Asm {
        let n = self.len();
        let mut entries = vec![0i8; n * n];
        for (i, &v) in self.images.iter().enumerate() {
            entries[i * n + (v - 1)] = 1;
        }
        Asm::from_entries_unchecked(n, entries)
    }
}

impl std::fmt::Display for Permutation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for (i, v) in self.images.iter().enumerate() {
            if self.images.len() > 9 && i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl std::fmt::Debug for Permutation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        std::fmt::Display::fmt(self, f)
    }
}
