//! Exhaustive ASM and permutation generation plus the explicit block
//! constructions.

pub mod gamma;
pub mod triangle;

pub use gamma::{block_diagonal, composition_count, gamma, GammaSpec, GammaVariant};
pub use triangle::MonotoneTriangle;

use crate::core::asm::Asm;
use crate::error::{Error, Result};
use num_bigint::BigUint;
use num_traits::One;

/// Default size ceiling for exhaustive generation; n = 9 is already about
/// 9 * 10^8 matrices. Overridable via the ASMPAT_CEILING env var.
pub const DEFAULT_CEILING: usize = 8;

pub fn generation_ceiling() -> usize {
    std::env::var("ASMPAT_CEILING")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_CEILING)
}

/// |ASM_n| by the Robbins product formula, prod_{k=0}^{n-1} (3k+1)!/(n+k)!.
pub fn count_asms(n: usize) -> BigUint {
    let factorial = |m: usize| -> BigUint {
        let mut f = BigUint::one();
        for i in 2..=m {
            f *= BigUint::from(i);
        }
        f
    };
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for k in 0..n {
        num *= factorial(3 * k + 1);
        den *= factorial(n + k);
    }
    num / den
}

/// Shard selector for reproducible parallel enumeration: subtree `index` of
/// `modulus`, keyed on the first two monotone triangle rows.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Shard {
    pub index: u64,
    pub modulus: u64,
}

impl Shard {
    pub fn new(index: u64, modulus: u64) -> Result<Shard> {
        if modulus == 0 || index >= modulus {
            return Err(Error::Parse(format!(
                "bad shard {index}/{modulus}: need index < modulus"
            )));
        }
        Ok(Shard { index, modulus })
    }

    pub fn parse(s: &str) -> Result<Shard> {
        let (i, m) = s
            .split_once('/')
            .ok_or_else(|| Error::Parse(format!("bad shard spec {s:?}, expected i/m")))?;
        let index = i
            .parse()
            .map_err(|_| Error::Parse(format!("bad shard index {i:?}")))?;
        let modulus = m
            .parse()
            .map_err(|_| Error::Parse(format!("bad shard modulus {m:?}")))?;
        Shard::new(index, modulus)
    }
}

struct Frame {
    candidates: Vec<u64>,
    next: usize,
}

/// Streams every n x n ASM exactly once, in lexicographic order of its
/// monotone triangle. Depth-first over triangle rows; a prefix is extended
/// only to rows whose partial column sums stay in {0, 1}, so every leaf is
/// a valid ASM with no post-filtering.
pub struct AsmStream {
    n: usize,
    stack: Vec<Frame>,
    chosen: Vec<u64>,
    shard: Option<Shard>,
    shard_depth: usize,
    shard_counter: u64,
    started: bool,
}

impl AsmStream {
    pub fn new(n: usize) -> Result<AsmStream> {
        Self::with_options(n, false, None)
    }

    pub fn with_options(n: usize, allow_large: bool, shard: Option<Shard>) -> Result<AsmStream> {
        let ceiling = generation_ceiling();
        if n == 0 {
            return Err(Error::Parse("n must be positive".into()));
        }
        if n > ceiling && !allow_large {
            return Err(Error::CeilingExceeded {
                n,
                ceiling,
                estimate: count_asms(n),
            });
        }
        if n > 63 {
            return Err(Error::Parse("n > 63 not supported by the bitmask generator".into()));
        }
        Ok(AsmStream {
            n,
            stack: Vec::with_capacity(n),
            chosen: Vec::with_capacity(n),
            shard,
            shard_depth: 2.min(n),
            shard_counter: 0,
            started: false,
        })
    }

    /// All masks q reachable from partial-sum mask p at this depth, in
    /// lexicographic order of the corresponding column sets.
    fn successors(&self, p: u64) -> Vec<u64> {
        let n = self.n;
        let mut out = Vec::new();
        // DFS over columns; taking a column before skipping it yields the
        // column sets in lexicographic order.
        fn rec(n: usize, p: u64, col: usize, s: i32, q: u64, out: &mut Vec<u64>) {
            if col == n {
                if s == 1 {
                    out.push(q);
                }
                return;
            }
            let p_bit = (p >> col) & 1;
            if p_bit == 1 {
                // keep the column: delta 0; drop it: delta -1 needs s = 1
                rec(n, p, col + 1, s, q | (1 << col), out);
                if s == 1 {
                    rec(n, p, col + 1, 0, q, out);
                }
            } else {
                // add the column: delta +1 needs s = 0
                if s == 0 {
                    rec(n, p, col + 1, 1, q | (1 << col), out);
                }
                rec(n, p, col + 1, s, q, out);
            }
        }
        rec(n, p, 0, 0, 0, &mut out);
        out
    }

    fn emit(&self) -> Asm {
        let n = self.n;
        let mut entries = vec![0i8; n * n];
        let mut prev = 0u64;
        for (i, &q) in self.chosen.iter().enumerate() {
            for j in 0..n {
                entries[i * n + j] = ((q >> j) & 1) as i8 - ((prev >> j) & 1) as i8;
            }
            prev = q;
        }
        Asm::from_entries_unchecked(n, entries)
    }

    /// True iff the subtree rooted at the current prefix belongs to this
    /// stream's shard. Counting prefixes in DFS order keys the partition.
    fn shard_admits(&mut self) -> bool {
        match self.shard {
            None => true,
            Some(Shard { index, modulus }) => {
                let c = self.shard_counter;
                self.shard_counter += 1;
                c % modulus == index
            }
        }
    }
}

impl Iterator for AsmStream {
    type Item = Asm;

    fn next(&mut self) -> Option<Asm> {
        if !self.started {
            self.started = true;
            let candidates = self.successors(0);
            self.stack.push(Frame {
                candidates,
                next: 0,
            });
        }
        loop {
            let depth = self.stack.len();
            if depth == 0 {
                return None;
            }
            let frame = self.stack.last_mut().unwrap();
            if frame.next >= frame.candidates.len() {
                self.stack.pop();
                self.chosen.pop();
                continue;
            }
            let q = frame.candidates[frame.next];
            frame.next += 1;
            self.chosen.push(q);
            if self.chosen.len() == self.shard_depth && !self.shard_admits() {
                self.chosen.pop();
                continue;
            }
            if self.chosen.len() == self.n {
                let asm = self.emit();
                self.chosen.pop();
                return Some(asm);
            }
            let candidates = self.successors(q);
            self.stack.push(Frame {
                candidates,
                next: 0,
            });
        }
    }
}

/// All permutations of 1..n in lexicographic order; n = 0 yields the single
/// empty permutation.
pub struct PermStream {
    current: Option<Vec<usize>>,
}

impl PermStream {
    pub fn new(n: usize) -> PermStream {
        PermStream {
            current: Some((1..=n).collect()),
        }
    }
}

impl Iterator for PermStream {
    type Item = crate::core::Permutation;

    fn next(&mut self) -> Option<Self::Item> {
        let cur = self.current.take()?;
        let item = crate::core::Permutation::new(cur.clone()).expect("stream yields bijections");
        self.current = next_permutation(cur);
        Some(item)
    }
}

fn next_permutation(mut v: Vec<usize>) -> Option<Vec<usize>> {
    let n = v.len();
    if n < 2 {
        return None;
    }
    let mut i = n - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return None;
    }
    let mut j = n - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    Some(v)
}

pub fn generate_permutations(n: usize) -> PermStream {
    PermStream::new(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::core::validate_asm;

    #[test]
    fn robbins_values() {
        let expected = [1u64, 1, 2, 7, 42, 429, 7436, 218348, 10850216];
        for (n, &v) in expected.iter().enumerate() {
            assert_eq!(count_asms(n), BigUint::from(v), "n = {n}");
        }
    }

    #[test]
    fn n1_stream() {
        let all: Vec<Asm> = AsmStream::new(1).unwrap().collect();
        assert_eq!(all.len(), 1);
        assert_eq!(all[0].rows_vec(), vec![vec![1]]);
    }

    #[test]
    fn n3_stream_contents() {
        let all: Vec<Asm> = AsmStream::new(3).unwrap().collect();
        assert_eq!(all.len(), 7);
        // 6 permutation matrices plus the single -1 matrix.
        assert_eq!(all.iter().filter(|a| a.is_permutation_matrix()).count(), 6);
        for a in &all {
            assert!(validate_asm(&a.rows_vec()).unwrap());
        }
        // Triangle-lex order starts at the identity.
        assert_eq!(all[0], crate::core::Permutation::identity(3).matrix());
        // Exactly once each.
        let set: std::collections::HashSet<_> = all.iter().cloned().collect();
        assert_eq!(set.len(), 7);
    }

    #[test]
    fn stream_length_matches_robbins_small() {
        for n in 1..=6 {
            let len = AsmStream::new(n).unwrap().count();
            assert_eq!(BigUint::from(len), count_asms(n), "n = {n}");
        }
    }

    #[test]
    fn triangle_round_trip() {
        for n in 1..=5 {
            for a in AsmStream::new(n).unwrap() {
                let t = MonotoneTriangle::from_asm(&a);
                assert_eq!(t.to_asm(), a);
                MonotoneTriangle::new(t.rows().to_vec()).unwrap();
            }
        }
    }

    #[test]
    fn shards_partition_the_stream() {
        let whole: Vec<Asm> = AsmStream::new(5).unwrap().collect();
        let m = 3;
        let mut merged = Vec::new();
        for i in 0..m {
            let shard = Shard::new(i, m).unwrap();
            merged.extend(AsmStream::with_options(5, false, Some(shard)).unwrap());
        }
        assert_eq!(merged.len(), whole.len());
        let a: std::collections::HashSet<_> = whole.into_iter().collect();
        let b: std::collections::HashSet<_> = merged.into_iter().collect();
        assert_eq!(a, b);
    }

    #[test]
    fn ceiling_refusal_carries_estimate() {
        match AsmStream::new(9) {
            Err(Error::CeilingExceeded { estimate, .. }) => {
                assert_eq!(estimate, count_asms(9));
            }
            other => panic!("expected ceiling refusal, got {:?}", other.map(|_| ())),
        }
    }

    #[test]
    fn permutation_stream() {
        assert_eq!(generate_permutations(0).count(), 1);
        assert_eq!(generate_permutations(3).count(), 6);
        let first = generate_permutations(4).next().unwrap();
        assert_eq!(first.images(), &[1, 2, 3, 4]);
        let all: Vec<_> = generate_permutations(3).collect();
        assert!(all.windows(2).all(|w| w[0] < w[1]), "lexicographic order");
    }
}
