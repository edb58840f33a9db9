//! Filtered counting over exhaustively generated ASMs: avoidance classes,
//! stratification by the number of -1s, sequence assembly, and brute-force
//! verification of the structural lemmas.

use crate::core::asm::Asm;
use crate::core::pattern::{ContainmentMode, PatternMatrix};
use crate::core::symmetry::{apply_symmetry, SymmetryElement};
use crate::error::{Error, Result};
use crate::matcher::{contains, CompiledPattern, HostIndex};
use num_bigint::BigUint;
use num_traits::Zero;
use rayon::prelude::*;

use crate::generator::{AsmStream, Shard};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum KFilter {
    Exactly(usize),
    AtMost(usize),
}

impl KFilter {
    fn admits(self, k: usize) -> bool {
        match self {
            KFilter::Exactly(want) => k == want,
            KFilter::AtMost(bound) => k <= bound,
        }
    }
}

/// A counting query: avoid every pattern in `patterns` under `mode`,
/// optionally restricted by the number of -1 entries.
#[derive(Clone, Debug)]
pub struct AvoidanceQuery {
    pub patterns: Vec<PatternMatrix>,
    pub mode: ContainmentMode,
    pub k_filter: Option<KFilter>,
}

impl AvoidanceQuery {
    pub fn new(
        patterns: Vec<PatternMatrix>,
        mode: ContainmentMode,
        k_filter: Option<KFilter>,
    ) -> Result<AvoidanceQuery> {
        if patterns.is_empty() && k_filter.is_none() {
            return Err(Error::EmptyPattern);
        }
        Ok(AvoidanceQuery {
            patterns,
            mode,
            k_filter,
        })
    }

    /// Patterns compiled once per query, cheapest (smallest) first so the
    /// per-ASM filter can short-circuit early.
    fn compile(&self) -> Vec<CompiledPattern> {
        let mut compiled: Vec<CompiledPattern> = self
            .patterns
            .iter()
            .map(|p| CompiledPattern::new(p, self.mode))
            .collect();
        compiled.sort_by_key(CompiledPattern::cost);
        compiled
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Provenance {
    Enumerated,
    Formula,
    PaperGolden,
}

impl std::fmt::Display for Provenance {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Provenance::Enumerated => "ENUMERATED",
            Provenance::Formula => "FORMULA",
            Provenance::PaperGolden => "PAPER_GOLDEN",
        })
    }
}

#[derive(Clone, Debug)]
pub struct SequenceRecord {
    pub name: String,
    pub offset: usize,
    pub terms: Vec<BigUint>,
    pub provenance: Provenance,
}

/// Number of generator shards for a full scan of ASM_n. Fixed per n (never
/// derived from the thread count) so the partition, and hence every partial
/// sum, is reproducible.
fn shard_count(n: usize) -> u64 {
    if n <= 4 {
        1
    } else {
        64
    }
}

/// Streams ASM_n shard by shard in parallel and sums per-shard counts of
/// matrices accepted by `pred`. Addition is associative and commutative, so
/// the total is independent of thread scheduling.
fn count_filtered<F>(n: usize, pred: F) -> Result<BigUint>
where
    F: Fn(&Asm) -> bool + Sync,
{
    let m = shard_count(n);
    // Probe the ceiling up front so refusal happens before spawning work.
    AsmStream::with_options(n, false, Some(Shard::new(0, m)?))?;
    let total = (0..m)
        .into_par_iter()
        .map(|i| {
            let shard = Shard::new(i, m).expect("index < modulus");
            let stream = AsmStream::with_options(n, false, Some(shard)).expect("probed above");
            let mut count = 0u64;
            for a in stream {
                if pred(&a) {
                    count += 1;
                }
            }
            BigUint::from(count)
        })
        .reduce(BigUint::zero, |a, b| a + b);
    Ok(total)
}

pub fn count_avoiding(n: usize, q: &AvoidanceQuery) -> Result<BigUint> {
    let compiled = q.compile();
    count_filtered(n, |a| {
        if let Some(k) = q.k_filter {
            if !k.admits(a.count_negative_ones()) {
                return false;
            }
        }
        if compiled.is_empty() {
            return true;
        }
        let idx = HostIndex::new(a);
        compiled.iter().all(|p| idx.find(p).is_none())
    })
}

/// `count_avoiding` restricted to exactly k negative ones.
pub fn count_avoiding_stratified(n: usize, q: &AvoidanceQuery, k: usize) -> Result<BigUint> {
    let mut q = q.clone();
    q.k_filter = Some(KFilter::Exactly(k));
    count_avoiding(n, &q)
}

/// Avoidance of ASM patterns as literal submatrices (IDENTICAL mode).
pub fn count_identical_avoiding(n: usize, patterns: &[Asm]) -> Result<BigUint> {
    if patterns.is_empty() {
        return Err(Error::EmptyPattern);
    }
    let q = AvoidanceQuery::new(
        patterns.iter().map(PatternMatrix::from_asm).collect(),
        ContainmentMode::Identical,
        None,
    )?;
    count_avoiding(n, &q)
}

/// Avoidance of 0-1 word patterns; for these CLASSICAL and ONES coincide.
pub fn count_word_avoiding(n: usize, patterns: &[PatternMatrix]) -> Result<BigUint> {
    let q = AvoidanceQuery::new(patterns.to_vec(), ContainmentMode::Classical, None)?;
    count_avoiding(n, &q)
}

pub fn sequence(q: &AvoidanceQuery, n_max: usize, name: &str) -> Result<SequenceRecord> {
    let mut terms = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        terms.push(count_avoiding(n, q)?);
    }
    Ok(SequenceRecord {
        name: name.to_string(),
        offset: 1,
        terms,
        provenance: Provenance::Enumerated,
    })
}

/// Per-size result of a lemma scan.
#[derive(Clone, Debug)]
pub struct StructureLine {
    pub n: usize,
    /// Matrices in the class the lemma quantifies over.
    pub population: u64,
    pub counterexamples: u64,
}

#[derive(Clone, Debug)]
pub struct StructureReport {
    pub lemma: String,
    pub lines: Vec<StructureLine>,
}

impl StructureReport {
    pub fn counterexamples(&self) -> u64 {
        self.lines.iter().map(|l| l.counterexamples).sum()
    }
}

fn perm_patterns(specs: &[&str]) -> Vec<PatternMatrix> {
    specs
        .iter()
        .map(|s| {
            PatternMatrix::from_permutation(&crate::core::Permutation::parse(s).unwrap())
        })
        .collect()
}

/// True iff A has a -1 strictly southwest of another -1 implies A contains
/// 3412, and strictly northwest implies it contains 2143.
fn check_two_neg_ones(a: &Asm) -> bool {
    let (_, pos) = a.negative_ones();
    let p3412 = perm_patterns(&["3412"]);
    let p2143 = perm_patterns(&["2143"]);
    for (x, &(i1, j1)) in pos.iter().enumerate() {
        for &(i2, j2) in &pos[x + 1..] {
            // positions are sorted row-major, so i1 <= i2
            let (sw, nw) = if i1 < i2 && j1 > j2 {
                (true, false)
            } else if i1 < i2 && j1 < j2 {
                (false, true)
            } else {
                continue;
            };
            if sw && contains(a, &p3412[0], ContainmentMode::Classical).is_none() {
                return false;
            }
            if nw && contains(a, &p2143[0], ContainmentMode::Classical).is_none() {
                return false;
            }
        }
    }
    true
}

/// True iff every strictly-northwest pair of -1s in a 3412-avoiding A has a
/// 1 on one of the two L-shaped lattice paths between them.
fn check_path_lemma(a: &Asm) -> bool {
    let (_, pos) = a.negative_ones();
    for (x, &(ia, ja)) in pos.iter().enumerate() {
        for &(ib, jb) in &pos[x + 1..] {
            if !(ia < ib && ja < jb) {
                continue;
            }
            // P1: east along row ia, then south along column jb.
            let p1 = (ja + 1..=jb)
                .map(|j| (ia, j))
                .chain((ia + 1..ib).map(|i| (i, jb)));
            // P2: south along column ja, then east along row ib.
            let p2 = (ia + 1..=ib)
                .map(|i| (i, ja))
                .chain((ja + 1..jb).map(|j| (ib, j)));
            let hit = p1
                .chain(p2)
                .any(|(i, j)| (i, j) != (ib, jb) && a.get(i - 1, j - 1) == 1);
            if !hit {
                return false;
            }
        }
    }
    true
}

/// All -1s in a single row or a single column.
fn check_all_in_a_row(a: &Asm) -> bool {
    let (_, pos) = a.negative_ones();
    pos.windows(2).all(|w| w[0].0 == w[1].0) || pos.windows(2).all(|w| w[0].1 == w[1].1)
}

/// If A has its three -1s in a column, the row lemmas apply to the
/// transpose; returns the matrix with the -1s in a row, or None if the
/// lemma's hypothesis (exactly three -1s) fails to hold.
fn orient_three_in_a_row(a: &Asm) -> Option<Asm> {
    let (count, pos) = a.negative_ones();
    if count != 3 {
        return None;
    }
    if pos[0].0 == pos[1].0 && pos[1].0 == pos[2].0 {
        Some(a.clone())
    } else {
        Some(apply_symmetry(a, SymmetryElement::Transpose))
    }
}

/// The 1s above and below the middle -1 sit in rows i-1 and i+1.
fn check_rows_adjacent(a: &Asm) -> bool {
    let Some(a) = orient_three_in_a_row(a) else {
        return true;
    };
    let (_, pos) = a.negative_ones();
    let (i, d) = pos[1]; // middle -1, 1-based
    let above = (1..i).rev().find(|&r| a.get(r - 1, d - 1) != 0);
    let below = (i + 1..=a.n()).find(|&r| a.get(r - 1, d - 1) != 0);
    above == Some(i - 1) && below == Some(i + 1)
}

/// The seven nonzero entries of the three--1 row occupy adjacent columns.
fn check_cols_adjacent(a: &Asm) -> bool {
    let Some(a) = orient_three_in_a_row(a) else {
        return true;
    };
    let i = a.negative_ones().1[0].0;
    let cols: Vec<usize> = (1..=a.n()).filter(|&j| a.get(i - 1, j - 1) != 0).collect();
    cols.len() == 7 && cols[6] == cols[0] + 6
}

/// Scans the named lemma's class for all sizes up to n_max, counting
/// population and counterexamples per n.
pub fn verify_structure_suite(name: &str, n_max: usize) -> Result<StructureReport> {
    // (avoided patterns, predicate the lemma asserts)
    let (avoid, check): (Vec<PatternMatrix>, fn(&Asm) -> bool) = match name {
        "two-neg-ones" => (Vec::new(), check_two_neg_ones),
        "path-lemma" => (perm_patterns(&["3412"]), check_path_lemma),
        "allinarow" => (perm_patterns(&["2143", "3412"]), check_all_in_a_row),
        "atmost3" => (
            perm_patterns(&["2143", "3412"]),
            |a| a.count_negative_ones() <= 3,
        ),
        "rows-adjacent" => (perm_patterns(&["2143", "3412"]), check_rows_adjacent),
        "cols-adjacent" => (perm_patterns(&["2143", "3412"]), check_cols_adjacent),
        other => return Err(Error::UnknownLemma(other.to_string())),
    };
    let compiled: Vec<CompiledPattern> = avoid
        .iter()
        .map(|p| CompiledPattern::new(p, ContainmentMode::Classical))
        .collect();

    let mut lines = Vec::new();
    for n in 1..=n_max {
        let m = shard_count(n);
        AsmStream::with_options(n, false, Some(Shard::new(0, m)?))?;
        let (population, counterexamples) = (0..m)
            .into_par_iter()
            .map(|i| {
                let shard = Shard::new(i, m).expect("index < modulus");
                let stream =
                    AsmStream::with_options(n, false, Some(shard)).expect("probed above");
                let mut pop = 0u64;
                let mut bad = 0u64;
                for a in stream {
                    let idx = HostIndex::new(&a);
                    if !compiled.iter().all(|p| idx.find(p).is_none()) {
                        continue;
                    }
                    pop += 1;
                    if !check(&a) {
                        bad += 1;
                    }
                }
                (pop, bad)
            })
            .reduce(|| (0, 0), |x, y| (x.0 + y.0, x.1 + y.1));
        lines.push(StructureLine {
            n,
            population,
            counterexamples,
        });
    }
    Ok(StructureReport {
        lemma: name.to_string(),
        lines,
    })
}
