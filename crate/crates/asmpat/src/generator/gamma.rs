use crate::core::asm::Asm;
use crate::core::perm::Permutation;
use crate::error::{Error, Result};
use num_bigint::BigUint;
use num_traits::{One, Zero};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GammaVariant {
    /// Identity corner blocks; the result classically avoids 321.
    Plain,
    /// Anti-identity corner blocks; the result classically avoids 123.
    Primed,
}

/// A size n with a permutation of size floor(n/3) to negate in the middle
/// block.
#[derive(Clone, Debug)]
pub struct GammaSpec {
    pub n: usize,
    pub pi: Permutation,
    pub variant: GammaVariant,
}

/// Builds the block construction embedding -pi into an ASM. For
/// n = 3k + r, the middle band carries identity (or anti-identity) blocks
/// flanking -pi, and the r extra rows and columns hold lone 1s at their
/// intersections.
pub fn gamma(spec: &GammaSpec) -> Result<Asm> {
    let n = spec.n;
    let k = n / 3;
    if k == 0 {
        return Err(Error::GammaTooSmall { n });
    }
    if spec.pi.len() != k {
        return Err(Error::GammaSizeMismatch {
            n,
            expected: k,
            got: spec.pi.len(),
        });
    }
    let r = n % 3;
    let primed = spec.variant == GammaVariant::Primed;
    // Column inside a corner/flank block for block-row t.
    let blk = |t: usize| if primed { k - 1 - t } else { t };

    let mut rows: Vec<Vec<i64>> = Vec::with_capacity(n);
    let outer = |rows: &mut Vec<Vec<i64>>| {
        for t in 0..k {
            let mut row = vec![0i64; n];
            row[k + blk(t)] = 1;
            rows.push(row);
        }
    };
    let middle = |rows: &mut Vec<Vec<i64>>| {
        for t in 0..k {
            let mut row = vec![0i64; n];
            row[blk(t)] = 1;
            row[k + spec.pi.image(t + 1) - 1] = -1;
            row[2 * k + blk(t)] = 1;
            rows.push(row);
        }
    };
    let unit = |rows: &mut Vec<Vec<i64>>, col: usize| {
        let mut row = vec![0i64; n];
        row[col] = 1;
        rows.push(row);
    };

    match (r, primed) {
        (0, _) => {
            outer(&mut rows);
            middle(&mut rows);
            outer(&mut rows);
        }
        (1, false) => {
            outer(&mut rows);
            middle(&mut rows);
            unit(&mut rows, 3 * k);
            outer(&mut rows);
        }
        (1, true) => {
            outer(&mut rows);
            unit(&mut rows, 3 * k);
            middle(&mut rows);
            outer(&mut rows);
        }
        (2, false) => {
            outer(&mut rows);
            middle(&mut rows);
            unit(&mut rows, 3 * k);
            unit(&mut rows, 3 * k + 1);
            outer(&mut rows);
        }
        (2, true) => {
            outer(&mut rows);
            unit(&mut rows, 3 * k + 1);
            unit(&mut rows, 3 * k);
            middle(&mut rows);
            outer(&mut rows);
        }
        _ => unreachable!(),
    }
    Asm::from_rows(&rows)
}

/// Direct sum of ASMs along the diagonal.
pub fn block_diagonal(blocks: &[Asm]) -> Result<Asm> {
    if blocks.is_empty() {
        return Err(Error::EmptyBlockList);
    }
    let n: usize = blocks.iter().map(|b| b.n()).sum();
    let mut rows = vec![vec![0i64; n]; n];
    let mut offset = 0;
    for b in blocks {
        for i in 0..b.n() {
            for j in 0..b.n() {
                rows[offset + i][offset + j] = b.get(i, j) as i64;
            }
        }
        offset += b.n();
    }
    Asm::from_rows(&rows)
}

/// Sum over compositions n_1 + ... + n_l = n of prod floor(n_i/3)!.
/// Counts the block-diagonal matrices assembled from the construction.
pub fn composition_count(n: usize) -> BigUint {
    let factorial = |m: usize| -> BigUint {
        let mut f = BigUint::one();
        for i in 2..=m {
            f *= BigUint::from(i);
        }
        f
    };
    // f[s] sums over compositions of s; appending a final part of size j
    // contributes f[s - j] * floor(j/3)!.
    let mut f = vec![BigUint::zero(); n + 1];
    f[0] = BigUint::one();
    for s in 1..=n {
        let mut acc = BigUint::zero();
        for j in 1..=s {
            acc += &f[s - j] * factorial(j / 3);
        }
        f[s] = acc;
    }
    f[n].clone()
}
