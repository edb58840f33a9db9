//! Closed-form evaluators and exact identity verifiers for the
//! three-negative-ones enumeration, the skew-merged count, and the
//! binomial identity behind them.

pub mod series;

pub use series::PowerSeries;

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Pascal-triangle cache with the convention that C(a, b) is zero unless
/// a >= b >= 0. Negative or undersized arguments silently yield zero; the
/// summations below lean on that.
pub struct BinomialTable {
    rows: Vec<Vec<BigInt>>,
}

impl BinomialTable {
    pub fn new(max_a: usize) -> BinomialTable {
        let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(max_a + 1);
        for a in 0..=max_a {
            let mut row = vec![BigInt::one()];
            for b in 1..=a {
                let left = &rows[a - 1][b - 1];
                let right = if b < a { &rows[a - 1][b] } else { &BigInt::ZERO };
                row.push(left + right);
            }
            rows.push(row);
        }
        BinomialTable { rows }
    }

    pub fn get(&self, a: i64, b: i64) -> BigInt {
        if a < 0 || b < 0 || b > a {
            return BigInt::zero();
        }
        self.rows[a as usize][b as usize].clone()
    }
}

fn pow2(e: i64) -> BigInt {
    debug_assert!(e >= 0);
    BigInt::one() << (e as usize)
}

/// The closed form for the three-negative-ones count:
/// sum_{k=0}^{n-5} 2^{n-4-k} C(2k,k) - (n-2) 2^{n-5} for n >= 7, else 0.
pub fn thm14_closed(n: usize) -> BigInt {
    if n <= 6 {
        return BigInt::zero();
    }
    let n = n as i64;
    let t = BinomialTable::new(2 * (n as usize - 5));
    let mut acc = BigInt::zero();
    for k in 0..=(n - 5) {
        acc += pow2(n - 4 - k) * t.get(2 * k, k);
    }
    acc - BigInt::from(n - 2) * pow2(n - 5)
}

/// The raw triple sum from the enumeration argument (both row and column
/// cases, hence the factor 2).
pub fn thm14_triple_sum(n: usize) -> BigInt {
    let n = n as i64;
    if n < 7 {
        return BigInt::zero();
    }
    let t = BinomialTable::new(n as usize);
    let mut acc = BigInt::zero();
    for i in 4..=(n - 3) {
        for a in 1..=(n - 6) {
            for j in 1..=a {
                acc += t.get(i - 2, j)
                    * t.get(n - i - 1, a + 1 - j)
                    * t.get(a - 1, j - 1)
                    * t.get(n - a - 6, i - j - 3);
            }
        }
    }
    acc * BigInt::from(2)
}

/// 1/sqrt(1-4z) expanded directly as sum C(2k,k) z^k.
fn central_binomial_series(order: usize) -> PowerSeries {
    let t = BinomialTable::new(2 * order);
    let coeffs = (0..=order)
        .map(|k| num_rational::BigRational::from_integer(t.get(2 * k as i64, k as i64)))
        .collect();
    PowerSeries::new(coeffs)
}

/// Coefficients z^0..z^N of
/// 2z^5 / ((1-2z) sqrt(1-4z)) - 2z^5 (1-2z^2) / (1-2z)^2.
pub fn thm14_gf_coefficients(order: usize) -> Vec<BigInt> {
    let inv_1m2z = PowerSeries::from_i64(&[1, -2], order).inverse();
    let term1 = central_binomial_series(order)
        .mul(&inv_1m2z)
        .scale(&num_rational::BigRational::from_integer(BigInt::from(2)))
        .shift(5);
    let term2 = PowerSeries::from_i64(&[2, 0, -4], order)
        .mul(&inv_1m2z.mul(&inv_1m2z))
        .shift(5);
    term1.sub(&term2).integer_coeffs()
}

/// The skew-merged permutation count C(2n,n) - sum_{m<n} 2^{n-m-1} C(2m,m).
pub fn skew_merged(n: usize) -> BigInt {
    let n = n as i64;
    let t = BinomialTable::new(2 * n as usize);
    let mut acc = t.get(2 * n, n);
    for m in 0..n {
        acc -= pow2(n - m - 1) * t.get(2 * m, m);
    }
    acc
}

/// True iff the expansion of (1-3z)/((1-2z) sqrt(1-4z)) matches
/// `skew_merged` for n = 0..=N.
pub fn skew_merged_gf_check(order: usize) -> bool {
    let gf = PowerSeries::from_i64(&[1, -3], order)
        .mul(&PowerSeries::from_i64(&[1, -2], order).inverse())
        .mul(&central_binomial_series(order));
    gf.integer_coeffs()
        .iter()
        .enumerate()
        .all(|(n, c)| c == &skew_merged(n))
}

/// n!/6 * C(n,3): ASMs with exactly one -1.
pub fn one_negative_formula(n: usize) -> BigInt {
    let t = BinomialTable::new(n);
    let mut fact = BigInt::one();
    for i in 2..=n {
        fact *= BigInt::from(i);
    }
    let c = t.get(n as i64, 3);
    if c.is_zero() {
        return BigInt::zero();
    }
    fact * c / BigInt::from(6)
}

/// n!/6 * C(n,3) + n!: ASMs with at most one -1.
pub fn at_most_one_formula(n: usize) -> BigInt {
    let mut fact = BigInt::one();
    for i in 2..=n {
        fact *= BigInt::from(i);
    }
    one_negative_formula(n) + fact
}

/// The left side of the reindexed identity,
/// sum_{i,a<=n, j<=a} C(i+2,j+1) C(n-i+2,a-j+1) C(a,j) C(n-a,i-j).
pub fn reindexed_lhs(n: usize) -> BigInt {
    let n = n as i64;
    let t = BinomialTable::new(n as usize + 2);
    let mut acc = BigInt::zero();
    for i in 0..=n {
        for a in 0..=n {
            for j in 0..=a {
                acc += t.get(i + 2, j + 1)
                    * t.get(n - i + 2, a - j + 1)
                    * t.get(a, j)
                    * t.get(n - a, i - j);
            }
        }
    }
    acc
}

/// The right side of the reindexed identity,
/// sum_{k=0}^{n+2} 2^{n+2-k} C(2k,k) - (n+5) 2^{n+1}.
pub fn reindexed_rhs(n: usize) -> BigInt {
    let n = n as i64;
    let t = BinomialTable::new(2 * (n as usize + 2));
    let mut acc = BigInt::zero();
    for k in 0..=(n + 2) {
        acc += pow2(n + 2 - k) * t.get(2 * k, k);
    }
    acc - BigInt::from(n + 5) * pow2(n + 1)
}

#[derive(Debug, Clone)]
pub struct IdentityLine {
    pub n: usize,
    pub lhs: BigInt,
    pub rhs: BigInt,
}

impl IdentityLine {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

#[derive(Debug, Clone)]
pub struct AppendixReport {
    /// Original identity: triple sum (with its factor of 2) against the
    /// closed form, per n.
    pub original: Vec<IdentityLine>,
    /// Reindexed identity for shifted n starting at 0 (original n minus 7,
    /// both sides halved relative to the original).
    pub reindexed: Vec<IdentityLine>,
}

impl AppendixReport {
    pub fn all_hold(&self) -> bool {
        self.original.iter().all(IdentityLine::holds)
            && self.reindexed.iter().all(IdentityLine::holds)
    }
}

/// Exact verification of the binomial identity: the original form for
/// n in [n_lo, n_hi] and the reindexed form for shifted n in
/// [n_lo - 7, n_hi - 7].
pub fn verify_appendix_identity(n_lo: usize, n_hi: usize) -> Result<AppendixReport> {
    if n_lo < 7 || n_lo > n_hi {
        return Err(Error::Parse(format!(
            "appendix identity needs 7 <= n_lo <= n_hi, got {n_lo}..{n_hi}"
        )));
    }
    let original = (n_lo..=n_hi)
        .map(|n| IdentityLine {
            n,
            lhs: thm14_triple_sum(n),
            rhs: thm14_closed(n),
        })
        .collect();
    let reindexed = (n_lo - 7..=n_hi - 7)
        .map(|n| IdentityLine {
            n,
            lhs: reindexed_lhs(n),
            rhs: reindexed_rhs(n),
        })
        .collect();
    Ok(AppendixReport {
        original,
        reindexed,
    })
}

/// Checks the generating-function route for the reindexed sum: after
/// multiplying the z^{-2}-shifted function through by z^2, the coefficient
/// of z^{n+2} of 1/((1-2z) sqrt(1-4z)) - (1-2z^2)/(1-2z)^2 must equal
/// `reindexed_lhs(n)` for n = 0..=N.
pub fn thm14_gf_vs_sum_check(order: usize) -> bool {
    let n = order + 2;
    let inv_1m2z = PowerSeries::from_i64(&[1, -2], n).inverse();
    let series = central_binomial_series(n).mul(&inv_1m2z).sub(
        &PowerSeries::from_i64(&[1, 0, -2], n).mul(&inv_1m2z.mul(&inv_1m2z)),
    );
    let coeffs = series.integer_coeffs();
    (0..=order).all(|k| coeffs[k + 2] == reindexed_lhs(k))
}
