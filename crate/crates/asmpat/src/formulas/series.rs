use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// A truncated formal power series with exact rational coefficients
/// c_0..c_N. All arithmetic is exact up to the truncation order; binary
/// operations truncate to the shorter operand.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PowerSeries {
    coeffs: Vec<BigRational>,
}

impl PowerSeries {
    pub fn new(coeffs: Vec<BigRational>) -> PowerSeries {
        assert!(!coeffs.is_empty(), "a series needs at least a constant term");
        PowerSeries { coeffs }
    }

    /// A polynomial `coeffs` padded with zeros up to truncation order.
    pub fn from_i64(coeffs: &[i64], order: usize) -> PowerSeries {
        let mut v: Vec<BigRational> = coeffs
            .iter()
            .take(order + 1)
            .map(|&c| BigRational::from_integer(BigInt::from(c)))
            .collect();
        v.resize(order + 1, BigRational::zero());
        PowerSeries { coeffs: v }
    }

    pub fn zero(order: usize) -> PowerSeries {
        PowerSeries {
            coeffs: vec![BigRational::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> PowerSeries {
        let mut s = Self::zero(order);
        s.coeffs[0] = BigRational::one();
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> &BigRational {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Integer coefficients; panics if any coefficient has a denominator.
    pub fn integer_coeffs(&self) -> Vec<BigInt> {
        self.coeffs
            .iter()
            .map(|c| {
                assert!(c.is_integer(), "coefficient {c} is not an integer");
                c.to_integer()
            })
            .collect()
    }

    pub fn add(&self, other: &PowerSeries) -> PowerSeries {
        let n = self.order().min(other.order());
        PowerSeries {
            coeffs: (0..=n).map(|i| &self.coeffs[i] + &other.coeffs[i]).collect(),
        }
    }

    pub fn sub(&self, other: &PowerSeries) -> PowerSeries {
        let n = self.order().min(other.order());
        PowerSeries {
            coeffs: (0..=n).map(|i| &self.coeffs[i] - &other.coeffs[i]).collect(),
        }
    }

    pub fn mul(&self, other: &PowerSeries) -> PowerSeries {
        let n = self.order().min(other.order());
        let mut coeffs = vec![BigRational::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(n + 1 - i) {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        PowerSeries { coeffs }
    }

    pub fn scale(&self, k: &BigRational) -> PowerSeries {
        PowerSeries {
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    /// Multiplication by z^k, dropping coefficients past the order.
    pub fn shift(&self, k: usize) -> PowerSeries {
        let n = self.order();
        let mut coeffs = vec![BigRational::zero(); n + 1];
        for i in k..=n {
            coeffs[i] = self.coeffs[i - k].clone();
        }
        PowerSeries { coeffs }
    }

    /// Multiplicative inverse; requires a nonzero constant term.
    pub fn inverse(&self) -> PowerSeries {
        assert!(!self.coeffs[0].is_zero(), "inverse needs a unit constant term");
        let n = self.order();
        let mut inv = vec![BigRational::zero(); n + 1];
        let c0 = self.coeffs[0].recip();
        inv[0] = c0.clone();
        for m in 1..=n {
            let mut acc = BigRational::zero();
            for k in 1..=m {
                acc += &self.coeffs[k] * &inv[m - k];
            }
            inv[m] = -acc * &c0;
        }
        PowerSeries { coeffs: inv }
    }

    /// Square root of a series with constant term 1.
    pub fn sqrt(&self) -> PowerSeries {
        assert!(self.coeffs[0].is_one(), "sqrt needs constant term 1");
        let n = self.order();
        let mut root = vec![BigRational::zero(); n + 1];
        root[0] = BigRational::one();
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        for m in 1..=n {
            let mut acc = self.coeffs[m].clone();
            for k in 1..m {
                acc -= &root[k] * &root[m - k];
            }
            root[m] = acc * &half;
        }
        PowerSeries { coeffs: root }
    }

    /// Inverse square root of a series with constant term 1.
    pub fn invsqrt(&self) -> PowerSeries {
        self.sqrt().inverse()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn geometric_series_inverse() {
        let s = PowerSeries::from_i64(&[1, -2], 8).inverse();
        for k in 0..=8 {
            assert_eq!(s.coeff(k), &rat(1i64 << k));
        }
        assert_eq!(
            s.mul(&PowerSeries::from_i64(&[1, -2], 8)),
            PowerSeries::one(8)
        );
    }

    #[test]
    fn invsqrt_of_1_minus_4z_is_central_binomials() {
        let s = PowerSeries::from_i64(&[1, -4], 10).invsqrt();
        let expected = [1i64, 2, 6, 20, 70, 252, 924, 3432, 12870, 48620, 184756];
        for (k, &c) in expected.iter().enumerate() {
            assert_eq!(s.coeff(k), &rat(c), "k = {k}");
        }
        // (invsqrt(f))^2 * f = 1
        let f = PowerSeries::from_i64(&[1, -4], 10);
        assert_eq!(s.mul(&s).mul(&f), PowerSeries::one(10));
    }

    #[test]
    fn sqrt_squares_back() {
        let f = PowerSeries::from_i64(&[1, 3, -5, 7], 12);
        let r = f.sqrt();
        assert_eq!(r.mul(&r), f);
    }

    #[test]
    fn shift_moves_coefficients() {
        let s = PowerSeries::from_i64(&[1, 2, 3], 5).shift(2);
        assert_eq!(s.coeff(0), &rat(0));
        assert_eq!(s.coeff(2), &rat(1));
        assert_eq!(s.coeff(4), &rat(3));
    }
}
