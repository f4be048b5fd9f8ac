//! Truncated power series with exact rational coefficients, and the
//! exponential generating functions of the counting results built on them.
//!
//! A series of order N carries the coefficients of x^0 … x^N. Binary
//! operations on series of different orders truncate to the smaller one.
//! Nothing in this module uses floating point.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::combinat::factorials;
use crate::error::{Error, Result};

/// Truncation order used when callers do not pick one.
pub const DEFAULT_ORDER: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerSeries {
    coeffs: Vec<BigRational>,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl PowerSeries {
    /// Pads with zeros or truncates so that exactly `order + 1` coefficients remain.
    pub fn new(mut coeffs: Vec<BigRational>, order: usize) -> Self {
        coeffs.resize(order + 1, BigRational::zero());
        Self { coeffs }
    }

    pub fn from_integers(coeffs: &[i64], order: usize) -> Self {
        Self::new(coeffs.iter().map(|&c| rat(c)).collect(), order)
    }

    pub fn zero(order: usize) -> Self {
        Self::new(Vec::new(), order)
    }

    pub fn constant(c: BigRational, order: usize) -> Self {
        Self::new(vec![c], order)
    }

    pub fn one(order: usize) -> Self {
        Self::constant(BigRational::one(), order)
    }

    /// The series `x`.
    pub fn x(order: usize) -> Self {
        Self::from_integers(&[0, 1], order)
    }

    /// 1 / (1 − c·x).
    pub fn geometric(ratio: i64, order: usize) -> Self {
        let mut coeffs = Vec::with_capacity(order + 1);
        let mut cur = BigInt::one();
        for _ in 0..=order {
            coeffs.push(BigRational::from_integer(cur.clone()));
            cur *= ratio;
        }
        Self { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Coefficient of x^n (zero past the truncation order).
    pub fn coeff(&self, n: usize) -> BigRational {
        self.coeffs.get(n).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn constant_term(&self) -> &BigRational {
        &self.coeffs[0]
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::new(self.coeffs[..=order.min(self.order())].to_vec(), order)
    }

    /// Coefficients as `(numerator, denominator)` pairs, denominator > 0.
    pub fn to_pairs(&self) -> Vec<(BigInt, BigInt)> {
        self.coeffs
            .iter()
            .map(|c| (c.numer().clone(), c.denom().clone()))
            .collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        Self {
            coeffs: (0..=order).map(|i| &self.coeffs[i] + &other.coeffs[i]).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&rat(-1)))
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Cauchy product truncated at the smaller order.
    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let coeffs = (0..=order)
            .map(|n| {
                (0..=n)
                    .filter(|&k| !self.coeffs[k].is_zero() && !other.coeffs[n - k].is_zero())
                    .fold(BigRational::zero(), |acc, k| {
                        acc + &self.coeffs[k] * &other.coeffs[n - k]
                    })
            })
            .collect();
        Self { coeffs }
    }

    /// `q` with `q · divisor = self` through the truncation order.
    pub fn div(&self, divisor: &Self) -> Result<Self> {
        let b0 = divisor.constant_term();
        if b0.is_zero() {
            return Err(Error::SingularDivision);
        }
        let order = self.order().min(divisor.order());
        let mut q: Vec<BigRational> = Vec::with_capacity(order + 1);
        for n in 0..=order {
            let mut acc = self.coeffs[n].clone();
            for k in 1..=n {
                if !divisor.coeffs[k].is_zero() {
                    acc -= &divisor.coeffs[k] * &q[n - k];
                }
            }
            q.push(acc / b0);
        }
        Ok(Self { coeffs: q })
    }

    /// exp of a series with zero constant term, via n·f_n = Σ k·a_k·f_{n−k}.
    pub fn exp(&self) -> Result<Self> {
        if !self.constant_term().is_zero() {
            return Err(Error::Domain(
                "exp needs a series with zero constant term".into(),
            ));
        }
        let order = self.order();
        let mut f: Vec<BigRational> = Vec::with_capacity(order + 1);
        f.push(BigRational::one());
        for n in 1..=order {
            let mut acc = BigRational::zero();
            for k in 1..=n {
                if !self.coeffs[k].is_zero() {
                    acc += &self.coeffs[k] * &f[n - k] * rat(k as i64);
                }
            }
            f.push(acc / rat(n as i64));
        }
        Ok(Self { coeffs: f })
    }

    /// log of a series with constant term 1, via g' = a'/a.
    pub fn log(&self) -> Result<Self> {
        if !self.constant_term().is_one() {
            return Err(Error::Domain(
                "log needs a series with constant term 1".into(),
            ));
        }
        let order = self.order();
        let mut g: Vec<BigRational> = Vec::with_capacity(order + 1);
        g.push(BigRational::zero());
        for n in 1..=order {
            let mut acc = &self.coeffs[n] * rat(n as i64);
            for k in 1..n {
                if !self.coeffs[n - k].is_zero() {
                    acc -= &g[k] * &self.coeffs[n - k] * rat(k as i64);
                }
            }
            g.push(acc / rat(n as i64));
        }
        Ok(Self { coeffs: g })
    }

    /// `self^e` for rational `e`, defined as exp(e · log self).
    pub fn pow_rational(&self, e: &BigRational) -> Result<Self> {
        if !self.constant_term().is_one() {
            return Err(Error::Domain(
                "rational power needs a series with constant term 1".into(),
            ));
        }
        self.log()?.scale(e).exp()
    }

    /// Term-by-term antiderivative with zero constant term. The order is
    /// kept, so the input's x^N coefficient (which would land on x^(N+1))
    /// is dropped.
    pub fn integrate(&self) -> Self {
        let order = self.order();
        let mut coeffs = Vec::with_capacity(order + 1);
        coeffs.push(BigRational::zero());
        for n in 1..=order {
            coeffs.push(&self.coeffs[n - 1] / rat(n as i64));
        }
        Self { coeffs }
    }

    /// Term-by-term derivative; the result has order N − 1 (order 0 stays 0).
    pub fn derivative(&self) -> Self {
        let order = self.order();
        if order == 0 {
            return Self::zero(0);
        }
        Self {
            coeffs: (1..=order)
                .map(|n| &self.coeffs[n] * rat(n as i64))
                .collect(),
        }
    }
}

impl Add for &PowerSeries {
    type Output = PowerSeries;
    fn add(self, rhs: Self) -> PowerSeries {
        PowerSeries::add(self, rhs)
    }
}

impl Sub for &PowerSeries {
    type Output = PowerSeries;
    fn sub(self, rhs: Self) -> PowerSeries {
        PowerSeries::sub(self, rhs)
    }
}

impl Mul for &PowerSeries {
    type Output = PowerSeries;
    fn mul(self, rhs: Self) -> PowerSeries {
        PowerSeries::mul(self, rhs)
    }
}

impl Neg for &PowerSeries {
    type Output = PowerSeries;
    fn neg(self) -> PowerSeries {
        self.scale(&rat(-1))
    }
}

impl fmt::Display for PowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sep = match (first, c.is_negative()) {
                (true, false) => "",
                (true, true) => "-",
                (false, false) => " + ",
                (false, true) => " - ",
            };
            let a = c.abs();
            let mag = if a.is_integer() {
                a.numer().to_string()
            } else {
                format!("{}/{}", a.numer(), a.denom())
            };
            match n {
                0 => write!(f, "{sep}{mag}")?,
                1 => write!(f, "{sep}{mag}*x")?,
                _ => write!(f, "{sep}{mag}*x^{n}")?,
            }
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(x^{})", self.order() + 1)
    }
}

/// n!·[x^n] f for n = 0..=nmax. Each value must be a non-negative integer.
pub fn egf_to_counts(f: &PowerSeries, nmax: usize) -> Result<Vec<BigUint>> {
    if nmax > f.order() {
        return Err(Error::Domain(format!(
            "nmax {nmax} exceeds the series order {}",
            f.order()
        )));
    }
    let facts = factorials(nmax);
    (0..=nmax)
        .map(|n| {
            let v = &f.coeffs[n] * BigRational::from_integer(BigInt::from(facts[n].clone()));
            if !v.is_integer() || v.is_negative() {
                return Err(Error::Integrality {
                    n,
                    value: v.to_string(),
                });
            }
            let (sign, mag) = v.to_integer().into_parts();
            debug_assert_ne!(sign, Sign::Minus);
            Ok(mag)
        })
        .collect()
}

fn sign_bound_as_i64(r: u32) -> i64 {
    r as i64
}

/// d_r(x) = e^{x/(1−(r−1)x)} / (1−(r−1)x), the EGF of d_r(n).
pub fn egf_d(r: u32, order: usize) -> Result<PowerSeries> {
    if r == 0 {
        return Err(Error::Domain("r must be at least 1".into()));
    }
    let g = PowerSeries::geometric(sign_bound_as_i64(r) - 1, order);
    let inner = PowerSeries::x(order).mul(&g);
    Ok(inner.exp()?.mul(&g))
}

/// EGF of |E_n^r(T)| for T = {(1^b, 2^{a_j}) : j = 1..l}:
/// ((1−(r−l)x) / (1−(r−1)x)^l)^{1/(l−1)} for l ≥ 2, and d_r(x) for l = 1.
pub fn egf_chain(r: u32, l: u32, order: usize) -> Result<PowerSeries> {
    if l == 0 || l > r {
        return Err(Error::Domain(format!("chain length {l} outside 1..={r}")));
    }
    if l == 1 {
        return egf_d(r, order);
    }
    let (r, l) = (sign_bound_as_i64(r), l as i64);
    let numer = PowerSeries::from_integers(&[1, -(r - l)], order);
    let g = PowerSeries::geometric(r - 1, order);
    let denom_inv = (1..l).fold(g.clone(), |acc, _| acc.mul(&g));
    let base = numer.mul(&denom_inv);
    base.pow_rational(&BigRational::new(BigInt::one(), BigInt::from(l - 1)))
}

/// e^{1/(1−(r−1)x)} / (1−(r−1)x) divided by the constant e, i.e.
/// e^{(r−1)x/(1−(r−1)x)} / (1−(r−1)x). The undivided series has constant
/// term e, so it cannot be an EGF with count 1 at n = 0; this rational
/// rescaling is what gets compared against brute force.
pub fn egf_chain_unit_limit_over_e(r: u32, order: usize) -> Result<PowerSeries> {
    if r == 0 {
        return Err(Error::Domain("r must be at least 1".into()));
    }
    let c = sign_bound_as_i64(r) - 1;
    let g = PowerSeries::geometric(c, order);
    let inner = PowerSeries::from_integers(&[0, c], order).mul(&g);
    Ok(inner.exp()?.mul(&g))
}

/// (1 + ∫ d_{r−1}(x)² dx) / (1−(r−1)x).
pub fn egf_case3(r: u32, order: usize) -> Result<PowerSeries> {
    if r < 3 {
        return Err(Error::Domain(format!("case-3 series needs r >= 3, got {r}")));
    }
    let d = egf_d(r - 1, order)?;
    let numer = PowerSeries::one(order).add(&d.mul(&d).integrate());
    numer.div(&PowerSeries::from_integers(&[1, -(sign_bound_as_i64(r) - 1)], order))
}

/// (1 + ∫ d_{r−1}(x)/(1−(r−1)x) dx) / (1−(r−1)x).
pub fn egf_case4(r: u32, order: usize) -> Result<PowerSeries> {
    if r < 2 {
        return Err(Error::Domain(format!("case-4 series needs r >= 2, got {r}")));
    }
    let g = PowerSeries::geometric(sign_bound_as_i64(r) - 1, order);
    let d = egf_d(r - 1, order)?;
    let numer = PowerSeries::one(order).add(&d.mul(&g).integrate());
    Ok(numer.mul(&g))
}

/// n!·r^n: 1/(1 − r x).
pub fn egf_unrestricted(r: u32, order: usize) -> PowerSeries {
    PowerSeries::geometric(sign_bound_as_i64(r), order)
}

/// n!·(r−1)^n: 1/(1 − (r−1) x).
pub fn egf_length1(r: u32, order: usize) -> PowerSeries {
    PowerSeries::geometric(sign_bound_as_i64(r) - 1, order)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64], order: usize) -> PowerSeries {
        PowerSeries::from_integers(v, order)
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn counts(f: &PowerSeries, nmax: usize) -> Vec<u64> {
        egf_to_counts(f, nmax)
            .unwrap()
            .iter()
            .map(|c| c.try_into().unwrap())
            .collect()
    }

    #[test]
    fn arithmetic() {
        assert_eq!(ints(&[1, 1], 2).mul(&ints(&[1, -1], 2)), ints(&[1, 0, -1], 2));
        let f = ints(&[3, 1, 4], 2);
        assert_eq!(f.add(&PowerSeries::zero(2)), f);
        let g = PowerSeries::geometric(1, 3);
        assert_eq!(g.mul(&g), ints(&[1, 2, 3, 4], 3));
        // Mixed orders truncate to the smaller one.
        assert_eq!(ints(&[1, 1, 1], 2).add(&ints(&[1, 1], 1)).order(), 1);
    }

    #[test]
    fn division() {
        let one = PowerSeries::one(3);
        assert_eq!(one.div(&ints(&[1, -2], 3)).unwrap(), ints(&[1, 2, 4, 8], 3));
        assert_eq!(
            PowerSeries::one(2).div(&ints(&[1, -4], 2)).unwrap(),
            ints(&[1, 4, 16], 2)
        );
        let f = ints(&[2, -1, 5, 7], 3);
        assert_eq!(f.div(&f).unwrap(), PowerSeries::one(3));
        assert_eq!(one.div(&ints(&[0, 1], 3)), Err(Error::SingularDivision));
    }

    #[test]
    fn exp_and_log() {
        let e = PowerSeries::x(3).exp().unwrap();
        assert_eq!(
            e,
            PowerSeries::new(vec![q(1, 1), q(1, 1), q(1, 2), q(1, 6)], 3)
        );
        assert_eq!(PowerSeries::one(4).log().unwrap(), PowerSeries::zero(4));
        let f = PowerSeries::x(3).div(&ints(&[1, -1], 3)).unwrap().exp().unwrap();
        assert_eq!(
            f,
            PowerSeries::new(vec![q(1, 1), q(1, 1), q(3, 2), q(13, 6)], 3)
        );
        // Dividing by (1 − x) gives d_2.
        let d2 = f.div(&ints(&[1, -1], 3)).unwrap();
        assert_eq!(counts(&d2, 3), vec![1, 2, 7, 34]);

        assert!(ints(&[1, 1], 2).exp().is_err());
        assert!(ints(&[2, 1], 2).log().is_err());
    }

    #[test]
    fn rational_powers() {
        let a = ints(&[1, 3, -2], 4);
        assert_eq!(a.pow_rational(&q(1, 1)).unwrap(), a);
        let sq = ints(&[1, -2, 1], 3);
        assert_eq!(sq.pow_rational(&q(1, 2)).unwrap(), ints(&[1, -1], 3));
        let h = ints(&[1, 1], 6).pow_rational(&q(1, 2)).unwrap();
        assert_eq!(h.mul(&h), ints(&[1, 1], 6));
        assert!(ints(&[2, 1], 3).pow_rational(&q(1, 2)).is_err());
    }

    #[test]
    fn integration() {
        assert_eq!(PowerSeries::one(3).integrate(), ints(&[0, 1], 3));
        assert_eq!(ints(&[1, 2], 3).integrate(), ints(&[0, 1, 1], 3));
        // The top coefficient is lost.
        assert_eq!(ints(&[0, 0, 0, 9], 3).integrate(), PowerSeries::zero(3));
    }

    #[test]
    fn d_series() {
        assert_eq!(counts(&egf_d(1, 6).unwrap(), 6), vec![1; 7]);
        assert_eq!(counts(&egf_d(2, 5).unwrap(), 5), vec![1, 2, 7, 34, 209, 1546]);
        assert_eq!(counts(&egf_d(5, 3).unwrap(), 3)[3], 709);
    }

    #[test]
    fn chain_series() {
        assert_eq!(counts(&egf_chain(2, 2, 4).unwrap(), 4), vec![1, 2, 6, 24, 120]);
        assert!(egf_chain(3, 4, 4).is_err());
        assert!(egf_chain(3, 0, 4).is_err());
    }

    #[test]
    fn case_series() {
        assert_eq!(
            counts(&egf_case3(5, 5).unwrap(), 5),
            vec![1, 5, 48, 670, 12168, 270856]
        );
        assert_eq!(
            counts(&egf_case4(5, 5).unwrap(), 5),
            vec![1, 5, 48, 671, 12228, 273665]
        );
        assert!(egf_case3(2, 5).is_err());
        assert!(egf_case4(1, 5).is_err());
    }

    #[test]
    fn counts_of_elementary_series() {
        assert_eq!(counts(&PowerSeries::x(5).exp().unwrap(), 5), vec![1; 6]);
        assert_eq!(
            counts(&PowerSeries::geometric(1, 5), 5),
            vec![1, 1, 2, 6, 24, 120]
        );
        let half = PowerSeries::constant(q(1, 2), 2);
        assert!(matches!(egf_to_counts(&half, 2), Err(Error::Integrality { n: 0, .. })));
        assert!(egf_to_counts(&half, 3).is_err());
    }

    #[test]
    fn display() {
        let f = PowerSeries::new(vec![q(1, 1), q(-1, 2), q(0, 1), q(3, 1)], 3);
        assert_eq!(f.to_string(), "1 - 1/2*x + 3*x^3 + O(x^4)");
        assert_eq!(PowerSeries::zero(1).to_string(), "0 + O(x^2)");
    }
}
