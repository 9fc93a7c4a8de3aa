//! Truncated formal power series in `q` over exact rationals, plus a
//! bivariate extension in `(q, t)`.
//!
//! A [`TruncatedSeries`] knows its coefficients for `q^0 .. q^N` and nothing
//! beyond; arithmetic propagates the order as the minimum of the operand
//! orders so that no coefficient is ever reported that was not actually
//! computed. All scalars are arbitrary-precision rationals; there is no
//! floating point anywhere in this module.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{One, Signed, Zero};
use std::fmt;

use crate::{Error, Result};

/// Exact rational scalar used for every series coefficient.
pub type Coeff = BigRational;

pub fn rat(n: i64) -> Coeff {
    BigRational::from_integer(BigInt::from(n))
}

/// A formal power series in `q` truncated at a known order.
///
/// `coeffs[n]` is the coefficient of `q^n`, for `0 <= n <= order`.
#[derive(Clone, Debug)]
pub struct TruncatedSeries {
    order: usize,
    coeffs: Vec<Coeff>,
}

impl TruncatedSeries {
    pub fn zero(order: usize) -> Self {
        Self { order, coeffs: vec![Coeff::zero(); order + 1] }
    }

    pub fn one(order: usize) -> Self {
        Self::monomial(Coeff::one(), 0, order)
    }

    /// The series `c * q^n` at the given order.
    pub fn monomial(c: Coeff, n: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if n <= order {
            s.coeffs[n] = c;
        }
        s
    }

    pub fn from_coeffs(coeffs: Vec<Coeff>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least the q^0 coefficient");
        Self { order: coeffs.len() - 1, coeffs }
    }

    /// Polynomial with the given integer coefficients (ascending powers),
    /// truncated or zero-padded to `order`.
    pub fn from_ints(ints: &[i64], order: usize) -> Self {
        let mut s = Self::zero(order);
        for (n, &c) in ints.iter().enumerate() {
            if n <= order {
                s.coeffs[n] = rat(c);
            }
        }
        s
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeff(&self, n: usize) -> &Coeff {
        assert!(
            n <= self.order,
            "coefficient q^{n} requested from a series of order {}",
            self.order
        );
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[Coeff] {
        &self.coeffs
    }

    /// Index of the lowest nonzero coefficient, if any.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.valuation().is_none()
    }

    /// Restrict to a lower order. Raising the order would fabricate
    /// coefficients, so it is rejected.
    pub fn truncate(&self, order: usize) -> Self {
        assert!(
            order <= self.order,
            "cannot extend a series of order {} to order {order}",
            self.order
        );
        Self { order, coeffs: self.coeffs[..=order].to_vec() }
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.order.min(other.order);
        let coeffs = (0..=order).map(|n| &self.coeffs[n] + &other.coeffs[n]).collect();
        Self { order, coeffs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let order = self.order.min(other.order);
        let coeffs = (0..=order).map(|n| &self.coeffs[n] - &other.coeffs[n]).collect();
        Self { order, coeffs }
    }

    pub fn neg(&self) -> Self {
        Self { order: self.order, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn scalar_mul(&self, c: &Coeff) -> Self {
        Self { order: self.order, coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// Cauchy product truncated at the minimum operand order.
    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order.min(other.order);
        let mut coeffs = vec![Coeff::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(order + 1 - i) {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] += a * b;
            }
        }
        Self { order, coeffs }
    }

    /// Formal derivative d/dq; the order drops by one.
    pub fn derivative(&self) -> Self {
        assert!(self.order >= 1, "cannot differentiate an order-0 series");
        let order = self.order - 1;
        let coeffs = (0..=order)
            .map(|n| &self.coeffs[n + 1] * rat((n + 1) as i64))
            .collect();
        Self { order, coeffs }
    }

    /// Multiply by `q^k` (order is preserved; top coefficients fall off).
    pub fn shift_up(&self, k: usize) -> Self {
        let mut coeffs = vec![Coeff::zero(); self.order + 1];
        for n in k..=self.order {
            coeffs[n] = self.coeffs[n - k].clone();
        }
        Self { order: self.order, coeffs }
    }

    /// Divide by `q^k`; errors if any of the low-order coefficients are
    /// nonzero. The order drops by `k`.
    pub fn shift_down(&self, k: usize) -> Result<Self> {
        if k == 0 {
            return Ok(self.clone());
        }
        if self.order < k {
            return Err(Error::Series(format!(
                "cannot cancel q^{k} from a series of order {}",
                self.order
            )));
        }
        if self.coeffs[..k].iter().any(|c| !c.is_zero()) {
            return Err(Error::SeriesDivision);
        }
        Ok(Self { order: self.order - k, coeffs: self.coeffs[k..].to_vec() })
    }

    /// Series division. Requires either an invertible divisor (nonzero
    /// constant term) or a dividend of valuation at least the divisor's,
    /// in which case the common power of `q` is cancelled first.
    pub fn div(&self, other: &Self) -> Result<Self> {
        let vb = other.valuation().ok_or(Error::SeriesDivision)?;
        if vb == 0 {
            return Ok(self.div_unit(other));
        }
        match self.valuation() {
            // The zero series divided by anything nonzero is zero.
            None => Ok(Self::zero(self.order.min(other.order).saturating_sub(vb))),
            Some(va) if va >= vb => {
                let a = self.shift_down(vb)?;
                let b = other.shift_down(vb)?;
                Ok(a.div_unit(&b))
            }
            Some(_) => Err(Error::SeriesDivision),
        }
    }

    /// Long division by a series with nonzero constant term.
    fn div_unit(&self, other: &Self) -> Self {
        let order = self.order.min(other.order);
        debug_assert!(!other.coeffs[0].is_zero());
        let mut out = vec![Coeff::zero(); order + 1];
        for n in 0..=order {
            let mut acc = self.coeffs[n].clone();
            for k in 0..n {
                if !out[k].is_zero() && !other.coeffs[n - k].is_zero() {
                    acc -= &out[k] * &other.coeffs[n - k];
                }
            }
            out[n] = acc / &other.coeffs[0];
        }
        Self { order, coeffs: out }
    }

    /// Multiplicative inverse of a series with nonzero constant term.
    pub fn inverse(&self) -> Result<Self> {
        if self.coeffs[0].is_zero() {
            return Err(Error::SeriesDivision);
        }
        Ok(Self::one(self.order).div_unit(self))
    }

    /// Expansion of `1/(1 - q^k)`: coefficient of `q^n` is 1 iff `k | n`.
    pub fn geom(k: usize, order: usize) -> Result<Self> {
        if k < 1 {
            return Err(Error::InvalidArgument("geom requires k >= 1".into()));
        }
        let mut s = Self::zero(order);
        let mut n = 0;
        while n <= order {
            s.coeffs[n] = Coeff::one();
            n += k;
        }
        Ok(s)
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Self::one(self.order);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Exact evaluation at a rational point (used by tests and by the
    /// truncation oracle for the certified evaluator).
    pub fn eval(&self, x: &Coeff) -> Coeff {
        let mut acc = Coeff::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Coefficients as exact-rational strings ("p/q" or plain integers).
    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(rational_string).collect()
    }
}

/// Equality compares up to the common order only.
impl PartialEq for TruncatedSeries {
    fn eq(&self, other: &Self) -> bool {
        let order = self.order.min(other.order);
        self.coeffs[..=order] == other.coeffs[..=order]
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if first {
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let a = if first || !c.is_negative() { c.clone() } else { -c };
            match n {
                0 => write!(f, "{a}")?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{a}*")?;
                    }
                    if n == 1 {
                        write!(f, "q")?;
                    } else {
                        write!(f, "q^{n}")?;
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(q^{})", self.order + 1)
    }
}

pub fn rational_string(c: &Coeff) -> String {
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// A truncated series in `q` and `t`. `coeffs[n][k]` is the coefficient of
/// `q^n t^k` with `0 <= n, k <= order`.
///
/// Counting series stored here are triangular (`k <= n`, since a column's
/// height never exceeds the area), but intermediate products of the
/// functional-equation kernels are not, so the full rectangle is kept.
#[derive(Clone, Debug)]
pub struct BivariateSeries {
    order: usize,
    coeffs: Vec<Vec<Coeff>>,
}

impl BivariateSeries {
    pub fn zero(order: usize) -> Self {
        Self { order, coeffs: vec![vec![Coeff::zero(); order + 1]; order + 1] }
    }

    /// `c * q^n t^k` at the given order.
    pub fn monomial(c: Coeff, n: usize, k: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if n <= order && k <= order {
            s.coeffs[n][k] = c;
        }
        s
    }

    pub fn one(order: usize) -> Self {
        Self::monomial(Coeff::one(), 0, 0, order)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeff(&self, n: usize, k: usize) -> &Coeff {
        assert!(n <= self.order && k <= self.order);
        &self.coeffs[n][k]
    }

    pub fn set_coeff(&mut self, n: usize, k: usize, c: Coeff) {
        assert!(n <= self.order && k <= self.order);
        self.coeffs[n][k] = c;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|row| row.iter().all(|c| c.is_zero()))
    }

    /// True when every nonzero term has t-degree at most its q-degree.
    pub fn is_triangular(&self) -> bool {
        self.coeffs
            .iter()
            .enumerate()
            .all(|(n, row)| row.iter().enumerate().all(|(k, c)| k <= n || c.is_zero()))
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.order.min(other.order);
        let mut out = Self::zero(order);
        for n in 0..=order {
            for k in 0..=order {
                out.coeffs[n][k] = &self.coeffs[n][k] + &other.coeffs[n][k];
            }
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for row in &mut out.coeffs {
            for c in row.iter_mut() {
                *c = -&*c;
            }
        }
        out
    }

    pub fn scalar_mul(&self, c: &Coeff) -> Self {
        let mut out = self.clone();
        for row in &mut out.coeffs {
            for a in row.iter_mut() {
                *a = &*a * c;
            }
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order.min(other.order);
        let mut out = Self::zero(order);
        for n1 in 0..=order {
            for k1 in 0..=order {
                let a = &self.coeffs[n1][k1];
                if a.is_zero() {
                    continue;
                }
                for n2 in 0..=(order - n1) {
                    for k2 in 0..=(order - k1) {
                        let b = &other.coeffs[n2][k2];
                        if b.is_zero() {
                            continue;
                        }
                        out.coeffs[n1 + n2][k1 + k2] += a * b;
                    }
                }
            }
        }
        out
    }

    /// Multiply by a univariate series in `q` (t-degree 0).
    pub fn mul_univariate(&self, s: &TruncatedSeries) -> Self {
        let order = self.order.min(s.order());
        let mut out = Self::zero(order);
        for (m, b) in s.coeffs().iter().enumerate().take(order + 1) {
            if b.is_zero() {
                continue;
            }
            for n in 0..=(order - m) {
                for k in 0..=order {
                    let a = &self.coeffs[n][k];
                    if !a.is_zero() {
                        out.coeffs[n + m][k] += a * b;
                    }
                }
            }
        }
        out
    }

    /// Multiply by the monomial `q^n t^k`.
    pub fn mul_monomial(&self, n: usize, k: usize) -> Self {
        let mut out = Self::zero(self.order);
        for n1 in 0..=self.order.saturating_sub(n) {
            for k1 in 0..=self.order.saturating_sub(k) {
                if !self.coeffs[n1][k1].is_zero() {
                    out.coeffs[n1 + n][k1 + k] = self.coeffs[n1][k1].clone();
                }
            }
        }
        out
    }

    /// Expansion of `1/(1 - q^a t^b)`.
    pub fn geom(a: usize, b: usize, order: usize) -> Result<Self> {
        if a < 1 {
            return Err(Error::InvalidArgument("bivariate geom requires a >= 1".into()));
        }
        let mut s = Self::zero(order);
        let mut n = 0;
        let mut k = 0;
        while n <= order && k <= order {
            s.coeffs[n][k] = Coeff::one();
            n += a;
            k += b;
            if b == 0 && k == 0 && a == 0 {
                break;
            }
        }
        Ok(s)
    }

    /// Set `t = 1`: sum each row.
    pub fn specialize_t1(&self) -> TruncatedSeries {
        let coeffs = self
            .coeffs
            .iter()
            .map(|row| row.iter().fold(Coeff::zero(), |acc, c| acc + c))
            .collect();
        TruncatedSeries::from_coeffs(coeffs)
    }

    /// `(d/dt) at t = 1`: per power of `q`, the k-weighted row sum.
    pub fn dt_at_1(&self) -> TruncatedSeries {
        let coeffs = self
            .coeffs
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .fold(Coeff::zero(), |acc, (k, c)| acc + c * rat(k as i64))
            })
            .collect();
        TruncatedSeries::from_coeffs(coeffs)
    }

    /// For a series stored with `u -> q t` (so the t-degree tracks the
    /// u-degree), substitute `u -> q u`: each `u^k` term gains `q^k`.
    pub fn substitute_qu(&self) -> Self {
        let mut out = Self::zero(self.order);
        for n in 0..=self.order {
            for k in 0..=self.order {
                if !self.coeffs[n][k].is_zero() && n + k <= self.order {
                    out.coeffs[n + k][k] = self.coeffs[n][k].clone();
                }
            }
        }
        out
    }
}

impl PartialEq for BivariateSeries {
    fn eq(&self, other: &Self) -> bool {
        let order = self.order.min(other.order);
        (0..=order).all(|n| (0..=order).all(|k| self.coeffs[n][k] == other.coeffs[n][k]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(ints: &[i64], order: usize) -> TruncatedSeries {
        TruncatedSeries::from_ints(ints, order)
    }

    #[test]
    fn product_of_one_plus_q_and_one_minus_q() {
        let a = poly(&[1, 1], 10);
        let b = poly(&[1, -1], 10);
        assert_eq!(a.mul(&b), poly(&[1, 0, -1], 10));
    }

    #[test]
    fn derivative_of_q_cubed() {
        let a = poly(&[0, 0, 0, 1], 10);
        assert_eq!(a.derivative(), poly(&[0, 0, 3], 9));
    }

    #[test]
    fn geometric_series() {
        let g = TruncatedSeries::geom(1, 6).unwrap();
        assert_eq!(g, poly(&[1, 1, 1, 1, 1, 1, 1], 6));
        let g2 = TruncatedSeries::geom(2, 6).unwrap();
        assert_eq!(g2, poly(&[1, 0, 1, 0, 1, 0, 1], 6));
        assert!(TruncatedSeries::geom(0, 6).is_err());
    }

    #[test]
    fn geom_round_trip() {
        for k in 1..6 {
            let g = TruncatedSeries::geom(k, 30).unwrap();
            let mut one_minus = TruncatedSeries::one(30);
            one_minus = one_minus.sub(&TruncatedSeries::monomial(Coeff::one(), k, 30));
            assert_eq!(g.mul(&one_minus), TruncatedSeries::one(30));
        }
    }

    #[test]
    fn division_geometric() {
        let one = TruncatedSeries::one(8);
        let b = poly(&[1, -1], 8);
        let d = one.div(&b).unwrap();
        assert_eq!(d, TruncatedSeries::geom(1, 8).unwrap());
    }

    #[test]
    fn division_valuation_cancellation() {
        let a = poly(&[0, 0, 1], 8); // q^2
        let b = poly(&[0, 1], 8); // q
        let d = a.div(&b).unwrap();
        assert_eq!(d, poly(&[0, 1], 7));
    }

    #[test]
    fn division_by_higher_valuation_fails() {
        let a = poly(&[0, 1], 8);
        let b = poly(&[0, 0, 1], 8);
        assert!(a.div(&b).is_err());
    }

    #[test]
    fn equality_up_to_common_order() {
        let a = poly(&[1, 2, 3], 2);
        let b = poly(&[1, 2, 3, 99], 3);
        assert_eq!(a, b);
    }

    #[test]
    fn bivariate_specialize_and_dt() {
        // q t + q^2 t^2
        let mut s = BivariateSeries::zero(4);
        s.set_coeff(1, 1, Coeff::one());
        s.set_coeff(2, 2, Coeff::one());
        assert_eq!(s.specialize_t1(), poly(&[0, 1, 1], 4));
        // d/dt of q t^2 at t=1 is 2 q
        let s2 = BivariateSeries::monomial(Coeff::one(), 1, 2, 4);
        assert_eq!(s2.dt_at_1(), poly(&[0, 2], 4));
    }

    #[test]
    fn bivariate_geom_matches_univariate_at_t1() {
        let g = BivariateSeries::geom(2, 1, 12).unwrap();
        assert_eq!(g.specialize_t1(), TruncatedSeries::geom(2, 12).unwrap());
    }

    #[test]
    fn substitute_qu_shifts_u_degrees() {
        // u^2 stored as q^2 t^2 becomes q^4 t^2 under u -> qu... with the
        // extra q coming once per u power: q^2 t^2 -> q^{2+2} t^2.
        let s = BivariateSeries::monomial(Coeff::one(), 2, 2, 8);
        let shifted = s.substitute_qu();
        assert_eq!(shifted.coeff(4, 2), &Coeff::one());
        assert!(shifted.coeff(2, 2).is_zero());
    }
}
