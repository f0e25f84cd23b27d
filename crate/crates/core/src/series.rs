//! Truncated power series in one variable.
//!
//! A [`PowerSeries`] either is an exact polynomial (`known == None`) or is
//! known modulo `z^(N+1)` (`known == Some(N)`). Products track the usual
//! bound: if `a` is known to degree `Na` and has valuation `va`, then `a*b`
//! is known to degree `min(Na + vb, Nb + va)`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::scalar::{factorial, Coefficient, Rational};

#[derive(Clone, PartialEq)]
pub struct PowerSeries<C> {
    coeffs: Vec<C>,
    known: Option<usize>,
}

fn min_known(a: Option<usize>, b: Option<usize>) -> Option<usize> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

impl<C: Coefficient> PowerSeries<C> {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new(), known: None }
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn constant(c: C) -> Self {
        Self::polynomial(vec![c])
    }

    /// `z`.
    pub fn z() -> Self {
        Self::polynomial(vec![C::zero(), C::one()])
    }

    /// An exact polynomial with the given coefficients (constant term first).
    pub fn polynomial(coeffs: Vec<C>) -> Self {
        let mut s = Self { coeffs, known: None };
        s.trim();
        s
    }

    /// A series known to degree `known`; extra coefficients are dropped.
    pub fn truncated(coeffs: Vec<C>, known: usize) -> Self {
        let mut s = Self { coeffs, known: Some(known) };
        s.coeffs.truncate(known + 1);
        s.trim();
        s
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    /// Degree to which the coefficients are known; `None` for exact polynomials.
    pub fn known(&self) -> Option<usize> {
        self.known
    }

    pub fn is_exact(&self) -> bool {
        self.known.is_none()
    }

    /// Coefficient of `z^n`. For `n` past the known degree this returns zero;
    /// check [`known`](Self::known) first.
    pub fn coeff(&self, n: usize) -> C {
        self.coeffs.get(n).cloned().unwrap_or_else(C::zero)
    }

    /// Stored coefficients, constant term first, without trailing zeros.
    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    /// Known coefficients, padded with zeros up to the known degree.
    pub fn padded(&self) -> Vec<C> {
        let n = self.known.map(|k| k + 1).unwrap_or(self.coeffs.len());
        (0..n).map(|i| self.coeff(i)).collect()
    }

    /// Index of the first nonzero coefficient; the known degree plus one if
    /// none is known to be nonzero, `None` for the exact zero.
    pub fn valuation(&self) -> Option<usize> {
        match self.coeffs.iter().position(|c| !c.is_zero()) {
            Some(v) => Some(v),
            None => self.known.map(|k| k + 1),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Forgets coefficients past degree `n`.
    pub fn truncate(&self, n: usize) -> Self {
        let known = min_known(self.known, Some(n)).unwrap();
        Self::truncated(self.coeffs.clone(), known)
    }

    /// Whether the two series agree up to the smaller known degree, and up
    /// to `cap` if given.
    pub fn agrees_with(&self, other: &Self, cap: Option<usize>) -> bool {
        match min_known(min_known(self.known, other.known), cap) {
            Some(n) => (0..=n).all(|i| self.coeff(i) == other.coeff(i)),
            None => self.coeffs == other.coeffs,
        }
    }

    pub fn scale(&self, q: &Rational) -> Self {
        self.map_coeffs(|c| c.scale(q))
    }

    pub fn mul_coeff(&self, c: &C) -> Self {
        self.map_coeffs(|d| d.clone() * c.clone())
    }

    fn map_coeffs<F: FnMut(&C) -> C>(&self, f: F) -> Self {
        let mut s = Self { coeffs: self.coeffs.iter().map(f).collect(), known: self.known };
        s.trim();
        s
    }

    /// Applies a ring map to every coefficient.
    pub fn map<D: Coefficient, F: FnMut(&C) -> D>(&self, f: F) -> PowerSeries<D> {
        let mut s = PowerSeries { coeffs: self.coeffs.iter().map(f).collect(), known: self.known };
        s.trim();
        s
    }

    /// `z^k * self`.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self { coeffs: Vec::new(), known: self.known.map(|n| n + k) };
        }
        let mut coeffs = vec![C::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self { coeffs, known: self.known.map(|n| n + k) }
    }

    /// `self / z^k`, or `None` if a coefficient below `z^k` is nonzero or
    /// unknown.
    pub fn shift_down(&self, k: usize) -> Option<Self> {
        if self.coeffs.iter().take(k).any(|c| !c.is_zero()) {
            return None;
        }
        let known = match self.known {
            Some(n) if n < k => return None,
            Some(n) => Some(n - k),
            None => None,
        };
        let mut s = Self { coeffs: self.coeffs.iter().skip(k).cloned().collect(), known };
        s.trim();
        Some(s)
    }

    /// Formal derivative.
    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(n, c)| c.scale(&Rational::from_integer(BigInt::from(n))))
            .collect();
        let known = self.known.map(|n| n.saturating_sub(1));
        let mut s = Self { coeffs, known };
        if let Some(k) = known {
            s.coeffs.truncate(k + 1);
        }
        s.trim();
        s
    }

    /// `z * d/dz`; keeps the known degree.
    pub fn theta(&self) -> Self {
        let coeffs =
            self.coeffs.iter().enumerate().map(|(n, c)| c.scale(&Rational::from_integer(BigInt::from(n)))).collect();
        let mut s = Self { coeffs, known: self.known };
        s.trim();
        s
    }

    /// The primitive vanishing at 0.
    pub fn integral(&self) -> Self {
        let mut coeffs = vec![C::zero()];
        for (n, c) in self.coeffs.iter().enumerate() {
            coeffs.push(c.scale(&Rational::new(BigInt::one(), BigInt::from(n + 1))));
        }
        let mut s = Self { coeffs, known: self.known.map(|n| n + 1) };
        s.trim();
        s
    }

    /// `self / (1 - z)`: partial sums. An exact polynomial needs a degree
    /// cap since the quotient is infinite.
    pub fn div_one_minus_z(&self, cap: usize) -> Self {
        let n = min_known(self.known, Some(cap)).unwrap();
        let mut acc = C::zero();
        let mut coeffs = Vec::with_capacity(n + 1);
        for i in 0..=n {
            acc = acc + self.coeff(i);
            coeffs.push(acc.clone());
        }
        Self::truncated(coeffs, n)
    }

    /// `self(g(z))` for `g(0) = 0`, to degree `cap`.
    pub fn compose(&self, g: &Self, cap: usize) -> Self {
        assert!(g.coeff(0).is_zero(), "inner series must vanish at 0");
        let gv = g.valuation().unwrap_or(cap + 1).max(1);
        let own = self.known.map(|n| (n + 1) * gv - 1);
        let n = min_known(min_known(own, g.known), Some(cap)).unwrap();
        let mut result = Self::truncated(vec![], n);
        let mut power = Self::one().truncate(n);
        for k in 0..=n {
            if k * gv > n {
                break;
            }
            result = result + power.mul_coeff(&self.coeff(k)).truncate(n);
            power = (power * g.clone()).truncate(n);
        }
        result.truncate(n)
    }

    /// `exp(self)` for a series vanishing at 0, to degree `cap`.
    pub fn exp(&self, cap: usize) -> Self {
        let mut e = Self::zero();
        for k in 0..=cap {
            e = e + Self::constant(C::from_rational(&Rational::new(BigInt::one(), factorial(k as u64)))).shift_up(k);
        }
        e.truncate(cap).compose(self, cap)
    }

    /// Horner evaluation over the known coefficients.
    pub fn evaluate(&self, x: &C) -> C {
        let mut acc = C::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }
}

impl PowerSeries<Rational> {
    /// Multiplicative inverse for a nonzero constant term, to degree `cap`
    /// (or the known degree if smaller).
    pub fn inverse(&self, cap: usize) -> Option<Self> {
        let c0 = self.coeff(0);
        if c0.is_zero() {
            return None;
        }
        let c0_inv = c0.recip();
        let n = min_known(self.known, Some(cap)).unwrap();
        let mut out: Vec<Rational> = Vec::with_capacity(n + 1);
        out.push(c0_inv.clone());
        for k in 1..=n {
            let mut s = Rational::zero();
            for i in 1..=k {
                s += self.coeff(i) * &out[k - i];
            }
            out.push(-(s * &c0_inv));
        }
        Some(Self::truncated(out, n))
    }
}

impl<C: Coefficient> Add for PowerSeries<C> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let known = min_known(self.known, rhs.known);
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let len = known.map(|k| len.min(k + 1)).unwrap_or(len);
        let coeffs = (0..len).map(|i| self.coeff(i) + rhs.coeff(i)).collect();
        let mut s = Self { coeffs, known };
        s.trim();
        s
    }
}

impl<C: Coefficient> Neg for PowerSeries<C> {
    type Output = Self;
    fn neg(self) -> Self {
        self.map_coeffs(|c| -c.clone())
    }
}

impl<C: Coefficient> Sub for PowerSeries<C> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<C: Coefficient> Mul for PowerSeries<C> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let va = self.valuation();
        let vb = rhs.valuation();
        let known = match (self.known, rhs.known) {
            (None, None) => None,
            (Some(na), None) => Some(na + vb.unwrap_or(usize::MAX / 4)),
            (None, Some(nb)) => Some(nb + va.unwrap_or(usize::MAX / 4)),
            (Some(na), Some(nb)) => Some((na + vb.unwrap_or(0)).min(nb + va.unwrap_or(0))),
        };
        if self.is_zero() || rhs.is_zero() {
            return Self { coeffs: Vec::new(), known };
        }
        let mut len = self.coeffs.len() + rhs.coeffs.len() - 1;
        if let Some(k) = known {
            len = len.min(k + 1);
        }
        let mut coeffs = vec![C::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if i + j >= len {
                    break;
                }
                coeffs[i + j] = coeffs[i + j].clone() + a.clone() * b.clone();
            }
        }
        let mut s = Self { coeffs, known };
        s.trim();
        s
    }
}

impl<C: Coefficient> fmt::Debug for PowerSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "({c:?})z^{n}")?;
        }
        if first {
            f.write_str("0")?;
        }
        if let Some(k) = self.known {
            write!(f, " + O(z^{})", k + 1)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;

    type S = PowerSeries<Rational>;

    fn q(v: &[(i64, i64)]) -> Vec<Rational> {
        v.iter().map(|&(n, d)| ratio(n, d)).collect()
    }

    #[test]
    fn product_precision() {
        let a = S::truncated(q(&[(0, 1), (1, 1), (1, 1)]), 4);
        let b = S::truncated(q(&[(0, 1), (0, 1), (2, 1)]), 3);
        let c = a * b;
        assert_eq!(c.known(), Some((4 + 2).min(3 + 1)));
        assert_eq!(c.coeff(3), ratio(2, 1));
        assert_eq!(c.coeff(4), ratio(2, 1));
    }

    #[test]
    fn calculus() {
        let log1m = S::truncated((1..=6).map(|n| ratio(-1, n)).collect::<Vec<_>>(), 6).shift_up(1).truncate(6);
        // d/dz log(1-z) = -1/(1-z)
        let d = log1m.derivative();
        assert_eq!(d.padded(), q(&[(-1, 1); 6]));
        assert_eq!(d.integral().padded(), log1m.padded());
        assert_eq!(S::one().div_one_minus_z(3).padded(), q(&[(1, 1); 4]));
        assert_eq!(S::z().theta(), S::z());
    }

    #[test]
    fn inverse_and_compose() {
        let one_minus_z = S::polynomial(q(&[(1, 1), (-1, 1)]));
        assert_eq!(one_minus_z.inverse(5).unwrap().padded(), q(&[(1, 1); 6]));
        assert!(S::z().inverse(5).is_none());
        let e = S::z().exp(4);
        assert_eq!(e.padded(), q(&[(1, 1), (1, 1), (1, 2), (1, 6), (1, 24)]));
        // exp(z) - 1 composed into log(1+y) gives z back
        let log1p = S::truncated(
            (0..=6).map(|n| if n == 0 { ratio(0, 1) } else { ratio(if n % 2 == 1 { 1 } else { -1 }, n) }).collect(),
            6,
        );
        let y = S::z().exp(6) - S::one();
        assert_eq!(log1p.compose(&y, 6), S::z().truncate(6));
    }

    #[test]
    fn shifts() {
        let s = S::truncated(q(&[(0, 1), (0, 1), (3, 1)]), 5);
        let t = s.shift_down(2).unwrap();
        assert_eq!(t.known(), Some(3));
        assert_eq!(t.coeff(0), ratio(3, 1));
        assert!(s.shift_down(3).is_none());
        assert_eq!(t.shift_up(2), s);
    }

    #[test]
    fn f64_evaluation() {
        let li2: PowerSeries<f64> =
            PowerSeries::polynomial((0..80).map(|n| if n == 0 { 0.0 } else { 1.0 / (n * n) as f64 }).collect());
        let v = li2.evaluate(&0.5);
        let expect = std::f64::consts::PI.powi(2) / 12.0 - std::f64::consts::LN_2.powi(2) / 2.0;
        assert!((v - expect).abs() < 1e-12);
    }
}
