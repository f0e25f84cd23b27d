//! Elements of Q_p with absolute precision tracking.
//!
//! A [`PadicNumber`] stores `p^v * u + O(p^N)` with `u` a unit reduced modulo
//! `p^(N - v)`. Values that are zero modulo `p^N` carry no valuation. Every
//! arithmetic operation reports at most the precision that the inputs
//! justify: sums keep the smaller absolute precision, products and quotients
//! keep the smaller relative precision.

mod functions;

pub use functions::{exp_p, log_branch, log_principal, teichmuller};

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Rational;

/// An element of Q_p known modulo `p^precision`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PadicNumber {
    prime: u64,
    /// `None` when the value is zero modulo `p^precision`.
    valuation: Option<i64>,
    unit: BigInt,
    precision: i64,
}

/// The value the logarithm assigns to `p`; selects a branch of `log` on Q_p^x.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchParameter {
    pub a: PadicNumber,
}

impl BranchParameter {
    pub fn new(a: PadicNumber) -> Self {
        Self { a }
    }

    /// The Iwasawa branch, `log(p) = 0`.
    pub fn iwasawa(prime: u64, precision: i64) -> Result<Self> {
        Ok(Self { a: PadicNumber::zero(prime, precision)? })
    }
}

pub(crate) fn pow_p(prime: u64, k: i64) -> BigInt {
    debug_assert!(k >= 0);
    num_traits::pow(BigInt::from(prime), k as usize)
}

pub fn check_prime(p: u64) -> Result<()> {
    if p < 3 || p % 2 == 0 {
        return Err(Error::InvalidPrime(p));
    }
    let mut d = 3;
    while d * d <= p {
        if p % d == 0 {
            return Err(Error::InvalidPrime(p));
        }
        d += 2;
    }
    Ok(())
}

/// p-adic valuation of a nonzero integer.
pub fn valuation_of_integer(n: &BigInt, prime: u64) -> i64 {
    assert!(!n.is_zero(), "valuation of zero");
    let p = BigInt::from(prime);
    let mut n = n.clone();
    let mut v = 0;
    while (&n % &p).is_zero() {
        n /= &p;
        v += 1;
    }
    v
}

/// Largest `k` with `p^k <= n`, for `n >= 1`.
pub fn floor_log(n: u64, prime: u64) -> i64 {
    let mut k = 0;
    let mut acc = prime;
    while acc <= n {
        k += 1;
        acc = match acc.checked_mul(prime) {
            Some(a) => a,
            None => break,
        };
    }
    k
}

impl PadicNumber {
    /// Builds `p^valuation * unit + O(p^precision)`, pulling any factors of
    /// `p` out of `unit` and reducing it.
    fn normalized(prime: u64, mut valuation: i64, mut unit: BigInt, precision: i64) -> Self {
        let zero = |precision| PadicNumber { prime, valuation: None, unit: BigInt::zero(), precision };
        if unit.is_zero() || valuation >= precision {
            return zero(precision);
        }
        let modulus = pow_p(prime, precision - valuation);
        unit = unit.mod_floor(&modulus);
        if unit.is_zero() {
            return zero(precision);
        }
        let p = BigInt::from(prime);
        while (&unit % &p).is_zero() {
            unit /= &p;
            valuation += 1;
        }
        if valuation >= precision {
            return zero(precision);
        }
        let modulus = pow_p(prime, precision - valuation);
        unit = unit.mod_floor(&modulus);
        PadicNumber { prime, valuation: Some(valuation), unit, precision }
    }

    pub fn zero(prime: u64, precision: i64) -> Result<Self> {
        check_prime(prime)?;
        Ok(Self::normalized(prime, 0, BigInt::zero(), precision))
    }

    pub fn one(prime: u64, precision: i64) -> Result<Self> {
        Self::from_integer(prime, &BigInt::one(), precision)
    }

    pub fn from_integer(prime: u64, n: &BigInt, precision: i64) -> Result<Self> {
        check_prime(prime)?;
        Ok(Self::normalized(prime, 0, n.clone(), precision))
    }

    pub fn from_i64(prime: u64, n: i64, precision: i64) -> Result<Self> {
        Self::from_integer(prime, &BigInt::from(n), precision)
    }

    /// The rational `q` modulo `p^precision`.
    pub fn from_rational(prime: u64, q: &Rational, precision: i64) -> Result<Self> {
        check_prime(prime)?;
        if q.is_zero() {
            return Self::zero(prime, precision);
        }
        let vd = valuation_of_integer(q.denom(), prime);
        let den_unit = q.denom() / pow_p(prime, vd);
        let vn = valuation_of_integer(q.numer(), prime);
        let num_unit = q.numer() / pow_p(prime, vn);
        let v = vn - vd;
        if v >= precision {
            return Self::zero(prime, precision);
        }
        let modulus = pow_p(prime, precision - v);
        let inv = mod_inverse(&den_unit, &modulus).expect("denominator unit is invertible");
        Ok(Self::normalized(prime, v, num_unit * inv, precision))
    }

    /// `p^valuation * unit + O(p^precision)` from raw parts.
    pub fn from_parts(prime: u64, valuation: i64, unit: BigInt, precision: i64) -> Result<Self> {
        check_prime(prime)?;
        Ok(Self::normalized(prime, valuation, unit, precision))
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    /// Valuation, or `None` if the value is zero to precision.
    pub fn valuation(&self) -> Option<i64> {
        self.valuation
    }

    /// Unit part, reduced modulo `p^(precision - valuation)`.
    pub fn unit(&self) -> &BigInt {
        &self.unit
    }

    /// Absolute precision `N`: the value is known modulo `p^N`.
    pub fn precision(&self) -> i64 {
        self.precision
    }

    /// Precision relative to the valuation; zero for values that are zero.
    pub fn relative_precision(&self) -> i64 {
        match self.valuation {
            Some(v) => self.precision - v,
            None => 0,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.valuation.is_none()
    }

    /// Lower bound for the valuation: the true one, or the precision when zero.
    pub fn valuation_bound(&self) -> i64 {
        self.valuation.unwrap_or(self.precision)
    }

    /// Forgets digits beyond `p^precision`.
    pub fn truncate(&self, precision: i64) -> Self {
        if precision >= self.precision {
            return self.clone();
        }
        match self.valuation {
            Some(v) => Self::normalized(self.prime, v, self.unit.clone(), precision),
            None => Self::normalized(self.prime, 0, BigInt::zero(), precision),
        }
    }

    /// Whether `self` and `other` agree modulo `p^precision`. Only meaningful
    /// when both are known to at least that precision.
    pub fn agrees_mod(&self, other: &Self, precision: i64) -> bool {
        (self - other).truncate(precision).is_zero()
    }

    /// Shifts the absolute precision upward, treating the stored digits as
    /// exact. Used for integers and rationals that are known exactly.
    pub fn lift_precision(&self, precision: i64) -> Self {
        match self.valuation {
            Some(v) => Self::normalized(self.prime, v, self.unit.clone(), precision.max(self.precision)),
            None => self.clone(),
        }
    }

    fn check_same_prime(&self, other: &Self) -> Result<()> {
        if self.prime == other.prime {
            Ok(())
        } else {
            Err(Error::PrimeMismatch(self.prime, other.prime))
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_same_prime(other)?;
        let precision = self.precision.min(other.precision);
        let e = self.valuation_bound().min(other.valuation_bound()).min(precision);
        let lift = |x: &Self| match x.valuation {
            Some(v) if v < precision => &x.unit * pow_p(x.prime, v - e),
            _ => BigInt::zero(),
        };
        Ok(Self::normalized(self.prime, e, lift(self) + lift(other), precision))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_same_prime(other)?;
        let p = self.prime;
        Ok(match (self.valuation, other.valuation) {
            (Some(va), Some(vb)) => {
                let precision = (self.precision + vb).min(other.precision + va);
                Self::normalized(p, va + vb, &self.unit * &other.unit, precision)
            }
            (None, Some(vb)) => Self::normalized(p, 0, BigInt::zero(), self.precision + vb),
            (Some(va), None) => Self::normalized(p, 0, BigInt::zero(), other.precision + va),
            (None, None) => Self::normalized(p, 0, BigInt::zero(), self.precision + other.precision),
        })
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.check_same_prime(other)?;
        let vb = other.valuation.ok_or(Error::DivisionByZero { prime: other.prime, precision: other.precision })?;
        Ok(match self.valuation {
            Some(va) => {
                let rel = (self.precision - va).min(other.precision - vb);
                let modulus = pow_p(self.prime, rel);
                let inv = mod_inverse(&other.unit, &modulus).expect("unit is invertible");
                Self::normalized(self.prime, va - vb, &self.unit * inv, va - vb + rel)
            }
            None => Self::normalized(self.prime, 0, BigInt::zero(), self.precision - vb),
        })
    }

    pub fn inverse(&self) -> Result<Self> {
        let v = self.valuation.ok_or(Error::DivisionByZero { prime: self.prime, precision: self.precision })?;
        let rel = self.precision - v;
        let inv = mod_inverse(&self.unit, &pow_p(self.prime, rel)).expect("unit is invertible");
        Ok(Self::normalized(self.prime, -v, inv, rel - v))
    }

    /// `self^n` for `n >= 1`; `n = 0` gives one at the input's absolute
    /// precision (at least 1).
    pub fn pow(&self, n: u64) -> Self {
        if n == 0 {
            return Self::normalized(self.prime, 0, BigInt::one(), self.precision.max(1));
        }
        let mut result: Option<Self> = None;
        let mut base = self.clone();
        let mut n = n;
        loop {
            if n & 1 == 1 {
                result = Some(match result {
                    Some(r) => &r * &base,
                    None => base.clone(),
                });
            }
            n >>= 1;
            if n == 0 {
                break;
            }
            base = &base * &base;
        }
        result.expect("n >= 1")
    }

    /// Multiplies by an exact integer.
    pub fn mul_integer(&self, n: &BigInt) -> Self {
        if n.is_zero() {
            return Self::normalized(self.prime, 0, BigInt::zero(), self.precision);
        }
        let k = valuation_of_integer(n, self.prime);
        match self.valuation {
            Some(v) => {
                let m = n / pow_p(self.prime, k);
                Self::normalized(self.prime, v + k, &self.unit * m, self.precision + k)
            }
            None => Self::normalized(self.prime, 0, BigInt::zero(), self.precision + k),
        }
    }

    /// Divides by an exact nonzero integer.
    pub fn div_integer(&self, n: &BigInt) -> Result<Self> {
        if n.is_zero() {
            return Err(Error::DivisionByZero { prime: self.prime, precision: i64::MAX });
        }
        let k = valuation_of_integer(n, self.prime);
        let m = n / pow_p(self.prime, k);
        Ok(match self.valuation {
            Some(v) => {
                let rel = self.precision - v;
                let inv = mod_inverse(&m, &pow_p(self.prime, rel)).expect("coprime to p");
                Self::normalized(self.prime, v - k, &self.unit * inv, self.precision - k)
            }
            None => Self::normalized(self.prime, 0, BigInt::zero(), self.precision - k),
        })
    }

    /// Little-endian base-p digits of the unit part.
    pub fn digits(&self) -> Vec<u64> {
        let p = BigInt::from(self.prime);
        let mut digits = Vec::new();
        let mut u = self.unit.clone();
        while !u.is_zero() {
            let (q, r) = u.div_mod_floor(&p);
            digits.push(r.to_u64().expect("digit below p"));
            u = q;
        }
        digits
    }

    /// The integer (or rational, for negative valuation) represented by the
    /// stored digits.
    pub fn to_rational(&self) -> Rational {
        match self.valuation {
            None => Rational::zero(),
            Some(v) if v >= 0 => Rational::from_integer(&self.unit * pow_p(self.prime, v)),
            Some(v) => Rational::new(self.unit.clone(), pow_p(self.prime, -v)),
        }
    }

    /// Lifts to a centered integer representative in `(-p^N/2, p^N/2]` when
    /// the valuation is non-negative. Handy for recognizing small integers.
    pub fn centered_integer(&self) -> Option<BigInt> {
        let v = self.valuation_bound();
        if v < 0 || self.precision < 0 {
            return None;
        }
        let modulus = pow_p(self.prime, self.precision);
        let r = self.to_rational().to_integer().mod_floor(&modulus);
        let half: BigInt = &modulus / 2;
        Some(if r > half { r - modulus } else { r })
    }
}

/// Inverse of `a` modulo `m`, if it exists.
pub(crate) fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    if m.is_one() {
        return Some(BigInt::zero());
    }
    let e = a.mod_floor(m).extended_gcd(m);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(m))
    } else {
        None
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&PadicNumber> for &PadicNumber {
            type Output = PadicNumber;
            fn $method(self, rhs: &PadicNumber) -> PadicNumber {
                self.$checked(rhs).expect("p-adic operands over the same prime")
            }
        }
        impl $trait for PadicNumber {
            type Output = PadicNumber;
            fn $method(self, rhs: PadicNumber) -> PadicNumber {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &PadicNumber {
    type Output = PadicNumber;
    fn neg(self) -> PadicNumber {
        match self.valuation {
            None => self.clone(),
            Some(v) => PadicNumber::normalized(self.prime, v, -&self.unit, self.precision),
        }
    }
}

impl Neg for PadicNumber {
    type Output = PadicNumber;
    fn neg(self) -> PadicNumber {
        -&self
    }
}

impl fmt::Display for PadicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.prime;
        let Some(v) = self.valuation else {
            return write!(f, "0 + O({p}^{})", self.precision);
        };
        for (i, d) in self.digits().iter().enumerate() {
            if *d == 0 {
                continue;
            }
            let k = v + i as i64;
            match k {
                0 => write!(f, "{d}")?,
                1 => write!(f, "{d}*{p}")?,
                _ => write!(f, "{d}*{p}^{k}")?,
            }
            f.write_str(" + ")?;
        }
        write!(f, "O({p}^{})", self.precision)
    }
}

impl fmt::Debug for PadicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl PartialOrd for PadicNumber {
    /// Orders by precision only when the values agree; used for sorting
    /// reports, not arithmetic.
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        if self == other {
            Some(Ordering::Equal)
        } else {
            None
        }
    }
}

/// Wire format: `{prime, valuation, digits, precision}` with little-endian
/// base-p digits of the unit part.
#[derive(Serialize, Deserialize)]
struct PadicWire {
    prime: u64,
    valuation: Option<i64>,
    digits: Vec<u64>,
    precision: i64,
}

impl Serialize for PadicNumber {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PadicWire { prime: self.prime, valuation: self.valuation, digits: self.digits(), precision: self.precision }
            .serialize(s)
    }
}

impl<'de> Deserialize<'de> for PadicNumber {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = PadicWire::deserialize(d)?;
        check_prime(w.prime).map_err(serde::de::Error::custom)?;
        if w.digits.iter().any(|&d| d >= w.prime) {
            return Err(serde::de::Error::custom("digit out of range"));
        }
        let p = BigInt::from(w.prime);
        let unit = w.digits.iter().rev().fold(BigInt::zero(), |acc, &d| acc * &p + BigInt::from(d));
        Ok(match w.valuation {
            Some(v) => PadicNumber::normalized(w.prime, v, unit, w.precision),
            None => PadicNumber::normalized(w.prime, 0, BigInt::zero(), w.precision),
        })
    }
}
