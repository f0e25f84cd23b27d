//! Polynomials in `Λ₀ = log z` and `Λ₁ = log(1 - z)` with truncated power
//! series coefficients.
//!
//! `Λ₁` is itself a power series, so the same function has several
//! representations. The canonical form expands every `Λ₁` and keeps only
//! powers of `Λ₀`, which are independent over power series; equality is
//! decided there, up to the common trusted degree.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{factorial, Coefficient, Rational};
use crate::series::PowerSeries;

/// Which pole the integrated form has.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pole {
    /// `f(z) dz / z`
    Zero,
    /// `f(z) dz / (z - 1)`
    One,
}

#[derive(Clone)]
pub struct LocalFunction<C> {
    terms: BTreeMap<(u32, u32), PowerSeries<C>>,
    /// Degree at which `Λ₁` expansions and quotients by `1 - z` are cut off.
    cap: Option<usize>,
}

fn min_opt(a: Option<usize>, b: Option<usize>) -> Option<usize> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

fn q(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// `log(1 - z) = -Σ z^n/n` to degree `n`.
fn log_one_minus_z<C: Coefficient>(n: usize) -> PowerSeries<C> {
    let coeffs = (0..=n).map(|k| if k == 0 { C::zero() } else { C::from_rational(&q(-1, k as i64)) }).collect();
    PowerSeries::truncated(coeffs, n)
}

impl<C: Coefficient> LocalFunction<C> {
    pub fn zero() -> Self {
        Self { terms: BTreeMap::new(), cap: None }
    }

    pub fn constant(c: C) -> Self {
        Self::monomial(0, 0, PowerSeries::constant(c))
    }

    /// `Λ₀^i Λ₁^j s(z)`.
    pub fn monomial(i: u32, j: u32, s: PowerSeries<C>) -> Self {
        let mut f = Self::zero();
        f.add_entry(i, j, s);
        f
    }

    /// `Λ₀ = log z`.
    pub fn lambda0() -> Self {
        Self::monomial(1, 0, PowerSeries::one())
    }

    /// `Λ₁ = log(1 - z)`.
    pub fn lambda1() -> Self {
        Self::monomial(0, 1, PowerSeries::one())
    }

    pub fn from_series(s: PowerSeries<C>) -> Self {
        Self::monomial(0, 0, s)
    }

    /// Sets the expansion cap (keeping any smaller one).
    pub fn with_cap(mut self, cap: usize) -> Self {
        self.cap = min_opt(self.cap, Some(cap));
        self.terms = std::mem::take(&mut self.terms)
            .into_iter()
            .map(|(k, s)| (k, if s.known().is_some_and(|n| n <= cap) { s } else { s.truncate(cap) }))
            .collect();
        self.prune();
        self
    }

    pub fn cap(&self) -> Option<usize> {
        self.cap
    }

    fn add_entry(&mut self, i: u32, j: u32, s: PowerSeries<C>) {
        let key = (i, j);
        let merged = match self.terms.remove(&key) {
            Some(old) => old + s,
            None => s,
        };
        self.terms.insert(key, merged);
        self.prune();
    }

    fn prune(&mut self) {
        self.terms.retain(|_, s| !s.is_zero());
    }

    /// Entries `(i, j) -> series` with `i` the power of `Λ₀`, `j` of `Λ₁`.
    pub fn entries(&self) -> &BTreeMap<(u32, u32), PowerSeries<C>> {
        &self.terms
    }

    pub fn entry(&self, i: u32, j: u32) -> Option<&PowerSeries<C>> {
        self.terms.get(&(i, j))
    }

    /// Degree up to which every coefficient is known, or `None` if exact.
    pub fn trusted_degree(&self) -> Option<usize> {
        self.terms.values().fold(self.cap, |acc, s| min_opt(acc, s.known()))
    }

    /// Largest total log degree `i + j`.
    pub fn log_degree(&self) -> u32 {
        self.terms.keys().map(|(i, j)| i + j).max().unwrap_or(0)
    }

    pub fn uses_lambda1(&self) -> bool {
        self.terms.keys().any(|&(_, j)| j > 0)
    }

    /// Expands every `Λ₁` and returns `i -> series` with each series known
    /// to at most degree `n`.
    pub fn canonical_to(&self, n: usize) -> BTreeMap<u32, PowerSeries<C>> {
        let l1 = log_one_minus_z::<C>(n);
        let mut powers: Vec<PowerSeries<C>> = vec![PowerSeries::one().truncate(n)];
        let mut out: BTreeMap<u32, PowerSeries<C>> = BTreeMap::new();
        for (&(i, j), s) in &self.terms {
            while powers.len() <= j as usize {
                let next = (powers.last().unwrap().clone() * l1.clone()).truncate(n);
                powers.push(next);
            }
            let term = (s.clone() * powers[j as usize].clone()).truncate(n);
            let entry = out.remove(&i).unwrap_or_else(|| PowerSeries::zero().truncate(n));
            out.insert(i, entry + term);
        }
        out.retain(|_, s| !s.is_zero());
        out
    }

    /// Canonical form at the trusted degree; `None` is returned when the
    /// function is exact but involves `Λ₁`, whose expansion is infinite.
    pub fn canonical(&self) -> Option<BTreeMap<u32, PowerSeries<C>>> {
        match self.trusted_degree() {
            Some(n) => Some(self.canonical_to(n)),
            None if !self.uses_lambda1() => Some(self.terms.iter().map(|(&(i, _), s)| (i, s.clone())).collect()),
            None => None,
        }
    }

    /// Equality as functions up to the common trusted degree (and `cap`).
    pub fn agrees_with(&self, other: &Self, cap: Option<usize>) -> bool {
        let n = min_opt(min_opt(self.trusted_degree(), other.trusted_degree()), cap);
        match n {
            Some(n) => {
                let a = self.canonical_to(n);
                let b = other.canonical_to(n);
                let keys: std::collections::BTreeSet<u32> = a.keys().chain(b.keys()).copied().collect();
                keys.into_iter().all(|i| {
                    let zero = PowerSeries::zero();
                    a.get(&i).unwrap_or(&zero).agrees_with(b.get(&i).unwrap_or(&zero), Some(n))
                })
            }
            // exact on both sides: polynomial in z, Λ₀, Λ₁ is unique
            None => {
                let d = self.clone() - other.clone();
                d.terms.is_empty()
            }
        }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Self { terms: self.terms.iter().map(|(k, s)| (*k, s.scale(r))).collect(), cap: self.cap }.pruned()
    }

    fn pruned(mut self) -> Self {
        self.prune();
        self
    }

    /// The same function with every `Λ₁` expanded.
    pub fn to_canonical(&self) -> Option<Self> {
        let mut f = Self { terms: BTreeMap::new(), cap: self.cap };
        for (i, s) in self.canonical()? {
            f.add_entry(i, 0, s);
        }
        Some(f)
    }

    fn require_degree(&self, what: &str) -> Result<Option<usize>> {
        let n = self.trusted_degree();
        if n.is_none() && self.uses_lambda1() {
            return Err(Error::ZdegExhausted(format!("{what} of an uncapped expression in log(1-z)")));
        }
        Ok(n)
    }

    fn canonical_checked(&self, what: &str) -> Result<(BTreeMap<u32, PowerSeries<C>>, Option<usize>)> {
        let n = self.require_degree(what)?;
        Ok((self.canonical().expect("degree checked"), n))
    }

    /// `z d/dz`, always expressible; the result is in canonical form.
    pub fn theta(&self) -> Result<Self> {
        let (canon, _) = self.canonical_checked("theta")?;
        let mut out = Self { terms: BTreeMap::new(), cap: self.cap };
        for (&i, s) in &canon {
            out.add_entry(i, 0, s.theta());
            if i > 0 {
                out.add_entry(i - 1, 0, s.scale(&q(i as i64, 1)));
            }
        }
        Ok(out)
    }

    /// `d/dz`. Fails when the derivative has a pole at 0, or when the trusted
    /// degree is exhausted.
    pub fn differentiate(&self) -> Result<Self> {
        let t = self.theta()?;
        let mut out = Self { terms: BTreeMap::new(), cap: self.cap.map(|c| c.saturating_sub(1)) };
        for (&(i, _), s) in &t.terms {
            let d = s.shift_down(1).ok_or_else(|| Error::ZdegExhausted("derivative has a pole at z = 0".into()))?;
            out.add_entry(i, 0, d);
        }
        Ok(out)
    }

    /// Multiplies by an exact polynomial in `z`.
    pub fn mul_poly(&self, p: &PowerSeries<C>) -> Self {
        self.clone() * Self::from_series(p.clone())
    }

    /// The primitive of `f dz/z` or `f dz/(z-1)` whose analytic part
    /// vanishes at 0.
    ///
    /// For pole 1, terms `c Λ₁^j` with constant `c` integrate symbolically to
    /// `c Λ₁^{j+1}/(j+1)`; everything else goes through the canonical form
    /// and the closed forms
    /// `∫ z^{n-1} log^i z dz = z^n Σ_k (-1)^k i!/(i-k)! log^{i-k} z / n^{k+1}`
    /// and `∫ log^i z dz/z = log^{i+1} z/(i+1)`.
    pub fn integrate_form(&self, pole: Pole) -> Result<Self> {
        match pole {
            Pole::Zero => {
                let (canon, n) = self.canonical_checked("integration")?;
                let mut out = Self { terms: BTreeMap::new(), cap: self.cap };
                for (&i, s) in &canon {
                    let c0 = s.coeff(0);
                    if !c0.is_zero() {
                        out.add_entry(i + 1, 0, PowerSeries::constant(c0.scale(&q(1, i as i64 + 1))));
                    }
                    let rest: Vec<(usize, C)> =
                        s.coeffs().iter().enumerate().skip(1).map(|(k, c)| (k, c.clone())).collect();
                    out.add_power_primitives(i, &rest, n);
                }
                Ok(out)
            }
            Pole::One => {
                let mut out = Self { terms: BTreeMap::new(), cap: self.cap };
                let mut remainder = Self { terms: BTreeMap::new(), cap: self.cap };
                for (&(i, j), s) in &self.terms {
                    if i == 0 {
                        let c0 = s.coeff(0);
                        if !c0.is_zero() {
                            out.add_entry(0, j + 1, PowerSeries::constant(c0.scale(&q(1, j as i64 + 1))));
                        }
                        let rest = s.clone() - PowerSeries::constant(s.coeff(0));
                        remainder.add_entry(0, j, rest);
                    } else {
                        remainder.add_entry(i, j, s.clone());
                    }
                }
                if remainder.terms.is_empty() {
                    return Ok(out);
                }
                let (canon, n) = remainder.canonical_checked("integration")?;
                let n = n.ok_or_else(|| {
                    Error::ZdegExhausted("dz/(z-1) primitive of an exact series needs a degree cap".into())
                })?;
                for (&i, s) in &canon {
                    // ∫ s Λ₀^i dz/(z-1) = -∫ (s/(1-z)) Λ₀^i dz
                    let h = s.div_one_minus_z(n);
                    let shifted: Vec<(usize, C)> =
                        h.coeffs().iter().enumerate().map(|(k, c)| (k + 1, -c.clone())).collect();
                    out.add_power_primitives(i, &shifted, Some(n));
                }
                Ok(out)
            }
        }
    }

    /// Adds `Σ_n c_n ∫ z^{n-1} Λ₀^i dz` for `n >= 1`, known to degree `known`.
    fn add_power_primitives(&mut self, i: u32, terms: &[(usize, C)], known: Option<usize>) {
        let fact_i = factorial(i as u64);
        for k in 0..=i {
            let mut coeffs: Vec<C> = Vec::new();
            for (n, c) in terms {
                if known.is_some_and(|kn| *n > kn) {
                    continue;
                }
                let denom = num_traits::pow(BigInt::from(*n as u64), k as usize + 1);
                let sign = if k % 2 == 0 { BigInt::one() } else { -BigInt::one() };
                let r = Rational::new(sign * &fact_i / factorial((i - k) as u64), denom);
                if coeffs.len() <= *n {
                    coeffs.resize(*n + 1, C::zero());
                }
                coeffs[*n] = coeffs[*n].clone() + c.scale(&r);
            }
            let s = match known {
                Some(kn) => PowerSeries::truncated(coeffs, kn),
                None => PowerSeries::polynomial(coeffs),
            };
            self.add_entry(i - k, 0, s);
        }
    }

    /// Substitutes a ring map on coefficients.
    pub fn map<D: Coefficient, F: FnMut(&C) -> D>(&self, mut f: F) -> LocalFunction<D> {
        let mut out = LocalFunction { terms: BTreeMap::new(), cap: self.cap };
        for (&(i, j), s) in &self.terms {
            out.add_entry(i, j, s.map(&mut f));
        }
        out
    }
}

impl<C: Coefficient> PartialEq for LocalFunction<C> {
    fn eq(&self, other: &Self) -> bool {
        self.agrees_with(other, None)
    }
}

impl<C: Coefficient> Add for LocalFunction<C> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let cap = min_opt(self.cap, rhs.cap);
        let mut out = Self { terms: self.terms, cap };
        for ((i, j), s) in rhs.terms {
            out.add_entry(i, j, s);
        }
        match cap {
            Some(c) => out.with_cap(c),
            None => out,
        }
    }
}

impl<C: Coefficient> Neg for LocalFunction<C> {
    type Output = Self;
    fn neg(self) -> Self {
        Self { terms: self.terms.into_iter().map(|(k, s)| (k, -s)).collect(), cap: self.cap }
    }
}

impl<C: Coefficient> Sub for LocalFunction<C> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<C: Coefficient> Mul for LocalFunction<C> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let cap = min_opt(self.cap, rhs.cap);
        let mut out = Self { terms: BTreeMap::new(), cap };
        for (&(i, j), s) in &self.terms {
            for (&(k, l), t) in &rhs.terms {
                let mut prod = s.clone() * t.clone();
                if let Some(c) = cap {
                    prod = prod.truncate(c);
                }
                out.add_entry(i + k, j + l, prod);
            }
        }
        out
    }
}

impl<C: Coefficient> Zero for LocalFunction<C> {
    fn zero() -> Self {
        LocalFunction::zero()
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty() || self.agrees_with(&Self::zero(), None)
    }
}

impl<C: Coefficient> One for LocalFunction<C> {
    fn one() -> Self {
        LocalFunction::constant(C::one())
    }
}

impl<C: Coefficient> Coefficient for LocalFunction<C> {
    fn from_rational(r: &Rational) -> Self {
        LocalFunction::constant(C::from_rational(r))
    }

    fn scale(&self, r: &Rational) -> Self {
        LocalFunction::scale(self, r)
    }
}

impl<C: Coefficient> fmt::Debug for LocalFunction<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.terms.iter().map(|((i, j), s)| format!("L0^{i} L1^{j} [{s:?}]")).collect();
        f.write_str(&parts.join(" + "))
    }
}
