use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{Letter, Word};
use crate::scalar::{Coefficient, Rational};

/// A finite linear combination of words (and the unit `1`, stored under the
/// empty word). Zero coefficients are never stored.
#[derive(Clone, PartialEq)]
pub struct WordPolynomial<C> {
    terms: BTreeMap<Word, C>,
}

impl<C: Coefficient> Default for WordPolynomial<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Coefficient> WordPolynomial<C> {
    pub fn zero() -> Self {
        Self { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::monomial(Word::EMPTY, C::one())
    }

    pub fn word(w: Word) -> Self {
        Self::monomial(w, C::one())
    }

    pub fn monomial(w: Word, c: C) -> Self {
        let mut p = Self::zero();
        p.add_term(w, c);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Word, C)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (w, c) in terms {
            p.add_term(w, c);
        }
        p
    }

    pub fn add_term(&mut self, w: Word, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&w) {
            Some(old) => {
                let s = old + c;
                if !s.is_zero() {
                    self.terms.insert(w, s);
                }
            }
            None => {
                self.terms.insert(w, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &Word) -> C {
        self.terms.get(w).cloned().unwrap_or_else(C::zero)
    }

    pub fn get(&self, w: &Word) -> Option<&C> {
        self.terms.get(w)
    }

    /// Terms in canonical word order.
    pub fn iter(&self) -> impl Iterator<Item = (&Word, &C)> {
        self.terms.iter()
    }

    pub fn words(&self) -> impl Iterator<Item = &Word> {
        self.terms.keys()
    }

    pub fn into_terms(self) -> BTreeMap<Word, C> {
        self.terms
    }

    /// Terms of exactly the given weight.
    pub fn homogeneous_part(&self, weight: usize) -> Self {
        self.filter(|w| w.weight() == weight)
    }

    /// Terms of weight at most `weight`.
    pub fn truncate(&self, weight: usize) -> Self {
        self.filter(|w| w.weight() <= weight)
    }

    pub fn filter<F: Fn(&Word) -> bool>(&self, keep: F) -> Self {
        Self { terms: self.terms.iter().filter(|(w, _)| keep(w)).map(|(w, c)| (*w, c.clone())).collect() }
    }

    pub fn max_weight(&self) -> Option<usize> {
        self.terms.keys().map(|w| w.weight()).max()
    }

    /// Applies a linear map given on words.
    pub fn map_linear<F: FnMut(&Word) -> WordPolynomial<C>>(&self, mut f: F) -> Self {
        let mut out = Self::zero();
        for (w, c) in &self.terms {
            for (v, d) in f(w).terms {
                out.add_term(v, c.clone() * d);
            }
        }
        out
    }

    /// Applies a map on words that sends words to words.
    pub fn map_words<F: FnMut(&Word) -> Word>(&self, mut f: F) -> Self {
        Self::from_terms(self.terms.iter().map(|(w, c)| (f(w), c.clone())))
    }

    pub fn map_coeffs<D: Coefficient, F: FnMut(&C) -> D>(&self, mut f: F) -> WordPolynomial<D> {
        WordPolynomial::from_terms(self.terms.iter().map(|(w, c)| (*w, f(c))))
    }

    pub fn scale(&self, c: &C) -> Self {
        Self::from_terms(self.terms.iter().map(|(w, d)| (*w, d.clone() * c.clone())))
    }

    /// Concatenation product, dropping words heavier than `max_weight`.
    pub fn concat_truncated(&self, other: &Self, max_weight: usize) -> Self {
        let mut out = Self::zero();
        for (u, c) in &self.terms {
            for (v, d) in &other.terms {
                if u.weight() + v.weight() <= max_weight {
                    out.add_term(u.concat(v), c.clone() * d.clone());
                }
            }
        }
        out
    }
}

impl<C: Coefficient> Add for WordPolynomial<C> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        self += rhs;
        self
    }
}

impl<C: Coefficient> AddAssign for WordPolynomial<C> {
    fn add_assign(&mut self, rhs: Self) {
        for (w, c) in rhs.terms {
            self.add_term(w, c);
        }
    }
}

impl<C: Coefficient> Sub for WordPolynomial<C> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<C: Coefficient> Neg for WordPolynomial<C> {
    type Output = Self;
    fn neg(self) -> Self {
        Self { terms: self.terms.into_iter().map(|(w, c)| (w, -c)).collect() }
    }
}

/// Concatenation product.
impl<C: Coefficient> Mul for WordPolynomial<C> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.concat_truncated(&rhs, usize::MAX)
    }
}

impl<C: Coefficient + fmt::Display> fmt::Display for WordPolynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(w, c)| format!("({c})*{w}")).collect();
        f.write_str(&parts.join(" + "))
    }
}

impl<C: Coefficient> fmt::Debug for WordPolynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter().map(|(w, c)| (w.to_string(), c))).finish()
    }
}

/// Shuffle of two words with multiplicities, by dynamic programming over
/// prefixes: `S(i, j) = S(i-1, j)·u_i + S(i, j-1)·v_j`.
pub fn shuffle_words(u: &Word, v: &Word) -> BTreeMap<Word, BigInt> {
    let (m, n) = (u.weight(), v.weight());
    let mut row: Vec<BTreeMap<Word, BigInt>> = Vec::with_capacity(n + 1);
    // i = 0: prefixes of v only
    let mut acc = BTreeMap::new();
    acc.insert(Word::EMPTY, BigInt::one());
    row.push(acc);
    for j in 1..=n {
        row.push(std::iter::once((v.prefix(j), BigInt::one())).collect());
    }
    for i in 1..=m {
        let ui = u.letter(i - 1);
        let mut next: Vec<BTreeMap<Word, BigInt>> = Vec::with_capacity(n + 1);
        next.push(std::iter::once((u.prefix(i), BigInt::one())).collect());
        for j in 1..=n {
            let mut cell: BTreeMap<Word, BigInt> = BTreeMap::new();
            append_letter(&mut cell, &row[j], ui);
            append_letter(&mut cell, &next[j - 1], v.letter(j - 1));
            next.push(cell);
        }
        row = next;
    }
    row.pop().expect("nonempty")
}

fn append_letter(into: &mut BTreeMap<Word, BigInt>, from: &BTreeMap<Word, BigInt>, l: Letter) {
    for (w, c) in from {
        *into.entry(w.push(l)).or_insert_with(BigInt::zero) += c;
    }
}

/// Shuffle of two words by enumerating the positions taken by `u`.
pub fn shuffle_naive(u: &Word, v: &Word) -> BTreeMap<Word, BigInt> {
    let n = u.weight() + v.weight();
    let mut out: BTreeMap<Word, BigInt> = BTreeMap::new();
    for mask in 0u64..(1u64 << n) {
        if mask.count_ones() as usize != u.weight() {
            continue;
        }
        let (mut i, mut j) = (0, 0);
        let mut w = Word::EMPTY;
        for pos in 0..n {
            if (mask >> pos) & 1 == 1 {
                w = w.push(u.letter(i));
                i += 1;
            } else {
                w = w.push(v.letter(j));
                j += 1;
            }
        }
        *out.entry(w).or_insert_with(BigInt::zero) += 1;
    }
    out
}

/// Bilinear shuffle product; `1` is the unit.
pub fn shuffle<C: Coefficient>(x: &WordPolynomial<C>, y: &WordPolynomial<C>) -> WordPolynomial<C> {
    let mut out = WordPolynomial::zero();
    for (u, c) in x.iter() {
        for (v, d) in y.iter() {
            let cd = c.clone() * d.clone();
            for (w, k) in shuffle_words(u, v) {
                out.add_term(w, cd.scale(&Rational::from_integer(k)));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::binomial;

    type P = WordPolynomial<Rational>;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn p(terms: &[(&str, i64)]) -> P {
        P::from_terms(terms.iter().map(|(s, c)| (w(s), Rational::from_integer(BigInt::from(*c)))))
    }

    fn sh(a: &str, b: &str) -> P {
        shuffle(&P::word(w(a)), &P::word(w(b)))
    }

    #[test]
    fn small_shuffles() {
        assert_eq!(sh("A", "B"), p(&[("AB", 1), ("BA", 1)]));
        assert_eq!(sh("A", "A"), p(&[("AA", 2)]));
        assert_eq!(sh("AB", "AB"), p(&[("ABAB", 2), ("AABB", 4)]));
        assert_eq!(sh("AB", "B"), p(&[("BAB", 1), ("ABB", 2)]));
        assert_eq!(sh("1", "AB"), p(&[("AB", 1)]));
    }

    #[test]
    fn dp_matches_enumeration() {
        for u in Word::all_up_to(4) {
            for v in Word::all_up_to(4) {
                assert_eq!(shuffle_words(&u, &v), shuffle_naive(&u, &v), "{u} {v}");
            }
        }
    }

    #[test]
    fn multiplicity_is_binomial() {
        for u in Word::all_up_to(4) {
            for v in Word::all_up_to(3) {
                let total: BigInt = shuffle_words(&u, &v).values().sum();
                assert_eq!(total, binomial((u.weight() + v.weight()) as u64, u.weight() as u64));
            }
        }
    }

    #[test]
    fn concatenation_and_truncation() {
        let x = p(&[("1", 1), ("A", 1)]);
        let y = p(&[("1", 1), ("B", -1)]);
        assert_eq!(x.clone() * y.clone(), p(&[("1", 1), ("A", 1), ("B", -1), ("AB", -1)]));
        assert_eq!(x.concat_truncated(&y, 1), p(&[("1", 1), ("A", 1), ("B", -1)]));
        assert!((x.clone() - x).is_zero());
    }
}
