//! Words in the letters A, B and the index dictionary.
//!
//! A [`Word`] is packed into a `u64` with A = 0, B = 1 and the first letter
//! in the most significant used bit, so sorting by `(weight, bits)` is
//! "shorter first, then lexicographic with A < B". The empty word is the
//! unit `1` of the word algebra.

mod maps;
mod polynomial;

pub use maps::{
    coproduct, g_transpose, g_transpose_prime, map_f, map_f_prime, pairing, proj_f, proj_f_prime, tau, Tensor,
};
pub use polynomial::{shuffle, shuffle_naive, shuffle_words, WordPolynomial};

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub const MAX_WEIGHT: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Letter {
    A,
    B,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Word {
    bits: u64,
    len: u8,
}

impl Word {
    pub const EMPTY: Word = Word { bits: 0, len: 0 };

    pub fn empty() -> Self {
        Self::EMPTY
    }

    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        let mut w = Self::EMPTY;
        for l in letters {
            w = w.push(l);
        }
        w
    }

    /// `A^r`.
    pub fn a_pow(r: usize) -> Self {
        Self::from_letters(std::iter::repeat(Letter::A).take(r))
    }

    /// `B^r`.
    pub fn b_pow(r: usize) -> Self {
        Self::from_letters(std::iter::repeat(Letter::B).take(r))
    }

    pub fn weight(&self) -> usize {
        self.len as usize
    }

    /// Number of B's.
    pub fn depth(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn letter(&self, i: usize) -> Letter {
        debug_assert!(i < self.weight());
        if (self.bits >> (self.weight() - 1 - i)) & 1 == 1 {
            Letter::B
        } else {
            Letter::A
        }
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        (0..self.weight()).map(move |i| self.letter(i))
    }

    pub fn first(&self) -> Option<Letter> {
        (!self.is_empty()).then(|| self.letter(0))
    }

    pub fn last(&self) -> Option<Letter> {
        (!self.is_empty()).then(|| self.letter(self.weight() - 1))
    }

    /// Appends a letter on the right.
    pub fn push(&self, l: Letter) -> Self {
        assert!(self.weight() < MAX_WEIGHT, "word weight exceeds {MAX_WEIGHT}");
        Word { bits: (self.bits << 1) | (l == Letter::B) as u64, len: self.len + 1 }
    }

    pub fn concat(&self, other: &Word) -> Self {
        assert!(self.weight() + other.weight() <= MAX_WEIGHT, "word weight exceeds {MAX_WEIGHT}");
        if other.len == 0 {
            return *self;
        }
        Word { bits: (self.bits << other.len) | other.bits, len: self.len + other.len }
    }

    /// The first `n` letters.
    pub fn prefix(&self, n: usize) -> Self {
        assert!(n <= self.weight());
        Word { bits: self.bits >> (self.weight() - n), len: n as u8 }
    }

    /// The last `n` letters.
    pub fn suffix(&self, n: usize) -> Self {
        assert!(n <= self.weight());
        let mask = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        Word { bits: self.bits & mask, len: n as u8 }
    }

    /// Letters at the given positions (ascending bitmask over positions,
    /// bit `i` meaning position `i` from the left).
    pub fn select(&self, positions: u64) -> Self {
        let mut w = Self::EMPTY;
        for i in 0..self.weight() {
            if (positions >> i) & 1 == 1 {
                w = w.push(self.letter(i));
            }
        }
        w
    }

    /// Number of leading B's.
    pub fn leading_b(&self) -> usize {
        self.letters().take_while(|&l| l == Letter::B).count()
    }

    /// Number of leading A's.
    pub fn leading_a(&self) -> usize {
        self.letters().take_while(|&l| l == Letter::A).count()
    }

    /// Number of trailing A's.
    pub fn trailing_a(&self) -> usize {
        (self.bits.trailing_zeros() as usize).min(self.weight())
    }

    /// Ends in B: the words spanning M′.
    pub fn in_m_prime(&self) -> bool {
        self.last() == Some(Letter::B)
    }

    /// Starts with A and ends in B: the words spanning M.
    pub fn in_m(&self) -> bool {
        self.first() == Some(Letter::A) && self.in_m_prime()
    }

    /// Letterwise swap of A and B.
    pub fn tau(&self) -> Self {
        let mask = if self.len == 64 { u64::MAX } else { (1u64 << self.len) - 1 };
        Word { bits: !self.bits & mask, len: self.len }
    }

    /// All words of the given weight in canonical order.
    pub fn all_of_weight(n: usize) -> impl Iterator<Item = Word> {
        assert!(n < MAX_WEIGHT);
        (0..(1u64 << n)).map(move |bits| Word { bits, len: n as u8 })
    }

    /// All words of weight `1..=n` in canonical order.
    pub fn all_up_to(n: usize) -> impl Iterator<Item = Word> {
        (1..=n).flat_map(Self::all_of_weight)
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.len, self.bits).cmp(&(other.len, other.bits))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("1");
        }
        for l in self.letters() {
            f.write_str(match l {
                Letter::A => "A",
                Letter::B => "B",
            })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Word {
    type Err = Error;

    /// Accepts strings over `{A, B}`; `"1"` and `""` denote the empty word.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "1" {
            return Ok(Self::EMPTY);
        }
        if s.len() > MAX_WEIGHT {
            return Err(Error::InvalidWord(s.to_string()));
        }
        s.chars()
            .map(|c| match c {
                'A' => Ok(Letter::A),
                'B' => Ok(Letter::B),
                _ => Err(Error::InvalidWord(s.to_string())),
            })
            .collect::<Result<Vec<_>>>()
            .map(Word::from_letters)
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// An index `(k_1, ..., k_m)` of a multiple zeta value or polylogarithm.
///
/// Ordered by depth, then lexicographically.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MzvIndex {
    ks: Vec<u32>,
}

impl MzvIndex {
    pub fn new(ks: Vec<u32>) -> Result<Self> {
        if ks.is_empty() || ks.iter().any(|&k| k == 0) {
            return Err(Error::InvalidIndex(format!("{ks:?}")));
        }
        Ok(Self { ks })
    }

    pub fn ks(&self) -> &[u32] {
        &self.ks
    }

    pub fn depth(&self) -> usize {
        self.ks.len()
    }

    pub fn weight(&self) -> usize {
        self.ks.iter().map(|&k| k as usize).sum()
    }

    /// `k_m > 1`.
    pub fn is_admissible(&self) -> bool {
        *self.ks.last().expect("nonempty") > 1
    }

    /// All indices of the given weight, in canonical order.
    pub fn all_of_weight(w: usize) -> Vec<MzvIndex> {
        let mut out: Vec<MzvIndex> = (1..=w).flat_map(|m| compositions(w, m)).map(|ks| MzvIndex { ks }).collect();
        out.sort();
        out
    }

    /// All admissible indices of the given weight, in canonical order.
    pub fn admissible_of_weight(w: usize) -> Vec<MzvIndex> {
        Self::all_of_weight(w).into_iter().filter(|ix| ix.is_admissible()).collect()
    }
}

fn compositions(n: usize, parts: usize) -> Vec<Vec<u32>> {
    if parts == 0 {
        return if n == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 1..=n.saturating_sub(parts - 1) {
        for mut rest in compositions(n - first, parts - 1) {
            rest.insert(0, first as u32);
            out.push(rest);
        }
    }
    out
}

impl Ord for MzvIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.ks.len(), &self.ks).cmp(&(other.ks.len(), &other.ks))
    }
}

impl PartialOrd for MzvIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for MzvIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.ks.iter().map(|k| k.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

impl fmt::Debug for MzvIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

impl FromStr for MzvIndex {
    type Err = Error;

    /// Parses `"1,2"`, optionally wrapped in parentheses.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')');
        let ks = t
            .split(',')
            .map(|p| p.trim().parse::<u32>().map_err(|_| Error::InvalidIndex(s.to_string())))
            .collect::<Result<Vec<_>>>()?;
        MzvIndex::new(ks)
    }
}

impl Serialize for MzvIndex {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for MzvIndex {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// The index of a word ending in B. Reading left to right, each B closes a
/// block `A^{k-1}B`; the leftmost block gives `k_m`, the rightmost `k_1`.
pub fn word_to_index(w: &Word) -> Result<MzvIndex> {
    if !w.in_m_prime() {
        return Err(Error::NotInMPrime(w.to_string()));
    }
    let mut ks = Vec::new();
    let mut run = 1u32;
    for l in w.letters() {
        match l {
            Letter::A => run += 1,
            Letter::B => {
                ks.push(run);
                run = 1;
            }
        }
    }
    ks.reverse();
    MzvIndex::new(ks)
}

/// `A^{k_m-1} B A^{k_{m-1}-1} B ... A^{k_1-1} B`.
pub fn index_to_word(ix: &MzvIndex) -> Word {
    let mut w = Word::EMPTY;
    for &k in ix.ks().iter().rev() {
        w = w.concat(&Word::a_pow(k as usize - 1)).push(Letter::B);
    }
    w
}
