//! Shuffle relations among ζ_p-symbols and exact reduction modulo them.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, OnceLock, RwLock};

use num_traits::{One, Zero};

use super::associator::z_of;
use super::polynomial::{MzvMonomial, SymbolPolynomial};
use crate::cache::caching_enabled;
use crate::error::{Error, Result};
use crate::scalar::Rational;
use crate::words::{shuffle_words, word_to_index, MzvIndex, Word, WordPolynomial};

type Row = BTreeMap<MzvMonomial, Rational>;

/// The degree-`weight` part of the ideal generated by the shuffle relations
/// (and optionally `ζ_p(2k) = 0`), kept in reduced row echelon form.
///
/// Pivots are the largest monomial of each row in the order of
/// [`MzvMonomial`]; every pivot column is zero in all other rows, so the
/// basis does not depend on the order relations were inserted in.
#[derive(Clone, Debug)]
pub struct RelationSet {
    weight: usize,
    parity_vanishing: bool,
    relations: Vec<SymbolPolynomial>,
    basis: BTreeMap<MzvMonomial, Row>,
}

impl RelationSet {
    pub fn empty(weight: usize, parity_vanishing: bool) -> Self {
        Self { weight, parity_vanishing, relations: Vec::new(), basis: BTreeMap::new() }
    }

    /// Echelonizes the given relations, all of weight `weight`.
    pub fn from_relations<I>(weight: usize, parity_vanishing: bool, rels: I) -> Result<Self>
    where
        I: IntoIterator<Item = SymbolPolynomial>,
    {
        let mut set = Self::empty(weight, parity_vanishing);
        for r in rels {
            set.insert(r)?;
        }
        Ok(set)
    }

    pub fn weight(&self) -> usize {
        self.weight
    }

    pub fn parity_vanishing(&self) -> bool {
        self.parity_vanishing
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// The relations as generated, before elimination.
    pub fn relations(&self) -> &[SymbolPolynomial] {
        &self.relations
    }

    /// The echelon basis, one polynomial per pivot, pivots ascending.
    pub fn basis(&self) -> Vec<SymbolPolynomial> {
        self.basis.values().map(row_to_poly).collect()
    }

    pub fn pivots(&self) -> impl Iterator<Item = &MzvMonomial> {
        self.basis.keys()
    }

    fn check_grade(&self, x: &SymbolPolynomial) -> Result<()> {
        if x.is_zero() || x.weight() == Some(self.weight) {
            Ok(())
        } else {
            Err(Error::GradeMismatch { expected: self.weight })
        }
    }

    fn eliminate(&self, mut row: Row) -> Row {
        let hits: Vec<MzvMonomial> = row.keys().filter(|m| self.basis.contains_key(*m)).cloned().collect();
        for m in hits {
            let Some(c) = row.get(&m).cloned() else { continue };
            for (n, d) in &self.basis[&m] {
                add_to(&mut row, n, -(&c * d));
            }
        }
        row
    }

    /// Adds a relation; returns whether the rank grew.
    pub fn insert(&mut self, rel: SymbolPolynomial) -> Result<bool> {
        self.check_grade(&rel)?;
        let row = self.eliminate(rel.terms().clone());
        self.relations.push(rel);
        let Some((pivot, lead)) = row.iter().next_back().map(|(m, c)| (m.clone(), c.clone())) else {
            return Ok(false);
        };
        let inv = lead.recip();
        let row: Row = row.into_iter().map(|(m, c)| (m, c * &inv)).collect();
        for other in self.basis.values_mut() {
            if let Some(c) = other.get(&pivot).cloned() {
                for (n, d) in &row {
                    add_to(other, n, -(&c * d));
                }
            }
        }
        self.basis.insert(pivot, row);
        Ok(true)
    }

    /// The normal form of `x` modulo the span. Zero exactly when `x` is a
    /// consequence of the relations.
    pub fn reduce(&self, x: &SymbolPolynomial) -> Result<SymbolPolynomial> {
        self.check_grade(x)?;
        Ok(row_to_poly(&self.eliminate(x.terms().clone())))
    }

    pub fn contains(&self, x: &SymbolPolynomial) -> Result<bool> {
        Ok(self.reduce(x)?.is_zero())
    }
}

fn add_to(row: &mut Row, m: &MzvMonomial, c: Rational) {
    if c.is_zero() {
        return;
    }
    let e = row.entry(m.clone()).or_insert_with(Rational::zero);
    *e += c;
    if e.is_zero() {
        row.remove(m);
    }
}

fn row_to_poly(row: &Row) -> SymbolPolynomial {
    let mut p = SymbolPolynomial::zero();
    for (m, c) in row {
        p.add_term(m.clone(), c.clone());
    }
    p
}

/// Words of M of the given weight: A·(anything)·B.
fn m_words(weight: usize) -> Vec<Word> {
    if weight < 2 {
        return Vec::new();
    }
    Word::all_of_weight(weight - 2).map(|mid| Word::a_pow(1).concat(&mid).concat(&Word::b_pow(1))).collect()
}

/// `Z_p(U)·Z_p(V) − Z_p(U∘V)` for `U, V ∈ M`. The shuffle of two words of M
/// again lies in M, so no regularization enters.
pub fn shuffle_relation(u: &Word, v: &Word) -> SymbolPolynomial {
    let zu = SymbolPolynomial::symbol(word_to_index(u).expect("u in M"));
    let zv = SymbolPolynomial::symbol(word_to_index(v).expect("v in M"));
    let sh = WordPolynomial::from_terms(shuffle_words(u, v).into_iter().map(|(w, c)| (w, Rational::from_integer(c))));
    zu * zv - z_of(&sh)
}

/// Generators of the weight-`weight` component, in a fixed order: shuffle
/// relations of pairs `U ≤ V`, then `ζ_p(weight)` if requested and even,
/// then lower-weight basis elements times monomials of the complementary
/// weight.
pub fn generate_relations(weight: usize, parity_vanishing: bool) -> Vec<SymbolPolynomial> {
    let mut out = Vec::new();
    for a in 2..=weight / 2 {
        let left = m_words(a);
        let right = m_words(weight - a);
        for u in &left {
            for v in &right {
                if a == weight - a && v < u {
                    continue;
                }
                let r = shuffle_relation(u, v);
                if !r.is_zero() {
                    out.push(r);
                }
            }
        }
    }
    if parity_vanishing && weight % 2 == 0 && weight >= 2 {
        out.push(SymbolPolynomial::symbol(MzvIndex::new(vec![weight as u32]).expect("nonempty")));
    }
    for k in 2..weight.saturating_sub(1) {
        let lower = shuffle_relations(k, parity_vanishing);
        if lower.rank() == 0 {
            continue;
        }
        let monos = MzvMonomial::all_of_weight(weight - k);
        for b in lower.basis() {
            for m in &monos {
                out.push(b.clone() * SymbolPolynomial::monomial(m.clone(), Rational::one()));
            }
        }
    }
    out
}

fn relation_cache() -> &'static RwLock<HashMap<(usize, bool), Arc<RelationSet>>> {
    static CACHE: OnceLock<RwLock<HashMap<(usize, bool), Arc<RelationSet>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// The relation set of the given weight, memoized per `(weight, parity)`.
pub fn shuffle_relations(weight: usize, parity_vanishing: bool) -> Arc<RelationSet> {
    let key = (weight, parity_vanishing);
    if caching_enabled() {
        if let Some(s) = relation_cache().read().expect("cache poisoned").get(&key) {
            return s.clone();
        }
    }
    let set = RelationSet::from_relations(weight, parity_vanishing, generate_relations(weight, parity_vanishing))
        .expect("generated relations are homogeneous");
    let set = Arc::new(set);
    if caching_enabled() {
        relation_cache().write().expect("cache poisoned").entry(key).or_insert(set).clone()
    } else {
        set
    }
}

/// Reduces each homogeneous component against the relation set of its
/// weight and reassembles.
pub fn reduce_graded(x: &SymbolPolynomial, parity_vanishing: bool) -> SymbolPolynomial {
    let mut out = SymbolPolynomial::zero();
    for (w, part) in x.graded_parts() {
        let r = shuffle_relations(w, parity_vanishing).reduce(&part).expect("graded part has its weight");
        out = out + r;
    }
    out
}
