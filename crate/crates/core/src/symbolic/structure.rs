//! Group-like, abelianization and Lie checks on the associator.

use serde::Serialize;

use super::associator::{phi_coefficient, phi_expansion};
use super::polynomial::SymbolPolynomial;
use super::relations::reduce_graded;
use crate::scalar::{Coefficient, Rational};
use crate::words::{shuffle_words, Word, WordPolynomial};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub item: String,
    /// Normal form of the offending combination modulo the relations.
    pub residual: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub weight_bound: usize,
    /// Number of identities tested.
    pub checked: usize,
    pub witnesses: Vec<Witness>,
}

impl CheckReport {
    fn new(check: &str, weight_bound: usize) -> Self {
        Self { check: check.into(), weight_bound, checked: 0, witnesses: Vec::new() }
    }

    fn test(&mut self, item: impl FnOnce() -> String, x: &SymbolPolynomial) {
        self.checked += 1;
        let r = reduce_graded(x, false);
        if !r.is_zero() {
            self.witnesses.push(Witness { item: item(), residual: r.to_string() });
        }
    }

    pub fn passed(&self) -> bool {
        self.witnesses.is_empty()
    }
}

/// `Σ_W c_W I_p(W)` for `x = Σ c_W W`.
fn pair_with_phi(terms: impl IntoIterator<Item = (Word, Rational)>) -> SymbolPolynomial {
    let mut acc = SymbolPolynomial::zero();
    for (w, c) in terms {
        acc = acc + phi_coefficient(&w).scale(&c);
    }
    acc
}

/// `I_p(U)·I_p(V) = I_p(U∘V)` modulo shuffle relations, for all nonempty
/// `U, V` with `wt(U) + wt(V) ≤ weight_bound`.
pub fn grouplike_check(weight_bound: usize) -> CheckReport {
    let mut report = CheckReport::new("grouplike", weight_bound);
    for u in Word::all_up_to(weight_bound.saturating_sub(1)) {
        for v in Word::all_up_to(weight_bound - u.weight()) {
            let sh = shuffle_words(&u, &v).into_iter().map(|(w, c)| (w, Rational::from_integer(c)));
            let x = phi_coefficient(&u) * phi_coefficient(&v) - pair_with_phi(sh);
            report.test(|| format!("({u}, {v})"), &x);
        }
    }
    report
}

/// For each bidegree `(r, s)` with `1 ≤ r + s ≤ weight_bound`, the sum of
/// `I_p(W)` over words with `r` A's and `s` B's vanishes.
pub fn abelianization_check(weight_bound: usize) -> CheckReport {
    let mut report = CheckReport::new("abelianization", weight_bound);
    for n in 1..=weight_bound {
        for s in 0..=n {
            let sum =
                pair_with_phi(Word::all_of_weight(n).filter(|w| w.depth() == s).map(|w| (w, Rational::from_i64(1))));
            report.test(|| format!("({}, {s})", n - s), &sum);
        }
    }
    report
}

/// `log Φ` truncated at `weight_bound`.
pub fn log_phi(weight_bound: usize) -> WordPolynomial<SymbolPolynomial> {
    let x = phi_expansion(weight_bound) - WordPolynomial::one();
    let mut power = x.clone();
    let mut out = WordPolynomial::zero();
    for n in 1..=weight_bound {
        let c = Rational::new(if n % 2 == 1 { 1 } else { -1 }.into(), (n as i64).into());
        out += power.scale(&SymbolPolynomial::from_rational(&c));
        power = power.concat_truncated(&x, weight_bound);
    }
    out
}

/// `log Φ` has no linear part, pairs to zero with every shuffle `U∘V` of
/// nonempty words, and has vanishing `A^r`, `B^s` coordinates.
pub fn lie_check(weight_bound: usize) -> CheckReport {
    let mut report = CheckReport::new("lie", weight_bound);
    let l = log_phi(weight_bound);
    for w in [Word::a_pow(1), Word::b_pow(1)] {
        report.checked += 1;
        let c = l.coeff(&w);
        if !c.is_zero() {
            report.witnesses.push(Witness { item: format!("linear {w}"), residual: c.to_string() });
        }
    }
    for u in Word::all_up_to(weight_bound.saturating_sub(1)) {
        for v in Word::all_up_to(weight_bound - u.weight()) {
            if v < u {
                continue;
            }
            let mut x = SymbolPolynomial::zero();
            for (w, c) in shuffle_words(&u, &v) {
                x = x + l.coeff(&w).scale(&Rational::from_integer(c));
            }
            report.test(|| format!("primitive ({u}, {v})"), &x);
        }
    }
    for r in 1..=weight_bound {
        for w in [Word::a_pow(r), Word::b_pow(r)] {
            report.test(|| format!("coordinate {w}"), &l.coeff(&w));
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn low_weight_suites() {
        for r in [grouplike_check(4), abelianization_check(4), lie_check(4)] {
            assert!(r.passed(), "{r:?}");
            assert!(r.checked > 0);
        }
    }

    #[test]
    fn log_phi_commutator_coordinate() {
        let l = log_phi(3);
        assert_eq!(l.coeff(&"AB".parse().unwrap()), -SymbolPolynomial::symbol("2".parse().unwrap()));
        assert!(l.coeff(&"A".parse().unwrap()).is_zero());
    }
}
