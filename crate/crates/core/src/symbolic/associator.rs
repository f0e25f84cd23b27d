//! Coefficients `I_p(W)` of the associator.

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use num_traits::One;
use serde::Serialize;

use super::polynomial::SymbolPolynomial;
use crate::cache::caching_enabled;
use crate::scalar::{factorial, Rational};
use crate::words::{index_to_word, word_to_index, MzvIndex, Word, WordPolynomial};

fn phi_cache() -> &'static RwLock<HashMap<Word, SymbolPolynomial>> {
    static CACHE: OnceLock<RwLock<HashMap<Word, SymbolPolynomial>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

fn sign(k: usize) -> Rational {
    if k % 2 == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// `Z_p(W) = ζ_p(index of W)` for `W ∈ M`, `Z_p(1) = 1`, extended linearly.
pub fn z_of(x: &WordPolynomial<Rational>) -> SymbolPolynomial {
    let mut out = SymbolPolynomial::zero();
    for (w, c) in x.iter() {
        if w.is_empty() {
            out = out + SymbolPolynomial::constant(c.clone());
        } else {
            assert!(w.in_m(), "Z_p is defined on M ∪ Q·1 only, got {w}");
            let ix = word_to_index(w).expect("words in M have an index");
            out = out + SymbolPolynomial::symbol(ix).scale(c);
        }
    }
    out
}

fn compute_phi(w: &Word) -> SymbolPolynomial {
    if w.is_empty() {
        return SymbolPolynomial::one();
    }
    if w.in_m() {
        let ix = word_to_index(w).expect("words in M have an index");
        return SymbolPolynomial::symbol(ix).scale(&sign(w.depth()));
    }
    // F keeps the number of B's, so every word of F(W) has the depth of W.
    let f = crate::words::map_f::<Rational>(w);
    z_of(&f).scale(&sign(w.depth()))
}

/// `I_p(W)`, the coefficient of `W` in the associator, as a polynomial in
/// admissible ζ_p-symbols of weight `wt(W)`.
pub fn phi_coefficient(w: &Word) -> SymbolPolynomial {
    if !caching_enabled() {
        return compute_phi(w);
    }
    if let Some(v) = phi_cache().read().expect("cache poisoned").get(w) {
        return v.clone();
    }
    let v = compute_phi(w);
    phi_cache().write().expect("cache poisoned").entry(*w).or_insert(v).clone()
}

/// `1 + Σ_{1≤wt(W)≤bound} I_p(W)·W`.
pub fn phi_expansion(weight_bound: usize) -> WordPolynomial<SymbolPolynomial> {
    assert!(weight_bound >= 1, "weight bound must be at least 1");
    let mut out = WordPolynomial::one();
    for w in Word::all_up_to(weight_bound) {
        out.add_term(w, phi_coefficient(&w));
    }
    out
}

/// A value together with the hypothesis it rests on.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Regularized {
    pub value: SymbolPolynomial,
    /// True when the identity assumes convergence of the defining limit;
    /// nothing in this crate decides that convergence.
    pub conditional: bool,
}

/// `ζ_p(k₁,…,k_{m−1},1) = (−1)^m I_p(BA^{k_{m−1}−1}B⋯A^{k₁−1}B)`.
///
/// Admissible indices come back as their own symbol, unconditionally.
pub fn regularized_mzv(ix: &MzvIndex) -> Regularized {
    if ix.is_admissible() {
        return Regularized { value: SymbolPolynomial::symbol(ix.clone()), conditional: false };
    }
    let w = index_to_word(ix);
    Regularized { value: phi_coefficient(&w).scale(&sign(ix.depth())), conditional: true }
}

/// `Σ_{w = B^j w″} λ^j/j! · I_p(w″)`, as coefficients of `λ^j`.
pub fn asymptotic_at_one(w: &Word) -> Vec<SymbolPolynomial> {
    let lead = w.leading_b();
    (0..=lead)
        .map(|j| {
            let rest = w.suffix(w.weight() - j);
            let inv = Rational::from_integer(factorial(j as u64)).recip();
            phi_coefficient(&rest).scale(&inv)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cache::set_caching;
    use crate::scalar::ratio;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn z(s: &str) -> SymbolPolynomial {
        SymbolPolynomial::symbol(s.parse().unwrap())
    }

    #[test]
    fn low_weight_coefficients() {
        assert_eq!(phi_coefficient(&w("AB")), -z("2"));
        assert_eq!(phi_coefficient(&w("BA")), z("2"));
        assert_eq!(phi_coefficient(&w("ABA")), z("3").scale(&ratio(2, 1)));
        assert!(phi_coefficient(&w("A")).is_zero());
        assert!(phi_coefficient(&w("B")).is_zero());
        assert_eq!(phi_coefficient(&Word::EMPTY), SymbolPolynomial::one());
    }

    #[test]
    fn regularization() {
        assert!(regularized_mzv(&"1".parse().unwrap()).value.is_zero());
        let r = regularized_mzv(&"2,1".parse().unwrap());
        assert!(r.conditional);
        assert_eq!(r.value, z("1,2").scale(&ratio(-2, 1)));
        assert!(!regularized_mzv(&"3".parse().unwrap()).conditional);
    }

    #[test]
    fn asymptotics() {
        assert_eq!(asymptotic_at_one(&w("AB")), vec![-z("2")]);
        assert_eq!(asymptotic_at_one(&w("B")), vec![SymbolPolynomial::zero(), SymbolPolynomial::one()]);
        assert!(asymptotic_at_one(&w("AAA")).iter().all(|c| c.is_zero()));
    }

    #[test]
    fn cache_toggle_gives_same_values() {
        let a = phi_coefficient(&w("BABA"));
        set_caching(false);
        let b = phi_coefficient(&w("BABA"));
        set_caching(true);
        assert_eq!(a, b);
    }
}
