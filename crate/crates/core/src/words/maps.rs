//! Projections, the involution, the transpose maps F′, F and their partners
//! g′₂∘g′₁, g₂∘g₁, the pairing and the coproduct.

use std::collections::BTreeMap;

use super::polynomial::{shuffle, WordPolynomial};
use super::{Letter, Word};
use crate::scalar::Coefficient;

/// Kills words ending in A.
pub fn proj_f_prime<C: Coefficient>(x: &WordPolynomial<C>) -> WordPolynomial<C> {
    x.filter(|w| w.last() != Some(Letter::A))
}

/// Kills words starting with B or ending with A.
pub fn proj_f<C: Coefficient>(x: &WordPolynomial<C>) -> WordPolynomial<C> {
    x.filter(|w| w.is_empty() || w.in_m())
}

/// Swaps A and B letterwise.
pub fn tau<C: Coefficient>(x: &WordPolynomial<C>) -> WordPolynomial<C> {
    x.map_words(|w| w.tau())
}

fn sign<C: Coefficient>(k: usize) -> C {
    if k % 2 == 0 {
        C::one()
    } else {
        -C::one()
    }
}

/// `F′(W′A^r) = (-1)^r f′(W′ ∘ A^r)` with `W′` empty or ending in B.
pub fn map_f_prime<C: Coefficient>(w: &Word) -> WordPolynomial<C> {
    let r = w.trailing_a();
    let head = w.prefix(w.weight() - r);
    let s = shuffle(&WordPolynomial::word(head), &WordPolynomial::word(Word::a_pow(r)));
    proj_f_prime(&s).scale(&sign(r))
}

/// `F(B^r W′ A^s) = Σ_{a≤r, b≤s} (-1)^{a+b} f′(B^a ∘ B^{r-a}W′A^{s-b} ∘ A^b)`
/// with `W′` empty or in M.
///
/// Panics if the image leaves `M ∪ Q·1`.
pub fn map_f<C: Coefficient>(w: &Word) -> WordPolynomial<C> {
    let r = w.leading_b();
    let s = if r == w.weight() { 0 } else { w.trailing_a() };
    let core = w.suffix(w.weight() - r).prefix(w.weight() - r - s);
    let mut out = WordPolynomial::zero();
    for a in 0..=r {
        for b in 0..=s {
            let middle = Word::b_pow(r - a).concat(&core).concat(&Word::a_pow(s - b));
            let left = shuffle(&WordPolynomial::word(Word::b_pow(a)), &WordPolynomial::word(middle));
            let full = shuffle(&left, &WordPolynomial::word(Word::a_pow(b)));
            out += proj_f_prime(&full).scale(&sign(a + b));
        }
    }
    assert!(out.words().all(|v| v.is_empty() || v.in_m()), "F({w}) left M ∪ Q·1: {out:?}");
    out
}

/// `g′₂∘g′₁(w) = Σ_S (-1)^{|S|} (w without S)·A^{|S|}` over subsets `S` of
/// the A-positions of `w`.
pub fn g_transpose_prime<C: Coefficient>(w: &Word) -> WordPolynomial<C> {
    let a_mask = positions(w, Letter::A);
    let all = full_mask(w);
    let mut out = WordPolynomial::zero();
    for s in submasks(a_mask) {
        let k = s.count_ones() as usize;
        let rest = w.select(all & !s).concat(&Word::a_pow(k));
        out.add_term(rest, sign::<C>(k));
    }
    out
}

/// `g₂∘g₁(w) = Σ (-1)^{|S_A|+|S_B|} B^{|S_B|}·(w without S_A ∪ S_B)·A^{|S_A|}`
/// over subsets `S_A` of the A-positions and `S_B` of the B-positions.
pub fn g_transpose<C: Coefficient>(w: &Word) -> WordPolynomial<C> {
    let a_mask = positions(w, Letter::A);
    let b_mask = positions(w, Letter::B);
    let all = full_mask(w);
    let mut out = WordPolynomial::zero();
    for sa in submasks(a_mask) {
        for sb in submasks(b_mask) {
            let (ka, kb) = (sa.count_ones() as usize, sb.count_ones() as usize);
            let rest = Word::b_pow(kb).concat(&w.select(all & !(sa | sb))).concat(&Word::a_pow(ka));
            out.add_term(rest, sign::<C>(ka + kb));
        }
    }
    out
}

/// `⟨x, y⟩` with the words forming an orthonormal basis.
pub fn pairing<C: Coefficient>(x: &WordPolynomial<C>, y: &WordPolynomial<C>) -> C {
    let mut acc = C::zero();
    for (w, c) in x.iter() {
        if let Some(d) = y.get(w) {
            acc = acc + c.clone() * d.clone();
        }
    }
    acc
}

/// An element of the tensor square, keyed by `(left, right)`.
pub type Tensor<C> = BTreeMap<(Word, Word), C>;

/// The coproduct for which A and B are primitive:
/// `Δ(w) = Σ_S w|_S ⊗ w|_{S^c}` over subsets of positions.
pub fn coproduct<C: Coefficient>(x: &WordPolynomial<C>) -> Tensor<C> {
    let mut out: Tensor<C> = BTreeMap::new();
    for (w, c) in x.iter() {
        let all = full_mask(w);
        for s in submasks(all) {
            let key = (w.select(s), w.select(all & !s));
            let entry = out.entry(key).or_insert_with(C::zero);
            *entry = entry.clone() + c.clone();
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn full_mask(w: &Word) -> u64 {
    if w.weight() == 64 {
        u64::MAX
    } else {
        (1u64 << w.weight()) - 1
    }
}

fn positions(w: &Word, l: Letter) -> u64 {
    (0..w.weight()).filter(|&i| w.letter(i) == l).fold(0, |m, i| m | (1 << i))
}

/// All submasks of `mask`, including 0 and `mask`.
fn submasks(mask: u64) -> impl Iterator<Item = u64> {
    let mut next = Some(mask);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 { None } else { Some((cur - 1) & mask) };
        Some(cur)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;
    use num_bigint::BigInt;

    type P = WordPolynomial<Rational>;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn p(terms: &[(&str, i64)]) -> P {
        P::from_terms(terms.iter().map(|(s, c)| (w(s), Rational::from_integer(BigInt::from(*c)))))
    }

    #[test]
    fn projections() {
        assert_eq!(proj_f_prime(&p(&[("AB", 1)])), p(&[("AB", 1)]));
        assert!(proj_f_prime(&p(&[("BA", 1)])).is_zero());
        assert_eq!(proj_f_prime(&p(&[("AB", 1), ("BA", 1), ("1", 1)])), p(&[("AB", 1), ("1", 1)]));
        assert_eq!(proj_f(&p(&[("AB", 1), ("BA", 1), ("BAB", 1), ("ABA", 1)])), p(&[("AB", 1)]));
        assert_eq!(tau(&p(&[("AB", 1)])), p(&[("BA", 1)]));
        assert_eq!(tau(&p(&[("AAB", 1)])), p(&[("BBA", 1)]));
    }

    #[test]
    fn f_prime_values() {
        assert_eq!(map_f_prime::<Rational>(&w("AB")), p(&[("AB", 1)]));
        assert_eq!(map_f_prime::<Rational>(&w("BA")), p(&[("AB", -1)]));
        assert!(map_f_prime::<Rational>(&w("A")).is_zero());
        assert_eq!(map_f_prime::<Rational>(&w("1")), p(&[("1", 1)]));
    }

    #[test]
    fn f_values() {
        assert_eq!(map_f::<Rational>(&w("AB")), p(&[("AB", 1)]));
        assert_eq!(map_f::<Rational>(&w("BA")), p(&[("AB", -1)]));
        assert!(map_f::<Rational>(&w("B")).is_zero());
        assert!(map_f::<Rational>(&w("A")).is_zero());
        assert_eq!(map_f::<Rational>(&w("BAB")), p(&[("ABB", -2)]));
        assert_eq!(map_f::<Rational>(&w("ABA")), p(&[("AAB", -2)]));
    }

    #[test]
    fn g_values() {
        assert_eq!(g_transpose_prime::<Rational>(&w("B")), p(&[("B", 1)]));
        assert!(g_transpose_prime::<Rational>(&w("A")).is_zero());
        assert_eq!(g_transpose::<Rational>(&w("AB")), p(&[("AB", 1), ("BA", -1)]));
        assert!(g_transpose::<Rational>(&w("BA")).is_zero());
        assert_eq!(g_transpose::<Rational>(&w("1")), p(&[("1", 1)]));
    }

    #[test]
    fn coproduct_values() {
        let d = coproduct(&p(&[("AB", 1)]));
        let expect: Vec<(&str, &str)> = vec![("1", "AB"), ("A", "B"), ("B", "A"), ("AB", "1")];
        assert_eq!(d.len(), 4);
        for (l, r) in expect {
            assert_eq!(d[&(w(l), w(r))], Rational::from_integer(1.into()));
        }
        let d1 = coproduct(&p(&[("1", 1)]));
        assert_eq!(d1.len(), 1);
        assert!(d1.contains_key(&(Word::EMPTY, Word::EMPTY)));
    }
}
