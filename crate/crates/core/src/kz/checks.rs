//! Consistency checks on KZ solutions.

use num_traits::One;
use serde::Serialize;

use super::{explicit_g0, solve_kz_recursion, KzSolution, LocalFunction, QLocalFunction};
use crate::scalar::Rational;
use crate::series::PowerSeries;
use crate::words::{Letter, Word, WordPolynomial};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckFailure {
    pub word: String,
    pub reason: String,
}

impl CheckFailure {
    fn new(word: &Word, reason: impl Into<String>) -> Self {
        Self { word: word.to_string(), reason: reason.into() }
    }
}

/// For every word: `z d/dz J(AW′) = J(W′)` and `(z-1) d/dz J(BW′) = J(W′)`.
pub fn kz_equation_check(sol: &KzSolution) -> Vec<CheckFailure> {
    let z_minus_one = PowerSeries::polynomial(vec![-num_traits::one::<Rational>(), num_traits::one()]);
    let mut failures = Vec::new();
    for (w, f) in &sol.coeffs {
        let tail = sol.coeff(&w.suffix(w.weight() - 1));
        let lhs = match w.first() {
            Some(Letter::A) => f.theta(),
            _ => f.differentiate().map(|d| d.mul_poly(&z_minus_one)),
        };
        match lhs {
            Ok(lhs) if lhs.agrees_with(&tail, None) => {}
            Ok(_) => failures.push(CheckFailure::new(w, "derivative does not match the system")),
            Err(e) => failures.push(CheckFailure::new(w, e.to_string())),
        }
    }
    failures
}

/// `G₀·exp(-Λ₀ A)` has coefficients free of `Λ₀` that vanish at 0, apart
/// from the constant term 1.
pub fn asymptotic_zero_check(sol: &KzSolution) -> Vec<CheckFailure> {
    let g0 = sol.to_word_polynomial();
    let mut e: WordPolynomial<QLocalFunction> = WordPolynomial::zero();
    let mut power = QLocalFunction::one().with_cap(sol.zdeg);
    let mut fact = Rational::from_integer(1.into());
    for r in 0..=sol.weight_bound {
        e.add_term(Word::a_pow(r), power.scale(&fact.recip()));
        power = power * (-LocalFunction::lambda0());
        fact *= Rational::from_integer((r as i64 + 1).into());
    }
    let p = g0.concat_truncated(&e, sol.weight_bound);
    let mut failures = Vec::new();
    for w in Word::all_up_to(sol.weight_bound) {
        let c = p.coeff(&w);
        let Some(canon) = c.canonical() else {
            failures.push(CheckFailure::new(&w, "no canonical form"));
            continue;
        };
        if canon.keys().any(|&i| i > 0) {
            failures.push(CheckFailure::new(&w, "log z survives"));
        } else if canon.get(&0).is_some_and(|s| s.coeff(0) != Rational::from_integer(0.into())) {
            failures.push(CheckFailure::new(&w, "nonzero value at 0"));
        }
    }
    if !p.coeff(&Word::EMPTY).agrees_with(&QLocalFunction::one(), None) {
        failures.push(CheckFailure::new(&Word::EMPTY, "constant term is not 1"));
    }
    failures
}

/// Words where the recursion and the closed formulas disagree.
pub fn dual_path_check(weight_bound: usize, zdeg: usize) -> Vec<CheckFailure> {
    let a = solve_kz_recursion(weight_bound, zdeg);
    let b = explicit_g0(weight_bound, zdeg);
    Word::all_up_to(weight_bound)
        .filter(|w| !a.coeff(w).agrees_with(&b.coeff(w), Some(zdeg)))
        .map(|w| CheckFailure::new(&w, "recursion and closed formula differ"))
        .collect()
}
