//! Expansions at 0 of polylogarithms and of the fundamental solution
//! `G₀(z) = P(z)·exp(Λ₀ A)` of `dG = (A/z + B/(z-1)) G dz`.
//!
//! Two independent constructions are provided. [`solve_kz_recursion`]
//! integrates the system for the analytic factor `P` word by word;
//! [`explicit_g0`] assembles each coefficient from polylogarithm series,
//! the projection f′ and shuffles.

mod checks;
mod local;

pub use checks::{asymptotic_zero_check, dual_path_check, kz_equation_check, CheckFailure};
pub use local::{LocalFunction, Pole};

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::scalar::{factorial, rational_to_string, Rational};
use crate::series::PowerSeries;
use crate::words::{proj_f_prime, shuffle, word_to_index, Letter, MzvIndex, Word, WordPolynomial};

pub type QLocalFunction = LocalFunction<Rational>;

/// `Li_{k_1..k_m}(z) = Σ_{0<n_1<..<n_m} z^{n_m}/(n_1^{k_1}..n_m^{k_m})`,
/// known to degree `zdeg`.
pub fn li_series(ix: &MzvIndex, zdeg: usize) -> QLocalFunction {
    // a[n]: sum over chains 0 < n_1 < .. < n_d = n of the weights so far
    let mut a: Vec<Rational> = (0..=zdeg).map(|n| if n == 0 { Rational::zero() } else { Rational::one() }).collect();
    for (d, &k) in ix.ks().iter().enumerate() {
        let mut next = vec![Rational::zero(); zdeg + 1];
        let mut below = Rational::zero();
        for n in 1..=zdeg {
            let numer = if d == 0 { Rational::one() } else { below.clone() };
            next[n] = numer / Rational::from_integer(num_traits::pow(BigInt::from(n), k as usize));
            below += &a[n];
        }
        a = next;
    }
    LocalFunction::from_series(PowerSeries::truncated(a, zdeg)).with_cap(zdeg)
}

/// `Li_x` for a linear combination `x` of words ending in B, via the
/// index dictionary.
pub fn li_of_polynomial(
    x: &WordPolynomial<Rational>,
    zdeg: usize,
    cache: &mut BTreeMap<Word, QLocalFunction>,
) -> QLocalFunction {
    let mut out = LocalFunction::zero().with_cap(zdeg);
    for (w, c) in x.iter() {
        let li = cache.entry(*w).or_insert_with(|| li_series(&word_to_index(w).expect("word ends in B"), zdeg)).clone();
        out = out + li.scale(c);
    }
    out
}

/// Coefficients `J(W)` of `G₀ = 1 + Σ J(W) W`, truncated by weight and by
/// degree in z.
#[derive(Clone, Debug)]
pub struct KzSolution {
    pub weight_bound: usize,
    pub zdeg: usize,
    pub coeffs: BTreeMap<Word, QLocalFunction>,
}

impl KzSolution {
    /// `J(W)`, with `J(1) = 1`.
    pub fn coeff(&self, w: &Word) -> QLocalFunction {
        if w.is_empty() {
            return QLocalFunction::one().with_cap(self.zdeg);
        }
        self.coeffs.get(w).cloned().unwrap_or_else(|| LocalFunction::zero().with_cap(self.zdeg))
    }

    /// `G₀` as a word polynomial over local functions.
    pub fn to_word_polynomial(&self) -> WordPolynomial<QLocalFunction> {
        let mut p = WordPolynomial::monomial(Word::EMPTY, QLocalFunction::one().with_cap(self.zdeg));
        for (w, f) in &self.coeffs {
            p.add_term(*w, f.clone());
        }
        p
    }
}

/// `Λ₀^t / t!`.
fn lambda0_power(t: usize, zdeg: usize) -> QLocalFunction {
    let c = Rational::new(BigInt::one(), factorial(t as u64));
    LocalFunction::monomial(t as u32, 0, PowerSeries::constant(c)).with_cap(zdeg)
}

/// Integrates `dP_W = ([W=AV]P_V - [W=VA]P_V) dz/z + [W=BV]P_V dz/(z-1)`
/// with `P_1 = 1` and `P_W(0) = 0`, then assembles
/// `J(W) = Σ_{W = U A^t} P_U Λ₀^t/t!`.
pub fn solve_kz_recursion(weight_bound: usize, zdeg: usize) -> KzSolution {
    assert!(weight_bound >= 1, "weight bound must be at least 1");
    let mut p: BTreeMap<Word, QLocalFunction> = BTreeMap::new();
    p.insert(Word::EMPTY, QLocalFunction::one().with_cap(zdeg));
    for n in 1..=weight_bound {
        for w in Word::all_of_weight(n) {
            let mut at_zero = LocalFunction::zero().with_cap(zdeg);
            let mut at_one = LocalFunction::zero().with_cap(zdeg);
            let tail = w.suffix(n - 1);
            match w.first() {
                Some(Letter::A) => at_zero = at_zero + p[&tail].clone(),
                Some(Letter::B) => at_one = at_one + p[&tail].clone(),
                None => unreachable!(),
            }
            if w.last() == Some(Letter::A) {
                at_zero = at_zero - p[&w.prefix(n - 1)].clone();
            }
            let c0 = at_zero.canonical().and_then(|c| c.get(&0).map(|s| s.coeff(0))).unwrap_or_else(Rational::zero);
            assert!(c0.is_zero(), "P_{w} would not be analytic at 0");
            let pw = at_zero.integrate_form(Pole::Zero).expect("integrable")
                + at_one.integrate_form(Pole::One).expect("integrable");
            p.insert(w, pw);
        }
    }
    let mut coeffs = BTreeMap::new();
    for w in Word::all_up_to(weight_bound) {
        let mut j = LocalFunction::zero().with_cap(zdeg);
        for t in 0..=w.trailing_a() {
            let head = w.prefix(w.weight() - t);
            j = j + p[&head].clone() * lambda0_power(t, zdeg);
        }
        coeffs.insert(w, j);
    }
    KzSolution { weight_bound, zdeg, coeffs }
}

fn sign(k: usize) -> Rational {
    if k % 2 == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// `J(W)` from the closed formulas:
/// `J(A^r) = Λ₀^r/r!`, `J(W) = (-1)^{dp W} Li_W` for W ending in B, and
/// `J(VA^r) = Σ_{s+t=r} (-1)^{dp W + s} Li_{f′(V∘A^s)} Λ₀^t/t!`.
pub fn explicit_g0(weight_bound: usize, zdeg: usize) -> KzSolution {
    assert!(weight_bound >= 1, "weight bound must be at least 1");
    let mut cache = BTreeMap::new();
    let mut coeffs = BTreeMap::new();
    for w in Word::all_up_to(weight_bound) {
        let r = w.trailing_a();
        let j = if r == w.weight() {
            lambda0_power(r, zdeg)
        } else if r == 0 {
            li_of_polynomial(&WordPolynomial::word(w), zdeg, &mut cache).scale(&sign(w.depth()))
        } else {
            let v = w.prefix(w.weight() - r);
            let mut acc = LocalFunction::zero().with_cap(zdeg);
            for s in 0..=r {
                let t = r - s;
                let sh = proj_f_prime(&shuffle(&WordPolynomial::word(v), &WordPolynomial::word(Word::a_pow(s))));
                let li = li_of_polynomial(&sh, zdeg, &mut cache).scale(&sign(w.depth() + s));
                acc = acc + li * lambda0_power(t, zdeg);
            }
            acc
        };
        coeffs.insert(w, j);
    }
    KzSolution { weight_bound, zdeg, coeffs }
}

/// `{ "i,j": ["c0", "c1", ...] }` with coefficients up to the trusted degree.
pub struct LocalFunctionJson<'a>(pub &'a QLocalFunction);

impl Serialize for LocalFunctionJson<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.entries().len()))?;
        for ((i, j), series) in self.0.entries() {
            let coeffs: Vec<String> = series.padded().iter().map(rational_to_string).collect();
            map.serialize_entry(&format!("{i},{j}"), &coeffs)?;
        }
        map.end()
    }
}

/// `{ word: { "i,j": [...] } }` for every coefficient.
pub struct KzSolutionJson<'a>(pub &'a KzSolution);

impl Serialize for KzSolutionJson<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.coeffs.len()))?;
        for (w, f) in &self.0.coeffs {
            map.serialize_entry(&w.to_string(), &LocalFunctionJson(f))?;
        }
        map.end()
    }
}

/// LaTeX rendering of a local function, e.g.
/// `\log z \log(1-z) \left(z + \frac{1}{4} z^{2}\right)`.
pub fn local_function_latex(f: &QLocalFunction) -> String {
    if f.entries().is_empty() {
        return "0".into();
    }
    let mut parts = Vec::new();
    for ((i, j), s) in f.entries() {
        let mut logs = String::new();
        match i {
            0 => {}
            1 => logs.push_str("\\log z"),
            _ => logs.push_str(&format!("\\log^{{{i}}} z")),
        }
        if *j > 0 {
            if !logs.is_empty() {
                logs.push(' ');
            }
            match j {
                1 => logs.push_str("\\log(1-z)"),
                _ => logs.push_str(&format!("\\log^{{{j}}}(1-z)")),
            }
        }
        let series = series_latex(s);
        let piece = match (logs.is_empty(), series.as_str()) {
            (true, _) => series,
            (false, "1") => logs,
            (false, "-1") => format!("-{logs}"),
            (false, _) => format!("{logs} \\left({series}\\right)"),
        };
        parts.push(piece);
    }
    parts.join(" + ")
}

fn series_latex(s: &PowerSeries<Rational>) -> String {
    let mut out = String::new();
    for (n, c) in s.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let neg = c < &Rational::zero();
        let a = if neg { -c.clone() } else { c.clone() };
        let coeff = if a.is_one() && n > 0 {
            String::new()
        } else if a.denom().is_one() {
            a.numer().to_string()
        } else {
            format!("\\frac{{{}}}{{{}}}", a.numer(), a.denom())
        };
        let mono = match n {
            0 => String::new(),
            1 => "z".into(),
            _ => format!("z^{{{n}}}"),
        };
        let term = match (coeff.is_empty(), mono.is_empty()) {
            (_, true) => coeff,
            (true, false) => mono,
            (false, false) => format!("{coeff} {mono}"),
        };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&term);
    }
    if let Some(k) = s.known() {
        out.push_str(&format!(" + O(z^{{{}}})", k + 1));
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}
