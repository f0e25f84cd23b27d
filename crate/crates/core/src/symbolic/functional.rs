//! Formal functions of `z` built from `Li_W(z)`, `Li_W(1−z)`, `log z` and
//! `log(1−z)`, and the reflection `z ↦ 1−z` of the KZ solution.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::One;
use serde::Serialize;

use super::associator::{asymptotic_at_one, phi_coefficient};
use super::polynomial::{Style, SymbolPolynomial};
use super::relations::reduce_graded;
use crate::scalar::{factorial, Rational};
use crate::words::{map_f_prime, shuffle_words, word_to_index, Letter, Word, WordPolynomial};

/// Generators of the function algebra. `Li` and `LiReflected` carry words
/// ending in B; `Li_W` is the series of the index of `W`, so `Li_{AB} = Li₂`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Generator {
    /// `log z`
    Log0,
    /// `log(1−z)`
    Log1,
    /// `Li_W(z)`
    Li(Word),
    /// `Li_W(1−z)`
    LiReflected(Word),
}

impl Generator {
    pub fn weight(&self) -> usize {
        match self {
            Generator::Log0 | Generator::Log1 => 1,
            Generator::Li(w) | Generator::LiReflected(w) => w.weight(),
        }
    }

    pub fn reflect(&self) -> Generator {
        match *self {
            Generator::Log0 => Generator::Log1,
            Generator::Log1 => Generator::Log0,
            Generator::Li(w) => Generator::LiReflected(w),
            Generator::LiReflected(w) => Generator::Li(w),
        }
    }

    fn render(&self, style: Style) -> String {
        let li = |w: &Word, arg: &str| {
            let ix = word_to_index(w).expect("Li generators end in B");
            match style {
                Style::Plain => format!("Li_{{{ix}}}({arg})"),
                Style::Latex => format!("\\mathrm{{Li}}_{{{ix}}}({arg})"),
            }
        };
        match (self, style) {
            (Generator::Log0, Style::Plain) => "log(z)".into(),
            (Generator::Log1, Style::Plain) => "log(1-z)".into(),
            (Generator::Log0, Style::Latex) => "\\log z".into(),
            (Generator::Log1, Style::Latex) => "\\log(1-z)".into(),
            (Generator::Li(w), _) => li(w, "z"),
            (Generator::LiReflected(w), _) => li(w, "1-z"),
        }
    }
}

/// A sorted product of generators; the empty product is 1.
pub type FnMonomial = Vec<Generator>;

/// A polynomial in the generators with ζ_p-symbol coefficients.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct FnExpr {
    terms: BTreeMap<FnMonomial, SymbolPolynomial>,
}

/// `d/dz f = over_z / z + over_one_minus_z / (1 − z)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FnDerivative {
    pub over_z: FnExpr,
    pub over_one_minus_z: FnExpr,
}

impl FnExpr {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(SymbolPolynomial::one())
    }

    pub fn constant(c: SymbolPolynomial) -> Self {
        Self::term(Vec::new(), c)
    }

    pub fn rational(q: Rational) -> Self {
        Self::constant(SymbolPolynomial::constant(q))
    }

    pub fn generator(g: Generator) -> Self {
        Self::term(vec![g], SymbolPolynomial::one())
    }

    pub fn log0() -> Self {
        Self::generator(Generator::Log0)
    }

    pub fn log1() -> Self {
        Self::generator(Generator::Log1)
    }

    /// `Li_W(z)` for `W` ending in B.
    pub fn li(w: Word) -> Self {
        assert!(w.in_m_prime(), "Li_W needs W ending in B, got {w}");
        Self::generator(Generator::Li(w))
    }

    /// `Li_W(1−z)` for `W` ending in B.
    pub fn li_reflected(w: Word) -> Self {
        assert!(w.in_m_prime(), "Li_W needs W ending in B, got {w}");
        Self::generator(Generator::LiReflected(w))
    }

    pub fn term(mut m: FnMonomial, c: SymbolPolynomial) -> Self {
        m.sort();
        let mut e = Self::zero();
        e.add_term(m, c);
        e
    }

    fn add_term(&mut self, m: FnMonomial, c: SymbolPolynomial) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m.clone()).or_default();
        *e = std::mem::take(e) + c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn terms(&self) -> &BTreeMap<FnMonomial, SymbolPolynomial> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &SymbolPolynomial) -> Self {
        let mut out = Self::zero();
        for (m, d) in &self.terms {
            out.add_term(m.clone(), d.clone() * c.clone());
        }
        out
    }

    pub fn scale_q(&self, q: &Rational) -> Self {
        self.scale(&SymbolPolynomial::constant(q.clone()))
    }

    pub fn pow(&self, n: usize) -> Self {
        (0..n).fold(Self::one(), |acc, _| acc * self.clone())
    }

    /// Replaces generators by expressions; `None` keeps the generator.
    pub fn substitute<F: FnMut(&Generator) -> Option<FnExpr>>(&self, mut f: F) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut acc = Self::constant(c.clone());
            for g in m {
                acc = acc * f(g).unwrap_or_else(|| Self::generator(*g));
            }
            out = out + acc;
        }
        out
    }

    /// `f(z) ↦ f(1−z)`.
    pub fn reflect(&self) -> Self {
        self.substitute(|g| Some(Self::generator(g.reflect())))
    }

    /// Rewrites `Li_{B^q}(z) = (−log(1−z))^q/q!` and
    /// `Li_{B^q}(1−z) = (−log z)^q/q!`.
    pub fn normalize(&self) -> Self {
        self.substitute(|g| match *g {
            Generator::Li(w) if w.depth() == w.weight() => Some(neg_log_power(Self::log1(), w.weight())),
            Generator::LiReflected(w) if w.depth() == w.weight() => Some(neg_log_power(Self::log0(), w.weight())),
            _ => None,
        })
    }

    /// Derivative by the rules `d log z = 1/z`, `d log(1−z) = −1/(1−z)`,
    /// `d Li_{AV}(z) = Li_V(z)/z`, `d Li_{BV}(z) = Li_V(z)/(1−z)` and the chain
    /// rule for `1−z`; `Li_∅ = 1`. The result is normalized.
    pub fn derivative(&self) -> FnDerivative {
        let mut over_z = Self::zero();
        let mut over_one_minus_z = Self::zero();
        for (m, c) in &self.terms {
            for i in 0..m.len() {
                let rest: FnMonomial = m.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, g)| *g).collect();
                let rest = Self::term(rest, c.clone());
                let (x, y) = generator_derivative(&m[i]);
                over_z = over_z + rest.clone() * x;
                over_one_minus_z = over_one_minus_z + rest * y;
            }
        }
        FnDerivative { over_z: over_z.normalize(), over_one_minus_z: over_one_minus_z.normalize() }
    }

    /// Graded pieces are homogeneous when `weight(monomial) + weight(coeff)`
    /// is constant; returns that weight.
    pub fn weight(&self) -> Option<usize> {
        let mut ws = Vec::new();
        for (m, c) in &self.terms {
            let mw: usize = m.iter().map(|g| g.weight()).sum();
            for cw in c.graded_parts().keys() {
                ws.push(mw + cw);
            }
        }
        let first = *ws.first()?;
        ws.iter().all(|&w| w == first).then_some(first)
    }

    /// Reduces every coefficient modulo shuffle relations.
    pub fn reduce_coefficients(&self) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), reduce_graded(c, false));
        }
        out
    }

    /// For expressions free of `Li_W(1−z)`: the linear combination of the
    /// iterated integrals `J(W)` it equals, obtained with the shuffle
    /// product `J(U)J(V) = J(U∘V)`, `J(A) = log z`, `J(B) = log(1−z)`,
    /// `J(W) = (−1)^{dp W} Li_W(z)`. Iterated integrals are linearly
    /// independent, so this is a normal form.
    pub fn to_iterated_integrals(&self) -> Option<WordPolynomial<SymbolPolynomial>> {
        let mut out: WordPolynomial<SymbolPolynomial> = WordPolynomial::zero();
        for (m, c) in &self.terms {
            let mut acc: WordPolynomial<Rational> = WordPolynomial::one();
            for g in m {
                let (w, sign) = match *g {
                    Generator::Log0 => (Word::a_pow(1), 1),
                    Generator::Log1 => (Word::b_pow(1), 1),
                    Generator::Li(w) => (w, if w.depth() % 2 == 0 { 1 } else { -1 }),
                    Generator::LiReflected(_) => return None,
                };
                let mut next = WordPolynomial::zero();
                for (u, a) in acc.iter() {
                    for (v, k) in shuffle_words(u, &w) {
                        next.add_term(v, a * Rational::from_integer(k * sign));
                    }
                }
                acc = next;
            }
            for (w, a) in acc.iter() {
                out.add_term(*w, c.scale(a));
            }
        }
        Some(out)
    }

    pub fn render(&self, style: Style) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (m, c) in &self.terms {
            let mono: Vec<String> = m.iter().map(|g| g.render(style)).collect();
            let joiner = if style == Style::Plain { "*" } else { " " };
            let mono = mono.join(joiner);
            let coeff = c.render(style);
            let single = c.terms().len() == 1;
            let part = if m.is_empty() {
                coeff
            } else if coeff == "1" {
                mono
            } else if coeff == "-1" {
                format!("-{mono}")
            } else if single {
                format!("{coeff}{joiner}{mono}")
            } else {
                format!("({coeff}){joiner}{mono}")
            };
            parts.push(part);
        }
        let mut out = parts[0].clone();
        for p in &parts[1..] {
            match p.strip_prefix('-') {
                Some(rest) => {
                    out.push_str(" - ");
                    out.push_str(rest);
                }
                None => {
                    out.push_str(" + ");
                    out.push_str(p);
                }
            }
        }
        out
    }
}

fn neg_log_power(log: FnExpr, q: usize) -> FnExpr {
    let inv = Rational::from_integer(factorial(q as u64)).recip();
    let sign = if q % 2 == 0 { inv } else { -inv };
    log.pow(q).scale_q(&sign)
}

fn generator_derivative(g: &Generator) -> (FnExpr, FnExpr) {
    let tail = |w: &Word, reflected: bool| {
        let rest = w.suffix(w.weight() - 1);
        if rest.is_empty() {
            FnExpr::one()
        } else if reflected {
            FnExpr::li_reflected(rest)
        } else {
            FnExpr::li(rest)
        }
    };
    match g {
        Generator::Log0 => (FnExpr::one(), FnExpr::zero()),
        Generator::Log1 => (FnExpr::zero(), -FnExpr::one()),
        Generator::Li(w) => match w.first() {
            Some(Letter::A) => (tail(w, false), FnExpr::zero()),
            _ => (FnExpr::zero(), tail(w, false)),
        },
        Generator::LiReflected(w) => match w.first() {
            Some(Letter::A) => (FnExpr::zero(), -tail(w, true)),
            _ => (-tail(w, true), FnExpr::zero()),
        },
    }
}

impl fmt::Display for FnExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(Style::Plain))
    }
}

impl fmt::Debug for FnExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Add for FnExpr {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
        self
    }
}

impl Neg for FnExpr {
    type Output = Self;
    fn neg(self) -> Self {
        Self { terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect() }
    }
}

impl Sub for FnExpr {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Mul for FnExpr {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            for (n, d) in &rhs.terms {
                let mut k = m.clone();
                k.extend(n.iter().copied());
                k.sort();
                out.add_term(k, c.clone() * d.clone());
            }
        }
        out
    }
}

fn sign(k: usize) -> Rational {
    if k % 2 == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

fn li_of(x: &WordPolynomial<Rational>) -> FnExpr {
    let mut out = FnExpr::zero();
    for (w, c) in x.iter() {
        out = out + FnExpr::li(*w).scale_q(c);
    }
    out
}

/// `J(W)(z)` from the closed formulas, as an [`FnExpr`]:
/// `Λ₀^r/r!` for `A^r`, `(−1)^{dp W} Li_W` for W ending in B, and
/// `Σ_{s+t=r} (−1)^{dp W+s} Li_{f′(V∘A^s)} Λ₀^t/t!` for `VA^r`.
pub fn j_expr(w: &Word) -> FnExpr {
    let r = w.trailing_a();
    let e = if w.is_empty() {
        FnExpr::one()
    } else if r == w.weight() {
        FnExpr::log0().pow(r).scale_q(&Rational::from_integer(factorial(r as u64)).recip())
    } else if r == 0 {
        FnExpr::li(*w).scale_q(&sign(w.depth()))
    } else {
        let v = w.prefix(w.weight() - r);
        let mut acc = FnExpr::zero();
        for s in 0..=r {
            let t = r - s;
            let sh = map_f_prime::<Rational>(&v.concat(&Word::a_pow(s)));
            // map_f_prime carries (−1)^s already.
            let lt = FnExpr::log0().pow(t).scale_q(&Rational::from_integer(factorial(t as u64)).recip());
            acc = acc + li_of(&sh).scale_q(&sign(w.depth())) * lt;
        }
        acc
    };
    e.normalize()
}

/// The two sides of `J(W)(1−z) = Σ_{W=W′W″} J(τW′)(z)·I_p(W″)`.
pub fn functional_equation_sides(w: &Word) -> (FnExpr, FnExpr) {
    let lhs = j_expr(w).reflect().normalize();
    let mut rhs = FnExpr::zero();
    for k in 0..=w.weight() {
        let head = w.prefix(k);
        let tail = w.suffix(w.weight() - k);
        let i = phi_coefficient(&tail);
        if i.is_zero() {
            continue;
        }
        rhs = rhs + j_expr(&head.tau()).scale(&i);
    }
    (lhs, rhs.normalize())
}

/// `Li_W(1−z)` for `W` ending in B, written through functions of `z`.
pub fn reflection_formula(w: &Word) -> FnExpr {
    assert!(w.in_m_prime(), "reflection formula needs W ending in B, got {w}");
    let (_, rhs) = functional_equation_sides(w);
    rhs.scale_q(&sign(w.depth()))
}

/// A polynomial in one variable `λ` over the symbols, by ascending power.
fn lambda_polynomial(x: &FnExpr, lambda: Generator) -> Vec<SymbolPolynomial> {
    let mut out: Vec<SymbolPolynomial> = Vec::new();
    for (m, c) in x.terms() {
        assert!(m.iter().all(|g| *g == lambda), "expected a polynomial in {lambda:?}, got {m:?}");
        if out.len() <= m.len() {
            out.resize(m.len() + 1, SymbolPolynomial::zero());
        }
        out[m.len()] = out[m.len()].clone() + c.clone();
    }
    out
}

fn asymptotic_expr(w: &Word, lambda: Generator) -> FnExpr {
    let mut out = FnExpr::zero();
    for (j, c) in asymptotic_at_one(w).into_iter().enumerate() {
        out = out + FnExpr::generator(lambda).pow(j).scale(&c);
    }
    out
}

/// The regularized value at `z → 1` as a polynomial in `λ = log(1−z)`:
/// `Li_V(1−z) → 0`, `log z → 0`, `Li_V(z) → (−1)^{dp V}` times the
/// asymptotic expansion of `J(V)` at 1.
pub fn limit_at_one(x: &FnExpr) -> Vec<SymbolPolynomial> {
    let e = x.substitute(|g| match *g {
        Generator::Log0 | Generator::LiReflected(_) => Some(FnExpr::zero()),
        Generator::Li(w) => Some(asymptotic_expr(&w, Generator::Log1).scale_q(&sign(w.depth()))),
        Generator::Log1 => None,
    });
    lambda_polynomial(&e, Generator::Log1)
}

/// The regularized value at `z → 0` as a polynomial in `λ = log z`.
pub fn limit_at_zero(x: &FnExpr) -> Vec<SymbolPolynomial> {
    let e = x.substitute(|g| match *g {
        Generator::Log1 | Generator::Li(_) => Some(FnExpr::zero()),
        Generator::LiReflected(w) => Some(asymptotic_expr(&w, Generator::Log0).scale_q(&sign(w.depth()))),
        Generator::Log0 => None,
    });
    lambda_polynomial(&e, Generator::Log0)
}

fn residual(coeffs: &[SymbolPolynomial]) -> Vec<String> {
    let reduced: Vec<SymbolPolynomial> = coeffs.iter().map(|c| reduce_graded(c, false)).collect();
    if reduced.iter().all(|c| c.is_zero()) {
        Vec::new()
    } else {
        reduced.iter().map(|c| c.to_string()).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FunctionalEquationReport {
    pub word: String,
    pub lhs: String,
    pub rhs: String,
    /// `d/dz (LHS − RHS)` is zero with all generators independent, after
    /// rewriting lower-weight `Li_V(1−z)` by their own equations.
    pub derivative_zero_free: bool,
    /// The same derivative is exactly zero as a combination of iterated
    /// integrals, without using any relation among the symbols.
    pub derivative_zero: bool,
    /// `λ^k`-coefficients of the regularized `z → 1` value of LHS − RHS
    /// modulo shuffle relations; empty when it vanishes.
    pub limit_at_one_residual: Vec<String>,
    /// The same at `z → 0` with `λ = log z`.
    pub limit_at_zero_residual: Vec<String>,
    pub passed: bool,
}

/// Checks the functional equation for `J(W)` by differentiating and
/// comparing regularized limits. The derivative step assumes the equations
/// of lower weight, which a full suite checks first.
pub fn verify_functional_equation(w: &Word) -> FunctionalEquationReport {
    let (lhs, rhs) = functional_equation_sides(w);
    let diff = lhs.clone() - rhs.clone();
    let d = diff.derivative();
    let lower = |x: &FnExpr| {
        x.substitute(|g| match *g {
            Generator::LiReflected(v) => Some(reflection_formula(&v)),
            _ => None,
        })
        .normalize()
    };
    let x = lower(&d.over_z);
    let y = lower(&d.over_one_minus_z);
    let derivative_zero_free = x.is_zero() && y.is_zero();
    let iter_zero = |e: &FnExpr| e.to_iterated_integrals().map(|p| p.is_zero()).unwrap_or(false);
    let derivative_zero = iter_zero(&x) && iter_zero(&y);
    let limit_at_one_residual = residual(&limit_at_one(&diff));
    let limit_at_zero_residual = residual(&limit_at_zero(&diff));
    let passed = derivative_zero && limit_at_one_residual.is_empty();
    FunctionalEquationReport {
        word: w.to_string(),
        lhs: lhs.to_string(),
        rhs: rhs.to_string(),
        derivative_zero_free,
        derivative_zero,
        limit_at_one_residual,
        limit_at_zero_residual,
        passed,
    }
}
