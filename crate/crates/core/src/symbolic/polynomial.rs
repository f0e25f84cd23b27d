use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde::ser::{Serialize, SerializeMap, Serializer};

use crate::scalar::{rational_to_string, Coefficient, Rational};
use crate::words::MzvIndex;

/// A commutative monomial in ζ_p-symbols: a sorted multiset of indices.
///
/// Ordered by number of factors, then factorwise; with this order products
/// come after single symbols, so echelon pivots land on products first.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct MzvMonomial(Vec<MzvIndex>);

impl MzvMonomial {
    pub fn one() -> Self {
        Self(Vec::new())
    }

    pub fn symbol(ix: MzvIndex) -> Self {
        Self(vec![ix])
    }

    pub fn from_factors(mut factors: Vec<MzvIndex>) -> Self {
        factors.sort();
        Self(factors)
    }

    pub fn factors(&self) -> &[MzvIndex] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn weight(&self) -> usize {
        self.0.iter().map(|ix| ix.weight()).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut f = self.0.clone();
        f.extend(other.0.iter().cloned());
        Self::from_factors(f)
    }

    /// All monomials in admissible symbols of exactly this weight.
    pub fn all_of_weight(w: usize) -> Vec<MzvMonomial> {
        fn go(w: usize, min: Option<&MzvIndex>, cur: &mut Vec<MzvIndex>, out: &mut Vec<MzvMonomial>) {
            if w == 0 {
                out.push(MzvMonomial(cur.clone()));
                return;
            }
            for k in 2..=w {
                for ix in MzvIndex::admissible_of_weight(k) {
                    if min.is_some_and(|m| &ix < m) {
                        continue;
                    }
                    cur.push(ix.clone());
                    go(w - k, Some(&ix), cur, out);
                    cur.pop();
                }
            }
        }
        let mut out = Vec::new();
        go(w, None, &mut Vec::new(), &mut out);
        out.sort();
        out.dedup();
        out
    }
}

impl Ord for MzvMonomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.0.len(), &self.0).cmp(&(other.0.len(), &other.0))
    }
}

impl PartialOrd for MzvMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for MzvMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(Style::Plain))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Style {
    /// `z(1,2)*z(3)`, the input grammar of the parser.
    Plain,
    /// `\zeta_p(1,2) \zeta_p(3)`.
    Latex,
}

impl MzvMonomial {
    pub fn render(&self, style: Style) -> String {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|ix| match style {
                Style::Plain => format!("z({ix})"),
                Style::Latex => format!("\\zeta_p({ix})"),
            })
            .collect();
        match style {
            Style::Plain => parts.join("*"),
            Style::Latex => parts.join(" "),
        }
    }
}

/// A polynomial with rational coefficients in ζ_p-symbols.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct SymbolPolynomial {
    terms: BTreeMap<MzvMonomial, Rational>,
}

impl SymbolPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(MzvMonomial::one(), c)
    }

    /// The bare symbol `ζ_p(ix)`, without any rewriting.
    pub fn symbol(ix: MzvIndex) -> Self {
        Self::monomial(MzvMonomial::symbol(ix), Rational::one())
    }

    pub fn monomial(m: MzvMonomial, c: Rational) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    pub fn add_term(&mut self, m: MzvMonomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m.clone()).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn terms(&self) -> &BTreeMap<MzvMonomial, Rational> {
        &self.terms
    }

    pub fn coeff(&self, m: &MzvMonomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Constant term.
    pub fn constant_term(&self) -> Rational {
        self.coeff(&MzvMonomial::one())
    }

    /// Weight if homogeneous (`Some(0)` for constants); `None` for the zero
    /// polynomial or mixed weights.
    pub fn weight(&self) -> Option<usize> {
        let mut ws = self.terms.keys().map(|m| m.weight());
        let first = ws.next()?;
        ws.all(|w| w == first).then_some(first)
    }

    /// Splits into homogeneous components.
    pub fn graded_parts(&self) -> BTreeMap<usize, SymbolPolynomial> {
        let mut out: BTreeMap<usize, SymbolPolynomial> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.weight()).or_default().add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero();
        for (m, d) in &self.terms {
            out.add_term(m.clone(), d * c);
        }
        out
    }

    pub fn render(&self, style: Style) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (m, c) in &self.terms {
            let neg = c.is_negative();
            let a = c.abs();
            let coeff = match style {
                Style::Plain => rational_to_string(&a),
                Style::Latex if a.denom().is_one() => a.numer().to_string(),
                Style::Latex => format!("\\frac{{{}}}{{{}}}", a.numer(), a.denom()),
            };
            let body = if m.is_one() {
                coeff
            } else if a.is_one() {
                m.render(style)
            } else {
                match style {
                    Style::Plain => format!("{coeff}*{}", m.render(style)),
                    Style::Latex => format!("{coeff} {}", m.render(style)),
                }
            };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            out.push_str(&body);
        }
        out
    }
}

impl fmt::Display for SymbolPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(Style::Plain))
    }
}

impl fmt::Debug for SymbolPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `{ "z(2)*z(3)": "1/2", ... }`, the constant term under `"1"`.
impl Serialize for SymbolPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.terms.len()))?;
        for (m, c) in &self.terms {
            let key = if m.is_one() { "1".to_string() } else { m.render(Style::Plain) };
            map.serialize_entry(&key, &rational_to_string(c))?;
        }
        map.end()
    }
}

impl Add for SymbolPolynomial {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
        self
    }
}

impl Sub for SymbolPolynomial {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Neg for SymbolPolynomial {
    type Output = Self;
    fn neg(self) -> Self {
        Self { terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect() }
    }
}

impl Mul for SymbolPolynomial {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            for (n, d) in &rhs.terms {
                out.add_term(m.mul(n), c * d);
            }
        }
        out
    }
}

impl Zero for SymbolPolynomial {
    fn zero() -> Self {
        SymbolPolynomial::zero()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for SymbolPolynomial {
    fn one() -> Self {
        SymbolPolynomial::constant(Rational::one())
    }
}

impl Coefficient for SymbolPolynomial {
    fn from_rational(q: &Rational) -> Self {
        SymbolPolynomial::constant(q.clone())
    }

    fn scale(&self, q: &Rational) -> Self {
        SymbolPolynomial::scale(self, q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;

    fn z(s: &str) -> SymbolPolynomial {
        SymbolPolynomial::symbol(s.parse().unwrap())
    }

    #[test]
    fn arithmetic_and_rendering() {
        let p = z("2") * z("2") - z("2,2").scale(&ratio(2, 1)) - z("1,3").scale(&ratio(4, 1));
        assert_eq!(p.weight(), Some(4));
        assert_eq!(p.to_string(), "-4*z(1,3) - 2*z(2,2) + z(2)*z(2)");
        assert_eq!(z("2").render(Style::Latex), "\\zeta_p(2)");
        assert_eq!((z("2") - z("2")).weight(), None);
        assert_eq!((z("2") + z("3")).graded_parts().len(), 2);
    }

    #[test]
    fn monomial_counts() {
        // admissible indices of weight 4: 4; products: z(2)^2
        assert_eq!(MzvMonomial::all_of_weight(4).len(), 5);
        assert_eq!(MzvMonomial::all_of_weight(2).len(), 1);
        let m5 = MzvMonomial::all_of_weight(5);
        assert_eq!(m5.len(), 8 + 2);
        assert!(m5.windows(2).all(|w| w[0] < w[1]));
    }
}
