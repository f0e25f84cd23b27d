//! The algebra of ζ_p-symbols: associator coefficients, regularization,
//! shuffle relations, structural checks and functional equations.

mod associator;
mod functional;
mod parse;
mod polynomial;
mod relations;
mod structure;

pub use associator::{asymptotic_at_one, phi_coefficient, phi_expansion, regularized_mzv, z_of, Regularized};
pub use functional::{
    functional_equation_sides, j_expr, limit_at_one, limit_at_zero, reflection_formula, verify_functional_equation,
    FnDerivative, FnExpr, FnMonomial, FunctionalEquationReport, Generator,
};
pub use parse::parse_expression;
pub use polynomial::{MzvMonomial, Style, SymbolPolynomial};
pub use relations::{generate_relations, reduce_graded, shuffle_relation, shuffle_relations, RelationSet};
pub use structure::{abelianization_check, grouplike_check, lie_check, log_phi, CheckReport, Witness};

/// `1 - \zeta_p(2) AB + \zeta_p(2) BA + \cdots` for a truncated expansion.
pub fn phi_latex(phi: &crate::words::WordPolynomial<SymbolPolynomial>) -> String {
    use num_traits::One;
    let mut parts: Vec<String> = Vec::new();
    for (w, c) in phi.iter() {
        let word = if w.is_empty() { String::new() } else { latex_word(w) };
        let coeff = c.render(Style::Latex);
        let single = c.terms().len() == 1;
        let part = if w.is_empty() {
            coeff
        } else if c.is_one() {
            word
        } else if coeff.starts_with('-') && single {
            format!("{coeff} {word}")
        } else if single {
            format!("{coeff} {word}")
        } else {
            format!("({coeff}) {word}")
        };
        parts.push(part);
    }
    let mut out = parts.first().cloned().unwrap_or_else(|| "0".into());
    for p in parts.iter().skip(1) {
        match p.strip_prefix('-') {
            Some(rest) => out.push_str(&format!(" - {rest}")),
            None => out.push_str(&format!(" + {p}")),
        }
    }
    out.push_str(" + \\cdots");
    out
}

/// `A^{2}BA` style with exponents for runs.
fn latex_word(w: &crate::words::Word) -> String {
    let s = w.to_string();
    let mut out = String::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let mut j = i;
        while j < chars.len() && chars[j] == chars[i] {
            j += 1;
        }
        let run = j - i;
        out.push(chars[i]);
        if run > 1 {
            out.push_str(&format!("^{{{run}}}"));
        }
        i = j;
    }
    out
}
