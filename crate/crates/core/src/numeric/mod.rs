//! p-adic values: Bernoulli numbers, Kubota–Leopoldt L-values and ζ_p(n),
//! multiple polylogarithms on the open unit disc and multiple Bernoulli
//! numbers.

mod bernoulli;
mod lp;
mod mbn;
mod mpl;

pub use bernoulli::{bernoulli, bernoulli_minus};
pub use lp::{lp_value, zeta_p_numeric, LpSpec};
pub use mbn::{multiple_bernoulli, MbnTable};
pub use mpl::{mpl_value, mpl_value_rational, tail_cutoff};
