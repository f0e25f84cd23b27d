//! Exact p-adic KZ solutions, associator coefficients and p-adic multiple
//! zeta values.

pub mod cache;
pub mod error;
pub mod kz;
pub mod numeric;
pub mod padic;
pub mod scalar;
pub mod series;
pub mod symbolic;
pub mod words;

pub use error::{Error, Result};
pub use padic::{BranchParameter, PadicNumber};
pub use scalar::{Coefficient, Rational};
pub use words::{index_to_word, word_to_index, MzvIndex, Word, WordPolynomial};

/// Word polynomials with exact rational coefficients.
pub type QWordPolynomial = WordPolynomial<Rational>;

pub use kz::{KzSolution, LocalFunction, QLocalFunction};
pub use series::PowerSeries;
pub use symbolic::{FnExpr, RelationSet, SymbolPolynomial};

/// Power series with exact rational coefficients.
pub type QPowerSeries = PowerSeries<Rational>;
/// Power series with `f64` coefficients, for floating-point prototypes.
pub type F64PowerSeries = PowerSeries<f64>;
