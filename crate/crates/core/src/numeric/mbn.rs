use num_traits::{One, Zero};
use serde::Serialize;

use crate::kz::li_series;
use crate::scalar::{factorial, Rational};
use crate::series::PowerSeries;
use crate::words::MzvIndex;

/// `B_n^{(k₁,…,k_m)}` for `n = 0..=n_max`, from
/// `Li_{k₁…k_m}(1 − e^{−x}) / (1 − e^{−x})^m = Σ B_n x^n/n!`.
///
/// `B_0 = 1/(1^{k₁}·2^{k₂}⋯m^{k_m})`, the leading coefficient of
/// `Li(y)/y^m`; it is 1 in depth one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MbnTable {
    pub index: MzvIndex,
    #[serde(serialize_with = "serialize_rationals")]
    pub values: Vec<Rational>,
}

fn serialize_rationals<S: serde::Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(crate::scalar::rational_to_string))
}

pub fn multiple_bernoulli(ix: &MzvIndex, n_max: usize) -> MbnTable {
    let m = ix.depth();
    let cap = n_max + m;
    // y = 1 − e^{−x} = Σ_{n≥1} (−1)^{n+1} x^n/n!
    let y: Vec<Rational> = (0..=cap)
        .map(|n| {
            if n == 0 {
                Rational::zero()
            } else {
                let c = Rational::from_integer(factorial(n as u64)).recip();
                if n % 2 == 1 {
                    c
                } else {
                    -c
                }
            }
        })
        .collect();
    let y = PowerSeries::truncated(y, cap);
    let li = li_series(ix, cap).entry(0, 0).cloned().unwrap_or_else(|| PowerSeries::truncated(vec![], cap));
    let composed = li.compose(&y, cap);
    let ym = (0..m).fold(PowerSeries::one().truncate(cap), |acc, _| (acc * y.clone()).truncate(cap));
    let num = composed.shift_down(m).expect("Li(y) vanishes to order m");
    let den = ym.shift_down(m).expect("y^m vanishes to order m");
    let quotient = num * den.inverse(n_max).expect("y/x is a unit");
    let values = (0..=n_max).map(|n| quotient.coeff(n) * Rational::from_integer(factorial(n as u64))).collect();
    MbnTable { index: ix.clone(), values }
}

impl MbnTable {
    pub fn leading(&self) -> Rational {
        self.values.first().cloned().unwrap_or_else(Rational::one)
    }
}
