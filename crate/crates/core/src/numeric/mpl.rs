use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::padic::{floor_log, valuation_of_integer, PadicNumber};
use crate::scalar::Rational;
use crate::words::MzvIndex;

/// A cutoff `N*` with `n·v − K·floor(log_p n) ≥ target` for every `n > N*`.
///
/// `x·v − K·log_p x` bounds the integer expression from below and increases
/// once `x ≥ K/(v ln p)`, so the first such `x` meeting the target works.
pub fn tail_cutoff(v: i64, weight: i64, prime: u64, target: i64) -> u64 {
    let lnp = (prime as f64).ln();
    let f = |x: f64| x * v as f64 - weight as f64 * x.ln() / lnp;
    let mut x = ((weight as f64) / (v as f64 * lnp)).ceil().max(1.0) as u64;
    while f(x as f64) < target as f64 {
        x += 1;
    }
    x - 1
}

/// `Li_{k₁…k_m}(z) = Σ_{0<n₁<⋯<n_m} z^{n_m}/(n₁^{k₁}⋯n_m^{k_m})` for
/// `|z|_p < 1`, to absolute precision `target`.
///
/// The series is summed to the cutoff of [`tail_cutoff`]; every discarded
/// term lies in `p^target Z_p`.
pub fn mpl_value(ix: &MzvIndex, z: &PadicNumber, target: i64) -> Result<PadicNumber> {
    let p = z.prime();
    let weight = ix.weight() as i64;
    let v = match z.valuation() {
        Some(v) if v >= 1 => v,
        Some(v) => return Err(Error::OutsideOpenDisc(v)),
        None if z.precision() >= 1 => z.precision(),
        None => return Err(Error::OutsideOpenDisc(z.precision())),
    };
    let cutoff = tail_cutoff(v, weight, p, target) as usize;
    // inner sums lose up to K·floor(log_p N*) digits to the divisions
    let w = target + weight * floor_log(cutoff.max(1) as u64, p);
    // level[n] = Σ over chains 0 < n₁ < ⋯ < n_d = n of Π 1/n_i^{k_i}
    let mut level: Vec<PadicNumber> = Vec::new();
    for (d, &k) in ix.ks().iter().enumerate() {
        let mut next = vec![PadicNumber::zero(p, w)?];
        let mut below = PadicNumber::zero(p, w)?;
        for n in 1..=cutoff {
            let numer = if d == 0 { PadicNumber::one(p, w)? } else { below.clone() };
            next.push(numer.div_integer(&num_traits::pow(BigInt::from(n), k as usize))?);
            if d > 0 {
                below = below.checked_add(&level[n])?;
            }
        }
        level = next;
    }
    let mut sum = PadicNumber::zero(p, target)?;
    let mut power = z.clone();
    for term in level.iter().skip(1) {
        sum = sum.checked_add(&power.checked_mul(term)?)?;
        power = power.checked_mul(z)?;
    }
    if sum.precision() < target {
        return Err(Error::PrecisionUnreachable { target, reached: sum.precision() });
    }
    Ok(sum.truncate(target))
}

/// [`mpl_value`] at an exactly known rational `z`, expanded to the
/// precision the sum needs.
pub fn mpl_value_rational(ix: &MzvIndex, z: &Rational, prime: u64, target: i64) -> Result<PadicNumber> {
    if z.is_zero() {
        return PadicNumber::zero(prime, target);
    }
    let v = valuation_of_integer(z.numer(), prime) - valuation_of_integer(z.denom(), prime);
    if v < 1 {
        return Err(Error::OutsideOpenDisc(v));
    }
    let weight = ix.weight() as i64;
    let cutoff = tail_cutoff(v, weight, prime, target);
    let zp = PadicNumber::from_rational(prime, z, target + weight * floor_log(cutoff.max(1), prime) + 1)?;
    mpl_value(ix, &zp, target)
}
