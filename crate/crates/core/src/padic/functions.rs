//! Teichmüller lifts, the branched logarithm and the exponential.

use num_bigint::BigInt;
use num_integer::Integer;

use super::{floor_log, pow_p, BranchParameter, PadicNumber};
use crate::error::{Error, Result};

/// The (p-1)-st root of unity congruent to the unit `x` modulo `p`, known to
/// the absolute precision of `x`.
pub fn teichmuller(x: &PadicNumber) -> Result<PadicNumber> {
    match x.valuation() {
        Some(0) => {}
        Some(v) => return Err(Error::NotAUnit(v)),
        None => return Err(Error::NotAUnit(x.precision())),
    }
    let n = x.precision();
    let modulus = pow_p(x.prime(), n);
    let p = BigInt::from(x.prime());
    let mut y = x.unit().mod_floor(&modulus);
    loop {
        let next = y.modpow(&p, &modulus);
        if next == y {
            break;
        }
        y = next;
    }
    PadicNumber::from_parts(x.prime(), 0, y, n)
}

/// `log(u)` for a principal unit `u ≡ 1 mod p`.
pub fn log_principal(u: &PadicNumber) -> Result<PadicNumber> {
    let n = u.precision();
    let one = PadicNumber::one(u.prime(), n)?;
    let t = u.checked_sub(&one)?;
    let v = match (u.valuation(), t.valuation()) {
        (Some(0), None) => return PadicNumber::zero(u.prime(), n),
        (Some(0), Some(v)) if v >= 1 => v,
        (Some(0), Some(_)) => return Err(Error::NotAUnit(0)),
        (Some(w), _) => return Err(Error::NotAUnit(w)),
        (None, _) => return Err(Error::LogOfZero),
    };
    // v(t^k/k) >= k*v - floor(log_p k), nondecreasing in k
    let mut sum = PadicNumber::zero(u.prime(), n)?;
    let mut power = t.clone();
    let mut k: u64 = 1;
    while (k as i64) * v - floor_log(k, u.prime()) < n {
        let term = power.div_integer(&BigInt::from(k))?;
        sum = if k % 2 == 1 { &sum + &term } else { &sum - &term };
        power = &power * &t;
        k += 1;
    }
    Ok(sum.truncate(n))
}

/// The branch of the logarithm with `log(p) = a`:
/// `log(p^v * ω(u) * <u>) = v*a + log<u>`.
pub fn log_branch(z: &PadicNumber, a: &BranchParameter) -> Result<PadicNumber> {
    let v = z.valuation().ok_or(Error::LogOfZero)?;
    let rel = z.relative_precision();
    let u = PadicNumber::from_parts(z.prime(), 0, z.unit().clone(), rel)?;
    let omega = teichmuller(&u)?;
    let principal = u.checked_div(&omega)?;
    let log_u = log_principal(&principal)?;
    if v == 0 {
        return Ok(log_u);
    }
    let va = a.a.mul_integer(&BigInt::from(v));
    log_u.checked_add(&va)
}

/// `exp(x) = Σ x^n/n!` for `v(x) >= 1`.
pub fn exp_p(x: &PadicNumber) -> Result<PadicNumber> {
    let n = x.precision();
    let p = x.prime() as i64;
    let v = match x.valuation() {
        None => return PadicNumber::one(x.prime(), n),
        Some(v) if v >= 1 => v,
        Some(v) => return Err(Error::ExpDivergence(v)),
    };
    // v(x^k/k!) >= k*v - v_p(k!) > k*(v - 1/(p-1)); every term with
    // k*(v*(p-1) - 1) >= n*(p-1) lies in p^n Z_p.
    let mut sum = PadicNumber::one(x.prime(), n)?;
    let mut term = PadicNumber::one(x.prime(), n)?;
    let mut k: i64 = 1;
    while k * (v * (p - 1) - 1) < n * (p - 1) {
        term = (&term * x).div_integer(&BigInt::from(k))?;
        sum = &sum + &term;
        k += 1;
    }
    Ok(sum.truncate(n))
}
