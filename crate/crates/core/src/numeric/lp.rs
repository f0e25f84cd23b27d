use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use super::bernoulli::bernoulli_minus;
use crate::error::{Error, Result};
use crate::padic::{check_prime, exp_p, floor_log, log_principal, teichmuller, PadicNumber};
use crate::scalar::Rational;

/// An evaluation point `s` and the character `ω^twist` for `L_p(s, ω^twist)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LpSpec {
    prime: u64,
    s: PadicNumber,
    #[serde(skip)]
    exact: Option<Rational>,
    twist: u64,
}

impl LpSpec {
    /// `s` as given, with its own precision.
    pub fn new(prime: u64, s: PadicNumber, twist: i64) -> Result<Self> {
        check_prime(prime)?;
        if s.prime() != prime {
            return Err(Error::PrimeMismatch(prime, s.prime()));
        }
        Ok(Self { prime, s, exact: None, twist: reduce_twist(twist, prime) })
    }

    /// An exactly known rational `s`; it is re-expanded to whatever
    /// precision the evaluation needs.
    pub fn at_rational(prime: u64, s: &Rational, twist: i64) -> Result<Self> {
        check_prime(prime)?;
        let sp = PadicNumber::from_rational(prime, s, 1)?;
        Ok(Self { prime, s: sp, exact: Some(s.clone()), twist: reduce_twist(twist, prime) })
    }

    pub fn at_integer(prime: u64, s: i64, twist: i64) -> Result<Self> {
        Self::at_rational(prime, &Rational::from_integer(s.into()), twist)
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn twist(&self) -> u64 {
        self.twist
    }

    fn s_at(&self, precision: i64) -> Result<PadicNumber> {
        match &self.exact {
            Some(q) => PadicNumber::from_rational(self.prime, q, precision),
            None => Ok(self.s.clone()),
        }
    }
}

fn reduce_twist(twist: i64, prime: u64) -> u64 {
    twist.mod_floor(&(prime as i64 - 1)) as u64
}

fn int(p: u64, n: i64, precision: i64) -> Result<PadicNumber> {
    PadicNumber::from_i64(p, n, precision)
}

/// `(1/p)(1/(s−1)) Σ_{a=1}^{p−1} ω^i(a) ⟨a⟩^{1−s} Σ_j C(1−s, j) (p/a)^j B_j`
/// at internal precision `w`, with `B_1 = −1/2`.
fn lp_at(spec: &LpSpec, w: i64) -> Result<PadicNumber> {
    let p = spec.prime;
    let s = spec.s_at(w)?;
    if s.valuation().is_some_and(|v| v < 0) {
        return Err(Error::ExpDivergence(s.valuation().unwrap()));
    }
    let one = PadicNumber::one(p, w)?;
    let t = one.checked_sub(&s)?;
    let pp = int(p, p as i64, w)?;
    let mut total = PadicNumber::zero(p, w)?;
    for a in 1..p as i64 {
        let ap = int(p, a, w)?;
        let omega = teichmuller(&ap)?;
        let chi = omega.pow(spec.twist);
        let bracket = ap.checked_div(&omega)?;
        let ell = log_principal(&bracket)?;
        let p_over_a = pp.checked_div(&ap)?;
        let term = if t.is_zero() {
            if spec.twist == 0 {
                return Err(Error::Pole);
            }
            // t = 1 − s vanishes: the limit is −(1/p) Σ_a ω^i(a) d/dt[…]_{t=0}.
            let mut inner = ell;
            let mut pa = one.clone();
            let mut j: u64 = 1;
            while (j as i64) - 1 - floor_log(j, p) < w {
                pa = pa.checked_mul(&p_over_a)?;
                let b = PadicNumber::from_rational(p, &bernoulli_minus(j as usize), w)?;
                let mut x = pa.checked_mul(&b)?.div_integer(&BigInt::from(j))?;
                if j % 2 == 0 {
                    x = -x;
                }
                inner = inner.checked_add(&x)?;
                j += 1;
            }
            -chi.checked_mul(&inner)?
        } else {
            let power = exp_p(&t.checked_mul(&ell)?)?;
            let mut inner = PadicNumber::zero(p, w)?;
            let mut c = one.clone();
            let mut j: u64 = 0;
            // v(C(1−s, j) p^j B_j / a^j) ≥ j(1 − 1/(p−1)) − 1
            while (j as i64) * (p as i64 - 2) < (w + 1) * (p as i64 - 1) {
                if j > 0 {
                    let shift = t.checked_sub(&int(p, j as i64 - 1, w)?)?;
                    c = c.checked_mul(&shift)?.checked_mul(&p_over_a)?.div_integer(&BigInt::from(j))?;
                }
                let b = bernoulli_minus(j as usize);
                if !b.is_zero() {
                    let bp = PadicNumber::from_rational(p, &b, w)?;
                    inner = inner.checked_add(&c.checked_mul(&bp)?)?;
                }
                j += 1;
            }
            chi.checked_mul(&power)?.checked_mul(&inner)?
        };
        total = total.checked_add(&term)?;
    }
    if t.is_zero() {
        total.checked_div(&pp)
    } else {
        total.checked_div(&(-pp.checked_mul(&t)?))
    }
}

/// `L_p(s, ω^i)` to absolute precision `target`.
pub fn lp_value(spec: &LpSpec, target: i64) -> Result<PadicNumber> {
    let vt = {
        let s = spec.s_at(target.max(1) + 8)?;
        let t = PadicNumber::one(spec.prime, s.precision())?.checked_sub(&s)?;
        if t.is_zero() && spec.twist == 0 {
            return Err(Error::Pole);
        }
        t.valuation().unwrap_or(0).max(0)
    };
    let mut reached = i64::MIN;
    for extra in [4, 8, 16, 32] {
        let r = lp_at(spec, target + vt + extra)?;
        if r.precision() >= target {
            return Ok(r.truncate(target));
        }
        reached = reached.max(r.precision());
    }
    Err(Error::PrecisionUnreachable { target, reached })
}

/// `ζ_p(n) = p^n/(p^n − 1) · L_p(n, ω^{1−n})` for `n ≥ 2`.
pub fn zeta_p_numeric(n: u32, prime: u64, target: i64) -> Result<PadicNumber> {
    if n < 2 {
        return Err(Error::InvalidIndex(format!("zeta_p needs n >= 2, got {n}")));
    }
    let spec = LpSpec::at_integer(prime, n as i64, 1 - n as i64)?;
    let l = lp_value(&spec, target)?;
    let pn = num_traits::pow(BigInt::from(prime), n as usize);
    let factor = Rational::new(pn.clone(), pn - BigInt::one());
    let f = PadicNumber::from_rational(prime, &factor, target - l.valuation_bound().min(0) + 1)?;
    let z = f.checked_mul(&l)?;
    if z.precision() < target {
        return Err(Error::PrecisionUnreachable { target, reached: z.precision() });
    }
    Ok(z.truncate(target))
}
