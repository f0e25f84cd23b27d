use std::sync::{OnceLock, RwLock};

use num_traits::{One, Zero};

use crate::cache::caching_enabled;
use crate::scalar::Rational;

fn table() -> &'static RwLock<Vec<Rational>> {
    static TABLE: OnceLock<RwLock<Vec<Rational>>> = OnceLock::new();
    TABLE.get_or_init(Default::default)
}

/// Akiyama–Tanigawa: for `m = 0..=n` set `a_m = 1/(m+1)` and sweep
/// `a_{j−1} ← j(a_{j−1} − a_j)` down to `j = 1`; then `a_0 = B_n` with
/// `B_1 = +1/2`.
fn akiyama_tanigawa(n: usize) -> Rational {
    let mut a: Vec<Rational> = Vec::with_capacity(n + 1);
    for m in 0..=n {
        a.push(Rational::new(1.into(), (m as i64 + 1).into()));
        for j in (1..=m).rev() {
            a[j - 1] = Rational::from_integer((j as i64).into()) * (&a[j - 1] - &a[j]);
        }
    }
    a[0].clone()
}

/// `B_n` with `B_1 = +1/2`, the convention of `x/(1 − e^{−x})`.
pub fn bernoulli(n: usize) -> Rational {
    if n == 1 {
        return Rational::new(1.into(), 2.into());
    }
    if n % 2 == 1 {
        return Rational::zero();
    }
    if !caching_enabled() {
        return akiyama_tanigawa(n);
    }
    if let Some(b) = table().read().expect("cache poisoned").get(n) {
        return b.clone();
    }
    let mut t = table().write().expect("cache poisoned");
    while t.len() <= n {
        let k = t.len();
        t.push(if k == 0 { Rational::one() } else { akiyama_tanigawa(k) });
    }
    t[n].clone()
}

/// `B_n` with `B_1 = −1/2`, the convention of `x/(e^x − 1)`.
pub fn bernoulli_minus(n: usize) -> Rational {
    if n == 1 {
        -bernoulli(1)
    } else {
        bernoulli(n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;

    #[test]
    fn small_values() {
        let want = [ratio(1, 1), ratio(1, 2), ratio(1, 6), ratio(0, 1), ratio(-1, 30), ratio(0, 1), ratio(1, 42)];
        for (n, b) in want.iter().enumerate() {
            assert_eq!(&bernoulli(n), b, "B_{n}");
        }
        assert_eq!(bernoulli(12), ratio(-691, 2730));
        assert_eq!(bernoulli_minus(1), ratio(-1, 2));
    }

    #[test]
    fn recurrence_agrees_with_table() {
        for n in [0, 2, 8, 14] {
            assert_eq!(akiyama_tanigawa(n), bernoulli(n));
        }
        assert_eq!(akiyama_tanigawa(1), ratio(1, 2));
        assert_eq!(akiyama_tanigawa(3), ratio(0, 1));
    }
}
