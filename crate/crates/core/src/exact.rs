//! Exact integer and rational arithmetic plus the combinatorial number
//! families used by the summation formulas: Bernoulli numbers (with
//! `B_1 = -1/2`), Stirling numbers of the second kind, Eulerian numbers and
//! binomial coefficients.
//!
//! Tables are memoized behind locks; every function is pure.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock, RwLock};

use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

/// `BigRational` from an integer numerator.
pub fn rat<T: Into<BigInt>>(n: T) -> BigRational {
    BigRational::from_integer(n.into())
}

/// `BigRational` from numerator and denominator. Panics on a zero denominator.
pub fn ratio<N: Into<BigInt>, D: Into<BigInt>>(n: N, d: D) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// Converts a rational known to be integral. Returns `None` otherwise.
pub fn to_integer(q: &BigRational) -> Option<BigInt> {
    q.is_integer().then(|| q.to_integer())
}

/// `C(n, k)`, zero when `k < 0`, `k > n` or `n < 0`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if n < 0 || k < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

fn bernoulli_table() -> &'static RwLock<Vec<BigRational>> {
    static TABLE: OnceLock<RwLock<Vec<BigRational>>> = OnceLock::new();
    TABLE.get_or_init(|| RwLock::new(vec![BigRational::one()]))
}

/// Bernoulli number `B_n` from `x / (e^x - 1)`, so `B_1 = -1/2`.
pub fn bernoulli(n: usize) -> BigRational {
    if n >= 3 && n % 2 == 1 {
        return BigRational::zero();
    }
    {
        let table = bernoulli_table().read().expect("bernoulli cache poisoned");
        if let Some(b) = table.get(n) {
            return b.clone();
        }
    }
    let mut table = bernoulli_table().write().expect("bernoulli cache poisoned");
    // B_m = -1/(m+1) * sum_{j<m} C(m+1, j) B_j
    while table.len() <= n {
        let m = table.len();
        let mut acc = BigRational::zero();
        for (j, b) in table.iter().enumerate() {
            if !b.is_zero() {
                acc += rat(binomial(m as i64 + 1, j as i64)) * b;
            }
        }
        let b = -acc / rat(m as i64 + 1);
        table.push(b);
    }
    table[n].clone()
}

type PairCache = Mutex<HashMap<(usize, usize), BigInt>>;

fn cached(cache: &'static OnceLock<PairCache>, key: (usize, usize), f: impl FnOnce() -> BigInt) -> BigInt {
    let cache = cache.get_or_init(Default::default);
    if let Some(v) = cache.lock().expect("cache poisoned").get(&key) {
        return v.clone();
    }
    let v = f();
    cache.lock().expect("cache poisoned").insert(key, v.clone());
    v
}

/// Stirling number of the second kind `S(n, m)` via
/// `S(n, m) = (1/m!) sum_i (-1)^i C(m, i) (m - i)^n`, with `S(0, 0) = 1`.
pub fn stirling2(n: usize, m: usize) -> BigInt {
    if m > n {
        return BigInt::zero();
    }
    if n == 0 {
        return BigInt::one();
    }
    if m == 0 {
        return BigInt::zero();
    }
    static CACHE: OnceLock<PairCache> = OnceLock::new();
    cached(&CACHE, (n, m), || {
        let mut acc = BigInt::zero();
        for i in 0..=m {
            let term = binomial(m as i64, i as i64) * num_traits::pow(BigInt::from(m - i), n);
            if i % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        let fact: BigInt = (1..=m).map(BigInt::from).product();
        let (q, r) = acc.div_rem(&fact);
        debug_assert!(r.is_zero());
        q
    })
}

/// Eulerian number `<n, m>` via `sum_{k=0}^{m} (-1)^k C(n+1, k) (m - k + 1)^n`.
///
/// Zero outside `0 <= m <= max(n - 1, 0)`; `<0, 0> = 1`.
pub fn eulerian(n: usize, m: i64) -> BigInt {
    let top = n.saturating_sub(1) as i64;
    if m < 0 || m > top {
        return BigInt::zero();
    }
    if n == 0 {
        return BigInt::one();
    }
    static CACHE: OnceLock<PairCache> = OnceLock::new();
    cached(&CACHE, (n, m as usize), || {
        let mut acc = BigInt::zero();
        for k in 0..=m {
            let term = binomial(n as i64 + 1, k) * num_traits::pow(BigInt::from(m - k + 1), n);
            if k % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        acc
    })
}

/// `base^exp` for a (possibly negative) integer exponent over the rationals.
pub(crate) fn rat_pow(base: &BigRational, exp: i64) -> BigRational {
    if exp >= 0 {
        num_traits::pow(base.clone(), exp as usize)
    } else {
        num_traits::pow(base.recip(), exp.unsigned_abs() as usize)
    }
}

pub(crate) fn int_pow(base: u64, exp: usize) -> BigInt {
    num_traits::pow(BigInt::from(base), exp)
}

/// Formats a rational as `p` or `p/q`.
pub fn fmt_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `p`, `-p`, `p/q` (whitespace ignored) into a reduced rational.
pub fn parse_rational(s: &str) -> crate::Result<BigRational> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || crate::Error::Parse(format!("not a rational literal: {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s.as_str(), "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(crate::Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(BigRational::new(n, d))
}

pub(crate) fn to_f64(q: &BigRational) -> f64 {
    // ratio of f64s loses everything for huge operands; scale first
    match (q.numer().to_f64(), q.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => {
            let bits = q.numer().bits() as i64 - q.denom().bits() as i64;
            let shift = bits - 60;
            let scaled = if shift > 0 {
                q / rat(BigInt::one() << shift as usize)
            } else {
                q * rat(BigInt::one() << (-shift) as usize)
            };
            let v = scaled.numer().to_f64().unwrap_or(f64::NAN) / scaled.denom().to_f64().unwrap_or(f64::NAN);
            v * 2f64.powi(shift as i32)
        }
    }
}
