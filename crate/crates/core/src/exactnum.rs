//! Exact rational arithmetic helpers and the arithmetic special functions
//! feeding the Eisenstein coefficient formula.
//!
//! Bernoulli numbers use the convention `B_1 = -1/2`.

use std::sync::Mutex;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};

use crate::error::{Error, Result};

/// Exact rational number, always in lowest terms with a positive denominator.
pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `n` or `n/d`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::ParseRational(s.to_string());
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

static BERNOULLI: Mutex<Vec<Rational>> = Mutex::new(Vec::new());

/// The Bernoulli number `B_m`, from `sum_{j<=m} C(m+1, j) B_j = 0`.
pub fn bernoulli_number(m: usize) -> Rational {
    let mut cache = BERNOULLI.lock().unwrap_or_else(|e| e.into_inner());
    while cache.len() <= m {
        let n = cache.len();
        if n == 0 {
            cache.push(Rational::one());
            continue;
        }
        let mut acc = Rational::zero();
        for (j, b) in cache.iter().enumerate() {
            acc += Rational::from_integer(binomial(n as u64 + 1, j as u64)) * b;
        }
        cache.push(-acc / rat(n as i64 + 1));
    }
    cache[m].clone()
}

/// `B_m(t) = sum_j C(m, j) B_j t^(m-j)`.
pub fn bernoulli_poly_value(m: usize, t: &Rational) -> Rational {
    (0..=m).fold(Rational::zero(), |acc, j| {
        acc + Rational::from_integer(binomial(m as u64, j as u64))
            * bernoulli_number(j)
            * t.pow((m - j) as i32)
    })
}

/// Generalized Bernoulli number `B_{m, chi_d}` for the Kronecker character of a
/// negative fundamental discriminant `d`.
pub fn generalized_bernoulli(m: usize, d: i64) -> Result<Rational> {
    if !is_negative_fundamental(d) {
        return Err(Error::NotFundamental(d));
    }
    let modulus = d.abs();
    let mut sum = Rational::zero();
    for a in 1..=modulus {
        let chi = kronecker_symbol(d, a);
        if chi == 0 {
            continue;
        }
        let term = bernoulli_poly_value(m, &ratio(a, modulus));
        if chi > 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    let scale = Rational::from_integer(BigInt::from(modulus).pow(m as u32 - 1));
    Ok(sum * scale)
}

/// Kronecker symbol `(a / n)`, extending the Jacobi symbol to all integers `n`.
pub fn kronecker_symbol(a: i64, n: i64) -> i32 {
    if n == 0 {
        return if a.abs() == 1 { 1 } else { 0 };
    }
    let mut result = 1;
    let mut n = n;
    if n < 0 {
        n = -n;
        if a < 0 {
            result = -result;
        }
    }
    let twos = n.trailing_zeros();
    if twos > 0 {
        if a % 2 == 0 {
            return 0;
        }
        if twos % 2 == 1 && matches!(a.rem_euclid(8), 3 | 5) {
            result = -result;
        }
        n >>= twos;
    }
    // Jacobi symbol (a / n) for odd positive n.
    let mut a = a.rem_euclid(n);
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            if matches!(n % 8, 3 | 5) {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            result = -result;
        }
        a %= n;
    }
    if n == 1 {
        result
    } else {
        0
    }
}

pub fn is_squarefree(n: u64) -> bool {
    factorize(n).iter().all(|&(_, e)| e == 1)
}

pub fn is_negative_fundamental(d: i64) -> bool {
    if d >= 0 {
        return false;
    }
    match d.rem_euclid(4) {
        1 => is_squarefree(d.unsigned_abs()),
        0 => {
            let q = d / 4;
            matches!(q.rem_euclid(4), 2 | 3) && is_squarefree(q.unsigned_abs())
        }
        _ => false,
    }
}

/// Splits `n < 0`, `n = 0, 1 mod 4`, as `d * f^2` with `d` fundamental.
pub fn fundamental_discriminant_split(n: i64) -> Result<(i64, u64)> {
    if n >= 0 || !matches!(n.rem_euclid(4), 0 | 1) {
        return Err(Error::NoDiscriminantSplit(n));
    }
    let mut core = 1u64;
    let mut square = 1u64;
    for (p, e) in factorize(n.unsigned_abs()) {
        square *= p.pow(e / 2);
        if e % 2 == 1 {
            core *= p;
        }
    }
    let d = -(core as i64);
    if d.rem_euclid(4) == 1 {
        Ok((d, square))
    } else if square % 2 == 0 {
        Ok((4 * d, square / 2))
    } else {
        Err(Error::NoDiscriminantSplit(n))
    }
}

pub fn p_valuation(p: u64, n: i64) -> Result<u32> {
    if n == 0 {
        return Err(Error::ZeroValuation);
    }
    let mut n = n.unsigned_abs();
    let mut e = 0;
    while n % p == 0 {
        n /= p;
        e += 1;
    }
    Ok(e)
}

/// Prime factorization by trial division, primes ascending.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n) == [(n, 1)]
}
