//! Dimensions of cusp forms on Γ(1, 2p) and the Hilbert series of the graded
//! ring for p = 3.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::{is_prime, kronecker_symbol, rat, ratio, Rational};

/// `[a_0, ..., a_{m-1}; m]_k`: the entry selected by `k mod m`.
pub fn periodic_selector(values: &[i64], k: i64) -> i64 {
    assert!(!values.is_empty(), "period must be at least 1");
    values[k.rem_euclid(values.len() as i64) as usize]
}

fn sign_pow(k: i64) -> i64 {
    if k % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `dim S_k(Γ(1, 2p))` for `k >= 5` and an odd prime `p`.
pub fn dim_cusp(k: i64, p: i64) -> Result<i64> {
    if p < 3 || !is_prime(p as u64) {
        return Err(Error::InvalidPrime(p));
    }
    if k < 5 {
        return Err(Error::WeightOutOfRange(k));
    }
    let e1 = rat(kronecker_symbol(-1, p) as i64);
    let e3 = rat(kronecker_symbol(-3, p) as i64);
    let p5 = rat(kronecker_symbol(p, 5) as i64);
    let pq = rat(p);
    let kq = rat(k);
    let one = Rational::one();
    let half = ratio(1, 2);
    let two_k_3 = rat(2 * k - 3);
    // At p = 3 the elliptic factor p - (-3/p) collapses to 1; evaluating it
    // as 3 - 0 breaks integrality for every k.
    let p_minus_e3 = if p == 3 { one.clone() } else { &pq - &e3 };

    let mut total =
        (&kq - rat(2)) * (&kq - rat(1)) * &two_k_3 / rat(128 * 9 * 5) * (&pq * &pq - rat(1));
    total += (&pq - rat(1)) / rat(24);
    total += (rat(sign_pow(k)) * (rat(8) + &e1) + &two_k_3 * (rat(8) - &e1)) / rat(128 * 3)
        * (&pq - &e1);
    total += rat(periodic_selector(&[0, -1, 1], k)) / rat(36)
        * (rat(4) + &half * &e3 * (&one - rat(5) * &e3))
        * &p_minus_e3;
    total += &two_k_3 / rat(36) * (rat(5) - &half * &e3 * (&one + rat(7) * &e3)) * &p_minus_e3;
    total -= (&one - &e1) / rat(8);
    total -= (&one - &e3) / rat(3);
    total += rat(2 * periodic_selector(&[1, 0, 0, -1, 0], k)) / rat(5) * (&one - &p5);
    let mod8 = if matches!(p % 8, 3 | 5) { 1 } else { 0 };
    total += rat(periodic_selector(&[1, 0, 0, -1], k) * mod8) / rat(4);
    let last = if p == 3 {
        ratio(sign_pow(k), 2)
    } else {
        match p % 12 {
            1 | 11 => Rational::zero(),
            5 => rat(periodic_selector(&[0, 1, -1], k)),
            7 => rat(sign_pow(k)),
            _ => unreachable!("odd primes other than 3 are 1, 5, 7, 11 mod 12"),
        }
    };
    total += last / rat(6);

    if !total.is_integer() || total < Rational::zero() {
        return Err(Error::NonIntegralDimension(total.to_string(), k));
    }
    Ok(total
        .to_integer()
        .try_into()
        .expect("dimension fits in i64"))
}

/// `dim M_k(Γ(1,6))`, using the known low-weight spaces for `k <= 4`.
pub fn dim_modular(k: i64) -> i64 {
    match k {
        k if k < 0 => 0,
        0 => 1,
        1 | 3 => 0,
        2 => 1,
        4 => 2,
        _ => {
            let cusp = dim_cusp(k, 3).expect("the formula is valid for k >= 5 at p = 3");
            cusp + if k % 2 == 0 { 1 } else { 0 }
        }
    }
}

/// Coefficient of `t^k` in `(1+t^5)(1+t^15) / ((1-t^2)(1-t^4)(1-t^5)(1-t^6))`.
pub fn genfun_coeff(k: i64) -> i64 {
    if k < 0 {
        return 0;
    }
    let n = k as usize;
    let mut series = vec![0i64; n + 1];
    series[0] = 1;
    for shift in [5usize, 15] {
        for i in (shift..=n).rev() {
            series[i] += series[i - shift];
        }
    }
    for period in [2usize, 4, 5, 6] {
        for i in period..=n {
            series[i] += series[i - period];
        }
    }
    series[n]
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DimensionRow {
    pub k: i64,
    pub dim_cusp: Option<i64>,
    pub dim_modular: Option<i64>,
    pub genfun: Option<i64>,
    pub matches: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DimensionReport {
    pub p: i64,
    pub rows: Vec<DimensionRow>,
}

impl DimensionReport {
    pub fn all_match(&self) -> bool {
        self.rows.iter().all(|r| r.matches)
    }
}

/// Dimension table for `k_from..=k_to`. For `p = 3` every row also carries
/// `dim M_k` and the Hilbert series coefficient and is flagged on agreement;
/// for other primes only `dim S_k` (`k >= 5`) is available.
pub fn dimension_report(p: i64, k_from: i64, k_to: i64) -> Result<DimensionReport> {
    if p < 3 || !is_prime(p as u64) {
        return Err(Error::InvalidPrime(p));
    }
    if p != 3 && k_from < 5 {
        return Err(Error::WeightOutOfRange(k_from));
    }
    let mut rows = Vec::new();
    for k in k_from.max(0)..=k_to {
        let cusp = if k >= 5 { Some(dim_cusp(k, p)?) } else { None };
        let row = if p == 3 {
            let modular = dim_modular(k);
            let genfun = genfun_coeff(k);
            DimensionRow {
                k,
                dim_cusp: cusp,
                dim_modular: Some(modular),
                genfun: Some(genfun),
                matches: modular == genfun,
            }
        } else {
            DimensionRow {
                k,
                dim_cusp: cusp,
                dim_modular: None,
                genfun: None,
                matches: true,
            }
        };
        rows.push(row);
    }
    Ok(DimensionReport { p, rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn selector() {
        assert_eq!(periodic_selector(&[0, -1, 1], 7), -1);
        assert_eq!(periodic_selector(&[1, 0, 0, -1], 4), 1);
        assert_eq!(periodic_selector(&[1, 0, 0, -1, 0], 13), -1);
        assert_eq!(periodic_selector(&[0, -1, 1], -1), 1);
    }

    #[test]
    fn cusp_table_p3() {
        let table = [
            (5, 2),
            (6, 2),
            (7, 2),
            (8, 3),
            (9, 4),
            (10, 6),
            (15, 13),
            (20, 27),
            (25, 47),
        ];
        for (k, d) in table {
            assert_eq!(dim_cusp(k, 3).unwrap(), d, "k = {k}");
        }
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(matches!(dim_cusp(4, 3), Err(Error::WeightOutOfRange(4))));
        assert!(matches!(dim_cusp(6, 2), Err(Error::InvalidPrime(2))));
        assert!(matches!(dim_cusp(6, 9), Err(Error::InvalidPrime(9))));
        assert!(dimension_report(2, 5, 6).is_err());
        assert!(dimension_report(5, 0, 6).is_err());
    }

    #[test]
    fn modular_dims() {
        assert_eq!(dim_modular(4), 2);
        assert_eq!(dim_modular(10), 7);
        assert_eq!(dim_modular(15), 13);
        assert_eq!(dim_modular(20), 28);
    }

    #[test]
    fn generating_function() {
        assert_eq!(genfun_coeff(0), 1);
        assert_eq!(genfun_coeff(1), 0);
        assert_eq!(genfun_coeff(5), 2);
        assert_eq!(genfun_coeff(20), 28);
        for k in 0..=100 {
            assert_eq!(genfun_coeff(k), dim_modular(k), "k = {k}");
        }
    }

    #[test]
    fn integral_for_many_primes() {
        let primes: Vec<i64> = (3..100).filter(|&n| is_prime(n as u64)).take(20).collect();
        assert_eq!(primes.len(), 20);
        for p in primes {
            for k in 5..=200 {
                dim_cusp(k, p).unwrap_or_else(|e| panic!("p = {p}, k = {k}: {e}"));
            }
        }
    }

    #[test]
    fn leading_term_dominates() {
        for p in [3i64, 5, 7, 11] {
            let k = 200;
            let lead = ((k - 2) * (k - 1) * (2 * k - 3)) as f64 * (p * p - 1) as f64 / 5760.0;
            let ratio = dim_cusp(k, p).unwrap() as f64 / lead;
            assert!((ratio - 1.0).abs() < 0.05, "p = {p}: ratio {ratio}");
        }
    }

    #[test]
    fn report_p5() {
        let r = dimension_report(5, 5, 6).unwrap();
        assert_eq!(r.rows.len(), 2);
        assert!(r.rows.iter().all(|row| row.dim_cusp.is_some()));
        let r3 = dimension_report(3, 0, 30).unwrap();
        assert!(r3.all_match());
        assert_eq!(r3.rows[25].dim_cusp, Some(47));
    }
}
