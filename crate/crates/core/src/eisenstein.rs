//! Fourier coefficients of the Eisenstein series `E_k` on Γ(D1, D2).
//!
//! The coefficient at a cone point `η` with invariants `(a, d, f)` is
//!
//! ```text
//! C(η) = ε · 4k B_{k-1,χ} / (B_k B_{2k-2})
//!          · Π_{p | D1} (1 - χ(p) p^{k-1})(1 - χ(p) p^{k-2}) / (p^{2k-2} - 1)
//!          · Π_{p | D2} 1 / (p^{k-1} - 1)
//!          · Π_{p | a f D} F_p(η, k)
//! ```
//!
//! with `χ = (d / ·)`. The sign `ε` is fixed once so that `E_2` has
//! coefficient 48 at `(2,1,-1)` for Γ(1,6), and applied to every weight.
//! Only `(D1, D2) = (1, 6)` is calibrated against known tables.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Pow, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{
    bernoulli_number, factorize, generalized_bernoulli, kronecker_symbol, p_valuation, rat,
    Rational,
};
use crate::fourier::FourierSeries;
use crate::lattice::{enumerate_cone, quad_invariants, EtaIndex};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EisensteinParams {
    pub k: i64,
    pub d1: u64,
    pub d2: u64,
}

impl EisensteinParams {
    pub fn new(k: i64, d1: u64, d2: u64) -> Result<Self> {
        if k < 2 || k % 2 != 0 {
            return Err(Error::InvalidWeight(k));
        }
        Ok(EisensteinParams { k, d1, d2 })
    }

    /// Weight `k` on Γ(1,6).
    pub fn gamma_1_6(k: i64) -> Result<Self> {
        Self::new(k, 1, 6)
    }

    fn discriminant(&self) -> u64 {
        self.d1 * self.d2
    }
}

fn pow(p: u64, e: i64) -> BigInt {
    BigInt::from(p).pow(e as u32)
}

/// Local factor `F_p(η, k)`.
fn local_factor(params: &EisensteinParams, p: u64, a_p: i64, f_p: i64, chi: i32) -> BigInt {
    let k = params.k;
    let chi = BigInt::from(chi);
    let geometric = |count: i64, offset: i64| -> BigInt {
        (0..count).map(|t| pow(p, (2 * k - 3) * t + offset)).sum()
    };
    if params.d1 % p == 0 {
        geometric(a_p + 1, 0) + (BigInt::one() + &chi) * geometric(a_p, k - 1)
    } else if params.d2 % p == 0 {
        geometric(a_p + 1, 0) - &chi * geometric(a_p, k - 2)
    } else {
        (0..=a_p)
            .map(|t| {
                let shift = (k - 1) * t;
                let upper = a_p + f_p - t;
                geometric(upper + 1, shift) - &chi * geometric(upper, shift + k - 2)
            })
            .sum()
    }
}

fn raw_coefficient(params: &EisensteinParams, eta: &EtaIndex) -> Result<Rational> {
    let inv = quad_invariants(eta)?;
    let k = params.k;
    let chi = |p: u64| kronecker_symbol(inv.d, p as i64);

    let mut value = rat(4 * k) * generalized_bernoulli((k - 1) as usize, inv.d)?
        / (bernoulli_number(k as usize) * bernoulli_number((2 * k - 2) as usize));
    for (p, _) in factorize(params.d1) {
        let c = BigInt::from(chi(p));
        let num = (BigInt::one() - &c * pow(p, k - 1)) * (BigInt::one() - &c * pow(p, k - 2));
        value *= Rational::new(num, pow(p, 2 * k - 2) - 1u32);
    }
    for (p, _) in factorize(params.d2) {
        value /= Rational::from_integer(pow(p, k - 1) - 1u32);
    }

    let support = (inv.a * inv.f) as u64 * params.discriminant();
    for (p, _) in factorize(support) {
        let a_p = p_valuation(p, inv.a)? as i64;
        let f_p = p_valuation(p, inv.f)? as i64;
        let factor = local_factor(params, p, a_p, f_p, chi(p));
        value *= Rational::from_integer(factor);
    }
    Ok(value)
}

/// Global sign making `C_{E_2}(2,1,-1) = 48` on Γ(1,6).
pub fn calibration_sign() -> i32 {
    static SIGN: OnceLock<i32> = OnceLock::new();
    *SIGN.get_or_init(|| {
        let params = EisensteinParams::gamma_1_6(2).expect("weight 2 is valid");
        let raw =
            raw_coefficient(&params, &EtaIndex::new(2, 1, -1)).expect("(2,1,-1) is a cone point");
        if raw == rat(48) {
            1
        } else {
            debug_assert_eq!(raw, rat(-48));
            -1
        }
    })
}

pub fn eisenstein_coefficient(params: &EisensteinParams, eta: &EtaIndex) -> Result<Rational> {
    if params.k < 2 || params.k % 2 != 0 {
        return Err(Error::InvalidWeight(params.k));
    }
    if !eta.is_positive() {
        return Err(Error::NotPositive(*eta));
    }
    let raw = raw_coefficient(params, eta)?;
    Ok(if calibration_sign() < 0 { -raw } else { raw })
}

/// `E_k` to grade `prec`, constant term 1.
pub fn eisenstein_series(params: &EisensteinParams, prec: u32) -> Result<FourierSeries> {
    let mut series = FourierSeries::constant(params.k, prec, Rational::one());
    for eta in enumerate_cone(prec as i64) {
        let c = eisenstein_coefficient(params, &eta)?;
        if !c.is_zero() {
            series.set_coeff(eta, c);
        }
    }
    Ok(series)
}
