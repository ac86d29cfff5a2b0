//! Fourier index lattice for Γ(1,6).
//!
//! Indices are integer triples `[x, y, z]`. A nonzero index is in the cone iff
//! `x > 0` and `m = -(5x² + 5y² + 24z² - 2xy + 24zx) > 0`. The first coordinate
//! (the grade) is additive and is the truncation parameter of every series.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::fundamental_discriminant_split;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct EtaIndex {
    pub x: i64,
    pub y: i64,
    pub z: i64,
}

impl EtaIndex {
    pub const ZERO: EtaIndex = EtaIndex { x: 0, y: 0, z: 0 };

    pub const fn new(x: i64, y: i64, z: i64) -> Self {
        EtaIndex { x, y, z }
    }

    pub fn grade(&self) -> i64 {
        self.x
    }

    pub fn is_zero(&self) -> bool {
        *self == Self::ZERO
    }

    pub fn norm_m(&self) -> i64 {
        norm_m(self)
    }

    pub fn is_positive(&self) -> bool {
        is_positive(self)
    }

    /// Zero or in the positive cone.
    pub fn in_closed_cone(&self) -> bool {
        self.is_zero() || self.is_positive()
    }

    fn sort_key(&self) -> (i64, i64, i64, i64) {
        (self.x, self.norm_m(), self.y, self.z)
    }
}

// Canonical order: (x, m, y, z).
impl Ord for EtaIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl PartialOrd for EtaIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for EtaIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.x, self.y, self.z)
    }
}

impl Add for EtaIndex {
    type Output = EtaIndex;
    fn add(self, o: EtaIndex) -> EtaIndex {
        EtaIndex::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for EtaIndex {
    type Output = EtaIndex;
    fn sub(self, o: EtaIndex) -> EtaIndex {
        EtaIndex::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Mul<EtaIndex> for i64 {
    type Output = EtaIndex;
    fn mul(self, e: EtaIndex) -> EtaIndex {
        EtaIndex::new(self * e.x, self * e.y, self * e.z)
    }
}

impl From<(i64, i64, i64)> for EtaIndex {
    fn from((x, y, z): (i64, i64, i64)) -> Self {
        EtaIndex::new(x, y, z)
    }
}

pub fn norm_m(eta: &EtaIndex) -> i64 {
    let EtaIndex { x, y, z } = *eta;
    -(5 * x * x + 5 * y * y + 24 * z * z - 2 * x * y + 24 * z * x)
}

pub fn is_positive(eta: &EtaIndex) -> bool {
    eta.x > 0 && norm_m(eta) > 0
}

/// All cone points of grade exactly `x`, ordered by `(m, y, z)`.
pub fn layer(x: i64) -> Vec<EtaIndex> {
    let mut out = Vec::new();
    if x < 1 {
        return out;
    }
    // z lies strictly between the roots of 5z² + 5xz + x², both inside (-x, 0).
    for z in -x..=0 {
        if 5 * z * z + 5 * x * z + x * x >= 0 {
            continue;
        }
        // y lies strictly between the roots of 5y² - 2xy + c.
        let c = 5 * x * x + 24 * z * z + 24 * z * x;
        let disc = x * x - 5 * c;
        debug_assert!(disc > 0);
        let s = (disc as u64).isqrt() as i64;
        let lo = (x - s - 1).div_euclid(5);
        let hi = (x + s + 1).div_euclid(5) + 1;
        for y in lo..=hi {
            let eta = EtaIndex::new(x, y, z);
            if norm_m(&eta) > 0 {
                out.push(eta);
            }
        }
    }
    out.sort();
    out
}

/// Cone points with grade `1..=max_grade` in canonical order.
pub fn enumerate_cone(max_grade: i64) -> Vec<EtaIndex> {
    (1..=max_grade).flat_map(layer).collect()
}

/// The zero index followed by `enumerate_cone(max_grade)`.
pub fn closed_cone(max_grade: i64) -> Vec<EtaIndex> {
    std::iter::once(EtaIndex::ZERO)
        .chain(enumerate_cone(max_grade))
        .collect()
}

/// Ordered pairs `(a, b)` of closed-cone indices with `a + b = eta`.
pub fn decompositions(eta: &EtaIndex) -> Vec<(EtaIndex, EtaIndex)> {
    if !eta.in_closed_cone() {
        return Vec::new();
    }
    closed_cone(eta.grade())
        .into_iter()
        .filter_map(|a| {
            let b = *eta - a;
            b.in_closed_cone().then_some((a, b))
        })
        .collect()
}

/// Content, fundamental discriminant and conductor attached to a cone point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct QuadInvariants {
    pub a: i64,
    pub d: i64,
    pub f: i64,
}

pub fn quad_invariants(eta: &EtaIndex) -> Result<QuadInvariants> {
    if !eta.is_positive() {
        return Err(Error::NotPositive(*eta));
    }
    let a = eta.x.gcd(&eta.y).gcd(&eta.z);
    let m = eta.norm_m();
    debug_assert_eq!(m % (a * a), 0);
    let (d, f) = fundamental_discriminant_split(-m / (a * a))?;
    Ok(QuadInvariants { a, d, f: f as i64 })
}
