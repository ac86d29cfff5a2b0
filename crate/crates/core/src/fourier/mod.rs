//! Truncated Fourier expansions indexed by the closed cone.
//!
//! A series carries a weight and a precision `prec`: every coefficient at an
//! index of grade `<= prec` is known exactly, nothing above is stored. Grades
//! add under multiplication and only the zero index has grade 0, so each
//! product coefficient up to the smaller precision is an exact finite sum.

pub mod linalg;

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{rat, Rational};
use crate::lattice::{closed_cone, layer, EtaIndex};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FourierSeries {
    weight: i64,
    prec: u32,
    coeffs: BTreeMap<EtaIndex, Rational>,
}

impl FourierSeries {
    pub fn zero(weight: i64, prec: u32) -> Self {
        FourierSeries {
            weight,
            prec,
            coeffs: BTreeMap::new(),
        }
    }

    /// The weight-0 unit.
    pub fn one(prec: u32) -> Self {
        Self::constant(0, prec, Rational::one())
    }

    pub fn constant(weight: i64, prec: u32, c: Rational) -> Self {
        let mut s = Self::zero(weight, prec);
        s.set_coeff(EtaIndex::ZERO, c);
        s
    }

    /// Builds a series from explicit coefficients. Keys outside the closed
    /// cone or above `prec` are rejected.
    pub fn from_coeffs<I>(weight: i64, prec: u32, coeffs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (EtaIndex, Rational)>,
    {
        let mut s = Self::zero(weight, prec);
        for (eta, c) in coeffs {
            if !eta.in_closed_cone() {
                return Err(Error::NotPositive(eta));
            }
            if eta.grade() > prec as i64 {
                return Err(Error::PrecisionTooSmall {
                    got: prec,
                    need: eta.grade() as u32,
                });
            }
            s.set_coeff(eta, c);
        }
        Ok(s)
    }

    pub fn weight(&self) -> i64 {
        self.weight
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn coeff(&self, eta: &EtaIndex) -> Rational {
        self.coeffs.get(eta).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeff_at(&self, x: i64, y: i64, z: i64) -> Rational {
        self.coeff(&EtaIndex::new(x, y, z))
    }

    /// Sets one coefficient.
    ///
    /// # Panics
    /// If `eta` is outside the closed cone or above the precision.
    pub fn set_coeff(&mut self, eta: EtaIndex, c: Rational) {
        assert!(
            eta.in_closed_cone(),
            "index {eta} is not in the closed cone"
        );
        assert!(
            eta.grade() <= self.prec as i64,
            "index {eta} is above precision {}",
            self.prec
        );
        if c.is_zero() {
            self.coeffs.remove(&eta);
        } else {
            self.coeffs.insert(eta, c);
        }
    }

    /// Nonzero coefficients in canonical order.
    pub fn iter(&self) -> impl Iterator<Item = (&EtaIndex, &Rational)> {
        self.coeffs.iter()
    }

    pub fn support_len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_cusp(&self) -> bool {
        !self.coeffs.contains_key(&EtaIndex::ZERO)
    }

    /// Lowest grade carrying a nonzero coefficient.
    pub fn valuation(&self) -> Option<i64> {
        self.coeffs.keys().map(EtaIndex::grade).min()
    }

    pub fn truncate(&self, prec: u32) -> Self {
        let prec = prec.min(self.prec);
        FourierSeries {
            weight: self.weight,
            prec,
            coeffs: self
                .coeffs
                .iter()
                .filter(|(e, _)| e.grade() <= prec as i64)
                .map(|(e, c)| (*e, c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero(self.weight, self.prec);
        if !c.is_zero() {
            out.coeffs = self.coeffs.iter().map(|(e, v)| (*e, v * c)).collect();
        }
        out
    }

    pub fn with_weight(mut self, weight: i64) -> Self {
        self.weight = weight;
        self
    }

    /// Coefficient vector over `closed_cone(prec)`.
    pub fn dense(&self) -> Vec<Rational> {
        closed_cone(self.prec as i64)
            .iter()
            .map(|e| self.coeff(e))
            .collect()
    }

    /// Series whose coefficient at `η` is `ℓ(η) · C(η)` for a coordinate
    /// functional `ℓ`.
    pub fn coordinate_weighted(&self, coord: impl Fn(&EtaIndex) -> i64) -> Self {
        let mut out = Self::zero(self.weight, self.prec);
        for (e, c) in &self.coeffs {
            let w = coord(e);
            if w != 0 {
                out.coeffs.insert(*e, c * rat(w));
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        linear_combine(&[(Rational::one(), self), (Rational::one(), other)])
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        linear_combine(&[(Rational::one(), self), (-Rational::one(), other)])
    }
}

/// Coefficientwise `Σ cᵢ fᵢ`, truncated to the smallest input precision.
pub fn linear_combine(terms: &[(Rational, &FourierSeries)]) -> Result<FourierSeries> {
    let Some((_, first)) = terms.first() else {
        return Ok(FourierSeries::zero(0, 0));
    };
    let weight = first.weight;
    let mut prec = first.prec;
    for (_, f) in terms {
        if f.weight != weight {
            return Err(Error::WeightMismatch(weight, f.weight));
        }
        prec = prec.min(f.prec);
    }
    let mut acc: BTreeMap<EtaIndex, Rational> = BTreeMap::new();
    for (c, f) in terms {
        if c.is_zero() {
            continue;
        }
        for (e, v) in f.coeffs.range(..) {
            if e.grade() <= prec as i64 {
                *acc.entry(*e).or_insert_with(Rational::zero) += c * v;
            }
        }
    }
    acc.retain(|_, v| !v.is_zero());
    Ok(FourierSeries {
        weight,
        prec,
        coeffs: acc,
    })
}

/// Convolution up to grade `prec`. The caller is responsible for the result
/// being exact at that precision.
fn convolve(f: &FourierSeries, g: &FourierSeries, prec: u32) -> BTreeMap<EtaIndex, Rational> {
    let bound = prec as i64;
    let mut acc: BTreeMap<EtaIndex, Rational> = BTreeMap::new();
    // Keys are ordered by grade first, so both loops can stop early.
    for (a, ca) in &f.coeffs {
        if a.grade() > bound {
            break;
        }
        for (b, cb) in &g.coeffs {
            if a.grade() + b.grade() > bound {
                break;
            }
            *acc.entry(*a + *b).or_insert_with(Rational::zero) += ca * cb;
        }
    }
    acc.retain(|_, v| !v.is_zero());
    acc
}

pub fn multiply(f: &FourierSeries, g: &FourierSeries) -> FourierSeries {
    let prec = f.prec.min(g.prec);
    FourierSeries {
        weight: f.weight + g.weight,
        prec,
        coeffs: convolve(f, g, prec),
    }
}

pub fn power(f: &FourierSeries, n: u32) -> FourierSeries {
    let mut result = FourierSeries::one(f.prec);
    let mut base = f.clone();
    let mut n = n;
    while n > 0 {
        if n & 1 == 1 {
            result = multiply(&result, &base);
        }
        n >>= 1;
        if n > 0 {
            base = multiply(&base, &base);
        }
    }
    result
}

fn first_mismatch(
    lhs: &BTreeMap<EtaIndex, Rational>,
    rhs: &FourierSeries,
    prec: u32,
) -> Option<EtaIndex> {
    let bound = prec as i64;
    lhs.keys()
        .chain(rhs.coeffs.keys())
        .filter(|e| e.grade() <= bound)
        .filter(|e| lhs.get(e).cloned().unwrap_or_default() != rhs.coeff(e))
        .min()
        .copied()
}

/// Square root `h` of `g` with `C_h(lead) = sign` and `h` vanishing below
/// `grade(lead)`, under the assumption that the lowest-grade slice of `h` is
/// the single term at `lead`.
///
/// The result has precision `prec(g) - grade(lead)` and is checked by
/// re-squaring against every coefficient of `g`.
pub fn sqrt_monic(g: &FourierSeries, lead: EtaIndex, sign: i32) -> Result<FourierSeries> {
    if !lead.is_positive() {
        return Err(Error::NotPositive(lead));
    }
    if g.weight % 2 != 0 {
        return Err(Error::InvalidWeight(g.weight));
    }
    let l = lead.grade();
    if (g.prec as i64) < 2 * l {
        return Err(Error::PrecisionTooSmall {
            got: g.prec,
            need: 2 * l as u32,
        });
    }
    if !g.coeff(&(2 * lead)).is_one() {
        return Err(Error::BadLeadingTerm(2 * lead));
    }
    if let Some(bad) = g.coeffs.keys().find(|e| e.grade() < 2 * l) {
        return Err(Error::BadLeadingTerm(*bad));
    }
    let sign = if sign < 0 {
        -Rational::one()
    } else {
        Rational::one()
    };
    let out_prec = g.prec - l as u32;
    let mut h = FourierSeries::zero(g.weight / 2, out_prec);
    h.coeffs.insert(lead, sign.clone());
    let two_sign = &sign * rat(2);
    for grade in l + 1..=out_prec as i64 {
        for eta in layer(grade) {
            let target = eta + lead;
            let cross: Rational = h
                .coeffs
                .iter()
                .map(|(a, ca)| ca * h.coeff(&(target - *a)))
                .sum();
            let c = (g.coeff(&target) - cross) / &two_sign;
            if !c.is_zero() {
                h.coeffs.insert(eta, c);
            }
        }
    }
    let square = convolve(&h, &h, g.prec);
    match first_mismatch(&square, g, g.prec) {
        Some(bad) => Err(Error::NotSquare(bad)),
        None => Ok(h),
    }
}

/// Exact quotient `g / b` where the lowest-grade slice of `b` is the single
/// term at `lead`.
///
/// The result has precision `min(prec g, prec b) - grade(lead)` and is checked
/// by re-multiplication against every coefficient of `g` up to that bound.
pub fn divide_exact(g: &FourierSeries, b: &FourierSeries, lead: EtaIndex) -> Result<FourierSeries> {
    if !lead.is_positive() {
        return Err(Error::NotPositive(lead));
    }
    let l = lead.grade();
    let lead_coeff = b.coeff(&lead);
    if lead_coeff.is_zero() {
        return Err(Error::BadLeadingTerm(lead));
    }
    if let Some(bad) = b
        .coeffs
        .keys()
        .find(|e| e.grade() < l || (e.grade() == l && **e != lead))
    {
        return Err(Error::BadLeadingTerm(*bad));
    }
    if let Some(bad) = g.coeffs.keys().find(|e| e.grade() < l) {
        return Err(Error::NotDivisible(*bad));
    }
    let work_prec = g.prec.min(b.prec);
    if (work_prec as i64) < l {
        return Err(Error::PrecisionTooSmall {
            got: work_prec,
            need: l as u32,
        });
    }
    let out_prec = work_prec - l as u32;
    let mut h = FourierSeries::zero(g.weight - b.weight, out_prec);
    let tail: Vec<(EtaIndex, Rational)> = b
        .coeffs
        .iter()
        .filter(|(e, _)| **e != lead)
        .map(|(e, c)| (*e, c.clone()))
        .collect();
    for eta in closed_cone(out_prec as i64) {
        let target = eta + lead;
        let known: Rational = tail
            .iter()
            .filter(|(beta, _)| beta.grade() <= target.grade())
            .map(|(beta, cb)| cb * h.coeff(&(target - *beta)))
            .sum();
        let c = (g.coeff(&target) - known) / &lead_coeff;
        if !c.is_zero() {
            h.coeffs.insert(eta, c);
        }
    }
    let product = convolve(b, &h, work_prec);
    match first_mismatch(&product, g, work_prec) {
        Some(bad) => Err(Error::NotDivisible(bad)),
        None => Ok(h),
    }
}

fn check_shared(forms: &[FourierSeries]) -> Result<()> {
    if let Some(first) = forms.first() {
        for f in forms {
            if f.weight != first.weight {
                return Err(Error::WeightMismatch(first.weight, f.weight));
            }
            if f.prec != first.prec {
                return Err(Error::PrecisionMismatch(first.prec, f.prec));
            }
        }
    }
    Ok(())
}

/// Rank over Q of the coefficient vectors of `forms`.
pub fn rank_of_span(forms: &[FourierSeries]) -> Result<usize> {
    check_shared(forms)?;
    let rows: Vec<Vec<Rational>> = forms.iter().map(FourierSeries::dense).collect();
    Ok(linalg::rank(&rows))
}

/// Basis of all vectors `c` with `Σ cᵢ fᵢ = 0` to the shared precision.
pub fn relation_nullspace(forms: &[FourierSeries]) -> Result<Vec<Vec<Rational>>> {
    check_shared(forms)?;
    let Some(first) = forms.first() else {
        return Ok(Vec::new());
    };
    let indices = closed_cone(first.prec as i64);
    let matrix: Vec<Vec<Rational>> = indices
        .iter()
        .map(|e| forms.iter().map(|f| f.coeff(e)).collect())
        .filter(|row: &Vec<Rational>| !linalg::is_zero_vector(row))
        .collect();
    Ok(linalg::nullspace(&matrix, forms.len()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::ratio;
    use crate::lattice::decompositions;

    fn e(x: i64, y: i64, z: i64) -> EtaIndex {
        EtaIndex::new(x, y, z)
    }

    /// A small non-trivial series with unit leading term at `lead`.
    fn sample(weight: i64, prec: u32, lead: EtaIndex, seed: i64) -> FourierSeries {
        let mut s = FourierSeries::zero(weight, prec);
        for (i, eta) in closed_cone(prec as i64).into_iter().enumerate() {
            if eta.grade() > lead.grade() {
                s.set_coeff(eta, ratio((i as i64 * seed) % 7 - 3, 1 + i as i64 % 3));
            }
        }
        s.set_coeff(lead, rat(1));
        s
    }

    #[test]
    fn unit_and_truncation() {
        let f = sample(3, 6, e(2, 1, -1), 5);
        assert_eq!(multiply(&f, &FourierSeries::one(6)).with_weight(3), f);
        assert_eq!(power(&f, 1), f.clone().with_weight(3));
        assert_eq!(power(&f, 0), FourierSeries::one(6));
        let g = linear_combine(&[(rat(1), &f), (rat(0), &f.truncate(4))]).unwrap();
        assert_eq!(g, f.truncate(4));
    }

    #[test]
    fn convolution_matches_decompositions() {
        let f = sample(2, 6, e(2, 0, -1), 3);
        let mut g = sample(4, 6, e(2, 1, -1), 11);
        g.set_coeff(EtaIndex::ZERO, ratio(2, 3));
        let p = multiply(&f, &g);
        for eta in closed_cone(6) {
            let direct: Rational = decompositions(&eta)
                .iter()
                .map(|(a, b)| f.coeff(a) * g.coeff(b))
                .sum();
            assert_eq!(p.coeff(&eta), direct, "{eta}");
        }
    }

    #[test]
    fn weight_mismatch() {
        let f = FourierSeries::one(4);
        let g = FourierSeries::zero(2, 4);
        assert!(matches!(
            linear_combine(&[(rat(1), &f), (rat(1), &g)]),
            Err(Error::WeightMismatch(0, 2))
        ));
        assert!(relation_nullspace(&[f, g]).is_err());
    }

    #[test]
    fn sqrt_round_trip() {
        let h = sample(5, 8, e(2, 0, -1), 7);
        let g = multiply(&h, &h);
        let r = sqrt_monic(&g, e(2, 0, -1), 1).unwrap();
        assert_eq!(r, h.truncate(6));
        let neg = sqrt_monic(&g, e(2, 0, -1), -1).unwrap();
        assert_eq!(neg, h.truncate(6).scale(&rat(-1)));
    }

    #[test]
    fn sqrt_rejects_non_square() {
        let h = sample(5, 8, e(2, 0, -1), 7);
        let g = multiply(&h, &h);
        // (4,1,-2) lies in the lowest slice of g but not at 2·lead
        let mut bumped = g.clone();
        let off = e(4, 1, -2);
        bumped.set_coeff(off, g.coeff(&off) + rat(1));
        assert!(matches!(
            sqrt_monic(&bumped, e(2, 0, -1), 1),
            Err(Error::NotSquare(idx)) if idx == off
        ));
        assert!(matches!(
            sqrt_monic(&g, e(2, 1, -1), 1),
            Err(Error::BadLeadingTerm(_))
        ));
    }

    #[test]
    fn divide_round_trip() {
        let b = sample(5, 8, e(2, 1, -1), 13);
        let mut h = sample(15, 8, e(3, 0, -1), 2);
        h.set_coeff(EtaIndex::ZERO, rat(4));
        let g = multiply(&b, &h);
        let q = divide_exact(&g, &b, e(2, 1, -1)).unwrap();
        assert_eq!(q, h.truncate(6).with_weight(g.weight() - 5));
    }

    #[test]
    fn divide_detects_failure() {
        let a = sample(5, 6, e(2, 0, -1), 1);
        let b = sample(5, 6, e(2, 1, -1), 3);
        assert!(matches!(
            divide_exact(&a, &b, e(2, 1, -1)),
            Err(Error::NotDivisible(_))
        ));
    }

    #[test]
    fn ranks_and_relations() {
        let f = sample(4, 5, e(2, 1, -1), 3);
        let g = sample(4, 5, e(2, 0, -1), 5);
        assert_eq!(rank_of_span(&[f.clone(), g.clone(), f.clone()]).unwrap(), 2);
        let diff = f.sub(&g).unwrap();
        let ns = relation_nullspace(&[f, g, diff]).unwrap();
        assert_eq!(ns.len(), 1);
        assert_eq!(linalg::monic(&ns[0]), vec![rat(1), rat(-1), rat(-1)]);
    }
}
