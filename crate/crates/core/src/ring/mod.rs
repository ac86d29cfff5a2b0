//! The generators of the graded ring of modular forms on Γ(1,6) and checks of
//! their relations and spans.
//!
//! Construction order: Eisenstein series, the φ-normalized combinations, the
//! weight-5 forms as square roots of two weight-10 combinations, and the
//! weight-15 form as a bracket divided by `χ5b`.

mod relations;
mod structure;

use std::collections::HashMap;

use num_traits::Zero;

use crate::diffop::bracket;
use crate::eisenstein::{eisenstein_series, EisensteinParams};
use crate::error::{Error, Result};
use crate::exactnum::{rat, ratio, Rational};
use crate::fourier::{divide_exact, linear_combine, multiply, power, sqrt_monic, FourierSeries};
use crate::lattice::EtaIndex;

pub use relations::{
    chi5_square_relations, e8_relation, generator_relations, parse_polynomial, phi_relations,
    verify_chi5_square_relations, verify_generator_relations, verify_relation, Mismatch, Relation,
    RelationReport, Term, CHI15_SQUARED_SCALE,
};
pub use structure::{
    monomial_basis, monomials_of_weight, parity_violations, verify_structure, verify_structure_at,
    weight6_matrix_invertible, MonomialBasisReport, SpanClaim, StructureReport, GENERATOR_ORDER,
};

/// Index of the leading coefficient of `χ5a`.
pub const CHI5A_LEAD: EtaIndex = EtaIndex::new(2, 0, -1);
/// Index of the leading coefficient of `χ5b`.
pub const CHI5B_LEAD: EtaIndex = EtaIndex::new(2, 1, -1);
/// Index at which `χ15` is normalized to 1.
pub const CHI15_NORMALIZATION: EtaIndex = EtaIndex::new(5, 1, -2);

/// Smallest precision accepted by [`GeneratorSet::build`].
pub const MIN_PREC: u32 = 4;

/// Internal headroom: the square roots lose two grades and the division by
/// `χ5b` two more.
const HEADROOM: u32 = 4;

#[derive(Clone, Debug)]
pub struct EisensteinForms {
    pub e2: FourierSeries,
    pub e4: FourierSeries,
    pub e6: FourierSeries,
    pub e8: FourierSeries,
    pub e10: FourierSeries,
}

impl EisensteinForms {
    pub fn build(prec: u32) -> Result<Self> {
        let e = |k| eisenstein_series(&EisensteinParams::gamma_1_6(k)?, prec);
        Ok(EisensteinForms {
            e2: e(2)?,
            e4: e(4)?,
            e6: e(6)?,
            e8: e(8)?,
            e10: e(10)?,
        })
    }
}

#[derive(Clone, Debug)]
pub struct PhiForms {
    pub phi2: FourierSeries,
    pub phi4: FourierSeries,
    pub phi6: FourierSeries,
    pub phi8: FourierSeries,
    pub phi10: FourierSeries,
}

fn combine(terms: &[(Rational, &FourierSeries)]) -> FourierSeries {
    linear_combine(terms).expect("combination of forms of one weight")
}

/// The φ-normalized forms. `φ2 = E2`, and the higher ones are chosen so that
/// the first few coefficients are 0 or 1.
pub fn build_phi_forms(e: &EisensteinForms) -> PhiForms {
    let phi2 = e.e2.clone();
    let phi2_sq = multiply(&phi2, &phi2);
    let phi4 = combine(&[(ratio(-13, 288), &e.e4), (ratio(13, 288), &phi2_sq)]);
    let phi2_cube = multiply(&phi2_sq, &phi2);
    let phi2_phi4 = multiply(&phi2, &phi4);
    let phi6 = combine(&[
        (ratio(-341, 113184), &e.e6),
        (ratio(341, 113184), &phi2_cube),
        (ratio(-109, 262), &phi2_phi4),
    ]);
    let phi8 = e.e8.scale(&rat(138811));

    let c = |n: i64, d: i64| Rational::new(n.into(), d.into());
    let lead = c(31513745731, 416023384089600);
    let phi2_5 = power(&phi2, 5);
    let terms = [
        multiply(&multiply(&phi2_sq, &phi2), &phi4),
        multiply(&phi2_sq, &phi6),
        multiply(&phi2, &multiply(&phi4, &phi4)),
        multiply(&phi4, &phi6),
    ];
    let phi10 = combine(&[
        (lead.clone(), &e.e10),
        (-lead, &phi2_5),
        (c(52522796831, 2889051278400), &terms[0]),
        (c(21884309761, 481508546400), &terms[1]),
        (c(-829232949, 1671904675), &terms[2]),
        (c(318067693, 1671904675), &terms[3]),
    ]);
    PhiForms {
        phi2,
        phi4,
        phi6,
        phi8,
        phi10,
    }
}

/// `χ5a` and `χ5b` as square roots of their weight-10 expansions in Eisenstein
/// series, with leading coefficient `+1`.
pub fn build_chi5(e: &EisensteinForms) -> Result<(FourierSeries, FourierSeries)> {
    let (a_sq, b_sq) = chi5_squares(e)?;
    let chi5a = sqrt_monic(&a_sq, CHI5A_LEAD, 1)?;
    let chi5b = sqrt_monic(&b_sq, CHI5B_LEAD, 1)?;
    Ok((chi5a, chi5b))
}

/// The weight-10 Eisenstein combinations equal to `χ5a²` and `χ5b²`.
pub fn chi5_squares(e: &EisensteinForms) -> Result<(FourierSeries, FourierSeries)> {
    let [a, b] = chi5_square_relations();
    let eval = |r: &Relation| -> Result<FourierSeries> {
        let mut ctx = MonomialCache::new(|name| match name {
            "E2" => Some(&e.e2),
            "E4" => Some(&e.e4),
            "E6" => Some(&e.e6),
            "E10" => Some(&e.e10),
            _ => None,
        });
        ctx.polynomial(&r.rhs, e.e2.prec())
    };
    Ok((eval(&a)?, eval(&b)?))
}

/// `χ15 = {E2, E4, χ5a, E6} / χ5b`, scaled to 1 at `(5,1,-2)`. Also returns
/// the raw bracket.
pub fn build_chi15(
    e: &EisensteinForms,
    chi5a: &FourierSeries,
    chi5b: &FourierSeries,
) -> Result<(FourierSeries, FourierSeries)> {
    let delta = bracket(&e.e2, &e.e4, chi5a, &e.e6);
    let quotient = divide_exact(&delta, chi5b, CHI5B_LEAD)?;
    Ok((normalize_chi15(&quotient)?, delta))
}

/// Scales a multiple of `χ15` so that its coefficient at `(5,1,-2)` is 1.
pub fn normalize_chi15(q: &FourierSeries) -> Result<FourierSeries> {
    if (q.prec() as i64) < CHI15_NORMALIZATION.grade() {
        return Err(Error::PrecisionTooSmall {
            got: q.prec(),
            need: CHI15_NORMALIZATION.grade() as u32,
        });
    }
    let c = q.coeff(&CHI15_NORMALIZATION);
    if c.is_zero() {
        return Err(Error::BadLeadingTerm(CHI15_NORMALIZATION));
    }
    Ok(q.scale(&(Rational::from_integer(1.into()) / c)))
}

/// All generator-level forms at a common precision.
#[derive(Clone, Debug)]
pub struct GeneratorSet {
    pub prec: u32,
    pub e2: FourierSeries,
    pub e4: FourierSeries,
    pub e6: FourierSeries,
    pub e8: FourierSeries,
    pub e10: FourierSeries,
    pub phi2: FourierSeries,
    pub phi4: FourierSeries,
    pub phi6: FourierSeries,
    pub phi8: FourierSeries,
    pub phi10: FourierSeries,
    pub chi5a: FourierSeries,
    pub chi5b: FourierSeries,
    pub chi15: FourierSeries,
    /// `{E2, E4, χ5a, E6}`, unnormalized.
    pub delta20a: FourierSeries,
    /// `{E2, E4, χ5b, E6}`, unnormalized.
    pub delta20b: FourierSeries,
}

impl GeneratorSet {
    /// Identifiers accepted by [`GeneratorSet::get`].
    pub const NAMES: [&'static str; 15] = [
        "E2", "E4", "E6", "E8", "E10", "phi2", "phi4", "phi6", "phi8", "phi10", "chi5a", "chi5b",
        "chi15", "delta20a", "delta20b",
    ];

    pub fn build(prec: u32) -> Result<Self> {
        if prec < MIN_PREC {
            return Err(Error::PrecisionTooSmall {
                got: prec,
                need: MIN_PREC,
            });
        }
        let work = prec.max(CHI15_NORMALIZATION.grade() as u32) + HEADROOM;
        let e = EisensteinForms::build(work)?;
        let phi = build_phi_forms(&e);
        let (chi5a, chi5b) = build_chi5(&e)?;
        let (chi15, delta20a) = build_chi15(&e, &chi5a, &chi5b)?;
        let delta20b = bracket(&e.e2, &e.e4, &chi5b, &e.e6);
        let t = |f: &FourierSeries| f.truncate(prec);
        Ok(GeneratorSet {
            prec,
            e2: t(&e.e2),
            e4: t(&e.e4),
            e6: t(&e.e6),
            e8: t(&e.e8),
            e10: t(&e.e10),
            phi2: t(&phi.phi2),
            phi4: t(&phi.phi4),
            phi6: t(&phi.phi6),
            phi8: t(&phi.phi8),
            phi10: t(&phi.phi10),
            chi5a: t(&chi5a),
            chi5b: t(&chi5b),
            chi15: t(&chi15),
            delta20a: t(&delta20a),
            delta20b: t(&delta20b),
        })
    }

    pub fn get(&self, name: &str) -> Option<&FourierSeries> {
        Some(match name {
            "E2" => &self.e2,
            "E4" => &self.e4,
            "E6" => &self.e6,
            "E8" => &self.e8,
            "E10" => &self.e10,
            "phi2" => &self.phi2,
            "phi4" => &self.phi4,
            "phi6" => &self.phi6,
            "phi8" => &self.phi8,
            "phi10" => &self.phi10,
            "chi5a" => &self.chi5a,
            "chi5b" => &self.chi5b,
            "chi15" => &self.chi15,
            "delta20a" => &self.delta20a,
            "delta20b" => &self.delta20b,
            _ => return None,
        })
    }

    pub fn truncate(&self, prec: u32) -> Self {
        let prec = prec.min(self.prec);
        let t = |f: &FourierSeries| f.truncate(prec);
        GeneratorSet {
            prec,
            e2: t(&self.e2),
            e4: t(&self.e4),
            e6: t(&self.e6),
            e8: t(&self.e8),
            e10: t(&self.e10),
            phi2: t(&self.phi2),
            phi4: t(&self.phi4),
            phi6: t(&self.phi6),
            phi8: t(&self.phi8),
            phi10: t(&self.phi10),
            chi5a: t(&self.chi5a),
            chi5b: t(&self.chi5b),
            chi15: t(&self.chi15),
            delta20a: t(&self.delta20a),
            delta20b: t(&self.delta20b),
        }
    }

    /// Evaluates a monomial such as `"phi2^2*phi4"` or a bare identifier.
    pub fn evaluate(&self, descriptor: &str) -> Result<FourierSeries> {
        let factors = parse_monomial(descriptor)?;
        let mut ctx = MonomialCache::new(|name| self.get(name));
        ctx.monomial(&factors, self.prec)
    }

    /// `{E2, E4, χ5b, E6} / χ5a`, normalized like `χ15`. Valid to `prec - 2`.
    pub fn companion_chi15(&self) -> Result<FourierSeries> {
        let q = divide_exact(&self.delta20b, &self.chi5a, CHI5A_LEAD)?;
        normalize_chi15(&q)
    }
}

/// Parses `"E2^13*E4"` into `[("E2", 13), ("E4", 1)]`. The empty string and
/// `"1"` are the unit monomial.
pub fn parse_monomial(s: &str) -> Result<Vec<(String, u32)>> {
    let s = s.trim();
    if s.is_empty() || s == "1" {
        return Ok(Vec::new());
    }
    s.split('*')
        .map(|factor| {
            let factor = factor.trim();
            let (name, exp) = match factor.split_once('^') {
                Some((n, e)) => {
                    let exp = e
                        .trim()
                        .parse::<u32>()
                        .map_err(|_| Error::UnknownForm(s.to_string()))?;
                    (n.trim(), exp)
                }
                None => (factor, 1),
            };
            if name.is_empty() {
                return Err(Error::UnknownForm(s.to_string()));
            }
            Ok((name.to_string(), exp))
        })
        .collect()
}

/// Memoized products of named series.
pub(crate) struct MonomialCache<'a, F>
where
    F: Fn(&str) -> Option<&'a FourierSeries>,
{
    lookup: F,
    powers: HashMap<(String, u32), FourierSeries>,
}

impl<'a, F> MonomialCache<'a, F>
where
    F: Fn(&str) -> Option<&'a FourierSeries>,
{
    pub(crate) fn new(lookup: F) -> Self {
        MonomialCache {
            lookup,
            powers: HashMap::new(),
        }
    }

    fn power(&mut self, name: &str, exp: u32) -> Result<FourierSeries> {
        let key = (name.to_string(), exp);
        if let Some(p) = self.powers.get(&key) {
            return Ok(p.clone());
        }
        let base = (self.lookup)(name).ok_or_else(|| Error::UnknownForm(name.to_string()))?;
        let value = if exp == 1 {
            base.clone()
        } else {
            let half = self.power(name, exp / 2)?;
            let sq = multiply(&half, &half);
            if exp % 2 == 1 {
                multiply(&sq, base)
            } else {
                sq
            }
        };
        self.powers.insert(key, value.clone());
        Ok(value)
    }

    pub(crate) fn monomial(
        &mut self,
        factors: &[(String, u32)],
        prec: u32,
    ) -> Result<FourierSeries> {
        let mut acc = FourierSeries::one(prec);
        for (name, exp) in factors {
            if *exp == 0 {
                continue;
            }
            let p = self.power(name, *exp)?;
            acc = multiply(&acc, &p);
        }
        Ok(acc)
    }

    pub(crate) fn polynomial(&mut self, terms: &[Term], prec: u32) -> Result<FourierSeries> {
        let values = terms
            .iter()
            .map(|t| self.monomial(&t.factors, prec))
            .collect::<Result<Vec<_>>>()?;
        let pairs: Vec<(Rational, &FourierSeries)> = terms
            .iter()
            .zip(&values)
            .map(|(t, v)| (t.coeff.clone(), v))
            .collect();
        linear_combine(&pairs)
    }
}
