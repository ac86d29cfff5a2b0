//! Spans of generator monomials against the Hilbert series.

use std::collections::HashMap;

use serde::Serialize;

use super::GeneratorSet;
use crate::dims::genfun_coeff;
use crate::error::Result;
use crate::fourier::{linalg, multiply, rank_of_span, FourierSeries};
use crate::lattice::EtaIndex;

/// Generators in exponent order: `E2, E4, χ5a, E6, χ5b, χ15`.
pub const GENERATOR_ORDER: [&str; 6] = ["E2", "E4", "chi5a", "E6", "chi5b", "chi15"];

/// Largest precision tried when escalating.
const MAX_ESCALATION: u32 = 10;

/// Exponent tuples `(a, b, c, d, ε, δ)` with
/// `2a + 4b + 5c + 6d + 5ε + 15δ = weight` and `ε, δ ∈ {0, 1}`.
pub fn monomials_of_weight(weight: u32) -> Vec<[u32; 6]> {
    let mut out = Vec::new();
    for delta in 0..=1u32 {
        for eps in 0..=1u32 {
            let Some(rest) = weight.checked_sub(5 * eps + 15 * delta) else {
                continue;
            };
            for d in 0..=rest / 6 {
                for c in 0..=(rest - 6 * d) / 5 {
                    for b in 0..=(rest - 6 * d - 5 * c) / 4 {
                        let left = rest - 6 * d - 5 * c - 4 * b;
                        if left % 2 == 0 {
                            out.push([left / 2, b, c, d, eps, delta]);
                        }
                    }
                }
            }
        }
    }
    out.sort();
    out
}

/// Exponent tuples for all monomials in `E2, E4, χ5a, E6, χ5b` of the given
/// weight, with no bound on the power of `χ5b`.
fn five_generator_monomials(weight: u32) -> Vec<[u32; 6]> {
    let mut out = Vec::new();
    for eps in 0..=weight / 5 {
        for rest in monomials_of_weight(weight - 5 * eps) {
            if rest[4] == 0 && rest[5] == 0 {
                let mut m = rest;
                m[4] = eps;
                out.push(m);
            }
        }
    }
    out.sort();
    out
}

pub fn monomial_name(exps: &[u32; 6]) -> String {
    let parts: Vec<String> = GENERATOR_ORDER
        .iter()
        .zip(exps)
        .filter(|(_, &e)| e > 0)
        .map(|(n, &e)| {
            if e == 1 {
                n.to_string()
            } else {
                format!("{n}^{e}")
            }
        })
        .collect();
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

/// Products of generators, memoized by exponent tuple.
struct Products<'a> {
    gens: &'a GeneratorSet,
    memo: HashMap<[u32; 6], FourierSeries>,
}

impl<'a> Products<'a> {
    fn new(gens: &'a GeneratorSet) -> Self {
        Products {
            gens,
            memo: HashMap::new(),
        }
    }

    fn get(&mut self, exps: [u32; 6]) -> FourierSeries {
        if let Some(f) = self.memo.get(&exps) {
            return f.clone();
        }
        let value = match exps.iter().position(|&e| e > 0) {
            None => FourierSeries::one(self.gens.prec),
            Some(i) => {
                let mut smaller = exps;
                smaller[i] -= 1;
                let base = self.gens.get(GENERATOR_ORDER[i]).expect("generator name");
                multiply(&self.get(smaller), base)
            }
        };
        self.memo.insert(exps, value.clone());
        value
    }

    fn rank(&mut self, exps: &[[u32; 6]], extra: &[&FourierSeries]) -> Result<usize> {
        let mut forms: Vec<FourierSeries> = exps.iter().map(|&e| self.get(e)).collect();
        forms.extend(extra.iter().map(|f| (*f).clone()));
        rank_of_span(&forms)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct MonomialBasisReport {
    pub weight: u32,
    pub prec: u32,
    pub monomials: Vec<String>,
    pub rank: usize,
    pub expected: i64,
}

impl MonomialBasisReport {
    pub fn matches(&self) -> bool {
        self.rank as i64 == self.expected
    }
}

/// Rank of the monomial span in the given weight at the precision of `gens`.
pub fn monomial_basis(weight: u32, gens: &GeneratorSet) -> Result<MonomialBasisReport> {
    let exps = monomials_of_weight(weight);
    let rank = Products::new(gens).rank(&exps, &[])?;
    Ok(MonomialBasisReport {
        weight,
        prec: gens.prec,
        monomials: exps.iter().map(monomial_name).collect(),
        rank,
        expected: genfun_coeff(weight as i64),
    })
}

/// A rank statement about an explicit list of forms.
#[derive(Clone, Debug, Serialize)]
pub struct SpanClaim {
    pub label: String,
    pub weight: u32,
    pub rank: usize,
    pub expected: usize,
}

impl SpanClaim {
    pub fn holds(&self) -> bool {
        self.rank == self.expected
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct StructureReport {
    /// Precisions at which ranks were computed; the last two agree unless
    /// the escalation bound was reached.
    pub precisions: Vec<u32>,
    pub stable: bool,
    pub rows: Vec<MonomialBasisReport>,
    pub claims: Vec<SpanClaim>,
}

impl StructureReport {
    pub fn passed(&self) -> bool {
        self.stable
            && self.rows.iter().all(|r| r.matches())
            && self.claims.iter().all(|c| c.holds())
    }

    pub fn claim(&self, label: &str) -> Option<&SpanClaim> {
        self.claims.iter().find(|c| c.label == label)
    }
}

fn span_claims(gens: &GeneratorSet) -> Result<Vec<SpanClaim>> {
    let mut p = Products::new(gens);
    let e_only = |w: u32| -> Vec<[u32; 6]> {
        monomials_of_weight(w)
            .into_iter()
            .filter(|m| m[2] == 0 && m[4] == 0 && m[5] == 0)
            .collect()
    };
    let chi5a_chi5b = p.get([0, 0, 1, 0, 1, 0]);
    let w10_v: Vec<[u32; 6]> = e_only(10);
    let u15 = five_generator_monomials(15);
    let v20 = five_generator_monomials(20);

    let mut claims = Vec::new();
    let mut push = |label: &str, weight: u32, rank: usize, expected: usize| {
        claims.push(SpanClaim {
            label: label.to_string(),
            weight,
            rank,
            expected,
        })
    };
    push("weight 6: E2^3, E2*E4, E6", 6, p.rank(&e_only(6), &[])?, 3);
    push(
        "weight 8: products of E2, E4, E6",
        8,
        p.rank(&e_only(8), &[])?,
        4,
    );
    push(
        "weight 8: with E8 adjoined",
        8,
        p.rank(&e_only(8), &[&gens.e8])?,
        4,
    );
    let v = p.rank(&w10_v, &[&gens.e10])?;
    push("weight 10: Eisenstein products and E10", 10, v, 6);
    let v_plus = p.rank(&w10_v, &[&gens.e10, &chi5a_chi5b])?;
    push("weight 10: with chi5a*chi5b adjoined", 10, v_plus, 7);
    push(
        "weight 15: products of five generators",
        15,
        p.rank(&u15, &[])?,
        12,
    );
    push(
        "weight 15: with chi15 adjoined",
        15,
        p.rank(&u15, &[&gens.chi15])?,
        13,
    );
    push(
        "weight 20: products of five generators",
        20,
        p.rank(&v20, &[])?,
        26,
    );
    let with_delta = p.rank(&v20, &[&gens.delta20a, &gens.delta20b])?;
    push(
        "weight 20: with delta20a, delta20b adjoined",
        20,
        with_delta,
        28,
    );
    Ok(claims)
}

/// Monomial ranks for weights `0..=k_max` and the span claims, all at the
/// precision of `gens`.
pub fn verify_structure_at(k_max: u32, gens: &GeneratorSet) -> Result<StructureReport> {
    let mut p = Products::new(gens);
    let mut rows = Vec::new();
    for weight in 0..=k_max {
        let exps = monomials_of_weight(weight);
        rows.push(MonomialBasisReport {
            weight,
            prec: gens.prec,
            monomials: exps.iter().map(monomial_name).collect(),
            rank: p.rank(&exps, &[])?,
            expected: genfun_coeff(weight as i64),
        });
    }
    Ok(StructureReport {
        precisions: vec![gens.prec],
        stable: false,
        rows,
        claims: span_claims(gens)?,
    })
}

fn ranks(r: &StructureReport) -> Vec<usize> {
    r.rows
        .iter()
        .map(|x| x.rank)
        .chain(r.claims.iter().map(|c| c.rank))
        .collect()
}

/// [`verify_structure_at`] with precision escalation: truncation can only
/// lower a rank, so precision is raised by 2 until all ranks repeat.
pub fn verify_structure(k_max: u32, gens: &GeneratorSet) -> Result<StructureReport> {
    let mut report = verify_structure_at(k_max, gens)?;
    let mut precisions = vec![gens.prec];
    let mut prec = gens.prec;
    let limit = gens.prec + MAX_ESCALATION;
    while prec + 2 <= limit {
        prec += 2;
        let next = verify_structure_at(k_max, &GeneratorSet::build(prec)?)?;
        precisions.push(prec);
        let same = ranks(&next) == ranks(&report);
        report = next;
        if same {
            report.stable = true;
            break;
        }
    }
    report.precisions = precisions;
    Ok(report)
}

/// Odd-weight forms must have zero constant term. Returns the offenders.
pub fn parity_violations(gens: &GeneratorSet, k_max: u32) -> Vec<String> {
    let mut bad: Vec<String> = ["chi5a", "chi5b", "chi15"]
        .into_iter()
        .filter(|n| !gens.get(n).expect("generator").is_cusp())
        .map(String::from)
        .collect();
    let mut p = Products::new(gens);
    for weight in (1..=k_max).step_by(2) {
        for exps in monomials_of_weight(weight) {
            if !p.get(exps).is_cusp() {
                bad.push(monomial_name(&exps));
            }
        }
    }
    bad
}

/// The coefficients of `E2^3, E2*E4, E6` at `0, (2,1,-1), (2,0,-1)` form an
/// invertible matrix, so no nonzero weight-6 combination is a cusp form
/// vanishing at the two grade-2 indices.
pub fn weight6_matrix_invertible(gens: &GeneratorSet) -> bool {
    let indices = [
        EtaIndex::ZERO,
        EtaIndex::new(2, 1, -1),
        EtaIndex::new(2, 0, -1),
    ];
    let mut p = Products::new(gens);
    let rows: Vec<Vec<_>> = [[3, 0, 0, 0, 0, 0], [1, 1, 0, 0, 0, 0], [0, 0, 0, 1, 0, 0]]
        .into_iter()
        .map(|e| {
            let f = p.get(e);
            indices.iter().map(|i| f.coeff(i)).collect()
        })
        .collect();
    linalg::rank(&rows) == 3
}

#[cfg(test)]
mod tests {
    use super::*;

    const GENERATOR_WEIGHTS: [u32; 6] = [2, 4, 5, 6, 5, 15];

    #[test]
    fn monomial_counts() {
        assert_eq!(monomials_of_weight(0), vec![[0; 6]]);
        assert!(monomials_of_weight(1).is_empty());
        assert_eq!(monomials_of_weight(5).len(), 2);
        assert_eq!(monomials_of_weight(6).len(), 3);
        assert_eq!(monomials_of_weight(10).len(), 7);
        for w in 0..=40 {
            for m in monomials_of_weight(w) {
                let total: u32 = m.iter().zip(GENERATOR_WEIGHTS).map(|(e, g)| e * g).sum();
                assert_eq!(total, w);
            }
            // The decomposition is free, so monomial counts equal the
            // Hilbert series.
            assert_eq!(
                monomials_of_weight(w).len() as i64,
                genfun_coeff(w as i64),
                "weight {w}"
            );
        }
    }

    #[test]
    fn five_generator_counts() {
        for m in five_generator_monomials(20) {
            assert_eq!(m[5], 0);
        }
        assert!(five_generator_monomials(20).contains(&[0, 0, 0, 0, 4, 0]));
        assert!(five_generator_monomials(15).contains(&[0, 0, 1, 0, 2, 0]));
    }

    #[test]
    fn names() {
        assert_eq!(monomial_name(&[0; 6]), "1");
        assert_eq!(monomial_name(&[2, 0, 1, 0, 1, 0]), "E2^2*chi5a*chi5b");
    }

    #[test]
    fn low_weight_ranks() {
        let gens = GeneratorSet::build(6).unwrap();
        for w in [0, 2, 4, 5, 6] {
            let r = monomial_basis(w, &gens).unwrap();
            assert!(r.matches(), "weight {w}: {r:?}");
        }
        assert!(weight6_matrix_invertible(&gens));
        assert!(parity_violations(&gens, 11).is_empty());
    }
}
