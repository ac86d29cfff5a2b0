//! Polynomial identities among the generators, as data, and their
//! coefficientwise verification.

use serde::Serialize;

use super::{parse_monomial, GeneratorSet, MonomialCache};
use crate::error::Result;
use crate::exactnum::{parse_rational, Rational};
use crate::fourier::FourierSeries;
use crate::lattice::EtaIndex;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub coeff: Rational,
    pub factors: Vec<(String, u32)>,
}

/// `lhs = rhs` as polynomials in named forms.
#[derive(Clone, Debug)]
pub struct Relation {
    pub name: &'static str,
    pub lhs: Vec<Term>,
    pub rhs: Vec<Term>,
}

impl Relation {
    fn new(name: &'static str, lhs: &[(&str, &str)], rhs: &[(&str, &str)]) -> Self {
        Relation {
            name,
            lhs: parse_polynomial(lhs).expect("built-in relation parses"),
            rhs: parse_polynomial(rhs).expect("built-in relation parses"),
        }
    }
}

/// Parses `(coefficient, monomial)` pairs such as `("-13/288", "E2^2*E4")`.
pub fn parse_polynomial(terms: &[(&str, &str)]) -> Result<Vec<Term>> {
    terms
        .iter()
        .map(|(c, m)| {
            Ok(Term {
                coeff: parse_rational(c)?,
                factors: parse_monomial(m)?,
            })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub index: EtaIndex,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationReport {
    pub name: String,
    pub prec: u32,
    pub terms: usize,
    /// Number of indices compared, the zero index included.
    pub checked: usize,
    /// The first few differing coefficients in canonical order.
    pub mismatches: Vec<Mismatch>,
    pub total_mismatches: usize,
}

impl RelationReport {
    pub fn passed(&self) -> bool {
        self.total_mismatches == 0
    }
}

const REPORTED_MISMATCHES: usize = 5;

pub fn verify_relation(gens: &GeneratorSet, relation: &Relation) -> Result<RelationReport> {
    let mut ctx = MonomialCache::new(|name| gens.get(name));
    let lhs = ctx.polynomial(&relation.lhs, gens.prec)?;
    let rhs = ctx.polynomial(&relation.rhs, gens.prec)?;
    Ok(compare(relation, gens.prec, &lhs, &rhs))
}

fn compare(
    relation: &Relation,
    prec: u32,
    lhs: &FourierSeries,
    rhs: &FourierSeries,
) -> RelationReport {
    let indices = crate::lattice::closed_cone(prec as i64);
    let bad: Vec<&EtaIndex> = indices
        .iter()
        .filter(|e| lhs.coeff(e) != rhs.coeff(e))
        .collect();
    RelationReport {
        name: relation.name.to_string(),
        prec,
        terms: relation.lhs.len() + relation.rhs.len(),
        checked: indices.len(),
        mismatches: bad
            .iter()
            .take(REPORTED_MISMATCHES)
            .map(|e| Mismatch {
                index: **e,
                lhs: lhs.coeff(e).to_string(),
                rhs: rhs.coeff(e).to_string(),
            })
            .collect(),
        total_mismatches: bad.len(),
    }
}

pub fn e8_relation() -> Relation {
    Relation::new(
        "E8 in terms of E2, E4, E6",
        &[("1", "E8")],
        &[
            ("48860325/18184241", "E2^4"),
            ("-107719950/18184241", "E2^2*E4"),
            ("26257000/18184241", "E2*E6"),
            ("387686/138811", "E4^2"),
        ],
    )
}

/// The expansions of `χ5a²` and `χ5b²` in `E2, E4, E6, E10`.
pub fn chi5_square_relations() -> [Relation; 2] {
    [
        Relation::new(
            "chi5a^2 in Eisenstein series",
            &[("1", "chi5a^2")],
            &[
                ("31513745731/416023384089600", "E10"),
                ("-126433528597/311423218947072", "E2^5"),
                ("11304517601/14285468759040", "E2^3*E4"),
                ("-41742579637/1557116094735360", "E2^2*E6"),
                ("-38947571/120147846816", "E2*E4^2"),
                ("-1000259890201/9083177219289600", "E4*E6"),
            ],
        ),
        Relation::new(
            "chi5b^2 in Eisenstein series",
            &[("1", "chi5b^2")],
            &[
                ("31513745731/416023384089600", "E10"),
                ("266799861/1281577032704", "E2^5"),
                ("-261925781/1587274306560", "E2^3*E4"),
                ("-1914649869/6407885163520", "E2^2*E6"),
                ("935053847/51903869824512", "E2*E4^2"),
                ("551346719209/3406191457233600", "E4*E6"),
            ],
        ),
    ]
}

/// The same squares written in the φ-normalized forms.
pub fn phi_relations() -> [Relation; 2] {
    [
        Relation::new(
            "chi5a^2 in phi forms",
            &[("1", "chi5a^2")],
            &[("1", "phi10"), ("-1", "phi4*phi6")],
        ),
        Relation::new(
            "chi5b^2 in phi forms",
            &[("1", "chi5b^2")],
            &[("1", "phi2*phi4^2"), ("1", "phi4*phi6"), ("1", "phi10")],
        ),
    ]
}

/// `χ5b²` and `χ15²` as polynomials in `E2, E4, E6, χ5a`.
pub fn generator_relations() -> [Relation; 2] {
    [
        Relation::new(
            "chi5b^2 in E2, E4, E6, chi5a",
            &[("1", "chi5b^2")],
            &[
                ("5005/8149248", "E2^5"),
                ("-15587/16298496", "E2^3*E4"),
                ("-4433/16298496", "E2^2*E6"),
                ("1859/5432832", "E2*E4^2"),
                ("4433/16298496", "E4*E6"),
                ("1", "chi5a^2"),
            ],
        ),
        Relation::new(
            "chi15^2 in E2, E4, E6, chi5a",
            &[(CHI15_SQUARED_SCALE, "chi15^2")],
            CHI15_SQUARED,
        ),
    ]
}

pub fn verify_chi5_square_relations(gens: &GeneratorSet) -> Result<Vec<RelationReport>> {
    chi5_square_relations()
        .iter()
        .chain(phi_relations().iter())
        .map(|r| verify_relation(gens, r))
        .collect()
}

pub fn verify_generator_relations(gens: &GeneratorSet) -> Result<Vec<RelationReport>> {
    generator_relations()
        .iter()
        .chain(std::iter::once(&e8_relation()))
        .map(|r| verify_relation(gens, r))
        .collect()
}

/// The `χ15²` expansion below is stated for `(3621888/4433)·χ15`, where `χ15`
/// is normalized by `C(5,1,-2) = 1`. This is the square of that factor.
pub const CHI15_SQUARED_SCALE: &str = "13118072684544/19651489";

const CHI15_SQUARED: &[(&str, &str)] = &[
    ("7193626131746618585/222607917767232721152", "E2^15"),
    ("-307986483294442487/1426973831841235392", "E2^13*E4"),
    ("1416328854305111/54400761917701056", "E2^12*E6"),
    ("4087366592607641/6860451114621324", "E2^11*E4^2"),
    ("-192607575137275/1394891331223104", "E2^10*E4*E6"),
    ("50704311727294/69507316593", "E2^10*chi5a^2"),
    ("-52003816542174887/59873027909422464", "E2^9*E4^3"),
    ("2912260461769/319066052303232", "E2^9*E6^2"),
    ("1922370985523/6706208323188", "E2^8*E4^2*E6"),
    ("-20825649443174/5346716661", "E2^8*E4*chi5a^2"),
    ("102989732952024139/146356290445254912", "E2^7*E4^4"),
    ("-96923094941/2727060276096", "E2^7*E4*E6^2"),
    ("27583081580/203833773", "E2^7*E6*chi5a^2"),
    ("-92968372638167/321897999513024", "E2^6*E4^3*E6"),
    ("65651791909/36815313727296", "E2^6*E6^3"),
    ("3387092572918/411285897", "E2^6*E4^2*chi5a^2"),
    ("-7304217732454747/24392715074209152", "E2^5*E4^5"),
    ("30622846693/629321602176", "E2^5*E4^2*E6^2"),
    ("-256204744/505791", "E2^5*E4*E6*chi5a^2"),
    ("-10936889634816/19651489", "E2^5*chi5a^4"),
    ("14944942065833/107299333171008", "E2^4*E4^4*E6"),
    ("-27494911499/6135885621216", "E2^4*E4*E6^3"),
    ("-1176607216174/137095299", "E2^4*E4^3*chi5a^2"),
    ("10349644/597753", "E2^4*E6^2*chi5a^2"),
    ("36987323269/710702030016", "E2^3*E4^6"),
    ("-49717185583/1887964806528", "E2^3*E4^3*E6^2"),
    ("1709446981/8862945897312", "E2^3*E6^4"),
    ("773604236/1206117", "E2^3*E4^2*E6*chi5a^2"),
    ("2503569715200/1511653", "E2^3*E4*chi5a^4"),
    ("-26102557/1042085088", "E2^2*E4^5*E6"),
    ("2820958987/943982403264", "E2^2*E4^2*E6^3"),
    ("509138188/116281", "E2^2*E4^4*chi5a^2"),
    ("-2420960/45981", "E2^2*E4*E6^2*chi5a^2"),
    ("-31993344000/57629", "E2^2*E6*chi5a^4"),
    ("18421/4583952", "E2*E4^4*E6^2"),
    ("-159653813/681765069024", "E2*E4*E6^4"),
    ("-843440/3069", "E2*E4^3*E6*chi5a^2"),
    ("-136400/66417", "E2*E6^3*chi5a^2"),
    ("-137631744000/116281", "E2*E4^2*chi5a^4"),
    ("-4433/20627784", "E4^3*E6^3"),
    ("39651821/4431472948656", "E6^5"),
    ("-301621736/348843", "E4^5*chi5a^2"),
    ("1100/27", "E4^2*E6^2*chi5a^2"),
    ("3018240000/4433", "E4*E6*chi5a^4"),
    ("40993977139200000/19651489", "chi5a^6"),
];

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    #[test]
    fn relation_sizes() {
        assert_eq!(CHI15_SQUARED.len(), 45);
        let [quintic, chi15] = generator_relations();
        assert_eq!(quintic.rhs.len(), 6);
        assert_eq!(chi15.rhs.len(), 45);
        for t in &chi15.rhs {
            let weight: u32 = t
                .factors
                .iter()
                .map(|(n, e)| {
                    e * match n.as_str() {
                        "E2" => 2,
                        "E4" => 4,
                        "E6" => 6,
                        "chi5a" => 5,
                        other => panic!("unexpected factor {other}"),
                    }
                })
                .sum();
            assert_eq!(weight, 30);
        }
    }

    #[test]
    fn perturbation_is_located() {
        let mut gens = GeneratorSet::build(6).unwrap();
        let reports = verify_chi5_square_relations(&gens).unwrap();
        assert!(reports.iter().all(RelationReport::passed));
        let eta = EtaIndex::new(4, 1, -2);
        let old = gens.chi5a.coeff(&eta);
        gens.chi5a.set_coeff(eta, old + rat(1));
        let report = verify_relation(&gens, &chi5_square_relations()[0]).unwrap();
        assert!(!report.passed());
        // The first affected coefficient of χ5a² sits at lead + eta.
        assert_eq!(report.mismatches[0].index, EtaIndex::new(6, 1, -3));
    }
}
