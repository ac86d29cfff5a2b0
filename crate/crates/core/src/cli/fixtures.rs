//! Reference tables shipped with the crate. File names use `.` for `*`.

use serde::Serialize;

use super::record::rows_from_csv;
use crate::error::Result;
use crate::lattice::EtaIndex;
use crate::ring::GeneratorSet;

pub struct Fixture {
    pub group: &'static str,
    pub form: &'static str,
    pub csv: &'static str,
}

pub const FIXTURES: &[Fixture] = &[
    Fixture {
        group: "generators",
        form: "E2",
        csv: include_str!("../../fixtures/generators/E2.csv"),
    },
    Fixture {
        group: "generators",
        form: "E4",
        csv: include_str!("../../fixtures/generators/E4.csv"),
    },
    Fixture {
        group: "generators",
        form: "E6",
        csv: include_str!("../../fixtures/generators/E6.csv"),
    },
    Fixture {
        group: "generators",
        form: "chi15",
        csv: include_str!("../../fixtures/generators/chi15.csv"),
    },
    Fixture {
        group: "generators",
        form: "chi5a",
        csv: include_str!("../../fixtures/generators/chi5a.csv"),
    },
    Fixture {
        group: "generators",
        form: "chi5b",
        csv: include_str!("../../fixtures/generators/chi5b.csv"),
    },
    Fixture {
        group: "weight2_6",
        form: "phi2",
        csv: include_str!("../../fixtures/weight2_6/phi2.csv"),
    },
    Fixture {
        group: "weight2_6",
        form: "phi2*phi4",
        csv: include_str!("../../fixtures/weight2_6/phi2.phi4.csv"),
    },
    Fixture {
        group: "weight2_6",
        form: "phi2^2",
        csv: include_str!("../../fixtures/weight2_6/phi2^2.csv"),
    },
    Fixture {
        group: "weight2_6",
        form: "phi2^3",
        csv: include_str!("../../fixtures/weight2_6/phi2^3.csv"),
    },
    Fixture {
        group: "weight2_6",
        form: "phi4",
        csv: include_str!("../../fixtures/weight2_6/phi4.csv"),
    },
    Fixture {
        group: "weight2_6",
        form: "phi6",
        csv: include_str!("../../fixtures/weight2_6/phi6.csv"),
    },
    Fixture {
        group: "weight8",
        form: "phi2*phi6",
        csv: include_str!("../../fixtures/weight8/phi2.phi6.csv"),
    },
    Fixture {
        group: "weight8",
        form: "phi2^2*phi4",
        csv: include_str!("../../fixtures/weight8/phi2^2.phi4.csv"),
    },
    Fixture {
        group: "weight8",
        form: "phi2^4",
        csv: include_str!("../../fixtures/weight8/phi2^4.csv"),
    },
    Fixture {
        group: "weight8",
        form: "phi4^2",
        csv: include_str!("../../fixtures/weight8/phi4^2.csv"),
    },
    Fixture {
        group: "weight8",
        form: "phi8",
        csv: include_str!("../../fixtures/weight8/phi8.csv"),
    },
    Fixture {
        group: "weight10",
        form: "phi10",
        csv: include_str!("../../fixtures/weight10/phi10.csv"),
    },
    Fixture {
        group: "weight10",
        form: "phi2*phi4^2",
        csv: include_str!("../../fixtures/weight10/phi2.phi4^2.csv"),
    },
    Fixture {
        group: "weight10",
        form: "phi2^2*phi6",
        csv: include_str!("../../fixtures/weight10/phi2^2.phi6.csv"),
    },
    Fixture {
        group: "weight10",
        form: "phi2^3*phi4",
        csv: include_str!("../../fixtures/weight10/phi2^3.phi4.csv"),
    },
    Fixture {
        group: "weight10",
        form: "phi2^5",
        csv: include_str!("../../fixtures/weight10/phi2^5.csv"),
    },
    Fixture {
        group: "weight10",
        form: "phi4*phi6",
        csv: include_str!("../../fixtures/weight10/phi4.phi6.csv"),
    },
    Fixture {
        group: "grade3",
        form: "chi5a",
        csv: include_str!("../../fixtures/grade3/chi5a.csv"),
    },
    Fixture {
        group: "grade3",
        form: "chi5b",
        csv: include_str!("../../fixtures/grade3/chi5b.csv"),
    },
];

#[derive(Clone, Debug, Serialize)]
pub struct TableMismatch {
    pub index: EtaIndex,
    pub computed: String,
    pub expected: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct FixtureReport {
    pub group: String,
    pub form: String,
    pub checked: usize,
    /// Rows above the precision of the generator set.
    pub skipped: usize,
    pub mismatches: Vec<TableMismatch>,
}

impl FixtureReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty() && self.checked > 0
    }
}

/// Largest grade appearing in any fixture.
pub fn max_fixture_grade() -> Result<i64> {
    let mut max = 0;
    for f in FIXTURES {
        for row in rows_from_csv(f.csv)? {
            max = max.max(row.x);
        }
    }
    Ok(max)
}

pub fn check_fixture(fixture: &Fixture, gens: &GeneratorSet) -> Result<FixtureReport> {
    let computed = gens.evaluate(fixture.form)?;
    let mut report = FixtureReport {
        group: fixture.group.to_string(),
        form: fixture.form.to_string(),
        checked: 0,
        skipped: 0,
        mismatches: Vec::new(),
    };
    for row in rows_from_csv(fixture.csv)? {
        let (eta, expected) = row.parse()?;
        if eta.grade() > gens.prec as i64 {
            report.skipped += 1;
            continue;
        }
        report.checked += 1;
        let got = computed.coeff(&eta);
        if got != expected {
            report.mismatches.push(TableMismatch {
                index: eta,
                computed: got.to_string(),
                expected: expected.to_string(),
            });
        }
    }
    Ok(report)
}

pub fn verify_tables(gens: &GeneratorSet) -> Result<Vec<FixtureReport>> {
    FIXTURES.iter().map(|f| check_fixture(f, gens)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_parse() {
        assert_eq!(FIXTURES.len(), 25);
        for f in FIXTURES {
            let rows = rows_from_csv(f.csv).unwrap();
            assert!(!rows.is_empty(), "{}", f.form);
            for row in rows {
                row.parse().unwrap();
            }
        }
        assert_eq!(max_fixture_grade().unwrap(), 12);
    }
}
