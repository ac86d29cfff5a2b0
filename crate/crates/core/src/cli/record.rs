use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{parse_rational, Rational};
use crate::fourier::FourierSeries;
use crate::lattice::EtaIndex;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpansionRow {
    pub x: i64,
    pub y: i64,
    pub z: i64,
    pub m: i64,
    pub coeff: String,
}

impl ExpansionRow {
    pub fn index(&self) -> EtaIndex {
        EtaIndex::new(self.x, self.y, self.z)
    }

    /// Parses the coefficient and checks that `m` agrees with the index.
    pub fn parse(&self) -> Result<(EtaIndex, Rational)> {
        let eta = self.index();
        if eta.norm_m() != self.m {
            return Err(Error::Record(format!(
                "{eta}: m = {} but the index gives {}",
                self.m,
                eta.norm_m()
            )));
        }
        Ok((eta, parse_rational(&self.coeff)?))
    }
}

/// One expansion as emitted by the CLI and stored in the cache. Rows cover
/// every closed-cone index up to `prec` in canonical order, zeros included.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpansionRecord {
    pub form: String,
    pub weight: i64,
    pub prec: u32,
    pub rows: Vec<ExpansionRow>,
}

impl ExpansionRecord {
    pub fn from_series(form: &str, series: &FourierSeries) -> Self {
        let rows = crate::lattice::closed_cone(series.prec() as i64)
            .into_iter()
            .map(|eta| ExpansionRow {
                x: eta.x,
                y: eta.y,
                z: eta.z,
                m: eta.norm_m(),
                coeff: series.coeff(&eta).to_string(),
            })
            .collect();
        ExpansionRecord {
            form: form.to_string(),
            weight: series.weight(),
            prec: series.prec(),
            rows,
        }
    }

    pub fn to_series(&self) -> Result<FourierSeries> {
        let coeffs = self
            .rows
            .iter()
            .map(ExpansionRow::parse)
            .collect::<Result<Vec<_>>>()?;
        FourierSeries::from_coeffs(self.weight, self.prec, coeffs)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_csv(&self) -> Result<String> {
        rows_to_csv(&self.rows)
    }
}

pub fn rows_to_csv(rows: &[ExpansionRow]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.serialize(row)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Record(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Record(e.to_string()))
}

pub fn rows_from_csv(text: &str) -> Result<Vec<ExpansionRow>> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    Ok(r.deserialize()
        .collect::<std::result::Result<Vec<ExpansionRow>, _>>()?)
}
