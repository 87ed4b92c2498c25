//! Monthly CSV input.
//!
//! Required header columns: `date,m_dom,i_dom,i_eur` plus either `m_eur,fx` or
//! `m_eur_lei`. Column order is free; extra columns are ignored.

use std::collections::HashMap;
use std::io::Read;
use std::path::Path;

use euroliq_core::MonthStamp;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::{CliError, Result};

/// Lowest accepted rate, percent per annum.
const MIN_RATE_PCT: f64 = -99.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(untagged)]
pub enum EuroStock {
    /// Euro amount and the lei-per-euro rate.
    Split { m_eur: f64, fx: f64 },
    /// Euro stock already converted to lei.
    Lei { m_eur_lei: f64 },
}

impl EuroStock {
    pub fn in_lei(&self) -> f64 {
        match *self {
            EuroStock::Split { m_eur, fx } => m_eur * fx,
            EuroStock::Lei { m_eur_lei } => m_eur_lei,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DatasetRow {
    pub date: MonthStamp,
    pub m_dom: f64,
    #[serde(flatten)]
    pub euro: EuroStock,
    /// Percent per annum.
    pub i_dom: f64,
    /// Percent per annum.
    pub i_eur: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Schema {
    Split,
    Lei,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Dataset {
    pub schema: Schema,
    pub rows: Vec<DatasetRow>,
    /// Lowercase hex SHA-256 of the raw input bytes.
    pub digest: String,
}

impl Dataset {
    pub fn first(&self) -> MonthStamp {
        self.rows[0].date
    }

    pub fn last(&self) -> MonthStamp {
        self.rows[self.rows.len() - 1].date
    }
}

pub fn ingest(path: &Path) -> Result<Dataset> {
    let mut bytes = Vec::new();
    std::fs::File::open(path)
        .and_then(|mut f| f.read_to_end(&mut bytes))
        .map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        })?;
    ingest_bytes(&bytes)
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

pub fn ingest_bytes(bytes: &[u8]) -> Result<Dataset> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(bytes);
    let columns: HashMap<String, usize> = reader
        .headers()?
        .iter()
        .enumerate()
        .map(|(k, h)| (h.to_string(), k))
        .collect();
    let col = |name: &str| {
        columns
            .get(name)
            .copied()
            .ok_or_else(|| CliError::MissingColumn(name.to_string()))
    };
    let schema = if columns.contains_key("m_eur_lei") {
        Schema::Lei
    } else if columns.contains_key("m_eur") || columns.contains_key("fx") {
        Schema::Split
    } else {
        return Err(CliError::MissingColumn(
            "m_eur_lei (or m_eur and fx)".into(),
        ));
    };
    let (c_date, c_m_dom, c_i_dom, c_i_eur) =
        (col("date")?, col("m_dom")?, col("i_dom")?, col("i_eur")?);
    let euro_cols = match schema {
        Schema::Split => vec![("m_eur", col("m_eur")?), ("fx", col("fx")?)],
        Schema::Lei => vec![("m_eur_lei", col("m_eur_lei")?)],
    };

    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record?;
        let line = record.position().map_or(0, |p| p.line() as usize);
        let field = |name: &str, idx: usize| -> Result<&str> {
            record.get(idx).ok_or_else(|| CliError::Ingest {
                line,
                field: name.into(),
                message: "missing value".into(),
            })
        };
        let number = |name: &str, idx: usize| -> Result<f64> {
            let raw = field(name, idx)?;
            match raw.parse::<f64>() {
                Ok(v) if v.is_finite() => Ok(v),
                _ => Err(CliError::Ingest {
                    line,
                    field: name.into(),
                    message: format!("`{raw}` is not a finite number"),
                }),
            }
        };
        let positive = |name: &str, idx: usize| -> Result<f64> {
            let v = number(name, idx)?;
            if v > 0.0 {
                Ok(v)
            } else {
                Err(CliError::Ingest {
                    line,
                    field: name.into(),
                    message: format!("must be > 0, got {v}"),
                })
            }
        };
        let rate = |name: &str, idx: usize| -> Result<f64> {
            let v = number(name, idx)?;
            if v >= MIN_RATE_PCT {
                Ok(v)
            } else {
                Err(CliError::Ingest {
                    line,
                    field: name.into(),
                    message: format!("rate {v}% is below {MIN_RATE_PCT}%"),
                })
            }
        };

        let raw_date = field("date", c_date)?;
        let date: MonthStamp = raw_date.parse().map_err(|_| CliError::Ingest {
            line,
            field: "date".into(),
            message: format!("`{raw_date}` is not a YYYY-MM month"),
        })?;
        let m_dom = positive("m_dom", c_m_dom)?;
        let euro = match schema {
            Schema::Split => EuroStock::Split {
                m_eur: positive("m_eur", euro_cols[0].1)?,
                fx: positive("fx", euro_cols[1].1)?,
            },
            Schema::Lei => EuroStock::Lei {
                m_eur_lei: positive("m_eur_lei", euro_cols[0].1)?,
            },
        };
        rows.push(DatasetRow {
            date,
            m_dom,
            euro,
            i_dom: rate("i_dom", c_i_dom)?,
            i_eur: rate("i_eur", c_i_eur)?,
        });
    }
    if rows.is_empty() {
        return Err(CliError::Ingest {
            line: 1,
            field: "date".into(),
            message: "no data rows".into(),
        });
    }

    rows.sort_by_key(|r| r.date);
    for pair in rows.windows(2) {
        let (a, b) = (pair[0].date, pair[1].date);
        if a == b {
            return Err(CliError::DuplicateMonth(a));
        }
        if a.add_months(1) != b {
            return Err(CliError::Gap {
                missing: a.add_months(1),
            });
        }
    }
    Ok(Dataset {
        schema,
        rows,
        digest: sha256_hex(bytes),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const GOOD: &str = "\
date,m_dom,m_eur,fx,i_dom,i_eur
2001-10,120,30,2.9,35.1,3.9
2001-09,100,25,2.8,34.0,4.0
2001-11,130,31,3.0,33.5,3.7
";

    fn month(y: i32, m: u8) -> MonthStamp {
        MonthStamp::new(y, m).unwrap()
    }

    #[test]
    fn well_formed_file_is_sorted() {
        let d = ingest_bytes(GOOD.as_bytes()).unwrap();
        assert_eq!(d.schema, Schema::Split);
        assert_eq!(d.rows.len(), 3);
        assert_eq!(d.first(), month(2001, 9));
        assert_eq!(d.last(), month(2001, 11));
        assert_eq!(d.rows[0].euro.in_lei(), 70.0);
        assert_eq!(d.digest.len(), 64);
        assert_eq!(d.digest, sha256_hex(GOOD.as_bytes()));
    }

    #[test]
    fn alternate_schema_detected() {
        let text = "date,i_eur,m_eur_lei,m_dom,i_dom\n2001-09,4.0,70,100,34\n";
        let d = ingest_bytes(text.as_bytes()).unwrap();
        assert_eq!(d.schema, Schema::Lei);
        assert_eq!(d.rows[0].euro, EuroStock::Lei { m_eur_lei: 70.0 });
    }

    #[test]
    fn gap_names_missing_month() {
        let text = "date,m_dom,m_eur,fx,i_dom,i_eur\n2001-09,1,1,1,1,1\n2001-11,1,1,1,1,1\n";
        match ingest_bytes(text.as_bytes()) {
            Err(CliError::Gap { missing }) => assert_eq!(missing, month(2001, 10)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn zero_money_names_row_and_field() {
        let text = "date,m_dom,m_eur,fx,i_dom,i_eur\n2001-09,1,1,1,1,1\n2001-10,0,1,1,1,1\n";
        match ingest_bytes(text.as_bytes()) {
            Err(e @ CliError::Ingest { .. }) => {
                let CliError::Ingest {
                    line, ref field, ..
                } = e
                else {
                    unreachable!()
                };
                assert_eq!(line, 3);
                assert_eq!(field, "m_dom");
                assert_eq!(e.exit_code(), 2);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn other_validation_errors() {
        let cases = [
            ("date,m_dom,m_eur,i_dom,i_eur\n2001-09,1,1,1,1\n", "fx"),
            ("date,m_dom,m_eur,fx,i_dom\n2001-09,1,1,1,1\n", "i_eur"),
        ];
        for (text, missing) in cases {
            match ingest_bytes(text.as_bytes()) {
                Err(CliError::MissingColumn(c)) => assert_eq!(c, missing),
                other => panic!("{other:?}"),
            }
        }
        let bad = [
            ("2001-13,1,1,1,1,1", "date"),
            ("2001-09,1,1,-2,1,1", "fx"),
            ("2001-09,1,1,1,-99.5,1", "i_dom"),
            ("2001-09,1,1,1,1,abc", "i_eur"),
            ("2001-09,1,1,1,1,NaN", "i_eur"),
        ];
        for (row, name) in bad {
            let text = format!("date,m_dom,m_eur,fx,i_dom,i_eur\n{row}\n");
            match ingest_bytes(text.as_bytes()) {
                Err(CliError::Ingest { field, line, .. }) => {
                    assert_eq!(field, name);
                    assert_eq!(line, 2);
                }
                other => panic!("{row}: {other:?}"),
            }
        }
        let dup = "date,m_dom,m_eur,fx,i_dom,i_eur\n2001-09,1,1,1,1,1\n2001-09,1,1,1,1,1\n";
        assert!(matches!(
            ingest_bytes(dup.as_bytes()),
            Err(CliError::DuplicateMonth(_))
        ));
        let empty = "date,m_dom,m_eur,fx,i_dom,i_eur\n";
        assert!(ingest_bytes(empty.as_bytes()).is_err());
    }

    #[test]
    fn rate_of_minus_99_accepted() {
        let text = "date,m_dom,m_eur,fx,i_dom,i_eur\n2001-09,1,1,1,-99,1\n";
        assert!(ingest_bytes(text.as_bytes()).is_ok());
    }
}
