//! JSON, CSV and plain-text renderings of bivariate series.

use std::fmt::Write as _;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::BiSeries;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Truncation {
    pub t: i64,
    pub s: u32,
}

/// One nonzero coefficient. The coefficient is an arbitrary-precision JSON integer.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeriesTerm {
    pub t: i64,
    pub s: u32,
    pub coef: serde_json::Number,
}

/// Wire form `{"truncation":{"t":T,"s":N},"terms":[{"t":w,"s":n,"coef":c}]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeriesJson {
    pub truncation: Truncation,
    pub terms: Vec<SeriesTerm>,
}

impl SeriesJson {
    pub fn from_series(series: &BiSeries) -> Self {
        let terms = series
            .terms()
            .into_iter()
            .map(|(t, s, c)| SeriesTerm {
                t,
                s,
                coef: c
                    .to_string()
                    .parse()
                    .expect("integers are valid JSON numbers"),
            })
            .collect();
        SeriesJson {
            truncation: Truncation {
                t: series.max_t(),
                s: series.max_n(),
            },
            terms,
        }
    }

    pub fn to_series(&self) -> Result<BiSeries> {
        let floor = self.terms.iter().map(|t| t.t).min().unwrap_or(0).min(0);
        let mut out = BiSeries::zero_window(floor, self.truncation.t, self.truncation.s);
        for term in &self.terms {
            if term.t > self.truncation.t || term.s > self.truncation.s {
                return Err(Error::SeriesDomain(format!(
                    "term t^{} s^{} lies outside the truncation",
                    term.t, term.s
                )));
            }
            let c: BigInt = term.coef.to_string().parse().map_err(|_| {
                Error::SeriesDomain(format!("coefficient {} is not an integer", term.coef))
            })?;
            out.add_term(term.t, term.s, c);
        }
        Ok(out)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("series JSON is always serializable")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::SeriesDomain(format!("bad series JSON: {e}")))
    }
}

impl BiSeries {
    pub fn to_json(&self) -> String {
        SeriesJson::from_series(self).to_json()
    }

    pub fn from_json(text: &str) -> Result<BiSeries> {
        SeriesJson::from_json(text)?.to_series()
    }

    /// Nonzero terms as `t,s,coef` lines with a header.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("t,s,coef\n");
        for (t, s, c) in self.terms() {
            let _ = writeln!(out, "{t},{s},{c}");
        }
        out
    }

    /// Nonzero terms in right-aligned columns, followed by the truncation.
    pub fn to_table(&self) -> String {
        let cells: Vec<[String; 3]> = self
            .terms()
            .into_iter()
            .map(|(t, s, c)| [s.to_string(), t.to_string(), c.to_string()])
            .collect();
        render_table(&["s", "t", "coef"], &cells)
            + &format!("truncation: t <= {}, s <= {}\n", self.max_t(), self.max_n())
    }
}

/// Serializes a big integer as a plain JSON number.
pub fn serialize_bigint<S: serde::Serializer>(
    v: &BigInt,
    ser: S,
) -> std::result::Result<S::Ok, S::Error> {
    let n: serde_json::Number = v.to_string().parse().map_err(serde::ser::Error::custom)?;
    n.serialize(ser)
}

/// Right-aligned plain-text table.
pub fn render_table<const N: usize>(header: &[&str; N], rows: &[[String; N]]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = String::new();
    let line = |cells: &mut dyn Iterator<Item = &str>, out: &mut String| {
        let parts: Vec<String> = cells
            .zip(&widths)
            .map(|(c, w)| format!("{c:>w$}"))
            .collect();
        out.push_str(parts.join("  ").trim_end());
        out.push('\n');
    };
    line(&mut header.iter().copied(), &mut out);
    let rule: Vec<String> = widths.iter().map(|w| "-".repeat(*w)).collect();
    out.push_str(&rule.join("  "));
    out.push('\n');
    for row in rows {
        line(&mut row.iter().map(String::as_str), &mut out);
    }
    out
}
