//! Spectrum CSV: one row per grid point, empty fields for unsolved points.

use thiserror::Error;

use super::format::fmt_num;
use crate::sweep::SpectralSeries;

pub const HEADER: &str = "delta,chi_re,chi_im,rho_ee,rho_11,rho_00,rho_m1m1";
const N_COLS: usize = 7;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CsvError {
    #[error("missing or unexpected header (expected `{HEADER}`)")]
    Header,
    #[error("line {line}: expected {N_COLS} fields, found {found}")]
    FieldCount { line: usize, found: usize },
    #[error("line {line}: cannot parse `{text}` as a number")]
    Number { line: usize, text: String },
    #[error("line {line}: row must be either fully solved or a gap")]
    PartialRow { line: usize },
}

/// A parsed row; `values` is `None` for a gap.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CsvRow {
    pub delta: f64,
    pub values: Option<[f64; 6]>,
}

pub fn rows_from_series(series: &SpectralSeries) -> Vec<CsvRow> {
    series
        .grid
        .iter()
        .zip(&series.points)
        .map(|(&delta, p)| CsvRow {
            delta,
            values: p.map(|p| [p.chi_re, p.chi_im, p.rho_ee, p.rho_11, p.rho_00, p.rho_m1m1]),
        })
        .collect()
}

pub fn emit_rows(rows: &[CsvRow]) -> String {
    let mut out = String::with_capacity(rows.len() * 96);
    out.push_str(HEADER);
    out.push('\n');
    for row in rows {
        out.push_str(&fmt_num(row.delta));
        match row.values {
            Some(v) => {
                for x in v {
                    out.push(',');
                    out.push_str(&fmt_num(x));
                }
            }
            None => out.push_str(",,,,,,"),
        }
        out.push('\n');
    }
    out
}

pub fn write_csv(series: &SpectralSeries) -> String {
    emit_rows(&rows_from_series(series))
}

pub fn parse_csv(text: &str) -> Result<Vec<CsvRow>, CsvError> {
    let mut lines = text.lines();
    if lines.next() != Some(HEADER) {
        return Err(CsvError::Header);
    }
    let mut rows = Vec::new();
    for (i, line) in lines.enumerate() {
        let line_no = i + 2;
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != N_COLS {
            return Err(CsvError::FieldCount {
                line: line_no,
                found: fields.len(),
            });
        }
        let num = |s: &str| -> Result<f64, CsvError> {
            s.parse().map_err(|_| CsvError::Number {
                line: line_no,
                text: s.to_string(),
            })
        };
        let delta = num(fields[0])?;
        let rest = &fields[1..];
        let values = if rest.iter().all(|f| f.is_empty()) {
            None
        } else if rest.iter().any(|f| f.is_empty()) {
            return Err(CsvError::PartialRow { line: line_no });
        } else {
            let mut v = [0.0; 6];
            for (slot, f) in v.iter_mut().zip(rest) {
                *slot = num(f)?;
            }
            Some(v)
        };
        rows.push(CsvRow { delta, values });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::observables::SpectralPoint;
    use crate::params::SystemParams;
    use crate::sweep::Provenance;
    use proptest::prelude::*;

    fn series(values: Vec<Option<[f64; 6]>>) -> SpectralSeries {
        let grid: Vec<f64> = (0..values.len()).map(|i| i as f64 * 0.37 - 1.0).collect();
        let points = grid
            .iter()
            .zip(values)
            .map(|(&delta, v)| {
                v.map(|v| SpectralPoint {
                    delta,
                    chi_re: v[0],
                    chi_im: v[1],
                    rho_ee: v[2],
                    rho_11: v[3],
                    rho_00: v[4],
                    rho_m1m1: v[5],
                })
            })
            .collect();
        SpectralSeries {
            params: SystemParams::default(),
            grid,
            points,
            provenance: Provenance::Fourier,
        }
    }

    #[test]
    fn two_points_three_lines() {
        let s = series(vec![Some([0.0; 6]), Some([1.0, 2.0, 0.0, 0.5, 0.0, 0.5])]);
        let text = write_csv(&s);
        assert_eq!(text.lines().count(), 3);
        assert_eq!(text.lines().next(), Some(HEADER));
        assert_eq!(text.lines().nth(2), Some("-0.63,1,2,0,0.5,0,0.5"));
    }

    #[test]
    fn gaps_are_empty_fields() {
        let s = series(vec![None, Some([0.1; 6])]);
        let text = write_csv(&s);
        assert_eq!(text.lines().nth(1), Some("-1,,,,,,"));
        let rows = parse_csv(&text).unwrap();
        assert_eq!(rows[0].values, None);
        assert_eq!(emit_rows(&rows), text);
    }

    #[test]
    fn malformed_input() {
        assert_eq!(parse_csv("a,b\n"), Err(CsvError::Header));
        let bad = format!("{HEADER}\n1,2,3\n");
        assert_eq!(
            parse_csv(&bad),
            Err(CsvError::FieldCount { line: 2, found: 3 })
        );
        let bad = format!("{HEADER}\n1,x,0,0,0,0,0\n");
        assert!(matches!(
            parse_csv(&bad),
            Err(CsvError::Number { line: 2, .. })
        ));
        let bad = format!("{HEADER}\n1,,0,0,0,0,0\n");
        assert_eq!(parse_csv(&bad), Err(CsvError::PartialRow { line: 2 }));
    }

    proptest! {
        #[test]
        fn emit_parse_emit_is_identity(
            rows in proptest::collection::vec(
                proptest::option::weighted(0.9, proptest::array::uniform6(-1e3..1e3f64)),
                1..40,
            )
        ) {
            let text = write_csv(&series(rows));
            let reparsed = parse_csv(&text).unwrap();
            prop_assert_eq!(emit_rows(&reparsed), text);
        }
    }
}
