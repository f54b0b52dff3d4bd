//! JSON and CSV rendering with round-trip float formatting.
//!
//! Floats are written as `{:.16e}` (17 significant digits), so identical
//! inputs give byte-identical output and every value parses back exactly.
//! Non-finite floats become `null` in JSON and empty cells in CSV.

use std::io::{self, Write};

use num_complex::Complex64;
use serde::Serialize;
use serde_json::ser::Formatter;

use super::{CharCheck, EnvelopeReport, SelftestReport};
use crate::error::{Error, Result};
use crate::expsum::SumResult;
use crate::mainterm::{ABound, MainTermEstimate, TauCongTail};

struct RoundTrip;

impl Formatter for RoundTrip {
    fn write_f64<W: ?Sized + Write>(&mut self, w: &mut W, v: f64) -> io::Result<()> {
        if v.is_finite() {
            write!(w, "{v:.16e}")
        } else {
            w.write_all(b"null")
        }
    }

    fn write_f32<W: ?Sized + Write>(&mut self, w: &mut W, v: f32) -> io::Result<()> {
        self.write_f64(w, f64::from(v))
    }
}

/// One-line JSON with 17-significant-digit floats.
pub fn to_json<T: Serialize + ?Sized>(value: &T) -> Result<String> {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, RoundTrip);
    value.serialize(&mut ser).map_err(|e| Error::Invalid(e.to_string()))?;
    String::from_utf8(buf).map_err(|e| Error::Invalid(e.to_string()))
}

pub(crate) fn fmt_f64(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        String::new()
    }
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

/// Values that render as a CSV table with a header row.
pub trait CsvTable {
    fn header(&self) -> Vec<&'static str>;
    fn rows(&self) -> Vec<Vec<String>>;
}

pub fn to_csv<T: CsvTable + ?Sized>(value: &T) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io_err = |e: csv::Error| Error::Io(e.to_string());
    w.write_record(value.header()).map_err(io_err)?;
    for row in value.rows() {
        w.write_record(&row).map_err(io_err)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Invalid(e.to_string()))
}

const ENVELOPE_HEADER: [&str; 16] = [
    "kind",
    "a",
    "m",
    "p",
    "q",
    "r",
    "character",
    "z_re",
    "z_im",
    "N",
    "exact_re",
    "exact_im",
    "predicted_re",
    "predicted_im",
    "residual",
    "envelope",
];

impl CsvTable for EnvelopeReport {
    fn header(&self) -> Vec<&'static str> {
        let mut h = ENVELOPE_HEADER.to_vec();
        h.extend(["ratio", "alt_ratio"]);
        h
    }

    fn rows(&self) -> Vec<Vec<String>> {
        let kind = serde_json::to_value(self.kind).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default();
        let p = &self.params;
        self.rows
            .iter()
            .map(|row| {
                vec![
                    kind.clone(),
                    opt(p.a),
                    opt(p.m),
                    opt(p.p),
                    opt(p.q),
                    opt(p.r),
                    opt(p.character),
                    p.z.map(|z| fmt_f64(z.re)).unwrap_or_default(),
                    p.z.map(|z| fmt_f64(z.im)).unwrap_or_default(),
                    row.n.to_string(),
                    fmt_f64(row.exact.re),
                    fmt_f64(row.exact.im),
                    fmt_f64(row.predicted.re),
                    fmt_f64(row.predicted.im),
                    fmt_f64(row.residual),
                    fmt_f64(row.envelope),
                    fmt_f64(row.ratio),
                    row.alt_ratio.map(fmt_f64).unwrap_or_default(),
                ]
            })
            .collect()
    }
}

impl CsvTable for [EnvelopeReport] {
    fn header(&self) -> Vec<&'static str> {
        self.first().map(CsvTable::header).unwrap_or_default()
    }

    fn rows(&self) -> Vec<Vec<String>> {
        self.iter().flat_map(CsvTable::rows).collect()
    }
}

impl CsvTable for CharCheck {
    fn header(&self) -> Vec<&'static str> {
        self.reports[..].header()
    }

    fn rows(&self) -> Vec<Vec<String>> {
        self.reports[..].rows()
    }
}

fn complex_cells(z: Complex64) -> [String; 2] {
    [fmt_f64(z.re), fmt_f64(z.im)]
}

impl CsvTable for SumResult {
    fn header(&self) -> Vec<&'static str> {
        vec!["a", "m", "N", "value_re", "value_im", "n_terms", "segment_len", "elapsed_secs"]
    }

    fn rows(&self) -> Vec<Vec<String>> {
        let [re, im] = complex_cells(self.value);
        vec![vec![
            self.a.to_string(),
            self.m.to_string(),
            self.n.to_string(),
            re,
            im,
            self.n_terms.to_string(),
            self.segment_len.to_string(),
            self.elapsed_secs.map(fmt_f64).unwrap_or_default(),
        ]]
    }
}

impl CsvTable for MainTermEstimate {
    fn header(&self) -> Vec<&'static str> {
        vec!["a", "m", "t", "r", "H", "S_re", "S_im", "coefficient_re", "coefficient_im", "tail_bound", "cutoff"]
    }

    fn rows(&self) -> Vec<Vec<String>> {
        let [cre, cim] = complex_cells(self.coefficient);
        self.per_residue
            .iter()
            .map(|t| {
                let [sre, sim] = complex_cells(t.s);
                vec![
                    self.a.to_string(),
                    self.ctx.m.to_string(),
                    self.ctx.t.to_string(),
                    t.r.to_string(),
                    fmt_f64(t.h),
                    sre,
                    sim,
                    cre.clone(),
                    cim.clone(),
                    fmt_f64(self.tail_bound),
                    self.cutoff.to_string(),
                ]
            })
            .collect()
    }
}

impl CsvTable for ABound {
    fn header(&self) -> Vec<&'static str> {
        vec!["p", "t", "branch", "value", "cond1", "cond2", "cond3", "cond4", "a1", "a2", "a3", "a4"]
    }

    fn rows(&self) -> Vec<Vec<String>> {
        let mut row = vec![self.p.to_string(), self.t.to_string(), opt(self.branch), fmt_f64(self.value)];
        row.extend(self.conditions.iter().map(|c| c.to_string()));
        row.extend(self.branch_values.iter().map(|&v| fmt_f64(v)));
        vec![row]
    }
}

impl CsvTable for TauCongTail {
    fn header(&self) -> Vec<&'static str> {
        vec!["description", "cutoff", "value", "tail_bound", "general_scale", "prime_scale"]
    }

    fn rows(&self) -> Vec<Vec<String>> {
        vec![vec![
            self.series.description.clone(),
            self.series.cutoff.to_string(),
            fmt_f64(self.series.value.re),
            fmt_f64(self.series.tail_bound),
            fmt_f64(self.general_scale),
            self.prime_scale.map(fmt_f64).unwrap_or_default(),
        ]]
    }
}

impl CsvTable for SelftestReport {
    fn header(&self) -> Vec<&'static str> {
        vec!["module", "name", "passed", "detail"]
    }

    fn rows(&self) -> Vec<Vec<String>> {
        self.checks
            .iter()
            .map(|c| vec![c.module.to_string(), c.name.clone(), c.passed.to_string(), c.detail.clone()])
            .collect()
    }
}
