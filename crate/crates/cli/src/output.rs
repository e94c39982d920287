//! Text and JSON renderings of command results.
//!
//! JSON numbers are written in shortest round-trip form, so reading the
//! output back reproduces every value bit for bit.

use std::io::{self, Write};

use ftnorm::{Band, ComplexMatrix};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormOutput {
    pub value: f64,
    pub method: String,
    pub band: [f64; 2],
    pub arc_clearance: Option<f64>,
    pub warnings: Vec<String>,
    pub diagnostics: Vec<String>,
    pub oracle: Option<f64>,
}

impl NormOutput {
    pub fn new(value: f64, method: &str, band: Band, arc_clearance: Option<f64>) -> Self {
        NormOutput {
            value,
            method: method.into(),
            band: [band.theta1, band.theta2],
            arc_clearance,
            warnings: Vec::new(),
            diagnostics: Vec::new(),
            oracle: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IntegralOutput {
    /// Row-major real and imaginary parts.
    pub real: Vec<Vec<f64>>,
    pub imag: Vec<Vec<f64>>,
    pub method: String,
    pub band: [f64; 2],
    pub arc_clearance: f64,
    pub warnings: Vec<String>,
    pub oracle_difference: Option<f64>,
}

impl IntegralOutput {
    pub fn new(value: &ComplexMatrix, method: &str, band: [f64; 2], arc_clearance: f64) -> Self {
        let rows = |part: fn(&ftnorm::Complex64) -> f64| {
            (0..value.nrows()).map(|i| (0..value.ncols()).map(|j| part(&value[(i, j)])).collect()).collect()
        };
        IntegralOutput {
            real: rows(|z| z.re),
            imag: rows(|z| z.im),
            method: method.into(),
            band,
            arc_clearance,
            warnings: Vec::new(),
            oracle_difference: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InfoOutput {
    pub states: usize,
    pub time_domain: String,
    /// `[re, im]` pairs.
    pub finite_eigenvalues: Vec<[f64; 2]>,
    pub infinite_eigenvalues: usize,
    pub spectral_radius: f64,
    pub spectral_abscissa: Option<f64>,
    pub arc_clearance: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Report {
    Norm(NormOutput),
    Integral(IntegralOutput),
    Info(InfoOutput),
}

fn complex(re: f64, im: f64) -> String {
    if im < 0.0 || (im == 0.0 && im.is_sign_negative()) {
        format!("{re}-{}j", -im)
    } else {
        format!("{re}+{im}j")
    }
}

fn list(w: &mut dyn Write, label: &str, items: &[String]) -> io::Result<()> {
    for s in items {
        writeln!(w, "{label}: {s}")?;
    }
    Ok(())
}

impl Report {
    pub fn write_json(&self, w: &mut dyn Write) -> io::Result<()> {
        serde_json::to_writer_pretty(&mut *w, self)?;
        writeln!(w)
    }

    pub fn write_text(&self, w: &mut dyn Write) -> io::Result<()> {
        match self {
            Report::Norm(n) => {
                writeln!(w, "value: {}", n.value)?;
                writeln!(w, "method: {}", n.method)?;
                writeln!(w, "band: [{}, {}]", n.band[0], n.band[1])?;
                if let Some(c) = n.arc_clearance {
                    writeln!(w, "arc_clearance: {c}")?;
                }
                if let Some(o) = n.oracle {
                    writeln!(w, "oracle: {o}")?;
                }
                list(w, "warning", &n.warnings)?;
                list(w, "note", &n.diagnostics)
            }
            Report::Integral(r) => {
                writeln!(w, "method: {}", r.method)?;
                writeln!(w, "band: [{}, {}]", r.band[0], r.band[1])?;
                writeln!(w, "arc_clearance: {}", r.arc_clearance)?;
                writeln!(w, "value:")?;
                for (re, im) in r.real.iter().zip(&r.imag) {
                    let row: Vec<String> = re.iter().zip(im).map(|(&a, &b)| complex(a, b)).collect();
                    writeln!(w, "  [{}]", row.join(", "))?;
                }
                if let Some(d) = r.oracle_difference {
                    writeln!(w, "oracle_difference: {d}")?;
                }
                list(w, "warning", &r.warnings)
            }
            Report::Info(i) => {
                writeln!(w, "states: {}", i.states)?;
                writeln!(w, "time_domain: {}", i.time_domain)?;
                writeln!(w, "eigenvalues:")?;
                for z in &i.finite_eigenvalues {
                    writeln!(w, "  {}", complex(z[0], z[1]))?;
                }
                if i.infinite_eigenvalues > 0 {
                    writeln!(w, "infinite_eigenvalues: {}", i.infinite_eigenvalues)?;
                }
                writeln!(w, "spectral_radius: {}", i.spectral_radius)?;
                if let Some(a) = i.spectral_abscissa {
                    writeln!(w, "spectral_abscissa: {a}")?;
                }
                if let Some(c) = i.arc_clearance {
                    writeln!(w, "arc_clearance: {c}")?;
                }
                Ok(())
            }
        }
    }
}
