//! CSV and JSON documents.
//!
//! CSV: one header row, LF line endings, floats with 17 significant digits,
//! optional trailer lines starting with `#`. JSON: `{meta, data}`.

use std::fs;
use std::io::{self, Write};
use std::path::Path;

use num_complex::Complex64;
use ppb_core::PhysParams;
use serde_json::{json, Value};

use crate::args::Format;

/// 17 significant digits, round-trip exact.
pub fn num(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn complex_json(z: Complex64) -> Value {
    json!([z.re, z.im])
}

#[derive(Debug)]
pub struct Document {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
    pub trailer: Vec<String>,
    pub data: Value,
}

impl Document {
    pub fn new(header: Vec<&'static str>) -> Self {
        Self {
            header,
            rows: Vec::new(),
            trailer: Vec::new(),
            data: Value::Null,
        }
    }

    fn csv(&self) -> io::Result<Vec<u8>> {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        w.write_record(&self.header)?;
        for row in &self.rows {
            w.write_record(row)?;
        }
        let mut bytes = w.into_inner().map_err(|e| e.into_error())?;
        for line in &self.trailer {
            writeln!(bytes, "# {line}")?;
        }
        Ok(bytes)
    }

    fn json(&self, command: &str, params: &PhysParams) -> io::Result<Vec<u8>> {
        let doc = json!({
            "meta": {
                "command": command,
                "version": env!("CARGO_PKG_VERSION"),
                "params": {
                    "hbar": params.hbar(),
                    "mass": params.mass(),
                    "gamma": params.gamma(),
                    "v0": params.v0(),
                    "beta": params.beta(),
                },
            },
            "data": self.data,
        });
        let mut bytes = serde_json::to_vec_pretty(&doc)?;
        bytes.push(b'\n');
        Ok(bytes)
    }

    pub fn write(
        &self,
        format: Format,
        command: &str,
        params: &PhysParams,
        out: Option<&Path>,
    ) -> io::Result<()> {
        let bytes = match format {
            Format::Csv => self.csv()?,
            Format::Json => self.json(command, params)?,
        };
        match out {
            Some(path) => fs::write(path, bytes),
            None => {
                let mut stdout = io::stdout().lock();
                stdout.write_all(&bytes)?;
                stdout.flush()
            }
        }
    }
}
