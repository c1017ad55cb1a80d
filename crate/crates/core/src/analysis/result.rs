use std::io::Write;

use crate::entropy::Method;
use crate::mapping::MappingKind;
use crate::signals::Seed;
use crate::Result;

use super::summary::Summary;

/// Column header of every experiment CSV.
pub const CSV_HEADER: [&str; 12] = [
    "experiment",
    "method",
    "mapping",
    "m",
    "c",
    "d",
    "axis1",
    "axis2",
    "mean",
    "sd",
    "n_realizations",
    "seed",
];

/// Identity of one grid cell: method parameters plus two axis values.
#[derive(Debug, Clone, PartialEq)]
pub struct CellKey {
    pub method: String,
    pub mapping: Option<MappingKind>,
    pub m: Option<usize>,
    pub c: Option<usize>,
    pub d: Option<usize>,
    pub axis1: String,
    pub axis2: String,
}

impl CellKey {
    pub fn for_method(method: &Method, axis1: impl ToString, axis2: impl ToString) -> Self {
        CellKey {
            method: method.name().to_string(),
            mapping: method.mapping(),
            m: Some(method.m()),
            c: method.c(),
            d: method.d(),
            axis1: axis1.to_string(),
            axis2: axis2.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Cell {
    pub key: CellKey,
    pub summary: Summary,
}

/// A named grid of mean/SD cells aggregated over realizations.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentResult {
    pub name: String,
    /// Names of the two axis columns, e.g. `("noise", "length")`.
    pub axes: (String, String),
    pub seed: Seed,
    pub realizations: usize,
    pub cells: Vec<Cell>,
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map_or_else(|| "NA".to_string(), |v| v.to_string())
}

impl ExperimentResult {
    pub fn new(name: &str, axes: (&str, &str), seed: Seed, realizations: usize) -> Self {
        ExperimentResult {
            name: name.to_string(),
            axes: (axes.0.to_string(), axes.1.to_string()),
            seed,
            realizations,
            cells: Vec::new(),
        }
    }

    pub fn push(&mut self, key: CellKey, summary: Summary) {
        self.cells.push(Cell { key, summary });
    }

    /// First cell matching `pred`.
    pub fn find(&self, pred: impl Fn(&CellKey) -> bool) -> Option<&Cell> {
        self.cells.iter().find(|c| pred(&c.key))
    }

    /// Writes the long-format CSV; undefined values are written as `NA`.
    pub fn write_csv(&self, out: impl Write) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(CSV_HEADER)?;
        for cell in &self.cells {
            let k = &cell.key;
            w.write_record([
                self.name.clone(),
                k.method.clone(),
                opt(k.mapping),
                opt(k.m),
                opt(k.c),
                opt(k.d),
                k.axis1.clone(),
                k.axis2.clone(),
                opt(cell.summary.mean),
                opt(cell.summary.sd),
                cell.summary.n.to_string(),
                self.seed.to_string(),
            ])?;
        }
        w.flush().map_err(|source| crate::Error::Io {
            path: "<csv output>".into(),
            source,
        })?;
        Ok(())
    }

    pub fn to_csv_string(&self) -> Result<String> {
        let mut buf = Vec::new();
        self.write_csv(&mut buf)?;
        Ok(String::from_utf8(buf).expect("csv output is utf-8"))
    }
}
