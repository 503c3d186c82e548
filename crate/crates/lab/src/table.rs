//! CSV persistence: `\n`-terminated rows, floats via [`fmt_g`].

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use qspeed_core::survey::SurveyRecord;

use crate::error::{LabError, Result};
use crate::format::fmt_g;

pub const SURVEY_HEADER: [&str; 14] = [
    "seed",
    "index",
    "num_terms",
    "mutual_info",
    "entropy_ab",
    "entropy_a",
    "entropy_b",
    "d_quarter",
    "d_half",
    "d_dif",
    "theta_a",
    "phi_a",
    "theta_b",
    "phi_b",
];

/// A parsed CSV file, every field kept as text.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn column(&self, name: &str) -> Option<usize> {
        self.header.iter().position(|h| h == name)
    }

    /// Column `name` parsed as floats; empty fields become `None`.
    pub fn floats(&self, name: &str) -> Option<Vec<Option<f64>>> {
        let c = self.column(name)?;
        self.rows
            .iter()
            .map(|r| {
                let f = &r[c];
                if f.is_empty() {
                    Some(None)
                } else {
                    f.parse().ok().map(Some)
                }
            })
            .collect()
    }
}

pub fn csv_writer<W: Write>(w: W) -> csv::Writer<W> {
    csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(w)
}

/// Creates (truncating) `path` for buffered writing.
pub fn create(path: &Path) -> Result<csv::Writer<BufWriter<File>>> {
    let file = File::create(path).map_err(LabError::io(path))?;
    Ok(csv_writer(BufWriter::new(file)))
}

pub fn write_table<I, R>(path: &Path, header: &[&str], rows: I) -> Result<()>
where
    I: IntoIterator<Item = R>,
    R: IntoIterator<Item = String>,
{
    let mut w = create(path)?;
    w.write_record(header).map_err(LabError::csv(path))?;
    for row in rows {
        w.write_record(row.into_iter()).map_err(LabError::csv(path))?;
    }
    finish(w, path)
}

pub fn finish<W: Write>(w: csv::Writer<W>, path: &Path) -> Result<()> {
    let mut inner = w
        .into_inner()
        .map_err(|e| LabError::io(path)(e.into_error()))?;
    inner.flush().map_err(LabError::io(path))
}

pub fn read_table(path: &Path) -> Result<Table> {
    let mut r = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_path(path)
        .map_err(LabError::csv(path))?;
    let header = r
        .headers()
        .map_err(LabError::csv(path))?
        .iter()
        .map(String::from)
        .collect();
    let rows = r
        .records()
        .map(|rec| {
            rec.map(|rec| rec.iter().map(String::from).collect())
                .map_err(LabError::csv(path))
        })
        .collect::<Result<_>>()?;
    Ok(Table { header, rows })
}

pub fn survey_row(r: &SurveyRecord) -> Vec<String> {
    let mut row = vec![r.seed.to_string(), r.index.to_string(), r.num_terms.to_string()];
    row.extend(
        [
            r.mutual_info,
            r.entropy_ab,
            r.entropy_a,
            r.entropy_b,
            r.d_quarter,
            r.d_half,
            r.d_dif,
            r.theta_a,
            r.phi_a,
            r.theta_b,
            r.phi_b,
        ]
        .map(fmt_g),
    );
    row
}

/// Inverse of [`survey_row`], up to the 12-digit rounding of the floats.
pub fn parse_survey_row(fields: &[String]) -> std::result::Result<SurveyRecord, String> {
    if fields.len() != SURVEY_HEADER.len() {
        return Err(format!("expected {} fields, found {}", SURVEY_HEADER.len(), fields.len()));
    }
    let int = |i: usize| {
        fields[i]
            .parse::<u64>()
            .map_err(|e| format!("{}: {e}", SURVEY_HEADER[i]))
    };
    let mut f = [0.0; 11];
    for (k, v) in f.iter_mut().enumerate() {
        *v = fields[k + 3]
            .parse()
            .map_err(|e| format!("{}: {e}", SURVEY_HEADER[k + 3]))?;
    }
    let num_terms = u32::try_from(int(2)?).map_err(|e| format!("num_terms: {e}"))?;
    Ok(SurveyRecord {
        seed: int(0)?,
        index: int(1)?,
        num_terms,
        mutual_info: f[0],
        entropy_ab: f[1],
        entropy_a: f[2],
        entropy_b: f[3],
        d_quarter: f[4],
        d_half: f[5],
        d_dif: f[6],
        theta_a: f[7],
        phi_a: f[8],
        theta_b: f[9],
        phi_b: f[10],
    })
}

pub fn read_survey(path: &Path) -> Result<Vec<SurveyRecord>> {
    let table = read_table(path)?;
    if table.header != SURVEY_HEADER {
        return Err(LabError::Parse {
            path: path.into(),
            line: 1,
            message: format!("unexpected header {:?}", table.header),
        });
    }
    table
        .rows
        .iter()
        .enumerate()
        .map(|(i, row)| {
            parse_survey_row(row).map_err(|message| LabError::Parse {
                path: path.into(),
                line: i as u64 + 2,
                message,
            })
        })
        .collect()
}
