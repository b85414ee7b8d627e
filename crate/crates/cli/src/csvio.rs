//! CSV formats: solution grids, density histories, kernel tables and
//! sampled one-variable data.

use std::io::{Read, Write};
use std::path::Path;

use fracairy_core::data::DataProfile;
use fracairy_core::problems::SolutionField;

use crate::error::{CliError, Result};
use crate::format::sig;

/// Significant digits of every value written to CSV.
pub const CSV_DIGITS: usize = 12;
/// Relative tolerance on the spacing of sampled-data abscissae.
const UNIFORM_TOL: f64 = 1e-9;

fn csv_err(path: &Path, e: csv::Error) -> CliError {
    let message = e.to_string();
    match e.into_kind() {
        csv::ErrorKind::Io(source) => CliError::io(path, source),
        _ => CliError::csv(path, message),
    }
}

fn writer<W: Write>(w: W) -> csv::Writer<W> {
    csv::WriterBuilder::new().has_headers(false).from_writer(w)
}

fn write_rows<W: Write>(w: W, path: &Path, header: &[&str], rows: impl Iterator<Item = Vec<f64>>) -> Result<()> {
    let mut out = writer(w);
    out.write_record(header).map_err(|e| csv_err(path, e))?;
    for row in rows {
        out.write_record(row.iter().map(|v| sig(*v, CSV_DIGITS))).map_err(|e| csv_err(path, e))?;
    }
    out.flush().map_err(|e| CliError::io(path, e))
}

/// Header `x,t,u`, rows ordered by t, then by x.
pub fn write_solution<W: Write>(w: W, path: &Path, field: &SolutionField) -> Result<()> {
    let nodes = field.time.nodes();
    let rows = nodes
        .iter()
        .enumerate()
        .flat_map(move |(k, &t)| field.x.iter().enumerate().map(move |(j, &x)| vec![x, t, field.value(k, j)]));
    write_rows(w, path, &["x", "t", "u"], rows)
}

/// Header `t,<density names>`.
pub fn write_densities<W: Write>(w: W, path: &Path, field: &SolutionField) -> Result<()> {
    let mut header = vec!["t"];
    header.extend(field.densities.iter().map(|d| d.name));
    let nodes = field.time.nodes();
    let rows = nodes.iter().enumerate().map(|(k, &t)| {
        let mut row = vec![t];
        row.extend(field.densities.iter().map(|d| d.density.values()[k]));
        row
    });
    write_rows(w, path, &header, rows)
}

/// Header `x,t,value`, rows ordered by t, then by x.
pub fn write_kernel_table<W: Write>(w: W, path: &Path, rows: &[[f64; 3]]) -> Result<()> {
    write_rows(w, path, &["x", "t", "value"], rows.iter().map(|r| r.to_vec()))
}

/// Two columns `s,value` on a uniform grid of [lower, upper].
pub fn write_profile<W: Write>(w: W, path: &Path, lower: f64, upper: f64, values: &[f64]) -> Result<()> {
    let n = values.len().saturating_sub(1).max(1) as f64;
    let rows = values.iter().enumerate().map(|(i, &v)| vec![lower + (upper - lower) * i as f64 / n, v]);
    write_rows(w, path, &["s", "value"], rows)
}

/// Numeric rows of a CSV with a header line.
pub fn read_table<R: Read>(r: R, path: &Path) -> Result<(Vec<String>, Vec<Vec<f64>>)> {
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(r);
    let header: Vec<String> = rdr.headers().map_err(|e| csv_err(path, e))?.iter().map(String::from).collect();
    let mut rows = Vec::new();
    for (line, rec) in rdr.records().enumerate() {
        let rec = rec.map_err(|e| csv_err(path, e))?;
        let row = rec
            .iter()
            .map(|f| {
                f.parse::<f64>()
                    .map_err(|_| CliError::csv(path, format!("row {}: `{f}` is not a number", line + 2)))
            })
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    Ok((header, rows))
}

/// Sampled data from a two-column CSV `s,value` with uniformly spaced,
/// increasing abscissae.
pub fn read_profile<R: Read>(r: R, path: &Path) -> Result<DataProfile> {
    let (header, rows) = read_table(r, path)?;
    if header.len() != 2 {
        return Err(CliError::csv(path, format!("expected 2 columns, found {}", header.len())));
    }
    if rows.len() < 2 {
        return Err(CliError::csv(path, "sampled data needs at least two rows"));
    }
    let s: Vec<f64> = rows.iter().map(|r| r[0]).collect();
    let lower = s[0];
    let upper = s[s.len() - 1];
    let h = (upper - lower) / (s.len() - 1) as f64;
    if !(h > 0.0) {
        return Err(CliError::csv(path, "abscissae must increase"));
    }
    for (i, &si) in s.iter().enumerate() {
        let expected = lower + h * i as f64;
        if (si - expected).abs() > UNIFORM_TOL * (upper - lower).abs().max(1.0) + 1e-11 * si.abs() {
            return Err(CliError::csv(path, format!("abscissa {si} in row {} breaks uniform spacing", i + 2)));
        }
    }
    let values = rows.iter().map(|r| r[1]).collect();
    Ok(DataProfile::sampled(lower, upper, values)?)
}

pub fn read_profile_file(path: &Path) -> Result<DataProfile> {
    let f = std::fs::File::open(path).map_err(|e| CliError::io(path, e))?;
    read_profile(std::io::BufReader::new(f), path)
}
