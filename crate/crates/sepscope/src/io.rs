//! On-disk formats: whitespace-separated matrix files with complex
//! "re+imj" entries, flat key=value state specs, and the fixed-header
//! report CSV. Matrix emission uses 17 significant digits so every f64
//! round-trips exactly; report scalars are printed with 12.

use num_complex::Complex64;

use crate::criteria::{CriterionReport, DensityMatrix};
use crate::error::{Error, Result};
use crate::matkernel::{BipartiteIndex, ComplexMatrix};
use crate::states::{Family, StateSpec, TailDistribution};
use crate::truncation::SweepResult;

/// Fixed column order of every report CSV.
pub const CSV_HEADER: [&str; 9] = [
    "family",
    "params",
    "dim",
    "realign_trace_norm",
    "ccn",
    "ppt_min_eig",
    "symmetric",
    "rccn_verdict",
    "ppt_verdict",
];

/// Canonical 12-significant-digit rendering for reported scalars.
pub fn sig12(x: f64) -> String {
    format!("{x:.11e}")
}

fn parse_complex(token: &str) -> std::result::Result<Complex64, String> {
    let t = token.trim();
    if t.is_empty() {
        return Err("empty entry".into());
    }
    if let Some(body) = t.strip_suffix(['j', 'J']) {
        // Split real from imaginary at the last sign that is neither the
        // leading sign nor part of an exponent.
        let bytes = body.as_bytes();
        let mut split = None;
        for i in (1..bytes.len()).rev() {
            if matches!(bytes[i], b'+' | b'-') && !matches!(bytes[i - 1], b'e' | b'E') {
                split = Some(i);
                break;
            }
        }
        match split {
            Some(i) => {
                let re: f64 = body[..i]
                    .parse()
                    .map_err(|_| format!("bad real part {:?}", &body[..i]))?;
                let im: f64 = body[i..]
                    .parse()
                    .map_err(|_| format!("bad imaginary part {:?}", &body[i..]))?;
                Ok(Complex64::new(re, im))
            }
            None => {
                let im: f64 = body
                    .parse()
                    .map_err(|_| format!("bad imaginary part {body:?}"))?;
                Ok(Complex64::new(0.0, im))
            }
        }
    } else {
        let re: f64 = t.parse().map_err(|_| format!("bad number {t:?}"))?;
        Ok(Complex64::new(re, 0.0))
    }
}

/// (1-based column, token) pairs of a line.
fn tokens_with_cols(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((s + 1, &line[s..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}

fn is_content(line: &str) -> bool {
    let t = line.trim_start();
    !t.is_empty() && !t.starts_with('#')
}

/// Parses a matrix file: a "dA dB" header line, then dA*dB lines of dA*dB
/// complex entries. '#' lines and blank lines are skipped. The matrix is
/// validated as a density matrix before it is returned.
pub fn parse_density_matrix(text: &str) -> Result<DensityMatrix> {
    let mut content = text
        .lines()
        .enumerate()
        .filter(|(_, l)| is_content(l))
        .map(|(i, l)| (i + 1, l));

    let (header_line, header) = content.next().ok_or(Error::Parse {
        line: 1,
        column: 1,
        message: "empty file, expected a dimension header".into(),
    })?;
    let header_tokens = tokens_with_cols(header);
    if header_tokens.len() != 2 {
        return Err(Error::Parse {
            line: header_line,
            column: 1,
            message: format!(
                "header needs exactly two dimensions, found {} tokens",
                header_tokens.len()
            ),
        });
    }
    let mut dims = [0usize; 2];
    for (slot, (col, tok)) in dims.iter_mut().zip(&header_tokens) {
        *slot = tok.parse().map_err(|_| Error::Parse {
            line: header_line,
            column: *col,
            message: format!("bad dimension {tok:?}"),
        })?;
        if *slot == 0 {
            return Err(Error::Parse {
                line: header_line,
                column: *col,
                message: "dimensions must be at least 1".into(),
            });
        }
    }
    let side = dims[0] * dims[1];

    let mut matrix = ComplexMatrix::zeros(side, side);
    for r in 0..side {
        let (lineno, line) = content.next().ok_or(Error::Parse {
            line: header_line,
            column: 1,
            message: format!("expected {side} matrix rows, file ends after {r}"),
        })?;
        let tokens = tokens_with_cols(line);
        if tokens.len() != side {
            return Err(Error::Parse {
                line: lineno,
                column: 1,
                message: format!("expected {side} entries, found {}", tokens.len()),
            });
        }
        for (c, (col, tok)) in tokens.into_iter().enumerate() {
            let z = parse_complex(tok).map_err(|message| Error::Parse {
                line: lineno,
                column: col,
                message,
            })?;
            matrix.set(r, c, z);
        }
    }
    if let Some((lineno, _)) = content.next() {
        return Err(Error::Parse {
            line: lineno,
            column: 1,
            message: format!("unexpected content after {side} matrix rows"),
        });
    }
    DensityMatrix::new(matrix, BipartiteIndex::new(dims[0], dims[1]))
}

/// Writes a density matrix in the format `parse_density_matrix` reads,
/// with 17 significant digits per component for exact round-trips.
pub fn emit_density_matrix(rho: &DensityMatrix) -> String {
    let dims = rho.dims();
    let m = rho.matrix();
    let mut out = format!("{} {}\n", dims.dim_a(), dims.dim_b());
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            if c > 0 {
                out.push(' ');
            }
            let z = m.get(r, c);
            out.push_str(&format!("{:.16e}{:+.16e}j", z.re, z.im));
        }
        out.push('\n');
    }
    out
}

/// Parses flat key=value lines into a StateSpec. `family=` is required;
/// `dim=` and `r=` fill the structural slots; other keys become parameters.
pub fn parse_state_spec(text: &str) -> Result<StateSpec> {
    let mut family: Option<Family> = None;
    let mut pending: Vec<(String, f64)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or(Error::Parse {
            line: lineno,
            column: 1,
            message: format!("expected key=value, found {line:?}"),
        })?;
        let key = key.trim();
        let value = value.trim();
        let value_col = raw.find('=').map(|i| i + 2).unwrap_or(1);
        if key == "family" {
            family = Some(value.parse()?);
        } else {
            let v: f64 = value.parse().map_err(|_| Error::Parse {
                line: lineno,
                column: value_col,
                message: format!("bad numeric value {value:?} for {key}"),
            })?;
            pending.push((key.to_string(), v));
        }
    }
    let family = family.ok_or(Error::Validation {
        invariant: "required-parameter",
        detail: "state spec needs a family=<name> line".into(),
    })?;
    let mut spec = StateSpec::new(family);
    for (k, v) in pending {
        spec.assign(&k, v)?;
    }
    Ok(spec)
}

/// Writes a StateSpec as key=value lines: family, parameters in name
/// order, then dim and tail ratio.
pub fn emit_state_spec(spec: &StateSpec) -> String {
    let mut out = format!("family={}\n", spec.family);
    for (k, v) in &spec.params {
        out.push_str(&format!("{k}={v}\n"));
    }
    if let Some(d) = spec.truncation_dim {
        out.push_str(&format!("dim={d}\n"));
    }
    let TailDistribution::Geometric { ratio } = spec.tail;
    out.push_str(&format!("r={ratio}\n"));
    out
}

/// One CSV line: where the state came from plus its criterion scalars.
#[derive(Debug, Clone)]
pub struct ReportRow {
    pub family: String,
    pub params: String,
    pub dim: usize,
    pub report: CriterionReport,
}

/// Renders parameters as "name=value" pairs joined by ';', name-sorted.
pub fn params_string(params: &[(String, f64)]) -> String {
    let mut sorted: Vec<&(String, f64)> = params.iter().collect();
    sorted.sort_by(|a, b| a.0.cmp(&b.0));
    sorted
        .iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect::<Vec<_>>()
        .join(";")
}

/// Converts successfully evaluated sweep rows to CSV rows; failed cells
/// carry no scalars and are skipped.
pub fn rows_from_sweep(family: Family, result: &SweepResult) -> Vec<ReportRow> {
    result
        .rows
        .iter()
        .filter_map(|row| {
            row.report.clone().map(|report| ReportRow {
                family: family.to_string(),
                params: params_string(&row.params),
                dim: row.dim,
                report,
            })
        })
        .collect()
}

/// Renders the fixed-header CSV with 12-significant-digit scalars.
pub fn emit_report_csv(rows: &[ReportRow]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_HEADER)
        .expect("writing csv to memory cannot fail");
    for row in rows {
        w.write_record(&[
            row.family.clone(),
            row.params.clone(),
            row.dim.to_string(),
            sig12(row.report.realignment_trace_norm),
            sig12(row.report.ccn),
            sig12(row.report.ppt_min_eigenvalue),
            row.report.is_symmetric.to_string(),
            row.report.rccn_verdict.to_string(),
            row.report.ppt_verdict.to_string(),
        ])
        .expect("writing csv to memory cannot fail");
    }
    let bytes = w.into_inner().expect("csv writer flushes to memory");
    String::from_utf8(bytes).expect("csv output is ascii")
}
