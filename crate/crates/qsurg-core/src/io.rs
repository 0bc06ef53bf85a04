//! Text formats: code files, logical-vector files and merge reports.
//!
//! A code file is
//!
//! ```text
//! CSS v1
//! n <n>
//! PZ <mz>
//! <mz rows of n space-separated bits>
//! PX <mx>
//! <mx rows of n space-separated bits>
//! ```

use std::fmt::Write as _;

use crate::css::CssCode;
use crate::distance::DistanceReport;
use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVector};
use crate::surgery::MergeResult;

fn bits_line(v: &BitVector) -> String {
    v.to_bits().iter().map(|b| b.to_string()).collect::<Vec<_>>().join(" ")
}

fn format_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        position: line,
        message: message.into(),
    }
}

/// Serialise a code in the canonical file format.
pub fn write_code(code: &CssCode) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "CSS v1");
    let _ = writeln!(s, "n {}", code.n());
    for (tag, m) in [("PZ", code.pz()), ("PX", code.px())] {
        let _ = writeln!(s, "{tag} {}", m.rows());
        for i in 0..m.rows() {
            let _ = writeln!(s, "{}", bits_line(&m.row(i)));
        }
    }
    s
}

/// Parse a code file. Blank lines and surplus whitespace are ignored; error
/// positions are 1-based line numbers.
pub fn parse_code(text: &str) -> Result<CssCode> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());
    let mut next = |what: &str| lines.next().ok_or_else(|| format_err(0, format!("unexpected end of file, expected {what}")));
    let (ln, header) = next("header")?;
    if header.split_whitespace().collect::<Vec<_>>() != ["CSS", "v1"] {
        return Err(format_err(ln, "expected header `CSS v1`"));
    }
    let keyed = |(ln, line): (usize, &str), key: &str| -> Result<usize> {
        let parts: Vec<&str> = line.split_whitespace().collect();
        match parts.as_slice() {
            [k, v] if *k == key => v.parse().map_err(|_| format_err(ln, format!("bad count after {key}"))),
            _ => Err(format_err(ln, format!("expected `{key} <count>`"))),
        }
    };
    let n = keyed(next("n")?, "n")?;
    let mut read_block = |key: &str| -> Result<BitMatrix> {
        let m = keyed(next(key)?, key)?;
        let mut rows = Vec::with_capacity(m);
        for _ in 0..m {
            let (ln, line) = next("matrix row")?;
            rows.push(parse_bits_line(line, n).map_err(|e| match e {
                Error::Parse { message, .. } => format_err(ln, message),
                other => other,
            })?);
        }
        Ok(BitMatrix::from_rows(n, &rows))
    };
    let pz = read_block("PZ")?;
    let px = read_block("PX")?;
    if let Some((ln, _)) = lines.next() {
        return Err(format_err(ln, "trailing content after PX block"));
    }
    CssCode::new(pz, px)
}

fn parse_bits_line(line: &str, n: usize) -> Result<BitVector> {
    let mut bits = Vec::with_capacity(n);
    for tok in line.split_whitespace() {
        match tok {
            "0" => bits.push(false),
            "1" => bits.push(true),
            t => return Err(format_err(0, format!("expected 0 or 1, found {t:?}"))),
        }
    }
    if bits.len() != n {
        return Err(format_err(0, format!("expected {n} bits, found {}", bits.len())));
    }
    Ok(BitVector::from_bools(bits))
}

/// Serialise a logical vector as one line of space-separated bits.
pub fn write_vector(v: &BitVector) -> String {
    format!("{}\n", bits_line(v))
}

/// Parse a logical-vector file of length `n`.
pub fn parse_vector(text: &str, n: usize) -> Result<BitVector> {
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty())
        .collect();
    match lines.as_slice() {
        [(ln, line)] => parse_bits_line(line, n).map_err(|e| match e {
            Error::Parse { message, .. } => format_err(*ln, message),
            other => other,
        }),
        [] => Err(format_err(1, "empty vector file")),
        [_, (ln, _), ..] => Err(format_err(*ln, "vector file must contain one line")),
    }
}

/// Figures of merit of a merge, written as `key = value` lines.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MergeReport {
    pub kind: String,
    pub basis: String,
    pub r: usize,
    pub n_initial: usize,
    /// Added data qubits; negative for direct merges, which identify qubits.
    pub n_ancilla: i64,
    pub n_total: usize,
    pub new_z_checks: usize,
    pub new_x_checks: usize,
    pub omega_before: usize,
    pub omega: usize,
    pub k_before: usize,
    pub k_after: usize,
    pub old_logicals: usize,
    pub new_logicals: usize,
    pub new_qubit_indices: Vec<usize>,
    pub new_z_check_indices: Vec<usize>,
    pub new_x_check_indices: Vec<usize>,
    /// `(name, value, method)` entries such as `("d_Z", 3, "incremental")`.
    pub distances: Vec<(String, usize, String)>,
}

impl MergeReport {
    /// Summarise a merge result.
    pub fn from_result(m: &MergeResult) -> Self {
        let n_initial = m.before.n();
        let n_total = m.merged.n();
        Self {
            kind: format!("{:?}", m.kind).to_lowercase(),
            basis: m.basis.to_string(),
            r: m.depth,
            n_initial,
            n_ancilla: n_total as i64 - n_initial as i64,
            n_total,
            new_z_checks: m.new_z_checks.len(),
            new_x_checks: m.new_x_checks.len(),
            omega_before: m.before.weights().omega,
            omega: m.merged.weights().omega,
            k_before: m.before.k(),
            k_after: m.merged.k(),
            old_logicals: m.old_z_logicals.len(),
            new_logicals: m.new_z_logicals.len(),
            new_qubit_indices: m.new_qubits.clone(),
            new_z_check_indices: m.new_z_checks.clone(),
            new_x_check_indices: m.new_x_checks.clone(),
            distances: Vec::new(),
        }
    }

    /// Record a distance entry under `name`.
    pub fn add_distance(&mut self, name: &str, report: &DistanceReport) {
        let method = match (report.trials, report.seed) {
            (Some(t), Some(s)) => format!("{} trials={t} seed={s}", report.method),
            _ => report.method.to_string(),
        };
        self.distances.push((name.to_string(), report.value, method));
    }

    /// Ancilla overhead `n_ancilla / n_initial`.
    pub fn ancilla_ratio(&self) -> f64 {
        if self.n_initial == 0 {
            0.0
        } else {
            self.n_ancilla as f64 / self.n_initial as f64
        }
    }

    pub fn to_text(&self) -> String {
        let list = |v: &[usize]| v.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(" ");
        let mut s = String::new();
        let mut kv = |k: &str, v: String| {
            let _ = writeln!(s, "{k} = {v}");
        };
        kv("kind", self.kind.clone());
        kv("basis", self.basis.clone());
        kv("r", self.r.to_string());
        kv("n_initial", self.n_initial.to_string());
        kv("n_ancilla", self.n_ancilla.to_string());
        kv("n_total", self.n_total.to_string());
        kv("ancilla_ratio", format!("{:.6}", self.ancilla_ratio()));
        kv("new_z_checks", self.new_z_checks.to_string());
        kv("new_x_checks", self.new_x_checks.to_string());
        kv("omega_before", self.omega_before.to_string());
        kv("omega", self.omega.to_string());
        kv("k_before", self.k_before.to_string());
        kv("k_after", self.k_after.to_string());
        kv("old_logicals", self.old_logicals.to_string());
        kv("new_logicals", self.new_logicals.to_string());
        kv("new_qubit_indices", list(&self.new_qubit_indices));
        kv("new_z_check_indices", list(&self.new_z_check_indices));
        kv("new_x_check_indices", list(&self.new_x_check_indices));
        for (name, value, method) in &self.distances {
            kv(name, format!("{value} ({method})"));
        }
        s
    }
}

/// Parse `key = value` lines into pairs, in order.
pub fn parse_report(text: &str) -> Result<Vec<(String, String)>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            l.split_once(" = ")
                .map(|(k, v)| (k.trim().to_string(), v.trim().to_string()))
                .ok_or_else(|| format_err(i + 1, "expected `key = value`"))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::shor;

    #[test]
    fn code_round_trip() {
        let text = write_code(&shor());
        assert!(text.starts_with("CSS v1\nn 9\nPZ 6\n1 1 0 0 0 0 0 0 0\n"));
        assert_eq!(parse_code(&text).unwrap(), shor());
        let messy = text.replace(' ', "  ").replace('\n', " \r\n\n");
        assert_eq!(write_code(&parse_code(&messy).unwrap()), text);
    }

    #[test]
    fn parse_errors_name_the_line() {
        assert!(matches!(parse_code("CSS v2\n"), Err(Error::Parse { position: 1, .. })));
        let bad = "CSS v1\nn 2\nPZ 1\n1 2\nPX 0\n";
        assert!(matches!(parse_code(bad), Err(Error::Parse { position: 4, .. })));
        let short = "CSS v1\nn 2\nPZ 1\n1\nPX 0\n";
        assert!(matches!(parse_code(short), Err(Error::Parse { position: 4, .. })));
        let noncommuting = "CSS v1\nn 2\nPZ 1\n1 0\nPX 1\n1 1\n";
        assert!(matches!(parse_code(noncommuting), Err(Error::Commutation { .. })));
    }

    #[test]
    fn vector_round_trip() {
        let v = BitVector::parse("100100100").unwrap();
        assert_eq!(parse_vector(&write_vector(&v), 9).unwrap(), v);
        assert!(parse_vector("1 0", 3).is_err());
        assert!(parse_vector("1 0 1\n0 0 0\n", 3).is_err());
    }
}
