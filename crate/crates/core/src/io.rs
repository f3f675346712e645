//! Text input: matrix files, right-hand sides, vectors and omega/level flags.
//!
//! Matrix text has one row per line; `#` starts a comment, entries are
//! separated by whitespace or commas, and a lone `/` or `;` also ends a row so
//! a whole matrix fits on one line. Entries are integers, fractions `p/q` or
//! exact decimals.

use std::fs;
use std::path::Path;

use crate::algebra::{Matrix, Omega};
use crate::error::{Error, ParseKind, Result};
use crate::normalize::normalize;
use crate::scalar::Scalar;

/// Named text, where the name is what diagnostics cite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Source {
    pub name: String,
    pub text: String,
}

impl Source {
    pub fn new(name: impl Into<String>, text: impl Into<String>) -> Self {
        Source { name: name.into(), text: text.into() }
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)
            .map_err(|e| Error::Io { path: path.display().to_string(), message: e.to_string() })?;
        Ok(Source::new(path.display().to_string(), text))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ProblemInput {
    pub matrix: Option<Source>,
    pub rhs: Option<Source>,
    pub omega: Option<String>,
    pub level: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProblemInstance {
    pub matrix: Matrix,
    pub rhs: Vec<Scalar>,
    pub omega: Omega,
    pub level: usize,
}

impl ProblemInstance {
    pub fn new(matrix: Matrix, rhs: Vec<Scalar>, omega: Omega) -> Result<Self> {
        if rhs.len() != matrix.rows() {
            return Err(Error::DimensionMismatch { what: "b", expected: matrix.rows(), found: rhs.len() });
        }
        let level = omega.level(matrix.cols());
        Ok(ProblemInstance { matrix, rhs, omega, level })
    }

    /// The homogeneous system with the same solutions.
    pub fn normalized(&self) -> Matrix {
        normalize(&self.matrix, &self.rhs).expect("rhs length checked on construction").matrix
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Token<'a> {
    text: &'a str,
    line: usize,
    column: usize,
}

fn tokens(text: &str) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        let body = line.split('#').next().unwrap_or("");
        let column = |idx: usize| body[..idx].chars().count() + 1;
        let mut start: Option<usize> = None;
        for (idx, c) in body.char_indices() {
            if c.is_whitespace() || c == ',' || c == ';' {
                if let Some(s) = start.take() {
                    out.push(Token { text: &body[s..idx], line: ln + 1, column: column(s) });
                }
                if c == ';' {
                    out.push(Token { text: ";", line: ln + 1, column: column(idx) });
                }
            } else if start.is_none() {
                start = Some(idx);
            }
        }
        if let Some(s) = start {
            out.push(Token { text: &body[s..], line: ln + 1, column: column(s) });
        }
        // a line end closes its row
        out.push(Token { text: "\n", line: ln + 1, column: column(body.len()) });
    }
    out
}

fn is_separator(t: &Token<'_>) -> bool {
    matches!(t.text, "/" | ";" | "\n")
}

fn diag(kind: ParseKind, source: &str, line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse { kind, source_name: source.to_string(), line, column, message: message.into() }
}

fn entry(source: &Source, t: &Token<'_>) -> Result<Scalar> {
    Scalar::parse(t.text).map_err(|m| diag(ParseKind::BadEntry, &source.name, t.line, t.column, m))
}

pub fn parse_matrix(source: &Source) -> Result<Matrix> {
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    let mut current: Vec<Scalar> = Vec::new();
    let mut first: Option<(usize, usize)> = None;
    for t in tokens(&source.text) {
        if is_separator(&t) {
            if current.is_empty() {
                continue;
            }
            let (line, column) = first.take().expect("nonempty row has a first token");
            if let Some(width) = rows.first().map(Vec::len) {
                if current.len() != width {
                    return Err(diag(
                        ParseKind::RaggedRow,
                        &source.name,
                        line,
                        column,
                        format!("row {} has {} entries, expected {}", rows.len() + 1, current.len(), width),
                    ));
                }
            }
            rows.push(std::mem::take(&mut current));
            continue;
        }
        first.get_or_insert((t.line, t.column));
        current.push(entry(source, &t)?);
    }
    if rows.is_empty() {
        return Err(diag(ParseKind::EmptyInput, &source.name, 1, 1, "no matrix rows"));
    }
    Matrix::from_rows(rows)
}

/// Entries on any number of lines; row separators are not allowed.
pub fn parse_vector(source: &Source, expected: usize) -> Result<Vec<Scalar>> {
    let mut out = Vec::new();
    let mut end = (1, 1);
    for t in tokens(&source.text) {
        if t.text == "\n" {
            continue;
        }
        if out.len() == expected {
            return Err(diag(
                ParseKind::LengthMismatch,
                &source.name,
                t.line,
                t.column,
                format!("expected {expected} entries, found more"),
            ));
        }
        out.push(entry(source, &t)?);
        end = (t.line, t.column + t.text.chars().count());
    }
    if out.len() != expected {
        return Err(diag(
            ParseKind::LengthMismatch,
            &source.name,
            end.0,
            end.1,
            format!("expected {expected} entries, found {}", out.len()),
        ));
    }
    Ok(out)
}

pub fn parse_omega(text: &str) -> Result<Omega> {
    let trimmed = text.trim();
    let column = text.find(trimmed).unwrap_or(0) + 1;
    let value = Scalar::parse(trimmed).map_err(|m| diag(ParseKind::BadEntry, "omega", 1, column, m))?;
    Omega::new(value).map_err(|_| diag(ParseKind::OmegaRange, "omega", 1, column, format!("{trimmed} is not in (0, 1]")))
}

/// Resolves omega from `--omega`, `--level`, or both (which must agree).
pub fn resolve_omega(omega: Option<&str>, level: Option<usize>, n: usize) -> Result<Omega> {
    let from_level = |p: usize| {
        Omega::from_level(p, n)
            .map_err(|_| diag(ParseKind::LevelRange, "level", 1, 1, format!("level {p} is not in 1..={n}")))
    };
    match (omega, level) {
        (None, None) => Err(Error::Domain("one of omega or level is required".into())),
        (None, Some(p)) => from_level(p),
        (Some(w), None) => parse_omega(w),
        (Some(w), Some(p)) => {
            let omega = parse_omega(w)?;
            from_level(p)?;
            let derived = omega.level(n);
            if derived != p {
                return Err(diag(
                    ParseKind::LevelConflict,
                    "level",
                    1,
                    1,
                    format!("omega {omega} gives level {derived} for n = {n}, not {p}"),
                ));
            }
            Ok(omega)
        }
    }
}

pub fn parse_problem(input: &ProblemInput) -> Result<ProblemInstance> {
    let matrix_source = input.matrix.as_ref().ok_or_else(|| Error::Domain("a matrix is required".into()))?;
    let matrix = parse_matrix(matrix_source)?;
    let rhs = match &input.rhs {
        Some(src) => parse_vector(src, matrix.rows())?,
        None => vec![Scalar::zero(); matrix.rows()],
    };
    let omega = resolve_omega(input.omega.as_deref(), input.level, matrix.cols())?;
    ProblemInstance::new(matrix, rhs, omega)
}
