//! Delimited plain-text matrices: comma-, tab- or whitespace-separated
//! non-negative integers, one unit per line, with an optional header row of
//! column labels.

use std::fmt::Write;

use seriation_core::{AbundanceMatrix, MatrixError, SimilarityMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Delimiter {
    /// Comma if the first data line has one, otherwise tab, otherwise whitespace.
    #[default]
    Auto,
    Comma,
    Tab,
    Whitespace,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ParseOptions {
    pub delimiter: Delimiter,
    /// First non-blank line holds column labels.
    pub header: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("input has no data rows")]
    Empty,
    #[error("line {line}: expected {expected} entries, found {found}")]
    Shape {
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("line {line}, column {col}: {token:?} is not a non-negative integer")]
    Token {
        line: usize,
        col: usize,
        token: String,
    },
    #[error("header: {0}")]
    Header(MatrixError),
}

fn split(line: &str, delim: Delimiter) -> Vec<&str> {
    match delim {
        Delimiter::Comma => line.split(',').map(str::trim).collect(),
        Delimiter::Tab => line.split('\t').map(str::trim).collect(),
        Delimiter::Whitespace | Delimiter::Auto => line.split_whitespace().collect(),
    }
}

/// Parses a matrix. Blank lines and lines starting with `#` are skipped;
/// reported line numbers count every line of `text`, starting at 1.
pub fn parse_matrix(text: &str, opts: ParseOptions) -> Result<AbundanceMatrix, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .peekable();

    let delim = match opts.delimiter {
        Delimiter::Auto => match lines.peek() {
            Some((_, l)) if l.contains(',') => Delimiter::Comma,
            Some((_, l)) if l.contains('\t') => Delimiter::Tab,
            _ => Delimiter::Whitespace,
        },
        d => d,
    };

    let header: Option<Vec<String>> = if opts.header {
        lines
            .next()
            .map(|(_, l)| split(l, delim).into_iter().map(String::from).collect())
    } else {
        None
    };

    let mut rows: Vec<Vec<u64>> = Vec::new();
    let mut width = header.as_ref().map(Vec::len);
    for (line, text) in lines {
        let tokens = split(text, delim);
        let expected = *width.get_or_insert(tokens.len());
        if tokens.len() != expected {
            return Err(ParseError::Shape {
                line,
                expected,
                found: tokens.len(),
            });
        }
        let row = tokens
            .iter()
            .enumerate()
            .map(|(j, tok)| {
                tok.parse::<u64>().map_err(|_| ParseError::Token {
                    line,
                    col: j + 1,
                    token: (*tok).to_string(),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(ParseError::Empty);
    }
    let m = AbundanceMatrix::from_rows(&rows).map_err(|_| ParseError::Empty)?;
    match header {
        Some(labels) => m.with_col_labels(labels).map_err(ParseError::Header),
        None => Ok(m),
    }
}

/// Comma-separated text; with `header`, the column labels come first.
pub fn write_matrix(m: &AbundanceMatrix, header: bool) -> String {
    let mut out = String::new();
    if header {
        out.push_str(&m.col_labels().join(","));
        out.push('\n');
    }
    for i in 0..m.rows() {
        write_row(&mut out, m.row(i));
    }
    out
}

pub fn write_similarity(s: &SimilarityMatrix) -> String {
    let mut out = String::new();
    for i in 0..s.order() {
        write_row(&mut out, s.row(i));
    }
    out
}

fn write_row(out: &mut String, row: &[u64]) {
    for (j, v) in row.iter().enumerate() {
        if j > 0 {
            out.push(',');
        }
        let _ = write!(out, "{v}");
    }
    out.push('\n');
}
