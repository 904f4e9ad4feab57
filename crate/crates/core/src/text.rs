//! Plain-text formats.
//!
//! Matrix format: one row per line, entries separated by whitespace, scalar
//! tokens as accepted by [`TropScalar`]'s `FromStr`. Blank lines and lines
//! starting with `#` are ignored.
//!
//! Equation format: blocks introduced by `%A i`, `%B i` (one-based term
//! index) and `%C`, each followed by a matrix in the format above.
//!
//! ```text
//! %A 1
//! 0 1
//! * 0
//! %B 1
//! 0
//! %C
//! 1
//! 0
//! ```

use std::collections::BTreeMap;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::matrix::TropMatrix;
use crate::semiring::TropScalar;
use crate::solver::MatrixEquation;

/// Parse a matrix in the text format. Line numbers in errors are one-based.
pub fn parse_matrix(text: &str) -> Result<TropMatrix> {
    let lines: Vec<(usize, &str)> = text.lines().enumerate().map(|(i, l)| (i + 1, l)).collect();
    parse_lines(&lines, 1)
}

/// Render a matrix in the text format (re-parses to an equal matrix).
pub fn format_matrix(m: &TropMatrix) -> String {
    m.to_string()
}

fn is_skipped(line: &str) -> bool {
    let t = line.trim_start();
    t.is_empty() || t.starts_with('#')
}

fn parse_lines(lines: &[(usize, &str)], start_line: usize) -> Result<TropMatrix> {
    let mut rows: Vec<Vec<TropScalar>> = Vec::new();
    for &(lineno, line) in lines {
        if is_skipped(line) {
            continue;
        }
        let mut row = Vec::new();
        let mut offset = 0;
        for tok in line.split_whitespace() {
            let at = line[offset..].find(tok).map_or(offset, |p| p + offset);
            offset = at + tok.len();
            let v = tok
                .parse::<TropScalar>()
                .map_err(|msg| Error::parse(lineno, line[..at].chars().count() + 1, msg))?;
            row.push(v);
        }
        if let Some(first) = rows.first() {
            if first.len() != row.len() {
                return Err(Error::parse(
                    lineno,
                    1,
                    format!("row has {} entries, expected {}", row.len(), first.len()),
                ));
            }
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(Error::parse(start_line, 1, "no matrix rows found"));
    }
    TropMatrix::from_rows(rows)
}

impl FromStr for TropMatrix {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_matrix(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Block {
    A(usize),
    B(usize),
    C,
}

fn parse_header(lineno: usize, line: &str) -> Result<Block> {
    let mut parts = line.trim()[1..].split_whitespace();
    let kind = parts.next().unwrap_or("");
    let index = parts.next();
    if parts.next().is_some() {
        return Err(Error::parse(lineno, 1, format!("malformed block header `{}`", line.trim())));
    }
    let term = |idx: Option<&str>| -> Result<usize> {
        idx.and_then(|s| s.parse::<usize>().ok())
            .filter(|&i| i >= 1)
            .ok_or_else(|| {
                Error::parse(lineno, 1, format!("block header `{}` needs a term index >= 1", line.trim()))
            })
    };
    match (kind, index) {
        ("A", idx) => Ok(Block::A(term(idx)?)),
        ("B", idx) => Ok(Block::B(term(idx)?)),
        ("C", None) => Ok(Block::C),
        _ => Err(Error::parse(lineno, 1, format!("unknown block header `{}`", line.trim()))),
    }
}

/// Numbered lines of one block.
type Lines<'a> = Vec<(usize, &'a str)>;

/// Parse an equation file into a [`MatrixEquation`].
pub fn parse_equation(text: &str) -> Result<MatrixEquation> {
    let mut blocks: BTreeMap<Block, (usize, Lines)> = BTreeMap::new();
    let mut current: Option<Block> = None;
    for (i, line) in text.lines().enumerate() {
        let lineno = i + 1;
        if line.trim_start().starts_with('%') {
            let block = parse_header(lineno, line)?;
            if blocks.contains_key(&block) {
                return Err(Error::parse(lineno, 1, format!("duplicate block `{}`", line.trim())));
            }
            blocks.insert(block, (lineno, Vec::new()));
            current = Some(block);
        } else if let Some(block) = current {
            blocks.get_mut(&block).expect("current block exists").1.push((lineno, line));
        } else if !is_skipped(line) {
            return Err(Error::parse(lineno, 1, "matrix data before the first `%` block header"));
        }
    }

    let mut parsed: BTreeMap<Block, TropMatrix> = BTreeMap::new();
    for (block, (header_line, lines)) in &blocks {
        parsed.insert(*block, parse_lines(lines, *header_line)?);
    }
    let rhs = parsed
        .remove(&Block::C)
        .ok_or_else(|| Error::parse(1, 1, "missing `%C` block"))?;

    let term_count = blocks
        .keys()
        .filter_map(|b| match b {
            Block::A(i) | Block::B(i) => Some(*i),
            Block::C => None,
        })
        .max()
        .unwrap_or(0);
    if term_count == 0 {
        return Err(Error::parse(1, 1, "no `%A i` / `%B i` terms"));
    }
    let mut terms = Vec::with_capacity(term_count);
    for i in 1..=term_count {
        let a = parsed.remove(&Block::A(i));
        let b = parsed.remove(&Block::B(i));
        match (a, b) {
            (Some(a), Some(b)) => terms.push((a, b)),
            (None, _) => return Err(Error::parse(1, 1, format!("missing `%A {i}` block"))),
            (_, None) => return Err(Error::parse(1, 1, format!("missing `%B {i}` block"))),
        }
    }
    MatrixEquation::new(terms, rhs)
}

/// Render an equation in the equation file format.
pub fn format_equation(eq: &MatrixEquation) -> String {
    let mut out = String::new();
    for (i, (a, b)) in eq.terms().iter().enumerate() {
        out.push_str(&format!("%A {}\n{a}%B {}\n{b}", i + 1, i + 1));
    }
    out.push_str(&format!("%C\n{}", eq.rhs()));
    out
}
