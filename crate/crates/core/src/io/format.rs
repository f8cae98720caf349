//! Plain-text series files.
//!
//! ```text
//! dirichlet v1
//! # n re im
//! 1 1.0000000000000000e0 0.0000000000000000e0
//! 6 -5.0000000000000000e-1 2.5000000000000000e-1
//! ```
//!
//! ```text
//! monomial v1
//! # positions exponents re im
//! - - 1.0000000000000000e0 0.0000000000000000e0
//! 1,2 1,1 -5.0000000000000000e-1 2.5000000000000000e-1
//! ```
//!
//! Records are sorted (by `n`, or by graded order of `alpha`) without
//! repeats; `-` stands for the empty index. Blank lines and lines starting
//! with `#` are ignored. A family file is a concatenation of such blocks,
//! each opened by its header line.

use std::fmt::Write as _;

use num_complex::Complex;

use crate::bohr::MultiIndex;
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::series::{DirichletPolynomial, MonomialExpansion};

pub const DIRICHLET_HEADER: &str = "dirichlet v1";
pub const MONOMIAL_HEADER: &str = "monomial v1";

/// A parsed series file of either kind.
#[derive(Debug, Clone, PartialEq)]
pub enum SeriesFile<T: Real> {
    Dirichlet(DirichletPolynomial<T>),
    Monomial(MonomialExpansion<T>),
}

impl<T: Real> SeriesFile<T> {
    /// Monomial side of the file, lifting a Dirichlet polynomial.
    pub fn into_monomial(self) -> Result<MonomialExpansion<T>> {
        match self {
            SeriesFile::Dirichlet(d) => d.lift(),
            SeriesFile::Monomial(f) => Ok(f),
        }
    }

    /// Dirichlet side of the file, dropping a monomial expansion.
    pub fn into_dirichlet(self) -> Result<DirichletPolynomial<T>> {
        match self {
            SeriesFile::Dirichlet(d) => Ok(d),
            SeriesFile::Monomial(f) => f.to_dirichlet(),
        }
    }

    pub fn to_text(&self) -> String {
        match self {
            SeriesFile::Dirichlet(d) => write_dirichlet(d),
            SeriesFile::Monomial(f) => write_monomial(f),
        }
    }
}

/// Fixed scientific notation with 17 significant digits, independent of
/// locale; parses back to the same value.
pub fn fmt_real<T: Real>(x: T) -> String {
    format!("{x:.16e}")
}

fn join(values: impl Iterator<Item = u32>) -> String {
    let parts: Vec<String> = values.map(|v| v.to_string()).collect();
    if parts.is_empty() {
        "-".to_string()
    } else {
        parts.join(",")
    }
}

pub fn write_dirichlet<T: Real>(d: &DirichletPolynomial<T>) -> String {
    let mut out = format!("{DIRICHLET_HEADER}\n");
    for (n, a) in d.iter() {
        let _ = writeln!(out, "{n} {} {}", fmt_real(a.re), fmt_real(a.im));
    }
    out
}

pub fn write_monomial<T: Real>(f: &MonomialExpansion<T>) -> String {
    let mut out = format!("{MONOMIAL_HEADER}\n");
    for (alpha, c) in f.iter() {
        let _ = writeln!(
            out,
            "{} {} {} {}",
            join(alpha.entries().iter().map(|e| e.0)),
            join(alpha.entries().iter().map(|e| e.1)),
            fmt_real(c.re),
            fmt_real(c.im)
        );
    }
    out
}

/// Concatenated blocks, one per member.
pub fn write_family<T: Real>(family: &[SeriesFile<T>]) -> String {
    family.iter().map(SeriesFile::to_text).collect()
}

fn parse_real<T: Real>(token: &str, line: usize) -> Result<T> {
    let x: T = token
        .parse()
        .map_err(|_| Error::parse(line, format!("expected a number, found {token:?}")))?;
    if !x.is_finite() {
        return Err(Error::parse(line, format!("coefficient {token} is not finite")));
    }
    Ok(x)
}

fn parse_list(token: &str, line: usize) -> Result<Vec<u32>> {
    if token == "-" {
        return Ok(Vec::new());
    }
    token
        .split(',')
        .map(|t| {
            t.parse()
                .map_err(|_| Error::parse(line, format!("expected a non-negative integer, found {t:?}")))
        })
        .collect()
}

enum Kind {
    Dirichlet,
    Monomial,
}

struct Block<'a> {
    kind: Kind,
    /// (1-based line number, trimmed text) of each record.
    records: Vec<(usize, &'a str)>,
}

fn split_blocks(text: &str) -> Result<Vec<Block<'_>>> {
    let mut blocks: Vec<Block<'_>> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let t = raw.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        let kind = match t {
            DIRICHLET_HEADER => Some(Kind::Dirichlet),
            MONOMIAL_HEADER => Some(Kind::Monomial),
            _ => None,
        };
        match (kind, blocks.last_mut()) {
            (Some(kind), _) => blocks.push(Block {
                kind,
                records: Vec::new(),
            }),
            (None, Some(block)) => block.records.push((line, t)),
            (None, None) => {
                return Err(Error::parse(
                    line,
                    format!("expected header {DIRICHLET_HEADER:?} or {MONOMIAL_HEADER:?}, found {t:?}"),
                ))
            }
        }
    }
    Ok(blocks)
}

fn parse_dirichlet_block<T: Real>(records: &[(usize, &str)]) -> Result<DirichletPolynomial<T>> {
    let mut terms = Vec::with_capacity(records.len());
    let mut prev: Option<u64> = None;
    for &(line, t) in records {
        let fields: Vec<&str> = t.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(Error::parse(line, format!("expected `n re im`, found {} fields", fields.len())));
        }
        let n: u64 = fields[0]
            .parse()
            .map_err(|_| Error::parse(line, format!("expected a positive integer, found {:?}", fields[0])))?;
        if n == 0 {
            return Err(Error::parse(line, "Dirichlet index must be at least 1"));
        }
        if let Some(p) = prev {
            if n <= p {
                return Err(Error::parse(
                    line,
                    format!("index {n} is not above the previous index {p} (records must be sorted, no repeats)"),
                ));
            }
        }
        prev = Some(n);
        let a = Complex::new(parse_real(fields[1], line)?, parse_real(fields[2], line)?);
        terms.push((n, a));
    }
    DirichletPolynomial::from_terms(terms)
}

fn parse_monomial_block<T: Real>(records: &[(usize, &str)]) -> Result<MonomialExpansion<T>> {
    let mut terms = Vec::with_capacity(records.len());
    let mut prev: Option<MultiIndex> = None;
    for &(line, t) in records {
        let fields: Vec<&str> = t.split_whitespace().collect();
        if fields.len() != 4 {
            return Err(Error::parse(
                line,
                format!("expected `positions exponents re im`, found {} fields", fields.len()),
            ));
        }
        let positions = parse_list(fields[0], line)?;
        let exponents = parse_list(fields[1], line)?;
        if positions.len() != exponents.len() {
            return Err(Error::parse(line, "positions and exponents differ in length"));
        }
        if exponents.contains(&0) {
            return Err(Error::parse(line, "zero exponents are omitted, not listed"));
        }
        let alpha = MultiIndex::from_sparse(positions.into_iter().zip(exponents))
            .map_err(|e| Error::parse(line, e.to_string()))?;
        if let Some(p) = &prev {
            if alpha <= *p {
                return Err(Error::parse(
                    line,
                    format!("index {alpha} does not follow {p} in graded order (records must be sorted, no repeats)"),
                ));
            }
        }
        prev = Some(alpha.clone());
        let c = Complex::new(parse_real(fields[2], line)?, parse_real(fields[3], line)?);
        terms.push((alpha, c));
    }
    MonomialExpansion::from_terms(terms)
}

fn parse_block<T: Real>(block: &Block<'_>) -> Result<SeriesFile<T>> {
    match block.kind {
        Kind::Dirichlet => parse_dirichlet_block(&block.records).map(SeriesFile::Dirichlet),
        Kind::Monomial => parse_monomial_block(&block.records).map(SeriesFile::Monomial),
    }
}

/// Parses a single series file.
pub fn parse_series<T: Real>(text: &str) -> Result<SeriesFile<T>> {
    let blocks = split_blocks(text)?;
    match blocks.len() {
        0 => Err(Error::parse(1, "empty series file: missing header")),
        1 => parse_block(&blocks[0]),
        _ => {
            let line = blocks[1].records.first().map_or(0, |r| r.0.saturating_sub(1));
            Err(Error::parse(line, "more than one series in file; use a family command"))
        }
    }
}

/// Parses a family file: one or more concatenated series blocks.
pub fn parse_family<T: Real>(text: &str) -> Result<Vec<SeriesFile<T>>> {
    let blocks = split_blocks(text)?;
    if blocks.is_empty() {
        return Err(Error::parse(1, "empty family file"));
    }
    blocks.iter().map(parse_block).collect()
}

pub fn parse_dirichlet<T: Real>(text: &str) -> Result<DirichletPolynomial<T>> {
    match parse_series(text)? {
        SeriesFile::Dirichlet(d) => Ok(d),
        SeriesFile::Monomial(_) => Err(Error::parse(1, format!("expected {DIRICHLET_HEADER:?}"))),
    }
}

pub fn parse_monomial<T: Real>(text: &str) -> Result<MonomialExpansion<T>> {
    match parse_series(text)? {
        SeriesFile::Monomial(f) => Ok(f),
        SeriesFile::Dirichlet(_) => Err(Error::parse(1, format!("expected {MONOMIAL_HEADER:?}"))),
    }
}
