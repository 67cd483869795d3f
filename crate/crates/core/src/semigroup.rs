//! Finite semigroups given by a dense multiplication table.
//!
//! Elements are the indices `0..size`. The adjoined unit of `S¹` is never
//! stored; code that needs it treats "multiply by 1" as a separate case.

use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};

/// Above this size, building a semigroup requires [`BuildOptions::allow_large`]
/// because the associativity check is cubic.
pub const EXHAUSTIVE_CHECK_LIMIT: usize = 512;

#[derive(Debug, Clone, Copy, Default)]
pub struct BuildOptions {
    /// Permit the O(n³) associativity check above [`EXHAUSTIVE_CHECK_LIMIT`].
    pub allow_large: bool,
}

#[derive(Clone, PartialEq, Eq)]
pub struct FiniteSemigroup {
    size: usize,
    table: Vec<usize>,
    labels: Vec<String>,
    identity: Option<usize>,
}

impl fmt::Debug for FiniteSemigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteSemigroup")
            .field("size", &self.size)
            .field("identity", &self.identity)
            .finish_non_exhaustive()
    }
}

impl FiniteSemigroup {
    /// Builds and validates a semigroup from its rows: `rows[i][j] = i·j`.
    pub fn from_table(rows: &[Vec<usize>], labels: Option<Vec<String>>) -> Result<Self> {
        Self::from_table_with(rows, labels, BuildOptions::default())
    }

    pub fn from_table_with(
        rows: &[Vec<usize>],
        labels: Option<Vec<String>>,
        opts: BuildOptions,
    ) -> Result<Self> {
        let size = rows.len();
        if size == 0 {
            return Err(Error::Empty);
        }
        let mut table = Vec::with_capacity(size * size);
        for row in rows {
            if row.len() != size {
                return Err(Error::Shape { expected: size, found: row.len() });
            }
            table.extend_from_slice(row);
        }
        Self::from_flat(size, table, labels, opts)
    }

    /// Builds from a row-major flat table of length `size * size`.
    pub fn from_flat(
        size: usize,
        table: Vec<usize>,
        labels: Option<Vec<String>>,
        opts: BuildOptions,
    ) -> Result<Self> {
        if size == 0 {
            return Err(Error::Empty);
        }
        if table.len() != size * size {
            return Err(Error::Shape { expected: size * size, found: table.len() });
        }
        if let Some(pos) = table.iter().position(|&v| v >= size) {
            return Err(Error::OutOfRangeEntry(pos / size, pos % size));
        }
        if size > EXHAUSTIVE_CHECK_LIMIT && !opts.allow_large {
            return Err(Error::TooLargeForExhaustiveCheck(size));
        }
        let labels = match labels {
            Some(l) if l.len() != size => {
                return Err(Error::LabelCount { expected: size, found: l.len() })
            }
            Some(l) => l,
            None => (0..size).map(|i| i.to_string()).collect(),
        };
        let mut s = FiniteSemigroup { size, table, labels, identity: None };
        if let Some((i, j, k)) = s.associativity_witness() {
            return Err(Error::NotAssociative(i, j, k));
        }
        s.identity = (0..size).find(|&e| (0..size).all(|i| s.mul(e, i) == i && s.mul(i, e) == i));
        Ok(s)
    }

    /// Builds from the table of a family of composed functions or partial
    /// maps. Composition is associative, so the cubic check is skipped.
    pub(crate) fn from_composition(size: usize, table: Vec<usize>, labels: Vec<String>) -> Self {
        assert!(size > 0 && table.len() == size * size && labels.len() == size);
        debug_assert!(table.iter().all(|&v| v < size));
        let mut s = FiniteSemigroup { size, table, labels, identity: None };
        s.identity = (0..size).find(|&e| (0..size).all(|i| s.mul(e, i) == i && s.mul(i, e) == i));
        s
    }

    /// Whether the table is associative, by exhaustive check.
    pub fn is_associative(&self) -> bool {
        self.associativity_witness().is_none()
    }

    /// First triple `(i, j, k)` in lexicographic order with `(ij)k ≠ i(jk)`.
    fn associativity_witness(&self) -> Option<(usize, usize, usize)> {
        let n = self.size;
        (0..n).into_par_iter().find_map_first(|i| {
            for j in 0..n {
                let ij = self.mul(i, j);
                for k in 0..n {
                    if self.mul(ij, k) != self.mul(i, self.mul(j, k)) {
                        return Some((i, j, k));
                    }
                }
            }
            None
        })
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.size + b]
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.size
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn identity(&self) -> Option<usize> {
        self.identity
    }

    pub fn is_monoid(&self) -> bool {
        self.identity.is_some()
    }

    pub fn row(&self, a: usize) -> &[usize] {
        &self.table[a * self.size..(a + 1) * self.size]
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.size).map(|a| self.row(a).to_vec()).collect()
    }

    pub fn is_idempotent(&self, a: usize) -> bool {
        self.mul(a, a) == a
    }

    /// Indices `i` with `i·i = i`, ascending.
    pub fn idempotents(&self) -> Vec<usize> {
        self.elements().filter(|&a| self.is_idempotent(a)).collect()
    }

    /// The natural partial order on idempotents: `e ≤ f` iff `ef = e = fe`.
    pub fn natural_order_leq(&self, e: usize, f: usize) -> Result<bool> {
        for x in [e, f] {
            if !self.is_idempotent(x) {
                return Err(Error::NotIdempotent(x));
            }
        }
        Ok(self.mul(e, f) == e && self.mul(f, e) == e)
    }

    /// Whether some `b` satisfies `aba = a`.
    pub fn is_regular_element(&self, a: usize) -> bool {
        self.elements().any(|b| self.mul(self.mul(a, b), a) == a)
    }

    /// Generalized inverses of `a`: all `b` with `aba = a` and `bab = b`, ascending.
    pub fn inverses(&self, a: usize) -> Vec<usize> {
        self.elements()
            .filter(|&b| self.mul(self.mul(a, b), a) == a && self.mul(self.mul(b, a), b) == b)
            .collect()
    }

    /// Every element has exactly one generalized inverse.
    pub fn is_inverse_semigroup(&self) -> bool {
        self.elements().all(|a| self.inverses(a).len() == 1)
    }

    /// The opposite semigroup, with `a ∘ b = b·a`.
    pub fn reversed(&self) -> FiniteSemigroup {
        let n = self.size;
        let table = (0..n * n).map(|p| self.mul(p % n, p / n)).collect();
        FiniteSemigroup {
            size: n,
            table,
            labels: self.labels.clone(),
            identity: self.identity,
        }
    }

    /// Restricts the table to `elements` (in the given order), failing unless
    /// the subset is closed under multiplication.
    pub fn subsemigroup(&self, elements: &[usize]) -> Result<FiniteSemigroup> {
        let mut position = vec![usize::MAX; self.size];
        for (p, &a) in elements.iter().enumerate() {
            position[a] = p;
        }
        let k = elements.len();
        let mut table = Vec::with_capacity(k * k);
        for (i, &a) in elements.iter().enumerate() {
            for (j, &b) in elements.iter().enumerate() {
                let p = position[self.mul(a, b)];
                if p == usize::MAX {
                    return Err(Error::OutOfRangeEntry(i, j));
                }
                table.push(p);
            }
        }
        let labels = elements.iter().map(|&a| self.labels[a].clone()).collect();
        Self::from_flat(k, table, Some(labels), BuildOptions { allow_large: true })
    }

    /// Writes the table in the line-oriented text format read by [`parse_table`].
    pub fn to_table_text(&self) -> String {
        let mut out = format!("{}\n", self.size);
        for a in self.elements() {
            let row: Vec<String> = self.row(a).iter().map(|v| v.to_string()).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out.push_str("labels:\n");
        out.push_str(&self.labels.join(" "));
        out.push('\n');
        out
    }
}

/// Parses the multiplication-table text format.
///
/// Line 1 is `n`; the next `n` non-comment lines are rows of 0-based indices.
/// Lines starting with `#` are ignored. An optional `labels:` line is followed
/// by `n` whitespace-separated tokens (on the same line or the following ones).
pub fn parse_table(text: &str) -> Result<FiniteSemigroup> {
    let (rows, labels) = parse_table_rows(text)?;
    FiniteSemigroup::from_table(&rows, labels)
}

/// Table rows and optional labels, before validation.
type RawTable = (Vec<Vec<usize>>, Option<Vec<String>>);

pub(crate) fn parse_table_rows(text: &str) -> Result<RawTable> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (line_no, first) = lines.next().ok_or(Error::Parse { line: 1, message: "empty input".into() })?;
    let n: usize = first.parse().map_err(|_| Error::Parse {
        line: line_no,
        message: format!("expected element count, found {first:?}"),
    })?;
    let mut rows = Vec::with_capacity(n);
    for _ in 0..n {
        let (line_no, line) = lines.next().ok_or(Error::Parse {
            line: line_no,
            message: format!("expected {n} rows, found {}", rows.len()),
        })?;
        let row = line
            .split_whitespace()
            .map(|t| {
                t.parse::<usize>().map_err(|_| Error::Parse {
                    line: line_no,
                    message: format!("bad index {t:?}"),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        if row.len() != n {
            return Err(Error::Parse {
                line: line_no,
                message: format!("expected {n} entries, found {}", row.len()),
            });
        }
        rows.push(row);
    }
    let mut labels = None;
    if let Some((line_no, line)) = lines.next() {
        let rest = line.strip_prefix("labels:").ok_or(Error::Parse {
            line: line_no,
            message: format!("unexpected trailing line {line:?}"),
        })?;
        let mut tokens: Vec<String> = rest.split_whitespace().map(str::to_owned).collect();
        for (_, l) in lines {
            tokens.extend(l.split_whitespace().map(str::to_owned));
        }
        labels = Some(tokens);
    }
    Ok((rows, labels))
}

/// Parses an E-subset: whitespace- or comma-separated 0-based indices, `#` comments.
pub fn parse_index_set(text: &str) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.starts_with('#') {
            continue;
        }
        for tok in line.split(|c: char| c.is_whitespace() || c == ',').filter(|t| !t.is_empty()) {
            out.push(tok.parse().map_err(|_| Error::Parse {
                line: i + 1,
                message: format!("bad index {tok:?}"),
            })?);
        }
    }
    Ok(out)
}
