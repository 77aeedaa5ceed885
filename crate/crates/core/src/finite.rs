//! Finite binary operations on `0..n`, group validation and enumeration of
//! group tables whose neutral element is `0`.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::limits::{LimitExceeded, Limits};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Axis {
    Row,
    Column,
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Axis::Row => f.write_str("row"),
            Axis::Column => f.write_str("column"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ValidationFailure {
    #[error("a table needs at least one element")]
    Empty,
    #[error("table has {found} cells, expected {expected}")]
    Shape { expected: usize, found: usize },
    #[error("entry ({row}, {col}) = {value} is outside 0..{n}")]
    OutOfRange { row: usize, col: usize, value: usize, n: usize },
    #[error("not latin: {axis} {index} repeats {value}")]
    NotLatin { axis: Axis, index: usize, value: usize },
    #[error("not associative at ({a}, {b}, {c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("0 is not a two-sided neutral element (fails at {element})")]
    NoNeutral { element: usize },
    #[error("{element} has no two-sided inverse")]
    NoInverse { element: usize },
}

/// An `n x n` table of a binary operation, `entry(a, b) = a * b`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BinaryTable {
    n: usize,
    cells: Vec<usize>,
}

impl BinaryTable {
    pub fn new(n: usize, cells: Vec<usize>) -> Result<Self, ValidationFailure> {
        if n == 0 {
            return Err(ValidationFailure::Empty);
        }
        if cells.len() != n * n {
            return Err(ValidationFailure::Shape { expected: n * n, found: cells.len() });
        }
        if let Some(i) = cells.iter().position(|&v| v >= n) {
            return Err(ValidationFailure::OutOfRange { row: i / n, col: i % n, value: cells[i], n });
        }
        Ok(BinaryTable { n, cells })
    }

    pub fn from_rows(rows: &[Vec<usize>]) -> Result<Self, ValidationFailure> {
        let n = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(ValidationFailure::Shape { expected: n * n, found: n * bad.len() });
        }
        Self::new(n, rows.concat())
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> usize) -> Result<Self, ValidationFailure> {
        let cells = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).map(|(a, b)| f(a, b)).collect();
        Self::new(n, cells)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, a: usize, b: usize) -> usize {
        self.cells[a * self.n + b]
    }

    /// Row-major cells.
    pub fn cells(&self) -> &[usize] {
        &self.cells
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.cells.chunks(self.n).map(<[usize]>::to_vec).collect()
    }

    fn first_latin_violation(&self) -> Option<ValidationFailure> {
        let n = self.n;
        let mut seen = vec![false; n];
        for (axis, line) in (0..n).map(|i| (Axis::Row, i)).chain((0..n).map(|j| (Axis::Column, j))) {
            seen.fill(false);
            for k in 0..n {
                let v = match axis {
                    Axis::Row => self.get(line, k),
                    Axis::Column => self.get(k, line),
                };
                if std::mem::replace(&mut seen[v], true) {
                    return Some(ValidationFailure::NotLatin { axis, index: line, value: v });
                }
            }
        }
        None
    }

    fn first_associativity_violation(&self) -> Option<(usize, usize, usize)> {
        let n = self.n;
        for a in 0..n {
            for b in 0..n {
                let ab = self.get(a, b);
                for c in 0..n {
                    if self.get(ab, c) != self.get(a, self.get(b, c)) {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }
}

/// A validated group table with neutral element `0`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupTable {
    table: BinaryTable,
    inverse: Vec<usize>,
}

/// Checks the group axioms in the order Latin, associativity, neutral,
/// inverses and reports the first violation with its witness.
pub fn validate_group(table: BinaryTable) -> Result<GroupTable, ValidationFailure> {
    if let Some(err) = table.first_latin_violation() {
        return Err(err);
    }
    if let Some((a, b, c)) = table.first_associativity_violation() {
        return Err(ValidationFailure::NotAssociative { a, b, c });
    }
    let n = table.n();
    if let Some(element) = (0..n).find(|&a| table.get(0, a) != a || table.get(a, 0) != a) {
        return Err(ValidationFailure::NoNeutral { element });
    }
    let mut inverse = Vec::with_capacity(n);
    for a in 0..n {
        match (0..n).find(|&b| table.get(a, b) == 0 && table.get(b, a) == 0) {
            Some(b) => inverse.push(b),
            None => return Err(ValidationFailure::NoInverse { element: a }),
        }
    }
    Ok(GroupTable { table, inverse })
}

impl GroupTable {
    pub fn from_rows(rows: &[Vec<usize>]) -> Result<Self, ValidationFailure> {
        validate_group(BinaryTable::from_rows(rows)?)
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> usize) -> Result<Self, ValidationFailure> {
        validate_group(BinaryTable::from_fn(n, f)?)
    }

    /// `a * b = (a + b) mod n`.
    pub fn cyclic(n: usize) -> Self {
        Self::from_fn(n, |a, b| (a + b) % n).expect("cyclic table is a group")
    }

    /// The Klein four-group with `a * b = a xor b`.
    pub fn klein() -> Self {
        Self::from_fn(4, |a, b| a ^ b).expect("xor table is a group")
    }

    pub fn n(&self) -> usize {
        self.table.n()
    }

    #[inline]
    pub fn op(&self, a: usize, b: usize) -> usize {
        self.table.get(a, b)
    }

    #[inline]
    pub fn inverse(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn table(&self) -> &BinaryTable {
        &self.table
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table.rows()
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.n();
        (0..n).all(|a| (a + 1..n).all(|b| self.op(a, b) == self.op(b, a)))
    }
}

/// The unique `b` with `a * b = 0`.
pub fn group_inverse(g: &GroupTable, a: usize) -> usize {
    g.inverse(a)
}

pub fn is_abelian(g: &GroupTable) -> bool {
    g.is_abelian()
}

/// Every group table on `0..n` with neutral element `0`, in lexicographic
/// order of the flattened table.
///
/// Cells outside the first row and column are filled in row-major order by
/// depth-first search; each placement must keep rows and columns Latin and
/// every fully-determined associativity triple satisfied.
pub fn enumerate_group_tables(n: usize, limits: &Limits) -> Result<Vec<GroupTable>, LimitExceeded> {
    limits.check_order(n)?;
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut search = TableSearch::new(n);
    let mut out = Vec::new();
    search.fill(0, &mut out);
    out.sort();
    Ok(out)
}

const EMPTY: usize = usize::MAX;

struct TableSearch {
    n: usize,
    cells: Vec<usize>,
    row_used: Vec<u64>,
    col_used: Vec<u64>,
    free: Vec<(usize, usize)>,
}

impl TableSearch {
    fn new(n: usize) -> Self {
        let mut cells = vec![EMPTY; n * n];
        let mut row_used = vec![0u64; n];
        let mut col_used = vec![0u64; n];
        for a in 0..n {
            cells[a] = a;
            cells[a * n] = a;
            row_used[0] |= 1 << a;
            col_used[0] |= 1 << a;
            row_used[a] |= 1 << a;
            col_used[a] |= 1 << a;
        }
        let free = (1..n).flat_map(|a| (1..n).map(move |b| (a, b))).collect();
        TableSearch { n, cells, row_used, col_used, free }
    }

    #[inline]
    fn at(&self, a: usize, b: usize) -> usize {
        self.cells[a * self.n + b]
    }

    /// Every triple whose four products are all known must associate.
    fn partially_associative(&self) -> bool {
        let n = self.n;
        for a in 1..n {
            for b in 1..n {
                let ab = self.at(a, b);
                if ab == EMPTY {
                    continue;
                }
                for c in 1..n {
                    let bc = self.at(b, c);
                    if bc == EMPTY {
                        continue;
                    }
                    let left = self.at(ab, c);
                    let right = self.at(a, bc);
                    if left != EMPTY && right != EMPTY && left != right {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn fill(&mut self, depth: usize, out: &mut Vec<GroupTable>) {
        if depth == self.free.len() {
            let table = BinaryTable::new(self.n, self.cells.clone()).expect("complete table");
            let group = validate_group(table).expect("search only completes group tables");
            out.push(group);
            return;
        }
        let (a, b) = self.free[depth];
        for v in 0..self.n {
            let bit = 1u64 << v;
            if self.row_used[a] & bit != 0 || self.col_used[b] & bit != 0 {
                continue;
            }
            self.cells[a * self.n + b] = v;
            self.row_used[a] |= bit;
            self.col_used[b] |= bit;
            if self.partially_associative() {
                self.fill(depth + 1, out);
            }
            self.row_used[a] &= !bit;
            self.col_used[b] &= !bit;
            self.cells[a * self.n + b] = EMPTY;
        }
    }
}
