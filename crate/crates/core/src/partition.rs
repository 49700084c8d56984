//! Integer partitions, skew shapes and the index sets used throughout.
//!
//! Diagrams are drawn in French notation: row 1 is the bottom (longest) row
//! and cells are addressed `(row, col)`, both 1-based.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{precondition, Error, Result};

/// A weakly decreasing sequence of positive integers.
///
/// The derived `Ord` is lexicographic on the parts; on partitions of one
/// degree, *descending* lexicographic order refines dominance and is the
/// index order used for every matrix in the crate.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<usize>,
}

/// Largest accepted degree. Keeps every sum of a few degrees, hook lengths
/// and bead positions far from `usize` overflow.
pub const MAX_DEGREE: usize = u32::MAX as usize;

impl Partition {
    /// Builds a partition, dropping trailing zeros.
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Parse(format!(
                "parts {parts:?} are not weakly decreasing"
            )));
        }
        let degree = parts.iter().try_fold(0usize, |acc, &p| acc.checked_add(p));
        if degree.is_none_or(|d| d > MAX_DEGREE) {
            return Err(Error::Parse(format!("partition degree exceeds {MAX_DEGREE}")));
        }
        Ok(Partition { parts })
    }

    pub(crate) fn from_parts_unchecked(mut parts: Vec<usize>) -> Self {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]), "{parts:?}");
        Partition { parts }
    }

    /// Sorts arbitrary nonnegative integers into a partition.
    pub fn from_multiset(mut values: Vec<usize>) -> Self {
        values.sort_unstable_by(|a, b| b.cmp(a));
        Self::from_parts_unchecked(values)
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn into_parts(self) -> Vec<usize> {
        self.parts
    }

    /// Number of parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Sum of the parts.
    pub fn degree(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Length of row `row` (1-based), zero past the last row.
    pub fn row(&self, row: usize) -> usize {
        if row == 0 {
            return 0;
        }
        self.parts.get(row - 1).copied().unwrap_or(0)
    }

    /// Largest part, zero for the empty partition.
    pub fn first(&self) -> usize {
        self.parts.first().copied().unwrap_or(0)
    }

    pub fn is_k_bounded(&self, k: usize) -> bool {
        self.first() <= k
    }

    /// Componentwise containment of diagrams.
    pub fn contains(&self, other: &Partition) -> bool {
        other.len() <= self.len() && other.parts.iter().zip(&self.parts).all(|(a, b)| a <= b)
    }

    pub fn contains_cell(&self, cell: Cell) -> bool {
        cell.row >= 1 && cell.col >= 1 && cell.col <= self.row(cell.row)
    }

    /// Reflection about the main diagonal.
    pub fn conjugate(&self) -> Partition {
        let width = self.first();
        let parts = (1..=width)
            .map(|j| self.parts.iter().take_while(|&&p| p >= j).count())
            .collect();
        Partition { parts }
    }

    /// Dominance order: equal degree and every prefix sum at least as large.
    pub fn dominates(&self, other: &Partition) -> bool {
        if self.degree() != other.degree() {
            return false;
        }
        let n = self.len().max(other.len());
        let (mut a, mut b) = (0usize, 0usize);
        for i in 0..n {
            a += self.parts.get(i).copied().unwrap_or(0);
            b += other.parts.get(i).copied().unwrap_or(0);
            if a < b {
                return false;
            }
        }
        true
    }

    /// Hook length of the cell (1,1): `λ_1 + ℓ(λ) - 1`, or 0 when empty.
    pub fn main_hook(&self) -> usize {
        if self.is_empty() {
            0
        } else {
            self.first() + self.len() - 1
        }
    }

    /// Hook length of a cell of the straight diagram.
    pub fn hook(&self, cell: Cell) -> Option<usize> {
        if !self.contains_cell(cell) {
            return None;
        }
        let arm = self.row(cell.row) - cell.col;
        let leg = self.parts[cell.row..]
            .iter()
            .take_while(|&&p| p >= cell.col)
            .count();
        Some(arm + leg + 1)
    }

    /// All cells, row by row from the bottom.
    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(i, &len)| (1..=len).map(move |col| Cell { row: i + 1, col }))
    }

    /// Prepends `count` copies of `value` (which must be at least the first
    /// part) to the partition.
    pub fn with_leading_rows(&self, value: usize, count: usize) -> Partition {
        debug_assert!(count == 0 || value >= self.first());
        let mut parts = vec![value; count];
        parts.extend_from_slice(&self.parts);
        Partition::from_parts_unchecked(parts)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parses a bracketed, comma-separated list of nonnegative integers such as
/// `[4, 3, 2]`. Used for partitions and compositions alike.
pub fn parse_int_list(s: &str) -> Result<Vec<usize>> {
    let t = s.trim();
    let inner = t
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(|| Error::Parse(format!("expected a bracketed list, got {t:?}")))?;
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    inner
        .split(',')
        .map(|item| {
            let item = item.trim();
            if item.is_empty() || !item.bytes().all(|b| b.is_ascii_digit()) {
                return Err(Error::Parse(format!("invalid entry {item:?} in {t:?}")));
            }
            item.parse::<usize>()
                .map_err(|e| Error::Parse(format!("invalid entry {item:?}: {e}")))
        })
        .collect()
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts = parse_int_list(s)?;
        if parts.contains(&0) {
            return Err(Error::Parse(format!("partition {s:?} has a zero part")));
        }
        Partition::new(parts)
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.parts.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let parts = Vec::<usize>::deserialize(deserializer)?;
        if parts.contains(&0) {
            return Err(serde::de::Error::custom("partition has a zero part"));
        }
        Partition::new(parts).map_err(serde::de::Error::custom)
    }
}

/// A lattice square `(row, col)`, 1-based, rows counted from the bottom.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cell {
    pub row: usize,
    pub col: usize,
}

impl Cell {
    pub fn new(row: usize, col: usize) -> Self {
        Cell { row, col }
    }
}

/// The skew diagram `outer / inner`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SkewShape {
    outer: Partition,
    inner: Partition,
}

impl SkewShape {
    pub fn new(outer: Partition, inner: Partition) -> Result<Self> {
        if !outer.contains(&inner) {
            return precondition(format!("{inner} is not contained in {outer}"));
        }
        Ok(SkewShape { outer, inner })
    }

    pub fn straight(shape: Partition) -> Self {
        SkewShape {
            outer: shape,
            inner: Partition::empty(),
        }
    }

    pub fn outer(&self) -> &Partition {
        &self.outer
    }

    pub fn inner(&self) -> &Partition {
        &self.inner
    }

    /// Whether the cell belongs to `outer / inner` (as opposed to lying below it).
    pub fn contains_cell(&self, cell: Cell) -> bool {
        self.outer.contains_cell(cell) && cell.col > self.inner.row(cell.row)
    }

    /// Cells of the skew part, bottom row first.
    pub fn cells(&self) -> Vec<Cell> {
        let mut out = Vec::new();
        for row in 1..=self.outer.len() {
            for col in self.inner.row(row) + 1..=self.outer.row(row) {
                out.push(Cell { row, col });
            }
        }
        out
    }

    pub fn size(&self) -> usize {
        self.outer.degree() - self.inner.degree()
    }

    /// Number of skew cells inside the L cornered at `cell`; defined for every
    /// square of the outer diagram, including those below the skew part.
    pub fn hook_length(&self, cell: Cell) -> Result<usize> {
        if !self.outer.contains_cell(cell) {
            return precondition(format!(
                "cell ({},{}) lies outside {}",
                cell.row, cell.col, self.outer
            ));
        }
        let row_inner = self.inner.row(cell.row);
        let row_outer = self.outer.row(cell.row);
        let arm = row_outer - cell.col.max(row_inner);
        let own = usize::from(cell.col > row_inner);
        let leg = (cell.row + 1..=self.outer.len())
            .filter(|&r| self.inner.row(r) < cell.col && cell.col <= self.outer.row(r))
            .count();
        Ok(arm + leg + own)
    }
}

/// Conjugate partition; free-function form of [`Partition::conjugate`].
pub fn conjugate(lambda: &Partition) -> Partition {
    lambda.conjugate()
}

pub fn dominates(lambda: &Partition, mu: &Partition) -> bool {
    lambda.dominates(mu)
}

pub fn main_hook(lambda: &Partition) -> usize {
    lambda.main_hook()
}

/// `outer / inner` has at most one cell per column. False if not nested.
pub fn is_horizontal_strip(outer: &Partition, inner: &Partition) -> bool {
    if !outer.contains(inner) {
        return false;
    }
    // Row i+1 of outer may not extend past row i of inner.
    (2..=outer.len()).all(|r| outer.row(r) <= inner.row(r - 1))
}

/// `outer / inner` has at most one cell per row. False if not nested.
pub fn is_vertical_strip(outer: &Partition, inner: &Partition) -> bool {
    outer.contains(inner) && (1..=outer.len()).all(|r| outer.row(r) <= inner.row(r) + 1)
}

fn check_grassmannian(l: usize, n: usize) -> Result<()> {
    if l == 0 || l >= n {
        return precondition(format!("need 1 <= l < n, got l={l}, n={n}"));
    }
    Ok(())
}

/// Membership in the rectangle index set: `λ_1 ≤ l` and at most `n - l` rows.
pub fn in_rectangle(lambda: &Partition, l: usize, n: usize) -> Result<bool> {
    check_grassmannian(l, n)?;
    Ok(lambda.first() <= l && lambda.len() <= n - l)
}

/// Membership in the larger set: `λ_1 ≤ l` and at most `n - l` rows shorter than `l`.
pub fn in_pi(lambda: &Partition, l: usize, n: usize) -> Result<bool> {
    check_grassmannian(l, n)?;
    let short = lambda.parts().iter().filter(|&&p| p < l).count();
    Ok(lambda.first() <= l && short <= n - l)
}

/// All partitions of `n` with largest part at most `k`, in descending
/// lexicographic order.
pub fn enumerate_bounded(n: usize, k: usize) -> Vec<Partition> {
    fn rec(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition::from_parts_unchecked(cur.clone()));
            return;
        }
        for p in (1..=max.min(rest)).rev() {
            cur.push(p);
            rec(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, k, &mut Vec::new(), &mut out);
    out
}

/// All partitions of `n`, descending lexicographic.
pub fn partitions_of(n: usize) -> Vec<Partition> {
    enumerate_bounded(n, n)
}

/// All compositions of `n` into positive parts, in lexicographic order.
pub fn compositions(n: usize) -> Vec<Vec<usize>> {
    fn rec(rest: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for p in 1..=rest {
            cur.push(p);
            rec(rest - p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, &mut Vec::new(), &mut out);
    out
}

/// Partitions fitting in the `l × (n-l)` rectangle, by degree then descending lex.
pub fn rectangle_partitions(l: usize, n: usize) -> Result<Vec<Partition>> {
    check_grassmannian(l, n)?;
    let mut out = Vec::new();
    for d in 0..=l * (n - l) {
        out.extend(
            enumerate_bounded(d, l)
                .into_iter()
                .filter(|p| p.len() <= n - l),
        );
    }
    Ok(out)
}
