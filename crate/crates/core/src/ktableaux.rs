//! k-tableaux and skew k-tableaux: explicit enumeration and counting.
//!
//! A filling with weakly increasing rows and strictly increasing columns is
//! the same thing as a chain of shapes in which each letter occupies a
//! horizontal strip. Counting runs that chain forward one letter at a time,
//! keeping a multiplicity per intermediate shape, so one pass from a start
//! shape yields the counts for every final shape at once.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::cores::{is_p_core, k_bounded_hooks, residue, to_core};
use crate::error::{internal, precondition, Error, Result};
use crate::partition::{enumerate_bounded, Cell, Partition};

type Mask = u128;
const MAX_PERIOD: usize = Mask::BITS as usize;

/// A filling of `shape / inner` by the letters `1..=weight.len()`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KTableau {
    k: usize,
    shape: Partition,
    inner: Partition,
    weight: Vec<usize>,
    /// Rows from the bottom, `None` for cells of the inner shape.
    rows: Vec<Vec<Option<usize>>>,
}

impl KTableau {
    /// Builds and validates a tableau.
    pub fn new(
        k: usize,
        shape: Partition,
        inner: Partition,
        weight: Vec<usize>,
        rows: Vec<Vec<Option<usize>>>,
    ) -> Result<Self> {
        let t = KTableau { k, shape, inner, weight, rows };
        t.validate()?;
        Ok(t)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn inner(&self) -> &Partition {
        &self.inner
    }

    pub fn weight(&self) -> &[usize] {
        &self.weight
    }

    pub fn rows(&self) -> &[Vec<Option<usize>>] {
        &self.rows
    }

    pub fn entry(&self, cell: Cell) -> Option<usize> {
        self.rows
            .get(cell.row.checked_sub(1)?)
            .and_then(|r| r.get(cell.col.checked_sub(1)?))
            .copied()
            .flatten()
    }

    /// Letters read along rows, bottom row first, holes skipped.
    pub fn reading_word(&self) -> Vec<usize> {
        self.rows.iter().flatten().flatten().copied().collect()
    }

    /// The shapes filled by letters `≤ i` for `i = 0..=r`.
    pub fn prefix_shapes(&self) -> Vec<Partition> {
        (0..=self.weight.len())
            .map(|i| {
                let parts = self
                    .rows
                    .iter()
                    .map(|row| row.iter().filter(|e| e.is_none_or(|x| x <= i)).count())
                    .collect();
                Partition::from_multiset(parts)
            })
            .collect()
    }

    fn validate(&self) -> Result<()> {
        let k = self.k;
        let p = check_period(k)?;
        if !is_p_core(&self.shape, p) {
            return precondition(format!("shape {} is not a {p}-core", self.shape));
        }
        if !is_p_core(&self.inner, p) {
            return precondition(format!("inner shape {} is not a {p}-core", self.inner));
        }
        if !self.shape.contains(&self.inner) {
            return precondition(format!("inner shape {} is not inside {}", self.inner, self.shape));
        }
        let size = k_bounded_hooks(&self.shape, k)? - k_bounded_hooks(&self.inner, k)?;
        let total = self.weight.iter().try_fold(0usize, |a, &w| a.checked_add(w));
        if total != Some(size) {
            return precondition(format!("weight does not sum to {size}, the number of {k}-bounded hooks of the shape"));
        }
        if self.rows.len() != self.shape.len() {
            return precondition("row count does not match the shape");
        }
        let r = self.weight.len();
        let mut residues = vec![0 as Mask; r];
        for (i, row) in self.rows.iter().enumerate() {
            let rr = i + 1;
            if row.len() != self.shape.row(rr) {
                return precondition(format!("row {rr} has the wrong length"));
            }
            for (j, e) in row.iter().enumerate() {
                let c = j + 1;
                let hole = c <= self.inner.row(rr);
                match (hole, e) {
                    (true, None) => continue,
                    (true, Some(_)) => return precondition(format!("cell ({rr},{c}) of the inner shape is filled")),
                    (false, None) => return precondition(format!("cell ({rr},{c}) is empty")),
                    (false, Some(x)) => {
                        if *x == 0 || *x > r {
                            return precondition(format!("letter {x} outside 1..={r}"));
                        }
                        if c > 1 {
                            if let Some(left) = row[j - 1] {
                                if left > *x {
                                    return precondition(format!("row {rr} decreases at column {c}"));
                                }
                            }
                        }
                        if rr > 1 {
                            if let Some(Some(below)) = self.rows[i - 1].get(j) {
                                if *below >= *x {
                                    return precondition(format!("column {c} does not increase at row {rr}"));
                                }
                            }
                        }
                        residues[*x - 1] |= residue_bit(residue(Cell::new(rr, c), p));
                    }
                }
            }
        }
        for (i, (&m, &a)) in residues.iter().zip(&self.weight).enumerate() {
            if m.count_ones() as usize != a {
                return precondition(format!(
                    "letter {} occupies {} residues, weight asks for {a}",
                    i + 1,
                    m.count_ones()
                ));
            }
        }
        Ok(())
    }
}

impl fmt::Display for KTableau {
    /// One line per row, bottom row first; holes print as `.`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.rows.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "[")?;
            for (j, e) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                match e {
                    Some(x) => write!(f, "{x}")?,
                    None => write!(f, ".")?,
                }
            }
            write!(f, "]")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTableau {
    k: usize,
    shape: Partition,
    inner: Partition,
    weight: Vec<usize>,
    rows: Vec<Vec<Option<usize>>>,
}

impl Serialize for KTableau {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RawTableau {
            k: self.k,
            shape: self.shape.clone(),
            inner: self.inner.clone(),
            weight: self.weight.clone(),
            rows: self.rows.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for KTableau {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawTableau::deserialize(d)?;
        KTableau::new(raw.k, raw.shape, raw.inner, raw.weight, raw.rows).map_err(serde::de::Error::custom)
    }
}

/// Decodes a JSON list of tableaux, validating each one.
pub fn tableaux_from_json(text: &str) -> Result<Vec<KTableau>> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("tableau JSON: {e}")))
}

fn residue_bit(r: usize) -> Mask {
    1 << r
}

fn check_period(k: usize) -> Result<usize> {
    if k == 0 {
        return precondition("k must be at least 1");
    }
    if k >= MAX_PERIOD {
        return precondition(format!("k = {k} is too large (at most {})", MAX_PERIOD - 1));
    }
    Ok(k + 1)
}

/// For shapes whose main hook is at most `k`, every hook is bounded and all
/// contents are distinct mod `k+1`, so any larger `k` gives the same answers.
pub(crate) fn effective_k(k: usize, outer_main_hook: usize) -> usize {
    k.min(outer_main_hook.max(1))
}

/// Every `T ⊇ shape` inside `bound` with `T/shape` a horizontal strip whose
/// cells carry exactly `want` distinct residues mod `p`.
fn strips(shape: &[usize], bound: &[usize], p: usize, want: usize, out: &mut Vec<Vec<usize>>) {
    let rows = bound.len().min(shape.len() + 1);
    let mut next = Vec::with_capacity(rows);
    strip_rows(0, shape, bound, rows, p, want, 0, &mut next, out);
}

#[allow(clippy::too_many_arguments)]
fn strip_rows(
    i: usize,
    shape: &[usize],
    bound: &[usize],
    rows: usize,
    p: usize,
    want: usize,
    mask: Mask,
    next: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if i == rows {
        if mask.count_ones() as usize == want {
            let mut t = next.clone();
            while t.last() == Some(&0) {
                t.pop();
            }
            out.push(t);
        }
        return;
    }
    let lo = shape.get(i).copied().unwrap_or(0);
    let mut hi = bound[i];
    if i > 0 {
        hi = hi.min(shape[i - 1]);
    }
    if hi < lo {
        // the current shape already sticks out of the bound
        return;
    }
    let row = i + 1;
    let mut m = mask;
    for t in lo..=hi {
        if t > lo {
            m |= residue_bit(residue(Cell::new(row, t), p));
            if m.count_ones() as usize > want {
                break;
            }
        }
        next.push(t);
        strip_rows(i + 1, shape, bound, rows, p, want, m, next, out);
        next.pop();
    }
}

/// Runs the letter-by-letter chain from `start` with the given weight, never
/// leaving `bound`; returns the multiplicity of each final shape.
pub(crate) fn propagate(
    k: usize,
    start: &Partition,
    weight: &[usize],
    bound: &Partition,
) -> Result<HashMap<Vec<usize>, u128>> {
    let p = check_period(k)?;
    let mut states: HashMap<Vec<usize>, u128> = HashMap::new();
    if !bound.contains(start) {
        return Ok(states);
    }
    states.insert(start.parts().to_vec(), 1);
    let mut buf = Vec::new();
    for &a in weight {
        let mut next: HashMap<Vec<usize>, u128> = HashMap::new();
        for (shape, count) in &states {
            buf.clear();
            strips(shape, bound.parts(), p, a, &mut buf);
            for t in buf.drain(..) {
                let slot = next.entry(t).or_insert(0);
                *slot = slot
                    .checked_add(*count)
                    .ok_or_else(|| Error::Internal("k-tableau count overflowed u128".into()))?;
            }
        }
        states = next;
        if states.is_empty() {
            break;
        }
    }
    Ok(states)
}

fn check_weight(weight: &[usize]) -> Result<()> {
    if weight.contains(&0) {
        return precondition("weight parts must be positive");
    }
    Ok(())
}

/// All k-tableaux of shape `gamma` (a `(k+1)`-core) and k-weight `alpha`,
/// sorted by reading word.
pub fn enumerate_k_tableaux(k: usize, gamma: &Partition, alpha: &[usize]) -> Result<Vec<KTableau>> {
    enumerate_skew_k_tableaux(k, gamma, &Partition::empty(), alpha)
}

/// All skew k-tableaux of shape `gamma / rho` (both `(k+1)`-cores) and
/// k-weight `alpha`, sorted by reading word.
pub fn enumerate_skew_k_tableaux(
    k: usize,
    gamma: &Partition,
    rho: &Partition,
    alpha: &[usize],
) -> Result<Vec<KTableau>> {
    let p = check_period(k)?;
    check_weight(alpha)?;
    for (name, s) in [("shape", gamma), ("inner shape", rho)] {
        if !is_p_core(s, p) {
            return precondition(format!("{name} {s} is not a {p}-core"));
        }
    }
    if !gamma.contains(rho) {
        return precondition(format!("{rho} is not contained in {gamma}"));
    }
    let size = k_bounded_hooks(gamma, k)? - k_bounded_hooks(rho, k)?;
    if alpha.iter().sum::<usize>() != size {
        return precondition(format!(
            "weight sums to {} but the shape has {size} {k}-bounded hooks",
            alpha.iter().sum::<usize>()
        ));
    }
    let mut chains = Vec::new();
    let mut chain = vec![rho.parts().to_vec()];
    chain_search(gamma.parts(), p, alpha, &mut chain, &mut chains);
    let mut out = Vec::with_capacity(chains.len());
    for chain in chains {
        let rows = gamma
            .parts()
            .iter()
            .enumerate()
            .map(|(i, &len)| {
                (1..=len)
                    .map(|c| {
                        chain
                            .iter()
                            .position(|s| s.get(i).copied().unwrap_or(0) >= c)
                            .filter(|&letter| letter != 0)
                    })
                    .collect()
            })
            .collect();
        let t = KTableau {
            k,
            shape: gamma.clone(),
            inner: rho.clone(),
            weight: alpha.to_vec(),
            rows,
        };
        if cfg!(debug_assertions) {
            t.validate()?;
        }
        out.push(t);
    }
    out.sort_by_cached_key(|t| t.reading_word());
    Ok(out)
}

fn chain_search(target: &[usize], p: usize, alpha: &[usize], chain: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
    let depth = chain.len() - 1;
    if depth == alpha.len() {
        if chain.last().map(|s| s.as_slice()) == Some(target) {
            out.push(chain.clone());
        }
        return;
    }
    let mut next = Vec::new();
    strips(chain.last().unwrap(), target, p, alpha[depth], &mut next);
    for t in next {
        chain.push(t);
        chain_search(target, p, alpha, chain, out);
        chain.pop();
    }
}

fn require_bounded(lambda: &Partition, k: usize) -> Result<()> {
    if !lambda.is_k_bounded(k) {
        return precondition(format!("{lambda} is not {k}-bounded"));
    }
    Ok(())
}

/// `K^{(k)}_{μα}`: the number of k-tableaux of shape `c(μ)` and weight `α`.
pub fn count_k_tableaux(k: usize, mu: &Partition, alpha: &[usize]) -> Result<u128> {
    check_period(k)?;
    check_weight(alpha)?;
    require_bounded(mu, k)?;
    if alpha.iter().sum::<usize>() != mu.degree() {
        return precondition(format!("weight size {} differs from |{mu}|", alpha.iter().sum::<usize>()));
    }
    let k = effective_k(k, mu.main_hook());
    let core = to_core(mu, k)?.into_shape();
    let states = propagate(k, &Partition::empty(), alpha, &core)?;
    Ok(states.get(core.parts()).copied().unwrap_or(0))
}

/// `K^{(k)}_{ν/μ,α}`: fillings of `c(ν)/c(μ)` of weight `α`.
pub fn count_skew_k_tableaux(k: usize, nu: &Partition, mu: &Partition, alpha: &[usize]) -> Result<u128> {
    check_period(k)?;
    check_weight(alpha)?;
    require_bounded(nu, k)?;
    require_bounded(mu, k)?;
    if !nu.contains(mu) {
        return precondition(format!("{mu} is not contained in {nu}"));
    }
    if alpha.iter().sum::<usize>() + mu.degree() != nu.degree() {
        return precondition(format!(
            "weight size {} differs from |{nu}| - |{mu}|",
            alpha.iter().sum::<usize>()
        ));
    }
    core_skew_count(k, nu, mu, alpha)
}

/// Skew count defined through core containment only; zero when `c(μ) ⊄ c(ν)`.
pub(crate) fn core_skew_count(k: usize, nu: &Partition, mu: &Partition, alpha: &[usize]) -> Result<u128> {
    let k = effective_k(k, nu.main_hook());
    let outer = to_core(nu, k)?.into_shape();
    let inner = to_core(mu, k)?.into_shape();
    let states = propagate(k, &inner, alpha, &outer)?;
    Ok(states.get(outer.parts()).copied().unwrap_or(0))
}

/// Standard k-tableaux of shape `c(μ)`.
pub fn count_standard(k: usize, mu: &Partition) -> Result<u128> {
    count_k_tableaux(k, mu, &vec![1; mu.degree()])
}

/// All k-bounded `ν` of degree `n` with their cores, and the union of those
/// cores (the smallest shape every chain must stay inside).
#[derive(Debug, Clone)]
pub struct TargetTable {
    pub(crate) k: usize,
    pub(crate) degree: usize,
    pub(crate) entries: Vec<(Partition, Partition)>,
    pub(crate) bound: Partition,
}

impl TargetTable {
    pub fn new(k: usize, degree: usize) -> Result<Self> {
        check_period(k)?;
        let mut entries = Vec::new();
        for nu in enumerate_bounded(degree, k) {
            let core = to_core(&nu, k)?.into_shape();
            entries.push((nu, core));
        }
        Ok(TargetTable::from_entries(k, degree, entries))
    }

    /// Table over a chosen subset of `(ν, c(ν))` pairs.
    pub(crate) fn from_entries(k: usize, degree: usize, entries: Vec<(Partition, Partition)>) -> Self {
        let mut bound: Vec<usize> = Vec::new();
        for (_, core) in &entries {
            for (i, &x) in core.parts().iter().enumerate() {
                if i == bound.len() {
                    bound.push(x);
                } else if bound[i] < x {
                    bound[i] = x;
                }
            }
        }
        TargetTable {
            k,
            degree,
            entries,
            bound: Partition::from_multiset(bound),
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// `(ν, c(ν))` pairs in descending lexicographic order of `ν`.
    pub fn entries(&self) -> &[(Partition, Partition)] {
        &self.entries
    }

    /// Counts of fillings from `c(μ)` by weight `α` for every target `ν` in
    /// one pass, aligned with `entries()`.
    pub fn column(&self, mu: &Partition, alpha: &[usize]) -> Result<Vec<u128>> {
        check_weight(alpha)?;
        if mu.degree() + alpha.iter().sum::<usize>() != self.degree {
            return internal(format!(
                "column from {mu} with weight of size {} does not reach degree {}",
                alpha.iter().sum::<usize>(),
                self.degree
            ));
        }
        let start = to_core(mu, self.k)?.into_shape();
        let states = propagate(self.k, &start, alpha, &self.bound)?;
        let col = self
            .entries
            .iter()
            .map(|(_, core)| states.get(core.parts()).copied().unwrap_or(0))
            .collect();
        Ok(col)
    }
}

/// Whether every letter-prefix shape of `t` is a `(k+1)`-core. Not required
/// by the definition; observed by tests.
pub fn prefix_cores_hold(t: &KTableau) -> bool {
    t.prefix_shapes().iter().all(|s| is_p_core(s, t.k + 1))
}
