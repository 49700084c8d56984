//! Cores, residues, rim hooks and the bijection between `(k+1)`-cores and
//! `k`-bounded partitions.
//!
//! Rim hooks are handled on the beta-set (abacus) encoding of a partition:
//! with `L` rows, row `i` is the bead `λ_i + L - i`. Removing an `n`-rim hook
//! is sliding one bead down by `n` into a gap; adding one slides a bead up.
//! Connectedness and the absence of 2×2 blocks come for free.

use crate::error::{internal, precondition, Error, Result};
use crate::partition::{in_pi, in_rectangle, Cell, Partition, SkewShape};

/// `(col - row) mod p`.
pub fn residue(cell: Cell, p: usize) -> usize {
    assert!(p >= 1, "residue period must be positive");
    let d = cell.col as i64 - cell.row as i64;
    d.rem_euclid(p as i64) as usize
}

/// True iff no cell of `lambda` has hook length exactly `p`.
pub fn is_p_core(lambda: &Partition, p: usize) -> bool {
    lambda.cells().all(|c| lambda.hook(c) != Some(p))
}

/// A partition certified to be a `period`-core.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CoreShape {
    shape: Partition,
    period: usize,
}

impl CoreShape {
    pub fn new(shape: Partition, period: usize) -> Result<Self> {
        if period < 2 {
            return precondition(format!("core period must be at least 2, got {period}"));
        }
        if !is_p_core(&shape, period) {
            return precondition(format!("{shape} is not a {period}-core"));
        }
        Ok(CoreShape { shape, period })
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn period(&self) -> usize {
        self.period
    }

    pub fn into_shape(self) -> Partition {
        self.shape
    }
}

/// Outcome of stripping all `n`-rim hooks from a partition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RimHookRecord {
    pub removed_shape: Partition,
    pub hooks_removed: usize,
    pub widths: Vec<usize>,
}

/// `d·(l - 1) - Σ widths`.
pub fn epsilon(rec: &RimHookRecord, l: usize) -> i64 {
    let total: usize = rec.widths.iter().sum();
    rec.hooks_removed as i64 * (l as i64 - 1) - total as i64
}

fn beads(lambda: &Partition, rows: usize) -> Vec<usize> {
    (1..=rows).map(|i| lambda.row(i) + rows - i).collect()
}

fn from_beads(mut beads: Vec<usize>) -> Partition {
    beads.sort_unstable_by(|a, b| b.cmp(a));
    let rows = beads.len();
    let parts = beads
        .iter()
        .enumerate()
        .map(|(i, &b)| b - (rows - 1 - i))
        .collect();
    Partition::from_parts_unchecked(parts)
}

/// Columns spanned by `big / small`, minus one.
fn strip_width(big: &Partition, small: &Partition) -> usize {
    let mut lo = usize::MAX;
    let mut hi = 0;
    for r in 1..=big.len() {
        let (a, b) = (small.row(r), big.row(r));
        if b > a {
            lo = lo.min(a + 1);
            hi = hi.max(b);
        }
    }
    if hi == 0 {
        0
    } else {
        hi - lo
    }
}

/// Removes the `n`-rim hook whose lowest row is `row`, i.e. the rim hook of
/// the cell in that row with hook length `n`. Returns the smaller partition
/// and the width of the removed hook, or `None` when no such hook exists.
pub fn remove_one_rim_hook(lambda: &Partition, n: usize, row: usize) -> Option<(Partition, usize)> {
    assert!(n >= 2, "rim hook size must be at least 2");
    if row == 0 || row > lambda.len() {
        return None;
    }
    let rows = lambda.len();
    let mut bs = beads(lambda, rows);
    let b = bs[row - 1];
    if b < n || bs.contains(&(b - n)) {
        return None;
    }
    bs[row - 1] = b - n;
    let mu = from_beads(bs);
    let w = strip_width(lambda, &mu);
    Some((mu, w))
}

/// Every removable `n`-rim hook, as `(remaining shape, width)`, ordered by the
/// lowest row of the hook.
pub fn removable_rim_hooks(lambda: &Partition, n: usize) -> Vec<(Partition, usize)> {
    (1..=lambda.len())
        .filter_map(|r| remove_one_rim_hook(lambda, n, r))
        .collect()
}

/// Every way of adding an `n`-rim hook, as `(larger shape, width)`.
pub fn addable_rim_hooks(lambda: &Partition, n: usize) -> Vec<(Partition, usize)> {
    assert!(n >= 2, "rim hook size must be at least 2");
    let rows = lambda.len() + n;
    let bs = beads(lambda, rows);
    let mut out = Vec::new();
    for i in 0..rows {
        let target = bs[i] + n;
        if bs.contains(&target) {
            continue;
        }
        let mut moved = bs.clone();
        moved[i] = target;
        let mu = from_beads(moved);
        let w = strip_width(&mu, lambda);
        out.push((mu, w));
    }
    out
}

/// Strips `n`-rim hooks until none remain.
///
/// The core and the number of hooks do not depend on the order of removal,
/// but the widths do (only their parity is fixed). A hook through the first
/// column is taken whenever one exists, so on `Π^{ℓn}` this follows `rim_down`
/// and every width is `ℓ-1`; otherwise the hook with the lowest row is taken.
pub fn n_core(lambda: &Partition, n: usize) -> RimHookRecord {
    let mut shape = lambda.clone();
    let mut widths = Vec::new();
    loop {
        let options = removable_rim_hooks(&shape, n);
        let pick = options
            .iter()
            .position(|(mu, _)| mu.len() < shape.len())
            .unwrap_or(0);
        let Some((next, w)) = options.into_iter().nth(pick) else {
            break;
        };
        widths.push(w);
        shape = next;
    }
    RimHookRecord {
        removed_shape: shape,
        hooks_removed: widths.len(),
        widths,
    }
}

fn require_bounded(lambda: &Partition, k: usize) -> Result<()> {
    if k == 0 {
        return precondition("k must be at least 1");
    }
    if !lambda.is_k_bounded(k) {
        return precondition(format!("{lambda} is not {k}-bounded"));
    }
    Ok(())
}

/// The skew diagram whose rows have the lengths of `lambda`, with every cell
/// hook at most `k` and every square below it hook above `k`.
///
/// Rows are placed from the top (shortest) row downwards, each slid as far
/// left as it can go without creating a hook longer than `k`. The three
/// defining conditions are re-checked on the result.
pub fn k_skew(lambda: &Partition, k: usize) -> Result<SkewShape> {
    require_bounded(lambda, k)?;
    let rows = lambda.len();
    let mut offsets = vec![0usize; rows];
    for i in (0..rows).rev() {
        let len = lambda.parts()[i];
        let mut s = if i + 1 < rows { offsets[i + 1] } else { 0 };
        loop {
            let fits = (s + 1..=s + len).all(|j| {
                let arm = s + len - j;
                let leg = (i + 1..rows)
                    .filter(|&r| offsets[r] < j && j <= offsets[r] + lambda.parts()[r])
                    .count();
                arm + leg < k
            });
            if fits {
                break;
            }
            s += 1;
        }
        offsets[i] = s;
    }
    let outer = Partition::new(
        offsets
            .iter()
            .zip(lambda.parts())
            .map(|(o, l)| o + l)
            .collect(),
    )
    .map_err(|e| Error::Internal(format!("k-skew outer shape: {e}")))?;
    let inner = Partition::new(offsets)
        .map_err(|e| Error::Internal(format!("k-skew inner shape: {e}")))?;
    let skew = SkewShape::new(outer, inner)?;
    verify_k_skew(&skew, lambda, k)?;
    Ok(skew)
}

fn verify_k_skew(skew: &SkewShape, lambda: &Partition, k: usize) -> Result<()> {
    for r in 1..=lambda.len() {
        if skew.outer().row(r) - skew.inner().row(r) != lambda.row(r) {
            return internal(format!("k-skew of {lambda}: row {r} has the wrong length"));
        }
    }
    for cell in skew.outer().cells() {
        let h = skew.hook_length(cell)?;
        let in_skew = skew.contains_cell(cell);
        if in_skew && h > k {
            return internal(format!(
                "k-skew of {lambda}: cell ({},{}) has hook {h} > {k}",
                cell.row, cell.col
            ));
        }
        if !in_skew && h <= k {
            return internal(format!(
                "k-skew of {lambda}: square ({},{}) below the diagram has hook {h} <= {k}",
                cell.row, cell.col
            ));
        }
    }
    Ok(())
}

/// The `(k+1)`-core attached to a `k`-bounded partition.
pub fn to_core(lambda: &Partition, k: usize) -> Result<CoreShape> {
    let skew = k_skew(lambda, k)?;
    let outer = skew.outer().clone();
    if !is_p_core(&outer, k.saturating_add(1)) {
        return internal(format!("outer shape {outer} of the {k}-skew of {lambda} is not a core"));
    }
    Ok(CoreShape {
        shape: outer,
        period: k.saturating_add(1),
    })
}

/// Row `i` of the result counts the cells of row `i` of `gamma` whose hook is
/// at most `k`.
pub fn from_core(gamma: &Partition, k: usize) -> Result<Partition> {
    if k == 0 {
        return precondition("k must be at least 1");
    }
    if !is_p_core(gamma, k.saturating_add(1)) {
        return precondition(format!("{gamma} is not a {}-core", k.saturating_add(1)));
    }
    Ok(bounded_hook_rows(gamma, k))
}

fn bounded_hook_rows(gamma: &Partition, k: usize) -> Partition {
    let mut parts = Vec::with_capacity(gamma.len());
    for r in 1..=gamma.len() {
        let count = (1..=gamma.row(r))
            .filter(|&c| gamma.hook(Cell::new(r, c)).unwrap() <= k)
            .count();
        parts.push(count);
    }
    Partition::from_multiset(parts)
}

/// Number of cells of a `(k+1)`-core with hook length at most `k`.
pub fn k_bounded_hooks(gamma: &Partition, k: usize) -> Result<usize> {
    from_core(gamma, k).map(|p| p.degree())
}

/// `c⁻¹(c(λ)')`.
pub fn k_conjugate(lambda: &Partition, k: usize) -> Result<Partition> {
    let core = to_core(lambda, k)?;
    from_core(&core.shape.conjugate(), k)
}

/// Adds the `n`-rim hook that starts in column `l` and ends in column 1.
pub fn rim_up(lambda: &Partition, l: usize, n: usize) -> Result<Partition> {
    if !in_pi(lambda, l, n)? {
        return precondition(format!("{lambda} is not in Pi({l},{n})"));
    }
    let candidates: Vec<Partition> = addable_rim_hooks(lambda, n)
        .into_iter()
        .filter(|(mu, w)| *w == l - 1 && leftmost_added_column(mu, lambda) == 1)
        .map(|(mu, _)| mu)
        .collect();
    match candidates.as_slice() {
        [mu] => {
            if !in_pi(mu, l, n)? {
                return internal(format!("rim_up({lambda}) = {mu} left Pi({l},{n})"));
            }
            Ok(mu.clone())
        }
        [] => internal(format!("no {n}-rim hook from column {l} to column 1 on {lambda}")),
        _ => internal(format!("several {n}-rim hooks from column {l} to column 1 on {lambda}")),
    }
}

fn leftmost_added_column(big: &Partition, small: &Partition) -> usize {
    (1..=big.len())
        .filter(|&r| big.row(r) > small.row(r))
        .map(|r| small.row(r) + 1)
        .min()
        .unwrap_or(0)
}

/// Removes the `n`-rim hook that contains the top cell of the first column.
pub fn rim_down(lambda: &Partition, l: usize, n: usize) -> Result<Partition> {
    if !in_pi(lambda, l, n)? {
        return precondition(format!("{lambda} is not in Pi({l},{n})"));
    }
    if is_p_core(lambda, n) {
        return precondition(format!("{lambda} is already an {n}-core"));
    }
    let top = lambda.len();
    let candidates: Vec<(Partition, usize)> = removable_rim_hooks(lambda, n)
        .into_iter()
        .filter(|(mu, _)| mu.len() < top)
        .collect();
    match candidates.as_slice() {
        [(mu, w)] => {
            if *w != l - 1 {
                return internal(format!("rim_down({lambda}) removed a hook of width {w}"));
            }
            if !in_pi(mu, l, n)? {
                return internal(format!("rim_down({lambda}) = {mu} left Pi({l},{n})"));
            }
            Ok(mu.clone())
        }
        [] => internal(format!("no {n}-rim hook through the first column of {lambda}")),
        _ => internal(format!("several {n}-rim hooks through the first column of {lambda}")),
    }
}

/// `rim_down` applied until an `n`-core is reached; returns the core and the
/// number of steps. The core is checked to lie in the rectangle.
pub fn rim_down_to_core(lambda: &Partition, l: usize, n: usize) -> Result<(Partition, usize)> {
    let mut shape = lambda.clone();
    let mut steps = 0;
    while !is_p_core(&shape, n) {
        shape = rim_down(&shape, l, n)?;
        steps += 1;
    }
    if !in_rectangle(&shape, l, n)? {
        return internal(format!("{n}-core {shape} of {lambda} is outside the rectangle"));
    }
    Ok((shape, steps))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::{enumerate_bounded, partitions_of};
    use std::collections::BTreeSet;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn residues() {
        assert_eq!(residue(Cell::new(1, 1), 5), 0);
        assert_eq!(residue(Cell::new(1, 6), 5), 0);
        assert_eq!(residue(Cell::new(6, 1), 5), 0);
        assert_eq!(residue(Cell::new(2, 1), 5), 4);
        // the residue picture of (6,4,3,1,1,1): second row reads 4 0 1 2
        let row2: Vec<usize> = (1..=4).map(|c| residue(Cell::new(2, c), 5)).collect();
        assert_eq!(row2, vec![4, 0, 1, 2]);
    }

    #[test]
    fn core_checks() {
        assert!(is_p_core(&p(&[6, 4, 3, 1, 1, 1]), 5));
        for q in 2..7 {
            assert!(!is_p_core(&p(&[q]), q));
            assert!(is_p_core(&p(&[]), q));
        }
        assert!(CoreShape::new(p(&[4]), 4).is_err());
        assert!(CoreShape::new(p(&[3, 1]), 3).is_ok());
    }

    #[test]
    fn single_rim_hook_removal() {
        assert_eq!(remove_one_rim_hook(&p(&[4]), 4, 1), Some((p(&[]), 3)));
        assert_eq!(remove_one_rim_hook(&p(&[1]), 2, 1), None);
        let (mu, w) = remove_one_rim_hook(&p(&[2, 2, 2, 1]), 4, 2).unwrap();
        assert_eq!((mu.clone(), w), (p(&[2, 1]), 1));
        // the removed cells are (4,1),(3,1),(3,2),(2,2) and include column 1
        let removed: BTreeSet<Cell> = p(&[2, 2, 2, 1])
            .cells()
            .filter(|c| !mu.contains_cell(*c))
            .collect();
        let expected: BTreeSet<Cell> = [(4, 1), (3, 1), (3, 2), (2, 2)]
            .into_iter()
            .map(|(r, c)| Cell::new(r, c))
            .collect();
        assert_eq!(removed, expected);
        assert_eq!(remove_one_rim_hook(&p(&[2, 2, 2, 1]), 4, 1), None);
    }

    #[test]
    fn n_core_examples() {
        let r = n_core(&p(&[6, 4, 3, 1, 1, 1]), 5);
        assert_eq!((r.removed_shape.clone(), r.hooks_removed), (p(&[6, 4, 3, 1, 1, 1]), 0));
        let r = n_core(&p(&[4]), 4);
        assert_eq!(r, RimHookRecord { removed_shape: p(&[]), hooks_removed: 1, widths: vec![3] });
        let r = n_core(&p(&[2, 2, 2, 1]), 4);
        assert_eq!(r, RimHookRecord { removed_shape: p(&[2, 1]), hooks_removed: 1, widths: vec![1] });
        // widths depend on the order: the first-column hook comes first here
        let r = n_core(&p(&[2, 2, 2]), 3);
        assert_eq!(r.widths, vec![1, 1]);
        assert_eq!(remove_one_rim_hook(&p(&[2, 2, 2]), 3, 1), Some((p(&[1, 1, 1]), 0)));
    }

    #[test]
    fn epsilon_examples() {
        let rec = |d, w: Vec<usize>| RimHookRecord { removed_shape: p(&[]), hooks_removed: d, widths: w };
        assert_eq!(epsilon(&rec(0, vec![]), 2), 0);
        assert_eq!(epsilon(&rec(1, vec![1]), 2), 0);
        assert_eq!(epsilon(&rec(1, vec![3]), 4), 0);
        assert_eq!(epsilon(&rec(1, vec![0]), 3), 2);
    }

    #[test]
    fn k_skew_example() {
        let skew = k_skew(&p(&[4, 3, 2, 2, 1, 1]), 4).unwrap();
        assert_eq!(skew.outer(), &p(&[9, 5, 3, 2, 1, 1]));
        assert_eq!(skew.inner(), &p(&[5, 2, 1]));
        assert!(k_skew(&p(&[5]), 4).is_err());
    }

    /// Independent construction: try every inner shape of the right row lengths
    /// in a bounded box and keep the ones satisfying the three conditions.
    fn k_skew_by_search(lambda: &Partition, k: usize) -> Vec<SkewShape> {
        let max_off = k * lambda.len();
        let mut out = Vec::new();
        fn rec(
            i: usize,
            lambda: &Partition,
            k: usize,
            max_off: usize,
            offs: &mut Vec<usize>,
            out: &mut Vec<SkewShape>,
        ) {
            if i == lambda.len() {
                let outer: Vec<usize> = offs.iter().zip(lambda.parts()).map(|(a, b)| a + b).collect();
                let (Ok(o), Ok(inn)) = (Partition::new(outer), Partition::new(offs.clone())) else {
                    return;
                };
                let Ok(s) = SkewShape::new(o, inn) else { return };
                let ok = s.outer().cells().all(|c| {
                    let h = s.hook_length(c).unwrap();
                    if s.contains_cell(c) { h <= k } else { h > k }
                });
                if ok {
                    out.push(s);
                }
                return;
            }
            let hi = if i == 0 { max_off } else { offs[i - 1] };
            for o in 0..=hi {
                offs.push(o);
                rec(i + 1, lambda, k, max_off, offs, out);
                offs.pop();
            }
        }
        rec(0, lambda, k, max_off, &mut Vec::new(), &mut out);
        out
    }

    #[test]
    fn k_skew_matches_exhaustive_search() {
        for k in 1..=4 {
            for n in 0..=7 {
                for lam in enumerate_bounded(n, k) {
                    let found = k_skew_by_search(&lam, k);
                    assert_eq!(found.len(), 1, "{lam} k={k}: {found:?}");
                    assert_eq!(found[0], k_skew(&lam, k).unwrap());
                }
            }
        }
        assert_eq!(to_core(&p(&[2, 2]), 2).unwrap().shape(), &p(&[4, 2]));
        assert_eq!(to_core(&p(&[2, 2, 2]), 2).unwrap().shape(), &p(&[6, 4, 2]));
        assert_eq!(k_skew(&p(&[2, 2, 2]), 2).unwrap().inner(), &p(&[4, 2]));
    }

    #[test]
    fn core_map_examples() {
        let lam = p(&[4, 3, 2, 2, 1, 1]);
        assert_eq!(to_core(&lam, 4).unwrap().shape(), &p(&[9, 5, 3, 2, 1, 1]));
        assert_eq!(from_core(&p(&[9, 5, 3, 2, 1, 1]), 4).unwrap(), lam);
        assert_eq!(k_bounded_hooks(&p(&[9, 5, 3, 2, 1, 1]), 4).unwrap(), 13);
        assert_eq!(k_bounded_hooks(&p(&[]), 3).unwrap(), 0);
        assert_eq!(k_bounded_hooks(&p(&[8, 5, 2, 1]), 3).unwrap(), 9);
        let back = from_core(&p(&[8, 5, 2, 1]), 3).unwrap();
        assert_eq!(back.degree(), 9);
        assert_eq!(to_core(&back, 3).unwrap().shape(), &p(&[8, 5, 2, 1]));
        assert!(from_core(&p(&[4]), 3).is_err());
        for lam in [p(&[3, 1]), p(&[2, 2]), p(&[1, 1, 1])] {
            assert_eq!(to_core(&lam, 4).unwrap().shape(), &lam);
            assert_eq!(from_core(&lam, 4).unwrap(), lam);
        }
    }

    #[test]
    fn k_conjugate_examples() {
        assert_eq!(k_conjugate(&p(&[]), 3).unwrap(), p(&[]));
        assert_eq!(k_conjugate(&p(&[3, 1]), 4).unwrap(), p(&[2, 1, 1]));
        let direct = from_core(&to_core(&p(&[2, 2, 1]), 2).unwrap().shape().conjugate(), 2).unwrap();
        assert_eq!(k_conjugate(&p(&[2, 2, 1]), 2).unwrap(), direct);
        assert_eq!(k_conjugate(&p(&[2, 1]), 2).unwrap(), p(&[1, 1, 1]));
    }

    #[test]
    fn bijection_round_trips() {
        for k in 1..=5 {
            for n in 0..=10 {
                for lam in enumerate_bounded(n, k) {
                    let core = to_core(&lam, k).unwrap();
                    assert!(is_p_core(core.shape(), k + 1));
                    assert_eq!(from_core(core.shape(), k).unwrap(), lam);
                }
            }
        }
        // every (k+1)-core with at most 10 bounded hooks comes from a partition
        for k in 1..=4 {
            for size in 0..=22 {
                for gamma in partitions_of(size) {
                    if !is_p_core(&gamma, k + 1) {
                        continue;
                    }
                    let lam = from_core(&gamma, k).unwrap();
                    if lam.degree() <= 10 {
                        assert_eq!(to_core(&lam, k).unwrap().shape(), &gamma);
                    }
                }
            }
        }
    }

    #[test]
    fn k_conjugation_is_involution() {
        for k in 1..=5 {
            for n in 0..=10 {
                for lam in enumerate_bounded(n, k) {
                    let c = k_conjugate(&lam, k).unwrap();
                    assert_eq!(c.degree(), lam.degree());
                    assert_eq!(k_conjugate(&c, k).unwrap(), lam);
                    if lam.main_hook() <= k {
                        assert_eq!(c, lam.conjugate());
                    }
                }
            }
        }
    }

    fn all_cores_by_every_order(
        lam: &Partition,
        n: usize,
        d: usize,
        width_sum: usize,
        out: &mut BTreeSet<(Partition, usize, usize)>,
    ) {
        let next = removable_rim_hooks(lam, n);
        if next.is_empty() {
            out.insert((lam.clone(), d, width_sum % 2));
            return;
        }
        for (mu, w) in next {
            all_cores_by_every_order(&mu, n, d + 1, width_sum + w, out);
        }
    }

    #[test]
    fn n_core_is_order_independent() {
        for n in 2..=5 {
            for size in 0..=12 {
                for lam in partitions_of(size) {
                    let mut seen = BTreeSet::new();
                    all_cores_by_every_order(&lam, n, 0, 0, &mut seen);
                    let rec = n_core(&lam, n);
                    assert_eq!(seen.len(), 1, "{lam} n={n}: {seen:?}");
                    let parity = rec.widths.iter().sum::<usize>() % 2;
                    assert_eq!(
                        seen.into_iter().next().unwrap(),
                        (rec.removed_shape.clone(), rec.hooks_removed, parity)
                    );
                    assert!(is_p_core(&rec.removed_shape, n));
                    assert_eq!(rec.removed_shape.degree() + n * rec.hooks_removed, lam.degree());
                }
            }
        }
    }

    #[test]
    fn rim_operators() {
        assert_eq!(rim_up(&p(&[2, 1]), 2, 4).unwrap(), p(&[2, 2, 2, 1]));
        assert_eq!(rim_down(&p(&[2, 2, 2, 1]), 2, 4).unwrap(), p(&[2, 1]));
        for (l, n) in [(2, 4), (3, 5), (1, 3), (4, 6)] {
            let mut hook = vec![l];
            hook.extend(std::iter::repeat_n(1, n - l));
            let hook = Partition::new(hook).unwrap();
            assert_eq!(rim_up(&p(&[]), l, n).unwrap(), hook);
            assert_eq!(n_core(&hook, n).removed_shape, p(&[]));
            assert_eq!(rim_down(&hook, l, n).unwrap(), p(&[]));
        }
        let sq = p(&[2, 2]);
        assert_eq!(rim_down(&rim_up(&sq, 2, 4).unwrap(), 2, 4).unwrap(), sq);
        assert!(matches!(rim_down(&p(&[2, 1]), 2, 4), Err(Error::Precondition(_))));
        assert!(matches!(rim_up(&p(&[2, 1, 1, 1]), 2, 4), Err(Error::Precondition(_))));
    }

    #[test]
    fn pi_rim_hook_properties() {
        for n in 3..=6 {
            for l in 1..n {
                for size in 0..=12 {
                    for lam in enumerate_bounded(size, l) {
                        if !in_pi(&lam, l, n).unwrap() {
                            continue;
                        }
                        let rec = n_core(&lam, n);
                        assert!(in_rectangle(&rec.removed_shape, l, n).unwrap(), "{lam}");
                        assert!(rec.widths.iter().all(|&w| w == l - 1), "{lam} {rec:?}");
                        assert_eq!(epsilon(&rec, l), 0);
                        let up = rim_up(&lam, l, n).unwrap();
                        assert_eq!(up.degree(), lam.degree() + n);
                        assert_eq!(rim_down(&up, l, n).unwrap(), lam);
                        if !is_p_core(&lam, n) {
                            let down = rim_down(&lam, l, n).unwrap();
                            assert_eq!(rim_up(&down, l, n).unwrap(), lam);
                        }
                        let (core, steps) = rim_down_to_core(&lam, l, n).unwrap();
                        assert_eq!((core, steps), (rec.removed_shape, rec.hooks_removed));
                    }
                }
            }
        }
    }
}
