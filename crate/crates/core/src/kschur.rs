//! k-Kostka matrices, k-Schur functions in the h basis, the k-Pieri rule and
//! k-Littlewood-Richardson coefficients.

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::cache;
use crate::context::{Context, Scope};
use crate::cores::k_conjugate;
use crate::error::{internal, precondition, Error, Result};
use crate::ktableaux::effective_k;
use crate::matrix::{is_identity, multiply, unitriangular_inverse, Matrix};
use crate::partition::{enumerate_bounded, is_horizontal_strip, is_vertical_strip, Partition};
use crate::symfunc::{h_index_product, Basis, SymPoly};

/// Largest joint degree at which `klr` re-derives its answer by multiplying
/// h-expansions.
pub const H_ROUTE_GUARD_DEGREE: usize = 10;

/// `K^{(k)}` and its inverse over the k-bounded partitions of one degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KostkaMatrix {
    k: usize,
    degree: usize,
    index: Vec<Partition>,
    position: HashMap<Partition, usize>,
    forward: Matrix,
    inverse: Matrix,
}

/// Number of partitions of `n` with parts at most `k`.
fn count_bounded(n: usize, k: usize) -> u128 {
    let mut ways = vec![0u128; n + 1];
    ways[0] = 1;
    for part in 1..=k.min(n) {
        for total in part..=n {
            ways[total] = ways[total].saturating_add(ways[total - part]);
        }
    }
    ways[n]
}

impl KostkaMatrix {
    /// Assembles a matrix from stored parts, checking that the index is
    /// exactly the k-bounded partitions in descending lexicographic order,
    /// that `forward` is unitriangular and that `inverse` inverts it.
    pub fn from_parts(k: usize, degree: usize, index: Vec<Partition>, forward: Matrix, inverse: Matrix) -> Result<Self> {
        if k == 0 || k >= 128 || degree > 200 {
            return precondition(format!("unsupported Kostka parameters k={k}, degree={degree}"));
        }
        if count_bounded(degree, k) != index.len() as u128 {
            return precondition(format!("index has {} entries, expected {}", index.len(), count_bounded(degree, k)));
        }
        for (i, lambda) in index.iter().enumerate() {
            if lambda.degree() != degree || !lambda.is_k_bounded(k) {
                return precondition(format!("index entry {lambda} is not a {k}-bounded partition of {degree}"));
            }
            if i > 0 && index[i - 1] <= *lambda {
                return precondition("index is not in strictly descending lexicographic order");
            }
        }
        let n = index.len();
        if forward.len() != n || inverse.len() != n || forward.iter().chain(&inverse).any(|r| r.len() != n) {
            return precondition("matrix shape does not match the index");
        }
        for (i, row) in forward.iter().enumerate() {
            if !row[i].is_one() || row[..i].iter().any(|x| !x.is_zero()) {
                return precondition(format!("forward matrix is not unitriangular at row {i}"));
            }
        }
        if !is_identity(&multiply(&forward, &inverse)) {
            return precondition("inverse does not invert the forward matrix");
        }
        let position = index.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        Ok(KostkaMatrix {
            k,
            degree,
            index,
            position,
            forward,
            inverse,
        })
    }

    /// The bound actually used; requests with `k ≥ degree` are served by the
    /// `k = degree` matrix, which has the same index and entries.
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn index(&self) -> &[Partition] {
        &self.index
    }

    pub fn position(&self, lambda: &Partition) -> Option<usize> {
        self.position.get(lambda).copied()
    }

    /// `forward[μ][λ] = K^{(k)}_{μλ}`.
    pub fn forward(&self) -> &Matrix {
        &self.forward
    }

    /// `inverse[μ][λ] = K̄^{(k)}_{μλ}`.
    pub fn inverse(&self) -> &Matrix {
        &self.inverse
    }

    fn locate(&self, lambda: &Partition) -> Result<usize> {
        self.position(lambda).ok_or_else(|| {
            Error::Precondition(format!("{lambda} is not a {}-bounded partition of {}", self.k, self.degree))
        })
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

/// `H^{(k)}_{ν,ℓ}`: the `λ` with `λ/ν` a horizontal `ℓ`-strip and
/// `λ^{ω_k}/ν^{ω_k}` a vertical `ℓ`-strip, in descending lexicographic order.
pub fn k_pieri_set(nu: &Partition, l: usize, k: usize) -> Result<Vec<Partition>> {
    require_bounded(nu, k)?;
    if l == 0 || l > k {
        return precondition(format!("need 1 <= l <= k, got l={l}, k={k}"));
    }
    let nu_conj = k_conjugate(nu, k)?;
    let mut out = Vec::new();
    for lambda in enumerate_bounded(nu.degree() + l, k) {
        if is_horizontal_strip(&lambda, nu) && is_vertical_strip(&k_conjugate(&lambda, k)?, &nu_conj) {
            out.push(lambda);
        }
    }
    Ok(out)
}

impl Context {
    /// The k-Kostka matrix of degree `n`, from memory, the disk cache, or
    /// computed (and then cached).
    pub fn kostka_matrix(&self, k: usize, n: usize) -> Result<Arc<KostkaMatrix>> {
        if k == 0 {
            return precondition("k must be at least 1");
        }
        let k = effective_k(k, n);
        self.kostka.get_or_compute(&(k, n), || {
            if let Some(dir) = self.cache_dir() {
                if let Some(m) = cache::load(dir, k, n) {
                    return Ok(m);
                }
            }
            let m = self.compute_kostka(k, n)?;
            if let Some(dir) = self.cache_dir() {
                // the cache is an accelerator only; a failed write is not an error
                let _ = cache::store(dir, &m);
            }
            Ok(m)
        })
    }

    fn compute_kostka(&self, k: usize, n: usize) -> Result<KostkaMatrix> {
        let table = self.targets(k, n, Scope::All)?;
        let index: Vec<Partition> = table.entries().iter().map(|(nu, _)| nu.clone()).collect();
        let size = index.len();
        let mut forward = vec![vec![BigInt::zero(); size]; size];
        for (j, lambda) in index.iter().enumerate() {
            let col = table.column(&Partition::empty(), lambda.parts())?;
            for (i, c) in col.into_iter().enumerate() {
                forward[i][j] = BigInt::from(c);
            }
        }
        let inverse = unitriangular_inverse(&forward, &format!("{k}-Kostka matrix of degree {n}"))?;
        KostkaMatrix::from_parts(k, n, index, forward, inverse).map_err(|e| Error::Internal(e.to_string()))
    }

    /// `s^{(k)}_λ = Σ_μ K̄^{(k)}_{μλ} h_μ`.
    pub fn kschur_in_h(&self, lambda: &Partition, k: usize) -> Result<SymPoly> {
        require_bounded(lambda, k)?;
        let m = self.kostka_matrix(k, lambda.degree())?;
        let j = m.locate(lambda)?;
        let mut f = SymPoly::zero(Basis::H, lambda.degree());
        for (i, mu) in m.index.iter().enumerate() {
            f.add_unchecked(mu.clone(), m.inverse[i][j].clone());
        }
        Ok(f)
    }

    /// `h_λ = Σ_μ K^{(k)}_{μλ} s^{(k)}_μ`.
    pub fn h_in_kschur(&self, lambda: &Partition, k: usize) -> Result<SymPoly> {
        require_bounded(lambda, k)?;
        let m = self.kostka_matrix(k, lambda.degree())?;
        let j = m.locate(lambda)?;
        let mut f = SymPoly::zero(Basis::KSchur(k), lambda.degree());
        for (i, mu) in m.index.iter().enumerate() {
            f.add_unchecked(mu.clone(), m.forward[i][j].clone());
        }
        Ok(f)
    }

    /// Re-expresses an h-expansion with k-bounded indices in the k-Schur basis.
    pub fn h_to_kschur(&self, f: &SymPoly, k: usize) -> Result<SymPoly> {
        if f.basis() != Basis::H {
            return precondition(format!("expected an h-expansion, got basis {}", f.basis()));
        }
        let m = self.kostka_matrix(k, f.degree())?;
        let mut out = SymPoly::zero(Basis::KSchur(k), f.degree());
        for (gamma, c) in f.terms() {
            let j = m.locate(gamma)?;
            for (i, nu) in m.index.iter().enumerate() {
                let x = &m.forward[i][j];
                if !x.is_zero() {
                    out.add_unchecked(nu.clone(), x * c);
                }
            }
        }
        Ok(out)
    }

    /// Re-expresses a k-Schur expansion in the h basis.
    pub fn kschur_to_h(&self, f: &SymPoly) -> Result<SymPoly> {
        let Basis::KSchur(k) = f.basis() else {
            return precondition(format!("expected a k-Schur expansion, got basis {}", f.basis()));
        };
        let m = self.kostka_matrix(k, f.degree())?;
        let mut out = SymPoly::zero(Basis::H, f.degree());
        for (lambda, c) in f.terms() {
            let j = m.locate(lambda)?;
            for (i, mu) in m.index.iter().enumerate() {
                let x = &m.inverse[i][j];
                if !x.is_zero() {
                    out.add_unchecked(mu.clone(), x * c);
                }
            }
        }
        Ok(out)
    }

    /// `h_λ s^{(k)}_μ = Σ_ν K^{(k)}_{ν/μ,λ} s^{(k)}_ν`.
    pub fn h_times_kschur(&self, lambda: &Partition, mu: &Partition, k: usize) -> Result<SymPoly> {
        require_bounded(lambda, k)?;
        require_bounded(mu, k)?;
        let degree = lambda.degree() + mu.degree();
        let ke = effective_k(k, degree);
        let table = self.targets(ke, degree, Scope::All)?;
        let col = self.skew_column(ke, Scope::All, mu, lambda.parts())?;
        let mut f = SymPoly::zero(Basis::KSchur(k), degree);
        for ((nu, _), c) in table.entries().iter().zip(col.iter()) {
            f.add_unchecked(nu.clone(), BigInt::from(*c));
        }
        Ok(f)
    }

    /// `s^{(k)}_λ s^{(k)}_μ = Σ_ν c^{ν,k}_{λμ} s^{(k)}_ν`, by
    /// `c^{ν,k}_{λμ} = Σ_α K̄^{(k)}_{αλ} K^{(k)}_{ν/μ,α}`. Up to joint degree
    /// [`H_ROUTE_GUARD_DEGREE`] the product is recomputed from h-expansions
    /// and any disagreement is an internal error.
    pub fn klr(&self, lambda: &Partition, mu: &Partition, k: usize) -> Result<SymPoly> {
        let f = self.klr_in_scope(lambda, mu, k, Scope::All)?;
        if lambda.degree() + mu.degree() <= H_ROUTE_GUARD_DEGREE {
            let g = self.klr_h_route(lambda, mu, k)?;
            if f != g {
                return internal(format!("k-LR routes disagree for {lambda} x {mu}, k={k}: {f} vs {g}"));
            }
        }
        Ok(f)
    }

    /// The skew-count formula restricted to the final shapes in `scope`.
    pub fn klr_in_scope(&self, lambda: &Partition, mu: &Partition, k: usize, scope: Scope) -> Result<SymPoly> {
        require_bounded(lambda, k)?;
        require_bounded(mu, k)?;
        let degree = lambda.degree() + mu.degree();
        let ke = effective_k(k, degree);
        let kl = self.kostka_matrix(ke, lambda.degree())?;
        let j = kl.locate(lambda)?;
        let table = self.targets(ke, degree, scope)?;
        let mut acc = vec![BigInt::zero(); table.entries().len()];
        for (i, alpha) in kl.index.iter().enumerate() {
            let c = &kl.inverse[i][j];
            if c.is_zero() {
                continue;
            }
            let col = self.skew_column(ke, scope, mu, alpha.parts())?;
            for (slot, x) in acc.iter_mut().zip(col.iter()) {
                if *x != 0 {
                    *slot += c * BigInt::from(*x);
                }
            }
        }
        let mut f = SymPoly::zero(Basis::KSchur(k), degree);
        for ((nu, _), c) in table.entries().iter().zip(acc) {
            f.add_unchecked(nu.clone(), c);
        }
        Ok(f)
    }

    /// The product recomputed as `Σ K̄_{αλ} K̄_{βμ} h_{α∪β}` and converted back
    /// to the k-Schur basis.
    pub fn klr_h_route(&self, lambda: &Partition, mu: &Partition, k: usize) -> Result<SymPoly> {
        let a = self.kschur_in_h(lambda, k)?;
        let b = self.kschur_in_h(mu, k)?;
        let mut prod = SymPoly::zero(Basis::H, a.degree() + b.degree());
        for (alpha, x) in a.terms() {
            for (beta, y) in b.terms() {
                prod.add_unchecked(h_index_product(alpha, beta), x * y);
            }
        }
        self.h_to_kschur(&prod, k)
    }
}

/// Replaces every index of a k-Schur (or dual k-Schur) expansion by its
/// k-conjugate.
pub fn omega_reindex(f: &SymPoly) -> Result<SymPoly> {
    let Some(k) = f.basis().bound() else {
        return precondition(format!("basis {} has no k to conjugate with", f.basis()));
    };
    let mut out = SymPoly::zero(f.basis(), f.degree());
    for (lambda, c) in f.terms() {
        out.add_unchecked(k_conjugate(lambda, k)?, c.clone());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::compositions;
    use crate::symfunc::{classical_lr, convert};

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn small_matrices() {
        let ctx = Context::new();
        for k in 1..=4 {
            let m = ctx.kostka_matrix(k, 0).unwrap();
            assert_eq!(m.index(), &[p(&[])]);
            assert!(is_identity(m.forward()));
        }
        for n in 0..=6 {
            let m = ctx.kostka_matrix(1, n).unwrap();
            assert_eq!(m.index().len(), 1);
            assert!(is_identity(m.forward()));
        }
        let m = ctx.kostka_matrix(2, 4).unwrap();
        assert_eq!(m.index(), &[p(&[2, 2]), p(&[2, 1, 1]), p(&[1, 1, 1, 1])]);
        assert!(is_identity(&multiply(m.forward(), m.inverse())));
        assert_eq!(count_bounded(4, 2), 3);
        assert_eq!(count_bounded(10, 10), 42);
    }

    #[test]
    fn large_k_is_classical() {
        let ctx = Context::new();
        for n in 0..=7 {
            for lam in enumerate_bounded(n, n.max(1)) {
                for k in [lam.main_hook().max(1), 9] {
                    let expected = convert(&SymPoly::basis_element(Basis::S, &lam).unwrap(), Basis::H).unwrap();
                    assert_eq!(ctx.kschur_in_h(&lam, k).unwrap(), expected, "{lam} k={k}");
                }
            }
        }
        let f = ctx.kschur_in_h(&p(&[1, 1, 1]), 1).unwrap();
        assert_eq!(f.to_string(), "h: { [1,1,1]: 1 }");
    }

    #[test]
    fn h_and_kschur_round_trip() {
        let ctx = Context::new();
        for k in 1..=3 {
            for n in 0..=6 {
                for lam in enumerate_bounded(n, k) {
                    let h = ctx.h_in_kschur(&lam, k).unwrap();
                    assert_eq!(h.coeff(&lam), BigInt::one());
                    let back = ctx.kschur_to_h(&h).unwrap();
                    assert_eq!(back, SymPoly::basis_element(Basis::H, &lam).unwrap());
                    let s = ctx.kschur_in_h(&lam, k).unwrap();
                    assert_eq!(s.coeff(&lam), BigInt::one());
                    assert_eq!(ctx.h_to_kschur(&s, k).unwrap(), SymPoly::basis_element(Basis::KSchur(k), &lam).unwrap());
                }
            }
        }
        assert_eq!(ctx.h_in_kschur(&p(&[1]), 3).unwrap().to_string(), "kschur(3): { [1]: 1 }");
    }

    #[test]
    fn pieri_sets() {
        assert_eq!(k_pieri_set(&p(&[]), 1, 3).unwrap(), vec![p(&[1])]);
        assert_eq!(k_pieri_set(&p(&[1]), 1, 2).unwrap(), vec![p(&[2]), p(&[1, 1])]);
        assert!(k_pieri_set(&p(&[1]), 3, 2).is_err());
        for k in 1..=4 {
            for n in 0..=5 {
                for nu in enumerate_bounded(n, k) {
                    for l in nu.first().max(1)..=k {
                        let head = Partition::from_multiset([vec![l], nu.parts().to_vec()].concat());
                        assert!(k_pieri_set(&nu, l, k).unwrap().contains(&head));
                    }
                }
            }
        }
    }

    #[test]
    fn pieri_matches_skew_counts() {
        let ctx = Context::new();
        for k in 1..=4 {
            for n in 0..=6 {
                for nu in enumerate_bounded(n, k) {
                    for l in 1..=k {
                        let f = ctx.h_times_kschur(&p(&[l]), &nu, k).unwrap();
                        let mut g = SymPoly::zero(Basis::KSchur(k), n + l);
                        for lam in k_pieri_set(&nu, l, k).unwrap() {
                            g.insert(lam, BigInt::one()).unwrap();
                        }
                        assert_eq!(f, g, "k={k} nu={nu} l={l}");
                    }
                }
            }
        }
    }

    #[test]
    fn h_times_kschur_examples() {
        let ctx = Context::new();
        let f = ctx.h_times_kschur(&p(&[1]), &p(&[1]), 2).unwrap();
        assert_eq!(f.to_string(), "kschur(2): { [2]: 1, [1,1]: 1 }");
        for k in 1..=3 {
            for lam in enumerate_bounded(4, k) {
                assert_eq!(ctx.h_times_kschur(&lam, &p(&[]), k).unwrap(), ctx.h_in_kschur(&lam, k).unwrap());
            }
        }
    }

    #[test]
    fn klr_examples_and_routes() {
        let ctx = Context::new();
        assert_eq!(ctx.klr(&p(&[1]), &p(&[1]), 2).unwrap().to_string(), "kschur(2): { [2]: 1, [1,1]: 1 }");
        for k in 1..=3 {
            for n in 0..=7 {
                for a in 0..=n {
                    for lam in enumerate_bounded(a, k) {
                        for mu in enumerate_bounded(n - a, k) {
                            let f = ctx.klr_in_scope(&lam, &mu, k, Scope::All).unwrap();
                            assert_eq!(f, ctx.klr_h_route(&lam, &mu, k).unwrap());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn klr_degenerates_to_lr() {
        let ctx = Context::new();
        for n in 0..=8 {
            for a in 0..=n {
                for lam in enumerate_bounded(a, a.max(1)) {
                    for mu in enumerate_bounded(n - a, (n - a).max(1)) {
                        let f = ctx.klr(&lam, &mu, n.max(1)).unwrap();
                        let g = classical_lr(&lam, &mu).unwrap();
                        assert_eq!(f.terms(), g.terms());
                    }
                }
            }
        }
    }

    #[test]
    fn omega_symmetry_small() {
        let ctx = Context::new();
        for k in 1..=3 {
            for n in 0..=6 {
                for a in 0..=n {
                    for lam in enumerate_bounded(a, k) {
                        for mu in enumerate_bounded(n - a, k) {
                            let f = ctx.klr(&lam, &mu, k).unwrap();
                            let lw = k_conjugate(&lam, k).unwrap();
                            let mw = k_conjugate(&mu, k).unwrap();
                            let g = ctx.klr(&lw, &mw, k).unwrap();
                            assert_eq!(omega_reindex(&f).unwrap(), g);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn unitriangular_columns_for_all_weights() {
        let ctx = Context::new();
        for k in 1..=3 {
            for n in 0..=6 {
                let m = ctx.kostka_matrix(k, n).unwrap();
                for alpha in compositions(n) {
                    let sorted = Partition::from_multiset(alpha.clone());
                    if !sorted.is_k_bounded(k) {
                        continue;
                    }
                    let j = m.position(&sorted).unwrap();
                    for (i, mu) in m.index().iter().enumerate() {
                        let c = crate::ktableaux::count_k_tableaux(k, mu, &alpha).unwrap();
                        assert_eq!(BigInt::from(c), m.forward()[i][j]);
                    }
                }
            }
        }
    }

    #[test]
    fn disk_cache_round_trip_and_corruption() {
        let dir = tempfile::tempdir().unwrap();
        let ctx = Context::with_cache_dir(dir.path());
        let m = ctx.kostka_matrix(3, 6).unwrap();
        let path = cache::file_path(dir.path(), 3, 6);
        assert!(path.exists());
        let loaded = cache::load(dir.path(), 3, 6).unwrap();
        assert_eq!(&loaded, m.as_ref());
        // a flipped digit breaks the checksum; a fresh context recomputes and rewrites
        let text = std::fs::read_to_string(&path).unwrap();
        let corrupted = text.replacen("\"forward\":[1", "\"forward\":[2", 1);
        assert_ne!(corrupted, text);
        std::fs::write(&path, &corrupted).unwrap();
        assert!(cache::decode(&corrupted).is_err());
        let again = Context::with_cache_dir(dir.path()).kostka_matrix(3, 6).unwrap();
        assert_eq!(again.as_ref(), m.as_ref());
        assert_eq!(std::fs::read_to_string(&path).unwrap(), text);
        assert_eq!(cache::stats(dir.path()).unwrap().files, 1);
        assert_eq!(cache::clear(dir.path()).unwrap(), 1);
        assert_eq!(cache::stats(dir.path()).unwrap().files, 0);
    }

    #[test]
    fn concurrent_requests_share_one_matrix() {
        let ctx = Context::new();
        let ms: Vec<Arc<KostkaMatrix>> = std::thread::scope(|s| {
            let handles: Vec<_> = (0..4).map(|_| s.spawn(|| ctx.kostka_matrix(3, 7).unwrap())).collect();
            handles.into_iter().map(|h| h.join().unwrap()).collect()
        });
        for m in &ms[1..] {
            assert!(Arc::ptr_eq(m, &ms[0]));
        }
    }
}
