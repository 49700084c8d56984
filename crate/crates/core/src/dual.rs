//! Dual k-Schur functions, their skew versions, the 𝔡 coefficients,
//! skew k-Schur functions and the coproduct / Cauchy identities.
//!
//! Dual k-Schur functions live in the quotient by the ideal spanned by the
//! `m_λ` with `λ_1 > k`; expansions here keep only k-bounded monomials, which
//! is the canonical representative.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::context::{Context, Scope};
use crate::error::{internal, precondition, Result};
use crate::ktableaux::effective_k;
use crate::partition::{enumerate_bounded, Partition};
use crate::symfunc::{coproduct_h, coproduct_m, monomial_product_coefficient, Basis, SymPoly, Tensor};

fn require_bounded(lambda: &Partition, k: usize) -> Result<()> {
    if k == 0 {
        return precondition("k must be at least 1");
    }
    if !lambda.is_k_bounded(k) {
        return precondition(format!("{lambda} is not {k}-bounded"));
    }
    Ok(())
}

fn require_skew(nu: &Partition, mu: &Partition, k: usize) -> Result<()> {
    require_bounded(nu, k)?;
    require_bounded(mu, k)?;
    if !nu.contains(mu) {
        return precondition(format!("{mu} is not contained in {nu}"));
    }
    Ok(())
}

impl Context {
    /// `𝔖^{(k)}_λ = Σ_μ K^{(k)}_{λμ} m_μ`.
    pub fn dual_kschur_in_m(&self, lambda: &Partition, k: usize) -> Result<SymPoly> {
        require_bounded(lambda, k)?;
        let m = self.kostka_matrix(k, lambda.degree())?;
        let i = m.position(lambda).expect("bounded partition is indexed");
        let mut f = SymPoly::zero(Basis::M, lambda.degree());
        for (j, mu) in m.index().iter().enumerate() {
            f.add_unchecked(mu.clone(), m.forward()[i][j].clone());
        }
        Ok(f)
    }

    /// `𝔖^{(k)}_{ν/μ} = Σ_λ K^{(k)}_{ν/μ,λ} m_λ` over k-bounded `λ`.
    pub fn skew_dual_in_m(&self, nu: &Partition, mu: &Partition, k: usize) -> Result<SymPoly> {
        require_skew(nu, mu, k)?;
        self.skew_dual_unchecked(nu, mu, k)
    }

    /// Same, without the containment requirement; counts are zero unless
    /// `c(μ) ⊆ c(ν)`.
    fn skew_dual_unchecked(&self, nu: &Partition, mu: &Partition, k: usize) -> Result<SymPoly> {
        let mut f = SymPoly::zero(Basis::M, nu.degree().saturating_sub(mu.degree()));
        if mu.degree() > nu.degree() {
            return Ok(f);
        }
        let ke = effective_k(k, nu.degree());
        let table = self.targets(ke, nu.degree(), Scope::All)?;
        let row = table
            .entries()
            .iter()
            .position(|(x, _)| x == nu)
            .expect("bounded partition is a target");
        for lambda in enumerate_bounded(nu.degree() - mu.degree(), k) {
            let col = self.skew_column(ke, Scope::All, mu, lambda.parts())?;
            f.add_unchecked(lambda, BigInt::from(col[row]));
        }
        Ok(f)
    }

    /// `𝔖^{(k)}_{ν/μ} = Σ_λ c^{ν,k}_{μλ} 𝔖^{(k)}_λ`. The right side is
    /// re-expanded in monomials and checked against [`Context::skew_dual_in_m`].
    pub fn skew_dual_in_dual(&self, nu: &Partition, mu: &Partition, k: usize) -> Result<SymPoly> {
        require_skew(nu, mu, k)?;
        let degree = nu.degree() - mu.degree();
        let mut coeffs = SymPoly::zero(Basis::DualKSchur(k), degree);
        let mut m_side = SymPoly::zero(Basis::M, degree);
        for lambda in enumerate_bounded(degree, k) {
            // c^{ν}_{μλ} = c^{ν}_{λμ}; this order reuses the columns starting at c(μ)
            let c = self.klr_in_scope(&lambda, mu, k, Scope::All)?.coeff(nu);
            if c.is_zero() {
                continue;
            }
            m_side.add_scaled(&self.dual_kschur_in_m(&lambda, k)?, &c)?;
            coeffs.add_unchecked(lambda, c);
        }
        let direct = self.skew_dual_in_m(nu, mu, k)?;
        if m_side != direct {
            return internal(format!(
                "skew dual k-Schur {nu}/{mu} (k={k}): {m_side} from the k-LR expansion, {direct} from tableaux"
            ));
        }
        Ok(coeffs)
    }

    /// `𝔡^{ν,k}_{λμ}` for all `ν`, returned as the dual k-Schur expansion of
    /// `𝔖_λ 𝔖_μ`. Computed from monomial products and from the coproduct of
    /// `s^{(k)}_ν`; the two must agree.
    pub fn d_coefficients(&self, lambda: &Partition, mu: &Partition, k: usize) -> Result<SymPoly> {
        let a = self.d_by_monomials(lambda, mu, k)?;
        let b = self.d_by_coproduct(lambda, mu, k)?;
        if a != b {
            return internal(format!(
                "d-coefficients of {lambda}, {mu} (k={k}) disagree: {a} by monomials, {b} by coproduct"
            ));
        }
        Ok(a)
    }

    /// `𝔡^ν = Σ_γ K̄_{γν} [x^γ](𝔖_λ 𝔖_μ)`.
    pub fn d_by_monomials(&self, lambda: &Partition, mu: &Partition, k: usize) -> Result<SymPoly> {
        let fa = self.dual_kschur_in_m(lambda, k)?;
        let fb = self.dual_kschur_in_m(mu, k)?;
        let degree = lambda.degree() + mu.degree();
        let m = self.kostka_matrix(k, degree)?;
        let coeffs: Vec<BigInt> = m
            .index()
            .iter()
            .map(|gamma| monomial_product_coefficient(&fa, &fb, gamma))
            .collect::<Result<_>>()?;
        let mut out = SymPoly::zero(Basis::DualKSchur(k), degree);
        for (j, nu) in m.index().iter().enumerate() {
            let mut acc = BigInt::zero();
            for (i, c) in coeffs.iter().enumerate() {
                let x = &m.inverse()[i][j];
                if !x.is_zero() && !c.is_zero() {
                    acc += x * c;
                }
            }
            out.add_unchecked(nu.clone(), acc);
        }
        Ok(out)
    }

    /// Reads `𝔡^ν_{λμ}` as the coefficient of `s_λ(x) s_μ(y)` in `s^{(k)}_ν(x,y)`.
    pub fn d_by_coproduct(&self, lambda: &Partition, mu: &Partition, k: usize) -> Result<SymPoly> {
        require_bounded(lambda, k)?;
        require_bounded(mu, k)?;
        let degree = lambda.degree() + mu.degree();
        let mut out = SymPoly::zero(Basis::DualKSchur(k), degree);
        for nu in enumerate_bounded(degree, k) {
            let t = self.kschur_coproduct(&nu, k)?;
            let c = t.get(&(lambda.clone(), mu.clone())).cloned().unwrap_or_default();
            out.add_unchecked(nu, c);
        }
        Ok(out)
    }

    /// `f(x, y)` for `f` in the h basis, with both tensor legs re-expressed
    /// in the k-Schur basis.
    fn h_coproduct_in_kschur(&self, f: &SymPoly, k: usize) -> Result<Tensor> {
        let mut out = Tensor::new();
        for ((a, b), c) in coproduct_h(f)? {
            let left = self.h_in_kschur(&a, k)?;
            let right = self.h_in_kschur(&b, k)?;
            for (x, cx) in left.terms() {
                for (y, cy) in right.terms() {
                    *out.entry((x.clone(), y.clone())).or_default() += &c * cx * cy;
                }
            }
        }
        out.retain(|_, v| !v.is_zero());
        Ok(out)
    }

    /// `s^{(k)}_ν(x, y)` in the basis `s^{(k)} ⊗ s^{(k)}`.
    pub fn kschur_coproduct(&self, nu: &Partition, k: usize) -> Result<Tensor> {
        let h = self.kschur_in_h(nu, k)?;
        self.h_coproduct_in_kschur(&h, k)
    }

    /// `s^{(k)}_{ν/μ} = Σ_λ 𝔡^{ν,k}_{μλ} s^{(k)}_λ`.
    pub fn skew_kschur_in_kschur(&self, nu: &Partition, mu: &Partition, k: usize) -> Result<SymPoly> {
        require_skew(nu, mu, k)?;
        self.skew_kschur_unchecked(nu, mu, k)
    }

    fn skew_kschur_unchecked(&self, nu: &Partition, mu: &Partition, k: usize) -> Result<SymPoly> {
        let mut f = SymPoly::zero(Basis::KSchur(k), nu.degree().saturating_sub(mu.degree()));
        if mu.degree() > nu.degree() {
            return Ok(f);
        }
        for lambda in enumerate_bounded(nu.degree() - mu.degree(), k) {
            let d = self.d_coefficients(mu, &lambda, k)?;
            f.add_unchecked(lambda, d.coeff(nu));
        }
        Ok(f)
    }

    /// Checks `Σ_λ s^{(k)}_λ(x) 𝔖^{(k)}_λ(y) = Σ_λ h_λ(x) m_λ(y)` over the
    /// k-bounded `λ` of degree `n`, expanding the left side in `h ⊗ m`.
    pub fn cauchy_check(&self, k: usize, n: usize) -> Result<bool> {
        if k == 0 {
            return precondition("k must be at least 1");
        }
        let mut lhs = Tensor::new();
        for lambda in enumerate_bounded(n, k) {
            let s = self.kschur_in_h(&lambda, k)?;
            let d = self.dual_kschur_in_m(&lambda, k)?;
            for (a, x) in s.terms() {
                for (b, y) in d.terms() {
                    *lhs.entry((a.clone(), b.clone())).or_default() += x * y;
                }
            }
        }
        lhs.retain(|_, v| !v.is_zero());
        let rhs: Tensor = enumerate_bounded(n, k)
            .into_iter()
            .map(|l| ((l.clone(), l), BigInt::from(1)))
            .collect();
        Ok(lhs == rhs)
    }

    /// Checks both coproduct identities for the skew pair `ν/μ`:
    /// `s^{(k)}_{ν/μ}(x,y) = Σ_ρ s^{(k)}_{ν/ρ}(x) s^{(k)}_{ρ/μ}(y)` and
    /// `𝔖^{(k)}_{ν/μ}(x,y) = Σ_ρ 𝔖^{(k)}_{ν/ρ}(x) 𝔖^{(k)}_{ρ/μ}(y)`.
    pub fn skew_coproduct_check(&self, nu: &Partition, mu: &Partition, k: usize) -> Result<bool> {
        require_skew(nu, mu, k)?;
        let lo = mu.degree();
        let hi = nu.degree();

        // k-Schur side: left by expanding in h and splitting each h_i
        let skew = self.skew_kschur_in_kschur(nu, mu, k)?;
        let lhs = self.h_coproduct_in_kschur(&self.kschur_to_h(&skew)?, k)?;
        let mut rhs = Tensor::new();
        for mid in lo..=hi {
            for rho in enumerate_bounded(mid, k) {
                let left = self.skew_kschur_unchecked(nu, &rho, k)?;
                let right = self.skew_kschur_unchecked(&rho, mu, k)?;
                accumulate_product(&mut rhs, &left, &right);
            }
        }
        rhs.retain(|_, v| !v.is_zero());
        if lhs != rhs {
            return Ok(false);
        }

        // dual side: left from the monomial coproduct
        let lhs = coproduct_m(&self.skew_dual_in_m(nu, mu, k)?)?;
        let mut rhs = Tensor::new();
        for mid in lo..=hi {
            for rho in enumerate_bounded(mid, k) {
                let left = self.skew_dual_unchecked(nu, &rho, k)?;
                let right = self.skew_dual_unchecked(&rho, mu, k)?;
                accumulate_product(&mut rhs, &left, &right);
            }
        }
        rhs.retain(|_, v| !v.is_zero());
        Ok(lhs == rhs)
    }
}

fn accumulate_product(t: &mut Tensor, left: &SymPoly, right: &SymPoly) {
    for (a, x) in left.terms() {
        for (b, y) in right.terms() {
            *t.entry((a.clone(), b.clone())).or_default() += x * y;
        }
    }
}

/// Pairs a k-Schur expansion with a dual k-Schur expansion using
/// `⟨s^{(k)}_λ, 𝔖^{(k)}_μ⟩ = δ_{λμ}`.
pub fn kschur_dual_pair(f: &SymPoly, g: &SymPoly) -> Result<BigInt> {
    match (f.basis(), g.basis()) {
        (Basis::KSchur(a), Basis::DualKSchur(b)) if a == b => {}
        (x, y) => return precondition(format!("cannot pair {x} with {y}")),
    }
    let mut acc = BigInt::zero();
    for (lambda, c) in f.terms() {
        if let Some(d) = g.terms().get(lambda) {
            acc += c * d;
        }
    }
    Ok(acc)
}
