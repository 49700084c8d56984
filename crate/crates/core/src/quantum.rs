//! Quantum cohomology of the Grassmannian `Gr(ℓ, n)`: Schur functions modulo
//! the quantum ideal, Gromov-Witten invariants from (n-1)-Schur products,
//! fusion coefficients and Hecke algebra dimensions.

use std::cmp::Reverse;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::context::{Context, Scope};
use crate::cores::{epsilon, is_p_core, n_core, rim_down_to_core, rim_up};
use crate::error::{internal, precondition, Error, Result};
use crate::ktableaux::count_standard;
use crate::partition::{enumerate_bounded, in_pi, in_rectangle, Partition};
use crate::symfunc::{bigint_from_json, bigint_to_json, classical_lr_truncated, Basis, SymPoly};

/// `Σ_{ν,d} C^{ν,d}_{λμ} q^d s_ν`, the quantum product `σ_λ * σ_μ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GWExpansion {
    l: usize,
    n: usize,
    lambda: Partition,
    mu: Partition,
    terms: BTreeMap<(usize, Reverse<Partition>), BigInt>,
}

impl GWExpansion {
    pub fn new(lambda: Partition, mu: Partition, l: usize, n: usize) -> Result<Self> {
        require_rectangle(&lambda, l, n)?;
        require_rectangle(&mu, l, n)?;
        Ok(GWExpansion {
            l,
            n,
            lambda,
            mu,
            terms: BTreeMap::new(),
        })
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn lambda(&self) -> &Partition {
        &self.lambda
    }

    pub fn mu(&self) -> &Partition {
        &self.mu
    }

    /// Nonzero terms as `(ν, d, C^{ν,d})`, by `d` and then largest `ν` first.
    pub fn terms(&self) -> impl Iterator<Item = (&Partition, usize, &BigInt)> {
        self.terms.iter().map(|((d, Reverse(nu)), c)| (nu, *d, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, nu: &Partition, d: usize) -> BigInt {
        self.terms.get(&(d, Reverse(nu.clone()))).cloned().unwrap_or_default()
    }

    /// The `q^0` part as a Schur expansion.
    pub fn classical_layer(&self) -> SymPoly {
        let mut f = SymPoly::zero(Basis::S, self.lambda.degree() + self.mu.degree());
        for (nu, d, c) in self.terms() {
            if d == 0 {
                f.add_unchecked(nu.clone(), c.clone());
            }
        }
        f
    }

    /// Adds `c q^d s_ν`, checking the index set and `|ν| + dn = |λ| + |μ|`.
    pub fn add(&mut self, nu: Partition, d: usize, c: BigInt) -> Result<()> {
        if !in_rectangle(&nu, self.l, self.n)? {
            return precondition(format!("{nu} does not fit the {}x{} rectangle", self.l, self.n - self.l));
        }
        let total = self.lambda.degree() + self.mu.degree();
        if d.checked_mul(self.n).and_then(|x| x.checked_add(nu.degree())) != Some(total) {
            return precondition(format!("|{nu}| + {d}*{} is not {total}", self.n));
        }
        let slot = self.terms.entry((d, Reverse(nu))).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        let raw = RawGW {
            l: self.l,
            n: self.n,
            lambda: self.lambda.clone(),
            mu: self.mu.clone(),
            terms: self
                .terms()
                .map(|(nu, d, c)| RawGWTerm {
                    nu: nu.clone(),
                    d,
                    coeff: bigint_to_json(c),
                })
                .collect(),
        };
        serde_json::to_string(&raw).expect("GW serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: RawGW = serde_json::from_str(text).map_err(|e| Error::Parse(format!("GW JSON: {e}")))?;
        let parse = |e: Error| Error::Parse(format!("GW JSON: {e}"));
        let mut out = GWExpansion::new(raw.lambda, raw.mu, raw.l, raw.n).map_err(parse)?;
        for t in raw.terms {
            if out.terms.contains_key(&(t.d, Reverse(t.nu.clone()))) {
                return Err(Error::Parse(format!("GW JSON: ({}, {}) listed twice", t.nu, t.d)));
            }
            let c = bigint_from_json(&t.coeff)?;
            if c.is_zero() {
                return Err(Error::Parse(format!("GW JSON: zero coefficient at ({}, {})", t.nu, t.d)));
            }
            out.add(t.nu, t.d, c).map_err(parse)?;
        }
        Ok(out)
    }
}

/// One record per line: `{nu: [..], d: int, coeff: int}`.
impl fmt::Display for GWExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (nu, d, c)) in self.terms().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{{nu: {nu}, d: {d}, coeff: {c}}}")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGWTerm {
    nu: Partition,
    d: usize,
    coeff: serde_json::Number,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGW {
    l: usize,
    n: usize,
    lambda: Partition,
    mu: Partition,
    terms: Vec<RawGWTerm>,
}

fn require_rectangle(lambda: &Partition, l: usize, n: usize) -> Result<()> {
    if !in_rectangle(lambda, l, n)? {
        return precondition(format!("{lambda} does not fit the {l}x{} rectangle", n - l));
    }
    Ok(())
}

/// `s_ν mod J_q`, when not zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduced {
    pub sign: i8,
    pub d: usize,
    pub core: Partition,
}

/// `s_ν ≡ (-1)^ε q^d s_{r(ν)}` when the `n`-core `r(ν)` fits the rectangle,
/// and `0` otherwise. Requires `ν_1 ≤ ℓ`.
pub fn schur_mod_jq(nu: &Partition, l: usize, n: usize) -> Result<Option<Reduced>> {
    in_rectangle(nu, l, n)?;
    if nu.first() > l {
        return precondition(format!("{nu} has a part larger than l={l}"));
    }
    let rec = n_core(nu, n);
    if !in_rectangle(&rec.removed_shape, l, n)? {
        return Ok(None);
    }
    let sign = if epsilon(&rec, l).rem_euclid(2) == 0 { 1 } else { -1 };
    Ok(Some(Reduced {
        sign,
        d: rec.hooks_removed,
        core: rec.removed_shape,
    }))
}

/// The quantum product from the classical one: expand `s_λ s_μ`, drop the
/// terms with `ν_1 > ℓ` and reduce the rest with [`schur_mod_jq`].
pub fn quantum_product_oracle(lambda: &Partition, mu: &Partition, l: usize, n: usize) -> Result<GWExpansion> {
    let mut out = GWExpansion::new(lambda.clone(), mu.clone(), l, n)?;
    for (nu, c) in classical_lr_truncated(lambda, mu, l)?.terms() {
        if let Some(r) = schur_mod_jq(nu, l, n)? {
            out.add(r.core, r.d, c * BigInt::from(r.sign))?;
        }
    }
    if let Some((nu, d, c)) = out.terms().find(|(_, _, c)| c.is_negative()) {
        return internal(format!("negative quantum coefficient {c} at ({nu}, {d}) for {lambda} * {mu}"));
    }
    Ok(out)
}

/// `s^{(n-1)}_λ mod I^{ℓn}`: `s_λ` on `Π^{ℓn}` and zero elsewhere.
pub fn modth_image(lambda: &Partition, l: usize, n: usize) -> Result<SymPoly> {
    in_pi(lambda, l, n)?;
    if !lambda.is_k_bounded(n - 1) {
        return precondition(format!("{lambda} is not {}-bounded", n - 1));
    }
    if in_pi(lambda, l, n)? {
        SymPoly::basis_element(Basis::S, lambda)
    } else {
        Ok(SymPoly::zero(Basis::S, lambda.degree()))
    }
}

/// Dimension of the irreducible Hecke algebra representation indexed by
/// `λ`: the number of standard (n-1)-tableaux of shape `c(λ')`.
pub fn hecke_dimension(lambda: &Partition, l: usize, n: usize) -> Result<u128> {
    let conj = lambda.conjugate();
    if !in_pi(&conj, l, n)? {
        return precondition(format!("the conjugate {conj} of {lambda} is not in Pi({l},{n})"));
    }
    count_standard(n - 1, &conj)
}

fn require_fusion_box(lambda: &Partition, l: usize, n: usize) -> Result<()> {
    if l < 2 || l >= n {
        return precondition(format!("need 2 <= l < n, got l={l}, n={n}"));
    }
    if lambda.len() > l - 1 || lambda.first() > n - l {
        return precondition(format!("{lambda} does not fit {} rows of length {}", l - 1, n - l));
    }
    Ok(())
}

impl Context {
    /// `C^{ν,d}_{λμ} = c^{▲^d(ν), n-1}_{λμ}`, read off the product
    /// `s^{(n-1)}_λ s^{(n-1)}_μ` by sending each `γ ∈ Π^{ℓn}` to
    /// `(▼^{d_γ}(γ), d_γ)`.
    ///
    /// Terms with `γ ∉ Π^{ℓn}` vanish in the quotient, so only those targets
    /// are computed.
    pub fn gw_invariants(&self, lambda: &Partition, mu: &Partition, l: usize, n: usize) -> Result<GWExpansion> {
        let mut out = GWExpansion::new(lambda.clone(), mu.clone(), l, n)?;
        let prod = self.klr_in_scope(lambda, mu, n - 1, Scope::Pi { l, n })?;
        for (gamma, c) in prod.terms() {
            if !in_pi(gamma, l, n)? {
                return internal(format!("target {gamma} outside Pi({l},{n})"));
            }
            if c.is_negative() {
                return internal(format!("negative k-LR coefficient at {gamma} for {lambda} x {mu}, k={}", n - 1));
            }
            let (nu, d) = rim_down_to_core(gamma, l, n)?;
            let rec = n_core(gamma, n);
            if rec.removed_shape != nu || rec.hooks_removed != d {
                return internal(format!("{n}-core of {gamma}: {} by rim hooks, {nu} by first-column removal", rec.removed_shape));
            }
            let mut back = nu.clone();
            for _ in 0..d {
                back = rim_up(&back, l, n)?;
            }
            if &back != gamma {
                return internal(format!("({nu}, {d}) lifts to {back}, not {gamma}"));
            }
            if out.coeff(&nu, d) != BigInt::zero() {
                return internal(format!("two targets reduce to ({nu}, {d})"));
            }
            out.add(nu, d, c.clone())?;
        }
        Ok(out)
    }

    /// `N^ν_{λμ} = c^{ν̂, n-1}_{λ'μ'}` with `ν̂ = (ℓ^m, ν')`, for `λ, μ, ν`
    /// with at most `ℓ-1` rows of length at most `n-ℓ`.
    pub fn fusion(&self, lambda: &Partition, mu: &Partition, l: usize, n: usize) -> Result<BTreeMap<Partition, BigInt>> {
        require_fusion_box(lambda, l, n)?;
        require_fusion_box(mu, l, n)?;
        let prod = self.klr_in_scope(&lambda.conjugate(), &mu.conjugate(), n - 1, Scope::Pi { l, n })?;
        let total = lambda.degree() + mu.degree();
        let mut out = BTreeMap::new();
        // ν runs over shapes with at most l-1 rows of length at most n-l
        let candidates = (0..=total)
            .filter(|s| (total - s).is_multiple_of(l))
            .flat_map(|s| enumerate_bounded(s, n - l))
            .filter(|nu| nu.len() < l);
        for nu in candidates {
            let m = (total - nu.degree()) / l;
            let hat = nu.conjugate().with_leading_rows(l, m);
            let c = prod.coeff(&hat);
            if !c.is_zero() {
                out.insert(nu, c);
            }
        }
        Ok(out)
    }
}

/// Whether `lambda` is an `n`-core inside the rectangle.
pub fn is_rectangle_core(lambda: &Partition, l: usize, n: usize) -> Result<bool> {
    Ok(in_rectangle(lambda, l, n)? && is_p_core(lambda, n))
}
