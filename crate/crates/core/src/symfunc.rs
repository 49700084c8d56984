//! Homogeneous symmetric functions with integer coefficients in the bases
//! h, m, s (and the k-Schur / dual k-Schur tags), plus the classical
//! machinery used as oracles: Kostka numbers, Pieri, Littlewood-Richardson.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{internal, precondition, Error, Result};
use crate::matrix::{unitriangular_inverse, Matrix};
use crate::partition::{partitions_of, Partition};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Basis {
    H,
    M,
    S,
    KSchur(usize),
    DualKSchur(usize),
}

impl Basis {
    /// The bound on index partitions, for the k-indexed bases.
    pub fn bound(self) -> Option<usize> {
        match self {
            Basis::KSchur(k) | Basis::DualKSchur(k) => Some(k),
            _ => None,
        }
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Basis::H => write!(f, "h"),
            Basis::M => write!(f, "m"),
            Basis::S => write!(f, "s"),
            Basis::KSchur(k) => write!(f, "kschur({k})"),
            Basis::DualKSchur(k) => write!(f, "dual_kschur({k})"),
        }
    }
}

impl FromStr for Basis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let tagged = |prefix: &str| -> Option<Result<usize>> {
            let rest = s.strip_prefix(prefix)?.strip_prefix('(')?.strip_suffix(')')?;
            Some(match rest.trim().parse::<usize>() {
                Ok(k) if k >= 1 => Ok(k),
                _ => Err(Error::Parse(format!("bad bound in basis `{s}`"))),
            })
        };
        match s {
            "h" => Ok(Basis::H),
            "m" => Ok(Basis::M),
            "s" => Ok(Basis::S),
            _ => {
                if let Some(k) = tagged("dual_kschur") {
                    Ok(Basis::DualKSchur(k?))
                } else if let Some(k) = tagged("kschur") {
                    Ok(Basis::KSchur(k?))
                } else {
                    Err(Error::Parse(format!("unknown basis `{s}`")))
                }
            }
        }
    }
}

/// A homogeneous symmetric function: basis tag, degree and nonzero
/// coefficients indexed by partitions of that degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymPoly {
    basis: Basis,
    degree: usize,
    terms: BTreeMap<Partition, BigInt>,
}

impl SymPoly {
    pub fn zero(basis: Basis, degree: usize) -> Self {
        SymPoly {
            basis,
            degree,
            terms: BTreeMap::new(),
        }
    }

    /// The basis element indexed by `lambda`.
    pub fn basis_element(basis: Basis, lambda: &Partition) -> Result<Self> {
        let mut f = SymPoly::zero(basis, lambda.degree());
        f.insert(lambda.clone(), BigInt::one())?;
        Ok(f)
    }

    pub fn from_terms<I>(basis: Basis, degree: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Partition, BigInt)>,
    {
        let mut f = SymPoly::zero(basis, degree);
        for (lambda, c) in terms {
            f.insert(lambda, c)?;
        }
        Ok(f)
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> &BTreeMap<Partition, BigInt> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, lambda: &Partition) -> BigInt {
        self.terms.get(lambda).cloned().unwrap_or_default()
    }

    /// Adds `c` to the coefficient of `lambda`.
    pub fn insert(&mut self, lambda: Partition, c: BigInt) -> Result<()> {
        if lambda.degree() != self.degree {
            return precondition(format!(
                "{lambda} has degree {}, expression has degree {}",
                lambda.degree(),
                self.degree
            ));
        }
        if let Some(k) = self.basis.bound() {
            if !lambda.is_k_bounded(k) {
                return precondition(format!("{lambda} is not {k}-bounded, required by basis {}", self.basis));
            }
        }
        self.add_unchecked(lambda, c);
        Ok(())
    }

    pub(crate) fn add_unchecked(&mut self, lambda: Partition, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(lambda) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// `self += factor · other`; bases and degrees must agree.
    pub fn add_scaled(&mut self, other: &SymPoly, factor: &BigInt) -> Result<()> {
        if other.basis != self.basis || other.degree != self.degree {
            return precondition(format!(
                "cannot add a degree {} {} expression to a degree {} {} expression",
                other.degree, other.basis, self.degree, self.basis
            ));
        }
        if factor.is_zero() {
            return Ok(());
        }
        for (lambda, c) in &other.terms {
            self.add_unchecked(lambda.clone(), c * factor);
        }
        Ok(())
    }

    pub fn parse(text: &str) -> Result<Self> {
        text.parse()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("SymPoly serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("SymPoly JSON: {e}")))
    }
}

impl fmt::Display for SymPoly {
    /// `basis: { [λ]: c, ... }`, largest partition first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "{}: {{}}", self.basis);
        }
        write!(f, "{}: {{ ", self.basis)?;
        for (i, (lambda, c)) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{lambda}: {c}")?;
        }
        write!(f, " }}")
    }
}

struct Cursor<'a> {
    s: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while let Some(c) = self.s[self.pos..].chars().next() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.s[self.pos..].chars().next()
    }

    fn expect(&mut self, want: char) -> Result<()> {
        match self.peek() {
            Some(c) if c == want => {
                self.pos += c.len_utf8();
                Ok(())
            }
            other => Err(Error::Parse(format!(
                "expected `{want}` at byte {}, found {}",
                self.pos,
                other.map_or("end of input".to_string(), |c| format!("`{c}`"))
            ))),
        }
    }

    fn take_until(&mut self, stop: char) -> Result<&'a str> {
        let rest = &self.s[self.pos..];
        let end = rest
            .find(stop)
            .ok_or_else(|| Error::Parse(format!("missing `{stop}` after byte {}", self.pos)))?;
        self.pos += end;
        Ok(&rest[..end])
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let rest = &self.s[self.pos..];
        let len = rest
            .char_indices()
            .take_while(|&(i, c)| c.is_ascii_digit() || (i == 0 && (c == '-' || c == '+')))
            .count();
        let token = &rest[..len];
        let value = token
            .parse::<BigInt>()
            .map_err(|_| Error::Parse(format!("expected an integer at byte {}", self.pos)))?;
        self.pos += len;
        Ok(value)
    }
}

impl FromStr for SymPoly {
    type Err = Error;

    /// Reads the text form. The degree of the zero expression is taken to be 0.
    fn from_str(text: &str) -> Result<Self> {
        let mut cur = Cursor { s: text, pos: 0 };
        let basis: Basis = cur.take_until(':')?.parse()?;
        cur.expect(':')?;
        cur.expect('{')?;
        let mut entries: Vec<(Partition, BigInt)> = Vec::new();
        if cur.peek() == Some('}') {
            cur.expect('}')?;
        } else {
            loop {
                cur.expect('[')?;
                let body = cur.take_until(']')?;
                cur.expect(']')?;
                let lambda: Partition = format!("[{body}]").parse()?;
                cur.expect(':')?;
                let c = cur.integer()?;
                entries.push((lambda, c));
                match cur.peek() {
                    Some(',') => cur.expect(',')?,
                    Some('}') => {
                        cur.expect('}')?;
                        break;
                    }
                    _ => return Err(Error::Parse(format!("expected `,` or `}}` at byte {}", cur.pos))),
                }
            }
        }
        if cur.peek().is_some() {
            return Err(Error::Parse(format!("trailing input at byte {}", cur.pos)));
        }
        let degree = entries.first().map_or(0, |(l, _)| l.degree());
        let mut f = SymPoly::zero(basis, degree);
        for (lambda, c) in entries {
            if f.terms.contains_key(&lambda) {
                return Err(Error::Parse(format!("{lambda} listed twice")));
            }
            f.insert(lambda, c).map_err(|e| Error::Parse(e.to_string()))?;
        }
        Ok(f)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTerm {
    partition: Partition,
    coeff: serde_json::Number,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSymPoly {
    basis: String,
    degree: usize,
    terms: Vec<RawTerm>,
}

pub(crate) fn bigint_to_json(c: &BigInt) -> serde_json::Number {
    c.to_string().parse().expect("an integer literal is a JSON number")
}

pub(crate) fn bigint_from_json(n: &serde_json::Number) -> Result<BigInt> {
    let s = n.to_string();
    if !s.bytes().enumerate().all(|(i, b)| b.is_ascii_digit() || (i == 0 && b == b'-')) {
        return Err(Error::Parse(format!("coefficient {s} is not an integer")));
    }
    s.parse().map_err(|_| Error::Parse(format!("coefficient {s} is not an integer")))
}

impl Serialize for SymPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RawSymPoly {
            basis: self.basis.to_string(),
            degree: self.degree,
            terms: self
                .terms
                .iter()
                .rev()
                .map(|(p, c)| RawTerm {
                    partition: p.clone(),
                    coeff: bigint_to_json(c),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SymPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = RawSymPoly::deserialize(d)?;
        let basis: Basis = raw.basis.parse().map_err(D::Error::custom)?;
        let mut f = SymPoly::zero(basis, raw.degree);
        for t in raw.terms {
            if f.terms.contains_key(&t.partition) {
                return Err(D::Error::custom(format!("{} listed twice", t.partition)));
            }
            let c = bigint_from_json(&t.coeff).map_err(D::Error::custom)?;
            f.insert(t.partition, c).map_err(D::Error::custom)?;
        }
        Ok(f)
    }
}

/// A finite sum of `f_i(x) ⊗ g_i(y)` in product bases, keyed by index pairs.
pub type Tensor = BTreeMap<(Partition, Partition), BigInt>;

fn require_basis(f: &SymPoly, want: Basis, role: &str) -> Result<()> {
    if f.basis != want {
        return precondition(format!("{role} must be in the {want} basis, got {}", f.basis));
    }
    Ok(())
}

/// `⟨f, g⟩` with `⟨h_λ, m_μ⟩ = δ_{λμ}`.
pub fn hall_pair(f: &SymPoly, g: &SymPoly) -> Result<BigInt> {
    require_basis(f, Basis::H, "first argument")?;
    require_basis(g, Basis::M, "second argument")?;
    if f.degree != g.degree {
        return precondition(format!("degrees {} and {} differ", f.degree, g.degree));
    }
    let mut acc = BigInt::zero();
    for (lambda, c) in &f.terms {
        if let Some(d) = g.terms.get(lambda) {
            acc += c * d;
        }
    }
    Ok(acc)
}

type KostkaKey = (Partition, Vec<usize>);

fn kostka_memo() -> &'static RwLock<HashMap<KostkaKey, BigInt>> {
    static MEMO: OnceLock<RwLock<HashMap<KostkaKey, BigInt>>> = OnceLock::new();
    MEMO.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Number of semistandard tableaux of shape `lambda` and content `weight`
/// (any composition of `|λ|`).
pub fn classical_kostka(lambda: &Partition, weight: &[usize]) -> Result<BigInt> {
    if weight.iter().sum::<usize>() != lambda.degree() {
        return precondition(format!(
            "weight size {} differs from |{lambda}|",
            weight.iter().sum::<usize>()
        ));
    }
    Ok(kostka_rec(lambda, weight))
}

fn kostka_rec(lambda: &Partition, weight: &[usize]) -> BigInt {
    let Some((&last, rest)) = weight.split_last() else {
        return if lambda.is_empty() { BigInt::one() } else { BigInt::zero() };
    };
    if rest.is_empty() {
        // a single letter fills a one-row shape only
        return if lambda.len() <= 1 && lambda.degree() == last { BigInt::one() } else { BigInt::zero() };
    }
    let key = (lambda.clone(), weight.to_vec());
    if let Some(v) = kostka_memo().read().unwrap().get(&key) {
        return v.clone();
    }
    let mut total = BigInt::zero();
    for nu in strip_removals(lambda, last) {
        if nu.len() <= rest.len() {
            total += kostka_rec(&nu, rest);
        }
    }
    kostka_memo().write().unwrap().insert(key, total.clone());
    total
}

/// All `ν ⊆ λ` with `λ/ν` a horizontal strip of `size` cells.
fn strip_removals(lambda: &Partition, size: usize) -> Vec<Partition> {
    fn rec(i: usize, lambda: &[usize], left: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if i == lambda.len() {
            if left == 0 {
                out.push(Partition::from_multiset(cur.clone()));
            }
            return;
        }
        let below = lambda.get(i + 1).copied().unwrap_or(0);
        let max_take = (lambda[i] - below).min(left);
        for take in 0..=max_take {
            cur.push(lambda[i] - take);
            rec(i + 1, lambda, left - take, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, lambda.parts(), size, &mut Vec::new(), &mut out);
    out
}

/// All `μ ⊇ λ` with `μ/λ` a horizontal strip of `size` cells, optionally
/// with `μ_1 ≤ max_first`.
fn strip_additions(lambda: &Partition, size: usize, max_first: Option<usize>) -> Vec<Partition> {
    fn rec(
        i: usize,
        lambda: &Partition,
        left: usize,
        max_first: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Partition>,
    ) {
        let rows = lambda.len() + 1;
        if i == rows {
            if left == 0 {
                out.push(Partition::from_multiset(cur.clone()));
            }
            return;
        }
        let base = lambda.row(i + 1);
        let cap = if i == 0 { max_first } else { lambda.row(i) };
        if cap < base {
            return;
        }
        let max_add = (cap - base).min(left);
        for add in 0..=max_add {
            cur.push(base + add);
            rec(i + 1, lambda, left - add, max_first, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    let cap = max_first.unwrap_or(usize::MAX / 2);
    rec(0, lambda, size, cap, &mut Vec::new(), &mut out);
    out
}

/// Kostka matrix of all partitions of a degree and its inverse.
#[derive(Debug)]
pub struct ClassicalMatrices {
    pub index: Vec<Partition>,
    pub position: HashMap<Partition, usize>,
    /// `kostka[λ][μ] = K_{λμ}`.
    pub kostka: Matrix,
    pub inverse: Matrix,
}

/// Cached per degree.
pub fn classical_matrices(degree: usize) -> Result<Arc<ClassicalMatrices>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<ClassicalMatrices>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(m) = cache.lock().unwrap().get(&degree) {
        return Ok(m.clone());
    }
    let index = partitions_of(degree);
    let kostka: Matrix = index
        .iter()
        .map(|lambda| index.iter().map(|mu| kostka_rec(lambda, mu.parts())).collect())
        .collect();
    let inverse = unitriangular_inverse(&kostka, "classical Kostka matrix")?;
    let position = index.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    let m = Arc::new(ClassicalMatrices {
        index,
        position,
        kostka,
        inverse,
    });
    cache.lock().unwrap().insert(degree, m.clone());
    Ok(m)
}

fn to_vector(f: &SymPoly, mats: &ClassicalMatrices) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); mats.index.len()];
    for (lambda, c) in &f.terms {
        v[mats.position[lambda]] = c.clone();
    }
    v
}

fn from_vector(basis: Basis, degree: usize, v: Vec<BigInt>, mats: &ClassicalMatrices) -> SymPoly {
    let mut f = SymPoly::zero(basis, degree);
    for (i, c) in v.into_iter().enumerate() {
        f.add_unchecked(mats.index[i].clone(), c);
    }
    f
}

/// `out[j] = Σ_i v[i] · a[i][j]`.
fn row_times(v: &[BigInt], a: &Matrix) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); v.len()];
    for (i, x) in v.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in a[i].iter().enumerate() {
            if !y.is_zero() {
                out[j] += x * y;
            }
        }
    }
    out
}

/// `out[i] = Σ_j a[i][j] · v[j]`.
fn times_column(a: &Matrix, v: &[BigInt]) -> Vec<BigInt> {
    a.iter()
        .map(|row| {
            let mut acc = BigInt::zero();
            for (x, y) in row.iter().zip(v) {
                if !x.is_zero() && !y.is_zero() {
                    acc += x * y;
                }
            }
            acc
        })
        .collect()
}

fn to_schur(f: &SymPoly, mats: &ClassicalMatrices) -> Result<Vec<BigInt>> {
    let v = to_vector(f, mats);
    Ok(match f.basis {
        Basis::S => v,
        // h_μ = Σ_λ K_{λμ} s_λ
        Basis::H => times_column(&mats.kostka, &v),
        // m_μ = Σ_λ K̄_{μλ} s_λ
        Basis::M => row_times(&v, &mats.inverse),
        other => return precondition(format!("cannot convert from basis {other} here")),
    })
}

/// Re-expresses `f` (in h, m or s) in the target basis (h, m or s).
pub fn convert(f: &SymPoly, target: Basis) -> Result<SymPoly> {
    if !matches!(target, Basis::H | Basis::M | Basis::S) {
        return precondition(format!("cannot convert to basis {target} here"));
    }
    if f.basis == target {
        return Ok(f.clone());
    }
    let mats = classical_matrices(f.degree)?;
    let s = to_schur(f, &mats)?;
    let v = match target {
        Basis::S => s,
        // s_λ = Σ_μ K̄_{μλ} h_μ
        Basis::H => times_column(&mats.inverse, &s),
        // s_λ = Σ_μ K_{λμ} m_μ
        Basis::M => row_times(&s, &mats.kostka),
        _ => unreachable!(),
    };
    Ok(from_vector(target, f.degree, v, &mats))
}

/// `h_r s_λ = Σ s_μ` over horizontal `r`-strips `μ/λ`.
pub fn classical_pieri(r: usize, lambda: &Partition) -> Result<SymPoly> {
    if r == 0 {
        return precondition("Pieri degree must be at least 1");
    }
    let mut f = SymPoly::zero(Basis::S, lambda.degree() + r);
    for mu in strip_additions(lambda, r, None) {
        f.add_unchecked(mu, BigInt::one());
    }
    Ok(f)
}

/// `s_λ s_μ` in the Schur basis. Computed by Pieri steps on the h-expansion
/// of `s_λ`; for joint degree at most 8 also by counting lattice-word
/// tableaux, and the two must agree.
pub fn classical_lr(lambda: &Partition, mu: &Partition) -> Result<SymPoly> {
    let f = lr_by_pieri(lambda, mu, None)?;
    if lambda.degree() + mu.degree() <= 8 {
        let g = lr_by_lattice_words(lambda, mu);
        if f != g {
            return internal(format!("Littlewood-Richardson routes disagree on {lambda} x {mu}: {f} vs {g}"));
        }
    }
    for c in f.terms.values() {
        if c.is_negative() {
            return internal(format!("negative Littlewood-Richardson coefficient in {lambda} x {mu}"));
        }
    }
    Ok(f)
}

/// The terms of `s_λ s_μ` whose first part is at most `max_first`. Pieri
/// steps only grow shapes, so branches are cut as soon as they exceed it.
pub fn classical_lr_truncated(lambda: &Partition, mu: &Partition, max_first: usize) -> Result<SymPoly> {
    let f = lr_by_pieri(lambda, mu, Some(max_first))?;
    for c in f.terms.values() {
        if c.is_negative() {
            return internal(format!("negative Littlewood-Richardson coefficient in {lambda} x {mu}"));
        }
    }
    Ok(f)
}

fn lr_by_pieri(lambda: &Partition, mu: &Partition, max_first: Option<usize>) -> Result<SymPoly> {
    let degree = lambda.degree() + mu.degree();
    let mut out = SymPoly::zero(Basis::S, degree);
    if max_first.is_some_and(|m| mu.first() > m) {
        return Ok(out);
    }
    let h = convert(&SymPoly::basis_element(Basis::S, lambda)?, Basis::H)?;
    let mut memo: HashMap<(Partition, usize), Vec<Partition>> = HashMap::new();
    for (alpha, c) in &h.terms {
        // apply h_{α_1}, h_{α_2}, ... to s_μ
        let mut layer: BTreeMap<Partition, BigInt> = BTreeMap::new();
        layer.insert(mu.clone(), BigInt::one());
        for &a in alpha.parts() {
            let mut next: BTreeMap<Partition, BigInt> = BTreeMap::new();
            for (shape, m) in &layer {
                let key = (shape.clone(), a);
                let adds = memo
                    .entry(key)
                    .or_insert_with(|| strip_additions(shape, a, max_first));
                for nu in adds.iter() {
                    *next.entry(nu.clone()).or_default() += m;
                }
            }
            layer = next;
        }
        for (nu, m) in layer {
            out.add_unchecked(nu, m * c);
        }
    }
    Ok(out)
}

/// `c^ν_{λμ}` as the number of fillings of `ν/λ` with content `μ`, rows weakly
/// increasing, columns strictly increasing, whose reading word (rows from the
/// bottom, each read right to left) is a lattice word.
fn lr_by_lattice_words(lambda: &Partition, mu: &Partition) -> SymPoly {
    let degree = lambda.degree() + mu.degree();
    let mut out = SymPoly::zero(Basis::S, degree);
    // chains λ = ν^0 ⊆ ν^1 ⊆ ... with ν^i/ν^{i-1} a horizontal μ_i-strip
    let mut chains: Vec<Vec<Partition>> = vec![vec![lambda.clone()]];
    for &a in mu.parts() {
        let mut next = Vec::new();
        for chain in &chains {
            for t in strip_additions(chain.last().unwrap(), a, None) {
                let mut c = chain.clone();
                c.push(t);
                next.push(c);
            }
        }
        chains = next;
    }
    for chain in chains {
        let outer = chain.last().unwrap();
        let letter_at = |row: usize, col: usize| -> usize {
            chain
                .iter()
                .position(|s| s.row(row) >= col)
                .expect("cell lies in the outer shape")
        };
        let mut counts = vec![0usize; mu.len() + 1];
        let mut lattice = true;
        'read: for row in 1..=outer.len() {
            for col in (lambda.row(row) + 1..=outer.row(row)).rev() {
                let x = letter_at(row, col);
                counts[x] += 1;
                if x > 1 && counts[x] > counts[x - 1] {
                    lattice = false;
                    break 'read;
                }
            }
        }
        if lattice {
            out.add_unchecked(outer.clone(), BigInt::one());
        }
    }
    out
}

/// `h_α h_β = h_{α ∪ β}`.
pub fn h_index_product(alpha: &Partition, beta: &Partition) -> Partition {
    let mut parts = alpha.parts().to_vec();
    parts.extend_from_slice(beta.parts());
    Partition::from_multiset(parts)
}

/// Coefficient of `x^γ` in `f · g` for `f`, `g` in the monomial basis.
pub fn monomial_product_coefficient(f: &SymPoly, g: &SymPoly, gamma: &Partition) -> Result<BigInt> {
    require_basis(f, Basis::M, "first factor")?;
    require_basis(g, Basis::M, "second factor")?;
    if f.degree + g.degree != gamma.degree() {
        return precondition(format!(
            "degrees {} + {} do not add up to |{gamma}|",
            f.degree, g.degree
        ));
    }
    let mut acc = BigInt::zero();
    for (alpha, a) in &f.terms {
        for (beta, b) in &g.terms {
            let n = monomial_pair_count(alpha, beta, gamma);
            if n > 0 {
                acc += a * b * BigInt::from(n);
            }
        }
    }
    Ok(acc)
}

/// Number of exponent vectors `a ≤ γ` with the nonzero parts of `a` a
/// rearrangement of `α` and those of `γ - a` a rearrangement of `β`.
pub(crate) fn monomial_pair_count(alpha: &Partition, beta: &Partition, gamma: &Partition) -> u64 {
    fn rec(i: usize, gamma: &[usize], left_a: &mut BTreeMap<usize, usize>, left_b: &mut BTreeMap<usize, usize>) -> u64 {
        if i == gamma.len() {
            return u64::from(left_a.is_empty() && left_b.is_empty());
        }
        let g = gamma[i];
        let mut total = 0;
        for a in 0..=g {
            let b = g - a;
            if !take(left_a, a) {
                continue;
            }
            if take(left_b, b) {
                total += rec(i + 1, gamma, left_a, left_b);
                give(left_b, b);
            }
            give(left_a, a);
        }
        total
    }
    fn take(m: &mut BTreeMap<usize, usize>, v: usize) -> bool {
        if v == 0 {
            return true;
        }
        match m.get_mut(&v) {
            Some(c) => {
                *c -= 1;
                if *c == 0 {
                    m.remove(&v);
                }
                true
            }
            None => false,
        }
    }
    fn give(m: &mut BTreeMap<usize, usize>, v: usize) {
        if v > 0 {
            *m.entry(v).or_insert(0) += 1;
        }
    }
    if alpha.degree() + beta.degree() != gamma.degree() {
        return 0;
    }
    let mut ma = BTreeMap::new();
    for &x in alpha.parts() {
        give(&mut ma, x);
    }
    let mut mb = BTreeMap::new();
    for &x in beta.parts() {
        give(&mut mb, x);
    }
    rec(0, gamma.parts(), &mut ma, &mut mb)
}

/// `f(x, y)` for `f` in the h basis, using `h_i(x,y) = Σ_j h_{i-j}(x) h_j(y)`.
pub fn coproduct_h(f: &SymPoly) -> Result<Tensor> {
    require_basis(f, Basis::H, "argument")?;
    let mut out = Tensor::new();
    for (gamma, c) in &f.terms {
        for ((a, b), m) in h_coproduct_terms(gamma) {
            *out.entry((a, b)).or_default() += c * BigInt::from(m);
        }
    }
    out.retain(|_, v| !v.is_zero());
    Ok(out)
}

fn h_coproduct_terms(gamma: &Partition) -> BTreeMap<(Partition, Partition), u64> {
    let mut acc: BTreeMap<(Vec<usize>, Vec<usize>), u64> = BTreeMap::new();
    acc.insert((Vec::new(), Vec::new()), 1);
    for &g in gamma.parts() {
        let mut next = BTreeMap::new();
        for ((x, y), m) in &acc {
            for j in 0..=g {
                let mut x2 = x.clone();
                let mut y2 = y.clone();
                if g - j > 0 {
                    x2.push(g - j);
                }
                if j > 0 {
                    y2.push(j);
                }
                x2.sort_unstable_by(|a, b| b.cmp(a));
                y2.sort_unstable_by(|a, b| b.cmp(a));
                *next.entry((x2, y2)).or_insert(0) += m;
            }
        }
        acc = next;
    }
    acc.into_iter()
        .map(|((x, y), m)| ((Partition::from_multiset(x), Partition::from_multiset(y)), m))
        .collect()
}

/// `f(x, y)` for `f` in the m basis: `m_α(x,y) = Σ m_β(x) m_γ(y)` over the
/// ways of splitting the multiset of parts of `α` into `β` and `γ`.
pub fn coproduct_m(f: &SymPoly) -> Result<Tensor> {
    require_basis(f, Basis::M, "argument")?;
    let mut out = Tensor::new();
    for (alpha, c) in &f.terms {
        let mut mult: Vec<(usize, usize)> = Vec::new();
        for &x in alpha.parts() {
            match mult.last_mut() {
                Some((v, n)) if *v == x => *n += 1,
                _ => mult.push((x, 1)),
            }
        }
        let mut splits: Vec<(Vec<usize>, Vec<usize>)> = vec![(Vec::new(), Vec::new())];
        for &(v, n) in &mult {
            let mut next = Vec::new();
            for (x, y) in &splits {
                for j in 0..=n {
                    let mut x2 = x.clone();
                    let mut y2 = y.clone();
                    x2.extend(std::iter::repeat_n(v, n - j));
                    y2.extend(std::iter::repeat_n(v, j));
                    next.push((x2, y2));
                }
            }
            splits = next;
        }
        for (x, y) in splits {
            *out.entry((Partition::from_multiset(x), Partition::from_multiset(y))).or_default() += c;
        }
    }
    out.retain(|_, v| !v.is_zero());
    Ok(out)
}
