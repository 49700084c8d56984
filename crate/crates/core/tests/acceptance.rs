//! Acceptance criteria. Each criterion prints one PASS/FAIL line with its
//! elapsed time; the test fails if any criterion does.
//!
//! Every comparison is exact integer equality. The only tolerances are the
//! wall-clock limits below.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use kschur_core::cores::{from_core, k_conjugate, k_skew, to_core};
use kschur_core::kschur::omega_reindex;
use kschur_core::ktableaux::{count_k_tableaux, enumerate_k_tableaux};
use kschur_core::partition::{compositions, enumerate_bounded, in_rectangle, partitions_of, rectangle_partitions};
use kschur_core::quantum::quantum_product_oracle;
use kschur_core::symfunc::{classical_lr, convert, hall_pair};
use kschur_core::{Basis, Context, Partition, SymPoly};
use num_bigint::BigInt;

const LIMIT_EXAMPLE: Duration = Duration::from_secs(1);
const LIMIT_BIJECTION: Duration = Duration::from_secs(10);
const LIMIT_DUALITY: Duration = Duration::from_secs(120);
const LIMIT_ORACLE: Duration = Duration::from_secs(600);
const LIMIT_OTHER: Duration = Duration::from_secs(600);

type Outcome = std::result::Result<(), String>;

fn p(parts: &[usize]) -> Partition {
    Partition::new(parts.to_vec()).unwrap()
}

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn ok<T, E: std::fmt::Display>(r: std::result::Result<T, E>) -> std::result::Result<T, String> {
    r.map_err(|e| e.to_string())
}

/// All pairs of k-bounded partitions with `|λ| + |μ| ≤ max`.
fn bounded_pairs(k: usize, max: usize) -> Vec<(Partition, Partition)> {
    let mut out = Vec::new();
    for total in 0..=max {
        for a in 0..=total {
            for lam in enumerate_bounded(a, k) {
                for mu in enumerate_bounded(total - a, k) {
                    out.push((lam.clone(), mu));
                }
            }
        }
    }
    out
}

fn worked_example() -> Outcome {
    let ts = ok(enumerate_k_tableaux(3, &p(&[8, 5, 2, 1]), &[1, 3, 1, 2, 1, 1]))?;
    ensure!(ts.len() == 3, "found {} tableaux", ts.len());
    let got: BTreeSet<Vec<Vec<usize>>> = ts
        .iter()
        .map(|t| t.rows().iter().map(|r| r.iter().map(|e| e.unwrap()).collect()).collect())
        .collect();
    // bottom row first
    let want: BTreeSet<Vec<Vec<usize>>> = [
        vec![vec![1, 2, 2, 2, 3, 4, 4, 6], vec![2, 3, 4, 4, 6], vec![4, 6], vec![5]],
        vec![vec![1, 2, 2, 2, 3, 4, 4, 5], vec![2, 3, 4, 4, 5], vec![4, 5], vec![6]],
        vec![vec![1, 2, 2, 2, 4, 4, 5, 6], vec![2, 4, 4, 5, 6], vec![3, 6], vec![4]],
    ]
    .into_iter()
    .collect();
    ensure!(got == want, "fillings differ: {got:?}");
    Ok(())
}

fn bijection() -> Outcome {
    let lam = p(&[4, 3, 2, 2, 1, 1]);
    let core = ok(to_core(&lam, 4))?;
    ensure!(core.shape() == &p(&[9, 5, 3, 2, 1, 1]), "c({lam}) = {}", core.shape());
    let skew = ok(k_skew(&lam, 4))?;
    ensure!(skew.inner() == &p(&[5, 2, 1]), "inner shape {}", skew.inner());
    for n in 0..=10 {
        for mu in enumerate_bounded(n, 4) {
            let back = ok(from_core(ok(to_core(&mu, 4))?.shape(), 4))?;
            ensure!(back == mu, "round trip of {mu} gave {back}");
        }
    }
    Ok(())
}

fn duality(ctx: &Context) -> Outcome {
    for k in 1..=4 {
        for n in 0..=8 {
            let idx = enumerate_bounded(n, k);
            let duals: Vec<SymPoly> = idx.iter().map(|b| ctx.dual_kschur_in_m(b, k)).collect::<Result<_, _>>().map_err(|e| e.to_string())?;
            for a in &idx {
                let s = ok(ctx.kschur_in_h(a, k))?;
                for (b, d) in idx.iter().zip(&duals) {
                    let v = ok(hall_pair(&s, d))?;
                    ensure!(v == BigInt::from(u8::from(a == b)), "<s_{a}, S_{b}> = {v} at k={k}");
                }
            }
        }
    }
    Ok(())
}

fn degeneration(ctx: &Context) -> Outcome {
    for n in 0..=8 {
        for lam in partitions_of(n) {
            let classical = ok(convert(&ok(SymPoly::basis_element(Basis::S, &lam))?, Basis::H))?;
            for k in lam.main_hook().max(1)..=8 {
                let f = ok(ctx.kschur_in_h(&lam, k))?;
                ensure!(f == classical, "s^({k})_{lam} = {f}, s_{lam} = {classical}");
            }
        }
    }
    Ok(())
}

fn grassmannians() -> Vec<(usize, usize)> {
    (3..=6).flat_map(|n| (2..n).map(move |l| (l, n))).collect()
}

fn oracle_equivalence(ctx: &Context) -> Outcome {
    for (l, n) in grassmannians() {
        let shapes = ok(rectangle_partitions(l, n))?;
        for a in &shapes {
            for b in &shapes {
                let gw = ok(ctx.gw_invariants(a, b, l, n))?;
                let oracle = ok(quantum_product_oracle(a, b, l, n))?;
                ensure!(gw == oracle, "Gr({l},{n}) {a} * {b}: {gw} vs {oracle}");
            }
        }
    }
    Ok(())
}

fn classical_layer(ctx: &Context) -> Outcome {
    for (l, n) in grassmannians() {
        let shapes = ok(rectangle_partitions(l, n))?;
        for a in &shapes {
            for b in &shapes {
                let gw = ok(ctx.gw_invariants(a, b, l, n))?;
                let mut want = SymPoly::zero(Basis::S, a.degree() + b.degree());
                for (nu, c) in ok(classical_lr(a, b))?.terms() {
                    if ok(in_rectangle(nu, l, n))? {
                        ok(want.insert(nu.clone(), c.clone()))?;
                    }
                }
                let got = gw.classical_layer();
                ensure!(got == want, "Gr({l},{n}) {a} * {b}: {got} vs {want}");
            }
        }
    }
    Ok(())
}

fn omega_symmetries(ctx: &Context) -> Outcome {
    for k in 1..=3 {
        for (lam, mu) in bounded_pairs(k, 8) {
            let lw = ok(k_conjugate(&lam, k))?;
            let mw = ok(k_conjugate(&mu, k))?;
            let c = ok(omega_reindex(&ok(ctx.klr(&lam, &mu, k))?))?;
            let cw = ok(ctx.klr(&lw, &mw, k))?;
            ensure!(c == cw, "c for {lam}, {mu} at k={k}");
            if lam.degree() + mu.degree() <= 7 {
                let d = ok(omega_reindex(&ok(ctx.d_coefficients(&lam, &mu, k))?))?;
                let dw = ok(ctx.d_coefficients(&lw, &mw, k))?;
                ensure!(d == dw, "d for {lam}, {mu} at k={k}");
            }
        }
    }
    Ok(())
}

fn d_routes(ctx: &Context) -> Outcome {
    for k in 1..=3 {
        for (lam, mu) in bounded_pairs(k, 7) {
            let a = ok(ctx.d_by_monomials(&lam, &mu, k))?;
            let b = ok(ctx.d_by_coproduct(&lam, &mu, k))?;
            ensure!(a == b, "{lam}, {mu} at k={k}: {a} vs {b}");
        }
    }
    Ok(())
}

fn skew_theorem(ctx: &Context) -> Outcome {
    for k in 1..=3 {
        for n in 0..=8 {
            for nu in enumerate_bounded(n, k) {
                for m in 0..=n {
                    for mu in enumerate_bounded(m, k).into_iter().filter(|mu| nu.contains(mu)) {
                        let mut lhs = SymPoly::zero(Basis::M, n - m);
                        for lam in enumerate_bounded(n - m, k) {
                            let c = ok(ctx.klr(&mu, &lam, k))?.coeff(&nu);
                            ok(lhs.add_scaled(&ok(ctx.dual_kschur_in_m(&lam, k))?, &c))?;
                        }
                        let rhs = ok(ctx.skew_dual_in_m(&nu, &mu, k))?;
                        ensure!(lhs == rhs, "{nu}/{mu} at k={k}: {lhs} vs {rhs}");
                    }
                }
            }
        }
    }
    Ok(())
}

fn cauchy(ctx: &Context) -> Outcome {
    for k in 1..=4 {
        for n in 0..=8 {
            ensure!(ok(ctx.cauchy_check(k, n))?, "k={k}, degree {n}");
        }
    }
    Ok(())
}

fn times(ctx: &Context, f: &SymPoly, right: &Partition, k: usize) -> std::result::Result<SymPoly, String> {
    let mut out = SymPoly::zero(Basis::KSchur(k), f.degree() + right.degree());
    for (lam, c) in f.terms() {
        ok(out.add_scaled(&ok(ctx.klr(lam, right, k))?, c))?;
    }
    Ok(out)
}

fn associativity(ctx: &Context) -> Outcome {
    for k in 1..=3 {
        for (a, b) in bounded_pairs(k, 8) {
            let ab = ok(ctx.klr(&a, &b, k))?;
            let ba = ok(ctx.klr(&b, &a, k))?;
            ensure!(ab == ba, "{a} x {b} is not commutative at k={k}");
            let rest = 8 - a.degree() - b.degree();
            for d in 0..=rest {
                for c in enumerate_bounded(d, k) {
                    let left = times(ctx, &ab, &c, k)?;
                    let bc = ok(ctx.klr(&b, &c, k))?;
                    // a (b c) = (b c) a by commutativity of each product
                    let right = times(ctx, &bc, &a, k)?;
                    ensure!(left == right, "({a} x {b}) x {c} at k={k}: {left} vs {right}");
                }
            }
        }
    }
    Ok(())
}

fn weight_permutations() -> Outcome {
    for k in 1..=4 {
        for n in 0..=8 {
            let shapes = enumerate_bounded(n, k);
            for alpha in compositions(n) {
                if alpha.iter().any(|&a| a > k) {
                    // weights with parts above k have no k-tableaux, sorted or not
                    for mu in &shapes {
                        ensure!(ok(count_k_tableaux(k, mu, &alpha))? == 0, "{mu} with weight {alpha:?}");
                    }
                    continue;
                }
                let mut sorted = alpha.clone();
                sorted.sort_unstable_by(|a, b| b.cmp(a));
                for mu in &shapes {
                    let x = ok(count_k_tableaux(k, mu, &alpha))?;
                    let y = ok(count_k_tableaux(k, mu, &sorted))?;
                    ensure!(x == y, "{mu} at k={k}: weight {alpha:?} gives {x}, {sorted:?} gives {y}");
                }
            }
        }
    }
    Ok(())
}

struct Criterion<'a> {
    id: u32,
    name: &'static str,
    limit: Duration,
    run: Box<dyn Fn() -> Outcome + 'a>,
}

fn main() -> ExitCode {
    let ctx = Context::new();
    let ctx = &ctx;
    let criteria = [
        Criterion { id: 1, name: "worked k-tableau example", limit: LIMIT_EXAMPLE, run: Box::new(worked_example) },
        Criterion { id: 2, name: "core bijection", limit: LIMIT_BIJECTION, run: Box::new(bijection) },
        Criterion { id: 3, name: "duality pairing", limit: LIMIT_DUALITY, run: Box::new(move || duality(ctx)) },
        Criterion { id: 4, name: "degeneration to Schur functions", limit: LIMIT_OTHER, run: Box::new(move || degeneration(ctx)) },
        Criterion { id: 5, name: "GW invariants equal the quotient-ring oracle", limit: LIMIT_ORACLE, run: Box::new(move || oracle_equivalence(ctx)) },
        Criterion { id: 6, name: "GW degree-zero layer is classical LR", limit: LIMIT_OTHER, run: Box::new(move || classical_layer(ctx)) },
        Criterion { id: 7, name: "omega symmetries of c and d", limit: LIMIT_OTHER, run: Box::new(move || omega_symmetries(ctx)) },
        Criterion { id: 8, name: "two routes to d-coefficients", limit: LIMIT_OTHER, run: Box::new(move || d_routes(ctx)) },
        Criterion { id: 9, name: "skew dual k-Schur expansion", limit: LIMIT_OTHER, run: Box::new(move || skew_theorem(ctx)) },
        Criterion { id: 10, name: "Cauchy identity", limit: LIMIT_OTHER, run: Box::new(move || cauchy(ctx)) },
        Criterion { id: 11, name: "k-LR associativity and commutativity", limit: LIMIT_OTHER, run: Box::new(move || associativity(ctx)) },
        Criterion { id: 12, name: "k-tableau counts under weight permutation", limit: LIMIT_OTHER, run: Box::new(weight_permutations) },
    ];

    let mut failed = Vec::new();
    for c in &criteria {
        let start = Instant::now();
        let outcome = match catch_unwind(AssertUnwindSafe(|| (c.run)())) {
            Ok(r) => r,
            Err(_) => Err("panicked".to_string()),
        };
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|()| {
            if elapsed > c.limit {
                Err(format!("took {elapsed:.2?}, limit {:?}", c.limit))
            } else {
                Ok(())
            }
        });
        match &outcome {
            Ok(()) => println!("[{:>2}] PASS  {}  ({elapsed:.2?}, limit {:?})", c.id, c.name, c.limit),
            Err(why) => {
                println!("[{:>2}] FAIL  {}  ({elapsed:.2?}, limit {:?}): {why}", c.id, c.name, c.limit);
                failed.push(c.id);
            }
        }
    }
    if failed.is_empty() {
        println!("acceptance: {} of {} criteria pass", criteria.len(), criteria.len());
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failed criteria {failed:?}");
        ExitCode::FAILURE
    }
}
