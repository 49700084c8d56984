//! The invariant suite behind `kschur selftest`.

use kschur_core::cores::{from_core, k_conjugate, to_core};
use kschur_core::kschur::omega_reindex;
use kschur_core::ktableaux::count_k_tableaux;
use kschur_core::partition::{compositions, enumerate_bounded, rectangle_partitions};
use kschur_core::quantum::quantum_product_oracle;
use kschur_core::symfunc::{classical_lr, convert, hall_pair};
use kschur_core::{Basis, Context, Error, Partition, SymPoly};
use num_bigint::BigInt;
use serde_json::json;

use crate::{Failure, Outcome};

type Check = Result<(), String>;
type Named<'a> = (&'a str, Box<dyn Fn() -> Check + 'a>);

fn ok<T>(r: kschur_core::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn pairs(k: usize, max: usize) -> Vec<(Partition, Partition)> {
    let mut out = Vec::new();
    for total in 0..=max {
        for a in 0..=total {
            for x in enumerate_bounded(a, k) {
                for y in enumerate_bounded(total - a, k) {
                    out.push((x.clone(), y));
                }
            }
        }
    }
    out
}

fn bounds(degree: usize) -> std::ops::RangeInclusive<usize> {
    1..=degree.clamp(1, 4)
}

fn core_bijection(degree: usize) -> Check {
    for k in bounds(degree) {
        for n in 0..=degree {
            for lam in enumerate_bounded(n, k) {
                let back = ok(from_core(ok(to_core(&lam, k))?.shape(), k))?;
                if back != lam {
                    return Err(format!("{lam} at k={k} came back as {back}"));
                }
            }
        }
    }
    Ok(())
}

fn duality(ctx: &Context, degree: usize) -> Check {
    for k in bounds(degree) {
        for n in 0..=degree {
            let idx = enumerate_bounded(n, k);
            for a in &idx {
                let s = ok(ctx.kschur_in_h(a, k))?;
                for b in &idx {
                    let v = ok(hall_pair(&s, &ok(ctx.dual_kschur_in_m(b, k))?))?;
                    if v != BigInt::from(u8::from(a == b)) {
                        return Err(format!("<s_{a}, S_{b}> = {v} at k={k}"));
                    }
                }
            }
        }
    }
    Ok(())
}

fn degeneration(ctx: &Context, degree: usize) -> Check {
    for n in 0..=degree {
        for lam in enumerate_bounded(n, n.max(1)) {
            let k = lam.main_hook().max(1);
            let classical = ok(convert(&ok(SymPoly::basis_element(Basis::S, &lam))?, Basis::H))?;
            if ok(ctx.kschur_in_h(&lam, k))? != classical {
                return Err(format!("s^({k})_{lam} differs from s_{lam}"));
            }
        }
    }
    Ok(())
}

fn products(ctx: &Context, degree: usize) -> Check {
    for k in bounds(degree).take(3) {
        for (a, b) in pairs(k, degree) {
            let ab = ok(ctx.klr(&a, &b, k))?;
            if ab != ok(ctx.klr(&b, &a, k))? {
                return Err(format!("{a} x {b} at k={k} is not commutative"));
            }
            let aw = ok(k_conjugate(&a, k))?;
            let bw = ok(k_conjugate(&b, k))?;
            if ok(omega_reindex(&ab))? != ok(ctx.klr(&aw, &bw, k))? {
                return Err(format!("omega symmetry fails for {a} x {b} at k={k}"));
            }
            if a.degree() + b.degree() < degree {
                let d = ok(ctx.d_coefficients(&a, &b, k))?;
                if ok(omega_reindex(&d))? != ok(ctx.d_coefficients(&aw, &bw, k))? {
                    return Err(format!("omega symmetry of d fails for {a}, {b} at k={k}"));
                }
            }
        }
    }
    Ok(())
}

fn skew_duals(ctx: &Context, degree: usize) -> Check {
    for k in bounds(degree).take(3) {
        for n in 0..=degree {
            for nu in enumerate_bounded(n, k) {
                for m in 0..=n {
                    for mu in enumerate_bounded(m, k).into_iter().filter(|mu| nu.contains(mu)) {
                        // compares against the m-route internally
                        ok(ctx.skew_dual_in_dual(&nu, &mu, k))?;
                    }
                }
            }
        }
    }
    Ok(())
}

fn cauchy(ctx: &Context, degree: usize) -> Check {
    for k in bounds(degree) {
        for n in 0..=degree {
            if !ok(ctx.cauchy_check(k, n))? {
                return Err(format!("k={k}, degree {n}"));
            }
        }
    }
    Ok(())
}

fn weight_permutations(degree: usize) -> Check {
    for k in bounds(degree) {
        for n in 0..=degree {
            for alpha in compositions(n).into_iter().filter(|a| a.iter().all(|&x| x <= k)) {
                let mut sorted = alpha.clone();
                sorted.sort_unstable_by(|a, b| b.cmp(a));
                for mu in enumerate_bounded(n, k) {
                    if ok(count_k_tableaux(k, &mu, &alpha))? != ok(count_k_tableaux(k, &mu, &sorted))? {
                        return Err(format!("{mu} at k={k} with weight {alpha:?}"));
                    }
                }
            }
        }
    }
    Ok(())
}

fn quantum(ctx: &Context, degree: usize) -> Check {
    for n in 3..=6 {
        for l in 2..n {
            if 2 * l * (n - l) > degree.max(4) {
                continue;
            }
            let shapes = ok(rectangle_partitions(l, n))?;
            for a in &shapes {
                for b in &shapes {
                    let gw = ok(ctx.gw_invariants(a, b, l, n))?;
                    if gw != ok(quantum_product_oracle(a, b, l, n))? {
                        return Err(format!("Gr({l},{n}) {a} * {b}"));
                    }
                    let mut layer = SymPoly::zero(Basis::S, a.degree() + b.degree());
                    for (nu, c) in ok(classical_lr(a, b))?.terms() {
                        if nu.first() <= l && nu.len() <= n - l {
                            layer.add_scaled(&ok(SymPoly::basis_element(Basis::S, nu))?, c).map_err(|e| e.to_string())?;
                        }
                    }
                    if gw.classical_layer() != layer {
                        return Err(format!("degree-zero layer of Gr({l},{n}) {a} * {b}"));
                    }
                }
            }
        }
    }
    Ok(())
}

pub(crate) fn run(ctx: &Context, degree: usize, as_json: bool) -> Outcome {
    let checks: [Named<'_>; 9] = [
        ("core bijection", Box::new(|| core_bijection(degree))),
        ("duality pairing", Box::new(|| duality(ctx, degree))),
        ("degeneration", Box::new(|| degeneration(ctx, degree))),
        ("k-LR commutativity and omega symmetry", Box::new(|| products(ctx, degree))),
        ("skew dual expansion", Box::new(|| skew_duals(ctx, degree))),
        ("Cauchy identity", Box::new(|| cauchy(ctx, degree))),
        ("weight permutation", Box::new(|| weight_permutations(degree))),
        ("GW invariants and oracle", Box::new(|| quantum(ctx, degree))),
        ("d-coefficient routes", Box::new(|| d_routes(ctx, degree))),
    ];
    let mut lines = Vec::new();
    let mut records = Vec::new();
    let mut failed = Vec::new();
    for (name, check) in &checks {
        match check() {
            Ok(()) => {
                lines.push(format!("ok    {name}"));
                records.push(json!({"check": name, "ok": true}));
            }
            Err(why) => {
                lines.push(format!("FAIL  {name}: {why}"));
                records.push(json!({"check": name, "ok": false, "detail": why}));
                failed.push(*name);
            }
        }
    }
    let report = if as_json {
        json!({"degree": degree, "checks": records}).to_string()
    } else {
        lines.join("\n")
    };
    if failed.is_empty() {
        return Ok(report);
    }
    crate::emit(&report);
    Err(Failure::from(Error::Internal(format!("selftest failed: {}", failed.join(", ")))))
}

fn d_routes(ctx: &Context, degree: usize) -> Check {
    for k in bounds(degree).take(3) {
        for (a, b) in pairs(k, degree.saturating_sub(1)) {
            if ok(ctx.d_by_monomials(&a, &b, k))? != ok(ctx.d_by_coproduct(&a, &b, k))? {
                return Err(format!("{a}, {b} at k={k}"));
            }
        }
    }
    Ok(())
}
