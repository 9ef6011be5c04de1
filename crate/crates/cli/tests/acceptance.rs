//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits nonzero on any failure.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::Instant;

use satseq_core::gordan::{
    build_matrix, delta6_closed_form, expand_to_zero, gordan_lower, gordan_upper, lower_range, theta,
    threshold_search, upper_range, KNOWN_THRESHOLDS,
};
use satseq_core::laurent::{verify_birkhoff, Birkhoff, LaurentMatrix, LaurentPoly};
use satseq_core::linalg::exact::det;
use satseq_core::rational::{binom, int, rat};
use satseq_core::repdim::{decompose_sym, eta, h_brute_force, h_invariant_dim};
use satseq_core::saturation::{block_ranks, check_counting_inequality, ic_dim, ideal_dims, RankConfig, Zeta};
use satseq_core::splitting::{
    affine_hessian, splitting_report, splitting_type, within_bounds, xi_generators, Chart, CofactorRule,
};
use satseq_core::transvectant::{binary_form, generic_form};
use satseq_core::{classical, transvect, SparsePoly};
use serde_json::Value;

type Check = Result<(), String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Rows of `satseq table --d-min 4 --d-max 12`, run through the binary.
fn table_rows() -> Result<Vec<Value>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_satseq"))
        .args(["--no-cache", "table", "--d-min", "4", "--d-max", "12"])
        .output()
        .map_err(|e| e.to_string())?;
    let v: Value = serde_json::from_slice(&out.stdout).map_err(|e| format!("bad JSON: {e}"))?;
    if !out.status.success() {
        return Err(format!("exit {:?}: {}", out.status.code(), String::from_utf8_lossy(&out.stderr)));
    }
    Ok(v["result"]["rows"].as_array().cloned().unwrap_or_default())
}

fn alphas(row: &Value) -> Vec<usize> {
    row["alphas"]
        .as_array()
        .map(|a| a.iter().filter_map(|x| x.as_u64()).map(|x| x as usize).collect())
        .unwrap_or_default()
}

const TABLE: [&[usize]; 9] = [
    &[3],
    &[3],
    &[5, 3],
    &[4, 3],
    &[5, 3, 3],
    &[5, 3, 3],
    &[5, 3, 3, 3],
    &[5, 3, 3, 3],
    &[7, 5, 3, 3, 3],
];

fn saturation_table(rows: &[Value]) -> Check {
    ensure(rows.len() == 9, || format!("{} rows", rows.len()))?;
    for (row, want) in rows.iter().zip(TABLE) {
        let got = alphas(row);
        ensure(got == want, || format!("d = {}: {got:?} != {want:?}", row["d"]))?;
    }
    Ok(())
}

fn bounds(rows: &[Value]) -> Check {
    for row in rows {
        let d = row["d"].as_u64().unwrap() as usize;
        let s = row["big_s"].as_u64().unwrap() as usize;
        let z = Zeta::new(d);
        ensure(z.at_most(s) && s <= d + 2, || format!("d = {d}: S = {s}"))?;
        ensure(row["zeta_le_s"] == true && row["s_le_d_plus_2"] == true, || format!("d = {d}: record flags"))?;
    }
    for d in 4..=60 {
        let z = Zeta::new(d);
        for m in 2..=d + 2 {
            if z.exceeds(m) {
                ensure(!check_counting_inequality(d, m), || format!("inequality holds at d = {d}, m = {m}"))?;
            }
        }
    }
    Ok(())
}

fn transvectants() -> Check {
    for c in classical::all_identities().map_err(|e| e.to_string())? {
        ensure(c.holds, || format!("d = {}: {}", c.d, c.name))?;
    }
    let a = binary_form(6, &[int(1), int(-2), int(0), rat(3, 2), int(5), int(-1), int(2)]);
    let b = binary_form(6, &[int(2), int(0), int(1), int(-3), int(0), int(4)]);
    for r in 0..=5u32 {
        let ab = transvect(&a, &b, r).map_err(|e| e.to_string())?;
        let ba = transvect(&b, &a, r).map_err(|e| e.to_string())?;
        let sign = if r % 2 == 0 { int(1) } else { int(-1) };
        ensure(ab.body() == ba.scale(&sign).body(), || format!("antisymmetry at r = {r}"))?;
        ensure(ab.order() == 6 + 5 - 2 * r, || format!("order at r = {r}"))?;
        if r % 2 == 1 {
            ensure(transvect(&a, &a, r).unwrap().is_zero(), || format!("(A,A)_{r} != 0"))?;
        }
    }
    let f = generic_form(5);
    for r in [1u32, 3, 5] {
        ensure(transvect(&f, &f, r).unwrap().is_zero(), || format!("generic (F,F)_{r} != 0"))?;
    }
    Ok(())
}

fn gordan() -> Check {
    let e = |x: satseq_core::Error| x.to_string();
    for d in 3..=10 {
        for (k, w) in lower_range(d) {
            ensure(expand_to_zero(&gordan_lower(d, k, w).map_err(e)?).map_err(e)?, || {
                format!("lower({k},{w}) at d = {d}")
            })?;
        }
        for (k, w) in upper_range(d) {
            ensure(expand_to_zero(&gordan_upper(d, k, w).map_err(e)?).map_err(e)?, || {
                format!("upper({k},{w}) at d = {d}")
            })?;
        }
    }
    let g = gordan_lower(7, 1, 6).map_err(e)?;
    ensure(
        g.coefficient(2, 4) == rat(5, 2) && g.coefficient(4, 2) == rat(5, 3) && g.coefficient(6, 0) == rat(-11, 28),
        || format!("d = 7 triple: {g}"),
    )?;
    let g = gordan_upper(11, 4, 13).map_err(e)?;
    ensure(
        g.coefficient(4, 9) == int(1) && g.coefficient(6, 7) == rat(35, 13) && g.coefficient(8, 5) == rat(-31, 66),
        || format!("d = 11 triple: {g}"),
    )?;
    for d in 3..=40i64 {
        ensure(theta(d, 1, d, d).map_err(e)? == rat(1, d) - rat(1, 2), || format!("theta at d = {d}"))?;
    }
    for d in [8usize, 10, 12, 20] {
        let m = build_matrix(d, 3, 6).map_err(e)?;
        ensure(det(&m.entries) == delta6_closed_form(d as i64), || format!("Delta_6 at d = {d}"))?;
    }
    for &(s, n) in &KNOWN_THRESHOLDS[..5] {
        let t = threshold_search(s, 40).map_err(e)?;
        ensure(t.n == n, || format!("N_{s} = {} != {n}", t.n))?;
    }
    Ok(())
}

fn weight_count(d: usize, m: usize, k: usize) -> u128 {
    fn go(left: usize, max: usize, k: usize) -> u128 {
        if left == 0 {
            return u128::from(k == 0);
        }
        (0..=max.min(k)).map(|i| go(left - 1, i, k - i)).sum()
    }
    go(m, d, k)
}

fn representations() -> Check {
    ensure(
        decompose_sym(6, 3).to_string() == "S_18 + S_14 + S_12 + S_10 + S_8 + S_6^2 + S_2",
        || decompose_sym(6, 3).to_string(),
    )?;
    for d in 0..=8 {
        for m in 0..=4 {
            let md = m * d;
            for n in 0..=md + 1 {
                let want = if n > md || (md - n) % 2 == 1 {
                    0
                } else {
                    let k = (md - n) / 2;
                    weight_count(d, m, k) - if k == 0 { 0 } else { weight_count(d, m, k - 1) }
                };
                ensure(eta(d, m, n) == want, || format!("eta({d},{m},{n})"))?;
            }
        }
    }
    ensure(h_invariant_dim(75) == 13, || format!("h(75) = {}", h_invariant_dim(75)))?;
    for d in 0..=200 {
        ensure(h_invariant_dim(d) == h_brute_force(d), || format!("h({d})"))?;
    }
    Ok(())
}

fn splitting() -> Check {
    let e = |x: satseq_core::Error| x.to_string();
    let h = affine_hessian(4).map_err(e)?;
    let p = |s: &str| SparsePoly::parse(&h.ring, s).unwrap();
    ensure(h.u[&2].scale(&rat(1, 2)) == p("l2 - l1^2"), || "u_2".into())?;
    ensure(h.u[&3] == p("l3 - l1*l2"), || "u_3".into())?;
    ensure(h.u[&4].scale(&int(3)) == p("l4 + 2*l1*l3 - 3*l2^2"), || "u_4".into())?;
    let v5 = &(&(&p("3*l1") * &h.u[&4]) - &(&p("3*l2") * &h.u[&3])) + &(&p("l3") * &h.u[&2]);
    let v6 = &(&(&p("6*l2") * &h.u[&4]) - &(&p("2*l3 + 6*l1*l2") * &h.u[&3])) + &(&p("3*l2^2") * &h.u[&2]);
    ensure(h.v[&5] == v5 && h.v[&6] == v6, || "v_5, v_6".into())?;

    let l = |c: i64, k: i64| LaurentPoly::monomial(int(c), k);
    let z = LaurentPoly::zero;
    let xi = xi_generators(4, Chart::Lower).map_err(e)?;
    ensure(xi[0].coords == vec![l(-1, 3), l(3, 2), l(-3, 1), l(1, 0), z()], || "xi_5".into())?;
    ensure(xi[1].coords == vec![l(-3, 4), l(8, 3), l(-6, 2), z(), l(1, 0)], || "xi_6".into())?;

    let mono = |rows: &[Vec<(i64, i64)>]| {
        LaurentMatrix::from_monomials(
            &rows
                .iter()
                .map(|r| r.iter().map(|&(c, k)| (int(c), k)).collect())
                .collect::<Vec<_>>(),
        )
        .unwrap()
    };
    let r = splitting_report(4, CofactorRule::LowestIndex).map_err(e)?;
    let q = mono(&[vec![(-1, 0), (3, -1)], vec![(-3, 1), (8, 0)]]);
    ensure(r.q == q, || format!("Q = {}", r.q))?;
    let ours_e = LaurentMatrix::new(vec![vec![l(1, 0), z()], vec![l(-3, 1), l(1, 0)]]).unwrap();
    let ours_f = LaurentMatrix::new(vec![vec![l(-1, 0), l(3, -1)], vec![z(), l(-1, 0)]]).unwrap();
    ensure(r.factors.e == ours_e && r.factors.f == ours_f, || {
        format!("E = {}, F = {}", r.factors.e, r.factors.f)
    })?;
    ensure(r.factors.d == LaurentMatrix::identity(2) && r.factors.ks == vec![0, 0], || {
        format!("D = {}", r.factors.d)
    })?;
    // the displayed factorization, and the constant factor relating it to ours
    let shown = Birkhoff {
        e: LaurentMatrix::new(vec![vec![l(3, 1), l(-1, 0)], vec![l(-1, 0), z()]]).unwrap(),
        d: LaurentMatrix::identity(2),
        f: LaurentMatrix::new(vec![vec![z(), l(1, 0)], vec![l(1, 0), l(-3, -1)]]).unwrap(),
        ks: vec![0, 0],
    };
    verify_birkhoff(&q, &shown).map_err(e)?;
    let c = shown.e.mul(&ours_e.inverse().map_err(e)?).map_err(e)?;
    ensure(c.rows().iter().flatten().all(|x| x.is_zero() || x.is_constant()), || {
        format!("E_shown E^-1 = {c} is not constant")
    })?;
    ensure(c.mul(&ours_f).map_err(e)? == shown.f, || "F relation".into())?;
    ensure(r.splitting_type == vec![-11, -11], || format!("{:?}", r.splitting_type))?;

    for d in 3..=8 {
        let t = splitting_type(d).map_err(e)?;
        ensure(t.len() == d - 2 && within_bounds(d, &t), || format!("d = {d}: {t:?}"))?;
        let alt = splitting_report(d, CofactorRule::HighestIndex).map_err(e)?.splitting_type;
        ensure(alt == t, || format!("d = {d}: rules give {t:?} and {alt:?}"))?;
    }
    Ok(())
}

fn rank_backends() -> Check {
    let modular = RankConfig::default();
    let exact = RankConfig {
        certify: true,
        ..RankConfig::default()
    };
    let e = |x: satseq_core::Error| x.to_string();
    for d in 3..=8 {
        for m in 2..=d + 2 {
            if binom((m + d) as i64, d as i64) <= 2000.into() {
                for k in 0..=m * d / 2 {
                    let a = block_ranks(d, m, k, &modular).map_err(e)?;
                    let b = block_ranks(d, m, k, &exact).map_err(e)?;
                    ensure(a.ranks == b.ranks, || format!("d = {d}, m = {m}, k = {k}: {:?} vs {:?}", a.ranks, b.ranks))?;
                }
            }
            let (dims, _) = ideal_dims(d, m, &modular).map_err(e)?;
            ensure(dims[d / 2 - 1] == ic_dim(d, m), || format!("Hilbert check at d = {d}, m = {m}"))?;
        }
    }
    Ok(())
}

fn threes(rows: &[Value]) -> Check {
    for &(s, n) in &KNOWN_THRESHOLDS[..3] {
        for row in rows {
            let d = row["d"].as_u64().unwrap() as usize;
            if d < n {
                continue;
            }
            let a = alphas(row);
            ensure(a.len() >= s && a[a.len() - s..].iter().all(|&x| x == 3), || {
                format!("s = {s}, d = {d}: {a:?}")
            })?;
        }
    }
    Ok(())
}

fn main() {
    if std::env::args().any(|a| a == "--list") {
        return;
    }
    let start = Instant::now();
    let rows = table_rows();
    let table_secs = start.elapsed().as_secs_f64();
    let with_rows = |f: fn(&[Value]) -> Check| -> Check { rows.as_ref().map_err(Clone::clone).and_then(|r| f(r)) };
    let criteria: Vec<(&str, Box<dyn Fn() -> Check>)> = vec![
        ("1 saturation table d=4..12", Box::new(|| with_rows(saturation_table))),
        ("2 bounds zeta <= S <= d+2 and counting inequality", Box::new(|| with_rows(bounds))),
        ("3 transvectant identities", Box::new(transvectants)),
        ("4 Gordan syzygies, coefficients and thresholds", Box::new(gordan)),
        ("5 representation dimensions", Box::new(representations)),
        ("6 splitting types", Box::new(splitting)),
        ("7 modular and exact ranks agree; Hilbert check", Box::new(rank_backends)),
        ("8 last s entries are 3 for s <= 3", Box::new(|| with_rows(threes))),
    ];
    let mut failed = 0;
    for (name, run) in &criteria {
        let start = Instant::now();
        let res = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let mut secs = start.elapsed().as_secs_f64();
        if name.starts_with('1') {
            secs += table_secs;
        }
        match res {
            Ok(()) => println!("PASS  criterion {name} ({secs:.1}s)"),
            Err(why) => {
                failed += 1;
                println!("FAIL  criterion {name} ({secs:.1}s): {why}");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
