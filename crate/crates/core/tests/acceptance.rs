//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any
//! failure. Runtime limits are part of each criterion.

mod common;

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use kronecker::bounds::{alpha_pair, compute_e1, lemma1_i, lemma1_ii, lemma1_iii, lemma4_check, theorem1_lower};
use kronecker::covering::{certified_alpha, CoveringInstance, EvalPoint, OverlapCase};
use kronecker::harness::{enumerate_canonical, scan, ScanConfig};
use kronecker::numbers::{lattice_params, q, Rational};
use kronecker::oracle::{oracle_alpha, OracleConfig};
use rand::RngExt;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn cli(args: &[&str]) -> Result<(Option<i32>, String), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_kronecker")).args(args).output().map_err(|e| e.to_string())?;
    Ok((out.status.code(), String::from_utf8_lossy(&out.stdout).into_owned()))
}

fn cli_json(args: &[&str]) -> Result<(Option<i32>, Value), String> {
    let (code, text) = cli(args)?;
    let v = serde_json::from_str(&text).map_err(|e| format!("bad JSON from {args:?}: {e}"))?;
    Ok((code, v))
}

fn rat(v: &Value) -> Result<Rational, String> {
    v.as_str().ok_or("expected a rational string")?.parse().map_err(|e| format!("{e}"))
}

fn ac1() -> Check {
    let (code, v) = cli_json(&["alpha", "-1", "2", "3", "--method", "exact", "--json"])?;
    ensure(code == Some(0), || format!("exit {code:?}"))?;
    let exact = rat(&v["alpha_exact"])?;
    ensure(exact == q(1, 4), || format!("exact = {exact}"))?;

    let (code, v) = cli_json(&["alpha", "-1", "2", "3", "--method", "covering", "--tol", "1e-4", "--json"])?;
    ensure(code == Some(0), || format!("exit {code:?}"))?;
    let (lo, hi) = (rat(&v["alpha_lo"])?, rat(&v["alpha_hi"])?);
    ensure(hi - lo <= q(1, 10_000) && lo <= q(1, 4) && q(1, 4) <= hi, || format!("[{lo}, {hi}]"))?;
    Ok(format!("exact 1/4, covering [{lo}, {hi}]"))
}

fn ac2() -> Check {
    let (code, v) = cli_json(&["alpha", "-1", "1", "2", "--method", "oracle", "--json"])?;
    ensure(code == Some(0), || format!("exit {code:?}"))?;
    let mid = ((rat(&v["alpha_lo"])? + rat(&v["alpha_hi"])?) / 2).to_f64();
    ensure((mid - 1.0 / 3.0).abs() <= 5e-3, || format!("oracle midpoint {mid}"))?;
    Ok(format!("oracle midpoint {mid:.6}"))
}

fn ac3() -> Check {
    let records = scan(&ScanConfig::new(20, q(1, 1_000_000))).map_err(|e| e.to_string())?;
    let mut checked = 0;
    for r in records.iter().filter(|r| r.r > 0) {
        let (lower, upper) = (r.lower.ok_or("missing lower")?, r.upper.ok_or("missing upper")?);
        ensure(lower <= r.alpha_hi && r.alpha_lo <= upper, || {
            format!("({}, {}, {}): {lower} / [{}, {}] / {upper}", r.n1, r.n2, r.n3, r.alpha_lo, r.alpha_hi)
        })?;
        checked += 1;
    }
    Ok(format!("{checked} sheared classes sandwiched"))
}

fn ac4() -> Check {
    let (code, v) = cli_json(&["verify", "--max-n3", "30", "--five-sixteenths", "--json"])?;
    ensure(code == Some(0) && v["pass"] == true, || format!("five-sixteenths: exit {code:?} {v}"))?;
    let worst = v["worst_set"].clone();
    let (code, v) = cli_json(&["verify", "--max-n3", "50", "--conjecture", "--json"])?;
    ensure(code == Some(0) && v["pass"] == true, || format!("conjecture: exit {code:?} {v}"))?;
    ensure(v["maximizers"] == serde_json::json!([[-1, 2, 3]]), || format!("maximizers {}", v["maximizers"]))?;
    ensure(v["near_misses"].as_array().is_some_and(|a| a.is_empty()), || format!("near misses {}", v["near_misses"]))?;
    Ok(format!("5/16 worst {worst}, 1/4 attained only at {}", v["maximizers"]))
}

fn ac5() -> Check {
    let mut r = common::rng(5);
    let mut counts = [0usize; 3];
    while counts.iter().any(|&c| c < 10_000) {
        let (n1, n2, n3) = common::ordered_tuple(&mut r, 100_000);
        if counts[0] < 10_000 {
            let cap = q(n3 as i128, 4 * (n1.abs() + n3) as i128);
            let e1 = cap * q(r.random_range(1..=1000), 1000);
            let c = lemma1_i(n1, n2, n3, e1).map_err(|e| e.to_string())?;
            ensure(c.hypothesis && c.holds(), || format!("(i) ({n1},{n2},{n3}) E1={e1}"))?;
            counts[0] += 1;
        }
        let (rr, m) = (r.random_range(1..=60i64), r.random_range(1..=60i64));
        if rr + m >= 5 && counts[1] < 10_000 {
            let c = lemma1_ii(n1, n2, n3, rr, m).map_err(|e| e.to_string())?;
            ensure(c.holds(), || format!("(ii) ({n1},{n2},{n3}) r={rr} m={m}: {}", c.value))?;
            counts[1] += 1;
        }
        if (rr, m) != (1, 1) && counts[2] < 10_000 {
            let c = lemma1_iii(n1, n2, n3, rr, m).map_err(|e| e.to_string())?;
            ensure(c.holds(), || format!("(iii) ({n1},{n2},{n3}) r={rr} m={m}: {}", c.value))?;
            counts[2] += 1;
        }
    }
    let mut classes = 0;
    for ct in enumerate_canonical(50, false).map_err(|e| e.to_string())? {
        let lp = lattice_params(&ct).map_err(|e| e.to_string())?;
        ensure(lemma4_check(&ct, &lp), || format!("lemma 4 fails at {ct}"))?;
        classes += 1;
    }
    Ok(format!("3 x 10000 lemma tuples, {classes} classes for lemma 4"))
}

fn ac6() -> Check {
    let cfg = OracleConfig::default();
    let mut worst = 0.0f64;
    for ct in common::sample_classes(20_240_601, 15, 20) {
        let inst = CoveringInstance::new(&ct).map_err(|e| e.to_string())?;
        let cover = certified_alpha(&inst, q(1, 100_000)).map_err(|e| e.to_string())?.midpoint().to_f64();
        let oracle = oracle_alpha(&ct.raw(), &cfg).map_err(|e| e.to_string())?.midpoint().to_f64();
        let gap = (cover - oracle).abs();
        ensure(gap <= 6e-3, || format!("{ct}: covering {cover} oracle {oracle}"))?;
        worst = worst.max(gap);
    }
    Ok(format!("20 classes, max gap {worst:.2e}"))
}

fn ac7() -> Check {
    let cfg = OracleConfig::default();
    let mut r = common::rng(7);
    let (mut checked, mut worst) = (0, 0.0f64);
    while checked < 50 {
        let (a, b) = (r.random_range(-20i64..=20), r.random_range(-20i64..=20));
        if a == 0 || b == 0 || a == b {
            continue;
        }
        let formula = alpha_pair(a, b).map_err(|e| e.to_string())?.to_f64();
        let oracle = oracle_alpha(&[a, b], &cfg).map_err(|e| e.to_string())?.midpoint().to_f64();
        ensure((formula - oracle).abs() <= 5e-3, || format!("{{{a}, {b}}}: {formula} vs {oracle}"))?;
        worst = worst.max((formula - oracle).abs());
        checked += 1;
    }
    let v = alpha_pair(-5, 5).map_err(|e| e.to_string())?;
    ensure(v == q(1, 4), || format!("{{-5, 5}} = {v}"))?;
    Ok(format!("50 pairs, max gap {worst:.2e}; {{-5, 5}} = 1/4"))
}

fn random_rational(r: &mut ChaCha8Rng, span: i128) -> Rational {
    let d = r.random_range(1i128..=60);
    q(r.random_range(-span * d..=span * d), d)
}

fn ac8() -> Check {
    let mut r = common::rng(8);
    let mut instances = 0;
    for ct in common::sample_classes(88, 30, 40) {
        let inst = CoveringInstance::new(&ct).map_err(|e| e.to_string())?;
        let lp = *inst.lattice();
        let gens = inst.lattice().generators();
        for _ in 0..100 {
            let p = EvalPoint::new(random_rational(&mut r, 2), random_rational(&mut r, 2));
            let v = inst.eval_f(&p);
            for g in gens {
                let shifted = EvalPoint::new(p.x + g.0, p.y + g.1);
                ensure(inst.eval_f(&shifted) == v, || format!("{ct}: periodicity at {p:?}"))?;
            }
            ensure(inst.eval_f(&EvalPoint::new(-p.x, -p.y)) == v, || format!("{ct}: symmetry at {p:?}"))?;

            let p2 = EvalPoint::new(random_rational(&mut r, 2), random_rational(&mut r, 2));
            let budget = (p.x - p2.x).abs() + (p.y - p2.y).abs();
            let (s, t) = (r.random_range(-4i64..=4), r.random_range(-4i64..=4));
            let (c1, c2) = (inst.constraint_values(&p, s, t), inst.constraint_values(&p2, s, t));
            ensure((0..3).all(|k| (c1[k] - c2[k]).abs() <= budget), || format!("{ct}: Lipschitz"))?;

            let seed = inst.nearest_pair(&p);
            let cap = inst.constraint_values(&p, seed.0, seed.1).into_iter().max().unwrap();
            let wide = inst.candidate_window(&p, cap * 3);
            ensure(inst.eval_f_over(&p, &wide).value == v, || format!("{ct}: window widening at {p:?}"))?;

            let (a, b) = (q(r.random_range(1..=99), 100), q(r.random_range(1..=99), 100));
            ensure(inst.eval_f(&inst.point(a, b)).is_positive(), || format!("{ct}: zero inside the cell"))?;
        }
        let lattice_pt = EvalPoint::new(gens[0].0 * 2 - gens[1].0 * 3, gens[0].1 * 2 - gens[1].1 * 3);
        ensure(inst.eval_f(&lattice_pt).is_zero(), || format!("{ct}: nonzero on the lattice"))?;

        if lp.r > 0 {
            let (a1, n2, n3) = (ct.n1().abs(), ct.n2(), ct.n3());
            let m_over_r = q(lp.m as i128, lp.r as i128);
            for _ in 0..50 {
                let e = q(r.random_range(1..=400), 1000);
                let s = r.random_range(-3i64..=3);
                let beta = random_rational(&mut r, 1);
                let o = inst.overlap_lengths(e, s, beta).map_err(|e| e.to_string())?;
                let expected = match o.case {
                    OverlapCase::J1InJ2 => e * 2 * (n2 + n3) / n3,
                    OverlapCase::J2InJ1 => e * 2 * (a1 + n3) / n3 * m_over_r,
                    OverlapCase::Partial => {
                        let shift = (-beta + q(s as i128, lp.m as i128)).abs();
                        (e * (n2 + n3) / n3 + (e * (a1 + n3) / n3 - shift) * m_over_r).max(Rational::ZERO)
                    }
                };
                ensure(o.length == expected, || format!("{ct}: overlap {o:?} expected {expected}"))?;
            }
            let e1 = compute_e1(&ct, &lp).map_err(|e| e.to_string())?;
            for _ in 0..20 {
                let beta = random_rational(&mut r, 1);
                let s = (beta * lp.m).round_half_up() as i64;
                let o = inst.overlap_lengths(e1, s, beta).map_err(|e| e.to_string())?;
                ensure(o.length >= q(lp.m as i128, n3 as i128), || format!("{ct}: E1 overlap {o:?}"))?;
            }
            let below = theorem1_lower(&ct, &lp).map_err(|e| e.to_string())? * q(999, 1000);
            let beta = q(1, 2 * lp.m as i128);
            let c = inst.interval_reach(below);
            let covered = (-lp.m - 2..=lp.m + 2).any(|s| (-beta + q(s as i128, lp.m as i128)).abs() <= c);
            ensure(!covered, || format!("{ct}: half step covered below the lower bound"))?;
        }
        instances += 1;
    }
    Ok(format!("{instances} instances x 100 points"))
}

fn main() -> ExitCode {
    let criteria: [(&str, Duration, fn() -> Check); 8] = [
        ("AC-1", Duration::from_secs(5), ac1),
        ("AC-2", Duration::from_secs(60), ac2),
        ("AC-3", Duration::from_secs(120), ac3),
        ("AC-4", Duration::from_secs(600), ac4),
        ("AC-5", Duration::from_secs(600), ac5),
        ("AC-6", Duration::from_secs(600), ac6),
        ("AC-7", Duration::from_secs(600), ac7),
        ("AC-8", Duration::from_secs(600), ac8),
    ];
    let mut failed = 0;
    for (id, limit, check) in criteria {
        let started = Instant::now();
        let result = check();
        let elapsed = started.elapsed();
        let verdict = match result {
            Ok(detail) if elapsed <= limit => format!("PASS {id} ({:.2}s) {detail}", elapsed.as_secs_f64()),
            Ok(detail) => format!("FAIL {id} ({:.2}s > {}s limit) {detail}", elapsed.as_secs_f64(), limit.as_secs()),
            Err(why) => format!("FAIL {id} ({:.2}s) {why}", elapsed.as_secs_f64()),
        };
        if verdict.starts_with("FAIL") {
            failed += 1;
        }
        println!("{verdict}");
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
