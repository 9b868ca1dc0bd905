//! Acceptance gate: nine end-to-end checks, one PASS/FAIL line each.
//!
//! Runs as a plain binary (`harness = false`) so the lines are always shown
//! by `cargo test`; exits non-zero if any criterion fails.

use std::process::ExitCode;
use std::time::Instant;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use steklov_core::classify::classify;
use steklov_core::flux::{cut_sums, distance_form, lambda2_via_distance, q_form, BoundaryFlux};
use steklov_core::reduce::{
    arm_transfer, balance_main_step, balance_side_pair, double_spider_lambda2, MOVE_MARGIN,
};
use steklov_core::roots::{double_spider_rho, spider_lambda2, threshold_data, Regime};
use steklov_core::spectral::lambda2_numeric;
use steklov_core::tree::{all_trees, canonical_code, SpiderProfile};
use steklov_core::verify::{
    diameter_bound_excess, verify_classification, verify_cross_methods, verify_domination,
    verify_unimodality, Verdict,
};
use steklov_core::{DoubleSpiderProfile, Error, Tree};

const JOBS: usize = 4;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn fail(e: Error) -> Outcome {
    outcome(false, format!("error: {e}"))
}

/// All partitions of `total` into positive parts, each descending.
fn partitions(total: usize, max_part: usize) -> Vec<Vec<usize>> {
    if total == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in (1..=max_part.min(total)).rev() {
        for mut rest in partitions(total - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn path_sharpness() -> Result<Outcome, Error> {
    let mut worst: f64 = 0.0;
    for d in 2..=15 {
        let t = Tree::path(d)?;
        let want = 2.0 / d as f64;
        worst = worst.max((lambda2_numeric(&t)? - want).abs());
        worst = worst.max((lambda2_via_distance(&t)? - want).abs());
        if d % 2 == 1 {
            let r = (d - 1) / 2;
            let p = DoubleSpiderProfile::new(vec![r], vec![r])?;
            worst = worst.max((double_spider_lambda2(&p)? - want).abs());
        }
    }
    Ok(outcome(worst <= 1e-12, format!("D = 2..15, max |λ₂ − 2/D| = {worst:.2e}")))
}

fn diameter_bound() -> Result<Outcome, Error> {
    let mut worst = f64::NEG_INFINITY;
    let mut count = 0;
    for n in 2..=14 {
        worst = worst.max(diameter_bound_excess(n, JOBS)?);
        count += all_trees(n).count();
    }
    Ok(outcome(
        worst <= 1e-9,
        format!("{count} trees, n ≤ 14, max (λ₂ − 2/D) = {worst:.3e}"),
    ))
}

/// Criteria 3 and 9 share the same runs.
fn classification() -> Result<(Outcome, Outcome), Error> {
    let mut runs = 0;
    let mut bad = Vec::new();
    let mut non_spider = Vec::new();
    let mut trees = 0;
    for (d, n_max) in [(3, 16), (5, 16), (7, 15), (9, 14)] {
        for n in d + 1..=n_max {
            let rep = verify_classification(n, d, JOBS)?;
            runs += 1;
            trees += rep.trees_enumerated;
            let candidates: Vec<_> = classify(n, d)?
                .candidates
                .iter()
                .map(|c| canonical_code(&c.tree))
                .collect();
            let within = rep.argmax_codes.iter().all(|c| candidates.contains(c));
            if rep.verdict != Verdict::Match || !within {
                bad.push(format!("(n={n}, D={d}): {}", rep.verdict));
            }
            if !rep.winners_are_spiders() {
                non_spider.push(format!("(n={n}, D={d})"));
            }
        }
    }
    let c3 = outcome(
        bad.is_empty(),
        if bad.is_empty() {
            format!("{runs} (n, D) pairs, {trees} trees, all match")
        } else {
            format!("failing: {}", bad.join(", "))
        },
    );
    let c9 = outcome(
        non_spider.is_empty(),
        if non_spider.is_empty() {
            format!("every brute-force winner over {runs} pairs is a spider")
        } else {
            format!("non-spider winners at {}", non_spider.join(", "))
        },
    );
    Ok((c3, c9))
}

fn closed_forms() -> Result<Outcome, Error> {
    let threshold = |r, t| -> Result<(f64, f64), Error> {
        match threshold_data(r, t)?.regime {
            Regime::Threshold { zeta, kappa } => Ok((zeta, kappa)),
            other => Err(Error::Inconsistent(format!("unexpected regime {other:?}"))),
        }
    };
    let ds = |a: &[usize], b: &[usize]| DoubleSpiderProfile::new(a.to_vec(), b.to_vec());
    let (s3, s5) = (3f64.sqrt(), 5f64.sqrt());
    let checks = [
        ("λ₂ S(3,2,1)", spider_lambda2(&[3, 2, 1])?.value, (6.0 - s3) / 11.0),
        ("λ₂ S(2,1,1)", spider_lambda2(&[2, 1, 1])?.value, 0.6),
        ("ρ DS(2,1;2)", double_spider_rho(&ds(&[2, 1], &[2])?)?.value, 2.0 + 1.0 / s3),
        ("ρ DS(3,1;3,1)", double_spider_rho(&ds(&[3, 1], &[3, 1])?)?.value, (5.0 + s5) / 2.0),
        ("ζ_{2,1}", threshold(4, 1)?.0, (3.0 - 2f64.sqrt()) / 7.0),
        ("κ_{4,1}", threshold(4, 1)?.1, -(1.0 + 2f64.sqrt())),
        ("κ_{6,2}", threshold(6, 2)?.1, 1.0),
    ];
    let failing: Vec<String> = checks
        .iter()
        .filter(|(_, got, want)| (got - want).abs() > 1e-11)
        .map(|(name, got, want)| format!("{name}: {got} vs {want}"))
        .collect();
    let worst = checks.iter().map(|(_, g, w)| (g - w).abs()).fold(0.0, f64::max);
    Ok(outcome(
        failing.is_empty(),
        if failing.is_empty() {
            format!("{} values, max error {worst:.2e}", checks.len())
        } else {
            failing.join("; ")
        },
    ))
}

fn unimodality() -> Result<Outcome, Error> {
    let mut failing = Vec::new();
    for r in 1..=8 {
        for m in 1..=60 {
            if !verify_unimodality(r, m)?.pass {
                failing.push(format!("(r={r}, M={m})"));
            }
        }
    }
    Ok(outcome(
        failing.is_empty(),
        if failing.is_empty() {
            "1 ≤ r ≤ 8, 1 ≤ M ≤ 60: all unimodal with peak at q₋ or q₊".to_string()
        } else {
            format!("failing: {}", failing.join(", "))
        },
    ))
}

fn monotone_moves() -> Result<Outcome, Error> {
    let mut moves = 0;
    let mut worst_gain = f64::INFINITY;
    let mut failing = Vec::new();
    let mut record = |label: String, res: Result<f64, Error>| match res {
        Ok(gain) => {
            moves += 1;
            worst_gain = worst_gain.min(gain);
        }
        Err(e) => failing.push(format!("{label}: {e}")),
    };

    for total in 2..=14 {
        for ls in partitions(total, total) {
            if ls.len() < 2 {
                continue;
            }
            let p = SpiderProfile::new(ls.clone())?;
            let (l1, l2) = (ls[0], ls[1]);
            if ls.len() >= 3 && l1 >= l2 + 2 && (l1 + l2) % 2 == 1 {
                record(format!("main {p}"), balance_main_step(&p).map(|m| m.gain()));
            }
            if l1 == l2 + 1 {
                let lat = p.laterals();
                for i in 0..lat.len() {
                    for j in 0..lat.len() {
                        if i != j && lat[i] >= lat[j] + 2 {
                            record(format!("side {p} ({i},{j})"), balance_side_pair(&p, i, j).map(|m| m.gain()));
                        }
                    }
                }
            }
        }
    }

    // Double spiders with a₁ = b₁ and total length ≤ 14, every donor branch.
    for total in 2..=14 {
        for a_total in 1..total {
            for a in partitions(a_total, a_total) {
                for b in partitions(total - a_total, a[0]) {
                    if b[0] != a[0] || (a.len() < 2 && b.len() < 2) {
                        continue;
                    }
                    let p = DoubleSpiderProfile::new(a.clone(), b)?;
                    for k in 1..p.a().len().max(p.b().len()) {
                        match arm_transfer(&p, k) {
                            Ok(m) => record(format!("transfer {p} k={k}"), Ok(m.gain())),
                            Err(Error::IllegalMove(_)) => {}
                            Err(e) => record(format!("transfer {p} k={k}"), Err(e)),
                        }
                    }
                }
            }
        }
    }
    let pass = failing.is_empty() && worst_gain > MOVE_MARGIN;
    Ok(outcome(
        pass,
        if failing.is_empty() {
            format!("{moves} legal moves, smallest gain {worst_gain:.3e}")
        } else {
            format!("{} failing moves, first: {}", failing.len(), failing[0])
        },
    ))
}

fn domination() -> Result<Outcome, Error> {
    let (mut trees, mut equal, mut worst) = (0, 0, f64::NEG_INFINITY);
    let mut failing = Vec::new();
    for d in (3..=11).step_by(2) {
        for n in d + 1..=13 {
            let rep = verify_domination(n, d, JOBS)?;
            trees += rep.trees;
            equal += rep.equality_cases;
            worst = worst.max(rep.worst_margin);
            if !rep.pass {
                failing.push(format!("(n={n}, D={d})"));
            }
        }
    }
    Ok(outcome(
        failing.is_empty(),
        if failing.is_empty() {
            format!("{trees} trees, worst margin {worst:.3e}, {equal} equality cases all double spiders")
        } else {
            format!("failing: {}", failing.join(", "))
        },
    ))
}

fn cross_methods() -> Result<Outcome, Error> {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let (mut trees, mut worst_lambda, mut worst_identity) = (0, 0.0f64, 0.0f64);
    let mut failing = Vec::new();
    for n in 2..=12 {
        for t in all_trees(n) {
            trees += 1;
            let rep = verify_cross_methods(&t)?;
            worst_lambda = worst_lambda.max(rep.max_rel_gap);
            if !rep.pass {
                failing.push(format!("λ₂ gap {:.2e} on\n{t}", rep.max_rel_gap));
            }
            let m = t.leaves().len();
            for _ in 0..20 {
                let z = BoundaryFlux::centered((0..m).map(|_| rng.gen_range(-1.0..1.0)).collect());
                let q = q_form(&t, &z)?;
                let cuts = cut_sums(&t, &z, 0)?.total;
                let dist = distance_form(&t, &z)?;
                let gap = (q - cuts).abs().max((q - dist).abs()) / q.abs().max(1e-300);
                worst_identity = worst_identity.max(gap);
                if gap > 1e-10 {
                    failing.push(format!("flux identity gap {gap:.2e}"));
                }
            }
        }
    }
    Ok(outcome(
        failing.is_empty(),
        if failing.is_empty() {
            format!(
                "{trees} trees × 20 fluxes; max λ₂ gap {worst_lambda:.2e}, max identity gap {worst_identity:.2e}"
            )
        } else {
            format!("{} failures, first: {}", failing.len(), failing[0])
        },
    ))
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, f64) {
    let t0 = Instant::now();
    let out = f();
    (out, t0.elapsed().as_secs_f64())
}

type Check = fn() -> Result<Outcome, Error>;

fn main() -> ExitCode {
    let mut results: Vec<(u8, &str, Outcome, f64)> = Vec::new();
    let checks: [(u8, &str, Check); 7] = [
        (1, "path sharpness", path_sharpness),
        (2, "diameter bound λ₂ ≤ 2/D", diameter_bound),
        (4, "closed-form spot checks", closed_forms),
        (5, "unimodality of Σ", unimodality),
        (6, "monotone moves", monotone_moves),
        (7, "domination and rigidity", domination),
        (8, "cross-method agreement", cross_methods),
    ];
    for (id, name, f) in checks {
        let (o, secs) = timed(f);
        results.push((id, name, o.unwrap_or_else(fail), secs));
    }
    let (both, secs) = timed(classification);
    let (c3, c9) = both.unwrap_or_else(|e| (fail(e.clone()), fail(e)));
    results.push((3, "classification certification", c3, secs));
    results.push((9, "winners are spiders", c9, 0.0));

    results.sort_by_key(|r| r.0);
    let mut all = true;
    for (id, name, o, secs) in &results {
        all &= o.pass;
        let tag = if o.pass { "PASS" } else { "FAIL" };
        println!("criterion {id} [{tag}] {name}: {} ({secs:.1}s)", o.detail);
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
