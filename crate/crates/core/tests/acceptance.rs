//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs as a plain binary (`harness = false`) so the report is printed even
//! when test output is captured; the process fails if any criterion fails.

mod common;

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use common::{random_body, rel_err, rng, KINDS};
use hbar_polar::body::{ConvexBody, Ellipsoid, HPolytope};
use hbar_polar::capacity::{area_oracle_1d, ellipsoid_capacity, product_capacity};
use hbar_polar::cloud::disk_example;
use hbar_polar::containment::{contains, containment_ratio};
use hbar_polar::covariance::{
    capacity_criterion, covariance_ellipsoid, covariance_from_williamson, envelope_pair, heisenberg_eigen_check,
    is_quantum_covariance, random_quantum_covariance, theorem2_check, williamson_criterion, CovarianceMatrix,
};
use hbar_polar::hardy::{hardy_check, hardy_envelope_verify, sample_on_grid, HardyClass, HardyInput, UniformGrid};
use hbar_polar::polar::{inclusion_scale, is_quantum_pair, polar_dual};
use hbar_polar::sample;
use hbar_polar::symplectic::block_diagonalize;
use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;

const TOL: f64 = 1e-9;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

/// Checks the runtime limit on top of the criterion's own verdict.
fn within(limit: Option<Duration>, elapsed: Duration) -> bool {
    limit.map_or(true, |l| elapsed < l)
}

fn polar_laws() -> Outcome {
    let mut r = rng(1);
    let mut failures = Vec::new();
    for i in 0..500 {
        let kind = KINDS[i % 3];
        let n = 1 + (i / 3) % 3;
        let hbar = r.gen_range(0.2..5.0);
        let x = random_body(kind, n, &mut r);
        let dual = polar_dual(&x, hbar).unwrap();

        let involution = polar_dual(&dual, hbar).unwrap().approx_eq(&x, TOL);

        let y = random_body(KINDS[(i + 1) % 3], n, &mut r);
        let inner = x.scaled(0.8 / containment_ratio(&y, &x).unwrap().value).unwrap();
        let reversal = contains(&y, &inner, TOL).unwrap().contained
            && contains(&polar_dual(&inner, hbar).unwrap(), &polar_dual(&y, hbar).unwrap(), TOL)
                .unwrap()
                .contained;

        let l = sample::random_invertible(n, &mut r, 0.7);
        let l_inv_t = l.clone().try_inverse().unwrap().transpose();
        let equivariance = polar_dual(&x.linear_image(&l).unwrap(), hbar)
            .unwrap()
            .approx_eq(&dual.linear_image(&l_inv_t).unwrap(), TOL);

        let lambda = r.gen_range(0.1..10.0);
        let scaling = polar_dual(&x.scaled(lambda).unwrap(), hbar)
            .unwrap()
            .approx_eq(&dual.scaled(1.0 / lambda).unwrap(), TOL);

        let radius = r.gen_range(0.1..10.0);
        let ball: ConvexBody = Ellipsoid::ball(n, radius).unwrap().into();
        let expect: ConvexBody = Ellipsoid::ball(n, hbar / radius).unwrap().into();
        let balls = polar_dual(&ball, hbar).unwrap().approx_eq(&expect, TOL);

        for (name, ok) in [
            ("involution", involution),
            ("reversal", reversal),
            ("equivariance", equivariance),
            ("scaling", scaling),
            ("ball", balls),
        ] {
            if !ok {
                failures.push(format!("{name}@{i}"));
            }
        }
    }
    outcome(
        failures.is_empty(),
        format!("500 bodies x 5 laws, failures {:?}", failures),
    )
}

fn interval_area() -> Outcome {
    let mut r = rng(2);
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let (a, b) = (r.gen_range(1e-3..1e3), r.gen_range(1e-3..1e3));
        let x: ConvexBody = HPolytope::interval(a).unwrap().into();
        let p: ConvexBody = HPolytope::interval(b).unwrap().into();
        let c = product_capacity(&x, &p, 1.0).unwrap().value;
        worst = worst.max(rel_err(c, 4.0 * a * b)).max(rel_err(c, area_oracle_1d(&x, &p).unwrap()));
    }
    outcome(worst <= 1e-12, format!("1000 interval pairs, worst rel err {worst:.1e}"))
}

fn theorem1() -> Outcome {
    let mut r = rng(3);
    let mut worst = 0.0f64;
    for n in 1..=3 {
        for _ in 0..20 {
            let hbar = r.gen_range(0.2..5.0);
            let e: ConvexBody = Ellipsoid::new(sample::random_spd(n, &mut r, 1.5)).unwrap().into();
            let widths: Vec<f64> = (0..n).map(|_| r.gen_range(0.1..10.0)).collect();
            let b: ConvexBody = HPolytope::from_box(&widths).unwrap().into();
            for x in [e, b] {
                let c = product_capacity(&x, &polar_dual(&x, hbar).unwrap(), hbar).unwrap();
                worst = worst.max(rel_err(c.value, 4.0 * hbar));
            }
        }
    }
    let mut disagreements = 0;
    let mut counts = [0usize; 2];
    for i in 0..200 {
        let n = 1 + i % 3;
        let hbar = r.gen_range(0.5..2.0);
        let x = random_body(common::random_kind(&mut r), n, &mut r);
        let p0 = random_body(common::random_kind(&mut r), n, &mut r);
        let target = [0.5, 0.99, 1.0, 1.01, 2.0][i % 5];
        let p = p0.scaled(target / inclusion_scale(&x, &p0, hbar).unwrap()).unwrap();
        let v = is_quantum_pair(&x, &p, hbar, TOL).unwrap();
        let c = product_capacity(&x, &p, hbar).unwrap().value;
        let forward = !v.is_pair || c >= 4.0 * hbar * (1.0 - TOL);
        let backward = c < 4.0 * hbar || v.is_pair;
        if !(forward && backward) {
            disagreements += 1;
        }
        counts[v.is_pair as usize] += 1;
    }
    outcome(
        worst <= TOL && disagreements == 0,
        format!(
            "c(X x X^hbar) worst rel err {worst:.1e} over 120 ellipsoids/boxes; 200 pairs ({} pairs, {} non-pairs), {disagreements} disagreements",
            counts[1], counts[0]
        ),
    )
}

fn covariance_equivalence() -> Outcome {
    let mut r = rng(4);
    let mut disagreements = 0;
    let mut valid = 0;
    for i in 0..500 {
        let n = 1 + i % 3;
        let hbar = [1.0, 0.5, 2.0][i % 3];
        let s = match i % 4 {
            0 => random_quantum_covariance(n, i as u64, hbar, 0.0).unwrap(),
            1 => random_quantum_covariance(n, i as u64, hbar, r.gen_range(0.0..1.0)).unwrap(),
            2 => {
                let m = sample::random_symplectic(n, &mut r);
                let mut nu: Vec<f64> = (0..n).map(|_| hbar * r.gen_range(0.5..2.0)).collect();
                nu[r.gen_range(0..n)] = 0.5 * hbar * r.gen_range(0.2..0.999);
                covariance_from_williamson(&m, &nu).unwrap()
            }
            _ => CovarianceMatrix::new(sample::random_spd(2 * n, &mut r, 1.5) * hbar).unwrap(),
        };
        let a = is_quantum_covariance(&s, hbar, TOL).unwrap();
        let b = capacity_criterion(&s, hbar, TOL).unwrap();
        let c = williamson_criterion(&s, hbar, TOL).unwrap();
        if a != b || b != c {
            disagreements += 1;
        }
        valid += a as usize;
    }
    let vacuum = CovarianceMatrix::new(DMatrix::identity(2, 2) * 0.5).unwrap();
    let c = ellipsoid_capacity(&covariance_ellipsoid(&vacuum).unwrap()).unwrap();
    let boundary = (c - PI).abs() <= 4.0 * f64::EPSILON * PI && capacity_criterion(&vacuum, 1.0, TOL).unwrap();
    outcome(
        disagreements == 0 && boundary && valid > 0 && valid < 500,
        format!(
            "500 matrices ({valid} valid), {disagreements} disagreements; c(Omega) at Sigma = I/2 is {c:.15} (pi = {PI:.15})"
        ),
    )
}

fn theorem2() -> Outcome {
    let mut r = rng(5);
    let mut failures = Vec::new();
    let mut boundary = 0;
    for i in 0..500 {
        let n = 1 + i % 4;
        let slack = if i % 5 == 0 {
            boundary += 1;
            0.0
        } else {
            r.gen_range(0.0..3.0)
        };
        let s = random_quantum_covariance(n, 5000 + i as u64, 1.0, slack).unwrap();
        match theorem2_check(&s, 1.0, TOL) {
            Ok(v) if v.is_pair => {}
            other => failures.push(format!("{i}: {other:?}")),
        }
    }
    outcome(
        failures.is_empty(),
        format!("500 valid matrices n <= 4 ({boundary} with slack 0), failures {:?}", failures),
    )
}

fn block_williamson() -> Outcome {
    let mut r = rng(6);
    let (mut worst_residual, mut worst_lambda) = (0.0f64, 0.0f64);
    let mut errors = 0;
    for i in 0..100 {
        let n = 1 + i % 3;
        let a = sample::random_spd(n, &mut r, 1.0);
        let b = sample::random_spd(n, &mut r, 1.0);
        let Ok(w) = block_diagonalize(&a, &b) else {
            errors += 1;
            continue;
        };
        worst_residual = worst_residual.max(w.residual);
        // Oracle: eigenvalues of the non-symmetric product from a real Schur form.
        let mut oracle: Vec<f64> = (&a * &b).eigenvalues().unwrap().iter().map(|v| v.sqrt()).collect();
        oracle.sort_by(f64::total_cmp);
        for (l, o) in w.lambda.diagonal().iter().zip(&oracle) {
            worst_lambda = worst_lambda.max((l - o).abs() / o.max(1.0));
        }
    }
    outcome(
        errors == 0 && worst_residual <= 1e-8 && worst_lambda <= 1e-10,
        format!("100 SPD pairs, worst residual {worst_residual:.1e}, worst Lambda err {worst_lambda:.1e}, errors {errors}"),
    )
}

fn hardy() -> Outcome {
    let grid = UniformGrid::spanning(-20.0, 20.0, 1024).unwrap();
    let psi = sample_on_grid(&grid, |x| Complex64::new((-x * x / 4.0).exp(), 0.0));
    let at_half = hardy_envelope_verify(&psi, &grid, 1.0, 0.5, 1.0).unwrap();
    let at_04 = hardy_envelope_verify(&psi, &grid, 1.0, 0.4, 1.0).unwrap();
    let envelope = at_half.holds && !at_04.holds;

    let boundary = (1..=3).all(|n| {
        let half = DMatrix::identity(n, n) * 0.5;
        let v = hardy_check(&HardyInput::new(half.clone(), half, 1.0).unwrap(), 1.0).unwrap();
        v.classification == HardyClass::GaussianBoundary
    });

    let mut r = rng(7);
    let mut mismatches = 0;
    for i in 0..200 {
        let n = 1 + i % 3;
        let a = sample::random_spd(n, &mut r, 1.0);
        let b = sample::random_spd(n, &mut r, 1.0) * (0.25 * r.gen_range(0.3..6.0));
        let eig = heisenberg_eigen_check(&a, &b, 1.0, TOL).unwrap().iter().all(|c| *c);
        let (x, p) = envelope_pair(&a, &b).unwrap();
        if eig != is_quantum_pair(&x, &p, 1.0, TOL).unwrap().is_pair {
            mismatches += 1;
        }
    }
    outcome(
        envelope && boundary && mismatches == 0,
        format!(
            "envelope (1, 0.5) {} C = {:.3}, (1, 0.4) {} C = {:.3e}; A = B = I/2 boundary {boundary}; 200 (A, B) mismatches {mismatches}",
            if at_half.holds { "holds" } else { "fails" },
            at_half.constant,
            if at_04.holds { "holds" } else { "fails" },
            at_04.constant
        ),
    )
}

fn disk_demo() -> Outcome {
    let hbar = 1.0;
    let mut worst_var = 0.0f64;
    let mut worst_flip = 0.0f64;
    let mut sweep_ok = true;
    let mut flagged = true;
    for seed in 0..5 {
        let r = disk_example(1.0, 1.0, 100_000, seed, hbar).unwrap();
        for v in r.x_variances.iter() {
            worst_var = worst_var.max(rel_err(*v, 0.25));
        }
        worst_flip = worst_flip.max(rel_err(r.estimated_flip_product, hbar));
        flagged &= !r.stated_matches_measured && r.to_text().contains("flagged");
        // The verdict itself must flip inside the ±2% window.
        let below = disk_example(0.98, 1.0, 100_000, 100 + seed, hbar).unwrap().pair.is_pair;
        let above = disk_example(1.02, 1.0, 100_000, 200 + seed, hbar).unwrap().pair.is_pair;
        sweep_ok &= !below && above;
    }
    outcome(
        worst_var <= 0.04 && worst_flip <= 0.02 && sweep_ok && flagged,
        format!(
            "N = 1e5 over 5 seeds: Var(x) worst rel err {worst_var:.2e}, flip worst rel err {worst_flip:.2e}, verdict flips inside +-2% {sweep_ok}, pi R^2/4 flagged {flagged}"
        ),
    )
}

fn capacity_axioms() -> Outcome {
    let mut r = rng(9);
    let (mut mono_fail, mut worst_conf, mut worst_inv) = (0, 0.0f64, 0.0f64);
    for i in 0..100 {
        let n = 1 + i % 3;
        let q = sample::random_spd(2 * n, &mut r, 1.0);
        let g = sample::gaussian_matrix(2 * n, 2 * n, &mut r) * 0.5;
        let outer = Ellipsoid::new(q.clone()).unwrap();
        let inner = Ellipsoid::new(&q + &g * g.transpose()).unwrap();
        let c = ellipsoid_capacity(&outer).unwrap();
        if ellipsoid_capacity(&inner).unwrap() > c * (1.0 + TOL) {
            mono_fail += 1;
        }

        let lambda: f64 = r.gen_range(0.1..10.0);
        let scaled = Ellipsoid::new(q.clone() / (lambda * lambda)).unwrap();
        worst_conf = worst_conf.max(rel_err(ellipsoid_capacity(&scaled).unwrap(), lambda * lambda * c));

        let s = sample::random_symplectic(n, &mut r);
        let ConvexBody::Ellipsoid(image) = ConvexBody::from(outer).linear_image(&s).unwrap() else {
            unreachable!()
        };
        worst_inv = worst_inv.max(rel_err(ellipsoid_capacity(&image).unwrap(), c));
    }
    outcome(
        mono_fail == 0 && worst_conf <= TOL && worst_inv <= TOL,
        format!(
            "100 ellipsoids: monotonicity failures {mono_fail}, conformality worst {worst_conf:.1e}, symplectic invariance worst {worst_inv:.1e}"
        ),
    )
}

fn main() {
    type Criterion = (&'static str, fn() -> Outcome, Option<Duration>);
    let criteria: [Criterion; 9] = [
        ("polar-duality law suite", polar_laws, Some(Duration::from_secs(10))),
        ("n=1 capacity equals area", interval_area, Some(Duration::from_secs(1))),
        ("product capacity 4hbar and pair equivalence", theorem1, None),
        ("sigpos / capacity / Williamson equivalence", covariance_equivalence, None),
        ("projections of quantum ellipsoids form pairs", theorem2, None),
        ("block Williamson diagonalization", block_williamson, None),
        ("Hardy envelope and eigenvalue criterion", hardy, Some(Duration::from_secs(5))),
        ("uniform disk demo", disk_demo, None),
        ("capacity axioms on ellipsoids", capacity_axioms, None),
    ];
    let mut failed = 0;
    for (k, (name, run, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = run();
        let elapsed = start.elapsed();
        let pass = o.pass && within(*limit, elapsed);
        if !pass {
            failed += 1;
        }
        let limit = limit.map_or(String::new(), |l| format!(", limit {:.0} s", l.as_secs_f64()));
        println!(
            "[{}] criterion {}: {name}: {} ({:.2} s{limit})",
            if pass { "PASS" } else { "FAIL" },
            k + 1,
            o.detail,
            elapsed.as_secs_f64()
        );
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
