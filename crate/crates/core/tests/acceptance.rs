//! Acceptance suite. Runs every criterion at its stated tolerance, prints
//! one PASS/FAIL line per criterion and exits nonzero if any fails.
//! Reference values come from independent oracles written here, not from
//! the library routine under test.

use std::path::PathBuf;
use std::process::Command;
use std::time::Instant;

use hardy_dirichlet::bohr::MultiIndex;
use hardy_dirichlet::bounds::{
    abel_tail_bound, disc_pointwise_bound, disc_two_point_bound, pointwise_bound, truncation_ratio,
    DEFAULT_TRUNCATION_CONSTANT,
};
use hardy_dirichlet::io::{gen_random, CoefficientLaw, RandomSpec};
use hardy_dirichlet::montel::{
    certify_uniform_cauchy, coefficientwise_median, dense_enumerate_in, diagonal_extract,
    dirichlet_montel, limit_norm_check, tail_half, AuditConfig, CompactBox, DirichletMontelConfig,
    ToleranceSchedule,
};
use hardy_dirichlet::polytorus::{
    bayart_mean_norm, extract_coefficients, hp_norm, ExtractionGrid, GridMethod, PointInPolydisc,
    QuadratureConfig,
};
use hardy_dirichlet::series::{DirichletPolynomial, HpIndex, MonomialExpansion};
use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type C = Complex<f64>;

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

/// `sqrt(sum |a_n|^2)` straight from the coefficient list.
fn l2_of(values: impl Iterator<Item = C>) -> f64 {
    values.map(|a| a.re * a.re + a.im * a.im).sum::<f64>().sqrt()
}

fn random_dirichlet(rng: &mut ChaCha8Rng, max_terms: usize, max_n: u64, max_primes: Option<usize>) -> DirichletPolynomial<f64> {
    let spec = RandomSpec {
        terms: rng.random_range(1..=max_terms),
        max_n,
        law: CoefficientLaw::UnitDisc,
        max_primes,
    };
    gen_random(&spec, rng.random()).unwrap()
}

fn random_point_in_disc(rng: &mut ChaCha8Rng, radius: f64) -> C {
    let r = radius * rng.random::<f64>().sqrt();
    C::from_polar(r, std::f64::consts::TAU * rng.random::<f64>())
}

fn random_expansion(rng: &mut ChaCha8Rng, max_vars: usize, max_degree: u32) -> (MonomialExpansion<f64>, usize) {
    let m = rng.random_range(1..=max_vars);
    let terms = rng.random_range(1..=12);
    let mut list = Vec::new();
    for _ in 0..terms {
        let exps: Vec<u32> = (0..m).map(|_| rng.random_range(0..=max_degree)).collect();
        let c = C::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
        list.push((MultiIndex::from_dense(&exps), c));
    }
    (MonomialExpansion::from_terms(list).unwrap(), m)
}

/// Direct evaluation `sum c_alpha z^alpha` by repeated multiplication.
fn eval_direct(f: &MonomialExpansion<f64>, z: &[C]) -> C {
    let mut acc = C::new(0.0, 0.0);
    for (alpha, c) in f.iter() {
        let mut term = c;
        for (j, &e) in alpha.to_dense().iter().enumerate() {
            for _ in 0..e {
                term *= z[j];
            }
        }
        acc += term;
    }
    acc
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let cfg = QuadratureConfig {
        method: GridMethod::TensorGrid,
        ..Default::default()
    };
    let mut worst = 0.0f64;
    for _ in 0..200 {
        let d = random_dirichlet(&mut rng, 10, 30, Some(3));
        let f = d.lift().unwrap();
        let est = hp_norm(&f, HpIndex::two(), &cfg).unwrap();
        let exact = l2_of(d.iter().map(|(_, a)| a));
        worst = worst.max((est.value - exact).abs() / exact);
    }
    let secs = start.elapsed().as_secs_f64();
    outcome(
        worst <= 1e-9 && secs <= 60.0,
        format!("max rel err {worst:.2e} (tol 1e-9), {secs:.2} s (limit 60 s)"),
    )
}

fn criterion_2() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(202);
    let mut worst = 0.0f64;
    for _ in 0..50 {
        let d = random_dirichlet(&mut rng, 10, 20, None);
        let est = bayart_mean_norm(&d, HpIndex::two(), 1e4, 200_000).unwrap();
        let exact = l2_of(d.iter().map(|(_, a)| a));
        worst = worst.max((est.value - exact).abs() / exact);
    }
    outcome(worst <= 0.02, format!("max rel err {worst:.2e} (tol 2e-2)"))
}

fn criterion_3() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(303);
    let mut worst = 0.0f64;
    for _ in 0..200 {
        let (f, m) = random_expansion(&mut rng, 3, 6);
        let got = extract_coefficients(|z| eval_direct(&f, z), m, 6, ExtractionGrid::for_degree(6)).unwrap();
        for (alpha, c) in got.iter() {
            worst = worst.max((c - f.coefficient(alpha)).norm());
        }
        for (alpha, c) in f.iter() {
            worst = worst.max((got.coefficient(alpha) - c).norm());
        }
    }
    outcome(worst <= 1e-10, format!("max abs err {worst:.2e} (tol 1e-10)"))
}

fn criterion_4() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(404);
    let cfg = QuadratureConfig::default();
    let mut held = 0;
    let mut worst_ratio = 0.0f64;
    for _ in 0..1000 {
        let (f, m) = random_expansion(&mut rng, 4, 4);
        let radius = rng.random_range(0.05..0.95);
        let z: Vec<C> = (0..m).map(|_| random_point_in_disc(&mut rng, radius)).collect();
        let z = PointInPolydisc::new(z).unwrap();
        let norm = hp_norm(&f, HpIndex::two(), &cfg).unwrap();
        let oracle = l2_of(f.iter().map(|(_, c)| c));
        assert!((norm.value - oracle).abs() <= 1e-12 * oracle);
        let r = pointwise_bound(&f, HpIndex::two(), &z, &norm).unwrap();
        let lhs = eval_direct(&f, z.coords()).norm();
        let n2: f64 = z.coords().iter().map(|c| c.norm_sqr()).sum();
        let ninf = z.coords().iter().map(|c| c.norm()).fold(0.0, f64::max);
        let rhs = (n2 / (1.0 - ninf * ninf)).exp() * oracle;
        if r.holds && lhs <= rhs {
            held += 1;
        }
        worst_ratio = worst_ratio.max(lhs / rhs);
    }
    outcome(held == 1000, format!("{held}/1000 hold, max lhs/rhs {worst_ratio:.3}"))
}

fn poly_eval(coefs: &[C], w: C) -> C {
    coefs.iter().rev().fold(C::new(0.0, 0.0), |acc, &c| acc * w + c)
}

fn criterion_5() -> Outcome {
    const SAMPLES: usize = 8192;
    let mut rng = ChaCha8Rng::seed_from_u64(505);
    let circle: Vec<C> = (0..SAMPLES)
        .map(|k| C::from_polar(1.0, std::f64::consts::TAU * k as f64 / SAMPLES as f64))
        .collect();
    let mut cauchy_held = 0;
    let mut two_point_held = 0;
    for _ in 0..500 {
        let degree = rng.random_range(0..=8);
        let coefs: Vec<C> = (0..=degree)
            .map(|_| C::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
            .collect();
        let f = |w: C| poly_eval(&coefs, w);

        // H_1 norm of a polynomial: the circle mean of |f| at r = 1.
        let h1 = circle.iter().map(|&w| f(w).norm()).sum::<f64>() / SAMPLES as f64;
        let z = random_point_in_disc(&mut rng, 0.99);
        if disc_pointwise_bound(f, h1, z).unwrap().holds {
            cauchy_held += 1;
        }

        let s = rng.random_range(0.1..0.99);
        let z1 = random_point_in_disc(&mut rng, 0.98 * s);
        let z2 = random_point_in_disc(&mut rng, 0.98 * s);
        let sup = circle.iter().map(|&w| f(w * s).norm()).fold(0.0, f64::max);
        if disc_two_point_bound(f, s, z1, z2, sup).unwrap().holds {
            two_point_held += 1;
        }
    }
    outcome(
        cauchy_held == 500 && two_point_held == 500,
        format!("pointwise {cauchy_held}/500, two-point {two_point_held}/500"),
    )
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(606);
    let cfg = QuadratureConfig::default();
    let mut held = 0;
    let mut worst = 0.0f64;
    for _ in 0..500 {
        let d = random_dirichlet(&mut rng, 12, 60, None);
        let x = rng.random_range(2.0..64.0);
        let r = truncation_ratio(&d, x, HpIndex::two(), DEFAULT_TRUNCATION_CONSTANT, &cfg).unwrap();
        let num = l2_of(d.iter().filter(|&(n, _)| n as f64 <= x).map(|(_, a)| a));
        let oracle = num / l2_of(d.iter().map(|(_, a)| a));
        if r.lhs <= 1.0 && (r.lhs - oracle).abs() <= 1e-12 && r.holds {
            held += 1;
        }
        worst = worst.max(r.lhs);
    }
    outcome(held == 500, format!("{held}/500 with ratio <= 1, max ratio {worst:.6}"))
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(707);
    let mut held = 0;
    let mut total = 0;
    let mut worst = 0.0f64;
    let epss = [0.25, 0.5, 1.0];
    let ls = [5u64, 20];
    for k in 0..500 {
        let eps = epss[k % 3];
        let l = ls[(k / 3) % 2];
        let d = random_dirichlet(&mut rng, 15, 120, None);
        let r = abel_tail_bound(&d, eps, l, DEFAULT_TRUNCATION_CONSTANT).unwrap();
        let lhs = l2_of(
            d.iter()
                .filter(|&(n, _)| n > l)
                .map(|(n, a)| a * (n as f64).powf(-eps)),
        );
        total += 1;
        if r.holds && (r.lhs - lhs).abs() <= 1e-12 * lhs.max(1.0) && lhs <= r.rhs {
            held += 1;
        }
        worst = worst.max(lhs / r.rhs);
    }
    outcome(held == total, format!("{held}/{total} hold, max lhs/rhs {worst:.3}"))
}

fn power(n: u32) -> MonomialExpansion<f64> {
    MonomialExpansion::from_terms([(MultiIndex::monomial(1, n).unwrap(), C::new(1.0, 0.0))]).unwrap()
}

fn criterion_8() -> Outcome {
    let family: Vec<_> = (1..=32).map(power).collect();
    let exponent = |i: usize| i as i32 + 1;
    let k = CompactBox::new(vec![0.5]).unwrap();
    let dense = dense_enumerate_in(32, &k);
    let report = diagonal_extract(&family, &dense, &ToleranceSchedule::Harmonic).unwrap();
    let tail: Vec<usize> = report
        .selected_indices
        .iter()
        .copied()
        .filter(|&i| exponent(i) >= 11)
        .collect();
    let audit = AuditConfig {
        samples: 10_000,
        seed: 8,
        ..Default::default()
    };
    let (certified, achieved) = certify_uniform_cauchy(&family, &tail, &k, 1e-3, &audit).unwrap();
    // Oracle: sup over |z| <= 1/2 of |z^a - z^b| is 2^-a + 2^-b (at z = -1/2
    // when a, b differ in parity), at most twice the smallest power.
    let half = tail_half(&tail);
    let n_min = half.first().map_or(0, |&i| exponent(i));
    let oracle = if half.len() < 2 { 0.0 } else { 2.0 * 0.5f64.powi(n_min) };
    let members: Vec<_> = half.iter().map(|&i| &family[i]).collect();
    let limit = coefficientwise_median(&members);
    let check = limit_norm_check(&limit, HpIndex::two(), 1.0, &QuadratureConfig::default()).unwrap();
    let pass = tail.len() >= 2 && certified && achieved <= oracle + 1e-15 && limit.is_empty() && check.holds;
    outcome(
        pass,
        format!(
            "tail N = {}..{}, achieved {achieved:.3e} <= {oracle:.3e} (target 1e-3), limit zero, ||limit|| = {} <= {}",
            tail.first().map_or(0, |&i| exponent(i)),
            tail.last().map_or(0, |&i| exponent(i)),
            check.lhs,
            check.rhs
        ),
    )
}

fn criterion_9() -> Outcome {
    let family: Vec<DirichletPolynomial<f64>> = (2..=200).map(|n| DirichletPolynomial::monomial(n).unwrap()).collect();
    let mut worst_gap = 0.0f64;
    for (i, a) in family.iter().enumerate() {
        for b in &family[i + 1..] {
            worst_gap = worst_gap.max((a.h2_distance(b) - 2f64.sqrt()).abs());
        }
    }
    let report = dirichlet_montel(&family, &DirichletMontelConfig::default()).unwrap();
    let cert = report.dirichlet.unwrap();
    let tail: Vec<f64> = tail_half(&report.selected_indices)
        .iter()
        .map(|&i| (i + 2) as f64)
        .collect();
    // Oracle: ||m^{-eps} m^{-s} - n^{-eps} n^{-s}||_2 = sqrt(m^{-2 eps} + n^{-2 eps}).
    let mut oracle = 0.0f64;
    for (i, &m) in tail.iter().enumerate() {
        for &n in &tail[i + 1..] {
            oracle = oracle.max((m.powf(-1.0) + n.powf(-1.0)).sqrt());
        }
    }
    let rejected = dirichlet_montel(
        &family,
        &DirichletMontelConfig {
            eps: 0.0,
            ..Default::default()
        },
    )
    .is_err();
    let pass = worst_gap <= 1e-12
        && report.certified == Some(true)
        && tail.len() >= 2
        && (cert.translated_max - oracle).abs() <= 1e-12
        && oracle <= 0.6
        && rejected;
    outcome(
        pass,
        format!(
            "untranslated |d - sqrt 2| <= {worst_gap:.1e}; tail n = {:?}, translated max {:.4} (oracle {oracle:.4}) <= 3 eta = 0.6, l0 = {}",
            tail, cert.translated_max, cert.tail_cut
        ),
    )
}

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join("fixtures").join(name)
}

fn criterion_10() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_hardy");
    let cfg = fixture("run.toml");
    let cfg = cfg.to_str().unwrap();
    let f123 = fixture("dirichlet_123.txt");
    let f123 = f123.to_str().unwrap();
    let powers = fixture("power_family.txt");
    let monos = fixture("monomial_family.txt");
    let runs: Vec<Vec<&str>> = vec![
        vec!["gen-random", "--terms", "8", "--max-n", "40", "--seed", "5", "--law", "gaussian"],
        vec!["lift", f123],
        vec!["norm", f123, "--p", "2"],
        vec!["norm", f123, "--p", "3", "--method", "qmc"],
        vec!["norm", f123, "--p", "4", "--method", "tensor-grid"],
        vec!["coeffs", f123],
        vec!["translate", f123, "--eps", "0.5"],
        vec!["truncate", f123, "--x", "2.5"],
        vec!["verify-bounds", f123],
        vec!["bayart-mean", f123, "--horizon", "100", "--samples", "2000"],
        vec!["montel-extract", powers.to_str().unwrap()],
        vec!["dirichlet-montel", monos.to_str().unwrap(), "--eps", "0.5", "--eta", "0.2"],
    ];
    let mut identical = 0;
    let mut failures = Vec::new();
    for args in &runs {
        let go = || {
            Command::new(bin)
                .args(["--config", cfg])
                .args(args)
                .output()
                .expect("run hardy")
        };
        let (a, b) = (go(), go());
        if a.status.success() && a.status == b.status && a.stdout == b.stdout && !a.stdout.is_empty() {
            identical += 1;
        } else {
            failures.push(args[0]);
        }
    }
    outcome(
        failures.is_empty(),
        format!("{identical}/{} subcommand runs byte-identical {failures:?}", runs.len()),
    )
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("Parseval consistency (tensor grid vs exact, p = 2)", criterion_1),
        ("Bayart limit mean vs exact H2 norm", criterion_2),
        ("coefficient round trip by extraction", criterion_3),
        ("pointwise growth bound", criterion_4),
        ("disc pointwise and two-point bounds", criterion_5),
        ("truncation contractivity at p = 2", criterion_6),
        ("Abel tail bound", criterion_7),
        ("Montel positive control z^N", criterion_8),
        ("translated vs untranslated Dirichlet monomials", criterion_9),
        ("CLI determinism", criterion_10),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = run();
        let status = if result.pass { "PASS" } else { "FAIL" };
        if !result.pass {
            failed += 1;
        }
        println!(
            "acceptance {:>2} {status}: {name}: {} [{:.1} s]",
            k + 1,
            result.detail,
            start.elapsed().as_secs_f64()
        );
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
