//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::f64::consts::{FRAC_PI_4, PI};
use std::path::Path;
use std::time::{Duration, Instant};

use skewinfo::quantum::{
    density_from_bloch, mix_kraus, pauli_unitary_channels, DensityMatrix, KrausChannel,
};
use skewinfo::sampling::{
    random_bloch_with, random_channel_with, random_density_with, random_direction,
    random_unital_channel_with, random_unitary_with, run_campaign_with_tolerance, trial_rng,
    Property, SampleConfig,
};
use skewinfo::uncertainty::{self as unc, lb_product, lb_sum, pauli_tight_bound};
use skewinfo::{BlochVector, ComplexMatrix, Result};
use skewinfo_cli::commands::scan_rows;
use skewinfo_cli::{cmd_tau, Problem, SweepParam, SweepSpec};

const TOL: f64 = 1e-10;
const INSTANCES: u64 = 10_000;
const SEED: u64 = 20_240_917;

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        detail: detail.into(),
    }
}

fn problems() -> std::path::PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("problems")
}

/// (d, n) pairs cycled through by random-instance criteria.
fn shape(i: u64) -> (usize, usize) {
    let d = 2 + (i % 3) as usize;
    let n = 1 + ((i / 3) % 4) as usize;
    (d, n)
}

/// Runs `f` on every instance index and keeps the worst (smallest) margin.
/// An error counts as a failure with margin `-inf`.
fn worst_over(count: u64, mut f: impl FnMut(u64) -> Result<f64>) -> (f64, Option<String>) {
    let mut worst = f64::INFINITY;
    let mut first_error = None;
    for i in 0..count {
        match f(i) {
            Ok(m) => worst = worst.min(m),
            Err(e) => {
                worst = f64::NEG_INFINITY;
                first_error.get_or_insert_with(|| format!("instance {i}: {e}"));
            }
        }
    }
    (worst, first_error)
}

fn margin_detail(worst: f64, err: &Option<String>) -> String {
    match err {
        Some(e) => format!("error {e}"),
        None => format!("worst margin {worst:.3e}"),
    }
}

/// Criterion 1: Pauli tight bound, equality point and a 10⁶-point Bloch grid.
fn criterion_1() -> Result<Outcome> {
    let s = 1.0 / 3f64.sqrt();
    let rho = density_from_bloch(BlochVector::new(s, s, s))?;
    let exact = 8.0 / 27.0;
    let b = pauli_tight_bound(&rho)?;
    let (x, y, z) = pauli_unitary_channels();
    let direct = unc::quantum_uncertainty(&rho, &x)?
        * unc::quantum_uncertainty(&rho, &y)?
        * unc::quantum_uncertainty(&rho, &z)?;
    let point_ok = (b.lhs - exact).abs() <= 1e-12
        && (b.rhs - exact).abs() <= 1e-12
        && (b.lhs - b.rhs).abs() <= 1e-12
        && (direct - exact).abs() <= 1e-12;

    let (shells, n_theta, n_phi) = (10usize, 100usize, 1000usize);
    let mut worst = f64::INFINITY;
    let mut count = 0usize;
    for k in 1..=shells {
        let radius = k as f64 / shells as f64;
        for it in 0..n_theta {
            let theta = PI * it as f64 / (n_theta - 1) as f64;
            for ip in 0..n_phi {
                let phi = 2.0 * PI * ip as f64 / n_phi as f64;
                let r = BlochVector::new(
                    radius * theta.sin() * phi.cos(),
                    radius * theta.sin() * phi.sin(),
                    radius * theta.cos(),
                );
                worst = worst.min(pauli_tight_bound(&density_from_bloch(r)?)?.slack);
                count += 1;
            }
        }
    }
    Ok(outcome(
        point_ok && worst >= -TOL && count >= 1_000_000,
        format!(
            "lhs={:.15} rhs={:.15} |lhs-rhs|={:.1e}; {count} grid points, worst slack {worst:.3e}",
            b.lhs,
            b.rhs,
            (b.lhs - b.rhs).abs()
        ),
    ))
}

/// Criterion 2: τ recovered by the `tau` command on the three Pauli channels.
fn criterion_2() -> Result<Outcome> {
    let mut buf = Vec::new();
    let input = problems().join("pauli_triple.json");
    let status = cmd_tau(&input, 100_000, 0, &mut buf);
    let text = String::from_utf8(buf).unwrap();
    let tau: Option<f64> = text
        .lines()
        .find_map(|l| l.strip_prefix("tau "))
        .and_then(|v| v.trim().parse().ok());
    let exact = 64.0 / (3.0 * 3f64.sqrt());
    Ok(match (status, tau) {
        (Ok(_), Some(t)) => {
            let rel = (t - exact).abs() / exact;
            outcome(rel <= 0.01, format!("tau={t} exact={exact:.10} relative error {rel:.2e}"))
        }
        (Err(e), _) => outcome(false, format!("tau command failed: {e}")),
        _ => outcome(false, "no tau line in output"),
    })
}

fn instance(i: u64, stream: u64) -> Result<(DensityMatrix, KrausChannel, KrausChannel)> {
    let (d, n) = shape(i);
    let rng = &mut trial_rng(SEED + stream, i);
    let rho = random_density_with(rng, d, d)?;
    let psi = random_channel_with(rng, d, n)?;
    let m = 1 + (i / 12) as usize % 4;
    let phi = random_channel_with(rng, d, m)?;
    Ok((rho, psi, phi))
}

fn sweep_problem() -> Problem {
    Problem::load(&problems().join("qubit_example.json")).expect("qubit_example.json loads")
}

/// Criterion 3: Theorems 1 and 2 on random instances and on both sweeps.
fn criterion_3() -> Result<Outcome> {
    let (w, err) = worst_over(INSTANCES, |i| {
        let (rho, psi, phi) = instance(i, 3)?;
        Ok(lb_product(&rho, &psi, &phi)?.slack.min(lb_sum(&rho, &psi, &phi)?.slack))
    });
    let problem = sweep_problem();
    let sweeps = [
        SweepSpec {
            param: SweepParam::Theta,
            start: 0.0,
            stop: 2.0 * PI,
            points: 181,
            fixed: Some(0.5),
        },
        SweepSpec {
            param: SweepParam::Q,
            start: 0.0,
            stop: 0.99,
            points: 100,
            fixed: Some(FRAC_PI_4),
        },
    ];
    let mut sweep_worst = f64::INFINITY;
    let mut rows = 0;
    for s in &sweeps {
        match scan_rows(&problem, s) {
            Ok(rs) => {
                rows += rs.len();
                for r in rs {
                    sweep_worst = sweep_worst.min(r.product - r.lb1).min(r.sum - r.lb2);
                }
            }
            Err(e) => return Ok(outcome(false, format!("sweep failed: {e}"))),
        }
    }
    Ok(outcome(
        err.is_none() && w >= -TOL && sweep_worst >= -TOL && rows == 281,
        format!(
            "{INSTANCES} instances {}; {rows} sweep rows, worst slack {sweep_worst:.3e}",
            margin_detail(w, &err)
        ),
    ))
}

/// Criterion 4: complementarity for unital channels.
fn criterion_4() -> Result<Outcome> {
    let (w, err) = worst_over(INSTANCES, |i| {
        let (d, n) = shape(i);
        let rng = &mut trial_rng(SEED + 4, i);
        let rho = random_density_with(rng, d, d)?;
        let ch = random_unital_channel_with(rng, d, n)?;
        let ii = unc::skew_info_channel(&rho, &ch)?;
        let jj = unc::dual_info_channel(&rho, &ch)?;
        let m = [TOL - (ii + jj - 2.0).abs(), ii + TOL, 1.0 + TOL - ii, jj - 1.0 + TOL, 2.0 + TOL - jj];
        Ok(m.into_iter().fold(f64::INFINITY, f64::min))
    });
    Ok(outcome(err.is_none() && w >= 0.0, margin_detail(w, &err)))
}

/// Criterion 5: I, J, V, Q are unchanged by unitary remixing of Kraus lists.
fn criterion_5() -> Result<Outcome> {
    let (w, err) = worst_over(INSTANCES, |i| {
        let (d, n) = shape(i);
        let rng = &mut trial_rng(SEED + 5, i);
        let rho = random_density_with(rng, d, d)?;
        let ch = random_channel_with(rng, d, n)?;
        let u = random_unitary_with(rng, n + (i % 2) as usize)?;
        let mixed = mix_kraus(&ch, &u)?;
        let f = |c: &KrausChannel| -> Result<[f64; 4]> {
            Ok([
                unc::skew_info_channel(&rho, c)?,
                unc::dual_info_channel(&rho, c)?,
                unc::variance_channel(&rho, c)?,
                unc::quantum_uncertainty(&rho, c)?,
            ])
        };
        let (a, b) = (f(&ch)?, f(&mixed)?);
        Ok(a.iter().zip(&b).map(|(x, y)| TOL - (x - y).abs()).fold(f64::INFINITY, f64::min))
    });
    Ok(outcome(err.is_none() && w >= 0.0, margin_detail(w, &err)))
}

/// Criterion 6: the structural properties as sampling campaigns.
fn criterion_6() -> Result<Outcome> {
    let props = [
        Property::Nonnegativity,
        Property::ConvexityI,
        Property::ConcavityV,
        Property::ConcavityC,
        Property::UnitaryCovariance,
        Property::TensorEquality,
        Property::PartialTrace,
    ];
    let mut all = true;
    let mut parts = Vec::new();
    for p in props {
        let mut trials = 0;
        let mut violations = 0;
        let mut worst = f64::INFINITY;
        for (d, n) in [(2, 2), (3, 3), (4, 2)] {
            let per = if d == 2 { 3_334 } else { 3_333 };
            let cfg = SampleConfig::new(d, n, per, SEED + 6);
            let r = run_campaign_with_tolerance(p, &cfg, TOL)?;
            trials += r.trials;
            violations += r.violations.len();
            worst = worst.min(r.worst_slack);
        }
        all &= violations == 0 && trials >= INSTANCES as usize;
        parts.push(format!("{}: {violations}/{trials} (worst {worst:.1e})", p.name()));
    }
    Ok(outcome(all, parts.join("; ")))
}

/// Criterion 7: internal identities and the two Theorem-2 forms.
fn criterion_7() -> Result<Outcome> {
    let (w, err) = worst_over(INSTANCES, |i| {
        let (rho, psi, phi) = instance(i, 7)?;
        let ii = unc::skew_info_channel(&rho, &psi)?;
        let v = unc::variance_channel(&rho, &psi)?;
        let q = unc::quantum_uncertainty(&rho, &psi)?;
        let ti = unc::tilde_i(&rho, &psi)?;
        let tj = unc::tilde_j(&rho, &psi)?;
        let printed = unc::lb_sum_rhs(&rho, &psi, &phi)?;
        let centered = unc::lb_sum_centered_rhs(&rho, &psi, &phi)?;
        let errs = [
            (ti - ii).abs(),
            (tj - (2.0 * v - ii)).abs(),
            (q * q - ti * tj).abs(),
            (printed - centered).abs(),
        ];
        Ok(errs.into_iter().map(|e| TOL - e).fold(f64::INFINITY, f64::min))
    });
    Ok(outcome(err.is_none() && w >= 0.0, margin_detail(w, &err)))
}

/// `I_ρ(n̂·σ)` for `ρ = ½(I + r·σ)`, from `√ρ = a I + b r̂·σ`:
/// the commutator is `2i b (r × n̂)·σ`, so `I = 4 b² |r × n̂|²`.
fn skew_info_qubit_oracle(r: BlochVector, n: BlochVector) -> f64 {
    let len = r.norm();
    if len == 0.0 {
        return 0.0;
    }
    let b = (((1.0 + len) / 2.0).sqrt() - ((1.0 - len) / 2.0).max(0.0).sqrt()) / (2.0 * len);
    let cross = [r.y * n.z - r.z * n.y, r.z * n.x - r.x * n.z, r.x * n.y - r.y * n.x];
    4.0 * b * b * cross.iter().map(|c| c * c).sum::<f64>()
}

/// Criterion 8: eigendecomposition path against the analytic qubit value.
fn criterion_8() -> Result<Outcome> {
    let (w, err) = worst_over(INSTANCES, |i| {
        let rng = &mut trial_rng(SEED + 8, i);
        let r = random_bloch_with(rng);
        let n = random_direction(rng);
        let rho = density_from_bloch(r)?;
        let op = ComplexMatrix::pauli_x()
            .scale_real(n.x)
            .add(&ComplexMatrix::pauli_y().scale_real(n.y))?
            .add(&ComplexMatrix::pauli_z().scale_real(n.z))?;
        let eig_path = unc::skew_info_op(&rho, &op)?;
        let closed = unc::qubit_skew_info_closed_form(r, n);
        let oracle = skew_info_qubit_oracle(r, n);
        Ok(TOL - (eig_path - oracle).abs().max((closed - oracle).abs()))
    });
    Ok(outcome(err.is_none() && w >= 0.0, margin_detail(w, &err)))
}

/// Criterion 9: on pure states C vanishes and Q = V = I.
fn criterion_9() -> Result<Outcome> {
    let (w, err) = worst_over(1_000, |i| {
        let (d, n) = shape(i);
        let rng = &mut trial_rng(SEED + 9, i);
        let rho = random_density_with(rng, d, 1)?;
        let ch = random_channel_with(rng, d, n)?;
        let ii = unc::skew_info_channel(&rho, &ch)?;
        let v = unc::variance_channel(&rho, &ch)?;
        let c = unc::classical_uncertainty(&rho, &ch)?;
        let q = unc::quantum_uncertainty(&rho, &ch)?;
        let errs = [c.abs(), (q - v).abs(), (q - ii).abs()];
        Ok(errs.into_iter().map(|e| TOL - e).fold(f64::INFINITY, f64::min))
    });
    Ok(outcome(err.is_none() && w >= 0.0, margin_detail(w, &err)))
}

type Criterion = (u32, &'static str, Option<Duration>, fn() -> Result<Outcome>);

fn main() {
    let criteria: [Criterion; 9] = [
        (1, "Pauli tight-bound equality", Some(Duration::from_secs(60)), criterion_1),
        (2, "tau recovery", Some(Duration::from_secs(120)), criterion_2),
        (3, "product and sum relations", Some(Duration::from_secs(120)), criterion_3),
        (4, "unital complementarity", None, criterion_4),
        (5, "Kraus-representation invariance", None, criterion_5),
        (6, "structural properties", None, criterion_6),
        (7, "internal identities", None, criterion_7),
        (8, "closed-form qubit oracle", None, criterion_8),
        (9, "pure-state collapse", None, criterion_9),
    ];
    let mut failures = 0;
    for (id, name, budget, run) in criteria {
        let start = Instant::now();
        let result = run();
        let elapsed = start.elapsed();
        let (mut passed, detail) = match result {
            Ok(o) => (o.passed, o.detail),
            Err(e) => (false, format!("error: {e}")),
        };
        let mut timing = format!("{:.1}s", elapsed.as_secs_f64());
        if let Some(b) = budget {
            timing.push_str(&format!(" of {}s", b.as_secs()));
            if elapsed > b {
                passed = false;
            }
        }
        if !passed {
            failures += 1;
        }
        println!(
            "criterion {id} {name}: {} [{timing}] {detail}",
            if passed { "PASS" } else { "FAIL" }
        );
    }
    println!("acceptance: {} of 9 criteria passed", 9 - failures);
    if failures > 0 {
        std::process::exit(1);
    }
}
