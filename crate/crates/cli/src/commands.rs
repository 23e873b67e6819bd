use std::f64::consts::FRAC_PI_4;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use skewinfo::sampling::{run_campaign, Property, SampleConfig};
use skewinfo::uncertainty::{
    self as unc, estimate_tau, lb_product, lb_sum, lb_triple, pauli_tight_bound, BoundCheck,
    TauSampling, UncertaintyReport,
};
use skewinfo::{DensityMatrix, Error, KrausChannel};

use crate::exit::{CliError, CliResult, Exit};
use crate::format::g12;
use crate::problem::{Instance, Problem};

/// First line of every report written to standard output.
pub const REPORT_HEADER: &str = "# skewinfo report v1";

/// Header row of `scan` output.
pub const CSV_HEADER: &str = "param,Q1,Q2,product,sum,LB1,LB2";

/// Default `q` held fixed during a θ sweep.
pub const DEFAULT_FIXED_Q: f64 = 0.5;
/// Default azimuth held fixed during a q sweep.
pub const DEFAULT_FIXED_THETA: f64 = FRAC_PI_4;

/// Shells of the Bloch grid used by `tau`.
pub const TAU_SHELLS: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Product,
    Sum,
    Triple,
    Pauli,
}

impl Relation {
    pub fn name(self) -> &'static str {
        match self {
            Relation::Product => "product",
            Relation::Sum => "sum",
            Relation::Triple => "triple",
            Relation::Pauli => "pauli",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SweepParam {
    Theta,
    Q,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SweepSpec {
    pub param: SweepParam,
    pub start: f64,
    pub stop: f64,
    pub points: usize,
    /// Value of the other parameter; the defaults above when `None`.
    pub fixed: Option<f64>,
}

impl SweepSpec {
    pub fn validate(&self) -> CliResult<()> {
        if !self.start.is_finite() || !self.stop.is_finite() || self.start >= self.stop {
            return Err(CliError::validation(
                "--start/--stop",
                format!("need finite start < stop, got {} and {}", self.start, self.stop),
            ));
        }
        if self.points < 2 {
            return Err(CliError::validation("--points", "need at least 2 points"));
        }
        if let Some(f) = self.fixed {
            if !f.is_finite() {
                return Err(CliError::validation("--fixed", "must be finite"));
            }
        }
        Ok(())
    }

    /// Grid values, both endpoints included.
    pub fn grid(&self) -> Vec<f64> {
        let last = self.points - 1;
        (0..self.points)
            .map(|i| {
                if i == last {
                    self.stop
                } else {
                    self.start + (self.stop - self.start) * i as f64 / last as f64
                }
            })
            .collect()
    }
}

fn write_err(e: std::io::Error) -> CliError {
    CliError::io("(stdout)", e)
}

fn header(out: &mut dyn Write, command: &str) -> CliResult<()> {
    writeln!(out, "{REPORT_HEADER}").map_err(write_err)?;
    writeln!(out, "command {command}").map_err(write_err)
}

fn verdict(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

fn load(path: &Path) -> CliResult<Problem> {
    Problem::load(path)
}

fn core_err(path: &str) -> impl Fn(Error) -> CliError + '_ {
    move |e| CliError::from_core(path, e)
}

fn report_for(rho: &DensityMatrix, c: &KrausChannel, path: &str) -> CliResult<UncertaintyReport> {
    let e = core_err(path);
    Ok(UncertaintyReport {
        skew_info: unc::skew_info_channel(rho, c).map_err(&e)?,
        dual_info: unc::dual_info_channel(rho, c).map_err(&e)?,
        variance: unc::variance_channel(rho, c).map_err(&e)?,
        classical: unc::classical_uncertainty(rho, c).map_err(&e)?,
        quantum: unc::quantum_uncertainty(rho, c).map_err(&e)?,
        tilde_i: unc::tilde_i(rho, c).map_err(&e)?,
        tilde_j: unc::tilde_j(rho, c).map_err(&e)?,
    })
}

/// `info`: every uncertainty quantity per channel, plus the report invariants.
pub fn cmd_info(input: &Path, out: &mut dyn Write) -> CliResult<Exit> {
    let Instance { state, channels } = load(input)?.build()?;
    header(out, "info")?;
    let w = |out: &mut dyn Write, s: String| writeln!(out, "{s}").map_err(write_err);
    w(out, format!("state {state}"))?;
    w(out, format!("dimension {}", state.dim()))?;
    w(out, format!("purity {}", g12(state.purity())))?;
    let mut all_pass = true;
    for (i, c) in channels.iter().enumerate() {
        let r = report_for(&state, c, &format!("channels[{i}]"))?;
        w(out, format!("channel {i} {}", c.name()))?;
        for (name, v) in [
            ("I", r.skew_info),
            ("J", r.dual_info),
            ("V", r.variance),
            ("C", r.classical),
            ("Q", r.quantum),
            ("tilde_I", r.tilde_i),
            ("tilde_J", r.tilde_j),
        ] {
            w(out, format!("  {name} {}", g12(v)))?;
        }
        for check in r.invariant_checks() {
            all_pass &= check.passed;
            w(
                out,
                format!(
                    "  check {}: {} residual={} tolerance={}",
                    check.name,
                    verdict(check.passed),
                    g12(check.residual),
                    g12(check.tolerance)
                ),
            )?;
        }
    }
    Ok(if all_pass { Exit::Ok } else { Exit::Fail })
}

fn write_check(out: &mut dyn Write, name: &str, b: &BoundCheck) -> CliResult<()> {
    writeln!(
        out,
        "check {name} lhs={} rhs={} slack={} tolerance={} {}",
        g12(b.lhs),
        g12(b.rhs),
        g12(b.slack),
        g12(b.tolerance),
        verdict(b.satisfied)
    )
    .map_err(write_err)
}

/// `verify`: one bound check. `tau` applies to the triple relation only.
pub fn cmd_verify(
    input: &Path,
    relation: Relation,
    tau: Option<f64>,
    out: &mut dyn Write,
) -> CliResult<Exit> {
    let problem = load(input)?;
    match relation {
        Relation::Product | Relation::Sum => problem.require_channels(2, relation.name())?,
        Relation::Triple => problem.require_channels(3, relation.name())?,
        Relation::Pauli => {}
    }
    let check = if relation == Relation::Pauli {
        let state = problem.state.build()?;
        if state.dim() != 2 {
            return Err(CliError::new(
                Exit::Dimension,
                format!("state: pauli relation needs a qubit, state has dimension {}", state.dim()),
            ));
        }
        pauli_tight_bound(&state).map_err(core_err("state"))?
    } else {
        let Instance { state, channels } = problem.build()?;
        let e = core_err("channels");
        match relation {
            Relation::Product => lb_product(&state, &channels[0], &channels[1]).map_err(e)?,
            Relation::Sum => lb_sum(&state, &channels[0], &channels[1]).map_err(e)?,
            _ => {
                let tau = tau.unwrap_or(1.0);
                lb_triple(&state, &channels[0], &channels[1], &channels[2], tau)
                    .map_err(|err| CliError::from_core("--tau", err))?
            }
        }
    };
    header(out, "verify")?;
    write_check(out, relation.name(), &check)?;
    Ok(if check.satisfied { Exit::Ok } else { Exit::Fail })
}

/// One `scan` row.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScanRow {
    pub param: f64,
    pub q1: f64,
    pub q2: f64,
    pub product: f64,
    pub sum: f64,
    pub lb1: f64,
    pub lb2: f64,
}

impl ScanRow {
    pub fn to_csv(&self) -> String {
        [self.param, self.q1, self.q2, self.product, self.sum, self.lb1, self.lb2]
            .iter()
            .map(|&v| g12(v))
            .collect::<Vec<_>>()
            .join(",")
    }
}

/// Evaluates a sweep over a two-channel problem.
pub fn scan_rows(problem: &Problem, sweep: &SweepSpec) -> CliResult<Vec<ScanRow>> {
    problem.require_channels(2, "scan")?;
    sweep.validate()?;
    let has_q = problem.channels.iter().any(|c| c.q().is_some());
    match sweep.param {
        SweepParam::Theta => {
            if problem.state.with_azimuth(0.0).is_none() {
                return Err(CliError::new(
                    Exit::SweepInapplicable,
                    "state: theta sweep needs a Bloch state",
                ));
            }
        }
        SweepParam::Q => {
            if !has_q {
                return Err(CliError::new(
                    Exit::SweepInapplicable,
                    "channels: q sweep needs an amplitude_damping or bit_flip channel",
                ));
            }
            if sweep.fixed.is_some() && problem.state.with_azimuth(0.0).is_none() {
                return Err(CliError::new(
                    Exit::SweepInapplicable,
                    "--fixed: theta cannot be set on a matrix state",
                ));
            }
        }
    }
    problem.build()?;

    sweep
        .grid()
        .into_iter()
        .map(|x| {
            let mut p = problem.clone();
            let (theta, q) = match sweep.param {
                SweepParam::Theta => (Some(x), Some(sweep.fixed.unwrap_or(DEFAULT_FIXED_Q))),
                SweepParam::Q => (Some(sweep.fixed.unwrap_or(DEFAULT_FIXED_THETA)), Some(x)),
            };
            if let Some(s) = theta.and_then(|t| p.state.with_azimuth(t)) {
                p.state = s;
            }
            if let Some(q) = q {
                p.channels = p.channels.iter().map(|c| c.with_q(q)).collect();
            }
            let Instance { state, channels } = p.build()?;
            let e = core_err("channels");
            let q1 = unc::quantum_uncertainty(&state, &channels[0]).map_err(&e)?;
            let q2 = unc::quantum_uncertainty(&state, &channels[1]).map_err(&e)?;
            let lb1 = lb_product(&state, &channels[0], &channels[1]).map_err(&e)?.rhs;
            let lb2 = lb_sum(&state, &channels[0], &channels[1]).map_err(&e)?.rhs;
            Ok(ScanRow {
                param: x,
                q1,
                q2,
                product: q1 * q2,
                sum: q1 * q1 + q2 * q2,
                lb1,
                lb2,
            })
        })
        .collect()
}

/// Writes the CSV body (header plus one line per row).
pub fn write_csv(rows: &[ScanRow], out: &mut dyn Write) -> std::io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for r in rows {
        writeln!(out, "{}", r.to_csv())?;
    }
    out.flush()
}

/// `scan`: CSV to `output`, or to `out` when no path is given.
pub fn cmd_scan(
    input: &Path,
    sweep: &SweepSpec,
    output: Option<&PathBuf>,
    out: &mut dyn Write,
) -> CliResult<Exit> {
    let problem = load(input)?;
    let rows = scan_rows(&problem, sweep)?;
    match output {
        None => write_csv(&rows, out).map_err(write_err)?,
        Some(path) => {
            let shown = path.display().to_string();
            let file = File::create(path).map_err(|e| CliError::io(&shown, e))?;
            write_csv(&rows, &mut BufWriter::new(file)).map_err(|e| CliError::io(&shown, e))?;
            let min = |f: fn(&ScanRow) -> f64| rows.iter().map(f).fold(f64::INFINITY, f64::min);
            header(out, "scan")?;
            writeln!(out, "output {shown}").map_err(write_err)?;
            writeln!(out, "rows {}", rows.len()).map_err(write_err)?;
            writeln!(out, "min_product_slack {}", g12(min(|r| r.product - r.lb1)))
                .map_err(write_err)?;
            writeln!(out, "min_sum_slack {}", g12(min(|r| r.sum - r.lb2))).map_err(write_err)?;
        }
    }
    Ok(Exit::Ok)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SampleArgs {
    pub property: String,
    pub dim: usize,
    pub kraus: usize,
    pub rank: Option<usize>,
    pub trials: usize,
    pub seed: u64,
}

/// Violations listed individually in `sample` output.
const LISTED_VIOLATIONS: usize = 10;

/// `sample`: a randomized campaign for one named property.
pub fn cmd_sample(args: &SampleArgs, out: &mut dyn Write) -> CliResult<Exit> {
    let property: Property = args.property.parse().map_err(|_| {
        let known: Vec<_> = Property::ALL.iter().map(|p| p.name()).collect();
        CliError::new(
            Exit::UnknownProperty,
            format!("property: unknown name {:?}; known: {}", args.property, known.join(", ")),
        )
    })?;
    let mut cfg = SampleConfig::new(args.dim, args.kraus, args.trials, args.seed);
    if let Some(rank) = args.rank {
        cfg = cfg.with_rank(rank);
    }
    cfg.validate().map_err(|e| CliError::validation("--dim/--kraus/--rank/--trials", e))?;
    let report = run_campaign(property, &cfg).map_err(core_err("campaign"))?;

    header(out, "sample")?;
    let lines = [
        format!("property {}", report.property),
        format!("dimension {}", cfg.dimension),
        format!("kraus {}", cfg.kraus_count),
        format!("rank {}", cfg.rank),
        format!("seed {}", cfg.seed),
        format!("trials {}", report.trials),
        format!("tolerance {}", g12(report.tolerance)),
        format!("violations {}", report.violations.len()),
        format!("worst_slack {}", g12(report.worst_slack)),
    ];
    for l in lines {
        writeln!(out, "{l}").map_err(write_err)?;
    }
    for v in report.violations.iter().take(LISTED_VIOLATIONS) {
        match &v.error {
            Some(msg) => writeln!(out, "violation trial={} error={msg}", v.trial),
            None => writeln!(out, "violation trial={} slack={}", v.trial, g12(v.slack)),
        }
        .map_err(write_err)?;
    }
    writeln!(out, "result {}", verdict(report.passed())).map_err(write_err)?;
    Ok(if report.passed() { Exit::Ok } else { Exit::Fail })
}

/// `tau`: estimates the tightening constant of a three-channel problem.
pub fn cmd_tau(input: &Path, grid: usize, seed: u64, out: &mut dyn Write) -> CliResult<Exit> {
    let problem = load(input)?;
    problem.require_channels(3, "tau")?;
    if grid == 0 {
        return Err(CliError::validation("--grid", "need at least 1 point"));
    }
    let Instance { channels, .. } = problem.build()?;
    let sampling = TauSampling {
        points: grid,
        shells: TAU_SHELLS,
        seed,
    };
    let est = estimate_tau(&channels[0], &channels[1], &channels[2], &sampling).map_err(|e| {
        match e {
            Error::NoFeasibleSample => CliError::new(
                Exit::DegenerateDenominator,
                "channels: denominator identically zero on every sampled state",
            ),
            other => CliError::from_core("channels", other),
        }
    })?;
    header(out, "tau")?;
    writeln!(out, "tau {}", g12(est.tau)).map_err(write_err)?;
    writeln!(out, "evaluated {}", est.evaluated).map_err(write_err)?;
    writeln!(out, "feasible {}", est.feasible).map_err(write_err)?;
    writeln!(out, "minimizer {}", est.state).map_err(write_err)?;
    Ok(Exit::Ok)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_includes_endpoints() {
        let s = SweepSpec {
            param: SweepParam::Theta,
            start: 0.0,
            stop: 2.0 * std::f64::consts::PI,
            points: 181,
            fixed: None,
        };
        let g = s.grid();
        assert_eq!(g.len(), 181);
        assert_eq!(g[0], 0.0);
        assert_eq!(g[180], 2.0 * std::f64::consts::PI);
        assert!((g[90] - std::f64::consts::PI).abs() < 1e-15);
    }

    #[test]
    fn sweep_validation() {
        let mut s = SweepSpec {
            param: SweepParam::Q,
            start: 0.5,
            stop: 0.1,
            points: 5,
            fixed: None,
        };
        assert_eq!(s.validate().unwrap_err().exit, Exit::Validation);
        s.stop = 0.9;
        s.points = 1;
        assert_eq!(s.validate().unwrap_err().exit, Exit::Validation);
    }
}
