//! Seeded random states, unitaries and channels, and batch campaigns that
//! check the uncertainty identities and relations on random instances.
//!
//! Every random object is drawn from a [`ChaCha8Rng`] seeded with a 64-bit
//! seed. Campaign trial `t` uses stream `t` of the campaign seed, so trials
//! are independent of evaluation order and any violation can be replayed
//! from `(seed, t)` alone.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::matcore::{orthonormal_columns, ComplexMatrix};
use crate::quantum::{
    density_from_bloch, extend_channel, mix_kraus, renormalized_state, BlochVector, DensityMatrix,
    KrausChannel,
};
use crate::uncertainty::{self as unc, CHECK_TOL};

/// Generator for stream `stream` of `seed`.
pub fn trial_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// `rows × cols` matrix of independent standard complex Gaussians.
pub fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> ComplexMatrix {
    let data = (0..rows * cols)
        .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
        .collect();
    ComplexMatrix::new(rows, cols, data).expect("finite gaussian entries")
}

fn check_positive(name: &'static str, value: usize) -> Result<()> {
    if value == 0 {
        return Err(Error::ParameterOutOfRange { name, value: 0.0 });
    }
    Ok(())
}

/// Ginibre state `GG†/tr(GG†)` with `G` a `d × rank` Gaussian matrix.
pub fn random_density_with<R: Rng + ?Sized>(
    rng: &mut R,
    d: usize,
    rank: usize,
) -> Result<DensityMatrix> {
    check_positive("dimension", d)?;
    if rank == 0 || rank > d {
        return Err(Error::ParameterOutOfRange {
            name: "rank",
            value: rank as f64,
        });
    }
    let g = complex_gaussian(rng, d, rank);
    let w = g.matmul(&g.adjoint())?;
    let tr = w.trace()?.re;
    renormalized_state(&w.scale_real(1.0 / tr))
}

pub fn random_density(d: usize, rank: usize, seed: u64) -> Result<DensityMatrix> {
    random_density_with(&mut trial_rng(seed, 0), d, rank)
}

/// Haar unitary from the phase-fixed QR factor of a Gaussian matrix.
pub fn random_unitary_with<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Result<ComplexMatrix> {
    check_positive("n", n)?;
    orthonormal_columns(&complex_gaussian(rng, n, n))
}

pub fn random_unitary(n: usize, seed: u64) -> Result<ComplexMatrix> {
    random_unitary_with(&mut trial_rng(seed, 0), n)
}

/// Channel whose `n` Kraus operators are the `d × d` blocks of a Haar
/// `(nd) × d` isometry.
pub fn random_channel_with<R: Rng + ?Sized>(
    rng: &mut R,
    d: usize,
    n: usize,
) -> Result<KrausChannel> {
    check_positive("dimension", d)?;
    check_positive("kraus_count", n)?;
    let iso = orthonormal_columns(&complex_gaussian(rng, n * d, d))?;
    let ops = (0..n).map(|i| iso.row_block(i * d, d)).collect();
    KrausChannel::new(format!("random(d={d}, n={n})"), ops)
}

pub fn random_channel(d: usize, n: usize, seed: u64) -> Result<KrausChannel> {
    random_channel_with(&mut trial_rng(seed, 0), d, n)
}

/// Convex mixture of `n` Haar unitary channels with flat-Dirichlet weights.
pub fn random_unital_channel_with<R: Rng + ?Sized>(
    rng: &mut R,
    d: usize,
    n: usize,
) -> Result<KrausChannel> {
    check_positive("kraus_count", n)?;
    let raw: Vec<f64> = (0..n)
        .map(|_| -(1.0 - rng.gen::<f64>()).ln())
        .collect();
    let total: f64 = raw.iter().sum();
    let ops = raw
        .iter()
        .map(|w| Ok(random_unitary_with(rng, d)?.scale_real((w / total).sqrt())))
        .collect::<Result<Vec<_>>>()?;
    KrausChannel::new(format!("random_unital(d={d}, n={n})"), ops)
}

/// Unit vector uniform on the sphere.
pub fn random_direction<R: Rng + ?Sized>(rng: &mut R) -> BlochVector {
    loop {
        let v = BlochVector::new(
            rng.sample(StandardNormal),
            rng.sample(StandardNormal),
            rng.sample(StandardNormal),
        );
        let n = v.norm();
        if n > 1e-8 {
            return BlochVector::new(v.x / n, v.y / n, v.z / n);
        }
    }
}

/// Bloch vector uniform in the unit ball.
pub fn random_bloch_with<R: Rng + ?Sized>(rng: &mut R) -> BlochVector {
    let dir = random_direction(rng);
    let radius = rng.gen::<f64>().cbrt();
    BlochVector::new(dir.x * radius, dir.y * radius, dir.z * radius)
}

/// Campaign parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SampleConfig {
    pub dimension: usize,
    pub kraus_count: usize,
    /// Rank of sampled mixed states.
    pub rank: usize,
    pub trials: usize,
    pub seed: u64,
}

impl SampleConfig {
    /// Full-rank states.
    pub fn new(dimension: usize, kraus_count: usize, trials: usize, seed: u64) -> Self {
        Self {
            dimension,
            kraus_count,
            rank: dimension,
            trials,
            seed,
        }
    }

    pub fn with_rank(mut self, rank: usize) -> Self {
        self.rank = rank;
        self
    }

    pub fn validate(&self) -> Result<()> {
        check_positive("dimension", self.dimension)?;
        check_positive("kraus_count", self.kraus_count)?;
        check_positive("trials", self.trials)?;
        if self.rank == 0 || self.rank > self.dimension {
            return Err(Error::ParameterOutOfRange {
                name: "rank",
                value: self.rank as f64,
            });
        }
        Ok(())
    }
}

/// Properties checkable by [`run_campaign`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Property {
    /// `I, J, V, C, Q ≥ 0`.
    Nonnegativity,
    ConvexityI,
    ConcavityV,
    ConcavityC,
    /// `I_{UρU†}({UK_iU†}) = I_ρ({K_i})`.
    UnitaryCovariance,
    /// `I_{ρ_A⊗ρ_B}(Φ⊗𝓘) = I_{ρ_A}(Φ)`.
    TensorEquality,
    /// `I_{ρ_AB}(Φ⊗𝓘) ≥ I_{ρ_A}(Φ)`.
    PartialTrace,
    /// `I + J = 2` and `0 ≤ I ≤ 1 ≤ J ≤ 2` for unital channels.
    UnitalComplementarity,
    /// `I, J, V, C, Q` unchanged under unitary remixing of the Kraus list.
    KrausInvariance,
    /// `I ≤ Q ≤ 2V − I`.
    Sandwich,
    /// `Ĩ = I`, `J̃ = 2V − I`, `Q² = ĨJ̃`, and both forms of the sum bound.
    Identities,
    Theorem1,
    Theorem2,
    /// Three-channel relation at `τ = 1`.
    Triple,
    PauliTight,
    /// Eigendecomposition path against the closed qubit formula.
    QubitOracle,
    /// `C = 0`, `Q = V = I` on pure states.
    PureCollapse,
}

impl Property {
    pub const ALL: [Property; 17] = [
        Property::Nonnegativity,
        Property::ConvexityI,
        Property::ConcavityV,
        Property::ConcavityC,
        Property::UnitaryCovariance,
        Property::TensorEquality,
        Property::PartialTrace,
        Property::UnitalComplementarity,
        Property::KrausInvariance,
        Property::Sandwich,
        Property::Identities,
        Property::Theorem1,
        Property::Theorem2,
        Property::Triple,
        Property::PauliTight,
        Property::QubitOracle,
        Property::PureCollapse,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Property::Nonnegativity => "nonnegativity",
            Property::ConvexityI => "convexity-I",
            Property::ConcavityV => "concavity-V",
            Property::ConcavityC => "concavity-C",
            Property::UnitaryCovariance => "unitary-covariance",
            Property::TensorEquality => "tensor-equality",
            Property::PartialTrace => "partial-trace",
            Property::UnitalComplementarity => "unital-complementarity",
            Property::KrausInvariance => "kraus-invariance",
            Property::Sandwich => "sandwich",
            Property::Identities => "identities",
            Property::Theorem1 => "theorem1",
            Property::Theorem2 => "theorem2",
            Property::Triple => "triple",
            Property::PauliTight => "pauli-tight",
            Property::QubitOracle => "qubit-oracle",
            Property::PureCollapse => "pure-collapse",
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Property {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Property::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::UnknownProperty(s.to_string()))
    }
}

/// A trial whose slack fell below `-tolerance`.
#[derive(Clone, Debug, PartialEq)]
pub struct Violation {
    /// Stream index; replay with [`replay_trial`].
    pub trial: u64,
    pub slack: f64,
    /// Set when evaluation itself failed (slack is then `-∞`).
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CampaignReport {
    pub property: String,
    pub trials: usize,
    pub tolerance: f64,
    pub violations: Vec<Violation>,
    /// Smallest slack over all trials.
    pub worst_slack: f64,
}

impl CampaignReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

enum TrialError {
    Generation(Error),
    Evaluation(Error),
}

impl From<Error> for TrialError {
    fn from(e: Error) -> Self {
        TrialError::Evaluation(e)
    }
}

type TrialResult = std::result::Result<f64, TrialError>;

fn gen<T>(r: Result<T>) -> std::result::Result<T, TrialError> {
    r.map_err(TrialError::Generation)
}

/// Slack measured relative to `max(1, scale)`.
fn rel(slack: f64, scale: f64) -> f64 {
    slack / scale.abs().max(1.0)
}

/// `−|a − b|`, relative.
fn equal(a: f64, b: f64) -> f64 {
    rel(-(a - b).abs(), a.abs().max(b.abs()))
}

/// Unclamped `Σ_i ½ tr[(K_i†K_i + K_iK_i†)ρ] − |tr(K_iρ)|²`.
fn raw_variance(rho: &DensityMatrix, c: &KrausChannel) -> Result<f64> {
    let mut total = 0.0;
    for k in c.kraus_ops() {
        let kd = k.adjoint();
        let sym = kd.matmul(k)?.add(&k.matmul(&kd)?)?;
        total += 0.5 * sym.trace_of_product(rho.matrix())?.re - rho.expectation(k)?.norm_sqr();
    }
    Ok(total)
}

fn all_quantities(rho: &DensityMatrix, c: &KrausChannel) -> Result<[f64; 5]> {
    let r = unc::report(rho, c)?;
    Ok([r.skew_info, r.dual_info, r.variance, r.classical, r.quantum])
}

fn run_trial(property: Property, cfg: &SampleConfig, trial: u64) -> TrialResult {
    let rng = &mut trial_rng(cfg.seed, trial);
    let (d, n, rank) = (cfg.dimension, cfg.kraus_count, cfg.rank);
    match property {
        Property::Nonnegativity => {
            let rho = gen(random_density_with(rng, d, rank))?;
            let ch = gen(random_channel_with(rng, d, n))?;
            let i = unc::skew_info_channel(&rho, &ch)?;
            let j = unc::dual_info_channel(&rho, &ch)?;
            let v = raw_variance(&rho, &ch)?;
            let c = v - i;
            let q2 = v * v - c * c;
            Ok([i, j, v, c, q2].into_iter().fold(f64::INFINITY, f64::min))
        }
        Property::ConvexityI | Property::ConcavityV | Property::ConcavityC => {
            let r1 = gen(random_density_with(rng, d, rank))?;
            let r2 = gen(random_density_with(rng, d, rank))?;
            let lambda: f64 = rng.gen();
            let ch = gen(random_channel_with(rng, d, n))?;
            let mixed = r1.mix(lambda, &r2)?;
            let f: fn(&DensityMatrix, &KrausChannel) -> Result<f64> = match property {
                Property::ConvexityI => unc::skew_info_channel,
                Property::ConcavityV => unc::variance_channel,
                _ => unc::classical_uncertainty,
            };
            let chord = lambda * f(&r1, &ch)? + (1.0 - lambda) * f(&r2, &ch)?;
            let mid = f(&mixed, &ch)?;
            let slack = if property == Property::ConvexityI {
                chord - mid
            } else {
                mid - chord
            };
            Ok(rel(slack, chord.max(mid)))
        }
        Property::UnitaryCovariance => {
            let rho = gen(random_density_with(rng, d, rank))?;
            let ch = gen(random_channel_with(rng, d, n))?;
            let u = gen(random_unitary_with(rng, d))?;
            let before = unc::skew_info_channel(&rho, &ch)?;
            let after = unc::skew_info_channel(&rho.conjugated_by(&u)?, &ch.conjugated_by(&u)?)?;
            Ok(equal(before, after))
        }
        Property::TensorEquality => {
            let d_b = 2;
            let rho_a = gen(random_density_with(rng, d, rank))?;
            let rho_b = gen(random_density_with(rng, d_b, d_b))?;
            let ch = gen(random_channel_with(rng, d, n))?;
            let joint = unc::skew_info_channel(&rho_a.tensor(&rho_b), &extend_channel(&ch, d_b))?;
            Ok(equal(joint, unc::skew_info_channel(&rho_a, &ch)?))
        }
        Property::PartialTrace => {
            let d_b = 2;
            let rho_ab = gen(random_density_with(rng, d * d_b, rank))?;
            let ch = gen(random_channel_with(rng, d, n))?;
            let rho_a = rho_ab.partial_trace_second(d, d_b)?;
            let joint = unc::skew_info_channel(&rho_ab, &extend_channel(&ch, d_b))?;
            let reduced = unc::skew_info_channel(&rho_a, &ch)?;
            Ok(rel(joint - reduced, joint))
        }
        Property::UnitalComplementarity => {
            let rho = gen(random_density_with(rng, d, rank))?;
            let ch = gen(random_unital_channel_with(rng, d, n))?;
            let i = unc::skew_info_channel(&rho, &ch)?;
            let j = unc::dual_info_channel(&rho, &ch)?;
            Ok([-(i + j - 2.0).abs(), i, 1.0 - i, j - 1.0, 2.0 - j]
                .into_iter()
                .fold(f64::INFINITY, f64::min))
        }
        Property::KrausInvariance => {
            let rho = gen(random_density_with(rng, d, rank))?;
            let ch = gen(random_channel_with(rng, d, n))?;
            let extra = rng.gen_range(0..=1);
            let u = gen(random_unitary_with(rng, n + extra))?;
            let mixed = mix_kraus(&ch, &u)?;
            let a = all_quantities(&rho, &ch)?;
            let b = all_quantities(&rho, &mixed)?;
            Ok(a.iter()
                .zip(&b)
                .map(|(&x, &y)| equal(x, y))
                .fold(f64::INFINITY, f64::min))
        }
        Property::Sandwich => {
            let rho = gen(random_density_with(rng, d, rank))?;
            let ch = gen(random_channel_with(rng, d, n))?;
            let v = unc::variance_channel(&rho, &ch)?;
            let i = unc::skew_info_channel(&rho, &ch)?;
            let q = unc::quantum_uncertainty(&rho, &ch)?;
            Ok(rel((q - i).min(2.0 * v - i - q), v))
        }
        Property::Identities => {
            let rho = gen(random_density_with(rng, d, rank))?;
            let psi = gen(random_channel_with(rng, d, n))?;
            let m = rng.gen_range(1..=n);
            let phi = gen(random_channel_with(rng, d, m))?;
            let v = unc::variance_channel(&rho, &psi)?;
            let i = unc::skew_info_channel(&rho, &psi)?;
            let q = unc::quantum_uncertainty(&rho, &psi)?;
            let ti = unc::tilde_i(&rho, &psi)?;
            let tj = unc::tilde_j(&rho, &psi)?;
            let printed = unc::lb_sum_rhs(&rho, &psi, &phi)?;
            let centered = unc::lb_sum_centered_rhs(&rho, &psi, &phi)?;
            Ok([
                equal(ti, i),
                equal(tj, 2.0 * v - i),
                equal(q * q, ti * tj),
                equal(printed, centered),
            ]
            .into_iter()
            .fold(f64::INFINITY, f64::min))
        }
        Property::Theorem1 | Property::Theorem2 => {
            let rho = gen(random_density_with(rng, d, rank))?;
            let psi = gen(random_channel_with(rng, d, n))?;
            let m = rng.gen_range(1..=n);
            let phi = gen(random_channel_with(rng, d, m))?;
            let b = if property == Property::Theorem1 {
                unc::lb_product(&rho, &psi, &phi)?
            } else {
                unc::lb_sum(&rho, &psi, &phi)?
            };
            Ok(rel(b.slack, b.lhs.max(b.rhs)))
        }
        Property::Triple => {
            let rho = gen(random_density_with(rng, d, rank))?;
            let chans = (0..3)
                .map(|_| {
                    let m = rng.gen_range(1..=n);
                    gen(random_channel_with(rng, d, m))
                })
                .collect::<std::result::Result<Vec<_>, _>>()?;
            let b = unc::lb_triple(&rho, &chans[0], &chans[1], &chans[2], 1.0)?;
            Ok(rel(b.slack, b.lhs.max(b.rhs)))
        }
        Property::PauliTight => {
            let mut r = random_bloch_with(rng);
            if trial % 2 == 1 {
                let len = r.norm();
                r = BlochVector::new(r.x / len, r.y / len, r.z / len);
            }
            let rho = gen(density_from_bloch(r))?;
            let b = unc::pauli_tight_bound(&rho)?;
            Ok(rel(b.slack, b.lhs.max(b.rhs)))
        }
        Property::QubitOracle => {
            let r = random_bloch_with(rng);
            let dir = random_direction(rng);
            let rho = gen(density_from_bloch(r))?;
            let op = ComplexMatrix::pauli_x()
                .scale_real(dir.x)
                .add(&ComplexMatrix::pauli_y().scale_real(dir.y))?
                .add(&ComplexMatrix::pauli_z().scale_real(dir.z))?;
            let eig_path = unc::skew_info_op(&rho, &op)?;
            Ok(equal(eig_path, unc::qubit_skew_info_closed_form(r, dir)))
        }
        Property::PureCollapse => {
            let rho = gen(random_density_with(rng, d, 1))?;
            let ch = gen(random_channel_with(rng, d, n))?;
            let r = unc::report(&rho, &ch)?;
            Ok([
                -r.classical.abs(),
                equal(r.quantum, r.variance),
                equal(r.quantum, r.skew_info),
            ]
            .into_iter()
            .fold(f64::INFINITY, f64::min))
        }
    }
}

/// Slack of a single trial. An evaluation error yields `-∞`.
pub fn replay_trial(property: Property, cfg: &SampleConfig, trial: u64) -> Result<f64> {
    Ok(evaluate_trial(property, cfg, trial)?.0)
}

fn evaluate_trial(
    property: Property,
    cfg: &SampleConfig,
    trial: u64,
) -> Result<(f64, Option<String>)> {
    cfg.validate()?;
    match run_trial(property, cfg, trial) {
        Ok(s) => Ok((s, None)),
        Err(TrialError::Evaluation(e)) => Ok((f64::NEG_INFINITY, Some(e.to_string()))),
        Err(TrialError::Generation(e)) => Err(Error::GenerationFailure {
            trial,
            message: e.to_string(),
        }),
    }
}

/// Runs `cfg.trials` independent trials of `property` at tolerance `1e-10`.
pub fn run_campaign(property: Property, cfg: &SampleConfig) -> Result<CampaignReport> {
    run_campaign_with_tolerance(property, cfg, CHECK_TOL)
}

pub fn run_campaign_with_tolerance(
    property: Property,
    cfg: &SampleConfig,
    tolerance: f64,
) -> Result<CampaignReport> {
    cfg.validate()?;
    let outcomes: Vec<(f64, Option<String>)> = (0..cfg.trials as u64)
        .into_par_iter()
        .map(|t| evaluate_trial(property, cfg, t))
        .collect::<Result<_>>()?;
    let worst_slack = outcomes.iter().map(|o| o.0).fold(f64::INFINITY, f64::min);
    let violations = outcomes
        .into_iter()
        .enumerate()
        .filter(|(_, (s, _))| s.is_nan() || *s < -tolerance)
        .map(|(t, (slack, error))| Violation {
            trial: t as u64,
            slack,
            error,
        })
        .collect();
    Ok(CampaignReport {
        property: property.name().to_string(),
        trials: cfg.trials,
        tolerance,
        violations,
        worst_slack,
    })
}

/// [`run_campaign`] by property name.
pub fn run_named_campaign(name: &str, cfg: &SampleConfig) -> Result<CampaignReport> {
    run_campaign(name.parse()?, cfg)
}
