//! Skew-information uncertainty of quantum channels and the product, sum
//! and three-channel uncertainty relations built on it.
//!
//! For a state ρ and a channel with Kraus operators `{K_i}`:
//!
//! * `I_ρ(Φ) = ½ Σ ‖[√ρ, K_i]‖_F²` (skew information)
//! * `J_ρ(Φ) = ½ Σ ‖{√ρ, K_i}‖_F²` (its anticommutator dual)
//! * `V_ρ(Φ) = Σ ½ tr[(K_i†K_i + K_iK_i†)ρ] − |tr(K_iρ)|²`
//! * `C_ρ(Φ) = V − I`, the classical mixing part
//! * `Q_ρ(Φ) = √(V² − (V − I)²)`
//!
//! With the centered operators `K̃_i = K_i − tr(K_iρ)·I`, `Ĩ` and `J̃` are the
//! skew and dual sums of `{K̃_i}`; they satisfy `Ĩ = I`, `J̃ = 2V − I` and
//! `Q = √(Ĩ J̃)`.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::matcore::{hs_inner, hybrid_tol, ComplexMatrix};
use crate::quantum::{density_from_bloch, BlochVector, DensityMatrix, KrausChannel};
use crate::sampling::{random_density_with, trial_rng};

/// Values provably nonnegative that compute within `-1e-12` of zero are
/// clamped to zero; anything more negative is an internal error.
pub const CLAMP_TOL: f64 = 1e-12;
/// Default tolerance for bound checks and report invariants.
pub const CHECK_TOL: f64 = 1e-10;
/// Agreement required between the two evaluations of the sum-form bound.
pub const CENTERED_FORM_TOL: f64 = 1e-9;
/// Tightening constant of the Pauli three-channel relation, `64/(3√3)`.
pub const PAULI_TAU: f64 = 12.316_805_742_712_017;

fn clamp_nonneg(quantity: &'static str, value: f64, scale: f64) -> Result<f64> {
    if value >= 0.0 {
        Ok(value)
    } else if value >= -hybrid_tol(CLAMP_TOL, scale) {
        Ok(0.0)
    } else {
        Err(Error::InternalConsistency { quantity, value })
    }
}

fn check_dim(rho: &DensityMatrix, k: &ComplexMatrix) -> Result<()> {
    if k.shape() != (rho.dim(), rho.dim()) {
        return Err(Error::DimensionMismatch {
            op: "state/operator",
            lhs: rho.matrix().shape(),
            rhs: k.shape(),
        });
    }
    Ok(())
}

fn check_channel(rho: &DensityMatrix, c: &KrausChannel) -> Result<()> {
    if c.dim() != rho.dim() {
        return Err(Error::DimensionMismatch {
            op: "state/channel",
            lhs: rho.matrix().shape(),
            rhs: (c.dim(), c.dim()),
        });
    }
    Ok(())
}

/// `I_ρ(K) = ½‖[√ρ, K]‖_F²`.
pub fn skew_info_op(rho: &DensityMatrix, k: &ComplexMatrix) -> Result<f64> {
    check_dim(rho, k)?;
    Ok(0.5 * rho.sqrt().commutator(k)?.frobenius_norm_sqr())
}

/// `J_ρ(K) = ½‖{√ρ, K}‖_F²`.
pub fn dual_info_op(rho: &DensityMatrix, k: &ComplexMatrix) -> Result<f64> {
    check_dim(rho, k)?;
    Ok(0.5 * rho.sqrt().anticommutator(k)?.frobenius_norm_sqr())
}

/// `V_ρ(K) = ½ tr[(K†K + KK†)ρ] − |tr(Kρ)|²`.
pub fn variance_op(rho: &DensityMatrix, k: &ComplexMatrix) -> Result<f64> {
    check_dim(rho, k)?;
    let kd = k.adjoint();
    let sym = kd.matmul(k)?.add(&k.matmul(&kd)?)?;
    let second = 0.5 * sym.trace_of_product(rho.matrix())?.re;
    let mean = rho.expectation(k)?.norm_sqr();
    clamp_nonneg("operator variance", second - mean, second)
}

/// `I_ρ(Φ)`.
pub fn skew_info_channel(rho: &DensityMatrix, c: &KrausChannel) -> Result<f64> {
    check_channel(rho, c)?;
    c.kraus_ops().iter().map(|k| skew_info_op(rho, k)).sum()
}

/// `J_ρ(Φ)`.
pub fn dual_info_channel(rho: &DensityMatrix, c: &KrausChannel) -> Result<f64> {
    check_channel(rho, c)?;
    c.kraus_ops().iter().map(|k| dual_info_op(rho, k)).sum()
}

/// `V_ρ(Φ) = Σ_i V_ρ(K_i)`; independent of the Kraus representation.
pub fn variance_channel(rho: &DensityMatrix, c: &KrausChannel) -> Result<f64> {
    check_channel(rho, c)?;
    c.kraus_ops().iter().map(|k| variance_op(rho, k)).sum()
}

/// `C_ρ(Φ) = V − I`.
pub fn classical_uncertainty(rho: &DensityMatrix, c: &KrausChannel) -> Result<f64> {
    let v = variance_channel(rho, c)?;
    let i = skew_info_channel(rho, c)?;
    clamp_nonneg("classical uncertainty", v - i, v)
}

fn q_from(variance: f64, skew: f64) -> Result<f64> {
    let c = variance - skew;
    let radicand = variance * variance - c * c;
    Ok(clamp_nonneg("quantum uncertainty radicand", radicand, variance * variance)?.sqrt())
}

/// `Q_ρ(Φ) = √(V² − (V − I)²)`.
pub fn quantum_uncertainty(rho: &DensityMatrix, c: &KrausChannel) -> Result<f64> {
    let v = variance_channel(rho, c)?;
    let i = skew_info_channel(rho, c)?;
    q_from(v, i)
}

/// `K̃_i = K_i − tr(K_iρ)·I`.
pub fn centered_kraus(rho: &DensityMatrix, c: &KrausChannel) -> Result<Vec<ComplexMatrix>> {
    check_channel(rho, c)?;
    centered_ops(rho, c.kraus_ops())
}

fn centered_ops(rho: &DensityMatrix, ops: &[ComplexMatrix]) -> Result<Vec<ComplexMatrix>> {
    let id = ComplexMatrix::identity(rho.dim());
    ops.iter()
        .map(|k| k.sub(&id.scale(rho.expectation(k)?)))
        .collect()
}

/// `Ĩ_ρ(Φ) = ½ Σ tr([√ρ, K̃_i]†[√ρ, K̃_i])`.
pub fn tilde_i(rho: &DensityMatrix, c: &KrausChannel) -> Result<f64> {
    let s = rho.sqrt();
    centered_kraus(rho, c)?
        .iter()
        .map(|k| {
            let comm = s.commutator(k)?;
            Ok(0.5 * hs_inner(&comm, &comm)?.re)
        })
        .sum()
}

/// `J̃_ρ(Φ) = ½ Σ tr({√ρ, K̃_i}†{√ρ, K̃_i})`.
pub fn tilde_j(rho: &DensityMatrix, c: &KrausChannel) -> Result<f64> {
    let s = rho.sqrt();
    centered_kraus(rho, c)?
        .iter()
        .map(|k| {
            let anti = s.anticommutator(k)?;
            Ok(0.5 * hs_inner(&anti, &anti)?.re)
        })
        .sum()
}

/// All scalar uncertainty quantities for one (state, channel) pair.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct UncertaintyReport {
    pub skew_info: f64,
    pub dual_info: f64,
    pub variance: f64,
    pub classical: f64,
    pub quantum: f64,
    pub tilde_i: f64,
    pub tilde_j: f64,
}

/// One identity or inequality that an [`UncertaintyReport`] must satisfy.
#[derive(Clone, Debug, PartialEq)]
pub struct InvariantCheck {
    pub name: &'static str,
    /// Violation magnitude; zero when an inequality holds strictly.
    pub residual: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl UncertaintyReport {
    pub fn invariant_checks(&self) -> Vec<InvariantCheck> {
        let (i, v, q) = (self.skew_info, self.variance, self.quantum);
        let scale = v.max(self.dual_info).max(self.tilde_j);
        let tol = hybrid_tol(CHECK_TOL, scale);
        let q_tol = hybrid_tol(CHECK_TOL, scale * scale);
        let items = [
            ("C = V - I", (self.classical - (v - i)).abs(), tol),
            ("tilde_I = I", (self.tilde_i - i).abs(), tol),
            ("tilde_J = 2V - I", (self.tilde_j - (2.0 * v - i)).abs(), tol),
            ("Q^2 = tilde_I * tilde_J", (q * q - self.tilde_i * self.tilde_j).abs(), q_tol),
            ("I <= Q", (i - q).max(0.0), tol),
            ("Q <= 2V - I", (q - (2.0 * v - i)).max(0.0), tol),
        ];
        items
            .into_iter()
            .map(|(name, residual, tolerance)| InvariantCheck {
                name,
                residual,
                tolerance,
                passed: residual <= tolerance,
            })
            .collect()
    }

    pub fn all_invariants_hold(&self) -> bool {
        self.invariant_checks().iter().all(|c| c.passed)
    }
}

/// Computes every scalar of [`UncertaintyReport`] and verifies the report
/// invariants; a failing invariant is reported as an internal error.
pub fn report(rho: &DensityMatrix, c: &KrausChannel) -> Result<UncertaintyReport> {
    check_channel(rho, c)?;
    let skew_info = skew_info_channel(rho, c)?;
    let dual_info = dual_info_channel(rho, c)?;
    let variance = variance_channel(rho, c)?;
    let classical = clamp_nonneg("classical uncertainty", variance - skew_info, variance)?;
    let quantum = q_from(variance, skew_info)?;
    let report = UncertaintyReport {
        skew_info,
        dual_info,
        variance,
        classical,
        quantum,
        tilde_i: tilde_i(rho, c)?,
        tilde_j: tilde_j(rho, c)?,
    };
    if let Some(bad) = report.invariant_checks().into_iter().find(|c| !c.passed) {
        return Err(Error::InternalConsistency {
            quantity: bad.name,
            value: bad.residual,
        });
    }
    Ok(report)
}

/// One instance of an inequality `lhs ≥ rhs`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundCheck {
    pub lhs: f64,
    pub rhs: f64,
    /// `lhs − rhs`.
    pub slack: f64,
    pub satisfied: bool,
    pub tolerance: f64,
}

impl BoundCheck {
    /// Tolerance is `tol · max(1, |lhs|, |rhs|)`.
    pub fn new(lhs: f64, rhs: f64, tol: f64) -> Self {
        let tolerance = hybrid_tol(tol, lhs.abs().max(rhs.abs()));
        let slack = lhs - rhs;
        Self {
            lhs,
            rhs,
            slack,
            satisfied: slack >= -tolerance,
            tolerance,
        }
    }
}

fn check_pair(rho: &DensityMatrix, a: &KrausChannel, b: &KrausChannel) -> Result<()> {
    check_channel(rho, a)?;
    check_channel(rho, b)
}

/// `Σ_ij |tr([A_i, B_j†]ρ)|²` over the full Kraus index sets.
fn commutator_expectation_sum(
    rho: &DensityMatrix,
    a: &KrausChannel,
    b: &KrausChannel,
) -> Result<f64> {
    let mut total = 0.0;
    for ai in a.kraus_ops() {
        for bj in b.kraus_ops() {
            let bd = bj.adjoint();
            let comm = ai.matmul(&bd)?.sub(&bd.matmul(ai)?)?;
            total += rho.expectation(&comm)?.norm_sqr();
        }
    }
    Ok(total)
}

/// Product-form relation `Q_ρ(Ψ) Q_ρ(Φ) ≥ ¼ Σ_ij |tr([L_i, K_j†]ρ)|²`.
pub fn lb_product(rho: &DensityMatrix, psi: &KrausChannel, phi: &KrausChannel) -> Result<BoundCheck> {
    check_pair(rho, psi, phi)?;
    let lhs = quantum_uncertainty(rho, psi)? * quantum_uncertainty(rho, phi)?;
    let rhs = 0.25 * commutator_expectation_sum(rho, psi, phi)?;
    Ok(BoundCheck::new(lhs, rhs, CHECK_TOL))
}

/// Sum-form lower bound as printed:
/// `½ Σ_ij |⟨[√ρ,L_i]|[√ρ,K_i]⟩ (⟨{√ρ,L_j}|{√ρ,K_j}⟩ − 4⟨L_j†⟩⟨K_j⟩)|`.
///
/// Indices pair `L_i` with `K_i` positionally after zero-padding the
/// shorter list, so the value depends on the Kraus representations given.
pub fn lb_sum_rhs(rho: &DensityMatrix, psi: &KrausChannel, phi: &KrausChannel) -> Result<f64> {
    check_pair(rho, psi, phi)?;
    let n = psi.len().max(phi.len());
    let (ls, ks) = (psi.padded_ops(n), phi.padded_ops(n));
    let s = rho.sqrt();
    let (mut comm_sum, mut anti_sum) = (0.0, 0.0);
    for (l, k) in ls.iter().zip(&ks) {
        comm_sum += hs_inner(&s.commutator(l)?, &s.commutator(k)?)?.norm();
        let correction = rho.expectation(&l.adjoint())? * rho.expectation(k)? * 4.0;
        anti_sum += (hs_inner(&s.anticommutator(l)?, &s.anticommutator(k)?)? - correction).norm();
    }
    // Σ_ij |a_i b_j| = (Σ_i |a_i|)(Σ_j |b_j|)
    Ok(0.5 * comm_sum * anti_sum)
}

/// The same bound evaluated on centered operators:
/// `½ Σ_ij |⟨[√ρ,L̃_i]|[√ρ,K̃_i]⟩ ⟨{√ρ,L̃_j}|{√ρ,K̃_j}⟩|`.
pub fn lb_sum_centered_rhs(
    rho: &DensityMatrix,
    psi: &KrausChannel,
    phi: &KrausChannel,
) -> Result<f64> {
    check_pair(rho, psi, phi)?;
    let n = psi.len().max(phi.len());
    let ls = centered_ops(rho, &psi.padded_ops(n))?;
    let ks = centered_ops(rho, &phi.padded_ops(n))?;
    let s = rho.sqrt();
    let (mut comm_sum, mut anti_sum) = (0.0, 0.0);
    for (l, k) in ls.iter().zip(&ks) {
        comm_sum += hs_inner(&s.commutator(l)?, &s.commutator(k)?)?.norm();
        anti_sum += hs_inner(&s.anticommutator(l)?, &s.anticommutator(k)?)?.norm();
    }
    Ok(0.5 * comm_sum * anti_sum)
}

/// Sum-form relation `Q²_ρ(Ψ) + Q²_ρ(Φ) ≥ LB2`. The bound is evaluated both
/// as printed and in centered form; disagreement beyond `1e-9` is an error.
pub fn lb_sum(rho: &DensityMatrix, psi: &KrausChannel, phi: &KrausChannel) -> Result<BoundCheck> {
    let q_psi = quantum_uncertainty(rho, psi)?;
    let q_phi = quantum_uncertainty(rho, phi)?;
    let rhs = lb_sum_rhs(rho, psi, phi)?;
    let centered = lb_sum_centered_rhs(rho, psi, phi)?;
    let gap = (rhs - centered).abs();
    if gap > hybrid_tol(CENTERED_FORM_TOL, rhs.abs()) {
        return Err(Error::InternalConsistency {
            quantity: "sum bound centered form",
            value: gap,
        });
    }
    Ok(BoundCheck::new(q_psi * q_psi + q_phi * q_phi, rhs, CHECK_TOL))
}

/// `sqrt(B_ΨΦ · B_ΨΓ · B_ΓΦ)` where `B` are the three product-form bounds.
fn triple_geometric_bound(
    rho: &DensityMatrix,
    psi: &KrausChannel,
    phi: &KrausChannel,
    gamma: &KrausChannel,
) -> Result<f64> {
    let s1 = commutator_expectation_sum(rho, psi, phi)?;
    let s2 = commutator_expectation_sum(rho, psi, gamma)?;
    let s3 = commutator_expectation_sum(rho, gamma, phi)?;
    Ok((s1 * s2 * s3).sqrt() / 8.0)
}

fn triple_lhs(
    rho: &DensityMatrix,
    psi: &KrausChannel,
    phi: &KrausChannel,
    gamma: &KrausChannel,
) -> Result<f64> {
    Ok(quantum_uncertainty(rho, psi)?
        * quantum_uncertainty(rho, phi)?
        * quantum_uncertainty(rho, gamma)?)
}

/// Three-channel relation
/// `Q(Ψ)Q(Φ)Q(Γ) ≥ (τ/8)·{Σ|tr([L,K†]ρ)|² · Σ|tr([L,M†]ρ)|² · Σ|tr([M,K†]ρ)|²}^½`.
/// Holds for `τ = 1` as the geometric mean of three product-form bounds.
pub fn lb_triple(
    rho: &DensityMatrix,
    psi: &KrausChannel,
    phi: &KrausChannel,
    gamma: &KrausChannel,
    tau: f64,
) -> Result<BoundCheck> {
    if !(tau > 0.0 && tau.is_finite()) {
        return Err(Error::ParameterOutOfRange {
            name: "tau",
            value: tau,
        });
    }
    check_pair(rho, psi, phi)?;
    check_channel(rho, gamma)?;
    let lhs = triple_lhs(rho, psi, phi, gamma)?;
    let rhs = tau * triple_geometric_bound(rho, psi, phi, gamma)?;
    Ok(BoundCheck::new(lhs, rhs, CHECK_TOL))
}

/// Tight Pauli relation
/// `Q(σ_x)Q(σ_y)Q(σ_z) ≥ (τ/8)|tr(σ_xρ) tr(σ_yρ) tr(σ_zρ)|` with `τ = 64/(3√3)`.
pub fn pauli_tight_bound(rho: &DensityMatrix) -> Result<BoundCheck> {
    if rho.dim() != 2 {
        return Err(Error::DimensionMismatch {
            op: "pauli_tight_bound",
            lhs: rho.matrix().shape(),
            rhs: (2, 2),
        });
    }
    let (x, y, z) = crate::quantum::pauli_unitary_channels();
    let lhs = triple_lhs(rho, &x, &y, &z)?;
    let r = rho.bloch_vector()?;
    let rhs = PAULI_TAU / 8.0 * (r.x * r.y * r.z).abs();
    Ok(BoundCheck::new(lhs, rhs, CHECK_TOL))
}

/// Closed form of `I_ρ(n̂·σ)` for `ρ = ½(I + r·σ)` and a unit vector `n̂`:
/// `(1 − √(1 − |r|²)) (|r|² − (r·n̂)²) / |r|²`.
pub fn qubit_skew_info_closed_form(r: BlochVector, n: BlochVector) -> f64 {
    let r2 = r.dot(r);
    if r2 == 0.0 {
        return 0.0;
    }
    let rn = r.dot(n);
    (1.0 - (1.0 - r2).max(0.0).sqrt()) * (r2 - rn * rn) / r2
}

/// How states are drawn when estimating the tightening constant.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TauSampling {
    /// Approximate number of states evaluated.
    pub points: usize,
    /// Radial shells of the qubit Bloch grid (the outermost is the pure
    /// sphere).
    pub shells: usize,
    /// Seed for the Ginibre draws used when `d > 2`.
    pub seed: u64,
}

impl Default for TauSampling {
    fn default() -> Self {
        Self {
            points: 100_000,
            shells: 10,
            seed: 0,
        }
    }
}

/// Result of [`estimate_tau`].
#[derive(Clone, Debug)]
pub struct TauEstimate {
    pub tau: f64,
    /// State attaining the minimum ratio.
    pub state: DensityMatrix,
    pub evaluated: usize,
    /// States whose denominator exceeded `1e-12`.
    pub feasible: usize,
}

/// Bloch grid: `shells` radii `k/shells`, each carrying a θ×φ grid with
/// θ ∈ [0, π] inclusive and φ ∈ [0, 2π).
pub fn bloch_grid(points: usize, shells: usize) -> Vec<BlochVector> {
    let shells = shells.max(1);
    let per_shell = (points / shells).max(2);
    let n_theta = ((per_shell as f64 / 2.0).sqrt().round() as usize).max(2);
    let n_phi = (per_shell / n_theta).max(1);
    let mut out = Vec::with_capacity(shells * n_theta * n_phi);
    for k in 1..=shells {
        let radius = k as f64 / shells as f64;
        for it in 0..n_theta {
            let theta = std::f64::consts::PI * it as f64 / (n_theta - 1) as f64;
            for ip in 0..n_phi {
                let phi = 2.0 * std::f64::consts::PI * ip as f64 / n_phi as f64;
                out.push(BlochVector::new(
                    radius * theta.sin() * phi.cos(),
                    radius * theta.sin() * phi.sin(),
                    radius * theta.cos(),
                ));
            }
        }
    }
    out
}

/// Numerical estimate of the tightening constant of the three-channel
/// relation, `8 · min_ρ Q(Ψ)Q(Φ)Q(Γ) / G(ρ)` where `G` is the `τ = 1`
/// right-hand side of [`lb_triple`]. The factor 8 places the estimate in the
/// normalization of [`pauli_tight_bound`], so the three Pauli channels give
/// `64/(3√3)`. Only states with `G > 1e-12` take part.
///
/// Qubits are sampled on [`bloch_grid`]; larger dimensions use seeded
/// Ginibre states of uniformly drawn rank.
pub fn estimate_tau(
    psi: &KrausChannel,
    phi: &KrausChannel,
    gamma: &KrausChannel,
    sampling: &TauSampling,
) -> Result<TauEstimate> {
    let d = psi.dim();
    if phi.dim() != d || gamma.dim() != d {
        return Err(Error::DimensionMismatch {
            op: "estimate_tau",
            lhs: (d, d),
            rhs: (phi.dim(), gamma.dim()),
        });
    }
    let evaluate = |rho: &DensityMatrix| -> Result<Option<f64>> {
        let g = triple_geometric_bound(rho, psi, phi, gamma)?;
        if g <= 1e-12 {
            return Ok(None);
        }
        Ok(Some(8.0 * triple_lhs(rho, psi, phi, gamma)? / g))
    };

    let state_at = |idx: usize, grid: &[BlochVector]| -> Result<DensityMatrix> {
        if d == 2 {
            density_from_bloch(grid[idx])
        } else {
            let mut rng = trial_rng(sampling.seed, idx as u64);
            let rank = 1 + (rand::Rng::gen_range(&mut rng, 0..d));
            random_density_with(&mut rng, d, rank)
        }
    };

    let grid = if d == 2 {
        bloch_grid(sampling.points, sampling.shells)
    } else {
        Vec::new()
    };
    let count = if d == 2 { grid.len() } else { sampling.points };

    let results: Vec<Option<f64>> = (0..count)
        .into_par_iter()
        .map(|idx| evaluate(&state_at(idx, &grid)?))
        .collect::<Result<_>>()?;

    let feasible = results.iter().filter(|r| r.is_some()).count();
    let best = results
        .iter()
        .enumerate()
        .filter_map(|(i, r)| r.map(|v| (v, i)))
        .min_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)))
        .ok_or(Error::NoFeasibleSample)?;

    Ok(TauEstimate {
        tau: best.0,
        state: state_at(best.1, &grid)?,
        evaluated: count,
        feasible,
    })
}
