//! Validated density matrices, Kraus channels and the standard channels
//! used in the qubit examples.

use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matcore::{
    hermitian_eig, hybrid_tol, psd_sqrt_from_eig, tensor_product, ComplexMatrix, EigDecomposition,
    PSD_CLAMP_TOL, SQRT_RECONSTRUCT_TOL,
};

/// Hermiticity and unit-trace tolerance for density matrices.
pub const STATE_TOL: f64 = 1e-9;
/// Completeness tolerance `‖Σ K†K − I‖_F`.
pub const TRACE_PRESERVING_TOL: f64 = 1e-8;
/// `‖u†u − I‖_F` tolerance for unitaries.
pub const UNITARY_TOL: f64 = 1e-9;
/// Bloch vectors up to this far past the unit sphere are clamped onto it.
pub const BLOCH_TOL: f64 = 1e-12;

/// A quantum state ρ together with its principal square root √ρ.
#[derive(Clone, Debug)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
    sqrt: ComplexMatrix,
}

impl DensityMatrix {
    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    /// Cached √ρ.
    pub fn sqrt(&self) -> &ComplexMatrix {
        &self.sqrt
    }

    /// `tr(ρ²)`.
    pub fn purity(&self) -> f64 {
        self.matrix.frobenius_norm_sqr()
    }

    /// `⟨X⟩ = tr(Xρ)`.
    pub fn expectation(&self, x: &ComplexMatrix) -> Result<Complex64> {
        x.trace_of_product(&self.matrix)
    }

    pub fn maximally_mixed(d: usize) -> Self {
        let m = ComplexMatrix::identity(d).scale_real(1.0 / d as f64);
        let s = ComplexMatrix::identity(d).scale_real((1.0 / d as f64).sqrt());
        Self { matrix: m, sqrt: s }
    }

    /// Bloch vector of a qubit state, `r_k = tr(σ_k ρ)`.
    pub fn bloch_vector(&self) -> Result<BlochVector> {
        if self.dim() != 2 {
            return Err(Error::DimensionMismatch {
                op: "bloch_vector",
                lhs: self.matrix.shape(),
                rhs: (2, 2),
            });
        }
        let m = &self.matrix;
        Ok(BlochVector::new(
            2.0 * m[(0, 1)].re,
            -2.0 * m[(0, 1)].im,
            (m[(0, 0)] - m[(1, 1)]).re,
        ))
    }

    /// `λρ + (1 − λ)σ`.
    pub fn mix(&self, lambda: f64, other: &DensityMatrix) -> Result<DensityMatrix> {
        if !(0.0..=1.0).contains(&lambda) {
            return Err(Error::ParameterOutOfRange {
                name: "lambda",
                value: lambda,
            });
        }
        let m = self
            .matrix
            .scale_real(lambda)
            .add(&other.matrix.scale_real(1.0 - lambda))?;
        renormalized_state(&m)
    }

    /// `ρ ⊗ σ`.
    pub fn tensor(&self, other: &DensityMatrix) -> DensityMatrix {
        DensityMatrix {
            matrix: tensor_product(&self.matrix, &other.matrix),
            sqrt: tensor_product(&self.sqrt, &other.sqrt),
        }
    }

    /// `UρU†`.
    pub fn conjugated_by(&self, u: &ComplexMatrix) -> Result<DensityMatrix> {
        check_unitary(u)?;
        let ud = u.adjoint();
        Ok(DensityMatrix {
            matrix: u.matmul(&self.matrix)?.matmul(&ud)?,
            sqrt: u.matmul(&self.sqrt)?.matmul(&ud)?,
        })
    }

    /// Reduced state on the first factor of a `d_a ⊗ d_b` system.
    pub fn partial_trace_second(&self, d_a: usize, d_b: usize) -> Result<DensityMatrix> {
        if d_a == 0 || d_b == 0 || d_a * d_b != self.dim() {
            return Err(Error::DimensionMismatch {
                op: "partial_trace_second",
                lhs: self.matrix.shape(),
                rhs: (d_a, d_b),
            });
        }
        let n = self.dim();
        let m = self.matrix.as_slice();
        let mut out = vec![Complex64::new(0.0, 0.0); d_a * d_a];
        for i in 0..d_a {
            for j in 0..d_a {
                out[i * d_a + j] = (0..d_b).map(|k| m[(i * d_b + k) * n + j * d_b + k]).sum();
            }
        }
        renormalized_state(&ComplexMatrix::new(d_a, d_a, out)?)
    }
}

impl fmt::Display for DensityMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Ok(r) = self.bloch_vector() {
            return write!(f, "qubit state with Bloch vector {r}");
        }
        write!(f, "{}-dimensional state, rows:", self.dim())?;
        for i in 0..self.dim() {
            write!(f, " [")?;
            for (k, z) in self.matrix.row(i).iter().enumerate() {
                if k > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{:.6}{:+.6}i", z.re, z.im)?;
            }
            write!(f, "]")?;
        }
        Ok(())
    }
}

fn check_unitary(u: &ComplexMatrix) -> Result<()> {
    let res = u.unitarity_residual();
    if res.is_nan() || res > UNITARY_TOL {
        return Err(Error::NotUnitary(res));
    }
    Ok(())
}

fn state_from_eig(matrix: ComplexMatrix, eig: &EigDecomposition) -> Result<DensityMatrix> {
    let sqrt = psd_sqrt_from_eig(eig)?;
    let err = sqrt.matmul(&sqrt)?.sub(&matrix)?.frobenius_norm();
    if err > hybrid_tol(SQRT_RECONSTRUCT_TOL, matrix.frobenius_norm()) {
        return Err(Error::InternalConsistency {
            quantity: "sqrt(rho) reconstruction",
            value: err,
        });
    }
    Ok(DensityMatrix { matrix, sqrt })
}

/// Validates `m` as a density matrix and caches its square root.
pub fn density_from_matrix(m: &ComplexMatrix) -> Result<DensityMatrix> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch {
            op: "density_from_matrix",
            lhs: m.shape(),
            rhs: (m.rows(), m.rows()),
        });
    }
    let residual = m.hermitian_residual();
    if residual.is_nan() || residual > STATE_TOL {
        return Err(Error::NotHermitian(residual));
    }
    let tr = m.trace()?;
    if (tr - Complex64::new(1.0, 0.0)).norm() > STATE_TOL {
        return Err(Error::NotUnitTrace(tr.re));
    }
    let sym = m.hermitian_part()?;
    let eig = hermitian_eig(&sym)?;
    if eig.min_eigenvalue() < -PSD_CLAMP_TOL {
        return Err(Error::NotPositiveSemidefinite(eig.min_eigenvalue()));
    }
    state_from_eig(sym, &eig)
}

/// Revalidation used after arithmetic on states: clamps eigenvalues in
/// `[-1e-10, 0)` to zero and renormalizes a trace within `1e-9` of one.
pub(crate) fn renormalized_state(m: &ComplexMatrix) -> Result<DensityMatrix> {
    let sym = m.hermitian_part()?;
    let tr = sym.trace()?.re;
    if (tr - 1.0).abs() > STATE_TOL {
        return Err(Error::NotUnitTrace(tr));
    }
    let mut eig = hermitian_eig(&sym)?;
    if eig.min_eigenvalue() < -PSD_CLAMP_TOL {
        return Err(Error::NotPositiveSemidefinite(eig.min_eigenvalue()));
    }
    let total: f64 = eig.eigenvalues.iter().map(|l| l.max(0.0)).sum();
    for l in &mut eig.eigenvalues {
        *l = l.max(0.0) / total;
    }
    state_from_eig(eig.reconstruct(), &eig)
}

/// Qubit Bloch vector `r = (r_x, r_y, r_z)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BlochVector {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl BlochVector {
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub fn from_array(r: [f64; 3]) -> Self {
        Self::new(r[0], r[1], r[2])
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn norm(self) -> f64 {
        (self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }

    pub fn dot(self, other: BlochVector) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    /// `(ρ_⊥ cos θ, ρ_⊥ sin θ, z)`.
    pub fn azimuthal(transverse: f64, theta: f64, z: f64) -> Self {
        Self::new(transverse * theta.cos(), transverse * theta.sin(), z)
    }
}

impl fmt::Display for BlochVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:.9}, {:.9}, {:.9})", self.x + 0.0, self.y + 0.0, self.z + 0.0)
    }
}

/// `ρ = ½(I + r·σ)`.
pub fn density_from_bloch(r: BlochVector) -> Result<DensityMatrix> {
    let len = r.norm();
    if !len.is_finite() || len > 1.0 + BLOCH_TOL {
        return Err(Error::BlochVectorTooLong(len));
    }
    let r = if len > 1.0 {
        BlochVector::new(r.x / len, r.y / len, r.z / len)
    } else {
        r
    };
    let m = ComplexMatrix::new(
        2,
        2,
        vec![
            Complex64::new(0.5 * (1.0 + r.z), 0.0),
            Complex64::new(0.5 * r.x, -0.5 * r.y),
            Complex64::new(0.5 * r.x, 0.5 * r.y),
            Complex64::new(0.5 * (1.0 - r.z), 0.0),
        ],
    )?;
    density_from_matrix(&m)
}

/// A channel given by an ordered list of Kraus operators.
#[derive(Clone, Debug)]
pub struct KrausChannel {
    name: String,
    dim: usize,
    ops: Vec<ComplexMatrix>,
}

impl KrausChannel {
    /// Validates that the operators are square, share a dimension and
    /// satisfy `Σ K_i†K_i = I` within `1e-8`.
    pub fn new(name: impl Into<String>, ops: Vec<ComplexMatrix>) -> Result<Self> {
        let first = ops.first().ok_or(Error::BadShape {
            rows: 0,
            cols: 0,
            got: 0,
        })?;
        let dim = first.rows();
        for k in &ops {
            if k.shape() != (dim, dim) {
                return Err(Error::DimensionMismatch {
                    op: "KrausChannel::new",
                    lhs: first.shape(),
                    rhs: k.shape(),
                });
            }
        }
        let residual = completeness_residual(&ops, dim, true);
        if residual.is_nan() || residual > TRACE_PRESERVING_TOL {
            return Err(Error::NotTracePreserving(residual));
        }
        Ok(Self {
            name: name.into(),
            dim,
            ops,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn kraus_ops(&self) -> &[ComplexMatrix] {
        &self.ops
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// `‖Σ K_i K_i† − I‖_F`.
    pub fn unitality_residual(&self) -> f64 {
        completeness_residual(&self.ops, self.dim, false)
    }

    pub fn is_unital(&self) -> bool {
        self.unitality_residual() <= TRACE_PRESERVING_TOL
    }

    /// Single Kraus operator, which is then necessarily unitary.
    pub fn is_unitary(&self) -> bool {
        self.ops.len() == 1
    }

    /// Kraus list extended with zero operators up to `n` entries.
    pub fn padded_ops(&self, n: usize) -> Vec<ComplexMatrix> {
        let mut ops = self.ops.clone();
        while ops.len() < n {
            ops.push(ComplexMatrix::zeros(self.dim, self.dim));
        }
        ops
    }

    /// The channel with Kraus operators `U K_i U†`, so that
    /// `I_{UρU†}(UΦU†) = I_ρ(Φ)`.
    pub fn conjugated_by(&self, u: &ComplexMatrix) -> Result<KrausChannel> {
        check_unitary(u)?;
        let ud = u.adjoint();
        let ops = self
            .ops
            .iter()
            .map(|k| u.matmul(k)?.matmul(&ud))
            .collect::<Result<Vec<_>>>()?;
        KrausChannel::new(format!("U·{}·U†", self.name), ops)
    }
}

fn completeness_residual(ops: &[ComplexMatrix], dim: usize, left: bool) -> f64 {
    let mut sum = ComplexMatrix::zeros(dim, dim);
    for k in ops {
        let kd = k.adjoint();
        let term = if left { kd.matmul(k) } else { k.matmul(&kd) };
        sum = sum.add(&term.expect("square")).expect("same shape");
    }
    sum.sub(&ComplexMatrix::identity(dim))
        .expect("same shape")
        .frobenius_norm()
}

fn check_probability_like(q: f64) -> Result<()> {
    if !(0.0..1.0).contains(&q) {
        return Err(Error::ParameterOutOfRange {
            name: "q",
            value: q,
        });
    }
    Ok(())
}

/// Amplitude damping with `L₁ = [[1,0],[0,√(1−q)]]`, `L₂ = [[0,√q],[0,0]]`.
pub fn amplitude_damping(q: f64) -> Result<KrausChannel> {
    check_probability_like(q)?;
    let l1 = ComplexMatrix::from_real(2, 2, &[1.0, 0.0, 0.0, (1.0 - q).sqrt()])?;
    let l2 = ComplexMatrix::from_real(2, 2, &[0.0, q.sqrt(), 0.0, 0.0])?;
    KrausChannel::new(format!("amplitude_damping(q={q})"), vec![l1, l2])
}

/// Bit flip with `K₁ = √q·I`, `K₂ = √(1−q)·σ_x`.
pub fn bit_flip(q: f64) -> Result<KrausChannel> {
    check_probability_like(q)?;
    let k1 = ComplexMatrix::identity(2).scale_real(q.sqrt());
    let k2 = ComplexMatrix::pauli_x().scale_real((1.0 - q).sqrt());
    KrausChannel::new(format!("bit_flip(q={q})"), vec![k1, k2])
}

/// `ρ ↦ UρU†`.
pub fn unitary_channel(u: &ComplexMatrix) -> Result<KrausChannel> {
    if !u.is_square() {
        return Err(Error::NotUnitary(f64::INFINITY));
    }
    check_unitary(u)?;
    KrausChannel::new("unitary", vec![u.clone()])
}

pub fn identity_channel(d: usize) -> KrausChannel {
    KrausChannel {
        name: "identity".into(),
        dim: d,
        ops: vec![ComplexMatrix::identity(d)],
    }
}

/// Unitary channels for σ_x, σ_y, σ_z.
pub fn pauli_unitary_channels() -> (KrausChannel, KrausChannel, KrausChannel) {
    let make = |name: &str, m: ComplexMatrix| KrausChannel {
        name: name.into(),
        dim: 2,
        ops: vec![m],
    };
    (
        make("sigma_x", ComplexMatrix::pauli_x()),
        make("sigma_y", ComplexMatrix::pauli_y()),
        make("sigma_z", ComplexMatrix::pauli_z()),
    )
}

/// Unitary remixing `K'_i = Σ_j u_ij K_j` of the Kraus list. When `u` is
/// larger than the Kraus count the list is first padded with zero operators.
pub fn mix_kraus(c: &KrausChannel, u: &ComplexMatrix) -> Result<KrausChannel> {
    if !u.is_square() || u.rows() < c.len() {
        return Err(Error::DimensionMismatch {
            op: "mix_kraus",
            lhs: (c.len(), c.len()),
            rhs: u.shape(),
        });
    }
    check_unitary(u)?;
    let n = u.rows();
    let ops = c.padded_ops(n);
    let d = c.dim;
    let mixed = (0..n)
        .map(|i| {
            let mut acc = ComplexMatrix::zeros(d, d);
            for (j, k) in ops.iter().enumerate() {
                let w = u[(i, j)];
                if w != Complex64::new(0.0, 0.0) {
                    acc = acc.add(&k.scale(w))?;
                }
            }
            Ok(acc)
        })
        .collect::<Result<Vec<_>>>()?;
    KrausChannel::new(format!("{}·mixed", c.name), mixed)
}

/// `Σ_i K_i X K_i†` on an arbitrary square matrix.
pub fn apply_channel_to_matrix(c: &KrausChannel, x: &ComplexMatrix) -> Result<ComplexMatrix> {
    if x.shape() != (c.dim, c.dim) {
        return Err(Error::DimensionMismatch {
            op: "apply_channel",
            lhs: (c.dim, c.dim),
            rhs: x.shape(),
        });
    }
    let mut out = ComplexMatrix::zeros(c.dim, c.dim);
    for k in &c.ops {
        out = out.add(&k.matmul(x)?.matmul(&k.adjoint())?)?;
    }
    Ok(out)
}

/// `Φ(ρ) = Σ_i K_i ρ K_i†`, revalidated as a state.
pub fn apply_channel(c: &KrausChannel, rho: &DensityMatrix) -> Result<DensityMatrix> {
    renormalized_state(&apply_channel_to_matrix(c, rho.matrix())?)
}

/// `Φ ⊗ 𝓘` on a `d · d_b` system, Kraus operators `K_i ⊗ I_{d_b}`.
pub fn extend_channel(c: &KrausChannel, d_b: usize) -> KrausChannel {
    let id = ComplexMatrix::identity(d_b);
    KrausChannel {
        name: format!("{}⊗id{d_b}", c.name),
        dim: c.dim * d_b,
        ops: c.ops.iter().map(|k| tensor_product(k, &id)).collect(),
    }
}
