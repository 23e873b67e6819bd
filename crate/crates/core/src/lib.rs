//! Wigner–Yanase skew-information uncertainty for quantum channels.
//!
//! * [`matcore`]: dense complex matrices, Hermitian eigendecomposition, PSD
//!   square roots.
//! * [`quantum`]: validated states and Kraus channels, including amplitude
//!   damping, bit flip and unitary channels.
//! * [`uncertainty`]: `I`, `J`, `V`, `C`, `Q` for a (state, channel) pair and
//!   the product, sum and three-channel uncertainty relations.
//! * [`sampling`]: seeded random states, unitaries and channels plus batch
//!   property campaigns.
//!
//! ```
//! use skewinfo::quantum::{amplitude_damping, bit_flip, density_from_bloch};
//! use skewinfo::uncertainty::{lb_product, report};
//! use skewinfo::BlochVector;
//!
//! let rho = density_from_bloch(BlochVector::azimuthal(0.5, 0.3, 0.5))?;
//! let (psi, phi) = (amplitude_damping(0.5)?, bit_flip(0.5)?);
//! let r = report(&rho, &psi)?;
//! assert!(r.skew_info <= r.quantum);
//! assert!(lb_product(&rho, &psi, &phi)?.satisfied);
//! # Ok::<(), skewinfo::Error>(())
//! ```

pub mod error;
pub mod matcore;
pub mod quantum;
pub mod sampling;
pub mod uncertainty;

pub use error::{Error, Result};
pub use matcore::{ComplexMatrix, EigDecomposition};
pub use num_complex::Complex64;
pub use quantum::{BlochVector, DensityMatrix, KrausChannel};
pub use sampling::{CampaignReport, Property, SampleConfig};
pub use uncertainty::{BoundCheck, UncertaintyReport};
