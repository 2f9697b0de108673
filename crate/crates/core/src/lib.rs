//! Numerical toolkit for the octonionic Malcev algebra and the unit-octonion
//! Moufang loop `S^7`.
//!
//! * [`octonion`]: octonion arithmetic on the cyclic Fano table.
//! * [`algebra`]: structure-constant algebras, Jacobians, the defect operator.
//! * [`spectral`]: adjoint spectra, exponentials, periods, functional calculus.
//! * [`moufang`]: exact flows on the unit octonions.
//! * [`bch`]: truncated Baker–Campbell–Hausdorff series and radius predicate.
//! * [`harmonics`]: the degree-1 eigenspace action and Laplacian tables.
//!
//! Batch kernels take an [`Exec`] policy; see [`exec`].

pub mod algebra;
pub mod bch;
pub mod error;
pub mod exec;
pub mod harmonics;
pub mod linop;
pub mod moufang;
pub mod octonion;
pub mod sampling;
pub mod spectral;
pub mod verify;

pub use algebra::{builtin, load_algebra, AlgebraSpec, DefectNorm, FULL_COMMUTATOR_SCALE};
pub use error::{Error, Result};
pub use exec::Exec;
pub use linop::{LinOp, Vector};
pub use octonion::Octonion;
