//! Kahan's discretization of planar quadratic vector fields.
//!
//! The crate provides
//!
//! * [`vectorfield`]: quadratic fields, their polarizations and Jacobians;
//! * [`systems`]: the quartic and sextic families `ṗ = φ(p)·K∇H(p)` together with
//!   their Hamiltonians, modified Hamiltonians `H̃` and invariant measure densities;
//! * [`kahan`]: the Kahan map, its inverse and Jacobian, orbits, and an RK4
//!   reference flow;
//! * [`verify`]: sampled reports certifying conservation of `H̃`, preservation of
//!   the measure, reversibility and second-order accuracy.
//!
//! ```
//! use kahan_core::{kahan, Point2, QuarticParams, StepConfig, SystemSpec};
//!
//! let sys = SystemSpec::build_quartic(QuarticParams::new(1.0, 0.0, 1.0, 0.0, 1.0)).unwrap();
//! let h = 0.05;
//! let cfg = StepConfig::new(h).unwrap();
//! let p = Point2::new(1.0, 1.0);
//! let next = kahan::step(sys.field(), &cfg, p).unwrap();
//! let before = sys.modified_hamiltonian(h, p).unwrap();
//! let after = sys.modified_hamiltonian(h, next).unwrap();
//! assert!((after - before).abs() < 1e-12);
//! ```

// `!(x >= tol)` is used on purpose so that NaN fails tolerance checks
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod kahan;
pub mod linalg;
pub mod systems;
pub mod vectorfield;
pub mod verify;

pub use error::{Error, Result};
pub use kahan::{StepConfig, Termination, TerminationReason, Trajectory, TrajectoryRecord};
pub use linalg::{Mat2, Point2, Vec2};
pub use systems::{
    Family, FamilyParams, InvariantConstants, LinearForm, QuarticConstants, QuarticParams,
    SexticConstants, SexticParams, SystemSpec,
};
pub use vectorfield::{FieldDiagnostics, QuadraticField2};
pub use verify::{Region, SampleSpec, Suite, VerificationReport};
