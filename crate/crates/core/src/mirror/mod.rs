//! Numeric mirror side: Jackson q-integrals, difference systems and critical points.
//!
//! - [`hp`] is a fixed-point high-precision real used by the q-integrals
//! - lattice sums are cut with geometric tail estimates; outside the
//!   convergence region the closed q-gamma / bilateral forms continue them
//! - difference systems are checked exactly on factored coefficients
//! - critical points are f64 complex, with roots clustered at relative `1e-8`

pub mod critical;
pub mod diffeq;
pub mod hp;
pub mod jackson;

pub use critical::{critical_points, superpotential_gradient, verify_ring_count, Configuration, MirrorConfig};
pub use diffeq::{verify_difference_system, DiffVariant};
pub use hp::{Hp, Precision};
pub use jackson::{qint_minus, qint_plus, verify_model_reduction, QIntegralSpec, Variant};
