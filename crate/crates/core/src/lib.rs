//! Exact counting, representation theory and Fourier analysis for the
//! rigid-motion group `G₀ = F_q² ⋊ SO₂(F_q)` and general finite semidirect
//! products `N ⋊ H`.

pub mod cli;
pub mod counting;
pub mod distance;
pub mod error;
pub mod field;
pub mod repr;
pub mod rigid_motion;
pub mod rng;
pub mod semidirect;

pub use counting::{GroupSubset, VerificationReport};
pub use error::{Error, Result};
pub use field::{FieldElement, FieldParams};
pub use repr::{Fourier, FourierCoefficients, Irrep, IrrepLabel};
pub use rigid_motion::{Point, RigidMotionGroup};
pub use semidirect::{FiniteGroup, SdpElement, SdpGroup};
