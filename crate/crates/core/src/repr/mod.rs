//! Irreducible representations of `G₀` and the Fourier transform they define.

pub mod fourier;
pub mod irreps;
pub mod matrix;

pub use fourier::{convolve_direct, indicator, inner, lp_norm, Fourier, FourierCoefficients};
pub use irreps::{
    additive_character, all_irreps, classify_type, dual_orbit_partition, dual_orbits,
    quasirandom_degree, type1_irreps, type2_irrep, CharacterTable, Irrep, IrrepLabel, Monomial,
    RepType,
};
pub use matrix::ComplexMatrix;
