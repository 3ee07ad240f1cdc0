//! Discrete Fourier transforms, fast Fourier transforms and convolution on
//! `ℂ^n` and on finite abelian groups.
//!
//! Every fast path in [`fft`] has a dense counterpart in [`fourier`] or
//! [`circulant`] that it can be checked against; [`verify`] runs those
//! checks as named invariant suites.

pub mod circulant;
pub mod complex;
pub mod dense;
pub mod error;
pub mod fft;
pub mod fourier;
pub mod group;
pub mod verify;

pub use circulant::{CirculantMatrix, GCirculant};
pub use complex::{CVector, Complex};
pub use dense::{DenseMatrix, DEFAULT_ORACLE_CAP};
pub use error::{Error, Result};
pub use fft::{Direction, PlanG, TwiddleTable};
pub use fourier::{CharacterTable, Spectrum};
pub use group::{canonicalize, Canonicalization, FiniteAbelianGroup, GroupElement};
