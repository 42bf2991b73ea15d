use thiserror::Error;

use crate::classify::ThetaRegion;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("coin matrix is not unitary: max |C C^dagger - I| entry = {max_deviation:.3e}")]
    NotUnitary {
        max_deviation: f64,
        /// Entrywise |C C^dagger - I|.
        deviation: [[f64; 2]; 2],
    },

    #[error("coin entry c11 (and hence c22) must be nonzero for transfer matrices")]
    ZeroCornerEntry,

    #[error("eigenvalue must lie on the unit circle, got modulus {modulus}")]
    NotOnUnitCircle { modulus: f64 },

    #[error("window of {len} sites is too small, need at least {required}")]
    WindowTooSmall { len: usize, required: usize },

    #[error("window must contain the origin, got [{xmin}, {xmax}]")]
    WindowMissingOrigin { xmin: i64, xmax: i64 },

    #[error("site {extent} exceeds the per-call cap of {cap} sites")]
    WindowTooLarge { extent: i64, cap: i64 },

    #[error("amplitude overflowed the double-precision range at site {site}")]
    Overflow { site: i64 },

    #[error("initial vector must be nonzero")]
    ZeroInput,

    #[error("lambda^2 + Delta vanishes; the double-root prefactor is undefined")]
    DegeneratePrefactor,

    #[error("rotation coin needs cos(zeta) != 0 and sin(zeta) != 0")]
    DegenerateCoin,

    #[error("theta = {theta} lies in {found}, operation requires {required}")]
    RegionMismatch {
        theta: f64,
        found: ThetaRegion,
        required: &'static str,
    },

    #[error("theta = {theta} makes the oscillatory part vanish identically")]
    DegenerateTheta { theta: f64 },

    #[error("transfer matrices are not mutually inverse (deviation {deviation:.3e})")]
    InverseMismatch { deviation: f64 },

    #[error("grid size {grid} is below the minimum of {min}")]
    InvalidGrid { grid: usize, min: usize },

    #[error("{class} prediction disagrees with transfer iteration (relative deviation {deviation:.3e})")]
    CrossValidation { class: &'static str, deviation: f64 },

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}
