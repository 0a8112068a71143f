//! Extended-precision arithmetic and special functions.

pub mod bessel;
pub mod ext;
pub mod gamma;
pub mod quad;
pub mod real;
pub mod special;
pub mod struve;

pub use ext::{ExtReal, PrecisionContext};
pub use gamma::{gamma, gamma_ext, gamma_ratio, gamma_ratio_f64, rgamma_ext};
pub use real::Real;
pub use special::{special_eval, SpecialKind};

/// Complex double, used for nodes, weights and transform values.
pub type Cplx = num_complex::Complex64;
