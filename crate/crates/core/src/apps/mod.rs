//! Applications of the Hankel rules: principal-value Hilbert transforms with
//! Bessel kernels and magnetic fields of a dipole over a layered earth.

mod em;
mod hilbert;

pub use em::{em_fields, em_oracle, reflection_phi0, EmFields, LayeredModel, MU0};
pub use hilbert::{hilbert_eval, hilbert_kernel_closed, hilbert_reference, hilbert_subtracted, HilbertProblem};
