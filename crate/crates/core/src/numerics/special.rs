//! Uniform entry point to the double-precision special functions.

use super::bessel::{bessel_i, bessel_j, bessel_k, bessel_y};
use super::gamma::gamma;
use super::struve::struve_h;
use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpecialKind {
    J,
    Y,
    I,
    K,
    StruveH,
    Gamma,
}

/// Evaluate a special function of real `order` at `x`. For
/// [`SpecialKind::Gamma`] the order is ignored and `Γ(x)` is returned.
pub fn special_eval(kind: SpecialKind, order: f64, x: f64) -> Result<f64> {
    match kind {
        SpecialKind::J => bessel_j(order, x),
        SpecialKind::Y => bessel_y(order, x),
        SpecialKind::I => bessel_i(order, x),
        SpecialKind::K => bessel_k(order, x),
        SpecialKind::StruveH => struve_h(order, x),
        SpecialKind::Gamma => gamma(x),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn examples() {
        let k = special_eval(SpecialKind::K, 0.5, 1.0).unwrap();
        assert!((k - (PI / 2.0).sqrt() * (-1.0f64).exp()).abs() < 1e-15);
        assert_eq!(special_eval(SpecialKind::J, 0.0, 0.0).unwrap(), 1.0);
        let i = special_eval(SpecialKind::I, 0.5, 1.0).unwrap();
        assert!((i - (2.0 / PI).sqrt() * 1.0f64.sinh()).abs() < 1e-15);
        assert!(special_eval(SpecialKind::K, 0.0, 0.0).is_err());
        assert!(special_eval(SpecialKind::Y, 1.0, -1.0).is_err());
        assert!(special_eval(SpecialKind::Gamma, 0.0, -2.0).is_err());
    }
}
