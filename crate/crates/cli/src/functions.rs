//! Integrands selectable from the command line.

use std::sync::Arc;

use hankelquad::hankelrule::{taylor_coeffs, IntegrandSpec, Symmetry};
use hankelquad::numerics::real::c_from_f64;
use hankelquad::numerics::{Cplx, ExtReal};
use hankelquad::Error;

use crate::expr::Expr;

pub const BUILTINS: &[&str] = &["exp_neg", "rational_sq", "gauss", "shifted_rational", "custom-taylor"];

/// Arguments describing a `custom-taylor` integrand.
#[derive(Debug, Clone, Default)]
pub struct Custom {
    pub expr: Option<String>,
    pub taylor: Option<Vec<f64>>,
    pub radius: Option<f64>,
}

pub fn lookup(name: &str, custom: &Custom) -> Result<IntegrandSpec, String> {
    match name {
        "exp_neg" => Ok(IntegrandSpec::exp_neg()),
        "rational_sq" => Ok(IntegrandSpec::rational_sq()),
        "gauss" => Ok(IntegrandSpec::gaussian()),
        "shifted_rational" => Ok(IntegrandSpec::shifted_rational()),
        "custom-taylor" => custom_integrand(custom),
        _ => Err(format!("unknown function {name:?}; expected one of {}", BUILTINS.join(", "))),
    }
}

/// Relative agreement demanded between supplied Taylor data and circle sums
/// of the expression.
const TAYLOR_CHECK: f64 = 1e-8;

fn custom_integrand(c: &Custom) -> Result<IntegrandSpec, String> {
    let src = c.expr.as_deref().ok_or("custom-taylor needs --expr")?;
    let expr = Arc::new(Expr::parse(src)?);
    let (e1, e2) = (expr.clone(), expr.clone());
    let mut spec = IntegrandSpec::new(format!("custom({src})"), move |z| {
        let v = e1.eval::<f64>(&z, ());
        if v.re.is_finite() && v.im.is_finite() {
            Ok(v)
        } else {
            Err(Error::Domain(format!("expression is not finite at {z}")))
        }
    })
    .with_ext(move |z| {
        let ctx = z.re.context().or_else(|| z.im.context()).expect("evaluation point carries a context");
        Ok(e2.eval::<ExtReal>(z, ctx))
    });
    if let Some(r) = c.radius {
        if !(r > 0.0) {
            return Err(format!("--radius must be positive, got {r}"));
        }
        spec = spec.with_radius(r);
    }
    match expr.symmetry() {
        Some(true) => spec = spec.with_symmetry(Symmetry::Even),
        Some(false) => spec = spec.with_symmetry(Symmetry::Odd),
        None => {}
    }
    let Some(coeffs) = &c.taylor else {
        return Ok(spec);
    };
    // the supplied coefficients must describe the expression
    let sums = taylor_coeffs(&spec, coeffs.len()).map_err(|e| format!("cannot check --taylor: {e}"))?;
    let rho = 0.1f64.min(0.5 * spec.radius);
    let scale = sums.iter().enumerate().map(|(k, a)| a.norm() * rho.powi(k as i32)).fold(0.0, f64::max).max(1e-300);
    for (k, (a, s)) in coeffs.iter().zip(&sums).enumerate() {
        if (Cplx::new(*a, 0.0) - s).norm() * rho.powi(k as i32) > TAYLOR_CHECK * scale {
            return Err(format!("--taylor coefficient {k} = {a} disagrees with the expression ({:.12e})", s.re));
        }
    }
    let data: Vec<Cplx> = coeffs.iter().map(|&a| Cplx::new(a, 0.0)).collect();
    Ok(spec.with_taylor_fn(move |order, ctx| {
        if order > data.len() {
            return Err(Error::MissingDerivatives(format!("--taylor lists {} coefficients, {order} needed", data.len())));
        }
        Ok(data[..order].iter().map(|&a| c_from_f64(a, ctx)).collect())
    }))
}
