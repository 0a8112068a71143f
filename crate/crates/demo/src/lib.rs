//! Browser demo: three operations exported to JavaScript through
//! wasm-bindgen. Each returns a JSON string; failures become JS exceptions
//! carrying the message.
//!
//! The plain functions in [`ops`] do the work and are what the native tests
//! call.

use wasm_bindgen::prelude::*;

pub mod ops {
    use hankelquad::besselpoly::{cluster_estimate, zero_map};
    use hankelquad::hankelrule::{apply_hi_rule, apply_hi_rule_ext, build_hi_rule, IntegrandSpec};
    use hankelquad::numerics::real::C;
    use hankelquad::numerics::{Cplx, ExtReal, PrecisionContext};
    use hankelquad::oracle::{gaussian_transform, gaussian_transform_ext, rotated_hankel, RotatedOracle};
    use serde::Serialize;
    use serde_json::json;

    /// Sweeps evaluate at most this many points.
    pub const MAX_POINTS: usize = 64;

    fn integrand(name: &str) -> Result<IntegrandSpec, String> {
        match name {
            "exp_neg" => Ok(IntegrandSpec::exp_neg()),
            "rational_sq" => Ok(IntegrandSpec::rational_sq()),
            "gauss" => Ok(IntegrandSpec::gaussian()),
            "shifted_rational" => Ok(IntegrandSpec::shifted_rational()),
            _ => Err(format!("unknown function {name:?}")),
        }
    }

    pub fn rule_json(n: usize, mu: u32, nu: u32) -> Result<String, String> {
        build_hi_rule(n, mu, nu).map(|r| r.to_json()).map_err(|e| e.to_string())
    }

    #[derive(Serialize)]
    struct Point {
        omega: f64,
        rule: [f64; 2],
        reference: [f64; 2],
        abs_err: f64,
        rel_err: f64,
    }

    /// Rule against reference on `points` log-spaced ω in `[lo, hi]`.
    /// Above 16 digits both sides run in extended precision.
    #[allow(clippy::too_many_arguments)]
    pub fn error_sweep(
        f: &str,
        n: usize,
        mu: u32,
        nu: u32,
        lo: f64,
        hi: f64,
        points: usize,
        digits: u32,
    ) -> Result<String, String> {
        if !(lo > 0.0 && hi > lo && hi.is_finite()) {
            return Err(format!("need 0 < lo < hi, got {lo}, {hi}"));
        }
        if !(2..=MAX_POINTS).contains(&points) {
            return Err(format!("points must lie in 2..={MAX_POINTS}"));
        }
        let f = integrand(f)?;
        let gauss = f.name == "gauss";
        let rule = build_hi_rule(n, mu, nu).map_err(|e| e.to_string())?;
        let omegas = (0..points).map(|i| lo * (hi / lo).powf(i as f64 / (points - 1) as f64));
        let mut out = Vec::with_capacity(points);
        if digits <= 16 {
            for omega in omegas {
                let q = apply_hi_rule(&rule, &f, omega).map_err(|e| e.to_string())?;
                let o = if gauss {
                    gaussian_transform(nu as f64, omega).map(|v| Cplx::new(v, 0.0))
                } else {
                    rotated_hankel(&f, 0.0, nu as f64, omega).map(|r| r.value)
                }
                .map_err(|e| e.to_string())?;
                let abs_err = (q - o).norm();
                out.push(Point { omega, rule: [q.re, q.im], reference: [o.re, o.im], abs_err, rel_err: abs_err / o.norm() });
            }
        } else {
            let ctx = PrecisionContext::new(digits).map_err(|e| e.to_string())?;
            let rctx = rule.ext.as_ref().map(|e| e.ctx).ok_or("rule lacks extended data")?;
            let oracle = if gauss {
                None
            } else {
                Some(RotatedOracle::<ExtReal>::new(0.0, nu as f64, ctx).map_err(|e| e.to_string())?)
            };
            for omega in omegas {
                let q = apply_hi_rule_ext(&rule, &f, &rctx.real(omega)).map_err(|e| e.to_string())?;
                let o = match &oracle {
                    Some(o) => o.eval(&f, &ctx.real(omega)).map(|r| r.0),
                    None => gaussian_transform_ext(nu as f64, &ctx.real(omega)).map(|v| C::new(v, ctx.int(0))),
                }
                .map_err(|e| e.to_string())?;
                let dr = q.re.with_context(ctx) - &o.re;
                let di = q.im.with_context(ctx) - &o.im;
                let abs_err = (&dr * &dr + &di * &di).sqrt().to_f64();
                let mag = (&o.re * &o.re + &o.im * &o.im).sqrt().to_f64();
                out.push(Point {
                    omega,
                    rule: [q.re.to_f64(), q.im.to_f64()],
                    reference: [o.re.to_f64(), o.im.to_f64()],
                    abs_err,
                    rel_err: abs_err / mag,
                });
            }
        }
        serde_json::to_string(&out).map_err(|e| e.to_string())
    }

    /// Zeros of the orthogonal polynomial with the cluster-line estimate.
    pub fn zero_map_json(mu: f64, nu: f64, n: usize) -> Result<String, String> {
        if n == 0 {
            return Err("n must be at least 1".into());
        }
        let zs = zero_map(mu, nu, n).map_err(|e| e.to_string())?;
        let line = cluster_estimate(&zs, mu, nu);
        let zeros: Vec<[f64; 2]> = zs.zeros.iter().map(|z| [z.re, z.im]).collect();
        Ok(json!({ "zeros": zeros, "cluster_estimate": line.estimate, "classified": line.classified }).to_string())
    }
}

#[wasm_bindgen(js_name = ruleJson)]
pub fn rule_json(n: usize, mu: u32, nu: u32) -> Result<String, JsError> {
    ops::rule_json(n, mu, nu).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = errorSweep)]
#[allow(clippy::too_many_arguments)]
pub fn error_sweep(
    f: &str,
    n: usize,
    mu: u32,
    nu: u32,
    lo: f64,
    hi: f64,
    points: usize,
    digits: u32,
) -> Result<String, JsError> {
    ops::error_sweep(f, n, mu, nu, lo, hi, points, digits).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = zeroMap)]
pub fn zero_map(mu: f64, nu: f64, n: usize) -> Result<String, JsError> {
    ops::zero_map_json(mu, nu, n).map_err(|e| JsError::new(&e))
}
