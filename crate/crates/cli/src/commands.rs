//! Command implementations. Each returns rows for the writer in `main`.

use rayon::prelude::*;
use serde::Serialize;

use hankelquad::apps::{em_fields, em_oracle, hilbert_kernel_closed, hilbert_subtracted, HilbertProblem, LayeredModel};
use hankelquad::besselpoly::{cluster_estimate, zero_map};
use hankelquad::hankelrule::{apply_hi_rule, apply_hi_rule_ext, build_hi_rule, HankelGGRRule, IntegrandSpec};
use hankelquad::numerics::real::C;
use hankelquad::numerics::{Cplx, ExtReal, PrecisionContext};
use hankelquad::oracle::{gaussian_transform, gaussian_transform_ext, rotated_hankel, RotatedOracle};
use hankelquad::Error;

/// Why a command stopped: bad input (exit 1) or a numerical failure (exit 2).
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Numerical(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidSpec(_) => Failure::Usage(e.to_string()),
            _ => Failure::Numerical(e.to_string()),
        }
    }
}

pub type Outcome<T> = Result<T, Failure>;

/// `a..b` (log-spaced, `points` values), a comma list, or one value.
pub fn parse_grid(spec: &str, points: usize) -> Outcome<Vec<f64>> {
    let bad = |m: String| Failure::Usage(format!("--omega {spec:?}: {m}"));
    let num = |s: &str| s.trim().parse::<f64>().map_err(|_| bad(format!("{s:?} is not a number")));
    let grid = if let Some((a, b)) = spec.split_once("..") {
        let (a, b) = (num(a)?, num(b)?);
        if !(b > a) {
            return Err(bad("range end must exceed its start".into()));
        }
        if points < 2 {
            return Err(bad("a range needs at least two points".into()));
        }
        (0..points).map(|i| a * (b / a).powf(i as f64 / (points - 1) as f64)).collect()
    } else {
        spec.split(',').map(num).collect::<Outcome<Vec<f64>>>()?
    };
    if let Some(w) = grid.iter().find(|w| !(**w > 0.0 && w.is_finite())) {
        return Err(bad(format!("values must be positive and finite, got {w}")));
    }
    Ok(grid)
}

pub fn rule(n: usize, mu: u32, nu: u32) -> Outcome<HankelGGRRule> {
    Ok(build_hi_rule(n, mu, nu)?)
}

#[derive(Debug, Serialize)]
pub struct EvalRow {
    pub omega: f64,
    pub re: f64,
    pub im: f64,
}

pub fn eval(f: &IntegrandSpec, n: usize, mu: u32, nu: u32, omegas: &[f64]) -> Outcome<Vec<EvalRow>> {
    let rule = build_hi_rule(n, mu, nu)?;
    omegas
        .par_iter()
        .map(|&omega| {
            let v = apply_hi_rule(&rule, f, omega)?;
            Ok(EvalRow { omega, re: v.re, im: v.im })
        })
        .collect()
}

#[derive(Debug, Serialize)]
pub struct SweepRow {
    pub omega: f64,
    pub rule_re: f64,
    pub rule_im: f64,
    pub oracle_re: f64,
    pub oracle_im: f64,
    pub abs_err: f64,
    pub rel_err: f64,
    pub method: &'static str,
}

/// `|a − b|` and `|b|` in the wider of the two contexts.
fn ext_err(a: &C<ExtReal>, b: &C<ExtReal>, ctx: PrecisionContext) -> (f64, f64) {
    let (br, bi) = (b.re.with_context(ctx), b.im.with_context(ctx));
    let dr = a.re.with_context(ctx) - &br;
    let di = a.im.with_context(ctx) - &bi;
    let d = (&dr * &dr + &di * &di).sqrt().to_f64();
    let m = (&br * &br + &bi * &bi).sqrt().to_f64();
    (d, m)
}

fn c_f64(z: &C<ExtReal>) -> Cplx {
    Cplx::new(z.re.to_f64(), z.im.to_f64())
}

/// Rule against reference over a grid. Above 16 digits both sides are
/// evaluated in extended precision so errors below double rounding show.
pub fn sweep(f: &IntegrandSpec, n: usize, mu: u32, nu: u32, omegas: &[f64], digits: u32) -> Outcome<Vec<SweepRow>> {
    let rule = build_hi_rule(n, mu, nu)?;
    let gauss = f.name == "gauss";
    let method = if gauss { "closed_form" } else { "rotated" };
    if digits <= 16 {
        return omegas
            .par_iter()
            .map(|&omega| {
                let q = apply_hi_rule(&rule, f, omega)?;
                let o = if gauss {
                    Cplx::new(gaussian_transform(nu as f64, omega)?, 0.0)
                } else {
                    rotated_hankel(f, 0.0, nu as f64, omega)?.value
                };
                let abs_err = (q - o).norm();
                Ok(SweepRow {
                    omega,
                    rule_re: q.re,
                    rule_im: q.im,
                    oracle_re: o.re,
                    oracle_im: o.im,
                    abs_err,
                    rel_err: abs_err / o.norm(),
                    method,
                })
            })
            .collect();
    }
    let ctx = PrecisionContext::new(digits)?;
    let rctx = rule.ext.as_ref().map(|e| e.ctx).ok_or_else(|| Failure::Numerical("rule lacks extended data".into()))?;
    let oracle = if gauss { None } else { Some(RotatedOracle::<ExtReal>::new(0.0, nu as f64, ctx)?) };
    omegas
        .par_iter()
        .map(|&omega| {
            let q = apply_hi_rule_ext(&rule, f, &rctx.real(omega))?;
            let o = match &oracle {
                Some(o) => o.eval(f, &ctx.real(omega))?.0,
                None => C::new(gaussian_transform_ext(nu as f64, &ctx.real(omega))?, ctx.int(0)),
            };
            let (abs_err, mag) = ext_err(&q, &o, ctx);
            let (q, o) = (c_f64(&q), c_f64(&o));
            Ok(SweepRow {
                omega,
                rule_re: q.re,
                rule_im: q.im,
                oracle_re: o.re,
                oracle_im: o.im,
                abs_err,
                rel_err: abs_err / mag,
                method,
            })
        })
        .collect()
}

#[derive(Debug, Serialize)]
pub struct ZeroReport {
    pub mu: f64,
    pub nu: f64,
    pub n: usize,
    pub zeros: Vec<ZeroEntry>,
    pub cluster_estimate: f64,
    pub classified: f64,
}

#[derive(Debug, Serialize)]
pub struct ZeroEntry {
    pub re: f64,
    pub im: f64,
}

/// Zeros with the cluster line; `csv` is the plain `re,im` table.
pub fn zeros(mu: f64, nu: f64, n: usize) -> Outcome<(ZeroReport, String)> {
    if n == 0 {
        return Err(Failure::Usage("--n must be at least 1".into()));
    }
    let zs = zero_map(mu, nu, n)?;
    let line = cluster_estimate(&zs, mu, nu);
    let report = ZeroReport {
        mu,
        nu,
        n,
        zeros: zs.zeros.iter().map(|z| ZeroEntry { re: z.re, im: z.im }).collect(),
        cluster_estimate: line.estimate,
        classified: line.classified,
    };
    Ok((report, zs.to_csv()))
}

#[derive(Debug, Serialize)]
pub struct HilbertRow {
    pub omega: f64,
    pub value: f64,
    pub reference: f64,
    pub abs_err: f64,
    pub rel_err: f64,
}

/// Principal-value transforms by subtraction; the reference is the rotated
/// oracle on the subtracted integrand plus the same kernel term.
pub fn hilbert(
    f: IntegrandSpec,
    tau: f64,
    n: usize,
    mu: u32,
    nu: u32,
    omegas: &[f64],
    digits: u32,
) -> Outcome<Vec<HilbertRow>> {
    if !(tau > 0.0) {
        return Err(Failure::Usage(format!("--tau must be positive, got {tau}")));
    }
    if mu < nu {
        return Err(Failure::Usage(format!("--mu {mu} must be at least --nu {nu}")));
    }
    let p = HilbertProblem::new(f, tau, nu)?;
    let g = hilbert_subtracted(&p)?;
    let f_tau = p.f.eval(Cplx::new(tau, 0.0))?.re;
    let rule = build_hi_rule(n, mu, nu)?;
    let ctx = PrecisionContext::new(digits.max(17))?;
    let rctx = rule.ext.as_ref().map(|e| e.ctx).ok_or_else(|| Failure::Numerical("rule lacks extended data".into()))?;
    let oracle = RotatedOracle::<ExtReal>::new(0.0, nu as f64, ctx)?;
    omegas
        .par_iter()
        .map(|&omega| {
            let kernel = f_tau * hilbert_kernel_closed(nu, omega, tau)?;
            let q = apply_hi_rule_ext(&rule, &g, &rctx.real(omega))?;
            let o = oracle.eval(&g, &ctx.real(omega))?.0;
            // the kernel term is common to both and cancels in the error
            let (abs_err, _) = ext_err(&q, &o, ctx);
            let (value, reference) = (q.re.to_f64() + kernel, o.re.to_f64() + kernel);
            Ok(HilbertRow { omega, value, reference, abs_err, rel_err: abs_err / reference.abs() })
        })
        .collect()
}

#[derive(Debug, Serialize)]
pub struct EmRow {
    pub omega: f64,
    pub hz_re: f64,
    pub hz_im: f64,
    pub hz_ref_re: f64,
    pub hz_ref_im: f64,
    pub hz_rel_err: f64,
    pub hrho_re: f64,
    pub hrho_im: f64,
    pub hrho_ref_re: f64,
    pub hrho_ref_im: f64,
    pub hrho_rel_err: f64,
}

/// A layered model from a JSON file, or inline JSON when the argument
/// starts with `{`.
pub fn load_model(arg: &str) -> Outcome<LayeredModel> {
    let text = if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else {
        std::fs::read_to_string(arg).map_err(|e| Failure::Usage(format!("cannot read model {arg:?}: {e}")))?
    };
    LayeredModel::from_json(&text).map_err(|e| Failure::Usage(e.to_string()))
}

pub fn em(model: &LayeredModel, n: usize, mu: u32, omegas: &[f64]) -> Outcome<Vec<EmRow>> {
    if mu < 1 {
        return Err(Failure::Usage("--mu must be at least 1 for H_ρ (ν = 1)".into()));
    }
    omegas
        .par_iter()
        .map(|&omega| {
            let q = em_fields(model, omega, n, mu)?;
            let (oz, or) = em_oracle(model, omega)?;
            Ok(EmRow {
                omega,
                hz_re: q.h_z.re,
                hz_im: q.h_z.im,
                hz_ref_re: oz.value.re,
                hz_ref_im: oz.value.im,
                hz_rel_err: (q.h_z - oz.value).norm() / oz.value.norm(),
                hrho_re: q.h_rho.re,
                hrho_im: q.h_rho.im,
                hrho_ref_re: or.value.re,
                hrho_ref_im: or.value.im,
                hrho_rel_err: (q.h_rho - or.value).norm() / or.value.norm(),
            })
        })
        .collect()
}

/// Least-squares slope of `ln y` against `ln x` over the positive entries.
pub fn loglog_slope(pts: impl Iterator<Item = (f64, f64)>) -> Option<f64> {
    let pts: Vec<(f64, f64)> = pts.filter(|p| p.0 > 0.0 && p.1 > 0.0).map(|(x, y)| (x.ln(), y.ln())).collect();
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}
