//! Complex generalized Gauss–Radau rules for the Hankel transform
//! `∫_0^∞ f(x) J_ν(ωx) dx`, using `μ` derivatives of `f` at the origin.
//!
//! The rule is
//! `(1/ω) (Σ_{k<μ} ŵ_k^0 ω^{−k} f^{(k)}(0) + Σ_j ŵ_j f(x̂_j/ω))`
//! with nodes `x̂ = ±i√x_j`, where `x_j, w_j` is the Gauss rule of `w_{μ,ν}`.

mod integrand;

use std::sync::Arc;

use num_complex::Complex;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub use integrand::{taylor_coeffs, Evaluable, IntegrandSpec, Symmetry};

use crate::error::{Error, Result};
use crate::numerics::real::{quarter_turn, scale, C};
use crate::numerics::{gamma_ratio, Cplx, ExtReal, PrecisionContext};
use crate::prudnikov::{prudnikov_gauss, Parity, PrudnikovSpec};

#[derive(Debug, Clone, Serialize, Deserialize)]
struct ReIm {
    re: f64,
    im: f64,
}

fn ser_cplx<S: Serializer>(v: &[Cplx], s: S) -> std::result::Result<S::Ok, S::Error> {
    let items: Vec<ReIm> = v.iter().map(|z| ReIm { re: z.re, im: z.im }).collect();
    items.serialize(s)
}

fn de_cplx<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Cplx>, D::Error> {
    let items: Vec<ReIm> = Vec::deserialize(d)?;
    Ok(items.into_iter().map(|z| Cplx::new(z.re, z.im)).collect())
}

/// Extended-precision copy of the rule data.
#[derive(Debug, Clone)]
pub struct RuleExt {
    pub ctx: PrecisionContext,
    /// `√x_j`, the moduli of the nodes.
    pub sqrt_x: Vec<ExtReal>,
    /// `w_j x_j^{−κ/2} / π`, the moduli of the interior weights.
    pub weight_mod: Vec<ExtReal>,
    pub boundary: Vec<ExtReal>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HankelGGRRule {
    pub nu: u32,
    pub mu: u32,
    pub n: usize,
    pub kappa: u32,
    pub exactness: u32,
    /// Node pairs `+i√x_j, −i√x_j` in order of increasing `x_j`.
    #[serde(rename = "nodes", serialize_with = "ser_cplx", deserialize_with = "de_cplx")]
    pub interior_nodes: Vec<Cplx>,
    #[serde(rename = "weights", serialize_with = "ser_cplx", deserialize_with = "de_cplx")]
    pub interior_weights: Vec<Cplx>,
    /// `ŵ_0^0, ..., ŵ_{μ−1}^0`; each multiplies `f^{(k)}(0)`.
    pub boundary_weights: Vec<f64>,
    #[serde(skip)]
    pub ext: Option<Arc<RuleExt>>,
}

/// Options for [`apply_hi_rule_with`].
#[derive(Debug, Clone, Copy, Default)]
pub struct ApplyOptions {
    /// Drop the interior sum when the parity of `f` makes it vanish (`f`
    /// even with `ν` odd, or `f` odd with `ν` even).
    pub parity_shortcut: bool,
}

fn validate(mu: u32, nu: u32, n: usize) -> Result<()> {
    if mu < nu {
        return Err(Error::InvalidSpec(format!("μ = {mu} must be at least ν = {nu}")));
    }
    if n == 0 {
        return Err(Error::InvalidSpec("n must be at least 1".into()));
    }
    Ok(())
}

pub fn kappa(mu: u32, nu: u32) -> u32 {
    if (mu - nu).is_multiple_of(2) {
        mu
    } else {
        mu + 1
    }
}

/// Polynomial degree up to which the rule is exact.
pub fn exactness(n: usize, mu: u32, nu: u32) -> u32 {
    let base = 4 * n as u32 + mu;
    if (mu - nu).is_multiple_of(2) {
        base - 1
    } else {
        base
    }
}

/// Build the rule with `2n` interior nodes at the default rule precision.
pub fn build_hi_rule(n: usize, mu: u32, nu: u32) -> Result<HankelGGRRule> {
    build_hi_rule_in(n, mu, nu, PrecisionContext::for_rule(n))
}

pub fn build_hi_rule_in(n: usize, mu: u32, nu: u32, ctx: PrecisionContext) -> Result<HankelGGRRule> {
    validate(mu, nu, n)?;
    let spec = PrudnikovSpec::new(mu as f64, nu as f64)?;
    let kap = kappa(mu, nu);
    debug_assert_eq!(spec.parity == Parity::Even, kap == mu);
    let gauss = prudnikov_gauss(&spec, n, ctx)?;
    let pi = ctx.pi();
    let sqrt_x: Vec<ExtReal> = gauss.ext_nodes.iter().map(ExtReal::sqrt).collect();
    let weight_mod: Vec<ExtReal> =
        gauss.ext_weights.iter().zip(&sqrt_x).map(|(w, s)| w / &s.powi(kap as i64) / &pi).collect();

    let mut boundary = Vec::with_capacity(mu as usize);
    let mut fact = ctx.int(1);
    for k in 0..mu {
        if k > 0 {
            fact = fact * ctx.int(k as i64);
        }
        let kf = k as f64;
        let nf = nu as f64;
        let head = ctx.int(2).powi(k as i64) * gamma_ratio((nf + kf + 1.0) / 2.0, (nf - kf + 1.0) / 2.0, ctx)?;
        let d = k as i64 - nu as i64;
        let tail = if d % 2 != 0 {
            ctx.int(0)
        } else {
            let s = gauss
                .ext_weights
                .iter()
                .zip(&sqrt_x)
                .fold(ctx.int(0), |acc, (w, r)| acc + w * &r.powi(k as i64 - kap as i64));
            let sign = if (d / 2) % 2 == 0 { ctx.int(2) } else { ctx.int(-2) };
            sign * s / &pi
        };
        boundary.push((head - tail) / &fact);
    }

    let mut nodes = Vec::with_capacity(2 * n);
    let mut weights = Vec::with_capacity(2 * n);
    let phase: Cplx = quarter_turn(-(nu as i64));
    for (s, w) in sqrt_x.iter().zip(&weight_mod) {
        let (s, w) = (s.to_f64(), w.to_f64());
        nodes.push(Cplx::new(0.0, s));
        nodes.push(Cplx::new(0.0, -s));
        weights.push(phase * w);
        weights.push(phase.conj() * w);
    }
    Ok(HankelGGRRule {
        nu,
        mu,
        n,
        kappa: kap,
        exactness: exactness(n, mu, nu),
        interior_nodes: nodes,
        interior_weights: weights,
        boundary_weights: boundary.iter().map(ExtReal::to_f64).collect(),
        ext: Some(Arc::new(RuleExt { ctx, sqrt_x, weight_mod, boundary })),
    })
}

impl HankelGGRRule {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("rule serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let r: Self = serde_json::from_str(s).map_err(|e| Error::InvalidSpec(format!("rule JSON: {e}")))?;
        if r.interior_nodes.len() != 2 * r.n || r.interior_weights.len() != 2 * r.n {
            return Err(Error::InvalidSpec("rule JSON: node and weight counts must equal 2n".into()));
        }
        if r.boundary_weights.len() != r.mu as usize {
            return Err(Error::InvalidSpec("rule JSON: boundary weight count must equal μ".into()));
        }
        Ok(r)
    }

    /// Number of boundary terms actually needed, `μ`.
    pub fn taylor_order(&self) -> usize {
        self.mu as usize
    }

    fn skip_interior(&self, f: &IntegrandSpec, opts: ApplyOptions) -> bool {
        opts.parity_shortcut
            && matches!(
                (f.symmetry, self.nu % 2),
                (Some(Symmetry::Even), 1) | (Some(Symmetry::Odd), 0)
            )
    }
}

/// Shared evaluation of the rule in any number type.
#[allow(clippy::too_many_arguments)]
fn combine<R: Evaluable>(
    nu: u32,
    sqrt_x: &[R],
    weight_mod: &[R],
    boundary: &[R],
    omega: &R,
    f: &IntegrandSpec,
    ctx: R::Ctx,
    skip_interior: bool,
) -> Result<C<R>> {
    let zero = R::from_int_in(0, ctx);
    let mut acc: C<R> = Complex::new(zero.clone(), zero.clone());
    if !boundary.is_empty() {
        let taylor = R::taylor_spec(f, boundary.len(), ctx)?;
        let inv = R::from_int_in(1, ctx) / omega.clone();
        let mut pw = R::from_int_in(1, ctx);
        let mut fact = R::from_int_in(1, ctx);
        for (k, (b, a)) in boundary.iter().zip(&taylor).enumerate() {
            if k > 0 {
                pw = pw * inv.clone();
                fact = fact * R::from_int_in(k as i64, ctx);
            }
            acc = acc + scale(a, &(b.clone() * fact.clone() * pw.clone()));
        }
    }
    if !skip_interior {
        let phase: C<R> = quarter_turn(-(nu as i64));
        let conj = phase.conj();
        for (s, w) in sqrt_x.iter().zip(weight_mod) {
            let t = s.clone() / omega.clone();
            let up = Complex::new(zero.clone(), t.clone());
            let down = Complex::new(zero.clone(), -t);
            let fu = R::eval_spec(f, &up)?;
            let fd = R::eval_spec(f, &down)?;
            let pair = phase.clone() * fu + conj.clone() * fd;
            acc = acc + scale(&pair, w);
        }
    }
    let inv = R::from_int_in(1, ctx) / omega.clone();
    Ok(scale(&acc, &inv))
}

pub fn apply_hi_rule(rule: &HankelGGRRule, f: &IntegrandSpec, omega: f64) -> Result<Cplx> {
    apply_hi_rule_with(rule, f, omega, ApplyOptions::default())
}

pub fn apply_hi_rule_with(rule: &HankelGGRRule, f: &IntegrandSpec, omega: f64, opts: ApplyOptions) -> Result<Cplx> {
    if !(omega > 0.0) || !omega.is_finite() {
        return Err(Error::Domain(format!("ω = {omega} must be positive")));
    }
    let sqrt_x: Vec<f64> = rule.interior_nodes.iter().step_by(2).map(|z| z.im).collect();
    let weight_mod: Vec<f64> = rule.interior_weights.iter().step_by(2).map(|w| w.norm()).collect();
    combine(rule.nu, &sqrt_x, &weight_mod, &rule.boundary_weights, &omega, f, (), rule.skip_interior(f, opts))
}

/// Apply the rule in extended precision at the rule's own context.
pub fn apply_hi_rule_ext(rule: &HankelGGRRule, f: &IntegrandSpec, omega: &ExtReal) -> Result<C<ExtReal>> {
    apply_hi_rule_ext_with(rule, f, omega, ApplyOptions::default())
}

pub fn apply_hi_rule_ext_with(
    rule: &HankelGGRRule,
    f: &IntegrandSpec,
    omega: &ExtReal,
    opts: ApplyOptions,
) -> Result<C<ExtReal>> {
    let ext = rule
        .ext
        .as_ref()
        .ok_or_else(|| Error::InvalidSpec("rule carries no extended-precision data".into()))?;
    let ctx = ext.ctx;
    let omega = omega.with_context(ctx);
    if omega <= ctx.int(0) {
        return Err(Error::Domain("ω must be positive".into()));
    }
    let skip = rule.skip_interior(f, opts);
    combine(rule.nu, &ext.sqrt_x, &ext.weight_mod, &ext.boundary, &omega, f, ctx, skip)
}
