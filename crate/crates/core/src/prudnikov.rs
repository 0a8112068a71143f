//! The weight `w_{μ,ν}(x) = K_ν(√x)/2 · x^{(μ−1)/2}` (μ−ν even) or
//! `K_ν(√x)/2 · x^{μ/2}` (μ−ν odd) on `(0, ∞)`: moments, Gauss rules and the
//! closed forms of the first two orthogonal polynomials.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{gamma_ext, ExtReal, PrecisionContext};
use crate::orthopoly::{gauss_from_moments, GaussRule, MomentSequence};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PrudnikovSpec {
    pub mu: f64,
    pub nu: f64,
    pub parity: Parity,
}

impl PrudnikovSpec {
    pub fn new(mu: f64, nu: f64) -> Result<Self> {
        if !(mu.is_finite() && nu.is_finite()) {
            return Err(Error::InvalidSpec(format!("non-finite (μ, ν) = ({mu}, {nu})")));
        }
        let d = mu - nu;
        if d < 0.0 || d.fract() != 0.0 {
            return Err(Error::InvalidSpec(format!("μ − ν = {d} must be a nonnegative integer")));
        }
        if mu + nu <= -1.0 {
            return Err(Error::InvalidSpec(format!("μ + ν = {} must exceed −1", mu + nu)));
        }
        let parity = if (d as i64) % 2 == 0 { Parity::Even } else { Parity::Odd };
        Ok(Self { mu, nu, parity })
    }

    /// The shift `s` with `w = K_ν(√x)/2 · x^{(μ−1+s)/2}`.
    fn shift(&self) -> f64 {
        match self.parity {
            Parity::Even => 0.0,
            Parity::Odd => 1.0,
        }
    }

    fn descriptor(&self) -> String {
        format!("w_{{{},{}}}", self.mu, self.nu)
    }
}

/// `∫_0^∞ x^k w_{μ,ν}(x) dx`.
pub fn weight_moment(spec: &PrudnikovSpec, k: usize, ctx: PrecisionContext) -> Result<ExtReal> {
    let s = spec.shift();
    let kf = k as f64;
    let w = ctx.wider(5);
    let g1 = gamma_ext(kf + (spec.mu - spec.nu + 1.0 + s) / 2.0, w)?;
    let g2 = gamma_ext(kf + (spec.mu + spec.nu + 1.0 + s) / 2.0, w)?;
    let e = 2.0 * kf + spec.mu - 1.0 + s;
    let p = pow2(e, w);
    Ok((g1 * g2 * p).with_context(ctx))
}

fn pow2(e: f64, ctx: PrecisionContext) -> ExtReal {
    if e.fract() == 0.0 {
        ctx.int(2).powi(e as i64)
    } else {
        (ctx.int(2).ln() * ctx.real(e)).exp()
    }
}

pub fn moments(spec: &PrudnikovSpec, count: usize, ctx: PrecisionContext) -> Result<MomentSequence> {
    let m = (0..count).map(|k| weight_moment(spec, k, ctx)).collect::<Result<Vec<_>>>()?;
    MomentSequence::new(m, spec.descriptor())
}

/// `n`-point Gauss rule for `w_{μ,ν}` at the precision of `ctx`.
pub fn prudnikov_gauss(spec: &PrudnikovSpec, n: usize, ctx: PrecisionContext) -> Result<GaussRule> {
    if n == 0 {
        return Err(Error::InvalidSpec("rule size must be at least 1".into()));
    }
    let m = moments(spec, 2 * n, ctx)?;
    let rule = gauss_from_moments(&m, n, ctx)?;
    let zero = ctx.int(0);
    for (j, (x, w)) in rule.ext_nodes.iter().zip(&rule.ext_weights).enumerate() {
        if *x <= zero {
            return Err(Error::PrecisionFailure { k: j });
        }
        if *w <= zero {
            return Err(Error::NonPositiveWeight { index: j });
        }
    }
    Ok(rule)
}

/// `(b, c)` in `φ_2(x) = x² − 2b x + c` for the even case at `(μ, ν)`.
fn phi2_bc(mu: f64, nu: f64, ctx: PrecisionContext) -> (ExtReal, ExtReal) {
    let r = |v: f64| ctx.real(v);
    let m2 = r(mu + 2.0);
    let b = r(mu + 3.0) * r(mu - nu + 3.0) * r(mu + nu + 3.0) / &m2;
    let c = r(mu + 4.0) * r(mu - nu + 3.0) * r(mu + nu + 3.0) * r(mu - nu + 1.0) * r(mu + nu + 1.0) / m2;
    (b, c)
}

/// Ascending monic coefficients of `φ_1` or `φ_2` from the closed forms.
pub fn phi_closed(spec: &PrudnikovSpec, degree: usize, ctx: PrecisionContext) -> Result<Vec<ExtReal>> {
    let mu_eff = spec.mu + spec.shift();
    let nu = spec.nu;
    match degree {
        1 => {
            let c0 = ctx.real(nu) * ctx.real(nu) - ctx.real(mu_eff + 1.0) * ctx.real(mu_eff + 1.0);
            Ok(vec![c0, ctx.int(1)])
        }
        2 => {
            let (b, c) = phi2_bc(mu_eff, nu, ctx);
            Ok(vec![c, -(ctx.int(2) * b), ctx.int(1)])
        }
        _ => Err(Error::InvalidSpec(format!("closed form available for degrees 1 and 2, not {degree}"))),
    }
}

/// Double-precision Gauss rule for `n ∈ {1, 2}` from the closed forms.
pub fn prudnikov_gauss_closed(spec: &PrudnikovSpec, n: usize) -> Result<GaussRule> {
    let ctx = PrecisionContext::new(30)?;
    let m0 = weight_moment(spec, 0, ctx)?.to_f64();
    let (nodes, weights) = match n {
        1 => {
            let p = phi_closed(spec, 1, ctx)?;
            (vec![-p[0].to_f64()], vec![m0])
        }
        2 => {
            let m1 = weight_moment(spec, 1, ctx)?.to_f64();
            let p = phi_closed(spec, 2, ctx)?;
            let (c, b2) = (p[0].to_f64(), -p[1].to_f64());
            let disc = (0.25 * b2 * b2 - c).sqrt();
            let big = 0.5 * b2 + disc;
            let x = [c / big, big];
            let w1 = (m1 - m0 * x[0]) / (x[1] - x[0]);
            (x.to_vec(), vec![m0 - w1, w1])
        }
        _ => return Err(Error::InvalidSpec(format!("closed-form rules exist for n = 1, 2, not {n}"))),
    };
    Ok(GaussRule { nodes, weights, n, descriptor: spec.descriptor(), ext_nodes: Vec::new(), ext_weights: Vec::new() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orthopoly::{chebyshev_recurrence, monic_coeffs};
    use std::f64::consts::PI;

    fn ctx(d: u32) -> PrecisionContext {
        PrecisionContext::new(d).unwrap()
    }

    fn spec(mu: f64, nu: f64) -> PrudnikovSpec {
        PrudnikovSpec::new(mu, nu).unwrap()
    }

    #[test]
    fn spec_validation() {
        assert!(PrudnikovSpec::new(0.5, 1.0).is_err());
        assert!(PrudnikovSpec::new(1.5, 1.0).is_err());
        assert!(PrudnikovSpec::new(-1.0, -1.0).is_err());
        assert_eq!(spec(2.0, 1.0).parity, Parity::Odd);
        assert_eq!(spec(2.5, 0.5).parity, Parity::Even);
    }

    #[test]
    fn moment_examples() {
        let c = ctx(40);
        assert!((weight_moment(&spec(0.0, 0.0), 0, c).unwrap().to_f64() - PI / 2.0).abs() < 1e-15);
        assert!((weight_moment(&spec(1.0, 1.0), 1, c).unwrap().to_f64() - 1.5 * PI).abs() < 1e-14);
        assert!((weight_moment(&spec(2.0, 1.0), 0, c).unwrap().to_f64() - 1.5 * PI).abs() < 1e-14);
    }

    #[test]
    fn moments_match_direct_integration() {
        use crate::numerics::bessel::bessel_k;
        use crate::numerics::quad::exp_sinh_f64;
        for &(mu, nu) in &[(0.0, 0.0), (1.0, 0.0), (2.0, 1.0), (1.5, 0.5)] {
            let s = spec(mu, nu);
            let p = (mu - 1.0 + s.shift()) / 2.0;
            for k in 0..3 {
                // substitute x = t²: ∫ 2t · t^{2k+2p} K_ν(t)/2 dt
                let v = exp_sinh_f64(
                    |t| t.powf(2.0 * k as f64 + 2.0 * p + 1.0) * bessel_k(nu, t).unwrap(),
                    2.0 * k as f64 + 2.0 * p + 1.0 - nu,
                    1.0,
                )
                .unwrap();
                let m = weight_moment(&s, k, ctx(30)).unwrap().to_f64();
                assert!(((v - m) / m).abs() < 1e-11, "(μ,ν)=({mu},{nu}) k={k}: {v} vs {m}");
            }
        }
    }

    #[test]
    fn gauss_examples() {
        let c = ctx(100);
        let r = prudnikov_gauss(&spec(0.0, 0.0), 1, c).unwrap();
        assert!((r.nodes[0] - 1.0).abs() < 1e-15 && (r.weights[0] - PI / 2.0).abs() < 1e-15);
        let r = prudnikov_gauss(&spec(1.0, 1.0), 1, c).unwrap();
        assert!((r.nodes[0] - 3.0).abs() < 1e-15 && (r.weights[0] - PI / 2.0).abs() < 1e-15);
        let r = prudnikov_gauss(&spec(0.0, 0.0), 2, c).unwrap();
        let s = 657f64.sqrt();
        assert!((r.nodes[0] - (27.0 - s) / 2.0).abs() < 1e-14);
        assert!((r.nodes[1] - (27.0 + s) / 2.0).abs() < 1e-13);
    }

    #[test]
    fn phi_closed_examples() {
        let c = ctx(30);
        let f = |v: Vec<ExtReal>| v.iter().map(ExtReal::to_f64).collect::<Vec<_>>();
        assert_eq!(f(phi_closed(&spec(0.0, 0.0), 1, c).unwrap()), vec![-1.0, 1.0]);
        assert_eq!(f(phi_closed(&spec(1.0, 0.0), 1, c).unwrap()), vec![-9.0, 1.0]);
        assert_eq!(f(phi_closed(&spec(0.0, 0.0), 2, c).unwrap()), vec![18.0, -27.0, 1.0]);
        assert!(phi_closed(&spec(0.0, 0.0), 3, c).is_err());
    }

    #[test]
    fn phi_closed_agrees_with_chebyshev() {
        let c = ctx(100);
        for d in 0..4 {
            for nu in 0..4 {
                let s = spec((nu + d) as f64, nu as f64);
                let rec = chebyshev_recurrence(&moments(&s, 4, c).unwrap(), 2, c).unwrap();
                for deg in 1..=2 {
                    let a = monic_coeffs(&rec, deg);
                    let b = phi_closed(&s, deg, c).unwrap();
                    for (x, y) in a.iter().zip(&b) {
                        let scale = y.abs() + c.int(1);
                        assert!((x - y).abs() < c.real(1e-80) * scale, "d={d} ν={nu} deg={deg}");
                    }
                }
            }
        }
    }

    #[test]
    fn closed_rules_match_extended() {
        for &(mu, nu) in &[(0.0, 0.0), (1.0, 1.0), (2.0, 1.0), (3.0, 0.0)] {
            let s = spec(mu, nu);
            for n in 1..=2 {
                let a = prudnikov_gauss_closed(&s, n).unwrap();
                let b = prudnikov_gauss(&s, n, PrecisionContext::for_rule(n)).unwrap();
                for j in 0..n {
                    assert!(((a.nodes[j] - b.nodes[j]) / b.nodes[j]).abs() < 1e-13);
                    assert!(((a.weights[j] - b.weights[j]) / b.weights[j]).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn larger_rules_reproduce_moments() {
        let c = PrecisionContext::for_rule(10);
        for &(mu, nu) in &[(2.0, 2.0), (3.0, 2.0)] {
            let s = spec(mu, nu);
            let r = prudnikov_gauss(&s, 10, c).unwrap();
            let m = moments(&s, 20, c).unwrap();
            for k in 0..20 {
                let v = r.ext_nodes.iter().zip(&r.ext_weights).fold(c.int(0), |acc, (x, w)| acc + w * x.powi(k as i64));
                let rel = ((&v - &m.m[k]) / &m.m[k]).abs().to_f64();
                assert!(rel < 1e-60, "k={k} rel={rel:e}");
            }
            assert!(r.nodes.windows(2).all(|w| w[0] < w[1]) && r.nodes[0] > 0.0);
        }
    }
}
