//! Abel limits `lim_{s→0+} ∫₀^∞ g(x) e^{−sx} dx` of oscillatory integrands.
//!
//! For each `s` the integral is split at approximate zeros of `J_ν(ωx)`,
//! the alternating sequence of partial sums is accelerated by Wynn's
//! epsilon algorithm, and the values at `s_k = 2^{−k}` are extrapolated to
//! `s = 0` by Neville's scheme.

use std::f64::consts::PI;

use super::{Method, OracleResult};
use crate::error::{Error, Result};
use crate::numerics::quad::gauss_legendre;
use crate::numerics::Cplx;

/// Oscillation of the integrand: zeros of `J_ν(ωx)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BesselPartition {
    pub nu: f64,
    pub omega: f64,
}

/// McMahon's approximation of the `k`-th positive zero of `J_ν`, `k ≥ 1`.
pub fn bessel_zero(nu: f64, k: usize) -> f64 {
    let beta = (k as f64 + 0.5 * nu - 0.25) * PI;
    let m = 4.0 * nu * nu;
    let e = 8.0 * beta;
    beta - (m - 1.0) / e - 4.0 * (m - 1.0) * (7.0 * m - 31.0) / (3.0 * e.powi(3))
}

impl BesselPartition {
    /// Breakpoints `0 = x_0 < x_1 < …`, the `k`-th near `j_{ν,k}/ω`.
    fn points(&self, count: usize) -> Vec<f64> {
        let half = PI / self.omega;
        let mut out = Vec::with_capacity(count + 1);
        out.push(0.0);
        for k in 1..=count {
            let prev = out[k - 1];
            let z = bessel_zero(self.nu, k) / self.omega;
            // McMahon is poor for the first zeros of high orders
            let z = if z.is_finite() && z > prev + 0.25 * half && z < prev + 4.0 * half { z } else { prev + half };
            out.push(z);
        }
        out
    }
}

/// Wynn's epsilon algorithm on a sequence of partial sums. Returns the
/// last even-column entry and the difference to its predecessor.
pub fn wynn_epsilon(seq: &[Cplx]) -> (Cplx, f64) {
    let n = seq.len();
    if n < 3 {
        let last = seq.last().copied().unwrap_or_default();
        let d = if n == 2 { (seq[1] - seq[0]).norm() } else { f64::INFINITY };
        return (last, d);
    }
    // e[j] holds column k, prev holds column k−1
    let mut prev = vec![Cplx::new(0.0, 0.0); n + 1];
    let mut cur: Vec<Cplx> = seq.to_vec();
    let mut best = seq[n - 1];
    let mut best_prev = seq[n - 2];
    let mut k = 0;
    while cur.len() >= 2 {
        let mut next = Vec::with_capacity(cur.len() - 1);
        for j in 0..cur.len() - 1 {
            let d = cur[j + 1] - cur[j];
            if d.norm() == 0.0 {
                // converged column: stop here
                return (cur[j + 1], 0.0);
            }
            next.push(prev[j + 1] + 1.0 / d);
        }
        prev = cur;
        cur = next;
        k += 1;
        if k % 2 == 0 && !cur.is_empty() {
            let last = cur[cur.len() - 1];
            if !(last.re.is_finite() && last.im.is_finite()) {
                break;
            }
            best_prev = if cur.len() >= 2 { cur[cur.len() - 2] } else { best };
            best = last;
        }
    }
    (best, (best - best_prev).norm())
}

const GL_POINTS: usize = 32;
const MAX_INTERVALS: usize = 600;
const WINDOW: usize = 50;

/// `∫₀^∞ g(x) e^{−sx} dx` by integration over the partition intervals and
/// epsilon acceleration of the partial sums. Returns the value and the
/// change between the last two accelerated estimates.
pub fn partition_extrapolate<G>(g: &G, part: BesselPartition, s: f64, rel_tol: f64) -> Result<(Cplx, f64)>
where
    G: Fn(f64) -> Result<Cplx> + ?Sized,
{
    if !(part.omega > 0.0) {
        return Err(Error::Domain(format!("omega must be positive, got {}", part.omega)));
    }
    let rule = gauss_legendre(GL_POINTS);
    let pts = part.points(MAX_INTERVALS);
    let mut sums: Vec<Cplx> = Vec::with_capacity(MAX_INTERVALS);
    let mut acc = Cplx::new(0.0, 0.0);
    let mut last_est: Option<Cplx> = None;
    let mut last_diff = f64::INFINITY;
    let mut quiet = 0;
    for k in 0..MAX_INTERVALS {
        let (a, b) = (pts[k], pts[k + 1]);
        let (c, h) = (0.5 * (a + b), 0.5 * (b - a));
        let mut piece = Cplx::new(0.0, 0.0);
        for (x, w) in rule.0.iter().zip(&rule.1) {
            let t = c + h * x;
            piece += g(t)? * (w * (-s * t).exp());
        }
        piece *= h;
        acc += piece;
        sums.push(acc);
        if !(acc.re.is_finite() && acc.im.is_finite()) {
            return Err(Error::Convergence(format!("partial sums diverged at interval {k}")));
        }
        if piece.norm() <= 1e-17 * acc.norm() {
            quiet += 1;
            if quiet >= 3 {
                return Ok((acc, piece.norm()));
            }
        } else {
            quiet = 0;
        }
        if sums.len() >= 12 && sums.len().is_multiple_of(4) {
            let from = sums.len().saturating_sub(WINDOW);
            // even-length windows keep the epsilon table aligned
            let from = from + (sums.len() - from) % 2;
            let (est, _) = wynn_epsilon(&sums[from..]);
            if let Some(prev) = last_est {
                last_diff = (est - prev).norm();
                if last_diff <= rel_tol * est.norm() {
                    return Ok((est, last_diff));
                }
            }
            last_est = Some(est);
        }
    }
    match last_est {
        Some(est) if last_diff <= 1e3 * rel_tol * est.norm() => Ok((est, last_diff)),
        _ => Err(Error::Convergence(format!(
            "partition extrapolation at s = {s} did not settle; last change {last_diff:e}"
        ))),
    }
}

/// Abel limit of `∫ g`, with `g` oscillating like `J_ν(ωx)`: values at
/// `s_k = 2^{−k}`, `k = 0..=s_levels`, extrapolated to `s = 0`. The error
/// estimate is the last change of the extrapolated value.
pub fn abel_limit_eval<G>(g: &G, part: BesselPartition, s_levels: usize) -> Result<OracleResult>
where
    G: Fn(f64) -> Result<Cplx> + ?Sized,
{
    if s_levels < 1 {
        return Err(Error::InvalidSpec("abel_limit_eval needs at least one s level".into()));
    }
    let s: Vec<f64> = (0..=s_levels).map(|k| 0.5f64.powi(k as i32)).collect();
    let vals: Vec<Cplx> = s
        .iter()
        .map(|&sk| partition_extrapolate(g, part, sk, 1e-15).map(|v| v.0))
        .collect::<Result<_>>()?;
    // Neville tableau evaluated at 0; diagonal entries T[k][k]
    let mut t = vals.clone();
    let mut diag = vec![t[0]];
    for k in 1..=s_levels {
        for i in (k..=s_levels).rev() {
            // p_{i−k..i}(0) from p_{i−k..i−1} and p_{i−k+1..i}
            t[i] = (t[i] * s[i - k] - t[i - 1] * s[i]) / (s[i - k] - s[i]);
        }
        diag.push(t[k]);
    }
    let value = t[s_levels];
    let diffs: Vec<f64> = diag.windows(2).map(|w| (w[1] - w[0]).norm()).collect();
    let est_error = diffs.last().copied().unwrap_or(f64::INFINITY);
    if !(value.re.is_finite() && value.im.is_finite()) {
        return Err(Error::Convergence("Abel extrapolation produced a non-finite value".into()));
    }
    Ok(OracleResult { value, est_error, method: Method::Abel })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::bessel::bessel_j;

    #[test]
    fn mcmahon_zeros() {
        assert!((bessel_zero(0.0, 1) - 2.404825557695773).abs() < 2e-3);
        assert!((bessel_zero(1.0, 3) - 10.17346813506272).abs() < 1e-4);
        assert!((bessel_zero(0.0, 20) - 62.04846919022717).abs() < 1e-8);
    }

    #[test]
    fn wynn_sums_alternating_series() {
        // Σ (−1)^k/(k+1) = ln 2
        let mut acc = 0.0;
        let seq: Vec<Cplx> = (0..20)
            .map(|k| {
                acc += if k % 2 == 0 { 1.0 } else { -1.0 } / (k as f64 + 1.0);
                Cplx::new(acc, 0.0)
            })
            .collect();
        let (v, _) = wynn_epsilon(&seq);
        assert!((v.re - 2f64.ln()).abs() < 1e-12, "{v}");
    }

    #[test]
    fn examples() {
        let part = BesselPartition { nu: 0.0, omega: 1.0 };
        let r = abel_limit_eval(&|x: f64| Ok(Cplx::new(bessel_j(0.0, x)?, 0.0)), part, 8).unwrap();
        assert!((r.value.re - 1.0).abs() < 1e-9, "{r:?}");
        let r = abel_limit_eval(&|x: f64| Ok(Cplx::new((-x).exp(), 0.0)), part, 10).unwrap();
        assert!((r.value.re - 1.0).abs() < 1e-10, "{r:?}");
        let part = BesselPartition { nu: 1.0, omega: 1.0 };
        let r = abel_limit_eval(&|x: f64| Ok(Cplx::new(x * bessel_j(1.0, x)?, 0.0)), part, 8).unwrap();
        assert!((r.value.re - 1.0).abs() < 1e-8, "{r:?}");
    }
}
