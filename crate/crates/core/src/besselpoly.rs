//! Monic polynomials orthogonal against the sign-changing weight
//! `x^μ J_ν(x)` on `(0, ∞)`: construction, existence, zeros and the
//! vertical line their zeros gather along.

use nalgebra::{DMatrix, Schur};
use num_complex::Complex;

use crate::error::{Error, Result};
use crate::numerics::real::{cabs, C};
use crate::numerics::{gamma_ratio, Cplx, ExtReal, PrecisionContext};
use crate::orthopoly::{chebyshev_recurrence, monic_coeffs, solve, MomentSequence};
use crate::prudnikov::{moments as prudnikov_moments, Parity, PrudnikovSpec};

/// `∫_0^∞ x^{k+μ} J_ν(x) dx = 2^{k+μ} Γ((ν+k+μ+1)/2) / Γ((ν−k−μ+1)/2)`,
/// in the Abel sense; exactly zero at poles of the denominator.
pub fn bessel_weight_moment(mu: f64, nu: f64, k: usize, ctx: PrecisionContext) -> Result<ExtReal> {
    let p = k as f64 + mu;
    let g = gamma_ratio((nu + p + 1.0) / 2.0, (nu - p + 1.0) / 2.0, ctx)?;
    if g.is_zero_exact() {
        return Ok(g);
    }
    let w = ctx.wider(5);
    let two_p = if p.fract() == 0.0 { w.int(2).powi(p as i64) } else { (w.int(2).ln() * w.real(p)).exp() };
    Ok((two_p * g.with_context(w)).with_context(ctx))
}

pub fn bessel_moments(mu: f64, nu: f64, count: usize, ctx: PrecisionContext) -> Result<MomentSequence> {
    let m = (0..count).map(|k| bessel_weight_moment(mu, nu, k, ctx)).collect::<Result<Vec<_>>>()?;
    MomentSequence::new(m, format!("x^{mu} J_{nu}"))
}

#[derive(Debug, Clone)]
pub struct BesselPoly {
    pub mu: f64,
    pub nu: f64,
    pub degree: usize,
    /// Ascending monic coefficients; empty when the polynomial does not exist.
    pub coeffs: Vec<ExtReal>,
    pub exists: bool,
}

impl BesselPoly {
    pub fn coeffs_f64(&self) -> Vec<f64> {
        self.coeffs.iter().map(ExtReal::to_f64).collect()
    }

    fn missing(mu: f64, nu: f64, degree: usize) -> Self {
        Self { mu, nu, degree, coeffs: Vec::new(), exists: false }
    }
}

/// Nonnegative integer `μ − ν`, if it is one.
fn integer_gap(mu: f64, nu: f64) -> Option<u64> {
    let d = mu - nu;
    (d >= 0.0 && d.fract() == 0.0).then_some(d as u64)
}

/// Coefficients of `(−1)^m φ(−x²)` from ascending coefficients of `φ`.
fn even_lift(phi: &[ExtReal], ctx: PrecisionContext) -> Vec<ExtReal> {
    let m = phi.len() - 1;
    let mut out = vec![ctx.int(0); 2 * m + 1];
    for (i, c) in phi.iter().enumerate() {
        let v = c.with_context(ctx);
        out[2 * i] = if (m + i).is_multiple_of(2) { v } else { -v };
    }
    out
}

/// Monic orthogonal polynomial of degree `n` for `x^μ J_ν(x)`.
pub fn construct_p(mu: f64, nu: f64, n: usize, ctx: PrecisionContext) -> Result<BesselPoly> {
    if mu + nu <= -1.0 {
        return Err(Error::InvalidSpec(format!("μ + ν = {} must exceed −1", mu + nu)));
    }
    if n == 0 {
        return Ok(BesselPoly { mu, nu, degree: 0, coeffs: vec![ctx.int(1)], exists: true });
    }
    match integer_gap(mu, nu) {
        Some(d) => construct_from_phi(mu, nu, n, d, ctx),
        None => construct_p_from_moments(mu, nu, n, ctx),
    }
}

fn construct_from_phi(mu: f64, nu: f64, n: usize, gap: u64, ctx: PrecisionContext) -> Result<BesselPoly> {
    if n % 2 == 1 && gap % 2 == 1 {
        return Ok(BesselPoly::missing(mu, nu, n));
    }
    let spec = PrudnikovSpec::new(mu, nu)?;
    debug_assert_eq!(spec.parity == Parity::Odd, gap % 2 == 1);
    let m = n / 2;
    let need = if n.is_multiple_of(2) { m } else { m + 1 };
    let rec = chebyshev_recurrence(&prudnikov_moments(&spec, 2 * need.max(1), ctx)?, need.max(1), ctx)?;
    let coeffs = if n.is_multiple_of(2) {
        even_lift(&monic_coeffs(&rec, m), ctx)
    } else {
        let phi_m = monic_coeffs(&rec, m);
        let phi_m1 = monic_coeffs(&rec, m + 1);
        if phi_m[0].is_zero_exact() {
            return Err(Error::Domain(format!("φ_{m}(0) vanishes; the odd-degree formula does not apply")));
        }
        let ratio = &phi_m1[0] / &phi_m[0];
        // (−1)^{m+1} (φ_{m+1}(−x²) − r φ_m(−x²)) / x
        let mut bracket: Vec<ExtReal> = phi_m1.clone();
        for (i, c) in phi_m.iter().enumerate() {
            bracket[i] = &bracket[i] - &ratio * c;
        }
        let lifted = even_lift(&bracket, ctx);
        lifted[1..].to_vec()
    };
    Ok(BesselPoly { mu, nu, degree: n, coeffs, exists: true })
}

/// Relative size of the Hankel determinant of order `size`: with rows scaled
/// to unit max-norm, `|det|` over the product of all pivots but the smallest,
/// i.e. the smallest pivot of partial-pivoting elimination.
pub fn hankel_det_relative(moments: &MomentSequence, size: usize, ctx: PrecisionContext) -> Result<ExtReal> {
    if size == 0 {
        return Ok(ctx.int(1));
    }
    if moments.len() < 2 * size - 1 {
        return Err(Error::InvalidSpec(format!("{} moments given, {} needed", moments.len(), 2 * size - 1)));
    }
    let mut a: Vec<Vec<ExtReal>> = Vec::with_capacity(size);
    for i in 0..size {
        let row: Vec<ExtReal> = (0..size).map(|j| moments.m[i + j].with_context(ctx)).collect();
        let norm = row.iter().map(|v| v.abs()).fold(ctx.int(0), |a, b| if b > a { b } else { a });
        if norm.is_zero_exact() {
            return Ok(ctx.int(0));
        }
        a.push(row.iter().map(|v| v / &norm).collect());
    }
    let mut smallest: Option<ExtReal> = None;
    for col in 0..size {
        let piv = (col..size).max_by(|&i, &j| a[i][col].abs().partial_cmp(&a[j][col].abs()).unwrap()).unwrap();
        let p = a[piv][col].abs();
        if p.is_zero_exact() {
            return Ok(ctx.int(0));
        }
        a.swap(piv, col);
        for row in col + 1..size {
            let factor = &a[row][col] / &a[col][col];
            for k in col..size {
                let v = &a[row][k] - &factor * &a[col][k];
                a[row][k] = v;
            }
        }
        smallest = Some(match smallest {
            Some(s) if s < p => s,
            _ => p,
        });
    }
    Ok(smallest.unwrap())
}

/// Existence threshold `10^{−(digits−20)}`.
/// Relative Hankel-determinant size below which a polynomial is taken not to exist.
pub fn existence_threshold(ctx: PrecisionContext) -> ExtReal {
    let ten = ctx.int(10);
    ten.powi(-(ctx.digits() as i64 - 20))
}

/// [`construct_p`] by solving the Hankel system of the `x^μ J_ν` moments, for
/// any `μ, ν`. Slower and more precision-hungry than the φ route.
pub fn construct_p_from_moments(mu: f64, nu: f64, n: usize, ctx: PrecisionContext) -> Result<BesselPoly> {
    let m = bessel_moments(mu, nu, 2 * n, ctx)?;
    if hankel_det_relative(&m, n, ctx)? < existence_threshold(ctx) {
        return Ok(BesselPoly::missing(mu, nu, n));
    }
    // Σ_{j<n} c_j m_{i+j} = −m_{i+n}, i < n
    let a: Vec<Vec<ExtReal>> = (0..n).map(|i| (0..n).map(|j| m.m[i + j].clone()).collect()).collect();
    let b: Vec<ExtReal> = (0..n).map(|i| -m.m[i + n].clone()).collect();
    let mut c = match solve(a, b, ctx) {
        Ok(c) => c,
        Err(Error::Singular) => return Ok(BesselPoly::missing(mu, nu, n)),
        Err(e) => return Err(e),
    };
    c.push(ctx.int(1));
    Ok(BesselPoly { mu, nu, degree: n, coeffs: c, exists: true })
}

/// Working precision for zero maps: `max(150, 15n)` digits.
pub fn zero_map_context(n: usize) -> PrecisionContext {
    PrecisionContext::new((15 * n as u32).max(150)).expect("valid digits")
}

#[derive(Debug, Clone)]
pub struct ZeroSet {
    pub zeros: Vec<Cplx>,
    pub n: usize,
    pub cluster_estimate: f64,
}

impl ZeroSet {
    pub fn to_csv(&self) -> String {
        let mut s = String::from("re,im\n");
        for z in &self.zeros {
            s.push_str(&format!("{:e},{:e}\n", z.re, z.im));
        }
        s
    }
}

/// Classified cluster line of a zero set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClusterLine {
    /// `(2/π) · mean Re z` over the non-real zeros.
    pub estimate: f64,
    /// Nearest of `ν − μ + 2j`, `j = −3..3`.
    pub classified: f64,
}

fn eval_with_derivative(coeffs: &[C<ExtReal>], z: &C<ExtReal>) -> (C<ExtReal>, C<ExtReal>) {
    let mut p = coeffs.last().unwrap().clone();
    let ctx = p.re.context().expect("coefficients carry a context");
    let mut dp = Complex::new(ctx.int(0), ctx.int(0));
    for c in coeffs.iter().rev().skip(1) {
        dp = dp * z.clone() + p.clone();
        p = p * z.clone() + c.clone();
    }
    (p, dp)
}

/// Scale `s` with all zeros inside `|z| ≤ 2s` (Fujiwara-type bound).
fn root_scale(c: &[f64]) -> f64 {
    let n = c.len() - 1;
    (0..n)
        .map(|k| c[k].abs().powf(1.0 / (n - k) as f64))
        .fold(0.0, f64::max)
        .max(f64::MIN_POSITIVE)
}

fn companion_guesses(coeffs: &[ExtReal]) -> Vec<Cplx> {
    let n = coeffs.len() - 1;
    let ctx = coeffs[n].context().expect("coefficients carry a context");
    // scale x = s y so that the coefficients fit in double
    let log_scale = (0..n)
        .filter(|&k| !coeffs[k].is_zero_exact())
        .map(|k| coeffs[k].abs().ln().to_f64() / (n - k) as f64)
        .fold(f64::NEG_INFINITY, f64::max);
    let log_scale = if log_scale.is_finite() { log_scale } else { 0.0 };
    let s = ctx.real(log_scale).exp();
    let scaled: Vec<f64> = (0..=n).map(|k| (&coeffs[k] / &s.powi((n - k) as i64)).to_f64()).collect();
    let mut m = DMatrix::<f64>::zeros(n, n);
    for i in 1..n {
        m[(i, i - 1)] = 1.0;
    }
    for i in 0..n {
        m[(i, n - 1)] = -scaled[i];
    }
    balance(&mut m);
    let sf = log_scale.exp();
    // the unbounded Schur iteration can stall on ± symmetric spectra
    let mut out: Vec<Cplx> = Schur::try_new(m, f64::EPSILON, 50 * n)
        .map(|s| s.complex_eigenvalues().iter().map(|z| z * sf).collect())
        .unwrap_or_default();
    if out.len() != n || out.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        let r = root_scale(&scaled) * sf;
        out = (0..n)
            .map(|k| Cplx::from_polar(r, 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / n as f64))
            .collect();
    }
    out
}

/// Parlett–Reinsch balancing by powers of two.
fn balance(m: &mut DMatrix<f64>) {
    let n = m.nrows();
    for _ in 0..100 {
        let mut done = true;
        for i in 0..n {
            let (mut c, mut r) = (0.0, 0.0);
            for j in 0..n {
                if j != i {
                    c += m[(j, i)].abs();
                    r += m[(i, j)].abs();
                }
            }
            if c == 0.0 || r == 0.0 || !(c + r).is_finite() {
                continue;
            }
            let (mut f, s) = (1.0, c + r);
            let (mut cc, mut rr) = (c, r);
            while cc < rr / 2.0 {
                cc *= 2.0;
                rr /= 2.0;
                f *= 2.0;
            }
            while cc >= rr * 2.0 {
                cc /= 2.0;
                rr *= 2.0;
                f /= 2.0;
            }
            if (cc + rr) < 0.95 * s {
                done = false;
                for j in 0..n {
                    m[(i, j)] /= f;
                    m[(j, i)] *= f;
                }
            }
        }
        if done {
            break;
        }
    }
}

/// All zeros of an existing polynomial: companion eigenvalues in double as
/// starting points, Aberth iteration at the polynomial's precision, then
/// conjugate symmetrization.
pub fn poly_zeros(p: &BesselPoly) -> Result<ZeroSet> {
    if !p.exists {
        return Err(Error::InvalidSpec(format!("P_{} does not exist for (μ, ν) = ({}, {})", p.degree, p.mu, p.nu)));
    }
    let n = p.degree;
    if n == 0 {
        return Ok(ZeroSet { zeros: Vec::new(), n, cluster_estimate: 0.0 });
    }
    let ctx = p.coeffs[n].context().expect("coefficients carry a context");
    let zero = ctx.int(0);
    let cc: Vec<C<ExtReal>> = p.coeffs.iter().map(|c| Complex::new(c.clone(), zero.clone())).collect();
    let guesses = companion_guesses(&p.coeffs);
    let mut z: Vec<C<ExtReal>> = guesses.iter().map(|g| Complex::new(ctx.real(g.re), ctx.real(g.im))).collect();
    // separate coincident guesses
    for i in 0..n {
        for j in 0..i {
            if (guesses[i] - guesses[j]).norm() == 0.0 {
                z[i].im = &z[i].im + &ctx.real(1e-8 * (1.0 + guesses[i].norm()));
            }
        }
    }
    let scale = guesses.iter().map(|g| g.norm()).fold(0.0, f64::max).max(1.0);
    let tol = 10f64.powi(-(ctx.digits() as i32 - 12).min(300)).max(f64::MIN_POSITIVE);
    let mut converged = vec![false; n];
    let max_iter = 200 + 10 * n;
    for it in 0..max_iter {
        let mut all = true;
        for i in 0..n {
            if converged[i] {
                continue;
            }
            let (pv, dp) = eval_with_derivative(&cc, &z[i]);
            if cabs(&pv).is_zero_exact() {
                converged[i] = true;
                continue;
            }
            let ratio = pv / dp;
            let mut sum = Complex::new(zero.clone(), zero.clone());
            for j in 0..n {
                if j != i {
                    sum = sum + lift_one(ctx) / (z[i].clone() - z[j].clone());
                }
            }
            let w = ratio.clone() / (lift_one(ctx) - ratio * sum);
            let step = cabs(&w).to_f64();
            z[i] = z[i].clone() - w;
            let mag = cabs(&z[i]).to_f64().max(scale * 1e-30);
            if step <= tol * mag {
                converged[i] = true;
            } else {
                all = false;
            }
        }
        if all {
            break;
        }
        if it + 1 == max_iter {
            return Err(Error::Eigen(max_iter));
        }
    }
    let mut zeros: Vec<Cplx> = z.iter().map(|v| Cplx::new(v.re.to_f64(), v.im.to_f64())).collect();
    symmetrize(&mut zeros);
    zeros.sort_by(|a, b| a.im.partial_cmp(&b.im).unwrap().then(a.re.partial_cmp(&b.re).unwrap()));
    let est = cluster_estimate_of(&zeros);
    Ok(ZeroSet { zeros, n, cluster_estimate: est })
}

fn lift_one(ctx: PrecisionContext) -> C<ExtReal> {
    Complex::new(ctx.int(1), ctx.int(0))
}

/// Pair every zero with its conjugate partner and make the pair exact.
fn symmetrize(zs: &mut [Cplx]) {
    let scale = zs.iter().map(|z| z.norm()).fold(0.0, f64::max).max(1e-300);
    let n = zs.len();
    let mut used = vec![false; n];
    for i in 0..n {
        if used[i] {
            continue;
        }
        used[i] = true;
        if zs[i].im.abs() <= 1e-13 * scale {
            zs[i].im = 0.0;
            continue;
        }
        let target = zs[i].conj();
        let partner = (0..n).filter(|&j| !used[j]).min_by(|&a, &b| {
            (zs[a] - target).norm().partial_cmp(&(zs[b] - target).norm()).unwrap()
        });
        if let Some(j) = partner {
            used[j] = true;
            let avg = (zs[i] + zs[j].conj()) / 2.0;
            zs[i] = avg;
            zs[j] = avg.conj();
        }
    }
}

fn cluster_estimate_of(zs: &[Cplx]) -> f64 {
    if zs.is_empty() {
        return 0.0;
    }
    // real zeros sit off the vertical line; average the non-real ones
    let off: Vec<f64> = zs.iter().filter(|z| z.im != 0.0).map(|z| z.re).collect();
    let pool: Vec<f64> = if off.is_empty() { zs.iter().map(|z| z.re).collect() } else { off };
    let mean = pool.iter().sum::<f64>() / pool.len() as f64;
    2.0 * mean / std::f64::consts::PI
}

/// `υ̂ = (2/π) mean Re z` over the non-real zeros, classified to the nearest `ν − μ + 2j`, `|j| ≤ 3`.
pub fn cluster_estimate(zs: &ZeroSet, mu: f64, nu: f64) -> ClusterLine {
    let est = cluster_estimate_of(&zs.zeros);
    let classified = (-3..=3)
        .map(|j| nu - mu + 2.0 * j as f64)
        .min_by(|a, b| (a - est).abs().partial_cmp(&(b - est).abs()).unwrap())
        .unwrap();
    ClusterLine { estimate: est, classified }
}

/// Build `P_n` at the zero-map precision and return its zeros.
pub fn zero_map(mu: f64, nu: f64, n: usize) -> Result<ZeroSet> {
    let ctx = zero_map_context(n);
    let p = construct_p(mu, nu, n, ctx)?;
    poly_zeros(&p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prudnikov::phi_closed;

    fn ctx(d: u32) -> PrecisionContext {
        PrecisionContext::new(d).unwrap()
    }

    #[test]
    fn moment_examples() {
        let c = ctx(40);
        assert!((bessel_weight_moment(0.0, 0.0, 0, c).unwrap().to_f64() - 1.0).abs() < 1e-16);
        assert!((bessel_weight_moment(1.0, 1.0, 0, c).unwrap().to_f64() - 1.0).abs() < 1e-16);
        assert!(bessel_weight_moment(1.0, 1.0, 1, c).unwrap().is_zero_exact());
    }

    #[test]
    fn construction_examples() {
        let c = ctx(100);
        let p = construct_p(1.0, 1.0, 2, c).unwrap();
        let v = p.coeffs_f64();
        assert!((v[0] - 3.0).abs() < 1e-14 && v[1].abs() < 1e-14 && v[2] == 1.0);
        assert!(!construct_p(2.0, 1.0, 3, c).unwrap().exists);
        let p = construct_p(0.0, 0.0, 2, c).unwrap();
        let v = p.coeffs_f64();
        assert!((v[0] - 1.0).abs() < 1e-14 && v[1].abs() < 1e-14 && v[2] == 1.0);
        let p = construct_p(0.0, 0.0, 1, c).unwrap();
        let v = p.coeffs_f64();
        assert!(v[0].abs() < 1e-14 && v[1] == 1.0);
    }

    /// `∫ P_n x^k x^μ J_ν` expanded through the moments.
    fn orthogonality_defect(p: &BesselPoly, ctx: PrecisionContext) -> f64 {
        let m = bessel_moments(p.mu, p.nu, 2 * p.degree, ctx).unwrap();
        let mut worst: f64 = 0.0;
        for k in 0..p.degree {
            let mut s = ctx.int(0);
            let mut scale = ctx.int(0);
            for (j, c) in p.coeffs.iter().enumerate() {
                let t = c * &m.m[j + k];
                scale = scale + t.abs();
                s = s + t;
            }
            if !scale.is_zero_exact() {
                worst = worst.max((s.abs() / scale).to_f64());
            }
        }
        worst
    }

    #[test]
    fn constructions_are_orthogonal() {
        let c = ctx(120);
        for &(mu, nu) in &[(0.0, 0.0), (1.0, 1.0), (2.0, 1.0), (3.0, 1.0), (0.0, 1.0), (1.0, 1.5), (0.5, 0.0)] {
            for n in 1..=8 {
                let p = construct_p(mu, nu, n, c).unwrap();
                if !p.exists {
                    continue;
                }
                let d = orthogonality_defect(&p, c);
                assert!(d < 1e-95, "(μ,ν)=({mu},{nu}) n={n}: {d:e}");
            }
        }
    }

    #[test]
    fn phi_lift_matches_moment_solve() {
        let c = ctx(140);
        for gap in 0..3 {
            for &nu in &[0.0, 1.0, 2.0] {
                let mu = nu + gap as f64;
                for n in 1..=8 {
                    let a = construct_p(mu, nu, n, c).unwrap();
                    let b = construct_p_from_moments(mu, nu, n, c).unwrap();
                    assert_eq!(a.exists, b.exists, "(μ,ν)=({mu},{nu}) n={n}");
                    if !a.exists {
                        continue;
                    }
                    for (x, y) in a.coeffs.iter().zip(&b.coeffs) {
                        let tol = c.real(1e-110) * (y.abs() + c.int(1));
                        assert!((x - y).abs() < tol, "(μ,ν)=({mu},{nu}) n={n}");
                    }
                }
            }
        }
    }

    #[test]
    fn second_degree_uses_closed_phi() {
        let c = ctx(100);
        let s = PrudnikovSpec::new(2.0, 1.0).unwrap();
        let phi = phi_closed(&s, 1, c).unwrap();
        let p = construct_p(2.0, 1.0, 2, c).unwrap();
        // P_2 = −φ_1(−x²) = x² − φ_1(0)
        assert!((&p.coeffs[0] + &phi[0]).abs() < c.real(1e-90));
    }

    #[test]
    fn zeros_of_quadratic() {
        let c = ctx(100);
        let z = poly_zeros(&construct_p(1.0, 1.0, 2, c).unwrap()).unwrap();
        let s3 = 3f64.sqrt();
        assert!((z.zeros[0] - Cplx::new(0.0, -s3)).norm() < 1e-14);
        assert!((z.zeros[1] - Cplx::new(0.0, s3)).norm() < 1e-14);
    }

    #[test]
    fn zeros_are_imaginary_for_integer_gap() {
        for &(mu, nu, n) in &[(1.0, 1.0, 10usize), (2.0, 2.0, 9), (3.0, 1.0, 12)] {
            let z = zero_map(mu, nu, n).unwrap();
            let scale = z.zeros.iter().map(|z| z.norm()).fold(0.0, f64::max);
            assert!(z.zeros.iter().all(|z| z.re.abs() <= 1e-10 * scale), "{:?}", z.zeros);
            assert_eq!(z.zeros.len(), n);
        }
    }

    #[test]
    fn csv_has_one_line_per_zero() {
        let z = zero_map(1.0, 1.0, 4).unwrap();
        assert_eq!(z.to_csv().lines().count(), 5);
    }

    #[test]
    fn table_one_classification() {
        for &(mu, nu, want) in &[(1.0, 1.5, 0.5), (1.0, 5.0, 2.0), (2.0, 3.5, 1.5), (2.0, 8.0, 4.0)] {
            let z = zero_map(mu, nu, 24).unwrap();
            assert_eq!(cluster_estimate(&z, mu, nu).classified, want, "({mu}, {nu})");
        }
    }

    #[test]
    fn hankel_det_vanishes_for_odd_gap_and_odd_size() {
        let c = ctx(120);
        let thr = existence_threshold(c);
        for &(mu, nu) in &[(1.0, 0.0), (3.0, 0.0), (2.0, 1.0), (4.0, 1.0), (0.0, 0.0), (2.0, 0.0)] {
            let m = bessel_moments(mu, nu, 18, c).unwrap();
            for size in 1..=9 {
                let small = hankel_det_relative(&m, size, c).unwrap() < thr;
                let odd_gap = (mu - nu) as i64 % 2 == 1;
                assert_eq!(small, odd_gap && size % 2 == 1, "({mu}, {nu}) size {size}");
            }
        }
    }
}
