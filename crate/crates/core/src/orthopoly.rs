//! Moment-based orthogonal polynomials: Chebyshev's algorithm, Golub–Welsch,
//! Hankel determinants and the generalized Gauss–Radau construction on a
//! left endpoint with derivative data.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{ExtReal, PrecisionContext};

/// Moments `m_0, m_1, ...` of a (possibly sign-changing) weight.
#[derive(Debug, Clone)]
pub struct MomentSequence {
    pub m: Vec<ExtReal>,
    pub descriptor: String,
}

impl MomentSequence {
    pub fn new(m: Vec<ExtReal>, descriptor: impl Into<String>) -> Result<Self> {
        if m.len() < 2 {
            return Err(Error::InvalidSpec("a moment sequence needs at least two entries".into()));
        }
        Ok(Self { m, descriptor: descriptor.into() })
    }

    pub fn len(&self) -> usize {
        self.m.len()
    }

    pub fn is_empty(&self) -> bool {
        self.m.is_empty()
    }

    pub fn context(&self) -> PrecisionContext {
        self.m.iter().find_map(|v| v.context()).expect("moments carry a context")
    }

    /// Moments of `(x − a)^k` against the same weight.
    pub fn shifted(&self, a: f64) -> MomentSequence {
        let ctx = self.context();
        let na = ctx.real(-a);
        let mut out = Vec::with_capacity(self.m.len());
        for k in 0..self.m.len() {
            // Σ_j C(k, j) (−a)^{k−j} m_j
            let mut s = ctx.int(0);
            let mut binom = ctx.int(1);
            for j in (0..=k).rev() {
                let pw = na.powi((k - j) as i64);
                s = s + &binom * &pw * &self.m[j].with_context(ctx);
                if j > 0 {
                    binom = binom * ctx.int(j as i64) / ctx.int((k - j + 1) as i64);
                }
            }
            out.push(s);
        }
        MomentSequence { m: out, descriptor: format!("{} shifted by {a}", self.descriptor) }
    }
}

/// Three-term recurrence `p_{k+1} = (x − α_k) p_k − β_k p_{k−1}` with
/// `β_0 = m_0`.
#[derive(Debug, Clone)]
pub struct Recurrence {
    pub alpha: Vec<ExtReal>,
    pub beta: Vec<ExtReal>,
}

impl Recurrence {
    pub fn len(&self) -> usize {
        self.alpha.len()
    }

    pub fn is_empty(&self) -> bool {
        self.alpha.is_empty()
    }

    fn context(&self) -> PrecisionContext {
        self.beta[0].context().expect("recurrence carries a context")
    }
}

/// Gaussian rule for a positive weight. Extended-precision copies of the
/// nodes and weights are kept for applications that need more than double.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GaussRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub n: usize,
    pub descriptor: String,
    #[serde(skip)]
    pub ext_nodes: Vec<ExtReal>,
    #[serde(skip)]
    pub ext_weights: Vec<ExtReal>,
}

impl GaussRule {
    fn from_ext(nodes: Vec<ExtReal>, weights: Vec<ExtReal>, descriptor: String) -> Self {
        Self {
            nodes: nodes.iter().map(ExtReal::to_f64).collect(),
            weights: weights.iter().map(ExtReal::to_f64).collect(),
            n: nodes.len(),
            descriptor,
            ext_nodes: nodes,
            ext_weights: weights,
        }
    }

    /// Whether extended-precision data are attached.
    pub fn has_ext(&self) -> bool {
        self.ext_nodes.len() == self.n
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GenGaussRadauRule {
    /// `w_0^a, ..., w_{r−1}^a`, multiplying `f^{(k)}(a)`.
    pub boundary_weights: Vec<f64>,
    pub interior: GaussRule,
    pub r: usize,
    pub a: f64,
}

impl GenGaussRadauRule {
    /// Apply to a function given by its value/derivatives at `a` and a
    /// closure for interior values.
    pub fn apply(&self, derivs_at_a: &[f64], f: impl Fn(f64) -> f64) -> f64 {
        let b: f64 = self.boundary_weights.iter().zip(derivs_at_a).map(|(w, d)| w * d).sum();
        let i: f64 = self.interior.nodes.iter().zip(&self.interior.weights).map(|(x, w)| w * f(*x)).sum();
        b + i
    }
}

/// Chebyshev algorithm on ordinary moments, without positivity checks. Fails with
/// [`Error::Singular`] when a leading Hankel determinant vanishes.
pub(crate) fn chebyshev_raw(moments: &MomentSequence, n: usize, ctx: PrecisionContext) -> Result<Recurrence> {
    if moments.len() < 2 * n {
        return Err(Error::InvalidSpec(format!("{} moments given, {} needed", moments.len(), 2 * n)));
    }
    if n == 0 {
        return Err(Error::InvalidSpec("recurrence length must be positive".into()));
    }
    let m: Vec<ExtReal> = moments.m.iter().map(|v| v.with_context(ctx)).collect();
    if m[0].is_zero_exact() {
        return Err(Error::Singular);
    }
    let l_max = 2 * n;
    let mut alpha = Vec::with_capacity(n);
    let mut beta = Vec::with_capacity(n);
    alpha.push(&m[1] / &m[0]);
    beta.push(m[0].clone());
    let mut sig_prev: Vec<ExtReal> = vec![ctx.int(0); l_max];
    let mut sig_cur: Vec<ExtReal> = m[..l_max].to_vec();
    for k in 1..n {
        let mut sig_next: Vec<ExtReal> = vec![ctx.int(0); l_max];
        for l in k..(l_max - k) {
            sig_next[l] = &sig_cur[l + 1] - &alpha[k - 1] * &sig_cur[l] - &beta[k - 1] * &sig_prev[l];
        }
        if sig_next[k].is_zero_exact() {
            return Err(Error::Singular);
        }
        alpha.push(&sig_next[k + 1] / &sig_next[k] - &sig_cur[k] / &sig_cur[k - 1]);
        beta.push(&sig_next[k] / &sig_cur[k - 1]);
        sig_prev = sig_cur;
        sig_cur = sig_next;
    }
    Ok(Recurrence { alpha, beta })
}

/// Recurrence coefficients of the monic orthogonal polynomials of a
/// positive weight from its first `2n` moments.
pub fn chebyshev_recurrence(moments: &MomentSequence, n: usize, ctx: PrecisionContext) -> Result<Recurrence> {
    let rec = match chebyshev_raw(moments, n, ctx) {
        Err(Error::Singular) => return Err(Error::PrecisionFailure { k: 0 }),
        other => other?,
    };
    let zero = ctx.int(0);
    for (k, b) in rec.beta.iter().enumerate() {
        if *b <= zero {
            return Err(Error::PrecisionFailure { k });
        }
    }
    Ok(rec)
}

/// Value of the monic orthogonal polynomial of degree `k` at `x`.
pub fn eval_monic(rec: &Recurrence, k: usize, x: &ExtReal) -> ExtReal {
    let ctx = rec.context();
    let x = x.with_context(ctx);
    let mut p_prev = ctx.int(0);
    let mut p = ctx.int(1);
    for j in 0..k {
        let next = (&x - &rec.alpha[j]) * &p - &rec.beta[j] * &p_prev;
        p_prev = p;
        p = next;
    }
    p
}

/// Coefficients (ascending powers) of the monic orthogonal polynomial of
/// degree `k`.
pub fn monic_coeffs(rec: &Recurrence, k: usize) -> Vec<ExtReal> {
    let ctx = rec.context();
    let mut prev: Vec<ExtReal> = Vec::new();
    let mut cur: Vec<ExtReal> = vec![ctx.int(1)];
    for j in 0..k {
        let mut next = vec![ctx.int(0); cur.len() + 1];
        for (i, c) in cur.iter().enumerate() {
            next[i + 1] = &next[i + 1] + c;
            next[i] = &next[i] - &rec.alpha[j] * c;
        }
        for (i, c) in prev.iter().enumerate() {
            next[i] = &next[i] - &rec.beta[j] * c;
        }
        prev = cur;
        cur = next;
    }
    cur
}

/// Nodes and weights from the Jacobi matrix by implicit QL iteration at the
/// precision of the recurrence; weights are `β_0 v_{0,j}²`.
pub fn golub_welsch(rec: &Recurrence, n: usize) -> Result<GaussRule> {
    if n == 0 || n > rec.len() {
        return Err(Error::InvalidSpec(format!("rule size {n} outside 1..={}", rec.len())));
    }
    let ctx = rec.context();
    let zero = ctx.int(0);
    for b in &rec.beta[1..n] {
        if *b <= zero {
            return Err(Error::InvalidSpec("Jacobi matrix needs positive off-diagonal squares".into()));
        }
    }
    let eps = ctx.epsilon();
    let mut d: Vec<ExtReal> = rec.alpha[..n].to_vec();
    let mut e: Vec<ExtReal> = (0..n).map(|i| if i + 1 < n { rec.beta[i + 1].sqrt() } else { ctx.int(0) }).collect();
    let mut z: Vec<ExtReal> = (0..n).map(|i| ctx.int(if i == 0 { 1 } else { 0 })).collect();
    let max_iter = 60 + 4 * ctx.digits() as usize;
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= &eps * &dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > max_iter {
                return Err(Error::Eigen(iter));
            }
            let two = ctx.int(2);
            let mut g = (&d[l + 1] - &d[l]) / (&two * &e[l]);
            let mut r = hypot(&g, &ctx.int(1));
            let signed_r = if g.is_negative() { -r.clone() } else { r.clone() };
            g = &d[m] - &d[l] + &e[l] / (&g + &signed_r);
            let mut s = ctx.int(1);
            let mut c = ctx.int(1);
            let mut p = ctx.int(0);
            let mut deflated = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = &s * &e[i];
                let b = &c * &e[i];
                r = hypot(&f, &g);
                e[i + 1] = r.clone();
                if r.is_zero_exact() {
                    d[i + 1] = &d[i + 1] - &p;
                    e[m] = ctx.int(0);
                    deflated = true;
                    break;
                }
                s = &f / &r;
                c = &g / &r;
                g = &d[i + 1] - &p;
                r = (&d[i] - &g) * &s + &two * &c * &b;
                p = &s * &r;
                d[i + 1] = &g + &p;
                g = &c * &r - &b;
                let fz = z[i + 1].clone();
                z[i + 1] = &s * &z[i] + &c * &fz;
                z[i] = &c * &z[i] - &s * &fz;
            }
            if deflated {
                continue;
            }
            d[l] = &d[l] - &p;
            e[l] = g;
            e[m] = ctx.int(0);
        }
    }
    let mut pairs: Vec<(ExtReal, ExtReal)> =
        d.into_iter().zip(z).map(|(x, v)| (x, &rec.beta[0] * &v * &v)).collect();
    pairs.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("finite nodes"));
    let (nodes, weights): (Vec<_>, Vec<_>) = pairs.into_iter().unzip();
    Ok(GaussRule::from_ext(nodes, weights, String::new()))
}

fn hypot(a: &ExtReal, b: &ExtReal) -> ExtReal {
    (a * a + b * b).sqrt()
}

/// Determinant of the `size × size` Hankel matrix `[m_{i+j}]`.
pub fn hankel_det(moments: &MomentSequence, size: usize, ctx: PrecisionContext) -> Result<ExtReal> {
    if size == 0 {
        return Ok(ctx.int(1));
    }
    if moments.len() < 2 * size - 1 {
        return Err(Error::InvalidSpec(format!("{} moments given, {} needed", moments.len(), 2 * size - 1)));
    }
    let mut a: Vec<Vec<ExtReal>> =
        (0..size).map(|i| (0..size).map(|j| moments.m[i + j].with_context(ctx)).collect()).collect();
    Ok(determinant(&mut a, ctx))
}

/// Determinant by Gaussian elimination with partial pivoting (destroys `a`).
pub(crate) fn determinant(a: &mut [Vec<ExtReal>], ctx: PrecisionContext) -> ExtReal {
    let n = a.len();
    let mut det = ctx.int(1);
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| a[i][col].abs().partial_cmp(&a[j][col].abs()).unwrap()).unwrap();
        if a[piv][col].is_zero_exact() {
            return ctx.int(0);
        }
        if piv != col {
            a.swap(piv, col);
            det = -det;
        }
        det = &det * &a[col][col];
        for row in col + 1..n {
            let factor = &a[row][col] / &a[col][col];
            for k in col..n {
                let v = &a[row][k] - &factor * &a[col][k];
                a[row][k] = v;
            }
        }
    }
    det
}

/// Solve `a x = b` by Gaussian elimination with partial pivoting.
pub(crate) fn solve(mut a: Vec<Vec<ExtReal>>, mut b: Vec<ExtReal>, ctx: PrecisionContext) -> Result<Vec<ExtReal>> {
    let n = a.len();
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| a[i][col].abs().partial_cmp(&a[j][col].abs()).unwrap()).unwrap();
        if a[piv][col].is_zero_exact() {
            return Err(Error::Singular);
        }
        a.swap(piv, col);
        b.swap(piv, col);
        for row in col + 1..n {
            let factor = &a[row][col] / &a[col][col];
            for k in col..n {
                let v = &a[row][k] - &factor * &a[col][k];
                a[row][k] = v;
            }
            let v = &b[row] - &factor * &b[col];
            b[row] = v;
        }
    }
    let mut x = vec![ctx.int(0); n];
    for i in (0..n).rev() {
        let mut s = b[i].clone();
        for k in i + 1..n {
            s = s - &a[i][k] * &x[k];
        }
        x[i] = s / &a[i][i];
    }
    Ok(x)
}

/// Gauss rule for a positive weight from its moments.
pub fn gauss_from_moments(moments: &MomentSequence, n: usize, ctx: PrecisionContext) -> Result<GaussRule> {
    let rec = chebyshev_recurrence(moments, n, ctx)?;
    let mut rule = golub_welsch(&rec, n)?;
    rule.descriptor = moments.descriptor.clone();
    Ok(rule)
}

/// Generalized Gauss–Radau rule with `r` derivative values at the left
/// endpoint `a` and `n` interior nodes, exact on polynomials of degree
/// `2n + r − 1`.
pub fn generic_ggr(
    moments_of_w: &MomentSequence,
    a: f64,
    r: usize,
    n: usize,
    ctx: PrecisionContext,
) -> Result<GenGaussRadauRule> {
    if n == 0 {
        return Err(Error::InvalidSpec("at least one interior node is required".into()));
    }
    if moments_of_w.len() < 2 * n + r {
        return Err(Error::InvalidSpec(format!(
            "{} moments given, {} needed",
            moments_of_w.len(),
            2 * n + r
        )));
    }
    let shifted = moments_of_w.shifted(a);
    let mu: Vec<ExtReal> = shifted.m.iter().map(|v| v.with_context(ctx)).collect();
    let wr = MomentSequence::new(mu[r..].to_vec(), format!("{} times (x-a)^{r}", moments_of_w.descriptor))?;
    let rec = chebyshev_recurrence(&wr, n, ctx)?;
    let g = golub_welsch(&rec, n)?;
    let zero = ctx.int(0);
    let mut nodes = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    for (j, (y, w)) in g.ext_nodes.iter().zip(&g.ext_weights).enumerate() {
        if *y <= zero {
            return Err(Error::PrecisionFailure { k: j });
        }
        let wi = w / &y.powi(r as i64);
        if wi <= zero {
            return Err(Error::NonPositiveWeight { index: r + j });
        }
        nodes.push(y + &ctx.real(a));
        weights.push(wi);
    }
    // ψ_n² in the shifted variable, ascending coefficients
    let psi = monic_coeffs(&rec, n);
    let mut psi2 = vec![ctx.int(0); 2 * n + 1];
    for (i, ci) in psi.iter().enumerate() {
        for (j, cj) in psi.iter().enumerate() {
            psi2[i + j] = &psi2[i + j] + ci * cj;
        }
    }
    // Row i (0-based): Σ_{j ≥ i} w_j · j! · [y^j](y^i ψ²) = Σ_k [y^k](y^i ψ²) μ_k
    let mut boundary = vec![ctx.int(0); r];
    for i in (0..r).rev() {
        let rhs: ExtReal = psi2.iter().enumerate().fold(ctx.int(0), |acc, (k, c)| acc + c * &mu[k + i]);
        let mut s = rhs;
        let mut diag = ctx.int(0);
        for j in i..r {
            // j! · psi2[j − i]
            let fj = factorial(j, ctx);
            let aij = &fj * &psi2[j - i];
            if j == i {
                diag = aij;
            } else {
                s = s - &aij * &boundary[j];
            }
        }
        boundary[i] = s / diag;
    }
    for (k, b) in boundary.iter().enumerate() {
        if *b <= zero {
            return Err(Error::NonPositiveWeight { index: k });
        }
    }
    Ok(GenGaussRadauRule {
        boundary_weights: boundary.iter().map(ExtReal::to_f64).collect(),
        interior: GaussRule::from_ext(nodes, weights, moments_of_w.descriptor.clone()),
        r,
        a,
    })
}

fn factorial(k: usize, ctx: PrecisionContext) -> ExtReal {
    (1..=k as i64).fold(ctx.int(1), |acc, j| acc * ctx.int(j))
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub(crate) fn laguerre(len: usize, ctx: PrecisionContext) -> MomentSequence {
        let m = (0..len).map(|k| factorial(k, ctx)).collect();
        MomentSequence::new(m, "laguerre").unwrap()
    }

    /// Brute-force Gram–Schmidt on the moment functional.
    pub(crate) fn gram_schmidt(moments: &MomentSequence, n: usize, ctx: PrecisionContext) -> Recurrence {
        let m: Vec<ExtReal> = moments.m.iter().map(|v| v.with_context(ctx)).collect();
        let inner = |p: &[ExtReal], q: &[ExtReal]| {
            let mut s = ctx.int(0);
            for (i, a) in p.iter().enumerate() {
                for (j, b) in q.iter().enumerate() {
                    s = s + a * b * &m[i + j];
                }
            }
            s
        };
        let mut polys: Vec<Vec<ExtReal>> = Vec::new();
        for k in 0..n {
            let mut p = vec![ctx.int(0); k + 1];
            p[k] = ctx.int(1);
            let xk = p.clone();
            for q in &polys {
                let c = inner(&xk, q) / inner(q, q);
                for (i, qi) in q.iter().enumerate() {
                    p[i] = &p[i] - &c * qi;
                }
            }
            polys.push(p);
        }
        let mut alpha = Vec::new();
        let mut beta = Vec::new();
        for k in 0..n {
            let p = &polys[k];
            let mut xp = vec![ctx.int(0)];
            xp.extend(p.iter().cloned());
            let nk = inner(p, p);
            alpha.push(inner(&xp, p) / &nk);
            beta.push(if k == 0 { nk } else { nk / inner(&polys[k - 1], &polys[k - 1]) });
        }
        Recurrence { alpha, beta }
    }

    fn ctx(d: u32) -> PrecisionContext {
        PrecisionContext::new(d).unwrap()
    }

    #[test]
    fn laguerre_recurrence() {
        let c = ctx(50);
        let rec = chebyshev_recurrence(&laguerre(6, c), 3, c).unwrap();
        let a: Vec<f64> = rec.alpha.iter().map(ExtReal::to_f64).collect();
        let b: Vec<f64> = rec.beta.iter().map(ExtReal::to_f64).collect();
        assert_eq!(a, vec![1.0, 3.0, 5.0]);
        assert_eq!(b, vec![1.0, 1.0, 4.0]);
    }

    #[test]
    fn chebyshev_matches_gram_schmidt() {
        let c = ctx(80);
        let m = laguerre(12, c);
        let a = chebyshev_recurrence(&m, 6, c).unwrap();
        let b = gram_schmidt(&m, 6, c);
        let tol = c.real(1e-40);
        for k in 0..6 {
            assert!((&a.alpha[k] - &b.alpha[k]).abs() <= &tol * &b.alpha[k].abs());
            assert!((&a.beta[k] - &b.beta[k]).abs() <= &tol * &b.beta[k].abs());
        }
    }

    #[test]
    fn eval_monic_examples() {
        let c = ctx(40);
        let rec = chebyshev_recurrence(&laguerre(6, c), 3, c).unwrap();
        assert_eq!(eval_monic(&rec, 0, &c.real(7.5)).to_f64(), 1.0);
        assert_eq!(eval_monic(&rec, 1, &c.int(1)).to_f64(), 0.0);
        let coeffs: Vec<f64> = monic_coeffs(&rec, 2).iter().map(ExtReal::to_f64).collect();
        assert_eq!(coeffs, vec![2.0, -4.0, 1.0]);
    }

    #[test]
    fn laguerre_gauss_rules() {
        let c = ctx(40);
        let r1 = gauss_from_moments(&laguerre(2, c), 1, c).unwrap();
        assert_eq!((r1.nodes[0], r1.weights[0]), (1.0, 1.0));
        let r2 = gauss_from_moments(&laguerre(4, c), 2, c).unwrap();
        let s2 = 2f64.sqrt();
        assert!((r2.nodes[0] - (2.0 - s2)).abs() < 1e-15);
        assert!((r2.nodes[1] - (2.0 + s2)).abs() < 1e-15);
        assert!((r2.weights[0] - (2.0 + s2) / 4.0).abs() < 1e-15);
        assert!((r2.weights[1] - (2.0 - s2) / 4.0).abs() < 1e-15);
    }

    #[test]
    fn gauss_reproduces_moments() {
        let c = ctx(60);
        for n in 1..=8 {
            let m = laguerre(2 * n, c);
            let g = gauss_from_moments(&m, n, c).unwrap();
            for k in 0..2 * n {
                let s: f64 = g.nodes.iter().zip(&g.weights).map(|(x, w)| w * x.powi(k as i32)).sum();
                let mk = m.m[k].to_f64();
                assert!(((s - mk) / mk).abs() < 1e-11, "n={n} k={k}");
            }
        }
    }

    #[test]
    fn hankel_det_examples() {
        let c = ctx(30);
        let m = laguerre(4, c);
        assert_eq!(hankel_det(&m, 2, c).unwrap().to_f64(), 1.0);
        assert_eq!(hankel_det(&m, 1, c).unwrap().to_f64(), 1.0);
    }

    #[test]
    fn precision_failure_is_reported() {
        let c = ctx(20);
        // moments of a point mass at 1 and 2 only support two orthogonal polynomials
        let m: Vec<ExtReal> = (0..8).map(|k| c.int(1) + c.int(2).powi(k)).collect();
        let m = MomentSequence::new(m, "two atoms").unwrap();
        assert!(matches!(chebyshev_recurrence(&m, 4, c), Err(Error::PrecisionFailure { .. })));
    }

    #[test]
    fn ggr_laguerre_examples() {
        let c = ctx(50);
        let g = generic_ggr(&laguerre(4, c), 0.0, 1, 1, c).unwrap();
        assert!((g.interior.nodes[0] - 2.0).abs() < 1e-15);
        assert!((g.interior.weights[0] - 0.5).abs() < 1e-15);
        assert!((g.boundary_weights[0] - 0.5).abs() < 1e-15);
        let g0 = generic_ggr(&laguerre(4, c), 0.0, 0, 2, c).unwrap();
        let plain = gauss_from_moments(&laguerre(4, c), 2, c).unwrap();
        assert_eq!(g0.interior.nodes, plain.nodes);
        assert_eq!(g0.interior.weights, plain.weights);
        assert!(g0.boundary_weights.is_empty());
    }

    #[test]
    fn ggr_is_exact_on_shifted_monomials() {
        let c = ctx(60);
        for r in 1..=3 {
            for n in 1..=4 {
                let m = laguerre(2 * n + r + 2, c);
                let a = 0.0;
                let g = generic_ggr(&m, a, r, n, c).unwrap();
                let sh = m.shifted(a);
                for k in 0..(2 * n + r) {
                    let mut derivs = vec![0.0; r];
                    if k < r {
                        derivs[k] = (1..=k).product::<usize>() as f64;
                    }
                    let v = g.apply(&derivs, |x| (x - a).powi(k as i32));
                    let exact = sh.m[k].to_f64();
                    assert!(((v - exact) / exact).abs() < 1e-10, "r={r} n={n} k={k}: {v} vs {exact}");
                }
            }
        }
    }
}
