//! The Fourier-extended operators `K_n`, their window truncations `K_{n,m}`,
//! the regularized `H_{n,δ}`, and the closed-form window integrals.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::chebyshev::ChebyshevGrid;
use crate::error::{Error, Result};
use crate::fourier::{
    class_u_diagnostic, fejer_identity, FourierConvention, PhaseMode, Spectrum,
};
use crate::function::{Interval, RealFunction};
use crate::grunwald::xi_n;
use crate::quadrature::{
    gauss_legendre_nodes, integrate_complex, integrate_split, oscillation_panels, QuadratureSpec,
};
use crate::report::{Cell, ReportTable};

/// Largest `r` for which [`rr_term`] enumerates its `2^r` sign patterns.
pub const RR_CAP: usize = 24;
/// Largest order the closed-form path accepts.
pub const CLOSED_FORM_CAP: usize = 16;
/// Divisors below this are replaced by their analytic limit.
const SINGULAR: f64 = 1e-9;

/// Coefficients of `∏_{j≠k} (c − cos θ_j) = Σ_r s[r] c^{n−1−r}`.
#[derive(Debug, Clone, PartialEq)]
pub struct ClosedFormCoeffs {
    pub n: usize,
    pub k: usize,
    pub s: Vec<f64>,
}

impl ClosedFormCoeffs {
    /// Evaluates `Σ_r s[r] cos(θ)^{n−1−r}` by Horner's rule.
    pub fn reconstruct(&self, theta: f64) -> f64 {
        let c = theta.cos();
        self.s.iter().fold(0.0, |acc, &s| acc * c + s)
    }
}

/// Signed elementary symmetric polynomials of `{cos θ_j : j ≠ k}`, built by
/// multiplying in one root at a time.
pub fn elementary_coeffs(grid: &ChebyshevGrid, k: usize) -> Result<ClosedFormCoeffs> {
    let n = grid.n();
    if k == 0 || k > n {
        return Err(Error::InvalidArgument("node index out of range 1..=n"));
    }
    let mut s = vec![1.0];
    for (j, &root) in grid.cos_nodes().iter().enumerate() {
        if j + 1 == k {
            continue;
        }
        s.push(0.0);
        for r in (1..s.len()).rev() {
            s[r] -= root * s[r - 1];
        }
    }
    Ok(ClosedFormCoeffs { n, k, s })
}

/// `∫₀^π e^{iaθ} dθ`, with the limit π at `a = 0`.
fn half_period_exp(a: f64) -> Complex64 {
    if a.abs() < SINGULAR {
        Complex64::new(PI, 0.0)
    } else {
        Complex64::new((a * PI).sin() / a, (1.0 - (a * PI).cos()) / a)
    }
}

/// `R_r(p) = ∫₀^π (cos^r(θ − π/2n) + cos^r(θ + π/2n)) e^{ipθ} dθ`, from the
/// expansion `cos^r x = 2^{−r} Σ_φ cos(σ(φ) x)` over all sign patterns
/// `φ ∈ {±1}^r`, `σ(φ) = Σ_j φ(j)`:
///
/// `R_r(p) = 2^{1−r} Σ_φ cos(σπ/2n) ∫₀^π e^{i(σ+p)θ} dθ`.
pub fn rr_term(r: usize, p: f64, n: usize) -> Result<Complex64> {
    if r > RR_CAP {
        return Err(Error::InvalidArgument("rr_term enumeration capped at r = 24"));
    }
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1"));
    }
    let h = PI / (2 * n) as f64;
    let mut total = Complex64::new(0.0, 0.0);
    for mask in 0u32..(1u32 << r) {
        let plus = mask.count_ones() as i64;
        let sigma = (2 * plus - r as i64) as f64;
        total += half_period_exp(sigma + p) * (sigma * h).cos();
    }
    Ok(total * 2f64.powi(1 - r as i32))
}

/// `1 / ∏_{j≠k} (cos θ_k − cos θ_j) = (−1)^{k+1} 2^{n−1} sin θ_k / n`.
pub fn lagrange_normalization(grid: &ChebyshevGrid, k: usize) -> f64 {
    let n = grid.n();
    let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
    sign * 2f64.powi(n as i32 - 1) * grid.angle(k).sin() / n as f64
}

/// `V_k(p) = ∫₀^π (P_k(η − π/2n) + P_k(η + π/2n)) e^{ipη} dη` in closed form.
pub fn vk_closed_form(grid: &ChebyshevGrid, k: usize, p: f64) -> Result<Complex64> {
    let n = grid.n();
    if n > CLOSED_FORM_CAP {
        return Err(Error::Capability {
            limit: CLOSED_FORM_CAP,
            requested: n,
        });
    }
    let coeffs = elementary_coeffs(grid, k)?;
    let mut total = Complex64::new(0.0, 0.0);
    for (r, &s) in coeffs.s.iter().enumerate() {
        total += rr_term(n - 1 - r, p, n)? * s;
    }
    Ok(total * lagrange_normalization(grid, k))
}

/// `V_k(p)` by composite Gauss-Legendre quadrature.
pub fn vk_quadrature(grid: &ChebyshevGrid, k: usize, p: f64, q: &QuadratureSpec) -> Result<Complex64> {
    let n = grid.n();
    if k == 0 || k > n {
        return Err(Error::InvalidArgument("node index out of range 1..=n"));
    }
    integrate_complex(
        |t| Complex64::new(0.0, p * t).exp() * grid.shifted_pair(k, t).unwrap_or(f64::NAN),
        Interval::new(0.0, PI)?,
        oscillation_panels(n as f64 + p.abs(), PI),
        q,
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum KnPath {
    #[default]
    Quadrature,
    ClosedForm,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Truncation {
    /// Windows `l = −m..=m`.
    Fixed(usize),
    /// Smallest `m` covering a compact support, or else the smallest `m`
    /// whose window-peak tail estimate is below `1e-8`.
    Auto,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KnResult {
    pub value: Complex64,
    pub n: usize,
    pub m: usize,
    pub p: f64,
    pub path: KnPath,
    pub convention: FourierConvention,
}

const AUTO_TAIL: f64 = 1e-8;
const AUTO_MAX: usize = 4096;

/// Resolves a truncation for `fhat`.
pub fn resolve_truncation(fhat: &Spectrum, t: Truncation) -> Result<usize> {
    match t {
        Truncation::Fixed(m) => Ok(m),
        Truncation::Auto => {
            if let Some(s) = fhat.support() {
                let reach = s.lo().abs().max(s.hi().abs());
                return Ok((reach / PI).ceil() as usize);
            }
            let mut m = 2;
            while m <= AUTO_MAX {
                let d = class_u_diagnostic(fhat, m, PI / 256.0)?;
                if d.tail_estimate < AUTO_TAIL {
                    return Ok(m);
                }
                m *= 2;
            }
            Err(Error::ToleranceNotMet {
                estimate: AUTO_MAX as f64,
                error: f64::INFINITY,
            })
        }
    }
}

/// `K_{n,m}` bound to one spectrum: the samples `f̂(θ_k + lπ)` are taken once
/// and reused for every evaluation point.
#[derive(Debug, Clone)]
pub struct KnOperator {
    grid: ChebyshevGrid,
    m: usize,
    /// `samples[(l + m) * n + (k − 1)] = f̂(θ_k + lπ)`.
    samples: Vec<Complex64>,
    convention: FourierConvention,
}

impl KnOperator {
    pub fn new(n: usize, fhat: &Spectrum, m: usize, convention: FourierConvention) -> Result<Self> {
        let grid = ChebyshevGrid::new(n)?;
        let mut samples = Vec::with_capacity((2 * m + 1) * n);
        let mi = m as i64;
        for l in -mi..=mi {
            for &t in grid.angles() {
                let at = t + l as f64 * PI;
                let v = fhat.eval(at);
                if !(v.re.is_finite() && v.im.is_finite()) {
                    return Err(Error::NonFinite { at });
                }
                samples.push(v);
            }
        }
        Ok(KnOperator {
            grid,
            m,
            samples,
            convention,
        })
    }

    pub fn n(&self) -> usize {
        self.grid.n()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn convention(&self) -> FourierConvention {
        self.convention
    }

    fn phase(&self, x: f64, l: i64) -> Complex64 {
        match self.convention.phase_mode {
            PhaseMode::Exact => Complex64::new(0.0, x * l as f64 * PI).exp(),
            PhaseMode::Alternating => {
                Complex64::new(if l.rem_euclid(2) == 0 { 1.0 } else { -1.0 }, 0.0)
            }
        }
    }

    /// `C_k(x) = Σ_l phase_l(x) f̂(θ_k + lπ)`, ascending `l`.
    fn window_sums(&self, x: f64) -> Vec<Complex64> {
        let n = self.n();
        let mi = self.m as i64;
        let mut c = vec![Complex64::new(0.0, 0.0); n];
        for (row, l) in (-mi..=mi).enumerate() {
            let ph = self.phase(x, l);
            let block = &self.samples[row * n..(row + 1) * n];
            for (ck, &s) in c.iter_mut().zip(block) {
                *ck += ph * s;
            }
        }
        c
    }

    fn combine(&self, c: &[Complex64], v: &[Complex64]) -> Complex64 {
        let s: Complex64 = c.iter().zip(v).map(|(a, b)| a * b).sum();
        s * (0.5 * self.convention.inverse_scale)
    }

    fn value_with_panels(&self, c: &[Complex64], x: f64, panels: usize) -> Complex64 {
        let n = self.n();
        let (nodes, weights) = gauss_legendre_nodes(0.0, PI, panels);
        let mut pairs = vec![0.0; n];
        let mut acc = vec![Complex64::new(0.0, 0.0); n];
        for (&t, &w) in nodes.iter().zip(&weights) {
            self.grid.pairs_into(t, &mut pairs);
            let e = Complex64::new(0.0, x * t).exp() * w;
            for (a, &p) in acc.iter_mut().zip(&pairs) {
                *a += e * p;
            }
        }
        self.combine(c, &acc)
    }

    /// `K_{n,m}(f)(x)`.
    pub fn eval(&self, x: f64, path: KnPath, q: &QuadratureSpec) -> Result<Complex64> {
        if !x.is_finite() {
            return Err(Error::NonFinite { at: x });
        }
        let c = self.window_sums(x);
        match path {
            KnPath::ClosedForm => {
                let mut v = Vec::with_capacity(self.n());
                for k in 1..=self.n() {
                    v.push(vk_closed_form(&self.grid, k, x)?);
                }
                Ok(self.combine(&c, &v))
            }
            KnPath::Quadrature => {
                // Each V_k integrand is a trigonometric polynomial of degree
                // n − 1 times e^{ixη}.
                let mut panels = oscillation_panels(self.n() as f64 + x.abs(), PI) + 1;
                let mut prev = self.value_with_panels(&c, x, panels);
                let mut err = f64::INFINITY;
                for _ in 0..q.max_refinement.min(8) {
                    panels *= 2;
                    let cur = self.value_with_panels(&c, x, panels);
                    err = (cur - prev).norm();
                    prev = cur;
                    if err <= q.abs_tol {
                        return Ok(cur);
                    }
                }
                Err(Error::ToleranceNotMet {
                    estimate: prev.norm(),
                    error: err,
                })
            }
        }
    }
}

/// `K_{n,m}(f)(x) = inverse_scale · Σ_l ½ Σ_k f̂(θ_k + lπ) ∫_{lπ}^{(l+1)π}
/// (P_k^l(θ + π/2n) + P_k^l(θ − π/2n)) e^{ixθ} dθ`.
pub fn apply_kn(
    n: usize,
    fhat: &Spectrum,
    x: f64,
    truncation: Truncation,
    path: KnPath,
    q: &QuadratureSpec,
    conv: &FourierConvention,
) -> Result<KnResult> {
    if path == KnPath::ClosedForm && n > CLOSED_FORM_CAP {
        return Err(Error::Capability {
            limit: CLOSED_FORM_CAP,
            requested: n,
        });
    }
    let m = resolve_truncation(fhat, truncation)?;
    let op = KnOperator::new(n, fhat, m, *conv)?;
    Ok(KnResult {
        value: op.eval(x, path, q)?,
        n,
        m,
        p: x,
        path,
        convention: *conv,
    })
}

/// `f̂ · φ̂_δ` for the Fejér kernel, and the window count `⌈1/(δπ)⌉` that
/// covers its support.
pub fn regularized_spectrum(
    f: &RealFunction,
    delta: f64,
    q: &QuadratureSpec,
    conv: &FourierConvention,
) -> Result<(Spectrum, usize)> {
    let ai = fejer_identity(delta)?;
    let fhat = Spectrum::of_function(f.clone(), *q, *conv);
    let m = (1.0 / (delta * PI)).ceil() as usize;
    Ok((fhat.product(ai.transform()), m))
}

/// `H_{n,δ}(f)(x) = K_n(f ∗ φ_δ)(x)`; the window sum is finite because the
/// regularized spectrum has compact support.
pub fn apply_hn_delta(
    n: usize,
    delta: f64,
    f: &RealFunction,
    x: f64,
    q: &QuadratureSpec,
    conv: &FourierConvention,
) -> Result<KnResult> {
    let (spec, m) = regularized_spectrum(f, delta, q, conv)?;
    apply_kn(n, &spec, x, Truncation::Fixed(m), KnPath::Quadrature, q, conv)
}

/// `∫_window |K_{n,m}(f)(x) − f(x)| dx`.
pub fn kn_l1_error(
    op: &KnOperator,
    f: &RealFunction,
    window: Interval,
    q: &QuadratureSpec,
) -> Result<f64> {
    let inner = QuadratureSpec::gauss(q.abs_tol * 1e-2);
    let mut failure = None;
    let v = integrate_split(
        |x| match op.eval(x, KnPath::Quadrature, &inner) {
            Ok(k) => (k - f.eval(x)).norm(),
            Err(e) => {
                failure.get_or_insert(e);
                f64::NAN
            }
        },
        window,
        f.breakpoints(),
        q,
    );
    match (failure, v) {
        (Some(e), _) => Err(e),
        (None, v) => v,
    }
}

/// Rows `(n, ‖(K_n f − f)χ_window‖₁, ξ_n, error/ξ_n)`.
pub fn rate_report(
    n_list: &[usize],
    fhat: &Spectrum,
    f: &RealFunction,
    window: Interval,
    q: &QuadratureSpec,
    conv: &FourierConvention,
    grid_step: f64,
) -> Result<ReportTable> {
    let m = resolve_truncation(fhat, Truncation::Auto)?;
    let mut table = ReportTable::new(
        "kn_rate",
        &[("n", ""), ("l1_error", ""), ("xi_n", "rad"), ("ratio", "")],
    )?;
    for &n in n_list {
        let op = KnOperator::new(n, fhat, m, *conv)?;
        let err = kn_l1_error(&op, f, window, q)?;
        let xi = xi_n(n, grid_step)?;
        table.push_row(vec![Cell::from(n), err.into(), xi.into(), (err / xi).into()])?;
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fourier::fourier_transform;
    use crate::functions::{c2_bump, gaussian_spectrum, tent_on_zero_pi};
    use proptest::prelude::*;

    fn gq() -> QuadratureSpec {
        QuadratureSpec::gauss(1e-12)
    }

    fn iv(a: f64, b: f64) -> Interval {
        Interval::new(a, b).unwrap()
    }

    #[test]
    fn coefficient_examples() {
        let g1 = ChebyshevGrid::new(1).unwrap();
        assert_eq!(elementary_coeffs(&g1, 1).unwrap().s, vec![1.0]);
        let g2 = ChebyshevGrid::new(2).unwrap();
        let s = elementary_coeffs(&g2, 1).unwrap().s;
        assert_eq!(s[0], 1.0);
        assert!((s[1] - 2f64.sqrt() / 2.0).abs() < 1e-12);
        assert!(elementary_coeffs(&g2, 3).is_err());
    }

    #[test]
    fn coefficients_reconstruct_product() {
        let g = ChebyshevGrid::new(6).unwrap();
        let c = elementary_coeffs(&g, 2).unwrap();
        for t in [0.3, 0.0, 1.1, 2.9, -0.4, 3.0, 1.5, 0.77, 2.2, 0.05] {
            let prod: f64 = g
                .cos_nodes()
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != 1)
                .map(|(_, &cj)| t.cos() - cj)
                .product();
            assert!((c.reconstruct(t) - prod).abs() < 1e-10);
        }
    }

    #[test]
    fn normalization_matches_product() {
        for n in 1..=12 {
            let g = ChebyshevGrid::new(n).unwrap();
            for k in 1..=n {
                let ck = g.cos_nodes()[k - 1];
                let prod: f64 = g
                    .cos_nodes()
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != k - 1)
                    .map(|(_, &cj)| ck - cj)
                    .product();
                assert!((lagrange_normalization(&g, k) * prod - 1.0).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn rr_examples() {
        let v = rr_term(0, 1.0, 5).unwrap();
        assert!(v.re.abs() < 1e-12 && (v.im - 4.0).abs() < 1e-12);
        let v = rr_term(0, 0.0, 5).unwrap();
        assert!((v.re - 2.0 * PI).abs() < 1e-12 && v.im.abs() < 1e-15);
        assert!(rr_term(25, 0.0, 5).is_err());

        let (p, n) = (0.7, 8);
        let h = PI / 16.0;
        let oracle = integrate_complex(
            |t| Complex64::new(0.0, p * t).exp() * ((t - h).cos().powi(3) + (t + h).cos().powi(3)),
            iv(0.0, PI),
            4,
            &gq(),
        )
        .unwrap();
        assert!((rr_term(3, p, n).unwrap() - oracle).norm() < 1e-6);
    }

    #[test]
    fn vk_examples() {
        let g1 = ChebyshevGrid::new(1).unwrap();
        let v = vk_closed_form(&g1, 1, 0.0).unwrap();
        assert!((v.re - 2.0 * PI).abs() < 1e-12);
        let q = vk_quadrature(&g1, 1, 0.0, &gq()).unwrap();
        assert!((q.re - 2.0 * PI).abs() < 1e-12);

        let g4 = ChebyshevGrid::new(4).unwrap();
        let a = vk_closed_form(&g4, 2, 1.3).unwrap();
        let b = vk_quadrature(&g4, 2, 1.3, &gq()).unwrap();
        assert!((a - b).norm() < 1e-6);

        for n in [3, 7, 12] {
            let g = ChebyshevGrid::new(n).unwrap();
            let s: Complex64 = (1..=n).map(|k| vk_closed_form(&g, k, 0.0).unwrap()).sum();
            assert!(s.im.abs() < 1e-8);
            assert!((0.5 * s.re - PI).abs() < 1e-8);
        }
    }

    #[test]
    fn closed_form_is_capped() {
        let g = ChebyshevGrid::new(17).unwrap();
        assert!(matches!(
            vk_closed_form(&g, 1, 0.5),
            Err(Error::Capability { limit: 16, requested: 17 })
        ));
        let r = apply_kn(
            17,
            &gaussian_spectrum(1.0),
            0.5,
            Truncation::Fixed(2),
            KnPath::ClosedForm,
            &gq(),
            &FourierConvention::default(),
        );
        assert!(matches!(r, Err(Error::Capability { .. })));
    }

    #[test]
    fn zero_spectrum_gives_zero() {
        let zero = Spectrum::new(None, |_| Complex64::new(0.0, 0.0));
        let r = apply_kn(
            9,
            &zero,
            0.4,
            Truncation::Fixed(3),
            KnPath::Quadrature,
            &gq(),
            &FourierConvention::default(),
        )
        .unwrap();
        assert_eq!(r.value, Complex64::new(0.0, 0.0));
    }

    #[test]
    fn paths_agree() {
        let fhat = gaussian_spectrum(1.0);
        let conv = FourierConvention::default();
        for n in [3, 8, 12] {
            let op = KnOperator::new(n, &fhat, 3, conv).unwrap();
            for x in [-1.0, 0.3, 2.2] {
                let a = op.eval(x, KnPath::Quadrature, &gq()).unwrap();
                let b = op.eval(x, KnPath::ClosedForm, &gq()).unwrap();
                assert!((a - b).norm() < 1e-8, "n={n} x={x}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn bump_is_recovered_pointwise() {
        let conv = FourierConvention::default();
        let b = c2_bump();
        // Narrower bump so that [−(m+1)π, (m+1)π] with m = 4 holds most of
        // its spectrum.
        let narrow = RealFunction::new(
            crate::function::Domain::CompactSupport(iv(-1.0, 1.0)),
            crate::function::Smoothness::C2,
            |x| (1.0 - x * x).powi(3),
        );
        let fhat = Spectrum::of_function(narrow.clone(), QuadratureSpec::gauss(1e-13), conv);
        let mut errs = Vec::new();
        for n in [32, 64] {
            let r = apply_kn(n, &fhat, 0.3, Truncation::Fixed(4), KnPath::Quadrature, &gq(), &conv)
                .unwrap();
            errs.push((r.value.re - narrow.eval(0.3)).abs());
        }
        assert!(errs[0] < 0.05, "{errs:?}");
        assert!(errs[1] < errs[0], "{errs:?}");
        let _ = b;
    }

    #[test]
    fn alternating_phase_matches_exact_at_odd_integers() {
        let fhat = gaussian_spectrum(1.0);
        let e = KnOperator::new(20, &fhat, 6, FourierConvention::default()).unwrap();
        let a = KnOperator::new(
            20,
            &fhat,
            6,
            FourierConvention::default().with_phase(PhaseMode::Alternating),
        )
        .unwrap();
        // e^{ixlπ} = (−1)^l needs x odd.
        for x in [-3.0, -1.0, 1.0, 5.0] {
            let u = e.eval(x, KnPath::Quadrature, &gq()).unwrap();
            let v = a.eval(x, KnPath::Quadrature, &gq()).unwrap();
            assert!((u - v).norm() < 1e-9);
        }
        for x in [0.0, 2.0] {
            let u = e.eval(x, KnPath::Quadrature, &gq()).unwrap();
            let v = a.eval(x, KnPath::Quadrature, &gq()).unwrap();
            assert!((u - v).norm() > 1e-6);
        }
    }

    #[test]
    fn auto_truncation() {
        let g = gaussian_spectrum(1.0);
        let m = resolve_truncation(&g, Truncation::Auto).unwrap();
        assert!((2..=8).contains(&m));
        let tri = fejer_identity(0.1).unwrap();
        assert_eq!(resolve_truncation(tri.transform(), Truncation::Auto).unwrap(), 4);
        assert_eq!(resolve_truncation(&g, Truncation::Fixed(7)).unwrap(), 7);
    }

    #[test]
    fn hn_delta_is_kn_of_regularized_spectrum() {
        let conv = FourierConvention::default();
        let f = tent_on_zero_pi();
        let q = QuadratureSpec::gauss(1e-12);
        let delta = 0.3;
        // Independent construction of f̂·φ̂_δ.
        let ff = f.clone();
        let spec = Spectrum::new(Some(iv(-1.0 / delta, 1.0 / delta)), move |t| {
            fourier_transform(&ff, t, &q, &conv).unwrap() * (1.0 - delta * t.abs()).max(0.0)
        });
        let m = (1.0 / (delta * PI)).ceil() as usize;
        for x in [-0.7, 0.1, 0.9, 1.6, 2.8] {
            let h = apply_hn_delta(8, delta, &f, x, &q, &conv).unwrap();
            let k = apply_kn(8, &spec, x, Truncation::Fixed(m), KnPath::Quadrature, &q, &conv)
                .unwrap();
            assert!((h.value - k.value).norm() < 1e-8);
        }
        let zero = RealFunction::new(
            crate::function::Domain::CompactSupport(iv(0.0, PI)),
            crate::function::Smoothness::C2,
            |_| 0.0,
        );
        assert_eq!(apply_hn_delta(4, 0.5, &zero, 0.3, &q, &conv).unwrap().value.norm(), 0.0);
    }

    #[test]
    fn rate_report_zero_spectrum() {
        let conv = FourierConvention::default();
        let zero_f = RealFunction::new(
            crate::function::Domain::CompactSupport(iv(-1.0, 1.0)),
            crate::function::Smoothness::C2,
            |_| 0.0,
        );
        let zero = Spectrum::new(Some(iv(-PI, PI)), |_| Complex64::new(0.0, 0.0));
        let t = rate_report(&[4, 8], &zero, &zero_f, iv(-1.0, 1.0), &QuadratureSpec::with_tol(1e-8), &conv, 1e-3)
            .unwrap();
        assert!(t.column("l1_error").unwrap().iter().all(|&e| e == 0.0));
    }

    #[test]
    fn closed_form_agrees_with_quadrature_small_n() {
        let mut seed = 0x2545_f491_u64;
        let mut next = || {
            seed ^= seed << 13;
            seed ^= seed >> 7;
            seed ^= seed << 17;
            (seed >> 11) as f64 / (1u64 << 53) as f64
        };
        for n in 1..=8 {
            let g = ChebyshevGrid::new(n).unwrap();
            for k in 1..=n {
                for _ in 0..4 {
                    let p = -3.0 + 6.0 * next();
                    let a = vk_closed_form(&g, k, p).unwrap();
                    let b = vk_quadrature(&g, k, p, &gq()).unwrap();
                    assert!((a - b).norm() < 1e-6);
                }
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn linear_in_spectrum(a in -2.0f64..2.0, b in -2.0f64..2.0, x in -3.0f64..3.0) {
            let conv = FourierConvention::default();
            let f = gaussian_spectrum(1.0);
            let g = Spectrum::new(Some(iv(-5.0, 5.0)), |t| Complex64::new(t.cos(), t.sin() * 0.3));
            let fg = f.combine(a, &g, b);
            let run = |s: &Spectrum| {
                KnOperator::new(10, s, 3, conv).unwrap().eval(x, KnPath::Quadrature, &gq()).unwrap()
            };
            let lhs = run(&fg);
            let rhs = run(&f) * a + run(&g) * b;
            prop_assert!((lhs - rhs).norm() < 1e-9);
        }

        #[test]
        fn conjugate_symmetry_for_real_spectrum(x in 0.0f64..4.0, n in 2usize..24) {
            let conv = FourierConvention::default();
            let op = KnOperator::new(n, &gaussian_spectrum(1.0), 4, conv).unwrap();
            let u = op.eval(x, KnPath::Quadrature, &gq()).unwrap();
            let v = op.eval(-x, KnPath::Quadrature, &gq()).unwrap();
            prop_assert!((u - v.conj()).norm() < 1e-9);
        }
    }
}
