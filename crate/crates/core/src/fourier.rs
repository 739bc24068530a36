//! Fourier transforms of compactly supported functions, window-peak
//! diagnostics, the Fejér approximate identity and convolution.

use alloc::sync::Arc;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::function::{split_at, Interval, RealFunction};
use crate::quadrature::{
    integrate_complex, integrate_split, oscillation_panels, piece_tolerance, sup_on_interval,
    QuadratureSpec,
};

/// How the window phase `e^{i x l π}` is applied when the `K_n` sum is
/// written window by window.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PhaseMode {
    /// `e^{i x l π}`.
    #[default]
    Exact,
    /// `(−1)^l`, which agrees with the exact phase only for integer `x`.
    Alternating,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FourierConvention {
    /// Factor in front of `∫ f(x) e^{−ixθ} dx`.
    pub forward_scale: f64,
    /// Factor in front of `∫ g(θ) e^{ixθ} dθ`.
    pub inverse_scale: f64,
    pub phase_mode: PhaseMode,
}

impl Default for FourierConvention {
    fn default() -> Self {
        FourierConvention {
            forward_scale: 1.0,
            inverse_scale: 1.0 / (2.0 * PI),
            phase_mode: PhaseMode::Exact,
        }
    }
}

impl FourierConvention {
    pub fn with_phase(mut self, phase_mode: PhaseMode) -> Self {
        self.phase_mode = phase_mode;
        self
    }

    /// Whether forward and inverse transforms are mutually inverse.
    pub fn is_self_consistent(&self) -> bool {
        (self.forward_scale * self.inverse_scale * 2.0 * PI - 1.0).abs() < 1e-12
    }
}

type ComplexEval = Arc<dyn Fn(f64) -> Complex64 + Send + Sync>;

/// A complex-valued function of frequency.
#[derive(Clone)]
pub struct Spectrum {
    eval: ComplexEval,
    support: Option<Interval>,
    breakpoints: Vec<f64>,
    convention: FourierConvention,
}

impl core::fmt::Debug for Spectrum {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("Spectrum")
            .field("support", &self.support)
            .field("breakpoints", &self.breakpoints)
            .field("convention", &self.convention)
            .finish()
    }
}

impl Spectrum {
    pub fn new<F>(support: Option<Interval>, f: F) -> Self
    where
        F: Fn(f64) -> Complex64 + Send + Sync + 'static,
    {
        Spectrum {
            eval: Arc::new(f),
            support,
            breakpoints: Vec::new(),
            convention: FourierConvention::default(),
        }
    }

    pub fn zero() -> Self {
        Spectrum::new(None, |_| Complex64::new(0.0, 0.0))
    }

    /// The forward transform of `f`, evaluated by quadrature on demand.
    /// Evaluation failures surface as NaN and are reported by whichever
    /// integrator consumes the spectrum.
    pub fn of_function(f: RealFunction, q: QuadratureSpec, conv: FourierConvention) -> Self {
        let mut s = Spectrum::new(None, move |t| {
            fourier_transform(&f, t, &q, &conv).unwrap_or(Complex64::new(f64::NAN, f64::NAN))
        });
        s.convention = conv;
        s
    }

    pub fn with_breakpoints(mut self, points: &[f64]) -> Self {
        let mut bp: Vec<f64> = points.to_vec();
        bp.sort_by(|a, b| a.total_cmp(b));
        bp.dedup();
        self.breakpoints = bp;
        self
    }

    pub fn with_convention(mut self, conv: FourierConvention) -> Self {
        self.convention = conv;
        self
    }

    /// Restricts to `iv`: zero outside.
    pub fn truncated(&self, iv: Interval) -> Self {
        let support = match self.support {
            Some(s) => s.intersect(&iv),
            None => Some(iv),
        };
        let inner = self.eval.clone();
        let sup = support;
        Spectrum {
            eval: Arc::new(move |t| match sup {
                Some(s) if s.contains(t) => inner(t),
                _ => Complex64::new(0.0, 0.0),
            }),
            support: support.or(Some(iv)),
            breakpoints: self.breakpoints.clone(),
            convention: self.convention,
        }
    }

    /// Pointwise product; the support is the intersection.
    pub fn product(&self, other: &Spectrum) -> Self {
        let (a, b) = (self.clone(), other.clone());
        let support = match (self.support, other.support) {
            (Some(x), Some(y)) => x.intersect(&y).or(Some(x)),
            (s, None) | (None, s) => s,
        };
        let mut bp = self.breakpoints.clone();
        bp.extend_from_slice(&other.breakpoints);
        Spectrum {
            eval: Arc::new(move |t| a.eval(t) * b.eval(t)),
            support,
            breakpoints: Vec::new(),
            convention: self.convention,
        }
        .with_breakpoints(&bp)
    }

    /// Linear combination `α·self + β·other`.
    pub fn combine(&self, alpha: f64, other: &Spectrum, beta: f64) -> Self {
        let (a, b) = (self.clone(), other.clone());
        let support = match (self.support, other.support) {
            (Some(x), Some(y)) => Interval::new(x.lo().min(y.lo()), x.hi().max(y.hi())).ok(),
            _ => None,
        };
        let mut bp = self.breakpoints.clone();
        bp.extend_from_slice(&other.breakpoints);
        Spectrum {
            eval: Arc::new(move |t| a.eval(t) * alpha + b.eval(t) * beta),
            support,
            breakpoints: Vec::new(),
            convention: self.convention,
        }
        .with_breakpoints(&bp)
    }

    #[inline]
    pub fn eval(&self, theta: f64) -> Complex64 {
        if let Some(s) = self.support {
            if !s.contains(theta) {
                return Complex64::new(0.0, 0.0);
            }
        }
        (self.eval)(theta)
    }

    pub fn support(&self) -> Option<Interval> {
        self.support
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn convention(&self) -> FourierConvention {
        self.convention
    }
}

/// `forward_scale · ∫ f(x) e^{−ixθ} dx` over the support of `f`.
pub fn fourier_transform(
    f: &RealFunction,
    theta: f64,
    q: &QuadratureSpec,
    conv: &FourierConvention,
) -> Result<Complex64> {
    let iv = f.interval();
    let mut total = Complex64::new(0.0, 0.0);
    let pieces = f.pieces(iv);
    let count = pieces.len();
    for piece in pieces {
        let sub = QuadratureSpec {
            abs_tol: piece_tolerance(q.abs_tol, piece.len(), iv.len(), count),
            ..*q
        };
        total += integrate_complex(
            |x| Complex64::new(0.0, -x * theta).exp() * f.eval(x),
            piece,
            oscillation_panels(theta, piece.len()),
            &sub,
        )?;
    }
    Ok(total * conv.forward_scale)
}

/// `inverse_scale · ∫ g(θ) e^{ixθ} dθ` over the support of `g`.
pub fn inverse_transform(
    g: &Spectrum,
    x: f64,
    q: &QuadratureSpec,
    conv: &FourierConvention,
) -> Result<Complex64> {
    let iv = g
        .support()
        .ok_or(Error::InvalidArgument("inverse transform needs a compact support"))?;
    let mut total = Complex64::new(0.0, 0.0);
    let pieces = split_at(iv, g.breakpoints());
    let count = pieces.len();
    for piece in pieces {
        let sub = QuadratureSpec {
            abs_tol: piece_tolerance(q.abs_tol, piece.len(), iv.len(), count),
            ..*q
        };
        total += integrate_complex(
            |t| g.eval(t) * Complex64::new(0.0, x * t).exp(),
            piece,
            oscillation_panels(x, piece.len()),
            &sub,
        )?;
    }
    Ok(total * conv.inverse_scale)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WindowPeak {
    pub l: i64,
    /// Maximizer of `|g|` on `[lπ, (l+1)π]`.
    pub d: f64,
    pub peak: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClassUDiagnostic {
    pub m: usize,
    pub maxima: Vec<WindowPeak>,
    pub partial_sum: f64,
    /// Geometric extrapolation of the peaks beyond `|l| = m`; infinite when
    /// the last peaks do not decay.
    pub tail_estimate: f64,
}

fn side_tail(peaks: &[f64]) -> f64 {
    // peaks ordered by increasing |l|
    let Some(&last) = peaks.last() else {
        return f64::INFINITY;
    };
    if last == 0.0 {
        return 0.0;
    }
    if peaks.len() < 3 {
        return f64::INFINITY;
    }
    let k = peaks.len();
    let (a, b) = (peaks[k - 3], peaks[k - 2]);
    if a == 0.0 || b == 0.0 {
        return f64::INFINITY;
    }
    let r = (last / b).max(b / a);
    if r >= 1.0 {
        f64::INFINITY
    } else {
        last * r / (1.0 - r)
    }
}

/// Peaks of `|g|` on the windows `[lπ, (l+1)π]`, `l = −m..=m`.
pub fn class_u_diagnostic(g: &Spectrum, m: usize, grid_step: f64) -> Result<ClassUDiagnostic> {
    let mut maxima = Vec::with_capacity(2 * m + 1);
    let mi = m as i64;
    for l in -mi..=mi {
        let w = Interval::new(l as f64 * PI, (l + 1) as f64 * PI)?;
        let (d, peak) = sup_on_interval(|t| g.eval(t).norm(), w, grid_step)?;
        maxima.push(WindowPeak { l, d, peak });
    }
    let partial_sum = maxima.iter().map(|w| w.peak).sum();
    let pos: Vec<f64> = maxima.iter().filter(|w| w.l >= 0).map(|w| w.peak).collect();
    let neg: Vec<f64> = maxima.iter().rev().filter(|w| w.l < 0).map(|w| w.peak).collect();
    let tail_estimate = side_tail(&pos) + side_tail(&neg);
    Ok(ClassUDiagnostic {
        m,
        maxima,
        partial_sum,
        tail_estimate,
    })
}

/// A nonnegative unit-mass kernel whose transform is supported on `[−1/δ, 1/δ]`.
#[derive(Debug, Clone)]
pub struct ApproximateIdentity {
    delta: f64,
    transform: Spectrum,
}

impl ApproximateIdentity {
    pub fn delta(&self) -> f64 {
        self.delta
    }

    /// `(1/(2πδ)) (sin(x/2δ) / (x/2δ))²`.
    #[inline]
    pub fn kernel(&self, x: f64) -> f64 {
        let u = x / (2.0 * self.delta);
        let s = if u.abs() < 1e-8 {
            1.0 - u * u / 6.0
        } else {
            u.sin() / u
        };
        s * s / (2.0 * PI * self.delta)
    }

    /// The triangle `(1 − δ|θ|)₊`.
    pub fn transform(&self) -> &Spectrum {
        &self.transform
    }

    /// `∫_{−r}^{r} kernel`.
    pub fn mass_within(&self, r: f64, q: &QuadratureSpec) -> Result<f64> {
        if !(r > 0.0) {
            return Err(Error::InvalidArgument("radius must be positive"));
        }
        let iv = Interval::new(0.0, r)?;
        // Split at the zeros of the kernel, 2πδ apart.
        let period = 2.0 * PI * self.delta;
        let cuts = (r / period).floor() as usize;
        let points: Vec<f64> = (1..=cuts.min(100_000)).map(|j| j as f64 * period).collect();
        Ok(2.0 * integrate_split(|x| self.kernel(x), iv, &points, q)?)
    }

    /// `∫_{|x| ≥ ε} kernel = 1 − ∫_{−ε}^{ε} kernel`.
    pub fn tail_beyond(&self, eps: f64, q: &QuadratureSpec) -> Result<f64> {
        Ok(1.0 - self.mass_within(eps, q)?)
    }
}

pub fn fejer_identity(delta: f64) -> Result<ApproximateIdentity> {
    if !(delta > 0.0 && delta.is_finite()) {
        return Err(Error::InvalidArgument("delta must be positive"));
    }
    let support = Interval::new(-1.0 / delta, 1.0 / delta)?;
    let transform = Spectrum::new(Some(support), move |t| {
        Complex64::new((1.0 - delta * t.abs()).max(0.0), 0.0)
    })
    .with_breakpoints(&[0.0]);
    Ok(ApproximateIdentity { delta, transform })
}

/// `(f ∗ φ_δ)(x) = ∫ f(y) φ_δ(x − y) dy` over the domain of `f`.
pub fn convolve(
    f: &RealFunction,
    ai: &ApproximateIdentity,
    x: f64,
    q: &QuadratureSpec,
) -> Result<f64> {
    let iv = f.interval();
    let mut points: Vec<f64> = f.breakpoints().to_vec();
    // Break at the kernel zeros as well so each piece sees one lobe or a few.
    let period = 2.0 * PI * ai.delta();
    let lobes = (iv.len() / period).ceil() as i64;
    if lobes <= 4096 {
        let j0 = ((x - iv.hi()) / period).floor() as i64;
        for j in j0..=j0 + lobes + 1 {
            points.push(x - j as f64 * period);
        }
    }
    points.sort_by(|a, b| a.total_cmp(b));
    integrate_split(|y| f.eval(y) * ai.kernel(x - y), iv, &points, q)
}
