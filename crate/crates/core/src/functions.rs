//! Concrete test functions.

use core::f64::consts::PI;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::fourier::Spectrum;
use crate::function::{Domain, Interval, RealFunction, Smoothness};

fn tent_eval(x: f64) -> f64 {
    if x <= -0.5 {
        -2.0 * x - 1.0
    } else if x <= 0.0 {
        2.0 * x + 1.0
    } else {
        -2.0 * x + 1.0
    }
}

fn tent_slope(x: f64) -> f64 {
    if x <= -0.5 {
        -2.0
    } else if x <= 0.0 {
        2.0
    } else {
        -2.0
    }
}

/// Piecewise-linear function on `[−1, 1]` with slopes ±2 and kinks at −½, 0.
pub fn tent() -> RealFunction {
    RealFunction::new(
        Domain::Interval(Interval::new(-1.0, 1.0).unwrap()),
        Smoothness::PiecewiseC1,
        tent_eval,
    )
    .with_breakpoints(&[-0.5, 0.0])
    .with_derivative(tent_slope)
}

/// [`tent`] extended by zero to ℝ.
pub fn tent_compact() -> RealFunction {
    RealFunction::new(
        Domain::CompactSupport(Interval::new(-1.0, 1.0).unwrap()),
        Smoothness::PiecewiseC1,
        tent_eval,
    )
    .with_breakpoints(&[-0.5, 0.0])
}

/// [`tent`] times the indicator of `[0, π]`: `1 − 2x` on `[0, 1]`, zero on `(1, π]`.
pub fn tent_on_zero_pi() -> RealFunction {
    RealFunction::new(
        Domain::CompactSupport(Interval::new(0.0, PI).unwrap()),
        Smoothness::Continuous,
        |x| if x <= 1.0 { tent_eval(x) } else { 0.0 },
    )
    .with_breakpoints(&[1.0])
}

fn cubic_eval(x: f64) -> f64 {
    if x <= -0.5 {
        0.5 * (x + 1.0).powi(3)
    } else if x <= 0.0 {
        -0.5 * x.powi(3)
    } else if x <= 0.5 {
        0.5 * x.powi(3)
    } else {
        0.5 * (1.0 - x).powi(3)
    }
}

fn cubic_slope(x: f64) -> f64 {
    if x <= -0.5 {
        1.5 * (x + 1.0).powi(2)
    } else if x <= 0.0 {
        -1.5 * x * x
    } else if x <= 0.5 {
        1.5 * x * x
    } else {
        -1.5 * (1.0 - x).powi(2)
    }
}

/// Piecewise cubic on `[−1, 1]` with kinks at −½ and ½.
pub fn cubic() -> RealFunction {
    RealFunction::new(
        Domain::Interval(Interval::new(-1.0, 1.0).unwrap()),
        Smoothness::PiecewiseC1,
        cubic_eval,
    )
    .with_breakpoints(&[-0.5, 0.0, 0.5])
    .with_derivative(cubic_slope)
}

/// [`cubic`] extended by zero to ℝ.
pub fn cubic_compact() -> RealFunction {
    RealFunction::new(
        Domain::CompactSupport(Interval::new(-1.0, 1.0).unwrap()),
        Smoothness::PiecewiseC1,
        cubic_eval,
    )
    .with_breakpoints(&[-0.5, 0.0, 0.5])
}

/// `(1 − x²/4)³` on `[−2, 2]`, zero outside. Twice continuously differentiable.
pub fn c2_bump() -> RealFunction {
    RealFunction::new(
        Domain::CompactSupport(Interval::new(-2.0, 2.0).unwrap()),
        Smoothness::C2,
        |x| (1.0 - 0.25 * x * x).powi(3),
    )
    .with_derivative(|x| -1.5 * x * (1.0 - 0.25 * x * x).powi(2))
}

/// Transform of `e^{−x²}`: `√π e^{−θ²/4}`, times `forward_scale`.
pub fn gaussian_spectrum(forward_scale: f64) -> Spectrum {
    let c = forward_scale * PI.sqrt();
    Spectrum::new(None, move |t| Complex64::new(c * (-0.25 * t * t).exp(), 0.0))
}
