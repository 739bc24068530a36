use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// A closed interval `[lo, hi]` with `lo < hi`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    lo: f64,
    hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite()) {
            return Err(Error::InvalidArgument("interval endpoints must be finite"));
        }
        if lo >= hi {
            return Err(Error::InvalidArgument("interval requires lo < hi"));
        }
        Ok(Interval { lo, hi })
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn len(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    /// The intersection with `other`, if it has positive length.
    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        Interval::new(self.lo.max(other.lo), self.hi.min(other.hi)).ok()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Domain {
    /// Defined on a closed interval only.
    Interval(Interval),
    /// Defined on ℝ, vanishing outside the interval.
    CompactSupport(Interval),
}

impl Domain {
    pub fn interval(&self) -> Interval {
        match *self {
            Domain::Interval(iv) | Domain::CompactSupport(iv) => iv,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Smoothness {
    Continuous,
    PiecewiseC1,
    C2,
}

type Eval = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// A real-valued function together with the data the integrators need:
/// its domain, a smoothness tag, and the points where it has kinks or jumps.
#[derive(Clone)]
pub struct RealFunction {
    eval: Eval,
    derivative: Option<Eval>,
    domain: Domain,
    smoothness: Smoothness,
    breakpoints: Vec<f64>,
}

impl core::fmt::Debug for RealFunction {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("RealFunction")
            .field("domain", &self.domain)
            .field("smoothness", &self.smoothness)
            .field("breakpoints", &self.breakpoints)
            .field("has_derivative", &self.derivative.is_some())
            .finish()
    }
}

impl RealFunction {
    pub fn new<F>(domain: Domain, smoothness: Smoothness, f: F) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        RealFunction {
            eval: Arc::new(f),
            derivative: None,
            domain,
            smoothness,
            breakpoints: Vec::new(),
        }
    }

    /// Convenience constructor for a function on `[lo, hi]`.
    pub fn on<F>(lo: f64, hi: f64, smoothness: Smoothness, f: F) -> Result<Self>
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        Ok(Self::new(
            Domain::Interval(Interval::new(lo, hi)?),
            smoothness,
            f,
        ))
    }

    /// Points inside the domain where the function is not smooth. Sorted,
    /// deduplicated and clipped to the domain.
    pub fn with_breakpoints(mut self, points: &[f64]) -> Self {
        let iv = self.domain.interval();
        let mut bp: Vec<f64> = points
            .iter()
            .copied()
            .filter(|&p| p > iv.lo() && p < iv.hi())
            .collect();
        bp.sort_by(|a, b| a.total_cmp(b));
        bp.dedup();
        self.breakpoints = bp;
        self
    }

    pub fn with_derivative<F>(mut self, df: F) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        self.derivative = Some(Arc::new(df));
        self
    }

    /// Evaluates the function. Outside a compact support the value is 0;
    /// outside an interval domain the closure is called anyway and the
    /// caller is responsible for staying in range.
    #[inline]
    pub fn eval(&self, x: f64) -> f64 {
        if let Domain::CompactSupport(iv) = self.domain {
            if !iv.contains(x) {
                return 0.0;
            }
        }
        (self.eval)(x)
    }

    pub fn derivative(&self) -> Option<RealFunction> {
        let df = self.derivative.clone()?;
        Some(RealFunction {
            eval: df,
            derivative: None,
            domain: self.domain,
            smoothness: Smoothness::Continuous,
            breakpoints: self.breakpoints.clone(),
        })
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn interval(&self) -> Interval {
        self.domain.interval()
    }

    pub fn smoothness(&self) -> Smoothness {
        self.smoothness
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    /// The sub-intervals of `iv` between consecutive breakpoints.
    pub fn pieces(&self, iv: Interval) -> Vec<Interval> {
        split_at(iv, &self.breakpoints)
    }
}

/// Splits `iv` at the given sorted points that fall strictly inside it.
pub fn split_at(iv: Interval, points: &[f64]) -> Vec<Interval> {
    let mut out = Vec::with_capacity(points.len() + 1);
    let mut lo = iv.lo();
    for &p in points {
        if p > lo && p < iv.hi() {
            if let Ok(piece) = Interval::new(lo, p) {
                out.push(piece);
            }
            lo = p;
        }
    }
    if let Ok(piece) = Interval::new(lo, iv.hi()) {
        out.push(piece);
    }
    out
}
