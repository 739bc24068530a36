//! Chebyshev node angles and the fundamental Lagrange polynomials in the
//! angle variable.

use alloc::vec::Vec;
use core::f64::consts::PI;

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};

/// Angles `θ_k = (2k − 1)π / (2n)`, `k = 1..n`, with cached cosines and sines.
#[derive(Debug, Clone, PartialEq)]
pub struct ChebyshevGrid {
    n: usize,
    angles: Vec<f64>,
    cos: Vec<f64>,
    sin: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PkEvalMode {
    /// `(−1)^{k+1} cos(nθ) sin θ_k / (n (cos θ − cos θ_k))`, O(1).
    #[default]
    RationalTrig,
    /// `∏_{j≠k} (cos θ − cos θ_j)/(cos θ_k − cos θ_j)`, O(n).
    ProductForm,
}

/// Inside this band around a node the rational form is replaced by the
/// compensated one.
pub const NEAR_NODE_GUARD: f64 = 1e-2;

impl ChebyshevGrid {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("n must be at least 1"));
        }
        let angles: Vec<f64> = (1..=n)
            .map(|k| (2 * k - 1) as f64 * PI / (2 * n) as f64)
            .collect();
        let cos = angles.iter().map(|t| t.cos()).collect();
        let sin = angles.iter().map(|t| t.sin()).collect();
        Ok(ChebyshevGrid {
            n,
            angles,
            cos,
            sin,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// All angles, `angles()[k - 1] = θ_k`.
    pub fn angles(&self) -> &[f64] {
        &self.angles
    }

    /// `θ_k` for 1-based `k`.
    pub fn angle(&self, k: usize) -> f64 {
        self.angles[k - 1]
    }

    pub fn cos_nodes(&self) -> &[f64] {
        &self.cos
    }

    /// The half-spacing `π/(2n)` used by the shifted pair.
    pub fn half_step(&self) -> f64 {
        PI / (2 * self.n) as f64
    }

    fn check_k(&self, k: usize) -> Result<usize> {
        if k == 0 || k > self.n {
            return Err(Error::InvalidArgument("node index out of range 1..=n"));
        }
        Ok(k - 1)
    }

    /// `P_k(θ)` in the requested mode; `k` is 1-based.
    pub fn fundamental_poly(&self, k: usize, theta: f64, mode: PkEvalMode) -> Result<f64> {
        let i = self.check_k(k)?;
        Ok(match mode {
            PkEvalMode::RationalTrig => {
                let c = theta.cos();
                self.pk_rational(i, theta, c, (self.n as f64 * theta).cos())
            }
            PkEvalMode::ProductForm => self.pk_product(i, theta.cos()),
        })
    }

    /// `P_k(θ − π/2n) + P_k(θ + π/2n)`.
    pub fn shifted_pair(&self, k: usize, theta: f64) -> Result<f64> {
        self.shifted_pair_mode(k, theta, PkEvalMode::RationalTrig)
    }

    pub fn shifted_pair_mode(&self, k: usize, theta: f64, mode: PkEvalMode) -> Result<f64> {
        let h = self.half_step();
        Ok(self.fundamental_poly(k, theta - h, mode)? + self.fundamental_poly(k, theta + h, mode)?)
    }

    /// Writes every shifted pair at `θ` into `out[k - 1]`. This is the hot
    /// path of every operator built on the grid: the trigonometric values of
    /// the two shifted angles are computed once.
    pub fn pairs_into(&self, theta: f64, out: &mut [f64]) {
        assert_eq!(out.len(), self.n, "output slice must have n entries");
        let h = self.half_step();
        let nf = self.n as f64;
        let (tm, tp) = (theta - h, theta + h);
        let (cm, cp) = (tm.cos(), tp.cos());
        let (nm, np) = ((nf * tm).cos(), (nf * tp).cos());
        for (i, o) in out.iter_mut().enumerate() {
            *o = self.pk_rational(i, tm, cm, nm) + self.pk_rational(i, tp, cp, np);
        }
    }

    /// Convenience allocation wrapper around [`Self::pairs_into`].
    pub fn pairs(&self, theta: f64) -> Vec<f64> {
        let mut out = alloc::vec![0.0; self.n];
        self.pairs_into(theta, &mut out);
        out
    }

    #[inline]
    fn pk_rational(&self, i: usize, theta: f64, cos_theta: f64, cos_n_theta: f64) -> f64 {
        let den = cos_theta - self.cos[i];
        if den.abs() < NEAR_NODE_GUARD {
            return self.pk_compensated(i, theta);
        }
        let sign = if i.is_multiple_of(2) { 1.0 } else { -1.0 };
        sign * cos_n_theta * self.sin[i] / (self.n as f64 * den)
    }

    // sin θ_k sin(nΔ) / (2n sin((θ+θ_k)/2) sin(Δ/2)) with θ reduced to [0, π]
    // and Δ = θ − θ_k. Algebraically equal to the rational form and free of
    // the 0/0 at the node.
    fn pk_compensated(&self, i: usize, theta: f64) -> f64 {
        let tau = 2.0 * PI;
        let mut t = theta - tau * (theta / tau).floor();
        if t > PI {
            t = 2.0 * PI - t;
        }
        let d = t - self.angles[i];
        if d == 0.0 {
            return 1.0;
        }
        let nf = self.n as f64;
        self.sin[i] * (nf * d).sin() / (2.0 * nf * (0.5 * (t + self.angles[i])).sin() * (0.5 * d).sin())
    }

    fn pk_product(&self, i: usize, cos_theta: f64) -> f64 {
        let ck = self.cos[i];
        let mut p = 1.0;
        for (j, &cj) in self.cos.iter().enumerate() {
            if j != i {
                p *= (cos_theta - cj) / (ck - cj);
            }
        }
        p
    }
}
