//! The Grünwald operator `G_n` on `C[0, π]`, its window-wise extension to ℝ,
//! the Lebesgue function and the rate functionals `ν_n`, `ξ_n`.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

#[allow(unused_imports)]
use num_traits::Float;

use crate::chebyshev::ChebyshevGrid;
use crate::error::{Error, Result};
use crate::function::{Interval, RealFunction, Smoothness};
use crate::quadrature::{grid, modulus_of_continuity, sup_on_interval};
use crate::report::{Cell, ReportTable};

/// Default sup-search spacing for the rate functionals.
pub const TABLE_GRID_STEP: f64 = PI * 1e-5;

fn zero_pi() -> Interval {
    Interval::new(0.0, PI).unwrap()
}

/// `G_n(f)(θ) = ½ Σ_k f(θ_k) (P_k(θ − π/2n) + P_k(θ + π/2n))`.
#[derive(Debug, Clone, PartialEq)]
pub struct GrunwaldOperator {
    grid: ChebyshevGrid,
}

impl GrunwaldOperator {
    pub fn new(n: usize) -> Result<Self> {
        Ok(GrunwaldOperator {
            grid: ChebyshevGrid::new(n)?,
        })
    }

    pub fn n(&self) -> usize {
        self.grid.n()
    }

    pub fn grid(&self) -> &ChebyshevGrid {
        &self.grid
    }

    /// `f` sampled at the node angles, in node order.
    pub fn node_values<F: Fn(f64) -> f64>(&self, f: F) -> Vec<f64> {
        self.grid.angles().iter().map(|&t| f(t)).collect()
    }

    /// `G_n` applied to precomputed node values. `scratch` must have length n.
    pub fn apply_values(&self, values: &[f64], theta: f64, scratch: &mut [f64]) -> f64 {
        self.grid.pairs_into(theta, scratch);
        0.5 * values.iter().zip(scratch.iter()).map(|(v, p)| v * p).sum::<f64>()
    }

    pub fn apply<F: Fn(f64) -> f64>(&self, f: F, theta: f64) -> Result<f64> {
        if !(0.0..=PI).contains(&theta) {
            return Err(Error::InvalidArgument(
                "theta outside [0, pi]; use apply_extended",
            ));
        }
        let values = self.node_values(f);
        let mut scratch = vec![0.0; self.n()];
        Ok(self.apply_values(&values, theta, &mut scratch))
    }

    /// `G_n^j(f)(θ)` with `j = ⌊θ/π⌋`: the nodes are shifted to `θ_k + jπ`
    /// and the basis to `P_k(· − jπ)`.
    pub fn apply_extended<F: Fn(f64) -> f64>(&self, f: F, theta: f64) -> Result<f64> {
        if !theta.is_finite() {
            return Err(Error::NonFinite { at: theta });
        }
        let j = (theta / PI).floor();
        let shift = j * PI;
        let values = self.node_values(|t| f(t + shift));
        let mut scratch = vec![0.0; self.n()];
        Ok(self.apply_values(&values, theta - shift, &mut scratch))
    }

    /// `Λ_n(θ) = ½ Σ_k |P_k(θ − π/2n) + P_k(θ + π/2n)|`.
    pub fn lebesgue(&self, theta: f64) -> f64 {
        let mut scratch = vec![0.0; self.n()];
        self.lebesgue_with(theta, &mut scratch)
    }

    fn lebesgue_with(&self, theta: f64, scratch: &mut [f64]) -> f64 {
        self.grid.pairs_into(theta, scratch);
        0.5 * scratch.iter().map(|p| p.abs()).sum::<f64>()
    }

    /// `‖G_n‖ = sup_θ Λ_n(θ)` and its maximizer.
    pub fn norm(&self, grid_step: f64) -> Result<(f64, f64)> {
        let mut scratch = vec![0.0; self.n()];
        sup_on_interval(|t| self.lebesgue_with(t, &mut scratch), zero_pi(), grid_step)
    }

    fn weighted_sup<W: Fn(usize, f64) -> f64>(&self, weight: W, grid_step: f64) -> Result<f64> {
        let mut scratch = vec![0.0; self.n()];
        let (_, v) = sup_on_interval(
            |t| {
                self.grid.pairs_into(t, &mut scratch);
                0.5 * scratch
                    .iter()
                    .enumerate()
                    .map(|(i, p)| weight(i, t) * p.abs())
                    .sum::<f64>()
            },
            zero_pi(),
            grid_step,
        )?;
        Ok(v)
    }

    /// `ν_n = sup_θ ½ Σ_k |cos θ_k − cos θ| |P_k(θ − π/2n) + P_k(θ + π/2n)|`.
    pub fn nu(&self, grid_step: f64) -> Result<f64> {
        let c = self.grid.cos_nodes();
        self.weighted_sup(|i, t| (c[i] - t.cos()).abs(), grid_step)
    }

    /// `ξ_n = sup_η ½ Σ_k |θ_k − η| |P_k(η − π/2n) + P_k(η + π/2n)|`.
    pub fn xi(&self, grid_step: f64) -> Result<f64> {
        let a = self.grid.angles();
        self.weighted_sup(|i, t| (a[i] - t).abs(), grid_step)
    }
}

pub fn lebesgue_function(n: usize, theta: f64) -> Result<f64> {
    Ok(GrunwaldOperator::new(n)?.lebesgue(theta))
}

pub fn operator_norm_gn(n: usize, grid_step: f64) -> Result<f64> {
    Ok(GrunwaldOperator::new(n)?.norm(grid_step)?.1)
}

pub fn nu_n(n: usize, grid_step: f64) -> Result<f64> {
    GrunwaldOperator::new(n)?.nu(grid_step)
}

pub fn xi_n(n: usize, grid_step: f64) -> Result<f64> {
    GrunwaldOperator::new(n)?.xi(grid_step)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateFunctionals {
    pub n: usize,
    pub nu: f64,
    pub xi: f64,
    /// Estimate of `‖G_n‖`.
    pub lebesgue_sup: f64,
}

pub fn rate_functionals(n: usize, grid_step: f64) -> Result<RateFunctionals> {
    let op = GrunwaldOperator::new(n)?;
    Ok(RateFunctionals {
        n,
        nu: op.nu(grid_step)?,
        xi: op.xi(grid_step)?,
        lebesgue_sup: op.norm(grid_step)?.1,
    })
}

/// Empirical stand-in for the absolute constant bounding `‖G_n‖`.
#[derive(Debug, Clone, PartialEq)]
pub struct C1Estimate {
    pub c1: f64,
    /// `(n, ‖G_n‖)` for `n = 2, 4, 8, …`.
    pub norms: Vec<(usize, f64)>,
}

/// Max of `‖G_n‖` over the dyadic sweep `n = 2, 4, …, ≤ n_max`.
pub fn empirical_c1(n_max: usize, grid_step: f64) -> Result<C1Estimate> {
    if n_max < 2 {
        return Err(Error::InvalidArgument("n_max must be at least 2"));
    }
    let mut norms = Vec::new();
    let mut n = 2;
    while n <= n_max {
        norms.push((n, operator_norm_gn(n, grid_step)?));
        n *= 2;
    }
    let c1 = norms.iter().map(|&(_, v)| v).fold(1.0, f64::max);
    Ok(C1Estimate { c1, norms })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundFlavor {
    /// `‖G_n(f∘cos) − f∘cos‖ ≤ (c₁+1) ω(f, ν_n)`, `f` on `[−1, 1]`.
    NuComposedCos,
    /// `‖G_n(f) − f‖ ≤ (c₁+1) ω(f, ξ_n)`, `f` on `[0, π]`.
    XiDirect,
    /// `‖G_n(f) − f‖ ≤ ‖f′‖ ξ_n + 2π(c₁+1) ω(f′, ξ_n)`, `f` on `[0, π]`.
    XiDerivative,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundReport {
    pub n: usize,
    pub flavor: BoundFlavor,
    pub lhs_sup_error: f64,
    pub rhs_bound: f64,
    /// `ν_n` or `ξ_n`, whichever the flavor uses.
    pub rate: f64,
    pub c1: f64,
    pub holds: bool,
}

/// Sup-norm error of `G_n` on `f` against the corresponding bound, using the
/// supplied constant `c1`.
pub fn quantitative_bound_report(
    n: usize,
    f: &RealFunction,
    flavor: BoundFlavor,
    c1: f64,
    grid_step: f64,
) -> Result<BoundReport> {
    let op = GrunwaldOperator::new(n)?;
    let derivative = match flavor {
        BoundFlavor::XiDerivative => {
            if f.smoothness() < Smoothness::PiecewiseC1 {
                return Err(Error::InvalidArgument(
                    "derivative bound needs a piecewise-C1 function",
                ));
            }
            Some(f.derivative().ok_or(Error::InvalidArgument(
                "derivative bound needs a derivative evaluator",
            ))?)
        }
        _ => None,
    };
    let composed = flavor == BoundFlavor::NuComposedCos;
    let g = |t: f64| if composed { f.eval(t.cos()) } else { f.eval(t) };
    let values = op.node_values(g);
    let mut scratch = vec![0.0; n];
    let (_, lhs) = sup_on_interval(
        |t| (op.apply_values(&values, t, &mut scratch) - g(t)).abs(),
        zero_pi(),
        grid_step,
    )?;
    let (rate, rhs) = match flavor {
        BoundFlavor::NuComposedCos => {
            let nu = op.nu(grid_step)?;
            let w = modulus_of_continuity(|x| f.eval(x), nu, f.interval(), grid_step)?;
            (nu, (c1 + 1.0) * w)
        }
        BoundFlavor::XiDirect => {
            let xi = op.xi(grid_step)?;
            let w = modulus_of_continuity(|x| f.eval(x), xi, zero_pi(), grid_step)?;
            (xi, (c1 + 1.0) * w)
        }
        BoundFlavor::XiDerivative => {
            let df = derivative.expect("checked above");
            let xi = op.xi(grid_step)?;
            let sup_df = grid(zero_pi(), grid_step)?
                .into_iter()
                .map(|t| df.eval(t).abs())
                .fold(0.0, f64::max);
            let w = modulus_of_continuity(|x| df.eval(x), xi, zero_pi(), grid_step)?;
            (xi, sup_df * xi + 2.0 * PI * (c1 + 1.0) * w)
        }
    };
    Ok(BoundReport {
        n,
        flavor,
        lhs_sup_error: lhs,
        rhs_bound: rhs,
        rate,
        c1,
        // Rounding in G_n leaves ~1e-15 residuals even where the bound is 0.
        holds: lhs <= rhs + 1e-12,
    })
}

/// A nonnegative `f` for which `G_n(f)` takes a negative value.
#[derive(Debug, Clone)]
pub struct Witness {
    pub f: RealFunction,
    pub theta: f64,
    pub value: f64,
}

/// Builds the hat `f` that vanishes on `[0, θ_{n−1}]`, rises linearly to 1 at
/// `θ_n` and stays 1 up to π. Only `f(θ_n)` survives in `G_n(f)`, so
/// `G_n(f) = ½ (P_n(θ − π/2n) + P_n(θ + π/2n))`; its minimizer on `[0, π]`
/// is returned.
pub fn nonpositivity_witness_gn(n: usize, grid_step: f64) -> Result<Witness> {
    if n < 3 {
        return Err(Error::InvalidArgument("non-positivity witness needs n >= 3"));
    }
    let op = GrunwaldOperator::new(n)?;
    let a = op.grid().angle(n - 1);
    let b = op.grid().angle(n);
    let f = RealFunction::on(0.0, PI, Smoothness::Continuous, move |t| {
        if t <= a {
            0.0
        } else if t >= b {
            1.0
        } else {
            (t - a) / (b - a)
        }
    })?
    .with_breakpoints(&[a, b]);
    let values = op.node_values(|t| f.eval(t));
    let mut scratch = vec![0.0; n];
    let (theta, neg) = sup_on_interval(
        |t| -op.apply_values(&values, t, &mut scratch),
        zero_pi(),
        grid_step,
    )?;
    if -neg >= 0.0 {
        return Err(Error::WitnessNotFound { n });
    }
    Ok(Witness {
        f,
        theta,
        value: -neg,
    })
}

/// Rows `(n, ‖G_n(1) − 1‖, ‖G_n(cos) − cos‖, ‖G_n(cos²) − cos²‖)`.
pub fn test_set_convergence_report(n_list: &[usize], grid_step: f64) -> Result<ReportTable> {
    let mut table = ReportTable::new(
        "grunwald_test_set",
        &[("n", ""), ("err_one", ""), ("err_cos", ""), ("err_cos2", "")],
    )?;
    for &n in n_list {
        let op = GrunwaldOperator::new(n)?;
        let mut scratch = vec![0.0; n];
        let mut row = vec![Cell::from(n)];
        let tests: [fn(f64) -> f64; 3] = [|_| 1.0, |t| t.cos(), |t| t.cos() * t.cos()];
        for g in tests {
            let values = op.node_values(g);
            let (_, e) = sup_on_interval(
                |t| (op.apply_values(&values, t, &mut scratch) - g(t)).abs(),
                zero_pi(),
                grid_step,
            )?;
            row.push(e.into());
        }
        table.push_row(row)?;
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const STEP: f64 = PI * 1e-4;

    #[test]
    fn constants_are_reproduced() {
        for n in [1, 2, 7, 30] {
            let op = GrunwaldOperator::new(n).unwrap();
            for t in [0.0, 0.3, 1.7, PI] {
                assert!((op.apply(|_| 1.0, t).unwrap() - 1.0).abs() < 1e-11);
            }
        }
    }

    #[test]
    fn cosine_residual_example() {
        let op = GrunwaldOperator::new(10).unwrap();
        let t = 0.4;
        let want = t.cos() + t.cos() * ((PI / 20.0).cos() - 1.0);
        assert!((op.apply(|x| x.cos(), t).unwrap() - want).abs() < 1e-10);
    }

    #[test]
    fn exact_residual_identities_on_grid() {
        for n in [1usize, 2, 3, 5, 10, 50] {
            let op = GrunwaldOperator::new(n).unwrap();
            for i in 0..1000 {
                let t = PI * i as f64 / 999.0;
                let r1 = op.apply(|x| x.cos(), t).unwrap() - t.cos();
                assert!((r1 - t.cos() * ((PI / (2 * n) as f64).cos() - 1.0)).abs() < 1e-9);
                if n >= 3 {
                    let r2 = op.apply(|x| x.cos() * x.cos(), t).unwrap() - t.cos().powi(2);
                    let want = 0.5 * (2.0 * t).cos() * ((PI / n as f64).cos() - 1.0);
                    assert!((r2 - want).abs() < 1e-9, "n={n} t={t}");
                }
            }
        }
    }

    #[test]
    fn single_node_evaluates_at_midpoint() {
        let op = GrunwaldOperator::new(1).unwrap();
        let f = |x: f64| x * x - 3.0 * x;
        for t in [0.0, 1.0, 2.5] {
            assert!((op.apply(f, t).unwrap() - f(PI / 2.0)).abs() < 1e-14);
        }
    }

    #[test]
    fn apply_rejects_outside() {
        let op = GrunwaldOperator::new(4).unwrap();
        assert!(op.apply(|x| x, -0.1).is_err());
        assert!(op.apply(|x| x, 3.2).is_err());
    }

    #[test]
    fn extended_agrees_and_is_periodic() {
        let op = GrunwaldOperator::new(4).unwrap();
        let f = |x: f64| (2.0 * x).sin().powi(2) + (4.0 * x).cos();
        for t in [0.1, 1.0, 2.9] {
            let base = op.apply(f, t).unwrap();
            assert!((op.apply_extended(f, t).unwrap() - base).abs() < 1e-15);
            assert!((op.apply_extended(f, t + PI).unwrap() - base).abs() < 1e-12);
            assert!((op.apply_extended(f, t - 3.0 * PI).unwrap() - base).abs() < 1e-12);
        }
        for t in [-7.3, -1.0, 4.4, 20.0] {
            assert!((op.apply_extended(|_| 1.0, t).unwrap() - 1.0).abs() < 1e-11);
        }
    }

    #[test]
    fn lebesgue_examples() {
        for t in [0.0, 0.5, 2.0] {
            assert!((lebesgue_function(1, t).unwrap() - 1.0).abs() < 1e-14);
        }
        let op = GrunwaldOperator::new(20).unwrap();
        for i in 0..1000 {
            assert!(op.lebesgue(PI * i as f64 / 999.0) >= 1.0 - 1e-12);
        }
        assert!((operator_norm_gn(1, STEP).unwrap() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn norm_for_two_nodes_matches_fine_grid() {
        // Brute force on a uniform grid, finer than the sup search.
        let op = GrunwaldOperator::new(2).unwrap();
        let oracle = (0..=400_000)
            .map(|i| op.lebesgue(PI * i as f64 / 400_000.0))
            .fold(0.0, f64::max);
        let (arg, v) = op.norm(STEP).unwrap();
        assert!(v > 1.0);
        assert!(v >= oracle - 1e-12 && v - oracle < 1e-9);
        assert!((op.lebesgue(arg) - v).abs() < 1e-15);
    }

    #[test]
    fn rate_functionals_for_one_node() {
        assert!((nu_n(1, STEP).unwrap() - 1.0).abs() < 1e-12);
        assert!((xi_n(1, STEP).unwrap() - PI / 2.0).abs() < 1e-12);
    }

    #[test]
    fn rate_functionals_decrease() {
        let nus: Vec<f64> = [10, 22, 57].iter().map(|&n| nu_n(n, STEP).unwrap()).collect();
        assert!(nus.windows(2).all(|w| w[1] < w[0]));
        let xis: Vec<f64> = [20, 40, 80].iter().map(|&n| xi_n(n, STEP).unwrap()).collect();
        assert!(xis.windows(2).all(|w| w[1] < w[0]));
    }

    #[test]
    fn bounds_hold() {
        let c1 = empirical_c1(64, 1e-3).unwrap().c1;
        let constant = RealFunction::on(-1.0, 1.0, Smoothness::C2, |_| 2.0).unwrap();
        let r = quantitative_bound_report(7, &constant, BoundFlavor::NuComposedCos, c1, 1e-3)
            .unwrap();
        assert!(r.lhs_sup_error < 1e-12 && r.holds);

        let tent = crate::functions::tent();
        let r = quantitative_bound_report(10, &tent, BoundFlavor::NuComposedCos, c1, 1e-4).unwrap();
        assert!(r.holds, "{r:?}");

        let sq = RealFunction::on(0.0, PI, Smoothness::C2, |t| t * t)
            .unwrap()
            .with_derivative(|t| 2.0 * t);
        let r = quantitative_bound_report(50, &sq, BoundFlavor::XiDerivative, c1, 1e-4).unwrap();
        assert!(r.holds, "{r:?}");
        let r = quantitative_bound_report(50, &sq, BoundFlavor::XiDirect, c1, 1e-4).unwrap();
        assert!(r.holds, "{r:?}");
    }

    #[test]
    fn derivative_flavor_requires_derivative() {
        let f = RealFunction::on(0.0, PI, Smoothness::C2, |t| t * t).unwrap();
        assert!(matches!(
            quantitative_bound_report(5, &f, BoundFlavor::XiDerivative, 2.0, 1e-3),
            Err(Error::InvalidArgument(_))
        ));
        let g = RealFunction::on(0.0, PI, Smoothness::Continuous, |t| t)
            .unwrap()
            .with_derivative(|_| 1.0);
        assert!(quantitative_bound_report(5, &g, BoundFlavor::XiDerivative, 2.0, 1e-3).is_err());
    }

    #[test]
    fn witnesses() {
        assert!(nonpositivity_witness_gn(2, STEP).is_err());
        for n in [3, 4, 5, 9, 20] {
            let w = nonpositivity_witness_gn(n, STEP).unwrap();
            assert!(w.value < 0.0);
            let g = GrunwaldOperator::new(n).unwrap();
            assert!((g.apply(|t| w.f.eval(t), w.theta).unwrap() - w.value).abs() < 1e-12);
            for i in 0..=1000 {
                assert!(w.f.eval(PI * i as f64 / 1000.0) >= 0.0);
            }
            let h = PI / (2 * n) as f64;
            let lo = g.grid().angle(n - 2) - h;
            let hi = g.grid().angle(n - 1) - h;
            assert!(w.theta > lo && w.theta < hi, "n={n} theta={}", w.theta);
        }
    }

    #[test]
    fn test_set_report() {
        let t = test_set_convergence_report(&[10, 20, 40], 1e-4).unwrap();
        let one = t.column("err_one").unwrap();
        let cos = t.column("err_cos").unwrap();
        let cos2 = t.column("err_cos2").unwrap();
        assert!(one.iter().all(|&e| e < 1e-11));
        assert!((cos[0] - (1.0 - (PI / 20.0).cos())).abs() < 1e-9);
        assert!((cos[0] - 0.012_311_659_404_862_3).abs() < 1e-9);
        for w in cos2.windows(2) {
            assert!(w[1] <= 0.6 * w[0]);
        }
    }

    proptest! {
        #[test]
        fn linearity(
            n in 1usize..64,
            a in -3.0f64..3.0,
            b in -3.0f64..3.0,
            c in 0.1f64..5.0,
            t in 0.0f64..PI,
        ) {
            let op = GrunwaldOperator::new(n).unwrap();
            let f = |x: f64| (c * x).sin();
            let g = |x: f64| (x - c).abs();
            let lhs = op.apply(|x| a * f(x) + b * g(x), t).unwrap();
            let rhs = a * op.apply(f, t).unwrap() + b * op.apply(g, t).unwrap();
            prop_assert!((lhs - rhs).abs() <= 1e-10);
        }

        #[test]
        fn pointwise_lebesgue_bound(n in 1usize..64, c in 0.1f64..8.0, t in 0.0f64..PI) {
            let op = GrunwaldOperator::new(n).unwrap();
            let f = |x: f64| (c * x).cos();
            prop_assert!(op.apply(f, t).unwrap().abs() <= op.lebesgue(t) + 1e-12);
        }
    }
}
