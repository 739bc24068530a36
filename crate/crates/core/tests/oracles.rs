//! Public-API checks against formulas evaluated independently here.

use std::f64::consts::PI;

use korovkin_core::grunwald::{operator_norm_gn, GrunwaldOperator};
use korovkin_core::kantorovich::{KantorovichOperator, L1Operator};
use korovkin_core::{RealFunction, Smoothness};

/// Lagrange basis on `cos θ_j` by the product formula.
fn lagrange(n: usize, k: usize, x: f64) -> f64 {
    let node = |j: usize| ((2 * j - 1) as f64 * PI / (2 * n) as f64).cos();
    (1..=n)
        .filter(|&j| j != k)
        .map(|j| (x - node(j)) / (node(k) - node(j)))
        .product()
}

#[test]
fn grunwald_matches_product_formula() {
    let f = |t: f64| (t.sin() + 0.3 * t).exp();
    for n in [1, 3, 7, 16] {
        let g = GrunwaldOperator::new(n).unwrap();
        let h = PI / (2 * n) as f64;
        for i in 0..=40 {
            let theta = PI * i as f64 / 40.0;
            let want: f64 = 0.5
                * (1..=n)
                    .map(|k| {
                        let tk = (2 * k - 1) as f64 * PI / (2 * n) as f64;
                        f(tk) * (lagrange(n, k, (theta - h).cos()) + lagrange(n, k, (theta + h).cos()))
                    })
                    .sum::<f64>();
            let got = g.apply(f, theta).unwrap();
            assert!((got - want).abs() < 1e-11, "n={n} θ={theta}: {got} vs {want}");
        }
    }
}

#[test]
fn extension_repeats_the_window_pattern() {
    // For a π-periodic f the extension is π-periodic too.
    let f = |t: f64| (2.0 * t).cos() + 0.5;
    let g = GrunwaldOperator::new(9).unwrap();
    for theta in [0.1, 1.3, 2.9] {
        let base = g.apply(f, theta).unwrap();
        for j in [-2.0, 1.0, 3.0] {
            let shifted = g.apply_extended(f, theta + j * PI).unwrap();
            assert!((shifted - base).abs() < 1e-11);
        }
    }
}

#[test]
fn operator_norm_is_bounded_by_four_over_pi() {
    let mut prev = 0.0;
    for n in [4, 16, 64] {
        let norm = operator_norm_gn(n, 1e-4).unwrap();
        assert!(norm >= prev - 1e-12 && norm < 4.0 / PI, "n={n}: {norm}");
        prev = norm;
    }
}

/// `Σ_k C(n,k) p^k q^{n−k} (n+1)∫_{cell k} e^t dt` with a Pascal row.
fn kantorovich_exp(n: usize, p: f64, q: f64) -> f64 {
    let mut row = vec![1.0f64];
    for _ in 0..n {
        let mut next = vec![1.0; row.len() + 1];
        for i in 1..row.len() {
            next[i] = row[i - 1] + row[i];
        }
        row = next;
    }
    let n1 = (n + 1) as f64;
    (0..=n)
        .map(|k| {
            let cell = n1 * (((k + 1) as f64 / n1).exp() - (k as f64 / n1).exp());
            row[k] * p.powi(k as i32) * q.powi((n - k) as i32) * cell
        })
        .sum()
}

#[test]
fn kantorovich_families_match_direct_sums() {
    let f = RealFunction::on(0.0, 1.0, Smoothness::C2, f64::exp).unwrap();
    // 60 exercises the log-space weights.
    for n in [1, 7, 60] {
        let classic = KantorovichOperator::classic(n).unwrap();
        let alternating = KantorovichOperator::alternating(n).unwrap();
        for i in 0..=10 {
            let x = i as f64 / 10.0;
            let c = classic.apply(&f, x).unwrap();
            let b = alternating.apply(&f, x).unwrap();
            let (wc, wb) = (kantorovich_exp(n, x, 1.0 - x), kantorovich_exp(n, -x, 1.0 - x));
            assert!((c - wc).abs() < 1e-10 * wc.abs().max(1.0), "classic n={n} x={x}");
            assert!((b - wb).abs() < 1e-10, "alternating n={n} x={x}: {b} vs {wb}");
        }
    }
}

#[test]
fn kantorovich_rejects_points_outside_the_unit_interval() {
    let f = RealFunction::on(0.0, 1.0, Smoothness::C2, |t| t).unwrap();
    let k = KantorovichOperator::classic(4).unwrap();
    assert!(k.apply(&f, 1.5).is_err());
    assert!(k.apply(&f, -0.1).is_err());
}
