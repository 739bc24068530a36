#![no_std]
// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

//! Numerical kernels for Grünwald-type interpolation operators on Chebyshev
//! node angles, their Fourier-analytic extension to functions on the real
//! line, and non-positive variants of the Kantorovich operator on `L¹[0,1]`.
//!
//! The crate is `no_std` and needs only `alloc`. Everything here is a pure
//! function of its inputs: there is no global state, no IO and no interior
//! mutability, so every value can be shared across threads.
//!
//! Layout:
//!
//! * [`quadrature`]: integration, sup-search, modulus of continuity, L¹ distance.
//! * [`chebyshev`]: node angles and the fundamental Lagrange polynomials.
//! * [`grunwald`]: the operator `G_n`, its Lebesgue function and the rate functionals.
//! * [`fourier`]: transforms of compactly supported functions, the Fejér
//!   approximate identity, convolution, window-peak diagnostics.
//! * [`extended`]: `K_n`, its truncations `K_{n,m}`, `H_{n,δ}` and the closed-form
//!   coefficient machinery.
//! * [`kantorovich`]: `𝒦_n`, the perturbed variants `A_n`/`B_n` and the L¹ checks.
//! * [`report`]: tabular results shared by the report producers.
//! * [`functions`]: the concrete test functions used throughout.

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod chebyshev;
pub mod error;
pub mod extended;
pub mod fourier;
pub mod function;
pub mod functions;
pub mod grunwald;
pub mod kantorovich;
pub mod quadrature;
pub mod report;

pub use error::{Error, Result};
pub use function::{Domain, Interval, RealFunction, Smoothness};
pub use num_complex::Complex64;
