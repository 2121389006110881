//! Random Fourier–Jacobi series driven by symmetric stable processes.
//!
//! The crate is layered bottom-up:
//!
//! * [`jacobi`]: Jacobi weight, orthonormal Jacobi polynomials, Gauss–Jacobi
//!   quadrature, weighted `L^p` norms and Fourier–Jacobi coefficients of a
//!   closed catalog of test functions.
//! * [`stable_process`]: symmetric `χ`-stable variates, reproducible random
//!   streams and discretized sample paths of the driving process `X`.
//! * [`stochastic_integral`]: left-endpoint Riemann–Stieltjes integrals against
//!   `X` and against the weighted process `Y = ∫ρ dX`, the characteristic
//!   function oracle and the tail bound.
//! * [`fourier_jacobi`]: random coefficients `C_m`, the truncated kernel, partial
//!   sums `S_m` and the admissible `p` window.
//! * [`verification`]: Monte Carlo experiments and their reports.
//! * [`cli`]: the `stable-jacobi` command line front end.
//!
//! ```
//! use stable_jacobi::jacobi::{JacobiParams, eval_orthonormal};
//!
//! let legendre = JacobiParams::new(0.0, 0.0).unwrap();
//! let q0 = eval_orthonormal(&legendre, 0, 0.3).unwrap();
//! assert!((q0 - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
//! ```

pub mod cli;
pub mod error;
pub mod fourier_jacobi;
pub mod jacobi;
pub mod stable_process;
pub mod stochastic_integral;
pub mod verification;

pub use error::{Error, Result};
