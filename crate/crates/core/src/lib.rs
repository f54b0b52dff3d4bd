//! Exact rational exponential sums over the divisor function,
//!
//! ```text
//! T_{a,m}(N) = sum_{n <= N} e_m(a tau(n)),
//! ```
//!
//! the closed-form constants of their asymptotics with certified truncation
//! errors, and a harness that measures the error terms on grids up to `10^9`.
//!
//! - [`arith`]: factorization, `tau`, `omega`, the `n = s q k` decomposition,
//!   multiplicative orders, characters modulo a prime.
//! - [`sieve`]: segmented sieve of `tau(n) mod m`, `omega(n)` and squarefree
//!   flags; powerful-number enumeration; the counting functions.
//! - [`expsum`]: `T_{a,m}(N)`, orbit sums `S_m(r)`, character and `z^omega`
//!   sums, Gauss sums.
//! - [`mainterm`]: `zeta(m)`, `H(r, m)`, the main-term coefficient, Euler
//!   products, the saving `A(t)`.
//! - [`harness`]: envelope reports, JSON/CSV output, the self-test.
//!
//! ```
//! use divexp::expsum::{t_exact, EvalOptions};
//!
//! let t = t_exact(1, 3, 4, &EvalOptions::default()).unwrap();
//! assert!((t.value.re + 0.5).abs() < 1e-12);
//! ```

pub mod arith;
pub mod error;
pub mod expsum;
pub mod harness;
pub mod mainterm;
pub mod sieve;

pub use error::{Error, Result};
