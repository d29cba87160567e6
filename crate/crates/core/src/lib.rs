//! Exact-arithmetic computations around the divisibility of the stable
//! Miller-Morita-Mumford classes kappa_i.
//!
//! What lives here:
//!
//! * [`numtheory`] — bignum integers/rationals, p-adic valuations, prime
//!   enumeration, multiplicative orders, the Adams parameter k(p);
//! * [`bernoulli`] — exact Bernoulli numbers by two independent algorithms,
//!   von Staudt-Clausen denominators, den(B_i/2i);
//! * [`divisor`] — the divisor D_i of kappa_i: valuation formula, lower and
//!   upper bounds, the two-adic resolution, mod-p vanishing, and the
//!   integral divisibility predicates;
//! * [`wu`] — truncated series over F_p and the Wu-class vanishing
//!   criterion, an independent route to the same mod-p answer;
//! * [`dl`] — a desk-scale model of the mod-2 homology of the free infinite
//!   loop space on CP^infinity_+: admissible operation monomials, product,
//!   coproduct, the Bockstein differential, and the spectral-sequence
//!   verification report;
//! * [`verify`] — the named check suites behind `kappa verify`;
//! * [`cli`] — the `kappa` command-line surface.
//!
//! Everything is exact: no floating point anywhere.

pub mod bernoulli;
pub mod cli;
pub mod divisor;
pub mod dl;
pub mod error;
pub mod numtheory;
pub mod verify;
pub mod wu;

pub use error::{Error, Result};
