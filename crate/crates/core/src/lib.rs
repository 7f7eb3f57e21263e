//! Minimal solutions of finite sequences over commutative domains.
//!
//! Given `s = s_0, s_{-1}, ..., s_{1-n}`, the [`solver`] computes a minimal
//! solution `(mu1, mu2)`: `mu1` is an annihilating polynomial of least
//! degree (the linear complexity) and `x mu2` is the polynomial part of
//! `mu1` times the generating function. Around it sit continued fractions
//! ([`cf`]), decomposition and counting of all solutions ([`decomp`]),
//! annihilators avoiding a root ([`nonvanish`]) and a brute-force
//! [`oracle`].

pub mod cf;
pub mod cli;
pub mod decomp;
pub mod domains;
pub mod error;
pub mod genfn;
pub mod nonvanish;
pub mod oracle;
pub mod poly;
pub mod solver;

pub use domains::{DomainSpec, Elem};
pub use error::{Error, Result};
pub use genfn::{SolutionPair, Seq};
pub use poly::{Degree, Poly};
