//! Exact-arithmetic gcd-graphs over F_q[x]/(f).
//!
//! A gcd-graph is the Cayley graph on the residue ring F_q[x]/(f) whose
//! connection set is { g : gcd(g, f) lies in a prescribed set D of monic
//! proper divisors of f }. This crate constructs these graphs, computes
//! their (always integral) spectra through function-field Ramanujan sums,
//! and decides structural properties — connectedness, bipartiteness,
//! primeness under the modular decomposition, perfection — returning
//! certificates that can be re-verified by brute force. A small embedding
//! toolkit realizes arbitrary graphs as induced subgraphs of gcd-graphs.

pub mod error;
pub mod gf;
pub mod cyclo;
pub mod gcdgraph;
pub mod graphcore;
pub(crate) mod par;
pub mod polyring;
pub mod spectrum;
pub mod structure;
pub mod sweep;
pub mod embed;

pub use error::{Error, Result};
