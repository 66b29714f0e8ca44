//! Exact tooling for specializing the M12 three-point covers at rational
//! points and studying the resulting number fields.
//!
//! The crate is layered bottom-up:
//!
//! - [`exactnum`]: bignum valuations, factoring, quadratic elements, `F_p`.
//! - [`polyalg`]: univariate polynomials over `Z`, `Q(sqrt d)` and `F_p`,
//!   resultants, mod-p and rational factorization.
//! - [`permgrp`]: permutations, Schreier-Sims, monodromy checks.
//! - [`covers`]: the cover catalog, specialization, twins and lifts.
//! - [`specsets`]: S-unit ABC points, arms, tame ramification prediction.
//! - [`ramify`]: maximal orders, field discriminants, Frobenius statistics.
//! - [`obstruct`]: Hilbert symbols and spin-lift obstructions.

pub mod covers;
pub mod error;
pub mod exactnum;
pub mod obstruct;
pub mod partition;
pub mod permgrp;
pub mod polyalg;
pub mod ramify;
pub mod specsets;

pub use error::{Error, Result};
pub use exactnum::{Int, QuadElt, Rat};
pub use polyalg::{FpPoly, IntPoly, QuadPoly};
