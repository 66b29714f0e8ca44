//! Univariate polynomial algebra over `Z`, `Q(sqrt d)` and `F_p`.

pub mod expr;
pub mod factor;
mod fp;
mod int;
mod quad;

pub use expr::{parse_expr, parse_int_poly, parse_int_poly_with, MPoly};
pub use factor::{factor_rational, hensel_lift};
pub use fp::{fp_partition, squarefree_partition, FpPoly, Frobenius};
pub use int::{resultant, IntPoly};
pub use quad::{charpoly_resultant, quad_sqrt, QuadPoly};

use crate::error::Result;
use crate::partition::Partition;

pub fn discriminant(f: &IntPoly) -> crate::Int {
    f.discriminant()
}

pub fn substitute_square(f: &IntPoly) -> IntPoly {
    f.substitute_square()
}

pub fn norm_rationalize(f: &QuadPoly) -> IntPoly {
    f.norm_rationalize()
}

/// Factorization pattern of `f mod p`; `None` marks a ramified-or-bad prime
/// (`p | lc(f)` or `f mod p` not squarefree).
pub fn ddf_partition(f: &IntPoly, p: u64) -> Option<Partition> {
    fp_partition(&f.mod_p(p), f.deg()).ok()
}

/// Monic irreducible factors of `f mod p` and the leading coefficient.
pub fn factor_mod_p(f: &IntPoly, p: u64) -> Result<(u64, Vec<FpPoly>)> {
    let fp = f.mod_p(p);
    fp_partition(&fp, f.deg())?;
    Ok(fp.factor_squarefree())
}

/// Reads either the `deg n: c0 ... cn` form or symbolic text in `x` or `y`.
pub fn parse_poly(s: &str) -> Result<IntPoly> {
    let t = s.trim();
    if t.starts_with("deg") {
        return IntPoly::from_text(t);
    }
    let var = if t.contains('y') && !t.contains('x') {
        "y"
    } else {
        "x"
    };
    parse_int_poly(t, var)
}
