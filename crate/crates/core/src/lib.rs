//! Exact and certified computations for lines on the Dwork pencil
//! X_t = {z₀⁵ + … + z₄⁵ − 5t·z₀z₁z₂z₃z₄ = 0} ⊂ ℙ⁴.
//!
//! The crate is organised bottom-up:
//!
//! * [`numeric`]: ℚ, ℚ(ζ₁₅), one radical extension, complex balls.
//! * [`poly`]: sparse multivariate polynomials and symmetric functions.
//! * [`lines`]: points, lines, Plücker coordinates and the Ĝ × S₅ action.
//! * [`membership`]: pulling F_t back to a line, the line system and its
//!   inverse, the fiber surface and its factorization.
//! * [`deformation`]: normal-bundle matrices, kernel dimensions, splitting types.
//! * [`census`]: cones, crossing lines, van Geemen lines and numeric bookkeeping.
//! * [`identities`]: exact polynomial identity certificates.
//! * [`schubert`]: the cohomology ring of G(2,5).
//! * [`cert`] and [`cli`]: certificates, reports and the command-line driver.

pub mod census;
pub mod cert;
pub mod cli;
pub mod deformation;
pub mod identities;
pub mod linalg;
pub mod lines;
pub mod membership;
pub mod numeric;
pub mod poly;
pub mod schubert;

pub use numeric::{Ball, Cyclo, Field, FieldElement, Rational, Ring, Tower};
pub use poly::{Monomial, Poly, Var};
