//! Theta functions on the `n`-fold cover of `GL_2` over `F_q(x)`: finite
//! fields, cyclotomic arithmetic, polynomial rings, power residue symbols,
//! Gauss sums, the coefficient polynomials `Psi` and the coefficients
//! `rho_0`, plus a harness that tabulates and verifies them.

pub mod charkit;
pub mod cyclokit;
pub mod fieldkit;
pub mod harness;
pub mod polyring;
pub mod thetacore;

pub use cyclokit::{CycField, CycNum, CycRepr};
pub use fieldkit::{FieldCtx, FieldError, FqElem};
pub use polyring::{Poly, PolyError, RatFunc};
pub use thetacore::{CStrategy, Mobius2x2, Rho0, Strategy, TauNormalization, ThetaCtx, ThetaError};
