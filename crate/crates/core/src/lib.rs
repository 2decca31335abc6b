//! Exact discrete orthogonal polynomials of several variables.
//!
//! Given a finite point set `V ⊂ ℝ^d` and nonzero weights `W`, the crate
//! computes the staircase `Λ(V)` of monomials spanning `ℝ[V]`, builds
//! orthogonal polynomial blocks for `𝓛f = Σ f(x)W(x)`, extracts their matrix
//! three-term recurrence, checks its structural properties, and runs the
//! converse direction from recurrence data back to a weighted point set.
//! Classical Hahn and Meixner families serve as closed-form references.

pub mod exactlinalg;
pub mod families;
pub mod io;
pub mod orthogonalize;
pub mod rational;
pub mod recurrence;
pub mod staircase;

pub use exactlinalg::{LinalgError, RatMatrix};
pub use orthogonalize::{MomentFunctional, OrthoBasis, WeightFn};
pub use rational::Rational;
pub use recurrence::Recurrence;
pub use staircase::{MonomialOrder, MultiIndex, OrderKind, PointSet, Poly, Staircase};
