//! Exact convex calculus over rational polyhedra.
//!
//! Sets, maps and functions are polyhedra with exact rational data. On top
//! of the polyhedral substrate the crate computes cores, gauges, separating
//! functionals, extremality certificates, normal cones, coderivatives and
//! subdifferentials, and evaluates both sides of the intersection, sum,
//! chain and marginal-function rules so they can be compared exactly.
//!
//! ```
//! use corecalc::rational::{int, ints};
//! use corecalc::polyhedra::Polyhedron;
//! use corecalc::subdiff::{subdifferential, PolyFunction};
//!
//! // |x| = max(x, -x)
//! let abs = PolyFunction::max_affine(
//!     1,
//!     &[(ints(&[1]), int(0)), (ints(&[-1]), int(0))],
//!     None,
//! )
//! .unwrap();
//! let d = subdifferential(&abs, &ints(&[0])).unwrap();
//! let unit = Polyhedron::boxed(&ints(&[-1]), &ints(&[1])).unwrap();
//! assert!(d.set_equal(&unit).unwrap());
//! ```

pub mod corealg;
pub mod error;
pub mod generate;
pub mod lp;
pub mod normalcalc;
pub mod oracle;
pub mod polyhedra;
pub mod rational;
mod scalar;
pub mod subdiff;

pub use error::{Error, Result};
pub use normalcalc::{PolyCone, RuleVerdict, SetValuedMap};
pub use polyhedra::{HRep, Polyhedron, VRep};
pub use rational::{Extended, Point, Rational};
pub use subdiff::{LinearMap, MarginalProblem, PolyFunction};
