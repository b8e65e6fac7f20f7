//! Non-iterative transformation method for Blasius-type boundary value
//! problems on `[0, inf)`.
//!
//! A boundary value problem whose equation and wall conditions are invariant
//! under an extended scaling group, but whose asymptotic condition is not,
//! can be solved by integrating one initial value problem in scaled ("star")
//! variables and rescaling the result. The physical parameter of the problem
//! is recovered from the rescale instead of being prescribed.
//!
//! ```
//! use simnitm::analysis::{solve_noniterative};
//! use simnitm::ode::IntegratorConfig;
//! use simnitm::problems::{SimilarityProblem, Sign};
//!
//! let sol = solve_noniterative(
//!     &SimilarityProblem::moving_wall(0.0, Sign::Plus),
//!     &IntegratorConfig::default(),
//!     10.0,
//! )
//! .unwrap();
//! assert!((sol.d2f0 - 0.332057).abs() < 1e-5);
//! ```

pub mod analysis;
pub mod error;
pub mod invariance;
pub mod ode;
pub mod output;
pub mod problems;
pub mod scaling;

pub use error::{NitmError, Result};
