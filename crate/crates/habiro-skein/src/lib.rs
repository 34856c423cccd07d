//! Exact computations in the Kauffman bracket skein module of the solid
//! torus: the twist-eigenvector and Habiro bases, the Hopf pairing, the
//! coefficients of the twist series omega^p by two independent formulas, and
//! the colored Jones polynomial of twist knots, all over Z[A, A^-1].
//!
//! Every identity the machinery relies on is also exposed as a runnable
//! check: see the [`verify`] module and the `verify` CLI subcommand. The
//! `examples/` directory walks through each capability.

pub mod error;
pub mod jones;
pub mod laurent;
pub mod omega;
pub mod skein;

pub use error::{Error, Result};
pub use jones::{PlanarDiagram, TwistKnotInvariant};
pub use laurent::{LaurentFraction, LaurentPoly};
pub use omega::{MultiIndex, OmegaCoefficients};
pub use skein::{BasisTag, SkeinElement};
