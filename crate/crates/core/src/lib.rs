//! Exact polyhedral convex analysis.
//!
//! Sets are rational H-polyhedra, functions are proper piecewise-linear
//! convex functions carried by their epigraph polyhedra, and set-valued
//! mappings are convex-graph multifunctions carried by their graph
//! polyhedra. On top of that substrate the crate implements the calculus
//! of supports, normal cones, Fenchel conjugates, subdifferentials,
//! marginal functions, and coderivatives, with every rule returning exact
//! attainment witnesses next to its value. A separate oracle module
//! recomputes the central quantities from generator (V-form)
//! representations so the two paths can be cross-checked; there is no
//! floating point and no epsilon anywhere.

pub mod error;
pub mod linalg;
pub mod lp;
pub mod marginals;
pub mod multimaps;
pub mod num;
pub mod oracles;
pub mod pl;
pub mod polyhedra;
pub mod supports;

pub use error::{Error, Result};
pub use lp::{solve_lp, DualMultipliers, FarkasCertificate, LpOutcome, Sense};
pub use multimaps::{Multimap, RulePreimage};
pub use num::{ExtReal, Q};
pub use pl::{LinearMap, PLFunction};
pub use polyhedra::{Generators, HPolyhedron, PolyhedralCone};
pub use supports::QCReport;
