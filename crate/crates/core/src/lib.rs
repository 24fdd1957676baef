//! Refinement of manifold-valued point sequences by repeated geodesic
//! averaging, and convergence analysis of the underlying subdivision symbol.
//!
//! ```
//! use georefine::{ManifoldPoint, Polyline, RefinementPlan, subdivide};
//!
//! let pts = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]
//!     .iter()
//!     .map(|v| ManifoldPoint::sphere(v.to_vec()))
//!     .collect::<Result<Vec<_>, _>>()?;
//! let curve = Polyline::periodic(pts)?;
//! let plan = RefinementPlan::bspline(2)?;
//! let (refined, _) = subdivide(&curve, &plan, 3)?;
//! assert_eq!(refined.len(), 24);
//! # Ok::<(), georefine::Error>(())
//! ```

pub mod analysis;
pub mod error;
pub mod geometry;
mod linalg;
pub mod pyramid;
pub mod refine;
mod roots;
pub mod symbol;

pub use analysis::{
    contractivity, empirical_contraction, max_displacement, mu1_of, omega_boundary,
    omega_membership, uniform_complex_bound, upsilon, xi, ConvergenceReport, OmegaMembership,
    Verdict,
};
pub use error::{Error, Result};
pub use geometry::{
    admissible, distance, geodesic_point, ManifoldKind, ManifoldPoint, Polyline, Topology,
};
pub use pyramid::{three_pyramid_average, QuadraticWeights, ThreePyramidParams};
pub use refine::{
    elementary_double, global_refine_step, linear_refine, linear_round, local_refine_step,
    quadratic_round, subdivide, RefinementPlan, RefinementTrace, Round, RoundKind, RoundRecord,
};
pub use roots::polynomial_roots;
pub use symbol::{Factor, Mask, SymbolFactorization};
