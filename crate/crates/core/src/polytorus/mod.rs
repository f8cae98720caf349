//! Functions on the polydisc `l2 ∩ D^N` and their Hardy norms on the polytorus.

mod eval;
mod extract;
mod lattice;
mod norm;

pub use eval::{evaluate, evaluate_coords, evaluate_dirichlet_line, kronecker_point, PointInPolydisc};
pub use extract::{extract_coefficients, ExtractionGrid};
pub use lattice::{korobov_generator, LatticeRule};
pub use norm::{
    bayart_mean_norm, hp_norm, integral_mean, GridMethod, NormEstimate, NormMethod,
    QuadratureConfig,
};
