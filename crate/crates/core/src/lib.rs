pub mod bipartite;
pub mod error;
pub mod linalg;
pub mod monogamy;
pub mod multipartite;
pub mod named;
pub mod roof;
pub mod state;
pub mod tolerance;

pub use error::{Error, Result};
pub use state::{DensityMatrix, Ensemble, PureState, QubitSubset};
pub use tolerance::Tolerances;
