pub mod cone;
mod dd;
pub mod error;
pub mod linalg;
mod lp;
mod nnls;
pub mod project;
pub mod set;
pub mod theorems;

pub use cone::{positive_hull, PolyhedralCone};
pub use error::{GeomError, Result};
pub use linalg::{orthogonal_complement, orthonormal_basis, project_subspace, Subspace, Vector};
pub use project::{moreau_decompose, project, project_oracle, MoreauDecomposition};
pub use set::ConvexSet;
