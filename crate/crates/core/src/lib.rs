//! Decision procedures for the coset ideal `J_{Γ,𝒳}` of a finite group `Γ`
//! with a conjugation-invariant family of subgroups `𝒳`.
//!
//! The crate computes the ideal (and its intersection with the group algebra)
//! exactly as a subspace of `ℚ^Γ`, produces integer witnesses, builds the coset
//! groupoid `Γ·𝒳` and a finite truncation of the non-Hausdorff groupoid whose
//! single extremely dangerous point carries the ideal as its isotropy fibre,
//! and checks operator-norm identities numerically on finite groupoids.

pub mod atlas;
pub mod error;
pub mod group;
pub mod groupoid;
pub mod hls;
pub mod ideal;
pub mod linalg;
pub mod norm;
pub mod random;
pub mod spec;

pub use error::{Error, Result};
pub use group::{FiniteGroup, GroupSpec, Subgroup, SubgroupFamily};
pub use ideal::{GroupAlgebraElement, IdealReport};
pub use linalg::{Rational, RationalMatrix};
