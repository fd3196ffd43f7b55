//! Exact toric geometry for geometric realizations of toric birational maps.
//!
//! Moment polytopes, normal fans, Mori chamber decompositions, C*-actions on
//! polarized toric varieties and the realization constructions built on top
//! of them. All arithmetic is exact.

pub mod chambers;
pub mod cstar;
pub mod error;
pub mod linalg;
pub mod polytope;
pub mod realize;
pub mod toric;

pub use error::{Error, Result};
pub use linalg::{Int, Rat};
pub use polytope::{Halfspace, PolyhedralCone, RationalPolytope};
pub use toric::{Fan, ToricVariety, TorusDivisor};
