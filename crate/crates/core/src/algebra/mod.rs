//! Finite fields, F2 polynomials, and the finite groups used by the constructions.

pub mod field;
pub mod group;
pub mod pgl2;
pub mod poly;
pub mod semidirect;
pub mod torus;

pub use field::{Field, FieldElement};
pub use group::{BinaryVectorGroup, CyclicGroup, FiniteGroup, GroupRef, Subgroup, TableGroup};
pub use pgl2::{psl2_subgroup, Pgl2, ProjectiveMatrix};
pub use poly::GF2Poly;
pub use semidirect::{inner_automorphism, semidirect_product, Automorphism, SemidirectElement, SemidirectProduct};
pub use torus::{nonsplit_torus_embedding, TorusEmbedding};
