//! Invariants of diagonal p-permutation functors on explicit finite groups.
//!
//! Groups are permutation groups small enough to enumerate completely. On top
//! of the group layer sit D^Δ-pairs, essential algebras, evaluations of simple
//! functors and a modular-representation oracle (composition factors, Brauer
//! characters, Cartan matrices) used to cross-check them.

pub mod auto;
pub mod cartan;
pub mod catalogue;
pub mod corpus;
pub mod cyclo;
pub mod ddelta;
pub mod error;
pub mod essential;
pub mod ffmat;
pub mod functor_eval;
pub mod gf;
pub mod group;
pub mod ident;
pub mod lattice;
pub mod meataxe;
pub mod parse;
pub mod perm;

pub use auto::{AutGroup, AutMap};
pub use catalogue::named_group;
pub use error::{Error, Result};
pub use group::{ConjClassRec, PermGroup, Subgroup};
pub use perm::Perm;
