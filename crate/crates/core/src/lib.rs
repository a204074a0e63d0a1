//! Equivariant embedded resolutions of plane curve germs under diagonal
//! abelian group actions, and the equivariant Poincaré series of curve and
//! divisorial valuation filtrations as elements of the Grothendieck ring of
//! (G, r)-sets.

pub mod algebra;
pub mod blowup;
pub mod curves;
pub mod error;
pub mod expr;
pub mod grring;
pub mod poincare;
pub mod resgraph;

pub use error::{Error, Result};
