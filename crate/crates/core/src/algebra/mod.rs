//! Exact arithmetic foundation.

pub mod cyclo;
pub mod group;
pub mod linalg;
pub mod poly;

pub use cyclo::{cyclo_arith, ArithOp, CycloField, CycloNum};
pub use group::{char_kernel, AbelianGroup, Character, Elem, LocalChar, Subgroup};
pub use poly::{resultant, Poly1, Poly2, RatFunc};
