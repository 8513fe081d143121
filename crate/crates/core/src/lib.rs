//! Finite category theory engine.
//!
//! Categories are explicit composition tables indexed by dense integer
//! ids. On top of them sit set-valued functors with their element
//! categories, Kan extensions along functors, Karoubi closure, truncated
//! nerves, filteredness checks, Grothendieck constructions and a small
//! model of ind-objects.

pub mod budget;
pub mod category;
pub mod corpus;
pub mod error;
pub mod filtered;
pub mod grothendieck;
pub mod harness;
pub mod ind;
pub mod nerve;
pub mod poset;
pub mod presheaf;

pub use budget::Budget;
pub use category::{CatRef, FinCat, FinFunctor, Mor, Obj};
pub use error::{CategoryError, Error, Result};
