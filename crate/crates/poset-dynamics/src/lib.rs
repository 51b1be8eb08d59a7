//! Combinatorial dynamics on finite posets at desk scale: toggles,
//! rowmotion, and gyration on order ideals; exact homomesy checking;
//! alternating sign matrices with their height-function, corner-sum, and
//! fully-packed-loop incarnations; link patterns under the Temperley-Lieb
//! operators; and the O(1) dense loop model with an exact stationary
//! distribution.
//!
//! Everything a verdict depends on is computed in exact integer or rational
//! arithmetic. Exhaustive inner loops (ideal enumeration, orbit images,
//! distribution pipelines, transfer-matrix assembly) run data-parallel under
//! the default `parallel` feature and sequentially without it.

pub mod asm;
pub mod dlm;
pub mod error;
pub mod fpl;
pub mod homomesy;
pub mod io;
mod par;
pub mod poset;
pub mod random;
pub mod tl;
pub mod toggles;
pub mod verify;

pub use error::{Error, Result};
pub use poset::{Antichain, OrderIdeal, Poset, RankFunction};
pub use toggles::{Action, Orbit, ToggleWord};
