//! Subshifts of finite type over `Z`, `Z^d` and free groups: block maps,
//! contraction homotopies, gluing constructions and the decision procedures
//! that verify them by exhaustive finite-window search.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

pub mod blockmap;
pub mod check;
pub mod error;
pub mod freegroup;
pub mod glue;
pub mod group;
pub mod homotopy;
pub mod line;
pub mod onedim;
pub mod pattern;
pub mod periodic;
pub mod sft;
pub mod zddim;

pub use blockmap::{BlockMap, MapDesc};
pub use check::{Verdict, Witness};
pub use error::{Error, Result};
pub use group::{Element, Group};
pub use homotopy::{Homotopy, HomotopyDesc};
pub use pattern::{FiniteDomain, Pattern, Sym};
pub use periodic::PeriodicConfig;
pub use sft::{Method, Sft, Validity};
