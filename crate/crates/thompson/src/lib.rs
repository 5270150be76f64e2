//! The Thompson–Higman group `G_{3,1}` acting on words over `{0,1,#}`, its
//! extension by the position-permuting elements `κ₀..κ₃`, a compiler from
//! acyclic boolean circuits to group words, and deciders for the resulting
//! word problems.
//!
//! The crate is `no_std` and needs only `alloc`. File formats and the
//! command-line tool live in the `thompson-cli` crate.

#![no_std]

extern crate alloc;

pub mod circuits;
pub mod codes;
pub mod genwords;
pub mod kappa;
pub mod presentation;
pub mod sample;
pub mod table;
pub mod wordproblem;

pub use codes::{Letter, Word};
pub use genwords::{GenKind, GenToken, GenWord};
pub use kappa::{KTok, KappaWord};
pub use table::{GroupTag, StabMode, Table};
