//! Combinatorics of quadratic invariant laminations under the angle
//! doubling map: critical-leaf laminations and their cleanings, orbit
//! portraits, matings, the blown-up circle model of captures, and
//! combinatorial regluing.
//!
//! The crate is `no_std` (with `alloc`); all arithmetic is exact rational.
//! IO, file formats and rendering live in the companion `lamtool` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod angle;
pub mod capture;
pub mod chord;
pub mod critlam;
pub mod lamination;
pub mod mating;
pub mod portrait;
pub mod reglue;

pub use angle::{in_open_arc, Angle, AngleError, OrbitInfo};
pub use chord::{all_preimages, sibling_preimages, Chord, ChordError};
pub use lamination::{chord_preperiod, Face, FaceStep, Lamination, Meta};
