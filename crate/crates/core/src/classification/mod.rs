//! Canonical irreducible subalgebras `C_{G1,chi}`, slot-wise
//! automorphisms, and the reduction of an irreducible subalgebra to
//! canonical form.

pub mod automorphism;
pub mod canonical;
pub mod chi;
pub mod graded;

pub use automorphism::*;
pub use canonical::*;
pub use chi::*;
pub use graded::*;
