//! Operator model of `Cend`, the `Phi` transport, the span `W_N`,
//! irreducibility, ideals and simplicity.

pub mod ideals;
pub mod operators;
pub mod spans;

pub use ideals::*;
pub use operators::*;
pub use spans::*;
