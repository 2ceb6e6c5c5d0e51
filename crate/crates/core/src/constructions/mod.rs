//! Gadgets and the constructions that splice them into diagrams.

mod gadgets;
mod hardify;

pub use gadgets::*;
pub use hardify::*;
