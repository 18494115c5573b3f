//! Lattice model, decoders and Monte Carlo harness for the X-cube fracton code.

pub mod code;
pub mod fracton;
pub mod harness;
pub mod lattice;
pub mod lineon;
pub mod matching;
pub mod noise;
mod union_find;
