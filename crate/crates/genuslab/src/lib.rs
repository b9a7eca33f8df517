pub mod acceptance;
pub mod arith;
pub mod budget;
pub mod cli;
pub mod error;

pub use error::{Error, Result};
pub mod field;
pub mod places;
pub mod divisor;
pub mod brauer;
pub mod milnor;
pub mod class_sets;
pub mod descent;
pub mod parse;
