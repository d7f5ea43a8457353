//! Counting characters of finite reductive groups via labels of Borel and
//! regular-embedding parametrizations.

pub mod arith;
pub mod borel;
pub mod cli;
pub mod error;
pub mod ff;
pub mod labelcalc;
pub mod rootdata;
pub mod sscls;
pub mod zmodlin;

pub use error::{Error, Result};
