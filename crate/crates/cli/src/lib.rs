//! Library surface of the command-line front end, split out so integration
//! tests can drive the same code paths the binary uses.

pub mod config;
pub mod identities;
pub mod run;
