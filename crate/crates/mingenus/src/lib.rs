//! Command-line front end for `mingenus-core`: JSON class literals, move literals,
//! subcommands, batch processing and the seeded self-test.

pub mod cli;
pub mod literal;
pub mod selftest;
