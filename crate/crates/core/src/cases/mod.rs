//! Case studies: the FS and BA rewriting systems, their termination
//! measures, and fixed demonstration scenarios.

pub mod demo;
pub mod measure;
pub mod theories;
