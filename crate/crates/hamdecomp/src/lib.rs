//! Graph IO, the `hamdecomp` command line and the parallel trial runner
//! on top of `hamdecomp-core`.

pub mod cli;
pub mod edgelist;
pub mod jobs;
pub mod output;
