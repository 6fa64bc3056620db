#![no_std]
extern crate alloc;

pub mod bounds;
pub mod expansion;
pub mod factors;
mod flow;
pub mod graph;
pub mod hamilton;
mod matching;
pub mod models;
pub mod orient;
pub mod rational;
pub mod seed;

pub use graph::{AnyGraph, Digraph, Graph, GraphError, OrientedGraph};
pub use seed::Seed;
