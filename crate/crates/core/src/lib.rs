pub mod audit;
pub mod constructions;
pub mod digraph;
pub mod error;
pub mod rainbow;
pub mod solve;
pub mod vertex_set;
pub mod families;
pub mod grid;
