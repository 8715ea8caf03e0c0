pub mod cli;
pub mod domain;
pub mod semantics;
pub mod similarity;
pub mod solver;
pub mod syntax;
pub mod transform;
