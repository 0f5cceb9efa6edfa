pub mod certificate;
pub mod classifier;
pub mod cli;
pub mod families;
pub mod graph;
pub mod rules;
