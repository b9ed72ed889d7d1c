pub mod elem;
pub mod fincat;
pub mod base;
pub mod diagrams;
pub mod fixtures;
pub mod gen;
pub mod par;
pub mod univ;
