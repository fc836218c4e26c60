//! Characteristic numbers, the block catalog, the plan interpreter, the lattice
//! realizer and the homeomorphism classifier.

pub mod catalog;
pub mod classifier;
pub mod invariants;
pub mod realizer;
pub mod surgery;
